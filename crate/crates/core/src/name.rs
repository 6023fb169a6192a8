use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A port name. Identity is the numeric id; the display string is only used
/// when printing.
#[derive(Clone)]
pub struct Name {
    id: u64,
    display: Arc<str>,
}

impl Name {
    pub fn new(id: u64, display: impl Into<Arc<str>>) -> Self {
        Name {
            id,
            display: display.into(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn display(&self) -> &str {
        &self.display
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Name {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.id.cmp(&other.id)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.display, self.id)
    }
}

/// Source of fresh names. Every draw returns an id this supply never issued
/// before.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    counter: u64,
}

impl NameSupply {
    pub fn new() -> Self {
        NameSupply { counter: 0 }
    }

    /// A supply whose ids are all strictly greater than every id in `names`.
    pub fn above<'a>(names: impl IntoIterator<Item = &'a Name>) -> Self {
        let counter = names.into_iter().map(|n| n.id + 1).max().unwrap_or(0);
        NameSupply { counter }
    }

    /// Makes sure future draws do not collide with `name`.
    pub fn reserve(&mut self, name: &Name) {
        self.counter = self.counter.max(name.id + 1);
    }

    pub fn fresh(&mut self, hint: &str) -> Name {
        self.fresh_arc(Arc::from(hint))
    }

    /// A fresh name displayed like `like`.
    pub fn fresh_like(&mut self, like: &Name) -> Name {
        self.fresh_arc(like.display.clone())
    }

    fn fresh_arc(&mut self, display: Arc<str>) -> Name {
        let id = self.counter;
        self.counter = self.counter.checked_add(1).expect("name supply exhausted");
        Name { id, display }
    }

    pub fn issued(&self) -> u64 {
        self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn two_draws_are_distinct() {
        let mut supply = NameSupply::new();
        let a = supply.fresh("w");
        let b = supply.fresh("w");
        assert_ne!(a, b);
        assert_eq!(a.display(), "w");
    }

    #[test]
    fn million_draws_are_distinct() {
        let mut supply = NameSupply::new();
        let ids: HashSet<u64> = (0..1_000_000).map(|_| supply.fresh("w").id()).collect();
        assert_eq!(ids.len(), 1_000_000);
    }

    #[test]
    fn above_skips_existing_ids() {
        let existing = [Name::new(4, "a"), Name::new(17, "b")];
        let mut supply = NameSupply::above(&existing);
        let n = supply.fresh("c");
        assert!(existing.iter().all(|e| e.id() != n.id()));
        assert_eq!(n.id(), 18);
    }

    #[test]
    fn equality_ignores_display() {
        assert_eq!(Name::new(1, "x"), Name::new(1, "y"));
        assert_ne!(Name::new(1, "x"), Name::new(2, "x"));
    }
}
