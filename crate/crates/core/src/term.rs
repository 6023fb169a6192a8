use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::name::Name;

/// An agent symbol. The arity counts auxiliary ports only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<Arc<str>>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Name(Name),
    Agent(Symbol, Vec<Term>),
}

impl Term {
    /// Builds an agent term. Panics if the argument count disagrees with the
    /// symbol arity.
    pub fn agent(symbol: Symbol, args: Vec<Term>) -> Term {
        assert_eq!(
            symbol.arity(),
            args.len(),
            "agent {} applied to {} arguments",
            symbol.name(),
            args.len()
        );
        Term::Agent(symbol, args)
    }

    pub fn as_name(&self) -> Option<&Name> {
        match self {
            Term::Name(n) => Some(n),
            Term::Agent(..) => None,
        }
    }

    pub fn is_agent(&self) -> bool {
        matches!(self, Term::Agent(..))
    }

    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Term::Agent(s, _) => Some(s),
            Term::Name(_) => None,
        }
    }

    /// Visits every name occurrence, left to right.
    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        match self {
            Term::Name(n) => f(n),
            Term::Agent(_, args) => args.iter().for_each(|a| a.for_each_name(f)),
        }
    }

    pub fn names(&self) -> Vec<&Name> {
        let mut out = Vec::new();
        self.for_each_name(&mut |n| out.push(n));
        out
    }

    pub fn contains_name(&self, name: &Name) -> bool {
        match self {
            Term::Name(n) => n == name,
            Term::Agent(_, args) => args.iter().any(|a| a.contains_name(name)),
        }
    }

    pub fn agent_count(&self) -> usize {
        match self {
            Term::Name(_) => 0,
            Term::Agent(_, args) => 1 + args.iter().map(Term::agent_count).sum::<usize>(),
        }
    }

    /// Replaces the first occurrence of `name` by `replacement` in place.
    /// Hands the replacement back if the name does not occur.
    pub fn replace_name(&mut self, name: &Name, replacement: Term) -> Result<(), Term> {
        match self {
            Term::Name(n) if n == name => {
                *self = replacement;
                Ok(())
            }
            Term::Name(_) => Err(replacement),
            Term::Agent(_, args) => {
                let mut replacement = replacement;
                for arg in args.iter_mut() {
                    match arg.replace_name(name, replacement) {
                        Ok(()) => return Ok(()),
                        Err(r) => replacement = r,
                    }
                }
                Err(replacement)
            }
        }
    }

    /// Walks all agent symbols.
    pub fn for_each_symbol<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        if let Term::Agent(s, args) = self {
            f(s);
            args.iter().for_each(|a| a.for_each_symbol(f));
        }
    }
}

/// `substitute(t, x, s)`: `t` with its occurrence of `x` replaced by `s`.
/// A term without `x` comes back unchanged.
pub fn substitute(term: &Term, name: &Name, replacement: &Term) -> Term {
    let mut out = term.clone();
    let _ = out.replace_name(name, replacement.clone());
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Equation {
    pub left: Term,
    pub right: Term,
}

impl Equation {
    pub fn new(left: Term, right: Term) -> Self {
        Equation { left, right }
    }

    pub fn flipped(self) -> Self {
        Equation {
            left: self.right,
            right: self.left,
        }
    }

    pub fn is_active_pair(&self) -> bool {
        self.left.is_agent() && self.right.is_agent()
    }

    /// `x = x`: a closed wire with nothing attached.
    pub fn is_degenerate_loop(&self) -> bool {
        matches!((&self.left, &self.right), (Term::Name(a), Term::Name(b)) if a == b)
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        self.left.for_each_name(f);
        self.right.for_each_name(f);
    }

    pub fn sides(&self) -> [&Term; 2] {
        [&self.left, &self.right]
    }
}

/// `⟨ interface | equations ⟩`. Equation storage order carries no meaning.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Configuration {
    pub interface: Vec<Term>,
    pub equations: Vec<Equation>,
}

impl Configuration {
    pub fn new(interface: Vec<Term>, equations: Vec<Equation>) -> Self {
        Configuration { interface, equations }
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        self.interface.iter().for_each(|t| t.for_each_name(f));
        self.equations.iter().for_each(|e| e.for_each_name(f));
    }

    pub fn names(&self) -> Vec<&Name> {
        let mut out = Vec::new();
        self.for_each_name(&mut |n| out.push(n));
        out
    }

    pub fn agent_count(&self) -> usize {
        self.interface.iter().map(Term::agent_count).sum::<usize>()
            + self
                .equations
                .iter()
                .map(|e| e.left.agent_count() + e.right.agent_count())
                .sum::<usize>()
    }

    pub fn interface_contains(&self, name: &Name) -> bool {
        self.interface.iter().any(|t| t.contains_name(name))
    }
}

/// A name that appears more than twice.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("name `{}` occurs {count} times", name.display())]
pub struct OccurrenceViolation {
    pub name: Name,
    pub count: usize,
}

/// Occurrence count of every name over interface and equations.
pub fn occurrences(config: &Configuration) -> HashMap<Name, usize> {
    let mut counts: HashMap<Name, usize> = HashMap::new();
    config.for_each_name(&mut |n| *counts.entry(n.clone()).or_default() += 1);
    counts
}

/// Like [`occurrences`], but fails on the first name (in traversal order)
/// seen more than twice.
pub fn checked_occurrences(config: &Configuration) -> Result<HashMap<Name, usize>, OccurrenceViolation> {
    let counts = occurrences(config);
    let mut worst: Option<OccurrenceViolation> = None;
    config.for_each_name(&mut |n| {
        if worst.is_none() && counts[n] > 2 {
            worst = Some(OccurrenceViolation {
                name: n.clone(),
                count: counts[n],
            });
        }
    });
    match worst {
        Some(v) => Err(v),
        None => Ok(counts),
    }
}

/// Names that occur once but not in the interface. Allowed, but usually a
/// mistake in a hand-written net.
pub fn dangling_names(config: &Configuration) -> Vec<Name> {
    let counts = occurrences(config);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for eq in &config.equations {
        eq.for_each_name(&mut |n| {
            if counts[n] == 1 && seen.insert(n.clone()) {
                out.push(n.clone());
            }
        });
    }
    out
}
