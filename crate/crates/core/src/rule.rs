use std::fmt;
use std::sync::Arc;

use crate::diag::Span;
use crate::name::Name;
use crate::term::{Equation, Symbol, Term};

/// The identifier `x` of a variadic range `[x]` and of its variadic name `x'`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RangeName(Arc<str>);

impl RangeName {
    pub fn new(name: impl Into<Arc<str>>) -> Self {
        RangeName(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for RangeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Symbol(Symbol),
    /// The rule's generic agent (`ANY`).
    Generic,
}

/// A term on the right-hand side of a rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RhsTerm {
    Name(Name),
    /// `x'`: one port of the range `[x]`.
    Variadic(RangeName),
    /// An agent. `range`, when present, stands for the trailing ports.
    Agent {
        head: Head,
        args: Vec<RhsTerm>,
        range: Option<RangeName>,
    },
}

impl RhsTerm {
    pub fn symbol(symbol: Symbol, args: Vec<RhsTerm>) -> RhsTerm {
        RhsTerm::Agent {
            head: Head::Symbol(symbol),
            args,
            range: None,
        }
    }

    pub fn generic(args: Vec<RhsTerm>, range: Option<RangeName>) -> RhsTerm {
        RhsTerm::Agent {
            head: Head::Generic,
            args,
            range,
        }
    }

    pub fn from_term(t: &Term) -> RhsTerm {
        match t {
            Term::Name(n) => RhsTerm::Name(n.clone()),
            Term::Agent(s, args) => RhsTerm::symbol(s.clone(), args.iter().map(RhsTerm::from_term).collect()),
        }
    }

    /// The plain term, if this contains no generic agent, range or variadic
    /// name.
    pub fn to_term(&self) -> Option<Term> {
        match self {
            RhsTerm::Name(n) => Some(Term::Name(n.clone())),
            RhsTerm::Variadic(_) => None,
            RhsTerm::Agent {
                head: Head::Symbol(s),
                args,
                range: None,
            } => Some(Term::Agent(
                s.clone(),
                args.iter().map(RhsTerm::to_term).collect::<Option<_>>()?,
            )),
            RhsTerm::Agent { .. } => None,
        }
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        match self {
            RhsTerm::Name(n) => f(n),
            RhsTerm::Variadic(_) => {}
            RhsTerm::Agent { args, .. } => args.iter().for_each(|a| a.for_each_name(f)),
        }
    }

    /// Visits ranges `[x]` (with `true`) and variadic names `x'` (with
    /// `false`).
    pub fn for_each_range<'a>(&'a self, f: &mut impl FnMut(&'a RangeName, bool)) {
        match self {
            RhsTerm::Name(_) => {}
            RhsTerm::Variadic(r) => f(r, false),
            RhsTerm::Agent { args, range, .. } => {
                args.iter().for_each(|a| a.for_each_range(f));
                if let Some(r) = range {
                    f(r, true);
                }
            }
        }
    }

    pub fn for_each_symbol<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        if let RhsTerm::Agent { head, args, .. } = self {
            if let Head::Symbol(s) = head {
                f(s);
            }
            args.iter().for_each(|a| a.for_each_symbol(f));
        }
    }

    /// Visits every agent node with its head, explicit argument count and
    /// range.
    pub fn for_each_agent<'a>(&'a self, f: &mut impl FnMut(&'a Head, usize, Option<&'a RangeName>)) {
        if let RhsTerm::Agent { head, args, range } = self {
            f(head, args.len(), range.as_ref());
            args.iter().for_each(|a| a.for_each_agent(f));
        }
    }

    pub fn is_name(&self) -> bool {
        matches!(self, RhsTerm::Name(_) | RhsTerm::Variadic(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RhsEquation {
    pub left: RhsTerm,
    pub right: RhsTerm,
}

impl RhsEquation {
    pub fn new(left: RhsTerm, right: RhsTerm) -> Self {
        RhsEquation { left, right }
    }

    pub fn from_equation(eq: &Equation) -> Self {
        RhsEquation::new(RhsTerm::from_term(&eq.left), RhsTerm::from_term(&eq.right))
    }

    pub fn to_equation(&self) -> Option<Equation> {
        Some(Equation::new(self.left.to_term()?, self.right.to_term()?))
    }

    pub fn for_each_name<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        self.left.for_each_name(f);
        self.right.for_each_name(f);
    }

    pub fn for_each_range<'a>(&'a self, f: &mut impl FnMut(&'a RangeName, bool)) {
        self.left.for_each_range(f);
        self.right.for_each_range(f);
    }

    pub fn has_variadic_name(&self) -> bool {
        let mut found = false;
        self.for_each_range(&mut |_, is_range| found |= !is_range);
        found
    }

    pub fn has_range(&self) -> bool {
        let mut found = false;
        self.for_each_range(&mut |_, is_range| found |= is_range);
        found
    }
}

/// One side of a rule's active pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Agent {
        symbol: Symbol,
        params: Vec<Name>,
    },
    /// `ANY(fixed.., [range])`. Without a range this is a fixed generic
    /// agent of arity `fixed.len()`; with one it is variadic and matches any
    /// agent with at least `fixed.len()` ports.
    Generic {
        fixed: Vec<Name>,
        range: Option<RangeName>,
    },
}

impl Pattern {
    pub fn params(&self) -> &[Name] {
        match self {
            Pattern::Agent { params, .. } => params,
            Pattern::Generic { fixed, .. } => fixed,
        }
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Pattern::Generic { .. })
    }

    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Pattern::Agent { symbol, .. } => Some(symbol),
            Pattern::Generic { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Ordinary,
    FixedGeneric,
    Variadic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Source(Span),
    Expanded { from: String, arity: usize },
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub left: Pattern,
    pub right: Pattern,
    pub rhs: Vec<RhsEquation>,
    pub origin: Origin,
}

/// The concrete and generic halves of a generic rule.
#[derive(Clone, Copy, Debug)]
pub struct GenericView<'r> {
    pub agent: &'r Symbol,
    pub agent_params: &'r [Name],
    pub fixed: &'r [Name],
    pub range: Option<&'r RangeName>,
    pub generic_side: Side,
}

impl<'r> GenericView<'r> {
    /// Arity of the generic agent for fixed rules; the number of fixed ports
    /// for variadic ones.
    pub fn fixed_arity(&self) -> usize {
        self.fixed.len()
    }
}

impl Rule {
    pub fn new(id: impl Into<String>, left: Pattern, right: Pattern, rhs: Vec<RhsEquation>) -> Self {
        Rule {
            id: id.into(),
            left,
            right,
            rhs,
            origin: Origin::Synthetic,
        }
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn kind(&self) -> RuleKind {
        let ranged = |p: &Pattern| matches!(p, Pattern::Generic { range: Some(_), .. });
        if ranged(&self.left) || ranged(&self.right) {
            RuleKind::Variadic
        } else if self.left.is_generic() || self.right.is_generic() {
            RuleKind::FixedGeneric
        } else {
            RuleKind::Ordinary
        }
    }

    pub fn side(&self, side: Side) -> &Pattern {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    /// `None` for ordinary rules and for malformed rules with two generic
    /// sides.
    pub fn generic_view(&self) -> Option<GenericView<'_>> {
        let (agent_side, generic_side) = match (&self.left, &self.right) {
            (Pattern::Agent { .. }, Pattern::Generic { .. }) => (Side::Left, Side::Right),
            (Pattern::Generic { .. }, Pattern::Agent { .. }) => (Side::Right, Side::Left),
            _ => return None,
        };
        let Pattern::Agent { symbol, params } = self.side(agent_side) else {
            unreachable!()
        };
        let Pattern::Generic { fixed, range } = self.side(generic_side) else {
            unreachable!()
        };
        Some(GenericView {
            agent: symbol,
            agent_params: params,
            fixed,
            range: range.as_ref(),
            generic_side,
        })
    }

    /// All LHS parameter names, left side first.
    pub fn lhs_params(&self) -> impl Iterator<Item = &Name> {
        self.left.params().iter().chain(self.right.params())
    }

    pub fn lhs_ranges(&self) -> impl Iterator<Item = &RangeName> {
        [&self.left, &self.right].into_iter().filter_map(|p| match p {
            Pattern::Generic { range: Some(r), .. } => Some(r),
            _ => None,
        })
    }

    pub fn for_each_symbol<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        for p in [&self.left, &self.right] {
            if let Some(s) = p.symbol() {
                f(s);
            }
        }
        for eq in &self.rhs {
            eq.left.for_each_symbol(f);
            eq.right.for_each_symbol(f);
        }
    }

    /// Every name mentioned by the rule.
    pub fn names(&self) -> Vec<&Name> {
        let mut out: Vec<&Name> = self.lhs_params().collect();
        for eq in &self.rhs {
            eq.for_each_name(&mut |n| out.push(n));
        }
        out
    }

    pub fn span(&self) -> Option<Span> {
        match self.origin {
            Origin::Source(span) => Some(span),
            _ => None,
        }
    }

    /// The id of the source rule this one came from.
    pub fn source_id(&self) -> &str {
        match &self.origin {
            Origin::Expanded { from, .. } => from,
            _ => &self.id,
        }
    }
}
