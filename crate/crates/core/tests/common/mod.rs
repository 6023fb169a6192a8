#![allow(dead_code)]

use std::path::PathBuf;

use inets_core::term::checked_occurrences;
use inets_core::{load, Compiled, Configuration, Equation, Machine, Name, Options, RuleTable, Strategy, Symbol, Term};
use rand::seq::SliceRandom;
use rand::Rng;

/// Corpus files that compile and carry a net.
pub const RUNNABLE: &[&str] = &[
    "add",
    "add23",
    "epsdelta",
    "map",
    "map_inc",
    "maybe",
    "maybe_fixed",
    "pick",
    "pick_just",
    "self_sym",
    "stuck",
];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn source(name: &str) -> String {
    let path = corpus_dir().join(format!("{name}.inet"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn compiled(name: &str) -> Compiled {
    load(&source(name), Options::default()).unwrap_or_else(|d| panic!("{name}: {d:?}"))
}

pub fn net(c: &Compiled) -> Configuration {
    c.program.net.clone().expect("program has a net")
}

pub fn agent(name: &str, args: Vec<Term>) -> Term {
    Term::agent(Symbol::new(name, args.len()), args)
}

pub fn nat(n: usize) -> Term {
    (0..n).fold(agent("Z", vec![]), |t, _| agent("S", vec![t]))
}

/// The number of `S` around a `Z`, if `t` is a numeral.
pub fn unary(t: &Term) -> Option<usize> {
    let mut t = t;
    let mut n = 0;
    loop {
        match t {
            Term::Agent(s, args) if s.name() == "Z" && args.is_empty() => return Some(n),
            Term::Agent(s, args) if s.name() == "S" && args.len() == 1 => {
                n += 1;
                t = &args[0];
            }
            _ => return None,
        }
    }
}

/// `< r | Add(r, b) ~ a >`
pub fn add_net(a: usize, b: usize) -> Configuration {
    let r = Term::Name(Name::new(0, "r"));
    Configuration::new(
        vec![r.clone()],
        vec![Equation::new(agent("Add", vec![r, nat(b)]), nat(a))],
    )
}

const SIGNATURE: &[(&str, usize)] = &[("Z", 0), ("Nil", 0), ("S", 1), ("Pair", 2), ("Cons", 2), ("T", 3)];

enum Shape {
    Hole,
    Node(&'static str, Vec<Shape>),
}

fn shape(rng: &mut impl Rng, depth: usize) -> Shape {
    if depth == 0 || rng.gen_bool(0.3) {
        return Shape::Hole;
    }
    let &(name, arity) = SIGNATURE.choose(rng).unwrap();
    Shape::Node(name, (0..arity).map(|_| shape(rng, depth - 1)).collect())
}

fn holes(s: &Shape) -> usize {
    match s {
        Shape::Hole => 1,
        Shape::Node(_, args) => args.iter().map(holes).sum(),
    }
}

fn fill(s: &Shape, names: &mut impl Iterator<Item = Name>) -> Term {
    match s {
        Shape::Hole => Term::Name(names.next().unwrap()),
        Shape::Node(n, args) => agent(n, args.iter().map(|a| fill(a, names)).collect()),
    }
}

/// A random well-formed configuration over a small signature. Every name
/// occurs exactly twice, the interface included.
pub fn random_config(rng: &mut impl Rng, equations: usize, depth: usize) -> Configuration {
    let shapes: Vec<(Shape, Shape)> = (0..equations).map(|_| (shape(rng, depth), shape(rng, depth))).collect();
    let inner: usize = shapes.iter().map(|(l, r)| holes(l) + holes(r)).sum();
    let mut iface_len = rng.gen_range(0..=3);
    if (inner + iface_len) % 2 == 1 {
        iface_len += 1;
    }
    let total = inner + iface_len;
    let mut slots: Vec<u64> = (0..total as u64).map(|i| i / 2).collect();
    slots.shuffle(rng);
    let mut names = slots.into_iter().map(|id| Name::new(id, format!("x{id}")));
    let interface = (0..iface_len).map(|_| Term::Name(names.next().unwrap())).collect();
    let equations = shapes
        .iter()
        .map(|(l, r)| Equation::new(fill(l, &mut names), fill(r, &mut names)))
        .collect();
    Configuration::new(interface, equations)
}

/// Steps a machine to the end, checking the occurrence invariant on every
/// intermediate configuration. Returns the number of steps.
pub fn run_checked(
    config: &Configuration,
    table: &RuleTable,
    strategy: Strategy,
    budget: usize,
) -> Result<usize, String> {
    let mut m = Machine::new(config, table, strategy).map_err(|e| e.to_string())?;
    checked_occurrences(&m.configuration()).map_err(|v| format!("initial: {v}"))?;
    while m.steps() < budget {
        match m.step().map_err(|e| e.to_string())? {
            None => break,
            Some(_) => {
                checked_occurrences(&m.configuration()).map_err(|v| format!("after step {}: {v}", m.steps()))?;
            }
        }
    }
    Ok(m.steps())
}
