use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use serde::Serialize;

use super::parser::Program;
use crate::name::Name;
use crate::rule::{Head, Origin, Pattern, RhsEquation, RhsTerm, Rule};
use crate::steps::StepResult;
use crate::term::{Configuration, Equation, Term};

/// Picks a printable spelling for each name. Distinct names that share a
/// display string get `_1`, `_2`, ... in order of first appearance.
#[derive(Default)]
pub struct NameTable {
    spelling: HashMap<Name, String>,
    taken: HashSet<String>,
}

impl NameTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spell(&mut self, n: &Name) -> &str {
        if !self.spelling.contains_key(n) {
            let base = n.display();
            let mut pick = base.to_string();
            let mut k = 1;
            while self.taken.contains(&pick) {
                pick = format!("{base}_{k}");
                k += 1;
            }
            self.taken.insert(pick.clone());
            self.spelling.insert(n.clone(), pick);
        }
        &self.spelling[n]
    }
}

fn write_term(out: &mut String, t: &Term, names: &mut NameTable) {
    match t {
        Term::Name(n) => out.push_str(names.spell(n)),
        Term::Agent(s, args) => {
            out.push_str(s.name());
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(out, a, names);
                }
                out.push(')');
            }
        }
    }
}

pub fn render_term_with(t: &Term, names: &mut NameTable) -> String {
    let mut s = String::new();
    write_term(&mut s, t, names);
    s
}

pub fn render_term(t: &Term) -> String {
    render_term_with(t, &mut NameTable::new())
}

pub fn render_equation_with(e: &Equation, names: &mut NameTable) -> String {
    let mut s = String::new();
    write_term(&mut s, &e.left, names);
    s.push('~');
    write_term(&mut s, &e.right, names);
    s
}

fn join(items: Vec<String>) -> String {
    items.join(", ")
}

pub fn render_configuration_with(c: &Configuration, names: &mut NameTable) -> String {
    let iface: Vec<String> = c.interface.iter().map(|t| render_term_with(t, names)).collect();
    let eqs: Vec<String> = c.equations.iter().map(|e| render_equation_with(e, names)).collect();
    let mut s = String::from("<");
    if !iface.is_empty() {
        s.push(' ');
        s.push_str(&join(iface));
    }
    s.push_str(" |");
    if !eqs.is_empty() {
        s.push(' ');
        s.push_str(&join(eqs));
    }
    s.push_str(" >");
    s
}

/// `< t1, t2 | e1, e2 >`
pub fn render_configuration(c: &Configuration) -> String {
    render_configuration_with(c, &mut NameTable::new())
}

fn write_rhs_term(out: &mut String, t: &RhsTerm, names: &mut NameTable) {
    match t {
        RhsTerm::Name(n) => out.push_str(names.spell(n)),
        RhsTerm::Variadic(r) => {
            out.push_str(r.as_str());
            out.push('\'');
        }
        RhsTerm::Agent { head, args, range } => {
            match head {
                Head::Symbol(s) => out.push_str(s.name()),
                Head::Generic => out.push_str("ANY"),
            }
            if args.is_empty() && range.is_none() {
                return;
            }
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_rhs_term(out, a, names);
            }
            if let Some(r) = range {
                if !args.is_empty() {
                    out.push_str(", ");
                }
                let _ = write!(out, "[{}]", r.as_str());
            }
            out.push(')');
        }
    }
}

fn write_pattern(out: &mut String, p: &Pattern, names: &mut NameTable) {
    let (head, params, range) = match p {
        Pattern::Agent { symbol, params } => (symbol.name(), params, None),
        Pattern::Generic { fixed, range } => ("ANY", fixed, range.as_ref()),
    };
    out.push_str(head);
    if params.is_empty() && range.is_none() {
        return;
    }
    out.push('(');
    let mut parts: Vec<String> = params.iter().map(|n| names.spell(n).to_string()).collect();
    if let Some(r) = range {
        parts.push(format!("[{}]", r.as_str()));
    }
    out.push_str(&join(parts));
    out.push(')');
}

fn render_rhs_equation(e: &RhsEquation, names: &mut NameTable) -> String {
    let mut s = String::new();
    write_rhs_term(&mut s, &e.left, names);
    s.push('~');
    write_rhs_term(&mut s, &e.right, names);
    s
}

/// `(id) L >< R => e1, e2;`
pub fn render_rule(rule: &Rule) -> String {
    let mut names = NameTable::new();
    let mut s = format!("({}) ", rule.id);
    write_pattern(&mut s, &rule.left, &mut names);
    s.push_str(" >< ");
    write_pattern(&mut s, &rule.right, &mut names);
    s.push_str(" => ");
    if rule.rhs.is_empty() {
        s.push_str("()");
    } else {
        let eqs: Vec<String> = rule.rhs.iter().map(|e| render_rhs_equation(e, &mut names)).collect();
        s.push_str(&join(eqs));
    }
    s.push(';');
    s
}

/// Rules with expansion provenance as a comment line above each expanded
/// rule.
pub fn render_rules(rules: &[Rule]) -> String {
    let mut out = String::new();
    for r in rules {
        if let Origin::Expanded { from, arity } = &r.origin {
            let _ = writeln!(out, "# from {from} at arity {arity}");
        }
        out.push_str(&render_rule(r));
        out.push('\n');
    }
    out
}

/// Source text for a whole program: declarations, rules, then the net.
pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    for d in &p.declarations {
        let _ = writeln!(out, "agent {}/{};", d.name, d.arity);
    }
    out.push_str(&render_rules(&p.rules));
    if let Some(net) = &p.net {
        let mut names = NameTable::new();
        let iface: Vec<String> = net.interface.iter().map(|t| render_term_with(t, &mut names)).collect();
        let eqs: Vec<String> = net
            .equations
            .iter()
            .map(|e| render_equation_with(e, &mut names))
            .collect();
        let _ = writeln!(out, "net ({}) | {};", join(iface), join(eqs));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFormat {
    Text,
    JsonLines,
}

#[derive(Serialize)]
struct TraceRecord<'a> {
    index: usize,
    kind: &'a str,
    rule: Option<&'a str>,
    before: String,
    after: Vec<String>,
}

/// One line per step. Names are spelled consistently across the trace.
pub fn render_trace(trace: &[StepResult], format: TraceFormat) -> String {
    let mut names = NameTable::new();
    let mut out = String::new();
    for (index, step) in trace.iter().enumerate() {
        let before = render_equation_with(&step.before, &mut names);
        let after: Vec<String> = step.after.iter().map(|e| render_equation_with(e, &mut names)).collect();
        match format {
            TraceFormat::Text => {
                let _ = write!(out, "{index}. ↪{} ", step.kind.short());
                if let Some(id) = &step.rule_id {
                    let _ = write!(out, "[rule {id}] ");
                }
                let rhs = if after.is_empty() {
                    "()".to_string()
                } else {
                    join(after)
                };
                let _ = writeln!(out, "{before} => {rhs}");
            }
            TraceFormat::JsonLines => {
                let record = TraceRecord {
                    index,
                    kind: step.kind.as_str(),
                    rule: step.rule_id.as_deref(),
                    before,
                    after,
                };
                out.push_str(&serde_json::to_string(&record).expect("trace records serialize"));
                out.push('\n');
            }
        }
    }
    out
}
