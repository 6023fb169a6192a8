mod common;

use common::*;
use inets_core::confluence::{confluence_probe, standard_strategies};
use inets_core::syntax::{parse_program, render_program};
use inets_core::{canonicalize, load, normalize, Code, Options, Status, Strategy};

fn final_form(name: &str) -> (Status, String) {
    let c = compiled(name);
    let out = normalize(&net(&c), &c.table, Strategy::Fifo, 100_000, false).unwrap();
    (out.status, canonicalize(&out.final_config).unwrap().to_string())
}

#[test]
fn normal_forms() {
    let cases = [
        ("add", "< S(S(Z)) | >"),
        ("add23", "< S(S(S(S(S(Z))))) | >"),
        ("epsdelta", "< Pair(S(Z), Z), Pair(S(Z), Z) | >"),
        ("map", "< Cons(S(Z), Cons(S(S(Z)), Nil)) | >"),
        ("map_inc", "< Cons(S(Z), Cons(S(S(Z)), Cons(S(S(S(Z))), Nil))) | >"),
        ("maybe", "< No | >"),
        ("maybe_fixed", "< Nothing | >"),
        ("pick", "< No | >"),
        ("pick_just", "< Jst(Z) | >"),
    ];
    for (name, want) in cases {
        let (status, got) = final_form(name);
        assert_eq!(status, Status::NormalForm, "{name}");
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn self_rule_joins_wires() {
    let (status, got) = final_form("self_sym");
    assert_eq!(status, Status::NormalForm);
    assert_eq!(got, "< v0, v1, v1, v0 | >");
}

#[test]
fn stuck_pair_is_reported() {
    let c = compiled("stuck");
    let out = normalize(&net(&c), &c.table, Strategy::Fifo, 100, false).unwrap();
    assert_eq!(out.steps, 0);
    let Status::Stuck(eqs) = out.status else {
        panic!("{:?}", out.status)
    };
    assert_eq!(eqs.len(), 1);
    assert!(eqs[0].is_active_pair());
}

#[test]
fn rejected_files() {
    let cases = [
        ("dup_pair", Code::DupPair),
        ("maybe_nogrc", Code::GrcOverlap),
        ("self_asym", Code::SelfAsym),
    ];
    for (name, code) in cases {
        let errs = load(&source(name), Options::default()).unwrap_err();
        assert!(errs.iter().any(|d| d.code == code), "{name}: {errs:?}");
    }
}

#[test]
fn overlap_without_check_diverges() {
    let unchecked = Options {
        checked: false,
        ..Options::default()
    };
    let c = load(&source("maybe_nogrc"), unchecked).unwrap();
    let report = confluence_probe(&net(&c), &c.table, &standard_strategies(8), 1000).unwrap();
    let cx = report
        .counterexample
        .expect("FIFO and LIFO pick different generic rules");
    assert_ne!(cx.first.canonical, cx.second.canonical);
    assert!(!cx.first_trace.is_empty() && !cx.second_trace.is_empty());
}

#[test]
fn budget_is_respected() {
    let c = compiled("add23");
    let out = normalize(&net(&c), &c.table, Strategy::Fifo, 3, false).unwrap();
    assert_eq!(out.status, Status::BudgetExhausted);
    assert_eq!(out.steps, 3);
}

#[test]
fn programs_survive_printing() {
    for name in RUNNABLE {
        let p = parse_program(&source(name)).unwrap();
        let again = parse_program(&render_program(&p)).unwrap();
        assert_eq!(render_program(&again), render_program(&p), "{name}");
        assert_eq!(again.symbols, p.symbols, "{name}");
    }
}
