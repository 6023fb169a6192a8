use std::path::PathBuf;
use std::process::{Command, Output};

const RUNNABLE: &[&str] = &[
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

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn inets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    inets(args).status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Compares against `corpus/golden/<file>`. Set UPDATE_GOLDEN=1 to rewrite.
fn golden(file: &str, got: &str) {
    let path = corpus("golden").join(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{file}");
}

#[test]
fn run_and_trace_goldens() {
    for name in RUNNABLE {
        let file = corpus(&format!("{name}.inet"));
        let file = file.to_str().unwrap();
        golden(&format!("{name}.run.txt"), &stdout(&inets(&["run", file])));
        golden(&format!("{name}.trace.txt"), &stdout(&inets(&["trace", file])));
    }
    let pick = corpus("pick.inet");
    golden(
        "pick.trace.jsonl",
        &stdout(&inets(&["trace", "--json", pick.to_str().unwrap()])),
    );
}

#[test]
fn json_trace_is_one_object_per_step() {
    let pick = corpus("pick.inet");
    let out = stdout(&inets(&["trace", "--json", pick.to_str().unwrap()]));
    let kinds: Vec<String> = out
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["kind"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(
        kinds,
        ["interaction", "communication", "interaction", "interaction", "collect"]
    );
}

#[test]
fn exit_codes() {
    let path = |n: &str| corpus(n).to_str().unwrap().to_string();
    assert_eq!(code(&["check", &path("add.inet")]), 0);
    assert_eq!(code(&["run", &path("add.inet")]), 0);
    assert_eq!(code(&["check", &path("dup_pair.inet")]), 1);
    assert_eq!(code(&["check", &path("maybe_nogrc.inet")]), 1);
    assert_eq!(code(&["check", "--unchecked", &path("maybe_nogrc.inet")]), 0);
    assert_eq!(code(&["check", &path("no_such_file.inet")]), 2);
    assert_eq!(code(&["run", &path("stuck.inet")]), 3);
    assert_eq!(code(&["run", "--max-steps", "2", &path("add23.inet")]), 4);
    assert_eq!(code(&["fuzz", "--seeds", "20", &path("pick.inet")]), 0);
    assert_eq!(
        code(&["fuzz", "--unchecked", "--seeds", "20", &path("maybe_nogrc.inet")]),
        5
    );
}

#[test]
fn parse_errors_and_missing_net() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.inet");
    std::fs::write(&bad, "Add(r, y) >< Z => r = y;\n").unwrap();
    let out = inets(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_PARSE"));

    let rules = dir.path().join("rules.inet");
    std::fs::write(&rules, "Add(r, y) >< Z => r~y;\n").unwrap();
    assert_eq!(code(&["check", rules.to_str().unwrap()]), 0);
    assert_eq!(code(&["run", rules.to_str().unwrap()]), 2);
}

#[test]
fn stuck_equations_go_to_stderr() {
    let out = inets(&["run", corpus("stuck.inet").to_str().unwrap()]);
    assert_eq!(stdout(&out), "< r | Add(r, Z)~S(Z) >\n");
    assert_eq!(String::from_utf8_lossy(&out.stderr), "stuck: Add(r, Z)~S(Z)\n");
}

#[test]
fn expand_shows_instances() {
    let out = stdout(&inets(&["expand", corpus("maybe.inet").to_str().unwrap()]));
    assert!(
        out.contains("# from 3b at arity 1\n(3b/1) Aux >< ANY(r) => No~r;"),
        "{out}"
    );
    assert!(out.contains("(GRC) Aux >< Ret(r) => No~r;"), "{out}");
}

#[test]
fn fuzz_prints_both_traces_on_divergence() {
    let out = stdout(&inets(&[
        "fuzz",
        "--unchecked",
        "--seeds",
        "4",
        corpus("maybe_nogrc.inet").to_str().unwrap(),
    ]));
    assert!(out.starts_with("divergence between strategies\n"), "{out}");
    assert_eq!(out.matches("\n== ").count(), 2, "{out}");
    assert!(out.contains("[rule 1/0]") && out.contains("[rule 3b/1]"), "{out}");
}

fn write(dir: &tempfile::TempDir, name: &str, src: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, src).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn trace_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let normal = write(&dir, "normal.inet", "net (r) | ;\n");
    let out = inets(&["trace", &normal]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "< r | >\n");

    let add = corpus("add.inet");
    let out = inets(&["trace", "--max-steps", "1", add.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains('↪')).count(), 1);
}

#[test]
fn expansion_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let rule_lines = |out: &str| out.lines().filter(|l| l.starts_with('(')).count();

    let eps = write(&dir, "eps.inet", "(eps) Eps >< ANY([x]) => Eps~x';\nagent T/3;\n");
    assert_eq!(rule_lines(&stdout(&inets(&["expand", &eps]))), 4);

    let dup = write(
        &dir,
        "dup.inet",
        "(dup) Dup(d1, d2) >< ANY([x]) => d1~ANY([y]), d2~ANY([z]), x'~Dup(y', z');\nagent T/3;\n",
    );
    let out = stdout(&inets(&["expand", &dup]));
    let arity3 = out
        .lines()
        .find(|l| l.starts_with("(dup/3)"))
        .expect("arity 3 instance");
    assert_eq!(arity3.matches("~").count(), 5, "{arity3}");
    assert_eq!(arity3.matches("~ANY(").count(), 2, "{arity3}");
    assert_eq!(arity3.matches("~Dup(").count(), 3, "{arity3}");

    let add = corpus("add.inet");
    let out = stdout(&inets(&["expand", add.to_str().unwrap()]));
    assert!(!out.contains("# from"));
    assert_eq!(rule_lines(&out), 2);
}

#[test]
fn fuzz_on_a_trivial_net() {
    let dir = tempfile::tempdir().unwrap();
    let trivial = write(&dir, "trivial.inet", "net () | ;\n");
    let out = inets(&["fuzz", "--seeds", "3", &trivial]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 steps"), "{}", stdout(&out));
}

#[test]
fn corpus_programs_fuzz_clean() {
    for name in RUNNABLE {
        let file = corpus(&format!("{name}.inet"));
        assert_eq!(code(&["fuzz", "--seeds", "30", file.to_str().unwrap()]), 0, "{name}");
    }
}

#[test]
fn runs_are_reproducible() {
    let map = corpus("map.inet");
    for strategy in ["fifo", "lifo", "seed:42"] {
        let args = ["trace", "--strategy", strategy, map.to_str().unwrap()];
        assert_eq!(inets(&args).stdout, inets(&args).stdout, "{strategy}");
    }
    assert_eq!(code(&["run", "--strategy", "sideways", map.to_str().unwrap()]), 2);
}
