//! From parsed program to rule table: validation, expansion and the
//! rule-set checks, in that order.

use crate::diag::{has_errors, Code, Diagnostic};
use crate::expand::{expand_variadic, DEFAULT_ARITY_CAP};
use crate::rule::Rule;
use crate::syntax::{parse_program, Program};
use crate::table::RuleTable;
use crate::term::{checked_occurrences, dangling_names, Symbol};
use crate::validate::{check_grc, check_no_ambiguity, check_self_generic, max_arity, validate_rule};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub arity_cap: usize,
    /// When false the ambiguity and overlap checks are skipped and the
    /// first matching rule wins.
    pub checked: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            arity_cap: DEFAULT_ARITY_CAP,
            checked: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub program: Program,
    /// Ordinary and fixed generic rules, variadic rules replaced by their
    /// expansions in place.
    pub expanded: Vec<Rule>,
    pub table: RuleTable,
    pub max_arity: usize,
    pub warnings: Vec<Diagnostic>,
}

/// Runs every static check. On failure the error carries all diagnostics
/// found, warnings included.
pub fn compile(program: Program, options: Options) -> Result<Compiled, Vec<Diagnostic>> {
    let mut diags: Vec<Diagnostic> = program.rules.iter().flat_map(validate_rule).collect();
    if has_errors(&diags) {
        return Err(diags);
    }

    let declared: Vec<Symbol> = program.declared_symbols().collect();
    let max = max_arity(&program.rules, program.net.as_ref(), &declared);
    let mut expanded = Vec::new();
    for rule in &program.rules {
        match expand_variadic(rule, max, options.arity_cap) {
            Ok(rules) => expanded.extend(rules),
            Err(d) => diags.push(d),
        }
    }
    if has_errors(&diags) {
        return Err(diags);
    }

    if options.checked {
        diags.extend(check_no_ambiguity(&expanded));
        diags.extend(check_grc(&expanded));
    }
    diags.extend(check_self_generic(&program.rules));

    if let Some(net) = &program.net {
        match checked_occurrences(net) {
            Err(v) => diags.push(Diagnostic::new(Code::Occurrence, format!("net: {v}")).at(program.net_span)),
            Ok(_) => {
                for n in dangling_names(net) {
                    diags.push(
                        Diagnostic::new(
                            Code::Dangling,
                            format!("net: name `{}` occurs once and is not in the interface", n.display()),
                        )
                        .at(program.net_span),
                    );
                }
            }
        }
    }
    if has_errors(&diags) {
        return Err(diags);
    }

    let table = RuleTable::build_unchecked(expanded.clone());
    Ok(Compiled {
        program,
        expanded,
        table,
        max_arity: max,
        warnings: diags,
    })
}

/// Parses and compiles source text.
pub fn load(src: &str, options: Options) -> Result<Compiled, Vec<Diagnostic>> {
    compile(parse_program(src)?, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAYBE: &str = "
        (1) Ret(r) >< ANY([x]) => r~Jst(ANY([x]));
        (2) Jst(a) >< Bind(b) => a~b;
        (3a) No >< Bind(b) => Aux~b;
        (3b) Aux >< ANY(r, [x]) => Eps~x', No~r;
    ";

    #[test]
    fn grc_overlap_is_found_after_expansion() {
        let errs = load(&format!("{MAYBE} net (r) | No ~ Bind(r);"), Options::default()).unwrap_err();
        let overlap: Vec<_> = errs.iter().filter(|d| d.code == Code::GrcOverlap).collect();
        assert_eq!(overlap.len(), 1);
        assert_eq!(overlap[0].rules, vec!["1".to_string(), "3b".to_string()]);
    }

    #[test]
    fn disambiguating_rule_resolves_overlap() {
        let src = format!("{MAYBE} (GRC) Aux >< Ret(r) => No~r;\n net (r) | No ~ Bind(r);");
        let c = load(&src, Options::default()).unwrap();
        assert_eq!(c.max_arity, 1);
        let ids: Vec<&str> = c.expanded.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["1/0", "1/1", "2", "3a", "3b/1", "GRC"]);
    }

    #[test]
    fn unchecked_skips_overlap() {
        assert!(load(
            MAYBE,
            Options {
                checked: false,
                ..Options::default()
            }
        )
        .is_ok());
    }

    #[test]
    fn arity_cap() {
        let src = "Eps >< ANY([x]) => Eps~x';\n agent Big/5;";
        let errs = load(
            src,
            Options {
                arity_cap: 4,
                checked: true,
            },
        )
        .unwrap_err();
        assert_eq!(errs[0].code, Code::ExpandOverflow);
        assert_eq!(load(src, Options::default()).unwrap().expanded.len(), 6);
    }

    #[test]
    fn net_occurrence_and_dangling() {
        let errs = load("net (x, x) | x ~ Z;", Options::default()).unwrap_err();
        assert_eq!(errs[0].code, Code::Occurrence);
        let ok = load("net () | x ~ Z;", Options::default()).unwrap();
        assert_eq!(ok.warnings[0].code, Code::Dangling);
    }
}
