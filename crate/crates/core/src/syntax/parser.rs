use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::lexer::{tokenize, Tok, Token};
use crate::diag::{Code, Diagnostic, Span};
use crate::name::{Name, NameSupply};
use crate::rule::{Origin, Pattern, RangeName, RhsEquation, RhsTerm, Rule};
use crate::term::{Configuration, Equation, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub arity: usize,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub declarations: Vec<Declaration>,
    /// Every symbol with its declared or inferred arity.
    pub symbols: BTreeMap<String, usize>,
    pub rules: Vec<Rule>,
    pub net: Option<Configuration>,
    pub net_span: Option<Span>,
}

impl Program {
    pub fn declared_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().map(|(n, &k)| Symbol::new(n.as_str(), k))
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser<'s> {
    src: &'s str,
    toks: Vec<Token>,
    pos: usize,
    supply: NameSupply,
    scope: HashMap<String, Name>,
    uses: Vec<(String, usize, Span)>,
    diags: Vec<Diagnostic>,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> PResult<Self> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
            supply: NameSupply::new(),
            scope: HashMap::new(),
            uses: Vec::new(),
            diags: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        self.pos.checked_sub(1).map_or(0, |p| self.toks[p].span.end)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(Diagnostic::new(
            Code::Parse,
            format!("expected {expected}, found {}", self.peek().describe()),
        )
        .at(Some(self.span())))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.error(&tok.describe())
        }
    }

    fn name(&mut self, text: &str) -> Name {
        if let Some(n) = self.scope.get(text) {
            return n.clone();
        }
        let n = self.supply.fresh(text);
        self.scope.insert(text.to_string(), n.clone());
        n
    }

    fn symbol(&mut self, name: String, arity: usize, span: Span) -> Symbol {
        self.uses.push((name.clone(), arity, span));
        Symbol::new(name, arity)
    }

    fn program(&mut self) -> PResult<Program> {
        let mut prog = Program::default();
        let mut ids: HashMap<String, Span> = HashMap::new();
        while *self.peek() != Tok::Eof {
            match self.peek() {
                Tok::KwAgent => {
                    let start = self.bump().span;
                    let Tok::Agent(name) = self.peek().clone() else {
                        return self.error("an agent name");
                    };
                    self.bump();
                    self.expect(Tok::Slash)?;
                    let Tok::Nat(arity) = *self.peek() else {
                        return self.error("an arity");
                    };
                    self.bump();
                    self.expect(Tok::Semi)?;
                    prog.declarations.push(Declaration {
                        name,
                        arity,
                        span: start,
                    });
                }
                Tok::KwNet => {
                    let start = self.span();
                    if prog.net.is_some() {
                        return Err(Diagnostic::new(Code::Parse, "a program has at most one net").at(Some(start)));
                    }
                    self.bump();
                    self.scope.clear();
                    self.expect(Tok::LParen)?;
                    let interface = self.term_list(&Tok::RParen)?;
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Bar)?;
                    let equations = self.net_equations(&Tok::Semi)?;
                    self.expect(Tok::Semi)?;
                    prog.net = Some(Configuration::new(interface, equations));
                    prog.net_span = Some(start);
                }
                _ => {
                    let label = self.label()?;
                    let rule = self.rule(label, prog.rules.len() + 1)?;
                    let span = rule.span().unwrap_or_default();
                    if let Some(first) = ids.insert(rule.id.clone(), span) {
                        return Err(Diagnostic::new(
                            Code::Parse,
                            format!("rule id `{}` already used at {first}", rule.id),
                        )
                        .at(Some(span)));
                    }
                    prog.rules.push(rule);
                }
            }
        }
        Ok(prog)
    }

    /// `(label)` in front of a rule. The label is the raw text inside.
    fn label(&mut self) -> PResult<Option<String>> {
        if *self.peek() != Tok::LParen {
            return Ok(None);
        }
        let open = self.bump().span;
        while !matches!(self.peek(), Tok::RParen | Tok::Eof | Tok::Semi) {
            self.bump();
        }
        let close = self.expect(Tok::RParen)?;
        let text = self.src[open.end..close.start].trim();
        if text.is_empty() || text.contains(char::is_whitespace) {
            return Err(Diagnostic::new(Code::Parse, "a rule label must be a single non-empty word").at(Some(open)));
        }
        Ok(Some(text.to_string()))
    }

    fn rule(&mut self, label: Option<String>, index: usize) -> PResult<Rule> {
        self.scope.clear();
        let start = self.span();
        let left = self.pattern()?;
        self.expect(Tok::Interacts)?;
        let right = self.pattern()?;
        self.expect(Tok::Arrow)?;
        let mut rhs = Vec::new();
        if *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::RParen {
            self.bump();
            self.bump();
        } else {
            loop {
                let l = self.rhs_term()?;
                self.expect(Tok::Tilde)?;
                let r = self.rhs_term()?;
                rhs.push(RhsEquation::new(l, r));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::Semi)?;
        let span = Span {
            end: self.prev_end(),
            ..start
        };
        let id = label.unwrap_or_else(|| format!("r{index}"));
        Ok(Rule::new(id, left, right, rhs).with_origin(Origin::Source(span)))
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Agent(s) => {
                self.bump();
                let mut params = Vec::new();
                if self.eat(&Tok::LParen) {
                    loop {
                        params.push(self.lhs_name()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                let symbol = self.symbol(s, params.len(), start);
                Ok(Pattern::Agent { symbol, params })
            }
            Tok::Any => {
                self.bump();
                let mut fixed = Vec::new();
                let mut range = None;
                if self.eat(&Tok::LParen) {
                    loop {
                        if *self.peek() == Tok::LBracket {
                            range = Some(self.range()?);
                            break;
                        }
                        fixed.push(self.lhs_name()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                Ok(Pattern::Generic { fixed, range })
            }
            _ => self.error("an agent or `ANY`"),
        }
    }

    fn lhs_name(&mut self) -> PResult<Name> {
        let span = self.span();
        let Tok::Name(s) = self.peek().clone() else {
            return self.error("a name");
        };
        self.bump();
        if *self.peek() == Tok::Prime {
            self.bump();
            self.diags.push(
                Diagnostic::new(
                    Code::VnInLhs,
                    format!("variadic name `{s}'` on the left-hand side of a rule"),
                )
                .at(Some(span)),
            );
        }
        Ok(self.name(&s))
    }

    fn range(&mut self) -> PResult<RangeName> {
        self.expect(Tok::LBracket)?;
        let Tok::Name(s) = self.peek().clone() else {
            return self.error("a range name");
        };
        self.bump();
        self.expect(Tok::RBracket)?;
        Ok(RangeName::new(s))
    }

    fn rhs_term(&mut self) -> PResult<RhsTerm> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Name(s) => {
                self.bump();
                if self.eat(&Tok::Prime) {
                    Ok(RhsTerm::Variadic(RangeName::new(s)))
                } else {
                    Ok(RhsTerm::Name(self.name(&s)))
                }
            }
            Tok::Agent(s) => {
                self.bump();
                let (args, range) = self.rhs_args()?;
                if range.is_some() {
                    let symbol = Symbol::new(s, args.len());
                    return Ok(RhsTerm::Agent {
                        head: crate::rule::Head::Symbol(symbol),
                        args,
                        range,
                    });
                }
                let symbol = self.symbol(s, args.len(), start);
                Ok(RhsTerm::symbol(symbol, args))
            }
            Tok::Any => {
                self.bump();
                let (args, range) = self.rhs_args()?;
                Ok(RhsTerm::generic(args, range))
            }
            _ => self.error("a term"),
        }
    }

    fn rhs_args(&mut self) -> PResult<(Vec<RhsTerm>, Option<RangeName>)> {
        let mut args = Vec::new();
        let mut range = None;
        if !self.eat(&Tok::LParen) {
            return Ok((args, range));
        }
        loop {
            if *self.peek() == Tok::LBracket {
                range = Some(self.range()?);
                break;
            }
            args.push(self.rhs_term()?);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RParen)?;
        Ok((args, range))
    }

    fn term(&mut self) -> PResult<Term> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Name(s) => {
                self.bump();
                Ok(Term::Name(self.name(&s)))
            }
            Tok::Agent(s) => {
                self.bump();
                let mut args = Vec::new();
                if self.eat(&Tok::LParen) {
                    args = self.term_list(&Tok::RParen)?;
                    if args.is_empty() {
                        return self.error("a term");
                    }
                    self.expect(Tok::RParen)?;
                }
                let symbol = self.symbol(s, args.len(), start);
                Ok(Term::Agent(symbol, args))
            }
            Tok::Any => Err(Diagnostic::new(Code::Parse, "`ANY` may only appear in rules").at(Some(start))),
            _ => self.error("a term"),
        }
    }

    fn term_list(&mut self, close: &Tok) -> PResult<Vec<Term>> {
        let mut out = Vec::new();
        if self.peek() == close {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn net_equations(&mut self, close: &Tok) -> PResult<Vec<Equation>> {
        let mut out = Vec::new();
        if self.peek() == close {
            return Ok(out);
        }
        if *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::RParen {
            self.bump();
            self.bump();
            return Ok(out);
        }
        loop {
            let l = self.term()?;
            self.expect(Tok::Tilde)?;
            let r = self.term()?;
            out.push(Equation::new(l, r));
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    /// Symbol table from declarations and uses. A symbol declared or used
    /// with more than one arity is an error.
    fn arities(&self, declarations: &[Declaration]) -> (BTreeMap<String, usize>, Vec<Diagnostic>) {
        let mut seen: BTreeMap<&str, (BTreeSet<usize>, Span)> = BTreeMap::new();
        let decls = declarations.iter().map(|d| (d.name.as_str(), d.arity, d.span));
        let uses = self.uses.iter().map(|(n, k, s)| (n.as_str(), *k, *s));
        for (name, arity, span) in decls.chain(uses) {
            let e = seen.entry(name).or_insert_with(|| (BTreeSet::new(), span));
            e.0.insert(arity);
            if (span.start, span.line) < (e.1.start, e.1.line) {
                e.1 = span;
            }
        }
        let mut table = BTreeMap::new();
        let mut errors = Vec::new();
        for (name, (arities, span)) in seen {
            if arities.len() == 1 {
                table.insert(name.to_string(), *arities.first().unwrap());
            } else {
                let list: Vec<String> = arities.iter().map(usize::to_string).collect();
                errors.push(
                    Diagnostic::new(
                        Code::Arity,
                        format!("agent `{name}` is used with arities {}", list.join(", ")),
                    )
                    .at(Some(span)),
                );
            }
        }
        (table, errors)
    }
}

pub fn parse_program(src: &str) -> Result<Program, Vec<Diagnostic>> {
    let mut p = Parser::new(src).map_err(|d| vec![d])?;
    let mut prog = p.program().map_err(|d| vec![d])?;
    let (symbols, arity_errors) = p.arities(&prog.declarations);
    let mut diags = std::mem::take(&mut p.diags);
    diags.extend(arity_errors);
    if diags.iter().any(Diagnostic::is_error) {
        return Err(diags);
    }
    prog.symbols = symbols;
    Ok(prog)
}

/// Parses `< t1, t2 | e1, e2 >`.
pub fn parse_configuration(src: &str) -> Result<Configuration, Vec<Diagnostic>> {
    let mut p = Parser::new(src).map_err(|d| vec![d])?;
    let parse = |p: &mut Parser| -> PResult<Configuration> {
        p.expect(Tok::Lt)?;
        let interface = p.term_list(&Tok::Bar)?;
        p.expect(Tok::Bar)?;
        let equations = p.net_equations(&Tok::Gt)?;
        p.expect(Tok::Gt)?;
        p.expect(Tok::Eof)?;
        Ok(Configuration::new(interface, equations))
    };
    let config = parse(&mut p).map_err(|d| vec![d])?;
    let (_, errors) = p.arities(&[]);
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::RuleKind;

    #[test]
    fn ordinary_rule() {
        let p = parse_program("Add(r,y) >< S(x) => r~S(w), x~Add(w,y);").unwrap();
        assert_eq!(p.rules.len(), 1);
        assert_eq!(p.rules[0].kind(), RuleKind::Ordinary);
        assert_eq!(p.rules[0].id, "r1");
        assert_eq!(p.symbols.get("Add"), Some(&2));
        assert_eq!(p.symbols.get("S"), Some(&1));
    }

    #[test]
    fn variadic_rule() {
        let p = parse_program("Eps >< ANY([x]) => Eps~x';").unwrap();
        let r = &p.rules[0];
        assert_eq!(r.kind(), RuleKind::Variadic);
        assert_eq!(r.lhs_ranges().next().unwrap().as_str(), "x");
        assert!(r.rhs[0].has_variadic_name());
    }

    #[test]
    fn fixed_generic_rule() {
        let p = parse_program("Aux >< ANY(r) => r~Nothing;").unwrap();
        let r = &p.rules[0];
        assert_eq!(r.kind(), RuleKind::FixedGeneric);
        assert_eq!(r.generic_view().unwrap().fixed_arity(), 1);
    }

    #[test]
    fn labels_and_empty_rhs() {
        let p = parse_program("(3b) Aux >< ANY(r,[x]) => Eps~x', No~r;\n(e) Eps >< Z => ();").unwrap();
        assert_eq!(p.rules[0].id, "3b");
        assert_eq!(p.rules[1].id, "e");
        assert!(p.rules[1].rhs.is_empty());
    }

    #[test]
    fn net_with_interface() {
        let p = parse_program("net (r) | Add(r, S(Z)) ~ S(Z);").unwrap();
        let net = p.net.unwrap();
        assert_eq!(net.interface.len(), 1);
        assert_eq!(net.equations.len(), 1);
        assert_eq!(net.names().len(), 2);
    }

    #[test]
    fn arity_conflict_is_reported_once() {
        let errs = parse_program("A(x) >< B => x~S;\nnet () | S(Z) ~ A(Z);").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].code, Code::Arity);
        assert!(errs[0].message.contains("`S`"));
    }

    #[test]
    fn declaration_fixes_arity() {
        let errs = parse_program("agent S/2;\nnet () | S(Z) ~ Z;").unwrap_err();
        assert_eq!(errs[0].code, Code::Arity);
        let ok = parse_program("agent S/1; agent Q/3;").unwrap();
        assert_eq!(ok.symbols.get("Q"), Some(&3));
    }

    #[test]
    fn variadic_name_on_lhs() {
        let errs = parse_program("A(x') >< B => x~B;").unwrap_err();
        assert_eq!(errs[0].code, Code::VnInLhs);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let errs = parse_program("A >< B => \n  x~;").unwrap_err();
        assert_eq!(errs[0].code, Code::Parse);
        let span = errs[0].span.unwrap();
        assert_eq!((span.line, span.column), (2, 5));
    }

    #[test]
    fn duplicate_labels() {
        let errs = parse_program("(a) A >< B => ();\n(a) A >< C => ();").unwrap_err();
        assert_eq!(errs[0].code, Code::Parse);
    }

    #[test]
    fn configuration_literal() {
        let c = parse_configuration("< r, x | No~r >").unwrap();
        assert_eq!(c.interface.len(), 2);
        assert_eq!(c.equations.len(), 1);
        assert_eq!(parse_configuration("< | >").unwrap(), Configuration::default());
    }
}
