use crate::diag::{Code, Diagnostic, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Uppercase-initial identifier.
    Agent(String),
    /// Lowercase-initial identifier.
    Name(String),
    Nat(usize),
    Any,
    KwAgent,
    KwNet,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Slash,
    Bar,
    Tilde,
    Prime,
    Interacts,
    Arrow,
    Lt,
    Gt,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Agent(s) | Tok::Name(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Any => "`ANY`".into(),
            Tok::KwAgent => "`agent`".into(),
            Tok::KwNet => "`net`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Interacts => "`><`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'s> {
    src: &'s str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'s> Cursor<'s> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn mark(&self) -> Span {
        Span {
            start: self.pos,
            end: self.pos,
            line: self.line,
            column: self.column,
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut c = Cursor {
        src,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        while let Some(ch) = c.peek() {
            if ch.is_whitespace() {
                c.bump();
            } else if ch == '#' {
                while c.peek().is_some_and(|ch| ch != '\n') {
                    c.bump();
                }
            } else {
                break;
            }
        }
        let mut span = c.mark();
        let Some(ch) = c.bump() else {
            out.push(Token { tok: Tok::Eof, span });
            return Ok(out);
        };
        let tok = match ch {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '/' => Tok::Slash,
            '|' => Tok::Bar,
            '~' => Tok::Tilde,
            '\'' => Tok::Prime,
            '<' => Tok::Lt,
            '>' if c.peek() == Some('<') => {
                c.bump();
                Tok::Interacts
            }
            '>' => Tok::Gt,
            '=' if c.peek() == Some('>') => {
                c.bump();
                Tok::Arrow
            }
            d if d.is_ascii_digit() => {
                let start = span.start;
                while c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                    c.bump();
                }
                let text = &src[start..c.pos];
                match text.parse() {
                    Ok(n) => Tok::Nat(n),
                    Err(_) => {
                        span.end = c.pos;
                        return Err(
                            Diagnostic::new(Code::Parse, format!("number `{text}` is too large")).at(Some(span))
                        );
                    }
                }
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = span.start;
                while c.peek().is_some_and(|ch| ch.is_alphanumeric() || ch == '_') {
                    c.bump();
                }
                let text = &src[start..c.pos];
                match text {
                    "ANY" => Tok::Any,
                    "agent" => Tok::KwAgent,
                    "net" => Tok::KwNet,
                    _ if a.is_uppercase() => Tok::Agent(text.to_string()),
                    _ => Tok::Name(text.to_string()),
                }
            }
            other => {
                span.end = c.pos;
                let hint = if other == '=' {
                    " (equations are written with `~`)"
                } else {
                    ""
                };
                return Err(
                    Diagnostic::new(Code::Parse, format!("unexpected character `{other}`{hint}")).at(Some(span)),
                );
            }
        };
        span.end = c.pos;
        out.push(Token { tok, span });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn rule_tokens() {
        assert_eq!(
            toks("Eps >< ANY([x]) => Eps~x';"),
            vec![
                Tok::Agent("Eps".into()),
                Tok::Interacts,
                Tok::Any,
                Tok::LParen,
                Tok::LBracket,
                Tok::Name("x".into()),
                Tok::RBracket,
                Tok::RParen,
                Tok::Arrow,
                Tok::Agent("Eps".into()),
                Tok::Tilde,
                Tok::Name("x".into()),
                Tok::Prime,
                Tok::Semi,
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn comments_and_configuration_brackets() {
        assert_eq!(
            toks("# note\n< r | >"),
            vec![Tok::Lt, Tok::Name("r".into()), Tok::Bar, Tok::Gt, Tok::Eof]
        );
    }

    #[test]
    fn spans_are_line_and_column() {
        let t = tokenize("agent\n  Z/0;").unwrap();
        assert_eq!((t[1].span.line, t[1].span.column), (2, 3));
        assert_eq!(&"agent\n  Z/0;"[t[1].span.start..t[1].span.end], "Z");
    }

    #[test]
    fn bad_character() {
        let e = tokenize("A >< B => x = y;").unwrap_err();
        assert_eq!(e.code, Code::Parse);
        assert_eq!(e.span.unwrap().column, 13);
    }
}
