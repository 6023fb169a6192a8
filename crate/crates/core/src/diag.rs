use std::fmt;

/// Location in source text. Lines and columns are 1-based; offsets are byte
/// offsets into the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

/// Stable diagnostic codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// Syntax error.
    Parse,
    /// A symbol used with two different arities.
    Arity,
    /// An LHS parameter (or range) missing from the RHS.
    LinErased,
    /// A name (or range) used more often than linearity allows.
    LinDup,
    /// A RHS-only name (or range) used exactly once.
    LinDangling,
    /// A variadic name in a rule LHS.
    VnInLhs,
    /// An equation mixing a variadic range and a variadic name.
    Mixed,
    /// A generic agent, range or variadic name used where the rule kind does
    /// not allow it, or with the wrong number of ports.
    GenericShape,
    /// Two ordinary rules for one unordered symbol pair.
    DupPair,
    /// A self-rule that is not invariant under swapping its two sides.
    SelfAsym,
    /// Two generic rules in one (arity, symbol) slot.
    DupGeneric,
    /// Two generic rules match one active pair and no ordinary rule does.
    GrcOverlap,
    /// Expansion of a variadic rule would exceed the arity cap.
    ExpandOverflow,
    /// A name occurs more than twice in a net.
    Occurrence,
    /// A generic rule that can match its own agent.
    SelfGeneric,
    /// A name in a net that occurs once and is not in the interface.
    Dangling,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Parse => "E_PARSE",
            Code::Arity => "E_ARITY",
            Code::LinErased => "E_LIN_ERASED",
            Code::LinDup => "E_LIN_DUP",
            Code::LinDangling => "E_LIN_DANGLING",
            Code::VnInLhs => "E_VN_IN_LHS",
            Code::Mixed => "E_MIXED",
            Code::GenericShape => "E_GENERIC_SHAPE",
            Code::DupPair => "E_DUP_PAIR",
            Code::SelfAsym => "E_SELF_ASYM",
            Code::DupGeneric => "E_DUP_GENERIC",
            Code::GrcOverlap => "E_GRC_OVERLAP",
            Code::ExpandOverflow => "E_EXPAND_OVERFLOW",
            Code::Occurrence => "E_OCCURRENCE",
            Code::SelfGeneric => "W_SELF_GENERIC",
            Code::Dangling => "W_DANGLING",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::SelfGeneric | Code::Dangling => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: Option<Span>,
    /// Ids of the rules involved, when there are any.
    pub rules: Vec<String>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            message: message.into(),
            span: None,
            rules: Vec::new(),
        }
    }

    pub fn at(mut self, span: Option<Span>) -> Self {
        self.span = span;
        self
    }

    pub fn with_rules<I, S>(mut self, rules: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rules = rules.into_iter().map(Into::into).collect();
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{level}[{}]", self.code)?;
        if let Some(span) = self.span {
            write!(f, " {span}")?;
        }
        write!(f, ": {}", self.message)
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}
