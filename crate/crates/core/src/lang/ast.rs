//! Abstract syntax tree for MoVer programs.

/// Byte span of a statement in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub statements: Vec<Statement>,
    pub source: String,
}

impl Program {
    /// Source text of statement `i`, trimmed.
    pub fn statement_source(&self, i: usize) -> &str {
        let span = self.statements[i].span;
        self.source[span.start..span.end].trim()
    }
}

#[derive(Clone, Debug)]
pub struct Statement {
    /// `Some(name)` for `name = expr` bindings.
    pub binding: Option<String>,
    pub expr: Expr,
    pub span: Span,
}

// Spans are positional metadata; statement equality is structural.
impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.binding == other.binding && self.expr == other.expr
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantKind {
    Exists,
    Iota,
    All,
}

impl QuantKind {
    pub fn name(&self) -> &'static str {
        match self {
            QuantKind::Exists => "exists",
            QuantKind::Iota => "iota",
            QuantKind::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortName {
    Object,
    Motion,
}

impl SortName {
    pub fn name(&self) -> &'static str {
        match self {
            SortName::Object => "Object",
            SortName::Motion => "Motion",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Quantifier {
        kind: QuantKind,
        sort: SortName,
        var: String,
        body: Box<Expr>,
    },
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    Call {
        name: String,
        args: Vec<Arg>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    /// Variable reference: a lambda parameter or an earlier binding.
    Var(String),
    Num(f64),
    Str(String),
    List(Vec<ArgScalar>),
    /// Nested expression argument: a quantifier (`agent(m, iota(...))`) or
    /// a predicate call (`post(m, s_top(o_1, o_2))`).
    Expr(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ArgScalar {
    Num(f64),
    /// Strings inside lists are either plain or percent forms like "50%".
    Str(String),
}

impl ArgScalar {
    /// Percent strings resolve against a bbox extent; `"50%"` yields 50.0.
    pub fn as_percent(&self) -> Option<f64> {
        match self {
            ArgScalar::Str(s) => s.strip_suffix('%').and_then(|p| p.trim().parse().ok()),
            ArgScalar::Num(_) => None,
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            ArgScalar::Num(n) => Some(*n),
            ArgScalar::Str(_) => None,
        }
    }
}
