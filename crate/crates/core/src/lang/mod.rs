//! The MoVer surface language: lexer, recursive-descent parser, alias
//! resolution, sort checking, and a canonical pretty-printer.
//!
//! Grammar (comments run from `#` to end of line):
//!
//! ```text
//! program    : stmt*
//! stmt       : IDENT "=" expr | expr
//! expr       : quantifier | boolexpr
//! quantifier : ("iota" | "exists" | "all") "(" ("Object" | "Motion") ","
//!              "lambda" IDENT ":" boolexpr ")"
//! boolexpr   : orexpr
//! orexpr     : andexpr ("or" andexpr)*
//! andexpr    : unary ("and" unary)*
//! unary      : "not" unary | call | "(" boolexpr ")"
//! call       : NAME "(" [arg ("," arg)*] ")"
//! arg        : quantifier | call | IDENT | NUMBER | STRING | list
//! list       : "[" [scalar ("," scalar)*] "]"
//! ```

mod ast;
mod lexer;
mod parser;
mod pretty;
mod resolve;

pub use ast::{Arg, ArgScalar, Expr, Program, QuantKind, SortName, Statement};
pub use parser::parse;
pub use pretty::{format_arg, format_number, pretty_print};
pub use resolve::{
    resolve, signature, BindingSort, LangError, ResolvedProgram, Signature, TermSort, ValueShape,
};
