//! A small expression language over bivariant elements.

mod ast;
mod eval;
mod lexer;
mod parser;

pub use ast::{Expr, ExprKind, SquareRef, Statement, Term};
pub use eval::{Evaluator, Value};
pub use lexer::Span;
pub use parser::{parse_expression, parse_statement};

use crate::error::Error;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("parse error at {line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown {kind} `{name}` at {}:{}", span.line, span.col)]
    Resolve { kind: &'static str, name: String, span: Span },
    #[error("context error at {}:{}: {message}", span.line, span.col)]
    Context { message: String, span: Span },
    #[error("evaluating `{snippet}` at {}:{}: {source}", span.line, span.col)]
    Eval {
        snippet: String,
        span: Span,
        #[source]
        source: Error,
    },
}
