use super::lexer::Span;
use std::fmt;

/// A parsed expression. Equality ignores spans.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareRef {
    /// A named square, or a morphism `g` standing for the declared fiber
    /// square with bottom `g` over the context of the argument.
    Named(String),
    /// `sq(top, left, right, bottom)`.
    Inline([String; 4]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Sum(Vec<Term>),
    Cyc {
        h: String,
        labels: Vec<String>,
        over: Option<String>,
    },
    Unit(String),
    Theta(String),
    Fclass(String),
    Prod(Box<Expr>, Box<Expr>),
    Push {
        f: String,
        arg: Box<Expr>,
        over: Option<String>,
    },
    Pull {
        sq: SquareRef,
        arg: Box<Expr>,
    },
    Orient {
        label: String,
        arg: Box<Expr>,
    },
    Gamma(Box<Expr>),
    GysinPull {
        f: String,
        arg: Box<Expr>,
    },
    GysinPush {
        f: String,
        arg: Box<Expr>,
    },
    Ext(Box<Expr>, Box<Expr>),
}

/// A line of an expression file: an expression, or two sides to compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Expr(Expr),
    Equation(Expr, Expr),
}

impl fmt::Display for SquareRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareRef::Named(n) => f.write_str(n),
            SquareRef::Inline([t, l, r, b]) => write!(f, "sq({t}, {l}, {r}, {b})"),
        }
    }
}

/// Canonical text; parsing it gives back an equal expression.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i == 0 {
                        if t.coeff < 0 {
                            f.write_str("-")?;
                        }
                    } else {
                        f.write_str(if t.coeff < 0 { " - " } else { " + " })?;
                    }
                    write!(f, "{}*", t.coeff.unsigned_abs())?;
                    if matches!(t.expr.kind, ExprKind::Sum(_)) {
                        write!(f, "({})", t.expr)?;
                    } else {
                        write!(f, "{}", t.expr)?;
                    }
                }
                Ok(())
            }
            ExprKind::Cyc { h, labels, over } => {
                write!(f, "cyc({h}; {})", labels.join(", "))?;
                if let Some(o) = over {
                    write!(f, " over {o}")?;
                }
                Ok(())
            }
            ExprKind::Unit(x) => write!(f, "unit({x})"),
            ExprKind::Theta(m) => write!(f, "theta({m})"),
            ExprKind::Fclass(x) => write!(f, "fclass({x})"),
            ExprKind::Prod(a, b) => write!(f, "prod({a}, {b})"),
            ExprKind::Push { f: m, arg, over } => {
                write!(f, "push({m}, {arg})")?;
                if let Some(o) = over {
                    write!(f, " over {o}")?;
                }
                Ok(())
            }
            ExprKind::Pull { sq, arg } => write!(f, "pull({sq}, {arg})"),
            ExprKind::Orient { label, arg } => write!(f, "orient({label}, {arg})"),
            ExprKind::Gamma(a) => write!(f, "gamma({a})"),
            ExprKind::GysinPull { f: m, arg } => write!(f, "gysin_pull({m}, {arg})"),
            ExprKind::GysinPush { f: m, arg } => write!(f, "gysin_push({m}, {arg})"),
            ExprKind::Ext(a, b) => write!(f, "ext({a}, {b})"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Expr(e) => write!(f, "{e}"),
            Statement::Equation(a, b) => write!(f, "{a} == {b}"),
        }
    }
}
