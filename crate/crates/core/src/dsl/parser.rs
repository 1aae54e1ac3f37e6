use super::ast::{Expr, ExprKind, SquareRef, Statement, Term};
use super::lexer::{lex, Span, Tok};
use super::DslError;

const KEYWORDS: &[&str] = &[
    "cyc", "unit", "theta", "fclass", "prod", "push", "pull", "orient", "gamma", "gysin_pull", "gysin_push", "ext",
];

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        let toks = lex(text).map_err(|(span, c)| DslError::Parse {
            line: span.line,
            col: span.col,
            expected: vec!["a token".into()],
            found: format!("`{c}`"),
        })?;
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let span = self.span();
        Err(DslError::Parse {
            line: span.line,
            col: span.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&t.describe()])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    fn finish(&self, start: Span, kind: ExprKind) -> Expr {
        Expr {
            kind,
            span: Span {
                end: self.prev_end(),
                ..start
            },
        }
    }

    fn sum(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut terms = Vec::new();
        let mut bare = true;
        let mut sign = 1;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -1;
            bare = false;
        }
        loop {
            let (coeff, explicit) = self.coefficient()?;
            bare &= !explicit;
            let expr = self.atom()?;
            terms.push(Term {
                coeff: sign * coeff,
                expr,
            });
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
            bare = false;
        }
        if bare && terms.len() == 1 {
            return Ok(terms.pop().unwrap().expr);
        }
        Ok(self.finish(start, ExprKind::Sum(terms)))
    }

    fn coefficient(&mut self) -> PResult<(i64, bool)> {
        if let Tok::Ident(s) = self.peek().clone() {
            if s.chars().all(|c| c.is_ascii_digit()) {
                let span = self.span();
                self.bump();
                self.expect(Tok::Star)?;
                let n = s.parse::<i64>().map_err(|_| DslError::Parse {
                    line: span.line,
                    col: span.col,
                    expected: vec!["a 64-bit coefficient".into()],
                    found: format!("`{s}`"),
                })?;
                return Ok((n, true));
            }
        }
        Ok((1, false))
    }

    fn over(&mut self) -> PResult<Option<String>> {
        if matches!(self.peek(), Tok::Ident(s) if s == "over") {
            self.bump();
            return Ok(Some(self.ident("a morphism id")?));
        }
        Ok(None)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.span();
        if *self.peek() == Tok::LParen {
            self.bump();
            let mut e = self.sum()?;
            self.expect(Tok::RParen)?;
            e.span = Span {
                end: self.prev_end(),
                ..start
            };
            return Ok(e);
        }
        let kw = match self.peek() {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) && *self.peek_at(1) == Tok::LParen => s.clone(),
            _ => {
                let mut exp: Vec<&str> = vec!["`(`"];
                exp.extend(KEYWORDS.iter().copied());
                return self.fail(&exp);
            }
        };
        self.bump();
        self.bump();
        let kind = match kw.as_str() {
            "cyc" => {
                let h = self.ident("a morphism id")?;
                self.expect(Tok::Semi)?;
                let mut labels = Vec::new();
                if *self.peek() != Tok::RParen {
                    labels.push(self.ident("a label")?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        labels.push(self.ident("a label")?);
                    }
                }
                self.expect(Tok::RParen)?;
                let over = self.over()?;
                ExprKind::Cyc { h, labels, over }
            }
            "unit" | "fclass" => {
                let x = self.ident("an object id")?;
                self.expect(Tok::RParen)?;
                if kw == "unit" {
                    ExprKind::Unit(x)
                } else {
                    ExprKind::Fclass(x)
                }
            }
            "theta" => {
                let f = self.ident("a morphism id")?;
                self.expect(Tok::RParen)?;
                ExprKind::Theta(f)
            }
            "prod" | "ext" => {
                let a = self.sum()?;
                self.expect(Tok::Comma)?;
                let b = self.sum()?;
                self.expect(Tok::RParen)?;
                if kw == "prod" {
                    ExprKind::Prod(Box::new(a), Box::new(b))
                } else {
                    ExprKind::Ext(Box::new(a), Box::new(b))
                }
            }
            "push" => {
                let f = self.ident("a morphism id")?;
                self.expect(Tok::Comma)?;
                let arg = Box::new(self.sum()?);
                self.expect(Tok::RParen)?;
                let over = self.over()?;
                ExprKind::Push { f, arg, over }
            }
            "pull" => {
                let sq = if matches!(self.peek(), Tok::Ident(s) if s == "sq") && *self.peek_at(1) == Tok::LParen {
                    self.bump();
                    self.bump();
                    let mut ids: [String; 4] = Default::default();
                    for (i, id) in ids.iter_mut().enumerate() {
                        if i > 0 {
                            self.expect(Tok::Comma)?;
                        }
                        *id = self.ident("a morphism id")?;
                    }
                    self.expect(Tok::RParen)?;
                    SquareRef::Inline(ids)
                } else {
                    SquareRef::Named(self.ident("a square id, a morphism id or `sq(`")?)
                };
                self.expect(Tok::Comma)?;
                let arg = Box::new(self.sum()?);
                self.expect(Tok::RParen)?;
                ExprKind::Pull { sq, arg }
            }
            "orient" => {
                let label = self.ident("a label")?;
                self.expect(Tok::Comma)?;
                let arg = Box::new(self.sum()?);
                self.expect(Tok::RParen)?;
                ExprKind::Orient { label, arg }
            }
            "gamma" => {
                let a = self.sum()?;
                self.expect(Tok::RParen)?;
                ExprKind::Gamma(Box::new(a))
            }
            "gysin_pull" | "gysin_push" => {
                let f = self.ident("a morphism id")?;
                self.expect(Tok::Comma)?;
                let arg = Box::new(self.sum()?);
                self.expect(Tok::RParen)?;
                if kw == "gysin_pull" {
                    ExprKind::GysinPull { f, arg }
                } else {
                    ExprKind::GysinPush { f, arg }
                }
            }
            _ => unreachable!("keyword list and match arms agree"),
        };
        Ok(self.finish(start, kind))
    }
}

/// Parses one expression; trailing input is an error.
pub fn parse_expression(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser::new(text)?;
    let e = p.sum()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["`+`", "`-`", "end of input"]);
    }
    Ok(e)
}

/// Parses `expr` or `expr == expr`.
pub fn parse_statement(text: &str) -> Result<Statement, DslError> {
    let mut p = Parser::new(text)?;
    let a = p.sum()?;
    let st = if *p.peek() == Tok::EqEq {
        p.bump();
        Statement::Equation(a, p.sum()?)
    } else {
        Statement::Expr(a)
    };
    if *p.peek() != Tok::Eof {
        return p.fail(&["`+`", "`-`", "`==`", "end of input"]);
    }
    Ok(st)
}
