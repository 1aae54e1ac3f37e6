use super::ast::{Expr, ExprKind, SquareRef, Term};
use super::lexer::Span;
use super::DslError;
use crate::catcore::{Category, CommutativeSquare, LabelId, MorId, ObjId};
use crate::error::Error;
use crate::theory::Theory;
use crate::transform;
use crate::universal::{Cycle, Element, Universal};
use num_bigint::BigInt;

/// Cycle literals and operations on them stay in the universal theory;
/// `gamma`, `theta`, `unit` and `fclass` produce target values, and mixed
/// operands are carried into the target through `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value<V> {
    Universal(Element),
    Target(V),
}

#[derive(Debug, Clone, Copy)]
struct Ty {
    ctx: MorId,
    universal: bool,
}

type EResult<T> = Result<T, DslError>;

pub struct Evaluator<'a, T: Theory> {
    un: Universal<'a>,
    target: &'a T,
}

impl<'a, T: Theory> Evaluator<'a, T> {
    pub fn new(target: &'a T) -> Self {
        Evaluator {
            un: Universal::new(target.category()),
            target,
        }
    }

    fn cat(&self) -> &'a Category {
        self.un.category()
    }

    /// The context of `e`, inferred bottom-up without evaluating.
    pub fn context(&self, e: &Expr) -> EResult<MorId> {
        Ok(self.ty(e)?.ctx)
    }

    pub fn eval(&self, e: &Expr) -> EResult<Value<T::Value>> {
        self.ty(e)?;
        self.ev(e)
    }

    pub fn render(&self, v: &Value<T::Value>) -> String {
        match v {
            Value::Universal(a) => self.un.render(a),
            Value::Target(x) => self.target.render(x),
        }
    }

    /// Whether two values agree, after carrying universal values into the target when they differ in kind.
    pub fn equal(&self, a: &Value<T::Value>, b: &Value<T::Value>, at: &Expr) -> EResult<bool> {
        match (a, b) {
            (Value::Universal(x), Value::Universal(y)) => Ok(x == y),
            _ => Ok(self.lift(a.clone(), at)? == self.lift(b.clone(), at)?),
        }
    }

    fn mor(&self, name: &str, span: Span) -> EResult<MorId> {
        self.cat().morphism_by_name(name).map_err(|_| DslError::Resolve {
            kind: "morphism",
            name: name.to_string(),
            span,
        })
    }

    fn obj(&self, name: &str, span: Span) -> EResult<ObjId> {
        self.cat().object_by_name(name).map_err(|_| DslError::Resolve {
            kind: "object",
            name: name.to_string(),
            span,
        })
    }

    fn label(&self, name: &str, span: Span) -> EResult<LabelId> {
        self.cat()
            .fibered()
            .and_then(|fc| fc.label_by_name(name).ok())
            .ok_or_else(|| DslError::Resolve {
                kind: "label",
                name: name.to_string(),
                span,
            })
    }

    fn ctx_err<X>(&self, span: Span, message: String) -> EResult<X> {
        Err(DslError::Context { message, span })
    }

    fn engine<X>(&self, e: &Expr, r: Result<X, Error>) -> EResult<X> {
        r.map_err(|source| DslError::Eval {
            snippet: e.to_string(),
            span: e.span,
            source,
        })
    }

    fn cyc_context(&self, e: &Expr, h: &str, over: &Option<String>) -> EResult<(MorId, MorId)> {
        let cat = self.cat();
        let hm = self.mor(h, e.span)?;
        let ctx = match over {
            Some(o) => self.mor(o, e.span)?,
            None => self.engine(e, cat.to_final(cat.dst(hm)))?,
        };
        if cat.src(ctx) != cat.dst(hm) {
            return self.ctx_err(
                e.span,
                format!("`{}` does not start at the target of `{}`", cat.mor_name(ctx), cat.mor_name(hm)),
            );
        }
        Ok((hm, ctx))
    }

    /// The `g` with `g ∘ f` equal to the context of the argument.
    fn push_target(&self, e: &Expr, f: MorId, c: MorId, over: &Option<String>) -> EResult<MorId> {
        let cat = self.cat();
        if cat.src(c) != cat.dst(f) && cat.src(c) != cat.src(f) {
            return self.ctx_err(e.span, "push argument does not start at the source of the map".into());
        }
        if cat.src(c) != cat.src(f) {
            return self.ctx_err(
                e.span,
                format!("`{}` does not start where `{}` does", cat.mor_name(c), cat.mor_name(f)),
            );
        }
        let candidates: Vec<MorId> = cat
            .hom(cat.dst(f), cat.dst(c))
            .iter()
            .copied()
            .filter(|&g| cat.then(f, g) == c)
            .collect();
        match over {
            Some(o) => {
                let g = self.mor(o, e.span)?;
                if !candidates.contains(&g) {
                    return self.ctx_err(
                        e.span,
                        format!("`{}` after `{}` is not `{}`", cat.mor_name(g), cat.mor_name(f), cat.mor_name(c)),
                    );
                }
                Ok(g)
            }
            None => match candidates.as_slice() {
                [g] => Ok(*g),
                [] => self.ctx_err(
                    e.span,
                    format!("`{}` does not factor through `{}`", cat.mor_name(c), cat.mor_name(f)),
                ),
                _ => self.ctx_err(
                    e.span,
                    format!("`{}` factors through `{}` in several ways; add `over`", cat.mor_name(c), cat.mor_name(f)),
                ),
            },
        }
    }

    fn square(&self, e: &Expr, sq: &SquareRef, c: MorId) -> EResult<CommutativeSquare> {
        let cat = self.cat();
        let s = match sq {
            SquareRef::Named(n) => match cat.named_square(n) {
                Some(s) => s,
                None => {
                    let g = self.mor(n, e.span)?;
                    if cat.dst(g) != cat.dst(c) {
                        return self.ctx_err(
                            e.span,
                            format!("`{}` and `{}` do not share a target", cat.mor_name(c), cat.mor_name(g)),
                        );
                    }
                    self.engine(e, cat.fiber_square(c, g))?
                }
            },
            SquareRef::Inline(ids) => {
                let m: Vec<MorId> = ids.iter().map(|id| self.mor(id, e.span)).collect::<EResult<_>>()?;
                CommutativeSquare {
                    top: m[0],
                    left: m[1],
                    right: m[2],
                    bottom: m[3],
                }
            }
        };
        if s.right != c {
            return self.ctx_err(
                e.span,
                format!("square {} does not have `{}` on the right", cat.render_square(&s), cat.mor_name(c)),
            );
        }
        Ok(s)
    }

    fn label_over(&self, e: &Expr, label: &str, x: ObjId) -> EResult<LabelId> {
        let cat = self.cat();
        let l = self.label(label, e.span)?;
        let fc = cat.fibered().expect("label resolved");
        if fc.label(l).over != x {
            return self.ctx_err(e.span, format!("label `{label}` does not lie over `{}`", cat.obj_name(x)));
        }
        Ok(l)
    }

    fn ext_context(&self, e: &Expr, a: MorId, b: MorId) -> EResult<MorId> {
        let cat = self.cat();
        let pt = cat.final_object();
        let p = self.engine(e, transform::product_object(cat, cat.src(a), cat.src(b)))?;
        if cat.dst(a) == pt && cat.dst(b) == pt {
            self.engine(e, cat.to_final(p.apex))
        } else if cat.is_identity(a) && cat.is_identity(b) {
            Ok(cat.identity(p.apex))
        } else {
            self.ctx_err(e.span, "ext needs two covariant or two contravariant arguments".into())
        }
    }

    fn ty(&self, e: &Expr) -> EResult<Ty> {
        let cat = self.cat();
        let target = |ctx| Ty { ctx, universal: false };
        match &e.kind {
            ExprKind::Sum(terms) => {
                let mut out: Option<Ty> = None;
                for Term { expr, .. } in terms {
                    let t = self.ty(expr)?;
                    out = Some(match out {
                        None => t,
                        Some(o) if o.ctx == t.ctx => Ty {
                            ctx: o.ctx,
                            universal: o.universal && t.universal,
                        },
                        Some(o) => {
                            return self.ctx_err(
                                expr.span,
                                format!("summands over `{}` and `{}`", cat.mor_name(o.ctx), cat.mor_name(t.ctx)),
                            )
                        }
                    });
                }
                Ok(out.expect("a sum has a term"))
            }
            ExprKind::Cyc { h, labels, over } => {
                let (hm, ctx) = self.cyc_context(e, h, over)?;
                for l in labels {
                    self.label_over(e, l, cat.src(hm))?;
                }
                Ok(Ty { ctx, universal: true })
            }
            ExprKind::Unit(x) => Ok(target(cat.identity(self.obj(x, e.span)?))),
            ExprKind::Theta(f) => Ok(target(self.mor(f, e.span)?)),
            ExprKind::Fclass(x) => Ok(target(self.engine(e, cat.to_final(self.obj(x, e.span)?))?)),
            ExprKind::Prod(a, b) => {
                let (ta, tb) = (self.ty(a)?, self.ty(b)?);
                if cat.dst(ta.ctx) != cat.src(tb.ctx) {
                    return self.ctx_err(
                        e.span,
                        format!("`{}` and `{}` do not compose", cat.mor_name(ta.ctx), cat.mor_name(tb.ctx)),
                    );
                }
                Ok(Ty {
                    ctx: cat.then(ta.ctx, tb.ctx),
                    universal: ta.universal && tb.universal,
                })
            }
            ExprKind::Push { f, arg, over } => {
                let t = self.ty(arg)?;
                let g = self.push_target(e, self.mor(f, e.span)?, t.ctx, over)?;
                Ok(Ty { ctx: g, ..t })
            }
            ExprKind::Pull { sq, arg } => {
                let t = self.ty(arg)?;
                let s = self.square(e, sq, t.ctx)?;
                Ok(Ty { ctx: s.left, ..t })
            }
            ExprKind::Orient { label, arg } => {
                let t = self.ty(arg)?;
                self.label_over(e, label, cat.src(t.ctx))?;
                Ok(t)
            }
            ExprKind::Gamma(arg) => {
                let t = self.ty(arg)?;
                if !t.universal {
                    return self.ctx_err(e.span, "gamma expects a universal element".into());
                }
                Ok(target(t.ctx))
            }
            ExprKind::GysinPull { f, arg } => {
                let t = self.ty(arg)?;
                let fm = self.mor(f, e.span)?;
                if cat.dst(fm) != cat.src(t.ctx) || cat.dst(t.ctx) != cat.final_object() {
                    return self.ctx_err(
                        e.span,
                        format!("gysin_pull along `{}` needs an argument over `{}` → pt", f, cat.obj_name(cat.dst(fm))),
                    );
                }
                Ok(Ty {
                    ctx: cat.then(fm, t.ctx),
                    ..t
                })
            }
            ExprKind::GysinPush { f, arg } => {
                let t = self.ty(arg)?;
                let fm = self.mor(f, e.span)?;
                if t.ctx != cat.identity(cat.src(fm)) {
                    return self.ctx_err(
                        e.span,
                        format!("gysin_push along `{}` needs an argument over the identity of `{}`", f, cat.obj_name(cat.src(fm))),
                    );
                }
                Ok(Ty {
                    ctx: cat.identity(cat.dst(fm)),
                    ..t
                })
            }
            ExprKind::Ext(a, b) => {
                let (ta, tb) = (self.ty(a)?, self.ty(b)?);
                Ok(Ty {
                    ctx: self.ext_context(e, ta.ctx, tb.ctx)?,
                    universal: ta.universal && tb.universal,
                })
            }
        }
    }

    fn lift(&self, v: Value<T::Value>, at: &Expr) -> EResult<T::Value> {
        match v {
            Value::Target(x) => Ok(x),
            Value::Universal(a) => self.engine(at, transform::gamma(self.target, &a)),
        }
    }

    fn binary(
        &self,
        e: &Expr,
        a: Value<T::Value>,
        b: Value<T::Value>,
        fu: impl FnOnce(&Universal<'a>, &Element, &Element) -> Result<Element, Error>,
        ft: impl FnOnce(&T, &T::Value, &T::Value) -> Result<T::Value, Error>,
    ) -> EResult<Value<T::Value>> {
        match (a, b) {
            (Value::Universal(x), Value::Universal(y)) => Ok(Value::Universal(self.engine(e, fu(&self.un, &x, &y))?)),
            (a, b) => {
                let (x, y) = (self.lift(a, e)?, self.lift(b, e)?);
                Ok(Value::Target(self.engine(e, ft(self.target, &x, &y))?))
            }
        }
    }

    fn unary(
        &self,
        e: &Expr,
        a: Value<T::Value>,
        fu: impl FnOnce(&Universal<'a>, &Element) -> Result<Element, Error>,
        ft: impl FnOnce(&T, &T::Value) -> Result<T::Value, Error>,
    ) -> EResult<Value<T::Value>> {
        match a {
            Value::Universal(x) => Ok(Value::Universal(self.engine(e, fu(&self.un, &x))?)),
            Value::Target(x) => Ok(Value::Target(self.engine(e, ft(self.target, &x))?)),
        }
    }

    fn ev(&self, e: &Expr) -> EResult<Value<T::Value>> {
        let cat = self.cat();
        match &e.kind {
            ExprKind::Sum(terms) => {
                let mut acc: Option<Value<T::Value>> = None;
                for Term { coeff, expr } in terms {
                    let n = BigInt::from(*coeff);
                    let v = self.unary(expr, self.ev(expr)?, |u, x| Ok(u.scale(&n, x)), |t, x| Ok(t.scale(&n, x)))?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => self.binary(e, a, v, |u, x, y| u.add(x, y), |t, x, y| t.add(x, y))?,
                    });
                }
                Ok(acc.expect("a sum has a term"))
            }
            ExprKind::Cyc { h, labels, over } => {
                let (hm, ctx) = self.cyc_context(e, h, over)?;
                let ls = labels
                    .iter()
                    .map(|l| self.label_over(e, l, cat.src(hm)))
                    .collect::<EResult<Vec<_>>>()?;
                Ok(Value::Universal(self.engine(e, self.un.generator(ctx, Cycle::new(hm, ls)))?))
            }
            ExprKind::Unit(x) => Ok(Value::Target(self.engine(e, self.target.unit(self.obj(x, e.span)?))?)),
            ExprKind::Theta(f) => Ok(Value::Target(self.engine(e, self.target.theta(self.mor(f, e.span)?))?)),
            ExprKind::Fclass(x) => Ok(Value::Target(
                self.engine(e, transform::fundamental_class(self.target, self.obj(x, e.span)?))?,
            )),
            ExprKind::Prod(a, b) => {
                let (va, vb) = (self.ev(a)?, self.ev(b)?);
                self.binary(e, va, vb, |u, x, y| u.product(x, y), |t, x, y| t.product(x, y))
            }
            ExprKind::Push { f, arg, over } => {
                let c = self.ty(arg)?.ctx;
                let fm = self.mor(f, e.span)?;
                let g = self.push_target(e, fm, c, over)?;
                let v = self.ev(arg)?;
                self.unary(e, v, |u, x| u.pushforward(fm, g, x), |t, x| t.pushforward(fm, g, x))
            }
            ExprKind::Pull { sq, arg } => {
                let c = self.ty(arg)?.ctx;
                let s = self.square(e, sq, c)?;
                let v = self.ev(arg)?;
                self.unary(e, v, |u, x| u.pullback(&s, x), |t, x| t.pullback(&s, x))
            }
            ExprKind::Orient { label, arg } => {
                let c = self.ty(arg)?.ctx;
                let l = self.label_over(e, label, cat.src(c))?;
                let v = self.ev(arg)?;
                self.unary(e, v, |u, x| u.orient(l, x), |t, x| t.phi(l, x))
            }
            ExprKind::Gamma(arg) => {
                let v = self.ev(arg)?;
                Ok(Value::Target(self.lift(v, e)?))
            }
            ExprKind::GysinPull { f, arg } => {
                let fm = self.mor(f, e.span)?;
                let v = self.ev(arg)?;
                self.unary(
                    e,
                    v,
                    |u, x| transform::gysin_pullback(u, fm, x),
                    |t, x| transform::gysin_pullback(t, fm, x),
                )
            }
            ExprKind::GysinPush { f, arg } => {
                let fm = self.mor(f, e.span)?;
                let v = self.ev(arg)?;
                self.unary(
                    e,
                    v,
                    |u, x| transform::gysin_pushforward(u, fm, x),
                    |t, x| transform::gysin_pushforward(t, fm, x),
                )
            }
            ExprKind::Ext(a, b) => {
                let (ta, tb) = (self.ty(a)?, self.ty(b)?);
                let covariant = cat.dst(ta.ctx) == cat.final_object() && cat.dst(tb.ctx) == cat.final_object();
                let (va, vb) = (self.ev(a)?, self.ev(b)?);
                if covariant {
                    self.binary(
                        e,
                        va,
                        vb,
                        |u, x, y| transform::exterior_covariant(u, x, y),
                        |t, x, y| transform::exterior_covariant(t, x, y),
                    )
                } else {
                    self.binary(
                        e,
                        va,
                        vb,
                        |u, x, y| transform::exterior_contravariant(u, x, y),
                        |t, x, y| transform::exterior_contravariant(t, x, y),
                    )
                }
            }
        }
    }
}
