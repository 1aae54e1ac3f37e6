use crate::catcore::{Carriers, Category, CommutativeSquare, LabelId, MorId};
use crate::error::{Error, Result};
use crate::theory::{Bounds, Operand, Theory};
use crate::universal::same_context;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An integer-valued function on the carrier of `X`, in the group over `ctx: X → Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnValue {
    pub ctx: MorId,
    pub values: Vec<BigInt>,
}

/// Integer functions on finite carriers: pointwise products, fiber sums as
/// pushforward, precomposition as pullback, weight multiplication as the
/// orientation operator.
#[derive(Debug, Clone, Copy)]
pub struct Fiberwise<'c> {
    cat: &'c Category,
    carriers: &'c Carriers,
}

impl<'c> Fiberwise<'c> {
    pub fn new(cat: &'c Category) -> Result<Self> {
        let carriers = cat
            .carriers()
            .ok_or_else(|| Error::NotApplicable(format!("category `{}` declares no carriers", cat.name())))?;
        Ok(Fiberwise { cat, carriers })
    }

    fn card(&self, f: MorId) -> usize {
        self.carriers.elements(self.cat.src(f)).len()
    }

    /// Builds a value, checking its length against the carrier of the source.
    pub fn value<I, C>(&self, ctx: MorId, values: I) -> Result<FnValue>
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let values: Vec<BigInt> = values.into_iter().map(Into::into).collect();
        if values.len() != self.card(ctx) {
            return Err(Error::Context(format!(
                "`{}` has {} carrier elements, got {} values",
                self.cat.obj_name(self.cat.src(ctx)),
                self.card(ctx),
                values.len()
            )));
        }
        Ok(FnValue { ctx, values })
    }

    pub fn constant(&self, ctx: MorId, c: i64) -> FnValue {
        FnValue {
            ctx,
            values: vec![BigInt::from(c); self.card(ctx)],
        }
    }

    /// Morphisms from a one-element object hitting each element of `X`.
    fn points(&self, ctx: MorId) -> Vec<Option<MorId>> {
        let x = self.cat.src(ctx);
        let n = self.carriers.elements(x).len();
        let mut out = vec![None; n];
        for o in self.cat.objects() {
            if self.carriers.elements(o).len() != 1 {
                continue;
            }
            for &p in self.cat.hom(o, x) {
                let i = self.carriers.apply(p, 0);
                if out[i].is_none() && self.cat.is_confined(p) && self.cat.is_specialized(self.cat.then(p, ctx)) {
                    out[i] = Some(p);
                }
            }
        }
        out
    }
}

impl Theory for Fiberwise<'_> {
    type Value = FnValue;

    fn name(&self) -> &str {
        "fiberwise"
    }

    fn category(&self) -> &Category {
        self.cat
    }

    fn context(&self, v: &FnValue) -> MorId {
        v.ctx
    }

    fn zero(&self, ctx: MorId) -> Result<FnValue> {
        Ok(self.constant(ctx, 0))
    }

    fn add(&self, a: &FnValue, b: &FnValue) -> Result<FnValue> {
        same_context(self.cat, a.ctx, b.ctx)?;
        Ok(FnValue {
            ctx: a.ctx,
            values: a.values.iter().zip(&b.values).map(|(x, y)| x + y).collect(),
        })
    }

    fn scale(&self, n: &BigInt, a: &FnValue) -> FnValue {
        FnValue {
            ctx: a.ctx,
            values: a.values.iter().map(|x| x * n).collect(),
        }
    }

    /// `(α • β)(x) = α(x) β(f(x))`.
    fn product(&self, a: &FnValue, b: &FnValue) -> Result<FnValue> {
        let gf = self.cat.compose(a.ctx, b.ctx)?;
        let f = a.ctx;
        Ok(FnValue {
            ctx: gf,
            values: a
                .values
                .iter()
                .enumerate()
                .map(|(x, v)| v * &b.values[self.carriers.apply(f, x)])
                .collect(),
        })
    }

    /// `(f_* α)(y) = Σ_{f(x) = y} α(x)`.
    fn pushforward(&self, f: MorId, g: MorId, a: &FnValue) -> Result<FnValue> {
        self.cat.require_confined(f)?;
        let gf = self.cat.compose(f, g)?;
        same_context(self.cat, a.ctx, gf)?;
        let mut values = vec![BigInt::zero(); self.card(g)];
        for (x, v) in a.values.iter().enumerate() {
            values[self.carriers.apply(f, x)] += v;
        }
        Ok(FnValue { ctx: g, values })
    }

    /// `(g^* α)(x') = α(g'(x'))` with `g'` the top of the square.
    fn pullback(&self, sq: &CommutativeSquare, a: &FnValue) -> Result<FnValue> {
        self.cat.require_independent(sq)?;
        same_context(self.cat, a.ctx, sq.right)?;
        let n = self.card(sq.left);
        Ok(FnValue {
            ctx: sq.left,
            values: (0..n).map(|x| a.values[self.carriers.apply(sq.top, x)].clone()).collect(),
        })
    }

    fn theta(&self, f: MorId) -> Result<FnValue> {
        self.cat.require_specialized(f)?;
        Ok(self.constant(f, 1))
    }

    fn is_oriented(&self) -> bool {
        self.cat.fibered().is_some_and(|fc| fc.has_weights())
    }

    /// `φ(w)(α)(x) = w(x) α(x)`.
    fn phi(&self, l: LabelId, a: &FnValue) -> Result<FnValue> {
        let fc = self
            .cat
            .fibered()
            .filter(|fc| fc.has_weights())
            .ok_or_else(|| Error::MissingOrientationData("fiberwise: no label weights".into()))?;
        let x = self.cat.src(a.ctx);
        if fc.label(l).over != x {
            return Err(Error::UnknownLabel {
                label: fc.label_name(l).to_string(),
                object: self.cat.obj_name(x).to_string(),
            });
        }
        let w = fc.weight(l).unwrap_or_default();
        Ok(FnValue {
            ctx: a.ctx,
            values: a.values.iter().zip(w).map(|(v, &c)| v * c).collect(),
        })
    }

    /// Point indicators, the constant one and one signed dense function.
    fn operands(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Operand<FnValue>>> {
        let n = self.card(ctx);
        let mut vals = Vec::new();
        for i in 0..n {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            vals.push(FnValue { ctx, values: v });
        }
        if n > 1 {
            vals.push(self.constant(ctx, 1));
        }
        if n > 0 {
            let c = bounds.coeff_range.max(1);
            let pattern: Vec<i64> = (1..=c).flat_map(|k| [k + 1, -k]).collect();
            vals.push(FnValue {
                ctx,
                values: (0..n).map(|i| BigInt::from(pattern[i % pattern.len()])).collect(),
            });
        } else {
            vals.push(self.constant(ctx, 0));
        }
        Ok(vals
            .into_iter()
            .map(|value| Operand {
                expr: self.value_expr(&value),
                value,
            })
            .collect())
    }

    fn render(&self, v: &FnValue) -> String {
        let els = self.carriers.elements(self.cat.src(v.ctx));
        let parts: Vec<String> = els.iter().zip(&v.values).map(|(e, c)| format!("{e}↦{c}")).collect();
        format!("({})", parts.join(", "))
    }

    /// `gamma(Σ c_x [pt --x--> X])`, which is `Σ c_x δ_x`.
    fn value_expr(&self, v: &FnValue) -> String {
        let ctx = self.cat.mor_name(v.ctx);
        let points = self.points(v.ctx);
        let mut terms = Vec::new();
        for (i, c) in v.values.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match points[i] {
                Some(p) => terms.push((c.clone(), format!("cyc({}; ) over {ctx}", self.cat.mor_name(p)))),
                None => return format!("<no point of `{}` at index {i}>", self.cat.obj_name(self.cat.src(v.ctx))),
            }
        }
        if terms.is_empty() {
            let id = self.cat.identity(self.cat.src(v.ctx));
            return format!("gamma(0*cyc({}; ) over {ctx})", self.cat.mor_name(id));
        }
        let mut s = String::new();
        for (i, (c, t)) in terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let abs = if neg { -c } else { c.clone() };
            s.push_str(&format!("{abs}*{t}"));
        }
        format!("gamma({s})")
    }
}
