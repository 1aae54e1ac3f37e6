//! Fault-injected theories: each wraps the fiberwise target and breaks one
//! operation.
#![allow(dead_code)]

use bivariant::catcore::{Category, CommutativeSquare, LabelId, MorId};
use bivariant::fixtures;
use bivariant::suite::{check_bivariant_axioms, check_grothendieck, check_orientation_axioms, Bounds, CheckReport, Status};
use bivariant::targets::{Fiberwise, FnValue};
use bivariant::theory::{Operand, Theory};
use bivariant::Result;
use num_bigint::BigInt;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    PushMax,
    PushSquared,
    PushDoubled,
    PushScaledByBase,
    PullDoubled,
    PullNegatedOffDiagonal,
    PullReversed,
    ProductScaledBySource,
    ProductTwisted,
    UnitTwo,
    ThetaTwo,
    ThetaBySize,
    PhiAdd,
    PhiAffine,
    PhiReversed,
    PhiOnFirstPoint,
}

pub struct Mutant<'c> {
    pub inner: Fiberwise<'c>,
    pub fault: Fault,
}

fn size(cat: &Category, f: MorId) -> i64 {
    cat.size(cat.src(f)).unwrap_or(0) as i64
}

impl Theory for Mutant<'_> {
    type Value = FnValue;

    fn name(&self) -> &str {
        "mutant"
    }

    fn category(&self) -> &Category {
        self.inner.category()
    }

    fn context(&self, v: &FnValue) -> MorId {
        v.ctx
    }

    fn zero(&self, ctx: MorId) -> Result<FnValue> {
        self.inner.zero(ctx)
    }

    fn add(&self, a: &FnValue, b: &FnValue) -> Result<FnValue> {
        self.inner.add(a, b)
    }

    fn scale(&self, n: &BigInt, a: &FnValue) -> FnValue {
        self.inner.scale(n, a)
    }

    fn product(&self, a: &FnValue, b: &FnValue) -> Result<FnValue> {
        let cat = self.category();
        let mut v = self.inner.product(a, b)?;
        match self.fault {
            Fault::ProductScaledBySource => {
                let c = BigInt::from(size(cat, a.ctx) + 1);
                v.values.iter_mut().for_each(|x| *x *= &c);
            }
            Fault::ProductTwisted => {
                if let Some(first) = b.values.first() {
                    v.values.iter_mut().for_each(|x| *x += first);
                }
            }
            _ => {}
        }
        Ok(v)
    }

    fn pushforward(&self, f: MorId, g: MorId, a: &FnValue) -> Result<FnValue> {
        let cat = self.category();
        let mut v = self.inner.pushforward(f, g, a)?;
        match self.fault {
            Fault::PushMax => {
                let carriers = cat.carriers().expect("carriers");
                let mut out: Vec<Option<BigInt>> = vec![None; v.values.len()];
                for (x, val) in a.values.iter().enumerate() {
                    let y = carriers.apply(f, x);
                    out[y] = Some(match out[y].take() {
                        Some(m) if m >= *val => m,
                        _ => val.clone(),
                    });
                }
                v.values = out.into_iter().map(Option::unwrap_or_default).collect();
            }
            Fault::PushSquared => v.values.iter_mut().for_each(|x| *x = &*x * &*x),
            Fault::PushDoubled if !cat.is_identity(f) => v.values.iter_mut().for_each(|x| *x *= 2),
            Fault::PushScaledByBase if !cat.is_identity(g) => v.values.iter_mut().for_each(|x| *x *= 3),
            _ => {}
        }
        Ok(v)
    }

    fn pullback(&self, sq: &CommutativeSquare, a: &FnValue) -> Result<FnValue> {
        let cat = self.category();
        let mut v = self.inner.pullback(sq, a)?;
        match self.fault {
            Fault::PullDoubled if !cat.is_identity(sq.top) => v.values.iter_mut().for_each(|x| *x *= 2),
            Fault::PullNegatedOffDiagonal if !cat.is_identity(sq.left) && !cat.is_identity(sq.top) => {
                v.values.iter_mut().for_each(|x| *x = -&*x)
            }
            Fault::PullReversed if !cat.is_identity(sq.top) => v.values.reverse(),
            _ => {}
        }
        Ok(v)
    }

    fn theta(&self, f: MorId) -> Result<FnValue> {
        let cat = self.category();
        let mut v = self.inner.theta(f)?;
        match self.fault {
            Fault::ThetaTwo => v.values.iter_mut().for_each(|x| *x = BigInt::from(2)),
            Fault::ThetaBySize => {
                let e = size(cat, f) - cat.size(cat.dst(f)).unwrap_or(0) as i64;
                let c = if e >= 0 { BigInt::from(2).pow(e as u32) } else { BigInt::from(0) };
                v.values.iter_mut().for_each(|x| *x = c.clone());
            }
            _ => {}
        }
        Ok(v)
    }

    fn unit(&self, x: bivariant::catcore::ObjId) -> Result<FnValue> {
        let mut v = self.inner.unit(x)?;
        if self.fault == Fault::UnitTwo {
            v.values.iter_mut().for_each(|x| *x = BigInt::from(2));
        }
        Ok(v)
    }

    fn is_oriented(&self) -> bool {
        self.inner.is_oriented()
    }

    fn phi(&self, l: LabelId, a: &FnValue) -> Result<FnValue> {
        let cat = self.category();
        let w = cat.fibered().and_then(|fc| fc.weight(l)).unwrap_or_default();
        let mut v = self.inner.phi(l, a)?;
        match self.fault {
            Fault::PhiAdd => {
                for (x, (val, &c)) in v.values.iter_mut().zip(w).enumerate() {
                    *val = &a.values[x] + c;
                }
            }
            Fault::PhiAffine => {
                for (val, &c) in v.values.iter_mut().zip(w) {
                    *val += c;
                }
            }
            Fault::PhiReversed => {
                for (x, val) in v.values.iter_mut().enumerate() {
                    *val = &a.values[x] * w[w.len() - 1 - x];
                }
            }
            Fault::PhiOnFirstPoint => {
                for (x, val) in v.values.iter_mut().enumerate() {
                    *val = &a.values[x] * w[0];
                }
            }
            _ => {}
        }
        Ok(v)
    }

    fn operands(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Operand<FnValue>>> {
        self.inner.operands(ctx, bounds)
    }

    fn render(&self, v: &FnValue) -> String {
        self.inner.render(v)
    }

    fn value_expr(&self, v: &FnValue) -> String {
        self.inner.value_expr(v)
    }
}

pub fn fs4() -> &'static Category {
    static CAT: OnceLock<Category> = OnceLock::new();
    CAT.get_or_init(fixtures::fs4)
}

#[derive(Clone, Copy)]
pub enum Suite {
    Bivariant,
    Orientation,
    Grothendieck,
}

pub fn run(fault: Option<Fault>, suite: Suite) -> CheckReport {
    let inner = Fiberwise::new(fs4()).unwrap();
    let b = Bounds::default();
    let go = |t: &Mutant| match suite {
        Suite::Bivariant => check_bivariant_axioms(t, &b),
        Suite::Orientation => check_orientation_axioms(t, &b),
        Suite::Grothendieck => check_grothendieck(t, &b),
    };
    match fault {
        Some(fault) => go(&Mutant { inner, fault }).unwrap(),
        None => match suite {
            Suite::Bivariant => check_bivariant_axioms(&inner, &b),
            Suite::Orientation => check_orientation_axioms(&inner, &b),
            Suite::Grothendieck => check_grothendieck(&inner, &b),
        }
        .unwrap(),
    }
}

pub fn assert_caught(fault: Fault, suite: Suite, record: &str) -> CheckReport {
    let r = run(Some(fault), suite);
    let rec = r.record(record).unwrap_or_else(|| panic!("no record {record}"));
    assert_eq!(rec.status, Status::Fail, "{fault:?} survived {record}:\n{r}");
    assert!(rec.failures > 0);
    let cx = rec.first_counterexample.as_ref().expect("counterexample");
    assert_ne!(cx.lhs, cx.rhs);
    assert!(cx.witness.contains("=="), "{}", cx.witness);
    r
}

/// Each fault with a record that must catch it.
pub const DESIGNATED: &[(Fault, Suite, &str)] = &[
    (Fault::PushMax, Suite::Bivariant, "projection-formula"),
    (Fault::PushSquared, Suite::Bivariant, "linearity-push"),
    (Fault::PushDoubled, Suite::Bivariant, "push-functorial"),
    (Fault::PushScaledByBase, Suite::Bivariant, "push-product"),
    (Fault::PullDoubled, Suite::Bivariant, "pull-functorial"),
    (Fault::PullNegatedOffDiagonal, Suite::Bivariant, "pull-product"),
    (Fault::PullNegatedOffDiagonal, Suite::Bivariant, "push-pull"),
    (Fault::PullReversed, Suite::Bivariant, "commutativity"),
    (Fault::ProductScaledBySource, Suite::Bivariant, "product-associative"),
    (Fault::ProductTwisted, Suite::Bivariant, "linearity-product-left"),
    (Fault::UnitTwo, Suite::Bivariant, "unit-right"),
    (Fault::ThetaTwo, Suite::Grothendieck, "target-theta-composite"),
    (Fault::ThetaBySize, Suite::Bivariant, "theta-nice"),
    (Fault::PhiAdd, Suite::Orientation, "orient-product-left"),
    (Fault::PhiAffine, Suite::Orientation, "orient-commute"),
    (Fault::PhiReversed, Suite::Orientation, "orient-pull"),
    (Fault::PhiOnFirstPoint, Suite::Orientation, "orient-push"),
    (Fault::PhiOnFirstPoint, Suite::Grothendieck, "gamma-orient"),
    (Fault::PushDoubled, Suite::Grothendieck, "gamma-push"),
    (Fault::PullReversed, Suite::Grothendieck, "gamma-pull"),
];
