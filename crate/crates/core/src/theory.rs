//! The interface every bivariant theory exposes to the transformation and
//! the axiom suite.

use crate::catcore::{Category, CommutativeSquare, LabelId, MorId, ObjId};
use crate::error::{Error, Result};
use crate::universal::{Element, Universal};
use num_bigint::BigInt;
use std::fmt::Debug;

/// Enumeration limits shared by generator listing and the axiom sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Largest admitted object size; objects without a size are always admitted.
    pub max_source: Option<usize>,
    pub max_bundles: usize,
    /// Coefficients for linearity instances range over `[-coeff_range, coeff_range]`.
    pub coeff_range: i64,
    /// Per-axiom instance cap; larger instance spaces are strided or sampled.
    pub instance_cap: Option<usize>,
    /// `Some(seed)` samples capped instance spaces at random instead of striding.
    pub seed: Option<u64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_source: Some(2),
            max_bundles: 1,
            coeff_range: 2,
            instance_cap: Some(10_000),
            seed: None,
        }
    }
}

/// A test value together with a DSL expression that evaluates to it.
#[derive(Debug, Clone)]
pub struct Operand<V> {
    pub value: V,
    pub expr: String,
}

pub trait Theory {
    type Value: Clone + PartialEq + Debug;

    fn name(&self) -> &str;
    fn category(&self) -> &Category;

    /// The morphism `X → Y` whose group holds `v`.
    fn context(&self, v: &Self::Value) -> MorId;
    fn zero(&self, ctx: MorId) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn scale(&self, n: &BigInt, a: &Self::Value) -> Self::Value;

    fn product(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    /// `f_*` for `f: X → Y`, from the group over `g ∘ f` to the group over `g`.
    fn pushforward(&self, f: MorId, g: MorId, a: &Self::Value) -> Result<Self::Value>;
    /// `g^*` along an independent square; `a` lies over its right vertical.
    fn pullback(&self, sq: &CommutativeSquare, a: &Self::Value) -> Result<Self::Value>;
    fn theta(&self, f: MorId) -> Result<Self::Value>;
    fn unit(&self, x: ObjId) -> Result<Self::Value> {
        self.theta(self.category().identity(x))
    }

    fn is_oriented(&self) -> bool;
    /// The orientation operator of a label over the source of the context.
    fn phi(&self, l: LabelId, a: &Self::Value) -> Result<Self::Value>;

    /// Values the suite sweeps over for the context `ctx`.
    fn operands(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Operand<Self::Value>>>;
    fn render(&self, v: &Self::Value) -> String;
    /// A DSL expression evaluating to `v`.
    fn value_expr(&self, v: &Self::Value) -> String;

    /// The theory as the universal theory, when it is one.
    fn universal(&self) -> Option<&Universal<'_>> {
        None
    }

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        self.add(a, &self.scale(&BigInt::from(-1), b))
    }
}

impl Theory for Universal<'_> {
    type Value = Element;

    fn name(&self) -> &str {
        "universal"
    }

    fn category(&self) -> &Category {
        Universal::category(self)
    }

    fn context(&self, v: &Element) -> MorId {
        v.ctx
    }

    fn zero(&self, ctx: MorId) -> Result<Element> {
        Ok(Element::zero(ctx))
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        Universal::add(self, a, b)
    }

    fn scale(&self, n: &BigInt, a: &Element) -> Element {
        Universal::scale(self, n, a)
    }

    fn product(&self, a: &Element, b: &Element) -> Result<Element> {
        Universal::product(self, a, b)
    }

    fn pushforward(&self, f: MorId, g: MorId, a: &Element) -> Result<Element> {
        Universal::pushforward(self, f, g, a)
    }

    fn pullback(&self, sq: &CommutativeSquare, a: &Element) -> Result<Element> {
        Universal::pullback(self, sq, a)
    }

    fn theta(&self, f: MorId) -> Result<Element> {
        Universal::theta(self, f)
    }

    fn is_oriented(&self) -> bool {
        self.category().fibered().is_some()
    }

    fn phi(&self, l: LabelId, a: &Element) -> Result<Element> {
        if !Theory::is_oriented(self) {
            return Err(Error::MissingOrientationData("universal".into()));
        }
        self.orient(l, a)
    }

    fn operands(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Operand<Element>>> {
        let mut out = Vec::new();
        for c in self.generators(ctx, bounds.max_source, bounds.max_bundles)? {
            let expr = self.cycle_expr(ctx, &c);
            out.push(Operand {
                value: self.generator(ctx, c)?,
                expr,
            });
        }
        Ok(out)
    }

    fn render(&self, v: &Element) -> String {
        Universal::render(self, v)
    }

    fn value_expr(&self, v: &Element) -> String {
        self.element_expr(v)
    }

    fn universal(&self) -> Option<&Universal<'_>> {
        Some(self)
    }
}
