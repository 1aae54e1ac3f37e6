//! The universal Grothendieck transformation and the structures derived from
//! a canonical orientation: Gysin maps, exterior products, fundamental classes.

use crate::catcore::{Category, Cospan, MorId, ObjId};
use crate::error::{Error, Result};
use crate::theory::Theory;
use crate::universal::{Cycle, Element};

/// Order in which the bundles of a cycle are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fold {
    LeftToRight,
    RightToLeft,
}

fn fold_order(c: &Cycle, fold: Fold) -> Vec<crate::catcore::LabelId> {
    let mut ls = c.bundles.clone();
    if fold == Fold::RightToLeft {
        ls.reverse();
    }
    ls
}

fn sum_terms<T: Theory>(
    t: &T,
    a: &Element,
    mut term: impl FnMut(&Cycle) -> Result<T::Value>,
) -> Result<T::Value> {
    let mut acc = t.zero(a.ctx)?;
    for (c, n) in a.value.terms() {
        acc = t.add(&acc, &t.scale(n, &term(c)?))?;
    }
    Ok(acc)
}

/// `γ([V --h--> X; L1..Lr]) = h_*(φ(L1) ∘ .. ∘ φ(Lr) θ(f ∘ h))`, extended linearly.
pub fn gamma<T: Theory>(t: &T, a: &Element) -> Result<T::Value> {
    gamma_ordered(t, a, Fold::LeftToRight)
}

pub fn gamma_ordered<T: Theory>(t: &T, a: &Element, fold: Fold) -> Result<T::Value> {
    sum_terms(t, a, |c| gamma_cycle(t, a.ctx, c, fold))
}

/// The closed form on one cycle over `ctx`, which need not be canonical.
pub fn gamma_cycle<T: Theory>(t: &T, ctx: MorId, c: &Cycle, fold: Fold) -> Result<T::Value> {
    if !c.bundles.is_empty() && !t.is_oriented() {
        return Err(Error::MissingOrientationData(t.name().to_string()));
    }
    let mut v = t.theta(t.category().compose(c.h, ctx)?)?;
    for l in fold_order(c, fold) {
        v = t.phi(l, &v)?;
    }
    t.pushforward(c.h, ctx, &v)
}

/// γ evaluated through the decomposition `h_*([V → V; L1] • .. • [V → V; Lr] • θ(f ∘ h))`,
/// with `γ([V → V; L]) = φ(L)(1_V)` and the target product in place of φ.
pub fn gamma_decomposed<T: Theory>(t: &T, a: &Element, fold: Fold) -> Result<T::Value> {
    let cat = t.category();
    let f = a.ctx;
    sum_terms(t, a, |c| {
        if !c.bundles.is_empty() && !t.is_oriented() {
            return Err(Error::MissingOrientationData(t.name().to_string()));
        }
        let v_obj = cat.src(c.h);
        let unit = t.unit(v_obj)?;
        let mut v = t.theta(cat.then(c.h, f))?;
        for l in fold_order(c, fold) {
            v = t.product(&t.phi(l, &unit)?, &v)?;
        }
        t.pushforward(c.h, f, &v)
    })
}

fn require_covariant(cat: &Category, ctx: MorId) -> Result<()> {
    if cat.dst(ctx) != cat.final_object() {
        return Err(Error::Context(format!(
            "`{}` does not map to the final object",
            cat.mor_name(ctx)
        )));
    }
    Ok(())
}

fn require_contravariant(cat: &Category, ctx: MorId) -> Result<()> {
    if !cat.is_identity(ctx) {
        return Err(Error::Context(format!("`{}` is not an identity", cat.mor_name(ctx))));
    }
    Ok(())
}

/// `f^!(α) = θ(f) • α` for `f: X → Y` in S and `α` over `Y → pt`.
pub fn gysin_pullback<T: Theory>(t: &T, f: MorId, a: &T::Value) -> Result<T::Value> {
    let cat = t.category();
    cat.require_specialized(f)?;
    require_covariant(cat, t.context(a))?;
    t.product(&t.theta(f)?, a)
}

/// `f_!(α) = f_*(α • θ(f))` for `f: X → Y` in C ∩ S and `α` over `id_X`.
pub fn gysin_pushforward<T: Theory>(t: &T, f: MorId, a: &T::Value) -> Result<T::Value> {
    let cat = t.category();
    cat.require_confined(f)?;
    cat.require_specialized(f)?;
    require_contravariant(cat, t.context(a))?;
    let prod = t.product(a, &t.theta(f)?)?;
    t.pushforward(f, cat.identity(cat.dst(f)), &prod)
}

/// The product `X × Y` with its projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductObject {
    pub apex: ObjId,
    pub p1: MorId,
    pub p2: MorId,
}

pub fn product_object(cat: &Category, x: ObjId, y: ObjId) -> Result<ProductObject> {
    let p = cat.fiber_product(Cospan {
        left: cat.to_final(x)?,
        right: cat.to_final(y)?,
    })?;
    Ok(ProductObject {
        apex: p.apex,
        p1: p.proj_left,
        p2: p.proj_right,
    })
}

/// The morphism `f × g: X × Y → X' × Y'`.
pub fn product_morphism(cat: &Category, f: MorId, g: MorId) -> Result<MorId> {
    let src = product_object(cat, cat.src(f), cat.src(g))?;
    let dst = product_object(cat, cat.dst(f), cat.dst(g))?;
    let q1 = cat.then(src.p1, f);
    let q2 = cat.then(src.p2, g);
    let data = crate::catcore::PullbackData {
        apex: dst.apex,
        proj_left: dst.p1,
        proj_right: dst.p2,
    };
    cat.mediator(&data, q1, q2)
        .ok_or_else(|| Error::Context("no mediator into the declared product".into()))
}

/// `α × β = π_Y^* α • β` for `α` over `X → pt` and `β` over `Y → pt`.
pub fn exterior_covariant<T: Theory>(t: &T, a: &T::Value, b: &T::Value) -> Result<T::Value> {
    let cat = t.category();
    let (fa, fb) = (t.context(a), t.context(b));
    require_covariant(cat, fa)?;
    require_covariant(cat, fb)?;
    let sq = cat.fiber_square(fa, fb)?;
    t.product(&t.pullback(&sq, a)?, b)
}

/// `α × β = p1^* α • p2^* β` for `α` over `id_X` and `β` over `id_Y`.
pub fn exterior_contravariant<T: Theory>(t: &T, a: &T::Value, b: &T::Value) -> Result<T::Value> {
    let cat = t.category();
    let (fa, fb) = (t.context(a), t.context(b));
    require_contravariant(cat, fa)?;
    require_contravariant(cat, fb)?;
    let p = product_object(cat, cat.src(fa), cat.src(fb))?;
    let pa = t.pullback(&cat.identity_vertical_square(p.p1), a)?;
    let pb = t.pullback(&cat.identity_vertical_square(p.p2), b)?;
    t.product(&pa, &pb)
}

/// `[X] = θ(π_X)`, checked against `π_X^!(1_pt)`.
pub fn fundamental_class<T: Theory>(t: &T, x: ObjId) -> Result<T::Value> {
    let cat = t.category();
    let pi = cat.to_final(x)?;
    let theta = t.theta(pi)?;
    let via_gysin = gysin_pullback(t, pi, &t.unit(cat.final_object())?)?;
    if theta != via_gysin {
        return Err(Error::Unsupported(format!(
            "fundamental class of `{}`: θ(π) = {} but π^!(1) = {}",
            cat.obj_name(x),
            t.render(&theta),
            t.render(&via_gysin)
        )));
    }
    Ok(theta)
}
