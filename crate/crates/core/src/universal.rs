//! The universal oriented bivariant theory: integer combinations of
//! isomorphism classes of cobordism cycles `[V --h--> X; L1, .., Lr]`.
//! With no bundles this is the unoriented universal theory.

use crate::catcore::{Category, CommutativeSquare, Cospan, FiberedCategory, LabelId, MorId, ObjId};
use crate::error::{Error, Result};
use crate::freeab::FreeAbelian;
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// A cobordism cycle with its bundle multiset kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub h: MorId,
    pub bundles: Vec<LabelId>,
}

impl Cycle {
    pub fn new(h: MorId, mut bundles: Vec<LabelId>) -> Self {
        bundles.sort();
        Cycle { h, bundles }
    }

    pub fn bare(h: MorId) -> Self {
        Cycle { h, bundles: Vec::new() }
    }
}

/// An element of the universal group over the context `ctx: X → Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub ctx: MorId,
    pub value: FreeAbelian<Cycle>,
}

impl Element {
    pub fn zero(ctx: MorId) -> Self {
        Element {
            ctx,
            value: FreeAbelian::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Universal<'c> {
    cat: &'c Category,
}

impl<'c> Universal<'c> {
    pub fn new(cat: &'c Category) -> Self {
        Universal { cat }
    }

    pub fn category(&self) -> &'c Category {
        self.cat
    }

    fn fibered(&self) -> Result<&'c FiberedCategory> {
        self.cat
            .fibered()
            .ok_or_else(|| Error::MissingOrientationData("category has no fibered section".into()))
    }

    fn pull_bundles(&self, g: MorId, bundles: &[LabelId]) -> Result<Vec<LabelId>> {
        if bundles.is_empty() {
            return Ok(Vec::new());
        }
        let fc = self.fibered()?;
        bundles.iter().map(|&l| fc.pullback_label(self.cat, g, l)).collect()
    }

    /// The representative of the isomorphism class of `c` with minimal key.
    /// Isomorphisms `g: V' → V` transport `(h, L)` to `(h ∘ g, g^* L)`.
    pub fn canonicalize(&self, c: &Cycle) -> Result<Cycle> {
        let v = self.cat.src(c.h);
        let mut best = Cycle::new(c.h, c.bundles.clone());
        for &g in self.cat.isos_into(v) {
            let cand = Cycle::new(self.cat.then(g, c.h), self.pull_bundles(g, &c.bundles)?);
            if cand < best {
                best = cand;
            }
        }
        Ok(best)
    }

    /// Whether two cycles over the same object are isomorphic: an iso
    /// `g: V → W` with `k ∘ g = h` and a matching of the bundles.
    pub fn isomorphic(&self, a: &Cycle, b: &Cycle) -> Result<bool> {
        Ok(self.canonicalize(a)? == self.canonicalize(b)?)
    }

    fn check_membership(&self, ctx: MorId, c: &Cycle) -> Result<()> {
        let cat = self.cat;
        if cat.dst(c.h) != cat.src(ctx) {
            return Err(Error::Context(format!(
                "cycle `{}` does not lie over the source of `{}`",
                cat.mor_name(c.h),
                cat.mor_name(ctx)
            )));
        }
        if !cat.is_confined(c.h) {
            return Err(Error::Membership(format!("`{}` is not confined", cat.mor_name(c.h))));
        }
        let fh = cat.then(c.h, ctx);
        if !cat.is_specialized(fh) {
            return Err(Error::Membership(format!(
                "`{}` then `{}` is `{}`, which is not specialized",
                cat.mor_name(c.h),
                cat.mor_name(ctx),
                cat.mor_name(fh)
            )));
        }
        if !c.bundles.is_empty() {
            let fc = self.fibered()?;
            let v = cat.src(c.h);
            for &l in &c.bundles {
                if fc.label(l).over != v {
                    return Err(Error::UnknownLabel {
                        label: fc.label_name(l).to_string(),
                        object: cat.obj_name(v).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Builds an element from raw cycles, checking membership and
    /// canonicalizing each one.
    pub fn element<I, C>(&self, ctx: MorId, terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = (Cycle, C)>,
        C: Into<BigInt>,
    {
        let mut pairs = Vec::new();
        for (c, n) in terms {
            self.check_membership(ctx, &c)?;
            pairs.push((self.canonicalize(&c)?, n.into()));
        }
        Ok(Element {
            ctx,
            value: FreeAbelian::normalize(pairs),
        })
    }

    pub fn generator(&self, ctx: MorId, c: Cycle) -> Result<Element> {
        self.element(ctx, [(c, 1)])
    }

    fn finish(&self, ctx: MorId, pairs: Vec<(Cycle, BigInt)>) -> Result<Element> {
        let mut out = Vec::with_capacity(pairs.len());
        for (c, n) in pairs {
            self.check_membership(ctx, &c)?;
            out.push((self.canonicalize(&c)?, n));
        }
        Ok(Element {
            ctx,
            value: FreeAbelian::normalize(out),
        })
    }

    /// All canonical cycles over `ctx` with source size at most
    /// `max_source` (objects without a size are always admitted) and at
    /// most `max_bundles` bundles, in key order.
    pub fn generators(&self, ctx: MorId, max_source: Option<usize>, max_bundles: usize) -> Result<Vec<Cycle>> {
        let cat = self.cat;
        let x = cat.src(ctx);
        let mut out = BTreeSet::new();
        for v in cat.objects() {
            if !within(cat, v, max_source) {
                continue;
            }
            let labels: &[LabelId] = match cat.fibered() {
                Some(fc) => fc.labels_over(v),
                None => &[],
            };
            for &h in cat.hom(v, x) {
                if !cat.is_confined(h) || !cat.is_specialized(cat.then(h, ctx)) {
                    continue;
                }
                for r in 0..=max_bundles {
                    for bundles in multisets(labels, r) {
                        out.insert(self.canonicalize(&Cycle { h, bundles })?);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn theta(&self, f: MorId) -> Result<Element> {
        self.cat.require_specialized(f)?;
        let id = self.cat.identity(self.cat.src(f));
        self.generator(f, Cycle::bare(id))
    }

    pub fn unit(&self, x: ObjId) -> Result<Element> {
        self.theta(self.cat.identity(x))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        same_context(self.cat, a.ctx, b.ctx)?;
        Ok(Element {
            ctx: a.ctx,
            value: a.value.add(&b.value),
        })
    }

    pub fn scale(&self, n: &BigInt, a: &Element) -> Element {
        Element {
            ctx: a.ctx,
            value: a.value.scalar_mul(n),
        }
    }

    /// The bivariant product of `α` over `f: X → Y` and `β` over `g: Y → Z`.
    pub fn product(&self, a: &Element, b: &Element) -> Result<Element> {
        let cat = self.cat;
        let (f, g) = (a.ctx, b.ctx);
        let gf = cat.compose(f, g)?;
        let mut pairs = Vec::new();
        for (kc, n) in b.value.terms() {
            // X' = X ×_Y W with k': X' → X and f': X' → W.
            let p = cat.fiber_product(Cospan { left: f, right: kc.h })?;
            let (k1, f1) = (p.proj_left, p.proj_right);
            for (hc, m) in a.value.terms() {
                // V' = V ×_X X' with k'': V' → V and h': V' → X'.
                let q = cat.fiber_product(Cospan { left: hc.h, right: k1 })?;
                let (k2, h1) = (q.proj_left, q.proj_right);
                let mut bundles = self.pull_bundles(k2, &hc.bundles)?;
                bundles.extend(self.pull_bundles(cat.then(h1, f1), &kc.bundles)?);
                pairs.push((Cycle::new(cat.then(k2, hc.h), bundles), m * n));
            }
        }
        self.finish(gf, pairs)
    }

    /// `f_*` for confined `f: X → Y`, taking `α` over `g ∘ f` to an element over `g`.
    pub fn pushforward(&self, f: MorId, g: MorId, a: &Element) -> Result<Element> {
        let cat = self.cat;
        cat.require_confined(f)?;
        let gf = cat.compose(f, g)?;
        same_context(cat, a.ctx, gf)?;
        let pairs = a
            .value
            .terms()
            .iter()
            .map(|(c, n)| (Cycle::new(cat.then(c.h, f), c.bundles.clone()), n.clone()))
            .collect();
        self.finish(g, pairs)
    }

    /// `g^*` along an independent square whose right vertical is the context of `α`.
    pub fn pullback(&self, sq: &CommutativeSquare, a: &Element) -> Result<Element> {
        let cat = self.cat;
        cat.require_independent(sq)?;
        same_context(cat, a.ctx, sq.right)?;
        let mut pairs = Vec::new();
        for (c, n) in a.value.terms() {
            // V' = V ×_X X' with g'': V' → V and h': V' → X'.
            let p = cat.fiber_product(Cospan { left: c.h, right: sq.top })?;
            let bundles = self.pull_bundles(p.proj_left, &c.bundles)?;
            pairs.push((Cycle::new(p.proj_right, bundles), n.clone()));
        }
        self.finish(sq.left, pairs)
    }

    /// The orientation operator `Φ(L)` for a label `L` over the source of the context.
    pub fn orient(&self, l: LabelId, a: &Element) -> Result<Element> {
        let cat = self.cat;
        let fc = self.fibered()?;
        let x = cat.src(a.ctx);
        if fc.label(l).over != x {
            return Err(Error::UnknownLabel {
                label: fc.label_name(l).to_string(),
                object: cat.obj_name(x).to_string(),
            });
        }
        let pairs = a
            .value
            .terms()
            .iter()
            .map(|(c, n)| {
                let mut bundles = c.bundles.clone();
                bundles.push(fc.pull_unchecked(c.h, l));
                (Cycle::new(c.h, bundles), n.clone())
            })
            .collect();
        self.finish(a.ctx, pairs)
    }

    pub fn render_cycle(&self, c: &Cycle) -> String {
        let labels: Vec<&str> = match self.cat.fibered() {
            Some(fc) => c.bundles.iter().map(|&l| fc.label_name(l)).collect(),
            None => Vec::new(),
        };
        format!("[{} ; {}]", self.cat.mor_name(c.h), labels.join(","))
    }

    /// `c1*[h1 ; L..] + .. over f`.
    pub fn render(&self, a: &Element) -> String {
        format!("{} over {}", a.value.render_with(|c| self.render_cycle(c)), self.cat.mor_name(a.ctx))
    }

    /// A DSL expression evaluating to the single cycle `c` over `ctx`.
    pub fn cycle_expr(&self, ctx: MorId, c: &Cycle) -> String {
        let labels: Vec<&str> = match self.cat.fibered() {
            Some(fc) => c.bundles.iter().map(|&l| fc.label_name(l)).collect(),
            None => Vec::new(),
        };
        format!("cyc({}; {}) over {}", self.cat.mor_name(c.h), labels.join(", "), self.cat.mor_name(ctx))
    }

    /// A DSL expression evaluating to `a`.
    pub fn element_expr(&self, a: &Element) -> String {
        if a.is_zero() {
            return format!("0*cyc({}; ) over {}", self.cat.mor_name(self.cat.identity(self.cat.src(a.ctx))), self.cat.mor_name(a.ctx));
        }
        let mut s = String::new();
        for (i, (c, n)) in a.value.terms().iter().enumerate() {
            let neg = n < &BigInt::from(0);
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push_str("-");
            }
            let abs = if neg { -n } else { n.clone() };
            s.push_str(&format!("{abs}*{}", self.cycle_expr(a.ctx, c)));
        }
        s
    }
}

pub(crate) fn within(cat: &Category, v: ObjId, max_source: Option<usize>) -> bool {
    match (max_source, cat.size(v)) {
        (Some(b), Some(n)) => n <= b,
        _ => true,
    }
}

pub(crate) fn same_context(cat: &Category, a: MorId, b: MorId) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Context(format!(
            "elements over `{}` and `{}` cannot be combined",
            cat.mor_name(a),
            cat.mor_name(b)
        )))
    }
}

/// Sorted multisets of size `r` drawn from `items`.
pub(crate) fn multisets(items: &[LabelId], r: usize) -> Vec<Vec<LabelId>> {
    fn go(items: &[LabelId], r: usize, start: usize, cur: &mut Vec<LabelId>, out: &mut Vec<Vec<LabelId>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, r, 0, &mut Vec::with_capacity(r), &mut out);
    out
}
