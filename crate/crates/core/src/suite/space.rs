//! Instance spaces, the capped parallel runner, bounded configuration
//! enumeration and terms that carry their own DSL text.

use super::{AxiomRecord, Counterexample, Status};
use crate::catcore::{Category, CommutativeSquare, LabelId, MorId, ObjId, SquareMode};
use crate::error::Result;
use crate::theory::{Bounds, Operand, Theory};
use crate::transform;
use crate::universal::Element;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// One configuration: the morphisms, squares and labels it is built from,
/// plus operand lists. Instances pick one operand per list and one value per
/// extra dimension.
pub(crate) struct Cfg<V> {
    pub m: Vec<MorId>,
    pub s: Vec<CommutativeSquare>,
    pub l: Vec<LabelId>,
    pub ops: Vec<Arc<Vec<Operand<V>>>>,
    pub extra: Vec<usize>,
    pub desc: String,
}

impl<V> Cfg<V> {
    pub fn new(desc: String) -> Self {
        Cfg {
            m: Vec::new(),
            s: Vec::new(),
            l: Vec::new(),
            ops: Vec::new(),
            extra: Vec::new(),
            desc,
        }
    }

    pub fn mors(mut self, m: &[MorId]) -> Self {
        self.m.extend_from_slice(m);
        self
    }

    pub fn squares(mut self, s: &[CommutativeSquare]) -> Self {
        self.s.extend_from_slice(s);
        self
    }

    pub fn labels(mut self, l: &[LabelId]) -> Self {
        self.l.extend_from_slice(l);
        self
    }

    pub fn op(mut self, o: Arc<Vec<Operand<V>>>) -> Self {
        self.ops.push(o);
        self
    }

    pub fn extra(mut self, n: usize) -> Self {
        self.extra.push(n);
        self
    }

    fn dims(&self) -> Vec<usize> {
        self.ops.iter().map(|o| o.len()).chain(self.extra.iter().copied()).collect()
    }

    /// The operand chosen from list `k`.
    pub fn get<'a>(&'a self, k: usize, ix: &[usize]) -> &'a Operand<V> {
        &self.ops[k][ix[k]]
    }

    /// The value chosen in extra dimension `k`.
    pub fn x(&self, k: usize, ix: &[usize]) -> usize {
        ix[self.ops.len() + k]
    }
}

pub(crate) struct Space<V> {
    configs: Vec<(Cfg<V>, Vec<usize>)>,
    config_skips: usize,
}

impl<V> Space<V> {
    pub fn new() -> Self {
        Space {
            configs: Vec::new(),
            config_skips: 0,
        }
    }

    pub fn push(&mut self, c: Cfg<V>) {
        let dims = c.dims();
        if dims.iter().all(|&d| d > 0) {
            self.configs.push((c, dims));
        }
    }

    /// Adds a configuration whose construction may have left the declared
    /// pullback table; those count as skips.
    pub fn try_push(&mut self, c: Result<Cfg<V>>) -> Result<()> {
        match c {
            Ok(c) => {
                self.push(c);
                Ok(())
            }
            Err(e) if e.is_pullback_unavailable() => {
                self.config_skips += 1;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }
}

fn select(total: usize, bounds: &Bounds) -> Vec<usize> {
    match bounds.instance_cap {
        Some(cap) if total > cap => match bounds.seed {
            Some(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut idx = rand::seq::index::sample(&mut rng, total, cap).into_vec();
                idx.sort_unstable();
                idx
            }
            None => (0..cap)
                .map(|i| ((i as u128 * total as u128) / cap as u128) as usize)
                .collect(),
        },
        _ => (0..total).collect(),
    }
}

fn decode(dims: &[usize], mut rem: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = rem % d;
        rem /= d;
    }
    out
}

/// Index of the configuration holding instance `idx`; prefixes are strictly
/// increasing since empty configurations never enter the space.
fn locate(prefix: &[usize], idx: usize) -> usize {
    match prefix.binary_search(&idx) {
        Ok(i) => i,
        Err(i) => i - 1,
    }
}

/// A value with the DSL text that evaluates to it. The text is only built
/// when a counterexample is being reported.
#[derive(Debug, Clone)]
pub(crate) struct Tm<V> {
    pub v: V,
    pub e: String,
}

enum Outcome {
    Pass,
    Skip,
    Fail,
}

/// Evaluates the selected instances of `law` and compares both sides.
pub(crate) fn run<T, V, L>(t: &T, name: &str, anchor: &str, space: Space<V>, bounds: &Bounds, law: L) -> AxiomRecord
where
    T: Theory + Sync,
    V: Send + Sync,
    L: Fn(bool, &Cfg<V>, &[usize]) -> Result<(Tm<T::Value>, Tm<T::Value>)> + Sync,
{
    let configs = &space.configs;
    let mut prefix = Vec::with_capacity(configs.len());
    let mut total = 0usize;
    for (_, dims) in configs {
        prefix.push(total);
        total += dims.iter().product::<usize>();
    }
    let chosen = select(total, bounds);
    let pick = |idx: usize| {
        let c = locate(&prefix, idx);
        (c, decode(&configs[c].1, idx - prefix[c]))
    };
    let outcomes: Vec<Outcome> = chosen
        .par_iter()
        .map(|&idx| {
            let (c, ix) = pick(idx);
            match law(false, &configs[c].0, &ix) {
                Ok((l, r)) if l.v == r.v => Outcome::Pass,
                Ok(_) => Outcome::Fail,
                Err(e) if e.is_pullback_unavailable() => Outcome::Skip,
                Err(_) => Outcome::Fail,
            }
        })
        .collect();

    let mut rec = AxiomRecord {
        name: name.to_string(),
        anchor: anchor.to_string(),
        space: total + space.config_skips,
        instances: chosen.len() + space.config_skips,
        passes: 0,
        failures: 0,
        skips: space.config_skips,
        status: Status::Pass,
        note: None,
        first_counterexample: None,
    };
    for (k, o) in outcomes.iter().enumerate() {
        match o {
            Outcome::Pass => rec.passes += 1,
            Outcome::Skip => rec.skips += 1,
            Outcome::Fail => {
                rec.failures += 1;
                if rec.first_counterexample.is_none() {
                    let (c, ix) = pick(chosen[k]);
                    let cfg = &configs[c].0;
                    rec.first_counterexample = Some(match law(true, cfg, &ix) {
                        Ok((l, r)) => Counterexample {
                            instance: cfg.desc.clone(),
                            lhs: t.render(&l.v),
                            rhs: t.render(&r.v),
                            witness: format!("{} == {}", l.e, r.e),
                        },
                        Err(e) => Counterexample {
                            instance: cfg.desc.clone(),
                            lhs: format!("error: {e}"),
                            rhs: String::new(),
                            witness: String::new(),
                        },
                    });
                }
            }
        }
    }
    if total > chosen.len() {
        rec.note = Some(format!(
            "{} of {} instances checked ({})",
            chosen.len(),
            total,
            if bounds.seed.is_some() { "seeded sample" } else { "even stride" }
        ));
    }
    rec.finish()
}

/// Per-context operand lists, shared between configurations.
pub(crate) struct Operands<'t, T: Theory> {
    t: &'t T,
    bounds: Bounds,
    cache: RefCell<HashMap<MorId, Arc<Vec<Operand<T::Value>>>>>,
}

impl<'t, T: Theory> Operands<'t, T> {
    pub fn new(t: &'t T, bounds: &Bounds) -> Self {
        Operands {
            t,
            bounds: bounds.clone(),
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn get(&self, ctx: MorId) -> Result<Arc<Vec<Operand<T::Value>>>> {
        if let Some(v) = self.cache.borrow().get(&ctx) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.t.operands(ctx, &self.bounds)?);
        self.cache.borrow_mut().insert(ctx, v.clone());
        Ok(v)
    }
}

/// The bounded part of a category the sweeps range over.
pub(crate) struct Universe<'c> {
    pub cat: &'c Category,
    in_bound: Vec<bool>,
    pub mors: Vec<MorId>,
    pub squares: Vec<CommutativeSquare>,
}

impl<'c> Universe<'c> {
    pub fn new(cat: &'c Category, bounds: &Bounds) -> Self {
        let in_bound: Vec<bool> = cat
            .objects()
            .map(|x| crate::universal::within(cat, x, bounds.max_source))
            .collect();
        let ok = |f: MorId| in_bound[cat.src(f).index()] && in_bound[cat.dst(f).index()];
        let mors: Vec<MorId> = cat.morphisms().filter(|&f| ok(f)).collect();
        let mut cands: BTreeSet<CommutativeSquare> = BTreeSet::new();
        for (c, p) in cat.declared_pullbacks() {
            if !(ok(c.left) && ok(c.right) && in_bound[p.apex.index()]) {
                continue;
            }
            cands.insert(CommutativeSquare {
                top: p.proj_left,
                left: p.proj_right,
                right: c.left,
                bottom: c.right,
            });
            cands.insert(CommutativeSquare {
                top: p.proj_right,
                left: p.proj_left,
                right: c.right,
                bottom: c.left,
            });
        }
        if let SquareMode::Explicit { squares, .. } = cat.square_mode() {
            cands.extend(squares.iter().map(|(_, s)| *s));
        }
        for &f in &mors {
            cands.insert(cat.identity_horizontal_square(f));
            cands.insert(cat.identity_vertical_square(f));
        }
        let squares = cands
            .into_iter()
            .filter(|sq| ok(sq.top) && ok(sq.left) && ok(sq.right) && ok(sq.bottom) && cat.is_independent(sq))
            .collect();
        Universe {
            cat,
            in_bound,
            mors,
            squares,
        }
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        self.cat.objects().filter(|x| self.in_bound[x.index()])
    }

    pub fn from(&self, x: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.cat
            .outgoing(x)
            .iter()
            .copied()
            .filter(|&f| self.in_bound[self.cat.dst(f).index()])
    }

    pub fn pairs(&self) -> Vec<(MorId, MorId)> {
        let mut out = Vec::new();
        for &f in &self.mors {
            for g in self.from(self.cat.dst(f)) {
                out.push((f, g));
            }
        }
        out
    }

    pub fn triples(&self) -> Vec<(MorId, MorId, MorId)> {
        let mut out = Vec::new();
        for (f, g) in self.pairs() {
            for h in self.from(self.cat.dst(g)) {
                out.push((f, g, h));
            }
        }
        out
    }

    pub fn labels_over(&self, x: ObjId) -> Vec<LabelId> {
        self.cat
            .fibered()
            .map(|fc| fc.labels_over(x).to_vec())
            .unwrap_or_default()
    }

    /// The map to the final object, when the final object is in bounds.
    pub fn to_final(&self, x: ObjId) -> Option<MorId> {
        if !self.in_bound[self.cat.final_object().index()] {
            return None;
        }
        self.cat.to_final(x).ok()
    }

    pub fn names(&self, fs: &[MorId]) -> String {
        fs.iter().map(|&f| self.cat.mor_name(f)).collect::<Vec<_>>().join(", ")
    }

    pub fn sq(&self, sq: &CommutativeSquare) -> String {
        self.cat.render_square(sq)
    }

    pub fn label(&self, l: LabelId) -> &str {
        label_name(self.cat, l)
    }
}

pub(crate) fn transpose(sq: &CommutativeSquare) -> CommutativeSquare {
    CommutativeSquare {
        top: sq.left,
        left: sq.top,
        right: sq.bottom,
        bottom: sq.right,
    }
}

/// Linearity coefficients run over `-R..=R`.
pub(crate) fn coeff(bounds: &Bounds, k: usize) -> i64 {
    k as i64 - bounds.coeff_range
}

pub(crate) fn coeff_count(bounds: &Bounds) -> usize {
    (2 * bounds.coeff_range + 1).max(1) as usize
}

fn is_atomic(e: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in e.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return false,
            '-' if depth == 0 && i > 0 => return false,
            '*' if depth == 0 => return false,
            _ => {}
        }
    }
    !e.starts_with('-')
}

/// Theory operations on [`Tm`].
pub(crate) struct Alg<'a, T> {
    pub t: &'a T,
    text: bool,
}

impl<'a, T: Theory> Alg<'a, T> {
    pub fn new(t: &'a T, text: bool) -> Self {
        Alg { t, text }
    }

    fn cat(&self) -> &Category {
        self.t.category()
    }

    fn mk(&self, v: T::Value, e: impl FnOnce() -> String) -> Tm<T::Value> {
        Tm {
            v,
            e: if self.text { e() } else { String::new() },
        }
    }

    fn name(&self, f: MorId) -> &str {
        self.cat().mor_name(f)
    }

    pub fn op(&self, o: &Operand<T::Value>) -> Tm<T::Value> {
        self.mk(o.value.clone(), || o.expr.clone())
    }

    pub fn prod(&self, a: &Tm<T::Value>, b: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = self.t.product(&a.v, &b.v)?;
        Ok(self.mk(v, || format!("prod({}, {})", a.e, b.e)))
    }

    pub fn push(&self, f: MorId, g: MorId, a: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = self.t.pushforward(f, g, &a.v)?;
        Ok(self.mk(v, || {
            let cat = self.cat();
            let ctx = cat.then(f, g);
            let ambiguous = cat
                .hom(cat.dst(f), cat.dst(g))
                .iter()
                .filter(|&&k| cat.then(f, k) == ctx)
                .count()
                > 1;
            if ambiguous {
                format!("push({}, {}) over {}", self.name(f), a.e, self.name(g))
            } else {
                format!("push({}, {})", self.name(f), a.e)
            }
        }))
    }

    pub fn pull(&self, sq: &CommutativeSquare, a: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = self.t.pullback(sq, &a.v)?;
        Ok(self.mk(v, || format!("pull({}, {})", square_ref(self.cat(), sq), a.e)))
    }

    pub fn phi(&self, l: LabelId, a: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = self.t.phi(l, &a.v)?;
        Ok(self.mk(v, || format!("orient({}, {})", label_name(self.cat(), l), a.e)))
    }

    pub fn theta(&self, f: MorId) -> Result<Tm<T::Value>> {
        let v = self.t.theta(f)?;
        Ok(self.mk(v, || format!("theta({})", self.name(f))))
    }

    pub fn unit(&self, x: ObjId) -> Result<Tm<T::Value>> {
        let v = self.t.unit(x)?;
        Ok(self.mk(v, || format!("unit({})", self.cat().obj_name(x))))
    }

    pub fn gysin_pull(&self, f: MorId, a: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = transform::gysin_pullback(self.t, f, &a.v)?;
        Ok(self.mk(v, || format!("gysin_pull({}, {})", self.name(f), a.e)))
    }

    pub fn gysin_push(&self, f: MorId, a: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let v = transform::gysin_pushforward(self.t, f, &a.v)?;
        Ok(self.mk(v, || format!("gysin_push({}, {})", self.name(f), a.e)))
    }

    /// Exterior product: covariant when both contexts end at the final
    /// object, contravariant otherwise.
    pub fn ext(&self, a: &Tm<T::Value>, b: &Tm<T::Value>) -> Result<Tm<T::Value>> {
        let cat = self.cat();
        let pt = cat.final_object();
        let covariant = cat.dst(self.t.context(&a.v)) == pt && cat.dst(self.t.context(&b.v)) == pt;
        let v = if covariant {
            transform::exterior_covariant(self.t, &a.v, &b.v)?
        } else {
            transform::exterior_contravariant(self.t, &a.v, &b.v)?
        };
        Ok(self.mk(v, || format!("ext({}, {})", a.e, b.e)))
    }

    pub fn fclass(&self, x: ObjId) -> Result<Tm<T::Value>> {
        let v = transform::fundamental_class(self.t, x)?;
        Ok(self.mk(v, || format!("fclass({})", self.cat().obj_name(x))))
    }

    /// `c1*a1 + c2*a2 + ..`.
    pub fn lin(&self, terms: &[(i64, &Tm<T::Value>)]) -> Result<Tm<T::Value>> {
        let (_, first) = terms[0];
        let mut v = self.t.zero(self.t.context(&first.v))?;
        for (c, a) in terms {
            v = self.t.add(&v, &self.t.scale(&BigInt::from(*c), &a.v))?;
        }
        Ok(self.mk(v, || {
            let mut s = String::new();
            for (i, (c, a)) in terms.iter().enumerate() {
                if i == 0 {
                    if *c < 0 {
                        s.push('-');
                    }
                } else {
                    s.push_str(if *c < 0 { " - " } else { " + " });
                }
                if is_atomic(&a.e) {
                    s.push_str(&format!("{}*{}", c.abs(), a.e));
                } else {
                    s.push_str(&format!("{}*({})", c.abs(), a.e));
                }
            }
            s
        }))
    }

    /// `γ` of a universal term, computed in this theory.
    pub fn gamma(&self, a: &Tm<Element>) -> Result<Tm<T::Value>> {
        let v = transform::gamma(self.t, &a.v)?;
        Ok(self.mk(v, || format!("gamma({})", a.e)))
    }
}

pub(crate) fn label_name(cat: &Category, l: LabelId) -> &str {
    cat.fibered().map(|fc| fc.label_name(l)).unwrap_or("?")
}

/// How a square is written in the DSL: the bottom morphism for a declared
/// fiber square, the square id for named squares, else `sq(t, l, r, b)`.
pub(crate) fn square_ref(cat: &Category, sq: &CommutativeSquare) -> String {
    if let Ok(fs) = cat.fiber_square(sq.right, sq.bottom) {
        if fs == *sq {
            return cat.mor_name(sq.bottom).to_string();
        }
    }
    if let SquareMode::Explicit { squares, .. } = cat.square_mode() {
        if let Some((Some(name), _)) = squares.iter().find(|(_, s)| s == sq) {
            return name.clone();
        }
    }
    cat.render_square(sq)
}
