use super::space::Universe;
use super::{AxiomRecord, CheckReport, Counterexample, Status};
use crate::catcore::{Coproduct, MorId};
use crate::error::Result;
use crate::targets::Fiberwise;
use crate::theory::{Bounds, Theory};
use crate::universal::{within, Universal};

/// A distinguished finite basis of each group, used to test that paired
/// pushforwards from a coproduct are bijective.
pub trait Basis: Theory {
    fn basis(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Self::Value>>;
}

impl Basis for Universal<'_> {
    /// Canonical generators.
    fn basis(&self, ctx: MorId, bounds: &Bounds) -> Result<Vec<Self::Value>> {
        self.generators(ctx, bounds.max_source, bounds.max_bundles)?
            .into_iter()
            .map(|c| self.generator(ctx, c))
            .collect()
    }
}

impl Basis for Fiberwise<'_> {
    /// Point indicators.
    fn basis(&self, ctx: MorId, _bounds: &Bounds) -> Result<Vec<Self::Value>> {
        let n = self.constant(ctx, 0).values.len();
        (0..n)
            .map(|i| self.value(ctx, (0..n).map(|j| i64::from(i == j))))
            .collect()
    }
}

const RECORDS: &[(&str, &str)] = &[
    ("additivity-injective", "i_X* and i_Y* send basis elements to distinct basis elements"),
    ("additivity-disjoint", "images of i_X* and i_Y* do not meet"),
    ("additivity-exhaustive", "every basis element over X ⊔ Y is hit"),
];

struct Tally {
    rec: AxiomRecord,
}

impl Tally {
    fn new(name: &str, anchor: &str) -> Self {
        Tally {
            rec: AxiomRecord {
                name: name.to_string(),
                anchor: anchor.to_string(),
                space: 0,
                instances: 0,
                passes: 0,
                failures: 0,
                skips: 0,
                status: Status::Pass,
                note: None,
                first_counterexample: None,
            },
        }
    }

    fn skip(&mut self) {
        self.rec.space += 1;
        self.rec.instances += 1;
        self.rec.skips += 1;
    }

    fn outcome(&mut self, fail: Option<(String, String, String)>, instance: &str) {
        self.rec.space += 1;
        self.rec.instances += 1;
        match fail {
            None => self.rec.passes += 1,
            Some((lhs, rhs, witness)) => {
                self.rec.failures += 1;
                if self.rec.first_counterexample.is_none() {
                    self.rec.first_counterexample = Some(Counterexample {
                        instance: instance.to_string(),
                        lhs,
                        rhs,
                        witness,
                    });
                }
            }
        }
    }
}

/// For each declared coproduct `X ⊔ Y` within bounds and each
/// `k: X ⊔ Y → Z`, checks that `(α, β) ↦ i_X*α + i_Y*β` is a bijection of
/// bases. Reports not-applicable records when no coproducts are declared.
pub fn check_additivity<T: Basis>(t: &T, bounds: &Bounds) -> Result<CheckReport> {
    let cat = t.category();
    let mut rep = CheckReport::new(cat.name(), t.name(), "additivity");
    if cat.coproducts().is_empty() {
        for (name, anchor) in RECORDS {
            rep.records.push(AxiomRecord::not_applicable(
                name,
                anchor,
                format!("category `{}` declares no coproducts", cat.name()),
            ));
        }
        return Ok(rep);
    }
    let u = Universe::new(cat, bounds);
    let mut inj = Tally::new(RECORDS[0].0, RECORDS[0].1);
    let mut disj = Tally::new(RECORDS[1].0, RECORDS[1].1);
    let mut exh = Tally::new(RECORDS[2].0, RECORDS[2].1);

    let coproducts: Vec<&Coproduct> = cat
        .coproducts()
        .iter()
        .filter(|c| within(cat, c.apex, bounds.max_source))
        .collect();
    for cp in coproducts {
        for k in u.from(cp.apex) {
            let instance = format!(
                "{} ⊔ {} → {} ; k = {}",
                cat.obj_name(cp.left),
                cat.obj_name(cp.right),
                cat.obj_name(cp.apex),
                cat.mor_name(k)
            );
            let sides = (|| -> Result<_> {
                let target = t.basis(k, bounds)?;
                let mut images = Vec::new();
                for (side, i) in [(0, cp.inj_left), (1, cp.inj_right)] {
                    let ctx = cat.then(i, k);
                    for b in t.basis(ctx, bounds)? {
                        images.push((side, t.value_expr(&b), t.pushforward(i, k, &b)?, i));
                    }
                }
                Ok((target, images))
            })();
            let (target, images) = match sides {
                Ok(s) => s,
                Err(e) if e.is_pullback_unavailable() => {
                    inj.skip();
                    disj.skip();
                    exh.skip();
                    continue;
                }
                Err(e) => return Err(e),
            };

            let mut fail = None;
            for (n, (_, e, img, i)) in images.iter().enumerate() {
                let witness = format!("push({}, {e})", cat.mor_name(*i));
                if !target.contains(img) {
                    fail = Some((t.render(img), "a basis element".to_string(), witness));
                    break;
                }
                if let Some((_, e2, _, i2)) = images[..n].iter().find(|(s2, _, v, _)| *s2 == images[n].0 && v == img) {
                    fail = Some((t.render(img), t.render(img), format!("{witness} == push({}, {e2})", cat.mor_name(*i2))));
                    break;
                }
            }
            inj.outcome(fail, &instance);

            let mut fail = None;
            for (_, e, img, i) in images.iter().filter(|x| x.0 == 0) {
                if let Some((_, e2, _, i2)) = images.iter().find(|(s, _, v, _)| *s == 1 && v == img) {
                    fail = Some((
                        t.render(img),
                        t.render(img),
                        format!("push({}, {e}) == push({}, {e2})", cat.mor_name(*i), cat.mor_name(*i2)),
                    ));
                    break;
                }
            }
            disj.outcome(fail, &instance);

            let fail = target
                .iter()
                .find(|b| !images.iter().any(|(_, _, v, _)| v == *b))
                .map(|b| (t.render(b), "no preimage".to_string(), t.value_expr(b)));
            exh.outcome(fail, &instance);
        }
    }
    rep.records.extend([inj.rec.finish(), disj.rec.finish(), exh.rec.finish()]);
    Ok(rep)
}
