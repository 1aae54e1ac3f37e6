use super::space::{run, Alg, Cfg, Operands, Space, Tm, Universe};
use super::{AxiomRecord, CheckReport, Status};
use crate::error::Result;
use crate::theory::{Bounds, Operand, Theory};
use crate::transform::{gamma_cycle, gamma_decomposed, gamma_ordered, Fold};
use crate::universal::{multisets, Cycle, Element, Universal};
use std::sync::Arc;

const GAMMA_RECORDS: &[(&str, &str)] = &[
    ("gamma-normalization", "γ([X → X] over f) = θ(f)"),
    ("gamma-normalization-labels", "γ([X → X; L1..Lr] over f) = φ(L1)..φ(Lr)θ(f)"),
    ("gamma-product", "γ(α•β) = γ(α)•γ(β)"),
    ("gamma-push", "γ(f_*α) = f_*γ(α)"),
    ("gamma-pull", "γ(g^*α) = g^*γ(α)"),
    ("gamma-orient", "γ(Φ(L)α) = φ(L)γ(α)"),
    ("gamma-representative", "γ agrees on isomorphic representatives"),
    ("gamma-decomposed", "closed form = h_*(γ[V → V; L1]•..•θ(f∘h)), left to right"),
    ("gamma-decomposed-reversed", "closed form = h_*(γ[V → V; L1]•..•θ(f∘h)), right to left"),
    ("gamma-fold-order", "closed form independent of bundle order"),
    ("gamma-unit", "γ(1_X) = 1_X"),
    ("gamma-fundamental-class", "γ([X]) = [X]"),
];

/// The transformation from the universal theory into `t`: normalization,
/// preservation of the operations and of the orientation, independence of
/// representatives and of the evaluation route.
///
/// The θ-laws of the target are checked first; if they fail the γ records
/// are reported inconclusive without being run.
pub fn check_grothendieck<T>(t: &T, bounds: &Bounds) -> Result<CheckReport>
where
    T: Theory + Sync,
    T::Value: Send + Sync,
{
    let cat = t.category();
    let un = Universal::new(cat);
    let u = Universe::new(cat, bounds);
    let ou = Operands::new(&un, bounds);
    let mut rep = CheckReport::new(cat.name(), t.name(), "grothendieck");
    let s_ = |f| cat.is_specialized(f);

    let mut sp = Space::<()>::new();
    for &(f, g) in u.pairs().iter().filter(|(f, g)| s_(*f) && s_(*g)) {
        sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]));
    }
    rep.records.push(run(t, "target-theta-composite", "θ(g∘f) = θ(f)•θ(g)", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        let (f, g) = (c.m[0], c.m[1]);
        Ok((k.theta(cat.then(f, g))?, k.prod(&k.theta(f)?, &k.theta(g)?)?))
    }));
    let mut sp = Space::<()>::new();
    for x in u.objects().filter(|&x| s_(cat.identity(x))) {
        sp.push(Cfg::new(cat.obj_name(x).to_string()).mors(&[cat.identity(x)]));
    }
    rep.records.push(run(t, "target-theta-identity", "θ(id_X) = 1_X", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        Ok((k.theta(c.m[0])?, k.unit(cat.src(c.m[0]))?))
    }));
    if rep.records.iter().any(|r| r.status == Status::Fail) {
        for (name, anchor) in GAMMA_RECORDS {
            let mut r = AxiomRecord::not_applicable(name, anchor, "not run: the target θ-laws fail".into());
            r.status = Status::Inconclusive;
            rep.records.push(r);
        }
        return Ok(rep);
    }
    let anchor = |name: &str| GAMMA_RECORDS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a).unwrap_or("");
    let oriented = t.is_oriented();
    let labels = |x| if oriented { u.labels_over(x) } else { Vec::new() };
    let ucycle = |ctx, c: Cycle, text: bool| -> Result<Tm<Element>> {
        let e = if text { un.cycle_expr(ctx, &c) } else { String::new() };
        Ok(Tm {
            v: un.generator(ctx, c)?,
            e,
        })
    };

    let mut sp = Space::<Element>::new();
    for &f in u.mors.iter().filter(|&&f| s_(f)) {
        sp.push(Cfg::new(u.names(&[f])).mors(&[f]));
    }
    rep.records.push(run(t, "gamma-normalization", anchor("gamma-normalization"), sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        let f = c.m[0];
        let id = cat.identity(cat.src(f));
        Ok((k.gamma(&ucycle(f, Cycle::bare(id), text)?)?, k.theta(f)?))
    }));

    let mut sp = Space::<Element>::new();
    for &f in u.mors.iter().filter(|&&f| s_(f)) {
        let ls = labels(cat.src(f));
        for r in 1..=bounds.max_bundles {
            for bundles in multisets(&ls, r) {
                let desc = format!(
                    "{} ; {}",
                    u.names(&[f]),
                    bundles.iter().map(|&l| u.label(l)).collect::<Vec<_>>().join(", ")
                );
                sp.push(Cfg::new(desc).mors(&[f]).labels(&bundles));
            }
        }
    }
    rep.records.push(run(
        t,
        "gamma-normalization-labels",
        anchor("gamma-normalization-labels"),
        sp,
        bounds,
        |text, c, _| {
            let k = Alg::new(t, text);
            let f = c.m[0];
            let id = cat.identity(cat.src(f));
            let lhs = k.gamma(&ucycle(f, Cycle::new(id, c.l.clone()), text)?)?;
            let mut rhs = k.theta(f)?;
            for &l in c.l.iter().rev() {
                rhs = k.phi(l, &rhs)?;
            }
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for (f, g) in u.pairs() {
        sp.push(Cfg::new(u.names(&[f, g])).op(ou.get(f)?).op(ou.get(g)?));
    }
    rep.records.push(run(t, "gamma-product", anchor("gamma-product"), sp, bounds, |text, c, ix| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let (a, b) = (ku.op(c.get(0, ix)), ku.op(c.get(1, ix)));
        Ok((k.gamma(&ku.prod(&a, &b)?)?, k.prod(&k.gamma(&a)?, &k.gamma(&b)?)?))
    }));

    let mut sp = Space::new();
    for (f, g) in u.pairs().into_iter().filter(|(f, _)| cat.is_confined(*f)) {
        sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]).op(ou.get(cat.then(f, g))?));
    }
    rep.records.push(run(t, "gamma-push", anchor("gamma-push"), sp, bounds, |text, c, ix| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let (f, g) = (c.m[0], c.m[1]);
        let a = ku.op(c.get(0, ix));
        Ok((k.gamma(&ku.push(f, g, &a)?)?, k.push(f, g, &k.gamma(&a)?)?))
    }));

    let mut sp = Space::new();
    for sq in &u.squares {
        sp.push(Cfg::new(u.sq(sq)).squares(&[*sq]).op(ou.get(sq.right)?));
    }
    rep.records.push(run(t, "gamma-pull", anchor("gamma-pull"), sp, bounds, |text, c, ix| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let a = ku.op(c.get(0, ix));
        Ok((k.gamma(&ku.pull(&c.s[0], &a)?)?, k.pull(&c.s[0], &k.gamma(&a)?)?))
    }));

    let mut sp = Space::new();
    for &f in &u.mors {
        for l in labels(cat.src(f)) {
            sp.push(Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(l))).labels(&[l]).op(ou.get(f)?));
        }
    }
    if oriented {
        rep.records.push(run(t, "gamma-orient", anchor("gamma-orient"), sp, bounds, |text, c, ix| {
            let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
            let a = ku.op(c.get(0, ix));
            Ok((k.gamma(&ku.phi(c.l[0], &a)?)?, k.phi(c.l[0], &k.gamma(&a)?)?))
        }));
    } else {
        rep.records.push(AxiomRecord::not_applicable(
            "gamma-orient",
            anchor("gamma-orient"),
            format!("{} carries no orientation data", t.name()),
        ));
    }

    // Every generator against each of its re-parametrizations by an automorphism of the source.
    let mut sp = Space::new();
    for &f in &u.mors {
        for op in ou.get(f)?.iter() {
            let (c, _) = &op.value.value.terms()[0];
            let v = cat.src(c.h);
            for &i in cat.isos_into(v) {
                let raw = Cycle::new(
                    cat.then(i, c.h),
                    c.bundles
                        .iter()
                        .map(|&l| cat.fibered().map_or(Ok(l), |fc| fc.pullback_label(cat, i, l)))
                        .collect::<Result<_>>()?,
                );
                sp.push(
                    Cfg::new(format!("{} ; {} ; {}", u.names(&[f]), un.render_cycle(c), cat.mor_name(i)))
                        .mors(&[f])
                        .op(Arc::new(vec![Operand {
                            value: op.value.clone(),
                            expr: op.expr.clone(),
                        }]))
                        .op(Arc::new(vec![Operand {
                            expr: un.cycle_expr(f, &raw),
                            value: Element::zero(f),
                        }]))
                        .labels(&raw.bundles)
                        .mors(&[raw.h]),
                );
            }
        }
    }
    rep.records.push(run(t, "gamma-representative", anchor("gamma-representative"), sp, bounds, |text, c, ix| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let f = c.m[0];
        let a = ku.op(c.get(0, ix));
        let raw = Cycle {
            h: c.m[1],
            bundles: c.l.clone(),
        };
        let rhs = Tm {
            v: gamma_cycle(t, f, &raw, Fold::LeftToRight)?,
            e: if text { format!("gamma({})", c.get(1, ix).expr) } else { String::new() },
        };
        Ok((k.gamma(&a)?, rhs))
    }));

    for (name, fold) in [("gamma-decomposed", Fold::LeftToRight), ("gamma-decomposed-reversed", Fold::RightToLeft)] {
        let mut sp = Space::new();
        for &f in &u.mors {
            sp.push(Cfg::new(u.names(&[f])).op(ou.get(f)?));
        }
        rep.records.push(run(t, name, anchor(name), sp, bounds, |text, c, ix| {
            let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
            let a = ku.op(c.get(0, ix));
            let lhs = k.gamma(&a)?;
            let rhs = Tm {
                v: gamma_decomposed(t, &a.v, fold)?,
                e: lhs.e.clone(),
            };
            Ok((lhs, rhs))
        }));
    }

    let mut sp = Space::new();
    for &f in &u.mors {
        sp.push(Cfg::new(u.names(&[f])).op(ou.get(f)?));
    }
    rep.records.push(run(t, "gamma-fold-order", anchor("gamma-fold-order"), sp, bounds, |text, c, ix| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let a = ku.op(c.get(0, ix));
        let lhs = k.gamma(&a)?;
        let rhs = Tm {
            v: gamma_ordered(t, &a.v, Fold::RightToLeft)?,
            e: lhs.e.clone(),
        };
        Ok((lhs, rhs))
    }));

    let mut sp = Space::<Element>::new();
    for x in u.objects().filter(|&x| s_(cat.identity(x))) {
        sp.push(Cfg::new(cat.obj_name(x).to_string()).mors(&[cat.identity(x)]));
    }
    rep.records.push(run(t, "gamma-unit", anchor("gamma-unit"), sp, bounds, |text, c, _| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let x = cat.src(c.m[0]);
        Ok((k.gamma(&ku.unit(x)?)?, k.unit(x)?))
    }));

    let mut sp = Space::<Element>::new();
    for x in u.objects() {
        if let Some(p) = u.to_final(x).filter(|&p| s_(p)) {
            sp.push(Cfg::new(cat.obj_name(x).to_string()).mors(&[p]));
        }
    }
    rep.records.push(run(t, "gamma-fundamental-class", anchor("gamma-fundamental-class"), sp, bounds, |text, c, _| {
        let (ku, k) = (Alg::new(&un, text), Alg::new(t, text));
        let x = cat.src(c.m[0]);
        Ok((k.gamma(&ku.fclass(x)?)?, k.fclass(x)?))
    }));

    if let Some(own) = t.universal() {
        let mut sp = Space::new();
        for &f in &u.mors {
            sp.push(Cfg::new(u.names(&[f])).op(ou.get(f)?));
        }
        rep.records.push(run(own, "gamma-identity", "γ = id on the universal theory", sp, bounds, |text, c, ix| {
            let k = Alg::new(own, text);
            let a = k.op(c.get(0, ix));
            Ok((k.gamma(&a)?, a))
        }));
    }
    Ok(rep)
}
