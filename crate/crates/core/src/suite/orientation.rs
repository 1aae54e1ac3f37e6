use super::space::{run, Alg, Cfg, Operands, Space, Tm, Universe};
use super::{AxiomRecord, CheckReport};
use crate::catcore::LabelId;
use crate::error::Result;
use crate::theory::{Bounds, Theory};
use crate::transform::{product_object, Fold};
use crate::universal::Cycle;

const RECORDS: &[(&str, &str)] = &[
    ("orient-identity", "φ(L) = φ(L') for L ≅ L'"),
    ("orient-commute", "φ(L)φ(L') = φ(L')φ(L)"),
    ("orient-product-left", "φ(L)(α•β) = φ(L)α•β"),
    ("orient-product-right", "φ(f^*M)(α•β) = α•φ(M)β"),
    ("orient-push", "f_*(φ(f^*M)α) = φ(M)f_*α"),
    ("orient-pull", "g^*(φ(L)α) = φ(g'^*L)(g^*α)"),
    ("orient-commute-covariant", "φ(L)φ(L') = φ(L')φ(L) on B_*"),
    ("orient-commute-contravariant", "φ(L)φ(L') = φ(L')φ(L) on B^*"),
    ("orient-exterior-covariant", "φ(L)α × β = φ(p1^*L)(α×β) on B_*"),
    ("orient-exterior-contravariant", "φ(L)α × β = φ(p1^*L)(α×β) on B^*"),
    ("orient-covariant-push", "f_* φ(f^*M) = φ(M) f_* on B_*"),
    ("orient-gysin-pull", "φ(f^*M) f^! = f^! φ(M) on B_*"),
    ("orient-gysin-push", "f_! φ(f^*M) = φ(M) f_! on B^*"),
    ("orient-contravariant-pull", "φ(f^*M) f^* = f^* φ(M) on B^*"),
];

/// The orientation axioms, their consequences for the covariant and
/// contravariant parts, and for the universal theory the two presentations of
/// its elements.
pub fn check_orientation_axioms<T>(t: &T, bounds: &Bounds) -> Result<CheckReport>
where
    T: Theory + Sync,
    T::Value: Send + Sync,
{
    let cat = t.category();
    let mut rep = CheckReport::new(cat.name(), t.name(), "orientation");
    let fc = match cat.fibered() {
        Some(fc) if t.is_oriented() => fc,
        _ => {
            for (name, anchor) in RECORDS {
                rep.records.push(AxiomRecord::not_applicable(
                    name,
                    anchor,
                    format!("{} carries no orientation data", t.name()),
                ));
            }
            return Ok(rep);
        }
    };
    let u = Universe::new(cat, bounds);
    let o = Operands::new(t, bounds);
    let pairs = u.pairs();
    let pull = |f, l| fc.pullback_label(cat, f, l);
    let anchor = |name: &str| RECORDS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a).unwrap_or("");

    // (O-1): a label pulled back in two steps against one step along the composite.
    let mut sp = Space::new();
    for &(f, g) in &pairs {
        for m in u.labels_over(cat.dst(g)) {
            let l1 = pull(f, pull(g, m)?)?;
            let l2 = pull(cat.then(f, g), m)?;
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f, g]), u.label(m)))
                    .labels(&[l1, l2])
                    .op(o.get(cat.identity(cat.src(f)))?),
            );
        }
    }
    rep.records.push(run(t, "orient-identity", anchor("orient-identity"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let a = k.op(c.get(0, ix));
        Ok((k.phi(c.l[0], &a)?, k.phi(c.l[1], &a)?))
    }));

    // (O-2)
    let mut sp = Space::new();
    for &f in &u.mors {
        let ls = u.labels_over(cat.src(f));
        for &l1 in &ls {
            for &l2 in &ls {
                sp.push(
                    Cfg::new(format!("{} ; {}, {}", u.names(&[f]), u.label(l1), u.label(l2)))
                        .labels(&[l1, l2])
                        .op(o.get(f)?),
                );
            }
        }
    }
    rep.records.push(commute(t, "orient-commute", anchor("orient-commute"), sp, bounds));

    // (O-3), first form.
    let mut sp = Space::new();
    for &(f, g) in &pairs {
        for l in u.labels_over(cat.src(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f, g]), u.label(l)))
                    .labels(&[l])
                    .op(o.get(f)?)
                    .op(o.get(g)?),
            );
        }
    }
    rep.records.push(run(t, "orient-product-left", anchor("orient-product-left"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
        Ok((k.phi(c.l[0], &k.prod(&a, &b)?)?, k.prod(&k.phi(c.l[0], &a)?, &b)?))
    }));

    // (O-3), second form.
    let mut sp = Space::new();
    for &(f, g) in &pairs {
        for m in u.labels_over(cat.src(g)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f, g]), u.label(m)))
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(f)?)
                    .op(o.get(g)?),
            );
        }
    }
    rep.records.push(run(t, "orient-product-right", anchor("orient-product-right"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
        Ok((k.phi(c.l[1], &k.prod(&a, &b)?)?, k.prod(&a, &k.phi(c.l[0], &b)?)?))
    }));

    // (O-4)
    let mut sp = Space::new();
    for &(f, g) in pairs.iter().filter(|(f, _)| cat.is_confined(*f)) {
        for m in u.labels_over(cat.dst(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f, g]), u.label(m)))
                    .mors(&[f, g])
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(cat.then(f, g))?),
            );
        }
    }
    rep.records.push(run(t, "orient-push", anchor("orient-push"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let (f, g) = (c.m[0], c.m[1]);
        let a = k.op(c.get(0, ix));
        Ok((k.push(f, g, &k.phi(c.l[1], &a)?)?, k.phi(c.l[0], &k.push(f, g, &a)?)?))
    }));

    // (O-5)
    let mut sp = Space::new();
    for sq in &u.squares {
        for l in u.labels_over(cat.src(sq.right)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.sq(sq), u.label(l)))
                    .squares(&[*sq])
                    .labels(&[l, pull(sq.top, l)?])
                    .op(o.get(sq.right)?),
            );
        }
    }
    rep.records.push(run(t, "orient-pull", anchor("orient-pull"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let sq = &c.s[0];
        let a = k.op(c.get(0, ix));
        Ok((k.pull(sq, &k.phi(c.l[0], &a)?)?, k.phi(c.l[1], &k.pull(sq, &a)?)?))
    }));

    // Covariant and contravariant consequences.
    for (name, covariant) in [("orient-commute-covariant", true), ("orient-commute-contravariant", false)] {
        let mut sp = Space::new();
        for x in u.objects() {
            let ctx = if covariant {
                match u.to_final(x) {
                    Some(p) => p,
                    None => continue,
                }
            } else {
                cat.identity(x)
            };
            let ls = u.labels_over(x);
            for &l1 in &ls {
                for &l2 in &ls {
                    sp.push(
                        Cfg::new(format!("{} ; {}, {}", cat.obj_name(x), u.label(l1), u.label(l2)))
                            .labels(&[l1, l2])
                            .op(o.get(ctx)?),
                    );
                }
            }
        }
        rep.records.push(commute(t, name, anchor(name), sp, bounds));
    }

    for (name, covariant) in [("orient-exterior-covariant", true), ("orient-exterior-contravariant", false)] {
        let mut sp = Space::new();
        for x in u.objects() {
            for y in u.objects() {
                let ctx = |z| if covariant { u.to_final(z) } else { Some(cat.identity(z)) };
                let (Some(cx), Some(cy)) = (ctx(x), ctx(y)) else {
                    continue;
                };
                let p = match product_object(cat, x, y) {
                    Ok(p) => p,
                    Err(e) if e.is_pullback_unavailable() => {
                        sp.try_push(Err(e))?;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                for l in u.labels_over(x) {
                    sp.push(
                        Cfg::new(format!("{} × {} ; {}", cat.obj_name(x), cat.obj_name(y), u.label(l)))
                            .labels(&[l, pull(p.p1, l)?])
                            .op(o.get(cx)?)
                            .op(o.get(cy)?),
                    );
                }
            }
        }
        rep.records.push(run(t, name, anchor(name), sp, bounds, |text, c, ix| {
            let k = Alg::new(t, text);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            Ok((k.ext(&k.phi(c.l[0], &a)?, &b)?, k.phi(c.l[1], &k.ext(&a, &b)?)?))
        }));
    }

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| cat.is_confined(f)) {
        let (Some(px), Some(py)) = (u.to_final(cat.src(f)), u.to_final(cat.dst(f))) else {
            continue;
        };
        for m in u.labels_over(cat.dst(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(m)))
                    .mors(&[f, py])
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(px)?),
            );
        }
    }
    rep.records.push(run(t, "orient-covariant-push", anchor("orient-covariant-push"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let (f, py) = (c.m[0], c.m[1]);
        let a = k.op(c.get(0, ix));
        Ok((k.push(f, py, &k.phi(c.l[1], &a)?)?, k.phi(c.l[0], &k.push(f, py, &a)?)?))
    }));

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| cat.is_specialized(f)) {
        let Some(py) = u.to_final(cat.dst(f)) else {
            continue;
        };
        for m in u.labels_over(cat.dst(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(m)))
                    .mors(&[f])
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(py)?),
            );
        }
    }
    rep.records.push(run(t, "orient-gysin-pull", anchor("orient-gysin-pull"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let f = c.m[0];
        let a = k.op(c.get(0, ix));
        Ok((k.phi(c.l[1], &k.gysin_pull(f, &a)?)?, k.gysin_pull(f, &k.phi(c.l[0], &a)?)?))
    }));

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| cat.is_confined(f) && cat.is_specialized(f)) {
        for m in u.labels_over(cat.dst(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(m)))
                    .mors(&[f])
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(cat.identity(cat.src(f)))?),
            );
        }
    }
    rep.records.push(run(t, "orient-gysin-push", anchor("orient-gysin-push"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let f = c.m[0];
        let a = k.op(c.get(0, ix));
        Ok((k.gysin_push(f, &k.phi(c.l[1], &a)?)?, k.phi(c.l[0], &k.gysin_push(f, &a)?)?))
    }));

    let mut sp = Space::new();
    for &f in &u.mors {
        for m in u.labels_over(cat.dst(f)) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(m)))
                    .squares(&[cat.identity_vertical_square(f)])
                    .labels(&[m, pull(f, m)?])
                    .op(o.get(cat.identity(cat.dst(f)))?),
            );
        }
    }
    rep.records.push(run(t, "orient-contravariant-pull", anchor("orient-contravariant-pull"), sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let a = k.op(c.get(0, ix));
        Ok((k.phi(c.l[1], &k.pull(&c.s[0], &a)?)?, k.pull(&c.s[0], &k.phi(c.l[0], &a)?)?))
    }));

    if let Some(un) = t.universal() {
        rep.records.extend(observations(un, &u, bounds)?);
    }
    Ok(rep)
}

fn commute<T>(t: &T, name: &str, anchor: &str, sp: Space<T::Value>, bounds: &Bounds) -> AxiomRecord
where
    T: Theory + Sync,
    T::Value: Send + Sync,
{
    run(t, name, anchor, sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let (l1, l2): (LabelId, LabelId) = (c.l[0], c.l[1]);
        let a = k.op(c.get(0, ix));
        Ok((k.phi(l1, &k.phi(l2, &a)?)?, k.phi(l2, &k.phi(l1, &a)?)?))
    })
}

/// `Φ(L)α = [X → X; L]•α` and the decomposition of a generator into
/// pushforward, orientation operators and θ.
fn observations(un: &crate::universal::Universal<'_>, u: &Universe<'_>, bounds: &Bounds) -> Result<Vec<AxiomRecord>> {
    let cat = un.category();
    let o = Operands::new(un, bounds);
    let mut out = Vec::new();

    let mut sp = Space::new();
    for &f in &u.mors {
        let x = cat.src(f);
        if !cat.is_specialized(cat.identity(x)) {
            continue;
        }
        for l in u.labels_over(x) {
            sp.push(
                Cfg::new(format!("{} ; {}", u.names(&[f]), u.label(l)))
                    .labels(&[l])
                    .op(o.get(f)?),
            );
        }
    }
    out.push(run(un, "orient-as-product", "Φ(L)α = [X → X; L]•α", sp, bounds, |text, c, ix| {
        let k = Alg::new(un, text);
        let a = k.op(c.get(0, ix));
        let id = cat.identity(cat.src(a.v.ctx));
        let cyc = Tm {
            v: un.generator(id, Cycle::new(id, vec![c.l[0]]))?,
            e: if text { un.cycle_expr(id, &Cycle::new(id, vec![c.l[0]])) } else { String::new() },
        };
        Ok((k.phi(c.l[0], &a)?, k.prod(&cyc, &a)?))
    }));

    for (name, fold) in [("generator-decomposition", Fold::LeftToRight), ("generator-decomposition-reversed", Fold::RightToLeft)] {
        let mut sp = Space::new();
        for &f in &u.mors {
            sp.push(Cfg::new(u.names(&[f])).mors(&[f]).op(o.get(f)?));
        }
        out.push(run(
            un,
            name,
            "[V → X; L1..Lr] = h_*(Φ(L1)..Φ(Lr)θ(f∘h))",
            sp,
            bounds,
            |text, c, ix| {
                let k = Alg::new(un, text);
                let f = c.m[0];
                let a = k.op(c.get(0, ix));
                let (cyc, _) = &a.v.value.terms()[0];
                let mut v = k.theta(cat.then(cyc.h, f))?;
                let mut ls = cyc.bundles.clone();
                if fold == Fold::RightToLeft {
                    ls.reverse();
                }
                for l in ls {
                    v = k.phi(l, &v)?;
                }
                Ok((a.clone(), k.push(cyc.h, f, &v)?))
            },
        ));
    }
    Ok(out)
}
