use super::space::{coeff, coeff_count, run, transpose, Alg, Cfg, Operands, Space, Universe};
use super::CheckReport;
use crate::catcore::CommutativeSquare;
use crate::error::Result;
use crate::theory::{Bounds, Theory};
use crate::transform::product_morphism;
use std::collections::HashMap;

/// Linearity, (B-1) to (B-7), units, commutativity, the laws of θ and the
/// functorialities of the Gysin maps.
pub fn check_bivariant_axioms<T>(t: &T, bounds: &Bounds) -> Result<CheckReport>
where
    T: Theory + Sync,
    T::Value: Send + Sync,
{
    let cat = t.category();
    let u = Universe::new(cat, bounds);
    let o = Operands::new(t, bounds);
    let mut rep = CheckReport::new(cat.name(), t.name(), "bivariant");
    let nc = coeff_count(bounds);
    let pairs = u.pairs();
    let triples = u.triples();
    let c_ = |f| cat.is_confined(f);
    let s_ = |f| cat.is_specialized(f);

    let mut by_right: HashMap<_, Vec<CommutativeSquare>> = HashMap::new();
    let mut by_top: HashMap<_, Vec<CommutativeSquare>> = HashMap::new();
    for sq in &u.squares {
        by_right.entry(sq.right).or_default().push(*sq);
        by_top.entry(sq.top).or_default().push(*sq);
    }
    let stacked: Vec<(CommutativeSquare, CommutativeSquare)> = u
        .squares
        .iter()
        .flat_map(|up| {
            by_top
                .get(&up.bottom)
                .into_iter()
                .flatten()
                .map(move |low| (*up, *low))
        })
        .collect();

    // Linearity.
    let mut sp = Space::new();
    for &(f, g) in &pairs {
        let (a, b) = (o.get(f)?, o.get(g)?);
        sp.push(Cfg::new(u.names(&[f, g])).op(a.clone()).op(a).op(b).extra(nc).extra(nc));
    }
    rep.records.push(run(
        t,
        "linearity-product-left",
        "(aα1 + bα2)•β = a(α1•β) + b(α2•β)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (x, y) = (coeff(bounds, c.x(0, ix)), coeff(bounds, c.x(1, ix)));
            let (a1, a2, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)), k.op(c.get(2, ix)));
            let lhs = k.prod(&k.lin(&[(x, &a1), (y, &a2)])?, &b)?;
            let rhs = k.lin(&[(x, &k.prod(&a1, &b)?), (y, &k.prod(&a2, &b)?)])?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &(f, g) in &pairs {
        let (a, b) = (o.get(f)?, o.get(g)?);
        sp.push(Cfg::new(u.names(&[f, g])).op(a).op(b.clone()).op(b).extra(nc).extra(nc));
    }
    rep.records.push(run(
        t,
        "linearity-product-right",
        "α•(aβ1 + bβ2) = a(α•β1) + b(α•β2)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (x, y) = (coeff(bounds, c.x(0, ix)), coeff(bounds, c.x(1, ix)));
            let (a, b1, b2) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)), k.op(c.get(2, ix)));
            let lhs = k.prod(&a, &k.lin(&[(x, &b1), (y, &b2)])?)?;
            let rhs = k.lin(&[(x, &k.prod(&a, &b1)?), (y, &k.prod(&a, &b2)?)])?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &(f, g) in pairs.iter().filter(|(f, _)| c_(*f)) {
        let a = o.get(cat.then(f, g))?;
        sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]).op(a.clone()).op(a).extra(nc).extra(nc));
    }
    rep.records.push(run(
        t,
        "linearity-push",
        "f_*(aα1 + bα2) = a f_*α1 + b f_*α2",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g) = (c.m[0], c.m[1]);
            let (x, y) = (coeff(bounds, c.x(0, ix)), coeff(bounds, c.x(1, ix)));
            let (a1, a2) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.push(f, g, &k.lin(&[(x, &a1), (y, &a2)])?)?;
            let rhs = k.lin(&[(x, &k.push(f, g, &a1)?), (y, &k.push(f, g, &a2)?)])?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for sq in &u.squares {
        let a = o.get(sq.right)?;
        sp.push(Cfg::new(u.sq(sq)).squares(&[*sq]).op(a.clone()).op(a).extra(nc).extra(nc));
    }
    rep.records.push(run(
        t,
        "linearity-pull",
        "g^*(aα1 + bα2) = a g^*α1 + b g^*α2",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let sq = &c.s[0];
            let (x, y) = (coeff(bounds, c.x(0, ix)), coeff(bounds, c.x(1, ix)));
            let (a1, a2) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.pull(sq, &k.lin(&[(x, &a1), (y, &a2)])?)?;
            let rhs = k.lin(&[(x, &k.pull(sq, &a1)?), (y, &k.pull(sq, &a2)?)])?;
            Ok((lhs, rhs))
        },
    ));

    // (B-1)
    let mut sp = Space::new();
    for &(f, g, h) in &triples {
        sp.push(Cfg::new(u.names(&[f, g, h])).op(o.get(f)?).op(o.get(g)?).op(o.get(h)?));
    }
    rep.records.push(run(
        t,
        "product-associative",
        "(α•β)•γ = α•(β•γ)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (a, b, g) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)), k.op(c.get(2, ix)));
            Ok((k.prod(&k.prod(&a, &b)?, &g)?, k.prod(&a, &k.prod(&b, &g)?)?))
        },
    ));

    // (B-2)
    let mut sp = Space::new();
    for &(f, g, h) in triples.iter().filter(|(f, g, _)| c_(*f) && c_(*g)) {
        let a = o.get(cat.then(cat.then(f, g), h))?;
        sp.push(Cfg::new(u.names(&[f, g, h])).mors(&[f, g, h]).op(a));
    }
    rep.records.push(run(
        t,
        "push-functorial",
        "(g∘f)_*α = g_*(f_*α)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, h) = (c.m[0], c.m[1], c.m[2]);
            let a = k.op(c.get(0, ix));
            let lhs = k.push(cat.then(f, g), h, &a)?;
            let rhs = k.push(g, h, &k.push(f, cat.then(g, h), &a)?)?;
            Ok((lhs, rhs))
        },
    ));

    // (B-3)
    let mut sp = Space::new();
    for sq1 in &u.squares {
        for sq2 in by_right.get(&sq1.left).into_iter().flatten() {
            sp.try_push(
                cat.paste_horizontal(sq1, sq2)
                    .and_then(|p| Ok(Cfg::new(format!("{} ; {}", u.sq(sq1), u.sq(sq2))).squares(&[*sq1, *sq2, p]).op(o.get(sq1.right)?))),
            )?;
        }
    }
    rep.records.push(run(
        t,
        "pull-functorial",
        "(g∘g')^*α = g'^*(g^*α)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let a = k.op(c.get(0, ix));
            Ok((k.pull(&c.s[2], &a)?, k.pull(&c.s[1], &k.pull(&c.s[0], &a)?)?))
        },
    ));

    // (B-4)
    let mut sp = Space::new();
    for &(f, g, h) in triples.iter().filter(|(f, _, _)| c_(*f)) {
        sp.push(
            Cfg::new(u.names(&[f, g, h]))
                .mors(&[f, g, h])
                .op(o.get(cat.then(f, g))?)
                .op(o.get(h)?),
        );
    }
    rep.records.push(run(
        t,
        "push-product",
        "f_*(α•β) = f_*α•β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, h) = (c.m[0], c.m[1], c.m[2]);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.push(f, cat.then(g, h), &k.prod(&a, &b)?)?;
            let rhs = k.prod(&k.push(f, g, &a)?, &b)?;
            Ok((lhs, rhs))
        },
    ));

    // (B-5)
    let mut sp = Space::new();
    for (up, low) in &stacked {
        sp.try_push(cat.paste_vertical(up, low).and_then(|p| {
            Ok(Cfg::new(format!("{} ; {}", u.sq(up), u.sq(low)))
                .squares(&[*up, *low, p])
                .op(o.get(up.right)?)
                .op(o.get(low.right)?))
        }))?;
    }
    rep.records.push(run(
        t,
        "pull-product",
        "h^*(α•β) = h'^*α•h^*β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.pull(&c.s[2], &k.prod(&a, &b)?)?;
            let rhs = k.prod(&k.pull(&c.s[0], &a)?, &k.pull(&c.s[1], &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    // (B-6)
    let mut sp = Space::new();
    for (up, low) in stacked.iter().filter(|(up, _)| c_(up.right)) {
        sp.try_push(cat.paste_vertical(up, low).and_then(|p| {
            Ok(Cfg::new(format!("{} ; {}", u.sq(up), u.sq(low)))
                .squares(&[*up, *low, p])
                .op(o.get(p.right)?))
        }))?;
    }
    rep.records.push(run(
        t,
        "push-pull",
        "f'_*(h^*α) = h^*(f_*α)",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (up, low, p) = (&c.s[0], &c.s[1], &c.s[2]);
            let a = k.op(c.get(0, ix));
            let lhs = k.push(up.left, low.left, &k.pull(p, &a)?)?;
            let rhs = k.pull(low, &k.push(up.right, low.right, &a)?)?;
            Ok((lhs, rhs))
        },
    ));

    // (B-7)
    let mut sp = Space::new();
    for sq in u.squares.iter().filter(|sq| c_(sq.bottom)) {
        for h in u.from(cat.dst(sq.bottom)) {
            sp.push(
                Cfg::new(format!("{} ; h = {}", u.sq(sq), cat.mor_name(h)))
                    .squares(&[*sq])
                    .mors(&[h])
                    .op(o.get(sq.right)?)
                    .op(o.get(cat.then(sq.bottom, h))?),
            );
        }
    }
    rep.records.push(run(
        t,
        "projection-formula",
        "g'_*(g^*α•β) = α•g_*β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (sq, h) = (&c.s[0], c.m[0]);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.push(sq.top, cat.then(sq.right, h), &k.prod(&k.pull(sq, &a)?, &b)?)?;
            let rhs = k.prod(&a, &k.push(sq.bottom, h, &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    // Units.
    let mut sp = Space::new();
    for &f in &u.mors {
        sp.push(Cfg::new(u.names(&[f])).mors(&[f]).op(o.get(f)?));
    }
    rep.records.push(run(t, "unit-right", "α•1_Y = α", sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let a = k.op(c.get(0, ix));
        Ok((k.prod(&a, &k.unit(cat.dst(c.m[0]))?)?, a))
    }));
    let mut sp = Space::new();
    for &f in &u.mors {
        sp.push(Cfg::new(u.names(&[f])).mors(&[f]).op(o.get(f)?));
    }
    rep.records.push(run(t, "unit-left", "1_X•α = α", sp, bounds, |text, c, ix| {
        let k = Alg::new(t, text);
        let a = k.op(c.get(0, ix));
        Ok((k.prod(&k.unit(cat.src(c.m[0]))?, &a)?, a))
    }));
    let mut sp = Space::<()>::new();
    for &g in &u.mors {
        sp.push(Cfg::new(u.names(&[g])).squares(&[cat.identity_vertical_square(g)]).mors(&[g]));
    }
    rep.records.push(run(t, "unit-pull", "g^*1_X = 1_X'", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        let g = c.m[0];
        Ok((k.pull(&c.s[0], &k.unit(cat.dst(g))?)?, k.unit(cat.src(g))?))
    }));

    // Commutativity.
    let mut sp = Space::new();
    for sq in &u.squares {
        let tr = transpose(sq);
        if !cat.is_independent(&tr) {
            continue;
        }
        sp.push(
            Cfg::new(u.sq(sq))
                .squares(&[*sq, tr])
                .op(o.get(sq.right)?)
                .op(o.get(sq.bottom)?),
        );
    }
    rep.records.push(run(
        t,
        "commutativity",
        "g^*α•β = f^*β•α",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            Ok((k.prod(&k.pull(&c.s[0], &a)?, &b)?, k.prod(&k.pull(&c.s[1], &b)?, &a)?))
        },
    ));

    // θ.
    let mut sp = Space::<()>::new();
    for &(f, g) in pairs.iter().filter(|(f, g)| s_(*f) && s_(*g)) {
        sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]));
    }
    rep.records.push(run(t, "theta-composite", "θ(g∘f) = θ(f)•θ(g)", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        let (f, g) = (c.m[0], c.m[1]);
        Ok((k.theta(cat.then(f, g))?, k.prod(&k.theta(f)?, &k.theta(g)?)?))
    }));
    let mut sp = Space::<()>::new();
    for x in u.objects() {
        let id = cat.identity(x);
        if s_(id) {
            sp.push(Cfg::new(cat.obj_name(x).to_string()).mors(&[id]));
        }
    }
    rep.records.push(run(t, "theta-identity", "θ(id_X) = 1_X", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        Ok((k.theta(c.m[0])?, k.unit(cat.src(c.m[0]))?))
    }));
    let mut sp = Space::<()>::new();
    for sq in u.squares.iter().filter(|sq| s_(sq.right)) {
        sp.push(Cfg::new(u.sq(sq)).squares(&[*sq]));
    }
    rep.records.push(run(t, "theta-nice", "g^*θ(f) = θ(f')", sp, bounds, |text, c, _| {
        let k = Alg::new(t, text);
        let sq = &c.s[0];
        Ok((k.pull(sq, &k.theta(sq.right)?)?, k.theta(sq.left)?))
    }));

    // Covariant side.
    let mut sp = Space::new();
    for &(f, g) in pairs.iter().filter(|(f, g)| c_(*f) && c_(*g)) {
        if let Some(pz) = u.to_final(cat.dst(g)) {
            sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g, pz]).op(o.get(cat.then(cat.then(f, g), pz))?));
        }
    }
    rep.records.push(run(
        t,
        "covariant-push-functorial",
        "(g∘f)_* = g_* f_* on B_*",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, pz) = (c.m[0], c.m[1], c.m[2]);
            let a = k.op(c.get(0, ix));
            let py = cat.then(g, pz);
            Ok((k.push(cat.then(f, g), pz, &a)?, k.push(g, pz, &k.push(f, py, &a)?)?))
        },
    ));

    let mut sp = Space::new();
    for &(f, g) in pairs.iter().filter(|(f, g)| s_(*f) && s_(*g)) {
        if let Some(pz) = u.to_final(cat.dst(g)) {
            sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]).op(o.get(pz)?));
        }
    }
    rep.records.push(run(
        t,
        "gysin-pull-functorial",
        "(g∘f)^! = f^! g^!",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g) = (c.m[0], c.m[1]);
            let a = k.op(c.get(0, ix));
            Ok((k.gysin_pull(cat.then(f, g), &a)?, k.gysin_pull(f, &k.gysin_pull(g, &a)?)?))
        },
    ));

    let mut sp = Space::new();
    for sq in u.squares.iter().filter(|sq| s_(sq.right) && c_(sq.bottom)) {
        let (Some(py1), Some(py), Some(px)) = (
            u.to_final(cat.src(sq.bottom)),
            u.to_final(cat.dst(sq.bottom)),
            u.to_final(cat.dst(sq.top)),
        ) else {
            continue;
        };
        sp.push(Cfg::new(u.sq(sq)).squares(&[*sq]).mors(&[py, px]).op(o.get(py1)?));
    }
    rep.records.push(run(
        t,
        "gysin-pull-base-change",
        "f^! g_* = g'_* f'^! on B_*",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (sq, py, px) = (&c.s[0], c.m[0], c.m[1]);
            let a = k.op(c.get(0, ix));
            let lhs = k.gysin_pull(sq.right, &k.push(sq.bottom, py, &a)?)?;
            let rhs = k.push(sq.top, px, &k.gysin_pull(sq.left, &a)?)?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| c_(f)) {
        for &g in u.mors.iter().filter(|&&g| c_(g)) {
            let (Some(px), Some(py), Some(px1), Some(py1)) = (
                u.to_final(cat.src(f)),
                u.to_final(cat.src(g)),
                u.to_final(cat.dst(f)),
                u.to_final(cat.dst(g)),
            ) else {
                continue;
            };
            sp.try_push(product_morphism(cat, f, g).and_then(|fg| {
                Ok(Cfg::new(u.names(&[f, g]))
                    .mors(&[f, g, fg, cat.to_final(cat.dst(fg))?, px1, py1])
                    .op(o.get(px)?)
                    .op(o.get(py)?))
            }))?;
        }
    }
    rep.records.push(run(
        t,
        "push-exterior",
        "(f×g)_*(α×β) = f_*α × g_*β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, fg, pp, px1, py1) = (c.m[0], c.m[1], c.m[2], c.m[3], c.m[4], c.m[5]);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.push(fg, pp, &k.ext(&a, &b)?)?;
            let rhs = k.ext(&k.push(f, px1, &a)?, &k.push(g, py1, &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| s_(f)) {
        for &g in u.mors.iter().filter(|&&g| s_(g)) {
            let (Some(px1), Some(py1)) = (u.to_final(cat.dst(f)), u.to_final(cat.dst(g))) else {
                continue;
            };
            sp.try_push(product_morphism(cat, f, g).and_then(|fg| {
                Ok(Cfg::new(u.names(&[f, g]))
                    .mors(&[f, g, fg])
                    .op(o.get(px1)?)
                    .op(o.get(py1)?))
            }))?;
        }
    }
    rep.records.push(run(
        t,
        "gysin-pull-exterior",
        "(f×g)^!(α×β) = f^!α × g^!β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, fg) = (c.m[0], c.m[1], c.m[2]);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.gysin_pull(fg, &k.ext(&a, &b)?)?;
            let rhs = k.ext(&k.gysin_pull(f, &a)?, &k.gysin_pull(g, &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    // Contravariant side.
    let mut sp = Space::new();
    for &(f, g) in &pairs {
        let gf = cat.then(f, g);
        sp.push(
            Cfg::new(u.names(&[f, g]))
                .squares(&[
                    cat.identity_vertical_square(gf),
                    cat.identity_vertical_square(f),
                    cat.identity_vertical_square(g),
                ])
                .op(o.get(cat.identity(cat.dst(g)))?),
        );
    }
    rep.records.push(run(
        t,
        "contravariant-pull-functorial",
        "(g∘f)^* = f^* g^* on B^*",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let a = k.op(c.get(0, ix));
            Ok((k.pull(&c.s[0], &a)?, k.pull(&c.s[1], &k.pull(&c.s[2], &a)?)?))
        },
    ));

    let cs = |f| c_(f) && s_(f);
    let mut sp = Space::new();
    for &(f, g) in pairs.iter().filter(|(f, g)| cs(*f) && cs(*g)) {
        sp.push(Cfg::new(u.names(&[f, g])).mors(&[f, g]).op(o.get(cat.identity(cat.src(f)))?));
    }
    rep.records.push(run(
        t,
        "gysin-push-functorial",
        "(g∘f)_! = g_! f_!",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g) = (c.m[0], c.m[1]);
            let a = k.op(c.get(0, ix));
            Ok((k.gysin_push(cat.then(f, g), &a)?, k.gysin_push(g, &k.gysin_push(f, &a)?)?))
        },
    ));

    let mut sp = Space::new();
    for sq in u.squares.iter().filter(|sq| cs(sq.right)) {
        sp.push(
            Cfg::new(u.sq(sq))
                .squares(&[
                    *sq,
                    cat.identity_vertical_square(sq.top),
                    cat.identity_vertical_square(sq.bottom),
                ])
                .op(o.get(cat.identity(cat.src(sq.right)))?),
        );
    }
    rep.records.push(run(
        t,
        "gysin-push-base-change",
        "g'_!(f'^*α) = f^*(g_!α) on B^*",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let sq = &c.s[0];
            let a = k.op(c.get(0, ix));
            let lhs = k.gysin_push(sq.left, &k.pull(&c.s[1], &a)?)?;
            let rhs = k.pull(&c.s[2], &k.gysin_push(sq.right, &a)?)?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &f in &u.mors {
        for &g in &u.mors {
            sp.try_push(product_morphism(cat, f, g).and_then(|fg| {
                Ok(Cfg::new(u.names(&[f, g]))
                    .squares(&[
                        cat.identity_vertical_square(fg),
                        cat.identity_vertical_square(f),
                        cat.identity_vertical_square(g),
                    ])
                    .op(o.get(cat.identity(cat.dst(f)))?)
                    .op(o.get(cat.identity(cat.dst(g)))?))
            }))?;
        }
    }
    rep.records.push(run(
        t,
        "pull-exterior",
        "(f×g)^*(α×β) = f^*α × g^*β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.pull(&c.s[0], &k.ext(&a, &b)?)?;
            let rhs = k.ext(&k.pull(&c.s[1], &a)?, &k.pull(&c.s[2], &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    let mut sp = Space::new();
    for &f in u.mors.iter().filter(|&&f| cs(f)) {
        for &g in u.mors.iter().filter(|&&g| cs(g)) {
            sp.try_push(product_morphism(cat, f, g).and_then(|fg| {
                Ok(Cfg::new(u.names(&[f, g]))
                    .mors(&[f, g, fg])
                    .op(o.get(cat.identity(cat.src(f)))?)
                    .op(o.get(cat.identity(cat.src(g)))?))
            }))?;
        }
    }
    rep.records.push(run(
        t,
        "gysin-push-exterior",
        "(f×g)_!(α×β) = f_!α × g_!β",
        sp,
        bounds,
        |text, c, ix| {
            let k = Alg::new(t, text);
            let (f, g, fg) = (c.m[0], c.m[1], c.m[2]);
            let (a, b) = (k.op(c.get(0, ix)), k.op(c.get(1, ix)));
            let lhs = k.gysin_push(fg, &k.ext(&a, &b)?)?;
            let rhs = k.ext(&k.gysin_push(f, &a)?, &k.gysin_push(g, &b)?)?;
            Ok((lhs, rhs))
        },
    ));

    Ok(rep)
}
