use bivariant::catcore::{Category, CommutativeSquare, Cospan, MorId};
use bivariant::fixtures;
use bivariant::universal::{Cycle, Element, Universal};
use bivariant::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::sync::OnceLock;

fn fs4() -> &'static Category {
    static CAT: OnceLock<Category> = OnceLock::new();
    CAT.get_or_init(fixtures::fs4)
}

fn m(cat: &Category, name: &str) -> MorId {
    cat.morphism_by_name(name).unwrap()
}

fn gen(u: &Universal, ctx: &str, h: &str, labels: &[&str]) -> Element {
    let cat = u.category();
    let ls = labels
        .iter()
        .map(|l| cat.fibered().unwrap().label_by_name(l).unwrap())
        .collect();
    u.generator(m(cat, ctx), Cycle::new(m(cat, h), ls)).unwrap()
}

/// Maps `W → 2` for `|W| ≤ 2` as value tuples, up to precomposition with
/// bijections of `W`: sorting a tuple picks one representative per orbit.
fn brute_force_classes() -> BTreeSet<Vec<u8>> {
    let mut classes = BTreeSet::new();
    for w in 0..=2u32 {
        for code in 0..2u32.pow(w) {
            let mut values: Vec<u8> = (0..w).map(|i| ((code >> i) & 1) as u8).collect();
            values.sort();
            classes.insert(values);
        }
    }
    classes
}

#[test]
fn generator_count_matches_brute_force() {
    let cat = fs4();
    let u = Universal::new(cat);
    let gens = u.generators(m(cat, "bang_2"), Some(2), 0).unwrap();
    let oracle = brute_force_classes();
    assert_eq!(oracle.len(), 6);
    assert_eq!(gens.len(), oracle.len());
    let carriers = cat.carriers().unwrap();
    let engine: BTreeSet<Vec<u8>> = gens
        .iter()
        .map(|c| {
            let mut v: Vec<u8> = carriers.map(c.h).iter().map(|&x| x as u8).collect();
            v.sort();
            v
        })
        .collect();
    assert_eq!(engine, oracle);
}

#[test]
fn diamond_generators() {
    let cat = fixtures::diamond().without_fibered();
    let u = Universal::new(&cat);
    let gens = u.generators(m(&cat, "x_top"), None, 0).unwrap();
    let names: BTreeSet<&str> = gens.iter().map(|c| cat.mor_name(c.h)).collect();
    assert_eq!(names, BTreeSet::from(["bot_x", "id_x"]));
}

#[test]
fn canonical_representatives() {
    let cat = fs4();
    let u = Universal::new(cat);
    let fc = cat.fibered().unwrap();
    let c = u.canonicalize(&Cycle::bare(m(cat, "swap"))).unwrap();
    assert_eq!(c, u.canonicalize(&Cycle::bare(m(cat, "id_2"))).unwrap());
    let single = Cycle::bare(m(cat, "const_a"));
    assert_eq!(u.canonicalize(&single).unwrap(), single);
    let a = Cycle::new(m(cat, "id_2"), vec![fc.label_by_name("w2_35").unwrap()]);
    let b = Cycle::new(m(cat, "swap"), vec![fc.label_by_name("w2_53").unwrap()]);
    assert!(u.isomorphic(&a, &b).unwrap());
    let b = Cycle::new(m(cat, "swap"), vec![fc.label_by_name("w2_35").unwrap()]);
    assert!(!u.isomorphic(&a, &b).unwrap());
}

#[test]
fn theta_and_units() {
    let d = fixtures::diamond();
    let u = Universal::new(&d);
    assert_eq!(u.theta(m(&d, "bot_top")).unwrap(), gen(&u, "bot_top", "id_bot", &[]));
    let cat = fs4();
    let u = Universal::new(cat);
    assert_eq!(u.unit(cat.object_by_name("2").unwrap()).unwrap(), gen(&u, "id_2", "id_2", &[]));

    let mut doc = fixtures::diamond_document();
    doc.specialized = bivariant::catcore::document::ClassDoc::List(
        ["id_bot", "id_x", "id_y", "id_top"].map(String::from).to_vec(),
    );
    let thin = doc.build().unwrap();
    let u = Universal::new(&thin);
    assert!(matches!(u.theta(m(&thin, "bot_top")), Err(Error::NotSpecialized(_))));
    // only cycles with f ∘ h an identity survive, and bot_top is not invertible
    assert!(u.generators(m(&thin, "bot_top"), None, 0).unwrap().is_empty());
}

#[test]
fn product_examples() {
    let cat = fs4();
    let u = Universal::new(cat);
    let a = gen(&u, "id_2", "one_to_a", &[]);
    let b = gen(&u, "bang_2", "id_2", &[]);
    assert_eq!(u.product(&a, &b).unwrap(), gen(&u, "bang_2", "one_to_a", &[]));
    let a = gen(&u, "swap", "id_2", &[]);
    let b = gen(&u, "bang_2", "const_a", &[]);
    assert_eq!(u.product(&a, &b).unwrap(), gen(&u, "bang_2", "const_b", &[]));

    let d = fixtures::diamond();
    let u = Universal::new(&d);
    let a = gen(&u, "x_top", "bot_x", &[]);
    let b = gen(&u, "id_top", "y_top", &[]);
    assert_eq!(u.product(&a, &b).unwrap(), gen(&u, "x_top", "bot_x", &[]));
}

#[test]
fn pushforward_examples() {
    let cat = fs4();
    let u = Universal::new(cat);
    let a = gen(&u, "bang_2", "id_2", &[]);
    assert_eq!(u.pushforward(m(cat, "id_2"), m(cat, "bang_2"), &a).unwrap(), a);
    assert_eq!(
        u.pushforward(m(cat, "const_a"), m(cat, "bang_2"), &a).unwrap(),
        gen(&u, "bang_2", "const_a", &[])
    );
    let d = fixtures::diamond();
    let u = Universal::new(&d);
    let a = gen(&u, "x_top", "bot_x", &[]);
    assert_eq!(
        u.pushforward(m(&d, "x_top"), m(&d, "id_top"), &a).unwrap(),
        gen(&u, "id_top", "bot_top", &[])
    );
}

#[test]
fn pullback_examples() {
    let cat = fs4();
    let u = Universal::new(cat);
    let a = gen(&u, "const_a", "id_2", &[]);
    let sq = cat.fiber_square(m(cat, "const_a"), m(cat, "one_to_a")).unwrap();
    assert_eq!(cat.obj_name(cat.src(sq.left)), "2");
    assert_eq!(u.pullback(&sq, &a).unwrap(), gen(&u, "bang_2", "id_2", &[]));
    let id = cat.identity_horizontal_square(m(cat, "const_a"));
    assert_eq!(u.pullback(&id, &a).unwrap(), a);

    let d = fixtures::diamond();
    let u = Universal::new(&d);
    let a = gen(&u, "x_top", "bot_x", &[]);
    let sq = d.fiber_square(m(&d, "x_top"), m(&d, "y_top")).unwrap();
    assert_eq!(u.pullback(&sq, &a).unwrap(), gen(&u, "bot_y", "id_bot", &[]));
    let bad = CommutativeSquare {
        top: m(&d, "bot_x"),
        left: m(&d, "bot_top"),
        right: m(&d, "x_top"),
        bottom: m(&d, "id_top"),
    };
    assert!(matches!(u.pullback(&bad, &a), Err(Error::NotIndependent(_))));
}

#[test]
fn orient_examples() {
    let cat = fs4();
    let u = Universal::new(cat);
    let fc = cat.fibered().unwrap();
    let w = fc.label_by_name("w2_35").unwrap();
    let a = gen(&u, "bang_2", "id_2", &[]);
    assert_eq!(u.orient(w, &a).unwrap(), gen(&u, "bang_2", "id_2", &["w2_35"]));
    let a = gen(&u, "bang_2", "one_to_a", &[]);
    assert_eq!(u.orient(w, &a).unwrap(), gen(&u, "bang_2", "one_to_a", &["w1_3"]));
    let z = Element::zero(m(cat, "bang_2"));
    assert_eq!(u.orient(w, &z).unwrap(), z);
}

#[test]
fn identity_context_product_is_fiber_product() {
    let cat = fs4();
    let u = Universal::new(cat);
    let x = cat.object_by_name("2").unwrap();
    let id = cat.identity(x);
    let maps: Vec<MorId> = cat
        .morphisms()
        .filter(|&h| cat.dst(h) == x && cat.size(cat.src(h)).unwrap() <= 2)
        .collect();
    let mut checked = 0;
    for &h1 in &maps {
        for &h2 in &maps {
            let Ok(p) = cat.fiber_product(Cospan { left: h1, right: h2 }) else {
                continue;
            };
            let a = u.generator(id, Cycle::bare(h1)).unwrap();
            let b = u.generator(id, Cycle::bare(h2)).unwrap();
            let cup = u
                .generator(id, Cycle::bare(cat.compose(p.proj_left, h1).unwrap()))
                .unwrap();
            assert_eq!(u.product(&a, &b).unwrap(), cup);
            assert_eq!(u.product(&b, &a).unwrap(), cup, "the ring is commutative");
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn rendering() {
    let cat = fs4();
    let u = Universal::new(cat);
    let a = u
        .add(&gen(&u, "bang_2", "const_a", &[]), &u.scale(&(-2).into(), &gen(&u, "bang_2", "id_2", &["w2_35"])))
        .unwrap();
    assert_eq!(u.render(&a), "1*[2to2_aa ; ] - 2*[2to2_ab ; w2_35] over 2to1_aa");
    assert_eq!(u.render(&Element::zero(a.ctx)), "0 over 2to1_aa");
}

fn arb_cycle() -> impl Strategy<Value = (MorId, Vec<usize>)> {
    let cat = fs4();
    let hs: Vec<MorId> = cat.morphisms().filter(|&h| cat.size(cat.src(h)).unwrap() <= 3).collect();
    (prop::sample::select(hs), prop::collection::vec(0usize..64, 0..3))
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent_and_iso_invariant((h, picks) in arb_cycle(), gi in any::<prop::sample::Index>()) {
        let cat = fs4();
        let fc = cat.fibered().unwrap();
        let u = Universal::new(cat);
        let labels = fc.labels_over(cat.src(h));
        let bundles: Vec<_> = picks.iter().map(|&i| labels[i % labels.len()]).collect();
        let c = Cycle::new(h, bundles.clone());
        let canon = u.canonicalize(&c).unwrap();
        prop_assert_eq!(u.canonicalize(&canon).unwrap(), canon.clone());
        let isos = cat.isos_into(cat.src(h));
        let g = *gi.get(isos);
        let moved = Cycle::new(
            cat.compose(g, h).unwrap(),
            bundles.iter().map(|&l| fc.pullback_label(cat, g, l).unwrap()).collect(),
        );
        prop_assert_eq!(u.canonicalize(&moved).unwrap(), canon);
    }
}
