use bivariant::catcore::{Category, MorId, ObjId};
use bivariant::fixtures;
use bivariant::targets::{Fiberwise, FnValue};
use bivariant::theory::Theory;
use bivariant::transform::{self, Fold};
use bivariant::universal::{Cycle, Universal};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn fs4() -> &'static Category {
    static CAT: OnceLock<Category> = OnceLock::new();
    CAT.get_or_init(fixtures::fs4)
}

fn m(name: &str) -> MorId {
    fs4().morphism_by_name(name).unwrap()
}

fn obj(name: &str) -> ObjId {
    fs4().object_by_name(name).unwrap()
}

fn t() -> Fiberwise<'static> {
    Fiberwise::new(fs4()).unwrap()
}

fn v(ctx: &str, values: &[i64]) -> FnValue {
    t().value(m(ctx), values.iter().copied()).unwrap()
}

fn label(name: &str) -> bivariant::catcore::LabelId {
    fs4().fibered().unwrap().label_by_name(name).unwrap()
}

#[test]
fn fiberwise_product() {
    let t = t();
    assert_eq!(t.product(&v("id_2", &[1, 1]), &v("bang_2", &[1, 1])).unwrap(), v("bang_2", &[1, 1]));
    assert_eq!(t.product(&v("id_2", &[2, 3]), &v("bang_2", &[5, 7])).unwrap(), v("bang_2", &[10, 21]));
    // through const_a every point reads β at a
    let r = t.product(&v("const_a", &[1, 1]), &v("bang_2", &[5, 7])).unwrap();
    assert_eq!(r, v("bang_2", &[5, 5]));
}

#[test]
fn fiberwise_pushforward() {
    let t = t();
    let a = v("bang_2", &[3, 4]);
    assert_eq!(t.pushforward(m("id_2"), m("bang_2"), &a).unwrap(), a);
    assert_eq!(
        t.pushforward(m("const_a"), m("id_2"), &v("const_a", &[1, 1])).unwrap(),
        v("id_2", &[2, 0])
    );
    assert_eq!(t.pushforward(m("bang_2"), m("id_1"), &a).unwrap(), v("id_1", &[7]));
}

#[test]
fn fiberwise_pullback() {
    let cat = fs4();
    let t = t();
    let a = v("bang_2", &[3, 7]);
    let id = cat.identity_horizontal_square(m("bang_2"));
    assert_eq!(t.pullback(&id, &a).unwrap(), a);
    let sq = cat.fiber_square(m("bang_2"), m("id_1")).unwrap();
    let swapped = bivariant::catcore::CommutativeSquare {
        top: m("swap"),
        left: m("bang_2"),
        right: m("bang_2"),
        bottom: m("id_1"),
    };
    assert!(cat.is_independent(&swapped));
    assert_eq!(t.pullback(&swapped, &a).unwrap(), v("bang_2", &[7, 3]));
    assert_eq!(t.pullback(&sq, &a).unwrap(), a);
    let empty = cat.fiber_square(m("bang_2"), m("bang_0")).unwrap();
    assert_eq!(t.pullback(&empty, &a).unwrap().values, Vec::<BigInt>::new());
}

#[test]
fn fiberwise_theta_unit_phi() {
    let t = t();
    assert_eq!(t.theta(m("const_a")).unwrap(), v("const_a", &[1, 1]));
    assert_eq!(t.unit(obj("2")).unwrap(), v("id_2", &[1, 1]));
    let w = label("w2_35");
    let one = v("bang_2", &[1, 1]);
    assert_eq!(t.phi(w, &one).unwrap(), v("bang_2", &[3, 5]));
    let w2 = label("w2_53");
    assert_eq!(
        t.phi(w, &t.phi(w2, &one).unwrap()).unwrap(),
        t.phi(w2, &t.phi(w, &one).unwrap()).unwrap()
    );
    assert!(t.phi(label("w1_3"), &one).is_err());
}

#[test]
fn gamma_worked_values() {
    let cat = fs4();
    let (t, u) = (t(), Universal::new(cat));
    let c = u.generator(m("bang_2"), Cycle::bare(m("const_a"))).unwrap();
    assert_eq!(transform::gamma(&t, &c).unwrap(), v("bang_2", &[2, 0]));
    let c = u.generator(m("bang_2"), Cycle::new(m("id_2"), vec![label("w2_35")])).unwrap();
    assert_eq!(transform::gamma(&t, &c).unwrap(), v("bang_2", &[3, 5]));
    // normalization: γ([X → X]) over f is θ(f)
    for f in cat.morphisms().filter(|&f| cat.size(cat.src(f)).unwrap() <= 2) {
        let e = u.theta(f).unwrap();
        assert_eq!(transform::gamma(&t, &e).unwrap(), t.theta(f).unwrap());
    }
}

#[test]
fn gamma_without_orientation_data() {
    let bare = fs4().clone().without_fibered();
    let t = Fiberwise::new(&bare).unwrap();
    let c = Cycle::new(m("id_2"), vec![label("w2_35")]);
    assert!(matches!(
        transform::gamma_cycle(&t, m("bang_2"), &c, Fold::LeftToRight),
        Err(bivariant::Error::MissingOrientationData(_))
    ));
}

#[test]
fn gysin_worked_values() {
    let t = t();
    let a = v("bang_2", &[3, 7]);
    assert_eq!(transform::gysin_pullback(&t, m("id_2"), &a).unwrap(), a);
    assert_eq!(transform::gysin_pullback(&t, m("const_a"), &a).unwrap(), v("bang_2", &[3, 3]));
    assert_eq!(transform::gysin_pullback(&t, m("bang_2"), &v("id_1", &[5])).unwrap(), v("bang_2", &[5, 5]));

    let b = v("id_2", &[1, 2]);
    assert_eq!(transform::gysin_pushforward(&t, m("id_2"), &b).unwrap(), b);
    assert_eq!(transform::gysin_pushforward(&t, m("const_a"), &v("id_2", &[1, 1])).unwrap(), v("id_2", &[2, 0]));
    assert_eq!(transform::gysin_pushforward(&t, m("swap"), &b).unwrap(), v("id_2", &[2, 1]));
}

/// `α × β` evaluated at the pair `(x, y)`, read off the carrier names of the product.
fn at_pairs(t: &Fiberwise, p: &transform::ProductObject, value: &FnValue) -> Vec<(usize, usize, BigInt)> {
    let carriers = t.category().carriers().unwrap();
    (0..value.values.len())
        .map(|i| (carriers.apply(p.p1, i), carriers.apply(p.p2, i), value.values[i].clone()))
        .collect()
}

#[test]
fn exterior_worked_values() {
    let cat = fs4();
    let t = t();
    let (a, b) = (v("bang_2", &[1, 2]), v("bang_2", &[3, 4]));
    let p = transform::product_object(cat, obj("2"), obj("2")).unwrap();
    assert_eq!(cat.obj_name(p.apex), "4");
    let ab = transform::exterior_covariant(&t, &a, &b).unwrap();
    let mut cells = at_pairs(&t, &p, &ab);
    cells.sort();
    let expect: Vec<(usize, usize, BigInt)> = vec![(0, 0, 3.into()), (0, 1, 4.into()), (1, 0, 6.into()), (1, 1, 8.into())];
    assert_eq!(cells, expect);
    // the value on the pairs (a,a), (a,b), (b,a), (b,b) in carrier order
    assert_eq!(ab.values, [3, 4, 6, 8].map(BigInt::from).to_vec());
    // swapping the factors relabels the pairs
    let ba = transform::exterior_covariant(&t, &b, &a).unwrap();
    let mut swapped: Vec<_> = at_pairs(&t, &p, &ba).into_iter().map(|(x, y, c)| (y, x, c)).collect();
    swapped.sort();
    assert_eq!(swapped, expect);
    // the unit factor leaves the other one pulled back
    let one = t.theta(m("bang_2")).unwrap();
    let a1 = transform::exterior_covariant(&t, &a, &one).unwrap();
    let cells = at_pairs(&t, &p, &a1);
    assert!(cells.iter().all(|(x, _, c)| *c == a.values[*x]));

    let c = transform::exterior_contravariant(&t, &v("id_2", &[1, 2]), &v("id_2", &[3, 4])).unwrap();
    assert_eq!(c.values, [3, 4, 6, 8].map(BigInt::from).to_vec());
}

#[test]
fn fundamental_classes() {
    let cat = fs4();
    let t = t();
    assert_eq!(transform::fundamental_class(&t, obj("2")).unwrap(), v("bang_2", &[1, 1]));
    assert_eq!(transform::fundamental_class(&t, obj("1")).unwrap(), t.unit(obj("1")).unwrap());
    let u = Universal::new(cat);
    assert_eq!(
        transform::fundamental_class(&u, obj("3")).unwrap(),
        u.generator(m("bang_3"), Cycle::bare(m("id_3"))).unwrap()
    );
}

fn arb_generator() -> impl Strategy<Value = (MorId, Cycle)> {
    let cat = fs4();
    let mut all = Vec::new();
    let u = Universal::new(cat);
    for ctx in cat.morphisms().filter(|&f| cat.size(cat.src(f)).unwrap() <= 2) {
        for c in u.generators(ctx, Some(2), 2).unwrap() {
            all.push((ctx, c));
        }
    }
    prop::sample::select(all)
}

fn arb_group() -> impl Strategy<Value = (MorId, Vec<Cycle>)> {
    let cat = fs4();
    let u = Universal::new(cat);
    let groups: Vec<(MorId, Vec<Cycle>)> = cat
        .morphisms()
        .filter(|&f| cat.size(cat.src(f)).unwrap() <= 2)
        .map(|ctx| (ctx, u.generators(ctx, Some(2), 1).unwrap()))
        .filter(|(_, g)| !g.is_empty())
        .collect();
    prop::sample::select(groups)
}

proptest! {
    #[test]
    fn fold_orders_agree((ctx, c) in arb_generator()) {
        let t = t();
        let l = transform::gamma_cycle(&t, ctx, &c, Fold::LeftToRight).unwrap();
        let r = transform::gamma_cycle(&t, ctx, &c, Fold::RightToLeft).unwrap();
        prop_assert_eq!(&l, &r);
        let u = Universal::new(fs4());
        let e = u.generator(ctx, c).unwrap();
        prop_assert_eq!(transform::gamma_decomposed(&t, &e, Fold::RightToLeft).unwrap(), l);
    }

    #[test]
    fn gamma_is_linear((ctx, gens) in arb_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), n in -3i64..=3) {
        let t = t();
        let u = Universal::new(fs4());
        let (c, c2) = (i.get(&gens).clone(), j.get(&gens).clone());
        let e = u.add(&u.generator(ctx, c).unwrap(), &u.scale(&n.into(), &u.generator(ctx, c2).unwrap())).unwrap();
        let lhs = transform::gamma(&t, &e).unwrap();
        let parts: Vec<FnValue> = e.value.terms().iter().map(|(c, k)| t.scale(k, &transform::gamma_cycle(&t, ctx, c, Fold::LeftToRight).unwrap())).collect();
        let rhs = parts.iter().try_fold(t.zero(ctx).unwrap(), |acc, p| t.add(&acc, p)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
