use bivariant::catcore::Category;
use bivariant::dsl::{parse_expression, parse_statement, DslError, Evaluator, Expr, ExprKind, SquareRef, Statement, Term, Value};
use bivariant::fixtures;
use bivariant::targets::Fiberwise;
use bivariant::universal::Universal;
use bivariant::Error;
use proptest::prelude::*;
use std::sync::OnceLock;

fn fs4() -> &'static Category {
    static CAT: OnceLock<Category> = OnceLock::new();
    CAT.get_or_init(fixtures::fs4)
}

fn eval_fw(text: &str) -> Result<String, DslError> {
    let t = Fiberwise::new(fs4()).unwrap();
    let ev = Evaluator::new(&t);
    let e = parse_expression(text)?;
    Ok(ev.render(&ev.eval(&e)?))
}

fn eval_u(text: &str) -> Result<String, DslError> {
    let u = Universal::new(fs4());
    let ev = Evaluator::new(&u);
    let e = parse_expression(text)?;
    Ok(ev.render(&ev.eval(&e)?))
}

#[test]
fn grammar_examples() {
    let e = parse_expression("prod(cyc(h_1a; ) , cyc(id_2; ))").unwrap();
    let ExprKind::Prod(a, b) = &e.kind else { panic!("{e:?}") };
    assert!(matches!(&a.kind, ExprKind::Cyc { h, labels, over: None } if h == "h_1a" && labels.is_empty()));
    assert!(matches!(&b.kind, ExprKind::Cyc { h, .. } if h == "id_2"));
    let e = parse_expression("orient(w, cyc(id_2; ))").unwrap();
    assert!(matches!(&e.kind, ExprKind::Orient { label, .. } if label == "w"));
    let e = parse_expression("2*cyc(a;) - (cyc(b; L1, L2) over f)").unwrap();
    let ExprKind::Sum(terms) = &e.kind else { panic!() };
    assert_eq!(terms.iter().map(|t| t.coeff).collect::<Vec<_>>(), [2, -1]);
    let e = parse_expression("pull(sq(t, l, r, b), cyc(id_2;))").unwrap();
    assert!(matches!(&e.kind, ExprKind::Pull { sq: SquareRef::Inline(_), .. }));
    assert!(matches!(parse_statement("unit(2) == fclass(2)").unwrap(), Statement::Equation(..)));
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_expression("prod(cyc(a;) cyc(b;))").unwrap_err();
    let DslError::Parse { line, col, expected, found } = err else { panic!() };
    assert_eq!((line, col), (1, 14));
    assert_eq!(expected, ["`,`"]);
    assert_eq!(found, "`cyc`");
    assert!(matches!(parse_expression("cyc(a;) ?"), Err(DslError::Parse { col: 9, .. })));
    assert!(matches!(parse_expression("frob(a)"), Err(DslError::Parse { .. })));
    assert!(matches!(parse_expression(""), Err(DslError::Parse { .. })));
}

#[test]
fn evaluation_examples() {
    assert_eq!(eval_u("prod(cyc(one_to_a;) over id_2, cyc(id_2;))").unwrap(), "1*[1to2_a ; ] over 2to1_aa");
    assert_eq!(eval_fw("gamma(cyc(const_a;))").unwrap(), "(a↦2, b↦0)");
    assert_eq!(eval_fw("fclass(2)").unwrap(), "(a↦1, b↦1)");
    assert_eq!(
        eval_u("prod(cyc(id_2;) over swap, cyc(const_a;))").unwrap(),
        "1*[2to2_bb ; ] over 2to1_aa"
    );
    assert_eq!(eval_u("orient(w2_35, cyc(one_to_a;))").unwrap(), "1*[1to2_a ; w1_3] over 2to1_aa");
    assert_eq!(eval_u("cyc(const_a;) - cyc(const_a;)").unwrap(), "0 over 2to1_aa");
    // mixed operands are carried into the target
    assert_eq!(eval_fw("prod(cyc(id_2;) over swap, fclass(2))").unwrap(), "(a↦1, b↦1)");
    assert_eq!(eval_fw("ext(gamma(cyc(one_to_a;)), fclass(1))").unwrap(), "(a↦1, b↦0)");
}

#[test]
fn resolve_and_context_errors() {
    assert!(matches!(eval_u("cyc(nope;)"), Err(DslError::Resolve { kind: "morphism", .. })));
    assert!(matches!(eval_u("cyc(id_2; wat)"), Err(DslError::Resolve { kind: "label", .. })));
    assert!(matches!(eval_u("unit(7)"), Err(DslError::Resolve { kind: "object", .. })));
    let err = eval_u("prod(cyc(id_2;), cyc(id_2;))").unwrap_err();
    assert!(matches!(err, DslError::Context { .. }), "{err}");
    assert!(matches!(eval_u("cyc(id_2;) + cyc(id_3;)"), Err(DslError::Context { .. })));
    assert!(matches!(eval_u("cyc(id_2; w1_3)"), Err(DslError::Context { .. })));
    assert!(matches!(eval_fw("gamma(fclass(2))"), Err(DslError::Context { .. })));
    // push needs a factorization of the context
    assert!(matches!(eval_u("push(const_a, cyc(id_2;) over id_2)"), Err(DslError::Context { .. })));
}

#[test]
fn engine_errors_name_the_subexpression() {
    let err = eval_u("pull(bang_4, cyc(id_4;))").unwrap_err();
    let DslError::Eval { snippet, source, .. } = &err else { panic!("{err}") };
    assert_eq!(snippet, "pull(bang_4, cyc(id_4; ))");
    assert!(source.is_pullback_unavailable());
    let err = eval_fw("gamma(cyc(id_2; w2_35))");
    assert!(err.is_ok());
    let bare = fs4().clone().without_fibered();
    let u = Universal::new(&bare);
    let ev = Evaluator::new(&u);
    let e = parse_expression("theta(3to2_aab)").unwrap();
    assert!(matches!(ev.eval(&e), Ok(Value::Target(_))));
    let doc = {
        let mut d = fixtures::diamond_document();
        d.confined = bivariant::catcore::document::ClassDoc::List(
            ["id_bot", "id_x", "id_y", "id_top"].map(String::from).to_vec(),
        );
        d.build().unwrap()
    };
    let u = Universal::new(&doc);
    let ev = Evaluator::new(&u);
    let e = parse_expression("push(x_top, cyc(id_x;))").unwrap();
    assert!(matches!(ev.eval(&e), Err(DslError::Eval { source: Error::NotConfined(_), .. })));
}

#[test]
fn bundled_examples_evaluate() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/examples.expr");
    let text = std::fs::read_to_string(path).unwrap();
    let t = Fiberwise::new(fs4()).unwrap();
    let ev = Evaluator::new(&t);
    let mut n = 0;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let stmt = parse_statement(line).unwrap();
        assert_eq!(parse_statement(&stmt.to_string()).unwrap(), stmt);
        match stmt {
            Statement::Expr(e) => {
                ev.eval(&e).unwrap();
            }
            Statement::Equation(a, b) => {
                let (x, y) = (ev.eval(&a).unwrap(), ev.eval(&b).unwrap());
                assert!(ev.equal(&x, &y, &a).unwrap(), "{line}");
            }
        }
        n += 1;
    }
    assert!(n >= 10);
}

const RESERVED: &[&str] = &[
    "cyc", "unit", "theta", "fclass", "prod", "push", "pull", "orient", "gamma", "gysin_pull", "gysin_push", "ext", "over", "sq",
];

fn ident() -> impl Strategy<Value = String> {
    "[a-z_][a-z0-9_']{0,5}".prop_filter("reserved", |s| !RESERVED.contains(&s.as_str()))
}

fn leaf() -> impl Strategy<Value = ExprKind> {
    prop_oneof![
        (ident(), prop::collection::vec(ident(), 0..3), prop::option::of(ident()))
            .prop_map(|(h, labels, over)| ExprKind::Cyc { h, labels, over }),
        ident().prop_map(ExprKind::Unit),
        ident().prop_map(ExprKind::Theta),
        ident().prop_map(ExprKind::Fclass),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let span = parse_expression("unit(x)").unwrap().span;
    let wrap = move |kind| Expr { kind, span };
    leaf().prop_map(wrap).prop_recursive(4, 24, 3, move |inner| {
        let b = move |e: Expr| Box::new(e);
        prop_oneof![
            prop::collection::vec((-20i64..20, inner.clone()), 1..4)
                .prop_map(move |ts| wrap(ExprKind::Sum(ts.into_iter().map(|(coeff, expr)| Term { coeff, expr }).collect()))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| wrap(ExprKind::Prod(b(x), b(y)))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| wrap(ExprKind::Ext(b(x), b(y)))),
            (ident(), inner.clone(), prop::option::of(ident()))
                .prop_map(move |(f, x, over)| wrap(ExprKind::Push { f, arg: b(x), over })),
            (ident(), inner.clone()).prop_map(move |(s, x)| wrap(ExprKind::Pull { sq: SquareRef::Named(s), arg: b(x) })),
            ([ident(), ident(), ident(), ident()], inner.clone())
                .prop_map(move |(ids, x)| wrap(ExprKind::Pull { sq: SquareRef::Inline(ids), arg: b(x) })),
            (ident(), inner.clone()).prop_map(move |(label, x)| wrap(ExprKind::Orient { label, arg: b(x) })),
            inner.clone().prop_map(move |x| wrap(ExprKind::Gamma(b(x)))),
            (ident(), inner.clone()).prop_map(move |(f, x)| wrap(ExprKind::GysinPull { f, arg: b(x) })),
            (ident(), inner.clone()).prop_map(move |(f, x)| wrap(ExprKind::GysinPush { f, arg: b(x) })),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(e in expr()) {
        let text = e.to_string();
        let parsed = parse_expression(&text).unwrap();
        prop_assert_eq!(&parsed, &e, "{}", text);
        prop_assert_eq!(parsed.to_string(), text);
    }
}
