use super::{Category, CommutativeSquare, Cospan, MorId, SquareMode};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub severity: Severity,
    pub check: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Warning)
    }

    /// No errors; warnings are allowed.
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, check: &str) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    fn error(&mut self, check: &'static str, message: String) {
        self.violations.push(Violation {
            severity: Severity::Error,
            check,
            message,
        });
    }

    fn warning(&mut self, check: &'static str, message: String) {
        self.violations.push(Violation {
            severity: Severity::Warning,
            check,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "no violations");
        }
        for v in &self.violations {
            let sev = match v.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            writeln!(f, "{sev:<8} {:<24} {}", v.check, v.message)?;
        }
        Ok(())
    }
}

// Report at most this many witnesses per check so broken tables stay readable.
const PER_CHECK_LIMIT: usize = 5;

struct Limited<'a> {
    report: &'a mut ValidationReport,
    check: &'static str,
    count: usize,
}

impl<'a> Limited<'a> {
    fn new(report: &'a mut ValidationReport, check: &'static str) -> Self {
        Limited { report, check, count: 0 }
    }

    fn error(&mut self, message: String) {
        self.count += 1;
        if self.count <= PER_CHECK_LIMIT {
            self.report.error(self.check, message);
        }
    }

    fn full(&self) -> bool {
        self.count >= PER_CHECK_LIMIT
    }
}

/// Checks every structural law the constructions rely on. Violations carry a
/// concrete witness.
pub fn validate_category(cat: &Category) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_identities(cat, &mut report);
    check_associativity(cat, &mut report);
    check_final_object(cat, &mut report);
    check_class(cat, &mut report, "confined", &cat.confined);
    check_class(cat, &mut report, "specialized", &cat.specialized);
    check_pullbacks(cat, &mut report);
    check_base_change(cat, &mut report);
    check_squares(cat, &mut report);
    check_c_independence(cat, &mut report);
    check_coproducts(cat, &mut report);
    check_carriers(cat, &mut report);
    check_fibered(cat, &mut report);
    report
}

fn check_identities(cat: &Category, report: &mut ValidationReport) {
    let mut out = Limited::new(report, "identity");
    for f in cat.morphisms() {
        let (x, y) = (cat.src(f), cat.dst(f));
        if cat.then(cat.identity(x), f) != f || cat.then(f, cat.identity(y)) != f {
            out.error(format!("identities are not neutral for `{}`", cat.mor_name(f)));
        }
    }
}

fn check_associativity(cat: &Category, report: &mut ValidationReport) {
    let mut out = Limited::new(report, "associativity");
    for f in cat.morphisms() {
        for &g in cat.outgoing(cat.dst(f)) {
            let gf = cat.then(f, g);
            for &h in cat.outgoing(cat.dst(g)) {
                if cat.then(gf, h) != cat.then(f, cat.then(g, h)) {
                    out.error(format!(
                        "({} then {}) then {} differs from {} then ({} then {})",
                        cat.mor_name(f),
                        cat.mor_name(g),
                        cat.mor_name(h),
                        cat.mor_name(f),
                        cat.mor_name(g),
                        cat.mor_name(h)
                    ));
                    if out.full() {
                        return;
                    }
                }
            }
        }
    }
}

fn check_final_object(cat: &Category, report: &mut ValidationReport) {
    let pt = cat.final_object();
    for x in cat.objects() {
        let n = cat.hom(x, pt).len();
        if n != 1 {
            report.error(
                "final-object",
                format!("`{}` has {n} morphisms to the final object `{}`", cat.obj_name(x), cat.obj_name(pt)),
            );
        }
    }
}

fn check_class(cat: &Category, report: &mut ValidationReport, which: &'static str, class: &[bool]) {
    for x in cat.objects() {
        let id = cat.identity(x);
        if !class[id.index()] {
            report.error(which, format!("{which} class missing identity `{}`", cat.mor_name(id)));
        }
    }
    let mut out = Limited::new(report, which);
    for f in cat.morphisms().filter(|f| class[f.index()]) {
        for &g in cat.outgoing(cat.dst(f)) {
            if class[g.index()] && !class[cat.then(f, g).index()] {
                out.error(format!(
                    "{which} class not closed under composition: `{}` then `{}`",
                    cat.mor_name(f),
                    cat.mor_name(g)
                ));
            }
        }
    }
}

fn check_pullbacks(cat: &Category, report: &mut ValidationReport) {
    for (c, p) in cat.declared_pullbacks() {
        if cat.then(p.proj_left, c.left) != cat.then(p.proj_right, c.right) {
            report.error(
                "pullback",
                format!("declared pullback of {} does not commute", cat.render_cospan(&c)),
            );
            continue;
        }
        if let Err(fail) = cat.universal_property(c, &p) {
            let witness = match fail.cone {
                Some((q1, q2)) => format!(
                    "cone ({}, {}) from `{}` has {} mediators",
                    cat.mor_name(q1),
                    cat.mor_name(q2),
                    cat.obj_name(fail.test_object),
                    if fail.mediators == 0 { "no" } else { "several" }
                ),
                None => format!("cone count mismatch from `{}`", cat.obj_name(fail.test_object)),
            };
            report.error(
                "pullback",
                format!(
                    "declared pullback of {} with apex `{}` fails the universal property: {witness}",
                    cat.render_cospan(&c),
                    cat.obj_name(p.apex)
                ),
            );
        }
    }
}

fn check_base_change(cat: &Category, report: &mut ValidationReport) {
    for (which, class) in [("confined", &cat.confined), ("specialized", &cat.specialized)] {
        for (c, p) in cat.declared_pullbacks() {
            // proj_left is the base change of `right` along `left`, and vice versa.
            for (base, pulled) in [(c.right, p.proj_left), (c.left, p.proj_right)] {
                if class[base.index()] && !class[pulled.index()] {
                    report.error(
                        "base-change",
                        format!(
                            "{which} class not closed under base change: `{}` is {which} but its pullback `{}` in {} is not",
                            cat.mor_name(base),
                            cat.mor_name(pulled),
                            cat.render_cospan(&c)
                        ),
                    );
                }
            }
        }
    }
}

fn check_squares(cat: &Category, report: &mut ValidationReport) {
    let SquareMode::Explicit { squares, .. } = &cat.squares else {
        return;
    };
    for (_, sq) in squares {
        if !cat.commutes(sq) {
            report.error("squares", format!("declared square {} does not commute", cat.render_square(sq)));
        }
    }
    let list: Vec<CommutativeSquare> = squares.iter().map(|(_, s)| *s).filter(|s| cat.commutes(s)).collect();
    let mut out = Limited::new(report, "square-pasting");
    let mut reported = HashSet::new();
    for a in &list {
        for b in &list {
            if a.right == b.left {
                if let Ok(p) = cat.paste_horizontal(b, a) {
                    if !cat.is_independent(&p) && reported.insert(p) {
                        out.error(format!(
                            "horizontal pasting of {} and {} gives {}, which is not independent",
                            cat.render_square(a),
                            cat.render_square(b),
                            cat.render_square(&p)
                        ));
                    }
                }
            }
            if a.bottom == b.top {
                if let Ok(p) = cat.paste_vertical(a, b) {
                    if !cat.is_independent(&p) && reported.insert(p) {
                        out.error(format!(
                            "vertical pasting of {} over {} gives {}, which is not independent",
                            cat.render_square(a),
                            cat.render_square(b),
                            cat.render_square(&p)
                        ));
                    }
                }
            }
        }
    }
}

fn pullback_squares(cat: &Category, c: Cospan) -> Option<[CommutativeSquare; 2]> {
    let p = cat.fiber_product(c).ok()?;
    Some([
        CommutativeSquare {
            top: p.proj_left,
            left: p.proj_right,
            right: c.left,
            bottom: c.right,
        },
        CommutativeSquare {
            top: p.proj_right,
            left: p.proj_left,
            right: c.right,
            bottom: c.left,
        },
    ])
}

fn check_c_independence(cat: &Category, report: &mut ValidationReport) {
    let explicit = matches!(cat.squares, SquareMode::Explicit { .. });
    for (c, _) in cat.declared_pullbacks() {
        let Some(squares) = pullback_squares(cat, c) else { continue };
        for sq in squares {
            if !cat.commutes(&sq) || cat.is_independent(&sq) {
                continue;
            }
            if cat.is_confined(sq.right) {
                report.error(
                    "c-independence",
                    format!(
                        "fiber square {} has confined right vertical but is not independent",
                        cat.render_square(&sq)
                    ),
                );
            } else if explicit {
                report.warning(
                    "independence-coverage",
                    format!("declared fiber square {} is not independent", cat.render_square(&sq)),
                );
            }
        }
    }
}

fn check_coproducts(cat: &Category, report: &mut ValidationReport) {
    for cp in cat.coproducts() {
        for q in cat.objects() {
            let mut seen: HashSet<(MorId, MorId)> = HashSet::new();
            let mut ok = true;
            for &m in cat.hom(cp.apex, q) {
                if !seen.insert((cat.then(cp.inj_left, m), cat.then(cp.inj_right, m))) {
                    ok = false;
                }
            }
            let expected = cat.hom(cp.left, q).len() * cat.hom(cp.right, q).len();
            if !ok || seen.len() != expected {
                report.error(
                    "coproduct",
                    format!(
                        "`{}` with injections ({}, {}) is not a coproduct of `{}` and `{}`: test object `{}`",
                        cat.obj_name(cp.apex),
                        cat.mor_name(cp.inj_left),
                        cat.mor_name(cp.inj_right),
                        cat.obj_name(cp.left),
                        cat.obj_name(cp.right),
                        cat.obj_name(q)
                    ),
                );
                break;
            }
        }
    }
}

fn check_carriers(cat: &Category, report: &mut ValidationReport) {
    let Some(car) = cat.carriers() else { return };
    let mut out = Limited::new(report, "carriers");
    for x in cat.objects() {
        let id = cat.identity(x);
        if car.map(id).iter().enumerate().any(|(i, &j)| i != j as usize) {
            out.error(format!("identity `{}` does not act as the identity map", cat.mor_name(id)));
        }
        if let Some(n) = cat.object(x).size {
            if n != car.elements(x).len() {
                out.error(format!(
                    "object `{}` declares size {n} but has {} carrier elements",
                    cat.obj_name(x),
                    car.elements(x).len()
                ));
            }
        }
    }
    for f in cat.morphisms() {
        for &g in cat.outgoing(cat.dst(f)) {
            let gf = cat.then(f, g);
            let n = car.elements(cat.src(f)).len();
            if (0..n).any(|i| car.apply(gf, i) != car.apply(g, car.apply(f, i))) {
                out.error(format!(
                    "map of `{}` is not the composite of `{}` then `{}`",
                    cat.mor_name(gf),
                    cat.mor_name(f),
                    cat.mor_name(g)
                ));
                if out.full() {
                    return;
                }
            }
        }
    }
}

fn check_fibered(cat: &Category, report: &mut ValidationReport) {
    let Some(fc) = cat.fibered() else { return };
    let mut out = Limited::new(report, "fibered");
    for x in cat.objects() {
        let id = cat.identity(x);
        for &l in fc.labels_over(x) {
            if fc.pull_unchecked(id, l) != l {
                out.error(format!("pull(`{}`, `{}`) is not `{}`", cat.mor_name(id), fc.label_name(l), fc.label_name(l)));
            }
        }
    }
    for f in cat.morphisms() {
        for &g in cat.outgoing(cat.dst(f)) {
            let gf = cat.then(f, g);
            for &l in fc.labels_over(cat.dst(g)) {
                let stepwise = fc.pull_unchecked(f, fc.pull_unchecked(g, l));
                if stepwise != fc.pull_unchecked(gf, l) {
                    out.error(format!(
                        "pull(`{}`, pull(`{}`, `{}`)) = `{}` but pull(`{}`, `{}`) = `{}`",
                        cat.mor_name(f),
                        cat.mor_name(g),
                        fc.label_name(l),
                        fc.label_name(stepwise),
                        cat.mor_name(gf),
                        fc.label_name(l),
                        fc.label_name(fc.pull_unchecked(gf, l))
                    ));
                    if out.full() {
                        return;
                    }
                }
            }
        }
    }
    if let (Some(car), true) = (cat.carriers(), fc.has_weights()) {
        let mut out = Limited::new(report, "weights");
        for f in cat.morphisms() {
            for &l in fc.labels_over(cat.dst(f)) {
                let w = fc.weight(l).unwrap_or_default();
                let pulled = fc.weight(fc.pull_unchecked(f, l)).unwrap_or_default();
                let n = car.elements(cat.src(f)).len();
                if pulled.len() != n || (0..n).any(|i| pulled[i] != w[car.apply(f, i)]) {
                    out.error(format!(
                        "weight of pull(`{}`, `{}`) is not the precomposed weight",
                        cat.mor_name(f),
                        fc.label_name(l)
                    ));
                }
            }
        }
    }
}
