//! Deterministic generators for the bundled fixture categories.

use crate::catcore::document::{
    CarriersDoc, CategoryDocument, ClassDoc, ComposeDoc, CoproductDoc, FiberedDoc, MorphismDoc, ObjectDoc, PullbackDoc,
    SquaresDoc,
};
use crate::catcore::Category;
use std::collections::BTreeMap;

const ELEMENTS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const WEIGHTS: [i64; 2] = [3, 5];

/// Every function `m → n` as a value table, lexicographically.
fn functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn fn_name(m: usize, n: usize, vals: &[usize]) -> String {
    let letters: String = vals.iter().map(|&v| ELEMENTS[v]).collect();
    format!("{m}to{n}_{letters}")
}

fn weight_name(n: usize, w: &[i64]) -> String {
    if n == 0 {
        return "w0".to_string();
    }
    let digits: String = w.iter().map(|d| d.to_string()).collect();
    format!("w{n}_{digits}")
}

/// The skeletal category of finite sets `{0, .., max}` with all functions,
/// fiber products declared wherever the apex has at most `max` elements,
/// disjoint unions as coproducts, and the fibered category of
/// `{3, 5}`-valued weight functions with precomposition as pullback.
pub fn finite_sets_document(max: usize) -> CategoryDocument {
    assert!(max >= 1 && max <= ELEMENTS.len());
    let sizes: Vec<usize> = (0..=max).collect();
    let objects = sizes
        .iter()
        .map(|&n| ObjectDoc {
            id: n.to_string(),
            size: Some(n),
        })
        .collect();
    let mut fns: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); max + 1]; max + 1];
    let mut morphisms = Vec::new();
    for &m in &sizes {
        for &n in &sizes {
            fns[m][n] = functions(m, n);
            for vals in &fns[m][n] {
                morphisms.push(MorphismDoc {
                    id: fn_name(m, n, vals),
                    src: m.to_string(),
                    dst: n.to_string(),
                });
            }
        }
    }

    let mut compose = Vec::new();
    for &m in &sizes {
        for &n in &sizes {
            for &p in &sizes {
                for f in &fns[m][n] {
                    for g in &fns[n][p] {
                        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        compose.push(ComposeDoc {
                            first: fn_name(m, n, f),
                            then: fn_name(n, p, g),
                            equals: fn_name(m, p, &gf),
                        });
                    }
                }
            }
        }
    }

    let ident = |n: usize| fn_name(n, n, &(0..n).collect::<Vec<_>>());
    let identities = sizes.iter().map(|&n| (n.to_string(), ident(n))).collect();

    let mut pullbacks = Vec::new();
    for &z in &sizes {
        let into: Vec<(usize, &Vec<usize>)> = sizes.iter().flat_map(|&m| fns[m][z].iter().map(move |f| (m, f))).collect();
        let named: Vec<(String, usize, &Vec<usize>)> = into.iter().map(|&(m, f)| (fn_name(m, z, f), m, f)).collect();
        for (i, (lname, lm, lf)) in named.iter().enumerate() {
            for (rname, rm, rf) in &named[i..] {
                let pairs: Vec<(usize, usize)> = (0..*lm)
                    .flat_map(|x| (0..*rm).map(move |y| (x, y)))
                    .filter(|&(x, y)| lf[x] == rf[y])
                    .collect();
                let k = pairs.len();
                if k > max {
                    continue;
                }
                let pl: Vec<usize> = pairs.iter().map(|p| p.0).collect();
                let pr: Vec<usize> = pairs.iter().map(|p| p.1).collect();
                pullbacks.push(PullbackDoc {
                    left: lname.clone(),
                    right: rname.clone(),
                    apex: k.to_string(),
                    proj_left: fn_name(k, *lm, &pl),
                    proj_right: fn_name(k, *rm, &pr),
                });
            }
        }
    }

    let mut coproducts = Vec::new();
    for &m in &sizes {
        for &n in &sizes {
            if m + n > max {
                continue;
            }
            let il: Vec<usize> = (0..m).collect();
            let ir: Vec<usize> = (m..m + n).collect();
            coproducts.push(CoproductDoc {
                left: m.to_string(),
                right: n.to_string(),
                apex: (m + n).to_string(),
                inj_left: fn_name(m, m + n, &il),
                inj_right: fn_name(n, m + n, &ir),
            });
        }
    }

    let mut labels = BTreeMap::new();
    let mut weights = BTreeMap::new();
    let mut weight_fns: Vec<Vec<Vec<i64>>> = Vec::new();
    for &n in &sizes {
        let ws: Vec<Vec<i64>> = functions(n, WEIGHTS.len())
            .into_iter()
            .map(|v| v.into_iter().map(|i| WEIGHTS[i]).collect())
            .collect();
        labels.insert(n.to_string(), ws.iter().map(|w| weight_name(n, w)).collect());
        for w in &ws {
            weights.insert(weight_name(n, w), w.clone());
        }
        weight_fns.push(ws);
    }
    let mut pull = BTreeMap::new();
    for &m in &sizes {
        for &n in &sizes {
            for f in &fns[m][n] {
                let table: BTreeMap<String, String> = weight_fns[n]
                    .iter()
                    .map(|w| {
                        let pulled: Vec<i64> = f.iter().map(|&x| w[x]).collect();
                        (weight_name(n, w), weight_name(m, &pulled))
                    })
                    .collect();
                pull.insert(fn_name(m, n, f), table);
            }
        }
    }

    let carriers = CarriersDoc {
        objects: sizes
            .iter()
            .map(|&n| (n.to_string(), ELEMENTS[..n].iter().map(|s| s.to_string()).collect()))
            .collect(),
        maps: sizes
            .iter()
            .flat_map(|&m| sizes.iter().map(move |&n| (m, n)))
            .flat_map(|(m, n)| {
                fns[m][n]
                    .iter()
                    .map(move |f| (fn_name(m, n, f), f.iter().map(|&v| ELEMENTS[v].to_string()).collect()))
            })
            .collect(),
    };

    let mut aliases = BTreeMap::new();
    if max >= 2 {
        for (alias, id) in [
            ("swap", "2to2_ba"),
            ("const_a", "2to2_aa"),
            ("const_b", "2to2_bb"),
            ("one_to_a", "1to2_a"),
            ("one_to_b", "1to2_b"),
            ("h_1a", "1to2_a"),
            ("h_1b", "1to2_b"),
        ] {
            aliases.insert(alias.to_string(), id.to_string());
        }
    }
    for &n in &sizes {
        aliases.insert(format!("id_{n}"), ident(n));
        if n != 1 {
            aliases.insert(format!("bang_{n}"), fn_name(n, 1, &vec![0; n]));
        }
    }

    CategoryDocument {
        name: Some(format!("fs{max}")),
        objects,
        morphisms,
        compose,
        identities,
        final_object: "1".to_string(),
        confined: ClassDoc::Keyword("all".into()),
        specialized: ClassDoc::Keyword("all".into()),
        squares: SquaresDoc::Keyword("all-fiber".into()),
        pullbacks,
        coproducts: Some(coproducts),
        fibered: Some(FiberedDoc {
            labels,
            pull,
            weights: Some(weights),
        }),
        carriers: Some(carriers),
        aliases,
    }
}

pub fn fs4_document() -> CategoryDocument {
    finite_sets_document(4)
}

/// The poset `bot ≤ x, y ≤ top` with meets as fiber products and labels
/// given by `{1, 2}`-valued weights on the points above `bot`.
pub fn diamond_document() -> CategoryDocument {
    let objs = ["bot", "x", "y", "top"];
    // Strict order relation plus identities.
    let leq = |a: &str, b: &str| a == b || a == "bot" || b == "top";
    let name = |a: &str, b: &str| if a == b { format!("id_{a}") } else { format!("{a}_{b}") };
    let meet = |a: &str, b: &str| -> &'static str {
        let pick = |s: &str| objs.iter().copied().find(|o| *o == s).unwrap();
        if leq(a, b) {
            pick(a)
        } else if leq(b, a) {
            pick(b)
        } else {
            "bot"
        }
    };

    let mut morphisms = Vec::new();
    for a in objs {
        for b in objs {
            if leq(a, b) {
                morphisms.push(MorphismDoc {
                    id: name(a, b),
                    src: a.into(),
                    dst: b.into(),
                });
            }
        }
    }
    let mut compose = Vec::new();
    for a in objs {
        for b in objs {
            for c in objs {
                if leq(a, b) && leq(b, c) {
                    compose.push(ComposeDoc {
                        first: name(a, b),
                        then: name(b, c),
                        equals: name(a, c),
                    });
                }
            }
        }
    }
    let mut pullbacks = Vec::new();
    for c in objs {
        let below: Vec<&str> = objs.iter().copied().filter(|a| leq(a, c)).collect();
        for (i, a) in below.iter().enumerate() {
            for b in &below[i..] {
                let m = meet(a, b);
                pullbacks.push(PullbackDoc {
                    left: name(a, c),
                    right: name(b, c),
                    apex: m.into(),
                    proj_left: name(m, a),
                    proj_right: name(m, b),
                });
            }
        }
    }

    // A label over p is a weight on the atoms x, y lying below p.
    let atoms = |p: &str| -> Vec<&'static str> { ["x", "y"].into_iter().filter(|a| leq(a, p)).collect() };
    let label = |p: &str, vals: &[(&str, u8)]| -> String {
        let tag = match p {
            "bot" => "w_bot".to_string(),
            "x" => "wx_".to_string(),
            "y" => "wy_".to_string(),
            _ => "wt_".to_string(),
        };
        let digits: String = vals.iter().map(|(_, v)| v.to_string()).collect();
        format!("{tag}{digits}")
    };
    let assignments = |p: &str| -> Vec<Vec<(&'static str, u8)>> {
        let mut out = vec![Vec::new()];
        for a in atoms(p) {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<(&str, u8)>| {
                    [1u8, 2].into_iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push((a, v));
                        p
                    })
                })
                .collect();
        }
        out
    };
    let mut labels = BTreeMap::new();
    for p in objs {
        labels.insert(p.to_string(), assignments(p).iter().map(|w| label(p, w)).collect());
    }
    let mut pull = BTreeMap::new();
    for a in objs {
        for b in objs {
            if !leq(a, b) {
                continue;
            }
            let table = assignments(b)
                .iter()
                .map(|w| {
                    let restricted: Vec<(&str, u8)> = w.iter().copied().filter(|(atom, _)| leq(atom, a)).collect();
                    (label(b, w), label(a, &restricted))
                })
                .collect();
            pull.insert(name(a, b), table);
        }
    }

    CategoryDocument {
        name: Some("diamond".into()),
        objects: objs
            .iter()
            .map(|o| ObjectDoc {
                id: o.to_string(),
                size: None,
            })
            .collect(),
        morphisms,
        compose,
        identities: objs.iter().map(|o| (o.to_string(), name(o, o))).collect(),
        final_object: "top".into(),
        confined: ClassDoc::Keyword("all".into()),
        specialized: ClassDoc::Keyword("all".into()),
        squares: SquaresDoc::Keyword("all-fiber".into()),
        pullbacks,
        coproducts: None,
        fibered: Some(FiberedDoc {
            labels,
            pull,
            weights: None,
        }),
        carriers: None,
        aliases: BTreeMap::new(),
    }
}

pub fn fs4() -> Category {
    fs4_document().build().expect("generated fs4 document is well-formed")
}

pub fn finite_sets(max: usize) -> Category {
    finite_sets_document(max)
        .build()
        .expect("generated finite-set document is well-formed")
}

pub fn diamond() -> Category {
    diamond_document().build().expect("generated diamond document is well-formed")
}
