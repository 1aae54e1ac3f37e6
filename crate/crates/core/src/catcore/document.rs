use super::{
    Carriers, Category, CommutativeSquare, Coproduct, Cospan, FiberedCategory, Label, LabelId, MorId, Morphism,
    ObjId, Object, PullbackData, SquareMode,
};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub objects: Vec<ObjectDoc>,
    pub morphisms: Vec<MorphismDoc>,
    pub compose: Vec<ComposeDoc>,
    pub identities: BTreeMap<String, String>,
    pub final_object: String,
    pub confined: ClassDoc,
    pub specialized: ClassDoc,
    pub squares: SquaresDoc,
    #[serde(default)]
    pub pullbacks: Vec<PullbackDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproducts: Option<Vec<CoproductDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibered: Option<FiberedDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carriers: Option<CarriersDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComposeDoc {
    pub first: String,
    pub then: String,
    pub equals: String,
}

/// `"all"` or an explicit list of morphism ids.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ClassDoc {
    Keyword(String),
    List(Vec<String>),
}

/// `"all-fiber"` or an explicit list of independent squares.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SquaresDoc {
    Keyword(String),
    List(Vec<SquareDoc>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub top: String,
    pub left: String,
    pub right: String,
    pub bottom: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PullbackDoc {
    pub left: String,
    pub right: String,
    pub apex: String,
    pub proj_left: String,
    pub proj_right: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoproductDoc {
    pub left: String,
    pub right: String,
    pub apex: String,
    pub inj_left: String,
    pub inj_right: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FiberedDoc {
    pub labels: BTreeMap<String, Vec<String>>,
    pub pull: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CarriersDoc {
    pub objects: BTreeMap<String, Vec<String>>,
    pub maps: BTreeMap<String, Vec<String>>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Parses a category document. Structural problems (dangling or duplicate
/// ids, malformed or incomplete tables) are schema errors; semantic laws are
/// left to [`super::validate_category`].
pub fn load_category(text: &str) -> Result<Category> {
    let doc: CategoryDocument = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    doc.build()
}

impl CategoryDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("category documents always serialize")
    }

    pub fn build(&self) -> Result<Category> {
        // Objects and morphisms are indexed in id order so that index order
        // and name order agree.
        let mut obj_docs: Vec<&ObjectDoc> = self.objects.iter().collect();
        obj_docs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut obj_by_name = HashMap::new();
        let mut objects = Vec::new();
        for (i, o) in obj_docs.iter().enumerate() {
            if obj_by_name.insert(o.id.clone(), ObjId(i as u32)).is_some() {
                return Err(schema(format!("duplicate object id `{}`", o.id)));
            }
            objects.push(Object {
                name: o.id.clone(),
                size: o.size,
            });
        }
        let obj = |name: &str| -> Result<ObjId> {
            obj_by_name
                .get(name)
                .copied()
                .ok_or_else(|| schema(format!("reference to undeclared object `{name}`")))
        };

        let mut mor_docs: Vec<&MorphismDoc> = self.morphisms.iter().collect();
        mor_docs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut mor_by_name = HashMap::new();
        let mut morphisms = Vec::new();
        for (i, m) in mor_docs.iter().enumerate() {
            if mor_by_name.insert(m.id.clone(), MorId(i as u32)).is_some() {
                return Err(schema(format!("duplicate morphism id `{}`", m.id)));
            }
            morphisms.push(Morphism {
                name: m.id.clone(),
                src: obj(&m.src)?,
                dst: obj(&m.dst)?,
            });
        }
        let mor = |name: &str| -> Result<MorId> {
            mor_by_name
                .get(name)
                .copied()
                .ok_or_else(|| schema(format!("reference to undeclared morphism `{name}`")))
        };

        let n_obj = objects.len();
        let n_mor = morphisms.len();
        let mut out: Vec<Vec<MorId>> = vec![Vec::new(); n_obj];
        let mut hom: Vec<Vec<MorId>> = vec![Vec::new(); n_obj * n_obj];
        let mut out_pos = vec![0u32; n_mor];
        for (i, m) in morphisms.iter().enumerate() {
            out_pos[i] = out[m.src.index()].len() as u32;
            out[m.src.index()].push(MorId(i as u32));
            hom[m.src.index() * n_obj + m.dst.index()].push(MorId(i as u32));
        }

        const UNSET: MorId = MorId(u32::MAX);
        let mut comp: Vec<Vec<MorId>> = morphisms.iter().map(|m| vec![UNSET; out[m.dst.index()].len()]).collect();
        for c in &self.compose {
            let f = mor(&c.first)?;
            let g = mor(&c.then)?;
            let h = mor(&c.equals)?;
            let (mf, mg, mh) = (&morphisms[f.index()], &morphisms[g.index()], &morphisms[h.index()]);
            if mf.dst != mg.src {
                return Err(schema(format!("composition entry `{}` then `{}` is not composable", c.first, c.then)));
            }
            if mh.src != mf.src || mh.dst != mg.dst {
                return Err(schema(format!(
                    "composition `{}` then `{}` = `{}` has the wrong endpoints",
                    c.first, c.then, c.equals
                )));
            }
            let slot = &mut comp[f.index()][out_pos[g.index()] as usize];
            if *slot != UNSET && *slot != h {
                return Err(schema(format!("conflicting composition entries for `{}` then `{}`", c.first, c.then)));
            }
            *slot = h;
        }
        for (i, row) in comp.iter().enumerate() {
            if let Some(j) = row.iter().position(|&h| h == UNSET) {
                let g = out[morphisms[i].dst.index()][j];
                return Err(schema(format!(
                    "composition table incomplete: `{}` then `{}` missing",
                    morphisms[i].name,
                    morphisms[g.index()].name
                )));
            }
        }

        let mut identities = vec![UNSET; n_obj];
        for (o, m) in &self.identities {
            let x = obj(o)?;
            let f = mor(m)?;
            let mf = &morphisms[f.index()];
            if mf.src != x || mf.dst != x {
                return Err(schema(format!("identity `{m}` of `{o}` is not an endomorphism of `{o}`")));
            }
            identities[x.index()] = f;
        }
        if let Some(i) = identities.iter().position(|&f| f == UNSET) {
            return Err(schema(format!("object `{}` has no designated identity", objects[i].name)));
        }
        let final_object = obj(&self.final_object)?;

        let class = |c: &ClassDoc, what: &str| -> Result<Vec<bool>> {
            match c {
                ClassDoc::Keyword(k) if k == "all" => Ok(vec![true; n_mor]),
                ClassDoc::Keyword(k) => Err(schema(format!("`{what}` must be \"all\" or a list, got \"{k}\""))),
                ClassDoc::List(ids) => {
                    let mut v = vec![false; n_mor];
                    for id in ids {
                        v[mor(id)?.index()] = true;
                    }
                    Ok(v)
                }
            }
        };
        let confined = class(&self.confined, "confined")?;
        let specialized = class(&self.specialized, "specialized")?;

        let squares = match &self.squares {
            SquaresDoc::Keyword(k) if k == "all-fiber" => SquareMode::AllFiberSquares,
            SquaresDoc::Keyword(k) => return Err(schema(format!("`squares` must be \"all-fiber\" or a list, got \"{k}\""))),
            SquaresDoc::List(list) => {
                let mut squares = Vec::new();
                let mut members = HashSet::new();
                let mut ids = HashSet::new();
                for s in list {
                    if let Some(id) = &s.id {
                        if !ids.insert(id.clone()) {
                            return Err(schema(format!("duplicate square id `{id}`")));
                        }
                    }
                    let sq = CommutativeSquare {
                        top: mor(&s.top)?,
                        left: mor(&s.left)?,
                        right: mor(&s.right)?,
                        bottom: mor(&s.bottom)?,
                    };
                    squares.push((s.id.clone(), sq));
                    members.insert(sq);
                }
                SquareMode::Explicit { squares, members }
            }
        };

        let mut pullbacks = HashMap::new();
        let mut pullback_order = Vec::new();
        for p in &self.pullbacks {
            let c = Cospan {
                left: mor(&p.left)?,
                right: mor(&p.right)?,
            };
            let data = PullbackData {
                apex: obj(&p.apex)?,
                proj_left: mor(&p.proj_left)?,
                proj_right: mor(&p.proj_right)?,
            };
            let (l, r) = (&morphisms[c.left.index()], &morphisms[c.right.index()]);
            let (pl, pr) = (&morphisms[data.proj_left.index()], &morphisms[data.proj_right.index()]);
            if l.dst != r.dst {
                return Err(schema(format!("pullback cospan ({}, {}) has different targets", p.left, p.right)));
            }
            if pl.src != data.apex || pr.src != data.apex || pl.dst != l.src || pr.dst != r.src {
                return Err(schema(format!(
                    "pullback of ({}, {}) has projections with the wrong endpoints",
                    p.left, p.right
                )));
            }
            if pullbacks.insert(c, data).is_some() {
                return Err(schema(format!("duplicate pullback entry for ({}, {})", p.left, p.right)));
            }
            pullback_order.push(c);
        }

        let mut coproducts = Vec::new();
        for c in self.coproducts.iter().flatten() {
            let cp = Coproduct {
                left: obj(&c.left)?,
                right: obj(&c.right)?,
                apex: obj(&c.apex)?,
                inj_left: mor(&c.inj_left)?,
                inj_right: mor(&c.inj_right)?,
            };
            let (il, ir) = (&morphisms[cp.inj_left.index()], &morphisms[cp.inj_right.index()]);
            if il.src != cp.left || ir.src != cp.right || il.dst != cp.apex || ir.dst != cp.apex {
                return Err(schema(format!(
                    "coproduct {} ⊔ {} has injections with the wrong endpoints",
                    c.left, c.right
                )));
            }
            coproducts.push(cp);
        }

        let mut aliases = BTreeMap::new();
        for (a, m) in &self.aliases {
            if mor_by_name.contains_key(a) || obj_by_name.contains_key(a) {
                return Err(schema(format!("alias `{a}` shadows a declared id")));
            }
            aliases.insert(a.clone(), mor(m)?);
        }

        let carriers = match &self.carriers {
            None => None,
            Some(cd) => {
                let mut elements = vec![Vec::new(); n_obj];
                let mut seen = vec![false; n_obj];
                for (o, els) in &cd.objects {
                    let x = obj(o)?;
                    let distinct: HashSet<&String> = els.iter().collect();
                    if distinct.len() != els.len() {
                        return Err(schema(format!("carrier of `{o}` repeats an element")));
                    }
                    elements[x.index()] = els.clone();
                    seen[x.index()] = true;
                }
                if let Some(i) = seen.iter().position(|s| !s) {
                    return Err(schema(format!("object `{}` has no carrier", objects[i].name)));
                }
                let mut maps = vec![Vec::new(); n_mor];
                let mut seen = vec![false; n_mor];
                for (m, vals) in &cd.maps {
                    let f = mor(m)?;
                    let mf = &morphisms[f.index()];
                    let (src, dst) = (&elements[mf.src.index()], &elements[mf.dst.index()]);
                    if vals.len() != src.len() {
                        return Err(schema(format!("map table of `{m}` has {} entries, expected {}", vals.len(), src.len())));
                    }
                    let mut table = Vec::with_capacity(vals.len());
                    for v in vals {
                        let j = dst
                            .iter()
                            .position(|e| e == v)
                            .ok_or_else(|| schema(format!("map table of `{m}` names `{v}` outside its target carrier")))?;
                        table.push(j as u32);
                    }
                    maps[f.index()] = table;
                    seen[f.index()] = true;
                }
                if let Some(i) = seen.iter().position(|s| !s) {
                    return Err(schema(format!("morphism `{}` has no map table", morphisms[i].name)));
                }
                Some(Carriers { elements, maps })
            }
        };

        let fibered = match &self.fibered {
            None => None,
            Some(fd) => Some(build_fibered(fd, &obj, &mor, &morphisms, &identities, carriers.as_ref())?),
        };

        let mut cat = Category {
            name: self.name.clone().unwrap_or_else(|| "category".to_string()),
            objects,
            morphisms,
            obj_by_name,
            mor_by_name,
            aliases,
            out,
            out_pos,
            hom,
            comp,
            identities,
            final_object,
            confined,
            specialized,
            squares,
            pullbacks,
            pullback_order,
            coproducts,
            inverse: Vec::new(),
            isos_into: Vec::new(),
            fibered,
            carriers,
        };
        compute_isos(&mut cat);
        Ok(cat)
    }
}

fn build_fibered(
    fd: &FiberedDoc,
    obj: &dyn Fn(&str) -> Result<ObjId>,
    mor: &dyn Fn(&str) -> Result<MorId>,
    morphisms: &[Morphism],
    identities: &[MorId],
    carriers: Option<&Carriers>,
) -> Result<FiberedCategory> {
    let n_obj = identities.len();
    let mut all: Vec<(String, ObjId)> = Vec::new();
    for (o, toks) in &fd.labels {
        let x = obj(o)?;
        for t in toks {
            all.push((t.clone(), x));
        }
    }
    all.sort();
    let mut by_name = HashMap::new();
    let mut labels = Vec::new();
    let mut over = vec![Vec::new(); n_obj];
    let mut pos = Vec::new();
    for (i, (t, x)) in all.iter().enumerate() {
        let id = LabelId(i as u32);
        if by_name.insert(t.clone(), id).is_some() {
            return Err(schema(format!("duplicate label token `{t}`")));
        }
        pos.push(over[x.index()].len() as u32);
        over[x.index()].push(id);
        labels.push(Label {
            name: t.clone(),
            over: *x,
        });
    }
    let label = |t: &str| -> Result<LabelId> {
        by_name
            .get(t)
            .copied()
            .ok_or_else(|| schema(format!("reference to undeclared label `{t}`")))
    };

    const UNSET: LabelId = LabelId(u32::MAX);
    let mut pull: Vec<Vec<LabelId>> = morphisms.iter().map(|m| vec![UNSET; over[m.dst.index()].len()]).collect();
    for (m, table) in &fd.pull {
        let f = mor(m)?;
        let mf = &morphisms[f.index()];
        for (from, to) in table {
            let (l, k) = (label(from)?, label(to)?);
            if labels[l.index()].over != mf.dst || labels[k.index()].over != mf.src {
                return Err(schema(format!("pull entry `{m}`: `{from}` ↦ `{to}` crosses the wrong objects")));
            }
            pull[f.index()][pos[l.index()] as usize] = k;
        }
    }
    // Pull tables of identities may be omitted.
    for (i, m) in morphisms.iter().enumerate() {
        for j in 0..pull[i].len() {
            if pull[i][j] == UNSET {
                if identities[m.src.index()].index() == i {
                    pull[i][j] = over[m.dst.index()][j];
                } else {
                    let l = over[m.dst.index()][j];
                    return Err(schema(format!(
                        "pull table incomplete: `{}` along `{}` missing",
                        labels[l.index()].name, m.name
                    )));
                }
            }
        }
    }

    let weights = match &fd.weights {
        None => None,
        Some(w) => {
            let mut out = vec![Vec::new(); labels.len()];
            let mut seen = vec![false; labels.len()];
            for (t, vals) in w {
                let l = label(t)?;
                if let Some(c) = carriers {
                    let n = c.elements(labels[l.index()].over).len();
                    if vals.len() != n {
                        return Err(schema(format!("weight of `{t}` has {} entries, expected {n}", vals.len())));
                    }
                }
                out[l.index()] = vals.clone();
                seen[l.index()] = true;
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(schema(format!("label `{}` has no weight", labels[i].name)));
            }
            Some(out)
        }
    };

    Ok(FiberedCategory {
        labels,
        by_name,
        over,
        pos,
        pull,
        weights,
    })
}

fn compute_isos(cat: &mut Category) {
    let n = cat.morphisms.len();
    let mut inverse = vec![None; n];
    for f in 0..n {
        let f = MorId(f as u32);
        let (x, y) = (cat.src(f), cat.dst(f));
        let (idx, idy) = (cat.identity(x), cat.identity(y));
        inverse[f.index()] = cat
            .hom(y, x)
            .iter()
            .copied()
            .find(|&g| cat.then(f, g) == idx && cat.then(g, f) == idy);
    }
    let mut isos_into = vec![Vec::new(); cat.objects.len()];
    for (i, inv) in inverse.iter().enumerate() {
        if inv.is_some() {
            let f = MorId(i as u32);
            isos_into[cat.dst(f).index()].push(f);
        }
    }
    cat.inverse = inverse;
    cat.isos_into = isos_into;
}
