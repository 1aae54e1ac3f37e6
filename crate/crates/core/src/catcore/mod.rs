//! Finite categories with confined/specialized classes, a partial pullback
//! table, independent squares and an optional fibered category of labels.

pub mod document;
mod fibered;
mod validate;

pub use document::{load_category, CategoryDocument};
pub use fibered::{Carriers, FiberedCategory, Label};
pub use validate::{validate_category, Severity, ValidationReport, Violation};

use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub(crate) u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub(crate) u32);

macro_rules! index_impl {
    ($t:ty) => {
        impl $t {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }
    };
}
index_impl!(ObjId);
index_impl!(MorId);
index_impl!(LabelId);

#[derive(Debug, Clone)]
pub struct Object {
    pub name: String,
    pub size: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// `left: X → Z` and `right: Y → Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cospan {
    pub left: MorId,
    pub right: MorId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PullbackData {
    pub apex: ObjId,
    pub proj_left: MorId,
    pub proj_right: MorId,
}

/// ```text
/// X' --top--> X
/// |           |
/// left      right
/// v           v
/// Y' -bottom-> Y
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommutativeSquare {
    pub top: MorId,
    pub left: MorId,
    pub right: MorId,
    pub bottom: MorId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coproduct {
    pub left: ObjId,
    pub right: ObjId,
    pub apex: ObjId,
    pub inj_left: MorId,
    pub inj_right: MorId,
}

#[derive(Debug, Clone)]
pub enum SquareMode {
    AllFiberSquares,
    Explicit {
        squares: Vec<(Option<String>, CommutativeSquare)>,
        members: HashSet<CommutativeSquare>,
    },
}

/// A cone over a cospan with no mediator, or with more than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalFailure {
    pub test_object: ObjId,
    pub cone: Option<(MorId, MorId)>,
    pub mediators: usize,
}

#[derive(Debug, Clone)]
pub struct Category {
    pub(crate) name: String,
    pub(crate) objects: Vec<Object>,
    pub(crate) morphisms: Vec<Morphism>,
    pub(crate) obj_by_name: HashMap<String, ObjId>,
    pub(crate) mor_by_name: HashMap<String, MorId>,
    pub(crate) aliases: BTreeMap<String, MorId>,
    /// Morphisms by source object.
    pub(crate) out: Vec<Vec<MorId>>,
    pub(crate) out_pos: Vec<u32>,
    pub(crate) hom: Vec<Vec<MorId>>,
    /// `comp[f][out_pos[g]] = g ∘ f`.
    pub(crate) comp: Vec<Vec<MorId>>,
    pub(crate) identities: Vec<MorId>,
    pub(crate) final_object: ObjId,
    pub(crate) confined: Vec<bool>,
    pub(crate) specialized: Vec<bool>,
    pub(crate) squares: SquareMode,
    pub(crate) pullbacks: HashMap<Cospan, PullbackData>,
    pub(crate) pullback_order: Vec<Cospan>,
    pub(crate) coproducts: Vec<Coproduct>,
    pub(crate) inverse: Vec<Option<MorId>>,
    pub(crate) isos_into: Vec<Vec<MorId>>,
    pub(crate) fibered: Option<FiberedCategory>,
    pub(crate) carriers: Option<Carriers>,
}

impl Category {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn object(&self, x: ObjId) -> &Object {
        &self.objects[x.index()]
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.index()]
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.index()].name
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f.index()].name
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f.index()].dst
    }

    /// Declared size, falling back to the carrier cardinality.
    pub fn size(&self, x: ObjId) -> Option<usize> {
        self.objects[x.index()]
            .size
            .or_else(|| self.carriers.as_ref().map(|c| c.elements(x).len()))
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjId> {
        self.obj_by_name.get(name).copied().ok_or_else(|| Error::UnknownId {
            kind: "object",
            name: name.to_string(),
        })
    }

    /// Resolves a morphism id or one of the document's aliases.
    pub fn morphism_by_name(&self, name: &str) -> Result<MorId> {
        self.mor_by_name
            .get(name)
            .or_else(|| self.aliases.get(name))
            .copied()
            .ok_or_else(|| Error::UnknownId {
                kind: "morphism",
                name: name.to_string(),
            })
    }

    pub fn aliases(&self) -> &BTreeMap<String, MorId> {
        &self.aliases
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x.index() * self.objects.len() + y.index()]
    }

    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.out[x.index()]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f).index()] == f
    }

    pub fn final_object(&self) -> ObjId {
        self.final_object
    }

    /// The morphism `X → pt`.
    pub fn to_final(&self, x: ObjId) -> Result<MorId> {
        self.hom(x, self.final_object)
            .first()
            .copied()
            .ok_or_else(|| Error::Schema(format!("no morphism from `{}` to the final object", self.obj_name(x))))
    }

    pub fn is_confined(&self, f: MorId) -> bool {
        self.confined[f.index()]
    }

    pub fn is_specialized(&self, f: MorId) -> bool {
        self.specialized[f.index()]
    }

    pub fn require_confined(&self, f: MorId) -> Result<()> {
        if self.is_confined(f) {
            Ok(())
        } else {
            Err(Error::NotConfined(self.mor_name(f).to_string()))
        }
    }

    pub fn require_specialized(&self, f: MorId) -> Result<()> {
        if self.is_specialized(f) {
            Ok(())
        } else {
            Err(Error::NotSpecialized(self.mor_name(f).to_string()))
        }
    }

    /// `g ∘ f`: first `f`, then `g`.
    pub fn compose(&self, f: MorId, g: MorId) -> Result<MorId> {
        if self.dst(f) != self.src(g) {
            return Err(Error::NotComposable {
                first: self.mor_name(f).to_string(),
                then: self.mor_name(g).to_string(),
            });
        }
        Ok(self.then(f, g))
    }

    /// Unchecked `g ∘ f`; callers guarantee `dst(f) = src(g)`.
    pub(crate) fn then(&self, f: MorId, g: MorId) -> MorId {
        debug_assert_eq!(self.dst(f), self.src(g));
        self.comp[f.index()][self.out_pos[g.index()] as usize]
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverse[f.index()]
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse[f.index()].is_some()
    }

    /// Every isomorphism `V' → V`, over all objects `V'`.
    pub fn isos_into(&self, v: ObjId) -> &[MorId] {
        &self.isos_into[v.index()]
    }

    pub fn square_mode(&self) -> &SquareMode {
        &self.squares
    }

    pub fn named_square(&self, name: &str) -> Option<CommutativeSquare> {
        match &self.squares {
            SquareMode::AllFiberSquares => None,
            SquareMode::Explicit { squares, .. } => squares
                .iter()
                .find(|(n, _)| n.as_deref() == Some(name))
                .map(|(_, s)| *s),
        }
    }

    pub fn coproducts(&self) -> &[Coproduct] {
        &self.coproducts
    }

    pub fn fibered(&self) -> Option<&FiberedCategory> {
        self.fibered.as_ref()
    }

    pub fn carriers(&self) -> Option<&Carriers> {
        self.carriers.as_ref()
    }

    /// The same category with the fibered section dropped.
    pub fn without_fibered(mut self) -> Self {
        self.fibered = None;
        self
    }

    pub fn declared_pullbacks(&self) -> impl Iterator<Item = (Cospan, PullbackData)> + '_ {
        self.pullback_order.iter().map(move |c| (*c, self.pullbacks[c]))
    }

    /// The declared fiber product of `c`, or of the swapped cospan with the
    /// projections swapped back.
    pub fn fiber_product(&self, c: Cospan) -> Result<PullbackData> {
        if let Some(p) = self.pullbacks.get(&c) {
            return Ok(*p);
        }
        let swapped = Cospan {
            left: c.right,
            right: c.left,
        };
        if let Some(p) = self.pullbacks.get(&swapped) {
            return Ok(PullbackData {
                apex: p.apex,
                proj_left: p.proj_right,
                proj_right: p.proj_left,
            });
        }
        Err(Error::PullbackUnavailable {
            left: self.mor_name(c.left).to_string(),
            right: self.mor_name(c.right).to_string(),
        })
    }

    /// The declared fiber square with right vertical `f: X → Y` and bottom
    /// `g: Y' → Y`.
    pub fn fiber_square(&self, f: MorId, g: MorId) -> Result<CommutativeSquare> {
        if self.dst(f) != self.dst(g) {
            return Err(Error::Context(format!(
                "`{}` and `{}` do not share a target",
                self.mor_name(f),
                self.mor_name(g)
            )));
        }
        let p = self.fiber_product(Cospan { left: f, right: g })?;
        Ok(CommutativeSquare {
            top: p.proj_left,
            left: p.proj_right,
            right: f,
            bottom: g,
        })
    }

    /// `X --g--> Y` over identities: the square pulling `B(Y → Y)` back to `B(X → X)`.
    pub fn identity_vertical_square(&self, g: MorId) -> CommutativeSquare {
        CommutativeSquare {
            top: g,
            left: self.identity(self.src(g)),
            right: self.identity(self.dst(g)),
            bottom: g,
        }
    }

    /// `f` on both verticals with identities horizontally.
    pub fn identity_horizontal_square(&self, f: MorId) -> CommutativeSquare {
        CommutativeSquare {
            top: self.identity(self.src(f)),
            left: f,
            right: f,
            bottom: self.identity(self.dst(f)),
        }
    }

    pub fn square_well_formed(&self, sq: &CommutativeSquare) -> bool {
        self.src(sq.top) == self.src(sq.left)
            && self.dst(sq.top) == self.src(sq.right)
            && self.dst(sq.left) == self.src(sq.bottom)
            && self.dst(sq.right) == self.dst(sq.bottom)
    }

    pub fn commutes(&self, sq: &CommutativeSquare) -> bool {
        self.square_well_formed(sq) && self.then(sq.top, sq.right) == self.then(sq.left, sq.bottom)
    }

    pub fn is_forced_independent(&self, sq: &CommutativeSquare) -> bool {
        (self.is_identity(sq.top) && self.is_identity(sq.bottom) && sq.left == sq.right)
            || (self.is_identity(sq.left) && self.is_identity(sq.right) && sq.top == sq.bottom)
    }

    pub fn is_independent(&self, sq: &CommutativeSquare) -> bool {
        if !self.commutes(sq) {
            return false;
        }
        if self.is_forced_independent(sq) {
            return true;
        }
        match &self.squares {
            SquareMode::AllFiberSquares => self.is_pullback_square(sq),
            SquareMode::Explicit { members, .. } => members.contains(sq),
        }
    }

    pub fn require_independent(&self, sq: &CommutativeSquare) -> Result<()> {
        if self.is_independent(sq) {
            Ok(())
        } else {
            Err(Error::NotIndependent(self.render_square(sq)))
        }
    }

    /// Whether `sq` satisfies the pullback universal property: compared
    /// against the declared fiber product when there is one, otherwise by
    /// exhaustive search.
    pub fn is_pullback_square(&self, sq: &CommutativeSquare) -> bool {
        if !self.commutes(sq) {
            return false;
        }
        let cospan = Cospan {
            left: sq.right,
            right: sq.bottom,
        };
        match self.fiber_product(cospan) {
            Ok(p) => {
                let mut found = None;
                for &m in self.hom(self.src(sq.top), p.apex) {
                    if self.then(m, p.proj_left) == sq.top && self.then(m, p.proj_right) == sq.left {
                        if found.is_some() {
                            return false;
                        }
                        found = Some(m);
                    }
                }
                found.is_some_and(|m| self.is_iso(m))
            }
            Err(_) => {
                let apex = PullbackData {
                    apex: self.src(sq.top),
                    proj_left: sq.top,
                    proj_right: sq.left,
                };
                self.universal_property(cospan, &apex).is_ok()
            }
        }
    }

    /// Exhaustive weak-then-strong universal property check: every commuting
    /// cone from every test object has exactly one mediator.
    pub fn universal_property(&self, c: Cospan, p: &PullbackData) -> std::result::Result<(), UniversalFailure> {
        let x = self.src(c.left);
        let y = self.src(c.right);
        let z = self.dst(c.left);
        let mut hist = vec![0usize; self.morphisms.len()];
        let mut seen: HashSet<(MorId, MorId)> = HashSet::new();
        for q in self.objects() {
            // Cones from q: count pairs (q1, q2) with left∘q1 = right∘q2.
            let to_z = self.hom(q, z);
            for &q2 in self.hom(q, y) {
                hist[self.then(q2, c.right).index()] += 1;
            }
            let mut cones = 0usize;
            for &q1 in self.hom(q, x) {
                cones += hist[self.then(q1, c.left).index()];
            }
            for &m in to_z {
                hist[m.index()] = 0;
            }
            seen.clear();
            let mut images = 0usize;
            for &m in self.hom(q, p.apex) {
                let pair = (self.then(m, p.proj_left), self.then(m, p.proj_right));
                if !seen.insert(pair) {
                    return Err(UniversalFailure {
                        test_object: q,
                        cone: Some(pair),
                        mediators: 2,
                    });
                }
                images += 1;
            }
            if images != cones {
                // Find a cone with no mediator for the witness.
                for &q1 in self.hom(q, x) {
                    for &q2 in self.hom(q, y) {
                        if self.then(q1, c.left) == self.then(q2, c.right) && !seen.contains(&(q1, q2)) {
                            return Err(UniversalFailure {
                                test_object: q,
                                cone: Some((q1, q2)),
                                mediators: 0,
                            });
                        }
                    }
                }
                return Err(UniversalFailure {
                    test_object: q,
                    cone: None,
                    mediators: 0,
                });
            }
        }
        Ok(())
    }

    /// The unique `m: Q → apex` with `proj_left ∘ m = q1` and `proj_right ∘ m = q2`.
    pub fn mediator(&self, p: &PullbackData, q1: MorId, q2: MorId) -> Option<MorId> {
        let q = self.src(q1);
        self.hom(q, p.apex)
            .iter()
            .copied()
            .find(|&m| self.then(m, p.proj_left) == q1 && self.then(m, p.proj_right) == q2)
    }

    /// An isomorphism `g: V → W` with `h2 ∘ g = h1`, if one exists.
    pub fn isomorphic_over(&self, h1: MorId, h2: MorId) -> Option<MorId> {
        if self.dst(h1) != self.dst(h2) {
            return None;
        }
        self.hom(self.src(h1), self.src(h2))
            .iter()
            .copied()
            .find(|&g| self.is_iso(g) && self.then(g, h2) == h1)
    }

    /// Paste `left_sq` onto the left of `right_sq`; the right vertical of
    /// `left_sq` is the left vertical of `right_sq`.
    pub fn paste_horizontal(&self, right_sq: &CommutativeSquare, left_sq: &CommutativeSquare) -> Result<CommutativeSquare> {
        if left_sq.right != right_sq.left {
            return Err(Error::Context("squares do not paste horizontally".into()));
        }
        Ok(CommutativeSquare {
            top: self.compose(left_sq.top, right_sq.top)?,
            left: left_sq.left,
            right: right_sq.right,
            bottom: self.compose(left_sq.bottom, right_sq.bottom)?,
        })
    }

    /// Stack `upper` on top of `lower`; the bottom of `upper` is the top of `lower`.
    pub fn paste_vertical(&self, upper: &CommutativeSquare, lower: &CommutativeSquare) -> Result<CommutativeSquare> {
        if upper.bottom != lower.top {
            return Err(Error::Context("squares do not paste vertically".into()));
        }
        Ok(CommutativeSquare {
            top: upper.top,
            left: self.compose(upper.left, lower.left)?,
            right: self.compose(upper.right, lower.right)?,
            bottom: lower.bottom,
        })
    }

    pub fn render_square(&self, sq: &CommutativeSquare) -> String {
        format!(
            "sq({}, {}, {}, {})",
            self.mor_name(sq.top),
            self.mor_name(sq.left),
            self.mor_name(sq.right),
            self.mor_name(sq.bottom)
        )
    }

    pub fn render_cospan(&self, c: &Cospan) -> String {
        format!("({}, {})", self.mor_name(c.left), self.mor_name(c.right))
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} morphisms, {} declared pullbacks)",
            self.name,
            self.objects.len(),
            self.morphisms.len(),
            self.pullbacks.len()
        )
    }
}
