use super::{Category, LabelId, MorId, ObjId};
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct Label {
    pub name: String,
    pub over: ObjId,
}

/// Labels over each object with strictly functorial pullback. Label tokens
/// stand for isomorphism classes of fiber-objects.
#[derive(Debug, Clone)]
pub struct FiberedCategory {
    pub(crate) labels: Vec<Label>,
    pub(crate) by_name: HashMap<String, LabelId>,
    pub(crate) over: Vec<Vec<LabelId>>,
    pub(crate) pos: Vec<u32>,
    /// `pull[f][pos[L]]` for `L` over `dst(f)`.
    pub(crate) pull: Vec<Vec<LabelId>>,
    pub(crate) weights: Option<Vec<Vec<i64>>>,
}

impl FiberedCategory {
    pub fn label(&self, l: LabelId) -> &Label {
        &self.labels[l.index()]
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.labels[l.index()].name
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels_over(&self, x: ObjId) -> &[LabelId] {
        &self.over[x.index()]
    }

    pub fn label_by_name(&self, name: &str) -> Result<LabelId> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownId {
            kind: "label",
            name: name.to_string(),
        })
    }

    /// `f^* L` for `f: X → Y` and `L` over `Y`.
    pub fn pullback_label(&self, cat: &Category, f: MorId, l: LabelId) -> Result<LabelId> {
        if self.labels[l.index()].over != cat.dst(f) {
            return Err(Error::UnknownLabel {
                label: self.label_name(l).to_string(),
                object: cat.obj_name(cat.dst(f)).to_string(),
            });
        }
        Ok(self.pull_unchecked(f, l))
    }

    pub(crate) fn pull_unchecked(&self, f: MorId, l: LabelId) -> LabelId {
        self.pull[f.index()][self.pos[l.index()] as usize]
    }

    pub fn has_weights(&self) -> bool {
        self.weights.is_some()
    }

    /// The integer weight function attached to a label, one entry per carrier element.
    pub fn weight(&self, l: LabelId) -> Option<&[i64]> {
        self.weights.as_ref().map(|w| w[l.index()].as_slice())
    }
}

/// Finite carrier sets with pointwise maps, for function-like categories.
#[derive(Debug, Clone)]
pub struct Carriers {
    pub(crate) elements: Vec<Vec<String>>,
    pub(crate) maps: Vec<Vec<u32>>,
}

impl Carriers {
    pub fn elements(&self, x: ObjId) -> &[String] {
        &self.elements[x.index()]
    }

    /// Values of `f` as indices into the carrier of `dst(f)`.
    pub fn map(&self, f: MorId) -> &[u32] {
        &self.maps[f.index()]
    }

    pub fn apply(&self, f: MorId, x: usize) -> usize {
        self.maps[f.index()][x] as usize
    }
}
