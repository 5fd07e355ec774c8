use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FusionError, TreeShape};
use crate::anyon_model::label::word;
use crate::anyon_model::{AnyonLabel, AnyonModel};

/// Which ordering a basis list follows.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisOrder {
    /// Labelings sorted lexicographically, each coordinate ranked by the model's basis order.
    Canonical,
    /// The order of the dimension-and-basis summary table for `V_z^{mmmm}`.
    Summary,
    /// The order in which the generator matrices of `V_z^{mmmm}` are printed.
    Generators,
}

/// An ordered fusion-tree basis: all admissible labelings of the internal edges
/// of `shape` with the given leaves and root.
///
/// A labeling lists the edge labels in the order of `shape.edge_spans()`
/// (post-order, root excluded). For the paired four-leaf shape this is `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionBasis {
    shape: TreeShape,
    leaves: Vec<AnyonLabel>,
    root: AnyonLabel,
    edges: Vec<(usize, usize)>,
    labelings: Vec<Vec<AnyonLabel>>,
    order: BasisOrder,
    index: HashMap<Vec<AnyonLabel>, usize>,
}

/// JSON view of a basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub shape: TreeShape,
    pub leaves: String,
    pub root: AnyonLabel,
    pub order: BasisOrder,
    pub labelings: Vec<String>,
}

/// `dim V_z^{m...m}` with `n` leaves: the `(unit, z)` entry of `N_m^n`.
pub fn dim(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel, n: usize) -> u128 {
    assert!(n >= 1, "at least one leaf");
    let k = model.rank();
    let nm = model.fusion_matrix(m);
    let mut v = vec![0u128; k];
    v[AnyonLabel::UNIT.index()] = 1;
    for _ in 0..n {
        let mut w = vec![0u128; k];
        for (a, &va) in v.iter().enumerate() {
            if va == 0 {
                continue;
            }
            for (c, wc) in w.iter_mut().enumerate() {
                *wc += va * nm[a][c] as u128;
            }
        }
        v = w;
    }
    v[z.index()]
}

/// All admissible labelings of `shape` with uniform leaves `m` and root `z`, canonical order.
pub fn enumerate_basis(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel, shape: &TreeShape) -> FusionBasis {
    let leaves = vec![m; shape.n_leaves()];
    FusionBasis::new(model, shape.clone(), leaves, z).expect("uniform leaves match the shape")
}

impl FusionBasis {
    /// Canonically ordered basis for arbitrary leaf labels.
    pub fn new(model: &AnyonModel, shape: TreeShape, leaves: Vec<AnyonLabel>, root: AnyonLabel) -> Result<Self, FusionError> {
        if leaves.len() != shape.n_leaves() {
            return Err(FusionError::Shape(format!("{} leaf labels for {} leaves", leaves.len(), shape.n_leaves())));
        }
        for &l in leaves.iter().chain([&root]) {
            model.check_label(l)?;
        }
        // Each option is (label on top of the subtree, labels of its internal vertices in post-order).
        fn go(model: &AnyonModel, t: &TreeShape, leaves: &[AnyonLabel]) -> Vec<(AnyonLabel, Vec<AnyonLabel>)> {
            match t {
                TreeShape::Leaf => vec![(leaves[0], Vec::new())],
                TreeShape::Node(l, r) => {
                    let nl = l.n_leaves();
                    let ls = go(model, l, &leaves[..nl]);
                    let rs = go(model, r, &leaves[nl..]);
                    let mut out = Vec::new();
                    for (a, la) in &ls {
                        for (b, lb) in &rs {
                            for c in model.fuse(*a, *b) {
                                let mut v = la.clone();
                                v.extend_from_slice(lb);
                                v.push(c);
                                out.push((c, v));
                            }
                        }
                    }
                    out
                }
            }
        }
        let mut labelings: Vec<Vec<AnyonLabel>> = go(model, &shape, &leaves)
            .into_iter()
            .filter(|(top, _)| *top == root)
            .map(|(_, mut v)| {
                v.pop();
                v
            })
            .collect();
        let rank = |l: &AnyonLabel| model.basis_position(*l);
        labelings.sort_by(|a, b| a.iter().map(rank).cmp(b.iter().map(rank)));
        labelings.dedup();
        let edges = shape.edge_spans();
        Ok(Self::assemble(shape, leaves, root, edges, labelings, BasisOrder::Canonical))
    }

    fn assemble(
        shape: TreeShape,
        leaves: Vec<AnyonLabel>,
        root: AnyonLabel,
        edges: Vec<(usize, usize)>,
        labelings: Vec<Vec<AnyonLabel>>,
        order: BasisOrder,
    ) -> Self {
        let index = labelings.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        FusionBasis { shape, leaves, root, edges, labelings, order, index }
    }

    /// The same space listed in a different order. `labelings` must be a permutation
    /// of the current list.
    pub fn reordered(&self, labelings: Vec<Vec<AnyonLabel>>, order: BasisOrder) -> Result<Self, FusionError> {
        let mut a = labelings.clone();
        let mut b = self.labelings.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(FusionError::Order(format!(
                "[{}] is not a permutation of [{}]",
                labelings.iter().map(|l| word(l)).collect::<Vec<_>>().join(","),
                self.labelings.iter().map(|l| word(l)).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(Self::assemble(self.shape.clone(), self.leaves.clone(), self.root, self.edges.clone(), labelings, order))
    }

    /// The printed ordering of `V_z^{mmmm}` on the paired shape, where one exists.
    pub fn with_printed_order(&self, order: BasisOrder) -> Result<Self, FusionError> {
        match order {
            // Canonical order depends on the model, so it is recovered by rebuilding.
            BasisOrder::Canonical if self.order == BasisOrder::Canonical => Ok(self.clone()),
            BasisOrder::Canonical => Err(FusionError::Order("rebuild the basis to recover canonical order".into())),
            _ => {
                let m = self.leaves[0];
                if self.shape != TreeShape::paired4() || self.leaves.iter().any(|&l| l != m) {
                    return Err(FusionError::Order("printed orders exist only for V_z^{mmmm} on ((mm)(mm))".into()));
                }
                let seq = printed_order(m, self.root, order)
                    .ok_or_else(|| FusionError::Order(format!("no printed order for ({m},{})", self.root)))?;
                self.reordered(seq, order)
            }
        }
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn leaves(&self) -> &[AnyonLabel] {
        &self.leaves
    }

    pub fn root(&self) -> AnyonLabel {
        self.root
    }

    pub fn order(&self) -> BasisOrder {
        self.order
    }

    /// Spans of the labeled internal edges, in labeling coordinate order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn dim(&self) -> usize {
        self.labelings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labelings.is_empty()
    }

    pub fn labelings(&self) -> &[Vec<AnyonLabel>] {
        &self.labelings
    }

    pub fn labeling(&self, i: usize) -> &[AnyonLabel] {
        &self.labelings[i]
    }

    pub fn position(&self, labeling: &[AnyonLabel]) -> Option<usize> {
        self.index.get(labeling).copied()
    }

    /// Position of a labeling written as letters, e.g. `"GA"`.
    pub fn position_of(&self, letters: &str) -> Option<usize> {
        let l = AnyonLabel::parse_word(letters).ok()?;
        self.position(&l)
    }

    /// Label carried by the edge over `span`: a leaf, an internal edge or the root.
    pub fn label_at(&self, i: usize, span: (usize, usize)) -> Option<AnyonLabel> {
        if span.1 == span.0 + 1 {
            return self.leaves.get(span.0).copied();
        }
        if span == (0, self.leaves.len()) {
            return Some(self.root);
        }
        let k = self.edges.iter().position(|&e| e == span)?;
        Some(self.labelings[i][k])
    }

    /// Whether two bases describe the same space (same shape, leaves and root),
    /// regardless of ordering.
    pub fn same_space(&self, other: &FusionBasis) -> bool {
        self.shape == other.shape && self.leaves == other.leaves && self.root == other.root
    }

    /// `perm[i]` is the position in `self` of the `i`-th element of `other`.
    pub fn permutation_to(&self, other: &FusionBasis) -> Result<Vec<usize>, FusionError> {
        if !self.same_space(other) || self.dim() != other.dim() {
            return Err(FusionError::BasisMismatch);
        }
        other.labelings.iter().map(|l| self.position(l).ok_or(FusionError::BasisMismatch)).collect()
    }

    pub fn to_json_view(&self) -> BasisJson {
        BasisJson {
            shape: self.shape.clone(),
            leaves: word(&self.leaves),
            root: self.root,
            order: self.order,
            labelings: self.labelings.iter().map(|l| word(l)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_view()).expect("basis serializes")
    }

    /// Rebuilds a basis from its JSON view, checking it against the model.
    pub fn from_json(model: &AnyonModel, s: &str) -> Result<Self, FusionError> {
        let j: BasisJson = serde_json::from_str(s).map_err(|e| FusionError::Shape(e.to_string()))?;
        let leaves = AnyonLabel::parse_word(&j.leaves)?;
        let base = FusionBasis::new(model, j.shape, leaves, j.root)?;
        let labelings = j.labelings.iter().map(|l| AnyonLabel::parse_word(l)).collect::<Result<Vec<_>, _>>()?;
        base.reordered(labelings, j.order)
    }
}

/// Printed basis sequences of `V_z^{mmmm}` as `(x, y)` pairs.
///
/// The summary listing and the generator matrices agree except for `V_A^{DDDD}`
/// and `V_B^{DDDD}`, whose matrices use their own orders.
pub fn printed_order(m: AnyonLabel, z: AnyonLabel, order: BasisOrder) -> Option<Vec<Vec<AnyonLabel>>> {
    let key = format!("{m}{z}");
    let seq = match (key.as_str(), order) {
        ("DA", BasisOrder::Generators) => "AA GG FF CC HH",
        ("DB", BasisOrder::Generators) => "GG FF CC HH",
        (_, BasisOrder::Canonical) => return None,
        ("CA", _) => "AA BB CC",
        ("CB", _) => "CC AB BA",
        ("CC", _) => "CC AC CA BC CB",
        ("DA", _) => "AA CC FF GG HH",
        ("DB", _) => "CC FF GG HH",
        ("DC", _) => "CC AC CA GF FG GH HG FH HF",
        ("DF", _) => "FF AF FA GC CG GH HG CH HC",
        ("DG", _) => "GG AG GA FC CF FH HF CH HC",
        ("DH", _) => "HH AH HA GF FG GC CG FC CF",
        ("GA", _) => "AA BB GG",
        ("GB", _) => "GG AB BA",
        ("GG", _) => "GG AG GA BG GB",
        _ => return None,
    };
    Some(seq.split_whitespace().map(|w| AnyonLabel::parse_word(w).expect("static labels")).collect())
}

/// The `(m, z)` pairs with a printed basis order.
pub const PRINTED_SPACES: [(AnyonLabel, AnyonLabel); 12] = {
    use AnyonLabel as L;
    [
        (L::C, L::A),
        (L::C, L::B),
        (L::C, L::C),
        (L::D, L::A),
        (L::D, L::B),
        (L::D, L::C),
        (L::D, L::F),
        (L::D, L::G),
        (L::D, L::H),
        (L::G, L::A),
        (L::G, L::B),
        (L::G, L::G),
    ]
};
