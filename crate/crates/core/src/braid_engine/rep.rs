use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{BraidError, BraidWord};
use crate::anyon_model::{AnyonModel, ConsistencyReport};
use crate::exact_arith::{Cyclotomic, Matrix, SparseMatrix};
use crate::fusion_space::{change_of_basis, FMove, FusionBasis, TreeShape};

/// Linear operators that braid words can be evaluated on.
pub trait Operator: Clone + PartialEq {
    fn dim(&self) -> usize;
    fn identity(n: usize) -> Self;
    /// `self * other`.
    fn compose(&self, other: &Self) -> Self;
    fn dagger(&self) -> Self;
    fn describe(&self) -> String;
}

impl Operator for Matrix {
    fn dim(&self) -> usize {
        self.rows()
    }

    fn identity(n: usize) -> Self {
        Matrix::identity(n)
    }

    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn dagger(&self) -> Self {
        self.adjoint()
    }

    fn describe(&self) -> String {
        format!("{:?}", self.to_string_rows())
    }
}

impl Operator for SparseMatrix {
    fn dim(&self) -> usize {
        SparseMatrix::dim(self)
    }

    fn identity(n: usize) -> Self {
        SparseMatrix::identity(n)
    }

    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn dagger(&self) -> Self {
        self.adjoint()
    }

    fn describe(&self) -> String {
        format!("{self:?}")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Raw,
    /// Scaled to determinant one.
    DetNormalized,
    /// Multiplied by `tau = exp(-pi i / 9)`.
    TauScaled,
}

/// A braid-group image on a fusion-tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub matrix: Matrix,
    pub basis: Arc<FusionBasis>,
    pub normalization: Normalization,
}

impl RepMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The same operator listed over another ordering of the same space.
    pub fn in_basis(&self, target: Arc<FusionBasis>) -> Result<RepMatrix, BraidError> {
        let perm = self.basis.permutation_to(&target)?;
        Ok(RepMatrix { matrix: self.matrix.reorder(&perm), basis: target, normalization: self.normalization })
    }
}

fn route_cache() -> &'static Mutex<HashMap<(TreeShape, usize), Vec<FMove>>> {
    static CACHE: OnceLock<Mutex<HashMap<(TreeShape, usize), Vec<FMove>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shortest F-move path taking `shape` to one where leaves `i - 1`, `i` share a vertex.
pub fn sigma_route(shape: &TreeShape, i: usize) -> Vec<FMove> {
    let key = (shape.clone(), i);
    if let Some(p) = route_cache().lock().expect("route cache").get(&key) {
        return p.clone();
    }
    let p = shape.route(|s| s.has_pair(i - 1));
    route_cache().lock().expect("route cache").insert(key, p.clone());
    p
}

/// `sigma_i` (1-based) on `basis`, as a sparse matrix in the basis' own order.
///
/// F-moves bring strands `i`, `i + 1` under a common vertex with channel `c`;
/// the exchange multiplies by `R^{yx}_c` for the pair `(x, y)`; the inverse
/// F-moves return to the original shape.
pub fn sigma_sparse(model: &AnyonModel, basis: &FusionBasis, i: usize) -> Result<SparseMatrix, BraidError> {
    let n = basis.leaves().len();
    if i == 0 || i >= n {
        return Err(BraidError::Index { index: i as i32, strands: n });
    }
    let (x, y) = (basis.leaves()[i - 1], basis.leaves()[i]);
    if x != y {
        return Err(BraidError::NonUniformLeaves(i));
    }
    let path = sigma_route(basis.shape(), i);
    let (target, m) = change_of_basis(model, basis, &path)?;
    let mut diag = Vec::with_capacity(target.dim());
    for j in 0..target.dim() {
        let c = target.label_at(j, (i - 1, i + 1)).expect("strands meet at a vertex");
        diag.push(vec![(j, model.r_symbol(y, x, c)?)]);
    }
    let d = SparseMatrix::from_columns(target.dim(), diag);
    Ok(m.adjoint().mul(&d.mul(&m)))
}

/// All generators `sigma_1 .. sigma_{n-1}` as sparse matrices.
pub fn generators_sparse(model: &AnyonModel, basis: &FusionBasis) -> Result<Vec<SparseMatrix>, BraidError> {
    (1..basis.leaves().len()).map(|i| sigma_sparse(model, basis, i)).collect()
}

/// `sigma_i` as a dense representation matrix.
pub fn sigma_matrix(model: &AnyonModel, basis: &Arc<FusionBasis>, i: usize) -> Result<RepMatrix, BraidError> {
    let s = sigma_sparse(model, basis, i)?;
    Ok(RepMatrix { matrix: s.to_dense(), basis: basis.clone(), normalization: Normalization::Raw })
}

/// All dense generators of the representation on `basis`.
pub fn generators(model: &AnyonModel, basis: &Arc<FusionBasis>) -> Result<Vec<RepMatrix>, BraidError> {
    (1..basis.leaves().len()).map(|i| sigma_matrix(model, basis, i)).collect()
}

/// The ordered product `g_{a_1} g_{a_2} ...`; inverse letters use the adjoint.
pub fn evaluate_ops<O: Operator>(word: &BraidWord, gens: &[O]) -> Result<O, BraidError> {
    let n = gens.first().map_or(0, O::dim);
    let mut acc: Option<O> = None;
    for &l in word.letters() {
        let k = l.unsigned_abs() as usize;
        let g = gens.get(k - 1).ok_or(BraidError::Index { index: l, strands: gens.len() + 1 })?;
        let g = if l > 0 { g.clone() } else { g.dagger() };
        acc = Some(match acc {
            None => g,
            Some(a) => a.compose(&g),
        });
    }
    Ok(acc.unwrap_or_else(|| O::identity(n)))
}

/// Evaluates a braid word on dense generators.
pub fn evaluate(word: &BraidWord, gens: &[RepMatrix]) -> Result<RepMatrix, BraidError> {
    let first = gens.first().ok_or(BraidError::Index { index: 0, strands: 0 })?;
    let ms: Vec<Matrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    let matrix = evaluate_ops(word, &ms)?;
    Ok(RepMatrix { matrix, basis: first.basis.clone(), normalization: first.normalization })
}

/// The `d`-th roots of `x` among the 72nd roots of unity, ordered by `|arg|`
/// with positive arguments first on ties.
pub fn roots_of_unity_roots(x: &Cyclotomic, d: u64) -> Vec<Cyclotomic> {
    let Some(k) = x.as_root_of_unity() else { return Vec::new() };
    let order = crate::exact_arith::ORDER;
    let mut out: Vec<i64> = (0..order).filter(|j| (j * d as i64 - k).rem_euclid(order) == 0).collect();
    let arg = |j: i64| if j > order / 2 { j - order } else { j };
    out.sort_by_key(|&j| (arg(j).abs(), arg(j) < 0));
    out.into_iter().map(Cyclotomic::zeta).collect()
}

/// Scales every generator by one common `d`-th root of `1/det` so all have
/// determinant 1. The root is the 72nd root of unity closest to 1.
pub fn normalize_special(reps: &[RepMatrix]) -> Result<(Vec<RepMatrix>, Cyclotomic), BraidError> {
    let Some(first) = reps.first() else { return Ok((Vec::new(), Cyclotomic::one())) };
    let d = first.dim();
    if d == 0 {
        return Ok((reps.to_vec(), Cyclotomic::one()));
    }
    let det = first.matrix.det();
    if let Some(bad) = reps.iter().find(|r| r.dim() != d || r.matrix.det() != det) {
        return Err(BraidError::NoRoot(format!("generators have different determinants ({} vs {})", bad.matrix.det(), det)));
    }
    let inv = det.inverse().map_err(|_| BraidError::NoRoot("singular generator".into()))?;
    let lambda = roots_of_unity_roots(&inv, d as u64)
        .into_iter()
        .next()
        .ok_or_else(|| BraidError::NoRoot(format!("no {d}-th root of {inv} in the field")))?;
    let out = reps
        .iter()
        .map(|r| RepMatrix { matrix: r.matrix.scale(&lambda), basis: r.basis.clone(), normalization: Normalization::DetNormalized })
        .collect();
    Ok((out, lambda))
}

/// Adjacent braid relations `g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}` and far
/// commutation `g_i g_j = g_j g_i` for `|i - j| >= 2`.
pub fn verify_braid_relations<O: Operator>(gens: &[O]) -> ConsistencyReport {
    let mut rep = ConsistencyReport::new("braid relations");
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (&gens[i], &gens[j]);
            rep.checked += 1;
            let (lhs, rhs, name) = if j == i + 1 {
                (a.compose(b).compose(a), b.compose(a).compose(b), format!("s{0} s{1} s{0} = s{1} s{0} s{1}", i + 1, j + 1))
            } else {
                (a.compose(b), b.compose(a), format!("s{0} s{1} = s{1} s{0}", i + 1, j + 1))
            };
            if lhs != rhs {
                rep.violations.push(crate::anyon_model::Violation { indices: name, lhs: lhs.describe(), rhs: rhs.describe() });
            }
        }
    }
    rep
}
