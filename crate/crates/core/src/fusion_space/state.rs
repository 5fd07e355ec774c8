use std::fmt;
use std::sync::Arc;

use super::shape::{Assoc, FMove};
use super::{FusionBasis, FusionError};
use crate::anyon_model::label::word;
use crate::anyon_model::{AnyonLabel, AnyonModel};
use crate::exact_arith::{Cyclotomic, SparseMatrix};

/// Exact amplitudes over an ordered fusion-tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: Arc<FusionBasis>,
    amps: Vec<Cyclotomic>,
}

impl StateVector {
    pub fn new(basis: Arc<FusionBasis>, amps: Vec<Cyclotomic>) -> Result<Self, FusionError> {
        if amps.len() != basis.dim() {
            return Err(FusionError::Dimension(format!("{} amplitudes for a {}-dimensional basis", amps.len(), basis.dim())));
        }
        Ok(StateVector { basis, amps })
    }

    pub fn zero(basis: Arc<FusionBasis>) -> Self {
        let amps = vec![Cyclotomic::zero(); basis.dim()];
        StateVector { basis, amps }
    }

    pub fn basis_state(basis: Arc<FusionBasis>, i: usize) -> Self {
        let mut s = Self::zero(basis);
        s.amps[i] = Cyclotomic::one();
        s
    }

    /// A combination of labelings written as letters, e.g. `[("FC", c), ("CF", -c)]`.
    pub fn from_terms(basis: Arc<FusionBasis>, terms: &[(&str, Cyclotomic)]) -> Result<Self, FusionError> {
        let mut s = Self::zero(basis);
        for (w, c) in terms {
            let i = s.basis.position_of(w).ok_or_else(|| FusionError::Dimension(format!("|{w}> is not in the basis")))?;
            s.amps[i] += c;
        }
        Ok(s)
    }

    pub fn basis(&self) -> &Arc<FusionBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Cyclotomic] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Cyclotomic> {
        self.amps
    }

    pub fn amplitude(&self, i: usize) -> &Cyclotomic {
        &self.amps[i]
    }

    /// Amplitude of the labeling written as letters; zero if absent.
    pub fn amplitude_of(&self, letters: &str) -> Cyclotomic {
        self.basis.position_of(letters).map_or_else(Cyclotomic::zero, |i| self.amps[i].clone())
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(Cyclotomic::is_zero)
    }

    pub fn norm_sq(&self) -> Cyclotomic {
        self.amps.iter().map(Cyclotomic::norm_sq).sum()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        StateVector { basis: self.basis.clone(), amps: self.amps.iter().map(|a| a * c).collect() }
    }

    pub fn add(&self, other: &StateVector) -> Result<Self, FusionError> {
        self.check_same(other)?;
        Ok(StateVector { basis: self.basis.clone(), amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &StateVector) -> Result<Self, FusionError> {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    fn check_same(&self, other: &StateVector) -> Result<(), FusionError> {
        if Arc::ptr_eq(&self.basis, &other.basis) || *self.basis == *other.basis {
            Ok(())
        } else {
            Err(FusionError::BasisMismatch)
        }
    }

    /// The same vector expressed over another ordering of the same space.
    pub fn in_basis(&self, target: Arc<FusionBasis>) -> Result<Self, FusionError> {
        let perm = self.basis.permutation_to(&target)?;
        let amps = perm.iter().map(|&i| self.amps[i].clone()).collect();
        Ok(StateVector { basis: target, amps })
    }

    /// Applies a linear map given on this basis.
    pub fn apply(&self, m: &SparseMatrix) -> Result<Self, FusionError> {
        if m.dim() != self.dim() {
            return Err(FusionError::Dimension(format!("{}x{} map on a {}-vector", m.dim(), m.dim(), self.dim())));
        }
        Ok(StateVector { basis: self.basis.clone(), amps: m.mul_vec(&self.amps) })
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("({a})|{}>", word(self.basis.labeling(i))))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `sum_i conj(u_i) v_i`; both vectors must use the same ordered basis.
pub fn inner_product(u: &StateVector, v: &StateVector) -> Result<Cyclotomic, FusionError> {
    u.check_same(v)?;
    Ok(crate::exact_arith::inner(&u.amps, &v.amps))
}

/// The unitary of one F-move: column `j` is basis vector `j` of `basis`
/// written in the canonical basis of the moved shape.
///
/// `((a b)_m c)_d = sum_n F^{abc}_{d;nm} (a (b c)_n)_d`; the reverse move uses
/// the conjugate transpose of the same block.
pub fn move_matrix(model: &AnyonModel, basis: &FusionBasis, mv: FMove) -> Result<(FusionBasis, SparseMatrix), FusionError> {
    let shape = basis.shape();
    let (new_shape, old_span, new_span) = shape.apply(mv)?;
    let target = FusionBasis::new(model, new_shape, basis.leaves().to_vec(), basis.root())?;
    let (lo, hi) = mv.span;
    let bad = || FusionError::BadMove(format!("{mv:?}"));
    let (l, r) = shape.children(mv.span).ok_or_else(bad)?;
    let (x, y, z) = match mv.dir {
        Assoc::LeftToRight => {
            let (xs, ys) = shape.children(l).ok_or_else(bad)?;
            (xs, ys, r)
        }
        Assoc::RightToLeft => {
            let (ys, zs) = shape.children(r).ok_or_else(bad)?;
            (l, ys, zs)
        }
    };
    let mut cols = Vec::with_capacity(basis.dim());
    for j in 0..basis.dim() {
        let lab = |s| basis.label_at(j, s).expect("span is an edge of the shape");
        let (a, b, c, d) = (lab(x), lab(y), lab(z), lab((lo, hi)));
        let inner = lab(old_span);
        let mut new_lab: Vec<AnyonLabel> = target.edges().iter().map(|&e| if e == new_span { inner } else { lab(e) }).collect();
        let k = target.edges().iter().position(|&e| e == new_span).expect("new edge is internal");
        let mut col = Vec::new();
        let channels = match mv.dir {
            Assoc::LeftToRight => model.right_channels(a, b, c, d),
            Assoc::RightToLeft => model.left_channels(a, b, c, d),
        };
        for ch in channels {
            let coef = match mv.dir {
                Assoc::LeftToRight => model.f_symbol(a, b, c, d, ch, inner)?,
                Assoc::RightToLeft => model.f_symbol(a, b, c, d, inner, ch)?.conj(),
            };
            if coef.is_zero() {
                continue;
            }
            new_lab[k] = ch;
            let i = target.position(&new_lab).expect("moved labeling is admissible");
            col.push((i, coef));
        }
        cols.push(col);
    }
    let n = basis.dim();
    Ok((target, SparseMatrix::from_columns(n, cols)))
}

/// Applies one F-move to a state; the result lives on the canonical basis of the new shape.
pub fn f_move(model: &AnyonModel, state: &StateVector, mv: FMove) -> Result<StateVector, FusionError> {
    let (target, m) = move_matrix(model, state.basis(), mv)?;
    Ok(StateVector { basis: Arc::new(target), amps: m.mul_vec(state.amplitudes()) })
}

/// Composite of a sequence of F-moves starting from `basis`.
pub fn change_of_basis(model: &AnyonModel, basis: &FusionBasis, path: &[FMove]) -> Result<(FusionBasis, SparseMatrix), FusionError> {
    let mut cur = basis.clone();
    let mut total = SparseMatrix::identity(basis.dim());
    for &mv in path {
        let (next, m) = move_matrix(model, &cur, mv)?;
        total = m.mul(&total);
        cur = next;
    }
    Ok((cur, total))
}
