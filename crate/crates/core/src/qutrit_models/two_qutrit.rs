//! Two qutrits on eight `D` anyons: two four-leaf branches side by side,
//! total charge `G`.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::{context, controlled_z, hadamard, normalize_phase, phase_between, sum_gate, Encoding, EncodingName, QutritError};
use crate::anyon_model::{ds3_model, AnyonLabel};
use crate::braid_engine::{evaluate_ops, generators_sparse, BraidWord};
use crate::exact_arith::{inner, norm_sq, Cyclotomic, Matrix, SparseMatrix};
use crate::fusion_space::{enumerate_basis, FusionBasis, StateVector, TreeShape};

/// The full space `V_G^{D^8}` on `(((DD)(DD))((DD)(DD)))`, every pair of
/// branch charges included. Labelings read `x1 y1 c1 x2 y2 c2`.
#[derive(Clone, Debug)]
pub struct TwoQutritSpace {
    basis: Arc<FusionBasis>,
    gens: Vec<SparseMatrix>,
    inverses: Vec<SparseMatrix>,
}

impl TwoQutritSpace {
    pub fn new() -> Result<Self, QutritError> {
        let model = ds3_model();
        let basis = Arc::new(enumerate_basis(model, AnyonLabel::D, AnyonLabel::G, &TreeShape::two_branch8()));
        // Same overall sign per generator as the one-qutrit matrices, so braids
        // inside one branch reproduce them exactly.
        let (_, _, c) = crate::group_closure::printed_scale(model, AnyonLabel::D, AnyonLabel::G)?;
        let gens: Vec<SparseMatrix> = generators_sparse(model, &basis)?.iter().map(|g| g.scale(&c)).collect();
        let inverses = gens.iter().map(SparseMatrix::adjoint).collect();
        Ok(TwoQutritSpace { basis, gens, inverses })
    }

    /// Process-wide instance.
    pub fn shared() -> &'static TwoQutritSpace {
        static SPACE: OnceLock<TwoQutritSpace> = OnceLock::new();
        SPACE.get_or_init(|| TwoQutritSpace::new().expect("built-in eight-strand space"))
    }

    pub fn basis(&self) -> &Arc<FusionBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn generators(&self) -> &[SparseMatrix] {
        &self.gens
    }

    /// Evaluates an eight-strand braid word.
    pub fn word(&self, w: &BraidWord) -> Result<SparseMatrix, QutritError> {
        Ok(evaluate_ops(w, &self.gens)?)
    }

    /// Applies a braid word to a state letter by letter, without forming the product.
    pub fn apply_word(&self, w: &BraidWord, psi: &StateVector) -> Result<StateVector, QutritError> {
        let mut v = psi.amplitudes().to_vec();
        for &l in w.letters().iter().rev() {
            let k = l.unsigned_abs() as usize - 1;
            v = if l > 0 { self.gens[k].mul_vec(&v) } else { self.inverses[k].mul_vec(&v) };
        }
        Ok(StateVector::new(self.basis.clone(), v)?)
    }

    /// `a (x) b` for states of two four-leaf `((DD)(DD))` spaces whose roots
    /// become the branch charges.
    pub fn product(&self, a: &StateVector, b: &StateVector) -> Result<StateVector, QutritError> {
        let (ca, cb) = (a.basis().root(), b.basis().root());
        let mut out = vec![Cyclotomic::zero(); self.dim()];
        for (i, x) in a.amplitudes().iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.amplitudes().iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut l = a.basis().labeling(i).to_vec();
                l.push(ca);
                l.extend_from_slice(b.basis().labeling(j));
                l.push(cb);
                let k = self.basis.position(&l).ok_or_else(|| {
                    QutritError::Dimension(format!("branch charges {ca}, {cb} do not fuse to {}", self.basis.root()))
                })?;
                out[k] += &(x * y);
            }
        }
        Ok(StateVector::new(self.basis.clone(), out)?)
    }

    /// The nine states `|i>_a |j>_b`, index `3i + j`.
    pub fn block(&self, a: &Encoding, b: &Encoding) -> Result<Vec<StateVector>, QutritError> {
        let mut out = Vec::with_capacity(9);
        for s in &a.states {
            for t in &b.states {
                out.push(self.product(s, t)?);
            }
        }
        Ok(out)
    }

    /// `op` acting on branch `branch` (0 or 1) wherever that branch has the
    /// charge of `local`'s root, identity elsewhere. `op` is written in `local`.
    pub fn lift(&self, branch: usize, local: &FusionBasis, op: &Matrix) -> Result<SparseMatrix, QutritError> {
        if branch > 1 || op.rows() != local.dim() || !op.is_square() {
            return Err(QutritError::Dimension(format!("cannot lift a {}x{} gate onto branch {branch}", op.rows(), op.cols())));
        }
        let off = 3 * branch;
        let cols = (0..self.dim())
            .map(|j| {
                let l = self.basis.labeling(j);
                if l[off + 2] != local.root() {
                    return Ok(vec![(j, Cyclotomic::one())]);
                }
                let Some(src) = local.position(&l[off..off + 2]) else { return Ok(vec![(j, Cyclotomic::one())]) };
                let mut col = Vec::new();
                for k in 0..local.dim() {
                    let a = &op[(k, src)];
                    if a.is_zero() {
                        continue;
                    }
                    let mut t = l.to_vec();
                    t[off..off + 2].copy_from_slice(local.labeling(k));
                    let i = self.basis.position(&t).ok_or_else(|| QutritError::Dimension("lifted labeling missing".into()))?;
                    col.push((i, a.clone()));
                }
                Ok(col)
            })
            .collect::<Result<Vec<_>, QutritError>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    /// Matrix `<u_r | g | u_c>` of `g` on a list of orthonormal states.
    pub fn restrict(&self, g: &SparseMatrix, block: &[StateVector]) -> Matrix {
        let v: Vec<Vec<Cyclotomic>> = block.iter().map(|s| s.amplitudes().to_vec()).collect();
        g.compress(&v)
    }
}

/// Largest squared norm, over the block's states, of the part of `g|u>` lying
/// outside the block. The block must be orthonormal.
pub fn leakage_check(gate: &SparseMatrix, block: &[StateVector]) -> Result<Cyclotomic, QutritError> {
    let mut worst = Cyclotomic::zero();
    for u in block {
        if u.dim() != gate.dim() {
            return Err(QutritError::Dimension(format!("{}-dim state, {}-dim gate", u.dim(), gate.dim())));
        }
        let gu = gate.mul_vec(u.amplitudes());
        let mut inside = Cyclotomic::zero();
        for b in block {
            inside += &inner(b.amplitudes(), &gu).norm_sq();
        }
        let out = &norm_sq(&gu) - &inside;
        if out.to_complex().re > worst.to_complex().re {
            worst = out;
        }
    }
    Ok(worst)
}

/// `s1^-1 s2^2 s1 s3^-1 s2^2 s3` with `s1 = σ2σ1σ3σ2`, `s2 = σ4σ3σ5σ4`,
/// `s3 = σ6σ5σ7σ6`.
pub fn crlz_word() -> BraidWord {
    let s = |t: &str| BraidWord::parse(8, t).expect("valid word");
    let (s1, s2, s3) = (s("2 1 3 2"), s("4 3 5 4"), s("6 5 7 6"));
    let s22 = s2.then(&s2);
    s1.inverse().then(&s22).then(&s1).then(&s3.inverse()).then(&s22).then(&s3)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrlzReport {
    pub encoding: EncodingName,
    /// The braid restricted to the nine encoded states.
    pub restriction: Matrix,
    pub diagonal: bool,
    /// `c` with `restriction = c * CZ`, if such a root of unity exists.
    pub phase: Option<Cyclotomic>,
    /// Exact leakage of the braid and of its inverse.
    pub leakage: Cyclotomic,
    pub inverse_leakage: Cyclotomic,
}

impl CrlzReport {
    pub fn is_controlled_z(&self) -> bool {
        self.diagonal && self.phase.is_some() && self.leakage.is_zero() && self.inverse_leakage.is_zero()
    }
}

/// The braid `crlz_word` on `|i>_x |j>_x` for the encoding `x`.
pub fn crlz(space: &TwoQutritSpace, enc: EncodingName) -> Result<CrlzReport, QutritError> {
    let e = &context().encodings[enc as usize];
    let block = space.block(e, e)?;
    let g = space.word(&crlz_word())?;
    let restriction = space.restrict(&g, &block);
    Ok(CrlzReport {
        encoding: enc,
        diagonal: restriction.is_diagonal(),
        phase: phase_between(&restriction, &controlled_z()),
        leakage: leakage_check(&g, &block)?,
        inverse_leakage: leakage_check(&g.adjoint(), &block)?,
        restriction,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SumReport {
    /// Braided controlled-Z with its global phase removed.
    pub controlled_z: Matrix,
    /// `(1 (x) h) CZ^-1 (1 (x) h^-1)`.
    pub sum: Matrix,
    /// `c` with `sum = c * SUM`.
    pub phase: Option<Cyclotomic>,
}

/// SUM built from the braided controlled-Z on encoding `enc`.
pub fn sum_from_crlz(space: &TwoQutritSpace, enc: EncodingName) -> Result<SumReport, QutritError> {
    let rep = crlz(space, enc)?;
    let cz = match &rep.phase {
        Some(c) => rep.restriction.scale(&c.inverse().map_err(|_| QutritError::NotUnitary)?),
        None => normalize_phase(&rep.restriction).0,
    };
    let id_h = Matrix::identity(3).kron(&hadamard());
    let sum = id_h.mul(&cz.adjoint()).mul(&id_h.adjoint());
    let phase = phase_between(&sum, &sum_gate());
    Ok(SumReport { controlled_z: cz, sum, phase })
}
