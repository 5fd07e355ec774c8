//! Qutrit encodings inside `V_G^{DDDD}`, the reference qutrit gates, gates
//! obtained by braiding, and leakage out of the computational block.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::anyon_model::{ds3_model, AnyonLabel};
use crate::braid_engine::{restrict, BraidError, BraidWord, Sector};
use crate::exact_arith::{Cyclotomic, Matrix};
use crate::fusion_space::{FusionBasis, FusionError, StateVector};
use crate::group_closure::{printed_scale, GroupError};

mod checks;
mod two_qutrit;

pub use checks::{gate_check, phase_text, GateCheck, GateItem, GATE_CHECKS};
pub use two_qutrit::{crlz, crlz_word, leakage_check, sum_from_crlz, CrlzReport, SumReport, TwoQutritSpace};

#[derive(Debug, thiserror::Error)]
pub enum QutritError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown encoding `{0}`")]
    UnknownEncoding(String),
    #[error("unknown gate check `{0}`")]
    UnknownCheck(String),
    #[error("gate is not unitary")]
    NotUnitary,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EncodingName {
    U,
    V,
    W,
}

impl EncodingName {
    pub const ALL: [EncodingName; 3] = [EncodingName::U, EncodingName::V, EncodingName::W];

    /// Each basis state as `(labeling, coefficient numerator)`; V and W
    /// states carry an overall `1/sqrt2`.
    fn terms(self) -> [&'static [(&'static str, i64)]; 3] {
        match self {
            EncodingName::U => [&[("GG", 1)], &[("AG", 1)], &[("GA", 1)]],
            EncodingName::V => [&[("FC", 1), ("CF", 1)], &[("FH", 1), ("CH", 1)], &[("HF", 1), ("HC", 1)]],
            EncodingName::W => [&[("FC", 1), ("CF", -1)], &[("CH", 1), ("FH", -1)], &[("HF", 1), ("HC", -1)]],
        }
    }
}

impl fmt::Display for EncodingName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for EncodingName {
    type Err = QutritError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "U" | "u" => Ok(EncodingName::U),
            "V" | "v" => Ok(EncodingName::V),
            "W" | "w" => Ok(EncodingName::W),
            other => Err(QutritError::UnknownEncoding(other.to_string())),
        }
    }
}

/// Three orthonormal states `|0>, |1>, |2>` of `V_G^{DDDD}`.
#[derive(Clone, Debug)]
pub struct Encoding {
    pub name: EncodingName,
    pub states: [StateVector; 3],
}

impl Encoding {
    pub fn basis(&self) -> &Arc<FusionBasis> {
        self.states[0].basis()
    }

    pub fn vectors(&self) -> Vec<Vec<Cyclotomic>> {
        self.states.iter().map(|s| s.amplitudes().to_vec()).collect()
    }

    pub fn sector(&self) -> Sector {
        Sector::new(self.vectors())
    }

    /// `sum_i c_i |i>` as an ambient state.
    pub fn embed(&self, coeffs: &[Cyclotomic]) -> StateVector {
        let mut out = StateVector::zero(self.basis().clone());
        for (c, s) in coeffs.iter().zip(&self.states) {
            out = out.add(&s.scale(c)).expect("same basis");
        }
        out
    }

    /// Coordinates `<i|psi>` of an ambient state.
    pub fn coordinates(&self, psi: &StateVector) -> Vec<Cyclotomic> {
        self.states.iter().map(|s| crate::exact_arith::inner(s.amplitudes(), psi.amplitudes())).collect()
    }
}

/// The one-qutrit space together with its braid generators in the printed
/// phase convention.
struct QutritContext {
    basis: Arc<FusionBasis>,
    gens: Vec<Matrix>,
    encodings: Vec<Encoding>,
}

fn context() -> &'static QutritContext {
    static CTX: OnceLock<QutritContext> = OnceLock::new();
    CTX.get_or_init(|| {
        let (basis, raw, c) = printed_scale(ds3_model(), AnyonLabel::D, AnyonLabel::G).expect("built-in (D,G) data");
        let gens = raw.iter().map(|g| g.scale(&c)).collect();
        let r = Cyclotomic::sqrt2().inverse().expect("nonzero");
        let encodings = EncodingName::ALL
            .iter()
            .map(|&name| {
                let states = name.terms().map(|terms| {
                    let k = if terms.len() == 1 { Cyclotomic::one() } else { r.clone() };
                    let t: Vec<(&str, Cyclotomic)> = terms.iter().map(|(w, n)| (*w, &Cyclotomic::from_int(*n) * &k)).collect();
                    StateVector::from_terms(basis.clone(), &t).expect("labelings of the (D,G) basis")
                });
                Encoding { name, states }
            })
            .collect();
        QutritContext { basis, gens, encodings }
    })
}

/// `V_G^{DDDD}` in the printed basis order `GG, AG, GA, FC, CF, FH, HF, CH, HC`.
pub fn qutrit_basis() -> Arc<FusionBasis> {
    context().basis.clone()
}

/// `sigma_1, sigma_2, sigma_3` on [`qutrit_basis`], with the overall sign the
/// printed tables use.
pub fn qutrit_generators() -> &'static [Matrix] {
    &context().gens
}

pub fn encoding_basis(name: EncodingName) -> Encoding {
    context().encodings[name as usize].clone()
}

/// A unitary gate on one or two encoded qutrits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QutritGate {
    pub name: String,
    pub encoding: String,
    pub matrix: Matrix,
}

impl QutritGate {
    pub fn new(name: &str, encoding: &str, matrix: Matrix) -> Result<Self, QutritError> {
        if !matrix.is_unitary() {
            return Err(QutritError::NotUnitary);
        }
        Ok(QutritGate { name: name.to_string(), encoding: encoding.to_string(), matrix })
    }
}

fn w() -> Cyclotomic {
    Cyclotomic::omega()
}

/// Generalized Hadamard `h_{jk} = w^{jk} / sqrt3`.
pub fn hadamard() -> Matrix {
    let s = Cyclotomic::sqrt3().inverse().expect("nonzero");
    Matrix::from_fn(3, 3, |j, k| &w().pow((j * k) as i64) * &s)
}

/// `|i, j> -> |i, i + j mod 3>`, index `3i + j`.
pub fn sum_gate() -> Matrix {
    Matrix::permutation(&(0..9).map(|x| 3 * (x / 3) + (x / 3 + x % 3) % 3).collect::<Vec<_>>())
}

/// `|i, j> -> w^{ij} |i, j>`.
pub fn controlled_z() -> Matrix {
    Matrix::diag(&(0..9).map(|x| w().pow(((x / 3) * (x % 3)) as i64)).collect::<Vec<_>>())
}

/// `|i> -> w^i |i>`.
pub fn z_gate() -> Matrix {
    Matrix::diag(&[Cyclotomic::one(), w(), w().pow(2)])
}

/// `|i> -> w^{(i^2 - i)/2} |i>`.
pub fn phase_gate() -> Matrix {
    Matrix::diag(&[Cyclotomic::one(), Cyclotomic::one(), w()])
}

/// `diag(1, 1, -1)`.
pub fn flip2() -> Matrix {
    Matrix::diag(&[Cyclotomic::one(), Cyclotomic::one(), -&Cyclotomic::one()])
}

/// The six permutation matrices of one qutrit.
pub fn classical_gates() -> Vec<Matrix> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
    perms.iter().map(|p| Matrix::permutation(p)).collect()
}

pub fn reference_gates() -> Vec<QutritGate> {
    let g = |name: &str, m: Matrix| QutritGate::new(name, "reference", m).expect("reference gates are unitary");
    let mut out = vec![
        g("h", hadamard()),
        g("SUM", sum_gate()),
        g("CZ", controlled_z()),
        g("Z", z_gate()),
        g("P", phase_gate()),
        g("FLIP2", flip2()),
    ];
    for (k, m) in classical_gates().into_iter().enumerate() {
        out.push(g(&format!("perm{k}"), m));
    }
    out
}

/// Looks up a reference gate by name.
pub fn reference_gate(name: &str) -> Option<Matrix> {
    reference_gates().into_iter().find(|g| g.name == name).map(|g| g.matrix)
}

/// `a = c b` for a root of unity `c`, read off at the first nonzero entry of `b`.
pub fn phase_between(a: &Matrix, b: &Matrix) -> Option<Cyclotomic> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let k = b.entries().iter().position(|x| !x.is_zero())?;
    let c = a.entries()[k].try_div(&b.entries()[k]).ok()?;
    c.as_root_of_unity()?;
    (b.scale(&c) == *a).then_some(c)
}

/// Rescales `m` by a root of unity so its first nonzero entry is real and
/// positive; returns the rescaled matrix and the scalar applied.
pub fn normalize_phase(m: &Matrix) -> (Matrix, Cyclotomic) {
    let Some(e) = m.entries().iter().find(|x| !x.is_zero()) else { return (m.clone(), Cyclotomic::one()) };
    for k in 0..crate::exact_arith::ORDER {
        let c = Cyclotomic::zeta(k);
        let x = &c * e;
        if x.is_real() && x.to_complex().re > 0.0 {
            return (m.scale(&c), c);
        }
    }
    (m.clone(), Cyclotomic::one())
}

/// Where braid gates act: the 6-dim summand `U + V` or the 3-dim summand `W`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BraidSector {
    UV,
    W,
}

/// Braid gates on one summand, written in its encoded basis.
#[derive(Clone, Debug, Serialize)]
pub struct BraidGates {
    pub sector: BraidSector,
    /// `sigma_1, sigma_2, sigma_3`.
    pub sigma: Vec<Matrix>,
    pub p: Matrix,
    pub q: Matrix,
    pub p2: Matrix,
    pub q2: Matrix,
    pub h_prime: Matrix,
}

impl BraidGates {
    /// Evaluates a four-strand braid word on this summand.
    pub fn word(&self, w: &BraidWord) -> Result<Matrix, QutritError> {
        Ok(crate::braid_engine::evaluate_ops(w, &self.sigma)?)
    }
}

/// `p = s1 s2 s1`, `q = s3 s2 s3` and `h' = q^2 p q^2` on `sector`.
pub fn braid_gates(sector: BraidSector) -> BraidGates {
    let vectors = match sector {
        BraidSector::UV => {
            let mut v = encoding_basis(EncodingName::U).vectors();
            v.extend(encoding_basis(EncodingName::V).vectors());
            v
        }
        BraidSector::W => encoding_basis(EncodingName::W).vectors(),
    };
    let sigma = restrict(qutrit_generators(), &vectors).expect("U+V and W are invariant");
    let p = sigma[0].mul(&sigma[1]).mul(&sigma[0]);
    let q = sigma[2].mul(&sigma[1]).mul(&sigma[2]);
    let p2 = p.mul(&p);
    let q2 = q.mul(&q);
    let h_prime = q2.mul(&p).mul(&q2);
    BraidGates { sector, sigma, p, q, p2, q2, h_prime }
}
