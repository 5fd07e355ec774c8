//! Named gate identities, each exact up to one global phase.

use serde::Serialize;

use super::{
    braid_gates, controlled_z, crlz, hadamard, phase_between, phase_gate, sum_from_crlz, sum_gate, z_gate, BraidSector,
    EncodingName, QutritError, TwoQutritSpace,
};
use crate::exact_arith::{cy, Cyclotomic, Matrix};

pub const GATE_CHECKS: [&str; 5] = ["pq", "hprime", "crlz", "sum", "w-gates"];

#[derive(Clone, Debug, Serialize)]
pub struct GateItem {
    pub what: String,
    /// The global phase `z^k` (`z = zeta_72`), for identities that hold up to one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateCheck {
    pub name: String,
    pub items: Vec<GateItem>,
    pub pass: bool,
}

/// `z^k` for a root of unity `zeta_72^k`.
pub fn phase_text(c: &Cyclotomic) -> String {
    match c.as_root_of_unity() {
        Some(0) => "1".into(),
        Some(k) => format!("z^{k}"),
        None => c.to_string(),
    }
}

fn with_phase(what: &str, phase: Option<Cyclotomic>) -> GateItem {
    GateItem { what: what.to_string(), pass: phase.is_some(), phase: phase.as_ref().map(phase_text) }
}

fn up_to_phase(what: &str, a: &Matrix, b: &Matrix) -> GateItem {
    with_phase(what, phase_between(a, b))
}

fn exact(what: &str, pass: bool) -> GateItem {
    GateItem { what: what.to_string(), phase: None, pass }
}

fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(2 * n, 2 * n, |r, k| match (r < n, k < n) {
        (true, true) => a[(r, k)].clone(),
        (true, false) => b[(r, k - n)].clone(),
        (false, true) => c[(r - n, k)].clone(),
        (false, false) => d[(r - n, k - n)].clone(),
    })
}

/// Runs the identities behind one of [`GATE_CHECKS`].
pub fn gate_check(name: &str) -> Result<GateCheck, QutritError> {
    let h = hadamard();
    let u = [0, 1, 2];
    let items = match name {
        "pq" => {
            let g = braid_gates(BraidSector::UV);
            let pqp = g.p2.mul(&g.q2).mul(&g.p2);
            vec![
                up_to_phase("p^2 q^2 p^2 = h^2 on U", &pqp.select(&u, &u), &h.pow(2)),
                exact("p^2 q^2 p^2 preserves U", pqp.select(&[3, 4, 5], &u).is_zero()),
            ]
        }
        "hprime" => {
            let g = braid_gates(BraidSector::UV);
            let hi = h.adjoint();
            let r2 = Cyclotomic::sqrt2();
            let expect = block2(&h, &hi.scale(&r2), &hi.scale(&r2), &h.neg()).scale(&cy("1/sqrt3"));
            vec![up_to_phase("h' block formula on U+V", &g.h_prime, &expect)]
        }
        "w-gates" => {
            let g = braid_gates(BraidSector::W);
            vec![
                up_to_phase("sigma1 = diag(1,1,w) on W", &g.sigma[0], &phase_gate()),
                up_to_phase("sigma3 = diag(1,w,1) on W", &g.sigma[2], &Matrix::diag(&["1", "w", "1"].map(cy))),
                up_to_phase("sigma3 sigma1^2 = Z on W", &g.sigma[2].mul(&g.sigma[0].pow(2)), &z_gate()),
                up_to_phase("h' = Hadamard on W", &g.h_prime, &h),
            ]
        }
        "crlz" => {
            let r = crlz(TwoQutritSpace::shared(), EncodingName::U)?;
            vec![
                exact("diagonal on U x U", r.diagonal),
                with_phase("restriction = controlled-Z", r.phase.clone()),
                exact("leakage = 0", r.leakage.is_zero() && r.inverse_leakage.is_zero()),
            ]
        }
        "sum" => {
            let r = sum_from_crlz(TwoQutritSpace::shared(), EncodingName::U)?;
            vec![
                up_to_phase("braided CZ, phase removed = CZ", &r.controlled_z, &controlled_z()),
                up_to_phase("(1 x h) CZ^-1 (1 x h^-1) = SUM", &r.sum, &sum_gate()),
            ]
        }
        other => return Err(QutritError::UnknownCheck(other.to_string())),
    };
    let pass = items.iter().all(|i| i.pass);
    Ok(GateCheck { name: name.to_string(), items, pass })
}
