//! Ancilla states and the eight-strand braid that couples an ancilla branch
//! to a work branch.

use std::sync::Arc;

use serde::Serialize;

use crate::anyon_model::{ds3_model, AnyonLabel};
use crate::braid_engine::BraidWord;
use crate::exact_arith::{inner, Cyclotomic, SparseMatrix};
use crate::fusion_space::{enumerate_basis, StateVector, TreeShape};
use crate::qutrit_models::{encoding_basis, hadamard, EncodingName, QutritError, TwoQutritSpace};

/// `|H>_z`: the four `D` anyons in two `H` pairs with total charge `z`.
pub fn ancilla_h(z: AnyonLabel) -> Result<StateVector, QutritError> {
    let b = Arc::new(enumerate_basis(ds3_model(), AnyonLabel::D, z, &TreeShape::paired4()));
    Ok(StateVector::from_terms(b, &[("HH", Cyclotomic::one())])?)
}

/// `|psi> = (|0> - |1> + |2>) / sqrt3`.
pub fn psi_state() -> Vec<Cyclotomic> {
    let s = Cyclotomic::sqrt3().inverse().expect("nonzero");
    vec![s.clone(), -&s, s]
}

/// `|~i> = h|i>`, the Fourier basis.
pub fn tilde(i: usize) -> Vec<Cyclotomic> {
    hadamard().column(i)
}

/// `P = σ6σ5σ4σ3 σ7σ6σ5σ4`: carries the work pair next to the ancilla.
pub fn braid_p_word() -> BraidWord {
    BraidWord::parse(8, "6 5 4 3 7 6 5 4").expect("valid word")
}

/// `Q = σ2σ1²σ2 σ6σ7²σ6`.
pub fn braid_q_word() -> BraidWord {
    BraidWord::parse(8, "2 1 1 2 6 7 7 6").expect("valid word")
}

/// `R = P^-1 Q P`.
pub fn braid_r_word() -> BraidWord {
    let p = braid_p_word();
    p.inverse().then(&braid_q_word()).then(&p)
}

pub fn braid_r(space: &TwoQutritSpace) -> Result<SparseMatrix, QutritError> {
    space.word(&braid_r_word())
}

/// How `R` acts on `|H>_A |i>_W` and on `|H>_B |i>_U`.
#[derive(Clone, Debug, Serialize)]
pub struct RFormulaReport {
    /// Amplitudes of `R|H>_A|i>_W` on `|H>_A|i>_W`, `|H>_B|i>_V`, `|H>_B|-i>_U`, per `i`.
    pub w_amplitudes: Vec<Vec<String>>,
    /// Amplitudes of `R|H>_B|i>_U` on `|H>_A|-i>_W`, `|H>_B|-i>_V`, per `i`.
    pub u_amplitudes: Vec<Vec<String>>,
    /// `c` with `R|H>_A|i>_W = c * (-|H>_A|i>_W + |H>_B|i>_V - sqrt2|H>_B|-i>_U)/2` for all `i`.
    #[serde(serialize_with = "ser_opt")]
    pub w_phase: Option<Cyclotomic>,
    /// `c` with `R|H>_B|i>_U = c * (|H>_A|-i>_W + |H>_B|-i>_V)/sqrt2` for all `i`.
    #[serde(serialize_with = "ser_opt")]
    pub u_phase: Option<Cyclotomic>,
    /// The listed components carry the whole norm.
    pub complete: bool,
}

fn ser_opt<S: serde::Serializer>(c: &Option<Cyclotomic>, s: S) -> Result<S::Ok, S::Error> {
    match c {
        Some(c) => s.serialize_some(&c.to_string()),
        None => s.serialize_none(),
    }
}

impl RFormulaReport {
    /// Both maps hold, each up to its own global phase.
    pub fn holds_up_to_phase(&self) -> bool {
        self.complete && self.w_phase.is_some() && self.u_phase.is_some()
    }

    /// Both maps hold with one common phase.
    pub fn holds_with_common_phase(&self) -> bool {
        self.holds_up_to_phase() && self.w_phase == self.u_phase
    }
}

/// Projects `R` onto the expected components and fits one phase per map.
pub fn r_formulas(space: &TwoQutritSpace) -> Result<RFormulaReport, QutritError> {
    let ha = ancilla_h(AnyonLabel::A)?;
    let hb = ancilla_h(AnyonLabel::B)?;
    let (u, v, w) = (encoding_basis(EncodingName::U), encoding_basis(EncodingName::V), encoding_basis(EncodingName::W));
    let r = braid_r(space)?;
    let half = Cyclotomic::from_rational(&crate::exact_arith::Rational::new(1, 2));
    let s2 = Cyclotomic::sqrt2();
    let rs2 = s2.inverse().expect("nonzero");
    let expect_w = [-&half, half.clone(), -&(&s2 * &half)];
    let expect_u = [rs2.clone(), rs2];

    let mut complete = true;
    let fit = |amps: &[Cyclotomic], expect: &[Cyclotomic], phase: &mut Option<Option<Cyclotomic>>| {
        let c = amps[0].try_div(&expect[0]).ok().filter(|c| c.as_root_of_unity().is_some());
        let ok = c.as_ref().is_some_and(|c| amps.iter().zip(expect).all(|(a, e)| *a == c * e));
        let c = if ok { c } else { None };
        *phase = Some(match phase.take() {
            None => c,
            Some(prev) => prev.filter(|p| Some(p) == c.as_ref()),
        });
    };
    let (mut wp, mut up) = (None, None);
    let (mut wa, mut ua) = (Vec::new(), Vec::new());
    for i in 0..3 {
        let mi = (3 - i) % 3;
        let x = space.product(&ha, &w.states[i])?;
        let y = r.mul_vec(x.amplitudes());
        let targets = [space.product(&ha, &w.states[i])?, space.product(&hb, &v.states[i])?, space.product(&hb, &u.states[mi])?];
        let amps: Vec<Cyclotomic> = targets.iter().map(|t| inner(t.amplitudes(), &y)).collect();
        complete &= amps.iter().fold(Cyclotomic::zero(), |acc, a| &acc + &a.norm_sq()).is_one();
        fit(&amps, &expect_w, &mut wp);
        wa.push(amps.iter().map(|a| a.to_string()).collect());

        let x = space.product(&hb, &u.states[i])?;
        let y = r.mul_vec(x.amplitudes());
        let targets = [space.product(&ha, &w.states[mi])?, space.product(&hb, &v.states[mi])?];
        let amps: Vec<Cyclotomic> = targets.iter().map(|t| inner(t.amplitudes(), &y)).collect();
        complete &= amps.iter().fold(Cyclotomic::zero(), |acc, a| &acc + &a.norm_sq()).is_one();
        fit(&amps, &expect_u, &mut up);
        ua.push(amps.iter().map(|a| a.to_string()).collect());
    }
    Ok(RFormulaReport {
        w_amplitudes: wa,
        u_amplitudes: ua,
        w_phase: wp.flatten(),
        u_phase: up.flatten(),
        complete,
    })
}
