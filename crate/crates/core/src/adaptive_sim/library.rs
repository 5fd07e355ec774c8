//! The protocols built from braids and measurements: adaptive qutrit gates on
//! one and two encoded qutrits, and the qubit constructions that reach a
//! universal gate set.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use super::ancilla::{ancilla_h, braid_r, psi_state, tilde};
use super::register::{unit, Register};
use super::{MeasurementSpec, Node, ProtocolProgram, SimError, Step};
use crate::anyon_model::AnyonLabel;
use crate::braid_engine::BraidWord;
use crate::exact_arith::{Cyclotomic, Matrix, Rational, SparseMatrix};
use crate::qutrit_models::{encoding_basis, flip2, qutrit_basis, qutrit_generators, sum_gate, EncodingName, TwoQutritSpace};

fn end(l: &str) -> String {
    ProtocolProgram::end(l)
}

/// Gates and measurements on one qutrit in `V_G^{DDDD}` (9-dim, printed order).
#[derive(Clone, Debug)]
pub struct QutritOps {
    /// `h' = q^2 p q^2` and its inverse.
    pub h_prime: Matrix,
    pub h_prime_inv: Matrix,
    /// `p^2 q^2 p^2`, which is `h^2` on `U` and `V`.
    pub pqp: Matrix,
    /// `|j>_U <-> |j>_V`, identity on `W`.
    pub gamma: Matrix,
    pub in_u: MeasurementSpec,
}

impl QutritOps {
    pub fn shared() -> &'static QutritOps {
        static OPS: OnceLock<QutritOps> = OnceLock::new();
        OPS.get_or_init(|| {
            let s = qutrit_generators();
            let p = s[0].mul(&s[1]).mul(&s[0]);
            let q = s[2].mul(&s[1]).mul(&s[2]);
            let (p2, q2) = (p.mul(&p), q.mul(&q));
            let h_prime = q2.mul(&p).mul(&q2);
            let u = encoding_basis(EncodingName::U).vectors();
            let v = encoding_basis(EncodingName::V).vectors();
            let w = encoding_basis(EncodingName::W).vectors();
            let outer = |a: &[Cyclotomic], b: &[Cyclotomic]| Matrix::from_fn(9, 9, |r, c| &a[r] * &b[c].conj());
            let mut gamma = Matrix::zeros(9, 9);
            for j in 0..3 {
                gamma = gamma.add(&outer(&v[j], &u[j])).add(&outer(&u[j], &v[j])).add(&outer(&w[j], &w[j]));
            }
            QutritOps {
                h_prime_inv: h_prime.adjoint(),
                h_prime,
                pqp: p2.mul(&q2).mul(&p2),
                gamma,
                in_u: MeasurementSpec::subspace("U", u),
            }
        })
    }

    /// `|j>` in encoding `e`, as a 9-dim vector.
    pub fn encoded(e: EncodingName, coeffs: &[Cyclotomic]) -> Vec<Cyclotomic> {
        encoding_basis(e).embed(coeffs).into_amplitudes()
    }
}

/// Gates and measurements on the eight-anyon space (729-dim): branch 0 is the
/// ancilla, branch 1 the work qutrit.
#[derive(Clone, Debug)]
pub struct SpaceOps {
    pub r: SparseMatrix,
    /// `p^2 q^2 p^2` braided on strands 5 to 8.
    pub pqp_work: SparseMatrix,
    /// `gamma` on the work branch where its charge is `G`.
    pub gamma_work: SparseMatrix,
    /// Is the ancilla pair (strands 1 to 4) in charge `A`?
    pub ancilla_a: MeasurementSpec,
    /// Is the work branch in `U`?
    pub work_in_u: MeasurementSpec,
}

impl SpaceOps {
    pub fn shared() -> &'static SpaceOps {
        static OPS: OnceLock<SpaceOps> = OnceLock::new();
        OPS.get_or_init(|| SpaceOps::new(TwoQutritSpace::shared()).expect("built-in eight-anyon space"))
    }

    pub fn new(space: &TwoQutritSpace) -> Result<Self, SimError> {
        let basis = space.basis();
        let pqp_work = space.word(&BraidWord::parse(8, "5 6 5 5 6 5 7 6 7 7 6 7 5 6 5 5 6 5").expect("valid word"))?;
        let gamma_work = space.lift(1, &qutrit_basis(), &QutritOps::shared().gamma)?;
        let u: Vec<Vec<AnyonLabel>> =
            ["GGG", "AGG", "GAG"].iter().map(|w| AnyonLabel::parse_word(w).expect("labels")).collect();
        let in_u: BTreeSet<usize> = (0..basis.dim()).filter(|&i| u.iter().any(|w| basis.labeling(i)[3..] == w[..])).collect();
        Ok(SpaceOps {
            r: braid_r(space)?,
            pqp_work,
            gamma_work,
            ancilla_a: MeasurementSpec::charge_a(basis, (0, 4))?,
            work_in_u: MeasurementSpec::coordinate_subspace("U", in_u, basis.dim()),
        })
    }
}

/// Hadamard on `U` by alternating the two single-qutrit procedures. Starting
/// from `U` the first round is the `U` procedure; from `V`, the `V` one.
fn hadamard_program(name: &str, start: &str, rounds: usize) -> ProtocolProgram {
    let o = QutritOps::shared();
    let hp = || Step::dense("h'", o.h_prime.clone());
    let hpi = || Step::dense("h'^-1", o.h_prime_inv.clone());
    let fix = || Step::dense("p2q2p2", o.pqp.clone());
    let m = || o.in_u.clone();
    let h = end("h");
    ProtocolProgram::new(name, 9, start, rounds)
        .node("U", Node::measure(vec![hp()], m(), &[("U", &h), ("U-perp", "U.2")]).into_round())
        .node("U.2", Node::measure(vec![hp()], m(), &[("U", "U.fix"), ("U-perp", "V")]))
        .node("U.fix", Node::goto(vec![fix()], "U"))
        .node("V", Node::measure(vec![hpi()], m(), &[("U", &h), ("U-perp", "V.2")]).into_round())
        .node("V.2", Node::measure(vec![hpi()], m(), &[("U", "U"), ("U-perp", "V.fix")]))
        .node("V.fix", Node::goto(vec![fix()], "V"))
        .with_terminals(&["h"])
}

/// `|j>_U -> h|j>_U`. One round leaves `residual:U` (4/9, input restored) or
/// `residual:V` (2/9, moved to `|j>_V`).
pub fn hadamard_via_p(rounds: usize) -> ProtocolProgram {
    hadamard_program("hadamard_via_P", "U", rounds)
}

/// `|j>_V -> h|j>_U`.
pub fn hadamard_via_q(rounds: usize) -> ProtocolProgram {
    hadamard_program("hadamard_via_Q", "V", rounds)
}

/// `|j>_U -> |j>_V`.
pub fn gamma_via_r(rounds: usize) -> ProtocolProgram {
    let o = QutritOps::shared();
    let m = || o.in_u.clone();
    ProtocolProgram::new("gamma_via_R", 9, "U", rounds)
        .node("U", Node::measure(vec![Step::dense("h'", o.h_prime.clone())], m(), &[("U", "a"), ("U-perp", "b")]).into_round())
        .node("a", Node::measure(vec![Step::dense("h'^-1", o.h_prime_inv.clone())], m(), &[("U", "U"), ("U-perp", "fix")]))
        .node("b", Node::measure(vec![Step::dense("h'^-1", o.h_prime_inv.clone())], m(), &[("U", "U"), ("U-perp", "fix")]))
        .node("fix", Node::new(vec![Step::dense("p2q2p2", o.pqp.clone())], super::Next::Terminal("gamma".into())))
}

/// `|j>_V -> |j>_U`, the same moves started from `V`.
pub fn gamma_inv_via_r(rounds: usize) -> ProtocolProgram {
    let o = QutritOps::shared();
    let m = || o.in_u.clone();
    ProtocolProgram::new("gamma_inv_via_R", 9, "V", rounds)
        .node("V", Node::measure(vec![Step::dense("h'", o.h_prime.clone())], m(), &[("U", "a"), ("U-perp", "b")]).into_round())
        .node("a", Node::measure(vec![Step::dense("h'^-1", o.h_prime_inv.clone())], m(), &[("U", "fix"), ("U-perp", "V")]))
        .node("b", Node::measure(vec![Step::dense("h'^-1", o.h_prime_inv.clone())], m(), &[("U", "fix"), ("U-perp", "V")]))
        .node("fix", Node::new(vec![Step::dense("p2q2p2", o.pqp.clone())], super::Next::Terminal("gamma_inv".into())))
}

/// `|H>_A |i>_W -> |H>_B |i>_U` using the braid `R` and two measurements.
pub fn beta_via_s(rounds: usize) -> ProtocolProgram {
    let o = SpaceOps::shared();
    ProtocolProgram::new("beta_via_S", 729, "S", rounds)
        .node("S", Node::measure(vec![Step::sparse("R", o.r.clone())], o.ancilla_a.clone(), &[("A", "S"), ("not A", "S.2")]).into_round())
        .node("S.2", Node::measure(vec![], o.work_in_u.clone(), &[("U", "S.u"), ("U-perp", "S.v")]))
        .node("S.u", Node::new(vec![Step::sparse("1 x p2q2p2", o.pqp_work.clone())], super::Next::Terminal("beta".into())))
        .node("S.v", Node::new(vec![Step::sparse("1 x gamma^-1", o.gamma_work.clone())], super::Next::Terminal("beta".into())))
}

/// `|H>_B |i>_U -> |H>_A |i>_W`.
pub fn beta_inv_via_t(rounds: usize) -> ProtocolProgram {
    let o = SpaceOps::shared();
    ProtocolProgram::new("beta_inv_via_T", 729, "T", rounds)
        .node("T", Node::measure(vec![Step::sparse("R", o.r.clone())], o.ancilla_a.clone(), &[("A", "T.a"), ("not A", "T.b")]).into_round())
        .node("T.a", Node::new(vec![Step::sparse("1 x p2q2p2", o.pqp_work.clone())], super::Next::Terminal("beta_inv".into())))
        .node(
            "T.b",
            Node::goto(vec![Step::sparse("1 x p2q2p2", o.pqp_work.clone()), Step::sparse("1 x gamma^-1", o.gamma_work.clone())], "T"),
        )
}

/// `|psi>` from `h|1> h|2>`: keep both qutrits in `span{|0>,|1>}`, apply SUM,
/// then keep the first qutrit in `span{h|0>}`.
pub fn psi_ancilla_prep() -> ProtocolProgram {
    let reg = Register::qutrits(2);
    let low = |site| MeasurementSpec::subspace("low", reg.site_span(site, &[unit(3, 0), unit(3, 1)]));
    let plus = MeasurementSpec::subspace("h0", reg.site_span(0, &[tilde(0)]));
    let (psi, fail) = (end("psi"), end("fail"));
    ProtocolProgram::new("psi_ancilla_prep", 9, "start", 1)
        .node("start", Node::measure(vec![], low(0), &[("low", "second"), ("low-perp", &fail)]))
        .node("second", Node::measure(vec![], low(1), &[("low", "sum"), ("low-perp", &fail)]))
        .node("sum", Node::measure(vec![Step::dense("SUM", sum_gate())], plus, &[("h0", &psi), ("h0-perp", &fail)]))
        .with_terminals(&["psi", "fail"])
}

/// The input `h|1> h|2>` of [`psi_ancilla_prep`].
pub fn psi_prep_input() -> Vec<Cyclotomic> {
    Register::qutrits(2).product(&[tilde(1), tilde(2)])
}

/// FLIP2 on qutrit 0 with the ancilla `|psi>` on qutrit 1. Each round applies
/// SUM, reads the ancilla and resets it to `|psi>`; the sign pattern does a
/// random walk until it equals FLIP2 up to an overall sign.
pub fn flip2_program(rounds: usize) -> ProtocolProgram {
    let reg = Register::qutrits(2);
    let psi = psi_state();
    let sum = Step::dense("SUM", reg.local(&sum_gate(), &[0, 1]));
    let reset = |k: usize| {
        let m = Matrix::from_fn(3, 3, |r, c| if c == k { psi[r].clone() } else { Cyclotomic::zero() });
        Step::dense(&format!("reset{k}"), reg.local(&m, &[1]))
    };
    // Sign classes: bit i set means the sign of |i> is flipped, modulo an
    // overall sign. Outcome k flips |k+2 mod 3>.
    let canon = |m: u8| m.min(m ^ 7);
    let target = canon(1 << 2);
    let mut prog = ProtocolProgram::new("flip2", 9, "c0", rounds).with_terminals(&["flip2"]);
    for c in [0u8, 1, 2, 3].into_iter().filter(|&c| c != target) {
        let node = format!("c{c}");
        let outs: Vec<(String, String)> = (0..3).map(|k| (k.to_string(), format!("c{c}.{k}"))).collect();
        let routes: Vec<(&str, &str)> = outs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        prog = prog.node(&node, Node::measure(vec![sum.clone()], MeasurementSpec::standard_basis(&reg, 1), &routes).into_round());
        for k in 0..3usize {
            let n = canon(c ^ (1 << ((k + 2) % 3)));
            let to = if n == target { end("flip2") } else { format!("c{n}") };
            prog = prog.node(&format!("c{c}.{k}"), Node::goto(vec![reset(k)], &to));
        }
    }
    prog
}

/// Flips the sign of `|i,j>` (or `|i,j,k>`) when the listed digits sum to 2 mod 3.
fn flip_if_sum(reg: &Register, sites: &[usize]) -> Matrix {
    let (&last, rest) = sites.split_last().expect("at least one site");
    let sum = |a: usize| reg.local(&sum_gate(), &[a, last]);
    let mut m = Matrix::identity(reg.dim());
    for &a in rest {
        m = sum(a).mul(&m);
    }
    m = reg.local(&flip2(), &[last]).mul(&m);
    for &a in rest.iter().rev() {
        m = sum(a).adjoint().mul(&m);
    }
    m
}

/// `Λ²(σz)` on qubits carried by three qutrits, from four sign flips.
pub fn lambda2_sigma_z() -> ProtocolProgram {
    let reg = Register::qutrits(3);
    ProtocolProgram::new("lambda2_sigma_z", 27, "flips", 1)
        .node(
            "flips",
            Node::new(
                vec![
                    Step::dense("flip i+j+k", flip_if_sum(&reg, &[0, 1, 2])),
                    Step::dense("flip i+j", flip_if_sum(&reg, &[0, 1])),
                    Step::dense("flip i+k", flip_if_sum(&reg, &[0, 2])),
                    Step::dense("flip j+k", flip_if_sum(&reg, &[1, 2])),
                ],
                super::Next::Terminal("done".into()),
            ),
        )
}

/// `σx` measurement on a qubit held in a qutrit. A round projects onto
/// `span{h|0>}`, then onto `span{|0>,|1>}`; either rejection reads `+`.
/// Running out of rounds reads `-` (label `residual:O`).
pub fn sigma_x_measurement(rounds: usize) -> ProtocolProgram {
    let plus = end("plus");
    ProtocolProgram::new("sigma_x_measurement", 3, "O", rounds)
        .node("O", Node::measure(vec![], MeasurementSpec::subspace("h0", vec![tilde(0)]), &[("h0", &plus), ("h0-perp", "O.2")]).into_round())
        .node("O.2", Node::measure(vec![], MeasurementSpec::subspace("low", vec![unit(3, 0), unit(3, 1)]), &[("low", "O"), ("low-perp", &plus)]))
        .with_terminals(&["plus"])
}

/// `α|+> + β|->` as a qutrit vector.
pub fn qubit_in_qutrit(alpha: &Cyclotomic, beta: &Cyclotomic) -> Vec<Cyclotomic> {
    let r = Cyclotomic::sqrt2().inverse().expect("nonzero");
    vec![&(alpha + beta) * &r, &(alpha - beta) * &r, Cyclotomic::zero()]
}

fn pm(sign: i64) -> Vec<Cyclotomic> {
    let r = Cyclotomic::sqrt2().inverse().expect("nonzero");
    vec![r.clone(), r.scale_int(sign)]
}

/// Toffoli on qubits 0, 1, 2 from `Λ²(σz)`, `Λ(σz)`, `σz` and `σx`
/// measurements, with qubit 3 an ancilla in `|+>`. A round yields `T` or
/// `(σx)_2 T`; the accumulated gate `(σx)_2^a T^b` walks until it is `T`.
pub fn toffoli_from_cz(rounds: usize) -> ProtocolProgram {
    let reg = Register::qubits(4);
    let one = Cyclotomic::one();
    let m1 = -&one;
    let z = Matrix::diag(&[one.clone(), m1.clone()]);
    let cz = Matrix::diag(&[one.clone(), one.clone(), one.clone(), m1.clone()]);
    let ccz = Matrix::diag(&(0..8).map(|i| if i == 7 { m1.clone() } else { one.clone() }).collect::<Vec<_>>());
    let cz_23 = Step::dense("Λ(σz)_34", reg.local(&cz, &[2, 3]));
    let ccz_013 = Step::dense("Λ²(σz)_124", reg.local(&ccz, &[0, 1, 3]));
    let z_at = |s: usize| Step::dense(&format!("(σz)_{}", s + 1), reg.local(&z, &[s]));
    let cz_01 = Step::dense("Λ(σz)_12", reg.local(&cz, &[0, 1]));
    let x_meas = |s: usize| MeasurementSpec::subspace(&format!("+{s}"), reg.site_span(s, &[pm(1)]));

    let mut prog = ProtocolProgram::new("toffoli_from_cz", 16, "c00", rounds).with_terminals(&["toffoli"]);
    for (a, b) in [(0u8, 0u8), (1, 1), (1, 0)] {
        let c = format!("c{a}{b}");
        let p2 = format!("+{}", 2);
        let p3 = format!("+{}", 3);
        let node = |s: &str| format!("{c}.{s}");
        prog = prog.node(
            &c,
            Node::measure(vec![cz_23.clone()], x_meas(2), &[(&p2, &node("+")), (&format!("{p2}-perp"), &node("-"))]).into_round(),
        );
        for f in ["+", "-"] {
            let mut steps = if f == "-" { vec![z_at(2)] } else { vec![] };
            steps.push(ccz_013.clone());
            steps.push(cz_23.clone());
            prog = prog.node(&node(f), Node::measure(steps, x_meas(3), &[(&p3, &node(&format!("{f}+"))), (&format!("{p3}-perp"), &node(&format!("{f}-")))]));
            for g in ["+", "-"] {
                let mut steps = if g == "-" { vec![z_at(3)] } else { vec![] };
                if f == "-" {
                    steps.push(z_at(2));
                    steps.push(cz_01.clone());
                }
                let (na, nb) = if g == "+" { (a, b ^ 1) } else { (a ^ 1, b ^ 1) };
                let to = if (na, nb) == (0, 1) { end("toffoli") } else { format!("c{na}{nb}") };
                prog = prog.node(&node(&format!("{f}{g}")), Node::goto(steps, &to));
            }
        }
    }
    prog
}

/// Exact success probability of a library protocol after `rounds` rounds,
/// with the success label, where a closed form is known.
pub fn closed_form(name: &str, rounds: usize) -> Option<(&'static str, Rational)> {
    let r = |n, d| Rational::new(n, d);
    let one = Rational::one();
    let n = rounds as i32;
    if rounds == 0 {
        return None;
    }
    Some(match canonical_name(name)? {
        "P" => ("h", &one - &(&r(2, 3) * &r(5, 9).pow(n - 1))),
        "R" | "R_inv" => (if canonical_name(name)? == "R" { "gamma" } else { "gamma_inv" }, &one - &r(5, 9).pow(n)),
        "S" => ("beta", &one - &r(1, 4).pow(n)),
        "T" => ("beta_inv", &one - &r(1, 2).pow(n)),
        "O" => ("plus", &(&one - &r(1, 9).pow(n)) * &r(9, 25)),
        "toffoli" => ("toffoli", &one - &r(1, 2).pow((n + 1) / 2)),
        "psi_prep" => ("psi", r(1, 9)),
        "lambda2" => ("done", one),
        _ => return None,
    })
}

pub const LIBRARY_NAMES: [&str; 11] = ["P", "Q", "R", "R_inv", "S", "T", "O", "flip2", "psi_prep", "lambda2", "toffoli"];

fn canonical_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "P" | "hadamard_via_P" => "P",
        "Q" | "hadamard_via_Q" => "Q",
        "R" | "gamma_via_R" => "R",
        "R_inv" | "gamma_inv_via_R" => "R_inv",
        "S" | "beta_via_S" => "S",
        "T" | "beta_inv_via_T" => "T",
        "O" | "sigma_x_measurement" => "O",
        "flip2" | "FLIP2" => "flip2",
        "psi_prep" | "psi_ancilla_prep" => "psi_prep",
        "lambda2" | "lambda2_sigma_z" => "lambda2",
        "toffoli" | "toffoli_from_cz" => "toffoli",
        _ => return None,
    })
}

/// A protocol with a default input.
#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub name: &'static str,
    pub program: ProtocolProgram,
    pub input: Vec<Cyclotomic>,
    /// Success label and its exact probability, where known in closed form.
    pub closed_form: Option<(&'static str, Rational)>,
}

/// Looks up a protocol by short or long name.
pub fn library_entry(name: &str, rounds: usize) -> Result<LibraryEntry, SimError> {
    let key = canonical_name(name).ok_or_else(|| SimError::UnknownProtocol(name.to_string()))?;
    let c = |n: i64| Cyclotomic::from_int(n);
    let j1 = [c(0), c(1), c(0)];
    let (program, input) = match key {
        "P" => (hadamard_via_p(rounds), QutritOps::encoded(EncodingName::U, &j1)),
        "Q" => (hadamard_via_q(rounds), QutritOps::encoded(EncodingName::V, &j1)),
        "R" => (gamma_via_r(rounds), QutritOps::encoded(EncodingName::U, &j1)),
        "R_inv" => (gamma_inv_via_r(rounds), QutritOps::encoded(EncodingName::V, &j1)),
        "S" => {
            let s = TwoQutritSpace::shared();
            let x = s.product(&ancilla_h(AnyonLabel::A)?, &encoding_basis(EncodingName::W).states[1])?;
            (beta_via_s(rounds), x.into_amplitudes())
        }
        "T" => {
            let s = TwoQutritSpace::shared();
            let x = s.product(&ancilla_h(AnyonLabel::B)?, &encoding_basis(EncodingName::U).states[1])?;
            (beta_inv_via_t(rounds), x.into_amplitudes())
        }
        "O" => (sigma_x_measurement(rounds), qubit_in_qutrit(&Cyclotomic::from_rational(&Rational::new(3, 5)), &Cyclotomic::from_rational(&Rational::new(4, 5)))),
        "flip2" => {
            let reg = Register::qutrits(2);
            (flip2_program(rounds), reg.product(&[vec![c(1), c(2), c(3)], psi_state()]))
        }
        "psi_prep" => (psi_ancilla_prep(), psi_prep_input()),
        "lambda2" => {
            let reg = Register::qutrits(3);
            let q = vec![c(1), c(1), c(0)];
            (lambda2_sigma_z(), reg.product(&[q.clone(), q.clone(), q]))
        }
        "toffoli" => {
            let reg = Register::qubits(4);
            let plus = pm(1);
            (toffoli_from_cz(rounds), reg.product(&[vec![c(1), c(2)], vec![c(1), c(3)], vec![c(2), c(1)], plus]))
        }
        _ => unreachable!(),
    };
    Ok(LibraryEntry { name: key, program, input, closed_form: closed_form(key, rounds) })
}

/// Every library protocol with its default input.
pub fn protocol_library(rounds: usize) -> Result<Vec<LibraryEntry>, SimError> {
    LIBRARY_NAMES.iter().map(|n| library_entry(n, rounds)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaStep {
    pub n: usize,
    /// `|α_n|^2` from the one-step recursion and from the closed form.
    pub alpha_sq: String,
    pub alpha_sq_closed: String,
    /// `b_1 ... b_n` from the recursion and from the closed form.
    pub stay: String,
    pub stay_closed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub steps: Vec<AlphaStep>,
    pub agree: bool,
}

/// Iterates `|α_n|^2 = |α_{n-1}|^2 / (9 - 8|α_{n-1}|^2)` and
/// `b_n = 1 - 8|α_{n-1}|^2/9` exactly and compares with the closed forms
/// `|α|^2 / ((1-|α|^2) 9^n + |α|^2)` and `|β|^2 + |α|^2/9^n`. Also checks
/// `b_n = |α_{n-1}|^2 / (9|α_n|^2)` where `α_n` is nonzero.
pub fn verify_alpha_recursion(alpha_sq: &Rational, n: usize) -> AlphaReport {
    let one = Rational::one();
    let nine = Rational::from_int(9);
    let eight = Rational::from_int(8);
    let beta_sq = &one - alpha_sq;
    let (mut a, mut prod) = (alpha_sq.clone(), one.clone());
    let mut agree = true;
    let mut steps = Vec::with_capacity(n);
    for k in 1..=n {
        let b = &one - &(&(&eight * &a) / &nine);
        let next = &a / &(&nine - &(&eight * &a));
        if !next.is_zero() {
            agree &= b == &a / &(&nine * &next);
        }
        prod = &prod * &b;
        a = next;
        let p9 = nine.pow(k as i32);
        let closed = alpha_sq / &(&(&beta_sq * &p9) + alpha_sq);
        let stay_closed = &beta_sq + &(alpha_sq / &p9);
        agree &= closed == a && stay_closed == prod;
        steps.push(AlphaStep {
            n: k,
            alpha_sq: a.to_string(),
            alpha_sq_closed: closed.to_string(),
            stay: prod.to_string(),
            stay_closed: stay_closed.to_string(),
        });
    }
    AlphaReport { steps, agree }
}
