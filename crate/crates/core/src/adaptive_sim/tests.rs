use proptest::prelude::*;

use super::*;
use crate::anyon_model::AnyonLabel;
use crate::exact_arith::{cy, Rational};
use crate::qutrit_models::{encoding_basis, flip2, hadamard, EncodingName, TwoQutritSpace};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn c(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

fn dist(tree: &BranchTree) -> BTreeMap<String, Rational> {
    tree.distribution_rational().unwrap()
}

fn expect(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn enc(e: EncodingName, coeffs: &[Cyclotomic]) -> Vec<Cyclotomic> {
    QutritOps::encoded(e, coeffs)
}

/// A generic qutrit: not an eigenvector of anything in sight.
fn generic() -> Vec<Cyclotomic> {
    vec![c(1), cy("2 + i"), c(-3)]
}

fn leaves_with<'a>(t: &'a BranchTree, label: &str) -> Vec<&'a BranchNode> {
    t.leaves().into_iter().filter(|l| l.terminal.as_deref() == Some(label)).collect()
}

#[test]
fn r_braid_formulas() {
    let rep = r_formulas(TwoQutritSpace::shared()).unwrap();
    assert!(rep.complete);
    assert!(rep.holds_up_to_phase());
    // Each map holds exactly up to a root of unity, but the two roots differ
    // by a sign, so no single phase fits both.
    assert_eq!(rep.w_phase, Some(Cyclotomic::omega().pow(2)));
    assert_eq!(rep.u_phase, Some(Cyclotomic::zeta(12)));
    assert!(!rep.holds_with_common_phase());
    assert_eq!(rep.w_amplitudes[1][0], "1/2*z^12");
}

#[test]
fn p_and_q_single_round() {
    let x = enc(EncodingName::U, &generic());
    let t = run_exact(&hadamard_via_p(1), &x).unwrap();
    assert!(t.is_consistent());
    assert_eq!(dist(&t), expect(&[("h", r(1, 3)), ("residual:U", r(4, 9)), ("residual:V", r(2, 9))]));
    let h = enc(EncodingName::U, &hadamard().mul_vec(&generic()));
    for l in t.leaves() {
        let want = match l.terminal.as_deref().unwrap() {
            "h" => h.clone(),
            "residual:U" => x.clone(),
            _ => enc(EncodingName::V, &generic()),
        };
        assert!(proportional(&l.state, &want), "{:?}", l.terminal);
    }

    let y = enc(EncodingName::V, &generic());
    let t = run_exact(&hadamard_via_q(1), &y).unwrap();
    assert_eq!(dist(&t), expect(&[("h", r(2, 3)), ("residual:U", r(2, 9)), ("residual:V", r(1, 9))]));
    for l in leaves_with(&t, "h") {
        assert!(proportional(&l.state, &h));
    }
}

#[test]
fn hadamard_chain_closed_form() {
    let x = enc(EncodingName::U, &generic());
    let h = enc(EncodingName::U, &hadamard().mul_vec(&generic()));
    for n in 1..=4 {
        let t = run_exact(&hadamard_via_p(n), &x).unwrap();
        let (label, p) = closed_form("P", n).unwrap();
        assert_eq!(t.probability(label), Cyclotomic::from_rational(&p), "n = {n}");
        assert!(leaves_with(&t, "h").iter().all(|l| proportional(&l.state, &h)));
    }
    // 1 - (2/3)(125/729) = 1 - 250/2187.
    assert_eq!(closed_form("P", 4).unwrap().1, r(1937, 2187));
}

#[test]
fn gamma_and_inverse() {
    let x = enc(EncodingName::U, &generic());
    let g = enc(EncodingName::V, &generic());
    let t = run_exact(&gamma_via_r(1), &x).unwrap();
    assert_eq!(dist(&t), expect(&[("gamma", r(4, 9)), ("residual:U", r(5, 9))]));
    for l in t.leaves() {
        let want = if l.terminal.as_deref() == Some("gamma") { &g } else { &x };
        assert!(proportional(&l.state, want));
    }
    let t = run_exact(&gamma_inv_via_r(1), &g).unwrap();
    assert_eq!(dist(&t), expect(&[("gamma_inv", r(4, 9)), ("residual:V", r(5, 9))]));

    // Forward then backward returns the input on every success path.
    let fwd = run_exact(&gamma_via_r(3), &x).unwrap();
    assert_eq!(fwd.probability("gamma"), Cyclotomic::from_rational(&(&Rational::one() - &r(125, 729))));
    for l in leaves_with(&fwd, "gamma") {
        let back = run_exact(&gamma_inv_via_r(3), &l.state).unwrap();
        for m in leaves_with(&back, "gamma_inv") {
            assert!(proportional(&m.state, &x));
        }
    }
}

fn two(a: AnyonLabel, e: EncodingName, i: usize) -> Vec<Cyclotomic> {
    let s = TwoQutritSpace::shared();
    s.product(&ancilla_h(a).unwrap(), &encoding_basis(e).states[i]).unwrap().into_amplitudes()
}

#[test]
fn s_and_t_procedures() {
    for i in 0..3 {
        let t = run_exact(&beta_via_s(1), &two(AnyonLabel::A, EncodingName::W, i)).unwrap();
        assert!(t.is_consistent());
        assert_eq!(dist(&t), expect(&[("beta", r(3, 4)), ("residual:S", r(1, 4))]));
        let want = two(AnyonLabel::B, EncodingName::U, i);
        assert_eq!(leaves_with(&t, "beta").len(), 2);
        for l in leaves_with(&t, "beta") {
            assert!(proportional(&l.state, &want), "i = {i}");
        }
        for l in leaves_with(&t, "residual:S") {
            assert!(proportional(&l.state, &two(AnyonLabel::A, EncodingName::W, i)));
        }

        let t = run_exact(&beta_inv_via_t(1), &two(AnyonLabel::B, EncodingName::U, i)).unwrap();
        assert_eq!(dist(&t), expect(&[("beta_inv", r(1, 2)), ("residual:T", r(1, 2))]));
        for l in leaves_with(&t, "beta_inv") {
            assert!(proportional(&l.state, &two(AnyonLabel::A, EncodingName::W, i)));
        }
        for l in leaves_with(&t, "residual:T") {
            assert!(proportional(&l.state, &two(AnyonLabel::B, EncodingName::U, i)));
        }
    }
    let t = run_exact(&beta_via_s(3), &two(AnyonLabel::A, EncodingName::W, 1)).unwrap();
    assert_eq!(t.probability("beta"), Cyclotomic::from_rational(&r(63, 64)));
}

#[test]
fn psi_preparation() {
    let t = run_exact(&psi_ancilla_prep(), &psi_prep_input()).unwrap();
    // (|0> + w|1>)(|0> + w^2|1>)/3 has weight 4/9; after SUM the h|0> part of
    // the first qutrit leaves (|0> - |1> + |2>)/(3 sqrt3) on the second.
    assert_eq!(dist(&t), expect(&[("fail", r(8, 9)), ("psi", r(1, 9))]));
    let want = Register::qutrits(2).product(&[tilde(0), psi_state()]);
    for l in leaves_with(&t, "psi") {
        assert!(proportional(&l.state, &want));
    }
}

#[test]
fn flip2_random_walk() {
    let reg = Register::qutrits(2);
    let phi = generic();
    let x = reg.product(&[phi.clone(), psi_state()]);
    let t = run_exact(&flip2_program(1), &x).unwrap();
    assert_eq!(dist(&t), expect(&[("flip2", r(1, 3)), ("residual:c1", r(1, 3)), ("residual:c2", r(1, 3))]));
    let want = reg.product(&[flip2().mul_vec(&phi), psi_state()]);
    let flip = |i: usize| {
        let mut v = phi.clone();
        v[i] = -&v[i];
        reg.product(&[v, psi_state()])
    };
    for l in t.leaves() {
        match l.terminal.as_deref().unwrap() {
            "flip2" => assert!(proportional(&l.state, &want)),
            "residual:c1" => assert!(proportional(&l.state, &flip(0))),
            _ => assert!(proportional(&l.state, &flip(1))),
        }
    }
    let t = run_exact(&flip2_program(6), &x).unwrap();
    assert!(t.is_consistent());
    assert!(leaves_with(&t, "flip2").iter().all(|l| proportional(&l.state, &want)));
    let p = t.probability("flip2").as_rational().unwrap();
    assert!(p > r(9, 10), "{p}");
}

#[test]
fn lambda2_from_flips() {
    let prog = lambda2_sigma_z();
    let reg = Register::qutrits(3);
    let ops: Vec<&Operand> = prog.nodes["flips"].steps.iter().map(|s| &s.op).collect();
    for q in 0..8usize {
        let d = [q >> 2 & 1, q >> 1 & 1, q & 1];
        let mut v = unit(27, reg.index(&d));
        for o in &ops {
            v = o.apply(&v);
        }
        let sign = if d == [1, 1, 1] { -1 } else { 1 };
        assert_eq!(v, scale_vec(&unit(27, reg.index(&d)), &c(sign)), "{d:?}");
    }
    let e = library_entry("lambda2", 1).unwrap();
    assert_eq!(dist(&run_exact(&e.program, &e.input).unwrap()), expect(&[("done", Rational::one())]));
}

#[test]
fn sigma_x_iteration() {
    let (a, b) = (cy("3/5"), cy("4/5"));
    let x = qubit_in_qutrit(&a, &b);
    for n in 1..=4 {
        let t = run_exact(&sigma_x_measurement(n), &x).unwrap();
        let want = &(&Rational::one() - &r(1, 9).pow(n as i32)) * &r(9, 25);
        assert_eq!(dist(&t)["plus"], want);
        assert_eq!(dist(&t)["residual:O"], &r(16, 25) + &(&r(9, 25) / &r(9, 1).pow(n as i32)));
        // The surviving state is alpha_n|+> + beta_n|-> with beta_n/alpha_n = 3^n beta/alpha.
        let rest = leaves_with(&t, "residual:O");
        assert_eq!(rest.len(), 1);
        let s = &rest[0].state;
        let k = c(3).pow(n as i64);
        assert!(proportional(s, &qubit_in_qutrit(&a, &(&k * &b))));
    }
    let rep = verify_alpha_recursion(&r(9, 25), 2);
    assert!(rep.agree);
    assert_eq!(rep.steps[1].alpha_sq, "1/145");
    assert!(verify_alpha_recursion(&r(1, 2), 6).agree);
    assert!(verify_alpha_recursion(&Rational::zero(), 3).agree);
}

#[test]
fn toffoli_rounds() {
    let e = library_entry("toffoli", 1).unwrap();
    let reg = Register::qubits(4);
    let toffoli = |v: &[Cyclotomic]| -> Vec<Cyclotomic> {
        (0..16)
            .map(|i| {
                let mut d = reg.digits(i);
                if d[0] == 1 && d[1] == 1 {
                    d[2] ^= 1;
                }
                v[reg.index(&d)].clone()
            })
            .collect()
    };
    let want = toffoli(&e.input);
    for n in 1..=5 {
        let t = run_exact(&toffoli_from_cz(n), &e.input).unwrap();
        assert!(t.is_consistent());
        let (_, p) = closed_form("toffoli", n).unwrap();
        assert_eq!(dist(&t)["toffoli"], p, "rounds = {n}");
        for l in leaves_with(&t, "toffoli") {
            assert!(proportional(&l.state, &want));
        }
    }
    assert_eq!(closed_form("toffoli", 5).unwrap().1, r(7, 8));
}

#[test]
fn library_is_valid() {
    for e in protocol_library(2).unwrap() {
        e.program.validate().unwrap();
        let t = run_exact(&e.program, &e.input).unwrap();
        assert!(t.is_consistent(), "{}", e.name);
        if let Some((label, p)) = &e.closed_form {
            assert_eq!(t.probability(label), Cyclotomic::from_rational(p), "{}", e.name);
        }
    }
    assert!(matches!(library_entry("nope", 1), Err(SimError::UnknownProtocol(_))));
}

#[test]
fn sampling_is_seeded() {
    let x = enc(EncodingName::U, &generic());
    let t = run_exact(&hadamard_via_p(1), &x).unwrap();
    let a = sample_tree(&t, 7, 20000);
    let b = run_sampled(&hadamard_via_p(1), &x, 7, 20000).unwrap();
    assert_eq!(a.counts, b.counts);
    assert_eq!(a.counts.values().sum::<u64>(), 20000);
    for (k, v) in t.distribution() {
        assert!(a.within(&k, v.to_complex().re, 4.0), "{k}: {}", a.frequency(&k));
    }
    assert_ne!(sample_tree(&t, 8, 20000).counts, a.counts);
    let e = library_entry("lambda2", 1).unwrap();
    let d = run_sampled(&e.program, &e.input, 1, 100).unwrap();
    assert_eq!(d.frequency("done"), 1.0);
    assert!(run_sampled(&e.program, &e.input, 1, 0).is_err());
}

#[test]
fn invalid_programs() {
    let m = MeasurementSpec::subspace("z", vec![unit(3, 0)]);
    let p = ProtocolProgram::new("bad", 3, "a", 1).node("a", Node::goto(vec![], "b"));
    assert!(p.validate().is_err());
    let p = ProtocolProgram::new("loop", 3, "a", 1)
        .node("a", Node::measure(vec![], m.clone(), &[("z", "a"), ("z-perp", "a")]));
    assert!(p.validate().is_err());
    assert!(p.clone().node("a", Node::measure(vec![], m.clone(), &[("z", "a"), ("z-perp", "a")]).into_round()).validate().is_ok());
    let half = MeasurementSpec { outcomes: m.outcomes[..1].to_vec(), ..m.clone() };
    let p = ProtocolProgram::new("half", 3, "a", 1).node("a", Node::measure(vec![], half, &[("z", "a")]).into_round());
    assert!(p.validate().is_err());
    let p = ProtocolProgram::new("size", 3, "a", 1).node("a", Node::new(vec![Step::dense("I", Matrix::identity(2))], Next::Terminal("x".into())));
    assert!(p.validate().is_err());
    assert!(matches!(run_exact(&p.clone().node("a", Node::terminal("x")), &[c(0), c(0), c(0)]), Err(SimError::ZeroNorm)));
    assert!(matches!(measure(&[c(0)], &m), Err(SimError::ZeroNorm)));
}

fn fourier(n: usize) -> Vec<Vec<Cyclotomic>> {
    (0..3).map(|k| hadamard().column(k)).take(n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projectors_are_complete(mask in 1u8..7, fourier_basis in any::<bool>()) {
        let vs: Vec<Vec<Cyclotomic>> = if fourier_basis {
            fourier(3).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect()
        } else {
            (0..3).filter(|i| mask >> i & 1 == 1).map(|i| unit(3, i)).collect()
        };
        let m = MeasurementSpec::subspace("s", vs);
        prop_assert!(m.is_complete(3));
        let set: BTreeSet<usize> = (0..9).filter(|i| mask >> (i % 3) & 1 == 1).collect();
        prop_assert!(MeasurementSpec::coordinate_subspace("d", set, 9).is_complete(9));
    }

    #[test]
    fn measurement_probabilities_sum_to_one(a in -4i64..5, b in -4i64..5, k in -4i64..5, mask in 1u8..7) {
        prop_assume!(a != 0 || b != 0 || k != 0);
        let v = vec![c(a), &c(b) * &Cyclotomic::omega(), &c(k) * &Cyclotomic::i()];
        let vs = fourier(3).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect();
        let outs = measure(&v, &MeasurementSpec::subspace("s", vs)).unwrap();
        let total = outs.iter().fold(Cyclotomic::zero(), |acc, o| &acc + &o.probability);
        prop_assert!(total.is_one());
        for o in &outs {
            prop_assert!(o.probability.is_real());
            if let Some(s) = &o.post_state {
                prop_assert!(norm_sq(s).is_one());
            }
        }
    }
}

#[test]
fn measurement_examples() {
    // First pair of |AG> is in the vacuum channel.
    let b = crate::qutrit_models::qutrit_basis();
    let spec = MeasurementSpec::charge_a(&b, (0, 2)).unwrap();
    let u1 = enc(EncodingName::U, &[c(0), c(1), c(0)]);
    let outs = measure(&u1, &spec).unwrap();
    assert_eq!(outs.len(), 1);
    assert_eq!((outs[0].label.as_str(), outs[0].probability.clone()), ("A", Cyclotomic::one()));
    assert!(spec.is_complete(9));

    let in_u = &QutritOps::shared().in_u;
    let outs = measure(&enc(EncodingName::V, &[c(1), c(0), c(0)]), in_u).unwrap();
    assert_eq!(outs.len(), 1);
    assert_eq!(outs[0].label, "U-perp");

    let hx = QutritOps::shared().h_prime.mul_vec(&u1);
    let outs = measure(&hx, in_u).unwrap();
    assert_eq!(outs[0].probability, cy("1/3"));
    assert_eq!(outs[1].probability, cy("2/3"));
    assert!(outs.iter().all(|o| o.post_state.as_ref().is_some_and(|s| norm_sq(s).is_one())));

    let reg = Register::qutrits(2);
    let z = MeasurementSpec::computational_zero(&reg, 1);
    assert!(z.is_complete(9));
    let outs = measure(&reg.product(&[unit(3, 2), tilde(0)]), &z).unwrap();
    assert_eq!(outs[0].probability, cy("1/3"));
}

#[test]
fn register_helpers() {
    let reg = Register::new(vec![2, 3]);
    assert_eq!(reg.dim(), 6);
    assert_eq!(reg.digits(5), vec![1, 2]);
    assert_eq!(reg.index(&[1, 2]), 5);
    let x = Matrix::permutation(&[1, 0]);
    let lx = reg.local(&x, &[0]);
    assert_eq!(lx.mul_vec(&unit(6, 1)), unit(6, 4));
    let span = reg.site_span(1, &[unit(3, 2)]);
    assert_eq!(span, vec![unit(6, 2), unit(6, 5)]);
}
