//! Fusion-tree Hilbert spaces on arbitrary binary splitting trees, F-moves
//! between shapes, and exact state vectors.

mod basis;
mod shape;
mod state;

pub use basis::{dim, enumerate_basis, printed_order, BasisJson, BasisOrder, FusionBasis, PRINTED_SPACES};
pub use shape::{Assoc, FMove, TreeShape};
pub use state::{change_of_basis, f_move, inner_product, move_matrix, StateVector};

use crate::anyon_model::ModelError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error("malformed tree shape `{0}`")]
    MalformedShape(String),
    #[error("F-move not available: {0}")]
    BadMove(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("basis order: {0}")]
    Order(String),
    #[error("states live on different bases")]
    BasisMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::anyon_model::label::word;
    use crate::anyon_model::{ds3_model, AnyonLabel as L};
    use crate::exact_arith::{cy, Cyclotomic};

    fn words(b: &FusionBasis) -> Vec<String> {
        b.labelings().iter().map(|l| word(l)).collect()
    }

    /// Every rooted binary tree with `n` leaves.
    fn all_shapes(n: usize) -> Vec<TreeShape> {
        if n == 1 {
            return vec![TreeShape::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in all_shapes(k) {
                for r in all_shapes(n - k) {
                    out.push(TreeShape::join(l.clone(), r));
                }
            }
        }
        out
    }

    #[test]
    fn dimensions() {
        let m = ds3_model();
        assert_eq!(dim(m, L::D, L::G, 4), 9);
        assert_eq!(dim(m, L::D, L::B, 4), 4);
        for &x in m.labels() {
            assert_eq!(dim(m, x, x, 1), 1);
        }
        let printed = [3, 3, 5, 5, 4, 9, 9, 9, 9, 3, 3, 5];
        for (&(a, z), &d) in PRINTED_SPACES.iter().zip(&printed) {
            assert_eq!(dim(m, a, z, 4), d, "({a},{z})");
        }
    }

    #[test]
    fn dimension_is_shape_independent() {
        let m = ds3_model();
        for n in 1..=5 {
            for shape in all_shapes(n) {
                for &x in m.labels() {
                    for &z in m.labels() {
                        assert_eq!(enumerate_basis(m, x, z, &shape).dim() as u128, dim(m, x, z, n), "{shape} {x} {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_and_printed_orders() {
        let m = ds3_model();
        let p = TreeShape::paired4();
        assert_eq!(words(&enumerate_basis(m, L::C, L::A, &p)), ["AA", "BB", "CC"]);
        let db = enumerate_basis(m, L::D, L::B, &p);
        assert_eq!(words(&db), ["GG", "FF", "CC", "HH"]);
        let dg = enumerate_basis(m, L::D, L::G, &p).with_printed_order(BasisOrder::Summary).unwrap();
        assert_eq!(words(&dg), ["GG", "AG", "GA", "FC", "CF", "FH", "HF", "CH", "HC"]);
        for &(a, z) in &PRINTED_SPACES {
            let b = enumerate_basis(m, a, z, &p);
            for order in [BasisOrder::Summary, BasisOrder::Generators] {
                let r = b.with_printed_order(order).unwrap();
                assert_eq!(r.order(), order);
                assert_eq!(r.dim(), b.dim());
            }
        }
        let da = enumerate_basis(m, L::D, L::A, &p).with_printed_order(BasisOrder::Generators).unwrap();
        assert_eq!(words(&da), ["AA", "GG", "FF", "CC", "HH"]);
        assert!(enumerate_basis(m, L::D, L::D, &p).is_empty());
        assert!(enumerate_basis(m, L::D, L::E, &p).with_printed_order(BasisOrder::Summary).is_err());
    }

    #[test]
    fn basis_json_round_trip() {
        let m = ds3_model();
        let b = enumerate_basis(m, L::D, L::H, &TreeShape::paired4()).with_printed_order(BasisOrder::Summary).unwrap();
        let j = b.to_json();
        assert!(j.contains("\"shape\":\"((**)(**))\""), "{j}");
        assert_eq!(FusionBasis::from_json(m, &j).unwrap(), b);
    }

    #[test]
    fn unit_leg_moves_are_trivial() {
        let m = ds3_model();
        for shape in all_shapes(3) {
            for &x in m.labels() {
                for &y in m.labels() {
                    for leaves in [[L::A, x, y], [x, L::A, y], [x, y, L::A]] {
                        for &z in m.labels() {
                            let b = Arc::new(FusionBasis::new(m, shape.clone(), leaves.to_vec(), z).unwrap());
                            for mv in shape.moves() {
                                for i in 0..b.dim() {
                                    let out = f_move(m, &StateVector::basis_state(b.clone(), i), mv).unwrap();
                                    let nz: Vec<_> = out.amplitudes().iter().filter(|a| !a.is_zero()).collect();
                                    assert_eq!(nz.len(), 1);
                                    assert!(nz[0].is_one());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn move_reads_a_column_of_f() {
        let m = ds3_model();
        // (((D D)_x D)_w D)_G with x = G, w = D: the move at the inner vertex
        // gives column G of F^{DDD}_D.
        let b = Arc::new(enumerate_basis(m, L::D, L::G, &TreeShape::caterpillar(4)));
        let i = b.position_of("GD").unwrap();
        let mv = FMove { span: (0, 3), dir: Assoc::LeftToRight };
        let out = f_move(m, &StateVector::basis_state(b, i), mv).unwrap();
        assert_eq!(out.basis().shape().to_string(), "((*(**))*)");
        let (rows, cols, f) = m.f_matrix(L::D, L::D, L::D, L::D);
        let gcol = cols.iter().position(|&c| c == L::G).unwrap();
        for (r, n) in rows.iter().enumerate() {
            // edges of ((*(**))*) in post-order: (1,3) = n, (0,3) = w.
            let letters = format!("{n}D");
            assert_eq!(out.amplitude_of(&letters), f[(r, gcol)], "n = {n}");
        }
        assert!(out.norm_sq().is_one());
        // The paired shape: ((DD)_G (DD)_G)_G moved at the root.
        let p = Arc::new(enumerate_basis(m, L::D, L::G, &TreeShape::paired4()));
        let gg = StateVector::basis_state(p.clone(), p.position_of("GG").unwrap());
        let out = f_move(m, &gg, FMove { span: (0, 4), dir: Assoc::LeftToRight }).unwrap();
        for n in m.right_channels(L::D, L::D, L::G, L::G) {
            let expect = m.f_symbol(L::D, L::D, L::G, L::G, n, L::G).unwrap();
            assert_eq!(out.amplitude_of(&format!("G{n}")), expect);
        }
    }

    #[test]
    fn inner_products() {
        let m = ds3_model();
        let b = Arc::new(enumerate_basis(m, L::D, L::G, &TreeShape::paired4()));
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let v = inner_product(&StateVector::basis_state(b.clone(), i), &StateVector::basis_state(b.clone(), j)).unwrap();
                assert_eq!(v.is_one(), i == j);
                assert_eq!(v.is_zero(), i != j);
            }
        }
        let s = cy("1/sqrt2");
        let u = StateVector::from_terms(b.clone(), &[("FC", s.clone()), ("CF", -&s)]).unwrap();
        assert!(inner_product(&u, &u).unwrap().is_one());
        let other = Arc::new(enumerate_basis(m, L::D, L::F, &TreeShape::paired4()));
        assert_eq!(inner_product(&u, &StateVector::zero(other)), Err(FusionError::BasisMismatch));
    }

    #[test]
    fn pentagon_at_state_level() {
        // ((ab)c)d -> (ab)(cd) -> a(b(cd)) equals ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd)).
        let m = ds3_model();
        let top = FMove { span: (0, 4), dir: Assoc::LeftToRight };
        let p1 = [top, top];
        let p2 = [FMove { span: (0, 3), dir: Assoc::LeftToRight }, top, FMove { span: (1, 4), dir: Assoc::LeftToRight }];
        let mut checked = 0;
        for a in [L::A, L::C, L::D, L::G] {
            for &b in m.labels() {
                for &c in m.labels() {
                    for &d in m.labels() {
                        for &z in m.labels() {
                            let basis = FusionBasis::new(m, TreeShape::caterpillar(4), vec![a, b, c, d], z).unwrap();
                            if basis.is_empty() {
                                continue;
                            }
                            let (t1, m1) = change_of_basis(m, &basis, &p1).unwrap();
                            let (t2, m2) = change_of_basis(m, &basis, &p2).unwrap();
                            assert_eq!(t1, t2);
                            assert_eq!(t1.shape().to_string(), "(*(*(**)))");
                            assert_eq!(m1, m2, "{a}{b}{c}{d}->{z}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn sabotaged_model_breaks_state_pentagon() {
        let mut bad = ds3_model().clone();
        bad.apply_mutation("F:BGG:G:-1->1").unwrap();
        let top = FMove { span: (0, 4), dir: Assoc::LeftToRight };
        let p2 = [FMove { span: (0, 3), dir: Assoc::LeftToRight }, top, FMove { span: (1, 4), dir: Assoc::LeftToRight }];
        let mut broken = false;
        for &x in &[L::B, L::G] {
            for &z in bad.labels() {
                let basis = FusionBasis::new(&bad, TreeShape::caterpillar(4), vec![x, L::G, L::G, L::G], z).unwrap();
                if basis.is_empty() {
                    continue;
                }
                let (_, m1) = change_of_basis(&bad, &basis, &[top, top]).unwrap();
                let (_, m2) = change_of_basis(&bad, &basis, &p2).unwrap();
                broken |= m1 != m2;
            }
        }
        assert!(broken);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn state_on(b: Arc<FusionBasis>, coeffs: &[(i64, i64)]) -> StateVector {
            let amps = (0..b.dim())
                .map(|i| {
                    let (re, im) = coeffs[i % coeffs.len()];
                    &Cyclotomic::from_int(re) + &(&Cyclotomic::from_int(im) * &cy("w"))
                })
                .collect();
            StateVector::new(b, amps).unwrap()
        }

        fn bases() -> Vec<Arc<FusionBasis>> {
            let m = ds3_model();
            let mut out = Vec::new();
            for shape in all_shapes(4) {
                for (x, z) in [(L::D, L::G), (L::G, L::G), (L::C, L::C), (L::D, L::A)] {
                    out.push(Arc::new(enumerate_basis(m, x, z, &shape)));
                }
            }
            out.push(Arc::new(enumerate_basis(m, L::D, L::G, &TreeShape::two_branch8())));
            out
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn f_move_is_unitary_and_invertible(
                which in 0usize..21,
                mvsel in 0usize..8,
                coeffs in proptest::collection::vec((-3i64..4, -3i64..4), 1..6),
                coeffs2 in proptest::collection::vec((-3i64..4, -3i64..4), 1..6),
            ) {
                let m = ds3_model();
                let bs = bases();
                let b = bs[which % bs.len()].clone();
                let moves = b.shape().moves();
                let mv = moves[mvsel % moves.len()];
                let u = state_on(b.clone(), &coeffs);
                let v = state_on(b.clone(), &coeffs2);
                let mu = f_move(m, &u, mv).unwrap();
                let mvv = f_move(m, &v, mv).unwrap();
                prop_assert_eq!(mu.norm_sq(), u.norm_sq());
                let uv = inner_product(&u, &v).unwrap();
                prop_assert_eq!(inner_product(&mu, &mvv).unwrap(), uv.clone());
                prop_assert_eq!(inner_product(&v, &u).unwrap(), uv.conj());
                let inv = mv.inverse(b.shape()).unwrap();
                let back = f_move(m, &mu, inv).unwrap().in_basis(b.clone()).unwrap();
                prop_assert_eq!(back, u);
            }
        }
    }
}
