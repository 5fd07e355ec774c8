//! The D(S3) model: labels, fusion rules, quantum dimensions, F- and R-symbols,
//! modular S/T, and exhaustive consistency checks.

mod ds3;
pub mod label;
mod model;
mod verify;

pub use ds3::{ds3_model, load_symbols};
pub use label::{AnyonLabel, DS3_BASIS_ORDER, DS3_LABELS};
pub use model::{AnyonModel, FKey, FVertex, ModelJson, RKey, SymbolRecord};
pub use verify::{
    verify_fusion, verify_hexagon, verify_modular, verify_pentagon, verify_unitarity, verify_verlinde,
    ConsistencyReport, Violation,
};

use crate::exact_arith::ArithError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("inadmissible index: {0}")]
    Inadmissible(String),
    #[error("model data: {0}")]
    Data(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl ModelError {
    pub(crate) fn inadmissible_f(key: FKey, v: FVertex) -> Self {
        let [a, b, c, d, n, m] = key;
        let why = match v {
            FVertex::LeftInner => format!("{m} is not a channel of {a}x{b}"),
            FVertex::LeftOuter => format!("{d} is not a channel of {m}x{c}"),
            FVertex::RightInner => format!("{n} is not a channel of {b}x{c}"),
            FVertex::RightOuter => format!("{d} is not a channel of {a}x{n}"),
        };
        ModelError::Inadmissible(format!("F^{{{a}{b}{c}}}_{{{d};{n}{m}}} ({v:?} vertex): {why}"))
    }
}

#[cfg(test)]
mod tests {
    use super::label::AnyonLabel as L;
    use super::*;
    use crate::exact_arith::{cy, Cyclotomic, Matrix};

    const A: L = L::A;
    const B: L = L::B;
    const C: L = L::C;
    const D: L = L::D;
    const E: L = L::E;
    const F: L = L::F;
    const G: L = L::G;
    const H: L = L::H;

    #[test]
    fn fusion_rules() {
        let m = ds3_model();
        let mut dd = m.fuse(D, D);
        dd.sort();
        assert_eq!(dd, vec![A, C, F, G, H]);
        let mut cc = m.fuse(C, C);
        cc.sort();
        assert_eq!(cc, vec![A, B, C]);
        for &x in m.labels() {
            assert_eq!(m.fuse(A, x), vec![x]);
        }
        assert!(verify_fusion(m).passed());
    }

    #[test]
    fn printed_symbols() {
        let m = ds3_model();
        let (rows, cols, f) = m.f_matrix(G, G, G, G);
        assert_eq!(rows, vec![A, B, G]);
        assert_eq!(cols, vec![A, B, G]);
        let expect = Matrix::parse_rows(&[
            &["1/2", "1/2", "1/sqrt2"],
            &["1/2", "1/2", "-1/sqrt2"],
            &["1/sqrt2", "-1/sqrt2", "0"],
        ])
        .unwrap();
        assert_eq!(f, expect);
        assert_eq!(m.r_symbol(G, G, A).unwrap(), cy("w^2"));
        assert_eq!(m.r_symbol(A, A, A).unwrap(), Cyclotomic::one());
        assert_eq!(m.f_symbol(B, G, G, G, G, G).unwrap(), cy("-1"));
        assert_eq!(m.f_symbol(D, D, D, D, G, F).unwrap(), cy("-1/3"));
        assert_eq!(m.r_symbol(D, D, A).unwrap(), cy("-1"));
        assert_eq!(m.r_symbol(B, D, E).unwrap(), cy("i"));
        assert_eq!(m.r_symbol(G, D, E).unwrap(), cy("-w*i"));
        assert_eq!(m.r_symbol(H, D, E).unwrap(), cy("-w^2*i"));
    }

    #[test]
    fn unit_leg_f_symbols_are_one() {
        let m = ds3_model();
        for &x in m.labels() {
            for &y in m.labels() {
                for d in m.fuse(x, y) {
                    assert!(m.f_symbol(A, x, y, d, d, x).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn inadmissible_lookups_name_the_vertex() {
        let m = ds3_model();
        let e = m.f_symbol(C, C, D, D, D, G).unwrap_err();
        assert!(e.to_string().contains("LeftInner"), "{e}");
        assert!(m.r_symbol(C, C, D).is_err());
        assert!(m.r_symbol(B, A, A).is_err());
    }

    #[test]
    fn blocks_are_square() {
        let m = ds3_model();
        for &a in m.labels() {
            for &b in m.labels() {
                for &c in m.labels() {
                    for &d in m.labels() {
                        let (r, c2, _) = m.f_matrix(a, b, c, d);
                        assert_eq!(r.len(), c2.len());
                    }
                }
            }
        }
    }

    #[test]
    fn quantum_dimensions() {
        let m = ds3_model();
        let d: Vec<String> = m.labels().iter().map(|&l| m.qdim(l).to_string()).collect();
        assert_eq!(d, ["1", "1", "2", "3", "3", "2", "2", "2"]);
    }

    #[test]
    fn r_symbols_have_unit_modulus() {
        let m = ds3_model();
        for (_, v) in m.r_entries() {
            assert!(v.norm_sq().is_one());
        }
    }

    #[test]
    fn unitarity_and_modular() {
        let m = ds3_model();
        let u = verify_unitarity(m);
        assert!(u.passed(), "{:?}", &u.violations[..u.violations.len().min(5)]);
        let md = verify_modular(m);
        assert!(md.passed(), "{:?}", md.violations);
        let s = m.s_matrix().unwrap();
        let row_a: Cyclotomic = (0..8).map(|j| s[(0, j)].norm_sq()).sum();
        assert!(row_a.is_one());
        let t: Vec<String> = m.t_diag().unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(t[3], "-1");
        assert_eq!(m.t_diag().unwrap()[6], cy("w"));
        assert_eq!(m.t_diag().unwrap()[7], cy("w^2"));
    }

    #[test]
    fn verlinde_examples() {
        let m = ds3_model();
        let rep = verify_verlinde(m);
        assert_eq!(rep.checked, 512);
        assert!(rep.passed());
        assert!(m.n(D, D, G));
        assert!(!m.n(C, C, D));
    }

    #[test]
    fn trivial_model_is_consistent() {
        let t = AnyonModel::trivial();
        for rep in [verify_pentagon(&t), verify_hexagon(&t), verify_unitarity(&t), verify_verlinde(&t), verify_modular(&t)] {
            assert!(rep.passed(), "{}", rep.check);
        }
    }

    #[test]
    fn json_round_trip() {
        let m = ds3_model();
        let j = m.to_json();
        let back = AnyonModel::from_json(&j).unwrap();
        assert_eq!(back.f_entries(), m.f_entries());
        assert_eq!(back.r_entries(), m.r_entries());
        assert_eq!(back.to_json(), j);
        assert_eq!(back.fingerprint(), m.fingerprint());
    }

    #[test]
    fn mutations() {
        let mut m = ds3_model().clone();
        m.apply_mutation("F:BGG:G:-1→1").unwrap();
        assert!(m.f_symbol(B, G, G, G, G, G).unwrap().is_one());
        m.apply_mutation("R:GG:A:w^2->w").unwrap();
        assert_eq!(m.r_symbol(G, G, A).unwrap(), cy("w"));
        assert!(m.apply_mutation("F:GGG:G:5->1").is_err());
        m.apply_mutation("F:GGG:G:GG:0->1").unwrap();
        let _ = (E, H);
    }
}
