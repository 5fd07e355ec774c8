use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AnyonLabel, AnyonModel};
use crate::exact_arith::{Cyclotomic, Matrix};

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub check: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub indices: String,
    pub lhs: String,
    pub rhs: String,
}

impl ConsistencyReport {
    pub fn new(check: &str) -> Self {
        ConsistencyReport { check: check.to_string(), checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, indices: impl FnOnce() -> String, lhs: &Cyclotomic, rhs: &Cyclotomic) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(Violation { indices: indices(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    pub(crate) fn merge(mut self, other: ConsistencyReport) -> Self {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }
}

fn word(ls: &[AnyonLabel]) -> String {
    super::label::word(ls)
}

/// Pentagon identity over every admissible 5-leg configuration:
///
/// `F^{fcd}_{e;lg} F^{abl}_{e;kf} = sum_h F^{abc}_{g;hf} F^{ahd}_{e;kg} F^{bcd}_{k;lh}`.
pub fn verify_pentagon(model: &AnyonModel) -> ConsistencyReport {
    let labels = model.labels().to_vec();
    let parts: Vec<ConsistencyReport> = labels
        .par_iter()
        .map(|&a| {
            let mut rep = ConsistencyReport::new("pentagon");
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        for f in model.fuse(a, b) {
                            for g in model.fuse(f, c) {
                                for e in model.fuse(g, d) {
                                    for l in model.fuse(c, d) {
                                        if !model.n(f, l, e) {
                                            continue;
                                        }
                                        for k in model.fuse(b, l) {
                                            if !model.n(a, k, e) {
                                                continue;
                                            }
                                            let lhs = model.f_raw([f, c, d, e, l, g]) * model.f_raw([a, b, l, e, k, f]);
                                            let mut rhs = Cyclotomic::zero();
                                            for h in model.fuse(b, c) {
                                                if !model.n(a, h, g) || !model.n(h, d, k) {
                                                    continue;
                                                }
                                                let t = &(model.f_raw([a, b, c, g, h, f]) * model.f_raw([a, h, d, e, k, g]))
                                                    * model.f_raw([b, c, d, k, l, h]);
                                                rhs += &t;
                                            }
                                            rep.record(|| word(&[a, b, c, d, e, f, g, k, l]), &lhs, &rhs);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            rep
        })
        .collect();
    parts.into_iter().fold(ConsistencyReport::new("pentagon"), ConsistencyReport::merge)
}

/// Both hexagon identities. A braid exchanging the pair `(x, y)` in channel `z`
/// contributes `R^{yx}_z`; the second orientation uses the inverse braiding.
///
/// `sum_n F^{bca}_{d;kn} R^{na}_d F^{abc}_{d;nm} = R^{ba}_m F^{bac}_{d;km} R^{ca}_k`
pub fn verify_hexagon(model: &AnyonModel) -> ConsistencyReport {
    let labels = model.labels().to_vec();
    let parts: Vec<ConsistencyReport> = labels
        .par_iter()
        .map(|&a| {
            let mut rep = ConsistencyReport::new("hexagon");
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        let ms = model.left_channels(a, b, c, d);
                        let ks = model.right_channels(b, c, a, d);
                        let ns = model.right_channels(a, b, c, d);
                        for &m in &ms {
                            for &k in &ks {
                                for inverse in [false, true] {
                                    let r = |x: AnyonLabel, y: AnyonLabel, z: AnyonLabel| {
                                        let v = model.r_raw([x, y, z]);
                                        if inverse {
                                            v.conj()
                                        } else {
                                            v.clone()
                                        }
                                    };
                                    let mut lhs = Cyclotomic::zero();
                                    for &n in &ns {
                                        let t = &(model.f_raw([b, c, a, d, k, n]) * &r(n, a, d)) * model.f_raw([a, b, c, d, n, m]);
                                        lhs += &t;
                                    }
                                    let rhs = &(&r(b, a, m) * model.f_raw([b, a, c, d, k, m])) * &r(c, a, k);
                                    let tag = if inverse { "inverse" } else { "direct" };
                                    rep.record(|| format!("{} ({tag})", word(&[a, b, c, d, m, k])), &lhs, &rhs);
                                }
                            }
                        }
                    }
                }
            }
            rep
        })
        .collect();
    parts.into_iter().fold(ConsistencyReport::new("hexagon"), ConsistencyReport::merge)
}

/// Every block `F^{abc}_d` satisfies `F^dagger F = I`; every R-symbol has unit modulus.
pub fn verify_unitarity(model: &AnyonModel) -> ConsistencyReport {
    let mut rep = ConsistencyReport::new("unitarity");
    let labels = model.labels();
    for &a in labels {
        for &b in labels {
            for &c in labels {
                for &d in labels {
                    let (rows, cols, f) = model.f_matrix(a, b, c, d);
                    if rows.is_empty() && cols.is_empty() {
                        continue;
                    }
                    rep.checked += 1;
                    if rows.len() != cols.len() {
                        rep.violations.push(Violation {
                            indices: word(&[a, b, c, d]),
                            lhs: format!("{}x{} block", rows.len(), cols.len()),
                            rhs: "square block".into(),
                        });
                        continue;
                    }
                    let p = f.adjoint().mul(&f);
                    if !p.is_identity() {
                        rep.violations.push(Violation {
                            indices: word(&[a, b, c, d]),
                            lhs: format!("{:?}", p.to_string_rows()),
                            rhs: "identity".into(),
                        });
                    }
                }
            }
        }
    }
    for (k, v) in model.r_entries() {
        rep.record(|| format!("R {}", word(&k)), &v.norm_sq(), &Cyclotomic::one());
    }
    rep
}

/// Fusion coefficients recomputed from S through the Verlinde formula.
pub fn verify_verlinde(model: &AnyonModel) -> ConsistencyReport {
    let mut rep = ConsistencyReport::new("verlinde");
    let Some(s) = model.s_matrix() else {
        rep.violations.push(Violation { indices: "S".into(), lhs: "missing".into(), rhs: "present".into() });
        return rep;
    };
    let labels = model.labels();
    let unit = AnyonLabel::UNIT.index();
    let inv_s0: Vec<Cyclotomic> = labels.iter().map(|x| s[(unit, x.index())].inverse().expect("S_0x != 0")).collect();
    for &a in labels {
        for &b in labels {
            for &c in labels {
                let mut sum = Cyclotomic::zero();
                for &x in labels {
                    let xi = x.index();
                    let t = &(&(&s[(a.index(), xi)] * &s[(b.index(), xi)]) * &s[(c.index(), xi)].conj()) * &inv_s0[xi];
                    sum += &t;
                }
                let n = Cyclotomic::from_int(model.n(a, b, c) as i64);
                rep.record(|| word(&[a, b, c]), &sum, &n);
            }
        }
    }
    rep
}

/// `S = S^T`, `S^dagger S = I`, `S^2 = C` (the charge conjugation, here the identity)
/// and `(S T)^3 = S^2`.
pub fn verify_modular(model: &AnyonModel) -> ConsistencyReport {
    let mut rep = ConsistencyReport::new("modular");
    let (Some(s), Some(t)) = (model.s_matrix(), model.t_diag()) else {
        rep.violations.push(Violation { indices: "S,T".into(), lhs: "missing".into(), rhs: "present".into() });
        return rep;
    };
    let mut check = |name: &str, lhs: &Matrix, rhs: &Matrix| {
        rep.checked += 1;
        if lhs != rhs {
            rep.violations.push(Violation {
                indices: name.into(),
                lhs: format!("{:?}", lhs.to_string_rows()),
                rhs: format!("{:?}", rhs.to_string_rows()),
            });
        }
    };
    let n = s.rows();
    let id = Matrix::identity(n);
    check("S = S^T", s, &s.transpose());
    check("S^dagger S = I", &s.adjoint().mul(s), &id);
    let s2 = s.mul(s);
    check("S^2 = I", &s2, &id);
    let st = s.mul(&Matrix::diag(t));
    check("(ST)^3 = S^2", &st.pow(3), &s2);
    for (i, ti) in t.iter().enumerate() {
        rep.checked += 1;
        if ti.as_root_of_unity().is_none() {
            rep.violations.push(Violation { indices: format!("T[{i}]"), lhs: ti.to_string(), rhs: "root of unity".into() });
        }
    }
    rep
}

/// Fusion-rule sanity: unit, commutativity, associativity and dimension compatibility.
pub fn verify_fusion(model: &AnyonModel) -> ConsistencyReport {
    let mut rep = ConsistencyReport::new("fusion");
    let labels = model.labels();
    let as_c = |b: bool| Cyclotomic::from_int(b as i64);
    for &a in labels {
        for &b in labels {
            for &c in labels {
                rep.record(|| format!("comm {}", word(&[a, b, c])), &as_c(model.n(a, b, c)), &as_c(model.n(b, a, c)));
                for &d in labels {
                    let l: i64 = labels.iter().map(|&e| (model.n(a, b, e) && model.n(e, c, d)) as i64).sum();
                    let r: i64 = labels.iter().map(|&f| (model.n(b, c, f) && model.n(a, f, d)) as i64).sum();
                    rep.record(|| format!("assoc {}", word(&[a, b, c, d])), &Cyclotomic::from_int(l), &Cyclotomic::from_int(r));
                }
            }
            rep.record(
                || format!("unit {}", word(&[a, b])),
                &as_c(model.n(AnyonLabel::UNIT, a, b)),
                &as_c(a == b),
            );
            let prod = Cyclotomic::from_rational(&(model.qdim(a) * model.qdim(b)));
            let sum: Cyclotomic = model.fuse(a, b).iter().map(|&c| Cyclotomic::from_rational(model.qdim(c))).sum();
            rep.record(|| format!("qdim {}", word(&[a, b])), &prod, &sum);
        }
    }
    rep
}
