use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{AnyonLabel, ModelError};
use crate::exact_arith::{Cyclotomic, Matrix, Rational};

/// Key of an F-symbol `F^{abc}_{d;nm}`: `n` labels the right tree `(a,(b c)_n)_d`,
/// `m` the left tree `((a b)_m, c)_d`.
pub type FKey = [AnyonLabel; 6];
/// Key of an R-symbol `R^{ab}_c`.
pub type RKey = [AnyonLabel; 3];

/// A multiplicity-free braided fusion category given by explicit data.
///
/// F- and R-symbols are keyed by label tuples. After construction every
/// admissible key is present; entries that were not supplied default to 1.
#[derive(Clone, Debug)]
pub struct AnyonModel {
    pub(crate) name: String,
    pub(crate) labels: Vec<AnyonLabel>,
    pub(crate) basis_order: Vec<AnyonLabel>,
    pub(crate) fusion: Vec<bool>,
    pub(crate) qdim: Vec<Rational>,
    pub(crate) f: HashMap<FKey, Cyclotomic>,
    pub(crate) r: HashMap<RKey, Cyclotomic>,
    pub(crate) s: Option<Matrix>,
    pub(crate) t: Option<Vec<Cyclotomic>>,
}

/// Which trivalent vertex of an F-symbol key fails admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FVertex {
    LeftInner,
    LeftOuter,
    RightInner,
    RightOuter,
}

impl AnyonModel {
    /// Builds a model from fusion triples; F/R tables start empty (all ones once materialized).
    pub fn new(
        name: &str,
        labels: Vec<AnyonLabel>,
        basis_order: Vec<AnyonLabel>,
        triples: &[(AnyonLabel, AnyonLabel, AnyonLabel)],
        qdim: Vec<Rational>,
    ) -> Result<Self, ModelError> {
        let n = labels.len();
        if basis_order.len() != n || qdim.len() != n {
            return Err(ModelError::Data("label, basis order and qdim lengths differ".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.index() != i {
                return Err(ModelError::Data("labels must be indexed 0..n in order".into()));
            }
        }
        let mut fusion = vec![false; n * n * n];
        for &(a, b, c) in triples {
            if a.index() >= n || b.index() >= n || c.index() >= n {
                return Err(ModelError::UnknownLabel(format!("{a}{b}{c}")));
            }
            fusion[(a.index() * n + b.index()) * n + c.index()] = true;
        }
        Ok(AnyonModel {
            name: name.to_string(),
            labels,
            basis_order,
            fusion,
            qdim,
            f: HashMap::new(),
            r: HashMap::new(),
            s: None,
            t: None,
        })
    }

    /// The trivial model with a single label.
    pub fn trivial() -> Self {
        let a = AnyonLabel::A;
        let mut m = Self::new("trivial", vec![a], vec![a], &[(a, a, a)], vec![Rational::one()]).unwrap();
        m.s = Some(Matrix::identity(1));
        m.t = Some(vec![Cyclotomic::one()]);
        m.materialize();
        m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[AnyonLabel] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// Channel ordering used for F-matrix rows/columns and basis tables.
    pub fn basis_order(&self) -> &[AnyonLabel] {
        &self.basis_order
    }

    pub fn basis_position(&self, l: AnyonLabel) -> usize {
        self.basis_order.iter().position(|&x| x == l).expect("label in basis order")
    }

    pub fn contains(&self, l: AnyonLabel) -> bool {
        l.index() < self.labels.len()
    }

    pub fn check_label(&self, l: AnyonLabel) -> Result<(), ModelError> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(ModelError::UnknownLabel(l.to_string()))
        }
    }

    /// Fusion indicator `N_{ab}^c`.
    pub fn n(&self, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel) -> bool {
        let n = self.labels.len();
        if a.index() >= n || b.index() >= n || c.index() >= n {
            return false;
        }
        self.fusion[(a.index() * n + b.index()) * n + c.index()]
    }

    /// Channels of `a (x) b`, in basis order.
    pub fn fuse(&self, a: AnyonLabel, b: AnyonLabel) -> Vec<AnyonLabel> {
        self.basis_order.iter().copied().filter(|&c| self.n(a, b, c)).collect()
    }

    /// Fusion matrix `(N_a)_{bc} = N_{ab}^c`, rows/cols in alphabetical order.
    pub fn fusion_matrix(&self, a: AnyonLabel) -> Vec<Vec<u64>> {
        self.labels
            .iter()
            .map(|&b| self.labels.iter().map(|&c| self.n(a, b, c) as u64).collect())
            .collect()
    }

    pub fn qdim(&self, a: AnyonLabel) -> &Rational {
        &self.qdim[a.index()]
    }

    pub fn s_matrix(&self) -> Option<&Matrix> {
        self.s.as_ref()
    }

    pub fn t_diag(&self) -> Option<&[Cyclotomic]> {
        self.t.as_deref()
    }

    pub fn f_admissible(&self, key: FKey) -> Result<(), FVertex> {
        let [a, b, c, d, n, m] = key;
        if !self.n(a, b, m) {
            return Err(FVertex::LeftInner);
        }
        if !self.n(m, c, d) {
            return Err(FVertex::LeftOuter);
        }
        if !self.n(b, c, n) {
            return Err(FVertex::RightInner);
        }
        if !self.n(a, n, d) {
            return Err(FVertex::RightOuter);
        }
        Ok(())
    }

    /// `F^{abc}_{d;nm}`.
    pub fn f_symbol(
        &self,
        a: AnyonLabel,
        b: AnyonLabel,
        c: AnyonLabel,
        d: AnyonLabel,
        n: AnyonLabel,
        m: AnyonLabel,
    ) -> Result<Cyclotomic, ModelError> {
        let key = [a, b, c, d, n, m];
        if let Err(v) = self.f_admissible(key) {
            return Err(ModelError::inadmissible_f(key, v));
        }
        Ok(self.f.get(&key).cloned().unwrap_or_else(Cyclotomic::one))
    }

    /// Unchecked lookup for hot loops; the key must be admissible.
    pub(crate) fn f_raw(&self, key: FKey) -> &Cyclotomic {
        self.f.get(&key).expect("admissible F key is materialized")
    }

    /// `R^{ab}_c`.
    pub fn r_symbol(&self, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel) -> Result<Cyclotomic, ModelError> {
        if !self.n(a, b, c) {
            return Err(ModelError::Inadmissible(format!("R^{{{a}{b}}}_{{{c}}}: {c} is not a channel of {a}x{b}")));
        }
        Ok(self.r.get(&[a, b, c]).cloned().unwrap_or_else(Cyclotomic::one))
    }

    pub(crate) fn r_raw(&self, key: RKey) -> &Cyclotomic {
        self.r.get(&key).expect("admissible R key is materialized")
    }

    /// Channels of the left tree `((a b)_m, c)_d`.
    pub fn left_channels(&self, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel, d: AnyonLabel) -> Vec<AnyonLabel> {
        self.basis_order.iter().copied().filter(|&m| self.n(a, b, m) && self.n(m, c, d)).collect()
    }

    /// Channels of the right tree `(a, (b c)_n)_d`.
    pub fn right_channels(&self, a: AnyonLabel, b: AnyonLabel, c: AnyonLabel, d: AnyonLabel) -> Vec<AnyonLabel> {
        self.basis_order.iter().copied().filter(|&n| self.n(b, c, n) && self.n(a, n, d)).collect()
    }

    /// The block `F^{abc}_d` with rows `n` (right tree) and columns `m` (left tree).
    pub fn f_matrix(
        &self,
        a: AnyonLabel,
        b: AnyonLabel,
        c: AnyonLabel,
        d: AnyonLabel,
    ) -> (Vec<AnyonLabel>, Vec<AnyonLabel>, Matrix) {
        let rows = self.right_channels(a, b, c, d);
        let cols = self.left_channels(a, b, c, d);
        let m = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.f.get(&[a, b, c, d, rows[i], cols[j]]).cloned().unwrap_or_else(Cyclotomic::one)
        });
        (rows, cols, m)
    }

    /// All admissible F keys, in a deterministic order.
    pub fn admissible_f_keys(&self) -> Vec<FKey> {
        let mut out = Vec::new();
        for &a in &self.labels {
            for &b in &self.labels {
                for &c in &self.labels {
                    for &d in &self.labels {
                        for n in self.right_channels(a, b, c, d) {
                            for m in self.left_channels(a, b, c, d) {
                                out.push([a, b, c, d, n, m]);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn admissible_r_keys(&self) -> Vec<RKey> {
        let mut out = Vec::new();
        for &a in &self.labels {
            for &b in &self.labels {
                for c in self.fuse(a, b) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Sets an F entry, rejecting inadmissible keys.
    pub fn set_f(&mut self, key: FKey, v: Cyclotomic) -> Result<(), ModelError> {
        self.f_admissible(key).map_err(|e| ModelError::inadmissible_f(key, e))?;
        self.f.insert(key, v);
        Ok(())
    }

    pub fn set_r(&mut self, key: RKey, v: Cyclotomic) -> Result<(), ModelError> {
        let [a, b, c] = key;
        if !self.n(a, b, c) {
            return Err(ModelError::Inadmissible(format!("R^{{{a}{b}}}_{{{c}}}")));
        }
        self.r.insert(key, v);
        Ok(())
    }

    pub fn set_modular(&mut self, s: Matrix, t: Vec<Cyclotomic>) {
        self.s = Some(s);
        self.t = Some(t);
    }

    /// Fills every admissible F/R key that has no explicit value with 1.
    pub fn materialize(&mut self) {
        for key in self.admissible_f_keys() {
            self.f.entry(key).or_insert_with(Cyclotomic::one);
        }
        for key in self.admissible_r_keys() {
            self.r.entry(key).or_insert_with(Cyclotomic::one);
        }
    }

    pub fn f_entries(&self) -> BTreeMap<FKey, Cyclotomic> {
        self.f.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    pub fn r_entries(&self) -> BTreeMap<RKey, Cyclotomic> {
        self.r.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    /// Applies a debug mutation such as `F:BGG:G:-1->1`, `F:GGG:G:AB:1/2->0` or `R:GG:A:w^2->w`.
    pub fn apply_mutation(&mut self, spec: &str) -> Result<(), ModelError> {
        let spec = spec.replace('→', "->");
        let bad = || ModelError::Data(format!("malformed mutation `{spec}`"));
        let (lhs, new) = spec.rsplit_once("->").ok_or_else(bad)?;
        let parts: Vec<&str> = lhs.split(':').collect();
        let new: Cyclotomic = new.trim().parse()?;
        match parts.as_slice() {
            ["F", abc, d, rest @ ..] => {
                let abc = AnyonLabel::parse_word(abc)?;
                let d: AnyonLabel = d.parse()?;
                if abc.len() != 3 {
                    return Err(bad());
                }
                let (rows, cols, _) = self.f_matrix(abc[0], abc[1], abc[2], d);
                let (nm, old) = match rest {
                    [old] => {
                        if rows.len() != 1 || cols.len() != 1 {
                            return Err(ModelError::Data(format!("F^{{{}}}_{d} is not 1x1; give the nm entry", super::label::word(&abc))));
                        }
                        ((rows[0], cols[0]), *old)
                    }
                    [nm, old] => {
                        let nm = AnyonLabel::parse_word(nm)?;
                        if nm.len() != 2 {
                            return Err(bad());
                        }
                        ((nm[0], nm[1]), *old)
                    }
                    _ => return Err(bad()),
                };
                let key = [abc[0], abc[1], abc[2], d, nm.0, nm.1];
                let cur = self.f_symbol(key[0], key[1], key[2], key[3], key[4], key[5])?;
                let old: Cyclotomic = old.parse()?;
                if cur != old {
                    return Err(ModelError::Data(format!("mutation expects {old} but entry is {cur}")));
                }
                self.set_f(key, new)
            }
            ["R", ab, c, old] => {
                let ab = AnyonLabel::parse_word(ab)?;
                let c: AnyonLabel = c.parse()?;
                if ab.len() != 2 {
                    return Err(bad());
                }
                let cur = self.r_symbol(ab[0], ab[1], c)?;
                let old: Cyclotomic = old.parse()?;
                if cur != old {
                    return Err(ModelError::Data(format!("mutation expects {old} but entry is {cur}")));
                }
                self.set_r([ab[0], ab[1], c], new)
            }
            _ => Err(bad()),
        }
    }

    pub fn to_json_model(&self) -> ModelJson {
        let key_str = |k: &[AnyonLabel]| k.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        ModelJson {
            name: self.name.clone(),
            labels: self.labels.clone(),
            basis_order: self.basis_order.clone(),
            fusion: self
                .labels
                .iter()
                .flat_map(|&a| self.labels.iter().flat_map(move |&b| self.fuse(a, b).into_iter().map(move |c| [a, b, c])))
                .collect(),
            qdim: self.qdim.clone(),
            f_symbols: self.f_entries().into_iter().map(|(k, v)| SymbolRecord { key: key_str(&k), value: v }).collect(),
            r_symbols: self.r_entries().into_iter().map(|(k, v)| SymbolRecord { key: key_str(&k), value: v }).collect(),
            s: self.s.as_ref().map(Matrix::to_rows),
            t: self.t.clone(),
        }
    }

    pub fn from_json_model(j: &ModelJson) -> Result<Self, ModelError> {
        let triples: Vec<_> = j.fusion.iter().map(|t| (t[0], t[1], t[2])).collect();
        let mut m = AnyonModel::new(&j.name, j.labels.clone(), j.basis_order.clone(), &triples, j.qdim.clone())?;
        let parse_key = |s: &str, len: usize| -> Result<Vec<AnyonLabel>, ModelError> {
            let v = s.split(',').map(str::parse).collect::<Result<Vec<AnyonLabel>, _>>()?;
            if v.len() != len {
                return Err(ModelError::Data(format!("bad key `{s}`")));
            }
            Ok(v)
        };
        for rec in &j.f_symbols {
            let k = parse_key(&rec.key, 6)?;
            m.set_f([k[0], k[1], k[2], k[3], k[4], k[5]], rec.value.clone())?;
        }
        for rec in &j.r_symbols {
            let k = parse_key(&rec.key, 3)?;
            m.set_r([k[0], k[1], k[2]], rec.value.clone())?;
        }
        if let (Some(s), Some(t)) = (&j.s, &j.t) {
            m.set_modular(Matrix::from_rows(s.clone())?, t.clone());
        }
        m.materialize();
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_model()).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ModelError> {
        let j: ModelJson = serde_json::from_str(s).map_err(|e| ModelError::Data(e.to_string()))?;
        Self::from_json_model(&j)
    }

    /// SHA-256 of the canonical JSON export.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.to_json_model()).expect("model serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// JSON interchange form of a model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub name: String,
    pub labels: Vec<AnyonLabel>,
    pub basis_order: Vec<AnyonLabel>,
    pub fusion: Vec<[AnyonLabel; 3]>,
    pub qdim: Vec<Rational>,
    pub f_symbols: Vec<SymbolRecord>,
    pub r_symbols: Vec<SymbolRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<Cyclotomic>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Cyclotomic>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolRecord {
    pub key: String,
    pub value: Cyclotomic,
}
