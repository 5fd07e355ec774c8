use std::sync::OnceLock;

use super::label::{AnyonLabel, DS3_BASIS_ORDER, DS3_LABELS};
use super::{AnyonModel, ModelError};
use crate::exact_arith::{parse_expr, Cyclotomic, Matrix, Rational};

const DATA: &str = include_str!("../../data/ds3.txt");

/// Products `a (x) b` for `a <= b`, alphabetical.
const FUSION: &[(&str, &str)] = &[
    ("AA", "A"), ("AB", "B"), ("AC", "C"), ("AD", "D"), ("AE", "E"), ("AF", "F"), ("AG", "G"), ("AH", "H"),
    ("BB", "A"), ("BC", "C"), ("BD", "E"), ("BE", "D"), ("BF", "F"), ("BG", "G"), ("BH", "H"),
    ("CC", "ABC"), ("CD", "DE"), ("CE", "DE"), ("CF", "GH"), ("CG", "FH"), ("CH", "FG"),
    ("DD", "ACFGH"), ("DE", "BCFGH"), ("DF", "DE"), ("DG", "DE"), ("DH", "DE"),
    ("EE", "ACFGH"), ("EF", "DE"), ("EG", "DE"), ("EH", "DE"),
    ("FF", "ABF"), ("FG", "CH"), ("FH", "CG"),
    ("GG", "ABG"), ("GH", "CF"),
    ("HH", "ABH"),
];

const QDIM: [i64; 8] = [1, 1, 2, 3, 3, 2, 2, 2];

const S_TIMES_6: [[i64; 8]; 8] = [
    [1, 1, 2, 3, 3, 2, 2, 2],
    [1, 1, 2, -3, -3, 2, 2, 2],
    [2, 2, 4, 0, 0, -2, -2, -2],
    [3, -3, 0, 3, -3, 0, 0, 0],
    [3, -3, 0, -3, 3, 0, 0, 0],
    [2, 2, -2, 0, 0, 4, -2, -2],
    [2, 2, -2, 0, 0, -2, -2, 4],
    [2, 2, -2, 0, 0, -2, 4, -2],
];

const T_DIAG: [&str; 8] = ["1", "1", "1", "-1", "1", "1", "w", "w^2"];

/// The D(S3) model: fusion rules, dimensions, every F- and R-symbol, and S/T.
///
/// The model is built once and shared; call `.clone()` to obtain a mutable copy.
pub fn ds3_model() -> &'static AnyonModel {
    static MODEL: OnceLock<AnyonModel> = OnceLock::new();
    MODEL.get_or_init(|| build().expect("compiled-in D(S3) data is well formed"))
}

fn build() -> Result<AnyonModel, ModelError> {
    let mut triples = Vec::new();
    for (ab, cs) in FUSION {
        let ab = AnyonLabel::parse_word(ab)?;
        for c in AnyonLabel::parse_word(cs)? {
            triples.push((ab[0], ab[1], c));
            triples.push((ab[1], ab[0], c));
        }
    }
    let qdim = QDIM.iter().map(|&d| Rational::from(d)).collect();
    let mut m = AnyonModel::new("D(S3)", DS3_LABELS.to_vec(), DS3_BASIS_ORDER.to_vec(), &triples, qdim)?;
    load_symbols(&mut m, DATA)?;
    let s = Matrix::from_fn(8, 8, |i, j| Cyclotomic::from_rational(&Rational::new(S_TIMES_6[i][j], 6)));
    let t = T_DIAG.iter().map(|e| parse_expr(e)).collect::<Result<Vec<_>, _>>()?;
    m.set_modular(s, t);
    m.materialize();
    Ok(m)
}

/// Loads F/R data written in the line format of `data/ds3.txt`.
///
/// Lines are `F abc d = s [ r ; r ]` (a whole block with scalar prefactor),
/// `F abc d n m = expr` (one entry) or `R ab c = expr`. Repeated keys must agree.
pub fn load_symbols(m: &mut AnyonModel, text: &str) -> Result<(), ModelError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ModelError::Data(format!("line {}: {msg}", lineno + 1));
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("missing `=`".into()))?;
        let head: Vec<&str> = lhs.split_whitespace().collect();
        match head.as_slice() {
            ["F", abc, d] => {
                let abc = AnyonLabel::parse_word(abc)?;
                let d: AnyonLabel = d.parse()?;
                let (pre, body) = rhs.split_once('[').ok_or_else(|| err("expected a bracketed block".into()))?;
                let body = body.trim().strip_suffix(']').ok_or_else(|| err("unterminated block".into()))?;
                let pre = parse_expr(pre.trim())?;
                let rows: Vec<Vec<Cyclotomic>> = body
                    .split(';')
                    .map(|r| r.split(',').map(|e| parse_expr(e.trim()).map(|v| &v * &pre)).collect())
                    .collect::<Result<_, _>>()?;
                let (nr, nc, _) = m.f_matrix(abc[0], abc[1], abc[2], d);
                if rows.len() != nr.len() || rows.iter().any(|r| r.len() != nc.len()) {
                    return Err(err(format!(
                        "block F^{}_{d} has shape {}x{} but the admissible channels give {}x{}",
                        super::label::word(&abc),
                        rows.len(),
                        rows.first().map_or(0, Vec::len),
                        nr.len(),
                        nc.len()
                    )));
                }
                for (i, row) in rows.into_iter().enumerate() {
                    for (j, v) in row.into_iter().enumerate() {
                        insert_f(m, [abc[0], abc[1], abc[2], d, nr[i], nc[j]], v).map_err(|e| err(e.to_string()))?;
                    }
                }
            }
            ["F", abc, d, n, mm] => {
                let abc = AnyonLabel::parse_word(abc)?;
                let key = [abc[0], abc[1], abc[2], d.parse()?, n.parse()?, mm.parse()?];
                insert_f(m, key, parse_expr(rhs.trim())?).map_err(|e| err(e.to_string()))?;
            }
            ["R", ab, c] => {
                let ab = AnyonLabel::parse_word(ab)?;
                let key = [ab[0], ab[1], c.parse()?];
                let v = parse_expr(rhs.trim())?;
                if let Some(old) = m.r.get(&key) {
                    if *old != v {
                        return Err(err(format!("conflicting values for R^{}{}_{}", key[0], key[1], key[2])));
                    }
                }
                m.set_r(key, v).map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("unrecognised line `{line}`"))),
        }
    }
    Ok(())
}

fn insert_f(m: &mut AnyonModel, key: super::FKey, v: Cyclotomic) -> Result<(), ModelError> {
    if let Some(old) = m.f.get(&key) {
        if *old != v {
            return Err(ModelError::Data(format!("conflicting values for F key {key:?}")));
        }
    }
    m.set_f(key, v)
}
