//! Reference braid-generator matrices transcribed from published tables, and
//! comparison of computed generators against them.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::rep::{generators, Normalization, RepMatrix};
use super::sector::{compress, Sector};
use super::BraidError;
use crate::anyon_model::{AnyonLabel, AnyonModel};
use crate::exact_arith::{parse_expr, Cyclotomic, Matrix};
use crate::fusion_space::{enumerate_basis, BasisOrder, FusionBasis, TreeShape};

const DATA: &str = include_str!("../../data/printed_generators.txt");

#[derive(Clone, Debug)]
pub struct PrintedSector {
    pub name: String,
    /// Spanning vectors as `(labeling, coefficient)` terms.
    pub terms: Vec<Vec<(String, Cyclotomic)>>,
}

#[derive(Clone, Debug)]
pub struct PrintedBlock {
    pub m: AnyonLabel,
    pub z: AnyonLabel,
    /// `sigmaK` or `S.sigmaK`, in file order.
    pub matrices: Vec<(String, Matrix)>,
    pub sectors: Vec<PrintedSector>,
}

impl PrintedBlock {
    pub fn matrix(&self, name: &str) -> Option<&Matrix> {
        self.matrices.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn sector(&self, name: &str) -> Option<&PrintedSector> {
        self.sectors.iter().find(|s| s.name == name)
    }

    /// Basis of `V_z^{mmmm}` on `((mm)(mm))` in the order the matrices use.
    pub fn basis(&self, model: &AnyonModel) -> Result<Arc<FusionBasis>, BraidError> {
        let canon = enumerate_basis(model, self.m, self.z, &TreeShape::paired4());
        let order = if matches!(self.key().as_str(), "DA" | "DB") { BasisOrder::Generators } else { BasisOrder::Summary };
        Ok(Arc::new(canon.with_printed_order(order)?))
    }

    pub fn key(&self) -> String {
        format!("{}{}", self.m, self.z)
    }
}

impl PrintedSector {
    pub fn vectors(&self, basis: &FusionBasis) -> Result<Sector, BraidError> {
        let mut out = Vec::new();
        for v in &self.terms {
            let mut amps = vec![Cyclotomic::zero(); basis.dim()];
            for (lab, c) in v {
                let p = basis.position_of(lab).ok_or_else(|| BraidError::Parse(format!("no basis vector {lab}")))?;
                amps[p] += c;
            }
            out.push(amps);
        }
        Ok(Sector::new(out))
    }
}

/// All transcribed blocks.
pub fn printed_blocks() -> &'static [PrintedBlock] {
    static BLOCKS: OnceLock<Vec<PrintedBlock>> = OnceLock::new();
    BLOCKS.get_or_init(|| parse_blocks(DATA).expect("bundled data parses"))
}

pub fn printed_block(m: AnyonLabel, z: AnyonLabel) -> Option<&'static PrintedBlock> {
    printed_blocks().iter().find(|b| b.m == m && b.z == z)
}

fn expr(s: &str) -> Result<Cyclotomic, BraidError> {
    parse_expr(s.trim()).map_err(|e| BraidError::Parse(format!("{s}: {e}")))
}

fn parse_matrix(rhs: &str) -> Result<Matrix, BraidError> {
    let bad = || BraidError::Parse(rhs.to_string());
    let open = rhs.find('[').ok_or_else(bad)?;
    let close = rhs.rfind(']').ok_or_else(bad)?;
    let mut pre = rhs[..open].trim();
    let diag = pre.ends_with("diag");
    if diag {
        pre = pre.trim_end_matches("diag").trim();
    }
    let factor = if pre.is_empty() { Cyclotomic::one() } else { expr(pre)? };
    let body = &rhs[open + 1..close];
    let m = if diag {
        let d = body.split(',').map(expr).collect::<Result<Vec<_>, _>>()?;
        Matrix::diag(&d)
    } else {
        let rows = body
            .split(';')
            .map(|r| r.split(',').map(expr).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows).map_err(|e| BraidError::Parse(e.to_string()))?
    };
    Ok(m.scale(&factor))
}

fn parse_blocks(text: &str) -> Result<Vec<PrintedBlock>, BraidError> {
    let mut blocks: Vec<PrintedBlock> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("space ") {
            let labels = AnyonLabel::parse_word(&rest.replace(char::is_whitespace, ""))?;
            let [m, z] = labels[..] else { return Err(BraidError::Parse(line.to_string())) };
            blocks.push(PrintedBlock { m, z, matrices: Vec::new(), sectors: Vec::new() });
            continue;
        }
        let block = blocks.last_mut().ok_or_else(|| BraidError::Parse(line.to_string()))?;
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| BraidError::Parse(line.to_string()))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        if let Some(name) = lhs.strip_prefix("sector ") {
            let terms = rhs
                .split('|')
                .map(|v| {
                    v.split(',')
                        .map(|t| {
                            let (lab, c) = t.split_once(':').ok_or_else(|| BraidError::Parse(t.to_string()))?;
                            Ok((lab.trim().to_string(), expr(c)?))
                        })
                        .collect::<Result<Vec<_>, BraidError>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            block.sectors.push(PrintedSector { name: name.trim().to_string(), terms });
        } else if rhs.contains('[') {
            block.matrices.push((lhs.to_string(), parse_matrix(rhs)?));
        } else {
            let m = block.matrix(rhs).cloned().ok_or_else(|| BraidError::Parse(line.to_string()))?;
            block.matrices.push((lhs.to_string(), m));
        }
    }
    Ok(blocks)
}

/// Outcome for one printed matrix.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixComparison {
    pub name: String,
    /// `printed = phase * computed` for this root of unity, if any.
    pub phase: Option<Cyclotomic>,
    /// Entries `(row, col)` where printed and `phase * computed` differ, for
    /// the phase matching the most entries.
    pub mismatched: Vec<(usize, usize)>,
    /// Whether the printed matrix is itself unitary.
    pub printed_unitary: bool,
}

impl MatrixComparison {
    pub fn matches(&self) -> bool {
        self.phase.is_some()
    }
}

/// Matrices sharing one normalization: the full generators of a space, or
/// the generators on one printed sector.
#[derive(Clone, Debug, Serialize)]
pub struct GroupComparison {
    /// `generators` or `sector <name>`.
    pub label: String,
    pub normalization: Normalization,
    pub matrices: Vec<MatrixComparison>,
    /// Set when every matrix matches with the same phase.
    pub common_phase: Option<Cyclotomic>,
    /// The phase shared by all matrices that do match, if they agree. This
    /// recovers the printed scalar normalization even when one printed
    /// matrix is defective.
    pub consensus_phase: Option<Cyclotomic>,
    /// For sectors: whether compressing the printed full generators onto the
    /// printed sector basis reproduces the printed sector matrices up to one
    /// phase. Independent of the computed data.
    pub printed_self_consistent: Option<bool>,
}

impl GroupComparison {
    pub fn all_match(&self) -> bool {
        self.common_phase.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockComparison {
    pub space: String,
    pub groups: Vec<GroupComparison>,
}

impl BlockComparison {
    pub fn generators(&self) -> &GroupComparison {
        &self.groups[0]
    }

    pub fn all_match(&self) -> bool {
        self.groups.iter().all(GroupComparison::all_match)
    }
}

/// Normalization the printed full generators of a space use: rows whose
/// entries carry an explicit `tau` prefactor are tau-scaled.
pub fn printed_normalization(m: AnyonLabel, z: AnyonLabel) -> Normalization {
    if m == AnyonLabel::G && z != AnyonLabel::G {
        Normalization::TauScaled
    } else {
        Normalization::Raw
    }
}

/// Finds the root of unity `lambda` with `printed = lambda * computed`.
pub fn compare_matrix(name: &str, printed: &Matrix, computed: &Matrix) -> MatrixComparison {
    let printed_unitary = printed.is_square() && printed.is_unitary();
    let mut best: Option<(Cyclotomic, Vec<(usize, usize)>)> = None;
    if printed.rows() == computed.rows() && printed.cols() == computed.cols() {
        for k in 0..crate::exact_arith::ORDER {
            let lambda = Cyclotomic::zeta(k);
            let scaled = computed.scale(&lambda);
            let bad: Vec<(usize, usize)> = (0..printed.rows())
                .flat_map(|r| (0..printed.cols()).map(move |c| (r, c)))
                .filter(|&(r, c)| printed[(r, c)] != scaled[(r, c)])
                .collect();
            if best.as_ref().map_or(true, |(_, b)| bad.len() < b.len()) {
                best = Some((lambda, bad));
            }
        }
    }
    let (phase, mismatched) = match best {
        Some((lambda, bad)) if bad.is_empty() => (Some(lambda), bad),
        Some((_, bad)) => (None, bad),
        None => (None, vec![(printed.rows(), printed.cols())]),
    };
    MatrixComparison { name: name.to_string(), phase, mismatched, printed_unitary }
}

fn common_phase(ms: &[MatrixComparison]) -> Option<Cyclotomic> {
    let p = ms.first()?.phase.clone()?;
    ms.iter().all(|m| m.phase.as_ref() == Some(&p)).then_some(p)
}

fn consensus_phase(ms: &[MatrixComparison]) -> Option<Cyclotomic> {
    let mut found = ms.iter().filter_map(|m| m.phase.clone());
    let p = found.next()?;
    found.all(|q| q == p).then_some(p)
}

fn generator_index(name: &str) -> Result<usize, BraidError> {
    name.strip_prefix("sigma")
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| BraidError::Parse(name.to_string()))
}

/// Computes the generators on the block's basis and compares every printed
/// matrix. Full generators are scaled by the row's printed normalization;
/// sector matrices are compressions of the raw generators onto the printed
/// (orthonormal) sector basis.
pub fn compare_block(model: &AnyonModel, block: &PrintedBlock) -> Result<BlockComparison, BraidError> {
    let basis = block.basis(model)?;
    let raw: Vec<Matrix> = generators(model, &basis)?.into_iter().map(|g: RepMatrix| g.matrix).collect();
    let norm = printed_normalization(block.m, block.z);
    let full: Vec<Matrix> = match norm {
        Normalization::TauScaled => raw.iter().map(|g| g.scale(&Cyclotomic::tau())).collect(),
        _ => raw.clone(),
    };
    let pick = |gens: &[Matrix], k: usize| -> Result<Matrix, BraidError> {
        gens.get(k - 1).cloned().ok_or(BraidError::Index { index: k as i32, strands: gens.len() + 1 })
    };

    let mut groups = Vec::new();
    let mut top = Vec::new();
    for (name, printed) in block.matrices.iter().filter(|(n, _)| !n.contains('.')) {
        top.push(compare_matrix(name, printed, &pick(&full, generator_index(name)?)?));
    }
    groups.push(GroupComparison {
        label: "generators".into(),
        normalization: norm,
        common_phase: common_phase(&top),
        consensus_phase: consensus_phase(&top),
        matrices: top,
        printed_self_consistent: None,
    });

    for sec in &block.sectors {
        let prefix = format!("{}.", sec.name);
        let vecs = sec.vectors(&basis)?;
        let mut ms = Vec::new();
        let mut selfc = Vec::new();
        for (name, printed) in block.matrices.iter().filter(|(n, _)| n.starts_with(&prefix)) {
            let k = generator_index(&name[prefix.len()..])?;
            let computed = compress(&[pick(&raw, k)?], &vecs).remove(0);
            ms.push(compare_matrix(name, printed, &computed));
            if let Some(pf) = block.matrix(&format!("sigma{k}")) {
                selfc.push(compare_matrix(name, printed, &compress(std::slice::from_ref(pf), &vecs).remove(0)));
            }
        }
        if ms.is_empty() {
            continue;
        }
        let consistent = (!selfc.is_empty()).then(|| common_phase(&selfc).is_some());
        groups.push(GroupComparison {
            label: format!("sector {}", sec.name),
            normalization: Normalization::Raw,
            common_phase: common_phase(&ms),
            consensus_phase: consensus_phase(&ms),
            matrices: ms,
            printed_self_consistent: consistent,
        });
    }
    Ok(BlockComparison { space: block.key(), groups })
}
