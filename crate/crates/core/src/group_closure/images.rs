//! Images of the four-strand braid group on the printed spaces, normalized
//! the way the reference tables print them.

use std::sync::Arc;

use serde::Serialize;

use super::{closure, GroupError, GroupReport, MatrixGroup, DEFAULT_CAP};
use crate::anyon_model::{AnyonLabel, AnyonModel};
use crate::braid_engine::{
    compare_block, decompose, generators, printed_block, restrict, Normalization, Sector,
};
use crate::exact_arith::{Cyclotomic, Matrix};
use crate::fusion_space::{enumerate_basis, FusionBasis, TreeShape};

/// Raw generators on `((mm)(mm))` together with the scalar the printed
/// tables apply to the full generators (1 when nothing is printed).
pub fn printed_scale(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel) -> Result<(Arc<FusionBasis>, Vec<Matrix>, Cyclotomic), GroupError> {
    let (basis, scale) = match printed_block(m, z) {
        Some(block) => {
            let basis = block.basis(model)?;
            let cmp = compare_block(model, block)?;
            let g = cmp.generators();
            let mut c = g.consensus_phase.clone().unwrap_or_else(Cyclotomic::one);
            if g.normalization == Normalization::TauScaled {
                c = &c * &Cyclotomic::tau();
            }
            (basis, c)
        }
        None => (Arc::new(enumerate_basis(model, m, z, &TreeShape::paired4())), Cyclotomic::one()),
    };
    let raw = generators(model, &basis)?.into_iter().map(|g| g.matrix).collect();
    Ok((basis, raw, scale))
}

/// One irreducible summand and the group its generators produce.
#[derive(Clone, Debug, Serialize)]
pub struct SectorImage {
    pub dim: usize,
    /// Name of the matching printed sector, if any.
    pub printed: Option<String>,
    /// Exponent `k` of the applied scalar `zeta_72^k`.
    pub scale_exponent: Option<i64>,
    pub report: GroupReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceImages {
    pub space: String,
    pub dim: usize,
    /// Irreducible summand dimensions, largest first.
    pub sector_dims: Vec<usize>,
    pub complete: bool,
    pub full: GroupReport,
    /// Summands of dimension at least two.
    pub sectors: Vec<SectorImage>,
}

fn same_span(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut rows = a.to_vec();
    rows.extend_from_slice(b);
    Matrix::from_rows(rows).map(|m| m.rank() == a.len()).unwrap_or(false)
}

/// Closure of the full printed-normalized generators.
pub fn full_image(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel) -> Result<MatrixGroup, GroupError> {
    let (_, raw, c) = printed_scale(model, m, z)?;
    closure(&raw.iter().map(|g| g.scale(&c)).collect::<Vec<_>>(), DEFAULT_CAP)
}

/// Generators restricted to `sector`, scaled as the printed sector matrices
/// are if the sector is printed, otherwise as the full generators.
pub fn sector_generators(
    model: &AnyonModel,
    m: AnyonLabel,
    z: AnyonLabel,
    sector: &Sector,
) -> Result<(Vec<Matrix>, Option<String>, Cyclotomic), GroupError> {
    let (basis, raw, mut c) = printed_scale(model, m, z)?;
    let mut name = None;
    if let Some(block) = printed_block(m, z) {
        let cmp = compare_block(model, block)?;
        for ps in &block.sectors {
            let v = ps.vectors(&basis)?;
            if same_span(&v.vectors, &sector.vectors) {
                name = Some(ps.name.clone());
                if let Some(p) = cmp.groups.iter().find(|g| g.label == format!("sector {}", ps.name)).and_then(|g| g.consensus_phase.clone()) {
                    c = p;
                }
            }
        }
    }
    let r = restrict(&raw, &sector.vectors).ok_or_else(|| GroupError::Dimension("sector is not invariant".into()))?;
    Ok((r.iter().map(|g| g.scale(&c)).collect(), name, c))
}

/// Decomposition and group structure of the representation on `V_z^{mmmm}`.
pub fn space_images(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel) -> Result<SpaceImages, GroupError> {
    let (basis, raw, _) = printed_scale(model, m, z)?;
    let dec = decompose(&raw);
    let full = full_image(model, m, z)?.report();
    let mut sectors = Vec::new();
    for s in dec.sectors.iter().filter(|s| s.dim() >= 2) {
        let (gens, printed, c) = sector_generators(model, m, z, s)?;
        sectors.push(SectorImage {
            dim: s.dim(),
            printed,
            scale_exponent: c.as_root_of_unity(),
            report: closure(&gens, DEFAULT_CAP)?.report(),
        });
    }
    sectors.sort_by_key(|s| std::cmp::Reverse(s.dim));
    Ok(SpaceImages { space: format!("{m}{z}"), dim: basis.dim(), sector_dims: dec.dims(), complete: dec.complete, full, sectors })
}
