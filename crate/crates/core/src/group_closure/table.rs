//! Built-in expectations for the braid images on the ten printed spaces.

use serde::Serialize;

use super::{full_image, space_images, GroupError};
use crate::anyon_model::{AnyonLabel, AnyonModel};

/// One expected group fact: the full image (`sector_dim = None`) or every
/// summand of the given dimension.
#[derive(Clone, Debug, Serialize)]
pub struct GroupExpectation {
    pub sector_dim: Option<usize>,
    pub order: usize,
    pub center_order: Option<usize>,
    pub projective_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub space: &'static str,
    pub sector_dims: Vec<usize>,
    pub groups: Vec<GroupExpectation>,
}

fn g(sector_dim: Option<usize>, order: usize, center_order: Option<usize>, projective_order: Option<usize>) -> GroupExpectation {
    GroupExpectation { sector_dim, order, center_order, projective_order }
}

/// Irreducible summand dimensions and image orders for the ten spaces
/// `V_z^{mmmm}` with printed generators.
pub fn table_rows() -> Vec<TableRow> {
    let row = |space, sector_dims: &[usize], groups| TableRow { space, sector_dims: sector_dims.to_vec(), groups };
    vec![
        row("CA", &[2, 1], vec![g(Some(2), 12, None, None)]),
        row("CB", &[3], vec![g(None, 24, None, None)]),
        row("CC", &[3, 1, 1], vec![g(Some(3), 24, None, None)]),
        row("DA", &[3, 1, 1], vec![g(Some(3), 12, None, None)]),
        row("DB", &[2, 2], vec![g(Some(2), 24, None, Some(12))]),
        row("DF", &[8, 1], vec![g(Some(8), 216, None, None)]),
        row("DG", &[6, 3], vec![g(Some(3), 648, Some(3), Some(216))]),
        row("GA", &[3], vec![g(None, 162, None, None)]),
        row("GB", &[3], vec![g(None, 648, None, None)]),
        row("GG", &[4, 1], vec![g(Some(4), 648, None, None)]),
    ]
}

pub fn table_row(m: AnyonLabel, z: AnyonLabel) -> Option<TableRow> {
    let key = format!("{m}{z}");
    table_rows().into_iter().find(|r| r.space == key)
}

#[derive(Clone, Debug, Serialize)]
pub struct TableItem {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub space: String,
    pub items: Vec<TableItem>,
    pub pass: bool,
}

/// Compares the computed images of `V_z^{mmmm}` with [`table_rows`].
pub fn check_table_row(model: &AnyonModel, m: AnyonLabel, z: AnyonLabel) -> Result<TableCheck, GroupError> {
    let space = format!("{m}{z}");
    let Some(row) = table_row(m, z) else {
        return Ok(TableCheck { space, items: Vec::new(), pass: false });
    };
    let im = space_images(model, m, z)?;
    let mut items = Vec::new();
    let mut item = |what: String, expected: String, actual: String| {
        let pass = expected == actual;
        items.push(TableItem { what, expected, actual, pass });
    };
    item("sector dims".into(), format!("{:?}", row.sector_dims), format!("{:?}", im.sector_dims));
    for e in &row.groups {
        let reports = match e.sector_dim {
            None => vec![full_image(model, m, z)?.report()],
            Some(d) => im.sectors.iter().filter(|s| s.dim == d).map(|s| s.report.clone()).collect(),
        };
        let what = match e.sector_dim {
            None => "image".to_string(),
            Some(d) => format!("{d}-dim sector"),
        };
        if reports.is_empty() {
            item(format!("{what} order"), e.order.to_string(), "no such sector".into());
        }
        for r in reports {
            item(format!("{what} order"), e.order.to_string(), r.order.to_string());
            if let Some(c) = e.center_order {
                item(format!("{what} center"), c.to_string(), r.center_order.to_string());
            }
            if let Some(p) = e.projective_order {
                item(format!("{what} projective order"), p.to_string(), r.projective_order.to_string());
            }
        }
    }
    let pass = items.iter().all(|i| i.pass);
    Ok(TableCheck { space, items, pass })
}
