use std::sync::Arc;

use super::*;
use crate::anyon_model::{ds3_model, AnyonLabel};
use crate::braid_engine::{decompose, generators};
use crate::exact_arith::cy;
use crate::fusion_space::enumerate_basis;
use crate::TreeShape;

fn l(c: char) -> AnyonLabel {
    AnyonLabel::from_letter(c).unwrap()
}

fn raw(m: char, z: char) -> Vec<Matrix> {
    let b = Arc::new(enumerate_basis(ds3_model(), l(m), l(z), &TreeShape::paired4()));
    generators(ds3_model(), &b).unwrap().into_iter().map(|g| g.matrix).collect()
}

fn largest_sector(m: char, z: char) -> Vec<Matrix> {
    let (_, g, _) = printed_scale(ds3_model(), l(m), l(z)).unwrap();
    let dec = decompose(&g);
    let s = dec.sectors.iter().max_by_key(|s| s.dim()).unwrap();
    sector_generators(ds3_model(), l(m), l(z), s).unwrap().0
}

#[test]
fn trivial_groups() {
    let id = closure(&[Matrix::identity(3)], DEFAULT_CAP).unwrap();
    assert_eq!(id.order(), 1);
    let [e, _, _] = dseries_generators(9, 1, 1, 2, 1, 1).unwrap();
    assert!(e.pow(3).is_identity());
    assert_eq!(closure(&[e], DEFAULT_CAP).unwrap().report().element_order_profile, [(1, 1), (3, 2)].into());
}

#[test]
fn cap_is_enforced() {
    let g = raw('G', 'B');
    assert!(matches!(closure(&g, 100), Err(GroupError::CapExceeded { cap: 100 })));
}

#[test]
fn report_invariants() {
    for (m, z) in [('C', 'B'), ('D', 'A'), ('G', 'A')] {
        let r = full_image(ds3_model(), l(m), l(z)).unwrap().report();
        assert_eq!(r.order, r.projective_order * r.scalar_order);
        assert_eq!(r.order % r.center_order, 0);
        assert_eq!(r.element_order_profile.values().sum::<usize>(), r.order);
    }
}

#[test]
fn closure_order_ignores_generator_order() {
    let mut g = raw('C', 'B');
    let a = closure(&g, DEFAULT_CAP).unwrap();
    g.reverse();
    let b = closure(&g, DEFAULT_CAP).unwrap();
    assert_eq!(a.order(), b.order());
    assert_eq!(a.report().element_order_profile, b.report().element_order_profile);
}

#[test]
fn table_orders() {
    let model = ds3_model();
    let sector = |m, z, d: usize| {
        let im = space_images(model, l(m), l(z)).unwrap();
        im.sectors.into_iter().filter(|s| s.dim == d).map(|s| s.report).collect::<Vec<_>>()
    };
    assert_eq!(sector('C', 'A', 2)[0].order, 12);
    assert_eq!(full_image(model, l('C'), l('B')).unwrap().order(), 24);
    assert_eq!(sector('C', 'C', 3)[0].order, 24);
    assert_eq!(sector('D', 'A', 3)[0].order, 12);
    let db = sector('D', 'B', 2);
    assert_eq!(db.len(), 2);
    for r in &db {
        assert_eq!((r.order, r.projective_order), (24, 12));
    }
    assert_eq!(full_image(model, l('G'), l('A')).unwrap().order(), 162);
    assert_eq!(full_image(model, l('G'), l('B')).unwrap().order(), 648);
    assert_eq!(sector('G', 'G', 4)[0].order, 648);
}

#[test]
fn dg_w_sector_structure() {
    let r = sector_image_report('D', 'G', 3);
    assert_eq!((r.order, r.center_order, r.projective_order, r.scalar_order), (648, 3, 216, 3));
    let g = closure(&largest_sector_of_dim('D', 'G', 3), DEFAULT_CAP).unwrap();
    let w = cy("w");
    for x in g.elements().iter().filter_map(Matrix::as_scalar) {
        assert!(x.pow(3).is_one());
        assert!(x.is_one() || x == w || x == w.pow(2));
    }
}

fn largest_sector_of_dim(m: char, z: char, d: usize) -> Vec<Matrix> {
    let (_, g, _) = printed_scale(ds3_model(), l(m), l(z)).unwrap();
    let dec = decompose(&g);
    let s = dec.sectors.iter().find(|s| s.dim() == d).unwrap();
    sector_generators(ds3_model(), l(m), l(z), s).unwrap().0
}

fn sector_image_report(m: char, z: char, d: usize) -> GroupReport {
    closure(&largest_sector_of_dim(m, z, d), DEFAULT_CAP).unwrap().report()
}

#[test]
fn sector_dims_match_table() {
    let expected: [(&str, &[usize]); 10] = [
        ("CA", &[2, 1]),
        ("CB", &[3]),
        ("CC", &[3, 1, 1]),
        ("DA", &[3, 1, 1]),
        ("DB", &[2, 2]),
        ("DF", &[8, 1]),
        ("DG", &[6, 3]),
        ("GA", &[3]),
        ("GB", &[3]),
        ("GG", &[4, 1]),
    ];
    for (key, dims) in expected {
        let c: Vec<char> = key.chars().collect();
        let dec = decompose(&raw(c[0], c[1]));
        assert!(dec.complete, "{key}");
        assert_eq!(dec.dims(), dims.to_vec(), "{key}");
    }
}

#[test]
fn hessian_presentation() {
    let gens = largest_sector('D', 'F');
    assert_eq!(gens[0].rows(), 8);
    let g = closure(&gens, DEFAULT_CAP).unwrap();
    let asg = [('a', gens[0].clone()), ('b', gens[1].clone()), ('c', gens[2].clone())];
    let rels = ["aba = bab", "bcb = cbc", "ac = ca", "a^3", "(ab)^6", "(bc)^6", "(abcaba)^2"];
    assert!(check_presentation(&g, &asg, &rels, 216).unwrap());
    assert!(!check_presentation(&g, &asg, &["a^2"], 216).unwrap());
    assert!(!check_presentation(&g, &asg, &rels, 217).unwrap());
    assert!(matches!(check_presentation(&g, &asg, &["ad"], 216), Err(GroupError::UnknownSymbol('d'))));
}

#[test]
fn braid_relations_as_presentation() {
    let g = raw('D', 'B');
    let grp = closure(&g, DEFAULT_CAP).unwrap();
    let asg = [('a', g[0].clone()), ('b', g[1].clone()), ('c', g[2].clone())];
    let n = grp.order();
    assert!(check_presentation(&grp, &asg, &["aba=bab", "bcb=cbc", "ac=ca", "a^-1 a"], n).unwrap());
}

#[test]
fn dseries_orders() {
    let d9 = dseries_generators(9, 1, 1, 2, 1, 1).unwrap();
    assert!(d9.iter().all(|m| m.det().is_one() && m.is_unitary()));
    assert_eq!(closure(&d9, DEFAULT_CAP).unwrap().order(), 162);
    let d18 = dseries_generators(18, 1, 1, 2, 1, 1).unwrap();
    assert_eq!(closure(&d18, DEFAULT_CAP).unwrap().order(), 648);
    assert!(dseries_generators(5, 1, 1, 2, 1, 1).is_err());
}

#[test]
fn gb_conjugates_into_d18() {
    let model = ds3_model();
    let gb = full_image(model, l('G'), l('B')).unwrap();
    let d18 = closure(&dseries_generators(18, 1, 1, 2, 1, 1).unwrap(), DEFAULT_CAP).unwrap();
    let p = Matrix::parse_rows(&[&["0", "0", "1"], &["1/sqrt2", "-1/sqrt2", "0"], &["1/sqrt2", "1/sqrt2", "0"]]).unwrap();
    // The printed matrix conjugates as g -> p^{-1} g p.
    assert!(check_conjugation_equivalence(&p.adjoint(), &gb, &d18).unwrap());
    assert!(!check_conjugation_equivalence(&p, &gb, &d18).unwrap());
    assert!(check_conjugation_equivalence(&Matrix::identity(3), &gb, &gb).unwrap());
    let ga = full_image(model, l('G'), l('A')).unwrap();
    assert!(!check_conjugation_equivalence(&Matrix::identity(3), &ga, &d18).unwrap());
    assert!(matches!(check_conjugation_equivalence(&Matrix::identity(2), &ga, &d18), Err(GroupError::Dimension(_))));
}

#[test]
fn table_rows_hold() {
    for row in table_rows() {
        let c: Vec<char> = row.space.chars().collect();
        let chk = check_table_row(ds3_model(), l(c[0]), l(c[1])).unwrap();
        assert!(chk.pass, "{:?}", chk);
    }
    assert!(!check_table_row(ds3_model(), l('A'), l('A')).unwrap().pass);
}
