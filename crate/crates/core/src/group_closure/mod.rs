//! Finite matrix groups generated by braid images: closure, structure
//! numbers, presentations, and the D(n,a,b;d,r,s) subgroups of SU(3).

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{ArithError, Cyclotomic, Matrix};

mod images;
mod table;

pub use images::{full_image, printed_scale, sector_generators, space_images, SectorImage, SpaceImages};
pub use table::{check_table_row, table_row, table_rows, GroupExpectation, TableCheck, TableItem, TableRow};

/// Default bound on closure size.
pub const DEFAULT_CAP: usize = 20_000;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("unknown generator symbol `{0}`")]
    UnknownSymbol(char),
    #[error("cannot parse relation `{0}`")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Braid(#[from] crate::braid_engine::BraidError),
}

/// A finite group of exact matrices, elements listed in BFS discovery order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn report(&self) -> GroupReport {
        report(self)
    }
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Generators need only be invertible, so restrictions to a sector written
/// in a non-orthonormal basis can be closed directly.
///
/// For a finite group the monoid generated equals the group, so inverses need
/// not be added. Each layer is expanded in parallel and merged in a fixed
/// order, so the element list is deterministic.
pub fn closure(gens: &[Matrix], cap: usize) -> Result<MatrixGroup, GroupError> {
    let n = gens.first().map_or(1, Matrix::rows);
    if let Some(g) = gens.iter().find(|g| !g.is_square() || g.rows() != n) {
        return Err(GroupError::Dimension(format!("{}x{} generator in dimension {n}", g.rows(), g.cols())));
    }
    let id = Matrix::identity(n);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let products: Vec<Matrix> = frontier
            .par_iter()
            .flat_map_iter(|&i| gens.iter().map(move |g| (i, g)))
            .map(|(i, g)| elements[i].mul(g))
            .collect();
        let mut next = Vec::new();
        for p in products {
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                index.insert(p.clone(), elements.len());
                next.push(elements.len());
                elements.push(p);
            }
        }
        frontier = next;
    }
    Ok(MatrixGroup { generators: gens.to_vec(), elements, index })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub order: usize,
    pub center_order: usize,
    /// Number of scalar matrices in the group.
    pub scalar_order: usize,
    /// Order modulo scalar matrices.
    pub projective_order: usize,
    /// Element order mapped to the number of elements of that order.
    pub element_order_profile: BTreeMap<usize, usize>,
}

/// Multiplicative order of `g` inside a finite group.
pub fn element_order(g: &Matrix) -> usize {
    let mut k = 1;
    let mut x = g.clone();
    while !x.is_identity() {
        x = x.mul(g);
        k += 1;
    }
    k
}

pub fn report(group: &MatrixGroup) -> GroupReport {
    let gens = &group.generators;
    let center_order = group
        .elements
        .par_iter()
        .filter(|x| gens.iter().all(|g| x.mul(g) == g.mul(x)))
        .count();
    let scalar_order = group.elements.iter().filter(|x| x.as_scalar().is_some()).count();
    let orders: Vec<usize> = group.elements.par_iter().map(element_order).collect();
    let mut element_order_profile = BTreeMap::new();
    for o in orders {
        *element_order_profile.entry(o).or_insert(0) += 1;
    }
    GroupReport {
        order: group.order(),
        center_order,
        scalar_order,
        projective_order: group.order() / scalar_order,
        element_order_profile,
    }
}

/// Evaluates a word such as `abcaba`, `(ab)^6`, `a^-1 b` over named generators.
pub fn evaluate_relator(word: &str, assignment: &[(char, Matrix)]) -> Result<Matrix, GroupError> {
    let n = assignment.first().map(|(_, m)| m.rows()).ok_or_else(|| GroupError::Parse(word.to_string()))?;
    let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut pos = 0;
    let m = parse_product(&chars, &mut pos, assignment, n, word)?;
    if pos != chars.len() {
        return Err(GroupError::Parse(word.to_string()));
    }
    Ok(m)
}

fn parse_product(
    s: &[char],
    pos: &mut usize,
    asg: &[(char, Matrix)],
    n: usize,
    word: &str,
) -> Result<Matrix, GroupError> {
    let mut acc = Matrix::identity(n);
    while *pos < s.len() && s[*pos] != ')' {
        let base = if s[*pos] == '(' {
            *pos += 1;
            let inner = parse_product(s, pos, asg, n, word)?;
            if s.get(*pos) != Some(&')') {
                return Err(GroupError::Parse(word.to_string()));
            }
            *pos += 1;
            inner
        } else if s[*pos] == '1' {
            *pos += 1;
            Matrix::identity(n)
        } else {
            let c = s[*pos];
            *pos += 1;
            asg.iter().find(|(k, _)| *k == c).map(|(_, m)| m.clone()).ok_or(GroupError::UnknownSymbol(c))?
        };
        let mut e: i64 = 1;
        if s.get(*pos) == Some(&'^') {
            *pos += 1;
            let st = *pos;
            if s.get(*pos) == Some(&'-') {
                *pos += 1;
            }
            while s.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            e = s[st..*pos].iter().collect::<String>().parse().map_err(|_| GroupError::Parse(word.to_string()))?;
        }
        let b = if e < 0 { base.adjoint() } else { base };
        acc = acc.mul(&b.pow(e.unsigned_abs()));
    }
    Ok(acc)
}

/// True iff every relation holds on the assigned matrices and the group they
/// generate has `expected_order` elements. Relations are `lhs = rhs` or a
/// single relator equal to the identity.
pub fn check_presentation(
    group: &MatrixGroup,
    assignment: &[(char, Matrix)],
    relations: &[&str],
    expected_order: usize,
) -> Result<bool, GroupError> {
    for rel in relations {
        let holds = match rel.split_once('=') {
            Some((l, r)) => evaluate_relator(l, assignment)? == evaluate_relator(r, assignment)?,
            None => evaluate_relator(rel, assignment)?.is_identity(),
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(group.order() == expected_order && assignment.iter().all(|(_, m)| group.contains(m)))
}

/// `E`, `F(n,a,b)` and `G(d,r,s)` generating `D(n,a,b;d,r,s)`.
///
/// `G` is the monomial matrix with nonzero entries at (1,1), (2,3), (3,2):
/// `e(r/d)`, `e(s/d)` and `-e((-r-s)/d)`, so that `det G = 1`.
pub fn dseries_generators(n: i64, a: i64, b: i64, d: i64, r: i64, s: i64) -> Result<[Matrix; 3], GroupError> {
    let e = |k: i64, m: i64| Cyclotomic::root_of_unity(m, k);
    let z = Cyclotomic::zero;
    let one = Cyclotomic::one;
    let em = Matrix::from_rows(vec![vec![z(), one(), z()], vec![z(), z(), one()], vec![one(), z(), z()]])?;
    let fm = Matrix::diag(&[e(a, n)?, e(b, n)?, e(-a - b, n)?]);
    let gm = Matrix::from_rows(vec![
        vec![e(r, d)?, z(), z()],
        vec![z(), z(), e(s, d)?],
        vec![z(), -e(-r - s, d)?, z()],
    ])?;
    Ok([em, fm, gm])
}

/// True iff `p g p^{-1}` lies in `b` for every generator `g` of `a` and the
/// orders agree.
pub fn check_conjugation_equivalence(p: &Matrix, a: &MatrixGroup, b: &MatrixGroup) -> Result<bool, GroupError> {
    if p.rows() != a.dim() || p.rows() != b.dim() || !p.is_square() {
        return Err(GroupError::Dimension(format!("p is {}x{}, groups act in {} and {}", p.rows(), p.cols(), a.dim(), b.dim())));
    }
    if !p.is_unitary() {
        return Err(GroupError::NotUnitary);
    }
    let pinv = p.adjoint();
    Ok(a.order() == b.order() && a.generators().iter().all(|g| b.contains(&p.mul(&g.mul(&pinv)))))
}

#[cfg(test)]
mod tests;
