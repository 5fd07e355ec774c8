use serde::{Deserialize, Serialize};

use super::BraidError;
use crate::exact_arith::{inner, Cyclotomic, Matrix, ORDER};

/// A subspace of a representation space, given by spanning vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Sector {
    pub vectors: Vec<Vec<Cyclotomic>>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorCheck {
    pub dim: usize,
    pub invariant: bool,
    pub irreducible: bool,
}

impl Sector {
    pub fn new(vectors: Vec<Vec<Cyclotomic>>) -> Self {
        Sector { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_orthonormal(&self) -> bool {
        let v = &self.vectors;
        (0..v.len()).all(|i| (0..v.len()).all(|j| {
            let p = inner(&v[i], &v[j]);
            if i == j {
                p.is_one()
            } else {
                p.is_zero()
            }
        }))
    }

    /// Columns of the ambient matrix `V` whose columns are the spanning vectors.
    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors)
    }
}

/// Invariance under every generator and irreducibility of the restriction
/// (commutant of dimension one). The candidate must be orthonormal.
pub fn verify_sector(candidate: &Sector, gens: &[Matrix]) -> Result<SectorCheck, BraidError> {
    if !candidate.is_orthonormal() {
        return Err(BraidError::NotOrthonormal);
    }
    Ok(analyze_span(&candidate.vectors, gens))
}

/// Like [`verify_sector`] for an arbitrary linearly independent spanning set.
pub fn analyze_span(vectors: &[Vec<Cyclotomic>], gens: &[Matrix]) -> SectorCheck {
    let dim = vectors.len();
    match restrict(gens, vectors) {
        Some(rs) => SectorCheck { dim, invariant: true, irreducible: commutant_dim(&rs) == 1 },
        None => SectorCheck { dim, invariant: false, irreducible: false },
    }
}

/// Matrices of the generators on the span of `vectors`, in that (not
/// necessarily orthonormal) basis: `R = (B^dagger B)^{-1} B^dagger g B`.
/// `None` if the span is not invariant.
pub fn restrict(gens: &[Matrix], vectors: &[Vec<Cyclotomic>]) -> Option<Vec<Matrix>> {
    let b = Matrix::from_columns(vectors);
    let gram = b.adjoint().mul(&b);
    let gram_inv = gram.inverse().ok()?;
    gens.iter()
        .map(|g| {
            let y = g.mul(&b);
            let r = gram_inv.mul(&b.adjoint().mul(&y));
            (b.mul(&r) == y).then_some(r)
        })
        .collect()
}

/// `V^dagger g V` for an orthonormal `V`.
pub fn compress(gens: &[Matrix], sector: &Sector) -> Vec<Matrix> {
    let v = sector.as_matrix();
    let vd = v.adjoint();
    gens.iter().map(|g| vd.mul(&g.mul(&v))).collect()
}

/// Dimension of `{X : X g = g X for all g}`.
pub fn commutant_dim(gens: &[Matrix]) -> usize {
    let Some(k) = gens.first().map(Matrix::rows) else { return 0 };
    if k == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for g in gens {
        for i in 0..k {
            for j in 0..k {
                // (X g - g X)_{ij} = sum_b X_{ib} g_{bj} - sum_a g_{ia} X_{aj}
                let mut row = vec![Cyclotomic::zero(); k * k];
                for b in 0..k {
                    row[i * k + b] += &g[(b, j)];
                }
                for a in 0..k {
                    row[a * k + j] -= &g[(i, a)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return k * k;
    }
    let m = Matrix::from_rows(rows).expect("rectangular system");
    k * k - m.rank()
}

/// Result of splitting a representation into irreducible sectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// Mutually orthogonal sectors; vectors within a sector are orthogonal but
    /// not necessarily normalized.
    pub sectors: Vec<Sector>,
    /// `false` if some reducible piece could not be split further.
    pub complete: bool,
}

impl Decomposition {
    /// Sector dimensions, largest first.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.sectors.iter().map(Sector::dim).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Splits the space of `gens` into irreducible invariant subspaces.
///
/// Reducible pieces are split by spinning up eigenvectors of short words in
/// the generators (eigenvalues are tried among the 72nd roots of unity); the
/// orthogonal complement of an invariant subspace is invariant because the
/// generators are unitary.
pub fn decompose(gens: &[Matrix]) -> Decomposition {
    let Some(n) = gens.first().map(Matrix::rows) else {
        return Decomposition { sectors: Vec::new(), complete: true };
    };
    let full: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }).collect())
        .collect();
    let mut out = Decomposition { sectors: Vec::new(), complete: true };
    if n > 0 {
        split(gens, full, &mut out);
    }
    out
}

fn split(gens: &[Matrix], span: Vec<Vec<Cyclotomic>>, out: &mut Decomposition) {
    let k = span.len();
    let rs = restrict(gens, &span).expect("pieces are invariant");
    if k == 1 || commutant_dim(&rs) == 1 {
        out.sectors.push(Sector::new(gram_schmidt(&span)));
        return;
    }
    if rs.iter().all(|r| r.as_scalar().is_some()) {
        for v in gram_schmidt(&span) {
            out.sectors.push(Sector::new(vec![v]));
        }
        return;
    }
    let b = Matrix::from_columns(&span);
    let gram = b.adjoint().mul(&b);
    for x in short_words(&rs) {
        for lambda in (0..ORDER).map(Cyclotomic::zeta) {
            let shifted = x.sub(&Matrix::scalar(k, &lambda));
            let ns = shifted.nullspace();
            if ns.is_empty() {
                continue;
            }
            for v in &ns {
                let s = spin(v, &rs);
                if s.len() < k {
                    // Complement within the span, orthogonal in the ambient inner product.
                    let cond = Matrix::from_rows(
                        s.iter().map(|sv| gram.adjoint().mul_vec(sv).iter().map(Cyclotomic::conj).collect()).collect(),
                    )
                    .expect("rectangular");
                    let comp = cond.nullspace();
                    let lift = |c: &Vec<Cyclotomic>| b.mul_vec(c);
                    split(gens, s.iter().map(lift).collect(), out);
                    split(gens, comp.iter().map(lift).collect(), out);
                    return;
                }
            }
        }
    }
    out.complete = false;
    out.sectors.push(Sector::new(gram_schmidt(&span)));
}

/// Words of length one to three in the generators.
fn short_words(rs: &[Matrix]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = rs.to_vec();
    for a in rs {
        for b in rs {
            out.push(a.mul(b));
        }
    }
    for a in rs {
        for b in rs {
            for c in rs {
                out.push(a.mul(b).mul(c));
            }
        }
    }
    out
}

/// Smallest subspace containing `v` and invariant under `rs`.
fn spin(v: &[Cyclotomic], rs: &[Matrix]) -> Vec<Vec<Cyclotomic>> {
    let mut basis: Vec<Vec<Cyclotomic>> = vec![v.to_vec()];
    let mut next = 0;
    while next < basis.len() {
        let u = basis[next].clone();
        next += 1;
        for r in rs {
            let w = r.mul_vec(&u);
            let mut trial = basis.clone();
            trial.push(w.clone());
            if Matrix::from_rows(trial).expect("rectangular").rank() > basis.len() {
                basis.push(w);
            }
        }
    }
    basis
}

/// Exact Gram-Schmidt without normalization.
pub fn gram_schmidt(vs: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let mut out: Vec<Vec<Cyclotomic>> = Vec::new();
    for v in vs {
        let mut u = v.clone();
        for q in &out {
            let c = &inner(q, &u) / &inner(q, q);
            for (ui, qi) in u.iter_mut().zip(q) {
                *ui -= &(&c * qi);
            }
        }
        if u.iter().any(|x| !x.is_zero()) {
            out.push(u);
        }
    }
    out
}
