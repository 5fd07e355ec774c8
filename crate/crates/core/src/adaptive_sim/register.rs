//! Plain tensor products of qudits, for protocols written at circuit level.

use crate::exact_arith::{Cyclotomic, Matrix};

/// `C^{d_0} (x) C^{d_1} (x) ...`, site 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Register {
    dims: Vec<usize>,
}

impl Register {
    pub fn new(dims: Vec<usize>) -> Self {
        Register { dims }
    }

    pub fn qutrits(n: usize) -> Self {
        Register::new(vec![3; n])
    }

    pub fn qubits(n: usize) -> Self {
        Register::new(vec![2; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut d = vec![0; self.dims.len()];
        for (k, &n) in self.dims.iter().enumerate().rev() {
            d[k] = index % n;
            index /= n;
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    /// `op` acting on `sites` (in that order, first site most significant).
    pub fn local(&self, op: &Matrix, sites: &[usize]) -> Matrix {
        let sub = Register::new(sites.iter().map(|&s| self.dims[s]).collect());
        assert_eq!(op.rows(), sub.dim(), "operator size does not match its sites");
        let n = self.dim();
        let mut cols = vec![vec![Cyclotomic::zero(); n]; n];
        for (c, col) in cols.iter_mut().enumerate() {
            let d = self.digits(c);
            let src = sub.index(&sites.iter().map(|&s| d[s]).collect::<Vec<_>>());
            for k in 0..sub.dim() {
                let a = &op[(k, src)];
                if a.is_zero() {
                    continue;
                }
                let mut t = d.clone();
                for (&s, v) in sites.iter().zip(sub.digits(k)) {
                    t[s] = v;
                }
                col[self.index(&t)] = a.clone();
            }
        }
        Matrix::from_columns(&cols)
    }

    /// Tensor product of one vector per site.
    pub fn product(&self, states: &[Vec<Cyclotomic>]) -> Vec<Cyclotomic> {
        assert_eq!(states.len(), self.dims.len());
        (0..self.dim())
            .map(|i| self.digits(i).iter().zip(states).fold(Cyclotomic::one(), |acc, (&x, s)| &acc * &s[x]))
            .collect()
    }

    /// Orthonormal vectors spanning `span(local) (x) everything else` at `site`.
    pub fn site_span(&self, site: usize, local: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
        let rest = Register::new(self.dims.iter().enumerate().filter(|(k, _)| *k != site).map(|(_, &n)| n).collect());
        let mut out = Vec::new();
        for r in 0..rest.dim() {
            let rd = rest.digits(r);
            for v in local {
                let mut w = vec![Cyclotomic::zero(); self.dim()];
                for (x, a) in v.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    let mut d = rd.clone();
                    d.insert(site, x);
                    w[self.index(&d)] = a.clone();
                }
                out.push(w);
            }
        }
        out
    }

    /// Indices whose digit at `site` is `value`.
    pub fn digit_indices(&self, site: usize, value: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.digits(i)[site] == value).collect()
    }
}

/// `e_i` in dimension `n`.
pub fn unit(n: usize, i: usize) -> Vec<Cyclotomic> {
    (0..n).map(|k| if k == i { Cyclotomic::one() } else { Cyclotomic::zero() }).collect()
}
