//! Sublattices of `Z^n` kept in a canonical echelon basis.
//!
//! The basis is the unique reduced row-echelon (Hermite) form: every basis
//! vector has a positive pivot at its first nonzero coordinate, pivots sit in
//! strictly increasing columns, and every entry of an earlier vector lying in
//! a later pivot column is reduced into `[0, pivot)`. Two generating sets span
//! the same lattice iff their canonical bases are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    /// Basis vectors ordered by pivot column.
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn spanned_by<I>(dim: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut builder = EchelonBuilder::new(dim);
        for v in generators {
            builder.insert(v);
        }
        builder.finish()
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &IntMatrix) -> Self {
        Self::spanned_by(m.rows(), m.columns())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis as the columns of a `dim x rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.basis)
    }

    fn pivot(v: &[BigInt]) -> Option<usize> {
        v.iter().position(|x| !x.is_zero())
    }

    pub fn pivots(&self) -> Vec<(usize, BigInt)> {
        self.basis
            .iter()
            .map(|b| {
                let c = Self::pivot(b).expect("basis vectors are nonzero");
                (c, b[c].clone())
            })
            .collect()
    }

    /// Canonical representative of the coset `v + L`: pivot coordinates land
    /// in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        for b in &self.basis {
            let c = Self::pivot(b).expect("basis vectors are nonzero");
            if v[c].is_zero() {
                continue;
            }
            let q = v[c].div_floor(&b[c]);
            if !q.is_zero() {
                axpy(&mut v, &(-q), b, c);
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        Self::spanned_by(
            self.dim,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// True when `Z^dim / L` is finite.
    pub fn is_full_rank(&self) -> bool {
        self.basis.len() == self.dim
    }
}

/// `v += c * b`, skipping coordinates before `from` (zero in `b`).
fn axpy(v: &mut [BigInt], c: &BigInt, b: &[BigInt], from: usize) {
    for (x, y) in v[from..].iter_mut().zip(&b[from..]) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Incremental echelon reduction.
struct EchelonBuilder {
    dim: usize,
    by_pivot: Vec<Option<Vec<BigInt>>>,
}

impl EchelonBuilder {
    fn new(dim: usize) -> Self {
        EchelonBuilder {
            dim,
            by_pivot: vec![None; dim],
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "generator length mismatch");
        let mut start = 0;
        loop {
            let Some(c) = (start..self.dim).find(|&i| !v[i].is_zero()) else {
                return;
            };
            match self.by_pivot[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.by_pivot[c] = Some(v);
                    return;
                }
                Some(mut b) => {
                    let (q, r) = v[c].div_mod_floor(&b[c]);
                    if r.is_zero() {
                        axpy(&mut v, &(-q), &b, c);
                        self.by_pivot[c] = Some(b);
                    } else {
                        // Replace (b, v) by a unimodular combination whose
                        // first vector has pivot gcd(b_c, v_c).
                        let ext = b[c].extended_gcd(&v[c]);
                        let (g, s, t) = (ext.gcd, ext.x, ext.y);
                        let bc = &b[c] / &g;
                        let vc = &v[c] / &g;
                        let new_b: Vec<BigInt> =
                            b.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                        let new_v: Vec<BigInt> =
                            b.iter().zip(&v).map(|(x, y)| &vc * x - &bc * y).collect();
                        b = new_b;
                        if b[c].is_negative() {
                            b.iter_mut().for_each(|x| *x = -&*x);
                        }
                        self.by_pivot[c] = Some(b);
                        v = new_v;
                    }
                    start = c + 1;
                }
            }
        }
    }

    fn finish(self) -> Lattice {
        let mut basis: Vec<Vec<BigInt>> = self.by_pivot.into_iter().flatten().collect();
        let pivots: Vec<usize> = basis
            .iter()
            .map(|b| Lattice::pivot(b).expect("nonzero"))
            .collect();
        for j in 0..basis.len() {
            let (cj, pj) = (pivots[j], basis[j][pivots[j]].clone());
            debug_assert!(pj.is_positive());
            for i in 0..j {
                let q = basis[i][cj].div_floor(&pj);
                if !q.is_zero() {
                    let bj = basis[j].clone();
                    axpy(&mut basis[i], &(-q), &bj, cj);
                }
            }
        }
        debug_assert!(basis.iter().all(|b| !b.iter().all(Zero::is_zero)));
        Lattice {
            dim: self.dim,
            basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_basis_is_independent_of_generators() {
        let a = Lattice::spanned_by(2, [v(&[2, 0]), v(&[0, 3])]);
        let b = Lattice::spanned_by(2, [v(&[2, 3]), v(&[4, 3]), v(&[0, 6])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[2, 0]), v(&[0, 3])]);
    }

    #[test]
    fn gcd_pivots() {
        let l = Lattice::spanned_by(1, [v(&[8]), v(&[2])]);
        assert_eq!(l.basis(), &[v(&[2])]);
        assert!(l.contains(&v(&[6])));
        assert!(!l.contains(&v(&[3])));
        assert_eq!(l.reduce(&v(&[-3])), v(&[1]));
    }

    #[test]
    fn reduction_is_canonical() {
        let l = Lattice::spanned_by(2, [v(&[2, -2])]);
        assert_eq!(l.basis(), &[v(&[2, -2])]);
        assert_eq!(l.reduce(&v(&[3, 0])), v(&[1, 2]));
        assert_eq!(l.reduce(&v(&[1, 2])), v(&[1, 2]));
        assert!(!l.is_full_rank());
    }
}
