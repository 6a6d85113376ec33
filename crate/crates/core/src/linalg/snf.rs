//! Smith normal form over the integers with explicit unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `s == u * m * v` with `u`, `v` unimodular and `s` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Position of the smallest nonzero absolute value in the trailing block
/// starting at `(k, k)`; ties broken row-major.
fn smallest_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, k) else {
                return SmithForm { u, s: a, v };
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if a[(k, k)].is_negative() {
                a.negate_row(k);
                u.negate_row(k);
            }
            let p = a[(k, k)].clone();

            let mut clean = true;
            for i in k + 1..rows {
                let q = a[(i, k)].div_floor(&p);
                if !q.is_zero() {
                    a.add_row_multiple(i, k, &-&q);
                    u.add_row_multiple(i, k, &-&q);
                }
                clean &= a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                let q = a[(k, j)].div_floor(&p);
                if !q.is_zero() {
                    a.add_col_multiple(j, k, &-&q);
                    v.add_col_multiple(j, k, &-&q);
                }
                clean &= a[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility chain: fold an offending row into row k; the next
            // pass then produces a strictly smaller remainder.
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
    }
    SmithForm { u, s: a, v }
}

/// Nontrivial invariant factors (entries > 1) and free rank of the cokernel
/// of `relations: Z^cols -> Z^rows`.
pub fn cokernel_invariants(relations: &IntMatrix) -> (Vec<BigInt>, usize) {
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let free_rank = relations.rows() - diag.len();
    let torsion = diag.into_iter().filter(|d| *d > BigInt::from(1)).collect();
    (torsion, free_rank)
}

/// An integer solution of `a * x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(a), b)
}

pub fn solve_with(snf: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let r = snf.rank();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for i in 0..r {
        let (q, rem) = ub[i].div_rem(&snf.s[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis of the integer kernel of `a`, as vectors in `Z^cols`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank()..a.cols()).map(|j| snf.v.column(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).mul(&f.v), f.s);
        assert_eq!(f.u.determinant().abs(), BigInt::from(1));
        assert_eq!(f.v.determinant().abs(), BigInt::from(1));
        f
    }

    #[test]
    fn zero_matrix() {
        let f = check(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(f.s, IntMatrix::from_rows(&[vec![0]]));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let f = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(f.s, IntMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn two_by_two() {
        let f = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(f.s, IntMatrix::diagonal(&[2, 4]));
    }

    #[test]
    fn known_four_by_four() {
        let m = IntMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let f = check(&m);
        assert_eq!(f.s, IntMatrix::diagonal(&[1, 3, 21, 0]));
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows(&[vec![2, 4]]);
        assert!(solve(&a, &[BigInt::from(3)]).is_none());
        let x = solve(&a, &[BigInt::from(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(6)]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn cokernel_of_single_column() {
        let r = IntMatrix::from_rows(&[vec![2], vec![-2]]);
        let (t, free) = cokernel_invariants(&r);
        assert_eq!(t, vec![BigInt::from(2)]);
        assert_eq!(free, 1);
    }
}
