//! Independent reference computations for the integration tests. Nothing
//! here calls into the library's quotient or normal-form machinery.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Smallest congruence on the monoid with table `t` containing `pairs`,
/// by iterating a boolean relation to a fixpoint. Returns the class of each
/// element (classes numbered in order of their smallest member) and the
/// quotient table.
pub fn congruence_quotient(t: &[Vec<usize>], pairs: &[(usize, usize)]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = t.len();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        r[a][b] = true;
        r[b][a] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !r[a][b] {
                    continue;
                }
                for c in 0..n {
                    for (x, y) in [(b, a), (t[c][a], t[c][b]), (t[a][c], t[b][c])] {
                        if !r[x][y] {
                            r[x][y] = true;
                            changed = true;
                        }
                    }
                    if r[b][c] && !r[a][c] {
                        r[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..n {
        if class[a] == usize::MAX {
            for b in a..n {
                if r[a][b] {
                    class[b] = next;
                }
            }
            next += 1;
        }
    }
    let mut rep = vec![0; next];
    for a in (0..n).rev() {
        rep[class[a]] = a;
    }
    let table = (0..next)
        .map(|i| (0..next).map(|j| class[t[rep[i]][rep[j]]]).collect())
        .collect();
    (class, table)
}

/// A finite ring on `Z/m_1 ⊕ … ⊕ Z/m_k` with integer structure constants.
#[derive(Clone, Debug)]
pub struct ToyRing {
    pub moduli: Vec<i64>,
    /// `products[i][j]` is `e_i · e_j`.
    pub products: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

impl ToyRing {
    pub fn normalize(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.moduli).map(|(x, m)| x.rem_euclid(*m)).collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.normalize(&s)
    }

    pub fn scale(&self, c: i64, x: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = x.iter().map(|a| a * c).collect();
        self.normalize(&s)
    }

    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let k = self.moduli.len();
        let mut out = vec![0; k];
        for i in 0..k {
            for j in 0..k {
                let c = x[i] * y[j];
                if c == 0 {
                    continue;
                }
                for (o, p) in out.iter_mut().zip(&self.products[i][j]) {
                    *o += c * p;
                }
            }
        }
        self.normalize(&out)
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|v| (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                }))
                .collect();
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.moduli.len()];
        v[i] = 1;
        self.normalize(&v)
    }

    /// The two-sided ideal generated by `gens`, closing under addition and
    /// multiplication by basis elements on either side.
    pub fn ideal(&self, gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        let zero = vec![0; self.moduli.len()];
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for g in std::iter::once(zero).chain(gens.iter().map(|g| self.normalize(g))) {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            let mut next = Vec::new();
            for i in 0..self.moduli.len() {
                let e = self.basis(i);
                next.push(self.mul(&e, &x));
                next.push(self.mul(&x, &e));
            }
            let current: Vec<Vec<i64>> = seen.iter().cloned().collect();
            for y in current {
                next.push(self.add(&x, &y));
            }
            for y in next {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Invariant factors of `A / I` from the torsion counts
    /// `|(A/I)[d]| = #{x : d·x ∈ I} / |I|`.
    pub fn quotient_invariants(&self, ideal: &BTreeSet<Vec<i64>>) -> Vec<u64> {
        let elements = self.elements();
        let order = elements.len() / ideal.len();
        let torsion = |d: i64| elements.iter().filter(|x| ideal.contains(&self.scale(d, x))).count() / ideal.len();
        invariants_from_torsion(order as u64, |d| torsion(d as i64) as u64)
    }
}

/// Invariant factors (ascending, all > 1) of a finite abelian group of the
/// given order from its torsion counts `d ↦ |G[d]|`.
pub fn invariants_from_torsion(order: u64, torsion: impl Fn(u64) -> u64) -> Vec<u64> {
    let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            // number of cyclic p-factors of exponent at least k
            let mut at_least = Vec::new();
            let mut prev = 1u64;
            for k in 1..=e {
                let here = torsion(p.pow(k));
                at_least.push(log_base(here / prev, p));
                prev = here;
            }
            let count = at_least.first().copied().unwrap_or(0);
            let exps: Vec<u32> = (0..count)
                .map(|i| at_least.iter().filter(|&&c| c > i).count() as u32)
                .collect();
            per_prime.insert(p, exps);
        }
        p += 1;
    }
    let slots = per_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for i in (0..slots).rev() {
        let mut d = 1;
        for (&p, exps) in &per_prime {
            if let Some(&e) = exps.get(i) {
                d *= p.pow(e);
            }
        }
        out.push(d);
    }
    out
}

fn log_base(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

/// Diagonal of the Smith form from determinantal divisors `d_k`, the gcd of
/// all `k x k` minors: `s_k = d_k / d_{k-1}`.
pub fn smith_diagonal_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut prev: i128 = 1;
    for k in 1..=rows.min(cols) {
        let mut g: i128 = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push((g / prev) as i64);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free elimination on a square matrix.
pub fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Structure constants of the monoid ring `Z[D]`: `[a]·[b] = [ab]`.
pub fn monoid_ring_products(t: &[Vec<usize>]) -> Vec<Vec<Vec<i64>>> {
    let n = t.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut v = vec![0; n];
                    v[t[a][b]] = 1;
                    v
                })
                .collect()
        })
        .collect()
}
