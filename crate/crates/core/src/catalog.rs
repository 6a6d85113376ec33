//! Small finite monoids and finite rings used as test inputs.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::Result;
use crate::finab::PresentedAbGroup;
use crate::finset::FinSet;
use crate::monoid::MonoidObject;

/// All monoids of order `n` up to isomorphism, as multiplication tables with
/// the identity at index 0. Each table is the lexicographically smallest
/// among its relabelings; the list is sorted.
pub fn monoid_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return Vec::new();
    }
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let perms = permutations_fixing_zero(n);
    let mut table = vec![vec![0; n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        row[0] = a;
    }
    for (b, x) in table[0].iter_mut().enumerate() {
        *x = b;
    }
    let mut found = BTreeSet::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut rest = code;
        for &(a, b) in &free {
            table[a][b] = rest % n;
            rest /= n;
        }
        if is_associative(&table) {
            let canon = perms
                .iter()
                .map(|p| relabel(&table, p))
                .min()
                .expect("at least the identity permutation");
            found.insert(canon);
        }
    }
    found.into_iter().collect()
}

fn is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// The table of the monoid transported along the bijection `p`.
fn relabel(t: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut inv = vec![0; n];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    (0..n)
        .map(|a| (0..n).map(|b| p[t[inv[a]][inv[b]]]).collect())
        .collect()
}

/// Every monoid of order `1..=max_order`, smallest first.
pub fn monoids_up_to(max_order: usize) -> Vec<MonoidObject<FinSet>> {
    (1..=max_order)
        .flat_map(monoid_tables)
        .map(|t| MonoidObject::from_table(&t, 0).expect("catalog tables are square"))
        .collect()
}

pub fn cyclic_group(n: usize) -> MonoidObject<FinSet> {
    let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    MonoidObject::from_table(&t, 0).expect("square")
}

/// `(Z/n, ·, 1)`.
pub fn multiplicative_mod(n: usize) -> MonoidObject<FinSet> {
    let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
    MonoidObject::from_table(&t, 1 % n).expect("square")
}

/// A ring on `Z/m_1 ⊕ … ⊕ Z/m_k` whose basis products and unit are given
/// by integer coordinates.
pub fn ring_on_basis(
    moduli: &[u64],
    product: impl Fn(usize, usize) -> Vec<i64>,
    unit: &[i64],
) -> Result<MonoidObject<crate::finab::FinAb>> {
    let group = PresentedAbGroup::diagonal(moduli);
    let to_big = |v: Vec<i64>| group.reduce(&v.into_iter().map(BigInt::from).collect::<Vec<_>>());
    let unit = to_big(unit.to_vec());
    MonoidObject::ring(group.clone(), |i, j| to_big(product(i, j)), unit)
}

fn delta(k: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

pub fn zmod_ring(n: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    ring_on_basis(&[n], |_, _| vec![1], &[1])
}

/// `Z/a × Z/b`, on the idempotents `(1,0)`, `(0,1)`.
pub fn product_ring(a: u64, b: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    ring_on_basis(&[a, b], |i, j| if i == j { delta(2, i) } else { vec![0, 0] }, &[1, 1])
}

/// `Z/n[ε]/(ε²)`, on `1, ε`.
pub fn dual_numbers(n: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    ring_on_basis(&[n, n], |i, j| if i + j < 2 { delta(2, i + j) } else { vec![0, 0] }, &[1, 0])
}

/// `Z/n[C_2]`, on `1, g`.
pub fn group_ring_c2(n: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    ring_on_basis(&[n, n], |i, j| delta(2, (i + j) % 2), &[1, 0])
}

/// Upper triangular 2x2 matrices over `Z/n`, on `e11, e12, e22`.
pub fn upper_triangular(n: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    let entries = [(0, 0), (0, 1), (1, 1)];
    ring_on_basis(
        &[n, n, n],
        |i, j| matrix_unit_product(&entries, i, j),
        &[1, 0, 1],
    )
}

/// All 2x2 matrices over `Z/n`, on `e11, e12, e21, e22`.
pub fn matrix_ring(n: u64) -> Result<MonoidObject<crate::finab::FinAb>> {
    let entries = [(0, 0), (0, 1), (1, 0), (1, 1)];
    ring_on_basis(
        &[n, n, n, n],
        |i, j| matrix_unit_product(&entries, i, j),
        &[1, 0, 0, 1],
    )
}

fn matrix_unit_product(entries: &[(usize, usize)], i: usize, j: usize) -> Vec<i64> {
    let (a, b) = entries[i];
    let (c, d) = entries[j];
    if b != c {
        return vec![0; entries.len()];
    }
    let k = entries.iter().position(|&e| e == (a, d)).expect("closed under products");
    delta(entries.len(), k)
}
