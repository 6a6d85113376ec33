mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{congruence_quotient, smith_diagonal_by_minors};
use monoid_colimits::catalog::{monoid_tables, monoids_up_to};
use monoid_colimits::category::MonoidalCategory;
use monoid_colimits::finset::{FinSet, FinSetMor, FinSetObj};
use monoid_colimits::free::{homomorphic_extension, WordMonoid};
use monoid_colimits::linalg::{smith_normal_form, IntMatrix, Lattice};
use monoid_colimits::lifting::monoid_morphisms;
use monoid_colimits::monoid::{lambda_equivalence, monoid_coequalizer, MonoidObject};
use monoid_colimits::Error;

/// Monoids of order 1 to 4.
fn small_monoids() -> &'static [MonoidObject<FinSet>] {
    static CELL: OnceLock<Vec<MonoidObject<FinSet>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = monoids_up_to(3);
        out.extend(monoid_tables(4).iter().map(|t| MonoidObject::from_table(t, 0).unwrap()));
        out
    })
}

fn probes() -> &'static [MonoidObject<FinSet>] {
    static CELL: OnceLock<Vec<MonoidObject<FinSet>>> = OnceLock::new();
    CELL.get_or_init(|| monoids_up_to(3))
}

fn big(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn word(max_letter: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..max_letter, 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_form_a_monoid(n in 1usize..4, u in word(3), v in word(3), w in word(3)) {
        let words = WordMonoid::new(FinSetObj::new(n));
        let clip = |x: Vec<usize>| x.into_iter().map(|a| a % n).collect::<Vec<_>>();
        let (u, v, w) = (clip(u), clip(v), clip(w));
        prop_assert_eq!(
            words.multiply(&words.multiply(&u, &v), &w),
            words.multiply(&u, &words.multiply(&v, &w))
        );
        prop_assert_eq!(words.multiply(&words.unit(), &u), u.clone());
        prop_assert_eq!(words.multiply(&u, &words.unit()), u.clone());
        prop_assert_eq!(words.multiply(&u, &v).len(), u.len() + v.len());
    }

    #[test]
    fn word_extension_is_multiplicative(
        which in 0usize..45,
        images in prop::collection::vec(0usize..4, 3),
        u in word(3),
        v in word(3),
    ) {
        let a = &small_monoids()[which % small_monoids().len()];
        let alpha = FinSetMor::new(
            FinSetObj::new(3),
            a.carrier.clone(),
            images.iter().map(|&i| i % a.size()).collect(),
        ).unwrap();
        let ext = homomorphic_extension(&alpha, a).unwrap();
        let words = ext.words().clone();
        // reference: fold the word left to right in the table
        let fold = |w: &[usize]| w.iter().fold(a.unit_element(), |acc, &x| a.multiply(acc, alpha.apply(x)));
        prop_assert_eq!(ext.evaluate(&u).unwrap(), fold(&u));
        prop_assert_eq!(
            ext.evaluate(&words.multiply(&u, &v)).unwrap(),
            a.multiply(ext.evaluate(&u).unwrap(), ext.evaluate(&v).unwrap())
        );
        prop_assert_eq!(ext.evaluate(&[]).unwrap(), a.unit_element());
    }

    #[test]
    fn smith_form_invariants(
        rows in 1usize..4,
        cols in 1usize..4,
        entries in prop::collection::vec(-9i64..10, 9),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 3 + j]).collect()).collect();
        let mat = big(&m);
        let snf = smith_normal_form(&mat);
        prop_assert_eq!(snf.u.mul(&mat).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.determinant() == BigInt::one() || snf.u.determinant() == -BigInt::one());
        prop_assert!(snf.v.determinant() == BigInt::one() || snf.v.determinant() == -BigInt::one());
        for i in 0..rows {
            for j in 0..cols {
                prop_assert!(i == j || snf.s[(i, j)].is_zero());
            }
        }
        let diag = snf.diagonal();
        for pair in diag.windows(2) {
            prop_assert!((&pair[1] % &pair[0]).is_zero());
        }
        let expected: Vec<BigInt> = smith_diagonal_by_minors(&m).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(diag, expected);
    }

    #[test]
    fn lattice_basis_is_canonical(
        gens in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 1..5),
        mix in prop::collection::vec(-3i64..4, 4),
        shift in prop::collection::vec(-20i64..21, 3),
    ) {
        let to_big = |v: &Vec<i64>| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let l = Lattice::spanned_by(3, gens.iter().map(to_big));
        // same span: reversed order plus an integer combination of the generators
        let mut combo = vec![BigInt::zero(); 3];
        for (g, c) in gens.iter().zip(&mix) {
            for (x, y) in combo.iter_mut().zip(g) {
                *x += BigInt::from(c * y);
            }
        }
        let again = Lattice::spanned_by(3, gens.iter().rev().map(to_big).chain(std::iter::once(combo.clone())));
        prop_assert_eq!(&l, &again);
        for g in &gens {
            prop_assert!(l.contains(&to_big(g)));
        }
        // pivots are positive, strictly increasing and reduce earlier vectors
        let pivots = l.pivots();
        for w in pivots.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
        for (k, (col, p)) in pivots.iter().enumerate() {
            prop_assert!(*p > BigInt::zero());
            for b in &l.basis()[..k] {
                prop_assert!(b[*col] >= BigInt::zero() && &b[*col] < p);
            }
        }
        // reduction is constant on cosets and idempotent
        let v = to_big(&shift);
        let moved: Vec<BigInt> = v.iter().zip(&combo).map(|(a, b)| a + b).collect();
        prop_assert_eq!(l.reduce(&v), l.reduce(&moved));
        prop_assert_eq!(l.reduce(&l.reduce(&v)), l.reduce(&v));
    }

    #[test]
    fn coequalizer_matches_congruence_and_is_universal(which in 0usize..45, x in 0usize..4, y in 0usize..4) {
        let a = &small_monoids()[which % small_monoids().len()];
        let (x, y) = (x % a.size(), y % a.size());
        let alpha = FinSetMor::point(&a.carrier, x).unwrap();
        let beta = FinSetMor::point(&a.carrier, y).unwrap();
        let q = monoid_coequalizer(&FinSet, a, &alpha, &beta).unwrap();

        let (class, table) = congruence_quotient(&a.table(), &[(x, y)]);
        prop_assert_eq!(q.projection.map.table(), &class[..]);
        prop_assert_eq!(q.quotient.table(), table);

        for c in probes() {
            for tau in monoid_morphisms(a, c) {
                let coequalizes = tau.map.apply(x) == tau.map.apply(y);
                match q.factorize(&FinSet, &tau) {
                    Ok(sigma) => {
                        prop_assert!(coequalizes);
                        let back = FinSet.compose(&sigma.map, &q.projection.map).unwrap();
                        prop_assert!(FinSet.mor_eq(&back, &tau.map));
                        // uniqueness: π is surjective, so σ is forced on every class
                        for (i, &k) in class.iter().enumerate() {
                            prop_assert_eq!(sigma.map.apply(k), tau.map.apply(i));
                        }
                    }
                    Err(Error::NotCoequalizing(_)) => prop_assert!(!coequalizes),
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn lambda_equivalence_holds(which in 0usize..45, target in 0usize..10, x in 0usize..4, y in 0usize..4) {
        let a = &small_monoids()[which % small_monoids().len()];
        let c = &probes()[target % probes().len()];
        let alpha = FinSetMor::point(&a.carrier, x % a.size()).unwrap();
        let beta = FinSetMor::point(&a.carrier, y % a.size()).unwrap();
        for tau in monoid_morphisms(a, c) {
            let (lam, direct) = lambda_equivalence(&FinSet, &tau.map, a, &alpha, &beta).unwrap();
            prop_assert_eq!(lam, direct);
        }
    }
}
