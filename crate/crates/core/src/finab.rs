//! Finitely generated abelian groups, presented as cokernels of integer
//! relation matrices, with the tensor product over `Z`.
//!
//! A group on `g` generators is `Z^g / L` for a relation lattice `L`. The
//! lattice is stored in its canonical echelon basis, so two presentations on
//! the same generators compare equal exactly when they have the same
//! relations. Generators of `A ⊗ B` are pairs flattened row-major, which
//! together with the canonical basis makes the tensor strictly associative
//! and `Z` a strict unit.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{Coequalizer, Coproduct, HomBattery, MonoidalCategory};
use crate::error::{Error, Result};
use crate::json_int;
use crate::linalg::{cokernel_invariants, kernel_basis, smith_normal_form, solve, IntMatrix, Lattice};

struct GroupData {
    gens: usize,
    relations: Lattice,
    invariants: OnceLock<(Vec<BigInt>, usize)>,
}

/// `Z^gens / relations`.
#[derive(Clone)]
pub struct PresentedAbGroup(Arc<GroupData>);

impl PartialEq for PresentedAbGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.gens == other.0.gens && self.0.relations == other.0.relations)
    }
}

impl Eq for PresentedAbGroup {}

impl fmt::Debug for PresentedAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ab(gens={}, relations={:?})", self.gens(), self.relation_matrix())
    }
}

impl PresentedAbGroup {
    fn from_lattice(relations: Lattice) -> Self {
        PresentedAbGroup(Arc::new(GroupData {
            gens: relations.dim(),
            relations,
            invariants: OnceLock::new(),
        }))
    }

    /// The cokernel of `relations: Z^k -> Z^gens`.
    pub fn new(gens: usize, relations: &IntMatrix) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::InvalidObject(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                gens
            )));
        }
        Ok(Self::from_lattice(Lattice::column_span(relations)))
    }

    pub fn from_relation_columns(gens: usize, columns: Vec<Vec<BigInt>>) -> Result<Self> {
        if columns.iter().any(|c| c.len() != gens) {
            return Err(Error::InvalidObject(format!(
                "relation columns must have length {gens}"
            )));
        }
        Ok(Self::from_lattice(Lattice::spanned_by(gens, columns)))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_lattice(Lattice::zero(rank))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n` (with `Z/0 = Z`).
    pub fn cyclic(n: u64) -> Self {
        Self::diagonal(&[n])
    }

    /// `Z/n_1 ⊕ … ⊕ Z/n_k`, one generator per factor.
    pub fn diagonal(moduli: &[u64]) -> Self {
        let k = moduli.len();
        let columns = moduli.iter().enumerate().map(|(i, &n)| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = BigInt::from(n);
            c
        });
        Self::from_lattice(Lattice::spanned_by(k, columns))
    }

    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &Lattice {
        &self.0.relations
    }

    /// Canonical relation matrix (columns are the echelon basis).
    pub fn relation_matrix(&self) -> IntMatrix {
        self.0.relations.basis_matrix()
    }

    fn invariants(&self) -> &(Vec<BigInt>, usize) {
        self.0
            .invariants
            .get_or_init(|| cokernel_invariants(&self.relation_matrix()))
    }

    /// Invariant factors greater than one, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariants().0
    }

    pub fn free_rank(&self) -> usize {
        self.invariants().1
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn is_finite(&self) -> bool {
        self.0.relations.is_full_rank()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| {
            self.0
                .relations
                .pivots()
                .into_iter()
                .map(|(_, p)| p)
                .product()
        })
    }

    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.0.relations.reduce(v)
    }

    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        self.0.relations.contains(v)
    }

    /// Membership in the relation lattice decided by SNF solvability; agrees
    /// with [`PresentedAbGroup::is_relation`].
    pub fn is_relation_by_snf(&self, v: &[BigInt]) -> bool {
        solve(&self.relation_matrix(), v).is_some()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.gens()];
        v[i] = BigInt::one();
        v
    }

    fn radices(&self) -> Result<Vec<usize>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        self.0
            .relations
            .pivots()
            .into_iter()
            .map(|(_, p)| {
                p.to_usize()
                    .ok_or_else(|| Error::InvalidObject("group too large to enumerate".into()))
            })
            .collect()
    }

    /// Number of elements of a finite group.
    pub fn size(&self) -> Result<usize> {
        self.radices()?
            .into_iter()
            .try_fold(1usize, |a, r| a.checked_mul(r))
            .ok_or_else(|| Error::InvalidObject("group too large to enumerate".into()))
    }

    /// The canonical representative with index `index`; indices run over
    /// reduced coordinates in mixed radix, first generator most significant.
    pub fn element(&self, index: usize) -> Result<Vec<BigInt>> {
        let radices = self.radices()?;
        let mut rest = index;
        let mut v = vec![BigInt::zero(); radices.len()];
        for (i, r) in radices.iter().enumerate().rev() {
            v[i] = BigInt::from(rest % r);
            rest /= r;
        }
        if rest != 0 {
            return Err(Error::InvalidObject(format!("element index {index} out of range")));
        }
        Ok(v)
    }

    pub fn element_index(&self, v: &[BigInt]) -> Result<usize> {
        let radices = self.radices()?;
        let r = self.reduce(v);
        Ok(r.iter().zip(&radices).fold(0usize, |acc, (x, &rad)| {
            acc * rad + x.to_usize().expect("reduced coordinate fits")
        }))
    }

    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.size()?).map(|i| self.element(i)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    gens: usize,
    #[serde(
        default,
        serialize_with = "json_int::serialize_rows",
        deserialize_with = "json_int::deserialize_rows"
    )]
    relations: Vec<Vec<BigInt>>,
}

impl Serialize for PresentedAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            gens: self.gens(),
            relations: self.0.relations.basis().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PresentedAbGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupRepr::deserialize(d)?;
        PresentedAbGroup::from_relation_columns(r.gens, r.relations)
            .map_err(serde::de::Error::custom)
    }
}

/// A homomorphism given by its action on generators: column `j` of `matrix`
/// is the image of generator `j` of the domain.
#[derive(Clone, PartialEq, Eq)]
pub struct AbMor {
    dom: PresentedAbGroup,
    cod: PresentedAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for AbMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.dom, self.cod, self.matrix)
    }
}

impl AbMor {
    /// Checks dimensions and that relations of the domain map to relations of
    /// the codomain.
    pub fn new(dom: PresentedAbGroup, cod: PresentedAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (cod.gens(), dom.gens()) {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{} but the morphism needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                cod.gens(),
                dom.gens()
            )));
        }
        for (k, r) in dom.relations().basis().iter().enumerate() {
            if !cod.is_relation(&matrix.mul_vec(r)) {
                return Err(Error::InvalidMorphism(format!(
                    "relation {k} of the domain does not map to a relation"
                )));
            }
        }
        Ok(AbMor { dom, cod, matrix })
    }

    pub(crate) fn new_unchecked(dom: PresentedAbGroup, cod: PresentedAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (cod.gens(), dom.gens()));
        AbMor { dom, cod, matrix }
    }

    pub fn zero(dom: &PresentedAbGroup, cod: &PresentedAbGroup) -> Self {
        Self::new_unchecked(dom.clone(), cod.clone(), IntMatrix::zeros(cod.gens(), dom.gens()))
    }

    pub fn dom(&self) -> &PresentedAbGroup {
        &self.dom
    }

    pub fn cod(&self) -> &PresentedAbGroup {
        &self.cod
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of a coordinate vector, reduced to its canonical representative.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.cod.reduce(&self.matrix.mul_vec(v))
    }
}

#[derive(Serialize, Deserialize)]
struct AbMorRepr {
    dom: PresentedAbGroup,
    cod: PresentedAbGroup,
    #[serde(
        serialize_with = "json_int::serialize_rows",
        deserialize_with = "json_int::deserialize_rows"
    )]
    matrix: Vec<Vec<BigInt>>,
}

impl Serialize for AbMor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AbMorRepr {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            matrix: self.matrix.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbMor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = AbMorRepr::deserialize(d)?;
        matrix_from_rows(&r.matrix, r.cod.gens(), r.dom.gens())
            .and_then(|m| AbMor::new(r.dom, r.cod, m))
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn matrix_from_rows(rows: &[Vec<BigInt>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidMorphism(format!("expected a {nrows}x{ncols} matrix")));
    }
    Ok(IntMatrix::from_rows_with_cols(rows, ncols))
}

/// The monoidal category of finitely presented abelian groups.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinAb;

/// Cyclic test targets for the universal-property battery.
const BATTERY_TARGETS: [u64; 3] = [2, 3, 4];
const BATTERY_CAP: usize = 1024;

impl FinAb {
    /// Preimages of the generators of `epi`'s codomain, as columns of a
    /// `dom.gens x cod.gens` matrix, if `epi` is surjective.
    fn section_matrix(&self, epi: &AbMor) -> Option<IntMatrix> {
        if epi.matrix.is_identity() {
            return Some(IntMatrix::identity(epi.dom.gens()));
        }
        let system = epi.matrix.hcat(&epi.cod.relation_matrix());
        let snf = smith_normal_form(&system);
        let mut columns = Vec::with_capacity(epi.cod.gens());
        for j in 0..epi.cod.gens() {
            let y = crate::linalg::solve_with(&snf, &epi.cod.basis_vector(j))?;
            columns.push(y[..epi.dom.gens()].to_vec());
        }
        Some(IntMatrix::from_columns(epi.dom.gens(), &columns))
    }

    /// All homomorphisms `src -> Z/n`, as row vectors with entries in `0..n`.
    fn homs_to_cyclic(&self, src: &PresentedAbGroup, n: u64, rng: &mut ChaCha8Rng) -> (Vec<AbMor>, bool) {
        let g = src.gens();
        let target = PresentedAbGroup::cyclic(n);
        let nb = BigInt::from(n);
        let valid = |row: &[u64]| {
            src.relations().basis().iter().all(|r| {
                let s: BigInt = row.iter().zip(r).map(|(&x, y)| BigInt::from(x) * y).sum();
                s.is_multiple_of(&nb)
            })
        };
        let make = |row: &[u64]| {
            AbMor::new_unchecked(
                src.clone(),
                target.clone(),
                IntMatrix::from_rows_with_cols(&[row.to_vec()], g),
            )
        };
        let total = (n as usize).checked_pow(g as u32);
        match total {
            Some(t) if t <= BATTERY_CAP => {
                let mut out = Vec::new();
                let mut row = vec![0u64; g];
                for idx in 0..t {
                    let mut rest = idx;
                    for x in row.iter_mut().rev() {
                        *x = (rest % n as usize) as u64;
                        rest /= n as usize;
                    }
                    if valid(&row) {
                        out.push(make(&row));
                    }
                }
                (out, true)
            }
            _ => {
                let out = (0..BATTERY_CAP / BATTERY_TARGETS.len())
                    .map(|_| (0..g).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>())
                    .filter(|row| valid(row))
                    .map(|row| make(&row))
                    .collect();
                (out, false)
            }
        }
    }
}

impl MonoidalCategory for FinAb {
    type Object = PresentedAbGroup;
    type Morphism = AbMor;

    fn unit_object(&self) -> PresentedAbGroup {
        PresentedAbGroup::free(1)
    }

    fn domain<'a>(&self, f: &'a AbMor) -> &'a PresentedAbGroup {
        &f.dom
    }

    fn codomain<'a>(&self, f: &'a AbMor) -> &'a PresentedAbGroup {
        &f.cod
    }

    fn identity(&self, x: &PresentedAbGroup) -> AbMor {
        AbMor::new_unchecked(x.clone(), x.clone(), IntMatrix::identity(x.gens()))
    }

    fn compose(&self, g: &AbMor, f: &AbMor) -> Result<AbMor> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!("{f:?} then {g:?}")));
        }
        Ok(AbMor::new_unchecked(
            f.dom.clone(),
            g.cod.clone(),
            g.matrix.mul(&f.matrix),
        ))
    }

    fn tensor(&self, x: &PresentedAbGroup, y: &PresentedAbGroup) -> PresentedAbGroup {
        let (gx, gy) = (x.gens(), y.gens());
        let left = x.relation_matrix().kron(&IntMatrix::identity(gy));
        let right = IntMatrix::identity(gx).kron(&y.relation_matrix());
        PresentedAbGroup::from_lattice(Lattice::spanned_by(
            gx * gy,
            left.columns().chain(right.columns()),
        ))
    }

    fn tensor_mor(&self, f: &AbMor, g: &AbMor) -> AbMor {
        AbMor::new_unchecked(
            self.tensor(&f.dom, &g.dom),
            self.tensor(&f.cod, &g.cod),
            f.matrix.kron(&g.matrix),
        )
    }

    fn first_difference(&self, f: &AbMor, g: &AbMor) -> Result<Option<usize>> {
        if !self.parallel(f, g) {
            return Err(Error::NotParallel(format!("{f:?} vs {g:?}")));
        }
        let diff = f.matrix.sub(&g.matrix);
        Ok((0..diff.cols()).find(|&j| !f.cod.is_relation(&diff.column(j))))
    }

    fn coequalizer(&self, f: &AbMor, g: &AbMor) -> Result<Coequalizer<Self>> {
        if !self.parallel(f, g) {
            return Err(Error::NotParallel("coequalizer".into()));
        }
        let a = &f.cod;
        let diff = f.matrix.sub(&g.matrix);
        let quotient = PresentedAbGroup::from_lattice(Lattice::spanned_by(
            a.gens(),
            a.relations().basis().iter().cloned().chain(diff.columns()),
        ));
        let projection =
            AbMor::new_unchecked(a.clone(), quotient.clone(), IntMatrix::identity(a.gens()));
        Ok(Coequalizer::single(quotient, projection, f.clone(), g.clone()))
    }

    fn factor_through_epi(&self, epi: &AbMor, h: &AbMor) -> Result<AbMor> {
        if epi.dom != h.dom {
            return Err(Error::NotComposable("epi and map must share a domain".into()));
        }
        let section = self
            .section_matrix(epi)
            .ok_or_else(|| Error::NoFactorization("not an epimorphism".into()))?;
        let u = AbMor::new(epi.cod.clone(), h.cod.clone(), h.matrix.mul(&section))
            .map_err(|e| Error::NoFactorization(e.to_string()))?;
        if let Some(j) = self.first_difference(&self.compose(&u, epi)?, h)? {
            return Err(Error::NoFactorization(format!(
                "generator {j} is not sent consistently"
            )));
        }
        Ok(u)
    }

    fn is_regular_epi(&self, f: &AbMor) -> bool {
        self.section_matrix(f).is_some()
    }

    fn coproduct(&self, x: &PresentedAbGroup, y: &PresentedAbGroup) -> Result<Coproduct<Self>> {
        let (gx, gy) = (x.gens(), y.gens());
        let object = PresentedAbGroup::new(
            gx + gy,
            &x.relation_matrix().block_diag(&y.relation_matrix()),
        )?;
        let left = IntMatrix::identity(gx).block_diag(&IntMatrix::zeros(gy, 0));
        let right = IntMatrix::zeros(gx, 0).block_diag(&IntMatrix::identity(gy));
        Ok(Coproduct {
            left: AbMor::new_unchecked(x.clone(), object.clone(), left),
            right: AbMor::new_unchecked(y.clone(), object.clone(), right),
            object,
        })
    }

    fn copair(&self, cp: &Coproduct<Self>, f: &AbMor, g: &AbMor) -> Result<AbMor> {
        if f.cod != g.cod {
            return Err(Error::CodomainMismatch("copairing".into()));
        }
        if f.dom != cp.left.dom || g.dom != cp.right.dom {
            return Err(Error::NotComposable("copairing components".into()));
        }
        AbMor::new(cp.object.clone(), f.cod.clone(), f.matrix.hcat(&g.matrix))
    }

    fn image_factorization(&self, f: &AbMor) -> Result<(AbMor, AbMor)> {
        let ga = f.dom.gens();
        let system = f.matrix.hcat(&f.cod.relation_matrix());
        let kernel = kernel_basis(&system)
            .into_iter()
            .map(|k| k[..ga].to_vec())
            .collect();
        let image = PresentedAbGroup::from_relation_columns(ga, kernel)?;
        let epi = AbMor::new(f.dom.clone(), image.clone(), IntMatrix::identity(ga))?;
        let mono = AbMor::new(image, f.cod.clone(), f.matrix.clone())?;
        Ok((epi, mono))
    }

    fn hom_battery(&self, src: &PresentedAbGroup) -> HomBattery<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(src.gens() as u64);
        let mut morphisms = Vec::new();
        let mut complete = true;
        for n in BATTERY_TARGETS {
            let (homs, full) = self.homs_to_cyclic(src, n, &mut rng);
            morphisms.extend(homs);
            complete &= full;
        }
        HomBattery {
            morphisms,
            complete,
        }
    }
}
