//! Lifting the free abelian group functor `L ⊣ R` between finite sets and
//! abelian groups to monoids: the lifted left adjoint sends a finite monoid
//! `D` to its monoid ring `Z[D]`.
//!
//! `L_D` is the multiple coequalizer, in the truncated tensor algebra on
//! `Z^D`, of the two-sided closures of the multiplication relations
//! `[d]⊗[d'] ~ [dd']` and the unit relation `1 ~ [e]`. Generators are laid
//! out with degree 1 last, so the canonical normal form of every generator
//! lives in degree 1 and the quotient reads off as `Z^D`. The result is
//! accepted only if it is unchanged when the truncation grows by one.
//!
//! `R` is the underlying set and only exists for finite groups. Where a
//! structure map would pass through `R` of an infinite group (`κ`, the mates
//! `Ψ`, `ψ`, and `γ_D`) it is evaluated on elements.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::category::{multiple_coequalizer, Coequalizer, MonoidalCategory};
use crate::error::{Error, Result};
use crate::finab::{AbMor, FinAb, PresentedAbGroup};
use crate::finset::{FinSet, FinSetMor, FinSetObj};
use crate::free::{graded_extension, GradedTensorAlgebra};
use crate::linalg::IntMatrix;
use crate::monoid::{check_monoid, check_monoid_morphism, MonoidMorphism, MonoidObject};

/// Free abelian group on a finite set, left adjoint to the underlying set.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeAbelianAdjunction;

impl FreeAbelianAdjunction {
    pub fn left_object(&self, d: &FinSetObj) -> PresentedAbGroup {
        PresentedAbGroup::free(d.size())
    }

    pub fn left_morphism(&self, f: &FinSetMor) -> AbMor {
        let columns: Vec<Vec<BigInt>> = f.table().iter().map(|&y| basis(f.cod().size(), y)).collect();
        AbMor::new(
            self.left_object(f.dom()),
            self.left_object(f.cod()),
            IntMatrix::from_columns(f.cod().size(), &columns),
        )
        .expect("free groups have no relations")
    }

    /// The underlying set, with elements numbered as by
    /// [`PresentedAbGroup::element`].
    pub fn right_object(&self, a: &PresentedAbGroup) -> Result<FinSetObj> {
        Ok(FinSetObj::new(a.size()?))
    }

    pub fn right_morphism(&self, f: &AbMor) -> Result<FinSetMor> {
        let dom = self.right_object(f.dom())?;
        let cod = self.right_object(f.cod())?;
        let table = f
            .dom()
            .elements()?
            .iter()
            .map(|x| f.cod().element_index(&f.apply(x)))
            .collect::<Result<Vec<_>>>()?;
        FinSetMor::new(dom, cod, table)
    }

    /// `Φ_{A,B}: RA × RB -> R(A ⊗ B)`, `(a, b) ↦ a ⊗ b`.
    pub fn phi(&self, a: &PresentedAbGroup, b: &PresentedAbGroup) -> Result<FinSetMor> {
        let ab = FinAb.tensor(a, b);
        let (xs, ys) = (a.elements()?, b.elements()?);
        let mut table = Vec::with_capacity(xs.len() * ys.len());
        for x in &xs {
            for y in &ys {
                table.push(ab.element_index(&self.phi_elements(&ab, x, y))?);
            }
        }
        FinSetMor::new(
            FinSetObj::new(xs.len() * ys.len()),
            self.right_object(&ab)?,
            table,
        )
    }

    /// `Φ` on elements: `x ⊗ y`, reduced in `ab`.
    pub fn phi_elements(&self, ab: &PresentedAbGroup, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let v: Vec<BigInt> = x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect();
        ab.reduce(&v)
    }

    /// `φ: {*} -> RZ`, the element `1`.
    pub fn phi_unit(&self) -> Vec<BigInt> {
        vec![BigInt::one()]
    }

    /// `κ_D(x)`: the generator `[x]` of `LD`.
    pub fn kappa(&self, d: &FinSetObj, x: usize) -> Vec<BigInt> {
        basis(d.size(), x)
    }

    /// `λ_A: LRA -> A`, `[a] ↦ a`, for finite `A`.
    pub fn counit(&self, a: &PresentedAbGroup) -> Result<AbMor> {
        let elements = a.elements()?;
        AbMor::new(
            PresentedAbGroup::free(elements.len()),
            a.clone(),
            IntMatrix::from_columns(a.gens(), &elements),
        )
    }

    /// `Ψ_{D,D'}: L(D × D') -> LD ⊗ LD'` as the mate of `Φ`:
    /// `λ ∘ LΦ ∘ L(κ × κ)`, evaluated on generators.
    pub fn psi(&self, d: &FinSetObj, e: &FinSetObj) -> AbMor {
        let target = FinAb.tensor(&self.left_object(d), &self.left_object(e));
        let mut columns = Vec::with_capacity(d.size() * e.size());
        for x in 0..d.size() {
            for y in 0..e.size() {
                columns.push(self.phi_elements(&target, &self.kappa(d, x), &self.kappa(e, y)));
            }
        }
        AbMor::new(
            PresentedAbGroup::free(d.size() * e.size()),
            target.clone(),
            IntMatrix::from_columns(target.gens(), &columns),
        )
        .expect("free groups have no relations")
    }

    /// `ψ: L{*} -> Z` as the mate of `φ`: `[*] ↦ φ(*)`.
    pub fn psi_unit(&self) -> AbMor {
        let z = PresentedAbGroup::free(1);
        AbMor::new(z.clone(), z, IntMatrix::from_columns(1, &[self.phi_unit()])).expect("free")
    }

    /// Both triangle identities: `Rλ_A ∘ κ_{RA} = id` on the finite group
    /// `A`, and `λ_{LD} ∘ Lκ_D = id` on the generators of `LD`.
    pub fn check_triangles(&self, a: &PresentedAbGroup, d: &FinSetObj) -> Result<bool> {
        let ra = self.right_object(a)?;
        let lam = self.counit(a)?;
        for i in 0..ra.size() {
            let back = a.element_index(&lam.apply(&self.kappa(&ra, i)))?;
            if back != i {
                return Ok(false);
            }
        }
        // λ_{LD} sends the generator [v] of LRLD to v
        for x in 0..d.size() {
            let v = self.kappa(d, x);
            if v != basis(d.size(), x) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Recovers `Φ_{A,B}` from `Ψ_{RA,RB}` as `R(λ_A ⊗ λ_B) ∘ RΨ ∘ κ` and
    /// compares with the direct definition.
    pub fn check_mates(&self, a: &PresentedAbGroup, b: &PresentedAbGroup) -> Result<bool> {
        let (ra, rb) = (self.right_object(a)?, self.right_object(b)?);
        let via = FinAb.compose(
            &FinAb.tensor_mor(&self.counit(a)?, &self.counit(b)?),
            &self.psi(&ra, &rb),
        )?;
        let ab = FinAb.tensor(a, b);
        let phi = self.phi(a, b)?;
        for i in 0..ra.size() * rb.size() {
            let v = via.apply(&basis(ra.size() * rb.size(), i));
            if ab.element_index(&v)? != phi.apply(i) {
                return Ok(false);
            }
        }
        let unit_ok = self.psi_unit().apply(&[BigInt::one()]) == self.phi_unit();
        Ok(unit_ok)
    }

    /// Naturality of `κ` along `h`, of `Φ` along `f × g`, and of `λ` along `f`.
    pub fn check_naturality(&self, h: &FinSetMor, f: &AbMor, g: &AbMor) -> Result<bool> {
        let lh = self.left_morphism(h);
        for x in 0..h.dom().size() {
            if lh.apply(&self.kappa(h.dom(), x)) != self.kappa(h.cod(), h.apply(x)) {
                return Ok(false);
            }
        }
        let lhs = FinSet.compose(&self.right_morphism(&FinAb.tensor_mor(f, g))?, &self.phi(f.dom(), g.dom())?)?;
        let rhs = FinSet.compose(
            &self.phi(f.cod(), g.cod())?,
            &FinSet.tensor_mor(&self.right_morphism(f)?, &self.right_morphism(g)?),
        )?;
        if !FinSet.mor_eq(&lhs, &rhs) {
            return Ok(false);
        }
        let lam_lhs = FinAb.compose(f, &self.counit(f.dom())?)?;
        let lam_rhs = FinAb.compose(
            &self.counit(f.cod())?,
            &self.left_morphism(&self.right_morphism(f)?),
        )?;
        Ok(FinAb.mor_eq(&lam_lhs, &lam_rhs))
    }
}

fn basis(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The relation pairs `α₁, β₁: LI -> T` and `α₂, β₂: L(D × D) -> T` into the
/// truncated tensor algebra on `LD`.
#[derive(Clone, Debug)]
pub struct RelationMorphisms {
    /// `e_T ∘ ψ`
    pub alpha1: AbMor,
    /// `ξ ∘ L e_D`
    pub beta1: AbMor,
    /// `m_T ∘ (ξ ⊗ ξ) ∘ Ψ`
    pub alpha2: AbMor,
    /// `ξ ∘ L m_D`
    pub beta2: AbMor,
}

pub fn relation_morphisms(d: &MonoidObject<FinSet>, algebra: &GradedTensorAlgebra) -> Result<RelationMorphisms> {
    check_monoid(&FinSet, d).into_result()?;
    let adj = FreeAbelianAdjunction;
    let n = d.size();
    if algebra.base() != &PresentedAbGroup::free(n) {
        return Err(Error::InvalidObject("algebra must be built on LD".into()));
    }
    let total = algebra.total().clone();
    let xi = algebra.inclusion(1)?;
    let xi = AbMor::new(PresentedAbGroup::free(n), total.clone(), xi.matrix().clone())?;
    let into = |dom: PresentedAbGroup, columns: Vec<Vec<BigInt>>| {
        AbMor::new(dom, total.clone(), IntMatrix::from_columns(total.gens(), &columns))
    };

    let psi_unit = adj.psi_unit();
    let alpha1 = into(
        PresentedAbGroup::free(1),
        vec![algebra.embed(0, &psi_unit.apply(&[BigInt::one()]))?],
    )?;
    let beta1 = FinAb.compose(&xi, &adj.left_morphism(&d.unit))?;
    let psi = adj.psi(&d.carrier, &d.carrier);
    let alpha2 = into(
        PresentedAbGroup::free(n * n),
        (0..n * n)
            .map(|i| algebra.embed(2, &psi.matrix().column(i)))
            .collect::<Result<_>>()?,
    )?;
    let beta2 = FinAb.compose(&xi, &adj.left_morphism(&d.mult))?;
    Ok(RelationMorphisms {
        alpha1,
        beta1,
        alpha2,
        beta2,
    })
}

/// The construction at one truncation degree.
#[derive(Clone, Debug)]
pub struct LiftStage {
    pub algebra: GradedTensorAlgebra,
    pub relations: RelationMorphisms,
    /// Multiplication pairs first, then the unit pair.
    pub coequalizer: Coequalizer<FinAb>,
    /// Normal form `Q -> Z^D` of the quotient.
    pub reduction: AbMor,
    /// Degree-1 generators `Z^D -> Q`.
    pub inclusion: AbMor,
    pub mult: AbMor,
    pub unit: AbMor,
}

fn lift_stage(d: &MonoidObject<FinSet>, truncation: usize) -> Result<LiftStage> {
    let n = d.size();
    let g = PresentedAbGroup::free(n);
    let mut layout: Vec<usize> = (2..=truncation).rev().collect();
    layout.extend([0, 1]);
    let algebra = GradedTensorAlgebra::with_layout(&g, truncation, &layout)?;
    let relations = relation_morphisms(d, &algebra)?;
    let mult_pair = algebra.lambda_pair(&relations.alpha2, &relations.beta2)?;
    let unit_pair = algebra.lambda_pair(&relations.alpha1, &relations.beta1)?;
    let coequalizer = multiple_coequalizer(&FinAb, algebra.total(), &[mult_pair, unit_pair])?;
    let q = coequalizer.quotient.clone();

    let deg1 = algebra.offset(1)?;
    let pivots = q.relations().pivots();
    let reduces = pivots.len() + n == q.gens()
        && pivots
            .iter()
            .all(|(col, p)| p.is_one() && !(deg1..deg1 + n).contains(col));
    if !reduces {
        return Err(Error::NotStabilized(format!(
            "relations at truncation {truncation} do not reduce every generator to degree 1"
        )));
    }
    let columns: Vec<Vec<BigInt>> = (0..q.gens())
        .map(|j| algebra.homogeneous_part(&q.reduce(&q.basis_vector(j)), 1))
        .collect();
    let reduction = AbMor::new(q.clone(), g.clone(), IntMatrix::from_columns(n, &columns))?;
    let inclusion = AbMor::new(g.clone(), q.clone(), algebra.inclusion(1)?.matrix().clone())?;

    let mut mult_columns = Vec::with_capacity(n * n);
    for i in 0..n * n {
        mult_columns.push(reduction.apply(&algebra.generator(2, i)?));
    }
    let mult = AbMor::new(FinAb.tensor(&g, &g), g.clone(), IntMatrix::from_columns(n, &mult_columns))?;
    let unit = AbMor::new(
        PresentedAbGroup::free(1),
        g.clone(),
        IntMatrix::from_columns(n, &[reduction.apply(&algebra.unit())]),
    )?;
    Ok(LiftStage {
        algebra,
        relations,
        coequalizer,
        reduction,
        inclusion,
        mult,
        unit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub truncations: (usize, usize),
    pub free_ranks: (usize, usize),
    pub torsion: (Vec<String>, Vec<String>),
    pub structure_equal: bool,
    pub stabilized: bool,
}

/// `Z[D]` presented on the basis `[d]`, with the data that built it.
#[derive(Clone, Debug)]
pub struct LiftedObject {
    pub source: MonoidObject<FinSet>,
    pub ring: MonoidObject<FinAb>,
    pub stage: LiftStage,
    pub stabilization: StabilizationReport,
}

/// Builds `L_D` at `truncation` and confirms it is unchanged at
/// `truncation + 1`.
pub fn lift_object(d: &MonoidObject<FinSet>, truncation: usize) -> Result<LiftedObject> {
    let stage = lift_stage(d, truncation)?;
    let guard = lift_stage(d, truncation + 1)?;
    let (qa, qb) = (&stage.coequalizer.quotient, &guard.coequalizer.quotient);
    let torsion = |q: &PresentedAbGroup| q.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let structure_equal =
        FinAb.mor_eq(&stage.mult, &guard.mult) && FinAb.mor_eq(&stage.unit, &guard.unit);
    let report = StabilizationReport {
        truncations: (truncation, truncation + 1),
        free_ranks: (qa.free_rank(), qb.free_rank()),
        torsion: (torsion(qa), torsion(qb)),
        structure_equal,
        stabilized: false,
    };
    let stabilized = report.free_ranks.0 == report.free_ranks.1 && report.torsion.0 == report.torsion.1 && structure_equal;
    let report = StabilizationReport { stabilized, ..report };
    if !stabilized {
        return Err(Error::NotStabilized(format!(
            "truncations {} and {} disagree",
            truncation,
            truncation + 1
        )));
    }
    let ring = MonoidObject::checked(
        &FinAb,
        PresentedAbGroup::free(d.size()),
        stage.mult.clone(),
        stage.unit.clone(),
    )?;
    Ok(LiftedObject {
        source: d.clone(),
        ring,
        stage,
        stabilization: report,
    })
}

impl LiftedObject {
    /// `γ_D(x) = Rπ(ξ(κ(x)))`, read in normal form.
    pub fn gamma(&self, x: usize) -> Vec<BigInt> {
        let adj = FreeAbelianAdjunction;
        let generator = self
            .stage
            .algebra
            .embed(1, &adj.kappa(&self.source.carrier, x))
            .expect("degree 1 exists");
        self.stage.reduction.apply(&generator)
    }

    /// `γ_D` is a monoid morphism into `(L_D, ·, 1)`.
    pub fn check_gamma(&self) -> bool {
        let d = &self.source;
        if self.gamma(d.unit_element()) != self.ring.unit_element() {
            return false;
        }
        (0..d.size()).all(|x| {
            (0..d.size()).all(|y| self.gamma(d.multiply(x, y)) == self.ring.multiply(&self.gamma(x), &self.gamma(y)))
        })
    }
}

/// `R̄A = (RA, ·, 1)`, the multiplicative monoid of a finite ring.
pub fn underlying_monoid(a: &MonoidObject<FinAb>) -> Result<MonoidObject<FinSet>> {
    if !a.carrier.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let elements = a.carrier.elements()?;
    let table = elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| a.carrier.element_index(&a.multiply(x, y)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = a.carrier.element_index(&a.unit_element())?;
    MonoidObject::checked(&FinSet, FinSetObj::new(elements.len()), flat_mult(&table)?, FinSetMor::point(&FinSetObj::new(elements.len()), unit)?)
}

fn flat_mult(table: &[Vec<usize>]) -> Result<FinSetMor> {
    let n = table.len();
    FinSetMor::new(
        FinSetObj::new(n * n),
        FinSetObj::new(n),
        table.iter().flatten().copied().collect(),
    )
}

/// `R̄f` on a ring morphism between finite rings.
pub fn underlying_monoid_morphism(f: &MonoidMorphism<FinAb>) -> Result<MonoidMorphism<FinSet>> {
    let map = FreeAbelianAdjunction.right_morphism(&f.map)?;
    MonoidMorphism::new(
        &FinSet,
        underlying_monoid(&f.source)?,
        underlying_monoid(&f.target)?,
        map,
    )
}

/// `σ_A: L_{R̄A} -> A`, induced on the quotient by the extension of the
/// counit `λ_A: LRA -> A` to the tensor algebra.
pub fn counit(lifted: &LiftedObject, a: &MonoidObject<FinAb>) -> Result<MonoidMorphism<FinAb>> {
    let ra = underlying_monoid(a)?;
    if !lifted.source.same_as(&FinSet, &ra) {
        return Err(Error::InvalidObject("lifted object must be built on R̄A".into()));
    }
    let algebra = &lifted.stage.algebra;
    let lam = FreeAbelianAdjunction.counit(&a.carrier)?;
    let ext = graded_extension(algebra, &lam, a)?;
    let columns: Vec<Vec<BigInt>> = (0..algebra.total().gens())
        .map(|j| ext.evaluate(&algebra.total().basis_vector(j)))
        .collect();
    let on_total = AbMor::new(
        algebra.total().clone(),
        a.carrier.clone(),
        IntMatrix::from_columns(a.carrier.gens(), &columns),
    )?;
    let on_quotient = lifted.stage.coequalizer.factorize(&FinAb, &on_total)?;
    let sigma = FinAb.compose(&on_quotient, &lifted.stage.inclusion)?;
    MonoidMorphism::new(&FinAb, lifted.ring.clone(), a.clone(), sigma)
}

/// `L_h: L_D -> L_C`, induced on quotients by `T(Lh)`.
pub fn lift_morphism(
    h: &MonoidMorphism<FinSet>,
    source: &LiftedObject,
    target: &LiftedObject,
) -> Result<MonoidMorphism<FinAb>> {
    check_monoid_morphism(&FinSet, h).into_result()?;
    if !h.source.same_as(&FinSet, &source.source) || !h.target.same_as(&FinSet, &target.source) {
        return Err(Error::NotComposable("h must run between the lifted monoids".into()));
    }
    let lh = FreeAbelianAdjunction.left_morphism(&h.map);
    let tlh = source.stage.algebra.graded_morphism(&target.stage.algebra, &lh)?;
    let onto = FinAb.compose(&target.stage.coequalizer.projection, &tlh)?;
    let on_quotient = source.stage.coequalizer.factorize(&FinAb, &onto)?;
    let map = FinAb.compose(
        &target.stage.reduction,
        &FinAb.compose(&on_quotient, &source.stage.inclusion)?,
    )?;
    MonoidMorphism::new(&FinAb, source.ring.clone(), target.ring.clone(), map)
}

/// `T(Lh) ∘ α₁ᴰ = α₁ᶜ` and `T(Lh) ∘ α₂ᴰ = α₂ᶜ ∘ L(h × h)`, plus the same
/// for the `β`s.
pub fn check_relation_naturality(
    h: &MonoidMorphism<FinSet>,
    source: &LiftedObject,
    target: &LiftedObject,
) -> Result<bool> {
    let adj = FreeAbelianAdjunction;
    let tlh = source
        .stage
        .algebra
        .graded_morphism(&target.stage.algebra, &adj.left_morphism(&h.map))?;
    let (rs, rt) = (&source.stage.relations, &target.stage.relations);
    let lhh = adj.left_morphism(&FinSet.tensor_mor(&h.map, &h.map));
    let checks = [
        (FinAb.compose(&tlh, &rs.alpha1)?, rt.alpha1.clone()),
        (FinAb.compose(&tlh, &rs.beta1)?, rt.beta1.clone()),
        (FinAb.compose(&tlh, &rs.alpha2)?, FinAb.compose(&rt.alpha2, &lhh)?),
        (FinAb.compose(&tlh, &rs.beta2)?, FinAb.compose(&rt.beta2, &lhh)?),
    ];
    Ok(checks.iter().all(|(l, r)| FinAb.mor_eq(l, r)))
}

/// `σ_A ∘ π = λ̄_A` on the generating stage of degree at most 1.
pub fn check_counit_lifts(lifted: &LiftedObject, a: &MonoidObject<FinAb>, sigma: &MonoidMorphism<FinAb>) -> Result<bool> {
    let adj = FreeAbelianAdjunction;
    let algebra = &lifted.stage.algebra;
    let lam = adj.counit(&a.carrier)?;
    let n = lifted.source.size();
    let via = |v: &[BigInt]| sigma.map.apply(&lifted.stage.reduction.apply(v));
    if via(&algebra.unit()) != a.unit_element() {
        return Ok(false);
    }
    for x in 0..n {
        if via(&algebra.generator(1, x)?) != lam.apply(&basis(n, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The transpose `σ_A ∘ L_d: L_D -> A` of `d: D -> R̄A`.
pub fn hom_transpose(
    d: &MonoidMorphism<FinSet>,
    lifted_d: &LiftedObject,
    lifted_ra: &LiftedObject,
    sigma: &MonoidMorphism<FinAb>,
) -> Result<MonoidMorphism<FinAb>> {
    let ld = lift_morphism(d, lifted_d, lifted_ra)?;
    sigma.after(&FinAb, &ld)
}

/// The inverse transpose `R̄f ∘ γ_D` of a ring morphism `f: L_D -> A`.
pub fn hom_untranspose(f: &MonoidMorphism<FinAb>, lifted_d: &LiftedObject) -> Result<MonoidMorphism<FinSet>> {
    let ra = underlying_monoid(&f.target)?;
    let table = (0..lifted_d.source.size())
        .map(|x| f.target.carrier.element_index(&f.map.apply(&lifted_d.gamma(x))))
        .collect::<Result<Vec<_>>>()?;
    let map = FinSetMor::new(lifted_d.source.carrier.clone(), ra.carrier.clone(), table)?;
    MonoidMorphism::new(&FinSet, lifted_d.source.clone(), ra, map)
}

/// All monoid morphisms between finite monoids, in the order of
/// [`FinSetMor::all_maps`].
pub fn monoid_morphisms(d: &MonoidObject<FinSet>, c: &MonoidObject<FinSet>) -> Vec<MonoidMorphism<FinSet>> {
    FinSetMor::all_maps(&d.carrier, &c.carrier)
        .map(|f| MonoidMorphism::unchecked(d.clone(), c.clone(), f))
        .filter(|f| check_monoid_morphism(&FinSet, f).passed())
        .collect()
}

/// All ring morphisms `L_D -> A`: one candidate per choice of images of the
/// basis `[d]`, kept if it preserves multiplication and unit.
pub fn ring_morphisms(lifted: &LiftedObject, a: &MonoidObject<FinAb>) -> Result<Vec<MonoidMorphism<FinAb>>> {
    let elements = a.carrier.elements()?;
    let n = lifted.source.size();
    let mut out = Vec::new();
    let images = FinSetMor::all_maps(&FinSetObj::new(n), &FinSetObj::new(elements.len()));
    for choice in images {
        let columns: Vec<Vec<BigInt>> = choice.table().iter().map(|&i| elements[i].clone()).collect();
        let map = AbMor::new(
            lifted.ring.carrier.clone(),
            a.carrier.clone(),
            IntMatrix::from_columns(a.carrier.gens(), &columns),
        )?;
        let f = MonoidMorphism::unchecked(lifted.ring.clone(), a.clone(), map);
        if check_monoid_morphism(&FinAb, &f).passed() {
            out.push(f);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomBijectionReport {
    pub monoid_morphisms: usize,
    pub ring_morphisms: usize,
    /// Every transpose is a ring morphism and transposes back.
    pub transpose_round_trip: bool,
    /// Every ring morphism transposes to a monoid morphism and back.
    pub inverse_round_trip: bool,
    pub bijection: bool,
}

/// Compares monoid morphisms `D -> R̄A` with ring morphisms `L_D -> A`.
pub fn hom_bijection_check(
    d: &MonoidObject<FinSet>,
    a: &MonoidObject<FinAb>,
    truncation: usize,
) -> Result<HomBijectionReport> {
    check_monoid(&FinAb, a).into_result()?;
    let lifted_d = lift_object(d, truncation)?;
    let ra = underlying_monoid(a)?;
    let lifted_ra = lift_object(&ra, truncation)?;
    hom_bijection_with(&lifted_d, &lifted_ra, a)
}

/// As [`hom_bijection_check`], reusing lifted objects.
pub fn hom_bijection_with(
    lifted_d: &LiftedObject,
    lifted_ra: &LiftedObject,
    a: &MonoidObject<FinAb>,
) -> Result<HomBijectionReport> {
    let sigma = counit(lifted_ra, a)?;
    let monoid = monoid_morphisms(&lifted_d.source, &lifted_ra.source);
    let ring = ring_morphisms(lifted_d, a)?;

    let mut transpose_round_trip = true;
    for m in &monoid {
        let f = hom_transpose(m, lifted_d, lifted_ra, &sigma)?;
        let known = ring.iter().any(|r| FinAb.mor_eq(&r.map, &f.map));
        let back = hom_untranspose(&f, lifted_d)?;
        transpose_round_trip &= known && FinSet.mor_eq(&back.map, &m.map);
    }
    let mut inverse_round_trip = true;
    for f in &ring {
        let m = hom_untranspose(f, lifted_d)?;
        let again = hom_transpose(&m, lifted_d, lifted_ra, &sigma)?;
        inverse_round_trip &= FinAb.mor_eq(&again.map, &f.map);
    }
    let bijection = monoid.len() == ring.len() && transpose_round_trip && inverse_round_trip;
    Ok(HomBijectionReport {
        monoid_morphisms: monoid.len(),
        ring_morphisms: ring.len(),
        transpose_round_trip,
        inverse_round_trip,
        bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn trivial() -> MonoidObject<FinSet> {
        MonoidObject::from_table(&[vec![0]], 0).unwrap()
    }

    fn c2() -> MonoidObject<FinSet> {
        MonoidObject::from_table(&[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    fn idempotent() -> MonoidObject<FinSet> {
        MonoidObject::from_table(&[vec![0, 1], vec![1, 1]], 0).unwrap()
    }

    #[test]
    fn adjunction_basics() {
        let adj = FreeAbelianAdjunction;
        assert_eq!(adj.left_object(&FinSetObj::new(2)), PresentedAbGroup::free(2));
        assert_eq!(adj.kappa(&FinSetObj::new(3), 1), big(&[0, 1, 0]));
        let z3 = PresentedAbGroup::cyclic(3);
        assert!(adj.check_triangles(&z3, &FinSetObj::new(2)).unwrap());
        assert!(adj.check_mates(&z3, &PresentedAbGroup::cyclic(2)).unwrap());
        assert!(matches!(adj.right_object(&PresentedAbGroup::free(1)), Err(Error::InfiniteGroup)));
        assert!(adj.psi(&FinSetObj::new(2), &FinSetObj::new(3)).matrix().is_identity());
    }

    #[test]
    fn relation_morphisms_for_c2() {
        let d = c2();
        let t = truncated_layout(2);
        let r = relation_morphisms(&d, &t).unwrap();
        // (g, g) is basis index 3
        let gg = r.alpha2.apply(&big(&[0, 0, 0, 1]));
        assert_eq!(gg, t.generator(2, 3).unwrap());
        assert_eq!(r.beta2.apply(&big(&[0, 0, 0, 1])), t.generator(1, 0).unwrap());
        assert_eq!(r.beta1.apply(&big(&[1])), t.generator(1, 0).unwrap());
        assert_eq!(r.alpha1.apply(&big(&[1])), t.unit());
    }

    fn truncated_layout(n: usize) -> GradedTensorAlgebra {
        crate::free::truncated_tensor_algebra(&PresentedAbGroup::free(2), n).unwrap()
    }

    #[test]
    fn monoid_rings() {
        let l = lift_object(&trivial(), 2).unwrap();
        assert_eq!(l.ring.carrier, PresentedAbGroup::free(1));
        assert_eq!(l.ring.multiply(&big(&[3]), &big(&[5])), big(&[15]));
        assert!(l.stabilization.stabilized);

        let l = lift_object(&c2(), 2).unwrap();
        assert_eq!(l.ring.carrier.free_rank(), 2);
        assert_eq!(l.ring.multiply(&big(&[0, 1]), &big(&[0, 1])), big(&[1, 0]));
        assert_eq!(l.ring.unit_element(), big(&[1, 0]));
        assert!(l.check_gamma());

        let l = lift_object(&idempotent(), 3).unwrap();
        assert_eq!(l.ring.multiply(&big(&[0, 1]), &big(&[0, 1])), big(&[0, 1]));
    }

    #[test]
    fn counit_on_z6() {
        let a = MonoidObject::cyclic_ring(6).unwrap();
        let ra = underlying_monoid(&a).unwrap();
        let lifted = lift_object(&ra, 2).unwrap();
        let sigma = counit(&lifted, &a).unwrap();
        let five = basis(6, 5);
        assert_eq!(sigma.map.apply(&five), big(&[5]));
        assert_eq!(sigma.map.apply(&lifted.ring.multiply(&five, &five)), big(&[1]));
        assert!(check_counit_lifts(&lifted, &a, &sigma).unwrap());
    }

    #[test]
    fn lift_unit_inclusion() {
        let lt = lift_object(&trivial(), 2).unwrap();
        let lc = lift_object(&c2(), 2).unwrap();
        let h = MonoidMorphism::new(
            &FinSet,
            trivial(),
            c2(),
            FinSetMor::new(FinSetObj::new(1), FinSetObj::new(2), vec![0]).unwrap(),
        )
        .unwrap();
        let lh = lift_morphism(&h, &lt, &lc).unwrap();
        assert_eq!(lh.map.apply(&big(&[1])), big(&[1, 0]));
        assert!(check_relation_naturality(&h, &lt, &lc).unwrap());
    }

    #[test]
    fn hom_bijections_into_z6() {
        let a = MonoidObject::cyclic_ring(6).unwrap();
        let r = hom_bijection_check(&c2(), &a, 2).unwrap();
        assert_eq!((r.monoid_morphisms, r.ring_morphisms), (2, 2));
        assert!(r.bijection);
        let r = hom_bijection_check(&trivial(), &a, 2).unwrap();
        assert_eq!((r.monoid_morphisms, r.ring_morphisms), (1, 1));
        let r = hom_bijection_check(&idempotent(), &a, 2).unwrap();
        assert_eq!((r.monoid_morphisms, r.ring_morphisms), (4, 4));
        assert!(r.bijection);
    }
}
