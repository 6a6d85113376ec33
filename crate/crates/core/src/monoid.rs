//! Monoid objects `(A, m, e)` over a monoidal backend, and their coequalizers.
//!
//! For a monoid `A` and a morphism `γ: X -> A` the two-sided closure
//! morphism is
//!
//! ```text
//! Λ_γ = m ∘ (m ⊗ A) ∘ (A ⊗ γ ⊗ A) : A ⊗ X ⊗ A -> A
//! ```
//!
//! (in sets, `(a, x, b) ↦ a·γ(x)·b`). Coequalizing `Λ_α` and `Λ_β` in the
//! backend yields a quotient that carries a unique monoid structure making
//! the projection a monoid morphism; when `α` and `β` are themselves monoid
//! morphisms the result is their coequalizer among monoids.

use serde::Serialize;

use num_bigint::BigInt;

use crate::category::{Coequalizer, MonoidalCategory};
use crate::error::{Error, Result};
use crate::finab::{AbMor, FinAb, PresentedAbGroup};
use crate::finset::{FinSet, FinSetMor, FinSetObj};
use crate::linalg::IntMatrix;

pub struct MonoidObject<C: MonoidalCategory> {
    pub carrier: C::Object,
    /// `A ⊗ A -> A`
    pub mult: C::Morphism,
    /// `I -> A`
    pub unit: C::Morphism,
}

impl<C: MonoidalCategory> Clone for MonoidObject<C> {
    fn clone(&self) -> Self {
        MonoidObject {
            carrier: self.carrier.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
        }
    }
}

impl<C: MonoidalCategory> std::fmt::Debug for MonoidObject<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonoidObject")
            .field("carrier", &self.carrier)
            .field("mult", &self.mult)
            .field("unit", &self.unit)
            .finish()
    }
}

impl<C: MonoidalCategory> MonoidObject<C> {
    /// Checks the shapes of `mult` and `unit` but not the monoid laws; see
    /// [`check_monoid`] and [`MonoidObject::checked`].
    pub fn new(cat: &C, carrier: C::Object, mult: C::Morphism, unit: C::Morphism) -> Result<Self> {
        let aa = cat.tensor(&carrier, &carrier);
        if cat.domain(&mult) != &aa || cat.codomain(&mult) != &carrier {
            return Err(Error::InvalidMorphism("multiplication must be A ⊗ A -> A".into()));
        }
        if cat.domain(&unit) != &cat.unit_object() || cat.codomain(&unit) != &carrier {
            return Err(Error::InvalidMorphism("unit must be I -> A".into()));
        }
        Ok(MonoidObject {
            carrier,
            mult,
            unit,
        })
    }

    pub fn checked(cat: &C, carrier: C::Object, mult: C::Morphism, unit: C::Morphism) -> Result<Self> {
        let m = Self::new(cat, carrier, mult, unit)?;
        check_monoid(cat, &m).into_result()?;
        Ok(m)
    }

    /// Same carrier and equal structure morphisms.
    pub fn same_as(&self, cat: &C, other: &Self) -> bool {
        self.carrier == other.carrier
            && cat.mor_eq(&self.mult, &other.mult)
            && cat.mor_eq(&self.unit, &other.unit)
    }

    pub fn identity_morphism(&self, cat: &C) -> MonoidMorphism<C> {
        MonoidMorphism {
            source: self.clone(),
            target: self.clone(),
            map: cat.identity(&self.carrier),
        }
    }
}

pub struct MonoidMorphism<C: MonoidalCategory> {
    pub source: MonoidObject<C>,
    pub target: MonoidObject<C>,
    pub map: C::Morphism,
}

impl<C: MonoidalCategory> Clone for MonoidMorphism<C> {
    fn clone(&self) -> Self {
        MonoidMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
        }
    }
}

impl<C: MonoidalCategory> std::fmt::Debug for MonoidMorphism<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonoidMorphism").field("map", &self.map).finish()
    }
}

impl<C: MonoidalCategory> MonoidMorphism<C> {
    /// A candidate morphism whose laws have not been checked.
    pub fn unchecked(source: MonoidObject<C>, target: MonoidObject<C>, map: C::Morphism) -> Self {
        MonoidMorphism {
            source,
            target,
            map,
        }
    }

    pub fn new(
        cat: &C,
        source: MonoidObject<C>,
        target: MonoidObject<C>,
        map: C::Morphism,
    ) -> Result<Self> {
        let f = Self::unchecked(source, target, map);
        check_monoid_morphism(cat, &f).into_result()?;
        Ok(f)
    }

    /// `self ∘ first`
    pub fn after(&self, cat: &C, first: &MonoidMorphism<C>) -> Result<MonoidMorphism<C>> {
        Ok(MonoidMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map: cat.compose(&self.map, &first.map)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    /// Index of a failing input in the law's domain (an element for finite
    /// sets, a generator for abelian groups).
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub laws: Vec<LawCheck>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn into_result(self) -> Result<()> {
        match self.laws.iter().find(|l| !l.passed) {
            None => Ok(()),
            Some(l) => Err(Error::LawViolation(match l.witness {
                Some(w) => format!("{} fails at index {w}", l.law),
                None => format!("{} fails", l.law),
            })),
        }
    }

    fn push<C: MonoidalCategory>(&mut self, cat: &C, law: &str, lhs: Result<C::Morphism>, rhs: Result<C::Morphism>) {
        let (passed, witness) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => match cat.first_difference(&l, &r) {
                Ok(None) => (true, None),
                Ok(Some(w)) => (false, Some(w)),
                Err(_) => (false, None),
            },
            _ => (false, None),
        };
        self.laws.push(LawCheck {
            law: law.to_string(),
            passed,
            witness,
        });
    }
}

/// Associativity and both unit laws.
pub fn check_monoid<C: MonoidalCategory>(cat: &C, a: &MonoidObject<C>) -> LawReport {
    let id = cat.identity(&a.carrier);
    let m = &a.mult;
    let mut report = LawReport::default();
    report.push(
        cat,
        "associativity",
        cat.compose(m, &cat.tensor_mor(m, &id)),
        cat.compose(m, &cat.tensor_mor(&id, m)),
    );
    report.push(
        cat,
        "left unit",
        cat.compose(m, &cat.tensor_mor(&a.unit, &id)),
        Ok(id.clone()),
    );
    report.push(
        cat,
        "right unit",
        cat.compose(m, &cat.tensor_mor(&id, &a.unit)),
        Ok(id.clone()),
    );
    report
}

pub fn check_monoid_morphism<C: MonoidalCategory>(cat: &C, f: &MonoidMorphism<C>) -> LawReport {
    let mut report = LawReport::default();
    let shape_ok = cat.domain(&f.map) == &f.source.carrier && cat.codomain(&f.map) == &f.target.carrier;
    if !shape_ok {
        report.laws.push(LawCheck {
            law: "shape".into(),
            passed: false,
            witness: None,
        });
        return report;
    }
    report.push(
        cat,
        "preserves multiplication",
        cat.compose(&f.map, &f.source.mult),
        cat.compose(&f.target.mult, &cat.tensor_mor(&f.map, &f.map)),
    );
    report.push(
        cat,
        "preserves unit",
        cat.compose(&f.map, &f.source.unit),
        Ok(f.target.unit.clone()),
    );
    report
}

/// `Λ_γ = m ∘ (m ⊗ A) ∘ (A ⊗ γ ⊗ A)`.
pub fn lambda_of<C: MonoidalCategory>(
    cat: &C,
    a: &MonoidObject<C>,
    gamma: &C::Morphism,
) -> Result<C::Morphism> {
    if cat.codomain(gamma) != &a.carrier {
        return Err(Error::CodomainMismatch("Λ needs γ: X -> |A|".into()));
    }
    let id = cat.identity(&a.carrier);
    let middle = cat.tensor_all_mor(&[id.clone(), gamma.clone(), id.clone()]);
    let left_mult = cat.tensor_mor(&a.mult, &id);
    cat.compose(&a.mult, &cat.compose(&left_mult, &middle)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaIdentityReport {
    /// `α = Λ_α ∘ (e ⊗ X ⊗ e)`
    pub unit_recovery: bool,
    /// `τ ∘ Λ_α = Λ_{τα} ∘ (τ ⊗ X ⊗ τ)`
    pub naturality: bool,
    /// `(τ∘Λ_α = τ∘Λ_β, τ∘α = τ∘β)`, when a second morphism is given.
    pub equivalence: Option<(bool, bool)>,
}

impl LambdaIdentityReport {
    pub fn holds(&self) -> bool {
        self.unit_recovery
            && self.naturality
            && self.equivalence.is_none_or(|(l, r)| l == r)
    }
}

/// Evaluates the basic identities of the Λ-construction for a monoid
/// morphism `τ: A -> C` and `α (, β): X -> |A|`.
pub fn lambda_identities<C: MonoidalCategory>(
    cat: &C,
    tau: &MonoidMorphism<C>,
    alpha: &C::Morphism,
    beta: Option<&C::Morphism>,
) -> Result<LambdaIdentityReport> {
    let a = &tau.source;
    let x = cat.domain(alpha).clone();
    let lam_a = lambda_of(cat, a, alpha)?;
    let units = cat.tensor_all_mor(&[a.unit.clone(), cat.identity(&x), a.unit.clone()]);
    let unit_recovery = cat.mor_eq(&cat.compose(&lam_a, &units)?, alpha);

    let tau_alpha = cat.compose(&tau.map, alpha)?;
    let lam_tau_alpha = lambda_of(cat, &tau.target, &tau_alpha)?;
    let txt = cat.tensor_all_mor(&[tau.map.clone(), cat.identity(&x), tau.map.clone()]);
    let naturality = cat.mor_eq(
        &cat.compose(&tau.map, &lam_a)?,
        &cat.compose(&lam_tau_alpha, &txt)?,
    );

    let equivalence = match beta {
        None => None,
        Some(beta) => Some(lambda_equivalence(cat, &tau.map, a, alpha, beta)?),
    };
    Ok(LambdaIdentityReport {
        unit_recovery,
        naturality,
        equivalence,
    })
}

/// `(τ∘Λ_α = τ∘Λ_β, τ∘α = τ∘β)` for any backend morphism `τ` out of `|A|`.
/// The first implies the second for every `τ`; they are equivalent when `τ`
/// is a monoid morphism.
pub fn lambda_equivalence<C: MonoidalCategory>(
    cat: &C,
    tau: &C::Morphism,
    a: &MonoidObject<C>,
    alpha: &C::Morphism,
    beta: &C::Morphism,
) -> Result<(bool, bool)> {
    let lam_a = lambda_of(cat, a, alpha)?;
    let lam_b = lambda_of(cat, a, beta)?;
    let lhs = cat.mor_eq(&cat.compose(tau, &lam_a)?, &cat.compose(tau, &lam_b)?);
    let rhs = cat.mor_eq(&cat.compose(tau, alpha)?, &cat.compose(tau, beta)?);
    Ok((lhs, rhs))
}

/// A quotient monoid together with its projection and factorization data.
pub struct MonoidCoequalizer<C: MonoidalCategory> {
    pub quotient: MonoidObject<C>,
    pub projection: MonoidMorphism<C>,
    /// The backend-level coequalizer of the Λ-pairs.
    pub coequalizer: Coequalizer<C>,
    /// The pairs `(α_i, β_i)` into the original carrier.
    pub relations: Vec<(C::Morphism, C::Morphism)>,
}

impl<C: MonoidalCategory> Clone for MonoidCoequalizer<C> {
    fn clone(&self) -> Self {
        MonoidCoequalizer {
            quotient: self.quotient.clone(),
            projection: self.projection.clone(),
            coequalizer: self.coequalizer.clone(),
            relations: self.relations.clone(),
        }
    }
}

impl<C: MonoidalCategory> MonoidCoequalizer<C> {
    fn trivial(cat: &C, a: &MonoidObject<C>) -> Self {
        MonoidCoequalizer {
            quotient: a.clone(),
            projection: a.identity_morphism(cat),
            coequalizer: Coequalizer::trivial(cat, &a.carrier),
            relations: Vec::new(),
        }
    }

    /// The unique monoid morphism `σ: Q -> C` with `σ ∘ π = τ`, for a monoid
    /// morphism `τ` with `τ ∘ α_i = τ ∘ β_i` for every relation pair.
    pub fn factorize(&self, cat: &C, tau: &MonoidMorphism<C>) -> Result<MonoidMorphism<C>> {
        if tau.source.carrier != self.projection.source.carrier {
            return Err(Error::NotComposable("τ must start at the coequalized monoid".into()));
        }
        for (alpha, beta) in &self.relations {
            let ta = cat.compose(&tau.map, alpha)?;
            let tb = cat.compose(&tau.map, beta)?;
            if let Some(i) = cat.first_difference(&ta, &tb)? {
                return Err(Error::NotCoequalizing(i));
            }
        }
        let sigma = self.coequalizer.factorize(cat, &tau.map)?;
        MonoidMorphism::new(cat, self.quotient.clone(), tau.target.clone(), sigma)
    }

    /// Factorization of a plain backend morphism `h` with `h ∘ Λ_α = h ∘ Λ_β`.
    pub fn factorize_plain(&self, cat: &C, h: &C::Morphism) -> Result<C::Morphism> {
        self.coequalizer.factorize(cat, h)
    }
}

/// Coequalizes `Λ_α, Λ_β` in the backend and induces the monoid structure
/// on the quotient: first `m: A ⊗ Q -> Q` with `m ∘ (A ⊗ π) = π ∘ m_A`, then
/// `m_Q: Q ⊗ Q -> Q` with `m_Q ∘ (π ⊗ Q) = m`, and `e_Q = π ∘ e_A`. The
/// induced structure is re-checked.
pub fn monoid_coequalizer<C: MonoidalCategory>(
    cat: &C,
    a: &MonoidObject<C>,
    alpha: &C::Morphism,
    beta: &C::Morphism,
) -> Result<MonoidCoequalizer<C>> {
    if !cat.parallel(alpha, beta) {
        return Err(Error::NotParallel("monoid coequalizer".into()));
    }
    let lam_a = lambda_of(cat, a, alpha)?;
    let lam_b = lambda_of(cat, a, beta)?;
    let coeq = cat.coequalizer(&lam_a, &lam_b)?;
    let pi = coeq.projection.clone();
    let q = coeq.quotient.clone();

    let id_a = cat.identity(&a.carrier);
    let id_q = cat.identity(&q);
    let a_pi = cat.tensor_mor(&id_a, &pi);
    let half = cat.factor_through_epi(&a_pi, &cat.compose(&pi, &a.mult)?)?;
    let pi_q = cat.tensor_mor(&pi, &id_q);
    let mult = cat.factor_through_epi(&pi_q, &half)?;
    let unit = cat.compose(&pi, &a.unit)?;

    let quotient = MonoidObject::checked(cat, q, mult, unit)?;
    let projection = MonoidMorphism::new(cat, a.clone(), quotient.clone(), pi)?;
    Ok(MonoidCoequalizer {
        quotient,
        projection,
        coequalizer: coeq,
        relations: vec![(alpha.clone(), beta.clone())],
    })
}

/// Iterated monoid coequalizer of several pairs into `|A|`.
pub fn monoid_multiple_coequalizer<C: MonoidalCategory>(
    cat: &C,
    a: &MonoidObject<C>,
    pairs: &[(C::Morphism, C::Morphism)],
) -> Result<MonoidCoequalizer<C>> {
    for (i, (f, g)) in pairs.iter().enumerate() {
        if !cat.parallel(f, g) || cat.codomain(f) != &a.carrier {
            return Err(Error::CodomainMismatch(format!("pair {i} does not land in |A|")));
        }
    }
    let mut acc = MonoidCoequalizer::trivial(cat, a);
    for (alpha, beta) in pairs {
        let pa = cat.compose(&acc.projection.map, alpha)?;
        let pb = cat.compose(&acc.projection.map, beta)?;
        let step = monoid_coequalizer(cat, &acc.quotient, &pa, &pb)?;
        let projection = step.projection.after(cat, &acc.projection)?;
        acc = MonoidCoequalizer {
            quotient: step.quotient,
            projection,
            coequalizer: acc.coequalizer.then(cat, step.coequalizer)?,
            relations: Vec::new(),
        };
    }
    acc.relations = pairs.to_vec();
    Ok(acc)
}

/// Whether the two pairs produce literally the same quotient monoid and
/// projection (canonical forms make this decidable by equality).
pub fn coequalizer_coincidence<C: MonoidalCategory>(
    cat: &C,
    a: &MonoidObject<C>,
    first: (&C::Morphism, &C::Morphism),
    second: (&C::Morphism, &C::Morphism),
) -> Result<bool> {
    let p = monoid_coequalizer(cat, a, first.0, first.1)?;
    let q = monoid_coequalizer(cat, a, second.0, second.1)?;
    Ok(p.quotient.same_as(cat, &q.quotient) && cat.mor_eq(&p.projection.map, &q.projection.map))
}

impl MonoidObject<FinSet> {
    /// A monoid on `0..n` from its multiplication table; laws are not checked.
    pub fn from_table(table: &[Vec<usize>], unit: usize) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidObject("multiplication table must be square".into()));
        }
        let carrier = FinSetObj::new(n);
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let mult = FinSetMor::new(FinSetObj::new(n * n), carrier.clone(), flat)?;
        let unit = FinSetMor::point(&carrier, unit)?;
        MonoidObject::new(&FinSet, carrier, mult, unit)
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mult.apply(a * self.size() + b)
    }

    pub fn unit_element(&self) -> usize {
        self.unit.apply(0)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n).map(|a| (0..n).map(|b| self.multiply(a, b)).collect()).collect()
    }
}

impl MonoidObject<FinAb> {
    /// A ring structure on `group` whose product of generators `i` and `j`
    /// is `product(i, j)`, extended bilinearly; laws are not checked.
    pub fn ring(
        group: PresentedAbGroup,
        product: impl Fn(usize, usize) -> Vec<BigInt>,
        unit: Vec<BigInt>,
    ) -> Result<Self> {
        let g = group.gens();
        let mut columns = Vec::with_capacity(g * g);
        for i in 0..g {
            for j in 0..g {
                columns.push(product(i, j));
            }
        }
        if columns.iter().any(|c| c.len() != g) || unit.len() != g {
            return Err(Error::InvalidMorphism("ring structure vectors have the wrong length".into()));
        }
        let squared = FinAb.tensor(&group, &group);
        let mult = AbMor::new(squared, group.clone(), IntMatrix::from_columns(g, &columns))?;
        let unit = AbMor::new(
            PresentedAbGroup::free(1),
            group.clone(),
            IntMatrix::from_columns(g, &[unit]),
        )?;
        MonoidObject::new(&FinAb, group, mult, unit)
    }

    /// The ring `Z/n`.
    pub fn cyclic_ring(n: u64) -> Result<Self> {
        Self::ring(
            PresentedAbGroup::cyclic(n),
            |_, _| vec![BigInt::from(1)],
            vec![BigInt::from(1)],
        )
    }

    /// `x · y`, reduced.
    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let xy: Vec<BigInt> = x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect();
        self.mult.apply(&xy)
    }

    pub fn unit_element(&self) -> Vec<BigInt> {
        self.unit.apply(&[BigInt::from(1)])
    }
}
