//! Strict monoidal categories with computable coequalizers, and the colimit
//! algorithms that only need that contract: multiple coequalizers, the
//! reflexive-pair reduction, and a harness checking that tensoring preserves
//! a given coequalizer.

use std::fmt::{self, Debug};

use serde::Serialize;

use crate::error::{Error, Result};

/// A strict monoidal category whose morphism equality is decidable.
///
/// Tensor products are strict on the representation level: `(X ⊗ Y) ⊗ Z` and
/// `X ⊗ (Y ⊗ Z)` compare equal, and so do `I ⊗ X`, `X` and `X ⊗ I`.
pub trait MonoidalCategory: Sized {
    type Object: Clone + PartialEq + Debug;
    type Morphism: Clone + Debug;

    fn unit_object(&self) -> Self::Object;
    fn domain<'a>(&self, f: &'a Self::Morphism) -> &'a Self::Object;
    fn codomain<'a>(&self, f: &'a Self::Morphism) -> &'a Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;

    /// `g ∘ f`
    fn compose(&self, g: &Self::Morphism, f: &Self::Morphism) -> Result<Self::Morphism>;

    fn tensor(&self, x: &Self::Object, y: &Self::Object) -> Self::Object;
    fn tensor_mor(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;

    /// `Ok(None)` when `f == g`; otherwise the index of a witness (a domain
    /// element or a domain generator, depending on the backend).
    fn first_difference(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Option<usize>>;

    fn mor_eq(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        matches!(self.first_difference(f, g), Ok(None))
    }

    fn coequalizer(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Coequalizer<Self>>;

    /// Given a regular epimorphism `epi: A -> Q` in the backend's canonical
    /// form and `h: A -> Z`, the unique `u: Q -> Z` with `u ∘ epi = h`.
    fn factor_through_epi(&self, epi: &Self::Morphism, h: &Self::Morphism)
        -> Result<Self::Morphism>;

    fn is_regular_epi(&self, f: &Self::Morphism) -> bool;

    fn coproduct(&self, _x: &Self::Object, _y: &Self::Object) -> Result<Coproduct<Self>> {
        Err(Error::Unsupported("coproducts"))
    }

    /// The morphism `X + Y -> Z` with components `f` and `g`.
    fn copair(
        &self,
        _coproduct: &Coproduct<Self>,
        _f: &Self::Morphism,
        _g: &Self::Morphism,
    ) -> Result<Self::Morphism> {
        Err(Error::Unsupported("coproducts"))
    }

    /// `f = mono ∘ epi`, returned as `(epi, mono)`.
    fn image_factorization(&self, _f: &Self::Morphism) -> Result<(Self::Morphism, Self::Morphism)> {
        Err(Error::Unsupported("image factorizations"))
    }

    /// Morphisms out of `src` into a fixed family of small test targets.
    fn hom_battery(&self, src: &Self::Object) -> HomBattery<Self>;

    fn tensor_all(&self, objects: &[Self::Object]) -> Self::Object {
        objects
            .iter()
            .fold(self.unit_object(), |acc, x| self.tensor(&acc, x))
    }

    fn tensor_all_mor(&self, morphisms: &[Self::Morphism]) -> Self::Morphism {
        let unit = self.identity(&self.unit_object());
        morphisms
            .iter()
            .fold(unit, |acc, f| self.tensor_mor(&acc, f))
    }

    fn parallel(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool {
        self.domain(f) == self.domain(g) && self.codomain(f) == self.codomain(g)
    }
}

pub struct HomBattery<C: MonoidalCategory> {
    pub morphisms: Vec<C::Morphism>,
    /// Whether `morphisms` is every morphism into the battery's targets.
    pub complete: bool,
}

pub struct Coproduct<C: MonoidalCategory> {
    pub object: C::Object,
    pub left: C::Morphism,
    pub right: C::Morphism,
}

impl<C: MonoidalCategory> Clone for Coproduct<C> {
    fn clone(&self) -> Self {
        Coproduct {
            object: self.object.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

/// One ordinary coequalizer step `f, g: X -> A`, `projection: A -> Q`.
pub struct Stage<C: MonoidalCategory> {
    pub left: C::Morphism,
    pub right: C::Morphism,
    pub projection: C::Morphism,
}

impl<C: MonoidalCategory> Clone for Stage<C> {
    fn clone(&self) -> Self {
        Stage {
            left: self.left.clone(),
            right: self.right.clone(),
            projection: self.projection.clone(),
        }
    }
}

/// Quotient object, projection and the data needed to factor through it.
///
/// A composite of several ordinary coequalizers keeps every stage; factoring
/// runs through the stages in order.
pub struct Coequalizer<C: MonoidalCategory> {
    pub quotient: C::Object,
    pub projection: C::Morphism,
    /// The pairs on the original codomain that this projection coequalizes.
    pub pairs: Vec<(C::Morphism, C::Morphism)>,
    stages: Vec<Stage<C>>,
}

impl<C: MonoidalCategory> Clone for Coequalizer<C> {
    fn clone(&self) -> Self {
        Coequalizer {
            quotient: self.quotient.clone(),
            projection: self.projection.clone(),
            pairs: self.pairs.clone(),
            stages: self.stages.clone(),
        }
    }
}

impl<C: MonoidalCategory> Debug for Coequalizer<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coequalizer")
            .field("quotient", &self.quotient)
            .field("projection", &self.projection)
            .field("stages", &self.stages.len())
            .finish()
    }
}

impl<C: MonoidalCategory> Coequalizer<C> {
    /// A single-stage coequalizer of `(f, g)` with projection `projection`.
    pub fn single(
        quotient: C::Object,
        projection: C::Morphism,
        f: C::Morphism,
        g: C::Morphism,
    ) -> Self {
        Coequalizer {
            quotient,
            projection: projection.clone(),
            pairs: vec![(f.clone(), g.clone())],
            stages: vec![Stage {
                left: f,
                right: g,
                projection,
            }],
        }
    }

    /// The identity on `a`, which coequalizes the empty family.
    pub fn trivial(cat: &C, a: &C::Object) -> Self {
        Coequalizer {
            quotient: a.clone(),
            projection: cat.identity(a),
            pairs: Vec::new(),
            stages: Vec::new(),
        }
    }

    pub fn stages(&self) -> &[Stage<C>] {
        &self.stages
    }

    pub fn source<'a>(&'a self, cat: &C) -> &'a C::Object {
        cat.domain(&self.projection)
    }

    /// Follows this projection by a coequalizer `next` of a pair on the
    /// current quotient.
    pub fn then(self, cat: &C, next: Coequalizer<C>) -> Result<Self> {
        let projection = cat.compose(&next.projection, &self.projection)?;
        let mut stages = self.stages;
        stages.extend(next.stages);
        Ok(Coequalizer {
            quotient: next.quotient,
            projection,
            pairs: self.pairs,
            stages,
        })
    }

    /// The unique `u: Q -> Z` with `u ∘ projection = h`, for `h` coequalizing
    /// every stage.
    pub fn factorize(&self, cat: &C, h: &C::Morphism) -> Result<C::Morphism> {
        if cat.domain(h) != cat.domain(&self.projection) {
            return Err(Error::NotComposable(
                "factorization target must start at the coequalized object".into(),
            ));
        }
        let mut current = h.clone();
        for stage in &self.stages {
            let hf = cat.compose(&current, &stage.left)?;
            let hg = cat.compose(&current, &stage.right)?;
            if let Some(i) = cat.first_difference(&hf, &hg)? {
                return Err(Error::NotCoequalizing(i));
            }
            current = cat.factor_through_epi(&stage.projection, &current)?;
        }
        Ok(current)
    }
}

fn check_codomains<C: MonoidalCategory>(
    cat: &C,
    a: &C::Object,
    pairs: &[(C::Morphism, C::Morphism)],
) -> Result<()> {
    for (i, (f, g)) in pairs.iter().enumerate() {
        if !cat.parallel(f, g) {
            return Err(Error::NotParallel(format!("pair {i}")));
        }
        if cat.codomain(f) != a {
            return Err(Error::CodomainMismatch(format!(
                "pair {i} does not land in the common codomain"
            )));
        }
    }
    Ok(())
}

/// Simultaneous coequalizer of the pairs `(f_i, g_i): X_i -> A`, built by
/// coequalizing the first pair and then the image of each further pair
/// under the projection so far.
pub fn multiple_coequalizer<C: MonoidalCategory>(
    cat: &C,
    a: &C::Object,
    pairs: &[(C::Morphism, C::Morphism)],
) -> Result<Coequalizer<C>> {
    check_codomains(cat, a, pairs)?;
    let mut acc = Coequalizer::trivial(cat, a);
    for (f, g) in pairs {
        let qf = cat.compose(&acc.projection, f)?;
        let qg = cat.compose(&acc.projection, g)?;
        let next = cat.coequalizer(&qf, &qg)?;
        acc = acc.then(cat, next)?;
    }
    acc.pairs = pairs.to_vec();
    Ok(acc)
}

/// `f̄ = [f, id_D]` and `ḡ = [g, id_D]` on `C + D`, with the common section
/// `D -> C + D`.
pub struct ReflexivePair<C: MonoidalCategory> {
    pub coproduct: Coproduct<C>,
    pub left: C::Morphism,
    pub right: C::Morphism,
}

impl<C: MonoidalCategory> ReflexivePair<C> {
    /// The coproduct injection of `D`, split by both legs.
    pub fn section(&self) -> &C::Morphism {
        &self.coproduct.right
    }
}

pub fn reflexive_pair<C: MonoidalCategory>(
    cat: &C,
    f: &C::Morphism,
    g: &C::Morphism,
) -> Result<ReflexivePair<C>> {
    if !cat.parallel(f, g) {
        return Err(Error::NotParallel("reflexive pair".into()));
    }
    let d = cat.codomain(f);
    let id = cat.identity(d);
    let coproduct = cat.coproduct(cat.domain(f), d)?;
    let left = cat.copair(&coproduct, f, &id)?;
    let right = cat.copair(&coproduct, g, &id)?;
    Ok(ReflexivePair {
        coproduct,
        left,
        right,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub side: String,
    pub coequalizes: bool,
    pub comparison_is_iso: bool,
    pub targets_checked: usize,
    pub uniqueness_checked: usize,
    pub counterexample: Option<String>,
}

impl SideReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub left: SideReport,
    pub right: SideReport,
}

impl PreservationReport {
    pub fn ok(&self) -> bool {
        self.left.ok() && self.right.ok()
    }
}

/// Checks that `C ⊗ π` and `π ⊗ C` are again coequalizers of the tensored
/// pairs: compares them with freshly computed coequalizers and probes the
/// universal property against the backend's test targets.
pub fn check_tensor_preserves_coequalizer<C: MonoidalCategory>(
    cat: &C,
    c: &C::Object,
    coeq: &Coequalizer<C>,
) -> PreservationReport {
    let id_c = cat.identity(c);
    let left = check_side(cat, "C ⊗ -", coeq, |f| cat.tensor_mor(&id_c, f));
    let right = check_side(cat, "- ⊗ C", coeq, |f| cat.tensor_mor(f, &id_c));
    PreservationReport { left, right }
}

fn check_side<C, F>(cat: &C, side: &str, coeq: &Coequalizer<C>, apply: F) -> SideReport
where
    C: MonoidalCategory,
    F: Fn(&C::Morphism) -> C::Morphism,
{
    let mut report = SideReport {
        side: side.to_string(),
        ..SideReport::default()
    };
    if let Err(e) = run_side(cat, coeq, &apply, &mut report) {
        report.counterexample = Some(e.to_string());
    }
    report
}

fn run_side<C, F>(
    cat: &C,
    coeq: &Coequalizer<C>,
    apply: &F,
    report: &mut SideReport,
) -> Result<()>
where
    C: MonoidalCategory,
    F: Fn(&C::Morphism) -> C::Morphism,
{
    let tp = apply(&coeq.projection);
    let tpairs: Vec<_> = coeq.pairs.iter().map(|(f, g)| (apply(f), apply(g))).collect();
    let fa = cat.domain(&tp).clone();
    let fq = cat.codomain(&tp).clone();

    let coequalizes_all = |h: &C::Morphism| -> Result<bool> {
        for (f, g) in &tpairs {
            if !cat.mor_eq(&cat.compose(h, f)?, &cat.compose(h, g)?) {
                return Ok(false);
            }
        }
        Ok(true)
    };

    if !coequalizes_all(&tp)? {
        return Err(Error::LawViolation("tensored projection does not coequalize".into()));
    }
    report.coequalizes = true;

    if !cat.is_regular_epi(&tp) {
        return Err(Error::LawViolation("tensored projection is not a regular epi".into()));
    }

    let fresh = multiple_coequalizer(cat, &fa, &tpairs)?;
    let u = fresh.factorize(cat, &tp)?;
    let v = cat.factor_through_epi(&tp, &fresh.projection)?;
    let uv = cat.compose(&u, &v)?;
    let vu = cat.compose(&v, &u)?;
    if !cat.mor_eq(&uv, &cat.identity(&fq)) || !cat.mor_eq(&vu, &cat.identity(&fresh.quotient)) {
        return Err(Error::LawViolation(
            "comparison with the recomputed coequalizer is not an isomorphism".into(),
        ));
    }
    report.comparison_is_iso = true;

    let sources = cat.hom_battery(&fa);
    let quotient_maps = cat.hom_battery(&fq);
    let composites: Vec<C::Morphism> = quotient_maps
        .morphisms
        .iter()
        .map(|w| cat.compose(w, &tp))
        .collect::<Result<_>>()?;
    for (n, h) in sources.morphisms.iter().enumerate() {
        if !coequalizes_all(h)? {
            continue;
        }
        let w = cat.factor_through_epi(&tp, h)?;
        if !cat.mor_eq(&cat.compose(&w, &tp)?, h) {
            return Err(Error::LawViolation(format!("factorization of test map {n} fails")));
        }
        report.targets_checked += 1;
        if quotient_maps.complete {
            let hits = composites
                .iter()
                .filter(|c| cat.codomain(c) == cat.codomain(h) && cat.mor_eq(c, h))
                .count();
            if hits != 1 {
                return Err(Error::LawViolation(format!(
                    "test map {n} factors {hits} times through the tensored projection"
                )));
            }
            report.uniqueness_checked += 1;
        }
    }
    Ok(())
}
