use monoid_colimits::catalog;
use monoid_colimits::category::{check_tensor_preserves_coequalizer, MonoidalCategory};
use monoid_colimits::finab::{AbMor, FinAb, PresentedAbGroup};
use monoid_colimits::finset::{FinSet, FinSetMor};
use monoid_colimits::lifting::{
    self, check_counit_lifts, counit, hom_bijection_with, lift_object, underlying_monoid,
};
use monoid_colimits::monoid::{
    check_monoid, check_monoid_morphism, lambda_equivalence, monoid_coequalizer,
    monoid_multiple_coequalizer, LawReport, MonoidMorphism, MonoidObject,
};
use monoid_colimits::schema::{self, AnyMonoid};
use monoid_colimits::{Error, Result};
use serde_json::{json, Value};

use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Fast,
    Full,
}

/// Largest hom-set we are willing to enumerate for the universal property.
const ENUMERATION_LIMIT: usize = 1 << 14;

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Per-backend glue between JSON and the generic routines.
trait Backend: MonoidalCategory {
    const NAME: &'static str;
    fn parse_map(&self, v: &Value, cod: &Self::Object) -> Result<Self::Morphism>;
    fn map_json(&self, f: &Self::Morphism) -> Value;
    fn wrap(&self, m: &MonoidObject<Self>) -> AnyMonoid;
    /// Number of generators (or elements) indexing law witnesses.
    fn witness_base(&self, x: &Self::Object) -> usize;
    fn describe(&self, x: &Self::Object) -> String;
    /// Small monoids to test the universal property against.
    fn probe_targets(&self) -> Vec<MonoidObject<Self>>;
    /// Every monoid morphism `a -> c`, or `None` if that is too many to try.
    fn all_monoid_morphisms(
        &self,
        a: &MonoidObject<Self>,
        c: &MonoidObject<Self>,
    ) -> Option<Vec<MonoidMorphism<Self>>>;
}

impl Backend for FinSet {
    const NAME: &'static str = "finset";

    fn parse_map(&self, v: &Value, cod: &Self::Object) -> Result<FinSetMor> {
        schema::parse_finset_map(v, cod)
    }

    fn map_json(&self, f: &FinSetMor) -> Value {
        schema::finset_map_json(f)
    }

    fn wrap(&self, m: &MonoidObject<Self>) -> AnyMonoid {
        AnyMonoid::FinSet(m.clone())
    }

    fn witness_base(&self, x: &Self::Object) -> usize {
        x.size()
    }

    fn describe(&self, x: &Self::Object) -> String {
        format!("set of {} elements", x.size())
    }

    fn probe_targets(&self) -> Vec<MonoidObject<Self>> {
        catalog::monoids_up_to(3)
    }

    fn all_monoid_morphisms(
        &self,
        a: &MonoidObject<Self>,
        c: &MonoidObject<Self>,
    ) -> Option<Vec<MonoidMorphism<Self>>> {
        let count = c.size().checked_pow(a.size() as u32)?;
        (count <= ENUMERATION_LIMIT).then(|| lifting::monoid_morphisms(a, c))
    }
}

impl Backend for FinAb {
    const NAME: &'static str = "finab";

    fn parse_map(&self, v: &Value, cod: &Self::Object) -> Result<AbMor> {
        schema::parse_finab_map(v, cod)
    }

    fn map_json(&self, f: &AbMor) -> Value {
        schema::finab_map_json(f)
    }

    fn wrap(&self, m: &MonoidObject<Self>) -> AnyMonoid {
        AnyMonoid::FinAb(m.clone())
    }

    fn witness_base(&self, x: &Self::Object) -> usize {
        x.gens()
    }

    fn describe(&self, x: &Self::Object) -> String {
        describe_group(x)
    }

    fn probe_targets(&self) -> Vec<MonoidObject<Self>> {
        [
            catalog::zmod_ring(2),
            catalog::zmod_ring(3),
            catalog::zmod_ring(4),
            catalog::product_ring(2, 2),
            catalog::dual_numbers(2),
        ]
        .into_iter()
        .map(|r| r.expect("catalog rings are well formed"))
        .collect()
    }

    fn all_monoid_morphisms(
        &self,
        a: &MonoidObject<Self>,
        c: &MonoidObject<Self>,
    ) -> Option<Vec<MonoidMorphism<Self>>> {
        let elements = c.carrier.elements().ok()?;
        let g = a.carrier.gens();
        let count = elements.len().checked_pow(g as u32)?;
        if count > ENUMERATION_LIMIT {
            return None;
        }
        let mut out = Vec::new();
        for code in 0..count {
            let mut rest = code;
            let columns: Vec<_> = (0..g)
                .map(|_| {
                    let e = elements[rest % elements.len()].clone();
                    rest /= elements.len();
                    e
                })
                .collect();
            let matrix = monoid_colimits::linalg::IntMatrix::from_columns(c.carrier.gens(), &columns);
            // candidates that are not well defined on the relations are skipped
            let Ok(map) = AbMor::new(a.carrier.clone(), c.carrier.clone(), matrix) else {
                continue;
            };
            let f = MonoidMorphism::unchecked(a.clone(), c.clone(), map);
            if check_monoid_morphism(self, &f).passed() {
                out.push(f);
            }
        }
        Some(out)
    }
}

fn describe_group(g: &PresentedAbGroup) -> String {
    let mut parts: Vec<String> = g.invariant_factors().iter().map(|d| format!("Z/{d}")).collect();
    parts.extend(std::iter::repeat_n("Z".to_string(), g.free_rank()));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

/// Inputs per element of a law's domain, e.g. triples for associativity.
fn law_arity(law: &str) -> usize {
    match law {
        "associativity" => 3,
        "preserves multiplication" => 2,
        "left unit" | "right unit" => 1,
        _ => 0,
    }
}

/// Splits a row-major index into `arity` coordinates in `0..base`.
fn decode_witness(index: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = rest % base.max(1);
        rest /= base.max(1);
    }
    out
}

fn record_laws(report: &mut Report, laws: &LawReport, base: usize, unit: &str) -> Value {
    let mut out = Vec::new();
    for law in &laws.laws {
        let arity = law_arity(&law.law);
        let tuple = law
            .witness
            .filter(|_| arity > 0)
            .map(|w| decode_witness(w, base, arity));
        match (&tuple, law.passed) {
            (_, true) => report.check(law.law.clone(), true),
            (Some(t), false) => {
                let shown: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                report.check_with(law.law.clone(), false, format!("fails at {unit} ({})", shown.join(", ")))
            }
            (None, false) => report.check(law.law.clone(), false),
        }
        out.push(json!({
            "law": law.law,
            "passed": law.passed,
            "witness": tuple,
        }));
    }
    Value::Array(out)
}

fn witness_unit<C: Backend>() -> &'static str {
    if C::NAME == "finset" {
        "elements"
    } else {
        "generators"
    }
}

pub fn check(input: &Value) -> Result<Report> {
    if let Some(m) = input.get("morphism") {
        return check_morphism(m);
    }
    let doc = input.get("monoid").unwrap_or(input);
    match schema::parse_monoid(doc)? {
        AnyMonoid::FinSet(a) => Ok(check_object(&FinSet, &a)),
        AnyMonoid::FinAb(a) => Ok(check_object(&FinAb, &a)),
    }
}

fn check_object<C: Backend>(cat: &C, a: &MonoidObject<C>) -> Report {
    let mut report = Report::new("check");
    report.summary.push(format!("monoid in {} on a {}", C::NAME, cat.describe(&a.carrier)));
    let laws = check_monoid(cat, a);
    let laws = record_laws(&mut report, &laws, cat.witness_base(&a.carrier), witness_unit::<C>());
    report.result = json!({"kind": "monoid", "backend": C::NAME, "laws": laws});
    report
}

fn check_morphism(v: &Value) -> Result<Report> {
    let field = |k: &str| v.get(k).ok_or_else(|| schema_err(format!("morphism: missing field {k:?}")));
    let source = schema::parse_monoid(field("source")?)?;
    let target = schema::parse_monoid(field("target")?)?;
    match (source, target) {
        (AnyMonoid::FinSet(s), AnyMonoid::FinSet(t)) => check_morphism_in(&FinSet, s, t, field("map")?),
        (AnyMonoid::FinAb(s), AnyMonoid::FinAb(t)) => check_morphism_in(&FinAb, s, t, field("map")?),
        _ => Err(schema_err("source and target must use the same backend")),
    }
}

fn check_morphism_in<C: Backend>(
    cat: &C,
    source: MonoidObject<C>,
    target: MonoidObject<C>,
    map: &Value,
) -> Result<Report> {
    let f = cat.parse_map(map, &target.carrier)?;
    if cat.domain(&f) != &source.carrier {
        return Err(schema_err("map must start at the source carrier"));
    }
    let mut report = Report::new("check");
    report.summary.push(format!(
        "monoid morphism in {} from a {} to a {}",
        C::NAME,
        cat.describe(&source.carrier),
        cat.describe(&target.carrier)
    ));
    let base = cat.witness_base(&source.carrier);
    let source_laws = check_monoid(cat, &source);
    let target_laws = check_monoid(cat, &target);
    report.check("source is a monoid", source_laws.passed());
    report.check("target is a monoid", target_laws.passed());
    let laws = check_monoid_morphism(cat, &MonoidMorphism::unchecked(source, target, f));
    let laws = record_laws(&mut report, &laws, base, witness_unit::<C>());
    report.result = json!({"kind": "morphism", "backend": C::NAME, "laws": laws});
    Ok(report)
}

pub fn coequalize(input: &Value, depth: Depth) -> Result<Report> {
    let doc = input.get("monoid").ok_or_else(|| schema_err("missing field \"monoid\""))?;
    match schema::parse_monoid(doc)? {
        AnyMonoid::FinSet(a) => coequalize_in(&FinSet, &a, input, depth),
        AnyMonoid::FinAb(a) => coequalize_in(&FinAb, &a, input, depth),
    }
}

fn parse_pairs<C: Backend>(cat: &C, a: &MonoidObject<C>, input: &Value) -> Result<Vec<(C::Morphism, C::Morphism)>> {
    if let Some(pairs) = input.get("pairs") {
        let pairs = pairs.as_array().ok_or_else(|| schema_err("pairs must be a list"))?;
        return pairs
            .iter()
            .map(|p| match p {
                Value::Array(two) if two.len() == 2 => {
                    Ok((cat.parse_map(&two[0], &a.carrier)?, cat.parse_map(&two[1], &a.carrier)?))
                }
                Value::Object(o) => {
                    let get = |k: &str| o.get(k).ok_or_else(|| schema_err(format!("pair: missing field {k:?}")));
                    Ok((cat.parse_map(get("alpha")?, &a.carrier)?, cat.parse_map(get("beta")?, &a.carrier)?))
                }
                _ => Err(schema_err("each pair is [alpha, beta] or {\"alpha\", \"beta\"}")),
            })
            .collect();
    }
    let get = |k: &str| input.get(k).ok_or_else(|| schema_err(format!("missing field {k:?}")));
    Ok(vec![(
        cat.parse_map(get("alpha")?, &a.carrier)?,
        cat.parse_map(get("beta")?, &a.carrier)?,
    )])
}

fn coequalize_in<C: Backend>(cat: &C, a: &MonoidObject<C>, input: &Value, depth: Depth) -> Result<Report> {
    let pairs = parse_pairs(cat, a, input)?;
    if pairs.is_empty() {
        return Err(schema_err("at least one pair is required"));
    }
    for (i, (f, g)) in pairs.iter().enumerate() {
        if !cat.parallel(f, g) {
            return Err(Error::NotParallel(format!("pair {i}")));
        }
    }
    let mut report = Report::new("coequalize");
    let laws = check_monoid(cat, a);
    if !laws.passed() {
        let laws = record_laws(&mut report, &laws, cat.witness_base(&a.carrier), witness_unit::<C>());
        report.summary.push("input is not a monoid".into());
        report.result = json!({"backend": C::NAME, "laws": laws});
        return Ok(report);
    }
    let q = if pairs.len() == 1 {
        monoid_coequalizer(cat, a, &pairs[0].0, &pairs[0].1)?
    } else {
        monoid_multiple_coequalizer(cat, a, &pairs)?
    };
    let pi = &q.projection.map;

    report.summary.push(format!("monoid in {} on a {}", C::NAME, cat.describe(&a.carrier)));
    report.summary.push(format!("quotient on a {}", cat.describe(&q.quotient.carrier)));
    report.result = json!({
        "backend": C::NAME,
        "quotient": schema::monoid_json(&cat.wrap(&q.quotient)),
        "projection": cat.map_json(pi),
    });

    report.check("quotient satisfies the monoid laws", check_monoid(cat, &q.quotient).passed());
    report.check("projection is a monoid morphism", check_monoid_morphism(cat, &q.projection).passed());
    report.check("projection is a regular epimorphism", cat.is_regular_epi(pi));
    for (i, (alpha, beta)) in pairs.iter().enumerate() {
        let plain = cat.mor_eq(&cat.compose(pi, alpha)?, &cat.compose(pi, beta)?);
        report.check(format!("projection coequalizes pair {i}"), plain);
        let (lam, direct) = lambda_equivalence(cat, pi, a, alpha, beta)?;
        report.check(format!("projection coequalizes the Λ-pair of pair {i}"), lam && direct);
    }

    if depth == Depth::Full {
        let preservation = check_tensor_preserves_coequalizer(cat, &a.carrier, &q.coequalizer);
        for side in [&preservation.left, &preservation.right] {
            match &side.counterexample {
                None => report.check_with(
                    format!("{} preserves the coequalizer", side.side),
                    true,
                    format!("{} test maps", side.targets_checked),
                ),
                Some(c) => report.check_with(format!("{} preserves the coequalizer", side.side), false, c.clone()),
            }
        }
        universal_property(cat, a, &q, &mut report)?;
    }
    Ok(report)
}

/// Every monoid morphism into a small probe monoid that coequalizes the
/// pairs factors uniquely through the quotient.
fn universal_property<C: Backend>(
    cat: &C,
    a: &MonoidObject<C>,
    q: &monoid_colimits::monoid::MonoidCoequalizer<C>,
    report: &mut Report,
) -> Result<()> {
    let (mut tried, mut factored, mut skipped) = (0usize, 0usize, 0usize);
    let mut failure = None;
    for target in cat.probe_targets() {
        let Some(taus) = cat.all_monoid_morphisms(a, &target) else {
            skipped += 1;
            continue;
        };
        for tau in taus {
            let coequalizes = q.relations.iter().all(|(alpha, beta)| {
                match (cat.compose(&tau.map, alpha), cat.compose(&tau.map, beta)) {
                    (Ok(x), Ok(y)) => cat.mor_eq(&x, &y),
                    _ => false,
                }
            });
            if !coequalizes {
                continue;
            }
            tried += 1;
            match q.factorize(cat, &tau) {
                Ok(sigma) if cat.mor_eq(&cat.compose(&sigma.map, &q.projection.map)?, &tau.map) => factored += 1,
                Ok(_) => failure = Some("σ ∘ π differs from τ".to_string()),
                Err(e) => failure = Some(e.to_string()),
            }
        }
    }
    let mut detail = format!("{factored} of {tried} coequalizing morphisms factor");
    if skipped > 0 {
        detail.push_str(&format!(", {skipped} probe targets too large to enumerate"));
    }
    match failure {
        None => report.check_with("universal property against small monoids", factored == tried, detail),
        Some(f) => report.check_with("universal property against small monoids", false, format!("{detail}; {f}")),
    }
    Ok(())
}

fn finite_monoid(input: &Value, key: &str) -> Result<MonoidObject<FinSet>> {
    let doc = input.get(key).unwrap_or(input);
    match schema::parse_monoid(doc)? {
        AnyMonoid::FinSet(d) => Ok(d),
        AnyMonoid::FinAb(_) => Err(schema_err(format!("{key} must be a finite monoid (backend finset)"))),
    }
}

fn element_name(d: &MonoidObject<FinSet>, i: usize) -> String {
    format!("[{}]", d.carrier.label(i))
}

pub fn monoid_ring(input: &Value, truncation: usize, depth: Depth) -> Result<Report> {
    let d = finite_monoid(input, "monoid")?;
    let mut report = Report::new("monoid-ring");
    let laws = check_monoid(&FinSet, &d);
    if !laws.passed() {
        let laws = record_laws(&mut report, &laws, d.size(), "elements");
        report.summary.push("input is not a monoid".into());
        report.result = json!({"laws": laws});
        return Ok(report);
    }
    let lifted = lift_object(&d, truncation)?;
    let n = d.size();
    let basis: Vec<String> = (0..n).map(|i| element_name(&d, i)).collect();
    let products: Vec<Vec<Value>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| schema::vector_json(&lifted.ring.multiply(&lifted.ring.carrier.basis_vector(x), &lifted.ring.carrier.basis_vector(y))))
                .collect()
        })
        .collect();
    report.summary.push(format!(
        "ring on {} with basis {}",
        describe_group(&lifted.ring.carrier),
        basis.join(", ")
    ));
    if n <= 6 {
        for x in 0..n {
            let row: Vec<String> = (0..n)
                .map(|y| format!("{}·{} = {}", basis[x], basis[y], basis[d.multiply(x, y)]))
                .collect();
            report.summary.push(format!("  {}", row.join("   ")));
        }
    }
    let s = &lifted.stabilization;
    report.summary.push(format!(
        "stabilized between truncations {} and {}",
        s.truncations.0, s.truncations.1
    ));
    report.result = json!({
        "ring": schema::monoid_json(&AnyMonoid::FinAb(lifted.ring.clone())),
        "basis": basis,
        "products": products,
        "stabilization": serde_json::to_value(s).expect("plain data"),
    });

    report.check("ring satisfies the monoid laws", check_monoid(&FinAb, &lifted.ring).passed());
    report.check_with(
        "quotient agrees at consecutive truncations",
        s.stabilized,
        format!("ranks {} and {}", s.free_ranks.0, s.free_ranks.1),
    );
    report.check_with(
        "underlying group is free on the elements",
        lifted.ring.carrier.free_rank() == n && lifted.ring.carrier.invariant_factors().is_empty(),
        describe_group(&lifted.ring.carrier),
    );
    if depth == Depth::Full {
        let table_matches = (0..n).all(|x| {
            (0..n).all(|y| {
                let prod = lifted
                    .ring
                    .multiply(&lifted.ring.carrier.basis_vector(x), &lifted.ring.carrier.basis_vector(y));
                prod == lifted.ring.carrier.basis_vector(d.multiply(x, y))
            })
        });
        report.check("basis products follow the monoid table", table_matches);
        report.check(
            "unit is the basis element of the identity",
            lifted.ring.unit_element() == lifted.ring.carrier.basis_vector(d.unit_element()),
        );
        report.check("element inclusion is a monoid morphism", lifted.check_gamma());
    }
    Ok(report)
}

pub fn hom_check(input: &Value, truncation: usize, depth: Depth) -> Result<Report> {
    let d = finite_monoid(input, "monoid")?;
    let ring_doc = input.get("ring").ok_or_else(|| schema_err("missing field \"ring\""))?;
    let a = match schema::parse_monoid(ring_doc)? {
        AnyMonoid::FinAb(a) => a,
        AnyMonoid::FinSet(_) => return Err(schema_err("ring must use backend finab")),
    };
    if !a.carrier.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let mut report = Report::new("hom-check");
    let d_laws = check_monoid(&FinSet, &d);
    let a_laws = check_monoid(&FinAb, &a);
    if !d_laws.passed() || !a_laws.passed() {
        let dl = record_laws(&mut report, &d_laws, d.size(), "elements");
        let al = record_laws(&mut report, &a_laws, a.carrier.gens(), "generators");
        report.summary.push("inputs must satisfy the monoid laws".into());
        report.result = json!({"monoid_laws": dl, "ring_laws": al});
        return Ok(report);
    }

    let lifted_d = lift_object(&d, truncation)?;
    let ra = underlying_monoid(&a)?;
    let lifted_ra = lift_object(&ra, truncation)?;
    let bijection = hom_bijection_with(&lifted_d, &lifted_ra, &a)?;

    let elements = a.carrier.elements()?;
    let monoid_maps: Vec<Value> = lifting::monoid_morphisms(&d, &ra)
        .iter()
        .map(|m| {
            Value::Array(
                m.map
                    .table()
                    .iter()
                    .map(|&i| schema::vector_json(&elements[i]))
                    .collect(),
            )
        })
        .collect();
    let ring_maps: Vec<Value> = lifting::ring_morphisms(&lifted_d, &a)?
        .iter()
        .map(|f| {
            Value::Array(
                (0..d.size())
                    .map(|i| schema::vector_json(&f.map.apply(&lifted_d.ring.carrier.basis_vector(i))))
                    .collect(),
            )
        })
        .collect();

    report.summary.push(format!(
        "monoid of order {} and ring on {}",
        d.size(),
        describe_group(&a.carrier)
    ));
    report.summary.push(format!(
        "{} monoid morphisms into the multiplicative monoid, {} ring morphisms out of the monoid ring",
        bijection.monoid_morphisms, bijection.ring_morphisms
    ));
    report.result = json!({
        "monoid_morphisms": monoid_maps,
        "ring_morphisms": ring_maps,
        "report": serde_json::to_value(&bijection).expect("plain data"),
    });

    report.check_with(
        "hom-set sizes agree",
        bijection.monoid_morphisms == bijection.ring_morphisms,
        format!("{} and {}", bijection.monoid_morphisms, bijection.ring_morphisms),
    );
    report.check("transpose then untranspose is the identity", bijection.transpose_round_trip);
    report.check("untranspose then transpose is the identity", bijection.inverse_round_trip);
    if depth == Depth::Full {
        let sigma = counit(&lifted_ra, &a)?;
        report.check("counit is a ring morphism", check_monoid_morphism(&FinAb, &sigma).passed());
        report.check("counit lifts the underlying counit", check_counit_lifts(&lifted_ra, &a, &sigma)?);
        report.check("element inclusion is a monoid morphism", lifted_d.check_gamma());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_decode_row_major() {
        assert_eq!(decode_witness(16 + 2 * 4 + 3, 4, 3), vec![1, 2, 3]);
        assert_eq!(decode_witness(5, 7, 1), vec![5]);
        assert!(decode_witness(0, 3, 0).is_empty());
    }
}
