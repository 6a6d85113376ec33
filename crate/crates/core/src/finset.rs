//! The cartesian monoidal category of finite sets.
//!
//! Elements of an object of size `n` are the indices `0..n`. The product
//! `X ⊗ Y` flattens pairs row-major, `(i, j) ↦ i·|Y| + j`, so iterated
//! products are strictly associative and the one-element set is a strict unit.

use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{Coequalizer, Coproduct, HomBattery, MonoidalCategory};
use crate::error::{Error, Result};

/// A finite set `{0, …, size-1}`. Labels are for display only and do not
/// take part in equality.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "FinSetObjRepr", into = "FinSetObjRepr")]
pub struct FinSetObj {
    size: usize,
    labels: Option<Arc<[String]>>,
}

#[derive(Serialize, Deserialize)]
struct FinSetObjRepr {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<FinSetObjRepr> for FinSetObj {
    type Error = Error;
    fn try_from(r: FinSetObjRepr) -> Result<Self> {
        match r.labels {
            Some(l) => FinSetObj::with_labels(l).and_then(|o| {
                if o.size == r.size {
                    Ok(o)
                } else {
                    Err(Error::InvalidObject(format!(
                        "{} labels for a set of size {}",
                        o.size, r.size
                    )))
                }
            }),
            None => Ok(FinSetObj::new(r.size)),
        }
    }
}

impl From<FinSetObj> for FinSetObjRepr {
    fn from(o: FinSetObj) -> Self {
        FinSetObjRepr {
            size: o.size,
            labels: o.labels.map(|l| l.to_vec()),
        }
    }
}

impl FinSetObj {
    pub fn new(size: usize) -> Self {
        FinSetObj { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::InvalidObject("labels must be distinct".into()));
        }
        Ok(FinSetObj {
            size: labels.len(),
            labels: Some(labels.into()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

impl PartialEq for FinSetObj {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FinSetObj {}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet({})", self.size)
    }
}

/// A function between finite sets, stored as its table of values.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinSetMorRepr", into = "FinSetMorRepr")]
pub struct FinSetMor {
    dom: FinSetObj,
    cod: FinSetObj,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FinSetMorRepr {
    dom: FinSetObj,
    cod: FinSetObj,
    table: Vec<usize>,
}

impl TryFrom<FinSetMorRepr> for FinSetMor {
    type Error = Error;
    fn try_from(r: FinSetMorRepr) -> Result<Self> {
        FinSetMor::new(r.dom, r.cod, r.table)
    }
}

impl From<FinSetMor> for FinSetMorRepr {
    fn from(m: FinSetMor) -> Self {
        FinSetMorRepr {
            dom: m.dom,
            cod: m.cod,
            table: m.table,
        }
    }
}

impl fmt::Debug for FinSetMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.dom, self.cod, self.table)
    }
}

impl FinSetMor {
    pub fn new(dom: FinSetObj, cod: FinSetObj, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size {
            return Err(Error::InvalidMorphism(format!(
                "table has {} entries for a domain of size {}",
                table.len(),
                dom.size
            )));
        }
        if let Some(bad) = table.iter().position(|&t| t >= cod.size) {
            return Err(Error::InvalidMorphism(format!(
                "entry {bad} = {} is outside a codomain of size {}",
                table[bad], cod.size
            )));
        }
        Ok(FinSetMor { dom, cod, table })
    }

    pub fn from_fn(dom: FinSetObj, cod: FinSetObj, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..dom.size).map(f).collect();
        Self::new(dom, cod, table)
    }

    /// The map from the one-element set picking `element`.
    pub fn point(cod: &FinSetObj, element: usize) -> Result<Self> {
        Self::new(FinSetObj::new(1), cod.clone(), vec![element])
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        self.table.iter().for_each(|&t| hit[t] = true);
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size];
        self.table.iter().all(|&t| !std::mem::replace(&mut hit[t], true))
    }

    /// Every function `dom -> cod`, in lexicographic order of tables.
    pub fn all_maps(dom: &FinSetObj, cod: &FinSetObj) -> AllMaps {
        AllMaps {
            dom: dom.clone(),
            cod: cod.clone(),
            next: if cod.size == 0 && dom.size > 0 {
                None
            } else {
                Some(vec![0; dom.size])
            },
        }
    }
}

/// Iterator over all functions between two finite sets.
pub struct AllMaps {
    dom: FinSetObj,
    cod: FinSetObj,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = FinSetMor;

    fn next(&mut self) -> Option<FinSetMor> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.cod.size {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(FinSetMor {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: current,
        })
    }
}

/// The category of finite sets with cartesian product as tensor.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinSet;

/// Test targets are all sets of size at most this.
const BATTERY_MAX_TARGET: usize = 3;
/// Above this many maps the battery is sampled instead of enumerated.
const BATTERY_CAP: usize = 1024;

impl FinSet {
    pub fn object(&self, size: usize) -> FinSetObj {
        FinSetObj::new(size)
    }
}

impl MonoidalCategory for FinSet {
    type Object = FinSetObj;
    type Morphism = FinSetMor;

    fn unit_object(&self) -> FinSetObj {
        FinSetObj::new(1)
    }

    fn domain<'a>(&self, f: &'a FinSetMor) -> &'a FinSetObj {
        &f.dom
    }

    fn codomain<'a>(&self, f: &'a FinSetMor) -> &'a FinSetObj {
        &f.cod
    }

    fn identity(&self, x: &FinSetObj) -> FinSetMor {
        FinSetMor {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.size).collect(),
        }
    }

    fn compose(&self, g: &FinSetMor, f: &FinSetMor) -> Result<FinSetMor> {
        if f.cod != g.dom {
            return Err(Error::NotComposable(format!("{f:?} then {g:?}")));
        }
        Ok(FinSetMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: f.table.iter().map(|&i| g.table[i]).collect(),
        })
    }

    fn tensor(&self, x: &FinSetObj, y: &FinSetObj) -> FinSetObj {
        FinSetObj::new(x.size * y.size)
    }

    fn tensor_mor(&self, f: &FinSetMor, g: &FinSetMor) -> FinSetMor {
        let (ny, ny2) = (g.dom.size, g.cod.size);
        let mut table = Vec::with_capacity(f.dom.size * ny);
        for &fi in &f.table {
            for &gj in &g.table {
                table.push(fi * ny2 + gj);
            }
        }
        debug_assert_eq!(table.len(), f.dom.size * ny);
        FinSetMor {
            dom: self.tensor(&f.dom, &g.dom),
            cod: self.tensor(&f.cod, &g.cod),
            table,
        }
    }

    fn first_difference(&self, f: &FinSetMor, g: &FinSetMor) -> Result<Option<usize>> {
        if !self.parallel(f, g) {
            return Err(Error::NotParallel(format!("{f:?} vs {g:?}")));
        }
        Ok(f.table.iter().zip(&g.table).position(|(a, b)| a != b))
    }

    fn coequalizer(&self, f: &FinSetMor, g: &FinSetMor) -> Result<Coequalizer<Self>> {
        if !self.parallel(f, g) {
            return Err(Error::NotParallel("coequalizer".into()));
        }
        let n = f.cod.size;
        let mut uf = UnionFind::<usize>::new(n);
        for (&a, &b) in f.table.iter().zip(&g.table) {
            uf.union(a, b);
        }
        // Classes are numbered in order of their smallest member.
        let mut class_of_root = vec![usize::MAX; n];
        let mut table = Vec::with_capacity(n);
        let mut classes = 0;
        for a in 0..n {
            let r = uf.find(a);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes;
                classes += 1;
            }
            table.push(class_of_root[r]);
        }
        let quotient = FinSetObj::new(classes);
        let projection = FinSetMor {
            dom: f.cod.clone(),
            cod: quotient.clone(),
            table,
        };
        Ok(Coequalizer::single(quotient, projection, f.clone(), g.clone()))
    }

    fn factor_through_epi(&self, epi: &FinSetMor, h: &FinSetMor) -> Result<FinSetMor> {
        if epi.dom != h.dom {
            return Err(Error::NotComposable("epi and map must share a domain".into()));
        }
        let mut preimage = vec![None; epi.cod.size];
        for (a, &q) in epi.table.iter().enumerate() {
            preimage[q].get_or_insert(a);
        }
        let table = preimage
            .into_iter()
            .enumerate()
            .map(|(q, a)| {
                a.map(|a| h.table[a])
                    .ok_or_else(|| Error::NoFactorization(format!("class {q} has no preimage")))
            })
            .collect::<Result<Vec<_>>>()?;
        let u = FinSetMor {
            dom: epi.cod.clone(),
            cod: h.cod.clone(),
            table,
        };
        if let Some(i) = self.first_difference(&self.compose(&u, epi)?, h)? {
            return Err(Error::NoFactorization(format!(
                "map is not constant on the fiber of element {i}"
            )));
        }
        Ok(u)
    }

    fn is_regular_epi(&self, f: &FinSetMor) -> bool {
        f.is_surjective()
    }

    fn coproduct(&self, x: &FinSetObj, y: &FinSetObj) -> Result<Coproduct<Self>> {
        let object = FinSetObj::new(x.size + y.size);
        let left = FinSetMor::from_fn(x.clone(), object.clone(), |i| i)?;
        let right = FinSetMor::from_fn(y.clone(), object.clone(), |i| x.size + i)?;
        Ok(Coproduct {
            object,
            left,
            right,
        })
    }

    fn copair(&self, cp: &Coproduct<Self>, f: &FinSetMor, g: &FinSetMor) -> Result<FinSetMor> {
        if f.cod != g.cod {
            return Err(Error::CodomainMismatch("copairing".into()));
        }
        if f.dom != cp.left.dom || g.dom != cp.right.dom {
            return Err(Error::NotComposable("copairing components".into()));
        }
        let table = f.table.iter().chain(&g.table).copied().collect();
        FinSetMor::new(cp.object.clone(), f.cod.clone(), table)
    }

    fn image_factorization(&self, f: &FinSetMor) -> Result<(FinSetMor, FinSetMor)> {
        let mut index = vec![usize::MAX; f.cod.size];
        let mut values = Vec::new();
        for &t in &f.table {
            if index[t] == usize::MAX {
                index[t] = values.len();
                values.push(t);
            }
        }
        let image = FinSetObj::new(values.len());
        let epi = FinSetMor::new(
            f.dom.clone(),
            image.clone(),
            f.table.iter().map(|&t| index[t]).collect(),
        )?;
        let mono = FinSetMor::new(image, f.cod.clone(), values)?;
        Ok((epi, mono))
    }

    fn hom_battery(&self, src: &FinSetObj) -> HomBattery<Self> {
        let n = src.size;
        let total: usize = (1..=BATTERY_MAX_TARGET)
            .map(|s| s.checked_pow(n as u32).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b));
        if total <= BATTERY_CAP {
            let morphisms = (1..=BATTERY_MAX_TARGET)
                .flat_map(|s| FinSetMor::all_maps(src, &FinSetObj::new(s)))
                .collect();
            return HomBattery {
                morphisms,
                complete: true,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let per_target = BATTERY_CAP / BATTERY_MAX_TARGET;
        let morphisms = (1..=BATTERY_MAX_TARGET)
            .flat_map(|s| {
                let cod = FinSetObj::new(s);
                (0..per_target)
                    .map(|_| {
                        let table = (0..n).map(|_| rng.gen_range(0..s)).collect();
                        FinSetMor {
                            dom: src.clone(),
                            cod: cod.clone(),
                            table,
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        HomBattery {
            morphisms,
            complete: false,
        }
    }
}
