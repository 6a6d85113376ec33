//! Free monoids: words over a finite alphabet for finite sets, and the
//! truncated tensor algebra `⊕_{n ≤ N} G^{⊗n}` for abelian groups.
//!
//! Neither free monoid is a finite backend object. Words are handled
//! symbolically; the tensor algebra is cut off at degree `N`, and any product
//! that would leave the truncation is reported as
//! [`Error::DegreeOverflow`] rather than dropped.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::category::MonoidalCategory;
use crate::error::{Error, Result};
use crate::finab::{AbMor, FinAb, PresentedAbGroup};
use crate::finset::{FinSet, FinSetMor, FinSetObj};
use crate::linalg::IntMatrix;
use crate::monoid::MonoidObject;

pub type Word = Vec<usize>;

/// The free monoid on a finite alphabet: words under concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordMonoid {
    alphabet: FinSetObj,
}

impl WordMonoid {
    pub fn new(alphabet: FinSetObj) -> Self {
        WordMonoid { alphabet }
    }

    pub fn alphabet(&self) -> &FinSetObj {
        &self.alphabet
    }

    pub fn unit(&self) -> Word {
        Vec::new()
    }

    pub fn multiply(&self, u: &[usize], v: &[usize]) -> Word {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        w
    }

    pub fn contains(&self, w: &[usize]) -> bool {
        w.iter().all(|&x| x < self.alphabet.size())
    }

    /// The one-letter word `ξ(x)`.
    pub fn generator(&self, x: usize) -> Result<Word> {
        if x >= self.alphabet.size() {
            return Err(Error::InvalidObject(format!("letter {x} is not in the alphabet")));
        }
        Ok(vec![x])
    }

    /// All words of length at most `max_len`, shortest first, then
    /// lexicographically.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let n = self.alphabet.size();
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            if n == 0 {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|w| (0..n).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                }))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// The monoid morphism `ᾱ: X* -> A` extending `α: X -> |A|`.
#[derive(Clone, Debug)]
pub struct WordExtension {
    words: WordMonoid,
    alpha: FinSetMor,
    target: MonoidObject<FinSet>,
}

pub fn homomorphic_extension(alpha: &FinSetMor, a: &MonoidObject<FinSet>) -> Result<WordExtension> {
    if alpha.cod() != &a.carrier {
        return Err(Error::CodomainMismatch("α must land in |A|".into()));
    }
    Ok(WordExtension {
        words: WordMonoid::new(alpha.dom().clone()),
        alpha: alpha.clone(),
        target: a.clone(),
    })
}

impl WordExtension {
    pub fn words(&self) -> &WordMonoid {
        &self.words
    }

    pub fn evaluate(&self, w: &[usize]) -> Result<usize> {
        if !self.words.contains(w) {
            return Err(Error::InvalidObject("word uses letters outside the alphabet".into()));
        }
        Ok(w
            .iter()
            .fold(self.target.unit_element(), |acc, &x| self.target.multiply(acc, self.alpha.apply(x))))
    }

    /// Checks `ᾱ(uv) = ᾱ(u)ᾱ(v)` for all pairs from `sample` and `ᾱ(ε) = e`.
    pub fn is_monoid_morphism_on(&self, sample: &[Word]) -> Result<bool> {
        if self.evaluate(&[])? != self.target.unit_element() {
            return Ok(false);
        }
        for u in sample {
            for v in sample {
                let lhs = self.evaluate(&self.words.multiply(u, v))?;
                let rhs = self.target.multiply(self.evaluate(u)?, self.evaluate(v)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `[id_I, f, f ⊗ f, …, f^{⊗n}]`.
pub fn monad_on_morphism<C: MonoidalCategory>(cat: &C, f: &C::Morphism, n: usize) -> Vec<C::Morphism> {
    let mut out = vec![cat.identity(&cat.unit_object())];
    for k in 1..=n {
        let next = cat.tensor_mor(&out[k - 1], f);
        out.push(next);
    }
    out
}

/// `⊕_{n ≤ N} G^{⊗n}` as one presented group. Its generators are laid out in
/// degree blocks; the block order is ascending unless chosen otherwise.
#[derive(Clone, Debug)]
pub struct GradedTensorAlgebra {
    base: PresentedAbGroup,
    truncation: usize,
    components: Vec<PresentedAbGroup>,
    layout: Vec<usize>,
    offsets: Vec<usize>,
    total: PresentedAbGroup,
}

pub fn truncated_tensor_algebra(base: &PresentedAbGroup, truncation: usize) -> Result<GradedTensorAlgebra> {
    GradedTensorAlgebra::with_layout(base, truncation, &(0..=truncation).collect::<Vec<_>>())
}

impl GradedTensorAlgebra {
    /// `layout` lists the degrees `0..=N` in the order their generator blocks
    /// appear in the total group.
    pub fn with_layout(base: &PresentedAbGroup, truncation: usize, layout: &[usize]) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::TruncationTooSmall(truncation));
        }
        let mut sorted = layout.to_vec();
        sorted.sort_unstable();
        if sorted != (0..=truncation).collect::<Vec<_>>() {
            return Err(Error::InvalidObject("layout must list each degree once".into()));
        }
        let mut components = vec![PresentedAbGroup::free(1)];
        for k in 1..=truncation {
            let next = FinAb.tensor(&components[k - 1], base);
            components.push(next);
        }
        let mut offsets = vec![0; truncation + 1];
        let mut at = 0;
        for &d in layout {
            offsets[d] = at;
            at += components[d].gens();
        }
        let mut relations = Vec::new();
        for (d, comp) in components.iter().enumerate() {
            for r in comp.relations().basis() {
                let mut v = vec![BigInt::zero(); at];
                v[offsets[d]..offsets[d] + comp.gens()].clone_from_slice(r);
                relations.push(v);
            }
        }
        let total = PresentedAbGroup::from_relation_columns(at, relations)?;
        Ok(GradedTensorAlgebra {
            base: base.clone(),
            truncation,
            components,
            layout: layout.to_vec(),
            offsets,
            total,
        })
    }

    pub fn base(&self) -> &PresentedAbGroup {
        &self.base
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn layout(&self) -> &[usize] {
        &self.layout
    }

    pub fn total(&self) -> &PresentedAbGroup {
        &self.total
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            return Err(Error::DegreeOverflow {
                degree: n,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    pub fn component(&self, n: usize) -> Result<&PresentedAbGroup> {
        self.check_degree(n)?;
        Ok(&self.components[n])
    }

    /// Number of generators in each degree.
    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.gens()).collect()
    }

    pub fn offset(&self, n: usize) -> Result<usize> {
        self.check_degree(n)?;
        Ok(self.offsets[n])
    }

    /// Degree and in-degree index of a generator of the total group.
    pub fn locate(&self, j: usize) -> (usize, usize) {
        for (d, comp) in self.components.iter().enumerate() {
            let o = self.offsets[d];
            if j >= o && j < o + comp.gens() {
                return (d, j - o);
            }
        }
        panic!("generator {j} out of range")
    }

    /// A degree-`n` element as a vector of the total group.
    pub fn embed(&self, n: usize, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let comp = self.component(n)?;
        if v.len() != comp.gens() {
            return Err(Error::InvalidObject("vector has the wrong length".into()));
        }
        let mut out = vec![BigInt::zero(); self.total.gens()];
        out[self.offsets[n]..self.offsets[n] + v.len()].clone_from_slice(v);
        Ok(out)
    }

    pub fn generator(&self, n: usize, i: usize) -> Result<Vec<BigInt>> {
        let comp = self.component(n)?;
        self.embed(n, &comp.basis_vector(i))
    }

    pub fn homogeneous_part(&self, x: &[BigInt], n: usize) -> Vec<BigInt> {
        let o = self.offsets[n];
        x[o..o + self.components[n].gens()].to_vec()
    }

    /// Highest degree with a nonzero coordinate, or `None` for zero.
    pub fn top_degree(&self, x: &[BigInt]) -> Option<usize> {
        (0..=self.truncation)
            .rev()
            .find(|&n| self.homogeneous_part(x, n).iter().any(|c| !c.is_zero()))
    }

    pub fn unit(&self) -> Vec<BigInt> {
        self.generator(0, 0).expect("degree 0 exists")
    }

    /// Product of two total vectors by concatenation of tensor indices.
    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.total.gens()];
        for p in 0..=self.truncation {
            let xp = self.homogeneous_part(x, p);
            if xp.iter().all(Zero::is_zero) {
                continue;
            }
            for q in 0..=self.truncation {
                let yq = self.homogeneous_part(y, q);
                if yq.iter().all(Zero::is_zero) {
                    continue;
                }
                self.check_degree(p + q)?;
                let o = self.offsets[p + q];
                let width = yq.len();
                for (i, a) in xp.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (j, b) in yq.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                        out[o + i * width + j] += a * b;
                    }
                }
            }
        }
        Ok(self.total.reduce(&out))
    }

    /// Inclusion of the degree-`n` component.
    pub fn inclusion(&self, n: usize) -> Result<AbMor> {
        let comp = self.component(n)?;
        let columns: Vec<Vec<BigInt>> = (0..comp.gens())
            .map(|i| self.generator(n, i))
            .collect::<Result<_>>()?;
        AbMor::new(comp.clone(), self.total.clone(), IntMatrix::from_columns(self.total.gens(), &columns))
    }

    /// `T f = ⊕ f^{⊗n}` between two truncated algebras of the same degree.
    pub fn graded_morphism(&self, target: &GradedTensorAlgebra, f: &AbMor) -> Result<AbMor> {
        if f.dom() != &self.base || f.cod() != &target.base || self.truncation != target.truncation {
            return Err(Error::NotComposable("T f needs matching bases and truncations".into()));
        }
        let powers = monad_on_morphism(&FinAb, f, self.truncation);
        let mut columns = vec![Vec::new(); self.total.gens()];
        for (n, fn_) in powers.iter().enumerate() {
            for i in 0..self.components[n].gens() {
                let image = fn_.matrix().column(i);
                columns[self.offsets[n] + i] = target.embed(n, &image)?;
            }
        }
        AbMor::new(
            self.total.clone(),
            target.total.clone(),
            IntMatrix::from_columns(target.total.gens(), &columns),
        )
    }

    /// The truncated two-sided closure of a pair `α, β: X -> T`: one column
    /// `u·α(x)·w` (resp. `u·β(x)·w`) for every basis word `u`, `w` and basis
    /// element `x` such that both products stay within the truncation.
    pub fn lambda_pair(&self, alpha: &AbMor, beta: &AbMor) -> Result<(AbMor, AbMor)> {
        if alpha.cod() != &self.total || beta.cod() != &self.total || alpha.dom() != beta.dom() {
            return Err(Error::NotParallel("truncated Λ needs a pair into T".into()));
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for x in 0..alpha.dom().gens() {
            let ax = alpha.matrix().column(x);
            let bx = beta.matrix().column(x);
            let top = self.top_degree(&ax).max(self.top_degree(&bx)).unwrap_or(0);
            if top > self.truncation {
                continue;
            }
            let room = self.truncation - top;
            for a in 0..=room {
                for b in 0..=(room - a) {
                    for u in 0..self.components[a].gens() {
                        let uv = self.generator(a, u)?;
                        let ua = self.multiply(&uv, &ax)?;
                        let ub = self.multiply(&uv, &bx)?;
                        for w in 0..self.components[b].gens() {
                            let wv = self.generator(b, w)?;
                            left.push(self.multiply(&ua, &wv)?);
                            right.push(self.multiply(&ub, &wv)?);
                        }
                    }
                }
            }
        }
        let dom = PresentedAbGroup::free(left.len());
        let n = self.total.gens();
        Ok((
            AbMor::new(dom.clone(), self.total.clone(), IntMatrix::from_columns(n, &left))?,
            AbMor::new(dom, self.total.clone(), IntMatrix::from_columns(n, &right))?,
        ))
    }
}

/// The ring morphism `T G -> A` extending `α: G -> |A|`, degree by degree.
#[derive(Clone, Debug)]
pub struct GradedExtension {
    algebra: GradedTensorAlgebra,
    components: Vec<AbMor>,
}

pub fn graded_extension(
    algebra: &GradedTensorAlgebra,
    alpha: &AbMor,
    a: &MonoidObject<FinAb>,
) -> Result<GradedExtension> {
    if alpha.dom() != algebra.base() || alpha.cod() != &a.carrier {
        return Err(Error::NotComposable("α must map the base group into |A|".into()));
    }
    let mut components = vec![a.unit.clone()];
    for k in 1..=algebra.truncation() {
        let next = FinAb.compose(&a.mult, &FinAb.tensor_mor(&components[k - 1], alpha))?;
        components.push(next);
    }
    Ok(GradedExtension {
        algebra: algebra.clone(),
        components,
    })
}

impl GradedExtension {
    pub fn component(&self, n: usize) -> Result<&AbMor> {
        self.algebra.check_degree(n)?;
        Ok(&self.components[n])
    }

    pub fn evaluate(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut acc: Option<Vec<BigInt>> = None;
        for (n, c) in self.components.iter().enumerate() {
            let part = c.apply(&self.algebra.homogeneous_part(x, n));
            acc = Some(match acc {
                None => part,
                Some(s) => s.iter().zip(&part).map(|(p, q)| p + q).collect(),
            });
        }
        let a = self.components[0].cod();
        a.reduce(&acc.expect("degree 0 exists"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn z3_add() -> MonoidObject<FinSet> {
        let t: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        MonoidObject::from_table(&t, 0).unwrap()
    }

    #[test]
    fn word_extension() {
        let a = z3_add();
        let alpha = FinSetMor::new(FinSetObj::new(1), FinSetObj::new(3), vec![1]).unwrap();
        let ext = homomorphic_extension(&alpha, &a).unwrap();
        assert_eq!(ext.evaluate(&[]).unwrap(), 0);
        assert_eq!(ext.evaluate(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(ext.evaluate(&[0, 0]).unwrap(), 2);
        assert_eq!(ext.evaluate(&ext.words().generator(0).unwrap()).unwrap(), alpha.apply(0));
        let sample = ext.words().words_up_to(3);
        assert_eq!(sample.len(), 4);
        assert!(ext.is_monoid_morphism_on(&sample).unwrap());
    }

    #[test]
    fn words_are_enumerated_shortlex() {
        let w = WordMonoid::new(FinSetObj::new(2));
        assert_eq!(w.words_up_to(2), vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(w.multiply(&[1], &[0, 1]), vec![1, 0, 1]);
    }

    #[test]
    fn component_ranks() {
        let t = truncated_tensor_algebra(&PresentedAbGroup::free(1), 3).unwrap();
        assert_eq!(t.ranks(), vec![1, 1, 1, 1]);
        let t = truncated_tensor_algebra(&PresentedAbGroup::free(2), 2).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 4]);
        let t = truncated_tensor_algebra(&PresentedAbGroup::cyclic(2), 2).unwrap();
        assert_eq!(t.component(0).unwrap().invariant_factors().len(), 0);
        assert_eq!(t.component(0).unwrap().free_rank(), 1);
        for n in 1..=2 {
            assert_eq!(t.component(n).unwrap().invariant_factors(), &[BigInt::from(2)]);
            assert_eq!(t.component(n).unwrap().free_rank(), 0);
        }
        assert!(matches!(
            truncated_tensor_algebra(&PresentedAbGroup::free(1), 1),
            Err(Error::TruncationTooSmall(1))
        ));
    }

    #[test]
    fn overflow_is_flagged() {
        let t = truncated_tensor_algebra(&PresentedAbGroup::free(2), 2).unwrap();
        let x = t.generator(1, 0).unwrap();
        let y = t.generator(1, 1).unwrap();
        let xy = t.multiply(&x, &y).unwrap();
        assert_eq!(t.homogeneous_part(&xy, 2), big(&[0, 1, 0, 0]));
        assert!(matches!(
            t.multiply(&xy, &x),
            Err(Error::DegreeOverflow { degree: 3, truncation: 2 })
        ));
        assert_eq!(t.multiply(&t.unit(), &x).unwrap(), x);
    }

    #[test]
    fn kronecker_powers() {
        let z = PresentedAbGroup::free(1);
        let f = AbMor::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let powers = monad_on_morphism(&FinAb, &f, 2);
        let entries: Vec<BigInt> = powers.iter().map(|p| p.matrix()[(0, 0)].clone()).collect();
        assert_eq!(entries, big(&[1, 2, 4]));
        let id = FinAb.identity(&z);
        assert!(monad_on_morphism(&FinAb, &id, 3).iter().all(|p| p.matrix().is_identity()));
    }

    #[test]
    fn tensor_powers_of_surjection_are_surjective() {
        let f = AbMor::new(
            PresentedAbGroup::free(1),
            PresentedAbGroup::cyclic(2),
            IntMatrix::from_rows(&[vec![1]]),
        )
        .unwrap();
        assert!(monad_on_morphism(&FinAb, &f, 3).iter().all(|p| FinAb.is_regular_epi(p)));
    }

    #[test]
    fn layout_and_graded_morphism() {
        let g = PresentedAbGroup::free(2);
        let t = GradedTensorAlgebra::with_layout(&g, 2, &[2, 0, 1]).unwrap();
        assert_eq!(t.offset(2).unwrap(), 0);
        assert_eq!(t.offset(0).unwrap(), 4);
        assert_eq!(t.offset(1).unwrap(), 5);
        assert_eq!(t.locate(6), (1, 1));
        let swap = AbMor::new(g.clone(), g.clone(), IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        let tf = t.graded_morphism(&t, &swap).unwrap();
        let x = t.generator(1, 0).unwrap();
        let y = t.generator(1, 1).unwrap();
        let xy = t.multiply(&x, &y).unwrap();
        assert_eq!(tf.apply(&xy), t.multiply(&y, &x).unwrap());
        assert_eq!(tf.apply(&t.unit()), t.unit());
    }

    #[test]
    fn graded_extension_into_z6() {
        let a = MonoidObject::cyclic_ring(6).unwrap();
        let t = truncated_tensor_algebra(&PresentedAbGroup::free(1), 3).unwrap();
        let alpha = AbMor::new(PresentedAbGroup::free(1), a.carrier.clone(), IntMatrix::from_rows(&[vec![5]])).unwrap();
        let ext = graded_extension(&t, &alpha, &a).unwrap();
        assert_eq!(ext.evaluate(&t.unit()), big(&[1]));
        assert_eq!(ext.evaluate(&t.generator(1, 0).unwrap()), big(&[5]));
        assert_eq!(ext.evaluate(&t.generator(2, 0).unwrap()), big(&[1]));
        assert_eq!(ext.evaluate(&t.generator(3, 0).unwrap()), big(&[5]));
        assert!(matches!(ext.component(4), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn truncated_lambda_columns() {
        let g = PresentedAbGroup::free(1);
        let t = truncated_tensor_algebra(&g, 3).unwrap();
        let one = PresentedAbGroup::free(1);
        let alpha = AbMor::new(one.clone(), t.total().clone(), IntMatrix::from_columns(4, &[t.generator(2, 0).unwrap()])).unwrap();
        let beta = AbMor::new(one, t.total().clone(), IntMatrix::from_columns(4, &[t.generator(1, 0).unwrap()])).unwrap();
        let (l, r) = t.lambda_pair(&alpha, &beta).unwrap();
        // u, w of total degree at most 1: (0,0), (0,1), (1,0)
        assert_eq!(l.dom().gens(), 3);
        assert_eq!(l.apply(&big(&[0, 1, 0])), t.generator(3, 0).unwrap());
        assert_eq!(r.apply(&big(&[0, 1, 0])), t.generator(2, 0).unwrap());
    }
}
