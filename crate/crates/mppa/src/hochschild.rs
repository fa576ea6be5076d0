//! Chain-level Hochschild machinery over the idempotent base `R = ⊕_v k e_v`:
//! the normalized complex, the Hochschild differential `b`, the Connes
//! operator `B`, mixed chains in the `(b + uB)` complex, and pushforward
//! along algebra morphisms.
//!
//! A tensor term `x0 ⊗ x1 ⊗ ... ⊗ xn` is cyclically composable:
//! `src(x_i) = tgt(x_{i+1})` and `src(x_n) = tgt(x_0)`. In the normalized
//! complex an idempotent in any slot past the first kills the term.

use crate::ncalg::{raw_add_term, AlgError, AlgebraMorphism, NCElement, Presentation, Word};
use crate::Rat;
use num::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Tensor word: one `Word` per slot.
pub type Tensor = Vec<Word>;

/// Homogeneous normalized Hochschild chain of degree `degree` (tensor length
/// `degree + 1`), with exact coefficients and slotwise normal-formed words.
#[derive(Debug, Clone)]
pub struct Chain {
    pub pres: Arc<Presentation>,
    pub degree: usize,
    pub terms: BTreeMap<Tensor, Rat>,
}

impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        self.pres.name == other.pres.name
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Eq for Chain {}

fn cyclically_composable(pres: &Presentation, t: &Tensor) -> bool {
    let n = t.len();
    for i in 0..n {
        if pres.word_src(&t[i]) != pres.word_tgt(&t[(i + 1) % n]) {
            return false;
        }
    }
    true
}

fn has_interior_idempotent(t: &Tensor) -> bool {
    t.iter().skip(1).any(|w| w.is_idempotent())
}

impl Chain {
    pub fn zero(pres: &Arc<Presentation>, degree: usize) -> Self {
        Chain {
            pres: pres.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Multilinear expansion of element tensors into word tensors.
    /// Non-composable word combinations vanish in the tensor product over
    /// `R`; interior idempotents vanish in the normalized complex.
    pub fn from_tensors(
        pres: &Arc<Presentation>,
        degree: usize,
        tensors: &[(Rat, Vec<NCElement>)],
    ) -> Result<Self, AlgError> {
        let mut out = Chain::zero(pres, degree);
        for (coeff, slots) in tensors {
            if slots.len() != degree + 1 {
                return Err(AlgError::Other(format!(
                    "tensor has {} slots, expected {}",
                    slots.len(),
                    degree + 1
                )));
            }
            let slots: Vec<NCElement> = slots.iter().map(|e| e.normal_form()).collect();
            let mut partial: Vec<(Tensor, Rat)> = vec![(Vec::new(), coeff.clone())];
            for slot in &slots {
                let mut next = Vec::new();
                for (t, c) in &partial {
                    for (w, wc) in &slot.terms {
                        if let Some(prev) = t.last() {
                            if pres.word_src(prev) != pres.word_tgt(w) {
                                continue;
                            }
                        }
                        let mut t2 = t.clone();
                        t2.push(w.clone());
                        next.push((t2, c * wc));
                    }
                }
                partial = next;
            }
            for (t, c) in partial {
                if pres.word_src(t.last().unwrap()) != pres.word_tgt(&t[0]) {
                    continue;
                }
                out.push_term(t, c);
            }
        }
        Ok(out)
    }

    fn push_term(&mut self, t: Tensor, c: Rat) {
        if c.is_zero() || has_interior_idempotent(&t) {
            return;
        }
        debug_assert!(cyclically_composable(&self.pres, &t));
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Adds `c` times the slotwise normal form of the word tensor `t`,
    /// expanding multilinearly.
    fn push_term_normalized(&mut self, slots: Vec<NCElement>, c: Rat) {
        let pres = self.pres.clone();
        let mut partial: Vec<(Tensor, Rat)> = vec![(Vec::new(), c)];
        for slot in &slots {
            let mut next = Vec::new();
            for (t, c) in &partial {
                for (w, wc) in &slot.terms {
                    let mut t2 = t.clone();
                    t2.push(w.clone());
                    next.push((t2, c * wc));
                }
            }
            partial = next;
        }
        for (t, c) in partial {
            debug_assert!(cyclically_composable(&pres, &t));
            self.push_term(t, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "chain degree mismatch");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.push_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-crate::rat_int(1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Chain::zero(&self.pres, self.degree);
        }
        Chain {
            pres: self.pres.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
        }
    }

    /// Exact equality; requires a certified-confluent presentation since
    /// chain terms are compared through their normal forms.
    pub fn equals(&self, other: &Self) -> Result<bool, AlgError> {
        if !self.pres.certified_confluent {
            return Err(AlgError::NotCertified);
        }
        Ok(self.degree == other.degree && self.sub(other).is_zero())
    }

    fn word_element(&self, w: &Word) -> NCElement {
        let mut raw = crate::ncalg::RawElement::new();
        raw_add_term(&mut raw, w.clone(), crate::rat_int(1));
        NCElement::from_raw(&self.pres, raw)
    }

    /// The Hochschild differential of the normalized complex.
    pub fn hochschild_b(&self) -> Chain {
        assert!(self.degree > 0, "b is zero in degree 0");
        let n = self.degree;
        let mut out = Chain::zero(&self.pres, n - 1);
        for (t, c) in &self.terms {
            for i in 0..n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let merged = self.word_element(&t[i]).mul(&self.word_element(&t[i + 1]));
                let mut slots: Vec<NCElement> =
                    t[..i].iter().map(|w| self.word_element(w)).collect();
                slots.push(merged);
                slots.extend(t[i + 2..].iter().map(|w| self.word_element(w)));
                out.push_term_normalized(slots, c * crate::rat_int(sign));
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let merged = self.word_element(&t[n]).mul(&self.word_element(&t[0]));
            let mut slots = vec![merged];
            slots.extend(t[1..n].iter().map(|w| self.word_element(w)));
            out.push_term_normalized(slots, c * crate::rat_int(sign));
        }
        out
    }

    /// The Connes operator `B` on the normalized complex:
    /// `B(x0 ⊗ ... ⊗ xn) = Σ_i (-1)^{ni} 1 ⊗ x_i ⊗ ... ⊗ x_{i-1}` with the
    /// inserted unit localized to the idempotent at `tgt(x_i)`.
    pub fn connes_b(&self) -> Chain {
        self.connes_b_signed(false)
    }

    /// Sign-sabotaged Connes operator, exposed as a negative control: a
    /// correct test harness must reject identities computed with it.
    pub fn connes_b_flipped(&self) -> Chain {
        self.connes_b_signed(true)
    }

    fn connes_b_signed(&self, flipped: bool) -> Chain {
        let n = self.degree;
        let mut out = Chain::zero(&self.pres, n + 1);
        for (t, c) in &self.terms {
            for i in 0..=n {
                let exponent = if flipped { (n + 1) * i } else { n * i };
                let sign = if exponent % 2 == 0 { 1 } else { -1 };
                let unit = Word::idempotent(self.pres.word_tgt(&t[i]));
                let mut rotated = vec![unit];
                rotated.extend_from_slice(&t[i..]);
                rotated.extend_from_slice(&t[..i]);
                out.push_term(rotated, c * crate::rat_int(sign));
            }
        }
        out
    }

    /// Hochschild differential on the *unnormalized* complex, exposed as a
    /// negative control: it keeps interior idempotent terms that the
    /// normalized identities rely on dropping.
    pub fn hochschild_b_unnormalized(&self) -> UnnormalizedChain {
        assert!(self.degree > 0);
        let n = self.degree;
        let mut terms: BTreeMap<Tensor, Rat> = BTreeMap::new();
        let mut add = |t: Tensor, c: Rat| {
            if c.is_zero() {
                return;
            }
            use std::collections::btree_map::Entry;
            match terms.entry(t) {
                Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        };
        for (t, c) in &self.terms {
            for i in 0..n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let merged = self.word_element(&t[i]).mul(&self.word_element(&t[i + 1]));
                for (w, wc) in &merged.terms {
                    let mut t2: Tensor = t[..i].to_vec();
                    t2.push(w.clone());
                    t2.extend_from_slice(&t[i + 2..]);
                    add(t2, c * wc * crate::rat_int(sign));
                }
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let merged = self.word_element(&t[n]).mul(&self.word_element(&t[0]));
            for (w, wc) in &merged.terms {
                let mut t2 = vec![w.clone()];
                t2.extend_from_slice(&t[1..n]);
                add(t2, c * wc * crate::rat_int(sign));
            }
        }
        UnnormalizedChain {
            degree: n - 1,
            terms,
        }
    }

    /// Pushforward along an algebra morphism, slot by slot.
    pub fn push(&self, f: &AlgebraMorphism) -> Result<Chain, AlgError> {
        if f.src.name != self.pres.name {
            return Err(AlgError::PresentationMismatch(
                self.pres.name.clone(),
                f.src.name.clone(),
            ));
        }
        let mut out = Chain::zero(&f.tgt, self.degree);
        for (t, c) in &self.terms {
            let slots: Vec<NCElement> = t.iter().map(|w| f.apply_word(w).normal_form()).collect();
            out.push_term_normalized(slots, c.clone());
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        use num::{One, Signed};
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(
                &t.iter()
                    .map(|w| self.pres.word_name(w))
                    .collect::<Vec<_>>()
                    .join(" (x) "),
            );
        }
        out
    }
}

/// Result type of the unnormalized negative-control differential; kept
/// separate so it cannot silently mix with normalized chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnnormalizedChain {
    pub degree: usize,
    pub terms: BTreeMap<Tensor, Rat>,
}

impl UnnormalizedChain {
    /// Compares against a normalized chain term-for-term.
    pub fn matches_normalized(&self, c: &Chain) -> bool {
        self.degree == c.degree && self.terms == c.terms
    }
}

/// A chain in the mixed `(b + uB)` complex: component `k` sits at `u^k` and
/// has homological degree `base_degree + 2k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedChain {
    pub base_degree: usize,
    pub components: Vec<Chain>,
}

impl MixedChain {
    pub fn new(base_degree: usize, components: Vec<Chain>) -> Self {
        for (k, c) in components.iter().enumerate() {
            assert_eq!(c.degree, base_degree + 2 * k, "mixed component degree");
        }
        MixedChain {
            base_degree,
            components,
        }
    }

    /// Applies `b + uB` through the truncation order. The component at
    /// `u^k` of the result is `b(c_k) - B(c_{k-1})`; the overflow term
    /// `B(c_N)` at `u^{N+1}` is returned separately as the remainder.
    pub fn mixed_differential(&self) -> (MixedChain, Chain) {
        let n = self.components.len();
        assert!(n > 0 && self.base_degree > 0);
        let mut comps = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.components[k].hochschild_b();
            if k > 0 {
                c = c.sub(&self.components[k - 1].connes_b());
            }
            comps.push(c);
        }
        let remainder = self.components[n - 1].connes_b();
        (MixedChain::new(self.base_degree - 1, comps), remainder)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Chain::is_zero)
    }
}

/// Random cyclically composable chain for property tests: each slot is a
/// random word extending the vertex constraints of its neighbors.
pub fn random_chain(
    pres: &Arc<Presentation>,
    rng: &mut impl rand::Rng,
    degree: usize,
    max_len: usize,
    max_terms: usize,
) -> Chain {
    use rand::seq::SliceRandom;
    let mut out = Chain::zero(pres, degree);
    let nterms = rng.gen_range(1..=max_terms);
    'term: for _ in 0..nterms {
        // build words right to left so each slot's target matches the
        // previous slot's source; retry when the cyclic closure fails
        for _attempt in 0..50 {
            let mut slots: Vec<Word> = Vec::with_capacity(degree + 1);
            let mut need_tgt: Option<usize> = None;
            for slot in 0..=degree {
                let len = if slot == 0 {
                    rng.gen_range(0..=max_len)
                } else {
                    rng.gen_range(1..=max_len)
                };
                let mut gens: Vec<usize> = Vec::new();
                for _ in 0..len {
                    let candidates: Vec<usize> = (0..pres.gens.len())
                        .filter(|&g| match gens.first() {
                            Some(&h) => pres.gens[g].src == pres.gens[h].tgt,
                            None => match need_tgt {
                                Some(v) => pres.gens[g].tgt == v,
                                None => true,
                            },
                        })
                        .collect();
                    match candidates.choose(rng) {
                        Some(&g) => gens.insert(0, g),
                        None => continue,
                    }
                }
                if slot > 0 && gens.is_empty() {
                    continue;
                }
                let base = match (gens.last(), need_tgt) {
                    (Some(&g), _) => pres.gens[g].src,
                    (None, Some(v)) => v,
                    (None, None) => rng.gen_range(0..pres.vertices.len()),
                };
                let w = pres.make_word(gens, base).unwrap();
                need_tgt = Some(pres.word_src(&w));
                slots.push(w);
            }
            if cyclically_composable(pres, &slots) {
                let c = crate::rat_int(rng.gen_range(-3i64..=3));
                let elements: Vec<NCElement> = slots
                    .iter()
                    .map(|w| out.word_element(w).normal_form())
                    .collect();
                out.push_term_normalized(elements, c);
                continue 'term;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::builtins;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xs(pres: &Arc<Presentation>) -> (NCElement, NCElement) {
        (
            NCElement::gen(pres, "x").unwrap(),
            NCElement::gen(pres, "xinv").unwrap(),
        )
    }

    #[test]
    fn b_squares_to_zero() {
        let p = builtins::a2_loc();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let c = random_chain(&p, &mut rng, 3, 3, 4);
            assert!(c.hochschild_b().hochschild_b().is_zero());
        }
    }

    #[test]
    fn connes_b_squares_to_zero() {
        let p = builtins::laurent("x");
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..25 {
            let c = random_chain(&p, &mut rng, 2, 3, 4);
            assert!(c.connes_b().connes_b().is_zero());
        }
    }

    #[test]
    fn b_and_connes_b_anticommute() {
        let p = builtins::laurent("x");
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            let c = random_chain(&p, &mut rng, 2, 3, 4);
            let lhs = c.connes_b().hochschild_b();
            let rhs = c.hochschild_b().connes_b();
            assert!(lhs.add(&rhs).is_zero());
        }
    }

    #[test]
    fn b_of_inverse_pair_tensor() {
        // b(x^{-1} (x) x) = x^{-1}x - x x^{-1} = 0 in k[x^{±1}], while the
        // two merge orders both land in slot 0, so the terms cancel exactly
        let p = builtins::laurent("x");
        let (x, xinv) = xs(&p);
        let c = Chain::from_tensors(&p, 1, &[(crate::rat_int(1), vec![xinv, x])]).unwrap();
        assert!(c.hochschild_b().is_zero());
    }

    #[test]
    fn connes_b_on_alpha_tilde_1() {
        let p = builtins::laurent("x");
        let (x, xinv) = xs(&p);
        let a1 = Chain::from_tensors(
            &p,
            1,
            &[
                (crate::rat_int(1), vec![xinv.clone(), x.clone()]),
                (crate::rat_int(-1), vec![x.clone(), xinv.clone()]),
            ],
        )
        .unwrap();
        let one = NCElement::unit(&p);
        let expected = Chain::from_tensors(
            &p,
            2,
            &[
                (crate::rat_int(2), vec![one.clone(), xinv.clone(), x.clone()]),
                (crate::rat_int(-2), vec![one, x, xinv]),
            ],
        )
        .unwrap();
        assert!(a1.connes_b().equals(&expected).unwrap());
        assert!(!a1.connes_b_flipped().equals(&expected).unwrap());
    }

    #[test]
    fn unnormalized_b_keeps_interior_units() {
        // b(x^{-1} (x) x (x) x^{-1}) has an interior x x^{-1} = 1 term that
        // the normalized complex drops
        let p = builtins::laurent("x");
        let (x, xinv) = xs(&p);
        let c = Chain::from_tensors(
            &p,
            2,
            &[(crate::rat_int(1), vec![xinv.clone(), x.clone(), xinv])],
        )
        .unwrap();
        let normalized = c.hochschild_b();
        let unnormalized = c.hochschild_b_unnormalized();
        assert!(!unnormalized.matches_normalized(&normalized));
    }

    #[test]
    fn mixed_differential_shapes() {
        let p = builtins::laurent("x");
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let c1 = random_chain(&p, &mut rng, 1, 2, 3);
        let c3 = random_chain(&p, &mut rng, 3, 2, 3);
        let mc = MixedChain::new(1, vec![c1.clone(), c3.clone()]);
        let (d, rem) = mc.mixed_differential();
        assert_eq!(d.base_degree, 0);
        assert_eq!(d.components.len(), 2);
        assert_eq!(rem.degree, 4);
        assert!(d.components[0].equals(&c1.hochschild_b()).unwrap());
        assert!(d.components[1]
            .equals(&c3.hochschild_b().sub(&c1.connes_b()))
            .unwrap());
        assert!(rem.equals(&c3.connes_b()).unwrap());
    }

    #[test]
    fn push_commutes_with_b() {
        let p = builtins::laurent("x");
        let f = builtins::rescale_q(&p, "x", &crate::rat(3, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let c = random_chain(&p, &mut rng, 2, 3, 3);
            let lhs = c.hochschild_b().push(&f).unwrap();
            let rhs = c.push(&f).unwrap().hochschild_b();
            assert!(lhs.equals(&rhs).unwrap());
        }
    }
}
