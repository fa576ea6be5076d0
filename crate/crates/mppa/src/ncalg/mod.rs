//! Exact-rational noncommutative algebra over the idempotent base ring
//! `R = ⊕_v k e_v`: composable words, linear combinations, rewriting to
//! normal form, algebra morphisms and well-definedness checks.
//!
//! Composition convention: a word `g1*g2*...*gn` denotes the composite path
//! with `gn` acting first, so `src(w) = s(gn)` and `tgt(w) = t(g1)`. This is
//! the convention under which `a1 = e1 + e*e` is a loop at the source vertex
//! of `e` and the localization identities of `a2loc` hold verbatim.

pub mod builtins;
pub mod expr;
pub mod rewrite;

use crate::Rat;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown macro `{0}`")]
    UnknownMacro(String),
    #[error("non-composable word at `{0}`")]
    NonComposable(String),
    #[error("presentation mismatch: `{0}` vs `{1}`")]
    PresentationMismatch(String, String),
    #[error("rewrite budget exceeded")]
    BudgetExceeded,
    #[error("rule sides disagree in type: {0}")]
    BadRule(String),
    #[error("equality is not decidable: rule set not certified confluent")]
    NotCertified,
    #[error("morphism violates rule: {0}")]
    ViolatedRule(String),
    #[error("{0}")]
    Other(String),
}

/// How the matrix oracle evaluates a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalHint {
    /// Sample a random matrix.
    Free,
    /// Evaluate this element instead.
    Element(RawElement),
    /// The exact matrix inverse of this element's evaluation.
    Inverse(RawElement),
}

#[derive(Debug, Clone)]
pub struct GenInfo {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub hint: EvalHint,
}

/// Monomial pattern -> element rewrite rule.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: Vec<usize>,
    pub rhs: RawElement,
}

/// A word of generator indices in display order; the rightmost acts first.
/// `base` is the source vertex (meaningful on its own only for the empty
/// word, which denotes the idempotent `e_base`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub base: usize,
    pub gens: Vec<usize>,
}

impl Word {
    pub fn idempotent(v: usize) -> Self {
        Word { base: v, gens: vec![] }
    }

    pub fn is_idempotent(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Presentation-free linear combination of words.
pub type RawElement = BTreeMap<Word, Rat>;

pub fn raw_add_term(raw: &mut RawElement, w: Word, c: Rat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match raw.entry(w) {
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

/// A finitely presented algebra over `R = ⊕_v k e_v`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub vertices: Vec<String>,
    pub gens: Vec<GenInfo>,
    pub rules: Vec<Rule>,
    pub macros: BTreeMap<String, RawElement>,
    /// `inverses[x]` names the generator or macro that is the inverse of x.
    pub inverses: BTreeMap<String, String>,
    /// Set when the rule set has been certified confluent (joinable critical
    /// pairs under a terminating order); `equals` is exact only then.
    pub certified_confluent: bool,
}

impl Presentation {
    pub fn vertex_index(&self, name: &str) -> Result<usize, AlgError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgError::UnknownVertex(name.to_string()))
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, AlgError> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| AlgError::UnknownGenerator(name.to_string()))
    }

    pub fn word_src(&self, w: &Word) -> usize {
        w.base
    }

    pub fn word_tgt(&self, w: &Word) -> usize {
        match w.gens.first() {
            Some(&g) => self.gens[g].tgt,
            None => w.base,
        }
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.gens.iter().map(|&g| self.gens[g].degree).sum()
    }

    /// Checks internal composability and returns the word, or None.
    pub fn make_word(&self, gens: Vec<usize>, base_if_empty: usize) -> Option<Word> {
        if gens.is_empty() {
            return Some(Word::idempotent(base_if_empty));
        }
        for pair in gens.windows(2) {
            if self.gens[pair[0]].src != self.gens[pair[1]].tgt {
                return None;
            }
        }
        let base = self.gens[*gens.last().unwrap()].src;
        Some(Word { base, gens })
    }

    /// Concatenation `w1 ∘ w2` (w2 acts first); None if non-composable.
    pub fn mul_word(&self, w1: &Word, w2: &Word) -> Option<Word> {
        if self.word_src(w1) != self.word_tgt(w2) {
            return None;
        }
        let mut gens = w1.gens.clone();
        gens.extend_from_slice(&w2.gens);
        Some(Word { base: w2.base, gens })
    }

    pub fn word_name(&self, w: &Word) -> String {
        if w.is_idempotent() {
            format!("id({})", self.vertices[w.base])
        } else {
            w.gens
                .iter()
                .map(|&g| self.gens[g].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Builder for presentations; validates rule and macro invariants on `build`.
pub struct PresentationBuilder {
    pres: Presentation,
}

impl PresentationBuilder {
    pub fn new(name: &str, vertices: &[&str]) -> Self {
        PresentationBuilder {
            pres: Presentation {
                name: name.to_string(),
                vertices: vertices.iter().map(|s| s.to_string()).collect(),
                gens: vec![],
                rules: vec![],
                macros: BTreeMap::new(),
                inverses: BTreeMap::new(),
                certified_confluent: false,
            },
        }
    }

    pub fn gen(&mut self, name: &str, src: &str, tgt: &str) -> usize {
        self.gen_full(name, src, tgt, 0, EvalHint::Free)
    }

    pub fn gen_full(&mut self, name: &str, src: &str, tgt: &str, degree: i64, hint: EvalHint) -> usize {
        let src = self.pres.vertex_index(src).expect("builder vertex");
        let tgt = self.pres.vertex_index(tgt).expect("builder vertex");
        self.pres.gens.push(GenInfo {
            name: name.to_string(),
            src,
            tgt,
            degree,
            hint,
        });
        self.pres.gens.len() - 1
    }

    pub fn word(&self, names: &[&str]) -> Word {
        let gens: Vec<usize> = names
            .iter()
            .map(|n| self.pres.gen_index(n).expect("builder generator"))
            .collect();
        self.pres
            .make_word(gens, 0)
            .expect("builder word composable")
    }

    pub fn raw(&self, terms: &[(i64, &[&str])]) -> RawElement {
        let mut out = RawElement::new();
        for (c, names) in terms {
            raw_add_term(&mut out, self.word(names), crate::rat_int(*c));
        }
        out
    }

    pub fn raw_with_idem(&self, v: &str, coeff: i64) -> RawElement {
        let vi = self.pres.vertex_index(v).expect("builder vertex");
        let mut out = RawElement::new();
        raw_add_term(&mut out, Word::idempotent(vi), crate::rat_int(coeff));
        out
    }

    pub fn rule(&mut self, lhs: &[&str], rhs: RawElement) {
        let lhs_word = self.word(lhs);
        assert!(!lhs_word.is_idempotent(), "rule pattern must be non-trivial");
        self.pres.rules.push(Rule {
            lhs: lhs_word.gens,
            rhs,
        });
    }

    pub fn macro_(&mut self, name: &str, value: RawElement) {
        self.pres.macros.insert(name.to_string(), value);
    }

    pub fn inverse_pair(&mut self, a: &str, b: &str) {
        self.pres.inverses.insert(a.to_string(), b.to_string());
        self.pres.inverses.insert(b.to_string(), a.to_string());
    }

    pub fn certified(&mut self) {
        self.pres.certified_confluent = true;
    }

    pub fn build(self) -> Arc<Presentation> {
        let p = &self.pres;
        for rule in &p.rules {
            let lhs = p
                .make_word(rule.lhs.clone(), 0)
                .expect("rule lhs composable");
            let (s, t, d) = (p.word_src(&lhs), p.word_tgt(&lhs), p.word_degree(&lhs));
            for w in rule.rhs.keys() {
                assert_eq!(
                    (p.word_src(w), p.word_tgt(w), p.word_degree(w)),
                    (s, t, d),
                    "rule sides must share source, target and degree"
                );
            }
        }
        Arc::new(self.pres)
    }
}

/// Element of a presented algebra: exact-rational combination of words.
/// Elements may be block sums over (source, target) pairs.
#[derive(Debug, Clone)]
pub struct NCElement {
    pub pres: Arc<Presentation>,
    pub terms: RawElement,
}

impl PartialEq for NCElement {
    fn eq(&self, other: &Self) -> bool {
        self.pres.name == other.pres.name && self.terms == other.terms
    }
}

impl Eq for NCElement {}

impl NCElement {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        NCElement {
            pres: pres.clone(),
            terms: RawElement::new(),
        }
    }

    pub fn from_raw(pres: &Arc<Presentation>, terms: RawElement) -> Self {
        NCElement {
            pres: pres.clone(),
            terms,
        }
    }

    pub fn idempotent(pres: &Arc<Presentation>, v: &str) -> Result<Self, AlgError> {
        let vi = pres.vertex_index(v)?;
        let mut terms = RawElement::new();
        raw_add_term(&mut terms, Word::idempotent(vi), Rat::one());
        Ok(NCElement::from_raw(pres, terms))
    }

    /// The scalar `1 = Σ_v e_v`.
    pub fn unit(pres: &Arc<Presentation>) -> Self {
        let mut terms = RawElement::new();
        for v in 0..pres.vertices.len() {
            raw_add_term(&mut terms, Word::idempotent(v), Rat::one());
        }
        NCElement::from_raw(pres, terms)
    }

    pub fn scalar(pres: &Arc<Presentation>, c: Rat) -> Self {
        Self::unit(pres).scale(&c)
    }

    pub fn gen(pres: &Arc<Presentation>, name: &str) -> Result<Self, AlgError> {
        let gi = pres.gen_index(name)?;
        let w = pres.make_word(vec![gi], 0).unwrap();
        let mut terms = RawElement::new();
        raw_add_term(&mut terms, w, Rat::one());
        Ok(NCElement::from_raw(pres, terms))
    }

    pub fn word(pres: &Arc<Presentation>, names: &[&str]) -> Result<Self, AlgError> {
        let gens: Vec<usize> = names
            .iter()
            .map(|n| pres.gen_index(n))
            .collect::<Result<_, _>>()?;
        let w = pres
            .make_word(gens, 0)
            .ok_or_else(|| AlgError::NonComposable(names.join("*")))?;
        let mut terms = RawElement::new();
        raw_add_term(&mut terms, w, Rat::one());
        Ok(NCElement::from_raw(pres, terms))
    }

    pub fn macro_(pres: &Arc<Presentation>, name: &str) -> Result<Self, AlgError> {
        let raw = pres
            .macros
            .get(name)
            .ok_or_else(|| AlgError::UnknownMacro(name.to_string()))?;
        Ok(NCElement::from_raw(pres, raw.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgError> {
        if !Arc::ptr_eq(&self.pres, &other.pres) && self.pres.name != other.pres.name {
            return Err(AlgError::PresentationMismatch(
                self.pres.name.clone(),
                other.pres.name.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other).expect("presentation mismatch");
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            raw_add_term(&mut terms, w.clone(), c.clone());
        }
        NCElement::from_raw(&self.pres, terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return NCElement::zero(&self.pres);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, v)| (w.clone(), v * c))
            .collect();
        NCElement::from_raw(&self.pres, terms)
    }

    /// Bilinear product; non-composable word pairs vanish. Normal-formed.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other).expect("presentation mismatch");
        let mut terms = RawElement::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some(w) = self.pres.mul_word(w1, w2) {
                    raw_add_term(&mut terms, w, c1 * c2);
                }
            }
        }
        NCElement::from_raw(&self.pres, terms).normal_form()
    }

    pub fn normal_form(&self) -> Self {
        self.normal_form_budget(rewrite::DEFAULT_BUDGET)
            .expect("rewrite budget exceeded")
    }

    pub fn normal_form_budget(&self, budget: u64) -> Result<Self, AlgError> {
        let terms = rewrite::normal_form_raw(&self.pres, &self.terms, budget)?;
        Ok(NCElement::from_raw(&self.pres, terms))
    }

    /// Exact equality through rewriting; `Err(NotCertified)` when the rule
    /// set is not certified confluent (callers may then fall back to the
    /// matrix oracle in [`crate::repvar`]).
    pub fn equals(&self, other: &Self) -> Result<bool, AlgError> {
        self.check_same(other)?;
        if !self.pres.certified_confluent {
            return Err(AlgError::NotCertified);
        }
        Ok(self.sub(other).normal_form().is_zero())
    }

    /// Canonical printed form: terms in word order, exact coefficients.
    pub fn display(&self) -> String {
        expr::print_element(self)
    }

    /// Splits into homogeneous (source, target) blocks.
    pub fn blocks(&self) -> BTreeMap<(usize, usize), RawElement> {
        let mut out: BTreeMap<(usize, usize), RawElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            let key = (self.pres.word_src(w), self.pres.word_tgt(w));
            raw_add_term(out.entry(key).or_default(), w.clone(), c.clone());
        }
        out
    }
}

/// A degree-0 algebra morphism given by generator images over a vertex map.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub name: String,
    pub src: Arc<Presentation>,
    pub tgt: Arc<Presentation>,
    pub vmap: Vec<usize>,
    pub images: Vec<RawElement>,
}

impl AlgebraMorphism {
    pub fn new(
        name: &str,
        src: &Arc<Presentation>,
        tgt: &Arc<Presentation>,
        vmap: &[(&str, &str)],
        images: &[(&str, NCElement)],
    ) -> Result<Self, AlgError> {
        let mut vm = vec![usize::MAX; src.vertices.len()];
        for (a, b) in vmap {
            vm[src.vertex_index(a)?] = tgt.vertex_index(b)?;
        }
        if vm.iter().any(|&v| v == usize::MAX) {
            return Err(AlgError::Other("vertex map incomplete".into()));
        }
        let mut ims: Vec<Option<RawElement>> = vec![None; src.gens.len()];
        for (g, e) in images {
            ims[src.gen_index(g)?] = Some(e.terms.clone());
        }
        let images: Vec<RawElement> = ims
            .into_iter()
            .enumerate()
            .map(|(i, im)| {
                im.ok_or_else(|| AlgError::Other(format!("no image for `{}`", src.gens[i].name)))
            })
            .collect::<Result<_, _>>()?;
        let m = AlgebraMorphism {
            name: name.to_string(),
            src: src.clone(),
            tgt: tgt.clone(),
            vmap: vm,
            images,
        };
        m.check_types()?;
        Ok(m)
    }

    fn check_types(&self) -> Result<(), AlgError> {
        for (i, g) in self.src.gens.iter().enumerate() {
            let im = NCElement::from_raw(&self.tgt, self.images[i].clone());
            for w in im.terms.keys() {
                if self.tgt.word_src(w) != self.vmap[g.src]
                    || self.tgt.word_tgt(w) != self.vmap[g.tgt]
                    || self.tgt.word_degree(w) != g.degree
                {
                    return Err(AlgError::Other(format!(
                        "image of `{}` has wrong type",
                        g.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply_word(&self, w: &Word) -> NCElement {
        if w.is_idempotent() {
            let v = self.tgt.vertices[self.vmap[w.base]].clone();
            return NCElement::idempotent(&self.tgt, &v).unwrap();
        }
        let mut acc: Option<NCElement> = None;
        for &g in &w.gens {
            let im = NCElement::from_raw(&self.tgt, self.images[g].clone());
            acc = Some(match acc {
                None => im,
                Some(a) => a.mul(&im),
            });
        }
        acc.unwrap()
    }

    pub fn apply(&self, e: &NCElement) -> NCElement {
        let mut out = NCElement::zero(&self.tgt);
        for (w, c) in &e.terms {
            out = out.add(&self.apply_word(w).scale(c));
        }
        out.normal_form()
    }

    /// Well-definedness: each source rule maps to zero in the target.
    pub fn check(&self) -> Result<(), AlgError> {
        for rule in &self.src.rules {
            let lhs_word = self.src.make_word(rule.lhs.clone(), 0).unwrap();
            let lhs = self.apply_word(&lhs_word);
            let rhs = self.apply(&NCElement::from_raw(&self.src, rule.rhs.clone()));
            if !lhs.sub(&rhs).normal_form().is_zero() {
                return Err(AlgError::ViolatedRule(format!(
                    "{} -> {}",
                    self.src.word_name(&lhs_word),
                    NCElement::from_raw(&self.src, rule.rhs.clone()).display()
                )));
            }
        }
        Ok(())
    }
}

/// Random composable words, for property tests and the oracle soundness check.
pub fn random_element(
    pres: &Arc<Presentation>,
    rng: &mut impl rand::Rng,
    max_terms: usize,
    max_len: usize,
) -> NCElement {
    use rand::seq::SliceRandom;
    let nterms = rng.gen_range(1..=max_terms);
    let mut terms = RawElement::new();
    for _ in 0..nterms {
        let len = rng.gen_range(0..=max_len);
        let mut gens: Vec<usize> = Vec::new();
        // walk backwards: choose last generator freely, then extend at front
        for _ in 0..len {
            let candidates: Vec<usize> = (0..pres.gens.len())
                .filter(|&g| match gens.first() {
                    Some(&h) => pres.gens[g].src == pres.gens[h].tgt,
                    None => true,
                })
                .collect();
            match candidates.choose(rng) {
                Some(&g) => gens.insert(0, g),
                None => break,
            }
        }
        let base = if gens.is_empty() {
            rng.gen_range(0..pres.vertices.len())
        } else {
            pres.gens[*gens.last().unwrap()].src
        };
        let w = pres.make_word(gens, base).unwrap();
        let c = crate::rat_int(rng.gen_range(-3i64..=3));
        raw_add_term(&mut terms, w, c);
    }
    NCElement::from_raw(pres, terms)
}

#[cfg(test)]
mod tests {
    use super::builtins;
    use super::*;

    #[test]
    fn idempotent_composition() {
        let p = builtins::a2_loc();
        let e = NCElement::gen(&p, "e").unwrap();
        let e1 = NCElement::idempotent(&p, "1").unwrap();
        let e2 = NCElement::idempotent(&p, "2").unwrap();
        // e: 1 -> 2, rightmost factor acts first
        assert_eq!(e.mul(&e1), e);
        assert_eq!(e2.mul(&e), e);
        assert!(e1.mul(&e).is_zero());
        assert!(e.mul(&e2).is_zero());
    }

    #[test]
    fn laurent_product() {
        let p = builtins::laurent("x");
        let x = NCElement::gen(&p, "x").unwrap();
        let xinv = NCElement::gen(&p, "xinv").unwrap();
        let sum = x.add(&xinv);
        let prod = sum.mul(&x);
        let expected = x.mul(&x).add(&NCElement::unit(&p));
        assert_eq!(prod, expected);
    }

    #[test]
    fn free_product_no_rule() {
        let p = builtins::a2_loc();
        let e = NCElement::gen(&p, "e").unwrap();
        let estar = NCElement::gen(&p, "estar").unwrap();
        let prod = e.mul(&estar); // loop at 2
        assert_eq!(prod.display(), "e*estar");
    }

    #[test]
    fn mismatched_presentations_error() {
        let p = builtins::laurent("x");
        let q = builtins::a2_loc();
        let a = NCElement::gen(&p, "x").unwrap();
        let b = NCElement::gen(&q, "e").unwrap();
        assert!(a.check_same(&b).is_err());
    }
}
