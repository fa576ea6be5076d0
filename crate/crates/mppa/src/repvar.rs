//! Randomized exact matrix-representation oracle.
//!
//! A representation assigns each vertex a dimension and each generator an
//! exact rational matrix of shape `dims(tgt) × dims(src)`; a word evaluates
//! to the product of its generator matrices in display order. Generators
//! carrying an [`EvalHint::Inverse`] hint are evaluated as exact matrix
//! inverses, so every localization rule holds in every sampled
//! representation and evaluation is an algebra map: an element that is zero
//! in the algebra evaluates to zero in every representation. The oracle is
//! therefore sound for refutation and, across independent random samples,
//! gives strong evidence for equality — independent of the rewriting engine.

use crate::matrix::{MatrixError, QMatrix};
use crate::ncalg::{AlgError, EvalHint, NCElement, Presentation, RawElement, Word};
use crate::Rat;
use num::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("could not sample an invertible value for `{0}` after {1} attempts")]
    SamplingFailed(String, usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// An exact matrix representation of a presented algebra.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub pres: Arc<Presentation>,
    pub dims: Vec<usize>,
    pub mats: Vec<QMatrix>,
}

fn random_entry(rng: &mut impl Rng) -> Rat {
    crate::rat_int(rng.gen_range(-3i64..=3))
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| random_entry(rng))
}

const MAX_RESAMPLES: usize = 100;

impl MatrixRep {
    /// Samples a representation with the given vertex dimensions. Entries
    /// are uniform on `{-3, ..., 3}`; hinted generators are computed from
    /// earlier ones, resampling (up to 100 times) when an inverse hint hits
    /// a singular value.
    pub fn random(
        pres: &Arc<Presentation>,
        dims: Vec<usize>,
        rng: &mut impl Rng,
    ) -> Result<Self, RepError> {
        assert_eq!(dims.len(), pres.vertices.len());
        let mut last_failure = String::new();
        for _attempt in 0..MAX_RESAMPLES {
            match Self::try_sample(pres, &dims, rng) {
                Ok(rep) => return Ok(rep),
                Err(RepError::SamplingFailed(name, _)) => last_failure = name,
                Err(e) => return Err(e),
            }
        }
        Err(RepError::SamplingFailed(last_failure, MAX_RESAMPLES))
    }

    fn try_sample(
        pres: &Arc<Presentation>,
        dims: &[usize],
        rng: &mut impl Rng,
    ) -> Result<Self, RepError> {
        let mut rep = MatrixRep {
            pres: pres.clone(),
            dims: dims.to_vec(),
            mats: Vec::with_capacity(pres.gens.len()),
        };
        for g in &pres.gens {
            let rows = rep.dims[g.tgt];
            let cols = rep.dims[g.src];
            // hinted elements only involve earlier generators
            let m = match &g.hint {
                EvalHint::Free => random_matrix(rng, rows, cols),
                EvalHint::Element(raw) => rep.eval_raw_block(raw)?,
                EvalHint::Inverse(raw) => match rep.eval_raw_block(raw)?.invert() {
                    Ok((inv, _)) => inv,
                    Err(MatrixError::Singular) => {
                        return Err(RepError::SamplingFailed(g.name.clone(), 1))
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            debug_assert_eq!((m.rows, m.cols), (rows, cols));
            rep.mats.push(m);
        }
        Ok(rep)
    }

    /// Deterministic sampling from a seed; equal seeds give equal reps.
    pub fn random_seeded(
        pres: &Arc<Presentation>,
        dims: Vec<usize>,
        seed: u64,
    ) -> Result<Self, RepError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        MatrixRep::random(pres, dims, &mut rng)
    }

    /// Evaluates a word: product of generator matrices in display order;
    /// the empty word at `v` is the identity of size `dims[v]`.
    pub fn eval_word(&self, w: &Word) -> Result<QMatrix, RepError> {
        if w.is_idempotent() {
            return Ok(QMatrix::identity(self.dims[w.base]));
        }
        let mut acc: Option<QMatrix> = None;
        for &g in &w.gens {
            let m = &self.mats[g];
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.mul(m)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Evaluates a raw combination whose words all share one (src, tgt).
    fn eval_raw_block(&self, raw: &RawElement) -> Result<QMatrix, RepError> {
        let mut acc: Option<QMatrix> = None;
        for (w, c) in raw {
            let m = self.eval_word(w)?.scale(c);
            acc = Some(match acc {
                None => m,
                Some(a) => a.add(&m)?,
            });
        }
        acc.ok_or_else(|| AlgError::Other("empty hint element".into()).into())
    }

    /// Evaluates an element blockwise; missing blocks are zero.
    pub fn evaluate(
        &self,
        e: &NCElement,
    ) -> Result<BTreeMap<(usize, usize), QMatrix>, RepError> {
        let mut out: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        for (w, c) in &e.terms {
            let key = (self.pres.word_src(w), self.pres.word_tgt(w));
            let m = self.eval_word(w)?.scale(c);
            use std::collections::btree_map::Entry;
            match out.entry(key) {
                Entry::Occupied(mut o) => {
                    let sum = o.get().add(&m)?;
                    *o.get_mut() = sum;
                }
                Entry::Vacant(v) => {
                    v.insert(m);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, e: &NCElement) -> Result<bool, RepError> {
        Ok(self.evaluate(e)?.values().all(QMatrix::is_zero))
    }
}

/// Dimension vector used for the i-th oracle repetition: all vertices get
/// dimension `(i mod 3) + 1`, cycling through 1, 2, 3.
pub fn cycling_dims(pres: &Presentation, i: usize) -> Vec<usize> {
    vec![(i % 3) + 1; pres.vertices.len()]
}

/// Tests `a = b` in `n_reps` independent representations derived from
/// `seed`. Returns `Ok(false)` on the first refuting representation.
pub fn oracle_equals(
    a: &NCElement,
    b: &NCElement,
    seed: u64,
    n_reps: usize,
) -> Result<bool, RepError> {
    let d = a.sub(b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n_reps {
        let rep = MatrixRep::random(&a.pres, cycling_dims(&a.pres, i), &mut rng)?;
        if !rep.is_zero(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Trace probe of a Hochschild chain: for each tensor term, contracts
/// `tr(M(w0) R1 M(w1) R2 ... Rn M(wn))` where the junction matrices `R_i`
/// are random squares shared across terms by (slot, junction vertex). The
/// probe is linear in the chain, so a zero chain always probes to zero; a
/// nonzero probe refutes a chain identity without trusting the rewriter.
pub fn chain_probe(
    chain: &crate::hochschild::Chain,
    rep: &MatrixRep,
    rng: &mut impl Rng,
) -> Result<Rat, RepError> {
    let mut junctions: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
    let mut total = Rat::zero();
    for (t, c) in &chain.terms {
        let mut acc = rep.eval_word(&t[0])?;
        for (slot, w) in t.iter().enumerate().skip(1) {
            let v = rep.pres.word_tgt(w);
            let r = junctions
                .entry((slot, v))
                .or_insert_with(|| random_matrix(rng, rep.dims[v], rep.dims[v]));
            acc = acc.mul(r)?.mul(&rep.eval_word(w)?)?;
        }
        total += acc.trace()? * c;
    }
    Ok(total)
}

/// Probe with a caller-supplied junction table, so two chains can be
/// contracted against the *same* random junctions and their probe values
/// compared. Missing junctions are filled from `rng` and recorded.
pub fn chain_probe_with(
    chain: &crate::hochschild::Chain,
    rep: &MatrixRep,
    junctions: &mut BTreeMap<(usize, usize), QMatrix>,
    rng: &mut impl Rng,
) -> Result<Rat, RepError> {
    let mut total = Rat::zero();
    for (t, c) in &chain.terms {
        let mut acc = rep.eval_word(&t[0])?;
        for (slot, w) in t.iter().enumerate().skip(1) {
            let v = rep.pres.word_tgt(w);
            let r = junctions
                .entry((slot, v))
                .or_insert_with(|| random_matrix(rng, rep.dims[v], rep.dims[v]));
            acc = acc.mul(r)?.mul(&rep.eval_word(w)?)?;
        }
        total += acc.trace()? * c;
    }
    Ok(total)
}

/// Compares two chains through the probe at `n_reps` representations,
/// sharing junction matrices between the two sides. Unlike probing the
/// formal difference (whose terms may already have cancelled), this
/// re-derives the equality from matrix products alone.
pub fn chain_oracle_agree(
    lhs: &crate::hochschild::Chain,
    rhs: &crate::hochschild::Chain,
    seed: u64,
    n_reps: usize,
) -> Result<bool, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n_reps {
        let rep = MatrixRep::random(&lhs.pres, cycling_dims(&lhs.pres, i), &mut rng)?;
        let mut junctions: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        // pre-fill in a fixed order so neither side's term order matters
        let degree = lhs.degree.max(rhs.degree);
        for slot in 1..=degree {
            for v in 0..rep.dims.len() {
                junctions.insert((slot, v), random_matrix(&mut rng, rep.dims[v], rep.dims[v]));
            }
        }
        let a = chain_probe_with(lhs, &rep, &mut junctions, &mut rng)?;
        let b = chain_probe_with(rhs, &rep, &mut junctions, &mut rng)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Probes a chain for vanishing across `n_reps` representations.
pub fn chain_oracle_is_zero(
    chain: &crate::hochschild::Chain,
    seed: u64,
    n_reps: usize,
) -> Result<bool, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..n_reps {
        let rep = MatrixRep::random(&chain.pres, cycling_dims(&chain.pres, i), &mut rng)?;
        if !chain_probe(chain, &rep, &mut rng)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that an identity both passes the rewriter and survives the oracle;
/// the two verdicts must agree.
pub fn cross_check(a: &NCElement, b: &NCElement, seed: u64, n_reps: usize) -> Result<bool, RepError> {
    let rewrite = a.equals(b)?;
    let oracle = oracle_equals(a, b, seed, n_reps)?;
    if rewrite != oracle {
        return Err(AlgError::Other(format!(
            "rewriter ({rewrite}) and oracle ({oracle}) disagree"
        ))
        .into());
    }
    Ok(rewrite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::Chain;
    use crate::ncalg::{builtins, random_element};

    #[test]
    fn rules_hold_in_random_reps() {
        let p = builtins::a2_loc();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..6 {
            let rep = MatrixRep::random(&p, cycling_dims(&p, i), &mut rng).unwrap();
            for rule in &p.rules {
                let lhs = p.make_word(rule.lhs.clone(), 0).unwrap();
                let l = rep.eval_word(&lhs).unwrap();
                let r = rep
                    .eval_raw_block(&rule.rhs)
                    .unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn oracle_confirms_rewriter_on_random_elements() {
        let p = builtins::a2_loc();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for i in 0..15 {
            let e = random_element(&p, &mut rng, 3, 4);
            let nf = e.normal_form();
            assert!(oracle_equals(&e, &nf, 1000 + i, 6).unwrap());
        }
    }

    #[test]
    fn oracle_refutes_false_identity() {
        let p = builtins::a2_loc();
        let e = NCElement::gen(&p, "e").unwrap();
        let l = NCElement::gen(&p, "l").unwrap();
        let fake = e.mul(&l).scale(&crate::rat_int(2));
        assert!(!oracle_equals(&e.mul(&l), &fake, 5, 6).unwrap());
        assert!(!oracle_equals(&e, &NCElement::zero(&p), 5, 6).unwrap());
    }

    #[test]
    fn seeded_reps_are_deterministic() {
        let p = builtins::a2_loc();
        let r1 = MatrixRep::random_seeded(&p, vec![2, 3], 99).unwrap();
        let r2 = MatrixRep::random_seeded(&p, vec![2, 3], 99).unwrap();
        for (a, b) in r1.mats.iter().zip(&r2.mats) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn chain_probe_vanishes_on_zero_chains() {
        let p = builtins::laurent("x");
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for i in 0..10 {
            let c = crate::hochschild::random_chain(&p, &mut rng, 2, 3, 3);
            // b(b(c)) = 0, so the probe of it must vanish identically
            let z = c.hochschild_b().hochschild_b();
            let rep = MatrixRep::random(&p, cycling_dims(&p, i), &mut rng).unwrap();
            assert!(chain_probe(&z, &rep, &mut rng).unwrap().is_zero());
        }
    }

    #[test]
    fn chain_probe_refutes_nonzero_chain() {
        let p = builtins::laurent("x");
        let x = NCElement::gen(&p, "x").unwrap();
        let xinv = NCElement::gen(&p, "xinv").unwrap();
        let c = Chain::from_tensors(
            &p,
            1,
            &[(crate::rat_int(1), vec![xinv.clone(), x.clone()])],
        )
        .unwrap();
        assert!(!chain_oracle_is_zero(&c, 31, 6).unwrap());
        // while the commutator tensor difference pushes to zero under b
        assert!(chain_oracle_is_zero(&c.hochschild_b(), 31, 6).unwrap());
    }

    #[test]
    fn pushout_hints_fix_y() {
        let q = crate::rat(5, 2);
        let p = builtins::pushout_xy_q(&q);
        let rep = MatrixRep::random_seeded(&p, vec![2], 7).unwrap();
        let y = rep.mats[p.gen_index("y").unwrap()].clone();
        let xinv = rep.mats[p.gen_index("xinv").unwrap()].clone();
        assert_eq!(y, xinv.scale(&q));
    }
}
