//! Explicit Calabi–Yau witness classes and homotopies, and the identity
//! suite that checks each of them twice: exactly (the difference
//! normal-forms to the zero chain or element) and through the randomized
//! matrix oracle, which re-derives every equality from matrix products
//! without trusting the rewriter.

use crate::hochschild::{Chain, MixedChain};
use crate::ncalg::{builtins, raw_add_term, AlgError, NCElement, Presentation, RawElement, Word};
use crate::repvar::{chain_oracle_agree, chain_oracle_is_zero, oracle_equals};
use crate::{rat, rat_int, Rat};
use num::One;
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

/// Number of random representations each identity is cross-validated at.
pub const ORACLE_REPS: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSuiteReport {
    pub suite: String,
    pub entries: Vec<IdentityReport>,
    pub all_passed: bool,
}

impl WitnessSuiteReport {
    fn new(suite: &str, entries: Vec<IdentityReport>) -> Self {
        let all_passed = entries.iter().all(|e| e.passed);
        WitnessSuiteReport {
            suite: suite.to_string(),
            entries,
            all_passed,
        }
    }
}

fn word_elem(pres: &Arc<Presentation>, w: &Word) -> NCElement {
    let mut raw = RawElement::new();
    raw_add_term(&mut raw, w.clone(), rat_int(1));
    NCElement::from_raw(pres, raw)
}

/// `α̃_1(g) = g^{-1} ⊗ g - g ⊗ g^{-1}` for an invertible element `g`.
pub fn alpha1_of(g: &NCElement, ginv: &NCElement) -> Result<Chain, AlgError> {
    Chain::from_tensors(
        &g.pres,
        1,
        &[
            (rat_int(1), vec![ginv.clone(), g.clone()]),
            (rat_int(-1), vec![g.clone(), ginv.clone()]),
        ],
    )
}

fn inverse_of(pres: &Arc<Presentation>, var: &str) -> Result<NCElement, AlgError> {
    let inv = pres
        .inverses
        .get(var)
        .ok_or_else(|| AlgError::Other(format!("`{var}` has no registered inverse")))?;
    NCElement::gen(pres, inv).or_else(|_| NCElement::macro_(pres, inv))
}

/// `α̃_n`, defined by `2 α_n = (x^{-1} ⊗ x)^{⊗n} - (x ⊗ x^{-1})^{⊗n}`;
/// a degree `2n - 1` chain.
pub fn alpha_tilde_n(pres: &Arc<Presentation>, var: &str, n: usize) -> Result<Chain, AlgError> {
    assert!(n > 0);
    let x = NCElement::gen(pres, var)?;
    let xinv = inverse_of(pres, var)?;
    let mut pos = Vec::with_capacity(2 * n);
    let mut neg = Vec::with_capacity(2 * n);
    for _ in 0..n {
        pos.push(xinv.clone());
        pos.push(x.clone());
        neg.push(x.clone());
        neg.push(xinv.clone());
    }
    Chain::from_tensors(
        pres,
        2 * n - 1,
        &[(rat_int(1), pos), (rat_int(-1), neg)],
    )
}

/// Both normalizations of the degree `2n - 1` witness: `(α_n, α̃_n)` with
/// `α_n = ½ α̃_n`.
pub fn alpha_n(
    pres: &Arc<Presentation>,
    var: &str,
    n: usize,
) -> Result<(Chain, Chain), AlgError> {
    let tilde = alpha_tilde_n(pres, var, n)?;
    Ok((tilde.scale(&rat(1, 2)), tilde))
}

/// The negative cyclic witness `α = Σ_k k! u^k α_{k+1}`, truncated at
/// `u^truncation`; `(b - uB)(α) = 0` through the truncation order.
pub fn alpha_mixed(
    pres: &Arc<Presentation>,
    var: &str,
    truncation: usize,
) -> Result<MixedChain, AlgError> {
    let mut components = Vec::with_capacity(truncation + 1);
    let mut factorial = Rat::one();
    for k in 0..=truncation {
        if k > 0 {
            factorial *= rat_int(k as i64);
        }
        let (half, _) = alpha_n(pres, var, k + 1)?;
        components.push(half.scale(&factorial));
    }
    Ok(MixedChain::new(1, components))
}

/// `β_1 = y^{-1} ⊗ x^{-1} ⊗ xy - y ⊗ y^{-1}x^{-1} ⊗ x`, the homotopy
/// between `α̃_1(xy)` and `α̃_1(x) + α̃_1(y)`. Works in any presentation
/// with invertible generators `x` and `y`.
pub fn beta1_cospan(pres: &Arc<Presentation>) -> Result<Chain, AlgError> {
    let x = NCElement::gen(pres, "x")?;
    let xinv = NCElement::gen(pres, "xinv")?;
    let y = NCElement::gen(pres, "y")?;
    let yinv = NCElement::gen(pres, "yinv")?;
    Chain::from_tensors(
        pres,
        2,
        &[
            (rat_int(1), vec![yinv.clone(), xinv.clone(), x.mul(&y)]),
            (rat_int(-1), vec![y, yinv.mul(&xinv), x]),
        ],
    )
}

/// The fusion homotopy on the localized `A_2` algebra:
/// `β_1 = e* ⊗ e ⊗ a_1^{-1} + a_1^{-1} ⊗ e* ⊗ e - e* ⊗ a_2^{-1} ⊗ e
///        - a_2^{-1} ⊗ e ⊗ e* + B(e* ⊗ e a_1^{-1})`.
pub fn beta1_a2(pres: &Arc<Presentation>) -> Result<Chain, AlgError> {
    let e = NCElement::gen(pres, "e")?;
    let estar = NCElement::gen(pres, "estar")?;
    let a1inv = NCElement::gen(pres, "l")?;
    let a2inv = NCElement::macro_(pres, "a2inv")?;
    let four = Chain::from_tensors(
        pres,
        2,
        &[
            (rat_int(1), vec![estar.clone(), e.clone(), a1inv.clone()]),
            (rat_int(1), vec![a1inv.clone(), estar.clone(), e.clone()]),
            (rat_int(-1), vec![estar.clone(), a2inv.clone(), e.clone()]),
            (rat_int(-1), vec![a2inv, e.clone(), estar.clone()]),
        ],
    )?;
    let low = Chain::from_tensors(pres, 1, &[(rat_int(1), vec![estar, e.mul(&a1inv)])])?;
    Ok(four.add(&low.connes_b()))
}

/// `1 ⊗ c` with the inserted unit localized at the right idempotent.
fn one_tensor(c: &Chain) -> Chain {
    let unit = NCElement::unit(&c.pres);
    let tensors: Vec<(Rat, Vec<NCElement>)> = c
        .terms
        .iter()
        .map(|(t, coeff)| {
            let mut slots = vec![unit.clone()];
            slots.extend(t.iter().map(|w| word_elem(&c.pres, w)));
            (coeff.clone(), slots)
        })
        .collect();
    Chain::from_tensors(&c.pres, c.degree + 1, &tensors).expect("slot count")
}

type CheckResult = Result<Option<String>, String>;

fn timed(id: &str, statement: &str, f: impl FnOnce() -> CheckResult) -> IdentityReport {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(None) => (true, String::new()),
        Ok(Some(diff)) => (false, diff),
        Err(e) => (false, format!("error: {e}")),
    };
    IdentityReport {
        id: id.to_string(),
        statement: statement.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Exact chain equality plus a shared-junction oracle comparison.
fn chain_eq(lhs: &Chain, rhs: &Chain, seed: u64) -> CheckResult {
    let diff = lhs.sub(rhs);
    if !diff.is_zero() {
        return Ok(Some(format!("residual: {}", diff.display())));
    }
    if !chain_oracle_agree(lhs, rhs, seed, ORACLE_REPS).map_err(|e| e.to_string())? {
        return Ok(Some("matrix oracle disagrees with the rewriter".into()));
    }
    Ok(None)
}

fn chain_is_zero(c: &Chain, seed: u64) -> CheckResult {
    if !c.is_zero() {
        return Ok(Some(format!("residual: {}", c.display())));
    }
    if !chain_oracle_is_zero(c, seed, ORACLE_REPS).map_err(|e| e.to_string())? {
        return Ok(Some("matrix oracle found a nonzero probe".into()));
    }
    Ok(None)
}

/// Exact element equality plus the matrix oracle at 20 representations.
fn element_eq(lhs: &NCElement, rhs: &NCElement, seed: u64) -> CheckResult {
    if !lhs.equals(rhs).map_err(|e| e.to_string())? {
        return Ok(Some(format!(
            "normal forms differ: {} vs {}",
            lhs.normal_form().display(),
            rhs.normal_form().display()
        )));
    }
    if !oracle_equals(lhs, rhs, seed, ORACLE_REPS).map_err(|e| e.to_string())? {
        return Ok(Some("matrix oracle refuted the equality".into()));
    }
    Ok(None)
}

/// Identities over `k[x^{±1}]` and `kI`: the boundary and rotation
/// behavior of the `α_n` family and its mixed (negative cyclic) lift.
pub fn laurent_suite(truncation: usize) -> Vec<IdentityReport> {
    let p = builtins::laurent("x");
    let mut out = Vec::new();

    for n in 2..=4usize {
        let p = p.clone();
        out.push(timed(
            &format!("laurent.b_alpha{n}"),
            &format!("b(alpha~_{n}) = 2 (1 (x) alpha~_{})", n - 1),
            || {
                let an = alpha_tilde_n(&p, "x", n).map_err(|e| e.to_string())?;
                let prev = alpha_tilde_n(&p, "x", n - 1).map_err(|e| e.to_string())?;
                chain_eq(
                    &an.hochschild_b(),
                    &one_tensor(&prev).scale(&rat_int(2)),
                    100 + n as u64,
                )
            },
        ));
    }

    for n in 1..=3usize {
        let p = p.clone();
        out.push(timed(
            &format!("laurent.B_alpha{n}"),
            &format!("B(alpha~_{n}) = 2*{n} (1 (x) alpha~_{n})"),
            || {
                let an = alpha_tilde_n(&p, "x", n).map_err(|e| e.to_string())?;
                chain_eq(
                    &an.connes_b(),
                    &one_tensor(&an).scale(&rat_int(2 * n as i64)),
                    110 + n as u64,
                )
            },
        ));
    }

    {
        let p = p.clone();
        out.push(timed(
            "laurent.mixed_closed",
            &format!(
                "(b - uB)(sum_k k! u^k alpha_(k+1)) = 0 through u^{truncation}, \
                 remainder {truncation}! B(alpha_{})",
                truncation + 1
            ),
            move || {
                let mixed = alpha_mixed(&p, "x", truncation).map_err(|e| e.to_string())?;
                let (d, remainder) = mixed.mixed_differential();
                for (k, comp) in d.components.iter().enumerate() {
                    if !comp.is_zero() {
                        return Ok(Some(format!("nonzero at u^{k}: {}", comp.display())));
                    }
                }
                // oracle: each cancellation b(c_k) = B(c_{k-1}) holds in matrices
                for k in 1..=truncation {
                    let b_ck = mixed.components[k].hochschild_b();
                    let bb_prev = mixed.components[k - 1].connes_b();
                    if !chain_oracle_agree(&b_ck, &bb_prev, 120 + k as u64, ORACLE_REPS)
                        .map_err(|e| e.to_string())?
                    {
                        return Ok(Some(format!("oracle disagrees at u^{k}")));
                    }
                }
                // the overflow term has the closed form (N+1)! (1 (x) alpha~_(N+1))
                let (_, tilde_next) =
                    alpha_n(&mixed.components[0].pres, "x", truncation + 1)
                        .map_err(|e| e.to_string())?;
                let mut fact = Rat::one();
                for k in 1..=(truncation + 1) as i64 {
                    fact *= rat_int(k);
                }
                chain_eq(&remainder, &one_tensor(&tilde_next).scale(&fact), 130)
            },
        ));
    }

    {
        let p = p.clone();
        out.push(timed(
            "laurent.eval_q_push",
            "push of alpha~_1 along evaluation at q = 5/3 is 0",
            || {
                let a1 = alpha_tilde_n(&p, "x", 1).map_err(|e| e.to_string())?;
                let f = builtins::eval_q(&p, "x", &rat(5, 3));
                let pushed = a1.push(&f).map_err(|e| e.to_string())?;
                if pushed.is_zero() {
                    Ok(None)
                } else {
                    Ok(Some(format!("residual: {}", pushed.display())))
                }
            },
        ));
    }

    {
        let p = p.clone();
        out.push(timed(
            "laurent.inv_push",
            "push of alpha~_1 along x -> x^{-1} is -alpha~_1",
            || {
                let a1 = alpha_tilde_n(&p, "x", 1).map_err(|e| e.to_string())?;
                let f = builtins::inv_morphism(&p, "x");
                let pushed = a1.push(&f).map_err(|e| e.to_string())?;
                chain_eq(&pushed, &a1.scale(&rat_int(-1)), 140)
            },
        ));
    }

    {
        let p = p.clone();
        out.push(timed(
            "laurent.rescale_push",
            "push of alpha~_1 along x -> (7/2) x is alpha~_1",
            || {
                let a1 = alpha_tilde_n(&p, "x", 1).map_err(|e| e.to_string())?;
                let f = builtins::rescale_q(&p, "x", &rat(7, 2));
                let pushed = a1.push(&f).map_err(|e| e.to_string())?;
                chain_eq(&pushed, &a1, 141)
            },
        ));
    }

    out.push(timed(
        "laurent.kI_boundary",
        "e_1 - e_2 = b(alpha_1) in the interval category kI",
        || {
            let ki = builtins::interval_ki();
            let (half, _) = alpha_n(&ki, "x", 1).map_err(|e| e.to_string())?;
            let e1 = NCElement::idempotent(&ki, "1").map_err(|e| e.to_string())?;
            let e2 = NCElement::idempotent(&ki, "2").map_err(|e| e.to_string())?;
            let expected = Chain::from_tensors(
                &ki,
                0,
                &[(rat_int(1), vec![e1]), (rat_int(-1), vec![e2])],
            )
            .map_err(|e| e.to_string())?;
            chain_eq(&half.hochschild_b(), &expected, 150)
        },
    ));

    out
}

/// Identities for the `k[z^{±1}] -> k<x^{±1}, y^{±1}> <- k[x^{±1}] ⊔ k[y^{±1}]`
/// cospan: the homotopy `β_1`, its groupoid avatar, and the pushout collapse.
pub fn cospan_suite() -> Vec<IdentityReport> {
    let mut out = Vec::new();

    out.push(timed(
        "cospan.beta1_pair",
        "b(beta_1) = alpha~_1(xy) - alpha~_1(x) - alpha~_1(y) in k<x^{±1}, y^{±1}>",
        || {
            let p = builtins::laurent_pair();
            let beta = beta1_cospan(&p).map_err(|e| e.to_string())?;
            let rhs = cospan_rhs(&p)?;
            chain_eq(&beta.hochschild_b(), &rhs, 200)
        },
    ));

    out.push(timed(
        "cospan.z_push",
        "push of alpha~_1(z) along z -> xy equals alpha~_1(xy)",
        || {
            let p = builtins::laurent_pair();
            let z = builtins::laurent("z");
            let a1z = alpha_tilde_n(&z, "z", 1).map_err(|e| e.to_string())?;
            let pushed = a1z
                .push(&builtins::z_to_xy(&p))
                .map_err(|e| e.to_string())?;
            let xy = NCElement::word(&p, &["x", "y"]).map_err(|e| e.to_string())?;
            let xy_inv = NCElement::word(&p, &["yinv", "xinv"]).map_err(|e| e.to_string())?;
            let direct = alpha1_of(&xy, &xy_inv).map_err(|e| e.to_string())?;
            chain_eq(&pushed, &direct, 201)
        },
    ));

    out.push(timed(
        "cospan.beta1_groupoid",
        "the beta_1 formula still closes in the two-object groupoid C",
        || {
            let c = builtins::groupoid_c();
            let beta = beta1_cospan(&c).map_err(|e| e.to_string())?;
            let rhs = cospan_rhs(&c)?;
            chain_eq(&beta.hochschild_b(), &rhs, 202)
        },
    ));

    out.push(timed(
        "cospan.pushout_collapse",
        "the image of alpha~_1(x) + alpha~_1(y) in k<x^{±1}, y^{±1}>/(xy = q) is 0",
        || {
            let p = builtins::laurent_pair();
            let push = builtins::pushout_xy_q(&rat(5, 2));
            let f = builtins::pair_to_pushout(&p, &push);
            let x = NCElement::gen(&p, "x").map_err(|e| e.to_string())?;
            let xinv = NCElement::gen(&p, "xinv").map_err(|e| e.to_string())?;
            let y = NCElement::gen(&p, "y").map_err(|e| e.to_string())?;
            let yinv = NCElement::gen(&p, "yinv").map_err(|e| e.to_string())?;
            let sum = alpha1_of(&x, &xinv)
                .map_err(|e| e.to_string())?
                .add(&alpha1_of(&y, &yinv).map_err(|e| e.to_string())?);
            let pushed = sum.push(&f).map_err(|e| e.to_string())?;
            chain_is_zero(&pushed, 203)
        },
    ));

    out
}

/// `alpha~_1(xy) - alpha~_1(x) - alpha~_1(y)` in a presentation with
/// invertible `x`, `y`.
fn cospan_rhs(p: &Arc<Presentation>) -> Result<Chain, String> {
    let x = NCElement::gen(p, "x").map_err(|e| e.to_string())?;
    let xinv = NCElement::gen(p, "xinv").map_err(|e| e.to_string())?;
    let y = NCElement::gen(p, "y").map_err(|e| e.to_string())?;
    let yinv = NCElement::gen(p, "yinv").map_err(|e| e.to_string())?;
    let xy = x.mul(&y);
    let xy_inv = yinv.mul(&xinv);
    Ok(alpha1_of(&xy, &xy_inv)
        .map_err(|e| e.to_string())?
        .sub(&alpha1_of(&x, &xinv).map_err(|e| e.to_string())?)
        .sub(&alpha1_of(&y, &yinv).map_err(|e| e.to_string())?))
}

/// Identities on the localized `A_2` algebra: the fusion homotopy and its
/// two displayed sub-identities.
pub fn a2_suite() -> Vec<IdentityReport> {
    let mut out = Vec::new();

    out.push(timed(
        "a2.beta1",
        "b(beta_1) = mu_1(alpha~_1) + mu_2(alpha~_1) on the localized A_2 algebra",
        || {
            let p = builtins::a2_loc();
            let beta = beta1_a2(&p).map_err(|e| e.to_string())?;
            let a1x1 = alpha_tilde_n(&builtins::laurent("x1"), "x1", 1)
                .map_err(|e| e.to_string())?;
            let a1x2 = alpha_tilde_n(&builtins::laurent("x2"), "x2", 1)
                .map_err(|e| e.to_string())?;
            let rhs = a1x1
                .push(&builtins::mu1(&p))
                .map_err(|e| e.to_string())?
                .add(&a1x2.push(&builtins::mu2(&p)).map_err(|e| e.to_string())?);
            chain_eq(&beta.hochschild_b(), &rhs, 300)
        },
    ));

    out.push(timed(
        "a2.unit_tensor_identity",
        "1 (x) (a_1^{-1} - a_2^{-1}) = bB(e* (x) e a_1^{-1})",
        || {
            let p = builtins::a2_loc();
            let l = NCElement::gen(&p, "l").map_err(|e| e.to_string())?;
            let a2inv = NCElement::macro_(&p, "a2inv").map_err(|e| e.to_string())?;
            let unit = NCElement::unit(&p);
            let lhs = Chain::from_tensors(&p, 1, &[(rat_int(1), vec![unit, l.sub(&a2inv)])])
                .map_err(|e| e.to_string())?;
            let estar = NCElement::gen(&p, "estar").map_err(|e| e.to_string())?;
            let el = NCElement::gen(&p, "e").map_err(|e| e.to_string())?.mul(&l);
            let low = Chain::from_tensors(&p, 1, &[(rat_int(1), vec![estar, el])])
                .map_err(|e| e.to_string())?;
            chain_eq(&lhs, &low.connes_b().hochschild_b(), 301)
        },
    ));

    out.push(timed(
        "a2.commutator_boundary",
        "e*e (x) a_1^{-1} - a_1^{-1} (x) e*e + a_2^{-1} (x) ee* - ee* (x) a_2^{-1} \
         = b(e* (x) e (x) a_1^{-1} + a_1^{-1} (x) e* (x) e - e* (x) a_2^{-1} (x) e \
         - a_2^{-1} (x) e (x) e*)",
        || {
            let p = builtins::a2_loc();
            let e = NCElement::gen(&p, "e").map_err(|e| e.to_string())?;
            let estar = NCElement::gen(&p, "estar").map_err(|e| e.to_string())?;
            let l = NCElement::gen(&p, "l").map_err(|e| e.to_string())?;
            let a2inv = NCElement::macro_(&p, "a2inv").map_err(|e| e.to_string())?;
            let estar_e = estar.mul(&e);
            let e_estar = e.mul(&estar);
            let lhs = Chain::from_tensors(
                &p,
                1,
                &[
                    (rat_int(1), vec![estar_e.clone(), l.clone()]),
                    (rat_int(-1), vec![l.clone(), estar_e]),
                    (rat_int(1), vec![a2inv.clone(), e_estar.clone()]),
                    (rat_int(-1), vec![e_estar, a2inv.clone()]),
                ],
            )
            .map_err(|e| e.to_string())?;
            let preimage = Chain::from_tensors(
                &p,
                2,
                &[
                    (rat_int(1), vec![estar.clone(), e.clone(), l.clone()]),
                    (rat_int(1), vec![l, estar.clone(), e.clone()]),
                    (rat_int(-1), vec![estar.clone(), a2inv.clone(), e.clone()]),
                    (rat_int(-1), vec![a2inv, e, estar]),
                ],
            )
            .map_err(|e| e.to_string())?;
            chain_eq(&lhs, &preimage.hochschild_b(), 302)
        },
    ));

    out
}

/// The eight inversion identities in the localized `A_2` algebra.
pub fn invrels_suite() -> Vec<IdentityReport> {
    let p = builtins::a2_loc();
    let e = NCElement::gen(&p, "e").unwrap();
    let estar = NCElement::gen(&p, "estar").unwrap();
    let l = NCElement::gen(&p, "l").unwrap();
    let e1 = NCElement::idempotent(&p, "1").unwrap();
    let e2 = NCElement::idempotent(&p, "2").unwrap();
    let one = NCElement::unit(&p);
    let u1 = NCElement::macro_(&p, "u1").unwrap();
    let u2 = NCElement::macro_(&p, "u2").unwrap();
    let a2 = NCElement::macro_(&p, "a2").unwrap();
    let a2inv = NCElement::macro_(&p, "a2inv").unwrap();

    let two_sided = |a: &NCElement, b: &NCElement, seed: u64| -> CheckResult {
        if let Some(d) = element_eq(&a.mul(b), &one, seed)? {
            return Ok(Some(d));
        }
        element_eq(&b.mul(a), &one, seed + 1)
    };

    vec![
        timed("invrels.u1_inverse", "(1 + e*e)^{-1} = e_2 + a_1^{-1}", || {
            two_sided(&u1, &e2.add(&l), 400)
        }),
        timed("invrels.a2_inverse", "a_2^{-1} = e_2 - e a_1^{-1} e*", || {
            // a_2 is a loop at vertex 2: its inverse identity lands on e_2
            let cand = e2.sub(&e.mul(&l).mul(&estar));
            if let Some(d) = element_eq(&a2.mul(&cand), &e2, 402)? {
                return Ok(Some(d));
            }
            element_eq(&cand.mul(&a2), &e2, 403)
        }),
        timed("invrels.a1_inverse", "a_1^{-1} = e_1 - e* a_2^{-1} e", || {
            element_eq(&l, &e1.sub(&estar.mul(&a2inv).mul(&e)), 404)
        }),
        timed("invrels.u2_inverse", "(1 + ee*)^{-1} = e_1 + a_2^{-1}", || {
            two_sided(&u2, &e1.add(&a2inv), 405)
        }),
        timed("invrels2.a2inv_e", "a_2^{-1} e = e a_1^{-1}", || {
            element_eq(&a2inv.mul(&e), &e.mul(&l), 407)
        }),
        timed("invrels2.estar_a2inv", "e* a_2^{-1} = a_1^{-1} e*", || {
            element_eq(&estar.mul(&a2inv), &l.mul(&estar), 408)
        }),
        timed("invrels2.estar_e_a1inv", "e*e a_1^{-1} = e_1 - a_1^{-1}", || {
            element_eq(&estar.mul(&e).mul(&l), &e1.sub(&l), 409)
        }),
        timed("invrels2.e_estar_a2inv", "ee* a_2^{-1} = e_2 - a_2^{-1}", || {
            element_eq(&e.mul(&estar).mul(&a2inv), &e2.sub(&a2inv), 410)
        }),
    ]
}

/// Negative controls: deliberately broken conventions must be *detected*,
/// guarding against normalization bugs that send everything to zero. Each
/// entry passes when the sabotage is caught.
pub fn control_suite() -> Vec<IdentityReport> {
    let mut out = Vec::new();

    out.push(timed(
        "control.flipped_connes_b",
        "the sign-flipped Connes operator must break B(alpha~_1) = 2 (1 (x) alpha~_1)",
        || {
            let p = builtins::laurent("x");
            let a1 = alpha_tilde_n(&p, "x", 1).map_err(|e| e.to_string())?;
            let expected = one_tensor(&a1).scale(&rat_int(2));
            let flipped = a1.connes_b_flipped();
            if flipped.sub(&expected).is_zero() {
                return Ok(Some("flipped B not detected".into()));
            }
            // the oracle must reject it too
            if chain_oracle_agree(&flipped, &expected, 500, ORACLE_REPS)
                .map_err(|e| e.to_string())?
            {
                return Ok(Some("oracle failed to refute flipped B".into()));
            }
            Ok(None)
        },
    ));

    out.push(timed(
        "control.unnormalized_b",
        "the unnormalized differential must keep interior units that b(alpha~_2) drops",
        || {
            let p = builtins::laurent("x");
            let a2 = alpha_tilde_n(&p, "x", 2).map_err(|e| e.to_string())?;
            if a2.hochschild_b_unnormalized().matches_normalized(&a2.hochschild_b()) {
                return Ok(Some("interior units were not kept".into()));
            }
            Ok(None)
        },
    ));

    out.push(timed(
        "control.mixed_wrong_coefficient",
        "replacing 1! alpha_2 by 2 alpha_2 must leave a nonzero term at u^1",
        || {
            let p = builtins::laurent("x");
            let (half1, _) = alpha_n(&p, "x", 1).map_err(|e| e.to_string())?;
            let (half2, _) = alpha_n(&p, "x", 2).map_err(|e| e.to_string())?;
            let wrong = MixedChain::new(1, vec![half1, half2.scale(&rat_int(2))]);
            let (d, _) = wrong.mixed_differential();
            if d.components[1].is_zero() {
                return Ok(Some("wrong coefficient not detected".into()));
            }
            Ok(None)
        },
    ));

    out.push(timed(
        "control.oracle_refutes",
        "the oracle must distinguish e a_1^{-1} from 2 e a_1^{-1}",
        || {
            let p = builtins::a2_loc();
            let el = NCElement::gen(&p, "e")
                .map_err(|e| e.to_string())?
                .mul(&NCElement::gen(&p, "l").map_err(|e| e.to_string())?);
            if oracle_equals(&el, &el.scale(&rat_int(2)), 501, ORACLE_REPS)
                .map_err(|e| e.to_string())?
            {
                return Ok(Some("oracle accepted a false identity".into()));
            }
            Ok(None)
        },
    ));

    out
}

/// Runs one named suite (or `all`). `truncation` bounds the mixed witness.
pub fn run_suite(name: &str, truncation: usize) -> Result<WitnessSuiteReport, AlgError> {
    let entries = match name {
        "laurent" => laurent_suite(truncation),
        "cospan" => cospan_suite(),
        "a2" => a2_suite(),
        "invrels" => invrels_suite(),
        "controls" => control_suite(),
        "all" => {
            let mut v = laurent_suite(truncation);
            v.extend(cospan_suite());
            v.extend(a2_suite());
            v.extend(invrels_suite());
            v.extend(control_suite());
            v
        }
        _ => return Err(AlgError::Other(format!("unknown suite `{name}`"))),
    };
    Ok(WitnessSuiteReport::new(name, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let report = run_suite("all", 3).unwrap();
        for entry in &report.entries {
            assert!(entry.passed, "{}: {}", entry.id, entry.detail);
        }
        assert!(report.all_passed);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("bogus", 3).is_err());
    }

    #[test]
    fn beta1_a2_is_not_trivially_zero() {
        let p = builtins::a2_loc();
        let beta = beta1_a2(&p).unwrap();
        assert!(!beta.is_zero());
        assert!(!beta.hochschild_b().is_zero());
    }

    #[test]
    fn alpha_mixed_components_have_factorials() {
        let p = builtins::laurent("x");
        let mixed = alpha_mixed(&p, "x", 3).unwrap();
        assert_eq!(mixed.components.len(), 4);
        let (half3, _) = alpha_n(&p, "x", 4).unwrap();
        assert!(mixed.components[3]
            .equals(&half3.scale(&rat_int(6)))
            .unwrap());
    }

    #[test]
    fn report_serializes() {
        let report = run_suite("invrels", 3).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("invrels.a1_inverse"));
    }
}
