//! End-to-end acceptance checks, one per shipped guarantee. Each test
//! prints a single `acceptance N [PASS|FAIL] ...` line (visible with
//! `--nocapture`) and asserts the outcome.

use mppa::hochschild::Chain;
use mppa::ncalg::{builtins, expr, random_element, rewrite, NCElement};
use mppa::preproj;
use mppa::quiver::{FusionOrder, Quiver};
use mppa::repvar::chain_oracle_agree;
use mppa::resolutions;
use mppa::witnesses;
use mppa::{rat, rat_int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

fn report(n: usize, name: &str, ok: bool) {
    println!("acceptance {n} [{}] {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion {n} ({name}) failed");
}

fn lex(q: &Quiver) -> FusionOrder {
    FusionOrder::lexicographic(q)
}

fn const_q(q: &Quiver, first: i64) -> BTreeMap<String, Rat> {
    q.vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), rat_int(if i == 0 { first } else { 1 })))
        .collect()
}

fn test_quivers() -> Vec<Quiver> {
    vec![Quiver::a2(), Quiver::jordan(), Quiver::two_cycle(), Quiver::star(3)]
}

/// `1 ⊗ c`, the unit prepended to every tensor of `c`.
fn one_tensor(c: &Chain) -> Chain {
    let unit = NCElement::unit(&c.pres);
    let tensors: Vec<(Rat, Vec<NCElement>)> = c
        .terms
        .iter()
        .map(|(t, coeff)| {
            let mut slots = vec![unit.clone()];
            slots.extend(t.iter().map(|w| {
                NCElement::from_raw(&c.pres, [(w.clone(), rat_int(1))].into_iter().collect())
            }));
            (coeff.clone(), slots)
        })
        .collect();
    Chain::from_tensors(&c.pres, c.degree + 1, &tensors).expect("slot count")
}

/// 1. The full identity suite passes, within the time budget.
#[test]
fn criterion_1_identity_suite() {
    let start = Instant::now();
    let rep = witnesses::run_suite("all", 5).expect("suite runs");
    let elapsed = start.elapsed();
    for e in &rep.entries {
        assert!(e.passed, "identity {} failed: {}", e.id, e.detail);
    }
    let ok = rep.all_passed && elapsed.as_secs() < 10;
    report(1, "full identity suite passes in under 10s", ok);
}

/// 2. The mixed witness is closed through `u^5`, and the overflow term is
/// exactly `6! (1 ⊗ α̃_6)`.
#[test]
fn criterion_2_mixed_truncation() {
    let pres = builtins::laurent("x");
    let mixed = witnesses::alpha_mixed(&pres, "x", 5).expect("mixed witness");
    let (diff, remainder) = mixed.mixed_differential();
    let tilde6 = witnesses::alpha_tilde_n(&pres, "x", 6).expect("alpha_tilde_6");
    let expected = one_tensor(&tilde6).scale(&rat_int(720));
    let exact = diff.is_zero() && remainder.sub(&expected).is_zero();
    let oracle = chain_oracle_agree(&remainder, &expected, 20260824, 5).expect("oracle");
    report(2, "mixed witness closed through u^5 with factorial remainder", exact && oracle);
}

/// 3. Every resolution diagram closes, and the small isomorphism check
/// passes for ten random nonzero parameters.
#[test]
fn criterion_3_resolution_diagrams() {
    let diagrams = resolutions::check_a2_diagrams();
    for d in &diagrams {
        assert!(d.passed, "diagram {} failed: {}", d.name, d.detail);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let qs: Vec<Rat> = (0..10)
        .map(|_| {
            let mut n = 0i64;
            while n == 0 {
                n = rng.gen_range(-9..=9);
            }
            rat(n, rng.gen_range(1..=9))
        })
        .collect();
    let iso = resolutions::check_iso_small(&qs).expect("iso check");
    let ok = diagrams.iter().all(|d| d.passed)
        && iso.commutes_with_d
        && iso.two_sided_inverse
        && iso.fiber_ok;
    report(3, "resolution diagrams and small isomorphism check", ok);
}

/// 4. The built-in rewriting systems are confluent at depth 12, and the
/// normal form is idempotent on random elements.
#[test]
fn criterion_4_confluence() {
    let names = ["laurent", "laurent_pair", "interval_kI", "a2_loc"];
    let mut joinable = true;
    let mut idempotent = true;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in names {
        let pres = builtins::by_name(name).expect("builtin");
        let pairs = rewrite::critical_pairs(&pres, 12).expect("critical pairs");
        joinable &= pairs.iter().all(|p| p.joinable);
        for _ in 0..125 {
            let e = random_element(&pres, &mut rng, 3, 5);
            let nf = e.normal_form();
            idempotent &= nf.normal_form().sub(&nf).is_zero();
        }
    }
    report(4, "critical pairs joinable and normal form idempotent", joinable && idempotent);
}

/// 5. Fusion through the separated quiver reproduces the moment map on
/// every test quiver, and each local factor is two-sided invertible.
#[test]
fn criterion_5_fusion() {
    let mut ok = true;
    for q in test_quivers() {
        let order = lex(&q);
        let mm = preproj::moment_map(&q, &order).expect("moment map");
        let fused = preproj::fusion_build(&q, &order).expect("fusion");
        for v in &q.vertices {
            let ev = NCElement::idempotent(&mm.pres, v).expect("idempotent");
            ok &= fused[v].sub(&mm.mu[v]).normal_form().is_zero();
            ok &= mm.mu[v].mul(&mm.mu_inv[v]).normal_form().sub(&ev).is_zero();
            ok &= mm.mu_inv[v].mul(&mm.mu[v]).normal_form().sub(&ev).is_zero();
        }
    }
    report(5, "fusion construction matches the moment map", ok);
}

/// 6. `Υ^q(Q)` builds for every test quiver at two parameter choices, the
/// differential hits `μ_v - q_v e_v`, and `H^0` is certified on the small
/// quivers.
#[test]
fn criterion_6_upsilon() {
    let mut ok = true;
    for q in test_quivers() {
        let order = lex(&q);
        let mm = preproj::moment_map(&q, &order).expect("moment map");
        for first in [1, 2] {
            let qvals = const_q(&q, first);
            let ups = preproj::build_upsilon(&q, &qvals, &order).expect("upsilon");
            for v in &q.vertices {
                let zp = NCElement::gen(&ups.pres, &builtins::zp_gen(v)).expect("zp generator");
                let d_zp = ups.d(&zp).expect("differential");
                let mu = expr::parse_element(&ups.pres, &expr::print_element(&mm.mu[v]))
                    .expect("transported mu");
                let ev = NCElement::idempotent(&ups.pres, v).expect("idempotent");
                let expected = mu.sub(&ev.scale(&qvals[v])).normal_form();
                ok &= d_zp.sub(&expected).is_zero();
                let sq = ups.d(&zp.mul(&zp)).and_then(|dz| ups.d(&dz)).expect("d^2");
                ok &= sq.is_zero();
            }
        }
    }
    for q in [Quiver::a2(), Quiver::jordan()] {
        let order = lex(&q);
        let h0 = preproj::h0_check(&q, &const_q(&q, 1), &order, 2).expect("h0 check");
        ok &= h0.certified;
    }
    report(6, "Upsilon builds with d(z'_v) = mu_v - q_v e_v and certified H^0", ok);
}

/// 7. The matrix oracle is deterministic for a fixed seed, and the product
/// of the moment-map determinants is 1 at 20 random representations of
/// every test quiver.
#[test]
fn criterion_7_oracle() {
    let mut ok = true;
    for q in test_quivers() {
        let order = lex(&q);
        let mm = preproj::moment_map(&q, &order).expect("moment map");
        ok &= mm.det_product_is_one(11, 20).expect("determinant oracle");
    }
    let runs: Vec<Vec<(String, bool, String)>> = (0..2)
        .map(|_| {
            witnesses::run_suite("invrels", 3)
                .expect("suite")
                .entries
                .into_iter()
                .map(|e| (e.id, e.passed, e.detail))
                .collect()
        })
        .collect();
    ok &= runs[0] == runs[1];
    report(7, "determinant identity at 20 representations, deterministic reports", ok);
}

/// 8. The negative controls all detect their deliberately broken variants.
#[test]
fn criterion_8_negative_controls() {
    let rep = witnesses::run_suite("controls", 3).expect("controls");
    for e in &rep.entries {
        assert!(e.passed, "control {} failed to detect: {}", e.id, e.detail);
    }
    report(8, "negative controls detect broken variants", rep.all_passed);
}
