//! Check-suite runners: each suite turns engine results into pass/fail
//! records with machine-readable witnesses.

use num_bigint::BigUint;
use serde_json::json;

use pilab_core::codim::checks::{
    check_colength_bound, check_conjugate_duality, check_graded_hooks, check_hook_constraint,
    check_tilde_identity_correspondence, eq6_sandwich, eq6_sandwich_graded,
    spanning_rank_comparison,
};
use pilab_core::codim::report::{CheckRecord, RunMode};
use pilab_core::codim::{Engine, EvaluationTarget};
use pilab_core::envelope::{evaluate_on_envelope, truncated_envelope_oracle, EnvelopeAssignment};
use pilab_core::freealg::{SpanKind, SpanningSet, VarSpec};
use pilab_core::partitions::HookSpec;
use pilab_core::rng::SplitMix64;
use pilab_core::Error;

use crate::DegreeRange;

/// Hook constraints on cocharacters. Plain algebras: the strip `H(dim, 0)`;
/// envelopes: the hook `H(k, l)`. Graded mode checks the pair constraints
/// `(H(k,0), H(l,0))` for algebras and `(H(k,0), H(0,l))` for envelopes,
/// over all signatures of each degree.
pub fn hooks(
    engine: &Engine,
    target: &EvaluationTarget,
    mode: RunMode,
    degrees: &DegreeRange,
) -> Result<Vec<CheckRecord>, Error> {
    let (k, l) = target.algebra().graded_dims();
    let (k, l) = (k as u32, l as u32);
    let mut records = Vec::new();
    for n in degrees.lo..=degrees.hi {
        match mode {
            RunMode::Ordinary => {
                let hook = if target.is_envelope() {
                    HookSpec::new(k, l)
                } else {
                    HookSpec::new(target.algebra().dim() as u32, 0)
                };
                let a = engine.ordinary_analysis(target, n)?;
                let name = format!("hook_{hook}(n={n})");
                match check_hook_constraint(&a.cocharacter, hook) {
                    None => records.push(CheckRecord::pass(name)),
                    Some(w) => records.push(CheckRecord::fail(name, json!({"lambda": w.parts()}))),
                }
            }
            RunMode::Graded => {
                let (even_hook, odd_hook) = if target.is_envelope() {
                    (HookSpec::new(k, 0), HookSpec::new(0, l))
                } else {
                    (HookSpec::new(k, 0), HookSpec::new(l, 0))
                };
                for q in 0..=n {
                    let a = engine.graded_analysis(target, q, n - q)?;
                    let name = format!("hook_pair_{even_hook}x{odd_hook}(q={q},m={})", n - q);
                    match check_graded_hooks(&a.cocharacter, even_hook, odd_hook) {
                        None => records.push(CheckRecord::pass(name)),
                        Some((wl, wm)) => records.push(CheckRecord::fail(
                            name,
                            json!({"lambda": wl.parts(), "mu": wm.parts()}),
                        )),
                    }
                }
            }
        }
    }
    Ok(records)
}

/// Conjugate duality between the algebra's graded cocharacters and its
/// envelope's, over all signatures with total degree in the range.
pub fn duality(
    engine: &Engine,
    target: &EvaluationTarget,
    degrees: &DegreeRange,
) -> Result<Vec<CheckRecord>, Error> {
    let algebra = target.algebra();
    let mut records = Vec::new();
    for n in degrees.lo..=degrees.hi {
        for q in 0..=n {
            let m = n - q;
            let name = format!("conjugate_duality(q={q},m={m})");
            match check_conjugate_duality(engine, algebra, q, m)? {
                None => records.push(CheckRecord::pass(name)),
                Some(w) => records.push(CheckRecord::fail(
                    name,
                    json!({
                        "lambda": w.even.parts(),
                        "mu": w.odd.parts(),
                        "algebra_multiplicity": w.algebra_multiplicity,
                        "envelope_multiplicity": w.envelope_multiplicity,
                    }),
                )),
            }
        }
    }
    Ok(records)
}

/// Randomized tilde identity correspondence on the target's algebra.
pub fn tilde(
    engine: &Engine,
    target: &EvaluationTarget,
    samples: usize,
    degrees: &DegreeRange,
) -> Result<Vec<CheckRecord>, Error> {
    let report =
        check_tilde_identity_correspondence(engine, target.algebra(), samples, degrees.hi)?;
    let name = format!(
        "tilde_correspondence({} samples, degrees <= {})",
        report.cases, degrees.hi
    );
    Ok(vec![match &report.witness {
        None => CheckRecord::pass(name),
        Some(w) => CheckRecord::fail(name, json!({ "witness": w })),
    }])
}

/// Sandwich bounds, the envelope colength bound, and the graded-vs-ordinary
/// codimension comparison.
pub fn bounds(
    engine: &Engine,
    target: &EvaluationTarget,
    degrees: &DegreeRange,
) -> Result<Vec<CheckRecord>, Error> {
    let mut records = Vec::new();
    let (k, l) = target.algebra().graded_dims();
    for n in degrees.lo..=degrees.hi {
        let a = engine.ordinary_analysis(target, n)?;
        let s = eq6_sandwich(a.codimension, &a.cocharacter);
        let name = format!("sandwich(n={n})");
        if s.pass {
            records.push(CheckRecord::pass(name));
        } else {
            records.push(CheckRecord::fail(
                name,
                json!({"max_d": s.max_dimension.to_string(), "c_n": s.codimension, "upper": s.upper.to_string()}),
            ));
        }
        if target.is_envelope() {
            let b = check_colength_bound(&a.cocharacter, k as u32, l as u32);
            let name = format!("colength_bound(n={n})");
            if b.pass {
                records.push(CheckRecord::pass(name));
            } else {
                records.push(CheckRecord::fail(
                    name,
                    json!({"l_n": b.colength, "bound": b.bound.to_string()}),
                ));
            }
        }
        // graded parts also satisfy the sandwich
        for q in 0..=n {
            let g = engine.graded_analysis(target, q, n - q)?;
            let gs = eq6_sandwich_graded(g.codimension, &g.cocharacter);
            let name = format!("sandwich_graded(q={q},m={})", n - q);
            if gs.pass {
                records.push(CheckRecord::pass(name));
            } else {
                records.push(CheckRecord::fail(
                    name,
                    json!({"max_d": gs.max_dimension.to_string(), "c": gs.codimension, "upper": gs.upper.to_string()}),
                ));
            }
        }
        let c_gr = engine.graded_codimension(target, n)?;
        let name = format!("graded_vs_ordinary(n={n})");
        if c_gr >= BigUint::from(a.codimension) {
            records.push(CheckRecord::pass(name));
        } else {
            records.push(CheckRecord::fail(
                name,
                json!({"c_n": a.codimension, "c_n_gr": c_gr.to_string()}),
            ));
        }
    }
    Ok(records)
}

/// Oracle equivalences: left-normed vs all-bracketings ranks, Koszul-sign
/// evaluation vs the truncated Grassmann oracle, and modular vs exact ranks.
pub fn oracle(
    engine: &Engine,
    target: &EvaluationTarget,
    samples: usize,
    degrees: &DegreeRange,
) -> Result<Vec<CheckRecord>, Error> {
    let mut records = Vec::new();
    for n in degrees.lo..=degrees.hi {
        let (ln, ab) = spanning_rank_comparison(engine, target, n)?;
        let name = format!("spanning_equivalence(n={n})");
        if ln == ab {
            records.push(CheckRecord::pass(name));
        } else {
            records.push(CheckRecord::fail(
                name,
                json!({"left_normed_rank": ln, "all_bracketings_rank": ab}),
            ));
        }
    }

    // Koszul sign vs literal Grassmann products, on the underlying algebra
    let algebra = target.algebra();
    if algebra.has_grading() {
        let mut rng = SplitMix64::new(engine.options().seed ^ 0x6f7261636c65);
        let mut witness = None;
        for _ in 0..samples {
            let n = 1 + rng.below(degrees.hi.min(6) as u64) as usize;
            let span = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n });
            let m = span.monomial(rng.below(span.len() as u64) as usize);
            let tuple: Vec<usize> = (0..n)
                .map(|_| rng.below(algebra.dim() as u64) as usize)
                .collect();
            let assignment = EnvelopeAssignment::fresh(algebra, &tuple)?;
            let (sign, value) = evaluate_on_envelope(algebra, &m, &assignment)?;
            let oracle = truncated_envelope_oracle(algebra, &m, &assignment)?;
            let mut expected = pilab_core::envelope::EnvelopeValue::zero(algebra.dim());
            if !value.is_zero() {
                let signed = if sign < 0 { value.neg() } else { value };
                expected.add_term(&assignment.sorted_block_product(), signed);
            }
            if oracle != expected {
                witness = Some(json!({
                    "monomial": format!("{:?}", m.leaf_order()),
                    "tuple": tuple,
                }));
                break;
            }
        }
        let name = format!("koszul_oracle({samples} samples)");
        records.push(match witness {
            None => CheckRecord::pass(name),
            Some(w) => CheckRecord::fail(name, w),
        });
    }

    // modular rank against exact rank on the same matrices
    use pilab_core::codim::{ArithMode, EngineOptions};
    let exact_engine = Engine::new(EngineOptions {
        arithmetic: ArithMode::Exact,
        ..engine_options_like(engine)
    });
    let modular_engine = Engine::new(EngineOptions {
        arithmetic: ArithMode::Modular,
        ..engine_options_like(engine)
    });
    for n in degrees.lo..=degrees.hi.min(5) {
        let kind = engine
            .options()
            .spanning
            .unwrap_or(target.default_span_kind());
        let e = exact_engine.rank_with_spanning(target, n, kind)?;
        let m = modular_engine.rank_with_spanning(target, n, kind)?;
        let name = format!("modular_vs_exact_rank(n={n})");
        if e == m {
            records.push(CheckRecord::pass(name));
        } else {
            records.push(CheckRecord::fail(
                name,
                json!({"exact": e, "modular": m, "prime": modular_engine.prime().to_string()}),
            ));
        }
    }
    Ok(records)
}

fn engine_options_like(engine: &Engine) -> pilab_core::codim::EngineOptions {
    engine.options().clone()
}
