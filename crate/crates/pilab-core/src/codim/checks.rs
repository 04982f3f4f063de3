//! Structural checks on computed decompositions: hook constraints, colength
//! and sandwich bounds, conjugate duality between an algebra and its
//! envelope, and the tilde identity correspondence.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebras::AlgebraSpec;
use crate::exactlin::DenseMatrix;
use crate::freealg::{tilde, Polynomial, SpanKind, SpanningSet, VarSpec};
use crate::partitions::{enumerate_partitions, HookSpec, Partition};
use crate::rng::SplitMix64;
use crate::Error;

use super::matrix::build_eval_matrix;
use super::quotient::QuotientModule;
use super::{CocharacterDecomposition, Engine, EvaluationTarget, GradedCocharacter};

/// First partition with nonzero multiplicity outside the hook, or `None`
/// when the whole decomposition fits.
pub fn check_hook_constraint(
    decomposition: &CocharacterDecomposition,
    hook: HookSpec,
) -> Option<Partition> {
    decomposition
        .entries()
        .find(|(shape, _)| !shape.in_hook(hook))
        .map(|(shape, _)| shape.clone())
}

/// Componentwise hook check for graded decompositions: the even shape must
/// lie in `even_hook` and the odd shape in `odd_hook`.
pub fn check_graded_hooks(
    decomposition: &GradedCocharacter,
    even_hook: HookSpec,
    odd_hook: HookSpec,
) -> Option<(Partition, Partition)> {
    decomposition
        .entries()
        .find(|((even, odd), _)| !even.in_hook(even_hook) || !odd.in_hook(odd_hook))
        .map(|(pair, _)| pair.clone())
}

/// Two-sided comparison `max d <= c_n <= l_n * max d`.
#[derive(Clone, Debug)]
pub struct SandwichCheck {
    pub max_dimension: BigUint,
    pub codimension: u64,
    pub upper: BigUint,
    pub pass: bool,
}

pub fn eq6_sandwich(codimension: u64, decomposition: &CocharacterDecomposition) -> SandwichCheck {
    let max_dimension = decomposition.max_dimension();
    let upper = &max_dimension * BigUint::from(decomposition.colength());
    let c = BigUint::from(codimension);
    SandwichCheck {
        pass: max_dimension <= c && c <= upper,
        max_dimension,
        codimension,
        upper,
    }
}

pub fn eq6_sandwich_graded(codimension: u64, decomposition: &GradedCocharacter) -> SandwichCheck {
    let max_dimension = decomposition.max_dimension();
    let upper = &max_dimension * BigUint::from(decomposition.colength());
    let c = BigUint::from(codimension);
    SandwichCheck {
        pass: max_dimension <= c && c <= upper,
        max_dimension,
        codimension,
        upper,
    }
}

/// Comparison of the colength against `(k+l) * 2^(2kl) * n^(k^2+l^2+kl)`.
#[derive(Clone, Debug)]
pub struct ColengthBoundCheck {
    pub colength: u64,
    pub bound: BigUint,
    pub pass: bool,
}

pub fn colength_bound_value(n: u32, k: u32, l: u32) -> BigUint {
    let mut bound = BigUint::from(k + l);
    bound <<= (2 * k * l) as usize;
    let exponent = k * k + l * l + k * l;
    let base = BigUint::from(n);
    let mut power = BigUint::one();
    for _ in 0..exponent {
        power *= &base;
    }
    bound * power
}

/// Checks `l_n < (k+l) 2^(2kl) n^(k^2+l^2+kl)` for a decomposition coming
/// from the envelope of a (k,l)-graded algebra.
pub fn check_colength_bound(
    decomposition: &CocharacterDecomposition,
    k: u32,
    l: u32,
) -> ColengthBoundCheck {
    let bound = colength_bound_value(decomposition.degree(), k, l);
    let colength = decomposition.colength();
    ColengthBoundCheck {
        colength,
        pass: BigUint::from(colength) < bound,
        bound,
    }
}

/// A multiplicity pair violating `m_{lambda,mu}(L) = m_{lambda,mu'}(G(L))`.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub even: Partition,
    pub odd: Partition,
    pub algebra_multiplicity: u64,
    pub envelope_multiplicity: u64,
}

/// Compares the graded cocharacter of the algebra at signature `(q, m)`
/// with the envelope's, conjugating the odd shape.
pub fn check_conjugate_duality(
    engine: &Engine,
    algebra: &Arc<AlgebraSpec>,
    q: u32,
    m: u32,
) -> Result<Option<DualityWitness>, Error> {
    let plain = EvaluationTarget::plain(algebra.clone());
    let env = EvaluationTarget::envelope(algebra.clone())?;
    let a = engine.graded_analysis(&plain, q, m)?;
    let e = engine.graded_analysis(&env, q, m)?;
    for lambda in enumerate_partitions(q) {
        for mu in enumerate_partitions(m) {
            let lhs = a.cocharacter.multiplicity(&lambda, &mu);
            let rhs = e.cocharacter.multiplicity(&lambda, &mu.conjugate());
            if lhs != rhs {
                return Ok(Some(DualityWitness {
                    even: lambda,
                    odd: mu,
                    algebra_multiplicity: lhs,
                    envelope_multiplicity: rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// Outcome of the randomized tilde correspondence check.
#[derive(Clone, Debug)]
pub struct TildeCheckReport {
    pub cases: usize,
    pub identities_seen: usize,
    pub witness: Option<String>,
}

impl TildeCheckReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

struct SignatureData {
    span: SpanningSet,
    rows_algebra: DenseMatrix<BigRational>,
    rows_envelope: DenseMatrix<BigRational>,
    kernel: Vec<Vec<(usize, BigRational)>>,
}

fn signature_data(
    engine: &Engine,
    algebra: &Arc<AlgebraSpec>,
    q: u32,
    m: u32,
) -> Result<SignatureData, Error> {
    let vars = VarSpec::Graded {
        even: q as usize,
        odd: m as usize,
    };
    let plain = EvaluationTarget::plain(algebra.clone());
    let env = EvaluationTarget::envelope(algebra.clone())?;
    let kind = engine
        .options()
        .spanning
        .unwrap_or(plain.default_span_kind());
    let span = SpanningSet::generate(kind, vars);
    let m_alg =
        build_eval_matrix::<BigRational>(&(), &plain, &span, Some(engine.options().budget_mb), true)?;
    let m_env =
        build_eval_matrix::<BigRational>(&(), &env, &span, Some(engine.options().budget_mb), true)?;
    let quotient = QuotientModule::build_with_kernel(&m_alg)?;
    let kernel = quotient.kernel_seeds().to_vec();
    let (rows_algebra, _) = m_alg.compact();
    let (rows_envelope, _) = m_env.compact();
    Ok(SignatureData {
        span,
        rows_algebra,
        rows_envelope,
        kernel,
    })
}

fn combination_is_zero(rows: &DenseMatrix<BigRational>, coeffs: &[(usize, BigRational)]) -> bool {
    let cols = rows.cols();
    let mut acc = vec![BigRational::zero(); cols];
    for (row, c) in coeffs {
        for (j, cell) in acc.iter_mut().enumerate() {
            let v = rows.get(*row, j);
            if !Zero::is_zero(v) {
                *cell += v * c;
            }
        }
    }
    acc.iter().all(Zero::is_zero)
}

/// For random multilinear graded polynomials `f`: `f` is a graded identity
/// of the algebra exactly when `tilde(f)` is a graded identity of its
/// envelope, in both directions, and `tilde` is an involution. Roughly half
/// of the samples are drawn from the kernel of the algebra's evaluation map
/// so genuine identities are exercised. Runs in exact arithmetic.
pub fn check_tilde_identity_correspondence(
    engine: &Engine,
    algebra: &Arc<AlgebraSpec>,
    budget: usize,
    max_degree: u32,
) -> Result<TildeCheckReport, Error> {
    let mut rng = SplitMix64::new(engine.options().seed ^ 0x74696c6465);
    let mut signatures: Vec<(u32, u32)> = Vec::new();
    for total in 2..=max_degree {
        for q in 0..=total {
            signatures.push((q, total - q));
        }
    }
    let mut cache: HashMap<(u32, u32), SignatureData> = HashMap::new();
    let mut identities_seen = 0usize;
    for case in 0..budget {
        let (q, m) = signatures[rng.below(signatures.len() as u64) as usize];
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((q, m)) {
            e.insert(signature_data(engine, algebra, q, m)?);
        }
        let data = &cache[&(q, m)];
        let vars = data.span.vars();

        // sample a sparse coefficient vector over span rows
        let coeffs: Vec<(usize, BigRational)> = if case % 2 == 1 && !data.kernel.is_empty() {
            // combination of up to three kernel relations: a guaranteed identity
            let mut combo: HashMap<usize, BigRational> = HashMap::new();
            let picks = 1 + rng.below(3) as usize;
            for _ in 0..picks {
                let seed = &data.kernel[rng.below(data.kernel.len() as u64) as usize];
                let scale = BigRational::from_integer(rng.range_inclusive(1, 3).into());
                for (row, c) in seed {
                    *combo.entry(*row).or_insert_with(BigRational::zero) += c * &scale;
                }
            }
            combo.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        } else {
            let terms = 1 + rng.below(4) as usize;
            let mut combo: HashMap<usize, BigRational> = HashMap::new();
            for _ in 0..terms {
                let row = rng.below(data.span.len() as u64) as usize;
                let c = BigRational::from_integer(rng.range_inclusive(-3, 3).into());
                *combo.entry(row).or_insert_with(BigRational::zero) += c;
            }
            combo.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };

        let mut f = Polynomial::zero(vars);
        for (row, c) in &coeffs {
            f.add_term(data.span.monomial(*row), c.clone())?;
        }

        // involutivity
        let tf = tilde(&f)?;
        if tilde(&tf)? != f {
            return Ok(TildeCheckReport {
                cases: case + 1,
                identities_seen,
                witness: Some(format!("tilde not involutive on {}", f.display())),
            });
        }

        let tf_coeffs: Vec<(usize, BigRational)> = tf
            .terms()
            .map(|(mono, c)| {
                (
                    data.span.index_of(mono).expect("monomial from the span"),
                    c.clone(),
                )
            })
            .collect();

        let id_l = combination_is_zero(&data.rows_algebra, &coeffs);
        let id_env_tf = combination_is_zero(&data.rows_envelope, &tf_coeffs);
        if id_l != id_env_tf {
            return Ok(TildeCheckReport {
                cases: case + 1,
                identities_seen,
                witness: Some(format!(
                    "signature ({q},{m}): f identity of algebra = {id_l}, tilde(f) identity of envelope = {id_env_tf}, f = {}",
                    f.display()
                )),
            });
        }
        // and the inverse direction, reading f as a super-side polynomial
        let id_env_f = combination_is_zero(&data.rows_envelope, &coeffs);
        let id_l_tf = combination_is_zero(&data.rows_algebra, &tf_coeffs);
        if id_env_f != id_l_tf {
            return Ok(TildeCheckReport {
                cases: case + 1,
                identities_seen,
                witness: Some(format!(
                    "signature ({q},{m}): f identity of envelope = {id_env_f}, tilde(f) identity of algebra = {id_l_tf}, f = {}",
                    f.display()
                )),
            });
        }
        if id_l {
            identities_seen += 1;
        }
    }
    Ok(TildeCheckReport {
        cases: budget,
        identities_seen,
        witness: None,
    })
}

/// Ranks of the evaluation matrix over the left-normed and the full
/// bracketing spanning sets, in the engine's arithmetic.
pub fn spanning_rank_comparison(
    engine: &Engine,
    target: &EvaluationTarget,
    n: u32,
) -> Result<(u64, u64), Error> {
    let ln = engine.rank_with_spanning(target, n, SpanKind::LeftNormed)?;
    let ab = engine.rank_with_spanning(target, n, SpanKind::AllBracketings)?;
    Ok((ln, ab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codim::EngineOptions;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn hook_constraint_reports_witness() {
        let empty = CocharacterDecomposition::empty(4);
        assert!(check_hook_constraint(&empty, HookSpec::new(1, 1)).is_none());
        let mut entries = std::collections::BTreeMap::new();
        entries.insert(pt(&[4, 4]), 1u64);
        let d = CocharacterDecomposition::new(8, entries);
        assert_eq!(
            check_hook_constraint(&d, HookSpec::new(1, 2)),
            Some(pt(&[4, 4]))
        );
        assert!(check_hook_constraint(&d, HookSpec::new(2, 0)).is_none());
    }

    #[test]
    fn colength_bound_instantiation() {
        // k = l = 1, n = 4: 2 * 4 * 4^3 = 512
        assert_eq!(colength_bound_value(4, 1, 1), BigUint::from(512u32));
        let mut entries = std::collections::BTreeMap::new();
        entries.insert(pt(&[3, 1]), 1u64);
        let d = CocharacterDecomposition::new(4, entries);
        let check = check_colength_bound(&d, 1, 1);
        assert!(check.pass);
        assert_eq!(check.colength, 1);
        // empty decomposition passes trivially
        let check0 = check_colength_bound(&CocharacterDecomposition::empty(4), 1, 1);
        assert!(check0.pass);
    }

    #[test]
    fn sandwich_on_fixture() {
        let mut entries = std::collections::BTreeMap::new();
        entries.insert(pt(&[3, 1]), 1u64);
        let d = CocharacterDecomposition::new(4, entries);
        // c_4 = 3 = d_(3,1)
        let s = eq6_sandwich(3, &d);
        assert!(s.pass);
        let bad = eq6_sandwich(7, &d);
        assert!(!bad.pass);
    }

    #[test]
    fn plain_graded_cocharacters_fit_the_strip_pair() {
        // graded cocharacters of a (k,l)-graded algebra lie in
        // (H(k,0), H(l,0))
        let engine = Engine::new(EngineOptions::default());
        for name in ["metabelian", "sl2-cartan", "heisenberg"] {
            let target = EvaluationTarget::plain(AlgebraSpec::builtin(name).unwrap());
            let (k, l) = target.algebra().graded_dims();
            for total in 1..=4u32 {
                for q in 0..=total {
                    let a = engine.graded_analysis(&target, q, total - q).unwrap();
                    assert_eq!(
                        check_graded_hooks(
                            &a.cocharacter,
                            HookSpec::new(k as u32, 0),
                            HookSpec::new(l as u32, 0)
                        ),
                        None,
                        "{name} ({q},{})",
                        total - q
                    );
                }
            }
        }
    }

    #[test]
    fn duality_on_metabelian_small() {
        let engine = Engine::new(EngineOptions::default());
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        for q in 0..=2u32 {
            for m in 0..=2u32 {
                if q + m == 0 {
                    continue;
                }
                let w = check_conjugate_duality(&engine, &alg, q, m).unwrap();
                assert!(w.is_none(), "({q},{m}): {w:?}");
            }
        }
    }

    #[test]
    fn tilde_correspondence_small_budget() {
        let engine = Engine::new(EngineOptions::default());
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        let report = check_tilde_identity_correspondence(&engine, &alg, 60, 4).unwrap();
        assert!(report.passed(), "{:?}", report.witness);
        assert!(report.identities_seen > 0, "kernel sampling found nothing");
    }

    #[test]
    fn spanning_ranks_agree_on_lie_targets() {
        let engine = Engine::new(EngineOptions::default());
        let t = EvaluationTarget::plain(AlgebraSpec::builtin("sl2-cartan").unwrap());
        for n in 2..=4u32 {
            let (ln, ab) = spanning_rank_comparison(&engine, &t, n).unwrap();
            assert_eq!(ln, ab, "n = {n}");
        }
    }
}
