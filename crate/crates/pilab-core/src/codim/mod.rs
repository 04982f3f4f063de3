//! The central engine: evaluation targets, codimensions, graded
//! codimensions, cocharacters and traces, generic over exact rational or
//! prime-field arithmetic.

pub mod checks;
mod cocharacter;
mod matrix;
mod quotient;
pub mod report;

pub use cocharacter::{
    colength, CocharacterDecomposition, GradedCocharacter,
};
pub use matrix::{build_eval_matrix, entry_bytes_estimate, logical_shape, ColumnKey, EvalMatrix};
pub use quotient::QuotientModule;

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebras::{AlgebraClass, AlgebraSpec};
use crate::exactlin::{random_prime_62, Fp, Scalar};
use crate::freealg::{SpanKind, SpanningSet, VarSpec};
use crate::partitions::{CharacterTable, CycleType};
use crate::perm::Permutation;
use crate::Error;

/// What the evaluation map substitutes into: the algebra itself, or the
/// Grassmann envelope of a graded Lie algebra.
#[derive(Clone, Debug)]
pub enum EvaluationTarget {
    Algebra(Arc<AlgebraSpec>),
    Envelope(Arc<AlgebraSpec>),
}

impl EvaluationTarget {
    pub fn plain(algebra: Arc<AlgebraSpec>) -> EvaluationTarget {
        EvaluationTarget::Algebra(algebra)
    }

    /// Envelope targets need a certified Lie algebra with an explicit
    /// grading (an all-even grading is allowed and collapses to the plain
    /// algebra).
    pub fn envelope(algebra: Arc<AlgebraSpec>) -> Result<EvaluationTarget, Error> {
        if algebra.class() != AlgebraClass::Lie {
            return Err(Error::ClassValidation(format!(
                "envelope target needs a Lie algebra, {} is {}",
                algebra.name(),
                algebra.class().label()
            )));
        }
        if !algebra.has_grading() {
            return Err(Error::GradingRequired(format!(
                "envelope of {} requested but the algebra declares no grading",
                algebra.name()
            )));
        }
        Ok(EvaluationTarget::Envelope(algebra))
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        match self {
            EvaluationTarget::Algebra(a) | EvaluationTarget::Envelope(a) => a,
        }
    }

    pub fn is_envelope(&self) -> bool {
        matches!(self, EvaluationTarget::Envelope(_))
    }

    pub fn describe(&self) -> String {
        match self {
            EvaluationTarget::Algebra(a) => a.name().to_string(),
            EvaluationTarget::Envelope(a) => format!("envelope({})", a.name()),
        }
    }

    /// Spanning-set policy: targets satisfying (super-)anticommutativity and
    /// (super-)Jacobi are evaluated on the left-normed set; plain
    /// nonassociative targets need all bracketings.
    pub fn default_span_kind(&self) -> SpanKind {
        match self {
            EvaluationTarget::Algebra(a) if a.class() == AlgebraClass::Nonassociative => {
                SpanKind::AllBracketings
            }
            _ => SpanKind::LeftNormed,
        }
    }

    fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        let a = self.algebra();
        a.name().hash(&mut h);
        a.dim().hash(&mut h);
        for i in 0..a.dim() {
            a.parity(i).hash(&mut h);
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    a.structure_constant(i, j, k).to_string().hash(&mut h);
                }
            }
        }
        self.is_envelope().hash(&mut h);
        h.finish()
    }
}

/// Arithmetic backing the linear algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithMode {
    /// Exact rationals throughout.
    Exact,
    /// A seeded random 62-bit prime field.
    Modular,
    /// Prime field, with every rank recomputed exactly and compared.
    ModularVerified,
}

impl ArithMode {
    pub fn label(&self) -> &'static str {
        match self {
            ArithMode::Exact => "exact",
            ArithMode::Modular => "modular",
            ArithMode::ModularVerified => "modular-verified",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ArithMode::Exact)
    }
}

impl std::str::FromStr for ArithMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<ArithMode, Error> {
        match s {
            "exact" => Ok(ArithMode::Exact),
            "modular" => Ok(ArithMode::Modular),
            "modular-verified" => Ok(ArithMode::ModularVerified),
            other => Err(Error::Parse(format!("unknown arithmetic mode `{other}`"))),
        }
    }
}

/// Engine configuration.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub arithmetic: ArithMode,
    /// Overrides the per-target spanning-set policy.
    pub spanning: Option<SpanKind>,
    /// Seeds the modular prime and every randomized check.
    pub seed: u64,
    /// Cap on the estimated dense size of any single evaluation matrix.
    pub budget_mb: u64,
    /// Worker threads for matrix construction and trace extraction
    /// (`None`: rayon's default).
    pub threads: Option<usize>,
}

impl Default for EngineOptions {
    fn default() -> EngineOptions {
        EngineOptions {
            arithmetic: ArithMode::Exact,
            spanning: None,
            seed: 0,
            budget_mb: 4096,
            threads: None,
        }
    }
}

/// Result of analyzing one ordinary degree.
#[derive(Clone, Debug)]
pub struct OrdinaryAnalysis {
    pub degree: u32,
    pub codimension: u64,
    pub cocharacter: CocharacterDecomposition,
}

/// Result of analyzing one graded signature.
#[derive(Clone, Debug)]
pub struct GradedAnalysis {
    pub even_degree: u32,
    pub odd_degree: u32,
    pub codimension: u64,
    pub cocharacter: GradedCocharacter,
}

/// Trace of a permutation on the quotient, in the engine's arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceValue {
    Exact(BigRational),
    Modular { value: u64, prime: u64 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum CacheKey {
    Ordinary(u64, SpanKind, u32),
    Graded(u64, SpanKind, u32, u32),
}

enum CacheValue {
    Ordinary(Arc<OrdinaryAnalysis>),
    Graded(Arc<GradedAnalysis>),
}

/// The computation engine. Holds the arithmetic configuration, the seeded
/// prime and a cache of per-degree analyses; all methods are safe to call
/// concurrently.
pub struct Engine {
    options: EngineOptions,
    prime: u64,
    pool: Option<rayon::ThreadPool>,
    cache: Mutex<HashMap<CacheKey, CacheValue>>,
}

impl Engine {
    pub fn new(options: EngineOptions) -> Engine {
        let prime = random_prime_62(options.seed);
        let pool = options.threads.map(|t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool")
        });
        Engine {
            options,
            prime,
            pool,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_defaults() -> Engine {
        Engine::new(EngineOptions::default())
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    /// The prime backing modular runs (fixed by the seed).
    pub fn prime(&self) -> u64 {
        self.prime
    }

    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn span_kind(&self, target: &EvaluationTarget) -> SpanKind {
        self.options.spanning.unwrap_or(target.default_span_kind())
    }

    /// `c_n`: the rank of the ordinary evaluation matrix.
    pub fn codimension(&self, target: &EvaluationTarget, n: u32) -> Result<u64, Error> {
        Ok(self.ordinary_analysis(target, n)?.codimension)
    }

    /// The cocharacter decomposition of `P_n` modulo the target's
    /// identities.
    pub fn cocharacter(
        &self,
        target: &EvaluationTarget,
        n: u32,
    ) -> Result<CocharacterDecomposition, Error> {
        Ok(self.ordinary_analysis(target, n)?.cocharacter.clone())
    }

    /// The graded cocharacter at a fixed signature.
    pub fn graded_cocharacter(
        &self,
        target: &EvaluationTarget,
        even: u32,
        odd: u32,
    ) -> Result<GradedCocharacter, Error> {
        Ok(self.graded_analysis(target, even, odd)?.cocharacter.clone())
    }

    /// Codimension together with the cocharacter decomposition; cached.
    pub fn ordinary_analysis(
        &self,
        target: &EvaluationTarget,
        n: u32,
    ) -> Result<Arc<OrdinaryAnalysis>, Error> {
        if n == 0 {
            return Err(Error::Parse("degree must be at least 1".to_string()));
        }
        let kind = self.span_kind(target);
        let key = CacheKey::Ordinary(target.fingerprint(), kind, n);
        if let Some(CacheValue::Ordinary(hit)) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let analysis = self.install(|| match self.options.arithmetic {
            ArithMode::Exact => self.ordinary_generic::<BigRational>(&(), target, n),
            ArithMode::Modular => self.ordinary_generic::<Fp>(&self.prime, target, n),
            ArithMode::ModularVerified => {
                let a = self.ordinary_generic::<Fp>(&self.prime, target, n)?;
                self.verify_rank(target, VarSpec::Ordinary { n: n as usize }, a.codimension)?;
                Ok(a)
            }
        })?;
        let arc = Arc::new(analysis);
        self.cache
            .lock()
            .unwrap()
            .insert(key, CacheValue::Ordinary(arc.clone()));
        Ok(arc)
    }

    /// `c_{q,m}`: rank of the evaluation matrix with even variables ranging
    /// over the even part and odd variables over the odd part.
    pub fn graded_codimension_part(
        &self,
        target: &EvaluationTarget,
        even: u32,
        odd: u32,
    ) -> Result<u64, Error> {
        Ok(self.graded_analysis(target, even, odd)?.codimension)
    }

    /// Graded part with its cocharacter; cached.
    pub fn graded_analysis(
        &self,
        target: &EvaluationTarget,
        even: u32,
        odd: u32,
    ) -> Result<Arc<GradedAnalysis>, Error> {
        if even + odd == 0 {
            return Err(Error::Parse(
                "graded signature must have at least one variable".to_string(),
            ));
        }
        let kind = self.span_kind(target);
        let key = CacheKey::Graded(target.fingerprint(), kind, even, odd);
        if let Some(CacheValue::Graded(hit)) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let vars = VarSpec::Graded {
            even: even as usize,
            odd: odd as usize,
        };
        let analysis = self.install(|| match self.options.arithmetic {
            ArithMode::Exact => self.graded_generic::<BigRational>(&(), target, even, odd),
            ArithMode::Modular => self.graded_generic::<Fp>(&self.prime, target, even, odd),
            ArithMode::ModularVerified => {
                let a = self.graded_generic::<Fp>(&self.prime, target, even, odd)?;
                self.verify_rank(target, vars, a.codimension)?;
                Ok(a)
            }
        })?;
        let arc = Arc::new(analysis);
        self.cache
            .lock()
            .unwrap()
            .insert(key, CacheValue::Graded(arc.clone()));
        Ok(arc)
    }

    /// `c_n^gr = sum_q binomial(n, q) c_{q, n-q}`.
    pub fn graded_codimension(&self, target: &EvaluationTarget, n: u32) -> Result<BigUint, Error> {
        if n == 0 {
            return Err(Error::Parse("degree must be at least 1".to_string()));
        }
        let mut total = BigUint::zero();
        for q in 0..=n {
            let part = self.graded_codimension_part(target, q, n - q)?;
            total += binomial(n, q) * BigUint::from(part);
        }
        Ok(total)
    }

    /// Trace of a permutation acting on `P_n` modulo the target's
    /// identities. A class function of the cycle type.
    pub fn trace_on_quotient(
        &self,
        target: &EvaluationTarget,
        n: u32,
        sigma: &Permutation,
    ) -> Result<TraceValue, Error> {
        if sigma.len() != n as usize {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {} symbols at degree {n}",
                sigma.len()
            )));
        }
        let kind = self.span_kind(target);
        let span = SpanningSet::generate(kind, VarSpec::Ordinary { n: n as usize });
        self.install(|| match self.options.arithmetic {
            ArithMode::Exact => {
                let q = self.quotient::<BigRational>(&(), target, &span, false)?;
                Ok(TraceValue::Exact(q.trace(&span, sigma)?))
            }
            ArithMode::Modular | ArithMode::ModularVerified => {
                let q = self.quotient::<Fp>(&self.prime, target, &span, false)?;
                let t = q.trace(&span, sigma)?;
                Ok(TraceValue::Modular {
                    value: t.value(),
                    prime: self.prime,
                })
            }
        })
    }

    /// Trace of `(sigma_even, sigma_odd)` on a graded part.
    pub fn trace_on_graded_quotient(
        &self,
        target: &EvaluationTarget,
        even: u32,
        odd: u32,
        sigma_even: &Permutation,
        sigma_odd: &Permutation,
    ) -> Result<TraceValue, Error> {
        if sigma_even.len() != even as usize || sigma_odd.len() != odd as usize {
            return Err(Error::ParityMismatch(
                "permutation pair does not match the signature".to_string(),
            ));
        }
        let sigma = Permutation::from_pair(sigma_even, sigma_odd);
        let kind = self.span_kind(target);
        let span = SpanningSet::generate(
            kind,
            VarSpec::Graded {
                even: even as usize,
                odd: odd as usize,
            },
        );
        self.install(|| match self.options.arithmetic {
            ArithMode::Exact => {
                let q = self.quotient::<BigRational>(&(), target, &span, false)?;
                Ok(TraceValue::Exact(q.trace(&span, &sigma)?))
            }
            ArithMode::Modular | ArithMode::ModularVerified => {
                let q = self.quotient::<Fp>(&self.prime, target, &span, false)?;
                let t = q.trace(&span, &sigma)?;
                Ok(TraceValue::Modular {
                    value: t.value(),
                    prime: self.prime,
                })
            }
        })
    }

    fn quotient<S: Scalar + Hash + Eq>(
        &self,
        ctx: &S::Ctx,
        target: &EvaluationTarget,
        span: &SpanningSet,
        track_kernel: bool,
    ) -> Result<QuotientModule<S>, Error> {
        let matrix = build_eval_matrix::<S>(
            ctx,
            target,
            span,
            Some(self.options.budget_mb),
            self.options.arithmetic.is_exact(),
        )?;
        if track_kernel {
            QuotientModule::build_with_kernel(&matrix)
        } else {
            QuotientModule::build(&matrix)
        }
    }

    fn ordinary_generic<S: Scalar + Hash + Eq>(
        &self,
        ctx: &S::Ctx,
        target: &EvaluationTarget,
        n: u32,
    ) -> Result<OrdinaryAnalysis, Error> {
        let kind = self.span_kind(target);
        let span = SpanningSet::generate(kind, VarSpec::Ordinary { n: n as usize });
        let quotient = self.quotient::<S>(ctx, target, &span, false)?;
        let codimension = quotient.rank() as u64;
        let table = CharacterTable::new(n);
        let traces: Vec<S> = table
            .partitions()
            .par_iter()
            .map(|mu| {
                let rep = Permutation::class_representative(&CycleType::new(mu.clone()));
                quotient.trace(&span, &rep)
            })
            .collect::<Result<_, _>>()?;
        let entries = cocharacter::ordinary_multiplicities(ctx, &table, &traces)?;
        let cocharacter = CocharacterDecomposition::new(n, entries);
        let expected = cocharacter.dimension_sum();
        if expected != BigUint::from(codimension) {
            return Err(Error::InternalInconsistency(format!(
                "multiplicity reconstruction gives {expected}, rank is {codimension} ({} degree {n})",
                target.describe()
            )));
        }
        Ok(OrdinaryAnalysis {
            degree: n,
            codimension,
            cocharacter,
        })
    }

    fn graded_generic<S: Scalar + Hash + Eq>(
        &self,
        ctx: &S::Ctx,
        target: &EvaluationTarget,
        even: u32,
        odd: u32,
    ) -> Result<GradedAnalysis, Error> {
        let kind = self.span_kind(target);
        let span = SpanningSet::generate(
            kind,
            VarSpec::Graded {
                even: even as usize,
                odd: odd as usize,
            },
        );
        let quotient = self.quotient::<S>(ctx, target, &span, false)?;
        let codimension = quotient.rank() as u64;
        let even_table = CharacterTable::new(even);
        let odd_table = CharacterTable::new(odd);
        let pairs: Vec<(usize, usize)> = (0..even_table.partitions().len())
            .flat_map(|a| (0..odd_table.partitions().len()).map(move |b| (a, b)))
            .collect();
        let flat: Vec<S> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let rep_even = Permutation::class_representative(&CycleType::new(
                    even_table.partitions()[a].clone(),
                ));
                let rep_odd = Permutation::class_representative(&CycleType::new(
                    odd_table.partitions()[b].clone(),
                ));
                let sigma = Permutation::from_pair(&rep_even, &rep_odd);
                quotient.trace(&span, &sigma)
            })
            .collect::<Result<_, _>>()?;
        let n_odd = odd_table.partitions().len();
        let traces: Vec<Vec<S>> = flat.chunks(n_odd).map(|c| c.to_vec()).collect();
        let entries = cocharacter::graded_multiplicities(ctx, &even_table, &odd_table, &traces)?;
        let cocharacter = GradedCocharacter::new(even, odd, entries);
        let expected = cocharacter.dimension_sum();
        if expected != BigUint::from(codimension) {
            return Err(Error::InternalInconsistency(format!(
                "multiplicity reconstruction gives {expected}, rank is {codimension} ({} signature ({even},{odd}))",
                target.describe()
            )));
        }
        Ok(GradedAnalysis {
            even_degree: even,
            odd_degree: odd,
            codimension,
            cocharacter,
        })
    }

    /// Recomputes the rank exactly (fraction-free over Q) and compares with
    /// the modular value.
    fn verify_rank(
        &self,
        target: &EvaluationTarget,
        vars: VarSpec,
        modular_rank: u64,
    ) -> Result<(), Error> {
        let kind = self.span_kind(target);
        let span = SpanningSet::generate(kind, vars);
        let matrix = build_eval_matrix::<BigRational>(
            &(),
            target,
            &span,
            Some(self.options.budget_mb),
            true,
        )?;
        let (dense, _) = matrix.compact();
        let exact = dense.rank();
        if exact as u64 != modular_rank {
            return Err(Error::VerificationMismatch {
                exact,
                modular: modular_rank as usize,
                prime: self.prime,
            });
        }
        Ok(())
    }

    /// Rank of the evaluation matrix over an explicitly chosen spanning set,
    /// in the engine's arithmetic; used to compare the left-normed policy
    /// against the full bracketing set.
    pub fn rank_with_spanning(
        &self,
        target: &EvaluationTarget,
        n: u32,
        kind: SpanKind,
    ) -> Result<u64, Error> {
        if n == 0 {
            return Err(Error::Parse("degree must be at least 1".to_string()));
        }
        let span = SpanningSet::generate(kind, VarSpec::Ordinary { n: n as usize });
        self.install(|| match self.options.arithmetic {
            ArithMode::Exact => Ok(self
                .quotient::<BigRational>(&(), target, &span, false)?
                .rank() as u64),
            ArithMode::Modular => {
                Ok(self.quotient::<Fp>(&self.prime, target, &span, false)?.rank() as u64)
            }
            ArithMode::ModularVerified => {
                let r = self.quotient::<Fp>(&self.prime, target, &span, false)?.rank() as u64;
                let matrix = build_eval_matrix::<BigRational>(
                    &(),
                    target,
                    &span,
                    Some(self.options.budget_mb),
                    true,
                )?;
                let exact = matrix.compact().0.rank();
                if exact as u64 != r {
                    return Err(Error::VerificationMismatch {
                        exact,
                        modular: r as usize,
                        prime: self.prime,
                    });
                }
                Ok(r)
            }
        })
    }
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut out = BigUint::from(1u32);
    for i in 0..k {
        out = out * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    out
}
