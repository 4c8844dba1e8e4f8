//! Implicitization over ℚ by computing modulo many primes, combining the
//! answers with the Chinese remainder theorem and recovering rational
//! coefficients by fault-tolerant reconstruction.
//!
//! Bad primes (whose modular answer is not the image of the true one) are
//! handled in two ways: a size comparison between answers discards the
//! detectably wrong ones, and the reconstruction tolerates a minority of
//! undetected ones. Every result is verified by exact substitution.

mod guess;
mod verify;

pub use guess::{single_prime_guess, GuessFailure, MAX_RESAMPLES, SAMPLE_RANGE};
pub use verify::{random_check, random_point, verify, verify_with_precheck, PRECHECK_POINTS, PRECHECK_RANGE};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::coeff::{crt_combine, hrr, Reconstruction, Residue, Zp, QQ, DEFAULT_RELIABILITY_BITS};
use crate::direct::{build_direct_ordering, DirectOptions};
use crate::parse::{ParamSystem, Parametrization};
use crate::ratpar::{rat_par, Engine, ImplicitError, RatParContext, Signature};
use crate::ring::{Polynomial, PowerProduct, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error(transparent)]
    Implicit(#[from] ImplicitError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("the prime pool is exhausted")]
    PrimePoolExhausted,
    #[error("the session uses {session} but the image was computed with {image}")]
    EngineMismatch { session: Engine, image: Engine },
    #[error("the modular method needs the ElimTH or Direct engine, not {0}")]
    UnsupportedEngine(Engine),
    #[error("{0} is unsuitable for this system")]
    UnsuitablePrime(u64),
    #[error("no relation was found modulo {0}")]
    NoRelation(u64),
}

/// Why a prime cannot be used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Some coordinate is outside the domain of reduction modulo `p`:
    /// `p` divides a coefficient denominator.
    UnsuitableDomain,
    /// Some coordinate reduces to zero, or a numerator or denominator
    /// loses degree modulo `p`.
    UnsuitableDegree,
    Suitable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeClass {
    pub prime: u64,
    pub verdict: Verdict,
}

impl PrimeClass {
    pub fn is_suitable(&self) -> bool {
        self.verdict == Verdict::Suitable
    }
}

fn reduces_faithfully(f: &Polynomial<QQ>, zp: &Zp) -> Result<Polynomial<Zp>, Verdict> {
    let r = f.reduce_mod(zp).ok_or(Verdict::UnsuitableDomain)?;
    if r.total_degree() < f.total_degree() || r.is_zero() != f.is_zero() {
        return Err(Verdict::UnsuitableDegree);
    }
    Ok(r)
}

/// Classify `p` for `sys`: each reduced fraction `num/den` must reduce
/// modulo `p` with no denominator divisible by `p`, a non-zero image and
/// unchanged numerator and denominator degrees. The common-denominator
/// form is held to the same degree condition so that every suitable prime
/// sees the same homogenized system.
pub fn classify_prime(p: u64, sys: &ParamSystem) -> PrimeClass {
    let verdict = (|| {
        let zp = Zp::new(p).map_err(|_| Verdict::UnsuitableDomain)?;
        for (_, num, den) in sys.fractions() {
            let n = reduces_faithfully(num, &zp)?;
            reduces_faithfully(den, &zp)?;
            if n.is_zero() {
                return Err(Verdict::UnsuitableDegree);
            }
        }
        let par = sys.over_rationals();
        for f in par.numerators().iter().chain([par.denominator()]) {
            reduces_faithfully(f, &zp)?;
        }
        Ok(())
    })();
    PrimeClass {
        prime: p,
        verdict: verdict.err().unwrap_or(Verdict::Suitable),
    }
}

/// Engine and parameters shared by all primes of a modular computation.
#[derive(Clone, Debug)]
pub struct ModularOptions {
    pub engine: Engine,
    /// Options for Direct. When `ordering` is absent it is fixed once from
    /// the system over ℚ (after homogenization for rational input).
    pub direct: DirectOptions,
    /// Seed for the randomized checks and the single-prime sampling.
    pub seed: u64,
    pub reliability_bits: u64,
}

/// Default seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 0x5eed;

impl ModularOptions {
    pub fn new(engine: Engine) -> Self {
        ModularOptions {
            engine,
            direct: DirectOptions::default(),
            seed: DEFAULT_SEED,
            reliability_bits: DEFAULT_RELIABILITY_BITS,
        }
    }

    /// Fix the Direct ordering from the system over ℚ, so that every prime
    /// compares leading power-products under the same ordering.
    pub fn fixed_for(&self, sys: &ParamSystem) -> Result<Self, ModularError> {
        let mut out = self.clone();
        if self.engine == Engine::Direct && out.direct.ordering.is_none() {
            let par = sys.over_rationals();
            let ctx;
            let poly: &Parametrization<QQ> = if par.is_polynomial() {
                par
            } else {
                ctx = RatParContext::new(par)?;
                &ctx.system
            };
            let tau = out.direct.tau.clone().unwrap_or_else(|| poly.params().default_ordering());
            out.direct.ordering = Some(build_direct_ordering(poly, &tau).map_err(ImplicitError::from)?);
        }
        Ok(out)
    }
}

/// One modular answer: the monic `g_p` with the engine's size signature.
#[derive(Clone, Debug)]
pub struct ModularImage {
    pub prime: u64,
    pub engine: Engine,
    pub generator: Polynomial<Zp>,
    pub signature: Signature,
}

/// The monic generator (under the target ring's default ordering) of the
/// implicit ideal of the reduction of `sys` modulo `p`. For bad primes whose
/// modular ideal is not principal this is the first relation the engine
/// finds.
pub fn modular_implicitize(
    sys: &ParamSystem,
    p: u64,
    opts: &ModularOptions,
    budget: &Budget,
) -> Result<ModularImage, ModularError> {
    if opts.engine == Engine::Classical {
        return Err(ModularError::UnsupportedEngine(opts.engine));
    }
    if !classify_prime(p, sys).is_suitable() {
        return Err(ModularError::UnsuitablePrime(p));
    }
    let par = sys.over_prime(p).ok_or(ModularError::UnsuitablePrime(p))?;
    let out = rat_par(&par, opts.engine, &opts.direct, budget)?;
    let (Some(g), Some(sig)) = (out.generators.into_iter().next(), out.signature) else {
        return Err(ModularError::NoRelation(p));
    };
    Ok(ModularImage {
        prime: p,
        engine: opts.engine,
        generator: g,
        signature: sig,
    })
}

/// What to do with a new modular answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterDecision {
    /// The new answer is smaller, so its prime is surely bad.
    DiscardNew,
    /// The accumulated answers are smaller, so their primes are surely bad.
    ResetToNew,
    Accept,
}

/// Status of one reconstruction attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructionStatus {
    /// Some coefficient was not reliably reconstructed.
    Unreliable,
    /// Reconstructed, but the candidate failed verification.
    Rejected,
    Verified,
}

/// One line of the run log.
#[derive(Clone, Debug)]
pub struct PrimeRecord {
    pub prime: u64,
    pub class: Verdict,
    /// Support size and signature of `g_p`, when computed.
    pub image: Option<(usize, Signature)>,
    pub decision: Option<FilterDecision>,
    pub reconstruction: Option<ReconstructionStatus>,
}

impl fmt::Display for PrimeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prime={} class={:?}", self.prime, self.class)?;
        if let Some((len, sig)) = &self.image {
            let sig = match sig {
                Signature::Degree(d) => format!("degree:{d}"),
                Signature::Leading(v) => format!("leading:{v:?}").replace(' ', ""),
            };
            write!(f, " len={len} signature={sig}")?;
        }
        if let Some(d) = &self.decision {
            write!(f, " decision={d:?}")?;
        }
        if let Some(r) = &self.reconstruction {
            write!(f, " reconstruction={r:?}")?;
        }
        Ok(())
    }
}

/// Accumulated state of a modular computation: the product `π` of the
/// accepted primes and the coefficientwise CRT combination of their
/// answers, keyed by power-product (a power-product absent from an answer
/// contributes residue 0 for that prime).
#[derive(Clone, Debug)]
pub struct ModularSession {
    engine: Engine,
    target: Arc<Ring>,
    modulus: BigInt,
    primes: Vec<u64>,
    crt: BTreeMap<PowerProduct, BigInt>,
    signature: Option<Signature>,
    history: Vec<PrimeRecord>,
}

impl ModularSession {
    pub fn new(engine: Engine, target: &Arc<Ring>) -> Self {
        ModularSession {
            engine,
            target: target.clone(),
            modulus: BigInt::from(1),
            primes: Vec::new(),
            crt: BTreeMap::new(),
            signature: None,
            history: Vec::new(),
        }
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// `π`, the product of the accepted primes.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The primes currently in the accumulator.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn history(&self) -> &[PrimeRecord] {
        &self.history
    }

    /// The accumulated residues, `0 ≤ value < π`.
    pub fn residues(&self) -> impl Iterator<Item = (&PowerProduct, &BigInt)> {
        self.crt.iter()
    }

    /// Compare a new answer with the accumulated ones: by weighted degree
    /// for ElimTH, by leading power-product under the fixed ordering for
    /// Direct.
    pub fn bad_prime_filter(&self, image: &ModularImage) -> Result<FilterDecision, ModularError> {
        if image.engine != self.engine {
            return Err(ModularError::EngineMismatch {
                session: self.engine,
                image: image.engine,
            });
        }
        let Some(current) = &self.signature else {
            return Ok(FilterDecision::Accept);
        };
        Ok(match image.signature.compare(current) {
            Some(Ordering::Less) => FilterDecision::DiscardNew,
            Some(Ordering::Greater) => FilterDecision::ResetToNew,
            Some(Ordering::Equal) => FilterDecision::Accept,
            None => {
                return Err(ModularError::EngineMismatch {
                    session: self.engine,
                    image: image.engine,
                })
            }
        })
    }

    /// Filter `image` and fold it into the accumulator accordingly.
    pub fn absorb(&mut self, image: &ModularImage) -> Result<FilterDecision, ModularError> {
        let decision = self.bad_prime_filter(image)?;
        match decision {
            FilterDecision::DiscardNew => {}
            FilterDecision::ResetToNew => {
                self.modulus = BigInt::from(1);
                self.primes.clear();
                self.crt.clear();
                self.combine(image);
            }
            FilterDecision::Accept => self.combine(image),
        }
        self.history.push(PrimeRecord {
            prime: image.prime,
            class: Verdict::Suitable,
            image: Some((image.generator.len(), image.signature.clone())),
            decision: Some(decision),
            reconstruction: None,
        });
        Ok(decision)
    }

    fn combine(&mut self, image: &ModularImage) {
        let p = BigInt::from(image.prime);
        let g = &image.generator;
        let mut keys: Vec<PowerProduct> = self.crt.keys().cloned().collect();
        keys.extend(g.support());
        keys.sort();
        keys.dedup();
        let zero = BigInt::from(0);
        let mut next = BTreeMap::new();
        for pp in keys {
            let a = self.crt.get(&pp).unwrap_or(&zero);
            let b = BigInt::from(g.coeff(&pp));
            let r = crt_combine(&Residue::new(a.clone(), self.modulus.clone()), &Residue::new(b, p.clone()))
                .expect("distinct primes are coprime");
            next.insert(pp, r.value);
        }
        self.crt = next;
        self.modulus *= &p;
        self.primes.push(image.prime);
        self.signature = Some(image.signature.clone());
    }

    /// Fault-tolerant reconstruction of every accumulated coefficient;
    /// `None` unless all are reliable and the result is non-zero.
    pub fn reconstruct(&self, reliability_bits: u64) -> Option<Polynomial<QQ>> {
        let mut terms: Vec<(PowerProduct, BigRational)> = Vec::with_capacity(self.crt.len());
        for (pp, v) in &self.crt {
            match hrr(v, &self.modulus, reliability_bits) {
                Reconstruction::Reliable(c) => terms.push((*pp, c)),
                _ => return None,
            }
        }
        let g = Polynomial::from_terms(&self.target, &QQ, terms);
        (!g.is_zero()).then(|| g.make_monic(&self.target.default_ordering()))
    }

    fn note_unsuitable(&mut self, class: PrimeClass) {
        self.history.push(PrimeRecord {
            prime: class.prime,
            class: class.verdict,
            image: None,
            decision: None,
            reconstruction: None,
        });
    }

    fn note_reconstruction(&mut self, status: ReconstructionStatus) {
        if let Some(last) = self.history.last_mut() {
            last.reconstruction = Some(status);
        }
    }
}

/// Result of [`mod_implicit`].
#[derive(Clone, Debug)]
pub struct ModularOutcome {
    /// The verified monic generator over ℚ.
    pub generator: Polynomial<QQ>,
    /// Number of primes whose answers were combined into the result.
    pub primes_used: usize,
    /// Number of primes taken from the pool (including unsuitable and
    /// discarded ones).
    pub primes_tried: usize,
    pub session: ModularSession,
}

/// Multi-modular implicitization over ℚ: for each suitable prime of `pool`
/// compute the modular answer, filter it against the accumulated ones,
/// combine by CRT, and once at least two primes are combined try to
/// reconstruct; stop when every coefficient is reliably reconstructed and
/// the candidate passes the randomized check and exact verification.
pub fn mod_implicit(
    sys: &ParamSystem,
    opts: &ModularOptions,
    pool: impl IntoIterator<Item = u64>,
    budget: &Budget,
) -> Result<ModularOutcome, ModularError> {
    if opts.engine == Engine::Classical {
        return Err(ModularError::UnsupportedEngine(opts.engine));
    }
    let opts = opts.fixed_for(sys)?;
    let par = sys.over_rationals();
    let mut session = ModularSession::new(opts.engine, par.target_ring());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tried = 0;
    for p in pool {
        budget.check()?;
        tried += 1;
        let class = classify_prime(p, sys);
        if !class.is_suitable() {
            session.note_unsuitable(class);
            continue;
        }
        let image = modular_implicitize(sys, p, &opts, budget)?;
        let decision = session.absorb(&image)?;
        if decision != FilterDecision::Accept || session.primes.len() < 2 {
            continue;
        }
        let status = match session.reconstruct(opts.reliability_bits) {
            None => ReconstructionStatus::Unreliable,
            Some(g) if verify_with_precheck(&g, par, &mut rng) => {
                session.note_reconstruction(ReconstructionStatus::Verified);
                return Ok(ModularOutcome {
                    generator: g,
                    primes_used: session.primes.len(),
                    primes_tried: tried,
                    session,
                });
            }
            Some(_) => ReconstructionStatus::Rejected,
        };
        session.note_reconstruction(status);
    }
    Err(ModularError::PrimePoolExhausted)
}
