//! Rational parametrizations via degree-equalizing homogenization.
//!
//! For `x_i = p_i / q`, set `d = max(deg q, deg p_i)` and replace `q`, `p_i`
//! by `Q = h^(d − deg q)·q^hom` and `P_i = h^(d − deg p_i)·p_i^hom` in
//! `K[t.., h]`. The relations among `(Q, P_1, …, P_n)` are the
//! homogenizations (with respect to a new target `x_0`) of the relations
//! among the fractions, so any polynomial engine run on the homogeneous
//! system followed by `x_0 ↦ 1` yields the implicit equation.
//!
//! [`rat_par`] is also the common entry point for polynomial input, which
//! it hands to the chosen engine unchanged.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::budget::Budget;
use crate::coeff::{Field, QQ};
use crate::direct::{build_direct_ordering, direct, DirectError, DirectOptions};
use crate::elim::{buchberger, classical_implicitization, elim_th, eliminate, ideal_equal, ElimError};
use crate::parse::{load_problem, parse_polynomial, ParseError, Parametrization};
use crate::ring::{OrderingMatrix, Polynomial, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImplicitError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Direct(#[from] DirectError),
    #[error("the common denominator is zero")]
    ZeroDenominator,
}

/// The implicitization algorithm used on a polynomial (or homogenized
/// rational) system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Truncated homogeneous elimination.
    ElimTh,
    /// Search for the first linear dependency among images.
    Direct,
    /// Full elimination (no principality assumption).
    Classical,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::ElimTh => "elimth",
            Engine::Direct => "direct",
            Engine::Classical => "classical",
        })
    }
}

/// What an engine can say about the size of its answer, used to compare
/// results obtained modulo different primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signature {
    /// Weighted degree of the homogeneous element found by elimination.
    Degree(u64),
    /// Order vector of the leading power-product under the search ordering.
    Leading(Vec<i64>),
}

impl Signature {
    /// Comparison of two signatures of the same kind.
    pub fn compare(&self, other: &Signature) -> Option<Ordering> {
        match (self, other) {
            (Signature::Degree(a), Signature::Degree(b)) => Some(a.cmp(b)),
            (Signature::Leading(a), Signature::Leading(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

/// Result of an implicitization.
#[derive(Clone, Debug)]
pub struct Implicitization<F: Field> {
    /// Generators of the implicit ideal in the target ring, each monic under
    /// the target ring's default ordering. One generator for ElimTH and
    /// Direct; empty if no relation exists.
    pub generators: Vec<Polynomial<F>>,
    /// Size measure of the engine's answer (absent for the classical oracle).
    pub signature: Option<Signature>,
    /// Coordinates whose numerator is zero; such an `x_i` is itself a
    /// relation and is returned directly by ElimTH and Direct.
    pub zero_numerators: Vec<usize>,
    /// The common degree `d` of the homogenized system (`None` for
    /// polynomial input).
    pub common_degree: Option<u64>,
}

impl<F: Field> Implicitization<F> {
    /// The single generator of a principal answer (zero if there is none).
    pub fn generator(&self) -> Option<&Polynomial<F>> {
        self.generators.first()
    }
}

/// The homogeneous polynomial system `x_0 = Q`, `x_i = P_i` in
/// `K[t.., h]`, with targets ordered `x_1, …, x_n, x_0`.
#[derive(Clone, Debug)]
pub struct RatParContext<F: Field> {
    /// `max(deg q, deg p_i)`, with `deg 0 = 0`.
    pub d: u64,
    /// The homogenized system; coordinate `n` is `Q`.
    pub system: Parametrization<F>,
    /// Index of `h` among the parameters.
    pub h: usize,
    /// Index of `x_0` among the targets.
    pub x0: usize,
    pub zero_numerators: Vec<usize>,
    original_targets: Arc<Ring>,
}

impl<F: Field> RatParContext<F> {
    pub fn new(par: &Parametrization<F>) -> Result<Self, ImplicitError> {
        let q = par.denominator();
        if q.is_zero() {
            return Err(ImplicitError::ZeroDenominator);
        }
        let (s, n) = (par.s(), par.n());
        let d = par
            .numerators()
            .iter()
            .map(|p| p.degree())
            .chain([q.degree()])
            .max()
            .unwrap_or(0);
        let both = Ring::new(par.params().names().iter().chain(par.target_ring().names()).cloned())?;
        let h_name = both.fresh_name("h");
        let x0_name = both.fresh_name("x0");
        let params = Ring::new(par.params().names().iter().cloned().chain([h_name]))?;
        let targets = Ring::new(par.target_ring().names().iter().cloned().chain([x0_name]))?;
        let inject: Vec<usize> = (0..s).collect();
        let hom = |p: &Polynomial<F>| -> Result<Polynomial<F>, RingError> {
            p.embed(&params, &inject)?.shifted_homogenize(d, s)
        };
        let mut coords = par.numerators().iter().map(hom).collect::<Result<Vec<_>, _>>()?;
        coords.push(hom(q)?);
        let zero_numerators = (0..n).filter(|&i| par.numerators()[i].is_zero()).collect();
        let system = Parametrization::polynomial(targets, coords).map_err(|e| match e {
            ParseError::Ring(r) => ImplicitError::Ring(r),
            _ => ImplicitError::Ring(RingError::DimensionMismatch),
        })?;
        Ok(RatParContext {
            d,
            system,
            h: s,
            x0: n,
            zero_numerators,
            original_targets: par.target_ring().clone(),
        })
    }

    /// `G(x_1, …, x_n, 1)` in the original target ring, monic under its
    /// default ordering.
    pub fn dehomogenize(&self, g: &Polynomial<F>) -> Result<Polynomial<F>, RingError> {
        let g = g.dehomogenize(self.x0)?;
        let map: Vec<usize> = (0..self.x0).chain([0]).collect();
        let g = g.embed(&self.original_targets, &map)?;
        Ok(g.make_monic(&self.original_targets.default_ordering()))
    }
}

/// Implicitize `par` with `engine`. Polynomial input goes to the engine
/// as is; rational input is homogenized to common degree first and the
/// engine's answer dehomogenized at `x_0`.
///
/// For Direct, `opts.ordering` and `opts.tau` refer to the system the engine
/// actually sees: for rational input the targets are `x_1, …, x_n, x_0` and
/// the parameters `t.., h`.
pub fn rat_par<F: Field>(
    par: &Parametrization<F>,
    engine: Engine,
    opts: &DirectOptions,
    budget: &Budget,
) -> Result<Implicitization<F>, ImplicitError> {
    if par.denominator().is_zero() {
        return Err(ImplicitError::ZeroDenominator);
    }
    if par.is_polynomial() {
        return polynomial_engine(par, engine, opts, budget);
    }
    let ctx = RatParContext::new(par)?;
    if let (Some(&i), false) = (ctx.zero_numerators.first(), engine == Engine::Classical) {
        let xi = Polynomial::var(par.target_ring(), par.field(), i);
        return Ok(Implicitization {
            generators: vec![xi],
            signature: None,
            zero_numerators: ctx.zero_numerators,
            common_degree: Some(ctx.d),
        });
    }
    let hom = polynomial_engine(&ctx.system, engine, opts, budget)?;
    let mut generators = Vec::new();
    for g in &hom.generators {
        let g = ctx.dehomogenize(g)?;
        if !g.is_zero() && !generators.contains(&g) {
            generators.push(g);
        }
    }
    Ok(Implicitization {
        generators,
        signature: hom.signature,
        zero_numerators: ctx.zero_numerators,
        common_degree: Some(ctx.d),
    })
}

fn polynomial_engine<F: Field>(
    par: &Parametrization<F>,
    engine: Engine,
    opts: &DirectOptions,
    budget: &Budget,
) -> Result<Implicitization<F>, ImplicitError> {
    let default = par.target_ring().default_ordering();
    let (generators, signature) = match engine {
        Engine::ElimTh => {
            let out = elim_th(par, budget)?;
            if out.generator.is_zero() {
                (vec![], None)
            } else {
                (vec![out.generator], Some(Signature::Degree(out.weighted_degree)))
            }
        }
        Engine::Direct => {
            let sigma = match &opts.ordering {
                Some(s) => s.clone(),
                None => {
                    let tau = opts.tau.clone().unwrap_or_else(|| par.params().default_ordering());
                    build_direct_ordering(par, &tau)?
                }
            };
            let opts = DirectOptions {
                ordering: Some(sigma.clone()),
                ..opts.clone()
            };
            let g = direct(par, &opts, budget)?;
            let lead = sigma.order_vector(&g.lpp(&sigma)?);
            (vec![g.make_monic(&default)], Some(Signature::Leading(lead)))
        }
        Engine::Classical => {
            let gens = classical_implicitization(par, budget)?;
            (gens.iter().map(|g| g.make_monic(&default)).collect(), None)
        }
    };
    Ok(Implicitization {
        generators,
        signature,
        zero_numerators: vec![],
        common_degree: None,
    })
}

/// One negative (or control) construction and whether the observed ideal
/// matched the documented one.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub confirmed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.confirmed { "confirmed" } else { "NOT confirmed" };
        write!(f, "{}: expected {}, observed {} ({verdict})", self.name, self.expected, self.observed)
    }
}

/// Outcome of [`counterexample_checks`].
#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub checks: Vec<Check>,
}

impl CounterexampleReport {
    pub fn all_confirmed(&self) -> bool {
        self.checks.iter().all(|c| c.confirmed)
    }
}

fn render(gens: &[Polynomial<QQ>]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("⟨{}⟩", parts.join(", "))
}

fn parse_all(ring: &Arc<Ring>, src: &[&str]) -> Result<Vec<Polynomial<QQ>>, ImplicitError> {
    src.iter()
        .map(|s| parse_polynomial(s, ring).map_err(|_| ImplicitError::Ring(RingError::DimensionMismatch)))
        .collect()
}

/// Compare the elimination ideal of `gens` (eliminating `block`) with the
/// ideal generated by `expected`, in the ring of `gens`.
fn elimination_check(
    name: &'static str,
    ring: &Arc<Ring>,
    gens: &[&str],
    block: &[usize],
    expected: &[&str],
) -> Result<Check, ImplicitError> {
    let gens = parse_all(ring, gens)?;
    let expected = parse_all(ring, expected)?;
    let got = eliminate(&gens, block, &Budget::unlimited())?;
    let sigma = ring.default_ordering();
    Ok(Check {
        name,
        expected: render(&expected),
        observed: render(&got),
        confirmed: ideal_equal(&got, &expected, &sigma)?,
    })
}

/// Run the constructions showing why the inverse generator `u·q − 1` and the
/// equal-degree homogenization are needed, plus the correct route as a
/// control:
///
/// * `x = y = s/t, z = s` without `u·t − 1` eliminates to `⟨z(x − y)⟩`;
/// * homogenizing `⟨tx − s, ty − s, z − s, ut − 1⟩` naively gives the
///   non-principal `⟨xzh − yzh, xh² − yh²⟩`;
/// * for `(t₂²/t₁, t₂³/t₁, t₂⁴/t₁)`, grading `x_0, …, x_3` by `1, 2, 3, 4`
///   makes the first parameter-free element `x₃ − x₁²`;
/// * equal-degree homogenization of the same input gives `x₁x₃ − x₂²`.
pub fn counterexample_checks() -> Result<CounterexampleReport, ImplicitError> {
    let mut checks = Vec::new();

    let r = Ring::new(["s", "t", "x", "y", "z"])?;
    checks.push(elimination_check(
        "without the inverse generator",
        &r,
        &["t*x - s", "t*y - s", "z - s"],
        &[0, 1],
        &["z*(x - y)"],
    )?);

    let r = Ring::new(["s", "t", "u", "x", "y", "z", "h"])?;
    checks.push(elimination_check(
        "naively homogenized with the inverse generator",
        &r,
        &["t*x - h*s", "t*y - h*s", "z - s", "u*t - h^2"],
        &[0, 1, 2],
        &["x*z*h - y*z*h", "x*h^2 - y*h^2"],
    )?);

    let r = Ring::with_weights(["t1", "t2", "x0", "x1", "x2", "x3"], vec![1, 1, 1, 2, 3, 4])?;
    let gens = parse_all(&r, &["x0 - t1", "x1 - t2^2", "x2 - t2^3", "x3 - t2^4"])?;
    let block = [0, 1];
    let sigma = OrderingMatrix::graded_elimination(r.weights(), &block);
    let state = buchberger(&gens, &sigma, |pp| !pp.involves_any(&block), &Budget::unlimited())?;
    let expected = parse_all(&r, &["x3 - x1^2"])?;
    let observed = state.trigger.clone().into_iter().collect::<Vec<_>>();
    checks.push(Check {
        name: "unequal-degree weighted homogenization",
        expected: render(&expected),
        observed: render(&observed),
        confirmed: observed.len() == 1 && observed[0].is_scalar_multiple_of(&expected[0]),
    });

    let sys = load_problem("params: t1 t2\nx1 = t2^2/t1\nx2 = t2^3/t1\nx3 = t2^4/t1\n")
        .map_err(|_| ImplicitError::Ring(RingError::DimensionMismatch))?;
    let par = sys.over_rationals();
    let out = rat_par(par, Engine::ElimTh, &DirectOptions::default(), &Budget::unlimited())?;
    let expected = parse_all(par.target_ring(), &["x1*x3 - x2^2"])?;
    checks.push(Check {
        name: "equal-degree homogenization",
        expected: render(&expected),
        observed: render(&out.generators),
        confirmed: out.generators.len() == 1 && out.generators[0].is_scalar_multiple_of(&expected[0]),
    });

    Ok(CounterexampleReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::ideal_equal;

    fn system(text: &str) -> Parametrization<QQ> {
        load_problem(text).unwrap().over_rationals().clone()
    }

    fn target(par: &Parametrization<QQ>, s: &str) -> Polynomial<QQ> {
        parse_polynomial(s, par.target_ring()).unwrap()
    }

    fn run(par: &Parametrization<QQ>, engine: Engine) -> Implicitization<QQ> {
        rat_par(par, engine, &DirectOptions::default(), &Budget::unlimited()).unwrap()
    }

    #[test]
    fn homogenized_system_has_common_degree() {
        let par = system("params: s t\nx = s/t^2\ny = (s^3 + 1)/t^2\n");
        let ctx = RatParContext::new(&par).unwrap();
        assert_eq!(ctx.d, 3);
        let coords = ctx.system.polynomial_coordinates().unwrap();
        assert_eq!(coords.len(), 3);
        for c in &coords {
            assert!(c.is_homogeneous());
            assert_eq!(c.degree(), 3);
        }
        assert_eq!(ctx.system.target_ring().names(), &["x", "y", "x0"]);
        assert_eq!(ctx.system.params().names(), &["s", "t", "h"]);
        let q = parse_polynomial("t^2*h", ctx.system.params()).unwrap();
        assert_eq!(coords[2], q);
    }

    #[test]
    fn polynomial_input_is_delegated() {
        let par = system("params: t\nx1 = t^2\nx2 = t^3\n");
        for engine in [Engine::ElimTh, Engine::Direct, Engine::Classical] {
            let out = run(&par, engine);
            assert_eq!(out.common_degree, None);
            assert_eq!(out.generators.len(), 1);
            assert!(out.generators[0].is_scalar_multiple_of(&target(&par, "x1^3 - x2^2")));
        }
    }

    #[test]
    fn equal_degree_homogenization() {
        let par = system("params: t1 t2\nx1 = t2^2/t1\nx2 = t2^3/t1\nx3 = t2^4/t1\n");
        let expect = target(&par, "x1*x3 - x2^2");
        for engine in [Engine::ElimTh, Engine::Direct] {
            let out = run(&par, engine);
            assert_eq!(out.generators.len(), 1, "{engine}");
            assert!(out.generators[0].is_scalar_multiple_of(&expect), "{engine}");
            assert!(par.vanishes_on(&out.generators[0]).unwrap());
        }
        let classical = run(&par, Engine::Classical);
        let sigma = par.target_ring().default_ordering();
        assert!(ideal_equal(&classical.generators, &[expect], &sigma).unwrap());
    }

    #[test]
    fn repeated_fraction() {
        let par = system("params: s t\nx = s/t\ny = s/t\nz = s\n");
        let expect = target(&par, "x - y");
        for engine in [Engine::ElimTh, Engine::Direct, Engine::Classical] {
            let out = run(&par, engine);
            assert_eq!(out.generators.len(), 1, "{engine}");
            assert!(out.generators[0].is_scalar_multiple_of(&expect), "{engine}");
        }
    }

    #[test]
    fn engines_agree_modulo_a_prime() {
        let sys = load_problem("params: t\nx = (t^2 + 1)/(t - 2)\ny = t^3/(t - 2)\n").unwrap();
        let par = sys.over_prime(32003).unwrap();
        let b = Budget::unlimited();
        let o = DirectOptions::default();
        let e = rat_par(&par, Engine::ElimTh, &o, &b).unwrap();
        let d = rat_par(&par, Engine::Direct, &o, &b).unwrap();
        let c = rat_par(&par, Engine::Classical, &o, &b).unwrap();
        assert_eq!(e.generators, d.generators);
        assert!(par.vanishes_on(&e.generators[0]).unwrap());
        let sigma = par.target_ring().default_ordering();
        assert!(ideal_equal(&c.generators, &e.generators, &sigma).unwrap());
    }

    #[test]
    fn zero_numerator_is_flagged() {
        let targets = Ring::new(["x", "y"]).unwrap();
        let params = Ring::new(["t"]).unwrap();
        let t = Polynomial::var(&params, &QQ, 0);
        let par = Parametrization::rational(
            targets,
            vec![Polynomial::zero(&params, &QQ), t.clone()],
            t.add(&Polynomial::one(&params, &QQ)),
        )
        .unwrap();
        let out = run(&par, Engine::ElimTh);
        assert_eq!(out.zero_numerators, vec![0]);
        assert_eq!(out.generators, vec![target(&par, "x")]);
        assert!(par.vanishes_on(&out.generators[0]).unwrap());
        let classical = run(&par, Engine::Classical);
        assert!(classical.generators.contains(&target(&par, "x")));
    }

    #[test]
    fn negative_constructions() {
        let report = counterexample_checks().unwrap();
        assert_eq!(report.checks.len(), 4);
        for c in &report.checks {
            assert!(c.confirmed, "{c}");
        }
    }
}
