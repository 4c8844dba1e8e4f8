//! Exact and randomized verification of candidate implicit equations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::coeff::{bits, common_denominator, PrimePool, Zp, QQ};
use crate::parse::Parametrization;
use crate::ring::Polynomial;

/// Range of the random parameter values used by the randomized check.
pub const PRECHECK_RANGE: i64 = 1_000_000;
/// Number of random hypersurface points tried before the exact check.
pub const PRECHECK_POINTS: usize = 3;

/// A random point `(f_1(a), …, f_n(a))` of the hypersurface, for an integer
/// parameter tuple `a` drawn uniformly from `[−range, range]^s` with
/// `q(a) ≠ 0`.
pub fn random_point(par: &Parametrization<QQ>, range: i64, rng: &mut impl Rng) -> Vec<BigRational> {
    loop {
        let a: Vec<BigRational> = (0..par.s())
            .map(|_| BigRational::from_integer(rng.gen_range(-range..=range).into()))
            .collect();
        let q = par.denominator().evaluate(&a).expect("arity matches");
        if q.is_zero() {
            continue;
        }
        return par
            .numerators()
            .iter()
            .map(|p| p.evaluate(&a).expect("arity matches") / &q)
            .collect();
    }
}

/// Evaluate `g` at `k` random hypersurface points; `false` as soon as one
/// of them is not a zero of `g`.
pub fn random_check(g: &Polynomial<QQ>, par: &Parametrization<QQ>, k: usize, rng: &mut impl Rng) -> bool {
    (0..k).all(|_| {
        let x = random_point(par, PRECHECK_RANGE, rng);
        g.evaluate(&x).map(|v| v.is_zero()).unwrap_or(false)
    })
}

/// Whether `g(p_1/q, …, p_n/q) = 0` exactly.
///
/// With `G`, `P_i`, `Q` the integer multiples of `g`, `p_i`, `q`, the
/// numerator `N = Σ G_T·P^T·Q^(D−|T|)` has integer coefficients bounded by
/// `B = Σ |G_T|·Π‖P_i‖₁^(T_i)·‖Q‖₁^(D−|T|)`. `N` is computed modulo primes
/// whose product exceeds `2B`; it vanishes iff every image does.
pub fn verify(g: &Polynomial<QQ>, par: &Parametrization<QQ>) -> bool {
    if g.is_zero() || g.ring().nvars() != par.n() {
        return false;
    }
    let ints = |p: &Polynomial<QQ>, l: &BigInt| p.scale(&BigRational::from_integer(l.clone()));
    let l = common_denominator(
        par.numerators()
            .iter()
            .chain([par.denominator()])
            .flat_map(|p| p.terms().iter().map(|(_, c)| c)),
    );
    let nums: Vec<Polynomial<QQ>> = par.numerators().iter().map(|p| ints(p, &l)).collect();
    let den = ints(par.denominator(), &l);
    let (gi, _) = g.clear_denominators();

    let norm = |p: &Polynomial<QQ>| p.l1_norm().to_integer();
    let norms: Vec<BigInt> = nums.iter().map(norm).collect();
    let qn = norm(&den);
    let d = g.total_degree();
    let mut bound = BigInt::zero();
    for (pp, c) in gi.terms() {
        let mut t = c.to_integer().abs();
        for (i, n) in norms.iter().enumerate() {
            t *= num_traits::pow(n.clone(), pp.exp(i) as usize);
        }
        t *= num_traits::pow(qn.clone(), (d - pp.total_degree()) as usize);
        bound += t;
    }
    let needed = bits(&bound) + 2;

    let mut covered = 0u64;
    for p in PrimePool::default() {
        let zp = Zp::new(p).expect("pool primes fit");
        let reduce = |f: &Polynomial<QQ>| f.reduce_mod(&zp).expect("integer coefficients");
        let args: Vec<Polynomial<Zp>> = nums.iter().map(reduce).collect();
        let q = reduce(&den);
        let image = reduce(&gi);
        if q.is_zero() {
            continue;
        }
        match image.substitute_fraction(&args, &q) {
            Ok((n, _)) if n.is_zero() => {}
            _ => return false,
        }
        covered += 63 - p.leading_zeros() as u64;
        if covered >= needed {
            return true;
        }
    }
    unreachable!("the prime pool is large enough for any bound")
}

/// Randomized check with [`PRECHECK_POINTS`] points, then [`verify`].
pub fn verify_with_precheck(g: &Polynomial<QQ>, par: &Parametrization<QQ>, rng: &mut impl Rng) -> bool {
    !g.is_zero() && random_check(g, par, PRECHECK_POINTS, rng) && verify(g, par)
}
