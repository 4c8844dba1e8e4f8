//! The single-prime method: take the support of one modular answer and
//! solve for the rational coefficients from random hypersurface points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::verify::{random_point, verify_with_precheck};
use super::{modular_implicitize, ModularError, ModularOptions};
use crate::budget::Budget;
use crate::parse::ParamSystem;
use crate::ring::{Polynomial, PowerProduct};
use crate::coeff::{common_denominator, QQ};

/// Range of the random parameter values used to sample the linear system.
pub const SAMPLE_RANGE: i64 = 1000;
/// How many times a rank-deficient system is resampled before giving up.
pub const MAX_RESAMPLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessFailure {
    #[error("the sampled linear system stayed rank deficient")]
    SingularSystem,
    #[error("the guessed polynomial does not vanish on the parametrization")]
    VerificationFailed,
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Guess the monic generator over ℚ from the support of the answer modulo
/// the single prime `p`.
///
/// With `N = |Supp(g_p)|`, `N` random points are sampled and the `N × N`
/// matrix of support power-products evaluated at them is formed. The
/// coefficient of the leading power-product is pinned to 1; the remaining
/// `N − 1` coefficients are determined when the other columns have full
/// rank (otherwise the points are resampled). An inconsistent system means
/// the support was wrong.
pub fn single_prime_guess(
    sys: &ParamSystem,
    p: u64,
    opts: &ModularOptions,
    budget: &Budget,
) -> Result<Polynomial<QQ>, GuessFailure> {
    let image = modular_implicitize(sys, p, opts, budget)?;
    let gp = &image.generator;
    let par = sys.over_rationals();
    let ring = par.target_ring();
    let sigma = ring.default_ordering();
    let lead = gp.lpp(&sigma).map_err(|_| GuessFailure::VerificationFailed)?;
    let others: Vec<PowerProduct> = gp.support().into_iter().filter(|pp| *pp != lead).collect();
    let n = others.len() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let monomial = |pp: &PowerProduct, x: &[BigRational]| -> BigRational {
        x.iter()
            .enumerate()
            .fold(BigRational::one(), |acc, (i, v)| acc * num_traits::pow(v.clone(), pp.exp(i) as usize))
    };
    for _ in 0..=MAX_RESAMPLES {
        budget.check().map_err(|e| GuessFailure::Modular(ModularError::from(e)))?;
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for _ in 0..n {
            let x = random_point(par, SAMPLE_RANGE, &mut rng);
            let mut row: Vec<BigRational> = others.iter().map(|pp| monomial(pp, &x)).collect();
            row.push(-monomial(&lead, &x));
            rows.push(row);
        }
        match solve(rows, others.len()) {
            Solution::Unique(c) => {
                let terms = others.iter().cloned().zip(c).chain([(lead, BigRational::one())]);
                let g = Polynomial::from_terms(ring, &QQ, terms);
                return if verify_with_precheck(&g, par, &mut rng) {
                    Ok(g)
                } else {
                    Err(GuessFailure::VerificationFailed)
                };
            }
            Solution::Inconsistent => return Err(GuessFailure::VerificationFailed),
            Solution::RankDeficient => continue,
        }
    }
    Err(GuessFailure::SingularSystem)
}

enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    RankDeficient,
}

/// Solve the augmented system `rows` (each `unknowns` coefficients followed
/// by the right-hand side) over ℚ.
///
/// Rows are scaled to integers and reduced with fraction-free (Bareiss)
/// elimination, which keeps every entry a minor of the input and avoids
/// gcd normalization; the triangular system is then solved over ℚ.
fn solve(rows: Vec<Vec<BigRational>>, unknowns: usize) -> Solution {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let l = BigRational::from_integer(common_denominator(&r));
            r.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for col in 0..unknowns {
        let Some(piv) = (col..m.len()).find(|&r| !m[r][col].is_zero()) else {
            return Solution::RankDeficient;
        };
        m.swap(col, piv);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            for c in col + 1..=unknowns {
                row[c] = (&pivot_row[col] * &row[c] - &row[col] * &pivot_row[c]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
    }
    if m[unknowns..].iter().any(|r| !r[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for i in (0..unknowns).rev() {
        let mut acc = BigRational::from_integer(m[i][unknowns].clone());
        for j in i + 1..unknowns {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn solves_small_systems() {
        // x + y = 3, x − y = 1, 2x = 4
        let rows = vec![vec![q(1), q(1), q(3)], vec![q(1), q(-1), q(1)], vec![q(2), q(0), q(4)]];
        match solve(rows, 2) {
            Solution::Unique(c) => assert_eq!(c, vec![q(2), q(1)]),
            _ => panic!("unique solution expected"),
        }
        let rows = vec![vec![q(1), q(1), q(3)], vec![q(1), q(1), q(4)]];
        assert!(matches!(solve(rows, 2), Solution::RankDeficient));
        let rows = vec![vec![q(1), q(2)], vec![q(1), q(3)]];
        assert!(matches!(solve(rows, 1), Solution::Inconsistent));
    }
}
