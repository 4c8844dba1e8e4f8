//! Implicitization by elimination: the classical oracle and the truncated
//! homogeneous algorithm.

use std::sync::Arc;

use super::{buchberger, eliminate, ElimError};
use crate::budget::Budget;
use crate::coeff::Field;
use crate::parse::Parametrization;
use crate::ring::{OrderingMatrix, Polynomial, Ring, RingError, MAX_VARS};

/// Generators of an eliminating ideal in a combined ring, together with the
/// block to eliminate and the positions of the targets.
#[derive(Clone, Debug)]
pub struct EliminatingIdealSpec<F: Field> {
    pub ring: Arc<Ring>,
    pub generators: Vec<Polynomial<F>>,
    pub block: Vec<usize>,
    /// `targets[i]` is the index of the `i`-th target indeterminate.
    pub targets: Vec<usize>,
    target_ring: Arc<Ring>,
}

impl<F: Field> EliminatingIdealSpec<F> {
    /// Move a polynomial free of the block into the target ring.
    pub fn project(&self, g: &Polynomial<F>) -> Result<Polynomial<F>, RingError> {
        if g.involves_any(&self.block) {
            return Err(RingError::DimensionMismatch);
        }
        let mut map = vec![0; self.ring.nvars()];
        for (i, &j) in self.targets.iter().enumerate() {
            map[j] = i;
        }
        g.embed(&self.target_ring, &map)
    }

    pub fn target_ring(&self) -> &Arc<Ring> {
        &self.target_ring
    }
}

/// Build `K[t_1..t_s, extra.., x_1..x_n]` with the given weights on the
/// extra indeterminates and targets; parameters get weight 1.
fn combined_ring<F: Field>(
    par: &Parametrization<F>,
    extra: &[&str],
    extra_weights: &[u32],
    target_weights: &[u32],
) -> Result<(Arc<Ring>, Vec<usize>), ElimError> {
    let (s, n) = (par.s(), par.n());
    let total = s + extra.len() + n;
    if total > MAX_VARS {
        return Err(ElimError::TooManyIndeterminates(total));
    }
    let mut names: Vec<String> = par.params().names().to_vec();
    for e in extra {
        let both = Ring::new(names.iter().chain(par.target_ring().names()).cloned())?;
        names.push(both.fresh_name(e));
    }
    names.extend(par.target_ring().names().iter().cloned());
    let mut weights = vec![1; s];
    weights.extend_from_slice(extra_weights);
    weights.extend_from_slice(target_weights);
    let ring = Ring::with_weights(names, weights)?;
    let targets = (s + extra.len()..total).collect();
    Ok((ring, targets))
}

/// The eliminating ideal of a parametrization: `⟨x_i − f_i⟩` for
/// polynomial coordinates, `⟨q·x_i − p_i⟩ + ⟨u·q − 1⟩` otherwise; the block
/// holds the parameters (and `u`).
pub fn eliminating_ideal<F: Field>(
    par: &Parametrization<F>,
) -> Result<EliminatingIdealSpec<F>, ElimError> {
    let s = par.s();
    let f = par.field();
    let inject: Vec<usize> = (0..s).collect();
    let n = par.n();
    if let Some(coords) = par.polynomial_coordinates() {
        let (ring, targets) = combined_ring(par, &[], &[], &vec![1; n])?;
        let generators = coords
            .iter()
            .zip(&targets)
            .map(|(c, &x)| Ok(Polynomial::var(&ring, f, x).sub(&c.embed(&ring, &inject)?)))
            .collect::<Result<Vec<_>, RingError>>()?;
        Ok(EliminatingIdealSpec {
            ring,
            generators,
            block: inject,
            targets,
            target_ring: par.target_ring().clone(),
        })
    } else {
        let (ring, targets) = combined_ring(par, &["u"], &[1], &vec![1; n])?;
        let q = par.denominator().embed(&ring, &inject)?;
        let mut generators = par
            .numerators()
            .iter()
            .zip(&targets)
            .map(|(p, &x)| Ok(q.mul(&Polynomial::var(&ring, f, x)).sub(&p.embed(&ring, &inject)?)))
            .collect::<Result<Vec<_>, RingError>>()?;
        let u = Polynomial::var(&ring, f, s);
        generators.push(u.mul(&q).sub(&Polynomial::one(&ring, f)));
        let mut block = inject;
        block.push(s);
        Ok(EliminatingIdealSpec {
            ring,
            generators,
            block,
            targets,
            target_ring: par.target_ring().clone(),
        })
    }
}

/// Generators of the ideal of all relations among the coordinates: the
/// reduced elimination basis, moved into the target ring. Makes no
/// principality assumption; this is the reference oracle.
pub fn classical_implicitization<F: Field>(
    par: &Parametrization<F>,
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>, ElimError> {
    let spec = eliminating_ideal(par)?;
    eliminate(&spec.generators, &spec.block, budget)?
        .iter()
        .map(|g| Ok(spec.project(g)?))
        .collect()
}

/// Result of truncated homogeneous elimination.
#[derive(Clone, Debug)]
pub struct ElimThOutcome<F: Field> {
    /// Monic (under the target ring's default ordering) generator, or zero
    /// if the basis closed without a parameter-free element.
    pub generator: Polynomial<F>,
    /// Weighted degree of the homogeneous element found (0 if none).
    pub weighted_degree: u64,
    /// Number of basis elements when the run stopped.
    pub basis_size: usize,
    pub pairs_processed: usize,
    /// Sugar degrees of the processed pairs; non-decreasing.
    pub processed_degrees: Vec<u64>,
}

/// Truncated homogeneous elimination: homogenize `x_i − f_i` with weights
/// `deg f_i` on the targets, run Buchberger degree by degree under an
/// ordering eliminating the parameters, and stop at the first basis element
/// whose leading power-product is parameter-free; dehomogenize it.
///
/// If every coordinate is already homogeneous no homogenizing indeterminate
/// is introduced.
pub fn elim_th<F: Field>(
    par: &Parametrization<F>,
    budget: &Budget,
) -> Result<ElimThOutcome<F>, ElimError> {
    let coords = par.polynomial_coordinates().ok_or(ElimError::NotPolynomial)?;
    if let Some(i) = coords.iter().position(|c| c.is_constant()) {
        return Err(ElimError::ConstantCoordinate(i));
    }
    let s = par.s();
    let f = par.field();
    let degrees: Vec<u32> = coords.iter().map(|c| c.total_degree() as u32).collect();
    let need_h = coords.iter().any(|c| !c.is_homogeneous());
    let (extra, extra_w): (&[&str], &[u32]) = if need_h { (&["h"], &[1]) } else { (&[], &[]) };
    let (ring, targets) = combined_ring(par, extra, extra_w, &degrees)?;
    let inject: Vec<usize> = (0..s).collect();
    let gens = coords
        .iter()
        .zip(&targets)
        .map(|(c, &x)| {
            let mut c = c.embed(&ring, &inject)?;
            if need_h {
                c = c.homogenize(s)?;
            }
            Ok(Polynomial::var(&ring, f, x).sub(&c))
        })
        .collect::<Result<Vec<_>, RingError>>()?;
    let block: Vec<usize> = inject;
    let sigma = OrderingMatrix::graded_elimination(ring.weights(), &block);
    let state = buchberger(&gens, &sigma, |pp| !pp.involves_any(&block), budget)?;
    let target_ring = par.target_ring();
    let (generator, weighted_degree) = match &state.trigger {
        Some(g) => {
            debug_assert!(!g.involves_any(&block), "homogeneous element with t-free leading term");
            let d = g.degree();
            let g = if need_h { g.dehomogenize(s)? } else { g.clone() };
            let mut map = vec![0; ring.nvars()];
            for (i, &j) in targets.iter().enumerate() {
                map[j] = i;
            }
            let g = g.embed(target_ring, &map)?;
            (g.make_monic(&target_ring.default_ordering()), d)
        }
        None => (Polynomial::zero(target_ring, f), 0),
    };
    Ok(ElimThOutcome {
        generator,
        weighted_degree,
        basis_size: state.basis.len(),
        pairs_processed: state.pairs_processed,
        processed_degrees: state.processed_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Zp, QQ};
    use crate::parse::{load_problem, parse_polynomial};

    fn system(text: &str) -> Parametrization<QQ> {
        load_problem(text).unwrap().over_rationals().clone()
    }

    fn target(par: &Parametrization<QQ>, s: &str) -> Polynomial<QQ> {
        parse_polynomial(s, par.target_ring()).unwrap()
    }

    #[test]
    fn identical_coordinates() {
        let par = system("params: t\nx1 = t\nx2 = t\n");
        let b = Budget::unlimited();
        let g = elim_th(&par, &b).unwrap().generator;
        assert!(g.is_scalar_multiple_of(&target(&par, "x1 - x2")));
        let c = classical_implicitization(&par, &b).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_scalar_multiple_of(&target(&par, "x1 - x2")));
    }

    #[test]
    fn rational_oracle_needs_the_inverse_generator() {
        let par = system("params: s t\nx = s/t\ny = s/t\nz = s\n");
        let c = classical_implicitization(&par, &Budget::unlimited()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_scalar_multiple_of(&target(&par, "x - y")));
    }

    #[test]
    fn non_principal_relations() {
        // f = (t2²/t1², (t1²+t2²)/t1², (t1²+t1t2+t2²)/t1²); with u = t2/t1 the
        // coordinates are u², u²+1, u²+u+1, so x2 = x1 + 1 and x1 = (x3 − x2)².
        let b = Budget::unlimited();
        let par = system(
            "params: t1 t2\nx1 = t2^2/t1^2\nx2 = (t1^2 + t2^2)/t1^2\n\
             x3 = (t1^2 + t1*t2 + t2^2)/t1^2\n",
        );
        let c = classical_implicitization(&par, &b).unwrap();
        let expect = [
            target(&par, "x2 - x1 - 1"),
            target(&par, "x2^2 - 2*x2*x3 + x3^2 - x2 + 1"),
        ];
        let sigma = par.target_ring().default_ordering();
        assert!(super::super::ideal_equal(&c, &expect, &sigma).unwrap());

        let poly = system("params: u\nx1 = u^2\nx2 = u^2 + 1\nx3 = u^2 + u + 1\n");
        let out = elim_th(&poly, &b).unwrap();
        let c = classical_implicitization(&poly, &b).unwrap();
        assert!(c.len() > 1);
        let weights = [2, 2, 2];
        for g in &c {
            let d = g.terms().iter().map(|(pp, _)| pp.weighted_degree(&weights)).max().unwrap();
            assert!(out.weighted_degree <= d);
        }
        assert!(poly.vanishes_on(&out.generator).unwrap());
    }

    #[test]
    fn elim_th_degrees_are_monotone_and_result_vanishes() {
        let sys = load_problem("params: s t\nx = s*t\ny = s^2 - t\nz = t^3 + s\n").unwrap();
        let zp = Zp::new(32003).unwrap();
        let par = sys.over_prime(zp.modulus()).unwrap();
        let out = elim_th(&par, &Budget::unlimited()).unwrap();
        assert!(out.processed_degrees.windows(2).all(|w| w[0] <= w[1]));
        assert!(!out.generator.is_zero());
        assert!(par.vanishes_on(&out.generator).unwrap());
        let classical = classical_implicitization(&par, &Budget::unlimited()).unwrap();
        assert_eq!(classical.len(), 1);
        assert!(classical[0].is_scalar_multiple_of(&out.generator));
    }

    #[test]
    fn rejects_bad_input() {
        let par = system("params: s t\nx = s/t\ny = s\n");
        assert_eq!(elim_th(&par, &Budget::unlimited()).unwrap_err(), ElimError::NotPolynomial);
    }
}
