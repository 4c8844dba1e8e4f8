//! Gröbner bases, the classical elimination oracle and truncated
//! homogeneous elimination.

mod algebra;
mod gb;
mod implicit;

pub use algebra::{divide_exact, poly_gcd, poly_lcm};
pub use implicit::{
    classical_implicitization, elim_th, eliminating_ideal, ElimThOutcome, EliminatingIdealSpec,
};

use std::sync::Arc;

use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::coeff::Field;
use crate::ring::{OrderingMatrix, Polynomial, PowerProduct, Ring, RingError};
use gb::Engine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("coordinate {0} is constant; split constants off first")]
    ConstantCoordinate(usize),
    #[error("the parametrization is not polynomial")]
    NotPolynomial,
    #[error("the parametrization needs {0} indeterminates, more than supported")]
    TooManyIndeterminates(usize),
}

/// State of a (possibly truncated) Buchberger run.
#[derive(Clone, Debug)]
pub struct GBState<F: Field> {
    /// Monic basis elements that were not made redundant, in insertion
    /// order. A Gröbner basis when `complete`.
    pub basis: Vec<Polynomial<F>>,
    /// The element on which the stop predicate fired, if any.
    pub trigger: Option<Polynomial<F>>,
    /// Sugar degrees of processed pairs, in processing order.
    pub processed_degrees: Vec<u64>,
    pub ordering: OrderingMatrix,
    pub complete: bool,
    pub pairs_processed: usize,
    pub zero_reductions: usize,
}

fn common_ring<F: Field>(gens: &[Polynomial<F>]) -> Result<Option<(Arc<Ring>, F)>, RingError> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    if gens.iter().any(|g| g.ring() != first.ring()) {
        return Err(RingError::RingMismatch);
    }
    Ok(Some((first.ring().clone(), first.field().clone())))
}

/// Buchberger's algorithm with the normal selection strategy (pairs by
/// sugar degree, then by lcm under `sigma`). The run stops as soon as
/// `stop` accepts the leading power-product of a new basis element.
pub fn buchberger<F: Field>(
    gens: &[Polynomial<F>],
    sigma: &OrderingMatrix,
    stop: impl FnMut(&PowerProduct) -> bool,
    budget: &Budget,
) -> Result<GBState<F>, ElimError> {
    let Some((ring, field)) = common_ring(gens)? else {
        return Ok(GBState {
            basis: vec![],
            trigger: None,
            processed_degrees: vec![],
            ordering: sigma.clone(),
            complete: true,
            pairs_processed: 0,
            zero_reductions: 0,
        });
    };
    let engine = Engine::new(&field, &ring, sigma)?;
    let internal = gens
        .iter()
        .map(|g| engine.internal(g))
        .collect::<Result<Vec<_>, _>>()?;
    let run = engine.run(&internal, stop, budget)?;
    Ok(GBState {
        trigger: run.trigger.map(|k| engine.external(&ring, &run.basis[k].terms)),
        basis: run
            .basis
            .iter()
            .filter(|e| e.active)
            .map(|e| engine.external(&ring, &e.terms))
            .collect(),
        processed_degrees: run.degrees,
        ordering: sigma.clone(),
        complete: run.complete,
        pairs_processed: run.pairs_processed,
        zero_reductions: run.zero_reductions,
    })
}

/// The reduced Gröbner basis, sorted by increasing leading power-product.
pub fn reduced_groebner_basis<F: Field>(
    gens: &[Polynomial<F>],
    sigma: &OrderingMatrix,
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>, ElimError> {
    let Some((ring, field)) = common_ring(gens)? else {
        return Ok(vec![]);
    };
    let engine = Engine::new(&field, &ring, sigma)?;
    let internal = gens
        .iter()
        .map(|g| engine.internal(g))
        .collect::<Result<Vec<_>, _>>()?;
    let mut run = engine.run(&internal, |_| false, budget)?;
    let red = engine.interreduce(&mut run.basis, budget)?;
    Ok(red.iter().map(|t| engine.external(&ring, t)).collect())
}

/// Normal form of `f` with respect to `basis` (fully reduced; basis
/// elements need not be monic or form a Gröbner basis).
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    sigma: &OrderingMatrix,
) -> Result<Polynomial<F>, ElimError> {
    if basis.iter().any(|b| b.ring() != f.ring()) {
        return Err(RingError::RingMismatch.into());
    }
    let engine = Engine::new(f.field(), f.ring(), sigma)?;
    let elems = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| Ok(engine.elem(engine.internal(b)?, 0)))
        .collect::<Result<Vec<_>, RingError>>()?;
    let acc = engine.accumulator(&engine.internal(f)?);
    let (red, _) = engine.reduce(&elems, acc, 0, None, &Budget::unlimited())?;
    Ok(engine.external(f.ring(), &red))
}

/// `lcm/LT(f)·f − lcm/LT(g)·g` for the monic versions of `f` and `g`.
pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    sigma: &OrderingMatrix,
) -> Result<Polynomial<F>, RingError> {
    let (a, b) = (f.make_monic(sigma), g.make_monic(sigma));
    let (la, lb) = (a.lpp(sigma)?, b.lpp(sigma)?);
    let l = la.lcm(&lb);
    let one = f.field().one();
    Ok(a.mul_term(&l.div(&la), &one).sub(&b.mul_term(&l.div(&lb), &one)))
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(
    basis: &[Polynomial<F>],
    sigma: &OrderingMatrix,
) -> Result<bool, ElimError> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], sigma)?;
            if !normal_form(&s, basis, sigma)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether two generating sets span the same ideal.
pub fn ideal_equal<F: Field>(
    a: &[Polynomial<F>],
    b: &[Polynomial<F>],
    sigma: &OrderingMatrix,
) -> Result<bool, ElimError> {
    let budget = Budget::unlimited();
    let ga = reduced_groebner_basis(a, sigma, &budget)?;
    let gb = reduced_groebner_basis(b, sigma, &budget)?;
    Ok(ga == gb)
}

/// Generators of `⟨gens⟩ ∩ K[others]` (reduced basis elements free of the
/// `block` indeterminates), still living in the ring of `gens`.
pub fn eliminate<F: Field>(
    gens: &[Polynomial<F>],
    block: &[usize],
    budget: &Budget,
) -> Result<Vec<Polynomial<F>>, ElimError> {
    let Some((ring, _)) = common_ring(gens)? else {
        return Ok(vec![]);
    };
    let sigma = OrderingMatrix::elimination(ring.weights(), block);
    Ok(reduced_groebner_basis(gens, &sigma, budget)?
        .into_iter()
        .filter(|g| !g.involves_any(block))
        .collect())
}
