//! Exact division, lcm and gcd of multivariate polynomials.

use super::{eliminate, ElimError};
use crate::budget::Budget;
use crate::coeff::Field;
use crate::ring::{Polynomial, Ring, RingError};

/// `a / b` if `b` divides `a` exactly, otherwise `None`.
pub fn divide_exact<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Result<Option<Polynomial<F>>, RingError> {
    if a.ring() != b.ring() {
        return Err(RingError::RingMismatch);
    }
    let sigma = a.ring().default_ordering();
    let (lb, cb) = b.leading_term(&sigma)?;
    let f = a.field();
    let inv = f.inv(&cb).expect("non-zero leading coefficient");
    let mut r = a.clone();
    let mut q = Polynomial::zero(a.ring(), f);
    while !r.is_zero() {
        let (lr, cr) = r.leading_term(&sigma)?;
        let Some(m) = lr.checked_div(&lb) else {
            return Ok(None);
        };
        let c = f.mul(&cr, &inv);
        q = q.add(&Polynomial::monomial(a.ring(), f, m, c.clone()));
        r = r.sub(&b.mul_term(&m, &c));
    }
    Ok(Some(q))
}

/// A least common multiple (defined up to a non-zero scalar), computed as
/// the generator of `⟨w·a, (1−w)·b⟩ ∩ K[t]`.
pub fn poly_lcm<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
    budget: &Budget,
) -> Result<Polynomial<F>, ElimError> {
    if a.is_zero() || b.is_zero() {
        return Ok(Polynomial::zero(a.ring(), a.field()));
    }
    if b.is_constant() || divide_exact(a, b)?.is_some() {
        return Ok(a.clone());
    }
    if a.is_constant() || divide_exact(b, a)?.is_some() {
        return Ok(b.clone());
    }
    let ring = a.ring();
    let n = ring.nvars();
    let mut names = ring.names().to_vec();
    names.push(ring.fresh_name("w"));
    let ext = Ring::new(names)?;
    let inject: Vec<usize> = (0..n).collect();
    let f = a.field();
    let w = Polynomial::var(&ext, f, n);
    let one = Polynomial::one(&ext, f);
    let gens = [
        w.mul(&a.embed(&ext, &inject)?),
        one.sub(&w).mul(&b.embed(&ext, &inject)?),
    ];
    let elim = eliminate(&gens, &[n], budget)?;
    debug_assert_eq!(elim.len(), 1, "intersection of principal ideals is principal");
    let mut back: Vec<usize> = (0..n).collect();
    back.push(0); // w does not occur
    Ok(elim[0].embed(ring, &back)?)
}

/// A greatest common divisor (defined up to a non-zero scalar).
pub fn poly_gcd<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
    budget: &Budget,
) -> Result<Polynomial<F>, ElimError> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    let l = poly_lcm(a, b, budget)?;
    Ok(divide_exact(&a.mul(b), &l)?.expect("the lcm divides the product"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QQ;
    use crate::parse::parse_polynomial;

    fn p(r: &std::sync::Arc<Ring>, s: &str) -> Polynomial<QQ> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn exact_division() {
        let r = Ring::new(["s", "t"]).unwrap();
        let a = p(&r, "(s + t)*(s^2 - t + 1)");
        assert_eq!(divide_exact(&a, &p(&r, "s + t")).unwrap(), Some(p(&r, "s^2 - t + 1")));
        assert_eq!(divide_exact(&a, &p(&r, "s - t")).unwrap(), None);
    }

    #[test]
    fn gcd_and_lcm() {
        let r = Ring::new(["t"]).unwrap();
        let b = Budget::unlimited();
        let g = poly_gcd(&p(&r, "2*t^2 - t - 3"), &p(&r, "1 + t^17"), &b).unwrap();
        assert!(g.is_scalar_multiple_of(&p(&r, "t + 1")));
        let st = Ring::new(["s", "t"]).unwrap();
        let l = poly_lcm(&p(&st, "1 + t^2"), &p(&st, "(1 + t^2)*(1 + s^2)"), &b).unwrap();
        assert!(l.is_scalar_multiple_of(&p(&st, "(1 + t^2)*(1 + s^2)")));
        let l = poly_lcm(&p(&st, "s*t - 1"), &p(&st, "s + t"), &b).unwrap();
        assert!(l.is_scalar_multiple_of(&p(&st, "(s*t - 1)*(s + t)")));
        let g = poly_gcd(&p(&st, "(s - t)*(s + 2)"), &p(&st, "(s - t)*(t + 2)"), &b).unwrap();
        assert!(g.is_scalar_multiple_of(&p(&st, "s - t")));
    }
}
