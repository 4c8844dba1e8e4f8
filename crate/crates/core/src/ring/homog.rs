use super::{Polynomial, PowerProduct, RingError};
use crate::coeff::Field;

impl<F: Field> Polynomial<F> {
    fn check_homogenizer(&self, h: usize) -> Result<(), RingError> {
        if h >= self.ring().nvars() {
            return Err(RingError::DimensionMismatch);
        }
        if self.ring().weights()[h] != 1 || self.involves(h) {
            return Err(RingError::BadHomogenizer(self.ring().name(h).to_string()));
        }
        Ok(())
    }

    /// Homogenization with respect to the ring grading, using the weight-1
    /// indeterminate `h`, which must not occur in `self`.
    pub fn homogenize(&self, h: usize) -> Result<Self, RingError> {
        self.shifted_homogenize(self.degree(), h)
    }

    /// `h^(d − deg f) · f^hom`, homogeneous of degree exactly `d`; zero stays zero.
    pub fn shifted_homogenize(&self, d: u64, h: usize) -> Result<Self, RingError> {
        self.check_homogenizer(h)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let deg = self.degree();
        if d < deg {
            return Err(RingError::DegreeTooSmall { target: d, degree: deg });
        }
        let w = self.ring().weights().to_vec();
        let terms = self.terms().iter().map(|(pp, c)| {
            let mut q = *pp;
            q.set_exp(h, (d - pp.weighted_degree(&w)) as u32);
            (q, c.clone())
        });
        Ok(Polynomial::from_terms(self.ring(), self.field(), terms))
    }

    /// Substitute 1 for `h`.
    pub fn dehomogenize(&self, h: usize) -> Result<Self, RingError> {
        if h >= self.ring().nvars() {
            return Err(RingError::DimensionMismatch);
        }
        let terms = self.terms().iter().map(|(pp, c)| {
            let mut q: PowerProduct = *pp;
            q.set_exp(h, 0);
            (q, c.clone())
        });
        Ok(Polynomial::from_terms(self.ring(), self.field(), terms))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;
    use crate::coeff::QQ;
    use crate::ring::Ring;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sth() -> Arc<Ring> {
        Ring::new(["s", "t", "h"]).unwrap()
    }

    fn poly(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Polynomial<QQ> {
        Polynomial::from_terms(
            ring,
            &QQ,
            terms.iter().map(|(e, c)| (PowerProduct::from_exponents(e), q(*c))),
        )
    }

    #[test]
    fn homogenize_examples() {
        let r = sth();
        let c = poly(&r, &[(&[0, 0, 0], 5)]);
        assert_eq!(c.homogenize(2).unwrap(), c);
        let g = poly(&r, &[(&[0, 2, 0], 1), (&[1, 0, 0], -1), (&[0, 1, 0], -1)]);
        let gh = g.homogenize(2).unwrap();
        assert_eq!(
            gh,
            poly(&r, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1), (&[0, 1, 1], -1)])
        );
        assert!(gh.is_homogeneous());
        assert_eq!(gh.dehomogenize(2).unwrap(), g);
        assert!(gh.homogenize(2).is_err());
    }

    #[test]
    fn shifted_examples() {
        let r = sth();
        let zero = Polynomial::zero(&r, &QQ);
        assert!(zero.shifted_homogenize(4, 2).unwrap().is_zero());
        let s = poly(&r, &[(&[1, 0, 0], 1)]);
        assert_eq!(s.shifted_homogenize(2, 2).unwrap(), poly(&r, &[(&[1, 0, 1], 1)]));
        let g = poly(&r, &[(&[0, 2, 0], 1), (&[1, 0, 0], -1), (&[0, 1, 0], -1)]);
        assert_eq!(
            g.shifted_homogenize(3, 2).unwrap(),
            poly(&r, &[(&[0, 2, 1], 1), (&[1, 0, 2], -1), (&[0, 1, 2], -1)])
        );
        assert_eq!(
            g.shifted_homogenize(1, 2),
            Err(RingError::DegreeTooSmall { target: 1, degree: 2 })
        );
    }

    #[test]
    fn dehomogenize_drops_h() {
        let r = Ring::new(["x", "y", "z", "h"]).unwrap();
        let f = poly(&r, &[(&[1, 0, 1, 1], 1), (&[0, 1, 1, 1], -1)]);
        assert_eq!(
            f.dehomogenize(3).unwrap(),
            poly(&r, &[(&[1, 0, 1, 0], 1), (&[0, 1, 1, 0], -1)])
        );
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..6)
    }

    fn build(r: &Arc<Ring>, t: &[(u32, u32, i64)]) -> Polynomial<QQ> {
        Polynomial::from_terms(
            r,
            &QQ,
            t.iter()
                .map(|&(a, b, c)| (PowerProduct::from_exponents(&[a, b, 0]), q(c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn shifted_product_law(a in arb_poly(), b in arb_poly(), e1 in 0u64..3, e2 in 0u64..3) {
            let r = sth();
            let (f, g) = (build(&r, &a), build(&r, &b));
            let (d1, d2) = (f.degree() + e1, g.degree() + e2);
            let lhs = f.shifted_homogenize(d1, 2).unwrap().mul(&g.shifted_homogenize(d2, 2).unwrap());
            let rhs = f.mul(&g).shifted_homogenize(d1 + d2, 2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shifted_sum_law(a in arb_poly(), b in arb_poly(), e in 0u64..3) {
            let r = sth();
            let (f, g) = (build(&r, &a), build(&r, &b));
            let d = f.degree().max(g.degree()) + e;
            let lhs = f.shifted_homogenize(d, 2).unwrap().add(&g.shifted_homogenize(d, 2).unwrap());
            let rhs = f.add(&g).shifted_homogenize(d, 2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dehomogenize_inverts_homogenize(a in arb_poly()) {
            let r = sth();
            let f = build(&r, &a);
            prop_assert_eq!(f.homogenize(2).unwrap().dehomogenize(2).unwrap(), f);
        }
    }
}
