use std::fmt::Debug;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CoeffError;

/// A coefficient field, passed around as a small context value.
///
/// Elements do not carry their field; every operation goes through the
/// context so that prime-field elements stay a single machine word.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, CoeffError>;

    /// Image of an integer.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// Image of a rational; `None` when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    /// Canonical rational representative (symmetric residue for prime fields).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, CoeffError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a - c*b`, the inner step of every row reduction.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field ℤ/p with p < 2³², elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Result<Self, CoeffError> {
        if !(2..(1u64 << 32)).contains(&p) || !super::is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        Ok(Zp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for Zp {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64, CoeffError> {
        inverse_mod(*a, self.p).ok_or(CoeffError::ZeroInverse)
    }
    #[inline]
    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let prod = (c * b) % self.p;
        self.sub(a, &prod)
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let den = self.from_int(q.denom());
        if den == 0 {
            return None;
        }
        let num = self.from_int(q.numer());
        Some(self.mul(&num, &inverse_mod(den, self.p)?))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        let v = if *a > self.p / 2 {
            *a as i64 - self.p as i64
        } else {
            *a as i64
        };
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct QQ;

impl Field for QQ {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, CoeffError> {
        if a.is_zero() {
            Err(CoeffError::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Render a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `a` or `a/b` (optionally signed) into a canonical rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Least common multiple of the denominators of a sequence of rationals.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators of a sequence of integers (zero for an empty input).
pub fn integer_content<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, n| acc.gcd(n))
}

pub(crate) fn bits(n: &BigInt) -> u64 {
    if n.sign() == Sign::NoSign {
        0
    } else {
        n.abs().bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp_arithmetic() {
        let f = Zp::new(32003).unwrap();
        assert_eq!(f.add(&32000, &10), 7);
        assert_eq!(f.sub(&3, &10), 31996);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.inv(&2).unwrap(), 16002);
        assert!(f.inv(&0).is_err());
        assert_eq!(f.from_i64(-1), 32002);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(f.mul(&f.from_rational(&third).unwrap(), &3), 1);
        assert!(Zp::new(3).unwrap().from_rational(&third).is_none());
    }

    #[test]
    fn symmetric_representative() {
        let f = Zp::new(7).unwrap();
        assert_eq!(f.to_rational(&6), BigRational::from_integer((-1).into()));
        assert_eq!(f.to_rational(&3), BigRational::from_integer(3.into()));
    }

    #[test]
    fn rejects_composites() {
        assert!(Zp::new(1).is_err());
        assert!(Zp::new(32001).is_err());
        assert!(Zp::new(1 << 33).is_err());
    }

    #[test]
    fn rational_text() {
        let q = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&parse_rational("12").unwrap()), "12");
        assert!(parse_rational("1/0").is_none());
    }
}
