use std::fmt;

/// Largest number of indeterminates a ring may have.
pub const MAX_VARS: usize = 16;

/// A power-product (monomial without coefficient) as a fixed exponent array.
///
/// Entries beyond the ring's dimension are always zero, so equality and
/// hashing do not need to know the dimension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PowerProduct([u16; MAX_VARS]);

impl PowerProduct {
    #[inline]
    pub fn one() -> Self {
        PowerProduct([0; MAX_VARS])
    }

    #[inline]
    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        PowerProduct(e)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many indeterminates");
        let mut e = [0; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x).expect("exponent overflow");
        }
        PowerProduct(e)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u32) {
        self.0[i] = u16::try_from(e).expect("exponent overflow");
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn raw(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        PowerProduct(e)
    }

    /// `self / other`, assuming `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Self) -> Self {
        debug_assert!(other.divides(self));
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a -= *b;
        }
        PowerProduct(e)
    }

    #[inline]
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(self.div(other))
        } else {
            None
        }
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn lcm(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        PowerProduct(e)
    }

    #[inline]
    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    #[inline]
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut e = self.0;
        for a in e.iter_mut() {
            *a = u16::try_from(*a as u32 * k).expect("exponent overflow");
        }
        PowerProduct(e)
    }

    /// Whether any of the indeterminates in `vars` occurs.
    pub fn involves_any(&self, vars: &[usize]) -> bool {
        vars.iter().any(|&i| self.0[i] != 0)
    }

    /// Bit mask of the occurring indeterminates, for quick divisibility rejection.
    #[inline]
    pub fn support_mask(&self) -> u16 {
        let mut m = 0u16;
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                m |= 1 << i;
            }
        }
        m
    }
}

impl fmt::Debug for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = PowerProduct::from_exponents(&[2, 0, 1]);
        let b = PowerProduct::from_exponents(&[1, 3]);
        assert_eq!(a.mul(&b), PowerProduct::from_exponents(&[3, 3, 1]));
        assert_eq!(a.lcm(&b), PowerProduct::from_exponents(&[2, 3, 1]));
        assert!(PowerProduct::var(0).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.mul(&b).div(&b), a);
        assert!(PowerProduct::var(2).is_coprime(&b));
        assert_eq!(a.weighted_degree(&[1, 2, 3]), 5);
        assert_eq!(a.support_mask(), 0b101);
    }
}
