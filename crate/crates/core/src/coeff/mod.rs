//! Exact coefficient arithmetic: prime fields, rationals, Chinese
//! remaindering and fault-tolerant rational reconstruction.

mod field;
mod primes;
mod reconstruct;

pub use field::{
    common_denominator, format_rational, integer_content, inverse_mod, parse_rational, Field, Zp,
    QQ,
};
pub(crate) use field::bits;
pub use primes::{is_prime, PrimePool, DEFAULT_PRIME_START};
pub use reconstruct::{
    crt_combine, hrr, rat_reconstruct_fault_tolerant, Reconstruction, Residue, ResidueSet,
    DEFAULT_RELIABILITY_BITS,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("moduli are not coprime")]
    NonCoprimeModuli,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("empty residue set")]
    EmptyResidueSet,
}

/// A single element of ℤ/p together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElem {
    pub fn new(value: i64, modulus: u64) -> Result<Self, CoeffError> {
        let f = Zp::new(modulus)?;
        Ok(PrimeFieldElem {
            residue: f.reduce_i64(value),
            modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, other: &PrimeFieldElem) -> PrimeFieldElem {
        debug_assert_eq!(self.modulus, other.modulus);
        PrimeFieldElem {
            residue: self.residue * other.residue % self.modulus,
            modulus: self.modulus,
        }
    }
}

pub fn mod_inverse(a: &PrimeFieldElem) -> Result<PrimeFieldElem, CoeffError> {
    let residue = inverse_mod(a.residue, a.modulus).ok_or(CoeffError::ZeroInverse)?;
    Ok(PrimeFieldElem {
        residue,
        modulus: a.modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let one = PrimeFieldElem::new(1, 32003).unwrap();
        assert_eq!(mod_inverse(&one).unwrap().residue(), 1);
        let two = PrimeFieldElem::new(2, 32003).unwrap();
        let inv = mod_inverse(&two).unwrap();
        // 2 * 16002 = 32004 = 1 + 32003
        assert_eq!(inv.residue(), 16002);
        assert_eq!(2 * 16002 % 32003, 1);
        let m1 = PrimeFieldElem::new(-1, 32003).unwrap();
        assert_eq!(mod_inverse(&m1).unwrap().residue(), 32002);
        let zero = PrimeFieldElem::new(0, 32003).unwrap();
        assert_eq!(mod_inverse(&zero), Err(CoeffError::ZeroInverse));
    }

    #[test]
    fn field_laws_exhaustive_small_primes() {
        for p in (2u64..=101).filter(|&p| is_prime(p)) {
            for a in 1..p {
                let x = PrimeFieldElem::new(a as i64, p).unwrap();
                let y = mod_inverse(&x).unwrap();
                assert_eq!(x.mul(&y).residue(), 1, "a={a} p={p}");
            }
        }
    }
}
