use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CoeffError;

/// Number of bits by which the largest continued-fraction quotient must
/// exceed 1 before a reconstruction is declared reliable.
pub const DEFAULT_RELIABILITY_BITS: u64 = 20;

/// An integer residue class `value mod modulus`, with `0 <= value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl Residue {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let modulus = modulus.into();
        let value = value.into().mod_floor(&modulus);
        Residue { value, modulus }
    }
}

/// Combine two residues with coprime moduli into one modulo their product.
pub fn crt_combine(a: &Residue, b: &Residue) -> Result<Residue, CoeffError> {
    let ext = a.modulus.extended_gcd(&b.modulus);
    if !ext.gcd.is_one() {
        return Err(CoeffError::NonCoprimeModuli);
    }
    let modulus = &a.modulus * &b.modulus;
    // x = a + m1 * ((b - a) * m1^{-1} mod m2)
    let m1_inv = ext.x.mod_floor(&b.modulus);
    let k = ((&b.value - &a.value) * m1_inv).mod_floor(&b.modulus);
    let value = (&a.value + &a.modulus * k).mod_floor(&modulus);
    Ok(Residue { value, modulus })
}

/// Residues of one unknown rational with pairwise-coprime moduli.
#[derive(Clone, Debug, Default)]
pub struct ResidueSet {
    items: Vec<Residue>,
}

impl ResidueSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<(), CoeffError> {
        let r = Residue::new(value, modulus);
        if self.items.iter().any(|o| !o.modulus.gcd(&r.modulus).is_one()) {
            return Err(CoeffError::NonCoprimeModuli);
        }
        self.items.push(r);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn combined(&self) -> Result<Residue, CoeffError> {
        let mut it = self.items.iter();
        let first = it.next().ok_or(CoeffError::EmptyResidueSet)?.clone();
        it.try_fold(first, |acc, r| crt_combine(&acc, r))
    }
}

/// Outcome of a rational reconstruction attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Reliable(BigRational),
    /// A candidate was found but the quotient gap is below the threshold.
    Unreliable(BigRational),
    Failure,
}

impl Reconstruction {
    pub fn reliable(&self) -> Option<&BigRational> {
        match self {
            Reconstruction::Reliable(q) => Some(q),
            _ => None,
        }
    }
}

/// Heuristic rational reconstruction of `x mod m`.
///
/// Runs the extended Euclidean algorithm on `(m, x)` and picks the pair
/// `(r, t)` with `r ≡ t·x (mod m)` that precedes the largest partial quotient.
/// A large quotient means `|r|·|t|` is much smaller than `m`, which is what
/// both a genuine small rational and a rational polluted by a few wrong
/// residues look like: in the latter case `r/t = (a·e)/(b·e)` where `e` is the
/// product of the wrong moduli, and the common factor cancels.
///
/// `Reliable` when the largest quotient has at least `threshold_bits` bits
/// beyond 1, `Unreliable` above half that, `Failure` otherwise.
pub fn hrr(x: &BigInt, m: &BigInt, threshold_bits: u64) -> Reconstruction {
    let x = x.mod_floor(m);
    if x.is_zero() {
        return Reconstruction::Reliable(BigRational::zero());
    }
    let (mut r0, mut r1) = (m.clone(), x);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    let mut best: Option<(BigInt, BigInt)> = None;
    let mut best_q = BigInt::zero();
    while !r1.is_zero() {
        let (q, r2) = r0.div_rem(&r1);
        if q > best_q {
            best_q = q.clone();
            best = Some((r1.clone(), t1.clone()));
        }
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let Some((r, t)) = best else {
        return Reconstruction::Failure;
    };
    let gap = best_q.bits().saturating_sub(1);
    if t.is_zero() {
        return Reconstruction::Failure;
    }
    let (r, t) = if t.is_negative() { (-r, -t) } else { (r, t) };
    let value = BigRational::new(r, t);
    if gap >= threshold_bits {
        Reconstruction::Reliable(value)
    } else if gap >= threshold_bits / 2 {
        Reconstruction::Unreliable(value)
    } else {
        Reconstruction::Failure
    }
}

/// Reconstruct a rational from residues, tolerating a minority of wrong ones.
pub fn rat_reconstruct_fault_tolerant(
    rs: &ResidueSet,
    threshold_bits: u64,
) -> Result<Reconstruction, CoeffError> {
    let c = rs.combined()?;
    Ok(hrr(&c.value, &c.modulus, threshold_bits))
}
