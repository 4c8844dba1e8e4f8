use super::{OrderingMatrix, PowerProduct, RingError, MAX_VARS};

const FIELD_BITS: u32 = 16;
const FIELDS_PER_WORD: usize = 4;
/// Largest value a single order-vector entry may take.
pub const MAX_KEY_ENTRY: i64 = (1 << (FIELD_BITS - 1)) - 1;
const GUARD: u64 = 0x8000_8000_8000_8000;

/// A packed, non-negative order vector.
///
/// Each entry occupies a 16-bit field (the top bit is a guard), the first
/// row in the most significant position, so comparing keys as integers is
/// the same as comparing order vectors lexicographically, and multiplying
/// power-products is adding keys.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct OrderKey([u64; 4]);

impl OrderKey {
    pub const ZERO: OrderKey = OrderKey([0; 4]);

    #[inline]
    pub fn add(self, o: OrderKey) -> OrderKey {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0) {
            *a += b;
        }
        OrderKey(r)
    }

    /// Sum, or `None` if an entry overflows.
    #[inline]
    pub fn checked_add(self, o: OrderKey) -> Option<OrderKey> {
        let s = self.add(o);
        if s.0.iter().any(|w| w & GUARD != 0) {
            None
        } else {
            Some(s)
        }
    }

    /// Difference; only meaningful when `o` is the key of a divisor.
    #[inline]
    pub fn sub(self, o: OrderKey) -> OrderKey {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0) {
            *a -= b;
        }
        OrderKey(r)
    }

    /// The entry of the first row (the grading of the ordering).
    #[inline]
    pub fn first(&self) -> u64 {
        self.0[0] >> (64 - FIELD_BITS)
    }

    pub fn entries(&self, n: usize) -> Vec<i64> {
        (0..n)
            .map(|i| {
                let w = self.0[i / FIELDS_PER_WORD];
                let shift = 64 - FIELD_BITS * (1 + (i % FIELDS_PER_WORD) as u32);
                ((w >> shift) & 0xffff) as i64
            })
            .collect()
    }
}

/// A term-ordering prepared for packed keys: an equivalent matrix with
/// non-negative entries.
#[derive(Clone, Debug)]
pub struct KeyedOrder {
    original: OrderingMatrix,
    rows: Vec<Vec<i64>>,
}

impl KeyedOrder {
    /// Rows with negative entries get multiples of the earliest strictly
    /// positive row above them added; this does not change the ordering.
    pub fn new(sigma: &OrderingMatrix) -> Result<Self, RingError> {
        let mut rows = sigma.rows();
        let n = sigma.nvars();
        for i in 0..rows.len() {
            if rows[i].iter().all(|&x| x >= 0) {
                continue;
            }
            let j = (0..i)
                .find(|&j| rows[j].iter().all(|&x| x > 0))
                .ok_or(RingError::NotATermOrdering)?;
            let k = (0..n)
                .filter(|&c| rows[i][c] < 0)
                .map(|c| (-rows[i][c] + rows[j][c] - 1) / rows[j][c])
                .max()
                .unwrap_or(0);
            let pos = rows[j].clone();
            for (a, b) in rows[i].iter_mut().zip(pos) {
                *a += k * b;
            }
        }
        Ok(KeyedOrder {
            original: sigma.clone(),
            rows,
        })
    }

    pub fn ordering(&self) -> &OrderingMatrix {
        &self.original
    }

    pub fn nvars(&self) -> usize {
        self.original.nvars()
    }

    pub fn key(&self, pp: &PowerProduct) -> Result<OrderKey, RingError> {
        let mut k = [0u64; 4];
        let e = pp.raw();
        for (i, r) in self.rows.iter().enumerate() {
            let v: i64 = r.iter().zip(e.iter()).map(|(&a, &b)| a * b as i64).sum();
            if v > MAX_KEY_ENTRY {
                return Err(RingError::DegreeOverflow);
            }
            let shift = 64 - FIELD_BITS * (1 + (i % FIELDS_PER_WORD) as u32);
            k[i / FIELDS_PER_WORD] |= (v as u64) << shift;
        }
        Ok(OrderKey(k))
    }
}

const _: () = assert!(MAX_VARS <= 16);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_respect_the_ordering() {
        let sigma = OrderingMatrix::degrevlex(&[1, 2, 3]);
        let ko = KeyedOrder::new(&sigma).unwrap();
        let pps: Vec<PowerProduct> = (0..64)
            .map(|k| PowerProduct::from_exponents(&[k % 4, (k / 4) % 4, k / 16]))
            .collect();
        for a in &pps {
            for b in &pps {
                let (ka, kb) = (ko.key(a).unwrap(), ko.key(b).unwrap());
                assert_eq!(ka.cmp(&kb), sigma.compare(a, b));
                assert_eq!(ka.add(kb), ko.key(&a.mul(b)).unwrap());
                assert_eq!(ka.add(kb).sub(kb), ka);
            }
        }
        assert_eq!(ko.key(&PowerProduct::var(2)).unwrap().first(), 3);
    }

    #[test]
    fn overflow_is_detected() {
        let sigma = OrderingMatrix::degrevlex(&[1]);
        let ko = KeyedOrder::new(&sigma).unwrap();
        let big = ko.key(&PowerProduct::from_exponents(&[20000])).unwrap();
        assert!(big.checked_add(big).is_none());
        assert_eq!(
            ko.key(&PowerProduct::from_exponents(&[40000])),
            Err(RingError::DegreeOverflow)
        );
    }

    #[test]
    fn elimination_orders_are_keyable() {
        let sigma = OrderingMatrix::elimination(&[1, 1, 2], &[0]);
        let ko = KeyedOrder::new(&sigma).unwrap();
        let a = PowerProduct::var(0);
        let b = PowerProduct::from_exponents(&[0, 7, 7]);
        assert!(ko.key(&a).unwrap() > ko.key(&b).unwrap());
    }
}
