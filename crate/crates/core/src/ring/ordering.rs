use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use super::{PowerProduct, RingError, MAX_VARS};

/// A term-ordering given by an integer matrix: power-products are compared by
/// lexicographic comparison of their order vectors `M·e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderingMatrix {
    n: usize,
    rows: Vec<[i64; MAX_VARS]>,
}

fn pad(row: &[i64]) -> [i64; MAX_VARS] {
    let mut r = [0; MAX_VARS];
    r[..row.len()].copy_from_slice(row);
    r
}

fn rank(rows: &[Vec<i64>], n: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..n {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl OrderingMatrix {
    /// A square matrix that must define a term-ordering: invertible, with the
    /// first non-zero entry of every column positive.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, RingError> {
        let n = rows.len();
        if n == 0 || n > MAX_VARS || rows.iter().any(|r| r.len() != n) {
            return Err(RingError::DimensionMismatch);
        }
        if rank(&rows, n) != n {
            return Err(RingError::SingularOrdering);
        }
        for col in 0..n {
            let first = rows.iter().map(|r| r[col]).find(|&x| x != 0);
            if first.is_none_or(|x| x < 0) {
                return Err(RingError::NotATermOrdering);
            }
        }
        Ok(OrderingMatrix {
            n,
            rows: rows.iter().map(|r| pad(r)).collect(),
        })
    }

    /// Complete a partial matrix to a term-ordering on `n` indeterminates:
    /// rows linearly dependent on earlier ones are dropped, then rows of the
    /// reversed negated identity `-e_n, ..., -e_1` are appended whenever they
    /// increase the rank, until the matrix is square.
    pub fn complete(n: usize, rows: Vec<Vec<i64>>) -> Result<Self, RingError> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(RingError::DimensionMismatch);
        }
        let mut kept: Vec<Vec<i64>> = Vec::new();
        for r in rows {
            kept.push(r);
            if rank(&kept, n) < kept.len() {
                kept.pop();
            }
        }
        for i in (0..n).rev() {
            if kept.len() == n {
                break;
            }
            let mut r = vec![0; n];
            r[i] = -1;
            kept.push(r);
            if rank(&kept, n) < kept.len() {
                kept.pop();
            }
        }
        OrderingMatrix::new(kept)
    }

    /// Degree-reverse-lexicographic ordering for the given grading weights.
    pub fn degrevlex(weights: &[u32]) -> Self {
        let n = weights.len();
        let w: Vec<i64> = weights.iter().map(|&x| x as i64).collect();
        OrderingMatrix::complete(n, vec![w]).expect("positive weights give a term-ordering")
    }

    /// Degree-lexicographic ordering with `x_1 > x_2 > ...`.
    pub fn deglex(n: usize) -> Self {
        let mut rows = vec![vec![1; n]];
        for i in 0..n.saturating_sub(1) {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        OrderingMatrix::new(rows).expect("deglex is a term-ordering")
    }

    pub fn lex(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        OrderingMatrix::new(rows).expect("lex is a term-ordering")
    }

    /// Elimination ordering for `block`: any power-product involving a block
    /// indeterminate is larger than every power-product free of them; ties are
    /// broken by weighted degree, then reverse-lexicographically.
    pub fn elimination(weights: &[u32], block: &[usize]) -> Self {
        let n = weights.len();
        let mut ind = vec![0; n];
        for &b in block {
            ind[b] = 1;
        }
        let w = weights.iter().map(|&x| x as i64).collect();
        OrderingMatrix::complete(n, vec![ind, w]).expect("valid elimination ordering")
    }

    /// Degree-compatible ordering that eliminates `block` on homogeneous
    /// polynomials: weighted degree first, then degree in the block, then
    /// reverse-lexicographic tie-breaks. On each homogeneous component it
    /// agrees with a block ordering whose first block is `block`.
    pub fn graded_elimination(weights: &[u32], block: &[usize]) -> Self {
        let n = weights.len();
        let mut ind = vec![0; n];
        for &b in block {
            ind[b] = 1;
        }
        let w = weights.iter().map(|&x| x as i64).collect();
        OrderingMatrix::complete(n, vec![w, ind]).expect("valid graded elimination ordering")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r[..self.n].to_vec()).collect()
    }

    pub fn first_row(&self) -> &[i64] {
        &self.rows[0][..self.n]
    }

    /// Only finitely many power-products lie below any given one.
    pub fn is_enumerative(&self) -> bool {
        self.first_row().iter().all(|&x| x > 0)
    }

    /// Whether every row has non-negative entries.
    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    /// An equivalent matrix with non-negative entries, obtained by adding
    /// multiples of the (strictly positive) first row to later rows.
    pub fn to_nonnegative(&self) -> Option<Self> {
        if !self.is_enumerative() {
            return None;
        }
        let first = self.rows[0];
        let mut rows = vec![first];
        for r in &self.rows[1..] {
            let k = (0..self.n)
                .filter(|&j| r[j] < 0)
                .map(|j| (-r[j] + first[j] - 1) / first[j])
                .max()
                .unwrap_or(0);
            let mut nr = *r;
            for j in 0..self.n {
                nr[j] += k * first[j];
            }
            rows.push(nr);
        }
        Some(OrderingMatrix { n: self.n, rows })
    }

    pub fn order_vector(&self, a: &PowerProduct) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| (0..self.n).map(|j| r[j] * a.exp(j) as i64).sum())
            .collect()
    }

    /// Order vector in a fixed-size array, usable as a sort key.
    pub fn order_key(&self, a: &PowerProduct) -> [i64; MAX_VARS] {
        let mut k = [0; MAX_VARS];
        let e = a.raw();
        for (slot, r) in k.iter_mut().zip(&self.rows) {
            *slot = r.iter().zip(e).map(|(&x, &y)| x * y as i64).sum();
        }
        k
    }

    #[inline]
    pub fn compare(&self, a: &PowerProduct, b: &PowerProduct) -> Ordering {
        let (ea, eb) = (a.raw(), b.raw());
        if ea == eb {
            return Ordering::Equal;
        }
        let mut d = [0i64; MAX_VARS];
        for j in 0..MAX_VARS {
            d[j] = ea[j] as i64 - eb[j] as i64;
        }
        for r in &self.rows {
            let s: i64 = r.iter().zip(&d).map(|(x, y)| x * y).sum();
            if s != 0 {
                return s.cmp(&0);
            }
        }
        Ordering::Equal
    }

    /// Comparison that validates the dimension of the inputs.
    pub fn try_compare(
        &self,
        nvars: usize,
        a: &PowerProduct,
        b: &PowerProduct,
    ) -> Result<Ordering, RingError> {
        if nvars != self.n {
            return Err(RingError::DimensionMismatch);
        }
        Ok(self.compare(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(e: &[u32]) -> PowerProduct {
        PowerProduct::from_exponents(e)
    }

    #[test]
    fn degrevlex_in_two_variables() {
        // ((1,1),(0,-1)): s^2 has order vector (2,0), st has (2,-1)
        let s = OrderingMatrix::degrevlex(&[1, 1]);
        assert_eq!(s.rows(), vec![vec![1, 1], vec![0, -1]]);
        assert_eq!(s.compare(&pp(&[2, 0]), &pp(&[1, 1])), Ordering::Greater);
        assert_eq!(s.compare(&pp(&[1, 1]), &pp(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn matrix_from_direct_example() {
        let m = OrderingMatrix::new(vec![vec![5, 3, 4], vec![5, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(m.order_vector(&pp(&[1, 0, 0])), vec![5, 5, 0]);
        assert_eq!(m.order_vector(&pp(&[0, 0, 1])), vec![4, 0, 1]);
        assert_eq!(m.compare(&pp(&[1, 0, 0]), &pp(&[0, 0, 1])), Ordering::Greater);
        assert!(m.is_enumerative());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert_eq!(
            OrderingMatrix::new(vec![vec![1, 1], vec![2, 2]]),
            Err(RingError::SingularOrdering)
        );
        assert_eq!(
            OrderingMatrix::new(vec![vec![1, -1], vec![0, 1]]),
            Err(RingError::NotATermOrdering)
        );
        assert!(OrderingMatrix::new(vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn completion_drops_dependent_rows() {
        let m = OrderingMatrix::complete(2, vec![vec![2, 3], vec![4, 6]]).unwrap();
        assert_eq!(m.rows(), vec![vec![2, 3], vec![0, -1]]);
    }

    #[test]
    fn elimination_orders_block_first() {
        let m = OrderingMatrix::elimination(&[1, 1, 1], &[0]);
        assert_eq!(m.compare(&pp(&[1, 0, 0]), &pp(&[0, 5, 5])), Ordering::Greater);
        let g = OrderingMatrix::graded_elimination(&[1, 1, 1], &[0]);
        assert_eq!(g.compare(&pp(&[1, 0, 0]), &pp(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(g.compare(&pp(&[1, 0, 0]), &pp(&[0, 1, 1])), Ordering::Less);
    }

    #[test]
    fn nonnegative_equivalent() {
        let m = OrderingMatrix::degrevlex(&[1, 1, 1]);
        let nn = m.to_nonnegative().unwrap();
        assert!(nn.is_nonnegative());
        let pps: Vec<PowerProduct> = (0..27)
            .map(|k| pp(&[k % 3, (k / 3) % 3, k / 9]))
            .collect();
        for a in &pps {
            for b in &pps {
                assert_eq!(m.compare(a, b), nn.compare(a, b));
            }
        }
    }

    fn arb_pp() -> impl Strategy<Value = PowerProduct> {
        prop::collection::vec(0u32..5, 3).prop_map(|e| pp(&e))
    }

    fn orderings() -> Vec<OrderingMatrix> {
        vec![
            OrderingMatrix::degrevlex(&[1, 1, 1]),
            OrderingMatrix::degrevlex(&[2, 3, 4]),
            OrderingMatrix::deglex(3),
            OrderingMatrix::lex(3),
            OrderingMatrix::elimination(&[1, 1, 1], &[0]),
            OrderingMatrix::graded_elimination(&[1, 2, 1], &[2]),
            OrderingMatrix::new(vec![vec![5, 3, 4], vec![5, 1, 4], vec![0, 0, -1]]).unwrap(),
        ]
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn ordering_laws(a in arb_pp(), b in arb_pp(), c in arb_pp(), t in arb_pp()) {
            for s in orderings() {
                prop_assert_eq!(s.compare(&a, &b), s.compare(&b, &a).reverse());
                prop_assert_eq!(s.compare(&a, &b) == Ordering::Equal, a == b);
                if s.compare(&a, &b) == Ordering::Less && s.compare(&b, &c) == Ordering::Less {
                    prop_assert_eq!(s.compare(&a, &c), Ordering::Less);
                }
                prop_assert_eq!(s.compare(&t.mul(&a), &t.mul(&b)), s.compare(&a, &b));
                prop_assert_ne!(s.compare(&PowerProduct::one(), &a), Ordering::Greater);
            }
        }

        #[test]
        fn enumerativity_witness(t0 in arb_pp()) {
            // everything below t0 has weighted degree at most that of t0
            for s in orderings().into_iter().filter(|s| s.is_enumerative()) {
                let w: Vec<u32> = s.first_row().iter().map(|&x| x as u32).collect();
                let bound = t0.weighted_degree(&w);
                let mut below = 0;
                for k in 0..(13u32 * 13 * 13) {
                    let p = pp(&[k % 13, (k / 13) % 13, k / 169]);
                    if s.compare(&p, &t0) == Ordering::Less {
                        prop_assert!(p.weighted_degree(&w) <= bound);
                        below += 1;
                    }
                }
                prop_assert!(below < 13 * 13 * 13);
            }
        }
    }

    #[test]
    fn degree_compatible_orderings_are_enumerative() {
        assert!(OrderingMatrix::degrevlex(&[3, 1]).is_enumerative());
        assert!(OrderingMatrix::deglex(4).is_enumerative());
        assert!(!OrderingMatrix::lex(2).is_enumerative());
        assert!(!OrderingMatrix::elimination(&[1, 1], &[0]).is_enumerative());
    }
}
