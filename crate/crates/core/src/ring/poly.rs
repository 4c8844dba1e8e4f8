use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{OrderingMatrix, PowerProduct, Ring, RingError};
use crate::coeff::{common_denominator, integer_content, Field, Zp, QQ};

/// A sparse multivariate polynomial over a field.
///
/// Terms are stored with distinct power-products and non-zero coefficients,
/// sorted descending by the exponent-array order (lexicographic), which makes
/// equality structural and lookups logarithmic. Orderings relevant to an
/// algorithm are applied on demand via [`Polynomial::lpp`] and friends.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring>,
    field: F,
    terms: Vec<(PowerProduct, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.field == other.field && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn canonical_sort<E>(terms: &mut [(PowerProduct, E)]) {
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring>, field: &F) -> Self {
        Polynomial {
            ring: ring.clone(),
            field: field.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, field: &F, c: F::Elem) -> Self {
        Self::monomial(ring, field, PowerProduct::one(), c)
    }

    pub fn one(ring: &Arc<Ring>, field: &F) -> Self {
        Self::constant(ring, field, field.one())
    }

    pub fn var(ring: &Arc<Ring>, field: &F, i: usize) -> Self {
        Self::monomial(ring, field, PowerProduct::var(i), field.one())
    }

    pub fn monomial(ring: &Arc<Ring>, field: &F, pp: PowerProduct, c: F::Elem) -> Self {
        let terms = if field.is_zero(&c) { vec![] } else { vec![(pp, c)] };
        Polynomial {
            ring: ring.clone(),
            field: field.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: duplicates are summed and zeros dropped.
    pub fn from_terms(
        ring: &Arc<Ring>,
        field: &F,
        terms: impl IntoIterator<Item = (PowerProduct, F::Elem)>,
    ) -> Self {
        let mut v: Vec<(PowerProduct, F::Elem)> = terms.into_iter().collect();
        canonical_sort(&mut v);
        let mut out: Vec<(PowerProduct, F::Elem)> = Vec::with_capacity(v.len());
        for (pp, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == pp => last.1 = field.add(&last.1, &c),
                _ => out.push((pp, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial {
            ring: ring.clone(),
            field: field.clone(),
            terms: out,
        }
    }

    /// Build from terms already sorted canonically with distinct power-products
    /// and non-zero coefficients.
    pub(crate) fn from_sorted_unchecked(
        ring: &Arc<Ring>,
        field: &F,
        terms: Vec<(PowerProduct, F::Elem)>,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial {
            ring: ring.clone(),
            field: field.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &[(PowerProduct, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(PowerProduct, F::Elem)> {
        self.terms
    }

    /// Number of terms, i.e. `|Supp(f)|`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(pp, _)| pp.is_one())
    }

    pub fn support(&self) -> Vec<PowerProduct> {
        self.terms.iter().map(|(pp, _)| *pp).collect()
    }

    pub fn coeff(&self, pp: &PowerProduct) -> F::Elem {
        match self.terms.binary_search_by(|(q, _)| pp.cmp(q)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> F::Elem {
        self.coeff(&PowerProduct::one())
    }

    fn check_same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "{}",
            RingError::RingMismatch
        );
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_same_ring(other);
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted_unchecked(&self.ring, f, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let terms = self.terms.iter().map(|(pp, c)| (*pp, f.neg(c))).collect();
        Polynomial::from_sorted_unchecked(&self.ring, f, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring, f);
        }
        let terms = self.terms.iter().map(|(pp, a)| (*pp, f.mul(a, c))).collect();
        Polynomial::from_sorted_unchecked(&self.ring, f, terms)
    }

    /// Multiply by a single term `c·pp`.
    pub fn mul_term(&self, pp: &PowerProduct, c: &F::Elem) -> Self {
        let f = &self.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring, f);
        }
        // multiplication by a power-product preserves the lexicographic order
        let terms = self
            .terms
            .iter()
            .map(|(q, a)| (q.mul(pp), f.mul(a, c)))
            .collect();
        Polynomial::from_sorted_unchecked(&self.ring, f, terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring, f);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<PowerProduct, F::Elem> =
            HashMap::with_capacity(small.len() * big.len());
        for (p, a) in &small.terms {
            for (q, b) in &big.terms {
                let prod = f.mul(a, b);
                acc.entry(p.mul(q))
                    .and_modify(|c| *c = f.add(c, &prod))
                    .or_insert(prod);
            }
        }
        Polynomial::from_terms(&self.ring, f, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring, &self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading power-product under `sigma`.
    pub fn lpp(&self, sigma: &OrderingMatrix) -> Result<PowerProduct, RingError> {
        self.leading_term(sigma).map(|(pp, _)| pp)
    }

    pub fn leading_coeff(&self, sigma: &OrderingMatrix) -> Result<F::Elem, RingError> {
        self.leading_term(sigma).map(|(_, c)| c)
    }

    pub fn leading_term(&self, sigma: &OrderingMatrix) -> Result<(PowerProduct, F::Elem), RingError> {
        if sigma.nvars() != self.ring.nvars() {
            return Err(RingError::DimensionMismatch);
        }
        self.terms
            .iter()
            .max_by(|a, b| sigma.compare(&a.0, &b.0))
            .cloned()
            .ok_or(RingError::ZeroPolynomial)
    }

    /// Terms sorted descending under `sigma`.
    pub fn sorted_terms(&self, sigma: &OrderingMatrix) -> Vec<(PowerProduct, F::Elem)> {
        let mut v = self.terms.clone();
        v.sort_by(|a, b| sigma.compare(&b.0, &a.0));
        v
    }

    /// Weighted degree (maximum over the support); 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        let w = self.ring.weights();
        self.terms
            .iter()
            .map(|(pp, _)| pp.weighted_degree(w))
            .max()
            .unwrap_or(0)
    }

    /// Standard (unweighted) total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(pp, _)| pp.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(pp, _)| pp.exp(var)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(pp, _)| pp.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(pp, _)| pp.exp(var) > 0)
    }

    pub fn involves_any(&self, vars: &[usize]) -> bool {
        self.terms.iter().any(|(pp, _)| pp.involves_any(vars))
    }

    /// Scale so that the leading coefficient under `sigma` is 1.
    pub fn make_monic(&self, sigma: &OrderingMatrix) -> Self {
        match self.leading_coeff(sigma) {
            Ok(lc) => self.scale(&self.field.inv(&lc).expect("non-zero leading coefficient")),
            Err(_) => self.clone(),
        }
    }

    /// Whether `self = c·other` for a non-zero constant `c`.
    pub fn is_scalar_multiple_of(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        if self.terms.iter().zip(&other.terms).any(|(a, b)| a.0 != b.0) {
            return false;
        }
        let f = &self.field;
        let c = f
            .div(&self.terms[0].1, &other.terms[0].1)
            .expect("non-zero coefficient");
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|(a, b)| f.mul(&b.1, &c) == a.1)
    }

    /// Apply a coefficient map into another field, dropping terms that map
    /// to zero; `None` if the map is undefined on some coefficient.
    pub fn map_coeffs<G: Field>(
        &self,
        target: &G,
        map: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<Polynomial<G>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (pp, c) in &self.terms {
            let d = map(c)?;
            if !target.is_zero(&d) {
                terms.push((*pp, d));
            }
        }
        Some(Polynomial::from_sorted_unchecked(&self.ring, target, terms))
    }

    /// The same polynomial with rational coefficients (symmetric residues
    /// for prime fields).
    pub fn to_rational(&self) -> Polynomial<QQ> {
        self.map_coeffs(&QQ, |c| Some(self.field.to_rational(c)))
            .expect("total map")
    }

    /// Reinterpret in a ring with the same number of indeterminates (e.g.
    /// with another grading).
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<Self, RingError> {
        if ring.nvars() != self.ring.nvars() {
            return Err(RingError::DimensionMismatch);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            field: self.field.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Move into `target`, sending indeterminate `i` to `var_map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, var_map: &[usize]) -> Result<Self, RingError> {
        if var_map.len() != self.ring.nvars() || var_map.iter().any(|&j| j >= target.nvars()) {
            return Err(RingError::DimensionMismatch);
        }
        let terms = self.terms.iter().map(|(pp, c)| {
            let mut q = PowerProduct::one();
            for (i, &j) in var_map.iter().enumerate() {
                q.set_exp(j, q.exp(j) + pp.exp(i));
            }
            (q, c.clone())
        });
        Ok(Polynomial::from_terms(target, &self.field, terms))
    }

    /// Substitute polynomials (all from one common ring) for the
    /// indeterminates.
    pub fn substitute(&self, args: &[Polynomial<F>]) -> Result<Polynomial<F>, RingError> {
        if args.len() != self.ring.nvars() || args.is_empty() {
            return Err(RingError::DimensionMismatch);
        }
        let target = args[0].ring().clone();
        if args.iter().any(|a| a.ring != target) {
            return Err(RingError::RingMismatch);
        }
        let f = &self.field;
        let mut powers: Vec<Vec<Polynomial<F>>> = args
            .iter()
            .map(|a| vec![Polynomial::one(&target, f), a.clone()])
            .collect();
        let mut acc = Polynomial::zero(&target, f);
        for (pp, c) in &self.terms {
            let mut t = Polynomial::constant(&target, f, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = pp.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&args[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `g(p₁/q, …, pₙ/q)` as a single fraction `(N, q^D)` with `D` the total
    /// degree of `g`: `N = Σ c_T · p^T · q^(D−|T|)`. The substitution vanishes
    /// iff `N = 0`.
    pub fn substitute_fraction(
        &self,
        numerators: &[Polynomial<F>],
        denominator: &Polynomial<F>,
    ) -> Result<(Polynomial<F>, Polynomial<F>), RingError> {
        if denominator.is_zero() {
            return Err(RingError::ZeroPolynomial);
        }
        let d = self.total_degree();
        // homogenize with respect to an extra slot that receives q
        let n = self.ring.nvars();
        if n + 1 > super::MAX_VARS {
            return Err(RingError::TooManyIndeterminates);
        }
        let mut names: Vec<String> = self.ring.names().to_vec();
        names.push(self.ring.fresh_name("x0"));
        let ext = Ring::new(names)?;
        let terms = self.terms.iter().map(|(pp, c)| {
            let mut q = *pp;
            q.set_exp(n, (d - pp.total_degree()) as u32);
            (q, c.clone())
        });
        let hom = Polynomial::from_terms(&ext, &self.field, terms);
        let mut args = numerators.to_vec();
        args.push(denominator.clone());
        let num = hom.substitute(&args)?;
        Ok((num, denominator.pow(d as u32)))
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem, RingError> {
        if point.len() != self.ring.nvars() {
            return Err(RingError::DimensionMismatch);
        }
        let f = &self.field;
        let mut cache: Vec<Vec<F::Elem>> = point.iter().map(|x| vec![f.one(), x.clone()]).collect();
        let mut acc = f.zero();
        for (pp, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in cache.iter_mut().enumerate() {
                let e = pp.exp(i) as usize;
                while pw.len() <= e {
                    let next = f.mul(pw.last().unwrap(), &point[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = f.mul(&t, &pw[e]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Render with a chosen term order (descending).
    pub fn render_with(&self, sigma: &OrderingMatrix) -> String {
        let q = self.to_rational();
        let den = common_denominator(q.terms.iter().map(|(_, c)| c));
        let body = render_terms(&self.ring, q.sorted_terms(sigma).iter().map(|(pp, c)| {
            (pp, (c * BigRational::from_integer(den.clone())).to_integer())
        }));
        if den.is_one() {
            body
        } else {
            format!("({body})/{den}")
        }
    }
}

fn render_pp(ring: &Ring, pp: &PowerProduct) -> String {
    let mut parts = Vec::new();
    for i in 0..ring.nvars() {
        match pp.exp(i) {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            e => parts.push(format!("{}^{e}", ring.name(i))),
        }
    }
    parts.join("*")
}

fn render_terms<'a>(ring: &Ring, terms: impl Iterator<Item = (&'a PowerProduct, BigInt)>) -> String {
    let mut s = String::new();
    for (k, (pp, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if pp.is_one() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&render_pp(ring, pp));
        } else {
            s.push_str(&format!("{a}*{}", render_pp(ring, pp)));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Terms in descending weighted-degrevlex order; rational coefficients are
    /// written as a single fraction `(integer polynomial)/denominator`, prime
    /// field coefficients as symmetric residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&self.ring.default_ordering()))
    }
}

impl Polynomial<QQ> {
    /// Image modulo `p`; `None` when `p` divides a coefficient denominator.
    pub fn reduce_mod(&self, zp: &Zp) -> Option<Polynomial<Zp>> {
        self.map_coeffs(zp, |c| zp.from_rational(c))
    }

    /// The integer polynomial `d·f` with `d` the least common denominator of
    /// the coefficients, together with `d`.
    pub fn clear_denominators(&self) -> (Polynomial<QQ>, BigInt) {
        let d = common_denominator(self.terms.iter().map(|(_, c)| c));
        let dq = BigRational::from_integer(d.clone());
        (self.scale(&dq), d)
    }

    /// Integer-content-free multiple with positive leading coefficient under
    /// `sigma` (the display normalization over ℚ).
    pub fn primitive_part(&self, sigma: &OrderingMatrix) -> Polynomial<QQ> {
        if self.is_zero() {
            return self.clone();
        }
        let (int, _) = self.clear_denominators();
        let nums: Vec<BigInt> = int.terms.iter().map(|(_, c)| c.to_integer()).collect();
        let mut g = integer_content(nums.iter());
        if int.leading_coeff(sigma).expect("non-zero").is_negative() {
            g = -g;
        }
        int.scale(&BigRational::new(BigInt::one(), g))
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (_, c)| acc + c.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st() -> Arc<Ring> {
        Ring::new(["s", "t"]).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Polynomial<QQ> {
        Polynomial::from_terms(
            ring,
            &QQ,
            terms.iter().map(|(e, c)| (PowerProduct::from_exponents(e), q(*c))),
        )
    }

    #[test]
    fn lpp_examples() {
        let r = st();
        let drl = OrderingMatrix::degrevlex(&[1, 1]);
        // s^5 - s t^3 - t
        let f = poly(&r, &[(&[5, 0], 1), (&[1, 3], -1), (&[0, 1], -1)]);
        assert_eq!(f.lpp(&drl).unwrap(), PowerProduct::from_exponents(&[5, 0]));
        assert_eq!(drl.order_vector(&f.lpp(&drl).unwrap()), vec![5, 0]);
        let tau = OrderingMatrix::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(tau.order_vector(&f.lpp(&tau).unwrap()), vec![5, 5]);
        // t^2 - s - t under lex s > t
        let g = poly(&r, &[(&[0, 2], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(g.lpp(&OrderingMatrix::lex(2)).unwrap(), PowerProduct::var(0));
        assert_eq!(
            Polynomial::zero(&r, &QQ).lpp(&drl),
            Err(RingError::ZeroPolynomial)
        );
        let xy = Ring::new(["x", "y"]).unwrap();
        let h = poly(&xy, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(h.lpp(&drl).unwrap(), PowerProduct::var(0));
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let r = st();
        let g = poly(&r, &[(&[0, 2], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(g.evaluate(&[q(1), q(2)]).unwrap(), q(1));
        assert_eq!(Polynomial::one(&r, &QQ).evaluate(&[q(7), q(9)]).unwrap(), q(1));
        let sq = g.mul(&g);
        assert_eq!(sq.evaluate(&[q(1), q(2)]).unwrap(), q(1));
        assert_eq!(g.pow(3), sq.mul(&g));
        assert!(g.sub(&g).is_zero());
        assert_eq!(g.add(&g), g.scale(&q(2)));
        assert!(g.scale(&q(-3)).is_scalar_multiple_of(&g));
    }

    #[test]
    fn substitution_examples() {
        let t = Ring::new(["t1", "t2"]).unwrap();
        let x = Ring::new(["x1", "x2", "x3"]).unwrap();
        let t1 = poly(&t, &[(&[1, 0], 1)]);
        let p: Vec<_> = [2u32, 3, 4].iter().map(|&e| poly(&t, &[(&[0, e], 1)])).collect();
        let good = poly(&x, &[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
        let (num, den) = good.substitute_fraction(&p, &t1).unwrap();
        assert!(num.is_zero());
        assert_eq!(den, t1.pow(2));
        let bad = poly(&x, &[(&[0, 0, 1], 1), (&[2, 0, 0], -1)]);
        assert!(!bad.substitute_fraction(&p, &t1).unwrap().0.is_zero());
        // the point produced by those maps at t = (1, 2)
        assert_eq!(good.evaluate(&[q(4), q(8), q(16)]).unwrap(), q(0));
        let tt = poly(&t, &[(&[1, 0], 1)]);
        let lin = Polynomial::from_terms(
            &Ring::new(["x1", "x2"]).unwrap(),
            &QQ,
            [(PowerProduct::var(0), q(1)), (PowerProduct::var(1), q(-1))],
        );
        assert!(lin.substitute(&[tt.clone(), tt]).unwrap().is_zero());
    }

    #[test]
    fn rendering() {
        let r = st();
        let g = poly(&r, &[(&[0, 2], 1), (&[1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(g.to_string(), "t^2 - s - t");
        let half = g.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "(t^2 - s - t)/2");
        assert_eq!(Polynomial::zero(&r, &QQ).to_string(), "0");
        let zp = Zp::new(7).unwrap();
        let m = g.reduce_mod(&zp).unwrap();
        assert_eq!(m.to_string(), "t^2 - s - t");
        assert_eq!(g.scale(&q(-6)).primitive_part(&r.default_ordering()), g);
    }
}
