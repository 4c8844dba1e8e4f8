//! Implicitization by direct search for the first linear dependency among
//! the images `φ(PP)` of power-products, enumerated in increasing order.
//!
//! Three optimizations keep the search cheap: the linear systems are one
//! incrementally maintained echelon form; each image is a single product
//! `φ(x_j)·φ(PP′)` of cached images; and the default ordering on the targets
//! is built from the leading power-products of the coordinates so that the
//! leading terms of successive images are non-decreasing, which keeps the
//! echelon form nearly triangular.

mod echelon;

pub use echelon::{Echelon, Offer, Row};

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::coeff::Field;
use crate::parse::Parametrization;
use crate::ring::{KeyedOrder, OrderKey, OrderingMatrix, Polynomial, PowerProduct, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("coordinate {0} is constant; split constants off first")]
    ConstantCoordinate(usize),
    #[error("the parametrization is not polynomial")]
    NotPolynomial,
    #[error("the parameter ordering must be degree-compatible (first row all ones)")]
    NotDegreeCompatible,
    #[error("the ordering on the targets must be enumerative (strictly positive first row)")]
    NotEnumerative,
    #[error("at least as many parameters as coordinates: a degree cap is required")]
    CapRequired,
    #[error("no dependency up to degree {0}")]
    CapExceeded(u64),
    #[error("internal error: no cached image for a parent of {0}")]
    NoCachedParent(String),
}

/// The enumerative ordering on the targets whose first rows are the order
/// vectors of `LPP_τ(f_i)`, completed to an invertible matrix. Power-products
/// processed in this order have images with non-decreasing leading terms.
pub fn build_direct_ordering<F: Field>(
    par: &Parametrization<F>,
    tau: &OrderingMatrix,
) -> Result<OrderingMatrix, DirectError> {
    let coords = par.polynomial_coordinates().ok_or(DirectError::NotPolynomial)?;
    if tau.nvars() != par.s() {
        return Err(RingError::DimensionMismatch.into());
    }
    if tau.first_row().iter().any(|&x| x != 1) {
        return Err(DirectError::NotDegreeCompatible);
    }
    if let Some(i) = coords.iter().position(|c| c.is_constant()) {
        return Err(DirectError::ConstantCoordinate(i));
    }
    let vectors = coords
        .iter()
        .map(|c| Ok(tau.order_vector(&c.lpp(tau)?)))
        .collect::<Result<Vec<_>, RingError>>()?;
    let rows: Vec<Vec<i64>> = (0..par.s())
        .map(|r| vectors.iter().map(|v| v[r]).collect())
        .collect();
    Ok(OrderingMatrix::complete(par.n(), rows)?)
}

/// How the next power-product is chosen.
#[derive(Clone, Debug, Default)]
pub enum Frontier {
    /// The frontier of the accepted power-products, smallest first under
    /// an enumerative term-ordering.
    #[default]
    Enumerative,
    /// All power-products of the next weighted degree (weights `deg f_i`),
    /// in an unspecified order within the degree.
    ByDegree,
}

#[derive(Clone, Debug, Default)]
pub struct DirectOptions {
    /// Ordering on the targets; built from `tau` when absent.
    pub ordering: Option<OrderingMatrix>,
    /// Degree-compatible ordering on the parameters; degrevlex when absent.
    pub tau: Option<OrderingMatrix>,
    /// Give up beyond this weighted degree (required when `s ≥ n`).
    pub max_degree: Option<u64>,
    pub frontier: Frontier,
}

/// Sparse `τ`-keyed columns: interned parameter power-products.
struct Columns {
    tau: KeyedOrder,
    index: FxHashMap<PowerProduct, u32>,
    keys: Vec<OrderKey>,
    pps: Vec<PowerProduct>,
}

impl Columns {
    fn intern_keyed(&mut self, pp: PowerProduct, key: OrderKey) -> u32 {
        let next = self.pps.len() as u32;
        *self.index.entry(pp).or_insert_with(|| {
            self.keys.push(key);
            self.pps.push(pp);
            next
        })
    }

    fn cmp(&self, a: u32, b: u32) -> Ordering {
        self.keys[a as usize].cmp(&self.keys[b as usize])
    }

    fn row_of<F: Field>(&mut self, p: &Polynomial<F>) -> Result<Row<F::Elem>, RingError> {
        let mut terms = p
            .terms()
            .iter()
            .map(|(pp, c)| Ok((self.tau.key(pp)?, *pp, c.clone())))
            .collect::<Result<Vec<_>, RingError>>()?;
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut row = Row::with_capacity(terms.len());
        for (k, pp, c) in terms {
            let id = self.intern_keyed(pp, k);
            row.push(id, c);
        }
        Ok(row)
    }

    /// `small · big`, where `small` is short (a coordinate image).
    fn mul<F: Field>(&mut self, f: &F, small: &Row<F::Elem>, big: &Row<F::Elem>) -> Result<Row<F::Elem>, RingError> {
        let mut acc: Option<Row<F::Elem>> = None;
        for (&a, av) in small.cols.iter().zip(&small.vals) {
            let (ka, pa) = (self.keys[a as usize], self.pps[a as usize]);
            let mut shifted = Row::with_capacity(big.len());
            for (&b, bv) in big.cols.iter().zip(&big.vals) {
                let k = self.keys[b as usize].checked_add(ka).ok_or(RingError::DegreeOverflow)?;
                let id = self.intern_keyed(self.pps[b as usize].mul(&pa), k);
                shifted.push(id, f.mul(av, bv));
            }
            acc = Some(match acc {
                None => shifted,
                Some(r) => self.add(f, &r, &shifted),
            });
        }
        Ok(acc.unwrap_or_default())
    }

    fn add<F: Field>(&self, f: &F, a: &Row<F::Elem>, b: &Row<F::Elem>) -> Row<F::Elem> {
        let mut out = Row::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(a.cols[i], b.cols[j]) {
                Ordering::Greater => {
                    out.push(a.cols[i], a.vals[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.cols[j], b.vals[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let x = f.add(&a.vals[i], &b.vals[j]);
                    if !f.is_zero(&x) {
                        out.push(a.cols[i], x);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for k in i..a.len() {
            out.push(a.cols[k], a.vals[k].clone());
        }
        for k in j..b.len() {
            out.push(b.cols[k], b.vals[k].clone());
        }
        out
    }
}

/// Outcome of one iteration of the search.
#[derive(Clone, Debug)]
pub enum DirectStep<F: Field> {
    /// The power-product was independent of the earlier ones.
    Independent(PowerProduct),
    /// The first dependency: the monic generator.
    Found(Polynomial<F>),
}

/// The search state: accepted power-products (`QB`), the frontier (`PPL`),
/// the echelon form of the accepted images and the image cache.
pub struct DirectSearch<F: Field> {
    field: F,
    target: Arc<Ring>,
    sigma: OrderingMatrix,
    sigma_keys: KeyedOrder,
    weights: Vec<u32>,
    cols: Columns,
    images: Vec<Row<F::Elem>>,
    qb: Vec<PowerProduct>,
    ppl: BTreeSet<(OrderKey, PowerProduct)>,
    queue: VecDeque<PowerProduct>,
    filled: bool,
    cache: FxHashMap<PowerProduct, (Row<F::Elem>, u32)>,
    echelon: Echelon<F>,
    frontier: Frontier,
    degree: u64,
    max_degree: Option<u64>,
    image_lpps: Vec<OrderKey>,
    finished: bool,
}

impl<F: Field> DirectSearch<F> {
    pub fn new(par: &Parametrization<F>, opts: &DirectOptions) -> Result<Self, DirectError> {
        let coords = par.polynomial_coordinates().ok_or(DirectError::NotPolynomial)?;
        if let Some(i) = coords.iter().position(|c| c.is_constant()) {
            return Err(DirectError::ConstantCoordinate(i));
        }
        if par.s() >= par.n() && opts.max_degree.is_none() {
            return Err(DirectError::CapRequired);
        }
        let tau = opts
            .tau
            .clone()
            .unwrap_or_else(|| par.params().default_ordering());
        let sigma = match &opts.ordering {
            Some(s) => s.clone(),
            None => build_direct_ordering(par, &tau)?,
        };
        if sigma.nvars() != par.n() {
            return Err(RingError::DimensionMismatch.into());
        }
        if !sigma.is_enumerative() {
            return Err(DirectError::NotEnumerative);
        }
        let mut cols = Columns {
            tau: KeyedOrder::new(&tau)?,
            index: FxHashMap::default(),
            keys: Vec::new(),
            pps: Vec::new(),
        };
        let images = coords
            .iter()
            .map(|c| cols.row_of(c))
            .collect::<Result<Vec<_>, _>>()?;
        let sigma_keys = KeyedOrder::new(&sigma)?;
        let mut ppl = BTreeSet::new();
        if let Frontier::Enumerative = opts.frontier {
            ppl.insert((sigma_keys.key(&PowerProduct::one())?, PowerProduct::one()));
        }
        Ok(DirectSearch {
            field: par.field().clone(),
            target: par.target_ring().clone(),
            weights: coords.iter().map(|c| c.total_degree() as u32).collect(),
            sigma,
            sigma_keys,
            cols,
            images,
            qb: Vec::new(),
            ppl,
            queue: VecDeque::new(),
            filled: false,
            cache: FxHashMap::default(),
            echelon: Echelon::new(par.field()),
            frontier: opts.frontier.clone(),
            degree: 0,
            max_degree: opts.max_degree,
            image_lpps: Vec::new(),
            finished: false,
        })
    }

    pub fn ordering(&self) -> &OrderingMatrix {
        &self.sigma
    }

    /// Accepted power-products, in processing order.
    pub fn qb(&self) -> &[PowerProduct] {
        &self.qb
    }

    /// Power-products queued for processing.
    pub fn ppl(&self) -> impl Iterator<Item = &PowerProduct> + '_ {
        self.ppl.iter().map(|(_, pp)| pp).chain(self.queue.iter())
    }

    /// `τ`-keys of the leading power-products of the images processed so far.
    pub fn image_lpps(&self) -> &[OrderKey] {
        &self.image_lpps
    }

    pub fn cached_images(&self) -> usize {
        self.cache.len()
    }

    /// Whether `PPL = {x_i·T : T ∈ QB} \ QB` (or `{1}` before the first
    /// step), as required at the top of each enumerative iteration.
    pub fn frontier_invariant_holds(&self) -> bool {
        let ppl: BTreeSet<PowerProduct> = self.ppl().copied().collect();
        if self.qb.is_empty() {
            return ppl == BTreeSet::from([PowerProduct::one()]);
        }
        let qb: BTreeSet<PowerProduct> = self.qb.iter().copied().collect();
        let border: BTreeSet<PowerProduct> = self
            .qb
            .iter()
            .flat_map(|t| (0..self.weights.len()).map(move |i| t.mul(&PowerProduct::var(i))))
            .filter(|pp| !qb.contains(pp))
            .collect();
        ppl == border
    }

    fn weighted_degree(&self, pp: &PowerProduct) -> u64 {
        pp.weighted_degree(&self.weights)
    }

    /// All power-products of weighted degree `d` in the targets.
    fn of_degree(&self, d: u64) -> Vec<PowerProduct> {
        fn rec(w: &[u32], i: usize, left: u64, cur: &mut PowerProduct, out: &mut Vec<PowerProduct>) {
            if i == w.len() {
                if left == 0 {
                    out.push(*cur);
                }
                return;
            }
            let mut e = 0;
            while e as u64 * w[i] as u64 <= left {
                cur.set_exp(i, e);
                rec(w, i + 1, left - e as u64 * w[i] as u64, cur, out);
                e += 1;
            }
            cur.set_exp(i, 0);
        }
        let mut out = Vec::new();
        rec(&self.weights, 0, d, &mut PowerProduct::one(), &mut out);
        out
    }

    fn next_pp(&mut self) -> Result<PowerProduct, DirectError> {
        if let Frontier::ByDegree = self.frontier {
            while self.queue.is_empty() {
                if self.filled {
                    self.degree += 1;
                }
                self.filled = true;
                if let Some(cap) = self.max_degree {
                    if self.degree > cap {
                        return Err(DirectError::CapExceeded(cap));
                    }
                }
                let batch = self.of_degree(self.degree);
                self.queue.extend(batch);
            }
            return Ok(self.queue.pop_front().expect("non-empty"));
        }
        Ok(self.ppl.pop_first().map(|(_, pp)| pp).expect("the frontier is never empty"))
    }

    fn image(&mut self, pp: &PowerProduct) -> Result<Row<F::Elem>, DirectError> {
        if pp.is_one() {
            let one = PowerProduct::one();
            let id = self.cols.intern_keyed(one, self.cols.tau.key(&one)?);
            let mut row = Row::new();
            row.push(id, self.field.one());
            return Ok(row);
        }
        let n = self.weights.len();
        let mut best: Option<(usize, usize, PowerProduct)> = None;
        for j in 0..n {
            if pp.exp(j) == 0 {
                continue;
            }
            let parent = pp.div(&PowerProduct::var(j));
            if let Some((img, _)) = self.cache.get(&parent) {
                if best.as_ref().is_none_or(|b| img.len() < b.0) {
                    best = Some((img.len(), j, parent));
                }
            }
        }
        let (_, j, parent) =
            best.ok_or_else(|| DirectError::NoCachedParent(format!("{:?}", pp.exponents(n))))?;
        let img = &self.cache[&parent].0;
        Ok(self.cols.mul(&self.field, &self.images[j], img)?)
    }

    /// Release images no longer needed as parents once `pp` is processed.
    fn release_parents(&mut self, pp: &PowerProduct) {
        for j in 0..self.weights.len() {
            if pp.exp(j) == 0 {
                continue;
            }
            let parent = pp.div(&PowerProduct::var(j));
            if let Some(e) = self.cache.get_mut(&parent) {
                e.1 -= 1;
                if e.1 == 0 {
                    self.cache.remove(&parent);
                }
            }
        }
    }

    /// Process the next power-product.
    pub fn step(&mut self) -> Result<DirectStep<F>, DirectError> {
        assert!(!self.finished, "search already finished");
        let pp = self.next_pp()?;
        let d = self.weighted_degree(&pp);
        if let Some(cap) = self.max_degree {
            if d > cap {
                return Err(DirectError::CapExceeded(cap));
            }
        }
        let img = self.image(&pp)?;
        self.release_parents(&pp);
        if let Some(&c) = img.cols.first() {
            self.image_lpps.push(self.cols.keys[c as usize]);
        }
        let cols = &self.cols;
        match self.echelon.offer(img.clone(), |a, b| cols.cmp(a, b)) {
            Offer::Dependency(a) => {
                self.finished = true;
                let f = &self.field;
                let mut terms = vec![(pp, f.one())];
                terms.extend(a.into_iter().map(|(i, c)| (self.qb[i], f.neg(&c))));
                let g = Polynomial::from_terms(&self.target, f, terms);
                Ok(DirectStep::Found(g.make_monic(&self.sigma)))
            }
            Offer::NewPivot(_) => {
                self.qb.push(pp);
                let n = self.weights.len();
                self.cache.insert(pp, (img, n as u32));
                if let Frontier::Enumerative = self.frontier {
                    for i in 0..n {
                        let child = pp.mul(&PowerProduct::var(i));
                        self.ppl.insert((self.sigma_keys.key(&child)?, child));
                    }
                }
                Ok(DirectStep::Independent(pp))
            }
        }
    }
}

/// Run the search to the first dependency.
pub fn direct<F: Field>(
    par: &Parametrization<F>,
    opts: &DirectOptions,
    budget: &Budget,
) -> Result<Polynomial<F>, DirectError> {
    let mut search = DirectSearch::new(par, opts)?;
    loop {
        budget.check()?;
        if let DirectStep::Found(g) = search.step()? {
            return Ok(g);
        }
    }
}
