//! Buchberger's algorithm on packed-key term lists.
//!
//! Polynomials are kept as term vectors sorted descending under the active
//! ordering, each power-product paired with its packed order key so that
//! comparisons and multiplications are word operations. Reduction uses an
//! ordered map as accumulator; pairs are handled by the normal strategy
//! with sugar degrees (which are the true degrees for homogeneous input)
//! and pruned with the Gebauer–Möller criteria.

use std::cmp::{Ordering, Reverse};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BinaryHeap};
use std::sync::Arc;

use super::ElimError;
use crate::budget::Budget;
use crate::coeff::Field;
use crate::ring::{KeyedOrder, OrderKey, OrderingMatrix, Polynomial, PowerProduct, Ring, RingError};

/// A power-product with its packed order key; ordered by the key alone.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mon {
    pub key: OrderKey,
    pub pp: PowerProduct,
}

impl PartialEq for Mon {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl Eq for Mon {}
impl PartialOrd for Mon {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Mon {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key.cmp(&o.key)
    }
}

pub(crate) type Terms<E> = Vec<(Mon, E)>;
type Acc<E> = BTreeMap<OrderKey, (PowerProduct, E)>;

pub(crate) struct BasisElem<E> {
    pub terms: Terms<E>,
    pub lm: Mon,
    pub mask: u16,
    pub sugar: u64,
    pub active: bool,
}

const GEN: usize = usize::MAX;

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u64,
    lcm: OrderKey,
    i: usize,
    j: usize,
}

/// Outcome of a run of the engine.
pub(crate) struct RunResult<E> {
    pub basis: Vec<BasisElem<E>>,
    pub trigger: Option<usize>,
    pub degrees: Vec<u64>,
    pub complete: bool,
    pub pairs_processed: usize,
    pub zero_reductions: usize,
}

pub(crate) struct Engine<F: Field> {
    pub field: F,
    pub order: KeyedOrder,
    pub weights: Vec<u32>,
}

impl<F: Field> Engine<F> {
    pub fn new(field: &F, ring: &Ring, sigma: &OrderingMatrix) -> Result<Self, ElimError> {
        if sigma.nvars() != ring.nvars() {
            return Err(RingError::DimensionMismatch.into());
        }
        Ok(Engine {
            field: field.clone(),
            order: KeyedOrder::new(sigma)?,
            weights: ring.weights().to_vec(),
        })
    }

    pub fn mon(&self, pp: PowerProduct) -> Result<Mon, RingError> {
        Ok(Mon {
            key: self.order.key(&pp)?,
            pp,
        })
    }

    pub fn internal(&self, p: &Polynomial<F>) -> Result<Terms<F::Elem>, RingError> {
        let mut v = p
            .terms()
            .iter()
            .map(|(pp, c)| Ok((self.mon(*pp)?, c.clone())))
            .collect::<Result<Terms<F::Elem>, RingError>>()?;
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Ok(v)
    }

    pub fn external(&self, ring: &Arc<Ring>, t: &Terms<F::Elem>) -> Polynomial<F> {
        Polynomial::from_terms(ring, &self.field, t.iter().map(|(m, c)| (m.pp, c.clone())))
    }

    fn wdeg(&self, pp: &PowerProduct) -> u64 {
        pp.weighted_degree(&self.weights)
    }

    fn sugar_of(&self, t: &Terms<F::Elem>) -> u64 {
        t.iter().map(|(m, _)| self.wdeg(&m.pp)).max().unwrap_or(0)
    }

    /// Scale to leading coefficient 1.
    pub fn make_monic(&self, t: &mut Terms<F::Elem>) {
        if let Some((_, lc)) = t.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc).expect("non-zero leading coefficient");
                for (_, c) in t.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
    }

    pub fn elem(&self, mut terms: Terms<F::Elem>, sugar: u64) -> BasisElem<F::Elem> {
        self.make_monic(&mut terms);
        let lm = terms[0].0;
        BasisElem {
            mask: lm.pp.support_mask(),
            lm,
            terms,
            sugar,
            active: true,
        }
    }

    fn find_reducer(
        basis: &[BasisElem<F::Elem>],
        pp: &PowerProduct,
        exclude: Option<usize>,
    ) -> Option<usize> {
        let mask = pp.support_mask();
        basis.iter().enumerate().position(|(k, g)| {
            g.active && g.mask & !mask == 0 && Some(k) != exclude && g.lm.pp.divides(pp)
        })
    }

    /// Subtract `c · m · tail(g)` from the accumulator (the leading term is
    /// assumed to cancel separately).
    fn sub_multiple(
        &self,
        acc: &mut Acc<F::Elem>,
        g: &Terms<F::Elem>,
        c: &F::Elem,
        mkey: OrderKey,
        m: &PowerProduct,
        skip_lead: bool,
    ) -> Result<(), RingError> {
        let f = &self.field;
        let start = usize::from(skip_lead);
        for (gm, ge) in &g[start..] {
            let key = gm.key.checked_add(mkey).ok_or(RingError::DegreeOverflow)?;
            let prod = f.mul(c, ge);
            match acc.entry(key) {
                Entry::Vacant(e) => {
                    e.insert((gm.pp.mul(m), f.neg(&prod)));
                }
                Entry::Occupied(mut e) => {
                    let v = f.sub(&e.get().1, &prod);
                    if f.is_zero(&v) {
                        e.remove();
                    } else {
                        e.get_mut().1 = v;
                    }
                }
            }
        }
        Ok(())
    }

    /// Full reduction of the accumulator against the active basis elements
    /// (except `exclude`); returns the normal form and the updated sugar.
    pub fn reduce(
        &self,
        basis: &[BasisElem<F::Elem>],
        mut acc: Acc<F::Elem>,
        mut sugar: u64,
        exclude: Option<usize>,
        budget: &Budget,
    ) -> Result<(Terms<F::Elem>, u64), ElimError> {
        let mut out = Vec::new();
        let mut steps = 0usize;
        while let Some((key, (pp, c))) = acc.pop_last() {
            steps += 1;
            if steps.is_multiple_of(4096) {
                budget.check()?;
            }
            match Self::find_reducer(basis, &pp, exclude) {
                Some(r) => {
                    let g = &basis[r];
                    let m = pp.div(&g.lm.pp);
                    sugar = sugar.max(g.sugar + self.wdeg(&m));
                    self.sub_multiple(&mut acc, &g.terms, &c, key.sub(g.lm.key), &m, true)?;
                }
                None => out.push((Mon { key, pp }, c)),
            }
        }
        Ok((out, sugar))
    }

    pub fn accumulator(&self, t: &Terms<F::Elem>) -> Acc<F::Elem> {
        t.iter().map(|(m, c)| (m.key, (m.pp, c.clone()))).collect()
    }

    fn s_poly_acc(
        &self,
        a: &BasisElem<F::Elem>,
        b: &BasisElem<F::Elem>,
    ) -> Result<(Acc<F::Elem>, u64), RingError> {
        let lcm = a.lm.pp.lcm(&b.lm.pp);
        let (ma, mb) = (lcm.div(&a.lm.pp), lcm.div(&b.lm.pp));
        let lk = self.order.key(&lcm)?;
        let mut acc = Acc::new();
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        // acc = ma·tail(a) − mb·tail(b)
        self.sub_multiple(&mut acc, &a.terms, &minus_one, lk.sub(a.lm.key), &ma, true)?;
        self.sub_multiple(&mut acc, &b.terms, &one, lk.sub(b.lm.key), &mb, true)?;
        let sugar = (a.sugar + self.wdeg(&ma)).max(b.sugar + self.wdeg(&mb));
        Ok((acc, sugar))
    }

    fn lcm_key(&self, a: &Mon, b: &Mon) -> Result<(PowerProduct, OrderKey), RingError> {
        let l = a.pp.lcm(&b.pp);
        Ok((l, self.order.key(&l)?))
    }

    /// Gebauer–Möller update for the new element at index `h`.
    fn update(
        &self,
        basis: &mut [BasisElem<F::Elem>],
        pairs: &mut BinaryHeap<Reverse<Pair>>,
        h: usize,
    ) -> Result<(), RingError> {
        let lh = basis[h].lm;
        // candidate pairs (g, h) with their lcms
        let mut cand: Vec<(usize, PowerProduct, OrderKey, bool)> = Vec::new();
        for (g, e) in basis.iter().enumerate() {
            if g == h || !e.active {
                continue;
            }
            let (l, k) = self.lcm_key(&e.lm, &lh)?;
            cand.push((g, l, k, e.lm.pp.is_coprime(&lh.pp)));
        }
        // chain criterion among the new pairs: drop (g1,h) if some other
        // candidate's lcm properly divides... or equals and comes first
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            if cand[a].3 {
                continue;
            }
            for b in 0..cand.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cand[a].1, &cand[b].1);
                if lb.divides(la) && (lb != la || cand[b].3 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // old pairs (i, j): remove if lm(h) | lcm(i,j) and both lcm(i,h),
        // lcm(j,h) differ from lcm(i,j)
        let old = std::mem::take(pairs);
        for Reverse(p) in old.into_vec() {
            if p.j != GEN {
                let lij = basis[p.i].lm.pp.lcm(&basis[p.j].lm.pp);
                if lh.pp.divides(&lij)
                    && basis[p.i].lm.pp.lcm(&lh.pp) != lij
                    && basis[p.j].lm.pp.lcm(&lh.pp) != lij
                {
                    continue;
                }
            }
            pairs.push(Reverse(p));
        }
        for (idx, (g, l, k, coprime)) in cand.into_iter().enumerate() {
            if !keep[idx] || coprime {
                continue;
            }
            let e = &basis[g];
            let sugar = (e.sugar + self.wdeg(&l.div(&e.lm.pp)))
                .max(basis[h].sugar + self.wdeg(&l.div(&lh.pp)));
            pairs.push(Reverse(Pair {
                sugar,
                lcm: k,
                i: g,
                j: h,
            }));
        }
        for (g, e) in basis.iter_mut().enumerate() {
            if g != h && e.active && lh.pp.divides(&e.lm.pp) {
                e.active = false;
            }
        }
        Ok(())
    }

    /// Buchberger's algorithm; stops early when `stop` accepts the leading
    /// power-product of a newly added element.
    pub fn run(
        &self,
        gens: &[Terms<F::Elem>],
        mut stop: impl FnMut(&PowerProduct) -> bool,
        budget: &Budget,
    ) -> Result<RunResult<F::Elem>, ElimError> {
        let mut basis: Vec<BasisElem<F::Elem>> = Vec::new();
        let mut pairs: BinaryHeap<Reverse<Pair>> = BinaryHeap::new();
        for (k, g) in gens.iter().enumerate() {
            if let Some((m, _)) = g.first() {
                pairs.push(Reverse(Pair {
                    sugar: self.sugar_of(g),
                    lcm: m.key,
                    i: k,
                    j: GEN,
                }));
            }
        }
        let mut degrees = Vec::new();
        let mut pairs_processed = 0;
        let mut zero_reductions = 0;
        while let Some(Reverse(p)) = pairs.pop() {
            budget.check()?;
            pairs_processed += 1;
            degrees.push(p.sugar);
            let (acc, sugar) = if p.j == GEN {
                (self.accumulator(&gens[p.i]), p.sugar)
            } else {
                self.s_poly_acc(&basis[p.i], &basis[p.j])?
            };
            let (red, sugar) = self.reduce(&basis, acc, sugar, None, budget)?;
            if red.is_empty() {
                zero_reductions += 1;
                continue;
            }
            let e = self.elem(red, sugar);
            let lm = e.lm.pp;
            basis.push(e);
            let h = basis.len() - 1;
            self.update(&mut basis, &mut pairs, h)?;
            if stop(&lm) {
                return Ok(RunResult {
                    basis,
                    trigger: Some(h),
                    degrees,
                    complete: false,
                    pairs_processed,
                    zero_reductions,
                });
            }
        }
        Ok(RunResult {
            basis,
            trigger: None,
            degrees,
            complete: true,
            pairs_processed,
            zero_reductions,
        })
    }

    /// Interreduce the active elements of a completed run into the reduced
    /// Gröbner basis, sorted by increasing leading power-product.
    pub fn interreduce(
        &self,
        basis: &mut [BasisElem<F::Elem>],
        budget: &Budget,
    ) -> Result<Vec<Terms<F::Elem>>, ElimError> {
        let active: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].active).collect();
        let mut out = Vec::with_capacity(active.len());
        for &k in &active {
            let tail = self.accumulator(&basis[k].terms[1..].to_vec());
            let (red, _) = self.reduce(basis, tail, 0, Some(k), budget)?;
            let mut t = vec![basis[k].terms[0].clone()];
            t.extend(red);
            out.push(t);
        }
        for (t, &k) in out.iter().zip(&active) {
            basis[k].terms = t.clone();
        }
        out.sort_by(|a, b| a[0].0.cmp(&b[0].0));
        Ok(out)
    }
}
