//! Incremental row echelon form with combination tracking.

use std::cmp::Ordering;

use crate::coeff::Field;

/// A sparse row: column ids with non-zero values, sorted descending under
/// the column comparison in use.
#[derive(Clone, Debug, PartialEq)]
pub struct Row<E> {
    pub cols: Vec<u32>,
    pub vals: Vec<E>,
}

impl<E> Row<E> {
    pub fn new() -> Self {
        Row {
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        Row {
            cols: Vec::with_capacity(n),
            vals: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn push(&mut self, c: u32, v: E) {
        self.cols.push(c);
        self.vals.push(v);
    }
}

impl<E> Default for Row<E> {
    fn default() -> Self {
        Row::new()
    }
}

/// Outcome of offering a vector to the echelon form.
#[derive(Clone, Debug, PartialEq)]
pub enum Offer<E> {
    /// `v = Σ a_i·v_i` over the previously accepted vectors `v_i`, given as
    /// `(i, a_i)` pairs with non-zero `a_i`.
    Dependency(Vec<(usize, E)>),
    /// `v` was independent; its reduced form now has this pivot column.
    NewPivot(u32),
}

/// Rows in echelon form (distinct leading columns, each leading
/// coefficient 1), each remembering how it combines the accepted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<Row<F::Elem>>,
    combos: Vec<Vec<(u32, F::Elem)>>,
    pivot_row: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<F: Field> Echelon<F> {
    pub fn new(field: &F) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
            combos: Vec::new(),
            pivot_row: Vec::new(),
        }
    }

    /// Number of accepted (independent) vectors.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Leading columns of the rows, in acceptance order.
    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r.cols[0])
    }

    fn pivot_of(&self, c: u32) -> Option<usize> {
        match self.pivot_row.get(c as usize) {
            Some(&r) if r != NONE => Some(r as usize),
            _ => None,
        }
    }

    /// Reduce `v` against the rows; install it as a new row if it is
    /// independent. `cmp` orders column ids (rows are sorted descending).
    pub fn offer(&mut self, mut v: Row<F::Elem>, cmp: impl Fn(u32, u32) -> Ordering) -> Offer<F::Elem> {
        let f = &self.field;
        // v_current = v_original + Σ comb_i·v_i
        let mut comb: Vec<(u32, F::Elem)> = Vec::new();
        loop {
            let Some(&lead) = v.cols.first() else {
                return Offer::Dependency(
                    comb.into_iter().map(|(i, b)| (i as usize, f.neg(&b))).collect(),
                );
            };
            match self.pivot_of(lead) {
                Some(r) => {
                    let c = v.vals[0].clone();
                    v = sub_scaled(f, &v, &self.rows[r], &c, &cmp);
                    comb = sub_scaled_index(f, &comb, &self.combos[r], &c);
                }
                None => {
                    let inv = f.inv(&v.vals[0]).expect("non-zero entry");
                    for x in v.vals.iter_mut() {
                        *x = f.mul(x, &inv);
                    }
                    let idx = self.rows.len() as u32;
                    let mut combo: Vec<(u32, F::Elem)> =
                        comb.iter().map(|(i, b)| (*i, f.mul(b, &inv))).collect();
                    combo.push((idx, inv));
                    if self.pivot_row.len() <= lead as usize {
                        self.pivot_row.resize(lead as usize + 1, NONE);
                    }
                    self.pivot_row[lead as usize] = idx;
                    self.rows.push(v);
                    self.combos.push(combo);
                    return Offer::NewPivot(lead);
                }
            }
        }
    }
}

/// `a − c·b` for rows whose leading entries cancel.
fn sub_scaled<F: Field>(
    f: &F,
    a: &Row<F::Elem>,
    b: &Row<F::Elem>,
    c: &F::Elem,
    cmp: &impl Fn(u32, u32) -> Ordering,
) -> Row<F::Elem> {
    let mut out = Row::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (1, 1);
    while i < a.len() && j < b.len() {
        match cmp(a.cols[i], b.cols[j]) {
            Ordering::Greater => {
                out.push(a.cols[i], a.vals[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b.cols[j], f.neg(&f.mul(c, &b.vals[j])));
                j += 1;
            }
            Ordering::Equal => {
                let x = f.sub_mul(&a.vals[i], c, &b.vals[j]);
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
        out.push(b.cols[k], f.neg(&f.mul(c, &b.vals[k])));
    }
    out
}

/// `a − c·b` for index-sorted (ascending) sparse vectors.
fn sub_scaled_index<F: Field>(
    f: &F,
    a: &[(u32, F::Elem)],
    b: &[(u32, F::Elem)],
    c: &F::Elem,
) -> Vec<(u32, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, f.neg(&f.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let x = f.sub_mul(&a[i].1, c, &b[j].1);
                if !f.is_zero(&x) {
                    out.push((a[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(k, v)| (*k, f.neg(&f.mul(c, v)))));
    out
}
