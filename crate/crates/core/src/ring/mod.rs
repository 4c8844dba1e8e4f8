//! Power-products, graded polynomial rings, matrix term-orderings and sparse
//! polynomials, together with (shifted) homogenization.

mod homog;
mod key;
mod ordering;
mod poly;
mod pp;

pub use key::{KeyedOrder, OrderKey, MAX_KEY_ENTRY};
pub use ordering::OrderingMatrix;
pub use poly::Polynomial;
pub use pp::{PowerProduct, MAX_VARS};

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("ordering matrix is singular")]
    SingularOrdering,
    #[error("matrix does not define a term-ordering")]
    NotATermOrdering,
    #[error("the zero polynomial has no leading power-product")]
    ZeroPolynomial,
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooSmall { target: u64, degree: u64 },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("indeterminate {0} must have weight 1 and not occur in the input")]
    BadHomogenizer(String),
    #[error("too many indeterminates (at most {MAX_VARS})")]
    TooManyIndeterminates,
    #[error("duplicate indeterminate name {0}")]
    DuplicateName(String),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("degree too large for packed order keys")]
    DegreeOverflow,
}

/// A polynomial ring descriptor: indeterminate names and positive grading
/// weights. Shared read-only between polynomials via `Arc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<u32>,
}

/// The grading data of a ring; an alias kept for readability at call sites
/// that only care about weights.
pub type GradedRingSpec = Ring;

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, RingError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let weights = vec![1; names.len()];
        Ring::with_weights(names, weights)
    }

    pub fn with_weights<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        weights: Vec<u32>,
    ) -> Result<Arc<Self>, RingError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(RingError::TooManyIndeterminates);
        }
        if names.len() != weights.len() {
            return Err(RingError::DimensionMismatch);
        }
        if weights.contains(&0) {
            return Err(RingError::ZeroWeight);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(RingError::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(Ring { names, weights }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same indeterminates with a different grading.
    pub fn reweighted(&self, weights: Vec<u32>) -> Result<Arc<Self>, RingError> {
        Ring::with_weights(self.names.clone(), weights)
    }

    /// Default ordering for display and generic use: weighted degrevlex.
    pub fn default_ordering(&self) -> OrderingMatrix {
        OrderingMatrix::degrevlex(&self.weights)
    }

    /// A name not yet used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        let mut k = 0;
        while self.index_of(&candidate).is_some() {
            k += 1;
            candidate = format!("{base}{k}");
        }
        candidate
    }
}

/// Weighted degree of a power-product.
pub fn weighted_degree(pp: &PowerProduct, ring: &Ring) -> u64 {
    pp.weighted_degree(ring.weights())
}

/// Three-way comparison of two power-products under a matrix ordering,
/// rejecting arguments from a ring of another dimension.
pub fn compare(
    sigma: &OrderingMatrix,
    ring: &Ring,
    a: &PowerProduct,
    b: &PowerProduct,
) -> Result<std::cmp::Ordering, RingError> {
    sigma.try_compare(ring.nvars(), a, b)
}
