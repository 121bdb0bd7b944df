//! Chain complexes over F_p: normalized nerves of finite categories, bar
//! complexes of groups, homology ranks, and maps between complexes.
//!
//! A complex built up to degree `top` determines `H_d` exactly for
//! `d ≤ top − 1`; comparison verdicts are only certified for `d ≤ top − 2`.
//! Nothing here computes a p-completion: every comparison is a statement
//! about mod-p homology.

mod chain_map;
mod dump;
mod nerve;

use serde::Serialize;

pub use chain_map::{homology_iso_verdict, induced_chain_map, mapping_cone, ChainMap, IsoVerdict};
pub use dump::parse_complex;
pub use nerve::{bar_complex, chain_counts, nerve_complex, Nerve, NerveComplex, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::fp::{ColumnReducer, Prime, SparseMatrix};

/// A truncated chain complex `C_top → … → C_1 → C_0` of F_p-vector spaces.
#[derive(Clone, Debug)]
pub struct FpComplex {
    prime: Prime,
    dims: Vec<usize>,
    /// `boundaries[d]: C_d → C_{d−1}`; `boundaries[0]` is the zero map to 0.
    boundaries: Vec<SparseMatrix>,
}

impl FpComplex {
    /// `boundaries[k]` is `∂_{k+1}: C_{k+1} → C_k`.
    pub fn new(prime: Prime, dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Invalid("need one boundary per positive degree".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] || b.cols() != dims[k + 1] {
                return Err(Error::Invalid(format!(
                    "boundary from degree {} is {}x{}, expected {}x{}",
                    k + 1,
                    b.rows(),
                    b.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        let mut all = vec![SparseMatrix::zeros(0, dims[0])];
        all.extend(boundaries);
        Ok(FpComplex {
            prime,
            dims,
            boundaries: all,
        })
    }

    /// A cochain complex `C^0 → C^1 → … → C^top`, stored as the dual chain
    /// complex (same ranks, so the same cohomology dimensions).
    pub fn from_cochain(prime: Prime, dims: Vec<usize>, coboundaries: Vec<SparseMatrix>) -> Result<Self> {
        let boundaries = coboundaries.iter().map(SparseMatrix::transpose).collect();
        FpComplex::new(prime, dims, boundaries)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, d: usize) -> usize {
        self.dims[d]
    }

    /// `∂_d: C_d → C_{d−1}` for `1 ≤ d ≤ top`.
    pub fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.boundaries[d]
    }

    /// Whether `∂_{d} ∘ ∂_{d+1} = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.top()).all(|d| {
            self.boundaries[d]
                .mul(&self.boundaries[d + 1], self.prime)
                .is_zero()
        })
    }

    /// `rank ∂_d` for `d = 0..=top`.
    ///
    /// Reduces the coboundaries `∂_{d+1}ᵀ` from low degrees up. A column whose
    /// index was a pivot one degree lower reduces to zero and is skipped.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.dims.len()];
        let mut cleared = vec![false; self.dims[0]];
        for d in 0..self.top() {
            let cob = self.boundaries[d + 1].transpose();
            let mut reducer = ColumnReducer::new(self.dims[d + 1], self.prime);
            let mut next = vec![false; self.dims[d + 1]];
            for c in 0..self.dims[d] {
                if cleared[c] {
                    continue;
                }
                if let Some(low) = reducer.push_pivot(cob.column(c)) {
                    next[low as usize] = true;
                }
            }
            ranks[d + 1] = reducer.rank();
            cleared = next;
        }
        ranks
    }

    /// `dim H_d` for `d ≤ top − 1`.
    pub fn homology(&self) -> HomologyProfile {
        let ranks = self.ranks();
        let dims = (0..self.top())
            .map(|d| self.dims[d] - ranks[d] - ranks[d + 1])
            .collect();
        HomologyProfile {
            prime: self.prime.get(),
            dims,
        }
    }
}

/// Dimensions of `H_d(−; F_p)` in the degrees a truncated complex determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub prime: u32,
    pub dims: Vec<usize>,
}

impl HomologyProfile {
    /// The first `n` dimensions, or `None` if fewer are known.
    pub fn through(&self, d: usize) -> Option<&[usize]> {
        self.dims.get(..=d)
    }
}

pub fn fp_homology(complex: &FpComplex) -> HomologyProfile {
    complex.homology()
}
