use serde::Serialize;

use super::{FpComplex, NerveComplex};
use crate::category::CategoryFunctor;
use crate::error::{Error, Result};
use crate::fp::SparseMatrix;

/// Degree-wise matrices `f_d: A_d → B_d` in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn identity(c: &FpComplex) -> ChainMap {
        let maps = c
            .dims()
            .iter()
            .map(|&n| {
                SparseMatrix::from_sorted_columns(n, (0..n as u32).map(|i| vec![(i, 1)]).collect())
            })
            .collect();
        ChainMap { maps }
    }

    pub fn top(&self) -> usize {
        self.maps.len() - 1
    }

    /// `∂^B_d f_d = f_{d−1} ∂^A_d` in every degree.
    pub fn commutes(&self, a: &FpComplex, b: &FpComplex) -> bool {
        let p = a.prime();
        (1..=self.top()).all(|d| {
            b.boundary(d).mul(&self.maps[d], p) == self.maps[d - 1].mul(a.boundary(d), p)
        })
    }
}

/// The map on normalized nerves induced by a functor: a chain goes to its
/// image chain, or to 0 if some arrow becomes an identity.
pub fn induced_chain_map(f: &CategoryFunctor, a: &NerveComplex, b: &NerveComplex) -> Result<ChainMap> {
    let top = a.nerve.top().min(b.nerve.top());
    if !std::sync::Arc::ptr_eq(f.source(), a.nerve.category())
        || !std::sync::Arc::ptr_eq(f.target(), b.nerve.category())
    {
        return Err(Error::Invalid("functor does not match the nerves".into()));
    }
    let target = f.target();
    let mut maps = Vec::with_capacity(top + 1);
    maps.push(SparseMatrix::from_sorted_columns(
        b.nerve.count(0),
        (0..a.nerve.count(0))
            .map(|i| vec![(f.on_object(i) as u32, 1)])
            .collect(),
    ));
    let mut image = Vec::new();
    for d in 1..=top {
        let columns = (0..a.nerve.count(d))
            .map(|k| {
                image.clear();
                for &m in a.nerve.chain(d, k) {
                    let fm = f.on_morphism(m as usize);
                    if target.is_identity(fm) {
                        return Vec::new();
                    }
                    image.push(fm as u32);
                }
                let row = b.nerve.index_of(&image).expect("image of a chain is a chain");
                vec![(row as u32, 1)]
            })
            .collect();
        maps.push(SparseMatrix::from_sorted_columns(b.nerve.count(d), columns));
    }
    Ok(ChainMap { maps })
}

/// `Cone(f)_d = B_d ⊕ A_{d−1}` with `∂(b, a) = (∂b + f(a), −∂a)`, in degrees
/// `0..=top` where `top` is the common truncation of `A`, `B` and `f`.
pub fn mapping_cone(f: &ChainMap, a: &FpComplex, b: &FpComplex) -> Result<FpComplex> {
    let p = a.prime();
    let top = f.top().min(a.top()).min(b.top());
    let adim = |d: usize| if d == 0 { 0 } else { a.dim(d - 1) };
    let dims: Vec<usize> = (0..=top).map(|d| b.dim(d) + adim(d)).collect();
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let rows_b = b.dim(d - 1);
        let mut columns: Vec<Vec<(u32, u32)>> = Vec::with_capacity(dims[d]);
        for c in 0..b.dim(d) {
            columns.push(b.boundary(d).column(c).collect());
        }
        for c in 0..adim(d) {
            let mut col: Vec<(u32, u32)> = f.maps[d - 1].column(c).collect();
            if d >= 2 {
                col.extend(
                    a.boundary(d - 1)
                        .column(c)
                        .map(|(r, v)| (r + rows_b as u32, p.neg(v))),
                );
            }
            columns.push(col);
        }
        boundaries.push(SparseMatrix::from_sorted_columns(dims[d - 1], columns));
    }
    FpComplex::new(p, dims, boundaries)
}

/// Comparison of `H_*(A)` and `H_*(B)` through a chain map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub cone: Vec<usize>,
    /// Rank of `H_d(A) → H_d(B)`, recovered from the long exact sequence.
    pub induced_rank: Vec<usize>,
    /// Whether `f_*` is an isomorphism in degree `d`, for the certified
    /// degrees `d ≤ top − 2`.
    pub iso: Vec<bool>,
}

impl IsoVerdict {
    /// Isomorphism in every certified degree (and at least one degree).
    pub fn is_iso(&self) -> bool {
        !self.iso.is_empty() && self.iso.iter().all(|&b| b)
    }
}

/// Decides in which degrees `f` induces an isomorphism, from the homology of
/// `A`, `B` and the mapping cone. Exactness of
/// `H_{d+1}B → H_{d+1}Cone → H_dA → H_dB` gives
/// `dim H_{d+1}Cone = (h_{d+1}B − r_{d+1}) + (h_dA − r_d)`, which determines
/// every rank `r_d` of `f_*` recursively.
pub fn homology_iso_verdict(f: &ChainMap, a: &FpComplex, b: &FpComplex) -> Result<IsoVerdict> {
    if !f.commutes(a, b) {
        return Err(Error::Invalid("not a chain map".into()));
    }
    let cone = mapping_cone(f, a, b)?;
    let (ha, (hb, hc)) = rayon::join(
        || a.homology().dims,
        || rayon::join(|| b.homology().dims, || cone.homology().dims),
    );
    let known = ha.len().min(hb.len()).min(hc.len());
    let mut ranks: Vec<usize> = Vec::with_capacity(known);
    for d in 0..known {
        let r = if d == 0 {
            hb[0] as i64 - hc[0] as i64
        } else {
            hb[d] as i64 + ha[d - 1] as i64 - ranks[d - 1] as i64 - hc[d] as i64
        };
        if r < 0 {
            return Err(Error::Invalid("inconsistent ranks in the long exact sequence".into()));
        }
        ranks.push(r as usize);
    }
    let certified = known.saturating_sub(1);
    let iso = (0..certified)
        .map(|d| ranks[d] == ha[d] && ranks[d] == hb[d])
        .collect();
    Ok(IsoVerdict {
        source: ha,
        target: hb,
        cone: hc,
        induced_rank: ranks,
        iso,
    })
}
