use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;

use super::FpComplex;
use crate::category::{one_object_category, FiniteCategory};
use crate::error::{Error, Result};
use crate::fp::{Prime, SparseMatrix};
use crate::group::PermutationGroup;

/// Default cap on the number of basis chains in a single degree.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Number of chains of `d` composable non-identity morphisms, `d = 0..=top`.
pub fn chain_counts(c: &FiniteCategory, top: usize) -> Vec<u128> {
    let mut counts = vec![c.object_count() as u128];
    // ending[f] = chains of the current length whose last arrow is f
    let mut ending: Vec<u128> = (0..c.morphism_count())
        .map(|f| u128::from(!c.is_identity(f)))
        .collect();
    for d in 1..=top {
        counts.push(ending.iter().sum());
        if d == top {
            break;
        }
        let mut into_object = vec![0u128; c.object_count()];
        for (f, &n) in ending.iter().enumerate() {
            into_object[c.morphism(f).target] += n;
        }
        ending = (0..c.morphism_count())
            .map(|g| {
                if c.is_identity(g) {
                    0
                } else {
                    into_object[c.morphism(g).source]
                }
            })
            .collect();
    }
    counts
}

/// The non-degenerate simplices of the nerve up to degree `top`: in degree
/// `d ≥ 1`, the chains `(f_1, …, f_d)` of composable non-identity morphisms,
/// listed lexicographically by morphism id; in degree 0, the objects.
#[derive(Clone, Debug)]
pub struct Nerve {
    category: Arc<FiniteCategory>,
    /// `chains[d]` holds `d` ids per chain, flattened.
    chains: Vec<Vec<u32>>,
    counts: Vec<usize>,
}

impl Nerve {
    pub fn build(category: Arc<FiniteCategory>, top: usize, budget: usize) -> Result<Nerve> {
        for (degree, &count) in chain_counts(&category, top).iter().enumerate() {
            if count > budget as u128 {
                return Err(Error::BudgetExceeded {
                    degree,
                    count,
                    budget,
                });
            }
        }
        let n = category.object_count();
        let next: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v: Vec<u32> = category
                    .out(i)
                    .iter()
                    .copied()
                    .filter(|&f| !category.is_identity(f as usize))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();

        let mut chains = vec![Vec::new()];
        let mut counts = vec![n];
        let mut all_arrows: Vec<u32> = (0..category.morphism_count() as u32)
            .filter(|&f| !category.is_identity(f as usize))
            .collect();
        all_arrows.sort_unstable();
        if top >= 1 {
            counts.push(all_arrows.len());
            chains.push(all_arrows);
        }
        for d in 2..=top {
            let prev = &chains[d - 1];
            let mut flat = Vec::new();
            for chain in prev.chunks_exact(d - 1) {
                let last = *chain.last().unwrap() as usize;
                for &g in &next[category.morphism(last).target] {
                    flat.extend_from_slice(chain);
                    flat.push(g);
                }
            }
            counts.push(flat.len() / d);
            chains.push(flat);
        }
        Ok(Nerve {
            category,
            chains,
            counts,
        })
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts[d]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The `k`-th chain of degree `d ≥ 1`.
    pub fn chain(&self, d: usize, k: usize) -> &[u32] {
        &self.chains[d][k * d..(k + 1) * d]
    }

    /// Position of a non-degenerate chain of degree `d ≥ 1`.
    pub fn index_of(&self, chain: &[u32]) -> Option<usize> {
        let d = chain.len();
        let (mut lo, mut hi) = (0, self.counts[d]);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.chain(d, mid).cmp(chain) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Column of `∂_d` for the `k`-th chain, as unsorted `(row, sign)` terms.
    fn faces(&self, d: usize, k: usize, p: Prime, out: &mut Vec<(u32, u32)>) {
        let c = &self.category;
        let chain = self.chain(d, k);
        if d == 1 {
            let m = c.morphism(chain[0] as usize);
            out.push((m.target as u32, 1));
            out.push((m.source as u32, p.neg(1)));
            return;
        }
        let mut face = Vec::with_capacity(d - 1);
        for i in 0..=d {
            face.clear();
            if i == 0 {
                face.extend_from_slice(&chain[1..]);
            } else if i == d {
                face.extend_from_slice(&chain[..d - 1]);
            } else {
                let composite = c.compose(chain[i - 1] as usize, chain[i] as usize);
                if c.is_identity(composite) {
                    continue;
                }
                face.extend_from_slice(&chain[..i - 1]);
                face.push(composite as u32);
                face.extend_from_slice(&chain[i + 1..]);
            }
            let row = self.index_of(&face).expect("faces of chains are chains");
            out.push((row as u32, p.sign(i)));
        }
    }

    /// `∂_d` as a sparse matrix.
    pub fn boundary(&self, d: usize, p: Prime) -> SparseMatrix {
        let columns: Vec<Vec<(u32, u32)>> = (0..self.counts[d])
            .into_par_iter()
            .map_init(Vec::new, |buf, k| {
                buf.clear();
                self.faces(d, k, p, buf);
                buf.sort_unstable_by_key(|&(r, _)| r);
                let mut col: Vec<(u32, u32)> = Vec::with_capacity(buf.len());
                for &(r, v) in buf.iter() {
                    match col.last_mut() {
                        Some((lr, lv)) if *lr == r => *lv = p.add(*lv, v),
                        _ => col.push((r, v)),
                    }
                }
                col.retain(|&(_, v)| v != 0);
                col
            })
            .collect();
        SparseMatrix::from_sorted_columns(self.counts[d - 1], columns)
    }
}

/// A nerve together with its normalized chain complex.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub nerve: Nerve,
    pub complex: FpComplex,
}

/// The normalized chain complex of the nerve of `c`, with F_p coefficients,
/// in degrees `0..=top`. Inner faces that compose to an identity are
/// degenerate and dropped.
pub fn nerve_complex(
    c: &Arc<FiniteCategory>,
    p: Prime,
    top: usize,
    budget: usize,
) -> Result<NerveComplex> {
    let nerve = Nerve::build(c.clone(), top, budget)?;
    let boundaries = (1..=top).map(|d| nerve.boundary(d, p)).collect();
    let complex = FpComplex::new(p, nerve.counts.clone(), boundaries)?;
    Ok(NerveComplex { nerve, complex })
}

/// The normalized bar complex of `G`, whose homology is `H_*(BG; F_p)`.
pub fn bar_complex(group: &PermutationGroup, p: Prime, top: usize, budget: usize) -> Result<NerveComplex> {
    let estimate = (group.order() as u128 - 1).pow(top as u32);
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded {
            degree: top,
            count: estimate,
            budget,
        });
    }
    nerve_complex(&Arc::new(one_object_category(group)), p, top, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::chain3;
    use crate::Permutation;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn cyclic(n: usize) -> PermutationGroup {
        let cycle: Vec<usize> = (1..=n).collect();
        PermutationGroup::enumerate(n, vec![Permutation::from_cycles(n, &[cycle]).unwrap()]).unwrap()
    }

    fn s3() -> PermutationGroup {
        PermutationGroup::enumerate(
            3,
            vec![
                Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
                Permutation::from_cycles(3, &[vec![1, 2]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn point() {
        let g = cyclic(1);
        let c = bar_complex(&g, p(2), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.complex.homology().dims, vec![1, 0, 0]);
    }

    #[test]
    fn cyclic_two_at_two() {
        let c = bar_complex(&cyclic(2), p(2), 4, DEFAULT_BUDGET).unwrap();
        assert!(c.complex.is_complex());
        assert_eq!(c.complex.homology().dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn coprime_order_is_acyclic() {
        let c = bar_complex(&cyclic(3), p(2), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.complex.homology().dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn symmetric_three() {
        let c = bar_complex(&s3(), p(3), 5, DEFAULT_BUDGET).unwrap();
        assert!(c.complex.is_complex());
        assert_eq!(c.complex.homology().dims, vec![1, 0, 0, 1, 1]);
        let c = bar_complex(&s3(), p(2), 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.complex.homology().dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn poset_with_initial_object_is_contractible() {
        let c = nerve_complex(&Arc::new(chain3()), p(2), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.nerve.counts(), &[3, 3, 1, 0]);
        assert_eq!(c.complex.homology().dims, vec![1, 0, 0]);
    }

    #[test]
    fn counts_and_budget() {
        let g = s3();
        let cat = Arc::new(one_object_category(&g));
        assert_eq!(chain_counts(&cat, 3), vec![1, 5, 25, 125]);
        let err = nerve_complex(&cat, p(2), 3, 100).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                degree: 3,
                count: 125,
                budget: 100
            }
        );
    }

    #[test]
    fn chains_are_sorted_and_found() {
        let cat = Arc::new(one_object_category(&s3()));
        let nerve = Nerve::build(cat, 3, DEFAULT_BUDGET).unwrap();
        for d in 1..=3 {
            for k in 0..nerve.count(d) {
                if k > 0 {
                    assert!(nerve.chain(d, k - 1) < nerve.chain(d, k));
                }
                assert_eq!(nerve.index_of(nerve.chain(d, k)), Some(k));
            }
        }
    }
}
