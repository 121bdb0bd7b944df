use std::sync::Arc;

use super::AbFunctor;
use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::fp::{ColumnReducer, DenseMatrix, Prime};
use crate::group::{Elem, PermutationGroup, Subgroup};

/// `H^i(BP; F_p)` from normalized bar cochains, with a fixed basis of
/// representative cocycles.
///
/// Cochains of degree `k` are functions on `(P ∖ 1)^k`, tuples indexed in
/// mixed radix with digit `j` the position of the `j`-th entry in `P ∖ 1`.
#[derive(Clone, Debug)]
pub struct GroupCohomology {
    prime: Prime,
    degree: usize,
    nonidentity: Vec<Elem>,
    position: Vec<u32>,
    representatives: Vec<Vec<u32>>,
    /// Columns: the representatives, then a basis of the coboundaries.
    projector: DenseMatrix,
}

const ABSENT: u32 = u32::MAX;

impl GroupCohomology {
    pub fn compute(
        group: &PermutationGroup,
        p: Prime,
        sub: &Subgroup,
        degree: usize,
        budget: usize,
    ) -> Result<Self> {
        let nonidentity: Vec<Elem> = sub.iter().filter(|&x| x != group.identity()).collect();
        let m = nonidentity.len() as u128;
        // δ^degree is stored densely
        let cells = m.pow(2 * degree as u32 + 1);
        if cells > budget as u128 {
            return Err(Error::BudgetExceeded {
                degree: degree + 1,
                count: cells,
                budget,
            });
        }
        let mut position = vec![ABSENT; group.order()];
        for (k, x) in nonidentity.iter().enumerate() {
            position[x.index()] = k as u32;
        }
        let mut h = GroupCohomology {
            prime: p,
            degree,
            nonidentity,
            position,
            representatives: Vec::new(),
            projector: DenseMatrix::zeros(0, 0),
        };
        let cocycles = h.coboundary(group, degree).nullspace(p);
        let dim = h.cochain_dim(degree);
        let mut reducer = ColumnReducer::new(dim, p);
        let mut boundaries: Vec<Vec<u32>> = Vec::new();
        if degree > 0 {
            let prev = h.coboundary(group, degree - 1);
            let mut echelon = prev.clone();
            for c in echelon.rref(p) {
                let col = prev.column(c);
                reducer.push(sparse(&col));
                boundaries.push(col);
            }
        }
        for z in cocycles {
            if reducer.push(sparse(&z)) {
                h.representatives.push(z);
            }
        }
        let columns: Vec<Vec<u32>> = h
            .representatives
            .iter()
            .chain(boundaries.iter())
            .cloned()
            .collect();
        h.projector = DenseMatrix::from_columns(dim, &columns);
        Ok(h)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.representatives
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.nonidentity.len().pow(k as u32)
    }

    fn tuple(&self, mut index: usize, k: usize, out: &mut Vec<Elem>) {
        let m = self.nonidentity.len();
        out.clear();
        out.resize(k, Elem(0));
        for slot in (0..k).rev() {
            out[slot] = self.nonidentity[index % m];
            index /= m;
        }
    }

    /// Index of a tuple of non-identity elements of the subgroup.
    fn index(&self, tuple: &[Elem]) -> usize {
        let m = self.nonidentity.len();
        tuple
            .iter()
            .fold(0, |acc, x| acc * m + self.position[x.index()] as usize)
    }

    /// `δ^k: C^k → C^{k+1}` with trivial coefficients.
    pub fn coboundary(&self, group: &PermutationGroup, k: usize) -> DenseMatrix {
        let p = self.prime;
        let mut d = DenseMatrix::zeros(self.cochain_dim(k + 1), self.cochain_dim(k));
        let mut t = Vec::new();
        let mut face = Vec::with_capacity(k);
        for row in 0..self.cochain_dim(k + 1) {
            self.tuple(row, k + 1, &mut t);
            let mut add = |col: usize, v: u32| {
                let cur = d.get(row, col);
                d.set(row, col, p.add(cur, v));
            };
            add(self.index(&t[1..]), 1);
            for j in 1..=k {
                let prod = group.mul(t[j - 1], t[j]);
                if prod == group.identity() {
                    continue;
                }
                face.clear();
                face.extend_from_slice(&t[..j - 1]);
                face.push(prod);
                face.extend_from_slice(&t[j + 1..]);
                add(self.index(&face), p.sign(j));
            }
            add(self.index(&t[..k]), p.sign(k + 1));
        }
        d
    }

    /// Coordinates of the class of a cocycle in the representative basis.
    pub fn coordinates(&self, cocycle: &[u32]) -> Result<Vec<u32>> {
        let mut x = self
            .projector
            .solve(cocycle, self.prime)
            .ok_or_else(|| Error::Invalid("cochain is not a cocycle".into()))?;
        x.truncate(self.dim());
        Ok(x)
    }

    /// The matrix of `H^i(BQ) → H^i(BP)` induced by `c_w: P → Q`,
    /// `x ↦ w⁻¹ x w`, where `self` is for `P` and `target` for `Q`.
    pub fn pullback(&self, group: &PermutationGroup, target: &GroupCohomology, w: Elem) -> Result<DenseMatrix> {
        let k = self.degree;
        let dim_p = self.cochain_dim(k);
        let winv = group.inv(w);
        let mut image_index = Vec::with_capacity(dim_p);
        let mut t = Vec::new();
        let mut ct = Vec::new();
        for c in 0..dim_p {
            self.tuple(c, k, &mut t);
            ct.clear();
            for &x in &t {
                let y = group.mul(group.mul(winv, x), w);
                if target.position[y.index()] == ABSENT {
                    return Err(Error::Invalid("witness does not conjugate into the target".into()));
                }
                ct.push(y);
            }
            image_index.push(target.index(&ct));
        }
        let columns = target
            .representatives
            .iter()
            .map(|z| {
                let pulled: Vec<u32> = image_index.iter().map(|&i| z[i]).collect();
                self.coordinates(&pulled)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseMatrix::from_columns(self.dim(), &columns))
    }
}

fn sparse(v: &[u32]) -> Vec<(u32, u32)> {
    v.iter()
        .enumerate()
        .filter(|&(_, &x)| x != 0)
        .map(|(i, &x)| (i as u32, x))
        .collect()
}

/// `F_i(P) = H^i(BP; F_p)` on a category whose objects are subgroups and
/// whose morphisms carry witnesses `w` with `P^w ≤ Q`; a morphism acts by
/// restriction along `x ↦ w⁻¹ x w`. Functoriality is verified.
pub fn cohomology_functor(
    group: &PermutationGroup,
    p: Prime,
    category: &Arc<FiniteCategory>,
    i: usize,
    budget: usize,
) -> Result<AbFunctor> {
    let subgroups = category
        .subgroups()
        .ok_or_else(|| Error::Invalid("category objects are not subgroups".into()))?;
    let values = subgroups
        .iter()
        .map(|s| GroupCohomology::compute(group, p, s, i, budget))
        .collect::<Result<Vec<_>>>()?;
    let maps = category
        .morphisms()
        .iter()
        .map(|m| {
            let w = m
                .witness
                .ok_or_else(|| Error::Invalid("morphism without a witness".into()))?;
            values[m.source].pullback(group, &values[m.target], w)
        })
        .collect::<Result<Vec<_>>>()?;
    AbFunctor::new(
        category.clone(),
        p,
        values.iter().map(GroupCohomology::dim).collect(),
        maps,
    )
}
