//! Higher limits of contravariant functors from finite categories to
//! F_p-vector spaces, computed with the normalized cochain complex.

mod cohomology;
mod lambda;
mod stages;

use std::sync::Arc;

use serde::Serialize;

pub use cohomology::{cohomology_functor, GroupCohomology};
pub use lambda::{lambda_star, quotient_reduction_check, module_functor, ModuleData, QuotientCheck};
pub use stages::{
    filtration_pipeline, orbit_skeleton, p_subgroup_classes, punctured_functor, punctured_vanishing,
    restriction_check, FiltrationReport, PuncturedReport, RestrictionReport, StageReport,
};

use crate::category::{CategoryFunctor, FiniteCategory};
use crate::error::{Error, Result};
use crate::fp::{DenseMatrix, Prime, SparseMatrix};
use crate::homology::{FpComplex, Nerve};

/// A contravariant functor `F` from a finite category to F_p-vector spaces.
/// The matrix of a morphism `f: a → b` is the map `F(b) → F(a)`, of shape
/// `dim F(a) × dim F(b)`, and `F(f then g) = F(f)·F(g)`.
#[derive(Clone, Debug)]
pub struct AbFunctor {
    base: Arc<FiniteCategory>,
    prime: Prime,
    dims: Vec<usize>,
    maps: Vec<DenseMatrix>,
}

impl AbFunctor {
    /// Validates shapes, identities and composition exhaustively.
    pub fn new(
        base: Arc<FiniteCategory>,
        prime: Prime,
        dims: Vec<usize>,
        maps: Vec<DenseMatrix>,
    ) -> Result<Self> {
        if dims.len() != base.object_count() || maps.len() != base.morphism_count() {
            return Err(Error::NotAFunctor("values do not cover the category".into()));
        }
        for (f, m) in maps.iter().enumerate() {
            let mor = base.morphism(f);
            if m.rows() != dims[mor.source] || m.cols() != dims[mor.target] {
                return Err(Error::NotAFunctor(format!("matrix of morphism {f} has the wrong shape")));
            }
        }
        let functor = AbFunctor {
            base,
            prime,
            dims,
            maps,
        };
        functor.check()?;
        Ok(functor)
    }

    fn check(&self) -> Result<()> {
        let c = &self.base;
        for i in 0..c.object_count() {
            if !self.maps[c.identity(i)].is_identity() {
                return Err(Error::NotAFunctor(format!("identity of {} is not sent to 1", c.label(i))));
            }
        }
        for f in 0..c.morphism_count() {
            for &g in c.out(c.morphism(f).target) {
                let g = g as usize;
                if self.maps[f].mul(&self.maps[g], self.prime) != self.maps[c.compose(f, g)] {
                    return Err(Error::NotAFunctor(format!(
                        "composite of morphisms {f} and {g} is not preserved"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(base: Arc<FiniteCategory>, prime: Prime) -> Self {
        let maps = base
            .morphisms()
            .iter()
            .map(|_| DenseMatrix::zeros(0, 0))
            .collect();
        AbFunctor {
            dims: vec![0; base.object_count()],
            base,
            prime,
            maps,
        }
    }

    /// The constant functor with value F_p.
    pub fn constant(base: Arc<FiniteCategory>, prime: Prime) -> Self {
        let maps = base
            .morphisms()
            .iter()
            .map(|_| DenseMatrix::identity(1))
            .collect();
        AbFunctor {
            dims: vec![1; base.object_count()],
            base,
            prime,
            maps,
        }
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn map(&self, f: usize) -> &DenseMatrix {
        &self.maps[f]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The same values on the objects with `keep[i]`, zero elsewhere. Fails
    /// if the result is not a functor.
    pub fn with_support(&self, keep: &[bool]) -> Result<AbFunctor> {
        let c = &self.base;
        let dims: Vec<usize> = (0..c.object_count())
            .map(|i| if keep[i] { self.dims[i] } else { 0 })
            .collect();
        let maps = (0..c.morphism_count())
            .map(|f| {
                let m = c.morphism(f);
                if keep[m.source] && keep[m.target] {
                    self.maps[f].clone()
                } else {
                    DenseMatrix::zeros(dims[m.source], dims[m.target])
                }
            })
            .collect();
        AbFunctor::new(c.clone(), self.prime, dims, maps)
    }

    /// `F ∘ u` for a functor `u` into the base category.
    pub fn pullback(&self, u: &CategoryFunctor) -> Result<AbFunctor> {
        if !Arc::ptr_eq(u.target(), &self.base) {
            return Err(Error::Invalid("functor does not land in the base category".into()));
        }
        let dims = u.object_map().iter().map(|&o| self.dims[o]).collect();
        let maps = u.morphism_map().iter().map(|&f| self.maps[f].clone()).collect();
        AbFunctor::new(u.source().clone(), self.prime, dims, maps)
    }
}

/// `dim lim^n F` for `n < dims.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitsProfile {
    pub dims: Vec<usize>,
}

impl LimitsProfile {
    pub fn vanishes(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// The normalized cochain complex of `F` in degrees `0..=top`:
/// `C^n = ⊕ F(c_0)` over chains `c_0 → c_1 → … → c_n` of non-identity
/// morphisms, with
/// `(dφ)(f_1, …, f_{n+1}) = F(f_1) φ(f_2, …) + Σ_i (−1)^i φ(…, f_i f_{i+1}, …) + (−1)^{n+1} φ(f_1, …, f_n)`.
pub fn functor_cochain(f: &AbFunctor, top: usize, budget: usize) -> Result<FpComplex> {
    let p = f.prime;
    let c = f.base.clone();
    let nerve = Nerve::build(c.clone(), top, budget)?;
    let source = |d: usize, k: usize| -> usize {
        if d == 0 {
            k
        } else {
            c.morphism(nerve.chain(d, k)[0] as usize).source
        }
    };
    // offsets[d][k]: first basis index of chain k in C^d
    let offsets: Vec<Vec<usize>> = (0..=top)
        .map(|d| {
            let mut acc = 0;
            let mut v: Vec<usize> = (0..nerve.count(d))
                .map(|k| {
                    let o = acc;
                    acc += f.dims[source(d, k)];
                    o
                })
                .collect();
            v.push(acc);
            v
        })
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();

    let mut coboundaries = Vec::with_capacity(top);
    let mut face = Vec::new();
    for n in 0..top {
        let mut triplets = Vec::new();
        for k in 0..nerve.count(n + 1) {
            let chain = nerve.chain(n + 1, k);
            let c0 = source(n + 1, k);
            let dim0 = f.dims[c0];
            if dim0 == 0 {
                continue;
            }
            let row0 = offsets[n + 1][k];
            let add_identity_block = |col0: usize, sign: u32, triplets: &mut Vec<(u32, u32, u32)>| {
                for r in 0..dim0 {
                    triplets.push(((row0 + r) as u32, (col0 + r) as u32, sign));
                }
            };
            // first term: F(f_1) applied to the value on (f_2, …)
            let first = chain[0] as usize;
            let c1 = c.morphism(first).target;
            let col1 = if n == 0 {
                offsets[0][c1]
            } else {
                offsets[n][nerve.index_of(&chain[1..]).expect("faces of chains are chains")]
            };
            let m = &f.maps[first];
            for r in 0..dim0 {
                for s in 0..f.dims[c1] {
                    let v = m.get(r, s);
                    if v != 0 {
                        triplets.push(((row0 + r) as u32, (col1 + s) as u32, v));
                    }
                }
            }
            // inner faces
            for i in 1..=n {
                let composite = c.compose(chain[i - 1] as usize, chain[i] as usize);
                if c.is_identity(composite) {
                    continue;
                }
                face.clear();
                face.extend_from_slice(&chain[..i - 1]);
                face.push(composite as u32);
                face.extend_from_slice(&chain[i + 1..]);
                let col = offsets[n][nerve.index_of(&face).expect("faces of chains are chains")];
                add_identity_block(col, p.sign(i), &mut triplets);
            }
            // last face
            let col = if n == 0 {
                offsets[0][c0]
            } else {
                offsets[n][nerve.index_of(&chain[..n]).expect("faces of chains are chains")]
            };
            add_identity_block(col, p.sign(n + 1), &mut triplets);
        }
        coboundaries.push(SparseMatrix::from_triplets(dims[n + 1], dims[n], triplets, p));
    }
    FpComplex::from_cochain(p, dims, coboundaries)
}

/// `lim^n F` for `n ≤ top − 1`, from the cochain complex up to degree `top`.
pub fn higher_limits(f: &AbFunctor, top: usize, budget: usize) -> Result<LimitsProfile> {
    if f.is_zero() {
        return Ok(LimitsProfile { dims: vec![0; top] });
    }
    let complex = functor_cochain(f, top, budget)?;
    Ok(LimitsProfile {
        dims: complex.homology().dims,
    })
}

/// `dim lim F`, independently of the cochain complex: the families
/// `(x_c ∈ F(c))` with `x_a = F(f) x_b` for every `f: a → b`.
pub fn inverse_limit_dim(f: &AbFunctor) -> usize {
    let p = f.prime;
    let c = &f.base;
    let mut offset = vec![0];
    for &d in &f.dims {
        offset.push(offset.last().unwrap() + d);
    }
    let total = *offset.last().unwrap();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (g, m) in c.morphisms().iter().enumerate() {
        let (a, b) = (m.source, m.target);
        let mat = &f.maps[g];
        for r in 0..f.dims[a] {
            let mut row = vec![0u32; total];
            row[offset[a] + r] = p.add(row[offset[a] + r], 1);
            for s in 0..f.dims[b] {
                let idx = offset[b] + s;
                row[idx] = p.sub(row[idx], mat.get(r, s));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return total;
    }
    let n = rows.len();
    let m = DenseMatrix::from_rows(n, total, rows.concat());
    total - m.rank(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::chain3;
    use crate::homology::DEFAULT_BUDGET;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn point_has_no_higher_limits() {
        let c = Arc::new(chain3().full_subcategory(&[0]));
        let f = AbFunctor::constant(c, p(2));
        assert_eq!(higher_limits(&f, 3, DEFAULT_BUDGET).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn constant_on_poset_with_terminal_object() {
        let c = Arc::new(chain3());
        let f = AbFunctor::constant(c, p(3));
        let lims = higher_limits(&f, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(lims.dims, vec![1, 0, 0]);
        assert_eq!(inverse_limit_dim(&f), 1);
        assert!(functor_cochain(&f, 3, DEFAULT_BUDGET).unwrap().is_complex());
    }

    #[test]
    fn functor_supported_on_a_point_of_a_poset() {
        // the limit over 0 < 1 < 2 is the value at the terminal object 2
        for (keep, expected) in [
            ([true, false, false], vec![0, 0, 0]),
            ([false, true, false], vec![0, 0, 0]),
            ([false, false, true], vec![1, 0, 0]),
        ] {
            let f = AbFunctor::constant(Arc::new(chain3()), p(2)).with_support(&keep).unwrap();
            assert_eq!(higher_limits(&f, 3, DEFAULT_BUDGET).unwrap().dims, expected);
            assert_eq!(inverse_limit_dim(&f), expected[0]);
        }
    }

    #[test]
    fn span_has_a_first_limit() {
        // a → b, a → c with F(a) = F_p: the two restrictions of a value at a
        // give C^0 = F_p → C^1 = F_p², so lim^0 = 0 and lim^1 = 1
        let text = "object a\nobject b\nobject c\n\
                    morphism 0 0\nmorphism 1 1\nmorphism 2 2\nmorphism 0 1\nmorphism 0 2\n\
                    identity 0 0\nidentity 1 1\nidentity 2 2\n\
                    compose 0 0 0\ncompose 1 1 1\ncompose 2 2 2\n\
                    compose 0 3 3\ncompose 3 1 3\ncompose 0 4 4\ncompose 4 2 4\n";
        let c = Arc::new(crate::category::parse_category(text).unwrap());
        let f = AbFunctor::constant(c.clone(), p(3)).with_support(&[true, false, false]).unwrap();
        assert_eq!(higher_limits(&f, 3, DEFAULT_BUDGET).unwrap().dims, vec![0, 1, 0]);
        let g = AbFunctor::constant(c, p(3));
        assert_eq!(higher_limits(&g, 3, DEFAULT_BUDGET).unwrap().dims, vec![1, 0, 0]);
    }

    #[test]
    fn rejects_non_functors() {
        let c = Arc::new(chain3());
        // support {0, 2} breaks 0 → 1 → 2
        assert!(matches!(
            AbFunctor::constant(c, p(2)).with_support(&[true, false, true]),
            Err(Error::NotAFunctor(_))
        ));
    }
}
