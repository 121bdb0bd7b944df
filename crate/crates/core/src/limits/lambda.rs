use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use super::stages::{orbit_skeleton, p_subgroup_classes};
use super::{higher_limits, AbFunctor, LimitsProfile};
use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::fp::{DenseMatrix, Prime};
use crate::group::{Elem, PermutationGroup, Subgroup};

/// An F_p[G]-module: one `dim × dim` matrix per group generator, in the
/// order of [`PermutationGroup::generators`], with `ρ(xy) = ρ(x)·ρ(y)`.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub dim: usize,
    pub generators: Vec<DenseMatrix>,
}

impl ModuleData {
    pub fn trivial(group: &PermutationGroup, dim: usize) -> ModuleData {
        ModuleData {
            dim,
            generators: vec![DenseMatrix::identity(dim); group.generators().len()],
        }
    }

    /// The matrix of every group element, extended from the generators along
    /// the Cayley graph. Fails if the generator matrices do not define an
    /// action.
    pub fn action(&self, group: &PermutationGroup, p: Prime) -> Result<Vec<DenseMatrix>> {
        let gens = group.generator_elems();
        if gens.len() != self.generators.len() {
            return Err(Error::NotAFunctor(format!(
                "{} generator matrices for {} generators",
                self.generators.len(),
                gens.len()
            )));
        }
        if self
            .generators
            .iter()
            .any(|m| m.rows() != self.dim || m.cols() != self.dim)
        {
            return Err(Error::NotAFunctor("generator matrix has the wrong shape".into()));
        }
        let mut rho: Vec<Option<DenseMatrix>> = vec![None; group.order()];
        rho[group.identity().index()] = Some(DenseMatrix::identity(self.dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let rx = rho[x.index()].clone().expect("visited");
            for (s, m) in gens.iter().zip(&self.generators) {
                let xs = group.mul(x, *s);
                let value = rx.mul(m, p);
                match &rho[xs.index()] {
                    Some(existing) if *existing != value => {
                        return Err(Error::NotAFunctor(
                            "generator matrices violate a relation of the group".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        rho[xs.index()] = Some(value);
                        queue.push_back(xs);
                    }
                }
            }
        }
        Ok(rho.into_iter().map(|m| m.expect("generators generate")).collect())
    }
}

/// `F_M` on the skeletal orbit category of p-subgroups: `M` at the trivial
/// subgroup, whose automorphisms are the group elements, and zero elsewhere.
pub fn module_functor(group: &PermutationGroup, p: Prime, module: &ModuleData) -> Result<AbFunctor> {
    let rho = module.action(group, p)?;
    let sylow = group.sylow_subgroup(p);
    let category = Arc::new(orbit_skeleton(group, &sylow, &p_subgroup_classes(group, &sylow)));
    let one = trivial_object(&category)?;
    let dims: Vec<usize> = (0..category.object_count())
        .map(|i| if i == one { module.dim } else { 0 })
        .collect();
    let maps = category
        .morphisms()
        .iter()
        .map(|m| {
            if m.source == one && m.target == one {
                rho[m.witness.expect("orbit morphisms have witnesses").index()].clone()
            } else {
                DenseMatrix::zeros(dims[m.source], dims[m.target])
            }
        })
        .collect();
    AbFunctor::new(category, p, dims, maps)
}

fn trivial_object(category: &FiniteCategory) -> Result<usize> {
    category
        .subgroups()
        .and_then(|s| s.iter().position(Subgroup::is_trivial))
        .ok_or_else(|| Error::Invalid("no trivial subgroup among the objects".into()))
}

/// `Λ^*_p(G; M)`: the higher limits of `F_M`, for degrees `< nmax`.
pub fn lambda_star(
    group: &PermutationGroup,
    p: Prime,
    module: &ModuleData,
    nmax: usize,
    budget: usize,
) -> Result<LimitsProfile> {
    higher_limits(&module_functor(group, p, module)?, nmax, budget)
}

/// Both sides of `lim^*_{O_p(G)} Φ ≅ Λ^*_p(N_G(Q)/Q; Φ(Q))` for `Φ`
/// supported on the conjugacy class of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub subgroup: String,
    pub quotient_order: usize,
    pub limits: LimitsProfile,
    pub lambda: LimitsProfile,
}

impl QuotientCheck {
    pub fn agree(&self) -> bool {
        self.limits == self.lambda
    }
}

/// Computes both sides independently. `phi` lives on an orbit category of
/// p-subgroups in which `q` is an object, and must vanish off its class.
pub fn quotient_reduction_check(
    group: &PermutationGroup,
    p: Prime,
    q: usize,
    phi: &AbFunctor,
    nmax: usize,
    budget: usize,
) -> Result<QuotientCheck> {
    let category = phi.base();
    let subgroups = category
        .subgroups()
        .ok_or_else(|| Error::Invalid("category objects are not subgroups".into()))?;
    let qs = &subgroups[q];
    for (i, s) in subgroups.iter().enumerate() {
        if phi.dim(i) != 0 && group.conjugating_element(s, qs).is_none() {
            return Err(Error::Invalid(format!(
                "functor does not vanish at {}",
                category.label(i)
            )));
        }
    }
    let limits = higher_limits(phi, nmax, budget)?;

    let normalizer = group.normalizer(qs);
    let quotient = group.quotient(&normalizer, qs)?;
    let generators = quotient
        .group
        .generator_elems()
        .into_iter()
        .map(|s| {
            let w: Elem = group.left_coset_min(quotient.lift(s), qs);
            let f = category
                .find_by_witness(q, q, w)
                .ok_or_else(|| Error::Invalid("normalizer element without an automorphism".into()))?;
            Ok(phi.map(f).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let module = ModuleData {
        dim: phi.dim(q),
        generators,
    };
    let lambda = lambda_star(&quotient.group, p, &module, nmax, budget)?;
    Ok(QuotientCheck {
        subgroup: category.label(q).to_string(),
        quotient_order: quotient.group.order(),
        limits,
        lambda,
    })
}
