use std::cmp::Reverse;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{cohomology_functor, higher_limits, AbFunctor, LimitsProfile};
use crate::category::{build_orbit, CategoryFunctor, FiniteCategory};
use crate::error::{Error, Result};
use crate::fp::DenseMatrix;
use crate::group::{PermutationGroup, Subgroup};
use crate::omega::{is_centric, p_subgroups, OmegaPoset};
use crate::verdict::Status;

/// One representative per conjugacy class of p-subgroups, each inside
/// `sylow`, sorted.
pub fn p_subgroup_classes(group: &PermutationGroup, sylow: &Subgroup) -> Vec<Subgroup> {
    let all = p_subgroups(group, sylow);
    class_representatives(group, sylow, &all)
}

fn class_representatives(group: &PermutationGroup, sylow: &Subgroup, collection: &[Subgroup]) -> Vec<Subgroup> {
    let mut reps: Vec<Subgroup> = group
        .conjugacy_classes(collection)
        .iter()
        .map(|class| {
            let inside = class.iter().find(|&&i| collection[i].is_subgroup_of(sylow));
            collection[*inside.unwrap_or(&class[0])].clone()
        })
        .collect();
    reps.sort();
    reps
}

/// The orbit category on one representative of each conjugacy class in
/// `collection`, chosen inside `sylow` when possible.
pub fn orbit_skeleton(group: &PermutationGroup, sylow: &Subgroup, collection: &[Subgroup]) -> FiniteCategory {
    build_orbit(group, &class_representatives(group, sylow, collection))
}

fn subgroups(c: &FiniteCategory) -> Result<&[Subgroup]> {
    c.subgroups()
        .ok_or_else(|| Error::Invalid("category objects are not subgroups".into()))
}

/// `F^{[Q]}`: `F` on the objects conjugate to object `q`, zero elsewhere.
pub fn punctured_functor(group: &PermutationGroup, f: &AbFunctor, q: usize) -> Result<AbFunctor> {
    let subs = subgroups(f.base())?;
    let keep: Vec<bool> = subs
        .iter()
        .map(|s| group.conjugating_element(s, &subs[q]).is_some())
        .collect();
    f.with_support(&keep)
}

/// Whether no morphism leaves the object set `keep`.
fn upward_closed(c: &FiniteCategory, keep: &[bool]) -> Option<String> {
    c.morphisms()
        .iter()
        .find(|m| keep[m.source] && !keep[m.target])
        .map(|m| format!("{} maps to {}", c.label(m.source), c.label(m.target)))
}

/// `lim^*` over a category and over a full subcategory closed upward, for a
/// functor vanishing off the subcategory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub objects: usize,
    pub restricted_objects: usize,
    pub full: LimitsProfile,
    pub restricted: LimitsProfile,
}

impl RestrictionReport {
    pub fn agree(&self) -> bool {
        self.full == self.restricted
    }
}

pub fn restriction_check(f: &AbFunctor, keep: &[usize], nmax: usize, budget: usize) -> Result<RestrictionReport> {
    let c = f.base();
    let mut member = vec![false; c.object_count()];
    for &i in keep {
        member[i] = true;
    }
    if let Some(why) = upward_closed(c, &member) {
        return Err(Error::UpwardClosureViolated(why));
    }
    if let Some(i) = (0..c.object_count()).find(|&i| !member[i] && f.dim(i) != 0) {
        return Err(Error::Invalid(format!(
            "functor does not vanish at {}",
            c.label(i)
        )));
    }
    let sub = Arc::new(c.full_subcategory(keep));
    let inclusion = CategoryFunctor::inclusion(sub, c.clone(), keep)?;
    let restricted = f.pullback(&inclusion)?;
    Ok(RestrictionReport {
        objects: c.object_count(),
        restricted_objects: keep.len(),
        full: higher_limits(f, nmax, budget)?,
        restricted: higher_limits(&restricted, nmax, budget)?,
    })
}

/// `lim^*(F_i^{[Q]})` over the skeletal orbit categories of `Ω` and of all
/// p-subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuncturedReport {
    pub subgroup: String,
    pub index: usize,
    pub status: Status,
    pub omega: Option<LimitsProfile>,
    pub all: Option<LimitsProfile>,
}

pub fn punctured_vanishing(
    group: &PermutationGroup,
    omega: &OmegaPoset,
    q: &Subgroup,
    i: usize,
    nmax: usize,
    budget: usize,
) -> Result<PuncturedReport> {
    let p = omega.prime();
    let subgroup = group.subgroup_label(q);
    if !omega.contains(q) {
        return Err(Error::Invalid(format!("{subgroup} is not an intersection of Sylow subgroups")));
    }
    if is_centric(group, p, q) {
        return Ok(PuncturedReport {
            subgroup,
            index: i,
            status: Status::NotApplicable,
            omega: None,
            all: None,
        });
    }
    let sylow = omega.sylow();
    let on = |collection: &[Subgroup]| -> Result<LimitsProfile> {
        let c = Arc::new(orbit_skeleton(group, sylow, collection));
        let q_obj = subgroups(&c)?
            .iter()
            .position(|s| group.conjugating_element(s, q).is_some())
            .expect("the class of Q has a representative");
        let fi = cohomology_functor(group, p, &c, i, budget)?;
        higher_limits(&punctured_functor(group, &fi, q_obj)?, nmax, budget)
    };
    let over_omega = on(omega.members())?;
    let over_all = on(&p_subgroups(group, sylow))?;
    let status = Status::from_bool(over_omega.vanishes() && over_omega == over_all);
    Ok(PuncturedReport {
        subgroup,
        index: i,
        status,
        omega: Some(over_omega),
        all: Some(over_all),
    })
}

/// One step `O_r ⊆ O_{r+1}` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub added: String,
    pub order: usize,
    pub upward_closed: bool,
    pub kernel_is_punctured: bool,
    pub kernel_limits: LimitsProfile,
    pub limits_after: LimitsProfile,
}

impl StageReport {
    pub fn passed(&self) -> bool {
        self.upward_closed && self.kernel_is_punctured && self.kernel_limits.vanishes()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub index: usize,
    pub stages: Vec<StageReport>,
    pub omega: LimitsProfile,
    pub centric: LimitsProfile,
    pub restriction: LimitsProfile,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(StageReport::passed)
            && self.omega == self.centric
            && self.restriction == self.centric
    }

    /// Index of the first failing stage.
    pub fn first_failure(&self) -> Option<usize> {
        self.stages.iter().position(|s| !s.passed())
    }
}

/// The kernel of `η: F → G` objectwise, with the induced morphism matrices;
/// `η_x` is a `dim G(x) × dim F(x)` matrix. Fails if `η` is not natural.
fn kernel_functor(f: &AbFunctor, g: &AbFunctor, eta: &[DenseMatrix]) -> Result<AbFunctor> {
    let p = f.prime();
    let c = f.base();
    for (k, m) in c.morphisms().iter().enumerate() {
        let left = eta[m.source].mul(f.map(k), p);
        let right = g.map(k).mul(&eta[m.target], p);
        if left != right {
            return Err(Error::NotAFunctor(format!("transformation is not natural at morphism {k}")));
        }
    }
    let bases: Vec<DenseMatrix> = (0..c.object_count())
        .map(|i| {
            let null = eta[i].nullspace(p);
            DenseMatrix::from_columns(f.dim(i), &null)
        })
        .collect();
    let maps = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let image = f.map(k).mul(&bases[m.target], p);
            let columns = (0..image.cols())
                .map(|j| {
                    bases[m.source]
                        .solve(&image.column(j), p)
                        .ok_or_else(|| Error::NotAFunctor("kernel is not preserved".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(DenseMatrix::from_columns(bases[m.source].cols(), &columns))
        })
        .collect::<Result<Vec<_>>>()?;
    AbFunctor::new(c.clone(), p, bases.iter().map(DenseMatrix::cols).collect(), maps)
}

fn same_functor(a: &AbFunctor, b: &AbFunctor) -> bool {
    a.dims() == b.dims() && (0..a.base().morphism_count()).all(|k| a.map(k) == b.map(k))
}

/// Adds the non-centric classes of `Ω` one at a time to the centric ones,
/// largest first, and checks each step of `lim^*(F_{i,r+1}) ≅ lim^*(F_{i,r})`.
pub fn filtration_pipeline(
    group: &PermutationGroup,
    omega: &OmegaPoset,
    i: usize,
    nmax: usize,
    budget: usize,
) -> Result<FiltrationReport> {
    let p = omega.prime();
    let c = Arc::new(orbit_skeleton(group, omega.sylow(), omega.members()));
    let subs = subgroups(&c)?.to_vec();
    let fi = cohomology_functor(group, p, &c, i, budget)?;

    let centric: Vec<usize> = (0..subs.len()).filter(|&k| is_centric(group, p, &subs[k])).collect();
    let mut added: Vec<usize> = (0..subs.len()).filter(|&k| !is_centric(group, p, &subs[k])).collect();
    added.sort_by_key(|&k| (Reverse(subs[k].order()), subs[k].clone()));

    let support = |r: usize| -> Vec<bool> {
        let mut keep = vec![false; subs.len()];
        for &k in centric.iter().chain(&added[..r]) {
            keep[k] = true;
        }
        keep
    };
    let stages = (0..added.len())
        .into_par_iter()
        .map(|r| stage(group, &fi, &support(r), &support(r + 1), added[r], nmax, budget))
        .collect::<Result<Vec<_>>>()?;

    let omega_limits = higher_limits(&fi, nmax, budget)?;
    let centric_cat = Arc::new(c.full_subcategory(&centric));
    let inclusion = CategoryFunctor::inclusion(centric_cat, c.clone(), &centric)?;
    let centric_limits = higher_limits(&fi.pullback(&inclusion)?, nmax, budget)?;
    let restriction = if upward_closed(&c, &support(0)).is_none() {
        higher_limits(&fi.with_support(&support(0))?, nmax, budget)?
    } else {
        LimitsProfile { dims: Vec::new() }
    };
    Ok(FiltrationReport {
        index: i,
        stages,
        omega: omega_limits,
        centric: centric_limits,
        restriction,
    })
}

#[allow(clippy::too_many_arguments)]
fn stage(
    group: &PermutationGroup,
    fi: &AbFunctor,
    before: &[bool],
    after: &[bool],
    new: usize,
    nmax: usize,
    budget: usize,
) -> Result<StageReport> {
    let c = fi.base();
    let q = &subgroups(c)?[new];
    let unclosed = upward_closed(c, before).or_else(|| upward_closed(c, after));
    let mut report = StageReport {
        added: group.subgroup_label(q),
        order: q.order(),
        upward_closed: unclosed.is_none(),
        kernel_is_punctured: false,
        kernel_limits: LimitsProfile { dims: Vec::new() },
        limits_after: LimitsProfile { dims: Vec::new() },
    };
    if unclosed.is_some() {
        return Ok(report);
    }
    let big = fi.with_support(after)?;
    let small = fi.with_support(before)?;
    // identity where both are supported, zero onto the dropped class
    let eta: Vec<DenseMatrix> = (0..c.object_count())
        .map(|k| {
            if before[k] {
                DenseMatrix::identity(fi.dim(k))
            } else {
                DenseMatrix::zeros(0, big.dim(k))
            }
        })
        .collect();
    let kernel = kernel_functor(&big, &small, &eta)?;
    report.kernel_is_punctured = same_functor(&kernel, &punctured_functor(group, fi, new)?);
    report.kernel_limits = higher_limits(&kernel, nmax, budget)?;
    report.limits_after = higher_limits(&big, nmax, budget)?;
    Ok(report)
}
