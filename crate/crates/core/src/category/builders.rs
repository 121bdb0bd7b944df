use std::sync::Arc;

use super::{CategoryFunctor, CategoryKind, FiniteCategory, Morphism};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::group::{Elem, PermutationGroup, Subgroup};

/// Builds a category whose hom-sets are the given sorted witness lists and
/// whose composite of `g` and `h` is the witness `canon(i, k, g·h)`.
fn assemble(
    kind: CategoryKind,
    group: &PermutationGroup,
    objects: &[Subgroup],
    witnesses: Vec<Vec<Vec<Elem>>>,
    canon: impl Fn(usize, usize, Elem) -> Elem,
) -> Result<FiniteCategory> {
    let n = objects.len();
    let mut start = vec![vec![0usize; n]; n];
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            start[i][j] = morphisms.len();
            morphisms.extend(witnesses[i][j].iter().map(|&w| Morphism {
                source: i,
                target: j,
                witness: Some(w),
            }));
        }
    }
    let lookup = |i: usize, k: usize, w: Elem| -> Result<usize> {
        witnesses[i][k]
            .binary_search(&w)
            .map(|pos| start[i][k] + pos)
            .map_err(|_| Error::Invalid(format!("witness {w} missing from Mor({i}, {k})")))
    };
    let identities = (0..n)
        .map(|i| lookup(i, i, canon(i, i, group.identity())))
        .collect::<Result<Vec<_>>>()?;
    let ms = morphisms.clone();
    FiniteCategory::new(
        kind,
        objects.iter().map(|s| group.subgroup_label(s)).collect(),
        Some(objects.to_vec()),
        morphisms,
        identities,
        |f, g| {
            let (a, b) = (&ms[f], &ms[g]);
            let w = group.mul(a.witness.unwrap(), b.witness.unwrap());
            lookup(a.source, b.target, canon(a.source, b.target, w))
        },
    )
}

fn dedup_sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort_unstable();
    v.dedup();
    v
}

/// The transporter category: `Mor(P, Q) = N_G(P, Q)`, composition by the
/// group product.
pub fn build_transporter(group: &PermutationGroup, collection: &[Subgroup]) -> FiniteCategory {
    let witnesses = collection
        .iter()
        .map(|p| collection.iter().map(|q| group.transporter(p, q)).collect())
        .collect();
    assemble(CategoryKind::Transporter, group, collection, witnesses, |_, _, w| w)
        .expect("transporter sets are closed under products")
}

/// The centric linking category: `Mor(P, Q) = K(P) \ N_G(P, Q)` with
/// `K(P) = O^p(C_G(P))`, morphisms the left cosets `K(P)·g`.
pub fn build_linking(
    group: &PermutationGroup,
    p: Prime,
    collection: &[Subgroup],
) -> Result<FiniteCategory> {
    let kernels = linking_kernels(group, p, collection)?;
    let witnesses = collection
        .iter()
        .enumerate()
        .map(|(i, a)| {
            collection
                .iter()
                .map(|b| {
                    dedup_sorted(
                        group
                            .transporter(a, b)
                            .into_iter()
                            .map(|g| group.right_coset_min(&kernels[i], g))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    assemble(CategoryKind::Linking, group, collection, witnesses, |i, _, w| {
        group.right_coset_min(&kernels[i], w)
    })
}

/// `O^p(C_G(P))` for each member, failing on non-centric members.
pub(crate) fn linking_kernels(
    group: &PermutationGroup,
    p: Prime,
    collection: &[Subgroup],
) -> Result<Vec<Subgroup>> {
    collection
        .iter()
        .map(|s| {
            if !crate::omega::is_centric(group, p, s) {
                return Err(Error::NotCentric {
                    object: group.subgroup_label(s),
                    prime: p.get(),
                });
            }
            Ok(group.op_residual(&group.centralizer(s), p))
        })
        .collect()
}

/// The orbit category: `Mor(P, Q) = N_G(P, Q) / Q`, the G-maps `G/P → G/Q`,
/// morphisms the cosets `g·Q`.
pub fn build_orbit(group: &PermutationGroup, collection: &[Subgroup]) -> FiniteCategory {
    let witnesses = collection
        .iter()
        .map(|a| {
            collection
                .iter()
                .map(|b| {
                    dedup_sorted(
                        group
                            .transporter(a, b)
                            .into_iter()
                            .map(|g| group.left_coset_min(g, b))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    assemble(CategoryKind::Orbit, group, collection, witnesses, |_, k, w| {
        group.left_coset_min(w, &collection[k])
    })
    .expect("coset composition is well defined")
}

/// The projection from a centric transporter category onto the linking
/// category on the same objects, `g ↦ K(P)·g`.
pub fn quotient_projection(
    group: &PermutationGroup,
    p: Prime,
    transporter: &Arc<FiniteCategory>,
) -> Result<CategoryFunctor> {
    if transporter.kind() != CategoryKind::Transporter {
        return Err(Error::Invalid("projection needs a transporter category".into()));
    }
    let objects = transporter
        .subgroups()
        .ok_or_else(|| Error::Invalid("transporter category without subgroups".into()))?
        .to_vec();
    let kernels = linking_kernels(group, p, &objects)?;
    let linking = Arc::new(build_linking(group, p, &objects)?);
    let morphism_map = transporter
        .morphisms()
        .iter()
        .map(|m| {
            let w = group.right_coset_min(&kernels[m.source], m.witness.unwrap());
            linking
                .find_by_witness(m.source, m.target, w)
                .expect("every transporter element has a coset")
        })
        .collect();
    CategoryFunctor::new(
        transporter.clone(),
        linking,
        (0..objects.len()).collect(),
        morphism_map,
    )
}
