use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::builders::linking_kernels;
use super::{build_orbit, CategoryFunctor, CategoryKind, FiniteCategory};
use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::group::{PermutationGroup, Subgroup};
use crate::omega::OmegaPoset;

/// Outcome of checking the hypotheses under which a functor with kernel
/// groups `K(c) = ker(Aut(c) → Aut(Ψc))` induces a mod-p equivalence.
#[derive(Clone, Debug, Serialize)]
pub struct KernelLemmaReport {
    /// (i) bijection on isomorphism classes of objects.
    pub iso_classes_bijective: bool,
    /// (i) every morphism set maps onto its image morphism set.
    pub hom_surjective: bool,
    /// (ii) every element of every `K(c)` has order prime to `p`.
    pub kernels_coprime: bool,
    /// (ii), literal reading: every `K(c)` is a p-group.
    pub kernels_p_groups: bool,
    /// (iii) `Ψ(f) = Ψ(g)` exactly when `g = k∘f` for some `k ∈ K(c)`.
    pub fibers_are_orbits: bool,
    pub kernel_orders: Vec<usize>,
}

impl KernelLemmaReport {
    pub fn holds(&self) -> bool {
        self.iso_classes_bijective && self.hom_surjective && self.kernels_coprime && self.fibers_are_orbits
    }
}

fn morphism_order(c: &FiniteCategory, f: usize) -> usize {
    let id = c.identity(c.morphism(f).source);
    let (mut k, mut g) = (1, f);
    while g != id {
        g = c.compose(g, f);
        k += 1;
    }
    k
}

pub fn verify_kernel_lemma(psi: &CategoryFunctor, p: Prime) -> KernelLemmaReport {
    let (s, t) = (psi.source(), psi.target());

    let source_classes = s.iso_classes();
    let target_classes = t.iso_classes();
    let mut target_class_of = vec![0; t.object_count()];
    for (k, class) in target_classes.iter().enumerate() {
        for &i in class {
            target_class_of[i] = k;
        }
    }
    let images: BTreeSet<usize> = source_classes
        .iter()
        .map(|class| target_class_of[psi.on_object(class[0])])
        .collect();
    let iso_classes_bijective =
        images.len() == source_classes.len() && images.len() == target_classes.len();

    let mut hom_surjective = true;
    for c in 0..s.object_count() {
        for d in 0..s.object_count() {
            let hit: BTreeSet<usize> = s.hom(c, d).iter().map(|&f| psi.on_morphism(f as usize)).collect();
            if hit.len() != t.hom(psi.on_object(c), psi.on_object(d)).len() {
                hom_surjective = false;
            }
        }
    }

    let kernels: Vec<Vec<usize>> = (0..s.object_count())
        .map(|c| {
            let id = t.identity(psi.on_object(c));
            s.automorphisms(c)
                .into_iter()
                .filter(|&a| psi.on_morphism(a) == id)
                .collect()
        })
        .collect();
    let kernels_coprime = kernels
        .iter()
        .flatten()
        .all(|&k| !p.divides(morphism_order(s, k)));
    let kernels_p_groups = kernels.iter().all(|k| p.is_power(k.len()));

    let mut fibers_are_orbits = true;
    'pairs: for c in 0..s.object_count() {
        for d in 0..s.object_count() {
            let mut fibers: HashMap<usize, BTreeSet<usize>> = HashMap::new();
            for &f in s.hom(c, d) {
                fibers.entry(psi.on_morphism(f as usize)).or_default().insert(f as usize);
            }
            for &f in s.hom(c, d) {
                let orbit: BTreeSet<usize> =
                    kernels[c].iter().map(|&k| s.compose(k, f as usize)).collect();
                if orbit != fibers[&psi.on_morphism(f as usize)] {
                    fibers_are_orbits = false;
                    break 'pairs;
                }
            }
        }
    }

    KernelLemmaReport {
        iso_classes_bijective,
        hom_surjective,
        kernels_coprime,
        kernels_p_groups,
        fibers_are_orbits,
        kernel_orders: kernels.iter().map(Vec::len).collect(),
    }
}

/// For every composable pair of linking morphisms `K(P)g`, `K(Q)h` and every
/// `σ ∈ K(P)`, `τ ∈ K(Q)`: `K(P)·σgτh = K(P)·gh`, the class of the composite.
pub fn linking_well_defined(group: &PermutationGroup, p: Prime, c: &FiniteCategory) -> Result<bool> {
    if c.kind() != CategoryKind::Linking {
        return Err(Error::Invalid("not a linking category".into()));
    }
    let objects = c.subgroups().expect("linking categories carry subgroups");
    let kernels = linking_kernels(group, p, objects)?;
    for f in 0..c.morphism_count() {
        let mf = c.morphism(f);
        let (i, j) = (mf.source, mf.target);
        let g = mf.witness.unwrap();
        for &h in c.out(j) {
            let h = h as usize;
            let expected = c.morphism(c.compose(f, h)).witness.unwrap();
            let hw = c.morphism(h).witness.unwrap();
            for sigma in kernels[i].iter() {
                for tau in kernels[j].iter() {
                    let w = group.mul(group.mul(sigma, g), group.mul(tau, hw));
                    if group.right_coset_min(&kernels[i], w) != expected {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// For every composable pair of orbit morphisms `gQ`, `hR` and every
/// `q ∈ Q`, `r ∈ R`: `(gq)(hr)R = ghR`, the class of the composite.
pub fn orbit_well_defined(group: &PermutationGroup, c: &FiniteCategory) -> Result<bool> {
    if c.kind() != CategoryKind::Orbit {
        return Err(Error::Invalid("not an orbit category".into()));
    }
    let objects = c.subgroups().expect("orbit categories carry subgroups");
    for f in 0..c.morphism_count() {
        let mf = c.morphism(f);
        let j = mf.target;
        let g = mf.witness.unwrap();
        for &h in c.out(j) {
            let h = h as usize;
            let k = c.morphism(h).target;
            let expected = c.morphism(c.compose(f, h)).witness.unwrap();
            let hw = c.morphism(h).witness.unwrap();
            for q in objects[j].iter() {
                for r in objects[k].iter() {
                    let w = group.mul(group.mul(g, q), group.mul(hw, r));
                    if group.left_coset_min(w, &objects[k]) != expected {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of comparing `Mor_{O_p}(P, Q)` with `Mor_{O_Ω}(P°, Q)`.
#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    /// Number of `(P, Q)` pairs compared.
    pub pairs: usize,
    /// `P ↦ P°`, `gQ ↦ gQ°` is a functor `O_p → O_Ω`.
    pub closure_is_functor: bool,
    /// Precomposition with `P → P°` is a bijection for every pair.
    pub bijective: bool,
    pub natural_in_source: bool,
    pub natural_in_target: bool,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.closure_is_functor && self.bijective && self.natural_in_source && self.natural_in_target
    }
}

/// Checks that `(−)°: O_p(G) → O_Ω(G)` is left adjoint to the inclusion, on
/// every subgroup `P` of the fixed Sylow subgroup and every `Q ∈ Ω`. The
/// unit is the projection `P → P°` (witness 1) and the bijection is
/// `φ ↦ (P → P°) then φ`.
pub fn circ_adjunction_check(group: &PermutationGroup, omega: &OmegaPoset) -> Result<AdjunctionReport> {
    let tests = group.subgroups_of(omega.sylow());
    let all: Vec<Subgroup> = tests
        .iter()
        .chain(omega.members())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<&Subgroup, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let op = std::sync::Arc::new(build_orbit(group, &all));
    let oo = std::sync::Arc::new(build_orbit(group, omega.members()));

    // O_Ω → O_p
    let incl_obj: Vec<usize> = omega.members().iter().map(|s| index[s]).collect();
    let incl = |f: usize| {
        let m = oo.morphism(f);
        op.find_by_witness(incl_obj[m.source], incl_obj[m.target], m.witness.unwrap())
            .expect("same coset in the larger orbit category")
    };

    // (−)°: O_p → O_Ω
    let closure_obj: Vec<usize> = all
        .iter()
        .map(|s| {
            let c = omega.circ_closure(s)?;
            Ok(omega.index_of(&c).expect("closure lies in Ω"))
        })
        .collect::<Result<_>>()?;
    let mut closure_mor = Vec::with_capacity(op.morphism_count());
    for m in op.morphisms() {
        let (a, b) = (closure_obj[m.source], closure_obj[m.target]);
        let w = group.left_coset_min(m.witness.unwrap(), &omega.members()[b]);
        closure_mor.push(oo.find_by_witness(a, b, w).ok_or_else(|| {
            Error::Invalid("a transporter element does not carry P° into Q°".into())
        })?);
    }
    let closure = CategoryFunctor::new(op.clone(), oo.clone(), closure_obj.clone(), closure_mor)?;
    let closure_is_functor = closure.is_functor();

    let unit = |x: usize| {
        op.find_by_witness(x, incl_obj[closure_obj[x]], group.identity())
            .expect("P ≤ P° gives the unit")
    };
    let y = |x: usize, phi: usize| op.compose(unit(x), incl(phi));

    let mut pairs = 0;
    let mut bijective = true;
    let mut natural_in_source = true;
    let mut natural_in_target = true;
    let test_idx: Vec<usize> = tests.iter().map(|s| index[s]).collect();
    for &x in &test_idx {
        let xc = closure_obj[x];
        for q in 0..oo.object_count() {
            pairs += 1;
            let domain = oo.hom(xc, q);
            let image: BTreeSet<usize> = domain.iter().map(|&phi| y(x, phi as usize)).collect();
            if image.len() != domain.len() || image.len() != op.hom(x, incl_obj[q]).len() {
                bijective = false;
            }
            for &phi in domain {
                let phi = phi as usize;
                for &beta in oo.out(q) {
                    let beta = beta as usize;
                    if y(x, oo.compose(phi, beta)) != op.compose(y(x, phi), incl(beta)) {
                        natural_in_target = false;
                    }
                }
                for &x2 in &test_idx {
                    for &alpha in op.hom(x2, x) {
                        let alpha = alpha as usize;
                        let left = y(x2, oo.compose(closure.on_morphism(alpha), phi));
                        if left != op.compose(alpha, y(x, phi)) {
                            natural_in_source = false;
                        }
                    }
                }
            }
        }
    }

    Ok(AdjunctionReport {
        pairs,
        closure_is_functor,
        bijective,
        natural_in_source,
        natural_in_target,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{build_linking, build_transporter, quotient_projection};
    use crate::category::tests::chain3;
    use crate::group::Permutation;

    fn group(degree: usize, gens: &[&[&[usize]]]) -> PermutationGroup {
        PermutationGroup::enumerate(
            degree,
            gens.iter()
                .map(|cs| {
                    Permutation::from_cycles(degree, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
                        .unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn projection_satisfies_kernel_hypotheses() {
        let g = group(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        let s = g.sylow_subgroup(p(2));
        let t = Arc::new(build_transporter(&g, &g.conjugates(&s)));
        let proj = quotient_projection(&g, p(2), &t).unwrap();
        let report = verify_kernel_lemma(&proj, p(2));
        assert!(report.holds());
        assert!(report.kernel_orders.iter().all(|&k| k == 1));

        let h = group(6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]]]);
        let s = h.sylow_subgroup(p(2));
        let t = Arc::new(build_transporter(&h, &h.conjugates(&s)));
        let proj = quotient_projection(&h, p(2), &t).unwrap();
        let report = verify_kernel_lemma(&proj, p(2));
        assert!(report.holds());
        assert!(!report.kernels_p_groups);
        assert!(report.kernel_orders.iter().all(|&k| k == 3));
    }

    #[test]
    fn identity_functor_has_trivial_kernels() {
        let c = Arc::new(chain3());
        let report = verify_kernel_lemma(&CategoryFunctor::identity(c), p(2));
        assert!(report.holds());
        assert!(report.kernels_p_groups);
    }

    #[test]
    fn collapsing_objects_breaks_condition_one() {
        let c = Arc::new(chain3());
        let point = Arc::new(c.full_subcategory(&[0]));
        let f = CategoryFunctor::new(c.clone(), point, vec![0; 3], vec![0; c.morphism_count()]).unwrap();
        let report = verify_kernel_lemma(&f, p(2));
        assert!(!report.iso_classes_bijective);
        assert!(!report.holds());
    }

    #[test]
    fn coset_compositions_are_well_defined() {
        let h = group(6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]]]);
        let s = h.sylow_subgroup(p(2));
        let l = build_linking(&h, p(2), &h.conjugates(&s)).unwrap();
        assert!(linking_well_defined(&h, p(2), &l).unwrap());
        let subs = h.subgroups_of(&h.whole());
        let o = build_orbit(&h, &subs);
        assert!(orbit_well_defined(&h, &o).unwrap());
        assert!(orbit_well_defined(&h, &l).is_err());
    }

    #[test]
    fn adjunction_on_small_groups() {
        let s4 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]);
        let s3 = group(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        for (g, prime) in [(&s4, 2), (&s4, 3), (&s3, 2), (&s3, 3)] {
            let omega = OmegaPoset::build(g, p(prime));
            let report = circ_adjunction_check(g, &omega).unwrap();
            assert!(report.holds(), "{report:?}");
            assert!(report.pairs > 0);
        }
    }
}
