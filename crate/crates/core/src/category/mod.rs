//! Explicit finite categories with materialized morphism sets and a total
//! composition table.
//!
//! Composition is written in diagrammatic order: `compose(f, g)` is "`f`
//! then `g`" and requires `target(f) == source(g)`. For the group-based
//! categories this matches the left-to-right group product, so the witness
//! of `compose(f, g)` is (a representative of) `witness(f) · witness(g)`.

mod builders;
mod checks;
mod functor;
mod text;

use std::fmt;

pub use builders::{build_linking, build_orbit, build_transporter, quotient_projection};
pub use checks::{
    circ_adjunction_check, linking_well_defined, orbit_well_defined, verify_kernel_lemma,
    AdjunctionReport, KernelLemmaReport,
};
pub use functor::CategoryFunctor;
pub use text::{parse_category, write_category};

use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};

/// Which quotient of the transporter sets the morphisms live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoryKind {
    /// No group witnesses (e.g. read from text).
    Plain,
    /// `Mor(P, Q) = N_G(P, Q)`.
    Transporter,
    /// `Mor(P, Q) = O^p(C_G(P)) \ N_G(P, Q)`, left cosets `K(P)·g`.
    Linking,
    /// `Mor(P, Q) = N_G(P, Q) / Q`, cosets `g·Q`.
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    /// Canonical (minimal) representative of the coset, when there is a group.
    pub witness: Option<Elem>,
}

#[derive(Clone)]
pub struct FiniteCategory {
    kind: CategoryKind,
    labels: Vec<String>,
    subgroups: Option<Vec<Subgroup>>,
    morphisms: Vec<Morphism>,
    hom: Vec<Vec<Vec<u32>>>,
    out: Vec<Vec<u32>>,
    out_pos: Vec<u32>,
    identities: Vec<u32>,
    table_offset: Vec<usize>,
    table: Vec<u32>,
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("kind", &self.kind)
            .field("objects", &self.labels)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl FiniteCategory {
    /// Assembles a category from its morphism list. `compose(f, g)` is called
    /// once for every composable pair and must return a morphism from
    /// `source(f)` to `target(g)`.
    pub fn new(
        kind: CategoryKind,
        labels: Vec<String>,
        subgroups: Option<Vec<Subgroup>>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if identities.len() != n {
            return Err(Error::Invalid(format!(
                "{} identities for {n} objects",
                identities.len()
            )));
        }
        if let Some(s) = &subgroups {
            if s.len() != n {
                return Err(Error::Invalid("one subgroup per object expected".into()));
            }
        }
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut out = vec![Vec::new(); n];
        for (id, m) in morphisms.iter().enumerate() {
            if m.source >= n || m.target >= n {
                return Err(Error::Invalid(format!("morphism {id} has an unknown endpoint")));
            }
            hom[m.source][m.target].push(id as u32);
        }
        let mut out_pos = vec![0u32; morphisms.len()];
        for (i, row) in hom.iter().enumerate() {
            for list in row {
                for &f in list {
                    out_pos[f as usize] = out[i].len() as u32;
                    out[i].push(f);
                }
            }
        }
        for (i, &e) in identities.iter().enumerate() {
            let m = morphisms.get(e).ok_or_else(|| Error::Invalid("unknown identity".into()))?;
            if m.source != i || m.target != i {
                return Err(Error::Invalid(format!("identity of object {i} is not an endomorphism")));
            }
        }

        let mut table_offset = Vec::with_capacity(morphisms.len() + 1);
        let mut table = Vec::new();
        for (f, m) in morphisms.iter().enumerate() {
            table_offset.push(table.len());
            for &g in &out[m.target] {
                let h = compose(f, g as usize)?;
                let hm = morphisms
                    .get(h)
                    .ok_or_else(|| Error::Invalid(format!("composite of {f} and {g} is unknown")))?;
                let gm = &morphisms[g as usize];
                if hm.source != m.source || hm.target != gm.target {
                    return Err(Error::Invalid(format!(
                        "composite of {f} and {g} has the wrong endpoints"
                    )));
                }
                table.push(h as u32);
            }
        }
        table_offset.push(table.len());

        Ok(FiniteCategory {
            kind,
            labels,
            subgroups,
            morphisms,
            hom,
            out,
            out_pos,
            identities: identities.into_iter().map(|e| e as u32).collect(),
            table_offset,
            table,
        })
    }

    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The subgroup an object stands for, in group-based categories.
    pub fn subgroup(&self, i: usize) -> Option<&Subgroup> {
        self.subgroups.as_ref().map(|s| &s[i])
    }

    pub fn subgroups(&self) -> Option<&[Subgroup]> {
        self.subgroups.as_deref()
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn hom(&self, i: usize, j: usize) -> &[u32] {
        &self.hom[i][j]
    }

    /// All morphisms with source `i`.
    pub fn out(&self, i: usize) -> &[u32] {
        &self.out[i]
    }

    pub fn identity(&self, i: usize) -> usize {
        self.identities[i] as usize
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] as usize == f
    }

    /// `f` then `g`.
    #[inline]
    pub fn compose(&self, f: usize, g: usize) -> usize {
        debug_assert_eq!(self.morphisms[f].target, self.morphisms[g].source);
        self.table[self.table_offset[f] + self.out_pos[g] as usize] as usize
    }

    /// `f` then `g`, or `None` if they are not composable.
    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        (self.morphisms[f].target == self.morphisms[g].source).then(|| self.compose(f, g))
    }

    /// The morphism `source → target` whose witness is `w`, for categories
    /// built from a group. Builders list each hom-set by increasing witness.
    pub fn find_by_witness(&self, source: usize, target: usize, w: Elem) -> Option<usize> {
        let list = &self.hom[source][target];
        list.binary_search_by_key(&Some(w), |&f| self.morphisms[f as usize].witness)
            .ok()
            .map(|k| list[k] as usize)
    }

    /// Number of `(f, g)` pairs with `target(f) = source(g)`.
    pub fn composable_pairs(&self) -> usize {
        self.table.len()
    }

    /// Exhaustive check of the identity and associativity laws.
    pub fn check_laws(&self) -> LawReport {
        let mut identity_ok = true;
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(self.identity(m.source), f) != f
                || self.compose(f, self.identity(m.target)) != f
            {
                identity_ok = false;
                break;
            }
        }
        let mut associative = true;
        'outer: for f in 0..self.morphisms.len() {
            let b = self.morphisms[f].target;
            for &g in &self.out[b] {
                let fg = self.compose(f, g as usize);
                let c = self.morphisms[g as usize].target;
                for &h in &self.out[c] {
                    let left = self.compose(fg, h as usize);
                    let right = self.compose(f, self.compose(g as usize, h as usize));
                    if left != right {
                        associative = false;
                        break 'outer;
                    }
                }
            }
        }
        LawReport {
            identity: identity_ok,
            associative,
        }
    }

    /// Whether `f` has a two-sided inverse.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = self.morphisms[f];
        self.hom[m.target][m.source].iter().map(|&g| g as usize).find(|&g| {
            self.compose(f, g) == self.identity(m.source)
                && self.compose(g, f) == self.identity(m.target)
        })
    }

    pub fn isomorphic(&self, i: usize, j: usize) -> bool {
        self.hom[i][j].iter().any(|&f| self.inverse(f as usize).is_some())
    }

    /// Isomorphism classes of objects, each sorted, ordered by least member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let n = self.object_count();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut class = vec![i];
            class_of[i] = c;
            for j in i + 1..n {
                if class_of[j] == usize::MAX && self.isomorphic(i, j) {
                    class_of[j] = c;
                    class.push(j);
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Automorphisms of object `i`.
    pub fn automorphisms(&self, i: usize) -> Vec<usize> {
        self.hom[i][i]
            .iter()
            .map(|&f| f as usize)
            .filter(|&f| self.inverse(f).is_some())
            .collect()
    }

    /// The full subcategory on `objects` (in the given order).
    pub fn full_subcategory(&self, objects: &[usize]) -> FiniteCategory {
        let mut new_index = vec![usize::MAX; self.object_count()];
        for (k, &i) in objects.iter().enumerate() {
            new_index[i] = k;
        }
        let mut old_of_new = Vec::new();
        let mut new_of_old = vec![usize::MAX; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for &i in objects {
            for &j in objects {
                for &f in &self.hom[i][j] {
                    new_of_old[f as usize] = morphisms.len();
                    old_of_new.push(f as usize);
                    let m = self.morphisms[f as usize];
                    morphisms.push(Morphism {
                        source: new_index[m.source],
                        target: new_index[m.target],
                        witness: m.witness,
                    });
                }
            }
        }
        let identities = objects.iter().map(|&i| new_of_old[self.identity(i)]).collect();
        FiniteCategory::new(
            self.kind,
            objects.iter().map(|&i| self.labels[i].clone()).collect(),
            self.subgroups
                .as_ref()
                .map(|s| objects.iter().map(|&i| s[i].clone()).collect()),
            morphisms,
            identities,
            |f, g| Ok(new_of_old[self.compose(old_of_new[f], old_of_new[g])]),
        )
        .expect("a full subcategory inherits a valid composition")
    }

    /// One object per isomorphism class (the least index), with its inclusion.
    pub fn skeleton(self: &std::sync::Arc<Self>) -> (std::sync::Arc<FiniteCategory>, CategoryFunctor) {
        let reps: Vec<usize> = self.iso_classes().iter().map(|c| c[0]).collect();
        let sub = std::sync::Arc::new(self.full_subcategory(&reps));
        let inclusion = CategoryFunctor::inclusion(sub.clone(), self.clone(), &reps)
            .expect("inclusion of a full subcategory");
        (sub, inclusion)
    }

    /// Whether object `i` is initial (exactly one morphism to every object).
    pub fn is_initial(&self, i: usize) -> bool {
        (0..self.object_count()).all(|j| self.hom[i][j].len() == 1)
    }

    pub fn is_terminal(&self, j: usize) -> bool {
        (0..self.object_count()).all(|i| self.hom[i][j].len() == 1)
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let n = self.object_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for m in &self.morphisms {
            let (a, b) = (find(&mut parent, m.source), find(&mut parent, m.target));
            if a != b {
                parent[a] = b;
            }
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LawReport {
    pub identity: bool,
    pub associative: bool,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.identity && self.associative
    }
}

/// The one-object category whose morphisms are the elements of a group.
pub fn one_object_category(group: &crate::group::PermutationGroup) -> FiniteCategory {
    let morphisms = group
        .elems()
        .map(|g| Morphism {
            source: 0,
            target: 0,
            witness: Some(g),
        })
        .collect();
    FiniteCategory::new(
        CategoryKind::Transporter,
        vec!["*".into()],
        Some(vec![group.trivial_subgroup()]),
        morphisms,
        vec![group.identity().index()],
        |f, g| Ok(group.mul(Elem(f as u32), Elem(g as u32)).index()),
    )
    .expect("group multiplication is a composition law")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The poset 0 < 1 < 2 as a category.
    pub(crate) fn chain3() -> FiniteCategory {
        let mut morphisms = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                morphisms.push(Morphism {
                    source: i,
                    target: j,
                    witness: None,
                });
            }
        }
        let find = |ms: &[Morphism], i: usize, j: usize| {
            ms.iter().position(|m| m.source == i && m.target == j).unwrap()
        };
        let ids = (0..3).map(|i| find(&morphisms, i, i)).collect();
        let ms = morphisms.clone();
        FiniteCategory::new(
            CategoryKind::Plain,
            vec!["a".into(), "b".into(), "c".into()],
            None,
            morphisms,
            ids,
            |f, g| Ok(find(&ms, ms[f].source, ms[g].target)),
        )
        .unwrap()
    }

    #[test]
    fn poset_category() {
        let c = chain3();
        assert_eq!(c.morphism_count(), 6);
        assert!(c.check_laws().holds());
        assert!(c.is_initial(0));
        assert!(c.is_terminal(2));
        assert_eq!(c.iso_classes().len(), 3);
        assert_eq!(c.components(), 1);
        assert_eq!(c.composable_pairs(), 3 + 2 * 2 + 3);
    }

    #[test]
    fn rejects_bad_composition() {
        let morphisms = vec![
            Morphism { source: 0, target: 0, witness: None },
            Morphism { source: 0, target: 1, witness: None },
            Morphism { source: 1, target: 1, witness: None },
        ];
        let bad = FiniteCategory::new(
            CategoryKind::Plain,
            vec!["a".into(), "b".into()],
            None,
            morphisms,
            vec![0, 2],
            |_, _| Ok(0),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn group_as_category() {
        let g = crate::group::PermutationGroup::enumerate(
            3,
            vec![
                crate::Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
                crate::Permutation::from_cycles(3, &[vec![1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        let c = one_object_category(&g);
        assert_eq!(c.morphism_count(), 6);
        assert!(c.check_laws().holds());
        assert_eq!(c.automorphisms(0).len(), 6);
    }
}
