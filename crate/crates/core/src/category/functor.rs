use std::sync::Arc;

use super::FiniteCategory;
use crate::error::{Error, Result};

/// A functor between finite categories, given by its action on objects and
/// morphisms.
#[derive(Clone, Debug)]
pub struct CategoryFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl CategoryFunctor {
    /// Checks that the maps have the right lengths and respect endpoints.
    /// Functoriality itself is checked separately by [`is_functor`](Self::is_functor).
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        if object_map.len() != source.object_count() || morphism_map.len() != source.morphism_count() {
            return Err(Error::Invalid("functor maps do not cover the source".into()));
        }
        if object_map.iter().any(|&o| o >= target.object_count()) {
            return Err(Error::Invalid("object image outside the target".into()));
        }
        for (f, &g) in morphism_map.iter().enumerate() {
            let m = source.morphism(f);
            let n = target
                .morphisms()
                .get(g)
                .ok_or_else(|| Error::Invalid("morphism image outside the target".into()))?;
            if n.source != object_map[m.source] || n.target != object_map[m.target] {
                return Err(Error::Invalid(format!("image of morphism {f} has the wrong endpoints")));
            }
        }
        Ok(CategoryFunctor {
            source,
            target,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        CategoryFunctor {
            object_map: (0..c.object_count()).collect(),
            morphism_map: (0..c.morphism_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// Inclusion of a full subcategory on `objects` (as produced by
    /// [`FiniteCategory::full_subcategory`]).
    pub fn inclusion(
        sub: Arc<FiniteCategory>,
        whole: Arc<FiniteCategory>,
        objects: &[usize],
    ) -> Result<Self> {
        let mut morphism_map = Vec::with_capacity(sub.morphism_count());
        for &i in objects {
            for &j in objects {
                morphism_map.extend(whole.hom(i, j).iter().map(|&f| f as usize));
            }
        }
        CategoryFunctor::new(sub, whole, objects.to_vec(), morphism_map)
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn on_object(&self, i: usize) -> usize {
        self.object_map[i]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    /// Exhaustive check that identities and composites are preserved.
    pub fn is_functor(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        let identities = (0..s.object_count())
            .all(|i| self.morphism_map[s.identity(i)] == t.identity(self.object_map[i]));
        identities
            && (0..s.morphism_count()).all(|f| {
                s.out(s.morphism(f).target).iter().all(|&g| {
                    let g = g as usize;
                    self.morphism_map[s.compose(f, g)]
                        == t.compose(self.morphism_map[f], self.morphism_map[g])
                })
            })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CategoryFunctor) -> Result<CategoryFunctor> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(Error::Invalid("functors are not composable".into()));
        }
        CategoryFunctor::new(
            self.source.clone(),
            next.target.clone(),
            self.object_map.iter().map(|&o| next.object_map[o]).collect(),
            self.morphism_map.iter().map(|&f| next.morphism_map[f]).collect(),
        )
    }
}
