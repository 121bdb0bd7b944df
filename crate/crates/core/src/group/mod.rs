//! Finite permutation groups with every element enumerated.
//!
//! Elements are referred to by [`Elem`], an index into the group's element
//! list. The list is sorted lexicographically by image arrays, so the identity
//! is always `Elem(0)` and "the minimal element of a coset" is well defined
//! and reproducible.
//!
//! Conjugation acts on the right: `x^g = g⁻¹ x g`, and `P^g` is the image of a
//! subgroup. With the left-to-right product this gives `(P^g)^h = P^{gh}`.

mod perm;
mod subgroup;
mod sylow;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

pub use perm::Permutation;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Index of an element in [`PermutationGroup::elements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    table: Option<Vec<u32>>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermutationGroup {
    /// Enumerates the group generated by `generators` on `degree` points,
    /// refusing to grow past [`DEFAULT_ORDER_BOUND`] elements.
    pub fn enumerate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::enumerate_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn enumerate_bounded(
        degree: usize,
        generators: Vec<Permutation>,
        bound: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }

        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for s in &generators {
                let y = x.then(s);
                if !seen.contains(&y) {
                    if seen.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), Elem(i as u32)))
            .collect();
        let n = elements.len();

        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.then(b)].0;
                }
            }
            t
        });
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();

        let mut group = PermutationGroup {
            degree,
            generators,
            elements,
            index,
            table,
            inverses,
            orders: Vec::new(),
        };
        group.orders = (0..n as u32)
            .map(|i| {
                let x = Elem(i);
                let mut k = 1;
                let mut y = x;
                while y != Elem(0) {
                    y = group.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        Ok(group)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_elems(&self) -> Vec<Elem> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn elems(&self) -> impl ExactSizeIterator<Item = Elem> {
        (0..self.elements.len() as u32).map(Elem)
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn permutation(&self, x: Elem) -> &Permutation {
        &self.elements[x.index()]
    }

    pub fn find(&self, perm: &Permutation) -> Option<Elem> {
        self.index.get(perm).copied()
    }

    /// The product "`a` then `b`".
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => Elem(t[a.index() * self.order() + b.index()]),
            None => self.index[&self.elements[a.index()].then(&self.elements[b.index()])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.index()]
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let mut acc = self.identity();
        for _ in 0..k % self.orders[a.index()] as u64 {
            acc = self.mul(acc, a);
        }
        acc
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.orders[a.index()] as usize
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_elems();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}
