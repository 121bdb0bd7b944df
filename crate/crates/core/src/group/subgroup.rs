use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use super::{Elem, Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::fp::Prime;

/// A subgroup stored as the sorted set of its element ids, with a bitmask for
/// constant-time membership. Equality, hashing and ordering only look at the
/// members; ordering is by order first, then lexicographically on ids.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<u64>,
}

impl Subgroup {
    /// Trusted constructor: `members` must be a subgroup of a group of order
    /// `universe`.
    pub(crate) fn from_sorted(mut members: Vec<Elem>, universe: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![0u64; universe.div_ceil(64)];
        for e in &members {
            mask[e.index() / 64] |= 1 << (e.index() % 64);
        }
        Subgroup { members, mask }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask[e.index() / 64] >> (e.index() % 64) & 1 == 1
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.iter().all(|e| other.contains(e))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.iter().filter(|&e| other.contains(e)).collect();
        Subgroup::from_sorted(members, self.mask.len() * 64)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PermutationGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity()], self.order())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elems().collect(), self.order())
    }

    /// Validates that `members` is closed under products and inverses.
    pub fn subgroup_from_members(&self, members: Vec<Elem>) -> Result<Subgroup> {
        if members.iter().any(|e| e.index() >= self.order()) {
            return Err(Error::Invalid("element id out of range".into()));
        }
        let s = Subgroup::from_sorted(members, self.order());
        let closed = s.contains(self.identity())
            && s.iter().all(|a| {
                s.contains(self.inv(a)) && s.iter().all(|b| s.contains(self.mul(a, b)))
            });
        if !closed {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens
            .iter()
            .copied()
            .filter(|&g| g != self.identity())
            .collect();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![self.identity()];
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if !inside[y.index()] {
                    inside[y.index()] = true;
                    members.push(y);
                }
            }
        }
        Subgroup::from_sorted(members, self.order())
    }

    pub fn generate_from_perms(&self, perms: &[Permutation]) -> Result<Subgroup> {
        let gens = perms
            .iter()
            .map(|p| {
                self.find(p)
                    .ok_or_else(|| Error::Invalid(format!("{p} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&gens))
    }

    /// The subgroup generated by `h` together with `extra`.
    pub fn join(&self, h: &Subgroup, extra: &[Elem]) -> Subgroup {
        let mut gens = self.small_generating_set(h);
        gens.extend_from_slice(extra);
        self.generate(&gens)
    }

    /// A generating set chosen greedily in canonical element order.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for x in h.iter() {
            if span.order() == h.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// Generators in cycle notation, e.g. `<(1 2)(3 4), (1 3)(2 4)>`; `1` for
    /// the trivial subgroup.
    pub fn subgroup_label(&self, h: &Subgroup) -> String {
        if h.is_trivial() {
            return "1".into();
        }
        let gens: Vec<String> = self
            .small_generating_set(h)
            .into_iter()
            .map(|g| self.permutation(g).to_string())
            .collect();
        format!("<{}>", gens.join(", "))
    }

    pub fn is_p_subgroup(&self, h: &Subgroup, p: Prime) -> bool {
        p.is_power(h.order())
    }

    /// `P^g = { g⁻¹ x g : x ∈ P }`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        Subgroup::from_sorted(h.iter().map(|x| self.conj(x, g)).collect(), self.order())
    }

    /// `C_G(P)`: elements commuting with every element of `h`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(h);
        let members = self
            .elems()
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup::from_sorted(members, self.order())
    }

    /// `C_K(P)` for a subgroup `k`.
    pub fn centralizer_in(&self, k: &Subgroup, h: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(h);
        let members = k
            .iter()
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        Subgroup::from_sorted(members, self.order())
    }

    /// `Z(P) = C_P(P)`.
    pub fn center(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    /// `N_G(P) = { g : P^g = P }`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(self.transporter(h, h), self.order())
    }

    /// `N_G(P, Q) = { g : P^g ≤ Q }`, in canonical order. May be empty.
    pub fn transporter(&self, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
        if p.order() > q.order() || !q.order().is_multiple_of(p.order()) {
            return Vec::new();
        }
        let gens = self.small_generating_set(p);
        self.elems()
            .filter(|&g| gens.iter().all(|&x| q.contains(self.conj(x, g))))
            .collect()
    }

    pub fn is_normal_in(&self, n: &Subgroup, h: &Subgroup) -> bool {
        self.small_generating_set(h)
            .iter()
            .all(|&g| self.conjugate_subgroup(n, g) == *n)
    }

    /// `O^p(H)`: generated by the elements of `h` whose order is prime to `p`.
    pub fn op_residual(&self, h: &Subgroup, p: Prime) -> Subgroup {
        let gens: Vec<Elem> = h
            .iter()
            .filter(|&x| !p.divides(self.elem_order(x)))
            .collect();
        self.generate(&gens)
    }

    /// Every subgroup of `h`, sorted. Found by adjoining one element at a time
    /// starting from the trivial subgroup.
    pub fn subgroups_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::new();
        let mut frontier = vec![self.trivial_subgroup()];
        found.insert(self.trivial_subgroup());
        while let Some(k) = frontier.pop() {
            for x in h.iter() {
                if k.contains(x) {
                    continue;
                }
                let bigger = self.join(&k, &[x]);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Partitions `subgroups` into G-conjugacy classes. Classes are listed in
    /// order of their first member; indices within a class are increasing.
    pub fn conjugacy_classes(&self, subgroups: &[Subgroup]) -> Vec<Vec<usize>> {
        let position: HashMap<&Subgroup, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, s) in subgroups.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in self.elems() {
                let c = self.conjugate_subgroup(s, g);
                if let Some(&j) = position.get(&c) {
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        class.push(j);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// All distinct conjugates of `h`, sorted.
    pub fn conjugates(&self, h: &Subgroup) -> Vec<Subgroup> {
        let set: BTreeSet<Subgroup> = self
            .elems()
            .map(|g| self.conjugate_subgroup(h, g))
            .collect();
        set.into_iter().collect()
    }

    /// Whether `a` and `b` are conjugate in G, with a witness `g`, `a^g = b`.
    pub fn conjugating_element(&self, a: &Subgroup, b: &Subgroup) -> Option<Elem> {
        if a.order() != b.order() {
            return None;
        }
        self.elems().find(|&g| self.conjugate_subgroup(a, g) == *b)
    }

    /// Canonical representative of the left coset `x K`: its minimal element.
    pub fn left_coset_min(&self, x: Elem, k: &Subgroup) -> Elem {
        k.iter().map(|y| self.mul(x, y)).min().expect("non-empty subgroup")
    }

    /// Canonical representative of the right coset `K x`.
    pub fn right_coset_min(&self, k: &Subgroup, x: Elem) -> Elem {
        k.iter().map(|y| self.mul(y, x)).min().expect("non-empty subgroup")
    }

    /// The quotient `N/Q` for `q` normal in `n`, realised as the permutation
    /// group of its right regular action on the cosets `Qx`.
    pub fn quotient(&self, n: &Subgroup, q: &Subgroup) -> Result<Quotient> {
        if !q.is_subgroup_of(n) || !self.is_normal_in(q, n) {
            return Err(Error::Invalid("quotient by a non-normal subgroup".into()));
        }
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps: Vec<Elem> = Vec::new();
        for x in n.iter() {
            if coset_of[x.index()] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for y in q.iter() {
                coset_of[self.mul(y, x).index()] = id;
            }
        }
        let degree = reps.len();
        let gens = self
            .small_generating_set(n)
            .into_iter()
            .map(|s| {
                Permutation::from_images(
                    reps.iter()
                        .map(|&r| coset_of[self.mul(r, s).index()] as usize)
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let group = PermutationGroup::enumerate(degree, gens)?;
        let identity_coset = coset_of[self.identity().index()] as usize;
        let lift = group
            .elems()
            .map(|e| {
                let target = group.permutation(e).image(identity_coset);
                self.right_coset_min(q, reps[target])
            })
            .collect();
        Ok(Quotient { group, lift })
    }
}

/// A quotient group together with a canonical lift of each of its elements.
#[derive(Debug)]
pub struct Quotient {
    pub group: PermutationGroup,
    lift: Vec<Elem>,
}

impl Quotient {
    /// The minimal element of the coset represented by `e`.
    pub fn lift(&self, e: Elem) -> Elem {
        self.lift[e.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let cycle = Permutation::from_cycles(n, &[(1..=n).collect()]).unwrap();
        let swap = Permutation::from_cycles(n, &[vec![1, 2]]).unwrap();
        PermutationGroup::enumerate(n, vec![cycle, swap]).unwrap()
    }

    fn el(g: &PermutationGroup, cycles: &[&[usize]]) -> Elem {
        let p = Permutation::from_cycles(
            g.degree(),
            &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap();
        g.find(&p).unwrap()
    }

    #[test]
    fn conjugating_a_transposition() {
        let g = sym(3);
        let p = g.generate(&[el(&g, &[&[1, 2]])]);
        let q = g.conjugate_subgroup(&p, el(&g, &[&[1, 2, 3]]));
        assert_eq!(q, g.generate(&[el(&g, &[&[2, 3]])]));
        assert_eq!(g.conjugate_subgroup(&p, g.identity()), p);
        let a3 = g.generate(&[el(&g, &[&[1, 2, 3]])]);
        for x in g.elems() {
            assert_eq!(g.conjugate_subgroup(&a3, x), a3);
        }
    }

    #[test]
    fn centralizers_and_normalizers() {
        let g = sym(3);
        let p = g.generate(&[el(&g, &[&[1, 2]])]);
        assert_eq!(g.centralizer(&p), p);
        assert_eq!(g.normalizer(&p), p);

        let s4 = sym(4);
        let v4 = s4.generate(&[el(&s4, &[&[1, 2], &[3, 4]]), el(&s4, &[&[1, 3], &[2, 4]])]);
        assert_eq!(v4.order(), 4);
        assert_eq!(s4.centralizer(&v4), v4);
        assert_eq!(s4.normalizer(&v4), s4.whole());
        assert_eq!(s4.center(&v4), v4);
    }

    #[test]
    fn abelian_centralizers_are_everything() {
        let c6 = PermutationGroup::enumerate(
            6,
            vec![Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap()],
        )
        .unwrap();
        for h in c6.subgroups_of(&c6.whole()) {
            assert_eq!(c6.centralizer(&h), c6.whole());
        }
    }

    #[test]
    fn transporter_sets() {
        let g = sym(3);
        let p = g.generate(&[el(&g, &[&[1, 2]])]);
        let q = g.generate(&[el(&g, &[&[1, 3]])]);
        let t = g.transporter(&p, &q);
        assert_eq!(t.len(), 2);
        for &x in &t {
            assert_eq!(g.conjugate_subgroup(&p, x), q);
        }
        assert_eq!(g.transporter(&g.whole(), &g.whole()).len(), 6);
        assert!(g.transporter(&p, &g.trivial_subgroup()).is_empty());
    }

    #[test]
    fn op_residuals() {
        let g = sym(3);
        let p2 = Prime::new(2).unwrap();
        let a3 = g.op_residual(&g.whole(), p2);
        assert_eq!(a3.order(), 3);
        assert!(g.is_normal_in(&a3, &g.whole()));
        let s = g.generate(&[el(&g, &[&[1, 2]])]);
        assert!(g.op_residual(&s, p2).is_trivial());

        let c6 = PermutationGroup::enumerate(
            6,
            vec![Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap()],
        )
        .unwrap();
        assert_eq!(c6.op_residual(&c6.whole(), p2).order(), 3);
    }

    #[test]
    fn subgroup_enumeration_counts() {
        // S_3 has 6 subgroups, S_4 has 30, D_8 has 10
        assert_eq!(sym(3).subgroups_of(&sym(3).whole()).len(), 6);
        let s4 = sym(4);
        assert_eq!(s4.subgroups_of(&s4.whole()).len(), 30);
        let d8 = PermutationGroup::enumerate(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(4, &[vec![1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(d8.subgroups_of(&d8.whole()).len(), 10);
    }

    #[test]
    fn validation_rejects_non_subgroups() {
        let g = sym(3);
        let x = el(&g, &[&[1, 2]]);
        let y = el(&g, &[&[1, 3]]);
        assert!(g.subgroup_from_members(vec![g.identity(), x, y]).is_err());
        assert!(g.subgroup_from_members(vec![g.identity(), x]).is_ok());
    }

    #[test]
    fn quotient_by_normal_subgroup() {
        let s4 = sym(4);
        let v4 = s4.generate(&[el(&s4, &[&[1, 2], &[3, 4]]), el(&s4, &[&[1, 3], &[2, 4]])]);
        let quo = s4.quotient(&s4.whole(), &v4).unwrap();
        assert_eq!(quo.group.order(), 6);
        for a in quo.group.elems() {
            for b in quo.group.elems() {
                let ab = quo.lift(quo.group.mul(a, b));
                let prod = s4.mul(quo.lift(a), quo.lift(b));
                assert_eq!(s4.right_coset_min(&v4, prod), ab);
            }
        }
        let s = s4.generate(&[el(&s4, &[&[1, 2]])]);
        assert!(s4.quotient(&s4.whole(), &s).is_err());
    }
}
