//! The poset of intersections of Sylow p-subgroups, the closure `P ↦ P°`
//! onto it, and p-centricity.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::fp::Prime;
use crate::group::{PermutationGroup, Subgroup};

/// All intersections of Sylow p-subgroups of a group, closed under
/// conjugation and intersection.
#[derive(Clone, Debug)]
pub struct OmegaPoset {
    prime: Prime,
    sylow: Subgroup,
    sylows: Vec<Subgroup>,
    members: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    leq: Vec<Vec<bool>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    minimum: usize,
}

impl OmegaPoset {
    /// Worklist closure of the Sylow conjugates under pairwise intersection.
    pub fn build(group: &PermutationGroup, p: Prime) -> Self {
        let sylow = group.sylow_subgroup(p);
        let sylows = group.sylow_conjugates(&sylow);

        let mut found: BTreeSet<Subgroup> = sylows.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = sylows.clone();
        while !frontier.is_empty() {
            let snapshot: Vec<Subgroup> = found.iter().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                for b in &snapshot {
                    let c = a.intersection(b);
                    if !found.contains(&c) {
                        found.insert(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }

        let members: Vec<Subgroup> = found.into_iter().collect();
        let index = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let leq = members
            .iter()
            .map(|a| members.iter().map(|b| a.is_subgroup_of(b)).collect())
            .collect();
        let classes = group.conjugacy_classes(&members);
        let mut class_of = vec![0; members.len()];
        for (c, class) in classes.iter().enumerate() {
            for &i in class {
                class_of[i] = c;
            }
        }
        // members are sorted by order, so the intersection of everything is first
        let minimum = 0;
        debug_assert!(members.iter().all(|m| members[minimum].is_subgroup_of(m)));

        OmegaPoset {
            prime: p,
            sylow,
            sylows,
            members,
            index,
            leq,
            classes,
            class_of,
            minimum,
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    /// The fixed Sylow subgroup `S` used for `Ω_S`.
    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    pub fn sylows(&self) -> &[Subgroup] {
        &self.sylows
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Subgroup) -> bool {
        self.index.contains_key(s)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn minimum(&self) -> &Subgroup {
        &self.members[self.minimum]
    }

    /// Indices of the members contained in the fixed Sylow subgroup.
    pub fn in_sylow(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].is_subgroup_of(&self.sylow))
            .collect()
    }

    /// One representative per conjugacy class, chosen inside the fixed Sylow
    /// subgroup (every class meets it).
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes
            .iter()
            .map(|class| {
                *class
                    .iter()
                    .find(|&&i| self.members[i].is_subgroup_of(&self.sylow))
                    .unwrap_or(&class[0])
            })
            .collect()
    }

    /// Covering relations `(i, j)`: `i < j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.members.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// `P°`: the intersection of all Sylow p-subgroups containing `P`.
    pub fn circ_closure(&self, p_sub: &Subgroup) -> Result<Subgroup> {
        if !self.prime.is_power(p_sub.order()) {
            return Err(Error::NotPSubgroup {
                order: p_sub.order(),
                prime: self.prime.get(),
            });
        }
        let mut containing = self.sylows.iter().filter(|s| p_sub.is_subgroup_of(s));
        let first = containing.next().ok_or_else(|| {
            Error::Invalid("p-subgroup is not contained in any Sylow subgroup".into())
        })?;
        Ok(containing.fold(first.clone(), |acc, s| acc.intersection(s)))
    }

    /// Length (number of strict inclusions) of the longest chain in `Ω_S`.
    pub fn chain_length(&self) -> usize {
        let inside = self.in_sylow();
        // members are sorted by order, so a strict inclusion goes forward
        let mut longest = vec![0usize; inside.len()];
        for (b, &j) in inside.iter().enumerate() {
            for (a, &i) in inside[..b].iter().enumerate() {
                if self.leq[i][j] && i != j {
                    longest[b] = longest[b].max(longest[a] + 1);
                }
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }
}

/// Every p-subgroup of the group: the conjugates of the subgroups of `sylow`.
pub fn p_subgroups(group: &PermutationGroup, sylow: &Subgroup) -> Vec<Subgroup> {
    let mut all = BTreeSet::new();
    for h in group.subgroups_of(sylow) {
        all.extend(group.conjugates(&h));
    }
    all.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct CentricEntry {
    pub subgroup: Subgroup,
    pub is_centric: bool,
    pub centralizer: Subgroup,
    pub center: Subgroup,
    /// `O^p(C_G(P))`.
    pub residual: Subgroup,
}

#[derive(Clone, Debug)]
pub struct CentricityTable {
    prime: Prime,
    entries: Vec<CentricEntry>,
}

impl CentricityTable {
    pub fn entries(&self) -> &[CentricEntry] {
        &self.entries
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn get(&self, s: &Subgroup) -> Option<&CentricEntry> {
        self.entries.iter().find(|e| e.subgroup == *s)
    }

    pub fn centric(&self) -> impl Iterator<Item = &Subgroup> {
        self.entries
            .iter()
            .filter(|e| e.is_centric)
            .map(|e| &e.subgroup)
    }
}

/// `P` is p-centric when `|C_G(P)| / |Z(P)|` is prime to `p`, i.e. `Z(P)` is
/// a Sylow p-subgroup of `C_G(P)`.
pub fn is_centric(group: &PermutationGroup, p: Prime, s: &Subgroup) -> bool {
    let c = group.centralizer(s);
    let z = group.center(s);
    !p.divides(c.order() / z.order())
}

pub fn classify_centric(
    group: &PermutationGroup,
    p: Prime,
    collection: &[Subgroup],
) -> Result<CentricityTable> {
    let entries = collection
        .iter()
        .map(|s| {
            if !group.is_p_subgroup(s, p) {
                return Err(Error::NotPSubgroup {
                    order: s.order(),
                    prime: p.get(),
                });
            }
            let centralizer = group.centralizer(s);
            let center = group.center(s);
            let residual = group.op_residual(&centralizer, p);
            Ok(CentricEntry {
                subgroup: s.clone(),
                is_centric: !p.divides(centralizer.order() / center.order()),
                centralizer,
                center,
                residual,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentricityTable { prime: p, entries })
}

/// For a centric entry: `C_G(P) = Z(P) × O^p(C_G(P))` as an internal direct
/// product, and `O^p(C_G(P))` has order prime to `p`.
pub fn verify_decomposition(group: &PermutationGroup, p: Prime, entry: &CentricEntry) -> bool {
    let z = &entry.center;
    let k = &entry.residual;
    let trivial_meet = z.intersection(k).is_trivial();
    let commute = z
        .iter()
        .all(|a| k.iter().all(|b| group.mul(a, b) == group.mul(b, a)));
    let spans = z.order() * k.order() == entry.centralizer.order()
        && z.is_subgroup_of(&entry.centralizer)
        && k.is_subgroup_of(&entry.centralizer);
    trivial_meet && commute && spans && !p.divides(k.order())
}

/// The properties of `P ↦ P°` over every pair of subgroups of the fixed
/// Sylow subgroup, and every member of `Ω` as a target.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosureReport {
    pub subgroups: usize,
    /// `P ≤ P°`, and `P ≤ Q` implies `P° ≤ Q°`.
    pub extensive_monotone: bool,
    /// `P° ∈ Ω`, `(P°)° = P°`, and `P° = P` on `Ω`.
    pub fixes_omega: bool,
    /// `N_G(P, Q) ⊆ N_G(P°, Q°)`.
    pub transporter_inclusion: bool,
    /// `N_G(P°, Q) = N_G(P, Q)` for `Q ∈ Ω`.
    pub transporter_equality: bool,
}

pub fn closure_properties(group: &PermutationGroup, omega: &OmegaPoset) -> Result<ClosureReport> {
    let subs = group.subgroups_of(omega.sylow());
    let closures = subs
        .iter()
        .map(|s| omega.circ_closure(s))
        .collect::<Result<Vec<_>>>()?;
    let extensive_monotone = subs.iter().zip(&closures).all(|(s, c)| s.is_subgroup_of(c))
        && (0..subs.len()).all(|a| {
            (0..subs.len()).all(|b| !subs[a].is_subgroup_of(&subs[b]) || closures[a].is_subgroup_of(&closures[b]))
        });
    let mut fixes_omega = true;
    for c in &closures {
        fixes_omega &= omega.contains(c) && omega.circ_closure(c)? == *c;
    }
    for m in omega.members() {
        fixes_omega &= omega.circ_closure(m)? == *m;
    }
    let transporter_inclusion = (0..subs.len()).all(|a| {
        (0..subs.len()).all(|b| {
            let wide = group.transporter(&closures[a], &closures[b]);
            group
                .transporter(&subs[a], &subs[b])
                .iter()
                .all(|g| wide.binary_search(g).is_ok())
        })
    });
    let transporter_equality = subs.iter().zip(&closures).all(|(s, c)| {
        omega
            .members()
            .iter()
            .all(|q| group.transporter(c, q) == group.transporter(s, q))
    });
    Ok(ClosureReport {
        subgroups: subs.len(),
        extensive_monotone,
        fixes_omega,
        transporter_inclusion,
        transporter_equality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn s3() -> PermutationGroup {
        group(3, &[&[&[1, 2, 3]], &[&[1, 2]]])
    }

    fn s4() -> PermutationGroup {
        group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]])
    }

    fn prime(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn sub(g: &PermutationGroup, gens: &[&[&[usize]]]) -> Subgroup {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|cs| {
                Permutation::from_cycles(g.degree(), &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
                    .unwrap()
            })
            .collect();
        g.generate_from_perms(&perms).unwrap()
    }

    /// Oracle: intersections of every non-empty subset of the Sylows.
    fn omega_by_subsets(g: &PermutationGroup, p: Prime) -> BTreeSet<Subgroup> {
        let sylows = g.sylow_conjugates(&g.sylow_subgroup(p));
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << sylows.len()) {
            let mut acc = g.whole();
            for (i, s) in sylows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.intersection(s);
                }
            }
            out.insert(acc);
        }
        out
    }

    #[test]
    fn omega_of_s3() {
        let g = s3();
        let omega = OmegaPoset::build(&g, prime(2));
        assert_eq!(omega.len(), 4);
        assert_eq!(omega.classes().len(), 2);
        assert!(omega.minimum().is_trivial());
        assert_eq!(omega.chain_length(), 1);
        let oracle = omega_by_subsets(&g, prime(2));
        assert_eq!(omega.members().iter().cloned().collect::<BTreeSet<_>>(), oracle);
    }

    #[test]
    fn omega_with_normal_sylow() {
        let g = s3();
        let omega = OmegaPoset::build(&g, prime(3));
        assert_eq!(omega.len(), 1);
        assert_eq!(omega.classes().len(), 1);
        assert_eq!(omega.chain_length(), 0);
    }

    #[test]
    fn omega_of_s4_at_two() {
        let g = s4();
        let omega = OmegaPoset::build(&g, prime(2));
        let oracle = omega_by_subsets(&g, prime(2));
        assert_eq!(omega.members().iter().cloned().collect::<BTreeSet<_>>(), oracle);
        // three dihedral Sylows meeting pairwise in the normal Klein group
        assert_eq!(omega.len(), 4);
        let v4 = sub(&g, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        assert_eq!(omega.minimum(), &v4);
        for s in omega.sylows() {
            assert!(omega.contains(s));
        }
        // longest chain V_4 < D_8, found by brute force over Ω_S
        let inside = omega.in_sylow();
        let mut best = 0;
        for &a in &inside {
            for &b in &inside {
                if a != b && omega.leq(a, b) {
                    best = best.max(1);
                    for &c in &inside {
                        if c != b && omega.leq(b, c) {
                            best = best.max(2);
                        }
                    }
                }
            }
        }
        assert_eq!(best, 1);
        assert_eq!(omega.chain_length(), best);
    }

    #[test]
    fn closure_examples() {
        let g = s4();
        let omega = OmegaPoset::build(&g, prime(2));
        let p = sub(&g, &[&[&[1, 2], &[3, 4]]]);
        let closure = omega.circ_closure(&p).unwrap();
        let mut expected = g.whole();
        for s in omega.sylows().iter().filter(|s| p.is_subgroup_of(s)) {
            expected = expected.intersection(s);
        }
        assert_eq!(closure, expected);
        assert_eq!(closure.order(), 4);
        for m in omega.members() {
            assert_eq!(&omega.circ_closure(m).unwrap(), m);
        }
        let s = omega.sylow().clone();
        assert_eq!(omega.circ_closure(&s).unwrap(), s);
        let three = sub(&g, &[&[&[1, 2, 3]]]);
        assert!(matches!(
            omega.circ_closure(&three),
            Err(Error::NotPSubgroup { order: 3, prime: 2 })
        ));
    }

    #[test]
    fn closure_properties_hold() {
        for g in [s3(), s4(), group(6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]]])] {
            for p in [prime(2), prime(3)] {
                let omega = OmegaPoset::build(&g, p);
                let r = closure_properties(&g, &omega).unwrap();
                assert!(r.extensive_monotone && r.fixes_omega);
                assert!(r.transporter_inclusion && r.transporter_equality);
            }
        }
        let r = closure_properties(&s4(), &OmegaPoset::build(&s4(), prime(2))).unwrap();
        assert_eq!(r.subgroups, 10);
    }

    #[test]
    fn centricity_examples() {
        let g = s3();
        let p2 = prime(2);
        let s = sub(&g, &[&[&[1, 2]]]);
        let table = classify_centric(&g, p2, &[s.clone(), g.trivial_subgroup()]).unwrap();
        assert!(table.get(&s).unwrap().is_centric);
        assert!(!table.get(&g.trivial_subgroup()).unwrap().is_centric);

        let d8 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        assert!(is_centric(&d8, p2, &d8.whole()));

        let c3 = group(3, &[&[&[1, 2, 3]]]);
        assert!(is_centric(&c3, p2, &c3.trivial_subgroup()));

        assert!(classify_centric(&g, p2, &[sub(&g, &[&[&[1, 2, 3]]])]).is_err());
    }

    #[test]
    fn decomposition_holds_for_centric_subgroups() {
        let groups = [s3(), s4(), group(6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]]])];
        for g in &groups {
            for p in [prime(2), prime(3)] {
                let all = p_subgroups(g, &g.sylow_subgroup(p));
                let table = classify_centric(g, p, &all).unwrap();
                for e in table.entries() {
                    if e.is_centric {
                        assert!(verify_decomposition(g, p, e));
                    }
                    // centricity is inherited by p-overgroups
                    if e.is_centric {
                        for f in table.entries().iter().filter(|f| e.subgroup.is_subgroup_of(&f.subgroup)) {
                            assert!(f.is_centric);
                        }
                    }
                }
            }
        }
    }
}
