use super::{PermutationGroup, Subgroup};
use crate::fp::Prime;

impl PermutationGroup {
    /// A Sylow p-subgroup, built by normalizer ascent: while `|P|` is below
    /// the p-part of `|G|`, adjoin the first element of `N_G(P) \ P` whose
    /// image in `N_G(P)/P` has order `p`.
    pub fn sylow_subgroup(&self, p: Prime) -> Subgroup {
        let target = p.part_of(self.order());
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let n = self.normalizer(&s);
            let x = n
                .iter()
                .find(|&x| !s.contains(x) && s.contains(self.pow(x, p.get() as u64)))
                .expect("N_G(P)/P has an element of order p while P is not Sylow");
            s = self.join(&s, &[x]);
        }
        s
    }

    /// Whether `s` has order equal to the p-part of `|G|` (and so is a
    /// p-group of maximal order).
    pub fn is_sylow(&self, s: &Subgroup, p: Prime) -> bool {
        p.is_power(s.order()) && s.order() == p.part_of(self.order())
    }

    /// The set `{ S^g : g ∈ G }`, sorted and without repeats.
    pub fn sylow_conjugates(&self, s: &Subgroup) -> Vec<Subgroup> {
        self.conjugates(s)
    }
}
