//! Brute-force oracles, written against nothing but group multiplication and
//! category composition tables.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use plocal::category::FiniteCategory;
use plocal::input::GroupSpec;
use plocal::{Elem, PermutationGroup, Subgroup};

pub type Set = BTreeSet<Elem>;

pub fn group(spec: &str) -> PermutationGroup {
    GroupSpec::parse(spec).unwrap().build().unwrap()
}

pub fn set(s: &Subgroup) -> Set {
    s.iter().collect()
}

pub fn generated(g: &PermutationGroup, gens: &Set) -> Set {
    let mut out: Set = [g.identity()].into();
    let mut frontier: Vec<Elem> = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if out.insert(y) {
                frontier.push(y);
            }
        }
    }
    out
}

/// Every subgroup of `s`, by repeatedly adjoining single elements.
pub fn subgroups(g: &PermutationGroup, s: &Set) -> Vec<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let mut frontier = vec![generated(g, &Set::new())];
    while let Some(h) = frontier.pop() {
        if !found.insert(h.clone()) {
            continue;
        }
        for &x in s {
            if !h.contains(&x) {
                let mut gens = h.clone();
                gens.insert(x);
                frontier.push(generated(g, &gens));
            }
        }
    }
    found.into_iter().collect()
}

/// `P^x = x⁻¹ P x`.
pub fn conj(g: &PermutationGroup, p: &Set, x: Elem) -> Set {
    let xi = g.inv(x);
    p.iter().map(|&a| g.mul(g.mul(xi, a), x)).collect()
}

pub fn conjugates(g: &PermutationGroup, s: &Set) -> Vec<Set> {
    let all: BTreeSet<Set> = g.elems().map(|x| conj(g, s, x)).collect();
    all.into_iter().collect()
}

/// `{x : P^x ≤ Q}`.
pub fn transporter(g: &PermutationGroup, p: &Set, q: &Set) -> Set {
    g.elems().filter(|&x| conj(g, p, x).is_subset(q)).collect()
}

/// Intersection of the Sylow subgroups containing `p`.
pub fn closure(sylows: &[Set], p: &Set) -> Set {
    let mut containing = sylows.iter().filter(|s| p.is_subset(s));
    let first = containing.next().expect("some Sylow contains every p-subgroup").clone();
    containing.fold(first, |acc, s| acc.intersection(s).copied().collect())
}

/// Rank over F_p of the matrix with the given rows.
pub fn rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    if p == 2 {
        return rank_f2(&rows);
    }
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u32| (1..p).find(|&b| a * b % p == 1).unwrap();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let scale = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * scale % p;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn rank_f2(rows: &[Vec<u32>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let words = cols.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut b = vec![0u64; words];
            for (c, &v) in row.iter().enumerate() {
                if v % 2 == 1 {
                    b[c / 64] |= 1 << (c % 64);
                }
            }
            b
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let (w, m) = (c / 64, 1u64 << (c % 64));
        let Some(k) = (r..bits.len()).find(|&k| bits[k][w] & m != 0) else {
            continue;
        };
        bits.swap(r, k);
        let pivot = bits[r].clone();
        for (k, row) in bits.iter_mut().enumerate() {
            if k != r && row[w] & m != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Homology dimensions in degrees `0..top` of a complex given by its chain
/// bases and a face function `(n, chain) -> [(sign, face)]`.
fn homology<C: Clone + Eq + std::hash::Hash>(
    chains: &[Vec<C>],
    faces: impl Fn(&C) -> Vec<(bool, C)>,
    p: u32,
) -> Vec<usize> {
    let top = chains.len() - 1;
    let mut ranks = vec![0; top + 2];
    for n in 1..=top {
        let index: HashMap<&C, usize> = chains[n - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
        // rows = faces, columns = chains of degree n
        let mut rows = vec![vec![0u32; chains[n].len()]; chains[n - 1].len()];
        for (j, c) in chains[n].iter().enumerate() {
            for (negative, f) in faces(c) {
                let i = index[&f];
                rows[i][j] = (rows[i][j] + if negative { p - 1 } else { 1 }) % p;
            }
        }
        ranks[n] = rank(rows, p);
    }
    (0..top).map(|d| chains[d].len() - ranks[d] - ranks[d + 1]).collect()
}

/// `H_d(BG; F_p)` for `d < top` from the unnormalized bar complex.
pub fn bar_dims(g: &PermutationGroup, p: u32, top: usize) -> Vec<usize> {
    let mut chains: Vec<Vec<Vec<Elem>>> = vec![vec![Vec::new()]];
    for n in 1..=top {
        let mut next = Vec::new();
        for c in &chains[n - 1] {
            for x in g.elems() {
                let mut t = c.clone();
                t.push(x);
                next.push(t);
            }
        }
        chains.push(next);
    }
    homology(
        &chains,
        |t: &Vec<Elem>| {
            let n = t.len();
            let mut out = vec![(false, t[1..].to_vec())];
            for i in 1..n {
                let mut f = t[..i - 1].to_vec();
                f.push(g.mul(t[i - 1], t[i]));
                f.extend_from_slice(&t[i + 1..]);
                out.push((i % 2 == 1, f));
            }
            out.push((n % 2 == 1, t[..n - 1].to_vec()));
            out
        },
        p,
    )
}

/// Degree-0 chains are objects, tagged so they never collide with
/// morphism strings.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Simplex {
    Object(usize),
    Chain(Vec<usize>),
}

/// `H_d(|C|; F_p)` for `d < top` from the unnormalized nerve.
pub fn nerve_dims(c: &FiniteCategory, p: u32, top: usize) -> Vec<usize> {
    let m = c.morphisms();
    let mut chains: Vec<Vec<Simplex>> = vec![(0..c.object_count()).map(Simplex::Object).collect()];
    chains.push((0..m.len()).map(|f| Simplex::Chain(vec![f])).collect());
    for n in 2..=top {
        let mut next = Vec::new();
        for s in &chains[n - 1] {
            let Simplex::Chain(t) = s else { unreachable!() };
            let last = m[*t.last().unwrap()].target;
            for f in 0..m.len() {
                if m[f].source == last {
                    let mut u = t.clone();
                    u.push(f);
                    next.push(Simplex::Chain(u));
                }
            }
        }
        chains.push(next);
    }
    chains.truncate(top + 1);
    homology(
        &chains,
        |s: &Simplex| {
            let Simplex::Chain(t) = s else { unreachable!() };
            let n = t.len();
            if n == 1 {
                return vec![
                    (false, Simplex::Object(m[t[0]].target)),
                    (true, Simplex::Object(m[t[0]].source)),
                ];
            }
            let mut out = vec![(false, Simplex::Chain(t[1..].to_vec()))];
            for i in 1..n {
                let mut f = t[..i - 1].to_vec();
                f.push(c.compose(t[i - 1], t[i]));
                f.extend_from_slice(&t[i + 1..]);
                out.push((i % 2 == 1, Simplex::Chain(f)));
            }
            out.push((n % 2 == 1, Simplex::Chain(t[..n - 1].to_vec())));
            out
        },
        p,
    )
}
