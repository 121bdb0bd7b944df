//! Group input: cycle notation, catalog names and direct products.
//!
//! ```text
//! cyc:6            cyclic of order 6
//! dih:8            dihedral of order 8
//! sym:4, alt:5     symmetric and alternating, n ≤ 6
//! perm:4:(1 2 3 4);(1 3)
//! sym:3*cyc:3      direct product; `x` and `×` also work
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Permutation, PermutationGroup, DEFAULT_ORDER_BOUND};

const MAX_CATALOG_DEGREE: usize = 6;

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Parses cycle notation such as `(1 2)(3 4)` on `degree` points. Cycles are
/// applied left to right; `()` and the empty string give the identity.
/// Positions in errors are byte offsets.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    parse_cycle_list(text, 0)?.into_permutation(degree)
}

/// Parses cycle notation, taking the degree from the largest point.
pub fn parse_cycles_auto(text: &str) -> Result<Permutation> {
    let cycles = parse_cycle_list(text, 0)?;
    let degree = cycles.max_point().max(1);
    cycles.into_permutation(degree)
}

struct CycleList {
    cycles: Vec<(usize, Vec<usize>)>,
}

impl CycleList {
    fn max_point(&self) -> usize {
        self.cycles.iter().flat_map(|(_, c)| c.iter().copied()).max().unwrap_or(0)
    }

    fn into_permutation(self, degree: usize) -> Result<Permutation> {
        let mut acc = Permutation::identity(degree);
        for (position, cycle) in &self.cycles {
            let perm = Permutation::from_cycles(degree, std::slice::from_ref(cycle)).map_err(|e| match e {
                Error::InvalidPermutation(m) => parse_error(*position, m),
                other => other,
            })?;
            acc = acc.then(&perm);
        }
        Ok(acc)
    }
}

fn parse_cycle_list(text: &str, offset: usize) -> Result<CycleList> {
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(parse_error(offset + i, "expected '('"));
        }
        let start = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            match bytes.get(i) {
                None => return Err(parse_error(offset + i, "unclosed cycle")),
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(b',') => i += 1,
                Some(c) if c.is_ascii_digit() => {
                    let begin = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let point: usize = text[begin..i]
                        .parse()
                        .map_err(|_| parse_error(offset + begin, "point out of range"))?;
                    cycle.push(point);
                }
                Some(_) => return Err(parse_error(offset + i, "expected a point or ')'")),
            }
        }
        if !cycle.is_empty() {
            cycles.push((offset + start, cycle));
        }
    }
    Ok(CycleList { cycles })
}

/// One factor of a group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Explicit {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl Factor {
    pub fn degree(&self) -> usize {
        match *self {
            Factor::Cyclic(n) => n,
            Factor::Dihedral(4) => 4,
            Factor::Dihedral(n) => (n / 2).max(2),
            Factor::Symmetric(n) | Factor::Alternating(n) => n,
            Factor::Explicit { degree, .. } => degree,
        }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        let cycle = |n: usize, pts: Vec<usize>| Permutation::from_cycles(n, &[pts]).expect("valid cycle");
        match self {
            Factor::Cyclic(n) => vec![cycle(*n, (1..=*n).collect())],
            Factor::Dihedral(2) => vec![cycle(2, vec![1, 2])],
            Factor::Dihedral(4) => vec![cycle(4, vec![1, 2]), cycle(4, vec![3, 4])],
            Factor::Dihedral(order) => {
                let n = order / 2;
                let reflection: Vec<Vec<usize>> = (2..=n)
                    .map(|i| (i, n + 2 - i))
                    .filter(|(a, b)| a < b)
                    .map(|(a, b)| vec![a, b])
                    .collect();
                vec![
                    cycle(n, (1..=n).collect()),
                    Permutation::from_cycles(n, &reflection).expect("valid reflection"),
                ]
            }
            Factor::Symmetric(n) if *n >= 2 => vec![cycle(*n, (1..=*n).collect()), cycle(*n, vec![1, 2])],
            Factor::Alternating(n) if *n >= 3 => (3..=*n).map(|k| cycle(*n, vec![1, 2, k])).collect(),
            Factor::Symmetric(_) | Factor::Alternating(_) => Vec::new(),
            Factor::Explicit { generators, .. } => generators.clone(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        let factorial = |n: usize| (1..=n).product::<usize>();
        match *self {
            Factor::Cyclic(n) | Factor::Dihedral(n) => Some(n),
            Factor::Symmetric(n) => Some(factorial(n)),
            Factor::Alternating(n) => Some(if n < 2 { 1 } else { factorial(n) / 2 }),
            Factor::Explicit { .. } => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Cyclic(n) => write!(f, "cyc:{n}"),
            Factor::Dihedral(n) => write!(f, "dih:{n}"),
            Factor::Symmetric(n) => write!(f, "sym:{n}"),
            Factor::Alternating(n) => write!(f, "alt:{n}"),
            Factor::Explicit { degree, generators } => {
                write!(f, "perm:{degree}:")?;
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", gens.join(";"))
            }
        }
    }
}

/// A parsed group description: the direct product of its factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut factors = Vec::new();
        let mut start = 0;
        let mut depth = 0usize;
        let mut pieces = Vec::new();
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                '*' | 'x' | '×' if depth == 0 => {
                    pieces.push((start, &text[start..i]));
                    start = i + c.len_utf8();
                }
                _ => {}
            }
        }
        pieces.push((start, &text[start..]));
        for (offset, piece) in pieces {
            factors.push(parse_factor(piece, offset)?);
        }
        Ok(GroupSpec { factors })
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(Factor::degree).sum::<usize>().max(1)
    }

    /// Generators of the product on the disjoint union of the factors' points.
    pub fn generators(&self) -> Vec<Permutation> {
        let degree = self.degree();
        let mut offset = 0;
        let mut gens = Vec::new();
        for f in &self.factors {
            gens.extend(f.generators().iter().map(|g| g.embed(offset, degree)));
            offset += f.degree();
        }
        gens
    }

    pub fn build(&self) -> Result<PermutationGroup> {
        self.build_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn build_bounded(&self, bound: usize) -> Result<PermutationGroup> {
        PermutationGroup::enumerate_bounded(self.degree(), self.generators(), bound)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("*"))
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

fn parse_factor(piece: &str, offset: usize) -> Result<Factor> {
    let lead = piece.len() - piece.trim_start().len();
    let trimmed = piece.trim();
    let at = offset + lead;
    let (name, rest) = trimmed
        .split_once(':')
        .ok_or_else(|| parse_error(at, "expected name:parameter"))?;
    let number = |s: &str, pos: usize| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| parse_error(pos, format!("expected a number, found '{}'", s.trim())))
    };
    let param_at = at + name.len() + 1;
    let factor = match name.trim() {
        "cyc" => {
            let n = number(rest, param_at)?;
            if n == 0 {
                return Err(parse_error(param_at, "order must be positive"));
            }
            Factor::Cyclic(n)
        }
        "dih" => {
            let n = number(rest, param_at)?;
            if n < 2 || n % 2 != 0 {
                return Err(parse_error(param_at, "dihedral order must be even and at least 2"));
            }
            Factor::Dihedral(n)
        }
        "sym" | "alt" => {
            let n = number(rest, param_at)?;
            if n == 0 || n > MAX_CATALOG_DEGREE {
                return Err(parse_error(param_at, format!("degree must be in 1..={MAX_CATALOG_DEGREE}")));
            }
            if name.trim() == "sym" {
                Factor::Symmetric(n)
            } else {
                Factor::Alternating(n)
            }
        }
        "perm" => {
            let (deg, gens) = rest
                .split_once(':')
                .ok_or_else(|| parse_error(param_at, "expected perm:degree:generators"))?;
            let degree = number(deg, param_at)?;
            if degree == 0 {
                return Err(parse_error(param_at, "degree must be positive"));
            }
            let mut generators = Vec::new();
            let mut pos = param_at + deg.len() + 1;
            for g in gens.split(';') {
                if !g.trim().is_empty() {
                    generators.push(parse_cycle_list(g, pos)?.into_permutation(degree)?);
                }
                pos += g.len() + 1;
            }
            Factor::Explicit { degree, generators }
        }
        other => return Err(parse_error(at, format!("unknown group family '{other}'"))),
    };
    Ok(factor)
}

/// A named example group.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: &'static str,
    pub order: usize,
}

/// Built-in examples, including every group the acceptance suite uses.
pub fn catalog() -> Vec<CatalogEntry> {
    let entry = |name, spec, order| CatalogEntry { name, spec, order };
    vec![
        entry("Z/2", "cyc:2", 2),
        entry("Z/3", "cyc:3", 3),
        entry("Z/6", "cyc:6", 6),
        entry("V4", "dih:4", 4),
        entry("S3", "sym:3", 6),
        entry("D8", "dih:8", 8),
        entry("A4", "alt:4", 12),
        entry("D12", "dih:12", 12),
        entry("S3xZ/3", "sym:3*cyc:3", 18),
        entry("S4", "sym:4", 24),
        entry("A5", "alt:5", 60),
        entry("S5", "sym:5", 120),
        entry("A6", "alt:6", 360),
        entry("S6", "sym:6", 720),
    ]
}
