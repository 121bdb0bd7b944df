//! A line-oriented text format for finite categories, so that nerve homology
//! can be computed for categories that do not come from a group.
//!
//! ```text
//! # the poset 0 < 1
//! object a
//! object b
//! morphism 0 0
//! morphism 0 1
//! morphism 1 1
//! identity 0 0
//! identity 1 2
//! compose 0 0 0
//! compose 0 1 1
//! compose 1 2 1
//! compose 2 2 2
//! ```
//!
//! Objects and morphisms are numbered from 0 in order of appearance;
//! `compose f g h` means "`f` then `g` is `h`". Every composable pair must
//! be listed.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{CategoryKind, FiniteCategory, Morphism};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: line,
        message: message.into(),
    }
}

pub fn parse_category(text: &str) -> Result<FiniteCategory> {
    let mut labels = Vec::new();
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut identities: Vec<Option<usize>> = Vec::new();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let numbers = |words: std::str::SplitWhitespace<'_>, n: usize| -> Result<Vec<usize>> {
            let v = words
                .map(|w| w.parse::<usize>().map_err(|_| parse_err(line_no, format!("bad number {w:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != n {
                return Err(parse_err(line_no, format!("{keyword} takes {n} numbers")));
            }
            Ok(v)
        };
        match keyword {
            "object" => {
                let label: Vec<&str> = words.collect();
                labels.push(if label.is_empty() {
                    labels.len().to_string()
                } else {
                    label.join(" ")
                });
                identities.push(None);
            }
            "morphism" => {
                let v = numbers(words, 2)?;
                if v[0] >= labels.len() || v[1] >= labels.len() {
                    return Err(parse_err(line_no, "morphism refers to an undeclared object"));
                }
                morphisms.push(Morphism {
                    source: v[0],
                    target: v[1],
                    witness: None,
                });
            }
            "identity" => {
                let v = numbers(words, 2)?;
                let slot = identities
                    .get_mut(v[0])
                    .ok_or_else(|| parse_err(line_no, "identity of an undeclared object"))?;
                *slot = Some(v[1]);
            }
            "compose" => {
                let v = numbers(words, 3)?;
                if table.insert((v[0], v[1]), v[2]).is_some() {
                    return Err(parse_err(line_no, "composite given twice"));
                }
            }
            other => return Err(parse_err(line_no, format!("unknown keyword {other:?}"))),
        }
    }

    let identities = identities
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::Invalid(format!("object {i} has no identity"))))
        .collect::<Result<Vec<_>>>()?;
    FiniteCategory::new(CategoryKind::Plain, labels, None, morphisms, identities, |f, g| {
        table
            .get(&(f, g))
            .copied()
            .ok_or_else(|| Error::Invalid(format!("composite of {f} and {g} is missing")))
    })
}

pub fn write_category(c: &FiniteCategory) -> String {
    let mut out = String::new();
    for label in c.labels() {
        writeln!(out, "object {label}").unwrap();
    }
    for m in c.morphisms() {
        writeln!(out, "morphism {} {}", m.source, m.target).unwrap();
    }
    for i in 0..c.object_count() {
        writeln!(out, "identity {i} {}", c.identity(i)).unwrap();
    }
    for f in 0..c.morphism_count() {
        for &g in c.out(c.morphism(f).target) {
            writeln!(out, "compose {f} {g} {}", c.compose(f, g as usize)).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::tests::chain3;

    #[test]
    fn round_trip() {
        let c = chain3();
        let text = write_category(&c);
        let back = parse_category(&text).unwrap();
        assert_eq!(write_category(&back), text);
        assert_eq!(back.morphism_count(), 6);
        assert!(back.check_laws().holds());
    }

    #[test]
    fn module_example_parses() {
        let text = "# the poset 0 < 1\nobject a\nobject b\nmorphism 0 0\nmorphism 0 1\nmorphism 1 1\n\
                    identity 0 0\nidentity 1 2\ncompose 0 0 0\ncompose 0 1 1\ncompose 1 2 1\ncompose 2 2 2\n";
        let c = parse_category(text).unwrap();
        assert!(c.is_initial(0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_category("object a\nmorphism 0 1\n").unwrap_err();
        assert_eq!(err, parse_err(2, "morphism refers to an undeclared object"));
        assert!(matches!(parse_category("object a\nbogus\n"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(
            parse_category("object a\nmorphism 0 0\nidentity 0 0\n"),
            Err(Error::Invalid(_))
        ));
    }
}
