//! Plain-text dump of a complex for checking it with other software:
//!
//! ```text
//! complex 2
//! dims 1 1 1
//! boundary 1 1
//! 0 0 1
//! boundary 2 0
//! ```
//!
//! `complex p` gives the field, `dims` the basis sizes in degrees `0..=top`,
//! and each `boundary d n` is followed by the `n` non-zero entries
//! `row col value` of `∂_d`.

use std::fmt::Write as _;

use super::FpComplex;
use crate::error::{Error, Result};
use crate::fp::{Prime, SparseMatrix};

impl FpComplex {
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "complex {}", self.prime()).unwrap();
        let dims: Vec<String> = self.dims().iter().map(ToString::to_string).collect();
        writeln!(out, "dims {}", dims.join(" ")).unwrap();
        for d in 1..=self.top() {
            let b = self.boundary(d);
            writeln!(out, "boundary {d} {}", b.nnz()).unwrap();
            for (r, c, v) in b.triplets() {
                writeln!(out, "{r} {c} {v}").unwrap();
            }
        }
        out
    }
}

pub fn parse_complex(text: &str) -> Result<FpComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: &str| Error::Parse {
        position: line,
        message: message.into(),
    };
    let mut next_numbers = |keyword: &str| -> Result<(usize, Vec<u64>)> {
        let (no, line) = lines.next().ok_or_else(|| err(0, "unexpected end of input"))?;
        let mut words = line.split_whitespace();
        if !keyword.is_empty() && words.next() != Some(keyword) {
            return Err(err(no, &format!("expected `{keyword}`")));
        }
        let nums = words
            .map(|w| w.parse::<u64>().map_err(|_| err(no, &format!("bad number {w:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok((no, nums))
    };

    let (no, v) = next_numbers("complex")?;
    let prime = Prime::new(*v.first().ok_or_else(|| err(no, "missing prime"))? as u32)?;
    let (no, dims) = next_numbers("dims")?;
    if dims.is_empty() {
        return Err(err(no, "no degrees"));
    }
    let dims: Vec<usize> = dims.into_iter().map(|d| d as usize).collect();
    let mut boundaries = Vec::new();
    for d in 1..dims.len() {
        let (no, header) = next_numbers("boundary")?;
        if header.len() != 2 || header[0] as usize != d {
            return Err(err(no, &format!("expected `boundary {d} <count>`")));
        }
        let mut triplets = Vec::with_capacity(header[1] as usize);
        for _ in 0..header[1] {
            let (no, t) = next_numbers("")?;
            if t.len() != 3 || t[0] as usize >= dims[d - 1] || t[1] as usize >= dims[d] {
                return Err(err(no, "entry outside the matrix"));
            }
            triplets.push((t[0] as u32, t[1] as u32, (t[2] % prime.get() as u64) as u32));
        }
        boundaries.push(SparseMatrix::from_triplets(dims[d - 1], dims[d], triplets, prime));
    }
    FpComplex::new(prime, dims, boundaries)
}
