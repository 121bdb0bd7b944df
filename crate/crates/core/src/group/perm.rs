use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored by images. Points are printed
/// 1-based in cycle notation.
///
/// Products act left to right: `a.then(&b)` applies `a` first, so the image of
/// `i` is `b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} is too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "point {} is hit twice",
                    i + 1
                )));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds the product of the given cycles (1-based points), applied left to
    /// right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::OutOfRangePoint { point: pt, degree });
                }
                if std::mem::replace(&mut seen[pt - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} repeated within a cycle"
                    )));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = next - 1;
            }
            acc = acc.then(&Permutation::from_images(images)?);
        }
        Ok(acc)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Same permutation on a larger point set, moving points by `offset` and
    /// fixing everything else.
    pub fn embed(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = (offset + x as usize) as u16;
        }
        Permutation { images }
    }

    /// Non-trivial cycles with 1-based points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_to_right_product() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
        assert_eq!(b.then(&a).to_string(), "(1 2 3)");
    }

    #[test]
    fn inverse_and_identity() {
        let a = Permutation::from_cycles(5, &[vec![1, 4, 2], vec![3, 5]]).unwrap();
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(matches!(
            Permutation::from_cycles(3, &[vec![1, 4]]),
            Err(Error::OutOfRangePoint { point: 4, degree: 3 })
        ));
    }

    #[test]
    fn embedding_shifts_points() {
        let a = Permutation::from_cycles(2, &[vec![1, 2]]).unwrap();
        assert_eq!(a.embed(3, 5).to_string(), "(4 5)");
    }
}
