//! Permutations on `{0, …, degree-1}` as image arrays.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image array of length {len} is not a bijection on 0..{len}: point {point} {problem}")]
    NotBijective {
        len: usize,
        point: usize,
        problem: &'static str,
    },
    #[error("cycle entry {0} out of range for degree {1}")]
    CycleOutOfRange(usize, usize),
    #[error("point {0} repeated across cycles")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation stored as its image array: `images[i]` is where point `i` goes.
///
/// The derived `Ord` (lexicographic on images) is the canonical element order
/// used for every deterministic listing downstream; the identity is minimal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img >= n {
                return Err(PermError::NotBijective {
                    len: n,
                    point: i,
                    problem: "maps out of range",
                });
            }
            if seen[img] {
                return Err(PermError::NotBijective {
                    len: n,
                    point: img,
                    problem: "is hit twice",
                });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Build from disjoint cycles given in 1-based notation, e.g. `[[1,2],[3,4]]`.
    pub fn from_cycles_one_based(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::CycleOutOfRange(p, degree));
                }
                if touched[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                touched[p - 1] = true;
            }
            for i in 0..cycle.len() {
                let from = cycle[i] - 1;
                let to = cycle[(i + 1) % cycle.len()] - 1;
                images[from] = to;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Composition acting left-to-right on points: `(a.mul(b)).apply(p) == b.apply(a.apply(p))`
    /// is *not* the convention here. We use `(a.mul(b)).apply(p) == a.apply(b.apply(p))`,
    /// i.e. `b` acts first.
    pub fn mul(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: rhs.images.iter().map(|&p| self.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn conjugate_by(&self, t: &Permutation) -> Permutation {
        t.mul(self).mul(&t.inverse())
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.mul(self);
            k += 1;
        }
        k
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Cycle decomposition, 1-based, fixed points omitted.
    pub fn cycles_one_based(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles_one_based();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::from_cycles_one_based(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.cycles_one_based(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn cycle_validation() {
        assert!(Permutation::from_cycles_one_based(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles_one_based(3, &[vec![0, 1]]).is_err());
        assert!(Permutation::from_cycles_one_based(3, &[vec![1, 2], vec![2, 3]]).is_err());
    }

    #[test]
    fn inverse_and_mul() {
        let p = Permutation::from_cycles_one_based(3, &[vec![1, 2, 3]]).unwrap();
        assert!(p.mul(&p.inverse()).is_identity());
        // b acts first: (1,2) * (1,2,3) sends 1 -> 2 -> 1
        let t = Permutation::from_cycles_one_based(3, &[vec![1, 2]]).unwrap();
        let prod = t.mul(&p);
        assert_eq!(prod.apply(0), 0);
    }

    #[test]
    fn identity_is_lex_minimal() {
        let id = Permutation::identity(4);
        let p = Permutation::from_cycles_one_based(4, &[vec![3, 4]]).unwrap();
        assert!(id < p);
    }
}
