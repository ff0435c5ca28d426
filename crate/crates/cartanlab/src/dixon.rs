//! Modular linear algebra for the Dixon–Schneider character table algorithm:
//! arithmetic in GF(e), class matrices, simultaneous eigenspace splitting, and
//! the discrete-Fourier lift of character values back to exact cyclotomics.

use thiserror::Error;

use crate::group::PermGroup;

#[derive(Debug, Error)]
pub enum DixonError {
    #[error("no admissible prime found for exponent {0}")]
    NoPrime(usize),
    #[error("eigenspace splitting failed modulo {0}: a common eigenspace of dimension {1} remained")]
    SplitFailed(u64, usize),
    #[error("degree recovery failed modulo {0}")]
    DegreeRecovery(u64),
    #[error("lifted multiplicity {0} exceeds the degree bound {1} modulo {2}")]
    LiftOutOfRange(u64, u64, u64),
}

/// Arithmetic modulo a small prime.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn primitive_root(&self) -> u64 {
        let order = self.p - 1;
        let factors = prime_factors(order);
        'outer: for g in 2..self.p {
            for &q in &factors {
                if self.pow(g, order / q) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every prime field has a primitive root")
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Admissible Dixon primes: e ≡ 1 (mod exponent) and e > 2·sqrt(|G|),
/// in increasing order.
pub fn admissible_primes(exponent: usize, group_order: usize) -> impl Iterator<Item = u64> {
    let m = exponent as u64;
    let lower = 2.0 * (group_order as f64).sqrt();
    (1u64..)
        .map(move |k| k * m + 1)
        .filter(move |&e| e as f64 > lower && is_prime(e))
}

/// Dense matrix over GF(e), row major.
#[derive(Debug, Clone)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &FpMatrix, f: Fp) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Basis of the kernel, as columns.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| m.at(r, col) != 0);
            let Some(p) = pivot else { continue };
            m.data.swap_range(p * cols, row * cols, cols);
            let inv = f.inv(m.at(row, col));
            for c in 0..cols {
                let v = f.mul(m.at(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..rows {
                if r != row && m.at(r, col) != 0 {
                    let factor = m.at(r, col);
                    for c in 0..cols {
                        let v = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
            if row == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (col, piv) in pivot_of_col.iter().enumerate() {
                if let Some(r) = piv {
                    v[col] = f.neg(m.at(*r, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial via Hessenberg reduction, low degree first,
    /// monic of degree n.
    pub fn char_poly(&self, f: Fp) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        // reduce to upper Hessenberg form
        for col in 0..n.saturating_sub(2) {
            let pivot = (col + 1..n).find(|&r| h.at(r, col) != 0);
            let Some(p) = pivot else { continue };
            if p != col + 1 {
                for c in 0..n {
                    let (a, b) = (h.at(p, c), h.at(col + 1, c));
                    h.set(p, c, b);
                    h.set(col + 1, c, a);
                }
                for r in 0..n {
                    let (a, b) = (h.at(r, p), h.at(r, col + 1));
                    h.set(r, p, b);
                    h.set(r, col + 1, a);
                }
            }
            let inv = f.inv(h.at(col + 1, col));
            for r in col + 2..n {
                let factor = f.mul(h.at(r, col), inv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.at(r, c), f.mul(factor, h.at(col + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.at(rr, col + 1), f.mul(factor, h.at(rr, r)));
                    h.set(rr, col + 1, v);
                }
            }
        }
        // recurrence on leading principal minors of (xI - H)
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            // p_k = (x - h[k-1][k-1]) p_{k-1} - sum over products of subdiagonals
            let mut p = poly_mul_linear(&polys[k - 1], f.neg(h.at(k - 1, k - 1)), f);
            let mut beta = 1u64;
            for m in 1..k {
                beta = f.mul(beta, h.at(k - m, k - m - 1));
                if beta == 0 {
                    break;
                }
                let coef = f.mul(beta, h.at(k - m - 1, k - 1));
                if coef == 0 {
                    continue;
                }
                for (i, c) in polys[k - m - 1].iter().enumerate() {
                    let t = f.mul(coef, *c);
                    while p.len() <= i {
                        p.push(0);
                    }
                    p[i] = f.sub(p[i], t);
                }
            }
            polys.push(p);
        }
        let mut out = polys.pop().unwrap();
        out.resize(n + 1, 0);
        out
    }
}

trait SwapRange {
    fn swap_range(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRange for Vec<u64> {
    fn swap_range(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for i in 0..len {
            self.swap(a + i, b + i);
        }
    }
}

fn poly_mul_linear(p: &[u64], c0: u64, f: Fp) -> Vec<u64> {
    // p(x) * (x + c0)
    let mut out = vec![0u64; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i] = f.add(out[i], f.mul(c, c0));
        out[i + 1] = f.add(out[i + 1], c);
    }
    out
}

pub fn poly_roots(poly: &[u64], f: Fp) -> Vec<u64> {
    (0..f.p)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = f.add(f.mul(acc, x), c);
            }
            acc == 0
        })
        .collect()
}

/// Class multiplication matrices: `M_i[j][k]` counts elements x in class i
/// with x^{-1} z_k in class j, for a fixed representative z_k of class k.
pub fn class_matrices(group: &PermGroup) -> Vec<FpMatrix> {
    let r = group.classes().len();
    let mut mats: Vec<FpMatrix> = (0..r).map(|_| FpMatrix::zero(r, r)).collect();
    let reps: Vec<usize> = group.classes().iter().map(|c| c.representative).collect();
    for i in 0..r {
        for (k, &z) in reps.iter().enumerate() {
            for &x in &group.classes()[i].members {
                let y = group.mul_idx(group.inv_idx(x), z);
                let j = group.class_of(y);
                let cur = mats[i].at(j, k);
                mats[i].set(j, k, cur + 1);
            }
        }
    }
    mats
}

/// Split the common eigenspaces of the class matrices modulo e. Returns one
/// normalized vector per irreducible: the central character values per class,
/// scaled so the identity-class coordinate is 1.
pub fn central_characters(
    class_mats: &[FpMatrix],
    identity_class: usize,
    f: Fp,
) -> Result<Vec<Vec<u64>>, DixonError> {
    let r = class_mats.len();
    let reduced: Vec<FpMatrix> = class_mats
        .iter()
        .map(|m| {
            let mut rm = m.clone();
            for v in &mut rm.data {
                *v %= f.p;
            }
            rm
        })
        .collect();
    // subspaces as column-basis matrices
    let mut spaces: Vec<FpMatrix> = vec![FpMatrix::identity(r)];
    for mat in &reduced {
        let mut next = Vec::new();
        for space in spaces {
            if space.cols == 1 {
                next.push(space);
                continue;
            }
            let restriction = restrict(mat, &space, f)?;
            let cp = restriction.char_poly(f);
            let roots = poly_roots(&cp, f);
            let mut split_dim = 0;
            let mut pieces = Vec::new();
            for lam in roots {
                let mut shifted = restriction.clone();
                for i in 0..shifted.rows {
                    let v = f.sub(shifted.at(i, i), lam);
                    shifted.set(i, i, v);
                }
                let ker = shifted.kernel(f);
                if ker.is_empty() {
                    continue;
                }
                split_dim += ker.len();
                let mut basis = FpMatrix::zero(r, ker.len());
                for (c, kv) in ker.iter().enumerate() {
                    for row in 0..r {
                        let mut acc = 0u64;
                        for (s, &coef) in kv.iter().enumerate() {
                            acc = f.add(acc, f.mul(coef, space.at(row, s)));
                        }
                        basis.set(row, c, acc);
                    }
                }
                pieces.push(basis);
            }
            if split_dim != space.cols {
                return Err(DixonError::SplitFailed(f.p, space.cols));
            }
            next.extend(pieces);
        }
        spaces = next;
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
    }
    if let Some(bad) = spaces.iter().find(|s| s.cols != 1) {
        return Err(DixonError::SplitFailed(f.p, bad.cols));
    }
    let mut out = Vec::with_capacity(r);
    for space in spaces {
        let v: Vec<u64> = (0..r).map(|i| space.at(i, 0)).collect();
        let pivot = v[identity_class];
        if pivot == 0 {
            return Err(DixonError::SplitFailed(f.p, 1));
        }
        let inv = f.inv(pivot);
        out.push(v.iter().map(|&x| f.mul(x, inv)).collect());
    }
    Ok(out)
}

/// Express the action of `mat` on the column space of `basis` in basis
/// coordinates: solves basis * R = mat * basis.
fn restrict(mat: &FpMatrix, basis: &FpMatrix, f: Fp) -> Result<FpMatrix, DixonError> {
    let image = mat.mul(basis, f);
    let n = basis.rows;
    let d = basis.cols;
    // solve the stacked system by elimination on [basis | image]
    let mut aug = FpMatrix::zero(n, d + image.cols);
    for r in 0..n {
        for c in 0..d {
            aug.set(r, c, basis.at(r, c));
        }
        for c in 0..image.cols {
            aug.set(r, d + c, image.at(r, c));
        }
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..d {
        let pr = (row..n).find(|&r| aug.at(r, col) != 0);
        let Some(p) = pr else {
            return Err(DixonError::SplitFailed(f.p, d));
        };
        aug.data.swap_range(p * aug.cols, row * aug.cols, aug.cols);
        let inv = f.inv(aug.at(row, col));
        for c in 0..aug.cols {
            let v = f.mul(aug.at(row, c), inv);
            aug.set(row, c, v);
        }
        for r in 0..n {
            if r != row && aug.at(r, col) != 0 {
                let factor = aug.at(r, col);
                for c in 0..aug.cols {
                    let v = f.sub(aug.at(r, c), f.mul(factor, aug.at(row, c)));
                    aug.set(r, c, v);
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    // invariance of the subspace means the non-pivot rows of the image part vanished
    for r in row..n {
        for c in 0..image.cols {
            if aug.at(r, d + c) != 0 {
                return Err(DixonError::SplitFailed(f.p, d));
            }
        }
    }
    let mut out = FpMatrix::zero(d, d);
    for (col, &pr) in pivots.iter().enumerate() {
        for c in 0..d {
            out.set(col, c, aug.at(pr, d + c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_admissibility() {
        assert!(is_prime(7));
        assert!(!is_prime(9));
        let mut it = admissible_primes(6, 6);
        assert_eq!(it.next(), Some(7));
        assert_eq!(it.next(), Some(13));
        let mut it = admissible_primes(12, 24);
        assert_eq!(it.next(), Some(13));
    }

    #[test]
    fn primitive_root_mod_7() {
        let f = Fp { p: 7 };
        let g = f.primitive_root();
        let mut seen = std::collections::HashSet::new();
        for e in 0..6 {
            seen.insert(f.pow(g, e));
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let f = Fp { p: 13 };
        let mut m = FpMatrix::zero(2, 2);
        m.set(0, 0, 3);
        m.set(1, 1, 5);
        let cp = m.char_poly(f);
        // (x-3)(x-5) = x^2 - 8x + 15 = x^2 + 5x + 2 mod 13
        assert_eq!(cp, vec![2, 5, 1]);
        let mut roots = poly_roots(&cp, f);
        roots.sort_unstable();
        assert_eq!(roots, vec![3, 5]);
    }

    #[test]
    fn char_poly_of_companion() {
        // companion of x^3 + 2x + 1 over GF(7)
        let f = Fp { p: 7 };
        let mut m = FpMatrix::zero(3, 3);
        m.set(0, 2, f.neg(1));
        m.set(1, 0, 1);
        m.set(1, 2, f.neg(2));
        m.set(2, 1, 1);
        let cp = m.char_poly(f);
        assert_eq!(cp, vec![1, 2, 0, 1]);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let f = Fp { p: 7 };
        let mut m = FpMatrix::zero(2, 2);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        m.set(1, 1, 4);
        let ker = m.kernel(f);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(f.add(f.mul(1, v[0]), f.mul(2, v[1])), 0);
    }
}
