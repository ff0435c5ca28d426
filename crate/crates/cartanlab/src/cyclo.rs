//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A value is a dense vector of rationals over the power basis
//! zeta_n^0, …, zeta_n^(n-1), kept reduced modulo the n-th cyclotomic
//! polynomial. Reduction leaves only coefficients below phi(n), so equality of
//! values is equality of coefficient vectors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(usize, usize),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("{0} does not divide the target conductor {1}")]
    NotADivisor(usize, usize),
    #[error("coefficient vector of length {0} exceeds the conductor {1}")]
    CoeffLength(usize, usize),
}

/// Integer-coefficient cyclotomic polynomial Φ_n, low degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            poly = exact_div(&poly, &phi_d);
        }
    }
    poly
}

/// Exact division of integer polynomials (remainder must vanish).
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    if nd < dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for i in 0..=dd {
            let t = &den[i] * &c;
            rem[k + i] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

/// An exact element of Q(zeta_n) in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<Rat>,
}

impl Cyclotomic {
    pub fn zero(conductor: usize) -> Self {
        Cyclotomic {
            conductor,
            coeffs: vec![Rat::zero(); conductor],
        }
    }

    pub fn one(conductor: usize) -> Self {
        Self::from_rational(conductor, Rat::one())
    }

    pub fn from_rational(conductor: usize, r: Rat) -> Self {
        assert!(conductor > 0);
        let mut coeffs = vec![Rat::zero(); conductor];
        coeffs[0] = r;
        let mut v = Cyclotomic { conductor, coeffs };
        v.reduce();
        v
    }

    /// Build from a coefficient vector over the basis ζₙ⁰,…,ζₙⁿ⁻¹; shorter
    /// vectors are zero-padded, longer ones rejected.
    pub fn from_coeffs(conductor: usize, mut coeffs: Vec<Rat>) -> Result<Self, CycloError> {
        assert!(conductor > 0);
        if coeffs.len() > conductor {
            return Err(CycloError::CoeffLength(coeffs.len(), conductor));
        }
        coeffs.resize(conductor, Rat::zero());
        let mut v = Cyclotomic { conductor, coeffs };
        v.reduce();
        Ok(v)
    }

    pub fn from_integer(conductor: usize, k: i64) -> Self {
        Self::from_rational(conductor, Rat::from_integer(BigInt::from(k)))
    }

    /// zeta_n^k
    pub fn root_of_unity(conductor: usize, k: usize) -> Self {
        assert!(conductor > 0);
        let mut coeffs = vec![Rat::zero(); conductor];
        coeffs[k % conductor] = Rat::one();
        let mut v = Cyclotomic { conductor, coeffs };
        v.reduce();
        v
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.conductor != other.conductor {
            return Err(CycloError::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    /// Reduce modulo Φ_n so that all coefficients at or above phi(n) vanish.
    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial(self.conductor);
        let deg = phi.len() - 1;
        let n = self.conductor;
        for k in (deg..n).rev() {
            let c = std::mem::replace(&mut self.coeffs[k], Rat::zero());
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-deg) * (x^deg - Φ) since Φ is monic
            for i in 0..deg {
                let t = Rat::from_integer(phi[i].clone()) * &c;
                self.coeffs[k - deg + i] -= t;
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let n = self.conductor;
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % n] += a * b;
            }
        }
        let mut v = Cyclotomic { conductor: n, coeffs };
        v.reduce();
        Ok(v)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Complex conjugation: zeta^k -> zeta^(n-k).
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut coeffs = vec![Rat::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(n - k) % n] += c;
            }
        }
        let mut v = Cyclotomic { conductor: n, coeffs };
        v.reduce();
        v
    }

    /// Embed into Q(zeta_m) for a multiple m of the conductor.
    pub fn embed(&self, m: usize) -> Result<Self, CycloError> {
        if m % self.conductor != 0 {
            return Err(CycloError::NotADivisor(self.conductor, m));
        }
        let step = m / self.conductor;
        let mut coeffs = vec![Rat::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * step] += c;
            }
        }
        let mut v = Cyclotomic {
            conductor: m,
            coeffs,
        };
        v.reduce();
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Lexicographic comparison on coefficient vectors; a total order used
    /// only for canonical sorting of rows, not a field order.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.conductor, other.conductor);
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if k == 1 {
                    write!(f, "z{n}")?;
                } else {
                    write!(f, "z{n}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let phi = |n: usize| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| {
                    use num_traits::ToPrimitive;
                    c.to_i64().unwrap()
                })
                .collect()
        };
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(2), vec![1, 1]);
        assert_eq!(phi(3), vec![1, 1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn additive_identity() {
        let x = Cyclotomic::one(6);
        assert_eq!(x.add(&Cyclotomic::zero(6)).unwrap(), x);
    }

    #[test]
    fn root_of_unity_order() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let z2 = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(z.mul(&z2).unwrap(), Cyclotomic::one(3));
    }

    #[test]
    fn reduction_mod_phi3() {
        // zeta_3 + zeta_3^2 = -1
        let z = Cyclotomic::root_of_unity(3, 1);
        let z2 = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(z.add(&z2).unwrap(), Cyclotomic::from_integer(3, -1));
    }

    #[test]
    fn conj_is_involutive_and_negates_exponents() {
        let z = Cyclotomic::root_of_unity(5, 2);
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(5, 3));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn conductor_mismatch_reported() {
        let a = Cyclotomic::one(3);
        let b = Cyclotomic::one(4);
        assert_eq!(
            a.add(&b).unwrap_err(),
            CycloError::ConductorMismatch(3, 4)
        );
    }

    #[test]
    fn embedding_preserves_values() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let z6sq = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(z3.embed(6).unwrap(), z6sq);
        // and rational values stay rational
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        let r = Cyclotomic::from_rational(3, half.clone()).embed(12).unwrap();
        assert_eq!(r.as_rational().unwrap(), half);
    }

    #[test]
    fn integrality_detection() {
        let z = Cyclotomic::root_of_unity(4, 1);
        assert!(z.as_integer().is_none());
        let v = z.mul(&z).unwrap(); // zeta_4^2 = -1
        assert_eq!(v.as_integer().unwrap(), BigInt::from(-1));
    }
}
