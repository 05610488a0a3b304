//! Laurent polynomials in the formal variable `v` with integer coefficients.
//!
//! Every coefficient appearing in this crate lives in `Z[v, v^-1]`; the
//! substitution `v = q^-1` happens only at the boundary, through [`VPoly::eval`].

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = Ratio<i64>;

/// A Laurent polynomial `sum_k coeffs[k] * v^(min_pow + k)`.
///
/// Invariant: `coeffs` is empty exactly when the polynomial is zero, and
/// otherwise has nonzero first and last entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VPoly {
    min_pow: i64,
    coeffs: Vec<i64>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly { min_pow: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        VPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        VPoly::monomial(c, 0)
    }

    /// The variable `v` itself.
    pub fn v() -> Self {
        VPoly::monomial(1, 1)
    }

    /// `1 - v`.
    pub fn one_minus_v() -> Self {
        VPoly::from_coeffs(0, vec![1, -1])
    }

    /// `v - 1`.
    pub fn v_minus_one() -> Self {
        VPoly::from_coeffs(0, vec![-1, 1])
    }

    pub fn monomial(c: i64, pow: i64) -> Self {
        if c == 0 {
            VPoly::zero()
        } else {
            VPoly { min_pow: pow, coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(min_pow: i64, coeffs: Vec<i64>) -> Self {
        let mut p = VPoly { min_pow, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while let Some(&last) = self.coeffs.last() {
            if last != 0 {
                break;
            }
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_pow += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_pow = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_pow == 0 && self.coeffs == [1]
    }

    pub fn min_pow(&self) -> i64 {
        self.min_pow
    }

    pub fn max_pow(&self) -> i64 {
        self.min_pow + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, pow: i64) -> i64 {
        if self.is_zero() || pow < self.min_pow || pow > self.max_pow() {
            0
        } else {
            self.coeffs[(pow - self.min_pow) as usize]
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return VPoly::zero();
        }
        VPoly::from_coeffs(self.min_pow, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_pow(&self, pow: i64) -> Self {
        if self.is_zero() {
            return VPoly::zero();
        }
        VPoly { min_pow: self.min_pow + pow, coeffs: self.coeffs.clone() }
    }

    /// Exact division; returns `None` when `self` is not a multiple of `divisor`.
    pub fn exact_div(&self, divisor: &VPoly) -> Option<VPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(VPoly::zero());
        }
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        if n < m {
            return None;
        }
        let lead = *divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; n - m + 1];
        for k in (0..=n - m).rev() {
            let top = rem[k + m - 1];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[k] = q;
            for j in 0..m {
                rem[k + j] -= q * divisor.coeffs[j];
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(VPoly::from_coeffs(self.min_pow - divisor.min_pow, quot))
    }

    /// Exact evaluation at a rational value of `v`.
    pub fn eval(&self, v: Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // Horner over the ascending coefficient list, then the Laurent shift.
        let mut acc = Rational::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * v + Rational::from_integer(c);
        }
        acc * pow_rational(v, self.min_pow)
    }
}

pub fn pow_rational(base: Rational, exp: i64) -> Rational {
    if exp >= 0 {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc *= base;
        }
        acc
    } else {
        Rational::one() / pow_rational(base, -exp)
    }
}

impl Add for &VPoly {
    type Output = VPoly;
    fn add(self, rhs: &VPoly) -> VPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_pow.min(rhs.min_pow);
        let hi = self.max_pow().max(rhs.max_pow());
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_pow - lo) as usize + i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_pow - lo) as usize + i] += c;
        }
        VPoly::from_coeffs(lo, coeffs)
    }
}

impl Sub for &VPoly {
    type Output = VPoly;
    fn sub(self, rhs: &VPoly) -> VPoly {
        self + &(-rhs)
    }
}

impl Neg for &VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        VPoly { min_pow: self.min_pow, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &VPoly {
    type Output = VPoly;
    fn mul(self, rhs: &VPoly) -> VPoly {
        if self.is_zero() || rhs.is_zero() {
            return VPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        VPoly::from_coeffs(self.min_pow + rhs.min_pow, coeffs)
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let pow = self.min_pow + i as i64;
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match pow {
                0 => write!(f, "{a}")?,
                1 => {
                    if a == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "{a}*v")?;
                    }
                }
                _ => {
                    if a == 1 {
                        write!(f, "v^{pow}")?;
                    } else {
                        write!(f, "{a}*v^{pow}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_strips_zeros() {
        let p = VPoly::from_coeffs(-1, vec![0, 3, 0, 0]);
        assert_eq!(p.min_pow(), 0);
        assert_eq!(p.coeffs(), &[3]);
        assert!(VPoly::from_coeffs(5, vec![0, 0]).is_zero());
    }

    #[test]
    fn ring_ops() {
        let p = VPoly::one_minus_v();
        let q = &VPoly::v() + &VPoly::one();
        assert_eq!(&p * &q, VPoly::from_coeffs(0, vec![1, 0, -1]));
        assert_eq!(&p + &VPoly::v_minus_one(), VPoly::zero());
        assert_eq!(&p - &p, VPoly::zero());
    }

    #[test]
    fn exact_division() {
        // (1 - v^3) = (1 - v)(1 + v + v^2)
        let p = VPoly::from_coeffs(0, vec![1, 0, 0, -1]);
        let d = VPoly::one_minus_v();
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, VPoly::from_coeffs(0, vec![1, 1, 1]));
        assert_eq!(&q * &d, p);
        // 1 + v is not a factor of 1 + v + v^2
        let bad = VPoly::from_coeffs(0, vec![1, 1, 1]).exact_div(&VPoly::from_coeffs(0, vec![1, 1]));
        assert!(bad.is_none());
    }

    #[test]
    fn laurent_division_and_eval() {
        let p = VPoly::from_coeffs(-2, vec![2, -2]); // 2v^-2 - 2v^-1
        let d = VPoly::monomial(2, -2);
        assert_eq!(p.exact_div(&d).unwrap(), VPoly::one_minus_v());
        let half = Rational::new(1, 2);
        assert_eq!(p.eval(half), Rational::from_integer(8) - Rational::from_integer(4));
    }

    #[test]
    fn eval_matches_display_cases() {
        let p = VPoly::from_coeffs(0, vec![1, -1]); // 1 - v
        assert_eq!(p.eval(Rational::new(1, 2)), Rational::new(1, 2));
        assert_eq!(format!("{p}"), "1 - v");
        assert_eq!(format!("{}", VPoly::from_coeffs(-1, vec![-2, 0, 3])), "-2*v^-1 + 3*v");
    }
}
