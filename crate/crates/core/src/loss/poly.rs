//! Polynomials in the channel parameter `s`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::sign::{Sign, SignEval};

/// Integer-coefficient polynomial; `coeffs[d]` multiplies `s^d`. Trailing zero
/// coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LossPolynomial {
    coeffs: Vec<i64>,
}

impl LossPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn monomial(coef: i64, degree: usize) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = coef;
        Self::new(c)
    }

    /// `(1 + a·s)^n`.
    pub fn binomial_power(a: i64, n: usize) -> Self {
        let mut c = vec![0i64; n + 1];
        let mut binom = 1i64;
        let mut pow = 1i64;
        for (d, slot) in c.iter_mut().enumerate() {
            *slot = binom * pow;
            if d < n {
                binom = binom * (n - d) as i64 / (d + 1) as i64;
                pow *= a;
            }
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of coefficients, i.e. the value at `s = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c as f64)
    }

    pub fn scale(&self, k: f64) -> RealPolynomial {
        RealPolynomial::new(self.coeffs.iter().map(|&c| c as f64 * k).collect())
    }

    pub fn to_real(&self) -> RealPolynomial {
        self.scale(1.0)
    }

    fn combine(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|d| f(self.coeff(d), other.coeff(d))).collect())
    }

    /// Coefficients of `P(1 - t)` as a polynomial in `t`.
    fn reflected(&self) -> Vec<i128> {
        let n = self.coeffs.len();
        let mut out = vec![0i128; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            // (1 - t)^i = Σ_j C(i, j) (-t)^j
            let mut binom = 1i128;
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let term = c as i128 * binom;
                *slot += if j % 2 == 0 { term } else { -term };
                binom = binom * (i - j) as i128 / (j + 1) as i128;
            }
        }
        out
    }
}

impl Add for &LossPolynomial {
    type Output = LossPolynomial;
    fn add(self, rhs: Self) -> LossPolynomial {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &LossPolynomial {
    type Output = LossPolynomial;
    fn sub(self, rhs: Self) -> LossPolynomial {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &LossPolynomial {
    type Output = LossPolynomial;
    fn neg(self) -> LossPolynomial {
        LossPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for LossPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(LossPolynomial::zero(), |acc, p| &acc + &p)
    }
}

fn sign_of<T: PartialOrd + Default>(v: T) -> Sign {
    let zero = T::default();
    if v > zero {
        Sign::Positive
    } else if v < zero {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

impl SignEval for LossPolynomial {
    fn is_zero_poly(&self) -> bool {
        self.is_zero()
    }

    /// Exact sign at `num / 2^bits`.
    fn sign_at(&self, num: u64, bits: u32) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::Zero;
        };
        let x = BigInt::from(num);
        let unit = BigInt::from(1u8) << bits as usize;
        // Σ c_i x^i (2^bits)^(d - i), a positive multiple of P(num / 2^bits)
        let mut total = BigInt::zero();
        let mut xp = BigInt::from(1u8);
        for (i, &c) in self.coeffs.iter().enumerate() {
            total += BigInt::from(c) * &xp * unit.pow((d - i) as u32);
            xp *= &x;
        }
        if total.is_positive() {
            Sign::Positive
        } else if total.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn sign_near_zero(&self) -> Sign {
        self.coeffs
            .iter()
            .find(|&&c| c != 0)
            .map_or(Sign::Zero, |&c| sign_of(c))
    }

    fn sign_near_one(&self) -> Sign {
        self.reflected()
            .into_iter()
            .find(|&c| c != 0)
            .map_or(Sign::Zero, sign_of)
    }
}

fn write_terms<T>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    is_zero: impl Fn(&T) -> bool,
    is_negative: impl Fn(&T) -> bool,
    magnitude: impl Fn(&T) -> String,
) -> fmt::Result {
    let mut first = true;
    for (d, c) in coeffs.iter().enumerate() {
        if is_zero(c) {
            continue;
        }
        let neg = is_negative(c);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let m = magnitude(c);
        match d {
            0 => write!(f, "{m}")?,
            _ => {
                if m != "1" {
                    write!(f, "{m}")?;
                }
                write!(f, "s")?;
                if d > 1 {
                    write!(f, "^{d}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LossPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |c| *c == 0, |c| *c < 0, |c| c.unsigned_abs().to_string())
    }
}

impl fmt::Debug for LossPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LossPolynomial({self})")
    }
}

impl Serialize for LossPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// Real-coefficient polynomial in `s`.
#[derive(Clone, Default, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> f64 {
        self.coeffs.get(d).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self + k·other`.
    pub fn add_scaled(&mut self, other: &LossPolynomial, k: f64) {
        if self.coeffs.len() < other.coeffs().len() {
            self.coeffs.resize(other.coeffs().len(), 0.0);
        }
        for (slot, &c) in self.coeffs.iter_mut().zip(other.coeffs()) {
            *slot += c as f64 * k;
        }
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &RealPolynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|d| (self.coeff(d) - other.coeff(d)).abs())
            .fold(0.0, f64::max)
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, rhs: Self) -> RealPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl SignEval for RealPolynomial {
    fn is_zero_poly(&self) -> bool {
        self.is_zero()
    }

    fn sign_at(&self, num: u64, bits: u32) -> Sign {
        sign_of(self.eval(num as f64 / (1u64 << bits) as f64))
    }

    fn sign_near_zero(&self) -> Sign {
        self.coeffs
            .iter()
            .find(|&&c| c != 0.0)
            .map_or(Sign::Zero, |&c| sign_of(c))
    }

    fn sign_near_one(&self) -> Sign {
        let n = self.coeffs.len();
        let mut out = vec![0.0f64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let mut binom = 1.0f64;
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += if j % 2 == 0 { c * binom } else { -c * binom };
                binom = binom * (i - j) as f64 / (j + 1) as f64;
            }
        }
        // treat cancellation noise relative to the coefficient scale as zero
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())) * 1e-12 * (1u64 << n.min(60)) as f64;
        out.into_iter()
            .find(|c| c.abs() > scale)
            .map_or(Sign::Zero, sign_of)
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            &self.coeffs,
            |c| *c == 0.0,
            |c| *c < 0.0,
            |c| {
                let s = format!("{:.4}", c.abs());
                let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
                s
            },
        )
    }
}

impl fmt::Debug for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPolynomial({self})")
    }
}

impl Serialize for RealPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}
