//! Univariate polynomials with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `coefficients[i]` is the coefficient of `x^i`; trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c x^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); e + 1];
        coefficients[e] = BigInt::from(c);
        Self::from_big(coefficients)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    /// `1 + x + ... + x^{m-1}`.
    pub fn q_integer(m: usize) -> Self {
        Self::from_big(vec![BigInt::one(); m])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coefficients.get(e).cloned().unwrap_or_default()
    }

    /// Coefficients as machine integers; `None` on overflow.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| i64::try_from(c).ok())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_i64(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }

    /// `p(x^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution exponent must be positive");
        let mut coefficients =
            vec![BigInt::zero(); self.coefficients.len().saturating_sub(1) * m + 1];
        for (e, c) in self.coefficients.iter().enumerate() {
            coefficients[e * m] = c.clone();
        }
        Self::from_big(coefficients)
    }

    /// `x^e p(x)`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = vec![BigInt::zero(); e];
        coefficients.extend(self.coefficients.iter().cloned());
        Self::from_big(coefficients)
    }

    /// `x^d p(1/x)`; requires `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Result<Self> {
        if let Some(deg) = self.degree() {
            if d < deg {
                return Err(Error::OutOfRange {
                    what: "reversal degree",
                    value: d,
                    min: deg,
                    max: usize::MAX,
                });
            }
        }
        let mut coefficients = vec![BigInt::zero(); d + 1];
        for (e, c) in self.coefficients.iter().enumerate() {
            coefficients[d - e] = c.clone();
        }
        Ok(Self::from_big(coefficients))
    }

    /// Exact quotient `self / divisor`; fails unless the division has no
    /// remainder over the integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<Self> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Validation("division by the zero polynomial".into()))?;
        let lead = &divisor.coefficients[dd];
        let mut rem = self.coefficients.clone();
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(Error::Validation(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Validation(format!(
                    "{self} is not divisible by {divisor}"
                )));
            }
            for (j, c) in divisor.coefficients.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Validation(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        Ok(Self::from_big(quot))
    }

    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// Renders with the given variable name, ascending powers.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if abs.is_one() && e > 0 {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::from_big((0..len).map(|e| self.coeff(e) + rhs.coeff(e)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_big(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_big(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}
