//! The `q`-side: Gaussian binomials, the signed weight sums `p(q)` and
//! `p*(q)`, Poincaré polynomials, Euler characteristics and point counts.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::schubert::BruhatGraph;
use crate::shape::GrassmannShape;
use crate::weights::{weight, FillVariant};

/// `[n choose k]_q`, by iterated exact division; each partial product is
/// itself a Gaussian binomial, so a remainder anywhere is an error.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<IntPolynomial> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 0,
            max: n,
        });
    }
    let k = k.min(n - k);
    let mut acc = IntPolynomial::one();
    for i in 1..=k {
        let num = &acc * &IntPolynomial::q_integer(n - k + i);
        acc = num
            .div_exact(&IntPolynomial::q_integer(i))
            .map_err(|e| Error::Falsification(format!("[{n} choose {k}]_q step {i}: {e}")))?;
    }
    Ok(acc)
}

/// Parity class of `(k, n)`, fixing `m` and `j` in the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ParityCase {
    /// `(2j, 2m)`, `(2j, 2m+1)` or `(2j+1, 2m+1)`.
    Binomial { m: usize, j: usize },
    /// `(2j+1, 2m)`.
    Hook { m: usize, j: usize },
}

impl ParityCase {
    pub fn of(shape: GrassmannShape) -> Self {
        let (k, n) = (shape.k(), shape.n());
        let j = k / 2;
        let m = n / 2;
        if k % 2 == 1 && n % 2 == 0 {
            ParityCase::Hook { m, j }
        } else {
            ParityCase::Binomial { m, j }
        }
    }
}

/// `(-1)^{k(n-k)} Σ_λ (-1)^{|λ|} q^{wt(λ)}` with `wt = η` or `η*`.
pub fn p_sum(shape: GrassmannShape, variant: FillVariant) -> Result<IntPolynomial> {
    let graph = BruhatGraph::build(shape)?;
    let mut coeffs = vec![0i64; shape.dim() + 1];
    for cell in graph.cells() {
        let w = weight(cell, shape, variant)?;
        coeffs[w] += if cell.size() % 2 == 0 { 1 } else { -1 };
    }
    let p = IntPolynomial::from_coeffs(&coeffs);
    Ok(if shape.dim().is_multiple_of(2) { p } else { -p })
}

pub fn p_closed(shape: GrassmannShape) -> Result<IntPolynomial> {
    match ParityCase::of(shape) {
        ParityCase::Binomial { m, j } => Ok(gaussian_binomial(m, j)?.substitute_power(2)),
        ParityCase::Hook { m, j } => {
            let factor = &IntPolynomial::monomial(1, m) - &IntPolynomial::one();
            Ok(&factor * &gaussian_binomial(m - 1, j)?.substitute_power(2))
        }
    }
}

/// Power `s` with `p*(q) = q^s p(q)` for odd `n`.
pub fn p_star_shift(shape: GrassmannShape) -> Result<usize> {
    if shape.n().is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "no closed form for p*(q) of {shape} with n even"
        )));
    }
    let m = shape.n() / 2;
    let j = shape.k() / 2;
    Ok(if shape.k().is_multiple_of(2) { j } else { m - j })
}

pub fn p_star_closed(shape: GrassmannShape) -> Result<IntPolynomial> {
    let s = p_star_shift(shape)?;
    Ok(p_closed(shape)?.shift(s))
}

/// Poincaré polynomial in `t` for real coefficients.
pub fn poincare_polynomial(shape: GrassmannShape) -> Result<IntPolynomial> {
    match ParityCase::of(shape) {
        ParityCase::Binomial { m, j } => Ok(gaussian_binomial(m, j)?.substitute_power(4)),
        ParityCase::Hook { m, j } => {
            let factor = &IntPolynomial::monomial(1, 2 * m - 1) + &IntPolynomial::one();
            Ok(&factor * &gaussian_binomial(m - 1, j)?.substitute_power(4))
        }
    }
}

pub fn euler_characteristic(shape: GrassmannShape) -> Result<i64> {
    let v = poincare_polynomial(shape)?.evaluate_i64(-1);
    v.to_i64()
        .ok_or_else(|| Error::Validation(format!("Euler characteristic {v} overflows")))
}

/// `|Gr(k,n)(F_q)| = q^r p(q)` with `r = k(n-k) - deg p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub shape: GrassmannShape,
    pub polynomial: IntPolynomial,
    pub shift_exponent: usize,
}

impl PointCount {
    pub fn full(&self) -> IntPolynomial {
        self.polynomial.shift(self.shift_exponent)
    }

    /// Evaluates the count polynomial at an integer `q`. No check is made
    /// that `q` is a prime power with `√-1 ∈ F_q`.
    pub fn evaluate(&self, q: u64) -> BigInt {
        self.full().evaluate(&BigInt::from(q))
    }
}

pub fn fq_point_count(shape: GrassmannShape) -> Result<PointCount> {
    let p = p_closed(shape)?;
    let deg = p
        .degree()
        .ok_or_else(|| Error::Falsification(format!("p(q) of {shape} vanishes")))?;
    Ok(PointCount {
        shape,
        polynomial: p,
        shift_exponent: shape.dim() - deg,
    })
}

/// `q^D p(1/q) = (-1)^{k(n-k)} p(q)` with `D = deg p`.
pub fn reciprocity_check(shape: GrassmannShape) -> Result<bool> {
    let p = p_closed(shape)?;
    let Some(d) = p.degree() else {
        return Ok(false);
    };
    let expected = if shape.dim().is_multiple_of(2) { p.clone() } else { -&p };
    Ok(p.reverse(d)? == expected)
}
