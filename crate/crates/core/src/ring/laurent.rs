use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{render_terms, IntPolynomial};

/// Laurent polynomial `sum_k coeffs[k] q^(min_exp + k)`.
///
/// Normalized so that the first and last coefficients are nonzero; zero is
/// the empty coefficient list with `min_exp = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, vec![c])
    }

    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut out = Self { min_exp, coeffs };
        out.normalize();
        out
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.min_exp += lead as i64;
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Largest exponent with a nonzero coefficient; `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        usize::try_from(exp - self.min_exp)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The substitution `q -> 1/q`. An involution.
    pub fn substitute_inverse(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(max) => Self {
                min_exp: -max,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    /// The ordinary polynomial, if no negative exponent occurs.
    pub fn to_polynomial(&self) -> Option<IntPolynomial> {
        let shift = usize::try_from(self.min_exp).ok()?;
        Some(IntPolynomial::from_coeffs(self.coeffs.clone()).shift(shift))
    }
}

/// `p(1/q)` as a Laurent polynomial.
pub fn poly_reciprocal_sub(p: &IntPolynomial) -> LaurentPolynomial {
    LaurentPolynomial::from(p).substitute_inverse()
}

impl From<&IntPolynomial> for LaurentPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }
}

impl From<IntPolynomial> for LaurentPolynomial {
    fn from(p: IntPolynomial) -> Self {
        Self::from(&p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.min_exp, &self.coeffs))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (src, min) in [(&self.coeffs, self.min_exp), (&rhs.coeffs, rhs.min_exp)] {
            let off = (min - lo) as usize;
            for (k, c) in src.iter().enumerate() {
                coeffs[off + k] += c;
            }
        }
        *self = Self::new(lo, coeffs);
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.min_exp + rhs.min_exp, coeffs)
    }
}
