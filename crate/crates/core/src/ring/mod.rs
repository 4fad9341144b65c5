//! Exact coefficient rings: big integers, polynomials and Laurent polynomials
//! in `q`, and truncated power series in `x`.

mod laurent;
mod poly;
mod qcomb;
mod series;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

pub use laurent::{poly_reciprocal_sub, LaurentPolynomial};
pub use poly::IntPolynomial;
pub use qcomb::{q_factorial, q_int, q_multinomial};
pub use series::{series_reciprocal, TruncatedSeries};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Which coefficient ring a matrix lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Integer,
    Polynomial,
    Laurent,
}

impl RingTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RingTag::Integer => "integer",
            RingTag::Polynomial => "polynomial",
            RingTag::Laurent => "laurent",
        }
    }
}

/// The operations a matrix entry needs.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    const TAG: RingTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Human-readable rendering used by text and CSV tables.
    fn render(&self) -> String;
    /// JSON encoding used by the matrix emitters.
    fn to_json(&self) -> Value;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Ring for ExactInt {
    const TAG: RingTag = RingTag::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Ring for IntPolynomial {
    const TAG: RingTag = RingTag::Polynomial;

    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        exponent_json(0, self.coeffs())
    }
}

impl Ring for LaurentPolynomial {
    const TAG: RingTag = RingTag::Laurent;

    fn zero() -> Self {
        LaurentPolynomial::zero()
    }
    fn one() -> Self {
        LaurentPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        exponent_json(self.min_exp(), self.coeffs())
    }
}

/// `{"min": <int>, "coeffs": ["<decimal>", ...]}` with ascending exponents.
fn exponent_json(min: i64, coeffs: &[BigInt]) -> Value {
    serde_json::json!({
        "min": min,
        "coeffs": coeffs.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
    })
}

/// Renders `sum c_k q^(min+k)` in ascending order, e.g. `1-q+2q^3`, `q^-2+q^-1`.
pub(crate) fn render_terms(min: i64, coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let exp = min + k as i64;
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let unit = One::is_one(&mag);
        match exp {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push('q');
                if exp != 1 {
                    out.push('^');
                    out.push_str(&exp.to_string());
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_terms() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(render_terms(0, &c(&[1, 2, 0, 1])), "1+2q+q^3");
        assert_eq!(render_terms(-3, &c(&[1, 1, 1])), "q^-3+q^-2+q^-1");
        assert_eq!(render_terms(0, &c(&[0, -1, -3])), "-q-3q^2");
        assert_eq!(render_terms(0, &[]), "0");
    }

    #[test]
    fn polynomial_json_has_zero_min() {
        let p = IntPolynomial::from_i64s(&[1, 2]);
        assert_eq!(
            Ring::to_json(&p).to_string(),
            r#"{"min":0,"coeffs":["1","2"]}"#
        );
        let l = LaurentPolynomial::from_i64s(-2, &[3]);
        assert_eq!(Ring::to_json(&l).to_string(), r#"{"min":-2,"coeffs":["3"]}"#);
    }
}
