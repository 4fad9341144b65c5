use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use super::IntPolynomial;
use crate::error::{Error, Result};

/// q-factorials are cached up to this argument.
const MEMO_LIMIT: usize = 32;

/// The q-integer `(j) = 1 + q + ... + q^(j-1)`.
pub fn q_int(j: usize) -> Result<IntPolynomial> {
    if j == 0 {
        return Err(Error::InvalidArgument("q_int requires j >= 1".into()));
    }
    Ok(IntPolynomial::from_coeffs(vec![BigInt::one(); j]))
}

fn q_factorial_uncached(j: usize) -> IntPolynomial {
    (1..=j).map(|i| q_int(i).expect("i >= 1")).product()
}

fn q_factorial_table() -> &'static [IntPolynomial] {
    static TABLE: OnceLock<Vec<IntPolynomial>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![IntPolynomial::one()];
        for i in 1..=MEMO_LIMIT {
            let next = &table[i - 1] * &q_int(i).expect("i >= 1");
            table.push(next);
        }
        table
    })
}

/// The q-factorial `(j)! = (1)(2)...(j)`; `(0)! = 1`.
pub fn q_factorial(j: usize) -> IntPolynomial {
    match q_factorial_table().get(j) {
        Some(p) => p.clone(),
        None => q_factorial_uncached(j),
    }
}

/// The q-multinomial coefficient `(m)! / ((p_1)! ... (p_k)!)`.
///
/// Panics if the division leaves a remainder; for valid parts the quotient
/// is always a polynomial, so a remainder means the arithmetic is broken.
pub fn q_multinomial(m: usize, parts: &[usize]) -> Result<IntPolynomial> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("q_multinomial needs at least one part".into()));
    }
    if parts.contains(&0) {
        return Err(Error::InvalidArgument("q_multinomial parts must be positive".into()));
    }
    let total: usize = parts.iter().sum();
    if total != m {
        return Err(Error::InvalidArgument(format!(
            "q_multinomial parts sum to {total}, expected {m}"
        )));
    }
    let denom: IntPolynomial = parts.iter().map(|&p| q_factorial(p)).product();
    let numer = q_factorial(m);
    let (quot, rem) = numer
        .div_rem(&denom)
        .expect("q-factorials are monic and nonzero");
    assert!(
        rem.is_zero(),
        "q_multinomial({m}; {parts:?}) left remainder {rem}"
    );
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(1).unwrap(), p(&[1]));
        assert_eq!(q_int(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(q_int(4).unwrap().eval_at_one(), BigInt::from(4));
        assert!(matches!(q_int(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0), p(&[1]));
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
        assert_eq!(q_factorial(4).eval_at_one(), BigInt::from(24));
        assert_eq!(q_factorial(MEMO_LIMIT + 2), q_factorial_uncached(MEMO_LIMIT + 2));
        assert_eq!(q_factorial(7), q_factorial_uncached(7));
    }

    #[test]
    fn q_multinomials() {
        assert_eq!(q_multinomial(4, &[2, 2]).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_multinomial(4, &[2, 2]).unwrap().eval_at_one(), BigInt::from(6));
        for m in 1..8 {
            assert_eq!(q_multinomial(m, &[m]).unwrap(), p(&[1]));
        }
        assert!(q_multinomial(4, &[2, 1]).is_err());
        assert!(q_multinomial(4, &[4, 0]).is_err());
        assert!(q_multinomial(0, &[]).is_err());
    }

    /// Every composition of m (as parts) for small m.
    fn compositions(m: usize) -> Vec<Vec<usize>> {
        (0u32..1 << (m - 1))
            .map(|mask| {
                let mut parts = Vec::new();
                let mut last = 0;
                for i in 1..m {
                    if mask >> (i - 1) & 1 == 1 {
                        parts.push(i - last);
                        last = i;
                    }
                }
                parts.push(m - last);
                parts
            })
            .collect()
    }

    #[test]
    fn q_multinomials_are_palindromic_and_nonnegative() {
        for m in 1..=8 {
            for parts in compositions(m) {
                let c = q_multinomial(m, &parts).unwrap();
                assert!(c.is_palindromic(), "{m} {parts:?}");
                assert!(c.has_nonnegative_coeffs(), "{m} {parts:?}");
            }
        }
    }
}
