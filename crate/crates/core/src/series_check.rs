//! Counts of connected permutations, by enumeration and from the series
//! `sum f(n) x^n = 1 - 1 / sum n! x^n`.

use num_bigint::BigInt;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::{connectivity_bits, next_lex};
use crate::ring::{ExactInt, TruncatedSeries};
use crate::subset::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountSource {
    Enumeration,
    Series,
}

/// `f(1), ..., f(max_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedCountTable {
    pub max_n: usize,
    pub counts: Vec<ExactInt>,
    pub source: CountSource,
}

impl ConnectedCountTable {
    /// `f(n)` for `1 <= n <= max_n`.
    pub fn get(&self, n: usize) -> Option<&ExactInt> {
        n.checked_sub(1).and_then(|k| self.counts.get(k))
    }
}

/// `f(n) = #{w in S_n : C(w) = ∅}` by walking every permutation.
pub fn connected_counts_enumerated(max_n: usize, caps: &Caps) -> Result<ConnectedCountTable> {
    caps.check_enumeration(max_n)?;
    let counts = (1..=max_n)
        .map(|n| {
            let mut word: Vec<u8> = (1..=n as u8).collect();
            let mut count = 0u64;
            loop {
                if connectivity_bits(&word) == 0 {
                    count += 1;
                }
                if !next_lex(&mut word) {
                    break;
                }
            }
            BigInt::from(count)
        })
        .collect();
    Ok(ConnectedCountTable { max_n, counts, source: CountSource::Enumeration })
}

/// Coefficients of `1 - 1 / sum_{k <= max_n} k! x^k`, truncated at `x^max_n`.
pub fn connected_counts_series(max_n: usize) -> Result<ConnectedCountTable> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be at least 1".into()));
    }
    let factorials = TruncatedSeries::new(max_n, (0..=max_n).map(factorial_big));
    let f = TruncatedSeries::one(max_n).try_sub(&factorials.reciprocal()?)?;
    Ok(ConnectedCountTable {
        max_n,
        counts: f.coeffs()[1..].to_vec(),
        source: CountSource::Series,
    })
}

fn factorial_big(k: usize) -> ExactInt {
    if k <= crate::subset::MAX_AMBIENT {
        factorial(k)
    } else {
        (1..=k).map(BigInt::from).product()
    }
}
