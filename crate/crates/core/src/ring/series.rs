use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Power series in `x` truncated after `x^order`.
///
/// The order is fixed at construction; combining series of different order
/// is an error rather than an implicit truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Takes the coefficients of `x^0, x^1, ...`; missing ones are zero and
    /// anything past `x^order` is dropped.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn from_i64s(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, [BigInt::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Domain(format!(
                "series orders differ ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse; see [`series_reciprocal`].
    pub fn reciprocal(&self) -> Result<Self> {
        series_reciprocal(self)
    }
}

/// Inverse of a series whose constant term is `±1`.
///
/// Uses `t_0 = 1/s_0` and `t_k = -t_0 * sum_{i=1..k} s_i t_{k-i}`, which stays
/// in the integers because `s_0` is a unit.
pub fn series_reciprocal(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let s0 = &s.coeffs[0];
    if s0.abs() != BigInt::one() {
        return Err(Error::Domain(format!(
            "constant term {s0} is not a unit in the integers"
        )));
    }
    let n = s.order();
    let mut t: Vec<BigInt> = Vec::with_capacity(n + 1);
    t.push(s0.clone());
    for k in 1..=n {
        let acc: BigInt = (1..=k).map(|i| &s.coeffs[i] * &t[k - i]).sum();
        t.push(-(s0 * acc));
    }
    Ok(TruncatedSeries { coeffs: t })
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    /// Panics on mismatched orders; use [`TruncatedSeries::try_add`] to handle that.
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("series order mismatch")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_sub(rhs).expect("series order mismatch")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series order mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reciprocal_of_one() {
        let one = TruncatedSeries::one(5);
        assert_eq!(series_reciprocal(&one).unwrap(), one);
    }

    #[test]
    fn geometric_series() {
        let s = TruncatedSeries::from_i64s(3, &[1, 1]);
        assert_eq!(
            series_reciprocal(&s).unwrap(),
            TruncatedSeries::from_i64s(3, &[1, -1, 1, -1])
        );
    }

    #[test]
    fn negative_unit_constant() {
        let s = TruncatedSeries::from_i64s(3, &[-1, 2]);
        let t = series_reciprocal(&s).unwrap();
        assert_eq!(&s * &t, TruncatedSeries::one(3));
    }

    #[test]
    fn rejects_non_unit() {
        let s = TruncatedSeries::from_i64s(3, &[2, 1]);
        assert!(matches!(series_reciprocal(&s), Err(Error::Domain(_))));
        let z = TruncatedSeries::from_i64s(3, &[0, 1]);
        assert!(series_reciprocal(&z).is_err());
    }

    #[test]
    fn factorial_series_gives_connected_counts() {
        let mut fact = BigInt::one();
        let mut coeffs = vec![BigInt::one()];
        for n in 1..=6u32 {
            fact *= n;
            coeffs.push(fact.clone());
        }
        let s = TruncatedSeries::new(6, coeffs);
        let f = TruncatedSeries::one(6).try_sub(&s.reciprocal().unwrap()).unwrap();
        assert_eq!(f, TruncatedSeries::from_i64s(6, &[0, 1, 1, 3, 13, 71, 461]));
    }

    #[test]
    fn mixed_orders_are_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn construction_truncates_and_pads() {
        let s = TruncatedSeries::from_i64s(2, &[1, 2, 3, 4, 5]);
        assert_eq!(s.coeffs().len(), 3);
        let t = TruncatedSeries::from_i64s(4, &[7]);
        assert_eq!(t.coeffs().len(), 5);
        assert_eq!(t.order(), 4);
    }

    proptest! {
        #[test]
        fn reciprocal_times_series_is_one(
            sign in prop::bool::ANY,
            tail in prop::collection::vec(-50i64..50, 0..8),
        ) {
            let order = 7;
            let mut c = vec![if sign { 1 } else { -1 }];
            c.extend(tail);
            let s = TruncatedSeries::from_i64s(order, &c);
            let t = series_reciprocal(&s).unwrap();
            prop_assert_eq!(s.try_mul(&t).unwrap(), TruncatedSeries::one(order));
        }
    }
}
