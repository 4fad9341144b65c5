//! Subsets of `[n-1]` as bitmasks, compositions of `n`, and the weights
//! `eta(S)`, `eta(S, q)` and `z(T)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{q_factorial, ExactInt, IntPolynomial};

/// Largest ambient `n` a mask can describe (width `n-1` must fit in `u32`).
pub const MAX_AMBIENT: usize = 32;

/// A subset `S` of `[n-1] = {1, ..., n-1}`.
///
/// Bit `i-1` is set iff `i` is in `S`. The mask carries `n` because `eta`
/// and complements depend on it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubsetMask {
    n: u8,
    bits: u32,
}

impl SubsetMask {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_AMBIENT {
            return Err(Error::InvalidArgument(format!(
                "ambient n must be in 1..={MAX_AMBIENT}, got {n}"
            )));
        }
        if bits & !width_mask(n) != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {bits:#b} does not fit in [{}]",
                n - 1
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    /// Internal constructor for masks already known to fit.
    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !width_mask(n) == 0);
        Self { n: n as u8, bits }
    }

    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        let mut bits = 0;
        for &i in elements {
            if i == 0 || i >= n {
                return Err(Error::InvalidArgument(format!(
                    "element {i} is not in [{}]",
                    n - 1
                )));
            }
            bits |= 1 << (i - 1);
        }
        Self::new(n, bits)
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, 0).expect("valid ambient size")
    }

    pub fn full(n: usize) -> Self {
        Self::new(n, width_mask(n)).expect("valid ambient size")
    }

    /// All `2^(n-1)` subsets in ascending mask order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        let full = width_mask(n);
        (0..=full).map(move |bits| SubsetMask::from_bits_unchecked(n, bits))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Position of this subset in the canonical (ascending mask) order.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n() && self.bits >> (i - 1) & 1 == 1
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.contains(i)).collect()
    }

    /// `[n-1] - S`.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            bits: !self.bits & width_mask(self.n()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits & other.bits }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Image under `i -> n - i`.
    pub fn reflect(&self) -> Self {
        let n = self.n();
        let bits = self
            .elements()
            .into_iter()
            .fold(0u32, |acc, i| acc | 1 << (n - i - 1));
        Self { n: self.n, bits }
    }

    /// Parses `{}` / `{1,3}` (braces optional, whitespace ignored).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(inner);
        let mut elements = Vec::new();
        let mut offset = 0;
        for piece in inner.split(',') {
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                let i = trimmed.parse::<usize>().map_err(|_| Error::Parse {
                    position: offset,
                    message: format!("{trimmed:?} is not an element"),
                })?;
                elements.push(i);
            }
            offset += piece.len() + 1;
        }
        Self::from_elements(n, &elements)
    }

    /// Order used by printed tables: by size, then lexicographically by the
    /// sorted element list.
    pub fn cmp_size_lex(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.elements().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

fn width_mask(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        u32::MAX >> (33 - n)
    }
}

/// All subsets of `[n-1]` sorted by size, then lexicographically.
pub fn size_lex_order(n: usize) -> Vec<SubsetMask> {
    let mut v: Vec<_> = SubsetMask::all(n).collect();
    v.sort_by(SubsetMask::cmp_size_lex);
    v
}

/// A composition of `n`: nonempty list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "composition parts must be nonempty and positive, got {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Gap lengths of `S = {i_1 < ... < i_k}`: `(i_1, i_2 - i_1, ..., n - i_k)`.
pub fn subset_to_composition(s: &SubsetMask) -> Composition {
    let mut parts = Vec::with_capacity(s.len() + 1);
    let mut last = 0;
    for i in s.elements() {
        parts.push(i - last);
        last = i;
    }
    parts.push(s.n() - last);
    Composition { parts }
}

/// Partial sums `{a_1, a_1 + a_2, ..., a_1 + ... + a_{k-1}}`.
pub fn composition_to_subset(alpha: &Composition) -> Result<SubsetMask> {
    let n = alpha.n();
    let mut acc = 0;
    let elements: Vec<usize> = alpha.parts[..alpha.parts.len() - 1]
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    SubsetMask::from_elements(n, &elements)
}

fn factorial_table() -> &'static [ExactInt] {
    static TABLE: OnceLock<Vec<ExactInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![BigInt::one()];
        for i in 1..=MAX_AMBIENT {
            let next = &t[i - 1] * i;
            t.push(next);
        }
        t
    })
}

/// `k!` for `k <= 32`.
pub fn factorial(k: usize) -> ExactInt {
    factorial_table()[k].clone()
}

/// `eta(S)`: product of the factorials of the gap lengths of `S`.
pub fn eta(s: &SubsetMask) -> ExactInt {
    subset_to_composition(s)
        .parts()
        .iter()
        .map(|&p| factorial(p))
        .product()
}

/// `eta(S, q)`: the same product in q-factorials.
pub fn eta_q(s: &SubsetMask) -> IntPolynomial {
    subset_to_composition(s)
        .parts()
        .iter()
        .map(|&p| q_factorial(p))
        .product()
}

/// `z(T) = sum binom(part, 2)` over the gap lengths of the complement of `T`.
pub fn z(t: &SubsetMask) -> usize {
    subset_to_composition(&t.complement())
        .parts()
        .iter()
        .map(|&p| p * (p - 1) / 2)
        .sum()
}

/// `#{w : S ⊆ C(w)}`, which equals `eta(S)`.
pub fn count_connectivity_superset(s: &SubsetMask) -> ExactInt {
    eta(s)
}

/// `#{w : D(w) ⊆ S}`, which equals `n! / eta(S)`.
pub fn count_descent_subset(s: &SubsetMask) -> ExactInt {
    let total = factorial(s.n());
    let e = eta(s);
    assert!(
        (&total % &e) == BigInt::from(0),
        "eta({s}) does not divide {}!",
        s.n()
    );
    total / e
}
