//! Dense square matrices indexed by subsets of `[n-1]`.

use crate::error::{Error, Result};
use crate::ring::{ExactInt, IntPolynomial, LaurentPolynomial, Ring, RingTag};
use crate::subset::SubsetMask;

/// A `2^(n-1) x 2^(n-1)` matrix over `R`. Row `S`, column `T`, both in
/// ascending mask order.
#[derive(Clone, PartialEq, Debug)]
pub struct SubsetMatrix<R> {
    n: usize,
    side: usize,
    entries: Vec<R>,
}

impl<R: Ring> SubsetMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        let side = side_for(n);
        Self { n, side, entries: vec![R::zero(); side * side] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, |_| R::one())
    }

    pub fn diagonal(n: usize, mut f: impl FnMut(SubsetMask) -> R) -> Self {
        let mut m = Self::zeros(n);
        for s in SubsetMask::all(n) {
            m.set(s, s, f(s));
        }
        m
    }

    /// Builds every entry from `f(S, T)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(SubsetMask, SubsetMask) -> R) -> Self {
        let side = side_for(n);
        let mut entries = Vec::with_capacity(side * side);
        for s in SubsetMask::all(n) {
            for t in SubsetMask::all(n) {
                entries.push(f(s, t));
            }
        }
        Self { n, side, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn ring(&self) -> RingTag {
        R::TAG
    }

    pub fn get(&self, s: SubsetMask, t: SubsetMask) -> &R {
        &self.entries[s.index() * self.side + t.index()]
    }

    pub fn get_idx(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.side + j]
    }

    pub fn set(&mut self, s: SubsetMask, t: SubsetMask, value: R) {
        let side = self.side;
        self.entries[s.index() * side + t.index()] = value;
    }

    pub fn entry_mut(&mut self, s: SubsetMask, t: SubsetMask) -> &mut R {
        let side = self.side;
        &mut self.entries[s.index() * side + t.index()]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.side..(i + 1) * self.side]
    }

    fn conformable(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "matrices for n = {} and n = {} are not conformable",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Exact product. Zero entries of `self` are skipped, which makes
    /// products with the (sparse) containment matrices cheap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let side = self.side;
        let mut out = vec![R::zero(); side * side];
        for i in 0..side {
            let out_row = &mut out[i * side..(i + 1) * side];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let b_row = other.row(k);
                if a.is_one() {
                    for (o, b) in out_row.iter_mut().zip(b_row) {
                        if !b.is_zero() {
                            o.add_assign_ref(b);
                        }
                    }
                } else {
                    for (o, b) in out_row.iter_mut().zip(b_row) {
                        if !b.is_zero() {
                            o.add_assign_ref(&a.mul_ref(b));
                        }
                    }
                }
            }
        }
        Ok(Self { n: self.n, side, entries: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.conformable(other)?;
        let mut out = self.clone();
        for (o, b) in out.entries.iter_mut().zip(&other.entries) {
            o.add_assign_ref(b);
        }
        Ok(out)
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&R) -> U) -> SubsetMatrix<U> {
        SubsetMatrix {
            n: self.n,
            side: self.side,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entry `(S, T)` multiplied by `(-1)^(#S + #T)`.
    pub fn sign_twisted(&self) -> Self {
        let mut out = self.clone();
        for s in SubsetMask::all(self.n) {
            for t in SubsetMask::all(self.n) {
                if (s.len() + t.len()) % 2 == 1 {
                    let e = out.entry_mut(s, t);
                    *e = e.neg_ref();
                }
            }
        }
        out
    }

    /// The matrix with entry `(S, T)` taken from `(complement S, complement T)`.
    pub fn complement_reindexed(&self) -> Self {
        Self::from_fn(self.n, |s, t| self.get(s.complement(), t.complement()).clone())
    }

    /// First `(S, T)` in row-major order where the matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(SubsetMask, SubsetMask)> {
        if self.n != other.n {
            return Some((SubsetMask::empty(self.n.max(1)), SubsetMask::empty(self.n.max(1))));
        }
        let side = self.side;
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| {
                (
                    SubsetMask::from_bits_unchecked(self.n, (k / side) as u32),
                    SubsetMask::from_bits_unchecked(self.n, (k % side) as u32),
                )
            })
    }

    /// First entry that disagrees with the identity matrix.
    pub fn first_non_identity(&self) -> Option<(SubsetMask, SubsetMask)> {
        self.first_difference(&Self::identity(self.n))
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }
}

impl SubsetMatrix<IntPolynomial> {
    /// Entrywise `q = 1` specialization.
    pub fn at_q_one(&self) -> SubsetMatrix<ExactInt> {
        self.map(|p| p.eval_at_one())
    }

    pub fn to_laurent(&self) -> SubsetMatrix<LaurentPolynomial> {
        self.map(|p| LaurentPolynomial::from(p))
    }
}

impl SubsetMatrix<LaurentPolynomial> {
    /// Entrywise substitution `q -> 1/q`.
    pub fn substitute_inverse(&self) -> Self {
        self.map(LaurentPolynomial::substitute_inverse)
    }
}

impl SubsetMatrix<ExactInt> {
    pub fn to_polynomial(&self) -> SubsetMatrix<IntPolynomial> {
        self.map(|c| IntPolynomial::constant(c.clone()))
    }

    pub fn to_laurent(&self) -> SubsetMatrix<LaurentPolynomial> {
        self.map(|c| LaurentPolynomial::monomial(c.clone(), 0))
    }

    /// Sum of all entries.
    pub fn total(&self) -> ExactInt {
        self.entries.iter().sum()
    }
}

fn side_for(n: usize) -> usize {
    assert!((1..=16).contains(&n), "matrix ambient n = {n} is out of range");
    1usize << (n - 1)
}
