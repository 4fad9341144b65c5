//! The subset-indexed matrices `M`, `D`, `Gamma`, `A`, `B`, their
//! q-analogues, and the signed closed-form inverses.
//!
//! With `S-bar = [n-1] - S`:
//!
//! * `Gamma_{ST} = #{w : C(w) = S-bar, D(w) = T}`
//! * `A_{ST} = #{w : S-bar ⊆ C(w), T ⊆ D(w)}`
//! * `B_{ST} = #{w : S-bar ⊆ C(w), T = D(w)}`
//!
//! and the q-versions weight each `w` by `q^inv(w)`. Enumeration-backed
//! matrices come from a [`Sweep`]; `A` and `A(q)` also have closed forms
//! that need no enumeration.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::{connectivity_bits, descent_bits, inversion_count, next_lex, Permutation};
use crate::ring::{q_multinomial, ExactInt, IntPolynomial, LaurentPolynomial, Ring};
use crate::subset::{eta, eta_q, z, SubsetMask, MAX_AMBIENT};
use crate::SubsetMatrix;

/// `M_{ST} = 1` if `S ⊇ T`, else 0.
pub fn zeta_matrix(n: usize) -> SubsetMatrix<ExactInt> {
    SubsetMatrix::from_fn(n, |s, t| indicator(t.is_subset_of(&s)))
}

/// `M^{-1}_{ST} = (-1)^(#S + #T) M_{ST}`.
pub fn mobius_matrix(n: usize) -> SubsetMatrix<ExactInt> {
    zeta_matrix(n).sign_twisted()
}

/// Diagonal `D_{SS} = eta(S-bar)`.
pub fn eta_diagonal(n: usize) -> SubsetMatrix<ExactInt> {
    SubsetMatrix::diagonal(n, |s| eta(&s.complement()))
}

/// Diagonal `D(q)_{SS} = eta(S-bar, q)`.
pub fn eta_q_diagonal(n: usize) -> SubsetMatrix<IntPolynomial> {
    SubsetMatrix::diagonal(n, |s| eta_q(&s.complement()))
}

/// Diagonal `Q(q)_{SS} = q^z(S)`.
pub fn z_diagonal(n: usize) -> SubsetMatrix<IntPolynomial> {
    SubsetMatrix::diagonal(n, |s| IntPolynomial::monomial(BigInt::from(1u8), z(&s)))
}

fn indicator(b: bool) -> ExactInt {
    if b {
        BigInt::from(1u8)
    } else {
        BigInt::from(0u8)
    }
}

/// Result of a single pass over `S_n`: for each observed pair
/// `(C(w), D(w))`, the histogram of `inv(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    n: usize,
    classes: BTreeMap<(u32, u32), Vec<u64>>,
}

type ClassMap = BTreeMap<(u32, u32), Vec<u64>>;

impl Sweep {
    /// Enumerates all of `S_n`. With `threads = Some(k)` the work runs on a
    /// dedicated pool of `k` threads; the merged result does not depend on
    /// the thread count.
    pub fn run(n: usize, caps: &Caps, threads: Option<usize>) -> Result<Self> {
        caps.check_enumeration(n)?;
        let classes = match threads {
            Some(0) => {
                return Err(Error::InvalidArgument("thread count must be positive".into()))
            }
            Some(1) => sweep_prefixes(n, prefixes(n).into_iter()),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?
                .install(|| sweep_parallel(n)),
            None => sweep_parallel(n),
        };
        Ok(Self { n, classes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn mask(&self, bits: u32) -> SubsetMask {
        SubsetMask::from_bits_unchecked(self.n, bits)
    }

    /// `(C(w), D(w), inv-histogram)` for every class with at least one `w`.
    pub fn classes(&self) -> impl Iterator<Item = (SubsetMask, SubsetMask, &[u64])> + '_ {
        self.classes
            .iter()
            .map(|(&(c, d), h)| (self.mask(c), self.mask(d), h.as_slice()))
    }

    pub fn total(&self) -> u64 {
        self.classes.values().flatten().sum()
    }

    /// Matrix filled by adding `weight(histogram)` at `(row(C, D), D)` for
    /// every row chosen by `rows`.
    fn accumulate<R: Ring>(
        &self,
        mut rows: impl FnMut(SubsetMask, SubsetMask) -> Vec<SubsetMask>,
        mut cols: impl FnMut(SubsetMask) -> Vec<SubsetMask>,
        weight: impl Fn(&[u64]) -> R,
    ) -> SubsetMatrix<R> {
        let mut m = SubsetMatrix::<R>::zeros(self.n);
        for (c, d, hist) in self.classes() {
            let w = weight(hist);
            for s in rows(c, d) {
                for t in cols(d) {
                    m.entry_mut(s, t).add_assign_ref(&w);
                }
            }
        }
        m
    }

    fn gamma_rows(c: SubsetMask, _d: SubsetMask) -> Vec<SubsetMask> {
        vec![c.complement()]
    }

    /// Rows `S` with `S-bar ⊆ C`, i.e. `S ⊇ C-bar`.
    fn superset_rows(c: SubsetMask, _d: SubsetMask) -> Vec<SubsetMask> {
        supersets(c.complement())
    }

    pub fn gamma(&self) -> SubsetMatrix<ExactInt> {
        self.accumulate(Self::gamma_rows, |d| vec![d], count)
    }

    pub fn gamma_q(&self) -> SubsetMatrix<IntPolynomial> {
        self.accumulate(Self::gamma_rows, |d| vec![d], IntPolynomial::from_histogram)
    }

    /// `A` counted directly: `S-bar ⊆ C(w)` and `T ⊆ D(w)`.
    pub fn a_direct(&self) -> SubsetMatrix<ExactInt> {
        self.accumulate(Self::superset_rows, subsets, count)
    }

    pub fn a_q_direct(&self) -> SubsetMatrix<IntPolynomial> {
        self.accumulate(Self::superset_rows, subsets, IntPolynomial::from_histogram)
    }

    /// `B` counted directly: `S-bar ⊆ C(w)` and `T = D(w)`.
    pub fn b_direct(&self) -> SubsetMatrix<ExactInt> {
        self.accumulate(Self::superset_rows, |d| vec![d], count)
    }

    pub fn b_q_direct(&self) -> SubsetMatrix<IntPolynomial> {
        self.accumulate(Self::superset_rows, |d| vec![d], IntPolynomial::from_histogram)
    }

    /// `B^{-1}_{ST} = (-1)^(#S+#T) #{w : C(w) = S-bar, T ⊆ D(w)}`.
    pub fn b_inverse(&self) -> SubsetMatrix<ExactInt> {
        self.accumulate(Self::gamma_rows, subsets, count).sign_twisted()
    }

    /// `B(q)^{-1}_{ST} = (-1)^(#S+#T) sum q^(-inv(w))` over the same set.
    pub fn b_q_inverse(&self) -> SubsetMatrix<LaurentPolynomial> {
        self.accumulate(Self::gamma_rows, subsets, |h| {
            LaurentPolynomial::from(IntPolynomial::from_histogram(h)).substitute_inverse()
        })
        .sign_twisted()
    }

    /// `Gamma^{-1}_{ST} = (-1)^(#S+#T) Gamma_{ST}`.
    pub fn gamma_inverse(&self) -> SubsetMatrix<ExactInt> {
        self.gamma().sign_twisted()
    }

    /// `Gamma(q)^{-1}_{ST} = (-1)^(#S+#T) Gamma(1/q)_{ST}`.
    pub fn gamma_q_inverse(&self) -> SubsetMatrix<LaurentPolynomial> {
        self.gamma_q().to_laurent().substitute_inverse().sign_twisted()
    }

    /// Number of `w` with `C(w) = S` (summed over descent sets).
    pub fn count_with_connectivity(&self, s: SubsetMask) -> u64 {
        self.classes()
            .filter(|(c, _, _)| *c == s)
            .map(|(_, _, h)| h.iter().sum::<u64>())
            .sum()
    }
}

fn count(hist: &[u64]) -> ExactInt {
    BigInt::from(hist.iter().sum::<u64>())
}

/// All supersets of `s` within `[n-1]`.
fn supersets(s: SubsetMask) -> Vec<SubsetMask> {
    subsets(s.complement())
        .into_iter()
        .map(|extra| extra.union(&s))
        .collect()
}

/// All subsets of `s`.
fn subsets(s: SubsetMask) -> Vec<SubsetMask> {
    let full = s.bits();
    let mut out = Vec::with_capacity(1 << s.len());
    let mut sub = full;
    loop {
        out.push(SubsetMask::from_bits_unchecked(s.n(), sub));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & full;
    }
    out
}

/// Work units: the first two letters of the permutation (or just the first
/// when `n < 3`).
fn prefixes(n: usize) -> Vec<Vec<u8>> {
    let n8 = n as u8;
    if n < 3 {
        return (1..=n8).map(|a| vec![a]).collect();
    }
    (1..=n8)
        .flat_map(|a| (1..=n8).filter(move |&b| b != a).map(move |b| vec![a, b]))
        .collect()
}

fn sweep_parallel(n: usize) -> ClassMap {
    prefixes(n)
        .into_par_iter()
        .map(|p| sweep_prefixes(n, std::iter::once(p)))
        .reduce(ClassMap::new, merge)
}

fn merge(mut a: ClassMap, b: ClassMap) -> ClassMap {
    for (key, hist) in b {
        match a.get_mut(&key) {
            Some(existing) => {
                for (x, y) in existing.iter_mut().zip(hist) {
                    *x += y;
                }
            }
            None => {
                a.insert(key, hist);
            }
        }
    }
    a
}

/// Visits every permutation starting with one of `prefixes`, in
/// lexicographic order within each prefix.
fn sweep_prefixes(n: usize, prefixes: impl Iterator<Item = Vec<u8>>) -> ClassMap {
    let max_inv = n * (n - 1) / 2;
    let mut classes = ClassMap::new();
    for prefix in prefixes {
        let k = prefix.len();
        let mut word = prefix.clone();
        word.extend((1..=n as u8).filter(|v| !prefix.contains(v)));
        loop {
            let key = (connectivity_bits(&word), descent_bits(&word));
            let hist = classes.entry(key).or_insert_with(|| vec![0; max_inv + 1]);
            hist[inversion_count(&word)] += 1;
            if !next_lex(&mut word[k..]) {
                break;
            }
        }
    }
    classes
}

/// `Gamma` from one enumeration pass.
pub fn gamma_matrix(n: usize, caps: &Caps) -> Result<SubsetMatrix<ExactInt>> {
    Ok(Sweep::run(n, caps, None)?.gamma())
}

/// `Gamma(q)` from one enumeration pass.
pub fn gamma_q_matrix(n: usize, caps: &Caps) -> Result<SubsetMatrix<IntPolynomial>> {
    Ok(Sweep::run(n, caps, None)?.gamma_q())
}

fn binomial_table() -> &'static Vec<Vec<ExactInt>> {
    static TABLE: OnceLock<Vec<Vec<ExactInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<ExactInt>> = vec![vec![BigInt::from(1u8)]];
        for m in 1..=MAX_AMBIENT {
            let prev = &rows[m - 1];
            let row = (0..=m)
                .map(|k| {
                    let left = if k > 0 { prev[k - 1].clone() } else { BigInt::from(0u8) };
                    let right = prev.get(k).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            rows.push(row);
        }
        rows
    })
}

/// Multinomial coefficient as a product of binomials from Pascal's
/// triangle, so no division is involved.
fn multinomial(parts: &[usize]) -> ExactInt {
    let table = binomial_table();
    let mut total = 0;
    let mut out = BigInt::from(1u8);
    for &p in parts {
        total += p;
        out *= &table[total][p];
    }
    out
}

/// For `fine ⊇ coarse`, the gap lengths of `fine` grouped by the blocks that
/// `coarse` cuts `[n]` into.
fn block_parts(coarse: SubsetMask, fine: SubsetMask) -> Vec<Vec<usize>> {
    debug_assert!(coarse.is_subset_of(&fine));
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    let mut last = 0;
    for i in fine.elements().into_iter().chain(std::iter::once(fine.n())) {
        current.push(i - last);
        last = i;
        if i == fine.n() || coarse.contains(i) {
            blocks.push(std::mem::take(&mut current));
        }
    }
    blocks
}

/// Closed form of `A`: zero unless `S-bar ∩ T = ∅`; otherwise, for each
/// block between consecutive elements of `S-bar`, the multinomial coefficient
/// of the block length over the gaps of `T-bar` inside it, multiplied over
/// all blocks. This equals `eta(S-bar) / eta(T-bar)`.
pub fn a_matrix_closed(n: usize, caps: &Caps) -> Result<SubsetMatrix<ExactInt>> {
    caps.check_closed_form(n)?;
    Ok(SubsetMatrix::from_fn(n, |s, t| {
        let s_bar = s.complement();
        if !s_bar.is_disjoint(&t) {
            return BigInt::from(0u8);
        }
        block_parts(s_bar, t.complement())
            .iter()
            .map(|parts| multinomial(parts))
            .product()
    }))
}

/// Closed form of `A(q)`: `q^z(T)` times the product over blocks of
/// q-multinomial coefficients.
pub fn a_q_matrix_closed(n: usize, caps: &Caps) -> Result<SubsetMatrix<IntPolynomial>> {
    caps.check_closed_form(n)?;
    let mut m = SubsetMatrix::zeros(n);
    for s in SubsetMask::all(n) {
        let s_bar = s.complement();
        for t in SubsetMask::all(n) {
            if !s_bar.is_disjoint(&t) {
                continue;
            }
            let mut entry = IntPolynomial::monomial(BigInt::from(1u8), z(&t));
            for parts in block_parts(s_bar, t.complement()) {
                let len = parts.iter().sum();
                entry = &entry * &q_multinomial(len, &parts)?;
            }
            m.set(s, t, entry);
        }
    }
    Ok(m)
}

/// `M Gamma M`.
pub fn a_matrix_from_gamma<R: Ring>(
    gamma: &SubsetMatrix<R>,
    zeta: &SubsetMatrix<R>,
) -> Result<SubsetMatrix<R>> {
    zeta.mul(gamma)?.mul(zeta)
}

/// `M Gamma`.
pub fn b_matrix<R: Ring>(gamma: &SubsetMatrix<R>, zeta: &SubsetMatrix<R>) -> Result<SubsetMatrix<R>> {
    zeta.mul(gamma)
}

/// `D M D^{-1}`, computed entrywise as `D_SS M_ST / D_TT`.
///
/// Panics if a quotient is not an integer.
pub fn eta_conjugate(n: usize) -> SubsetMatrix<ExactInt> {
    SubsetMatrix::from_fn(n, |s, t| {
        if !t.is_subset_of(&s) {
            return BigInt::from(0u8);
        }
        let num = eta(&s.complement());
        let den = eta(&t.complement());
        assert!(
            num_traits::Zero::is_zero(&(&num % &den)),
            "eta({}) / eta({}) is not an integer",
            s.complement(),
            t.complement()
        );
        num / den
    })
}

/// `D(q) M D(q)^{-1} Q(q)`, computed entrywise as
/// `eta(S-bar, q) M_ST q^z(T) / eta(T-bar, q)`.
///
/// Panics if a polynomial quotient leaves a remainder.
pub fn eta_q_conjugate(n: usize) -> SubsetMatrix<IntPolynomial> {
    SubsetMatrix::from_fn(n, |s, t| {
        if !t.is_subset_of(&s) {
            return IntPolynomial::zero();
        }
        let num = eta_q(&s.complement());
        let den = eta_q(&t.complement());
        let quot = num
            .div_exact(&den)
            .unwrap_or_else(|| panic!("eta_q({}) / eta_q({}) leaves a remainder", s.complement(), t.complement()));
        quot.shift(z(&t))
    })
}

/// Which matrix an inverse formula is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseKind {
    A,
    B,
    Gamma,
}

impl InverseKind {
    pub const ALL: [InverseKind; 3] = [InverseKind::A, InverseKind::B, InverseKind::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::A => "A",
            InverseKind::B => "B",
            InverseKind::Gamma => "Gamma",
        }
    }
}

fn verify_inverse<R: Ring>(
    label: &str,
    matrix: &SubsetMatrix<R>,
    inverse: &SubsetMatrix<R>,
) -> Result<()> {
    for (side, product) in [("X·X⁻¹", matrix.mul(inverse)?), ("X⁻¹·X", inverse.mul(matrix)?)] {
        if let Some((s, t)) = product.first_non_identity() {
            return Err(Error::IdentityViolated(format!(
                "{label}: {side} differs from the identity at n = {}, S = {s}, T = {t}",
                matrix.n()
            )));
        }
    }
    Ok(())
}

/// Signed closed-form inverse of `A`, `B` or `Gamma`, checked against the
/// matrix it inverts.
pub fn inverse_closed(
    kind: InverseKind,
    sweep: &Sweep,
    caps: &Caps,
) -> Result<SubsetMatrix<ExactInt>> {
    let n = sweep.n();
    let (matrix, inverse) = match kind {
        InverseKind::A => {
            let a = a_matrix_closed(n, caps)?;
            let inv = a.sign_twisted();
            (a, inv)
        }
        InverseKind::B => (sweep.b_direct(), sweep.b_inverse()),
        InverseKind::Gamma => (sweep.gamma(), sweep.gamma_inverse()),
    };
    verify_inverse(kind.name(), &matrix, &inverse)?;
    Ok(inverse)
}

/// q-analogue of [`inverse_closed`]; the inverses live over the Laurent ring.
pub fn inverse_q_closed(
    kind: InverseKind,
    sweep: &Sweep,
    caps: &Caps,
) -> Result<SubsetMatrix<LaurentPolynomial>> {
    let n = sweep.n();
    let (matrix, inverse) = match kind {
        InverseKind::A => {
            let a = a_q_matrix_closed(n, caps)?.to_laurent();
            let inv = a.substitute_inverse().sign_twisted();
            (a, inv)
        }
        InverseKind::B => (sweep.b_q_direct().to_laurent(), sweep.b_q_inverse()),
        InverseKind::Gamma => (sweep.gamma_q().to_laurent(), sweep.gamma_q_inverse()),
    };
    verify_inverse(kind.name(), &matrix, &inverse)?;
    Ok(inverse)
}

/// Entry `(S, T)`: the number of rearrangements `u` of `N_T` with `C(u) = S`.
pub fn multiset_count_matrix(n: usize, caps: &Caps) -> Result<SubsetMatrix<ExactInt>> {
    caps.check_enumeration(n)?;
    let mut m = SubsetMatrix::zeros(n);
    for t in SubsetMask::all(n) {
        for u in crate::perm::build_multiset_word_universe(&t, caps)? {
            let s = crate::perm::multiset_connectivity_set(&u);
            *m.entry_mut(s, t) += 1;
        }
    }
    Ok(m)
}

/// The permutations with `S-bar ⊆ C(w)` and `T ⊆ D(w)`, in lexicographic order.
pub fn a_witnesses(s: SubsetMask, t: SubsetMask, caps: &Caps) -> Result<Vec<Permutation>> {
    let s_bar = s.complement();
    Ok(crate::perm::enumerate_permutations(s.n(), caps)?
        .filter(|w| {
            s_bar.is_subset_of(&crate::perm::connectivity_set(w))
                && t.is_subset_of(&crate::perm::descent_set(w))
        })
        .collect())
}

/// The permutations with `C(w) = S-bar` and `D(w) = T`, in lexicographic order.
pub fn gamma_witnesses(s: SubsetMask, t: SubsetMask, caps: &Caps) -> Result<Vec<Permutation>> {
    let s_bar = s.complement();
    Ok(crate::perm::enumerate_permutations(s.n(), caps)?
        .filter(|w| crate::perm::connectivity_set(w) == s_bar && crate::perm::descent_set(w) == t)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_permutations, inversions, Word};

    fn set(n: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(n, e).unwrap()
    }

    fn int(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn zeta_and_mobius() {
        assert_eq!(zeta_matrix(1), SubsetMatrix::identity(1));
        assert_eq!(mobius_matrix(1), SubsetMatrix::identity(1));
        let m = zeta_matrix(3);
        assert_eq!(m.get(set(3, &[1, 2]), set(3, &[2])), &int(1));
        assert_eq!(m.get(set(3, &[1]), set(3, &[2])), &int(0));
        let full = SubsetMask::full(4);
        assert!(SubsetMask::all(4).all(|t| zeta_matrix(4).get(full, t) == &int(1)));
        assert_eq!(mobius_matrix(3).get(set(3, &[1, 2]), set(3, &[1])), &int(-1));
        let prod = zeta_matrix(5).mul(&mobius_matrix(5)).unwrap();
        assert_eq!(prod, SubsetMatrix::identity(5));
    }

    #[test]
    fn gamma_entries() {
        let caps = Caps::default();
        let g4 = gamma_matrix(4, &caps).unwrap();
        assert_eq!(g4.get(set(4, &[2, 3]), set(4, &[3])), &int(1));
        let g5 = gamma_matrix(5, &caps).unwrap();
        assert_eq!(g5.get(set(5, &[1, 2, 3]), set(5, &[1, 3])), &int(4));
        assert_eq!(g5.get(SubsetMask::full(5), set(5, &[1, 3])), &int(10));
        let witnesses = gamma_witnesses(set(4, &[2, 3]), set(4, &[3]), &caps).unwrap();
        assert_eq!(witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["1342"]);
        assert!(matches!(gamma_matrix(11, &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn gamma_q_weights_by_inversions() {
        let caps = Caps::default();
        let gq = gamma_q_matrix(4, &caps).unwrap();
        // 1342 has two inversions
        assert_eq!(
            gq.get(set(4, &[2, 3]), set(4, &[3])),
            &IntPolynomial::monomial(int(1), 2)
        );
        assert_eq!(gq.at_q_one(), gamma_matrix(4, &caps).unwrap());
    }

    #[test]
    fn closed_form_a_entries() {
        let caps = Caps::default();
        let a = a_matrix_closed(4, &caps).unwrap();
        assert_eq!(a.get(set(4, &[2, 3]), set(4, &[3])), &int(3));
        for n in 1..=6 {
            let a = a_matrix_closed(n, &caps).unwrap();
            assert_eq!(a.get(SubsetMask::full(n), SubsetMask::empty(n)), &crate::subset::factorial(n));
            for s in SubsetMask::all(n) {
                assert_eq!(a.get(s, s), &int(1));
            }
        }
        let witnesses = a_witnesses(set(4, &[2, 3]), set(4, &[3]), &caps).unwrap();
        let names: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["1243", "1342", "1432"]);
        assert!(a_matrix_closed(15, &caps).is_err());
    }

    /// `eta(S-bar) / eta(T-bar)` with an exactness check, independent of the
    /// block-multinomial assembly.
    #[test]
    fn closed_form_a_matches_eta_ratio() {
        let caps = Caps::default();
        for n in 1..=9 {
            let a = a_matrix_closed(n, &caps).unwrap();
            for s in SubsetMask::all(n) {
                for t in SubsetMask::all(n) {
                    let expect = if s.complement().is_disjoint(&t) {
                        let num = eta(&s.complement());
                        let den = eta(&t.complement());
                        assert_eq!(&num % &den, int(0));
                        num / den
                    } else {
                        int(0)
                    };
                    assert_eq!(a.get(s, t), &expect, "n={n} S={s} T={t}");
                }
            }
        }
    }

    #[test]
    fn closed_form_a_q_entries() {
        let caps = Caps::default();
        let aq = a_q_matrix_closed(4, &caps).unwrap();
        // oracle: 1243, 1342, 1432 have 1, 2, 3 inversions
        let oracle: IntPolynomial = a_witnesses(set(4, &[2, 3]), set(4, &[3]), &caps)
            .unwrap()
            .iter()
            .map(|w| IntPolynomial::monomial(int(1), inversions(w)))
            .fold(IntPolynomial::zero(), |acc, p| &acc + &p);
        assert_eq!(oracle, IntPolynomial::from_i64s(&[0, 1, 1, 1]));
        assert_eq!(aq.get(set(4, &[2, 3]), set(4, &[3])), &oracle);
        assert!(aq.get(set(4, &[2]), set(4, &[1])).is_zero());
        assert_eq!(aq.at_q_one(), a_matrix_closed(4, &caps).unwrap());
    }

    /// Every entry of `A(q)` against a brute-force sum of `q^inv(w)`.
    #[test]
    fn closed_form_a_q_matches_brute_force() {
        let caps = Caps::default();
        for n in 1..=5 {
            let aq = a_q_matrix_closed(n, &caps).unwrap();
            let perms: Vec<_> = enumerate_permutations(n, &caps).unwrap().collect();
            for s in SubsetMask::all(n) {
                for t in SubsetMask::all(n) {
                    let mut hist = vec![0u64; n * (n - 1) / 2 + 1];
                    for w in &perms {
                        if s.complement().is_subset_of(&crate::perm::connectivity_set(w))
                            && t.is_subset_of(&crate::perm::descent_set(w))
                        {
                            hist[inversions(w)] += 1;
                        }
                    }
                    assert_eq!(aq.get(s, t), &IntPolynomial::from_histogram(&hist));
                }
            }
        }
    }

    #[test]
    fn b_entries_and_routes() {
        let caps = Caps::default();
        let sweep = Sweep::run(3, &caps, None).unwrap();
        let b = sweep.b_direct();
        assert_eq!(b.get(set(3, &[1, 2]), set(3, &[1])), &int(2));
        assert_eq!(b.get(SubsetMask::empty(3), SubsetMask::empty(3)), &int(1));
        for n in 1..=6 {
            let sweep = Sweep::run(n, &caps, None).unwrap();
            let mg = b_matrix(&sweep.gamma(), &zeta_matrix(n)).unwrap();
            let am = a_matrix_closed(n, &caps).unwrap().mul(&mobius_matrix(n)).unwrap();
            assert_eq!(mg, sweep.b_direct());
            assert_eq!(am, sweep.b_direct());
        }
    }

    #[test]
    fn a_from_gamma() {
        let caps = Caps::default();
        let one = SubsetMatrix::<ExactInt>::identity(1);
        assert_eq!(a_matrix_from_gamma(&one, &one).unwrap(), one);
        for n in 1..=6 {
            let sweep = Sweep::run(n, &caps, None).unwrap();
            let mgm = a_matrix_from_gamma(&sweep.gamma(), &zeta_matrix(n)).unwrap();
            assert_eq!(mgm, a_matrix_closed(n, &caps).unwrap());
            assert_eq!(mgm, sweep.a_direct());
        }
        assert!(a_matrix_from_gamma(&zeta_matrix(3), &zeta_matrix(4)).is_err());
    }

    #[test]
    fn conjugations() {
        let caps = Caps::default();
        for n in 1..=6 {
            assert_eq!(eta_conjugate(n), a_matrix_closed(n, &caps).unwrap());
            assert_eq!(eta_q_conjugate(n), a_q_matrix_closed(n, &caps).unwrap());
        }
        let dq = eta_q_diagonal(3);
        assert_eq!(dq.get(SubsetMask::full(3), SubsetMask::full(3)), &IntPolynomial::from_i64s(&[1, 2, 2, 1]));
        assert_eq!(eta_diagonal(4).get(set(4, &[2, 3]), set(4, &[2, 3])), &int(6));
        assert_eq!(z_diagonal(4).get(SubsetMask::full(4), SubsetMask::full(4)), &IntPolynomial::monomial(int(1), 6));
    }

    #[test]
    fn gamma_inverse_entry() {
        let caps = Caps::default();
        let sweep = Sweep::run(4, &caps, None).unwrap();
        let inv = inverse_closed(InverseKind::Gamma, &sweep, &caps).unwrap();
        assert_eq!(inv.get(SubsetMask::full(4), set(4, &[1, 3])), &int(-4));
    }

    #[test]
    fn inverses_at_n_one() {
        let caps = Caps::default();
        let sweep = Sweep::run(1, &caps, None).unwrap();
        for kind in InverseKind::ALL {
            assert_eq!(inverse_closed(kind, &sweep, &caps).unwrap(), SubsetMatrix::identity(1));
            assert_eq!(inverse_q_closed(kind, &sweep, &caps).unwrap(), SubsetMatrix::identity(1));
        }
    }

    #[test]
    fn q_inverses_multiply_to_identity() {
        let caps = Caps::default();
        for n in 1..=5 {
            let sweep = Sweep::run(n, &caps, None).unwrap();
            for kind in InverseKind::ALL {
                inverse_q_closed(kind, &sweep, &caps).unwrap();
            }
        }
    }

    #[test]
    fn wrong_sign_is_detected() {
        let caps = Caps::default();
        let a = a_matrix_closed(3, &caps).unwrap();
        // unsigned A is not its own inverse
        let err = verify_inverse("A", &a, &a).unwrap_err();
        assert!(matches!(err, Error::IdentityViolated(_)));
    }

    #[test]
    fn multiset_counts() {
        let caps = Caps::default();
        let m = multiset_count_matrix(3, &caps).unwrap();
        assert_eq!(m.get(set(3, &[1]), set(3, &[1])), &int(1));
        assert_eq!(m.get(SubsetMask::empty(3), set(3, &[1])), &int(2));
        // T = [n-1]: N_T is a set, so the column counts S_n by C(w)
        for n in 1..=5 {
            let m = multiset_count_matrix(n, &caps).unwrap();
            let sweep = Sweep::run(n, &caps, None).unwrap();
            for s in SubsetMask::all(n) {
                let expect = int(sweep.count_with_connectivity(s) as i64);
                assert_eq!(m.get(s, SubsetMask::full(n)), &expect);
            }
        }
    }

    #[test]
    fn gamma_totals_and_support() {
        let caps = Caps::default();
        for n in 1..=7 {
            let sweep = Sweep::run(n, &caps, None).unwrap();
            let g = sweep.gamma();
            assert_eq!(g.total(), crate::subset::factorial(n));
            assert_eq!(sweep.total() as usize, (1..=n).product::<usize>());
            for s in SubsetMask::all(n) {
                for t in SubsetMask::all(n) {
                    if !s.complement().is_disjoint(&t) {
                        assert!(Ring::is_zero(g.get(s, t)));
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_complement_symmetry() {
        let caps = Caps::default();
        for n in 1..=7 {
            let g = gamma_matrix(n, &caps).unwrap();
            for s in SubsetMask::all(n) {
                for t in SubsetMask::all(n) {
                    assert_eq!(g.get(s.reflect(), t.reflect()), g.get(s, t));
                }
            }
        }
    }

    #[test]
    fn sweep_is_independent_of_threads() {
        let caps = Caps::default();
        let base = Sweep::run(7, &caps, Some(1)).unwrap();
        for threads in [2, 3, 8] {
            assert_eq!(Sweep::run(7, &caps, Some(threads)).unwrap(), base);
        }
        assert_eq!(Sweep::run(7, &caps, None).unwrap(), base);
        assert!(Sweep::run(3, &caps, Some(0)).is_err());
    }

    #[test]
    fn sweep_agrees_with_per_permutation_statistics() {
        let caps = Caps::default();
        let n = 6;
        let sweep = Sweep::run(n, &caps, None).unwrap();
        let mut expect: BTreeMap<(u32, u32), Vec<u64>> = BTreeMap::new();
        for w in enumerate_permutations(n, &caps).unwrap() {
            let key = (connectivity_bits(w.letters()), descent_bits(w.letters()));
            expect.entry(key).or_insert_with(|| vec![0; 16])[inversions(&w)] += 1;
        }
        assert_eq!(sweep.classes, expect);
    }

    #[test]
    fn block_parts_groups_gaps() {
        // coarse {2} cuts [5] into [1,2] and [3,5]; fine {1,2,4} gaps 1,1,2,1
        let blocks = block_parts(set(5, &[2]), set(5, &[1, 2, 4]));
        assert_eq!(blocks, vec![vec![1, 1], vec![2, 1]]);
        assert_eq!(multinomial(&[2, 1]), int(3));
        assert_eq!(multinomial(&[2, 2, 1]), int(30));
    }
}
