//! Permutations and multiset words in one-line notation, their statistics,
//! and lexicographic enumerators.
//!
//! Statistic positions are 1-based; a set of positions is returned as a
//! [`SubsetMask`] over `[n-1]`.

use std::fmt;
use std::str::FromStr;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::subset::{subset_to_composition, Composition, SubsetMask, MAX_AMBIENT};

/// Anything with a one-line word `a_1 ... a_n`.
pub trait Word {
    fn letters(&self) -> &[u8];

    fn len(&self) -> usize {
        self.letters().len()
    }

    fn is_empty(&self) -> bool {
        self.letters().is_empty()
    }
}

/// A permutation `w = a_1 ... a_n` of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n == 0 || n > MAX_AMBIENT {
            return Err(Error::InvalidArgument(format!(
                "permutation length must be in 1..={MAX_AMBIENT}, got {n}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for (pos, &a) in word.iter().enumerate() {
            let a = a as usize;
            if a == 0 || a > n {
                return Err(Error::Parse {
                    position: pos + 1,
                    message: format!("value {a} is outside 1..={n}"),
                });
            }
            if seen[a] {
                return Err(Error::Parse {
                    position: pos + 1,
                    message: format!("value {a} repeats"),
                });
            }
            seen[a] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        Self { word: (1..=n as u8).collect() }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &a) in self.word.iter().enumerate() {
            inv[a as usize - 1] = i as u8 + 1;
        }
        Self { word: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &a)| a as usize == i + 1)
    }
}

impl Word for Permutation {
    fn letters(&self) -> &[u8] {
        &self.word
    }
}

/// Concatenated digits for `n <= 9`, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word, self.n() <= 9)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `1342` or `10,3,1,...`. Error positions are 1-based.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty permutation".into() });
        }
        let word = if s.contains(',') {
            s.split(',')
                .enumerate()
                .map(|(k, piece)| {
                    piece.trim().parse::<u8>().map_err(|_| Error::Parse {
                        position: k + 1,
                        message: format!("{:?} is not a number", piece.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(k, ch)| {
                    ch.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::Parse {
                        position: k + 1,
                        message: format!("{ch:?} is not a digit"),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(word)
    }
}

/// A word over positive integers, repeats allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MultisetWord {
    word: Vec<u8>,
}

impl MultisetWord {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        if word.is_empty() || word.len() > MAX_AMBIENT {
            return Err(Error::InvalidArgument(format!(
                "word length must be in 1..={MAX_AMBIENT}, got {}",
                word.len()
            )));
        }
        if let Some(pos) = word.iter().position(|&a| a == 0) {
            return Err(Error::Parse {
                position: pos + 1,
                message: "letters must be positive".into(),
            });
        }
        Ok(Self { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }
}

impl Word for MultisetWord {
    fn letters(&self) -> &[u8] {
        &self.word
    }
}

impl fmt::Display for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.word.iter().all(|&a| a <= 9);
        write_word(f, &self.word, compact)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[u8], compact: bool) -> fmt::Result {
    for (k, a) in word.iter().enumerate() {
        if k > 0 && !compact {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Bitmask of `{i : a_i > a_{i+1}}`.
pub(crate) fn descent_bits(word: &[u8]) -> u32 {
    word.windows(2)
        .enumerate()
        .fold(0, |acc, (i, w)| if w[0] > w[1] { acc | 1 << i } else { acc })
}

/// Bitmask of `{i : max(a_1..a_i) < min(a_{i+1}..a_n)}`.
pub(crate) fn connectivity_bits(word: &[u8]) -> u32 {
    let n = word.len();
    if n < 2 {
        return 0;
    }
    let mut suffix_min = vec![u8::MAX; n];
    suffix_min[n - 1] = word[n - 1];
    for i in (0..n - 1).rev() {
        suffix_min[i] = suffix_min[i + 1].min(word[i]);
    }
    let mut bits = 0;
    let mut prefix_max = 0u8;
    for i in 0..n - 1 {
        prefix_max = prefix_max.max(word[i]);
        if prefix_max < suffix_min[i + 1] {
            bits |= 1 << i;
        }
    }
    bits
}

pub(crate) fn inversion_count(word: &[u8]) -> usize {
    let mut count = 0;
    for (i, &a) in word.iter().enumerate() {
        count += word[i + 1..].iter().filter(|&&b| a > b).count();
    }
    count
}

/// `D(w) = {i : a_i > a_{i+1}}`.
pub fn descent_set(w: &impl Word) -> SubsetMask {
    SubsetMask::from_bits_unchecked(w.len(), descent_bits(w.letters()))
}

/// `C(w) = {i : a_j < a_k for all j <= i < k}`.
pub fn connectivity_set(w: &Permutation) -> SubsetMask {
    SubsetMask::from_bits_unchecked(w.n(), connectivity_bits(w.letters()))
}

/// Connectivity set of a multiset word; the comparison stays strict, so
/// equal letters on both sides of a cut block it.
pub fn multiset_connectivity_set(w: &MultisetWord) -> SubsetMask {
    SubsetMask::from_bits_unchecked(w.n(), connectivity_bits(w.letters()))
}

/// `inv(w) = #{(i, j) : i < j, a_i > a_j}`.
pub fn inversions(w: &impl Word) -> usize {
    inversion_count(w.letters())
}

/// `co(w)`: the composition of `n` cut at the descents of `w`.
pub fn descent_composition(w: &Permutation) -> Composition {
    subset_to_composition(&descent_set(w))
}

/// Rearranges `word` into its lexicographic successor; returns `false` (and
/// leaves `word` sorted descending) when it is already the last one.
/// Works for words with repeated letters.
pub(crate) fn next_lex(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Lexicographic enumeration of all rearrangements of a starting word.
#[derive(Debug, Clone)]
pub struct LexWords {
    next: Option<Vec<u8>>,
}

impl LexWords {
    fn from_sorted(word: Vec<u8>) -> Self {
        Self { next: Some(word) }
    }
}

impl Iterator for LexWords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All `n!` permutations of `[n]` in lexicographic order.
pub fn enumerate_permutations(
    n: usize,
    caps: &Caps,
) -> Result<impl Iterator<Item = Permutation>> {
    caps.check_enumeration(n)?;
    Ok(LexWords::from_sorted((1..=n as u8).collect()).map(|word| Permutation { word }))
}

/// `N_T = {1^{i_1}, 2^{i_2 - i_1}, ..., (k+1)^{n - i_k}}` as a sorted word.
pub fn multiset_of(t: &SubsetMask) -> Vec<u8> {
    subset_to_composition(t)
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(letter, &len)| std::iter::repeat_n(letter as u8 + 1, len))
        .collect()
}

/// All distinct rearrangements of `N_T` in lexicographic order.
pub fn build_multiset_word_universe(
    t: &SubsetMask,
    caps: &Caps,
) -> Result<impl Iterator<Item = MultisetWord>> {
    caps.check_enumeration(t.n())?;
    Ok(LexWords::from_sorted(multiset_of(t)).map(|word| MultisetWord { word }))
}

/// Replaces, in `w^{-1}`, the values `1..=i_1` by 1, `i_1+1..=i_2` by 2, and
/// so on, where `T = {i_1 < ... < i_k}`.
pub fn reduce_to_multiset(w: &Permutation, t: &SubsetMask) -> Result<MultisetWord> {
    if t.n() != w.n() {
        return Err(Error::Dimension(format!(
            "subset lives in [{}] but the permutation has n = {}",
            t.n() - 1,
            w.n()
        )));
    }
    // block[v - 1] is the letter replacing value v
    let block = multiset_of(t);
    let word = w
        .inverse()
        .word
        .iter()
        .map(|&v| block[v as usize - 1])
        .collect();
    Ok(MultisetWord { word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(n: usize, e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(n, e).unwrap()
    }

    fn ms(word: &[u8]) -> MultisetWord {
        MultisetWord::new(word.to_vec()).unwrap()
    }

    fn reversal(n: usize) -> Permutation {
        Permutation::new((1..=n as u8).rev().collect()).unwrap()
    }

    #[test]
    fn descent_sets() {
        assert_eq!(descent_set(&perm("1342")), set(4, &[3]));
        assert_eq!(descent_set(&Permutation::identity(6)), SubsetMask::empty(6));
        assert_eq!(descent_set(&reversal(6)), SubsetMask::full(6));
    }

    #[test]
    fn connectivity_sets() {
        assert_eq!(connectivity_set(&perm("1342")), set(4, &[1]));
        assert_eq!(connectivity_set(&Permutation::identity(6)), SubsetMask::full(6));
        assert_eq!(connectivity_set(&perm("4123")), SubsetMask::empty(4));
        assert_eq!(connectivity_set(&perm("1")), SubsetMask::empty(1));
    }

    #[test]
    fn multiset_connectivity_sets() {
        assert_eq!(multiset_connectivity_set(&ms(&[1, 2, 2])), set(3, &[1]));
        assert_eq!(multiset_connectivity_set(&ms(&[2, 1, 2])), SubsetMask::empty(3));
        assert_eq!(multiset_connectivity_set(&ms(&[1, 1, 1])), SubsetMask::empty(3));
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&perm("1342")), 2);
        assert_eq!(inversions(&Permutation::identity(5)), 0);
        assert_eq!(inversions(&reversal(7)), 21);
    }

    #[test]
    fn descent_compositions() {
        assert_eq!(descent_composition(&perm("1342")).parts(), &[3, 1]);
        assert_eq!(descent_composition(&Permutation::identity(5)).parts(), &[5]);
        assert_eq!(descent_composition(&perm("321")).parts(), &[1, 1, 1]);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let caps = Caps::default();
        let one: Vec<String> = enumerate_permutations(1, &caps).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(one, ["1"]);
        let three: Vec<String> = enumerate_permutations(3, &caps).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(three, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_permutations(8, &caps).unwrap().count(), 40320);
        assert!(matches!(
            enumerate_permutations(11, &caps),
            Err(Error::CapExceeded { n: 11, .. })
        ));
    }

    #[test]
    fn multiset_universe() {
        let caps = Caps::default();
        let words: Vec<String> = build_multiset_word_universe(&set(3, &[1]), &caps)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["122", "212", "221"]);
        let all: Vec<Vec<u8>> = build_multiset_word_universe(&SubsetMask::full(4), &caps)
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        let perms: Vec<Vec<u8>> = enumerate_permutations(4, &caps)
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(all, perms);
        let single: Vec<String> = build_multiset_word_universe(&SubsetMask::empty(3), &caps)
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(single, ["111"]);
        assert!(build_multiset_word_universe(&SubsetMask::empty(11), &caps).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_to_multiset(&perm("132"), &set(3, &[1])).unwrap(), ms(&[1, 2, 2]));
        assert_eq!(reduce_to_multiset(&perm("231"), &set(3, &[1])).unwrap(), ms(&[2, 1, 2]));
        let id = Permutation::identity(5);
        assert_eq!(
            reduce_to_multiset(&id, &SubsetMask::full(5)).unwrap().letters(),
            id.letters()
        );
        assert!(reduce_to_multiset(&id, &SubsetMask::full(4)).is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(perm("1342").to_string(), "1342");
        let big = Permutation::new(vec![10, 3, 1, 2, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,3,1,2,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!(matches!("1332".parse::<Permutation>(), Err(Error::Parse { position: 3, .. })));
        assert!(matches!("13a2".parse::<Permutation>(), Err(Error::Parse { position: 3, .. })));
        assert!(matches!("1352".parse::<Permutation>(), Err(Error::Parse { position: 3, .. })));
        assert!("".parse::<Permutation>().is_err());
    }

    /// `C(w)` straight from the definition: every `a_j` with `j <= i` is
    /// below every `a_k` with `k > i`.
    fn connectivity_quadratic(word: &[u8]) -> u32 {
        let n = word.len();
        let mut bits = 0;
        for i in 1..n {
            if (0..i).all(|j| (i..n).all(|k| word[j] < word[k])) {
                bits |= 1 << (i - 1);
            }
        }
        bits
    }

    #[test]
    fn connectivity_matches_definition_exhaustively() {
        let caps = Caps::default();
        for n in 1..=7 {
            for w in enumerate_permutations(n, &caps).unwrap() {
                assert_eq!(connectivity_bits(w.letters()), connectivity_quadratic(w.letters()), "{w}");
            }
        }
    }

    #[test]
    fn connectivity_and_descents_are_disjoint() {
        let caps = Caps::default();
        for n in 1..=7 {
            for w in enumerate_permutations(n, &caps).unwrap() {
                let c = connectivity_set(&w);
                let d = descent_set(&w);
                assert!(c.is_disjoint(&d), "{w}");
                let id = w.is_identity();
                assert_eq!(d.is_empty(), id);
                assert_eq!(c == SubsetMask::full(n), id);
                assert_eq!(inversions(&w) == 0, id);
            }
        }
    }

    proptest! {
        #[test]
        fn connectivity_is_inverse_invariant(word in Just((1..=8u8).collect::<Vec<_>>()).prop_shuffle()) {
            let w = Permutation::new(word).unwrap();
            prop_assert_eq!(connectivity_set(&w), connectivity_set(&w.inverse()));
            prop_assert_eq!(inversions(&w), inversions(&w.inverse()));
            prop_assert_eq!(w.inverse().inverse(), w);
        }
    }
}
