//! Permutations in one-line notation and the weak order on `S_n`.
//!
//! A permutation is ordered below another when its inversion set is a subset
//! of the other's. Inversion sets are stored as one `u64` row per position,
//! bit `j` of row `i` meaning the (0-based) pair `(i, j)` is an inversion, so
//! closures and subset tests run over machine words. This caps the degree at
//! [`MAX_DEGREE`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported degree; one inversion row must fit in a `u64`.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("word is not a permutation of 1..={0}")]
    NotABijection(usize),
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("pair set is not the inversion set of any permutation")]
    NotAnInversionSet,
    #[error("pair ({0},{1}) is not of the form 1 <= i < j <= n")]
    InvalidPair(usize, usize),
    #[error("word has duplicate entries")]
    DuplicateEntries,
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `[n]` in one-line notation: position `i` holds `σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

/// A classical pattern is just a (short) permutation.
pub type Pattern = Permutation;

/// A set of pairs `(i, j)` with `1 <= i < j <= n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: usize,
    rows: Vec<u64>,
}

impl InversionSet {
    pub fn empty(n: usize) -> Result<Self, PermutationError> {
        if n > MAX_DEGREE {
            return Err(PermutationError::DegreeTooLarge(n));
        }
        Ok(InversionSet {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a set from 1-based pairs.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PermutationError> {
        let mut s = Self::empty(n)?;
        for (i, j) in pairs {
            if i == 0 || i >= j || j > n {
                return Err(PermutationError::InvalidPair(i, j));
            }
            s.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(s)
    }

    /// All pairs, i.e. the inversion set of `n ⋯ 2 1`.
    pub fn full(n: usize) -> Result<Self, PermutationError> {
        let mut s = Self::empty(n)?;
        for i in 0..n {
            s.rows[i] = upper_mask(n, i);
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && i < j && j <= self.n && self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// 1-based pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for (i, &row) in self.rows.iter().enumerate() {
            for j in 0..self.n {
                if row >> j & 1 == 1 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &InversionSet) -> InversionSet {
        self.zip_rows(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &InversionSet) -> InversionSet {
        self.zip_rows(other, |a, b| a & b)
    }

    /// Pairs of `[n]` not in this set.
    pub fn complement(&self) -> InversionSet {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| !r & upper_mask(self.n, i))
            .collect();
        InversionSet { n: self.n, rows }
    }

    /// Chain closure: `(i, j)` is in the result iff some chain
    /// `i = k_0 < ⋯ < k_s = j` has every step in `self`.
    pub fn transitive_closure(&self) -> InversionSet {
        let mut rows = self.rows.clone();
        // Warshall over the intermediate point k; rows only hold j > i.
        for k in 0..self.n {
            let through = rows[k];
            for row in rows.iter_mut().take(k) {
                if *row >> k & 1 == 1 {
                    *row |= through;
                }
            }
        }
        InversionSet { n: self.n, rows }
    }

    pub fn is_transitively_closed(&self) -> bool {
        self.transitive_closure() == *self
    }

    fn zip_rows(&self, other: &InversionSet, f: impl Fn(u64, u64) -> u64) -> InversionSet {
        debug_assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| f(a, b))
            .collect();
        InversionSet { n: self.n, rows }
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Bits `i+1..n` set.
fn upper_mask(n: usize, i: usize) -> u64 {
    let below_n = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let through_i = if i >= 63 { u64::MAX } else { (1u64 << (i + 1)) - 1 };
    below_n & !through_i
}

impl Permutation {
    /// Validates that `word` is a bijection on `1..=word.len()`.
    pub fn new(word: Vec<usize>) -> Result<Self, PermutationError> {
        let n = word.len();
        if n > MAX_DEGREE {
            return Err(PermutationError::DegreeTooLarge(n));
        }
        let mut seen = 0u64;
        for &v in &word {
            if v == 0 || v > n || seen >> (v - 1) & 1 == 1 {
                return Err(PermutationError::NotABijection(n));
            }
            seen |= 1 << (v - 1);
        }
        Ok(Permutation {
            word: word.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The maximum of the weak order, `n (n-1) ⋯ 1`.
    pub fn longest(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    /// The adjacent transposition `σ_i = (i, i+1)`, 1-based.
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut p = Self::identity(n);
        p.word.swap(i - 1, i);
        p
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn value(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// Swaps the entries at positions `i` and `i+1` (right multiplication by `σ_i`).
    pub fn swap_adjacent(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    /// The word read right to left.
    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    pub fn inversion_set(&self) -> InversionSet {
        let n = self.degree();
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    rows[i] |= 1 << j;
                }
            }
        }
        InversionSet { n, rows }
    }

    pub fn inversion_count(&self) -> usize {
        self.inversion_set().len()
    }

    /// The unique permutation whose inversion set is `s`, if any.
    ///
    /// `s` must be transitively closed and so must its complement within the
    /// full pair set.
    pub fn from_inversion_set(s: &InversionSet) -> Result<Permutation, PermutationError> {
        if !s.is_transitively_closed() || !s.complement().is_transitively_closed() {
            return Err(PermutationError::NotAnInversionSet);
        }
        let n = s.n;
        // σ(i) - 1 counts positions holding a smaller value.
        let word = (1..=n)
            .map(|i| {
                let left = (1..i).filter(|&j| !s.contains(j, i)).count();
                let right = (i + 1..=n).filter(|&j| s.contains(i, j)).count();
                left + right + 1
            })
            .collect();
        let p = Permutation::new(word).map_err(|_| PermutationError::NotAnInversionSet)?;
        debug_assert_eq!(p.inversion_set(), *s);
        Ok(p)
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermutationError> {
        if self.degree() != other.degree() {
            return Err(PermutationError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// Weak order comparison: `Inv(self) ⊆ Inv(other)`.
    pub fn weak_leq(&self, other: &Permutation) -> Result<bool, PermutationError> {
        self.check_degree(other)?;
        Ok(self.inversion_set().is_subset(&other.inversion_set()))
    }

    /// Least upper bound: the chain closure of the union of inversion sets.
    pub fn weak_join(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        self.check_degree(other)?;
        let union = self.inversion_set().union(&other.inversion_set());
        Permutation::from_inversion_set(&union.transitive_closure())
    }

    /// Greatest lower bound: pairs `(i, j)` such that every chain from `i` to
    /// `j` steps through at least one common inversion.
    pub fn weak_meet(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        self.check_degree(other)?;
        let common = self.inversion_set().intersection(&other.inversion_set());
        // A chain avoiding `common` exists iff (i, j) is in the closure of the
        // complement, so the meet is the complement of that closure.
        let escaping = common.complement().transitive_closure();
        Permutation::from_inversion_set(&escaping.complement())
    }

    /// True iff some subsequence of the word is order-isomorphic to `pat`.
    pub fn contains_pattern(&self, pat: &Pattern) -> bool {
        let k = pat.degree();
        if k == 0 {
            return true;
        }
        if k > self.degree() {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        self.embed(&pat.word, 0, &mut chosen)
    }

    fn embed(&self, pat: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
        let depth = chosen.len();
        if depth == pat.len() {
            return true;
        }
        let remaining = pat.len() - depth;
        for pos in start..=self.word.len() - remaining {
            let v = self.word[pos];
            let consistent = chosen
                .iter()
                .zip(pat)
                .all(|(&c, &pc)| (c < v) == (pc < pat[depth]));
            if consistent {
                chosen.push(v);
                if self.embed(pat, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids_all(&self, pats: &[Pattern]) -> bool {
        pats.iter().all(|p| !self.contains_pattern(p))
    }
}

/// The permutation with the same relative order as `word`.
pub fn standardize(word: &[i64]) -> Result<Permutation, PermutationError> {
    if word.len() > MAX_DEGREE {
        return Err(PermutationError::DegreeTooLarge(word.len()));
    }
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(PermutationError::DuplicateEntries);
    }
    let ranks = word
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Permutation::new(ranks)
}

/// Iterates `S_n` in lexicographic order of words.
pub struct LexPermutations {
    next: Option<Vec<u8>>,
}

pub fn all_permutations(n: usize) -> LexPermutations {
    assert!(n <= MAX_DEGREE);
    LexPermutations {
        next: Some((1..=n as u8).collect()),
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut w = current.clone();
        if let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) {
            let pivot = i - 1;
            let succ = (i..w.len()).rev().find(|&j| w[j] > w[pivot]).unwrap();
            w.swap(pivot, succ);
            w[i..].reverse();
            self.next = Some(w);
        }
        Some(Permutation { word: current })
    }
}

/// All permutations of `[n]` avoiding every pattern in `pats`, lexicographically.
pub fn enumerate_avoiders(n: usize, pats: &[Pattern]) -> Vec<Permutation> {
    all_permutations(n).filter(|p| p.avoids_all(pats)).collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    /// Accepts `"231"` (single digits) or `"2,3,1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_err = || PermutationError::Parse(s.to_string());
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| parse_err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(parse_err))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn inversion_set_examples() {
        assert!(p("123").inversion_set().is_empty());
        assert_eq!(p("21").inversion_set().pairs(), vec![(1, 2)]);
        assert_eq!(p("231").inversion_set().pairs(), vec![(1, 3), (2, 3)]);
    }

    #[test]
    fn from_inversion_set_examples() {
        let empty = InversionSet::empty(3).unwrap();
        assert_eq!(Permutation::from_inversion_set(&empty).unwrap(), p("123"));
        let bad = InversionSet::from_pairs(3, [(1, 3)]).unwrap();
        assert_eq!(
            Permutation::from_inversion_set(&bad),
            Err(PermutationError::NotAnInversionSet)
        );
        let s = InversionSet::from_pairs(3, [(1, 2), (1, 3)]).unwrap();
        assert_eq!(Permutation::from_inversion_set(&s).unwrap(), p("312"));
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(InversionSet::from_pairs(3, [(2, 2)]).is_err());
        assert!(InversionSet::from_pairs(3, [(1, 4)]).is_err());
        assert!(InversionSet::from_pairs(3, [(0, 1)]).is_err());
    }

    #[test]
    fn weak_order_examples() {
        let q = p("312");
        assert!(q.weak_leq(&q).unwrap());
        assert!(p("132").weak_leq(&p("231")).unwrap());
        assert!(!p("213").weak_leq(&p("231")).unwrap());
        assert_eq!(
            p("12").weak_leq(&p("123")),
            Err(PermutationError::DegreeMismatch(2, 3))
        );
    }

    #[test]
    fn join_meet_examples() {
        let q = p("2413");
        assert_eq!(q.weak_join(&q).unwrap(), q);
        assert_eq!(q.weak_meet(&q).unwrap(), q);
        assert_eq!(p("213").weak_join(&p("132")).unwrap(), p("321"));
        assert_eq!(p("132").weak_join(&p("231")).unwrap(), p("231"));
        assert_eq!(p("231").weak_meet(&p("312")).unwrap(), p("123"));
        assert_eq!(p("231").weak_meet(&p("321")).unwrap(), p("231"));
        assert!(p("21").weak_join(&p("213")).is_err());
    }

    #[test]
    fn pattern_examples() {
        assert!(p("4321").contains_pattern(&p("321")));
        assert!(!p("312").contains_pattern(&p("321")));
        assert!(!p("2143").contains_pattern(&p("321")));
        assert!(p("2413").contains_pattern(&p("231")));
        assert!(!p("12").contains_pattern(&p("123")));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(standardize(&[4, 2, 5]).unwrap(), p("213"));
        assert_eq!(standardize(&[3, 1, 2]).unwrap(), p("312"));
        assert_eq!(standardize(&[-7, 10, 0]).unwrap(), p("132"));
        assert_eq!(standardize(&[2, 2]), Err(PermutationError::DuplicateEntries));
    }

    #[test]
    fn avoider_examples() {
        let words = |v: Vec<Permutation>| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(
            words(enumerate_avoiders(3, &[p("321")])),
            vec!["123", "132", "213", "231", "312"]
        );
        assert_eq!(
            words(enumerate_avoiders(3, &[p("123"), p("132"), p("213")])),
            vec!["231", "312", "321"]
        );
        assert_eq!(words(enumerate_avoiders(1, &[p("321")])), vec!["1"]);
    }

    #[test]
    fn lex_enumeration_counts() {
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(5).count(), 120);
        let v: Vec<_> = all_permutations(4).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn formatting_and_parsing() {
        assert_eq!(p("231").to_string(), "231");
        let big = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert_eq!("2,3,1".parse::<Permutation>().unwrap(), p("231"));
        assert!("1a".parse::<Permutation>().is_err());
        assert!("112".parse::<Permutation>().is_err());
    }

    #[test]
    fn full_set_is_longest() {
        let full = InversionSet::full(64).unwrap();
        assert_eq!(full.len(), 64 * 63 / 2);
        assert_eq!(
            Permutation::from_inversion_set(&InversionSet::full(5).unwrap()).unwrap(),
            Permutation::longest(5)
        );
    }
}
