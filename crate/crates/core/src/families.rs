//! The three lattice families and the maps between them.
//!
//! * `A_n`: 123-132-213-avoiding permutations under weak order, plus an
//!   adjoined minimum `0̂`.
//! * `B_n`: 321-avoiding permutations under weak order, plus an adjoined
//!   maximum `1̂`.
//! * `C_n`: words over `{1, 2}` summing to `n`, where replacing one `2` by
//!   `11` moves up a cover, plus an adjoined minimum `0̂`.
//!
//! Elements are indexed with the adjoined bound first (`A`, `C`) or last
//! (`B`) and everything else in lexicographic word order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fibpoly::sparse_sets;
use crate::nbb::{AtomOrder, NbbBase, NbbError};
use crate::permutation::{enumerate_avoiders, Pattern, Permutation};
use crate::poset::{as_lattice, BoundedLattice, FinitePoset, PosetError};

/// Label of an adjoined minimum.
pub const BOTTOM_LABEL: &str = "0\u{302}";
/// Label of an adjoined maximum.
pub const TOP_LABEL: &str = "1\u{302}";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree must be at least 3, got {0}")]
    BelowPredictionRange(usize),
    #[error("{0:?} is not a word over {{1,2}} summing to {1}")]
    WordNotInCn(String, usize),
    #[error("{0} is not a 123-132-213-avoiding permutation of degree {1}")]
    PermutationNotInAn(String, usize),
    #[error("index set {0:?} is not strictly increasing within 1..={1}")]
    IndexOutOfRange(Vec<usize>, usize),
    #[error("operation needs a family {0} lattice")]
    WrongFamily(Family),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Nbb(#[from] NbbError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            _ => Err(format!("unknown family {s:?}; expected A, B or C")),
        }
    }
}

/// A word over `{1, 2}`; its letter sum is the degree `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositionWord {
    letters: Vec<u8>,
}

impl CompositionWord {
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        if letters.is_empty() || letters.iter().any(|&c| c != 1 && c != 2) {
            return None;
        }
        Some(CompositionWord { letters })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn sum(&self) -> usize {
        self.letters.iter().map(|&c| c as usize).sum()
    }

    /// Words obtained by splitting one `2` into `11`.
    pub fn upper_covers(&self) -> Vec<CompositionWord> {
        self.letters
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == 2)
            .map(|(i, _)| {
                let mut letters = self.letters[..i].to_vec();
                letters.extend([1, 1]);
                letters.extend(&self.letters[i + 1..]);
                CompositionWord { letters }
            })
            .collect()
    }
}

impl fmt::Display for CompositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CompositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompositionWord({self})")
    }
}

impl FromStr for CompositionWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let letters = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(format!("bad letter {c:?} in {s:?}")),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        CompositionWord::new(letters).ok_or_else(|| format!("empty word {s:?}"))
    }
}

/// All words over `{1, 2}` summing to `n`, lexicographically.
pub fn compositions(n: usize) -> Vec<CompositionWord> {
    fn grow(rest: usize, prefix: &mut Vec<u8>, out: &mut Vec<CompositionWord>) {
        if rest == 0 {
            out.push(CompositionWord {
                letters: prefix.clone(),
            });
            return;
        }
        for c in [1u8, 2] {
            if c as usize <= rest {
                prefix.push(c);
                grow(rest - c as usize, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        grow(n, &mut Vec::new(), &mut out);
    }
    out
}

/// An element of a family poset: the adjoined bound or a proper element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Member {
    Adjoined,
    Perm(Permutation),
    Word(CompositionWord),
}

/// `C_n` element or its `0̂`, as taken and returned by [`phi`] / [`psi`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CElement {
    Bottom,
    Word(CompositionWord),
}

/// `A_n` element or its `0̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AElement {
    Bottom,
    Perm(Permutation),
}

fn pats(words: &[&str]) -> Vec<Pattern> {
    words.iter().map(|w| w.parse().unwrap()).collect()
}

/// The patterns defining `A'_n`.
pub fn a_patterns() -> Vec<Pattern> {
    pats(&["123", "132", "213"])
}

/// The pattern defining `B'_n`.
pub fn b_patterns() -> Vec<Pattern> {
    pats(&["321"])
}

/// One constructed family lattice.
#[derive(Clone, Debug)]
pub struct FamilyLattice {
    family: Family,
    n: usize,
    lattice: BoundedLattice,
    members: Vec<Member>,
    adjoined: usize,
    lookup: HashMap<Member, usize>,
}

impl FamilyLattice {
    fn assemble(
        family: Family,
        n: usize,
        members: Vec<Member>,
        poset: FinitePoset,
    ) -> Result<Self, FamilyError> {
        let lattice = as_lattice(poset)?;
        let adjoined = members
            .iter()
            .position(|m| *m == Member::Adjoined)
            .expect("family posets carry an adjoined bound");
        let lookup = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(FamilyLattice {
            family,
            n,
            lattice,
            members,
            adjoined,
            lookup,
        })
    }

    /// Weak order on the permutations in `perms`, with the adjoined element
    /// placed first (below everything) or last (above everything).
    fn weak_order_with_bound(
        family: Family,
        n: usize,
        perms: Vec<Permutation>,
        bound_first: bool,
    ) -> Result<Self, FamilyError> {
        let inversions: Vec<_> = perms.iter().map(|p| p.inversion_set()).collect();
        let mut members: Vec<Member> = perms.into_iter().map(Member::Perm).collect();
        let count = members.len();
        let bound_label = if bound_first { BOTTOM_LABEL } else { TOP_LABEL };
        let (bound_idx, offset) = if bound_first {
            members.insert(0, Member::Adjoined);
            (0, 1)
        } else {
            members.push(Member::Adjoined);
            (count, 0)
        };
        let labels = members
            .iter()
            .map(|m| match m {
                Member::Perm(p) => p.to_string(),
                _ => bound_label.to_string(),
            })
            .collect();
        let poset = FinitePoset::from_leq(labels, |x, y| {
            if x == bound_idx || y == bound_idx {
                return x == y || (x == bound_idx) == bound_first;
            }
            inversions[x - offset].is_subset(&inversions[y - offset])
        })?;
        Self::assemble(family, n, members, poset)
    }

    /// `A_n = A'_n ∪ {0̂}`.
    pub fn build_a(n: usize) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroDegree);
        }
        let perms = enumerate_avoiders(n, &a_patterns());
        Self::weak_order_with_bound(Family::A, n, perms, true)
    }

    /// `B_n = B'_n ∪ {1̂}`.
    pub fn build_b(n: usize) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroDegree);
        }
        let perms = enumerate_avoiders(n, &b_patterns());
        Self::weak_order_with_bound(Family::B, n, perms, false)
    }

    /// `C_n`: closure of the `2 ≺ 11` covers, plus `0̂`.
    pub fn build_c(n: usize) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::ZeroDegree);
        }
        let words = compositions(n);
        let index: HashMap<&CompositionWord, usize> =
            words.iter().enumerate().map(|(i, w)| (w, i + 1)).collect();
        let mut covers = Vec::new();
        for (i, w) in words.iter().enumerate() {
            covers.push((0, i + 1));
            for up in w.upper_covers() {
                covers.push((i + 1, index[&up]));
            }
        }
        let mut labels = vec![BOTTOM_LABEL.to_string()];
        labels.extend(words.iter().map(|w| w.to_string()));
        let poset = FinitePoset::from_covers(labels, &covers)?;
        let mut members = vec![Member::Adjoined];
        members.extend(words.into_iter().map(Member::Word));
        Self::assemble(Family::C, n, members, poset)
    }

    pub fn build(family: Family, n: usize) -> Result<Self, FamilyError> {
        match family {
            Family::A => Self::build_a(n),
            Family::B => Self::build_b(n),
            Family::C => Self::build_c(n),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Index of the adjoined `0̂` (A, C) or `1̂` (B).
    pub fn adjoined(&self) -> usize {
        self.adjoined
    }

    pub fn index_of(&self, m: &Member) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn index_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.index_of(&Member::Perm(p.clone()))
    }

    pub fn index_of_word(&self, w: &CompositionWord) -> Option<usize> {
        self.index_of(&Member::Word(w.clone()))
    }

    /// Proper permutations (A, B) in index order.
    pub fn permutations(&self) -> Vec<Permutation> {
        self.members
            .iter()
            .filter_map(|m| match m {
                Member::Perm(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    /// A and C are summed over coatoms meeting to `0̂`, B over atoms
    /// joining to `1̂`.
    pub fn uses_coatoms(&self) -> bool {
        self.family != Family::B
    }

    /// Coatoms (A, C) or atoms (B) in the standard total order: `θ_1 ◁ θ_2 ◁ ⋯`
    /// for C, their images under `φ_n` for A and `σ_1 ◁ σ_2 ◁ ⋯` for B.
    /// For `n = 1` there are no such indices and the single (co)atom is used.
    pub fn canonical_order(&self) -> Vec<usize> {
        let n = self.n;
        if n < 2 {
            return if self.uses_coatoms() {
                self.lattice.coatoms()
            } else {
                self.lattice.atoms()
            };
        }
        (1..n)
            .map(|i| self.theta_or_sigma(i).expect("index in range"))
            .collect()
    }

    /// Element index of `θ_i` (C), `φ_n(θ_i)` (A) or `σ_i` (B).
    pub fn theta_or_sigma(&self, i: usize) -> Result<usize, FamilyError> {
        let n = self.n;
        if i == 0 || i >= n {
            return Err(FamilyError::IndexOutOfRange(vec![i], n.saturating_sub(1)));
        }
        let m = match self.family {
            Family::C => Member::Word(theta(n, i)?),
            Family::A => Member::Perm(phi(&theta(n, i)?)),
            Family::B => Member::Perm(Permutation::adjacent_transposition(n, i)),
        };
        Ok(self.index_of(&m).expect("θ/σ elements belong to the family"))
    }

    /// The lattice the NBB engine runs on: the dual for coatom families.
    pub fn nbb_lattice(&self) -> BoundedLattice {
        if self.uses_coatoms() {
            self.lattice.dual()
        } else {
            self.lattice.clone()
        }
    }

    /// NBB bases of `0̂` (coatom form) or `1̂` (atom form) under `order`.
    /// `engine` must be [`FamilyLattice::nbb_lattice`].
    pub fn nbb_bases(
        &self,
        engine: &BoundedLattice,
        order: Vec<usize>,
    ) -> Result<Vec<NbbBase>, FamilyError> {
        let ord = AtomOrder::new(engine, order)?;
        Ok(ord.nbb_bases_of(engine.top()))
    }

    /// Sparse-set predicted bases, as element indices in the canonical order.
    pub fn predicted_bases(&self) -> Result<Vec<Vec<usize>>, FamilyError> {
        predicted_nbb_bases(self.n)?
            .into_iter()
            .map(|b| b.into_iter().map(|i| self.theta_or_sigma(i)).collect())
            .collect()
    }

    /// Lattice meet of `θ_{i_1}, …, θ_{i_k}` (family C only), using the
    /// closed form when consecutive indices differ by at least 2.
    pub fn theta_meet(&self, indices: &[usize]) -> Result<usize, FamilyError> {
        if self.family != Family::C {
            return Err(FamilyError::WrongFamily(Family::C));
        }
        match theta_meet_formula(self.n, indices)? {
            Some(w) => Ok(self.index_of_word(&w).expect("formula word lies in C_n")),
            None => self.theta_meet_table(indices),
        }
    }

    /// The same meet read off the lattice table.
    pub fn theta_meet_table(&self, indices: &[usize]) -> Result<usize, FamilyError> {
        check_indices(self.n, indices)?;
        let thetas = indices
            .iter()
            .map(|&i| self.theta_or_sigma(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.lattice.meet_all(thetas))
    }

    pub fn label(&self, x: usize) -> &str {
        self.lattice.label(x)
    }
}

/// `φ_n`: reads the word left to right, emitting `m` for a `1` and
/// `(m-1) m` for a `2`, where `m` is the sum of the unread letters.
pub fn phi(w: &CompositionWord) -> Permutation {
    let mut remaining = w.sum();
    let mut out = Vec::with_capacity(remaining);
    for &c in w.letters() {
        if c == 1 {
            out.push(remaining);
            remaining -= 1;
        } else {
            out.extend([remaining - 1, remaining]);
            remaining -= 2;
        }
    }
    Permutation::new(out).expect("φ emits each value once")
}

/// `φ_n` on `C_n`, checking the word sums to `n`.
pub fn phi_n(n: usize, w: &CElement) -> Result<AElement, FamilyError> {
    match w {
        CElement::Bottom => Ok(AElement::Bottom),
        CElement::Word(w) if w.sum() == n => Ok(AElement::Perm(phi(w))),
        CElement::Word(w) => Err(FamilyError::WordNotInCn(w.to_string(), n)),
    }
}

/// `ψ_n`, the inverse of `φ_n`.
pub fn psi(p: &Permutation) -> Result<CompositionWord, FamilyError> {
    let n = p.degree();
    let not_in = || FamilyError::PermutationNotInAn(p.to_string(), n);
    if !p.avoids_all(&a_patterns()) {
        return Err(not_in());
    }
    let w = p.word();
    let mut letters = Vec::new();
    let (mut pos, mut top) = (0, n);
    while pos < n {
        if w[pos] == top {
            letters.push(1);
            pos += 1;
            top -= 1;
        } else if top >= 2 && pos + 1 < n && w[pos] == top - 1 && w[pos + 1] == top {
            letters.push(2);
            pos += 2;
            top -= 2;
        } else {
            return Err(not_in());
        }
    }
    CompositionWord::new(letters).ok_or_else(not_in)
}

pub fn psi_n(n: usize, p: &AElement) -> Result<CElement, FamilyError> {
    match p {
        AElement::Bottom => Ok(CElement::Bottom),
        AElement::Perm(p) if p.degree() == n => Ok(CElement::Word(psi(p)?)),
        AElement::Perm(p) => Err(FamilyError::PermutationNotInAn(p.to_string(), n)),
    }
}

/// `θ_i`: `n - 1` letters, all `1` except a `2` at position `i`.
pub fn theta(n: usize, i: usize) -> Result<CompositionWord, FamilyError> {
    if i == 0 || i >= n {
        return Err(FamilyError::IndexOutOfRange(vec![i], n.saturating_sub(1)));
    }
    let mut letters = vec![1u8; n - 1];
    letters[i - 1] = 2;
    Ok(CompositionWord { letters })
}

fn check_indices(n: usize, indices: &[usize]) -> Result<(), FamilyError> {
    let ok = !indices.is_empty()
        && indices[0] >= 1
        && indices.windows(2).all(|w| w[0] < w[1])
        && *indices.last().unwrap() < n;
    if ok {
        Ok(())
    } else {
        Err(FamilyError::IndexOutOfRange(
            indices.to_vec(),
            n.saturating_sub(1),
        ))
    }
}

/// Closed form for `θ_{i_1} ∧ ⋯ ∧ θ_{i_k}` when `i_{p+1} ≥ i_p + 2`: the
/// word of length `n - k` with `2`s at positions `i_p - p + 1`. `None` when
/// some pair of indices is adjacent.
pub fn theta_meet_formula(
    n: usize,
    indices: &[usize],
) -> Result<Option<CompositionWord>, FamilyError> {
    check_indices(n, indices)?;
    if indices.windows(2).any(|w| w[1] < w[0] + 2) {
        return Ok(None);
    }
    let k = indices.len();
    let mut letters = vec![1u8; n - k];
    for (p, &i) in indices.iter().enumerate() {
        letters[i - p - 1] = 2;
    }
    Ok(Some(CompositionWord { letters }))
}

/// Predicted NBB bases as 1-based `θ`/`σ` index lists: `{1} ∪ {s + 1 : s ∈ S}`
/// for each sparse `S ⊆ [n-2]`.
pub fn predicted_nbb_bases(n: usize) -> Result<Vec<Vec<usize>>, FamilyError> {
    if n < 3 {
        return Err(FamilyError::BelowPredictionRange(n));
    }
    Ok(sparse_sets(n - 2)
        .iter()
        .map(|s| {
            std::iter::once(1)
                .chain(s.members().iter().map(|&m| m + 1))
                .collect()
        })
        .collect())
}
