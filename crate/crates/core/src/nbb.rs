//! Bounded-below sets and NBB bases of a finite lattice.
//!
//! Everything here is phrased for atoms and joins. The coatom/meet form is
//! the same computation on [`BoundedLattice::dual`], which is what
//! [`mobius_via_nbb_coatoms`] does.
//!
//! Atom subsets are bit masks over *positions* in the chosen total order, so
//! "strictly earlier in the order" is "lower bit".

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::poset::BoundedLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NbbError {
    #[error("atom set is empty")]
    EmptySet,
    #[error("element {0} is not an atom")]
    NotAnAtom(usize),
    #[error("sequence is not an ordering of the atoms")]
    NotAnAtomOrder,
    #[error("lattice has {0} atoms; at most 64 are supported")]
    TooManyAtoms(usize),
    #[error("the one-element lattice has no nonempty atom sets")]
    TrivialLattice,
}

/// A total order `⊴` on the atoms of a lattice.
#[derive(Clone, Debug)]
pub struct AtomOrder<'a> {
    lattice: &'a BoundedLattice,
    sequence: Vec<usize>,
    /// Mask of atom positions lying below each element.
    atoms_below: Vec<u64>,
}

/// A set of atoms with no bounded-below subset, together with its join.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NbbBase {
    /// Atoms in `⊴` order.
    pub atoms: Vec<usize>,
    pub joins_to: usize,
}

impl<'a> AtomOrder<'a> {
    pub fn new(lattice: &'a BoundedLattice, sequence: Vec<usize>) -> Result<Self, NbbError> {
        let mut atoms = lattice.atoms();
        if atoms.len() > 64 {
            return Err(NbbError::TooManyAtoms(atoms.len()));
        }
        let mut sorted = sequence.clone();
        sorted.sort_unstable();
        atoms.sort_unstable();
        if sorted != atoms {
            return Err(NbbError::NotAnAtomOrder);
        }
        let atoms_below = (0..lattice.len())
            .map(|x| {
                sequence
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| lattice.leq(a, x))
                    .fold(0u64, |m, (p, _)| m | 1 << p)
            })
            .collect();
        Ok(AtomOrder {
            lattice,
            sequence,
            atoms_below,
        })
    }

    /// Atoms in element-index order.
    pub fn canonical(lattice: &'a BoundedLattice) -> Result<Self, NbbError> {
        Self::new(lattice, lattice.atoms())
    }

    /// A uniformly random order drawn from `rng`.
    pub fn shuffled(lattice: &'a BoundedLattice, rng: &mut impl Rng) -> Result<Self, NbbError> {
        let mut atoms = lattice.atoms();
        atoms.shuffle(rng);
        Self::new(lattice, atoms)
    }

    pub fn lattice(&self) -> &'a BoundedLattice {
        self.lattice
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    fn mask_of(&self, set: &[usize]) -> Result<u64, NbbError> {
        if set.is_empty() {
            return Err(NbbError::EmptySet);
        }
        set.iter().try_fold(0u64, |m, &a| {
            let p = self
                .sequence
                .iter()
                .position(|&s| s == a)
                .ok_or(NbbError::NotAnAtom(a))?;
            Ok(m | 1 << p)
        })
    }

    fn atoms_of(&self, mask: u64) -> Vec<usize> {
        positions(mask).map(|p| self.sequence[p]).collect()
    }

    fn join_of(&self, mask: u64) -> usize {
        self.lattice
            .join_all(positions(mask).map(|p| self.sequence[p]))
    }

    /// Some atom strictly earlier than every member lies below the join.
    fn mask_is_bb(&self, mask: u64, join: usize) -> bool {
        let earliest = mask.trailing_zeros();
        self.atoms_below[join] & ((1u64 << earliest) - 1) != 0
    }

    fn mask_is_nbb(&self, mask: u64) -> bool {
        submasks(mask).all(|d| !self.mask_is_bb(d, self.join_of(d)))
    }

    /// `D` is bounded below: every `d ∈ D` has an atom `a ◁ d` with `a < ∨D`.
    pub fn is_bounded_below(&self, d: &[usize]) -> Result<bool, NbbError> {
        let mask = self.mask_of(d)?;
        Ok(self.mask_is_bb(mask, self.join_of(mask)))
    }

    /// No nonempty subset of `b` is bounded below.
    pub fn is_nbb(&self, b: &[usize]) -> Result<bool, NbbError> {
        Ok(self.mask_is_nbb(self.mask_of(b)?))
    }

    /// All NBB sets of atoms joining to `x`, by backtracking in `⊴` order.
    ///
    /// Any superset of a set with a bounded-below subset is rejected too, and
    /// joins only grow, so a branch is cut as soon as it gains a BB subset or
    /// its join leaves the ideal of `x`. When an atom is appended only the
    /// subsets containing it need a fresh BB check.
    pub fn nbb_bases_of(&self, x: usize) -> Vec<NbbBase> {
        let mut out = Vec::new();
        self.extend(0, self.lattice.bottom(), 0, x, &mut out);
        self.sort_bases(&mut out);
        out
    }

    fn extend(&self, mask: u64, join: usize, next: usize, x: usize, out: &mut Vec<NbbBase>) {
        for p in next..self.sequence.len() {
            let atom = self.sequence[p];
            let grown_join = self.lattice.join(join, atom);
            if !self.lattice.leq(grown_join, x) {
                continue;
            }
            let fresh_bb = std::iter::once(0)
                .chain(submasks(mask))
                .any(|e| {
                    let d = e | 1 << p;
                    let dj = self.lattice.join(self.join_of(e), atom);
                    self.mask_is_bb(d, dj)
                });
            if fresh_bb {
                continue;
            }
            let grown = mask | 1 << p;
            if grown_join == x {
                out.push(NbbBase {
                    atoms: self.atoms_of(grown),
                    joins_to: x,
                });
            }
            self.extend(grown, grown_join, p + 1, x, out);
        }
    }

    /// Reference enumeration: every nonempty atom subset, no pruning.
    pub fn nbb_bases_exhaustive(&self, x: usize) -> Vec<NbbBase> {
        let k = self.sequence.len();
        let mut out: Vec<NbbBase> = (1..=full_mask(k))
            .filter(|&m| self.join_of(m) == x && self.mask_is_nbb(m))
            .map(|m| NbbBase {
                atoms: self.atoms_of(m),
                joins_to: x,
            })
            .collect();
        self.sort_bases(&mut out);
        out
    }

    /// Lexicographic by `⊴` positions.
    fn sort_bases(&self, bases: &mut [NbbBase]) {
        bases.sort_by_cached_key(|b| {
            b.atoms
                .iter()
                .map(|a| self.sequence.iter().position(|s| s == a))
                .collect::<Vec<_>>()
        });
    }

    /// `μ(0̂, 1̂) = Σ (-1)^{|B|}` over the NBB bases `B` of `1̂`.
    pub fn mobius_via_nbb(&self) -> Result<i64, NbbError> {
        if self.lattice.len() < 2 {
            return Err(NbbError::TrivialLattice);
        }
        Ok(signed_count(&self.nbb_bases_of(self.lattice.top())))
    }

    /// Labels of a base's atoms in `⊴` order.
    pub fn base_labels(&self, base: &NbbBase) -> Vec<String> {
        base.atoms
            .iter()
            .map(|&a| self.lattice.label(a).to_string())
            .collect()
    }
}

/// `Σ (-1)^{|B|}`.
pub fn signed_count(bases: &[NbbBase]) -> i64 {
    bases
        .iter()
        .map(|b| if b.atoms.len() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Coatom form: the sum over NBB sets of coatoms meeting to `0̂`, with
/// `coatom_sequence` as the total order. Runs the atom engine on the dual.
pub fn mobius_via_nbb_coatoms(
    lattice: &BoundedLattice,
    coatom_sequence: Vec<usize>,
) -> Result<i64, NbbError> {
    let dual = lattice.dual();
    AtomOrder::new(&dual, coatom_sequence)?.mobius_via_nbb()
}

/// NBB bases of `x` made of coatoms (meeting to `x`) under `coatom_sequence`.
pub fn coatom_nbb_bases_of(
    lattice: &BoundedLattice,
    coatom_sequence: Vec<usize>,
    x: usize,
) -> Result<Vec<NbbBase>, NbbError> {
    let dual = lattice.dual();
    Ok(AtomOrder::new(&dual, coatom_sequence)?.nbb_bases_of(x))
}

fn full_mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn positions(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let p = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(p)
    })
}

/// Nonempty submasks of `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = sub;
        sub = (sub.wrapping_sub(1)) & mask;
        done = sub == 0;
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{as_lattice, FinitePoset};

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn m3() -> BoundedLattice {
        as_lattice(
            FinitePoset::from_covers(
                labels(&["0", "a", "b", "c", "1"]),
                &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// B_3: 123 < 213,132 < 231,312 < 1̂.
    fn b3() -> BoundedLattice {
        as_lattice(
            FinitePoset::from_covers(
                labels(&["123", "132", "213", "231", "312", "1"]),
                &[(0, 1), (0, 2), (1, 4), (2, 3), (3, 5), (4, 5)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn submask_enumeration() {
        let mut subs: Vec<u64> = submasks(0b101).collect();
        subs.sort();
        assert_eq!(subs, vec![0b001, 0b100, 0b101]);
        assert_eq!(submasks(0).count(), 0);
    }

    #[test]
    fn bounded_below_examples() {
        let l = m3();
        let ord = AtomOrder::new(&l, vec![1, 2, 3]).unwrap();
        assert!(!ord.is_bounded_below(&[1]).unwrap());
        assert!(ord.is_bounded_below(&[2, 3]).unwrap());
        assert_eq!(ord.is_bounded_below(&[]), Err(NbbError::EmptySet));
        assert_eq!(ord.is_bounded_below(&[4]), Err(NbbError::NotAnAtom(4)));

        let b = b3();
        // σ_1 = 213 (index 2) before σ_2 = 132 (index 1)
        let ord = AtomOrder::new(&b, vec![2, 1]).unwrap();
        assert!(!ord.is_bounded_below(&[2, 1]).unwrap());
    }

    #[test]
    fn nbb_examples() {
        let l = m3();
        let ord = AtomOrder::new(&l, vec![1, 2, 3]).unwrap();
        for a in [1, 2, 3] {
            assert!(ord.is_nbb(&[a]).unwrap());
        }
        assert!(ord.is_nbb(&[1, 2]).unwrap());
        assert!(!ord.is_nbb(&[2, 3]).unwrap());
        assert!(!ord.is_nbb(&[1, 2, 3]).unwrap());
        assert_eq!(ord.is_nbb(&[]), Err(NbbError::EmptySet));
    }

    #[test]
    fn bases_of_examples() {
        let l = m3();
        let ord = AtomOrder::new(&l, vec![1, 2, 3]).unwrap();
        let bases: Vec<_> = ord.nbb_bases_of(4).into_iter().map(|b| b.atoms).collect();
        assert_eq!(bases, vec![vec![1, 2], vec![1, 3]]);
        assert_eq!(ord.nbb_bases_of(2)[0].atoms, vec![2]);
        assert_eq!(ord.nbb_bases_exhaustive(4), ord.nbb_bases_of(4));
    }

    #[test]
    fn mobius_examples() {
        let chain = as_lattice(
            FinitePoset::from_covers(labels(&["0", "1"]), &[(0, 1)]).unwrap(),
        )
        .unwrap();
        assert_eq!(AtomOrder::canonical(&chain).unwrap().mobius_via_nbb(), Ok(-1));
        assert_eq!(AtomOrder::canonical(&m3()).unwrap().mobius_via_nbb(), Ok(2));
        let b = b3();
        assert_eq!(AtomOrder::new(&b, vec![2, 1]).unwrap().mobius_via_nbb(), Ok(1));

        let point = as_lattice(FinitePoset::from_covers(labels(&["x"]), &[]).unwrap()).unwrap();
        assert_eq!(
            AtomOrder::canonical(&point).unwrap().mobius_via_nbb(),
            Err(NbbError::TrivialLattice)
        );
    }

    #[test]
    fn coatom_form_on_diamond() {
        // C_3: 0̂ < 21, 12 < 111, coatoms θ_1 = 21 then θ_2 = 12.
        let c3 = as_lattice(
            FinitePoset::from_covers(
                labels(&["0", "12", "21", "111"]),
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        )
        .unwrap();
        let bases = coatom_nbb_bases_of(&c3, vec![2, 1], 0).unwrap();
        assert_eq!(bases.len(), 1);
        assert_eq!(bases[0].atoms, vec![2, 1]);
        assert_eq!(mobius_via_nbb_coatoms(&c3, vec![2, 1]), Ok(1));
    }

    #[test]
    fn rejects_bad_orders() {
        let l = m3();
        assert!(matches!(AtomOrder::new(&l, vec![1, 2]), Err(NbbError::NotAnAtomOrder)));
        assert!(matches!(
            AtomOrder::new(&l, vec![1, 2, 4]),
            Err(NbbError::NotAnAtomOrder)
        ));
    }
}
