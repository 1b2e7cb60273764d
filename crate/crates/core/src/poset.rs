//! Finite posets, bounded lattices and the Möbius function.
//!
//! Elements are integer indices internally and opaque string labels at the
//! boundary. The order is held twice: as bitset rows (`up[x]` is the principal
//! filter of `x`, `down[x]` the principal ideal) for subset and reachability
//! tests, and as cover lists for Hasse export and the lattice-table builder.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover relation contains a cycle")]
    CycleDetected,
    #[error("cover ({0}, {1}) refers to a missing element")]
    UnknownElement(usize, usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("{0:?} is not below {1:?}")]
    NotComparable(String, String),
    #[error("no unique {bound} for {left:?} and {right:?}")]
    NotALattice {
        bound: &'static str,
        left: String,
        right: String,
    },
    #[error("poset is empty")]
    Empty,
    #[error("{0} elements exceed the lattice table limit")]
    TooLarge(usize),
}

/// A finite partially ordered set over indices `0..len()`.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// Elements bottom-first in a linear extension.
    linear: Vec<usize>,
    /// `position[x]` is the rank of `x` in `linear`.
    position: Vec<usize>,
}

impl FinitePoset {
    /// The poset generated by `covers` (pairs `(lo, hi)` with `lo < hi`)
    /// under reflexive-transitive closure. Redundant pairs are allowed and
    /// dropped from the stored cover list.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(PosetError::UnknownElement(lo, hi));
            }
            if lo == hi {
                return Err(PosetError::CycleDetected);
            }
            succ[lo].push(hi);
            indegree[hi] += 1;
        }
        // Kahn's algorithm; leftover elements sit on a cycle.
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).rev().collect();
        while let Some(x) = ready.pop() {
            order.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(PosetError::CycleDetected);
        }
        let mut up: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for &x in order.iter().rev() {
            let mut row = BitSet::new(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Self::from_up_sets(labels, up)
    }

    /// The poset on `labels` ordered by `leq`, which is checked to be
    /// reflexive, antisymmetric and transitive.
    pub fn from_leq(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(PosetError::NotAPartialOrder(format!(
                    "{:?} is not below itself",
                    labels[x]
                )));
            }
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "{:?} and {:?} are distinct but mutually comparable",
                        labels[x], labels[y]
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "not transitive through {:?} <= {:?}",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        Self::from_up_sets(labels, up)
    }

    /// Assumes `up` already encodes a partial order.
    fn from_up_sets(labels: Vec<String>, up: Vec<BitSet>) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&x| (down[x].count(), x));
        let mut position = vec![0; n];
        for (rank, &x) in linear.iter().enumerate() {
            position[x] = rank;
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict: Vec<usize> = up[x].iter().filter(|&y| y != x).collect();
            strict.sort_by_key(|&y| position[y]);
            let mut shadowed = BitSet::new(n);
            for y in strict {
                if !shadowed.contains(y) {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                    shadowed.union_with(&up[y]);
                }
            }
            upper_covers[x].sort_unstable();
        }
        for row in &mut lower_covers {
            row.sort_unstable();
        }
        Ok(FinitePoset {
            labels,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
            linear,
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(lo, hi)` sorted by `lo`, then `hi`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower_covers[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upper_covers[x].is_empty())
            .collect()
    }

    /// Same elements, reversed order.
    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
            linear: self.linear.iter().rev().copied().collect(),
            position: self.position.iter().map(|&p| self.len() - 1 - p).collect(),
        }
    }

    /// The subposet on `elements` (kept in the given order).
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let labels = elements.iter().map(|&x| self.labels[x].clone()).collect();
        FinitePoset::from_leq(labels, |a, b| self.leq(elements[a], elements[b]))
            .expect("restriction of a partial order is a partial order")
    }

    /// Elements of `[x, z]` in index order.
    pub fn interval(&self, x: usize, z: usize) -> Vec<usize> {
        let mut members = self.up[x].clone();
        members.intersect_with(&self.down[z]);
        members.iter().collect()
    }

    /// `μ(x, y)` for every `y >= x`, `None` elsewhere.
    ///
    /// Solves `Σ_{x <= w <= y} μ(x, w) = δ(x, y)` in linear-extension order, so
    /// every `μ(x, w)` with `w < y` is known before `y` is reached.
    pub fn mobius_row(&self, x: usize) -> Vec<Option<i64>> {
        self.mobius_row_until(x, None)
    }

    fn mobius_row_until(&self, x: usize, stop: Option<usize>) -> Vec<Option<i64>> {
        let mut row = vec![None; self.len()];
        let scope = match stop {
            Some(z) => {
                let mut s = self.up[x].clone();
                s.intersect_with(&self.down[z]);
                s
            }
            None => self.up[x].clone(),
        };
        let mut members: Vec<usize> = scope.iter().collect();
        members.sort_by_key(|&y| self.position[y]);
        for y in members {
            let value = if y == x {
                1
            } else {
                let mut below = self.down[y].clone();
                below.intersect_with(&scope);
                below.remove(y);
                -below.iter().map(|w| row[w].unwrap()).sum::<i64>()
            };
            row[y] = Some(value);
        }
        row
    }

    /// `μ(x, z)` from the defining recurrence.
    pub fn mobius(&self, x: usize, z: usize) -> Result<i64, PosetError> {
        if !self.leq(x, z) {
            return Err(PosetError::NotComparable(
                self.labels[x].clone(),
                self.labels[z].clone(),
            ));
        }
        Ok(self.mobius_row_until(x, Some(z))[z].unwrap())
    }

    /// Graphviz digraph of the cover relation, edges pointing upward.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(name));
        let _ = writeln!(out, "  rankdir=BT;");
        for l in &self.labels {
            let _ = writeln!(out, "  {};", quote(l));
        }
        for (lo, hi) in self.covers() {
            let _ = writeln!(
                out,
                "  {} -> {};",
                quote(&self.labels[lo]),
                quote(&self.labels[hi])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_hasse_json(&self) -> HasseJson {
        HasseJson {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(lo, hi)| [self.labels[lo].clone(), self.labels[hi].clone()])
                .collect(),
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// JSON form of a Hasse diagram: element labels and `[lower, upper]` cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

/// A finite lattice with precomputed meet and join tables.
#[derive(Clone, Debug)]
pub struct BoundedLattice {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
    meet: Vec<u16>,
    join: Vec<u16>,
}

/// Element count beyond which lattice tables are refused.
pub const MAX_LATTICE_SIZE: usize = u16::MAX as usize;

/// Builds the table `op(x, y)` for every pair, where `op` is the meet when
/// `covers` are lower covers and the join when they are upper covers.
///
/// For `x` and `y` incomparable, every common bound below `x` lies below some
/// lower cover `c` of `x`, so the meet is the largest of the `meet(c, y)`;
/// rows are filled in `order` so those entries already exist.
fn bound_table(
    poset: &FinitePoset,
    order: &[usize],
    covers: &[Vec<usize>],
    below: impl Fn(usize, usize) -> bool,
    bound: &'static str,
) -> Result<Vec<u16>, PosetError> {
    let n = poset.len();
    let mut table = vec![0u16; n * n];
    let fail = |x: usize, y: usize| PosetError::NotALattice {
        bound,
        left: poset.labels[x].clone(),
        right: poset.labels[y].clone(),
    };
    for &x in order {
        for y in 0..n {
            let value = if below(x, y) {
                x
            } else if below(y, x) {
                y
            } else {
                let mut candidates = covers[x].iter().map(|&c| table[c * n + y] as usize);
                let mut best = candidates.next().ok_or_else(|| fail(x, y))?;
                for c in candidates {
                    if below(best, c) {
                        best = c;
                    }
                }
                if covers[x]
                    .iter()
                    .any(|&c| !below(table[c * n + y] as usize, best))
                {
                    return Err(fail(x, y));
                }
                best
            };
            table[x * n + y] = value as u16;
        }
    }
    Ok(table)
}

impl BoundedLattice {
    /// Checks that every pair has a meet and a join and builds both tables.
    pub fn from_poset(poset: FinitePoset) -> Result<Self, PosetError> {
        let n = poset.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        if n > MAX_LATTICE_SIZE {
            return Err(PosetError::TooLarge(n));
        }
        let meet = bound_table(
            &poset,
            &poset.linear,
            &poset.lower_covers,
            |a, b| poset.leq(a, b),
            "meet",
        )?;
        let reversed: Vec<usize> = poset.linear.iter().rev().copied().collect();
        let join = bound_table(
            &poset,
            &reversed,
            &poset.upper_covers,
            |a, b| poset.leq(b, a),
            "join",
        )?;
        let bottom = poset.linear[0];
        let top = poset.linear[n - 1];
        debug_assert_eq!(poset.up[bottom].count(), n);
        debug_assert_eq!(poset.down[top].count(), n);
        Ok(BoundedLattice {
            poset,
            bottom,
            top,
            meet,
            join,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    /// Meet of a collection; the empty meet is `1̂`.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a collection; the empty join is `0̂`.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Elements covering `0̂`, in index order.
    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom).to_vec()
    }

    /// Elements covered by `1̂`, in index order.
    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top).to_vec()
    }

    /// The order-reversed lattice: bounds and meet/join tables swap.
    pub fn dual(&self) -> BoundedLattice {
        BoundedLattice {
            poset: self.poset.dual(),
            bottom: self.top,
            top: self.bottom,
            meet: self.join.clone(),
            join: self.meet.clone(),
        }
    }

    /// `μ(0̂, 1̂)`.
    pub fn mobius_number(&self) -> i64 {
        self.poset
            .mobius(self.bottom, self.top)
            .expect("0̂ <= 1̂ in a bounded lattice")
    }
}

/// Convenience wrapper for [`BoundedLattice::from_poset`].
pub fn as_lattice(poset: FinitePoset) -> Result<BoundedLattice, PosetError> {
    BoundedLattice::from_poset(poset)
}
