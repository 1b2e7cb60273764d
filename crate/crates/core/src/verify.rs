//! Machine checks of the structural and enumerative facts about the three
//! families, collected into a JSON-serializable report.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::{
    a_patterns, b_patterns, phi, psi, theta_meet_formula, Family, FamilyLattice,
    Member,
};
use crate::fibpoly::{fib_poly, h_poly, signed_sparse_sum, sparse_sets};
use crate::nbb::{signed_count, AtomOrder};
use crate::permutation::{all_permutations, enumerate_avoiders, Permutation};
use crate::poset::BoundedLattice;

/// Unwraps a result inside a check, reporting the error as the failure witness.
macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        }
    };
}

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    /// `"A"`, `"B"`, `"C"`, or `"-"` for claims not tied to one family.
    pub family: String,
    pub n: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Claim {
    fn new(id: &str, family: &str, n: usize, failure: Option<String>) -> Self {
        Claim {
            id: id.to_string(),
            family: family.to_string(),
            n,
            pass: failure.is_none(),
            witness: failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claims: Vec<Claim>,
    pub seed: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Random atom orders tried per family lattice.
    pub random_orders: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 7,
            seed: 0,
            random_orders: 20,
        }
    }
}

/// Deterministic per-(family, n) generator derived from the run seed.
pub fn family_rng(seed: u64, family: Family, n: usize) -> ChaCha8Rng {
    let tag = match family {
        Family::A => 1u64,
        Family::B => 2,
        Family::C => 3,
    };
    ChaCha8Rng::seed_from_u64(seed ^ (tag << 56) ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Möbius number of a family lattice computed four ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MobiusSummary {
    pub family: Family,
    pub n: usize,
    /// From the defining recurrence.
    pub oracle: i64,
    /// Signed count of NBB bases under the canonical order.
    pub nbb: i64,
    /// `Σ (-1)^{|X|+1}` over sparse `X ⊆ [n-2]`; `None` for `n < 3`.
    pub sparse_sum: Option<i64>,
    /// `F_{n-2}(-1)`; `None` for `n < 3`.
    pub fib_value: Option<i64>,
}

impl MobiusSummary {
    pub fn agrees(&self) -> bool {
        self.nbb == self.oracle
            && self.sparse_sum.is_none_or(|v| v == self.oracle)
            && self.fib_value.is_none_or(|v| v == self.oracle)
    }
}

/// `F_{n-2}(-1)` for `n >= 3`.
pub fn fib_at_minus_one(n: usize) -> Option<i64> {
    if n < 3 {
        return None;
    }
    fib_poly(n - 2).ok()?.eval(-1).to_i64()
}

pub fn mobius_summary(fl: &FamilyLattice) -> MobiusSummary {
    let n = fl.n();
    let engine = fl.nbb_lattice();
    let nbb = fl
        .nbb_bases(&engine, fl.canonical_order())
        .map(|b| signed_count(&b))
        .expect("canonical order is an atom order of the engine lattice");
    MobiusSummary {
        family: fl.family(),
        n,
        oracle: fl.lattice().mobius_number(),
        nbb,
        sparse_sum: (n >= 3).then(|| signed_sparse_sum(n - 2)),
        fib_value: fib_at_minus_one(n),
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, check: impl Fn(&T) -> Option<String>) -> Option<String> {
    items.into_iter().find_map(|t| check(&t))
}

/// Catalan numbers `C_0..=C_max` by the convolution recurrence.
pub fn catalan_numbers(max: usize) -> Vec<u64> {
    let mut c = vec![1u64];
    for m in 1..=max {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c
}

/// Sizes of the 123-132-213-avoider sets for `n = 1..=max` from
/// `a_1 = 1, a_2 = 2, a_n = a_{n-1} + a_{n-2}`.
pub fn a_cardinalities(max: usize) -> Vec<u64> {
    let mut v = vec![1u64, 2];
    while v.len() < max {
        let k = v.len();
        v.push(v[k - 1] + v[k - 2]);
    }
    v.truncate(max);
    v
}

/// Upward closure of `A'_n` in the weak order on `S_n`.
pub fn check_a_filter(n: usize) -> Option<String> {
    let set: HashSet<Permutation> = enumerate_avoiders(n, &a_patterns()).into_iter().collect();
    first_failure(set.iter(), |p| {
        (1..n)
            .filter(|&i| p.value(i) < p.value(i + 1))
            .map(|i| p.swap_adjacent(i))
            .find(|q| !set.contains(q))
            .map(|q| format!("{p} is covered by {q}, which contains a forbidden pattern"))
    })
}

/// Downward closure of `B'_n` in the weak order on `S_n`.
pub fn check_b_ideal(n: usize) -> Option<String> {
    let set: HashSet<Permutation> = enumerate_avoiders(n, &b_patterns()).into_iter().collect();
    first_failure(set.iter(), |p| {
        (1..n)
            .filter(|&i| p.value(i) > p.value(i + 1))
            .map(|i| p.swap_adjacent(i))
            .find(|q| !set.contains(q))
            .map(|q| format!("{p} covers {q}, which contains 321"))
    })
}

/// `Ã_{m+2} = (m+1)(m+2)Ã_m ⊎ (m+2)Ã_{m+1}` as sets of words.
pub fn check_a_shape_recurrence(m: usize) -> Option<String> {
    let target: Vec<Vec<usize>> = enumerate_avoiders(m + 2, &a_patterns())
        .iter()
        .map(|p| p.word())
        .collect();
    let prefixed = |k: usize, prefix: &[usize]| -> Vec<Vec<usize>> {
        let base: Vec<Vec<usize>> = if k == 0 {
            vec![Vec::new()]
        } else {
            enumerate_avoiders(k, &a_patterns())
                .iter()
                .map(|p| p.word())
                .collect()
        };
        base.into_iter()
            .map(|w| prefix.iter().copied().chain(w).collect())
            .collect()
    };
    let left = prefixed(m, &[m + 1, m + 2]);
    let right = prefixed(m + 1, &[m + 2]);
    let left_set: HashSet<_> = left.iter().cloned().collect();
    let right_set: HashSet<_> = right.iter().cloned().collect();
    if let Some(w) = left_set.intersection(&right_set).next() {
        return Some(format!("{w:?} lies in both parts"));
    }
    let union: HashSet<_> = left_set.union(&right_set).cloned().collect();
    let target_set: HashSet<_> = target.iter().cloned().collect();
    if union != target_set {
        let extra = union.symmetric_difference(&target_set).next().unwrap();
        return Some(format!("{extra:?} is in exactly one side"));
    }
    None
}

/// Every proper element of `A_n` starts with `n` or with `(n-1) n`.
pub fn check_a_prefix(n: usize) -> Option<String> {
    first_failure(enumerate_avoiders(n, &a_patterns()), |p| {
        let ok = p.value(1) == n || (n >= 2 && p.value(1) == n - 1 && p.value(2) == n);
        (!ok).then(|| format!("{p} starts with neither {n} nor {}{n}", n - 1))
    })
}

/// 321-avoidance ⇔ no inversions `(i, j)` and `(j, k)` sharing `j`, on all of `S_n`.
pub fn check_no_chained_inversions(n: usize) -> Option<String> {
    let pattern: Permutation = "321".parse().unwrap();
    first_failure(all_permutations(n), |p| {
        let inv = p.inversion_set();
        let chained = (1..=n).any(|j| {
            (1..j).any(|i| inv.contains(i, j)) && (j + 1..=n).any(|k| inv.contains(j, k))
        });
        (chained == !p.contains_pattern(&pattern))
            .then(|| format!("{p}: chained inversions = {chained}"))
    })
}

/// `σ_i ∨ σ_{i+1}` leaves `B'_n` and is `1̂` in `B_n`.
pub fn check_adjacent_atoms_join_top(b: &FamilyLattice) -> Option<String> {
    let n = b.n();
    let pattern: Permutation = "321".parse().unwrap();
    first_failure(1..n.saturating_sub(1), |&i| {
        let s = Permutation::adjacent_transposition(n, i);
        let t = Permutation::adjacent_transposition(n, i + 1);
        let j = attempt!(s.weak_join(&t));
        if !j.contains_pattern(&pattern) {
            return Some(format!("σ_{i} ∨ σ_{} = {j} avoids 321", i + 1));
        }
        let l = b.lattice();
        let lj = l.join(attempt!(b.theta_or_sigma(i)), attempt!(b.theta_or_sigma(i + 1)));
        (lj != b.adjoined()).then(|| format!("σ_{i} ∨ σ_{} = {} in B_n", i + 1, b.label(lj)))
    })
}

/// Nonempty subsets of `[m]` as sorted index lists, in mask order.
pub fn index_subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1u64 << m)).map(move |mask| (1..=m).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
}

fn has_gap_two(indices: &[usize]) -> bool {
    indices.windows(2).all(|w| w[1] >= w[0] + 2)
}

/// For pairwise non-adjacent atoms, the join is the product of the
/// transpositions and lies in `B'_n`.
pub fn check_sparse_atoms_join_product(b: &FamilyLattice) -> Option<String> {
    let n = b.n();
    let pattern: Permutation = "321".parse().unwrap();
    first_failure(
        index_subsets(n.saturating_sub(1)).filter(|s| has_gap_two(s)),
        |set| {
            let mut product = Permutation::identity(n);
            for &i in set {
                product = product.swap_adjacent(i);
            }
            let atoms: Vec<Permutation> = set
                .iter()
                .map(|&i| Permutation::adjacent_transposition(n, i))
                .collect();
            let weak = attempt!(atoms[1..]
                .iter()
                .try_fold(atoms[0].clone(), |acc, a| acc.weak_join(a)));
            if weak != product || product.contains_pattern(&pattern) {
                return Some(format!("{set:?}: weak join {weak}, product {product}"));
            }
            let idx: Vec<usize> = attempt!(set.iter().map(|&i| b.theta_or_sigma(i)).collect::<Result<_, _>>());
            let lj = b.lattice().join_all(idx);
            (b.index_of_perm(&product) != Some(lj))
                .then(|| format!("{set:?}: lattice join {}", b.label(lj)))
        },
    )
}

/// Meets of `θ`s: the closed form where indices are spread out, `0̂`
/// whenever two indices are adjacent.
pub fn check_theta_meets(c: &FamilyLattice) -> Option<String> {
    let n = c.n();
    let bottom = c.adjoined();
    first_failure(index_subsets(n.saturating_sub(1)), |set| {
        let table = attempt!(c.theta_meet_table(set));
        match attempt!(theta_meet_formula(n, set)) {
            Some(w) => (c.index_of_word(&w) != Some(table))
                .then(|| format!("{set:?}: formula {w}, table {}", c.label(table))),
            None => (table != bottom)
                .then(|| format!("{set:?}: adjacent indices but meet {}", c.label(table))),
        }
    })
}

/// `φ_n` is an order isomorphism `C_n → A_n` with inverse `ψ_n`.
pub fn check_isomorphism(a: &FamilyLattice, c: &FamilyLattice) -> Option<String> {
    let n = a.n();
    let (la, lc) = (a.lattice(), c.lattice());
    if la.len() != lc.len() {
        return Some(format!("|A_n| = {} but |C_n| = {}", la.len(), lc.len()));
    }
    // Element map C index -> A index.
    let mut image = vec![usize::MAX; lc.len()];
    for (x, m) in c.members().iter().enumerate() {
        image[x] = match m {
            Member::Adjoined => a.adjoined(),
            Member::Word(w) => {
                let p = phi(w);
                match psi(&p) {
                    Ok(back) if back == *w => {}
                    other => return Some(format!("ψ(φ({w})) = {other:?}")),
                }
                match a.index_of_perm(&p) {
                    Some(i) => i,
                    None => return Some(format!("φ({w}) = {p} is not in A_{n}")),
                }
            }
            Member::Perm(_) => unreachable!("C_n holds words"),
        };
    }
    let mut hit = vec![false; la.len()];
    for &i in &image {
        if std::mem::replace(&mut hit[i], true) {
            return Some(format!("φ is not injective at {}", a.label(i)));
        }
    }
    for p in a.permutations() {
        match psi(&p) {
            Ok(w) if phi(&w) == p => {}
            other => return Some(format!("φ(ψ({p})) fails: {other:?}")),
        }
    }
    for x in 0..lc.len() {
        for y in 0..lc.len() {
            if lc.leq(x, y) != la.leq(image[x], image[y]) {
                return Some(format!(
                    "{} <= {} is {} in C_n but not in A_n",
                    c.label(x),
                    c.label(y),
                    lc.leq(x, y)
                ));
            }
        }
    }
    None
}

/// `μ` matrix times zeta matrix is the identity.
pub fn check_zeta_inverse(l: &BoundedLattice) -> Option<String> {
    let n = l.len();
    let poset = l.poset();
    let mu: Vec<Vec<Option<i64>>> = (0..n).map(|x| poset.mobius_row(x)).collect();
    for x in 0..n {
        for z in 0..n {
            let s: i64 = (0..n)
                .filter(|&y| poset.leq(y, z))
                .filter_map(|y| mu[x][y])
                .sum();
            if s != (x == z) as i64 {
                return Some(format!(
                    "(μ·ζ)({}, {}) = {s}",
                    poset.label(x),
                    poset.label(z)
                ));
            }
        }
    }
    None
}

/// `Σ_{x <= y <= z} μ(x, y) = δ(x, z)` for the given start points.
pub fn check_row_sums(l: &BoundedLattice, starts: &[usize]) -> Option<String> {
    let poset = l.poset();
    first_failure(starts.iter().copied(), |&x| {
        let row = poset.mobius_row(x);
        poset.up_set(x).iter().find_map(|z| {
            let s: i64 = poset.down_set(z).iter().filter_map(|y| row[y]).sum();
            (s != (x == z) as i64)
                .then(|| format!("row sum from {} to {} is {s}", poset.label(x), poset.label(z)))
        })
    })
}

/// Join and meet on `S_n` against brute-force bound search.
pub fn check_weak_lattice(n: usize) -> Option<String> {
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let inv: Vec<_> = perms.iter().map(|p| p.inversion_set()).collect();
    let leq = |a: usize, b: usize| inv[a].is_subset(&inv[b]);
    let k = perms.len();
    for x in 0..k {
        for y in 0..k {
            let uppers: Vec<usize> = (0..k).filter(|&z| leq(x, z) && leq(y, z)).collect();
            let least = uppers.iter().copied().find(|&u| uppers.iter().all(|&z| leq(u, z)));
            let lowers: Vec<usize> = (0..k).filter(|&z| leq(z, x) && leq(z, y)).collect();
            let greatest = lowers.iter().copied().find(|&g| lowers.iter().all(|&z| leq(z, g)));
            let (px, py) = (&perms[x], &perms[y]);
            let join = px.weak_join(py).ok();
            let meet = px.weak_meet(py).ok();
            if least.map(|i| perms[i].clone()) != join {
                return Some(format!("join of {px} and {py}"));
            }
            if greatest.map(|i| perms[i].clone()) != meet {
                return Some(format!("meet of {px} and {py}"));
            }
        }
    }
    None
}

/// NBB sums under `orders` random atom orders equal the recurrence value.
pub fn check_random_orders(fl: &FamilyLattice, seed: u64, orders: usize) -> Option<String> {
    let engine = fl.nbb_lattice();
    let oracle = fl.lattice().mobius_number();
    let mut rng = family_rng(seed, fl.family(), fl.n());
    (0..orders).find_map(|trial| {
        let ord = attempt!(AtomOrder::shuffled(&engine, &mut rng));
        let got = attempt!(ord.mobius_via_nbb());
        (got != oracle).then(|| {
            let labels: Vec<&str> = ord.sequence().iter().map(|&a| engine.label(a)).collect();
            format!("trial {trial}, order {labels:?}: nbb {got}, oracle {oracle}")
        })
    })
}

/// Pruned backtracking and unpruned enumeration produce the same bases.
pub fn check_pruning(fl: &FamilyLattice, seed: u64) -> Option<String> {
    let engine = fl.nbb_lattice();
    let mut rng = family_rng(seed ^ 0xA5A5, fl.family(), fl.n());
    let canonical = attempt!(AtomOrder::new(&engine, fl.canonical_order()));
    let shuffled = attempt!(AtomOrder::shuffled(&engine, &mut rng));
    for ord in [canonical, shuffled] {
        for x in 0..engine.len() {
            let pruned = ord.nbb_bases_of(x);
            if pruned != ord.nbb_bases_exhaustive(x) {
                return Some(format!("bases of {} differ", engine.label(x)));
            }
            if let Some(b) = pruned.iter().find(|b| {
                !ord.is_nbb(&b.atoms).unwrap_or(false) || engine.join_all(b.atoms.iter().copied()) != x
            }) {
                return Some(format!("reported base {:?} of {} is invalid", b.atoms, engine.label(x)));
            }
        }
    }
    None
}

/// Enumerated canonical-order NBB bases equal the sparse-set prediction.
pub fn check_nbb_characterization(fl: &FamilyLattice) -> Option<String> {
    let engine = fl.nbb_lattice();
    let got: HashSet<Vec<usize>> = match fl.nbb_bases(&engine, fl.canonical_order()) {
        Ok(b) => b.into_iter().map(|b| sorted(b.atoms)).collect(),
        Err(e) => return Some(e.to_string()),
    };
    let predicted: HashSet<Vec<usize>> = match fl.predicted_bases() {
        Ok(p) => p.into_iter().map(sorted).collect(),
        Err(e) => return Some(e.to_string()),
    };
    let expected_count = sparse_sets(fl.n() - 2).len();
    if got != predicted {
        return Some(format!("enumerated {got:?}, predicted {predicted:?}"));
    }
    (got.len() != expected_count).then(|| format!("{} bases vs {expected_count} sparse sets", got.len()))
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Runs every check for degrees `1..=max_n`.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let mut claims = Vec::new();
    let catalan = catalan_numbers(cfg.max_n);
    let a_sizes = a_cardinalities(cfg.max_n.max(2));

    for n in 1..=cfg.max_n {
        let built: Vec<(Family, Result<FamilyLattice, String>)> = [Family::A, Family::B, Family::C]
            .into_iter()
            .map(|f| (f, FamilyLattice::build(f, n).map_err(|e| e.to_string())))
            .collect();
        for (f, r) in &built {
            claims.push(Claim::new("is-lattice", &f.to_string(), n, r.as_ref().err().cloned()));
        }
        let [(_, Ok(a)), (_, Ok(b)), (_, Ok(c))] = &built[..] else {
            continue;
        };

        claims.push(Claim::new("order-filter", "A", n, check_a_filter(n)));
        claims.push(Claim::new("leading-letters", "A", n, check_a_prefix(n)));
        let a_count = a.lattice().len() as u64 - 1;
        claims.push(Claim::new(
            "fibonacci-count",
            "A",
            n,
            (a_count != a_sizes[n - 1]).then(|| format!("{a_count} vs {}", a_sizes[n - 1])),
        ));
        if n + 2 <= cfg.max_n {
            claims.push(Claim::new("shape-recurrence", "A", n, check_a_shape_recurrence(n)));
        }
        claims.push(Claim::new("phi-psi-isomorphism", "A", n, check_isomorphism(a, c)));

        claims.push(Claim::new("order-ideal", "B", n, check_b_ideal(n)));
        let b_count = b.lattice().len() as u64 - 1;
        claims.push(Claim::new(
            "catalan-count",
            "B",
            n,
            (b_count != catalan[n]).then(|| format!("{b_count} vs {}", catalan[n])),
        ));
        claims.push(Claim::new("no-chained-inversions", "B", n, check_no_chained_inversions(n)));
        claims.push(Claim::new("adjacent-atoms-join-top", "B", n, check_adjacent_atoms_join_top(b)));
        claims.push(Claim::new("sparse-atoms-join-product", "B", n, check_sparse_atoms_join_product(b)));

        claims.push(Claim::new("theta-meets", "C", n, check_theta_meets(c)));

        for fl in [a, b, c] {
            let tag = fl.family().to_string();
            let l = fl.lattice();
            let summary = mobius_summary(fl);
            claims.push(Claim::new(
                "nbb-canonical-order",
                &tag,
                n,
                (summary.nbb != summary.oracle)
                    .then(|| format!("nbb {}, oracle {}", summary.nbb, summary.oracle)),
            ));
            claims.push(Claim::new(
                "nbb-random-orders",
                &tag,
                n,
                check_random_orders(fl, cfg.seed, cfg.random_orders),
            ));
            claims.push(Claim::new("nbb-pruning", &tag, n, check_pruning(fl, cfg.seed)));
            if l.len() <= 2000 {
                let starts: Vec<usize> = if l.len() <= 200 {
                    (0..l.len()).collect()
                } else {
                    vec![l.bottom()]
                };
                claims.push(Claim::new("mobius-row-sums", &tag, n, check_row_sums(l, &starts)));
            }
            if l.len() <= 500 {
                claims.push(Claim::new("zeta-inverse", &tag, n, check_zeta_inverse(l)));
            }
            if n >= 3 {
                claims.push(Claim::new(
                    "mobius-fibonacci",
                    &tag,
                    n,
                    (!summary.agrees()).then(|| format!("{summary:?}")),
                ));
            }
        }
        if n >= 3 {
            claims.push(Claim::new("nbb-characterization", "C", n, check_nbb_characterization(c)));
            claims.push(Claim::new("nbb-characterization", "B", n, check_nbb_characterization(b)));
            claims.push(Claim::new("nbb-characterization", "A", n, check_nbb_characterization(a)));
            let (ma, mb, mc) = (
                a.lattice().mobius_number(),
                b.lattice().mobius_number(),
                c.lattice().mobius_number(),
            );
            claims.push(Claim::new(
                "mobius-concordance",
                "-",
                n,
                (ma != mb || mb != mc).then(|| format!("A {ma}, B {mb}, C {mc}")),
            ));
        }
        if n <= 5 {
            claims.push(Claim::new("weak-order-bounds", "-", n, check_weak_lattice(n)));
        }
    }

    let h_eq_f = first_failure(1..=20usize, |&n| {
        let (h, f) = (attempt!(h_poly(n)), attempt!(fib_poly(n)));
        (h != f).then(|| format!("H_{n} = {h}, F_{n} = {f}"))
    });
    claims.push(Claim::new("sparse-generating-polynomial", "-", 20, h_eq_f));
    let counts = first_failure(1..=20usize, |&n| {
        let count = sparse_sets(n).len();
        let f1 = attempt!(fib_poly(n)).eval(1);
        (f1 != count.into()).then(|| format!("n={n}: {count} sparse sets, F_n(1) = {f1}"))
    });
    claims.push(Claim::new("sparse-count", "-", 20, counts));

    Report {
        claims,
        seed: cfg.seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_and_fibonacci_tables() {
        assert_eq!(catalan_numbers(9), vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
        assert_eq!(a_cardinalities(6), vec![1, 2, 3, 5, 8, 13]);
        assert_eq!(a_cardinalities(1), vec![1]);
    }

    #[test]
    fn shape_recurrence_smallest_instance() {
        assert_eq!(check_a_shape_recurrence(1), None);
        assert_eq!(check_a_shape_recurrence(0), None);
    }

    #[test]
    fn chained_inversion_characterization_small() {
        for n in 1..=5 {
            assert_eq!(check_no_chained_inversions(n), None);
        }
    }

    #[test]
    fn adjacent_join_escapes_at_three() {
        let b3 = FamilyLattice::build_b(3).unwrap();
        assert_eq!(check_adjacent_atoms_join_top(&b3), None);
        let j = Permutation::adjacent_transposition(3, 1)
            .weak_join(&Permutation::adjacent_transposition(3, 2))
            .unwrap();
        assert_eq!(j.to_string(), "321");
    }

    #[test]
    fn summary_for_c3() {
        let c3 = FamilyLattice::build_c(3).unwrap();
        let s = mobius_summary(&c3);
        assert_eq!((s.oracle, s.nbb, s.sparse_sum, s.fib_value), (1, 1, Some(1), Some(1)));
        let a2 = FamilyLattice::build_a(2).unwrap();
        let s = mobius_summary(&a2);
        assert_eq!((s.oracle, s.sparse_sum), (0, None));
        assert!(s.agrees());
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&SuiteConfig {
            max_n: 4,
            seed: 7,
            random_orders: 5,
        });
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(report
            .claims
            .iter()
            .any(|c| c.id == "shape-recurrence" && c.n == 1));
    }

    #[test]
    fn degree_one_suite_is_structural_only() {
        let report = run_suite(&SuiteConfig {
            max_n: 1,
            seed: 0,
            random_orders: 3,
        });
        assert!(report.all_pass());
        assert!(!report.claims.iter().any(|c| c.id == "mobius-fibonacci"));
    }
}
