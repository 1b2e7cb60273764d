//! Modified Fibonacci polynomials and sparse sets.
//!
//! `F_1 = F_2 = 1`, `F_{k+2} = F_{k+1} + q F_k`. The generating polynomial of
//! sparse sets, `H_n(q) = Σ q^{|X|-1}`, is built independently from the
//! enumeration so the two can be compared.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("{0:?} is not a sparse subset of [{1}]")]
    NotSparse(Vec<usize>, usize),
}

/// Integer polynomial in `q`; `coeffs[d]` is the coefficient of `q^d`.
/// The highest stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Multiplication by `q`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// `1 + 4*q + 3*q^2`; zero terms are dropped and unit coefficients on
    /// powers of `q` are implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let power = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if d == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Coefficient array; entries outside `i64` are written as decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// `F_n(q)`.
pub fn fib_poly(n: usize) -> Result<IntPolynomial, FibError> {
    if n == 0 {
        return Err(FibError::ZeroIndex);
    }
    let (mut prev, mut cur) = (IntPolynomial::one(), IntPolynomial::one());
    for _ in 2..n {
        let next = &cur + &prev.shift();
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// A subset of `[n]` containing 1 with no two consecutive members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseSet {
    n: usize,
    members: Vec<usize>,
}

impl SparseSet {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self, FibError> {
        members.sort_unstable();
        let ok = members.first() == Some(&1)
            && members.last().is_some_and(|&m| m <= n)
            && members.windows(2).all(|w| w[1] > w[0] + 1);
        if !ok {
            return Err(FibError::NotSparse(members, n));
        }
        Ok(SparseSet { n, members })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for SparseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All sparse subsets of `[n]`, lexicographically. Empty for `n = 0`.
pub fn sparse_sets(n: usize) -> Vec<SparseSet> {
    fn grow(n: usize, members: &mut Vec<usize>, out: &mut Vec<SparseSet>) {
        out.push(SparseSet {
            n,
            members: members.clone(),
        });
        let last = *members.last().unwrap();
        for next in last + 2..=n {
            members.push(next);
            grow(n, members, out);
            members.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        grow(n, &mut vec![1], &mut out);
    }
    out
}

/// `H_n(q) = Σ_X q^{|X|-1}` over sparse `X ⊆ [n]`.
///
/// Sets are counted by size and largest element: a sparse set of size `k`
/// ending at `j` is one of size `k - 1` ending at some `i ≤ j - 2`, plus `j`.
pub fn h_poly(n: usize) -> Result<IntPolynomial, FibError> {
    if n == 0 {
        return Err(FibError::ZeroIndex);
    }
    // ending[j] counts sets of the current size whose largest element is j.
    let mut ending = vec![BigInt::zero(); n + 1];
    ending[1] = BigInt::one();
    let mut counts = Vec::new();
    loop {
        let total: BigInt = ending.iter().sum();
        if total.is_zero() {
            break;
        }
        counts.push(total);
        let mut next = vec![BigInt::zero(); n + 1];
        let mut prefix = BigInt::zero();
        for j in 3..=n {
            prefix += &ending[j - 2];
            next[j] = prefix.clone();
        }
        ending = next;
    }
    Ok(IntPolynomial::new(counts))
}

/// `Σ (-1)^{|X|+1}` over sparse `X ⊆ [n]`; zero for `n = 0`.
pub fn signed_sparse_sum(n: usize) -> i64 {
    sparse_sets(n)
        .iter()
        .map(|x| if x.len() % 2 == 1 { 1 } else { -1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn h_poly_matches_enumerated_sets() {
        for n in 1..=16 {
            let mut counts = vec![0i64; n];
            for x in sparse_sets(n) {
                counts[x.len() - 1] += 1;
            }
            while counts.last() == Some(&0) {
                counts.pop();
            }
            assert_eq!(h_poly(n).unwrap(), poly(&counts), "n = {n}");
        }
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib_poly(1).unwrap(), poly(&[1]));
        assert_eq!(fib_poly(2).unwrap(), poly(&[1]));
        assert_eq!(fib_poly(3).unwrap(), poly(&[1, 1]));
        assert_eq!(fib_poly(5).unwrap(), poly(&[1, 3, 1]));
        assert_eq!(fib_poly(0), Err(FibError::ZeroIndex));
    }

    #[test]
    fn sparse_set_examples() {
        let show = |n| sparse_sets(n).iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(show(4), vec!["{1}", "{1,3}", "{1,4}"]);
        assert_eq!(show(1), vec!["{1}"]);
        assert_eq!(show(2), vec!["{1}"]);
        assert_eq!(show(5), vec!["{1}", "{1,3}", "{1,3,5}", "{1,4}", "{1,5}"]);
        assert!(sparse_sets(0).is_empty());
    }

    #[test]
    fn sparse_set_validation() {
        assert!(SparseSet::new(4, vec![1, 3]).is_ok());
        assert!(SparseSet::new(4, vec![]).is_err());
        assert!(SparseSet::new(4, vec![2]).is_err());
        assert!(SparseSet::new(4, vec![1, 2]).is_err());
        assert!(SparseSet::new(4, vec![1, 5]).is_err());
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_poly(4).unwrap(), poly(&[1, 2]));
        assert_eq!(h_poly(1).unwrap(), poly(&[1]));
        assert_eq!(h_poly(6).unwrap(), poly(&[1, 4, 3]));
        assert_eq!(h_poly(6).unwrap(), fib_poly(6).unwrap());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(fib_poly(1).unwrap().eval(-1), BigInt::from(1));
        assert_eq!(fib_poly(4).unwrap().eval(-1), BigInt::from(-1));
        let seq: Vec<i64> = (1..=9)
            .map(|n| fib_poly(n).unwrap().eval(-1).to_i64().unwrap())
            .collect();
        assert_eq!(seq, vec![1, 1, 0, -1, -1, 0, 1, 1, 0]);
        assert_eq!(IntPolynomial::zero().eval(5), BigInt::zero());
    }

    #[test]
    fn display_and_json() {
        assert_eq!(fib_poly(1).unwrap().to_string(), "1");
        assert_eq!(fib_poly(3).unwrap().to_string(), "1 + q");
        assert_eq!(fib_poly(4).unwrap().to_string(), "1 + 2*q");
        assert_eq!(fib_poly(6).unwrap().to_string(), "1 + 4*q + 3*q^2");
        assert_eq!(poly(&[0, -1, 0, 2]).to_string(), "-q + 2*q^3");
        assert_eq!(poly(&[3, -2]).to_string(), "3 - 2*q");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(serde_json::to_string(&fib_poly(6).unwrap()).unwrap(), "[1,4,3]");
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]);
        assert_eq!(&a * &a, poly(&[1, 2, 1]));
        assert_eq!(&a + &poly(&[-1, -1]), IntPolynomial::zero());
        assert_eq!(a.shift(), poly(&[0, 1, 1]));
        assert_eq!(poly(&[0, 0]).degree(), None);
    }

    #[test]
    fn large_index_does_not_overflow() {
        // F_n(1) is the Fibonacci number; F_100(1) exceeds u64.
        let f = fib_poly(100).unwrap();
        assert_eq!(
            f.eval(1).to_string(),
            "354224848179261915075"
        );
    }

    #[test]
    fn signed_sum_matches_small_cases() {
        assert_eq!(signed_sparse_sum(1), 1);
        assert_eq!(signed_sparse_sum(3), 0);
        assert_eq!(signed_sparse_sum(4), -1);
    }
}
