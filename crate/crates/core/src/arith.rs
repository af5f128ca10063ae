//! Exact scalars, Bernoulli numbers and multiindex bookkeeping.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::Error;

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number with the convention `B_1 = -1/2`.
///
/// Computed with the Akiyama-Tanigawa transform (which natively yields
/// `B_1 = +1/2`, so the sign of that single entry is flipped) and memoized.
pub fn bernoulli(m: usize) -> Rational {
    let table = BERNOULLI.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = table.lock().expect("bernoulli table poisoned");
    if guard.len() <= m {
        *guard = akiyama_tanigawa(m.max(2 * guard.len()).max(24));
    }
    guard[m].clone()
}

fn akiyama_tanigawa(upto: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(upto + 1);
    for m in 0..=upto {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = int(j as i64) * d;
        }
        out.push(a[0].clone());
    }
    if upto >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

/// Exponent vector `K = (k_1, ..., k_n)`.
///
/// Ordered graded-lexicographically: by total degree first, then so that
/// larger exponents of earlier variables come first (`x1^2 < x1 x2 < x2^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u16; 6]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut k = Self::zero(n);
        k.0[i] = 1;
        k
    }

    pub fn from_slice(e: &[u16]) -> Self {
        MultiIndex(SmallVec::from_slice(e))
    }

    pub fn from_vec(e: Vec<u32>) -> Self {
        MultiIndex(e.into_iter().map(|v| v as u16).collect())
    }

    /// PBW word `x_{i1} x_{i2} ...` in nondecreasing letter order.
    pub fn from_letters(n: usize, letters: &[usize]) -> Self {
        let mut k = Self::zero(n);
        for &l in letters {
            k.0[l] += 1;
        }
        k
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_unit(&self, i: usize) -> Self {
        let mut k = self.clone();
        k.0[i] += 1;
        k
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn sub_unit(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut k = self.clone();
        k.0[i] -= 1;
        Some(k)
    }

    /// Componentwise partial order.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e as u32))
    }

    /// Letters of the ordered monomial, e.g. `(2,0,1)` gives `[0,0,2]`.
    pub fn letters(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                w.push(i);
            }
        }
        w
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    pub fn min_letter(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// All `K1 <= self` componentwise, in graded order.
    pub fn submultiindices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(SmallVec::new())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for k in &out {
                for v in 0..=e {
                    let mut k2 = k.clone();
                    k2.0.push(v);
                    next.push(k2);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All multiindices of length `n` with total degree at most `d`, sorted.
    pub fn all_up_to(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for deg in 0..=d {
            out.extend(Self::all_of_degree(n, deg));
        }
        out
    }

    pub fn all_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d as u16);
                out.push(MultiIndex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for v in (0..=d).rev() {
                prefix.push(v as u16);
                rec(n, d - v, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(SmallVec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `prod_i binom(k_i, k1_i)`.
pub fn multiindex_binomial(k: &MultiIndex, k1: &MultiIndex) -> Result<Rational, Error> {
    if k.n() != k1.n() || !k1.le(k) {
        return Err(Error::Domain(format!("{k1} is not below {k}")));
    }
    Ok(big(&k
        .exps()
        .iter()
        .zip(k1.exps())
        .fold(BigInt::one(), |acc, (&a, &b)| {
            acc * binomial(a as u32, b as u32)
        })))
}

/// Same as [`multiindex_binomial`] for callers that already know `k1 <= k`.
pub(crate) fn mbinom(k: &MultiIndex, k1: &MultiIndex) -> BigInt {
    k.exps()
        .iter()
        .zip(k1.exps())
        .fold(BigInt::one(), |acc, (&a, &b)| acc * binomial(a as u32, b as u32))
}

pub(crate) fn sign_pow(deg: u32) -> Rational {
    if deg % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for m in (3..20).step_by(2) {
            assert!(bernoulli(m).is_zero());
        }
    }

    #[test]
    fn binomials() {
        let k = MultiIndex::from_slice(&[2, 1]);
        assert_eq!(multiindex_binomial(&k, &MultiIndex::from_slice(&[1, 0])).unwrap(), int(2));
        let k = MultiIndex::from_slice(&[3, 2]);
        assert_eq!(multiindex_binomial(&k, &MultiIndex::from_slice(&[2, 2])).unwrap(), int(3));
        let z = MultiIndex::zero(3);
        assert_eq!(multiindex_binomial(&z, &z).unwrap(), int(1));
        assert!(multiindex_binomial(&z, &MultiIndex::unit(3, 1)).is_err());
    }

    #[test]
    fn graded_order() {
        let v = MultiIndex::all_up_to(2, 2);
        let shown: Vec<String> = v.iter().map(|k| k.to_string()).collect();
        assert_eq!(shown, ["(0,0)", "(1,0)", "(0,1)", "(2,0)", "(1,1)", "(0,2)"]);
        let mut w = v.clone();
        w.reverse();
        w.sort();
        assert_eq!(v, w);
    }

    #[test]
    fn submultiindex_count() {
        let k = MultiIndex::from_slice(&[2, 0, 3]);
        assert_eq!(k.submultiindices().len(), 12);
        assert_eq!(k.letters(), vec![0, 0, 2, 2, 2]);
    }
}
