//! Truncated power series in the commuting generators `d1..dn`, matrices of
//! them, and the matrices `C`, `phi`, `phi~`, `O = e^C`, `O^-1 = e^-C`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{big, factorial, fmt_rational, sign_pow, MultiIndex, Rational};
use crate::lie::LieAlgebra;
use crate::report::Outcome;
use crate::{Error, Result};

/// Precision value for series known exactly in every degree (polynomials).
pub const EXACT: i64 = i64::MAX / 4;

pub(crate) fn prec_sub(p: i64, k: i64) -> i64 {
    if p >= EXACT {
        EXACT
    } else {
        (p - k).max(-1)
    }
}

/// Element of the completed symmetric algebra known through total degree `prec`.
///
/// Stored terms all have degree `<= prec` and nonzero coefficients; `prec = -1`
/// carries no information.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    n: usize,
    prec: i64,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Series {
    pub fn zero(n: usize, prec: i64) -> Self {
        Series { n, prec: prec.max(-1), terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational, prec: i64) -> Self {
        Self::monomial(MultiIndex::zero(n), c, prec)
    }

    pub fn one(n: usize, prec: i64) -> Self {
        Self::constant(n, Rational::one(), prec)
    }

    /// The generator `d_{i+1}`.
    pub fn var(n: usize, i: usize, prec: i64) -> Self {
        Self::monomial(MultiIndex::unit(n, i), Rational::one(), prec)
    }

    pub fn monomial(k: MultiIndex, c: Rational, prec: i64) -> Self {
        let mut s = Self::zero(k.n(), prec);
        s.add_term(k, c);
        s
    }

    pub fn from_terms<I>(n: usize, prec: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut s = Self::zero(n, prec);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// Adds `c * d^k`, dropping it if it lies beyond the precision.
    pub fn add_term(&mut self, k: MultiIndex, c: Rational) {
        if c.is_zero() || k.degree() as i64 > self.prec {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|k| k.degree())
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|k| k.degree())
    }

    /// Forgets everything above degree `p`.
    pub fn truncate(&self, p: i64) -> Self {
        if p >= self.prec {
            return self.clone();
        }
        let p = p.max(-1);
        Series {
            n: self.n,
            prec: p,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() as i64 <= p)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_prec(mut self, p: i64) -> Self {
        if p < self.prec {
            self = self.truncate(p);
        } else {
            self.prec = p;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec.min(other.prec);
        let mut out = self.truncate(p);
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.prec);
        }
        Series {
            n: self.n,
            prec: self.prec,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        if other.prec < self.prec {
            *self = self.truncate(other.prec);
        }
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Product known through `min(prec_a, prec_b)`.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_to(other, self.prec.min(other.prec))
    }

    /// Product truncated at `p`; the caller vouches that `p` is justified.
    pub(crate) fn mul_to(&self, other: &Self, p: i64) -> Self {
        let mut out = Self::zero(self.n, p);
        for (ka, ca) in &self.terms {
            let da = ka.degree() as i64;
            if da > p {
                break;
            }
            for (kb, cb) in &other.terms {
                if da + kb.degree() as i64 > p {
                    break;
                }
                out.add_term(ka.add(kb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n, self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `d_{i+1}`; loses one degree.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, prec_sub(self.prec, 1));
        for (k, c) in &self.terms {
            if let Some(k1) = k.sub_unit(i) {
                out.add_term(k1, c * Rational::from_integer(k.get(i).into()));
            }
        }
        out
    }

    /// The substitution `d -> -d`.
    pub fn reflect(&self) -> Self {
        Series {
            n: self.n,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * sign_pow(k.degree())))
                .collect(),
        }
    }

    /// Constant term.
    pub fn eval_at_zero(&self) -> Result<Rational> {
        if self.prec < 0 {
            return Err(Error::precision(0, self.prec));
        }
        Ok(self.coeff(&MultiIndex::zero(self.n)))
    }

    /// Coefficient agreement in every degree `<= p`.
    pub fn eq_at(&self, other: &Self, p: i64) -> bool {
        let a = self.terms.iter().filter(|(k, _)| k.degree() as i64 <= p);
        let b = other.terms.iter().filter(|(k, _)| k.degree() as i64 <= p);
        a.eq(b)
    }

    /// Agreement through the common precision.
    pub fn agrees(&self, other: &Self) -> bool {
        self.eq_at(other, self.prec.min(other.prec))
    }

    /// First coefficient (in canonical order) where the two differ through `p`.
    pub fn first_difference(&self, other: &Self, p: i64) -> Option<(MultiIndex, Rational, Rational)> {
        let keys: std::collections::BTreeSet<&MultiIndex> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|k| k.degree() as i64 <= p)
            .collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }

    /// Canonical text: graded-lex terms such as `1/2*d2 + d1*d3`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(k, "d", "*");
            if mono.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&fmt_rational(&mag));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} [exact]", self.render())
        } else {
            write!(f, "{} [prec {}]", self.render(), self.prec)
        }
    }
}

/// `d1^2*d3` style monomial text; empty for the unit monomial.
pub(crate) fn render_monomial(k: &MultiIndex, sym: &str, sep: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in k.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{sym}{}", i + 1)),
            _ => parts.push(format!("{sym}{}^{e}", i + 1)),
        }
    }
    parts.join(sep)
}

/// `n x n` matrix of series, entry `(row, col) = M^row_col`.
#[derive(Clone, Debug)]
pub struct MatrixSeries {
    n: usize,
    entries: Vec<Series>,
}

impl MatrixSeries {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Series) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(f(a, b));
            }
        }
        let p = entries.iter().map(|e| e.prec).min().unwrap_or(EXACT);
        MatrixSeries { n, entries: entries.into_iter().map(|e| e.with_prec(p)).collect() }
    }

    pub fn identity(n: usize, prec: i64) -> Self {
        Self::from_fn(n, |a, b| {
            if a == b {
                Series::one(n, prec)
            } else {
                Series::zero(n, prec)
            }
        })
    }

    pub fn zero(n: usize, prec: i64) -> Self {
        Self::from_fn(n, |_, _| Series::zero(n, prec))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn prec(&self) -> i64 {
        self.entries.first().map(|e| e.prec).unwrap_or(EXACT)
    }

    pub fn get(&self, row: usize, col: usize) -> &Series {
        &self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let p = self.prec().min(other.prec());
        Self::from_fn(n, |a, b| {
            let mut acc = Series::zero(n, p);
            for g in 0..n {
                let (x, y) = (self.get(a, g), other.get(g, b));
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |a, b| self.get(a, b).add(other.get(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |a, b| self.get(a, b).sub(other.get(a, b)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.n, |a, b| self.get(a, b).scale(c))
    }

    pub fn truncate(&self, p: i64) -> Self {
        Self::from_fn(self.n, |a, b| self.get(a, b).truncate(p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First entry where the two matrices differ through degree `p`.
    pub fn first_difference(&self, other: &Self, p: i64) -> Option<(usize, usize, String)> {
        for a in 0..self.n {
            for b in 0..self.n {
                if let Some((k, x, y)) = self.get(a, b).first_difference(other.get(a, b), p) {
                    return Some((
                        a,
                        b,
                        format!("coefficient of {k}: {} vs {}", fmt_rational(&x), fmt_rational(&y)),
                    ));
                }
            }
        }
        None
    }

    /// One line per nonzero entry, `(row,col): series`, 1-based.
    pub fn render(&self) -> String {
        let mut lines = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let e = self.get(a, b);
                if !e.is_zero() {
                    lines.push(format!("({},{}): {}", a + 1, b + 1, e.render()));
                }
            }
        }
        if lines.is_empty() {
            lines.push("0".into());
        }
        lines.join("\n")
    }
}

/// `C^a_b = C^a_{b g} d^g` at precision `prec`.
pub fn c_matrix(l: &LieAlgebra, prec: i64) -> MatrixSeries {
    let n = l.dim();
    MatrixSeries::from_fn(n, |a, b| {
        let mut s = Series::zero(n, prec);
        for g in 0..n {
            s.add_term(MultiIndex::unit(n, g), l.c(b, g, a).clone());
        }
        s
    })
}

/// `sum_{m <= N} coeff(m) C^m`, stopping early once a power vanishes.
pub fn matrix_power_series(
    l: &LieAlgebra,
    prec: i64,
    coeff: &dyn Fn(usize) -> Rational,
) -> MatrixSeries {
    let n = l.dim();
    let c = c_matrix(l, prec);
    let mut acc = MatrixSeries::identity(n, prec).scale(&coeff(0));
    let mut power = MatrixSeries::identity(n, prec);
    let top = prec.clamp(0, 4096) as usize;
    for m in 1..=top {
        power = power.mul(&c);
        if power.is_zero() {
            break;
        }
        let k = coeff(m);
        if !k.is_zero() {
            acc = acc.add(&power.scale(&k));
        }
    }
    acc
}

/// `phi = sum_m (-1)^m B_m / m! C^m` with the Bernoulli numbers supplied by `bern`.
pub fn phi_matrix_with(l: &LieAlgebra, prec: i64, bern: &dyn Fn(usize) -> Rational) -> MatrixSeries {
    matrix_power_series(l, prec, &|m| {
        sign_pow(m as u32) * bern(m) / big(&factorial(m as u32))
    })
}

/// `phi = -C / (e^{-C} - 1) = I + C/2 + C^2/12 - C^4/720 + ...`
pub fn phi_matrix(l: &LieAlgebra, prec: i64) -> MatrixSeries {
    phi_matrix_with(l, prec, &crate::arith::bernoulli)
}

/// `phi~ = C / (e^C - 1)`, the same construction for the opposite algebra.
pub fn phi_tilde_matrix(l: &LieAlgebra, prec: i64) -> MatrixSeries {
    phi_matrix(&l.opposite(), prec)
}

/// `e^{sign C}`; `sign = 1` gives `O`, `sign = -1` gives `O^-1`.
pub fn exp_c(l: &LieAlgebra, prec: i64, sign: i32) -> MatrixSeries {
    let s = if sign >= 0 { Rational::one() } else { -Rational::one() };
    matrix_power_series(l, prec, &|m| {
        let mut k = Rational::one() / big(&factorial(m as u32));
        if m % 2 == 1 {
            k *= &s;
        }
        k
    })
}

/// `O O^-1 = I`, `phi~ = phi O^-1` and `phi - phi~ = C` through degree `prec`.
pub fn matrix_identities_check(l: &LieAlgebra, prec: i64) -> Vec<Outcome> {
    let n = l.dim();
    let o = exp_c(l, prec, 1);
    let oi = exp_c(l, prec, -1);
    let phi = phi_matrix(l, prec);
    let pt = phi_tilde_matrix(l, prec);
    let c = c_matrix(l, prec);
    let cmp = |id: &str, a: &MatrixSeries, b: &MatrixSeries| match a.first_difference(b, prec) {
        None => Outcome::pass(id),
        Some((r, col, w)) => Outcome::fail(id, format!("entry ({},{}): {w}", r + 1, col + 1)),
    };
    vec![
        cmp("series.o_inverse", &o.mul(&oi), &MatrixSeries::identity(n, prec)).tag("O O^-1 = I"),
        cmp("series.phi_tilde", &pt, &phi.mul(&oi)).tag("phi~ = phi O^-1"),
        cmp("series.phi_difference", &phi.sub(&pt), &c).tag("phi - phi~ = C"),
    ]
}

/// The derivations `D_mu` on series with `D_mu(d^b) = M^b_mu` for a matrix `M`
/// (`phi` for the left phase space, `phi~` for the right one).
#[derive(Clone, Debug)]
pub struct Derivations {
    n: usize,
    m: MatrixSeries,
}

impl Derivations {
    pub fn new(m: MatrixSeries) -> Self {
        Derivations { n: m.dim(), m }
    }

    pub fn prec(&self) -> i64 {
        self.m.prec()
    }

    /// `D_mu(P) = sum_b (dP/dd^b) M^b_mu`, known through `min(prec(P) - 1, prec(M))`.
    pub fn apply(&self, mu: usize, p: &Series) -> Series {
        // dP * M is known through prec(M) + lowdeg(dP)
        let parts: Vec<(Series, &Series)> = (0..self.n)
            .map(|b| (p.derivative(b), self.m.get(b, mu)))
            .filter(|(dp, col)| !dp.is_zero() && !(col.is_zero() && col.prec() >= EXACT))
            .collect();
        let out_prec = parts.iter().fold(prec_sub(p.prec(), 1), |acc, (dp, col)| {
            acc.min(col.prec().saturating_add(dp.min_degree().unwrap_or(0) as i64))
        });
        let mut out = Series::zero(self.n, out_prec);
        if out_prec < 0 {
            return out;
        }
        for (dp, col) in &parts {
            if col.is_zero() {
                continue;
            }
            let prod = dp.mul_to(col, out_prec);
            out.add_assign_scaled(&prod, &Rational::one());
        }
        out
    }

    /// Applies the letters of `word` left to right: `P <| (x_a x_b) = (P <| x_a) <| x_b`.
    pub fn apply_word(&self, word: &[usize], p: &Series) -> Series {
        word.iter().fold(p.clone(), |acc, &mu| self.apply(mu, &acc))
    }
}

/// `P <| x_{w1} ... x_{wk}` for the right Hopf action generated by `phi`.
pub fn hopf_action_on_series(l: &LieAlgebra, word: &[usize], p: &Series) -> Result<Series> {
    let have = if p.is_exact() {
        p.max_degree().unwrap_or(0) as i64
    } else {
        p.prec()
    };
    if have < word.len() as i64 {
        return Err(Error::precision(word.len() as i64, have));
    }
    let d = Derivations::new(phi_matrix(l, have));
    Ok(d.apply_word(word, &p.truncate(have)).with_prec(have - word.len() as i64))
}

/// Constant term of `P`.
pub fn eval_at_zero(p: &Series) -> Result<Rational> {
    p.eval_at_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn d(n: usize, i: usize) -> Series {
        Series::var(n, i, EXACT)
    }

    #[test]
    fn series_product_examples() {
        let one = Series::one(1, 3);
        let a = one.add(&Series::var(1, 0, 3));
        let b = one.sub(&Series::var(1, 0, 3));
        let p = a.mul(&b);
        assert_eq!(p.render(), "1 - d1^2");
        assert_eq!(p.prec(), 3);
        let z = Series::zero(1, 2);
        let q = a.mul(&z);
        assert!(q.is_zero());
        assert_eq!(q.prec(), 2);
        let geo = Series::from_terms(1, 3, (0..=3).map(|k| (MultiIndex::from_slice(&[k]), int(1))));
        assert_eq!(geo.mul(&geo).render(), "1 + 2*d1 + 3*d1^2 + 4*d1^3");
    }

    #[test]
    fn heisenberg_matrices() {
        let l = LieAlgebra::heisenberg3();
        let c = c_matrix(&l, 4);
        assert_eq!(c.get(2, 0).render(), "d2");
        assert_eq!(c.get(2, 1).render(), "-d1");
        let phi = phi_matrix(&l, 4);
        assert_eq!(phi.get(2, 0).render(), "1/2*d2");
        let oi = exp_c(&l, 4, -1);
        assert_eq!(oi.get(2, 0).render(), "-d2");
    }

    #[test]
    fn solvable_c_matrix() {
        let c = c_matrix(&LieAlgebra::solvable2(), 3);
        assert_eq!(c.get(1, 0).render(), "d2");
        assert_eq!(c.get(1, 1).render(), "-d1");
        assert!(c.get(0, 0).is_zero() && c.get(0, 1).is_zero());
    }

    #[test]
    fn abelian_is_identity() {
        let l = LieAlgebra::abelian(3);
        for m in [phi_matrix(&l, 5), phi_tilde_matrix(&l, 5), exp_c(&l, 5, 1)] {
            assert!(m.first_difference(&MatrixSeries::identity(3, 5), 5).is_none());
        }
    }

    #[test]
    fn identities_hold() {
        for l in LieAlgebra::builtins() {
            for o in matrix_identities_check(&l, 5) {
                assert!(o.passed(), "{l:?}: {o:?}");
            }
        }
    }

    #[test]
    fn action_examples() {
        let l = LieAlgebra::heisenberg3();
        let p = d(3, 2).with_prec(3);
        let r = hopf_action_on_series(&l, &[0], &p).unwrap();
        assert_eq!(r.render(), "1/2*d2");
        let r = hopf_action_on_series(&l, &[0, 1], &p).unwrap();
        assert_eq!(r.eval_at_zero().unwrap(), rat(1, 2));
        let a = LieAlgebra::abelian(2);
        let k = Series::monomial(MultiIndex::from_slice(&[2, 1]), int(1), 3);
        assert_eq!(hopf_action_on_series(&a, &[0], &k).unwrap().render(), "2*d1*d2");
        assert!(hopf_action_on_series(&a, &[0, 0, 0, 0], &k).is_err());
    }
}
