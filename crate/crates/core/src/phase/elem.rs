use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{MultiIndex, Rational};
use crate::pbw::UElem;
use crate::series::{render_monomial, Series, EXACT};

/// Element of the phase space as a finite sum over PBW monomials with series
/// coefficients.
///
/// With `R = false` this is the left normal form `sum_J x_J P_J`; with
/// `R = true` it is the right normal form `sum_J Q_J y_J`.
#[derive(Clone)]
pub struct Elem<const R: bool> {
    n: usize,
    prec: i64,
    terms: BTreeMap<MultiIndex, Series>,
}

/// `sum_J x_J P_J`, generators of `g` on the left.
pub type HElem = Elem<false>;
/// `sum_J Q_J y_J`, generators of the opposite algebra on the right.
pub type RElem = Elem<true>;

impl<const R: bool> Elem<R> {
    pub fn zero(n: usize, prec: i64) -> Self {
        Elem { n, prec: prec.max(-1), terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::series(Series::one(n, EXACT))
    }

    /// The series `P` sitting in degree zero of the enveloping algebra.
    pub fn series(p: Series) -> Self {
        let n = p.n();
        Self::term(MultiIndex::zero(n), p)
    }

    pub fn term(k: MultiIndex, p: Series) -> Self {
        let mut e = Self::zero(k.n(), p.prec());
        e.add_term(k, p);
        e
    }

    /// Generator number `mu` (an `x` for left forms, a `y` for right forms).
    pub fn gen(n: usize, mu: usize) -> Self {
        Self::term(MultiIndex::unit(n, mu), Series::one(n, EXACT))
    }

    /// `d^mu`.
    pub fn d(n: usize, mu: usize) -> Self {
        Self::series(Series::var(n, mu, EXACT))
    }

    /// Embeds a PBW element with constant series coefficients.
    pub fn from_u(u: &UElem) -> Self {
        let n = u.n();
        let mut e = Self::zero(n, EXACT);
        for (k, c) in u.iter() {
            e.add_term(k.clone(), Series::constant(n, c.clone(), EXACT));
        }
        e
    }

    pub fn add_term(&mut self, k: MultiIndex, p: Series) {
        if p.prec() < self.prec {
            self.set_prec(p.prec());
        }
        let p = p.truncate(self.prec);
        match self.terms.get_mut(&k) {
            Some(s) => {
                *s = s.add(&p);
                if s.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                if !p.is_zero() {
                    self.terms.insert(k, p);
                }
            }
        }
    }

    /// Adds `c * x_k P`.
    pub fn add_scaled_term(&mut self, k: &MultiIndex, p: &Series, c: &Rational) {
        if c.is_zero() {
            if p.prec() < self.prec {
                self.set_prec(p.prec());
            }
            return;
        }
        self.add_term(k.clone(), p.scale(c));
    }

    fn set_prec(&mut self, p: i64) {
        let p = p.max(-1);
        self.prec = p;
        let mut out = BTreeMap::new();
        for (k, s) in std::mem::take(&mut self.terms) {
            let s = s.truncate(p);
            if !s.is_zero() {
                out.insert(k, s);
            }
        }
        self.terms = out;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Series> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Series)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Series {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.n, self.prec))
    }

    /// Largest PBW degree present.
    pub fn gen_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn truncate(&self, p: i64) -> Self {
        let mut e = self.clone();
        if p < e.prec {
            e.set_prec(p);
        }
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        if other.prec < out.prec {
            out.set_prec(other.prec);
        }
        for (k, s) in &other.terms {
            out.add_term(k.clone(), s.clone());
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
        let mut out = Self::zero(self.n, self.prec);
        for (k, s) in &self.terms {
            out.add_scaled_term(k, s, c);
        }
        out
    }

    /// Applies `f` to every series coefficient.
    pub fn map_series(&self, f: impl Fn(&Series) -> Series) -> Self {
        let mut out = Self::zero(self.n, self.prec);
        for (k, s) in &self.terms {
            out.add_term(k.clone(), f(s));
        }
        if self.terms.is_empty() {
            let probe = f(&Series::zero(self.n, self.prec));
            out = out.truncate(probe.prec());
        }
        out
    }

    /// Constant terms of the series coefficients, as a PBW element.
    pub fn degree_zero_part(&self) -> UElem {
        let z = MultiIndex::zero(self.n);
        UElem::from_terms(self.n, self.terms.iter().map(|(k, s)| (k.clone(), s.coeff(&z))))
    }

    pub fn eq_at(&self, other: &Self, p: i64) -> bool {
        self.first_difference(other, p).is_none()
    }

    /// Agreement through the common precision.
    pub fn agrees(&self, other: &Self) -> bool {
        self.eq_at(other, self.prec.min(other.prec))
    }

    pub fn first_difference(&self, other: &Self, p: i64) -> Option<String> {
        let keys: std::collections::BTreeSet<&MultiIndex> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for k in keys {
            let (a, b) = (self.coeff(k), other.coeff(k));
            if let Some((m, x, y)) = a.first_difference(&b, p) {
                let sym = if R { "y" } else { "x" };
                let mono = render_monomial(k, sym, " ");
                let mono = if mono.is_empty() { "1".to_string() } else { mono };
                let dm = render_monomial(&m, "d", "*");
                let dm = if dm.is_empty() { "1".to_string() } else { dm };
                return Some(format!(
                    "coefficient of {mono} * {dm}: {} vs {}",
                    crate::arith::fmt_rational(&x),
                    crate::arith::fmt_rational(&y)
                ));
            }
        }
        None
    }

    /// Canonical text, e.g. `x1^2 x3 * (1/2*d2 + d1*d3)`; right forms put the
    /// series first: `(d1) * y2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sym = if R { "y" } else { "x" };
        let mut parts = Vec::new();
        for (k, s) in &self.terms {
            let mono = render_monomial(k, sym, " ");
            let st = s.render();
            let unit = s.len() == 1 && s.coeff(&MultiIndex::zero(self.n)).is_one();
            let wrapped = if s.len() == 1 && !st.starts_with('-') {
                st
            } else {
                format!("({st})")
            };
            let piece = match (mono.is_empty(), unit) {
                (true, _) => wrapped,
                (false, true) => mono,
                (false, false) if R => format!("{wrapped} * {mono}"),
                (false, false) => format!("{mono} * {wrapped}"),
            };
            parts.push(piece);
        }
        parts.join(" + ")
    }

    /// `render` plus a precision line.
    pub fn render_stamped(&self) -> String {
        format!("{}\n{}", self.render(), prec_stamp(self.prec))
    }
}

pub fn prec_stamp(p: i64) -> String {
    if p >= EXACT {
        "[exact]".into()
    } else {
        format!("[prec {p}]")
    }
}

impl<const R: bool> fmt::Debug for Elem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.render(), prec_stamp(self.prec))
    }
}
