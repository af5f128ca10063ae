//! The universal enveloping algebra in PBW normal form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::arith::{big, factorial, fmt_rational, mbinom, MultiIndex, Rational};
use crate::lie::LieAlgebra;
use crate::series::render_monomial;

/// `sum_J c_J x_J` with `x_J = x_1^{j_1} ... x_n^{j_n}`.
#[derive(Clone, PartialEq, Eq)]
pub struct UElem {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

/// `sum c (x_A (x) x_B)`.
pub type UTensor = BTreeMap<(MultiIndex, MultiIndex), Rational>;

impl UElem {
    pub fn zero(n: usize) -> Self {
        UElem { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(MultiIndex::zero(n), Rational::one())
    }

    pub fn gen(n: usize, mu: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, mu), Rational::one())
    }

    pub fn monomial(k: MultiIndex, c: Rational) -> Self {
        let mut u = Self::zero(k.n());
        u.add_term(k, c);
        u
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Rational)>>(n: usize, it: I) -> Self {
        let mut u = Self::zero(n);
        for (k, c) in it {
            u.add_term(k, c);
        }
        u
    }

    pub fn add_term(&mut self, k: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
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

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Filtered degree; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map(|k| k.degree()).unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    /// The counit: coefficient of the unit monomial.
    pub fn counit(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.n))
    }

    /// `Delta(x_I) = sum_{I1+I2=I} binom(I, I1) x_{I1} (x) x_{I2}`.
    pub fn coproduct(&self) -> UTensor {
        let mut out = UTensor::new();
        for (k, c) in &self.terms {
            for k1 in k.submultiindices() {
                let k2 = k.checked_sub(&k1).expect("sub-multiindex");
                let v = c * big(&mbinom(k, &k1));
                add_tensor_term(&mut out, k1, k2, v);
            }
        }
        out
    }

    /// `x1^2 x3 - 1/2*x2` style text with generator symbol `sym`.
    pub fn render_with(&self, sym: &str) -> String {
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
            let mono = render_monomial(k, sym, " ");
            if mono.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
            }
        }
        s
    }

    pub fn render(&self) -> String {
        self.render_with("x")
    }
}

impl fmt::Debug for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn add_tensor_term(t: &mut UTensor, a: MultiIndex, b: MultiIndex, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry((a, b)) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Multiplication context for `U(g)` with memoized straightening.
pub struct UEnv {
    lie: LieAlgebra,
    memo: Mutex<HashMap<(MultiIndex, usize), UElem>>,
}

impl fmt::Debug for UEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UEnv").field("lie", &self.lie).finish()
    }
}

impl UEnv {
    pub fn new(lie: LieAlgebra) -> Self {
        UEnv { lie, memo: Mutex::new(HashMap::new()) }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// Normal form of `x_A x_mu`.
    pub fn mul_gen(&self, a: &MultiIndex, mu: usize) -> UElem {
        let n = self.dim();
        match a.max_letter() {
            None => return UElem::gen(n, mu),
            Some(top) if top <= mu => return UElem::monomial(a.add_unit(mu), Rational::one()),
            _ => {}
        }
        let key = (a.clone(), mu);
        if let Some(v) = self.memo.lock().expect("memo").get(&key) {
            return v.clone();
        }
        // x_{A'} x_nu x_mu = (x_{A'} x_mu) x_nu + C^l_{nu mu} x_{A'} x_l
        let nu = a.max_letter().expect("nonempty");
        let a1 = a.sub_unit(nu).expect("letter present");
        let head = self.mul_gen(&a1, mu);
        let mut out = UElem::zero(n);
        for (b, c) in head.iter() {
            out.add_scaled(&self.mul_gen(b, nu), c);
        }
        for (lam, c) in self.lie.bracket(nu, mu) {
            out.add_scaled(&self.mul_gen(&a1, lam), &c);
        }
        self.memo.lock().expect("memo").insert(key, out.clone());
        out
    }

    /// `x_mu x_A`.
    pub fn gen_mul(&self, mu: usize, a: &MultiIndex) -> UElem {
        self.mono_mul(&MultiIndex::unit(self.dim(), mu), a)
    }

    pub fn mono_mul(&self, a: &MultiIndex, b: &MultiIndex) -> UElem {
        let mut cur = UElem::monomial(a.clone(), Rational::one());
        for l in b.letters() {
            let mut next = UElem::zero(self.dim());
            for (k, c) in cur.iter() {
                next.add_scaled(&self.mul_gen(k, l), c);
            }
            cur = next;
        }
        cur
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> UElem {
        let mut out = UElem::zero(self.dim());
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                out.add_scaled(&self.mono_mul(ka, kb), &(ca * cb));
            }
        }
        out
    }

    /// Normal form of the word `x_{w1} x_{w2} ...`.
    pub fn word(&self, letters: &[usize]) -> UElem {
        let mut cur = UElem::one(self.dim());
        for &l in letters {
            let mut next = UElem::zero(self.dim());
            for (k, c) in cur.iter() {
                next.add_scaled(&self.mul_gen(k, l), c);
            }
            cur = next;
        }
        cur
    }

    /// `xi(x_J)`: average of all orderings of the letters of `J`.
    pub fn symmetrize(&self, j: &MultiIndex) -> UElem {
        let letters = j.letters();
        let mut perms = Vec::new();
        multiset_permutations(&mut letters.clone(), 0, &mut perms);
        let count = Rational::from_integer(factorial(letters.len() as u32)) / big(&j.factorial());
        let w = Rational::one() / count;
        let mut out = UElem::zero(self.dim());
        for p in &perms {
            out.add_scaled(&self.word(p), &w);
        }
        out
    }

    /// Product of tensors, slotwise.
    pub fn tensor_mul(&self, a: &UTensor, b: &UTensor) -> UTensor {
        let mut out = UTensor::new();
        for ((a1, a2), ca) in a {
            for ((b1, b2), cb) in b {
                let l = self.mono_mul(a1, b1);
                let r = self.mono_mul(a2, b2);
                for (k1, c1) in l.iter() {
                    for (k2, c2) in r.iter() {
                        add_tensor_term(&mut out, k1.clone(), k2.clone(), ca * cb * c1 * c2);
                    }
                }
            }
        }
        out
    }
}

/// Distinct orderings of a multiset, produced by swapping.
fn multiset_permutations(v: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start + 1 >= v.len() {
        out.push(v.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..v.len() {
        if seen.contains(&v[i]) {
            continue;
        }
        seen.push(v[i]);
        v.swap(start, i);
        multiset_permutations(v, start + 1, out);
        v.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn mi(e: &[u16]) -> MultiIndex {
        MultiIndex::from_slice(e)
    }

    #[test]
    fn straightening_examples() {
        let ab = UEnv::new(LieAlgebra::abelian(2));
        assert_eq!(ab.word(&[0, 1]), UElem::monomial(mi(&[1, 1]), int(1)));
        let h = UEnv::new(LieAlgebra::heisenberg3());
        let e = UElem::from_terms(3, [(mi(&[1, 1, 0]), int(1)), (mi(&[0, 0, 1]), int(-1))]);
        assert_eq!(h.word(&[1, 0]), e);
        let s = UEnv::new(LieAlgebra::sl2());
        assert_eq!(s.word(&[1, 0]), e);
        assert_eq!(s.word(&[1, 0]).render(), "-x3 + x1 x2");
    }

    #[test]
    fn coproduct_binomial() {
        let u = UElem::monomial(mi(&[2, 0]), int(1));
        let d = u.coproduct();
        assert_eq!(d.len(), 3);
        assert_eq!(d[&(mi(&[1, 0]), mi(&[1, 0]))], int(2));
    }

    #[test]
    fn symmetrize_heisenberg() {
        let h = UEnv::new(LieAlgebra::heisenberg3());
        let e = UElem::from_terms(3, [(mi(&[1, 1, 0]), int(1)), (mi(&[0, 0, 1]), rat(-1, 2))]);
        assert_eq!(h.symmetrize(&mi(&[1, 1, 0])), e);
        let mut p = Vec::new();
        multiset_permutations(&mut vec![0, 0, 1, 2], 0, &mut p);
        assert_eq!(p.len(), 12);
    }
}
