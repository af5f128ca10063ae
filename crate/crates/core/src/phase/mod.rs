//! The phase space `U(g) # S(g*)` at a fixed truncation order.
//!
//! Elements are kept in the left normal form [`HElem`]. The right normal form
//! [`RElem`] (series on the left, generators `y` of the opposite algebra on the
//! right) is used for the right-handed structures and reached through
//! [`PhaseSpace::to_r`] / [`PhaseSpace::to_l`], which implement
//! `x_nu = y_s O^s_nu`.

mod elem;
pub mod identities;

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::One;

use crate::arith::{big, mbinom, MultiIndex, Rational};
use crate::lie::LieAlgebra;
use crate::pbw::{UElem, UEnv};
use crate::series::{
    exp_c, phi_matrix_with, prec_sub, Derivations, MatrixSeries, Series, EXACT,
};
use crate::{Error, Result};

pub use elem::{prec_stamp, Elem, HElem, RElem};

/// Truncated phase space of a Lie algebra with every derived matrix cached.
pub struct PhaseSpace {
    lie: LieAlgebra,
    prec: i64,
    u_l: UEnv,
    u_r: UEnv,
    phi: MatrixSeries,
    phi_t: MatrixSeries,
    o: MatrixSeries,
    oi: MatrixSeries,
    der_l: Derivations,
    der_r: Derivations,
    to_r_cache: Mutex<HashMap<MultiIndex, RElem>>,
    to_l_cache: Mutex<HashMap<MultiIndex, HElem>>,
}

impl std::fmt::Debug for PhaseSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhaseSpace")
            .field("lie", &self.lie)
            .field("prec", &self.prec)
            .finish()
    }
}

impl PhaseSpace {
    pub fn new(lie: LieAlgebra, prec: i64) -> Self {
        Self::with_bernoulli(lie, prec, &crate::arith::bernoulli)
    }

    /// Builds the structure from a supplied Bernoulli table (used to check that
    /// the verification suites notice a corrupted one).
    pub fn with_bernoulli(lie: LieAlgebra, prec: i64, bern: &dyn Fn(usize) -> Rational) -> Self {
        let lie_r = lie.opposite();
        let phi = phi_matrix_with(&lie, prec, bern);
        let phi_t = phi_matrix_with(&lie_r, prec, bern);
        let o = exp_c(&lie, prec, 1);
        let oi = exp_c(&lie, prec, -1);
        PhaseSpace {
            der_l: Derivations::new(phi.clone()),
            der_r: Derivations::new(phi_t.clone()),
            u_l: UEnv::new(lie.clone()),
            u_r: UEnv::new(lie_r),
            lie,
            prec,
            phi,
            phi_t,
            o,
            oi,
            to_r_cache: Mutex::new(HashMap::new()),
            to_l_cache: Mutex::new(HashMap::new()),
        }
    }

    /// The phase space of the opposite algebra built from the same matrices.
    /// Its `x` are the `y` here and its `y` are the `x`, so its left normal
    /// form is `sum y_J P_J` and its right one is `sum Q_J x_J`.
    pub fn opposite(&self) -> PhaseSpace {
        let lie = self.lie.opposite();
        PhaseSpace {
            der_l: self.der_r.clone(),
            der_r: self.der_l.clone(),
            u_l: UEnv::new(lie.clone()),
            u_r: UEnv::new(self.lie.clone()),
            lie,
            prec: self.prec,
            phi: self.phi_t.clone(),
            phi_t: self.phi.clone(),
            o: self.oi.clone(),
            oi: self.o.clone(),
            to_r_cache: Mutex::new(HashMap::new()),
            to_l_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// The truncation order `N` every derived series is known to.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// `U(g)`.
    pub fn u_left(&self) -> &UEnv {
        &self.u_l
    }

    /// `U(g^op)`, generated by the `y`.
    pub fn u_right(&self) -> &UEnv {
        &self.u_r
    }

    pub fn phi(&self) -> &MatrixSeries {
        &self.phi
    }

    pub fn phi_tilde(&self) -> &MatrixSeries {
        &self.phi_t
    }

    pub fn o(&self) -> &MatrixSeries {
        &self.o
    }

    pub fn o_inv(&self) -> &MatrixSeries {
        &self.oi
    }

    pub fn derivations(&self) -> &Derivations {
        &self.der_l
    }

    // ---- basic elements -------------------------------------------------

    pub fn x(&self, mu: usize) -> HElem {
        HElem::gen(self.dim(), mu)
    }

    pub fn d(&self, mu: usize) -> HElem {
        HElem::d(self.dim(), mu)
    }

    pub fn one(&self) -> HElem {
        HElem::one(self.dim())
    }

    pub fn series(&self, p: Series) -> HElem {
        HElem::series(p)
    }

    /// `y_mu = x_r (O^-1)^r_mu`.
    pub fn y(&self, mu: usize) -> HElem {
        self.to_l_mono(&MultiIndex::unit(self.dim(), mu))
    }

    pub fn o_entry(&self, row: usize, col: usize) -> HElem {
        HElem::series(self.o.get(row, col).clone())
    }

    pub fn oi_entry(&self, row: usize, col: usize) -> HElem {
        HElem::series(self.oi.get(row, col).clone())
    }

    // ---- right actions of U(g) on series --------------------------------

    /// `P <| x_I` for every `I` below `top`, by dynamic programming over the
    /// last letter.
    fn right_action_table(&self, p: &Series, tops: &[&MultiIndex]) -> HashMap<MultiIndex, Series> {
        let mut table: HashMap<MultiIndex, Series> = HashMap::new();
        table.insert(MultiIndex::zero(self.dim()), p.clone());
        let mut wanted: Vec<MultiIndex> = Vec::new();
        for t in tops {
            for s in t.submultiindices() {
                wanted.push(s);
            }
        }
        wanted.sort();
        wanted.dedup();
        for i in wanted {
            if table.contains_key(&i) {
                continue;
            }
            let l = i.max_letter().expect("nonzero");
            let prev = table[&i.sub_unit(l).expect("letter")].clone();
            table.insert(i, self.der_l.apply(l, &prev));
        }
        table
    }

    /// `y_I |> Q` for the left action `y_nu |> Q = -D~_nu(Q)`.
    fn left_action_table(&self, q: &Series, tops: &[&MultiIndex]) -> HashMap<MultiIndex, Series> {
        let mut table: HashMap<MultiIndex, Series> = HashMap::new();
        table.insert(MultiIndex::zero(self.dim()), q.clone());
        let mut wanted: Vec<MultiIndex> = Vec::new();
        for t in tops {
            wanted.extend(t.submultiindices());
        }
        wanted.sort();
        wanted.dedup();
        for i in wanted {
            if table.contains_key(&i) {
                continue;
            }
            let l = i.min_letter().expect("nonzero");
            let prev = table[&i.sub_unit(l).expect("letter")].clone();
            table.insert(i, self.der_r.apply(l, &prev).neg());
        }
        table
    }

    /// `P <| u` for a PBW element `u`.
    pub fn series_right_action(&self, p: &Series, u: &UElem) -> Series {
        let tops: Vec<&MultiIndex> = u.terms().keys().collect();
        let t = self.right_action_table(p, &tops);
        let mut out = Series::zero(self.dim(), prec_sub(p.prec(), u.degree() as i64));
        for (k, c) in u.iter() {
            out.add_assign_scaled(&t[k], c);
        }
        out
    }

    /// `<u, P> = eps(P <| u)`.
    pub fn pairing(&self, u: &UElem, p: &Series) -> Result<Rational> {
        let d = u.degree() as i64;
        if p.prec() < d {
            return Err(Error::precision(d, p.prec()));
        }
        self.series_right_action(&p.truncate(d), u).eval_at_zero()
    }

    // ---- products ---------------------------------------------------------

    /// `(x_u P)(x_v Q) = sum binom(v, v1) x_u x_{v1} (P <| x_{v2}) Q`.
    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        let n = self.dim();
        let target = prec_sub(a.prec(), b.gen_degree() as i64).min(b.prec());
        let mut out = HElem::zero(n, target);
        if a.is_zero() || b.is_zero() {
            return out;
        }
        let tops: Vec<&MultiIndex> = b.terms().keys().collect();
        for (u, p) in a.iter() {
            let p = if target < EXACT { p.truncate(target + b.gen_degree() as i64) } else { p.clone() };
            let table = self.right_action_table(&p, &tops);
            for (v, q) in b.iter() {
                for v1 in v.submultiindices() {
                    let v2 = v.checked_sub(&v1).expect("sub");
                    let s = table[&v2].mul(q);
                    if s.is_zero() {
                        out.add_term(MultiIndex::zero(n), s);
                        continue;
                    }
                    let c = big(&mbinom(v, &v1));
                    let s = s.scale(&c);
                    let uv = self.u_l.mono_mul(u, &v1);
                    for (k, ck) in uv.iter() {
                        out.add_scaled_term(k, &s, ck);
                    }
                }
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[&HElem]) -> HElem {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn commutator(&self, a: &HElem, b: &HElem) -> HElem {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// `(Q y_u)(P y_v) = sum binom(u, u1) Q (y_{u1} |> P) y_{u2} y_v`.
    pub fn mul_r(&self, a: &RElem, b: &RElem) -> RElem {
        let n = self.dim();
        let target = prec_sub(b.prec(), a.gen_degree() as i64).min(a.prec());
        let mut out = RElem::zero(n, target);
        if a.is_zero() || b.is_zero() {
            return out;
        }
        let tops: Vec<&MultiIndex> = a.terms().keys().collect();
        for (v, p) in b.iter() {
            let p = if target < EXACT { p.truncate(target + a.gen_degree() as i64) } else { p.clone() };
            let table = self.left_action_table(&p, &tops);
            for (u, q) in a.iter() {
                for u1 in u.submultiindices() {
                    let u2 = u.checked_sub(&u1).expect("sub");
                    let s = q.mul(&table[&u1]);
                    if s.is_zero() {
                        out.add_term(MultiIndex::zero(n), s);
                        continue;
                    }
                    let s = s.scale(&big(&mbinom(u, &u1)));
                    let uv = self.u_r.mono_mul(&u2, v);
                    for (k, ck) in uv.iter() {
                        out.add_scaled_term(k, &s, ck);
                    }
                }
            }
        }
        out
    }

    // ---- the dictionary between the two normal forms ----------------------

    /// `x_J` in right normal form, built letter by letter from
    /// `x_nu = y_s O^s_nu`.
    pub fn to_r_mono(&self, j: &MultiIndex) -> RElem {
        let n = self.dim();
        if j.is_zero() {
            return RElem::one(n);
        }
        if let Some(v) = self.to_r_cache.lock().expect("cache").get(j) {
            return v.clone();
        }
        let l = j.max_letter().expect("nonzero");
        let rest = j.sub_unit(l).expect("letter");
        let out = if rest.is_zero() {
            let mut acc = RElem::zero(n, EXACT);
            for s in 0..n {
                let o = self.o.get(s, l);
                let prod = self.mul_r(&RElem::gen(n, s), &RElem::series(o.clone()));
                acc = acc.add(&prod);
            }
            acc
        } else {
            self.mul_r(&self.to_r_mono(&rest), &self.to_r_mono(&MultiIndex::unit(n, l)))
        };
        self.to_r_cache.lock().expect("cache").insert(j.clone(), out.clone());
        out
    }

    /// `y_J` in left normal form, from `y_mu = x_r (O^-1)^r_mu`.
    pub fn to_l_mono(&self, j: &MultiIndex) -> HElem {
        let n = self.dim();
        if j.is_zero() {
            return HElem::one(n);
        }
        if let Some(v) = self.to_l_cache.lock().expect("cache").get(j) {
            return v.clone();
        }
        let l = j.min_letter().expect("nonzero");
        let rest = j.sub_unit(l).expect("letter");
        let out = if rest.is_zero() {
            let mut acc = HElem::zero(n, EXACT);
            for r in 0..n {
                acc.add_term(MultiIndex::unit(n, r), self.oi.get(r, l).clone());
            }
            acc
        } else {
            self.mul(&self.to_l_mono(&MultiIndex::unit(n, l)), &self.to_l_mono(&rest))
        };
        self.to_l_cache.lock().expect("cache").insert(j.clone(), out.clone());
        out
    }

    pub fn to_r(&self, h: &HElem) -> RElem {
        let n = self.dim();
        let mut out = RElem::zero(n, h.prec());
        for (j, p) in h.iter() {
            let m = self.to_r_mono(j);
            out = out.add(&self.mul_r(&m, &RElem::series(p.clone())));
        }
        out
    }

    pub fn to_l(&self, r: &RElem) -> HElem {
        let n = self.dim();
        let mut out = HElem::zero(n, r.prec());
        for (j, q) in r.iter() {
            let m = self.to_l_mono(j);
            out = out.add(&self.mul(&HElem::series(q.clone()), &m));
        }
        out
    }

    // ---- source, target, counits, actions ------------------------------

    pub fn alpha_l(&self, f: &UElem) -> HElem {
        HElem::from_u(f)
    }

    /// `U(g^op)` element as an element of `H`.
    pub fn alpha_r(&self, u: &UElem) -> HElem {
        self.to_l(&RElem::from_u(u))
    }

    /// The antihomomorphism `U(g) -> U(g^op)`, `x_mu -> y_mu`.
    pub fn rho(&self, f: &UElem) -> UElem {
        reverse_into(f, &self.u_r)
    }

    /// Inverse of [`rho`](Self::rho).
    pub fn rho_inv(&self, u: &UElem) -> UElem {
        reverse_into(u, &self.u_l)
    }

    /// `beta^L`: antihomomorphism with `x_mu -> y_mu`.
    pub fn beta_l(&self, f: &UElem) -> HElem {
        self.alpha_r(&self.rho(f))
    }

    /// `beta^R` in right normal form: antihomomorphism with
    /// `y_a -> z_a = O^r_a y_r`.
    pub fn beta_r_form(&self, u: &UElem) -> RElem {
        let n = self.dim();
        let z: Vec<RElem> = (0..n)
            .map(|a| {
                let mut e = RElem::zero(n, EXACT);
                for r in 0..n {
                    e.add_term(MultiIndex::unit(n, r), self.o.get(r, a).clone());
                }
                e
            })
            .collect();
        let mut out = RElem::zero(n, EXACT);
        for (k, c) in u.iter() {
            let mut acc = RElem::one(n);
            for l in k.letters() {
                acc = self.mul_r(&z[l], &acc);
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    pub fn beta_r(&self, u: &UElem) -> HElem {
        self.to_l(&self.beta_r_form(u))
    }

    /// `h |> f`: multiply, then evaluate the series at zero.
    pub fn black_left(&self, h: &HElem, f: &UElem) -> Result<UElem> {
        let d = f.degree() as i64;
        if h.prec() < d {
            return Err(Error::precision(d, h.prec()));
        }
        let m = self.mul(&h.truncate(d), &HElem::from_u(f));
        if m.prec() < 0 {
            return Err(Error::precision(0, m.prec()));
        }
        Ok(m.degree_zero_part())
    }

    /// `f <| h` for `f` in `U(g^op)`.
    pub fn black_right(&self, f: &UElem, h: &HElem) -> Result<UElem> {
        let d = f.degree() as i64;
        let r = self.to_r(&h.truncate(d + h.gen_degree() as i64));
        if r.prec() < d {
            return Err(Error::precision(d + h.gen_degree() as i64, h.prec().min(self.prec)));
        }
        self.black_right_r(f, &r)
    }

    pub fn black_right_r(&self, f: &UElem, r: &RElem) -> Result<UElem> {
        let d = f.degree() as i64;
        if r.prec() < d {
            return Err(Error::precision(d, r.prec()));
        }
        let m = self.mul_r(&RElem::from_u(f), &r.truncate(d));
        if m.prec() < 0 {
            return Err(Error::precision(0, m.prec()));
        }
        Ok(m.degree_zero_part())
    }

    /// `eps^L(h) = h |> 1`.
    pub fn counit_l(&self, h: &HElem) -> Result<UElem> {
        if h.prec() < 0 {
            return Err(Error::precision(0, h.prec()));
        }
        Ok(h.degree_zero_part())
    }

    /// `eps^R(h) = 1 <| h`.
    pub fn counit_r(&self, h: &HElem) -> Result<UElem> {
        let r = self.to_r(&h.truncate(h.gen_degree() as i64));
        if r.prec() < 0 {
            return Err(Error::precision(h.gen_degree() as i64, h.prec()));
        }
        Ok(r.degree_zero_part())
    }

    // ---- antipode -------------------------------------------------------

    /// `S(Q y_J) = rho^-1(y_J) Q(-d)`, read off the right normal form.
    pub fn antipode(&self, h: &HElem) -> HElem {
        let r = self.to_r(h);
        let n = self.dim();
        let mut out = HElem::zero(n, r.prec());
        for (j, q) in r.iter() {
            let word = self.rho_inv(&UElem::monomial(j.clone(), Rational::one()));
            let q = q.reflect();
            for (k, c) in word.iter() {
                out.add_scaled_term(k, &q, c);
            }
        }
        out
    }

    /// `S^-1(x_J P) = P(-d) rho(x_J)`.
    pub fn antipode_inv(&self, h: &HElem) -> HElem {
        let n = self.dim();
        let mut r = RElem::zero(n, h.prec());
        for (j, p) in h.iter() {
            let word = self.rho(&UElem::monomial(j.clone(), Rational::one()));
            let p = p.reflect();
            for (k, c) in word.iter() {
                r.add_scaled_term(k, &p, c);
            }
        }
        self.to_l(&r)
    }

    pub fn series_of(&self, h: &HElem) -> Option<Series> {
        if h.terms().keys().all(|k| k.is_zero()) {
            Some(h.coeff(&MultiIndex::zero(self.dim())))
        } else {
            None
        }
    }

    /// `x_K` as an element.
    pub fn x_mono(&self, k: &MultiIndex) -> HElem {
        HElem::term(k.clone(), Series::one(self.dim(), EXACT))
    }

    pub fn scalar(&self, c: Rational) -> HElem {
        HElem::series(Series::constant(self.dim(), c, EXACT))
    }

    pub fn unit_u(&self) -> UElem {
        UElem::one(self.dim())
    }
}

/// Reverses every PBW word and straightens it in `target`.
fn reverse_into(f: &UElem, target: &UEnv) -> UElem {
    let mut out = UElem::zero(f.n());
    for (k, c) in f.iter() {
        let mut w = k.letters();
        w.reverse();
        out.add_scaled(&target.word(&w), c);
    }
    out
}

#[cfg(test)]
mod tests;
