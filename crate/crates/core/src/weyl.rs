//! The completed Weyl algebra in `x_1..x_n, d^1..d^n`, the two realizations
//! of `U(g)` inside it, and checks of the identities those realizations rest on.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{big, fmt_rational, mbinom, MultiIndex, Rational};
use crate::lie::LieAlgebra;
use crate::pbw::UElem;
use crate::phase::{HElem, PhaseSpace};
use crate::report::{timed, Outcome};
use crate::series::{c_matrix, phi_matrix, phi_tilde_matrix, prec_sub, MatrixSeries, Series, EXACT};
use crate::{Error, Result};

/// `sum_A x_A P_A(d)`, with all `x` to the left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElem {
    n: usize,
    prec: i64,
    terms: BTreeMap<MultiIndex, Series>,
}

impl WeylElem {
    pub fn zero(n: usize, prec: i64) -> Self {
        WeylElem { n, prec: prec.max(-1), terms: BTreeMap::new() }
    }

    pub fn term(k: MultiIndex, p: Series) -> Self {
        let mut w = Self::zero(k.n(), p.prec());
        w.add_term(k, p);
        w
    }

    pub fn one(n: usize) -> Self {
        Self::term(MultiIndex::zero(n), Series::one(n, EXACT))
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::term(MultiIndex::unit(n, i), Series::one(n, EXACT))
    }

    pub fn d(n: usize, i: usize) -> Self {
        Self::term(MultiIndex::zero(n), Series::var(n, i, EXACT))
    }

    pub fn add_term(&mut self, k: MultiIndex, p: Series) {
        if p.prec() < self.prec {
            self.lower(p.prec());
        }
        let p = p.truncate(self.prec);
        let s = match self.terms.remove(&k) {
            Some(s) => s.add(&p),
            None => p,
        };
        if !s.is_zero() {
            self.terms.insert(k, s);
        }
    }

    fn lower(&mut self, p: i64) {
        self.prec = p.max(-1);
        let prec = self.prec;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(k, s)| (k, s.truncate(prec)))
            .filter(|(_, s)| !s.is_zero())
            .collect();
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Series> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn truncate(&self, p: i64) -> Self {
        let mut w = self.clone();
        if p < w.prec {
            w.lower(p);
        }
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.prec);
        for (k, s) in &other.terms {
            out.add_term(k.clone(), s.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.prec);
        if c.is_zero() {
            return out;
        }
        for (k, s) in &self.terms {
            out.add_term(k.clone(), s.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Normal ordering via `P(d) x_B = sum_K binom(B, K) x_{B-K} (d/dd)^K P`.
    ///
    /// Known through `min(prec_a - xdeg(b), prec_b)`: the `K`-th derivative of
    /// a series known through `p` is known through `p - |K|`.
    pub fn mul(&self, other: &Self) -> Self {
        let target = prec_sub(self.prec, other.x_degree() as i64).min(other.prec);
        let mut out = Self::zero(self.n, target);
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                for k in b.submultiindices() {
                    let mut dp = p.clone();
                    for l in k.letters() {
                        dp = dp.derivative(l);
                    }
                    if dp.is_zero() {
                        continue;
                    }
                    let c = big(&mbinom(b, &k));
                    let x = a.add(&b.checked_sub(&k).expect("sub"));
                    out.add_term(x, dp.mul(q).scale(&c));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn first_difference(&self, other: &Self, p: i64) -> Option<String> {
        let keys: std::collections::BTreeSet<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        let zero = Series::zero(self.n, EXACT);
        for k in keys {
            let a = self.terms.get(k).unwrap_or(&zero);
            let b = other.terms.get(k).unwrap_or(&zero);
            if let Some((m, x, y)) = a.first_difference(b, p) {
                return Some(format!("x^{k:?} d^{m:?}: {} vs {}", fmt_rational(&x), fmt_rational(&y)));
            }
        }
        None
    }

    /// Action on the polynomial ring: `x` multiplies, `d` differentiates.
    pub fn fock(&self, f: &Poly) -> Result<Poly> {
        let deg = f.degree() as i64;
        if self.prec < deg {
            return Err(Error::precision(deg, self.prec));
        }
        let mut out = Poly::new();
        for (a, p) in &self.terms {
            for (m, c) in p.iter() {
                for (e, v) in differentiate(f, m) {
                    add_poly_term(&mut out, a.add(&e), c * v);
                }
            }
        }
        Ok(out)
    }

    /// Same layout as the phase-space normal form; used to compare the
    /// undeformed case term by term.
    pub fn to_phase(&self) -> HElem {
        let mut h = HElem::zero(self.n, self.prec);
        for (k, s) in &self.terms {
            h.add_term(k.clone(), s.clone());
        }
        h
    }

    pub fn from_phase(h: &HElem) -> Self {
        let mut w = Self::zero(h.n(), h.prec());
        for (k, s) in h.iter() {
            w.add_term(k.clone(), s.clone());
        }
        w
    }
}

/// Commutative polynomial in `x`, keyed by exponent.
pub type Poly = BTreeMap<MultiIndex, Rational>;

fn add_poly_term(p: &mut Poly, k: MultiIndex, c: Rational) {
    if c.is_zero() {
        return;
    }
    let v = p.entry(k.clone()).or_insert_with(Rational::zero);
    *v += c;
    if v.is_zero() {
        p.remove(&k);
    }
}

trait Degree {
    fn degree(&self) -> u32;
}

impl Degree for Poly {
    fn degree(&self) -> u32 {
        self.keys().map(|k| k.degree()).max().unwrap_or(0)
    }
}

/// `(d/dx)^m f`.
fn differentiate(f: &Poly, m: &MultiIndex) -> Vec<(MultiIndex, Rational)> {
    let mut out = Vec::new();
    for (e, c) in f {
        if let Some(r) = e.checked_sub(m) {
            let fall: Rational = (0..e.n())
                .map(|i| {
                    let (a, b) = (e.get(i), m.get(i));
                    ((a - b + 1)..=a).fold(Rational::one(), |acc, t| acc * Rational::from_integer(t.into()))
                })
                .product();
            out.push((r, c * fall));
        }
    }
    out
}

/// The images `x_r M^r_nu` of the generators for a matrix `M`.
fn generator_images(m: &MatrixSeries) -> Vec<WeylElem> {
    let n = m.dim();
    (0..n)
        .map(|nu| {
            let mut w = WeylElem::zero(n, m.prec());
            for r in 0..n {
                w.add_term(MultiIndex::unit(n, r), m.get(r, nu).clone());
            }
            w
        })
        .collect()
}

fn realize(gens: &[WeylElem], n: usize, prec: i64, a: &UElem) -> Result<WeylElem> {
    let d = a.degree() as i64;
    if prec < d {
        return Err(Error::precision(d, prec));
    }
    let mut out = WeylElem::zero(n, EXACT);
    for (k, c) in a.iter() {
        let w = k
            .letters()
            .iter()
            .fold(WeylElem::one(n), |acc, &l| acc.mul(&gens[l]));
        out = out.add(&w.scale(c));
    }
    Ok(out)
}

/// Image of `a` under `x_nu -> x_r phi^r_nu`.
pub fn phi_realize(l: &LieAlgebra, prec: i64, a: &UElem) -> Result<WeylElem> {
    realize(&generator_images(&phi_matrix(l, prec)), l.dim(), prec, a)
}

/// Image of a PBW element of the opposite algebra under `y_nu -> x_r phi~^r_nu`.
pub fn phi_tilde_realize(l: &LieAlgebra, prec: i64, a: &UElem) -> Result<WeylElem> {
    realize(&generator_images(&phi_tilde_matrix(l, prec)), l.dim(), prec, a)
}

/// `[x_mu^phi, x_nu^phi] = C^l_{mu nu} x_l^phi` through `prec - 1`.
pub fn check_realization_bracket(l: &LieAlgebra, prec: i64) -> Outcome {
    timed("bracket of the phi-realization", "appendix.realization_bracket", || {
        let n = l.dim();
        let g = generator_images(&phi_matrix(l, prec));
        for mu in 0..n {
            for nu in 0..n {
                let lhs = g[mu].commutator(&g[nu]);
                let mut rhs = WeylElem::zero(n, prec);
                for (lam, c) in l.bracket(mu, nu) {
                    rhs = rhs.add(&g[lam].scale(&c));
                }
                if lhs.prec() < prec - 1 {
                    return Err(Error::precision(prec, lhs.prec() + 1));
                }
                if let Some(w) = lhs.first_difference(&rhs, prec - 1) {
                    return Ok(Some(format!("mu={} nu={}: {w}", mu + 1, nu + 1)));
                }
            }
        }
        Ok(None)
    })
}

/// `[x_r phi^r_mu, x_s phi~^s_nu] = 0` through `prec - 1`.
pub fn check_xy_commute(l: &LieAlgebra, prec: i64) -> Outcome {
    timed("x and y realizations commute", "appendix.xy_commute", || {
        let n = l.dim();
        let gx = generator_images(&phi_matrix(l, prec));
        let gy = generator_images(&phi_tilde_matrix(l, prec));
        for mu in 0..n {
            for nu in 0..n {
                let c = gx[mu].commutator(&gy[nu]);
                if let Some(w) = c.first_difference(&WeylElem::zero(n, EXACT), prec - 1) {
                    return Ok(Some(format!("mu={} nu={}: {w}", mu + 1, nu + 1)));
                }
            }
        }
        Ok(None)
    })
}

/// `[d_r (C^N)^g_mu] C^r_nu - (d_r C^g_nu)(C^N)^r_mu = C^s_{mu nu} (C^N)^g_s`
/// for every `N <= max_n`, as exact polynomial identities.
pub fn check_ccn_identity(l: &LieAlgebra, max_n: u32) -> Outcome {
    timed("polynomial identity behind the bracket", "appendix.ccn", || {
        let n = l.dim();
        let c = c_matrix(l, EXACT);
        let mut power = MatrixSeries::identity(n, EXACT);
        for big_n in 0..=max_n {
            for g in 0..n {
                for mu in 0..n {
                    for nu in 0..n {
                        let mut lhs = Series::zero(n, EXACT);
                        for r in 0..n {
                            lhs = lhs.add(&power.get(g, mu).derivative(r).with_prec(EXACT).mul(c.get(r, nu)));
                            lhs = lhs.sub(&c.get(g, nu).derivative(r).with_prec(EXACT).mul(power.get(r, mu)));
                        }
                        let mut rhs = Series::zero(n, EXACT);
                        for (s, k) in l.bracket(mu, nu) {
                            rhs = rhs.add(&power.get(g, s).scale(&k));
                        }
                        if lhs != rhs {
                            return Ok(Some(format!(
                                "N={big_n} gamma={} mu={} nu={}: {} vs {}",
                                g + 1,
                                mu + 1,
                                nu + 1,
                                lhs.render(),
                                rhs.render()
                            )));
                        }
                    }
                }
            }
            power = power.mul(&c);
        }
        Ok(None)
    })
}

/// `xi(x_J)` realized and applied to `1` gives back the monomial `x_J`.
pub fn check_fock_symmetrization(ps: &PhaseSpace, deg: u32) -> Outcome {
    timed("symmetrized words act on 1 as monomials", "appendix.fock", || {
        let n = ps.dim();
        let one: Poly = [(MultiIndex::zero(n), Rational::one())].into_iter().collect();
        for j in MultiIndex::all_up_to(n, deg) {
            let w = phi_realize(ps.lie(), ps.prec(), &ps.u_left().symmetrize(&j))?;
            let got = w.fock(&one)?;
            let want: Poly = [(j.clone(), Rational::one())].into_iter().collect();
            if got != want {
                return Ok(Some(format!("J={j:?}: {got:?}")));
            }
        }
        Ok(None)
    })
}

pub fn appendix_suite(l: &LieAlgebra, prec: i64, max_n: u32) -> Vec<Outcome> {
    vec![
        check_realization_bracket(l, prec),
        check_xy_commute(l, prec),
        check_ccn_identity(l, max_n),
    ]
}

/// For an abelian algebra, compares the phase space with this module term by
/// term: products, the action on `U(g)`, coproducts and the antipode.
pub fn abelian_oracle(ps: &PhaseSpace, deg: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let mut out = Vec::new();
    if !ps.lie().is_abelian() {
        out.push(Outcome::fail("weyl.abelian", "algebra is not abelian"));
        return out;
    }
    let prec = ps.prec();
    let mut basis: Vec<WeylElem> = Vec::new();
    for a in MultiIndex::all_up_to(n, deg) {
        // series monomials above the precision truncate to zero
        for b in MultiIndex::all_up_to(n, (deg - a.degree()).min(prec.max(0) as u32)) {
            basis.push(WeylElem::term(a.clone(), Series::monomial(b, Rational::one(), prec)));
        }
    }

    out.push(timed("products agree", "weyl.multiply", || {
        for a in &basis {
            for b in &basis {
                let w = a.mul(b);
                let h = ps.mul(&a.to_phase(), &b.to_phase());
                if WeylElem::from_phase(&h) != w {
                    return Ok(Some(format!("{:?} * {:?}", a.to_phase(), b.to_phase())));
                }
            }
        }
        Ok(None)
    }));

    out.push(timed("black action is the Fock action", "weyl.black_left", || {
        for a in &basis {
            for j in MultiIndex::all_up_to(n, deg) {
                let f = UElem::monomial(j.clone(), Rational::one());
                let poly: Poly = [(j.clone(), Rational::one())].into_iter().collect();
                let got = ps.black_left(&a.to_phase(), &f)?;
                let want = a.fock(&poly)?;
                if got.terms() != &want {
                    return Ok(Some(format!("{:?} |> x_{j:?}: {got:?}", a.to_phase())));
                }
            }
        }
        Ok(None)
    }));

    out.push(timed("coproducts are binomial", "weyl.coproduct", || {
        let each = deg;
        let db = crate::dual::DualBasis::new(ps, each)?;
        for k in MultiIndex::all_up_to(n, each) {
            let p = Series::monomial(k.clone(), Rational::one(), EXACT);
            let t = crate::dual::coproduct(ps, &db, &p, each, 2 * each)?;
            let mut want = crate::dual::TensorSeries::zero(n, each as i64, 2 * each as i64);
            for k1 in k.submultiindices() {
                let k2 = k.checked_sub(&k1).expect("sub");
                want.add_term(k1.clone(), k2, big(&mbinom(&k, &k1)));
            }
            if let Some(w) = t.first_difference(&want) {
                return Ok(Some(format!("d^{k:?}: {w}")));
            }
        }
        Ok(None)
    }));

    out.push(timed("antipode fixes x and negates d", "weyl.antipode", || {
        for a in &basis {
            // S(x_A P(d)) = P(-d) x_A in the Weyl algebra
            let (k, p) = a.terms().iter().next().expect("basis element");
            let want = WeylElem::term(MultiIndex::zero(n), p.reflect()).mul(&WeylElem::term(k.clone(), Series::one(n, EXACT)));
            let got = WeylElem::from_phase(&ps.antipode(&a.to_phase()));
            let p = got.prec().min(want.prec());
            if let Some(w) = got.first_difference(&want, p) {
                return Ok(Some(format!("S({:?}): {w}", a.to_phase())));
            }
        }
        Ok(None)
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn mi(e: &[u16]) -> MultiIndex {
        MultiIndex::from_slice(e)
    }

    #[test]
    fn weyl_relations() {
        let d = WeylElem::d(1, 0);
        let x = WeylElem::x(1, 0);
        let mut want = WeylElem::term(mi(&[1]), Series::var(1, 0, EXACT));
        want.add_term(mi(&[0]), Series::one(1, EXACT));
        assert_eq!(d.mul(&x), want);
        let dd = d.mul(&d);
        let mut want = WeylElem::term(mi(&[1]), Series::monomial(mi(&[2]), int(1), EXACT));
        want.add_term(mi(&[0]), Series::var(1, 0, EXACT).scale(&int(2)));
        assert_eq!(dd.mul(&x), want);
        assert_eq!(x.mul(&d), WeylElem::term(mi(&[1]), Series::var(1, 0, EXACT)));
    }

    #[test]
    fn heisenberg_realization() {
        let l = LieAlgebra::heisenberg3();
        let w = phi_realize(&l, 5, &UElem::gen(3, 0)).unwrap();
        let mut want = WeylElem::term(mi(&[1, 0, 0]), Series::one(3, 5));
        want.add_term(mi(&[0, 0, 1]), Series::var(3, 1, 5).scale(&rat(1, 2)));
        assert_eq!(w, want);
    }

    #[test]
    fn realization_is_multiplicative() {
        for l in [LieAlgebra::sl2(), LieAlgebra::solvable2()] {
            let u = crate::pbw::UEnv::new(l.clone());
            let n = l.dim();
            for a in MultiIndex::all_up_to(n, 2) {
                for b in MultiIndex::all_up_to(n, 1) {
                    let (ua, ub) = (UElem::monomial(a.clone(), int(1)), UElem::monomial(b.clone(), int(1)));
                    let lhs = phi_realize(&l, 5, &u.mul(&ua, &ub)).unwrap();
                    let rhs = phi_realize(&l, 5, &ua).unwrap().mul(&phi_realize(&l, 5, &ub).unwrap());
                    let p = lhs.prec().min(rhs.prec());
                    assert!(lhs.first_difference(&rhs, p).is_none(), "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn appendix_checks() {
        for l in [LieAlgebra::heisenberg3(), LieAlgebra::sl2(), LieAlgebra::solvable2(), LieAlgebra::abelian(2)] {
            for o in appendix_suite(&l, 5, 4) {
                assert!(o.passed(), "{} {} {:?}", l.label(), o.check_id, o.witness);
            }
            let ps = PhaseSpace::new(l, 5);
            assert!(check_fock_symmetrization(&ps, 3).passed());
        }
    }

    #[test]
    fn abelian_degeneration() {
        let ps = PhaseSpace::new(LieAlgebra::abelian(2), 6);
        for o in abelian_oracle(&ps, 3) {
            assert!(o.passed(), "{} {:?}", o.check_id, o.witness);
        }
    }
}
