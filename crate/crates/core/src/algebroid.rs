//! The coproducts on the whole phase space, tensors over the enveloping
//! algebra, the antipode axioms and the Hopf algebroid check suite.
//!
//! Tensor products over `U(g)` are quotients. Equality in them is decided by
//! black-action criteria up to a test order `M`:
//!
//! * left side, `h (x) h'` in `H (x)_{U(g)} H`: `sum (h |> f)(h' |> g) = 0`
//!   for PBW monomials `f, g` of degree `<= M`;
//! * right side, `h (x) h'` over `U(g^op)`: `sum (u <| h)(v <| h') = 0`.
//!
//! The mixed tensor products of the two-sided coassociativity are compared in
//! a normal form instead: `series (x) H (x) series`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{fmt_rational, MultiIndex, Rational};
use crate::dual::{coproduct, DualBasis};
use crate::lie::LieAlgebra;
use crate::pbw::{UElem, UEnv};
use crate::phase::{Elem, HElem, PhaseSpace, RElem};
use crate::report::{timed, Outcome};
use crate::series::{render_monomial, Series, EXACT};
use crate::{Error, Result};

/// A finite sum of pure tensors. `R = false` holds left normal forms and is
/// read in `H (x)_{U(g)} H`; `R = true` holds right normal forms, read over
/// `U(g^op)`.
#[derive(Clone)]
pub struct Tensor<const R: bool> {
    n: usize,
    pairs: Vec<(Elem<R>, Elem<R>)>,
    // precision of a truncation that may have dropped every pair
    floor: i64,
}

pub type LTensor = Tensor<false>;
pub type RTensor = Tensor<true>;

impl<const R: bool> Tensor<R> {
    pub fn zero(n: usize) -> Self {
        Tensor { n, pairs: Vec::new(), floor: EXACT }
    }

    /// Caps the joint precision at `p` even where no pair carries it.
    pub fn with_floor(mut self, p: i64) -> Self {
        self.floor = self.floor.min(p);
        self
    }

    pub fn pure(a: Elem<R>, b: Elem<R>) -> Self {
        let mut t = Self::zero(a.n());
        t.push(a, b);
        t
    }

    pub fn push(&mut self, a: Elem<R>, b: Elem<R>) {
        if !a.is_zero() && !b.is_zero() {
            self.pairs.push((a, b));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(Elem<R>, Elem<R>)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Joint precision: the minimum over all slots.
    pub fn prec(&self) -> i64 {
        self.pairs
            .iter()
            .map(|(a, b)| a.prec().min(b.prec()))
            .fold(self.floor, i64::min)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone().with_floor(other.floor);
        out.pairs.extend(other.pairs.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n).with_floor(self.floor);
        for (a, b) in &self.pairs {
            out.push(a.scale(c), b.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn render(&self) -> String {
        if self.pairs.is_empty() {
            return "0".into();
        }
        self.pairs
            .iter()
            .map(|(a, b)| format!("({}) (x) ({})", a.render(), b.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl LTensor {
    /// Factorwise product.
    pub fn mul(&self, ps: &PhaseSpace, other: &Self) -> Self {
        let mut out = Self::zero(self.n).with_floor(self.floor.min(other.floor));
        for (a, b) in &self.pairs {
            for (c, d) in &other.pairs {
                out.push(ps.mul(a, c), ps.mul(b, d));
            }
        }
        out
    }
}

impl RTensor {
    pub fn mul(&self, ps: &PhaseSpace, other: &Self) -> Self {
        let mut out = Self::zero(self.n).with_floor(self.floor.min(other.floor));
        for (a, b) in &self.pairs {
            for (c, d) in &other.pairs {
                out.push(ps.mul_r(a, c), ps.mul_r(b, d));
            }
        }
        out
    }
}

/// A finite sum of triple tensors.
#[derive(Clone)]
pub struct Triple<const R: bool> {
    n: usize,
    terms: Vec<(Elem<R>, Elem<R>, Elem<R>)>,
}

impl<const R: bool> Triple<R> {
    pub fn zero(n: usize) -> Self {
        Triple { n, terms: Vec::new() }
    }

    pub fn push(&mut self, a: Elem<R>, b: Elem<R>, c: Elem<R>) {
        if !a.is_zero() && !b.is_zero() && !c.is_zero() {
            self.terms.push((a, b, c));
        }
    }

    pub fn terms(&self) -> &[(Elem<R>, Elem<R>, Elem<R>)] {
        &self.terms
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        let m = -Rational::one();
        for (a, b, c) in &other.terms {
            out.push(a.scale(&m), b.clone(), c.clone());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

// ---- coproducts -----------------------------------------------------------

/// `Delta^L(h)` with the left slots known to precision `left` and the right
/// slots to `right`; needs `prec(h) >= left + right`.
pub fn delta_l_split(ps: &PhaseSpace, db: &DualBasis, h: &HElem, left: u32, right: u32) -> Result<LTensor> {
    let n = ps.dim();
    let total = left + right;
    if h.prec() < total as i64 {
        return Err(Error::precision(total as i64, h.prec()));
    }
    let mut groups: BTreeMap<MultiIndex, HElem> = BTreeMap::new();
    for (j, p) in h.iter() {
        let ts = coproduct(ps, db, p, left.max(right), total)?;
        for ((a, b), c) in ts.iter() {
            if a.degree() > left || b.degree() > right {
                continue;
            }
            groups
                .entry(b.clone())
                .or_insert_with(|| HElem::zero(n, left as i64))
                .add_term(j.clone(), Series::monomial(a.clone(), c.clone(), left as i64));
        }
    }
    let mut t = LTensor::zero(n).with_floor(left.min(right) as i64);
    for (b, a) in groups {
        t.push(a, HElem::series(Series::monomial(b, Rational::one(), right as i64)));
    }
    Ok(t)
}

/// `Delta^L(x_J P) = (x_J (x) 1) Delta(P)` with both slots at precision `each`.
pub fn delta_l(ps: &PhaseSpace, h: &HElem, each: u32) -> Result<LTensor> {
    let db = DualBasis::new(ps, each)?;
    delta_l_split(ps, &db, h, each, each)
}

/// `Delta^R(Q y_K) = Q_(1) (x) Q_(2) y_K` on a right normal form.
pub fn delta_r_split(ps: &PhaseSpace, db: &DualBasis, r: &RElem, left: u32, right: u32) -> Result<RTensor> {
    let n = ps.dim();
    let total = left + right;
    if r.prec() < total as i64 {
        return Err(Error::precision(total as i64, r.prec()));
    }
    let mut groups: BTreeMap<MultiIndex, RElem> = BTreeMap::new();
    for (k, q) in r.iter() {
        let ts = coproduct(ps, db, q, left.max(right), total)?;
        for ((c, d), v) in ts.iter() {
            if c.degree() > left || d.degree() > right {
                continue;
            }
            groups
                .entry(c.clone())
                .or_insert_with(|| RElem::zero(n, right as i64))
                .add_term(k.clone(), Series::monomial(d.clone(), v.clone(), right as i64));
        }
    }
    let mut t = RTensor::zero(n).with_floor(left.min(right) as i64);
    for (c, b) in groups {
        t.push(RElem::series(Series::monomial(c, Rational::one(), left as i64)), b);
    }
    Ok(t)
}

/// `Delta^R(h)` in right normal forms, both slots at precision `each`.
pub fn delta_r(ps: &PhaseSpace, h: &HElem, each: u32) -> Result<RTensor> {
    let db = DualBasis::new(ps, each)?;
    delta_r_split(ps, &db, &ps.to_r(h), each, each)
}

// ---- quotient criteria ------------------------------------------------------

fn mono(k: &MultiIndex) -> UElem {
    UElem::monomial(k.clone(), Rational::one())
}

fn name(k: &MultiIndex, sym: &str) -> String {
    let s = render_monomial(k, sym, " ");
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Black actions of one slot on every test monomial; `None` where zero.
fn left_values(ps: &PhaseSpace, h: &HElem, monos: &[MultiIndex]) -> Result<Vec<Option<UElem>>> {
    monos
        .iter()
        .map(|j| ps.black_left(h, &mono(j)).map(|v| (!v.is_zero()).then_some(v)))
        .collect()
}

fn right_values(ps: &PhaseSpace, r: &RElem, monos: &[MultiIndex]) -> Result<Vec<Option<UElem>>> {
    monos
        .iter()
        .map(|j| ps.black_right_r(&mono(j), r).map(|v| (!v.is_zero()).then_some(v)))
        .collect()
}

type Values = Vec<Vec<Option<UElem>>>;

fn criterion(u: &UEnv, monos: &[MultiIndex], slots: &[Values], sym: &str) -> Option<String> {
    let arity = slots.first().map_or(0, |s| s.len());
    let m = monos.len();
    let total = m.pow(arity as u32);
    for idx in 0..total {
        let mut picks = Vec::with_capacity(arity);
        let mut rest = idx;
        for _ in 0..arity {
            picks.push(rest % m);
            rest /= m;
        }
        picks.reverse();
        let mut sum = UElem::zero(u.dim());
        for term in slots {
            let mut acc: Option<UElem> = None;
            let mut zero = false;
            for (slot, &i) in term.iter().zip(&picks) {
                match &slot[i] {
                    None => {
                        zero = true;
                        break;
                    }
                    Some(v) => {
                        acc = Some(match acc {
                            None => v.clone(),
                            Some(a) => u.mul(&a, v),
                        })
                    }
                }
            }
            if !zero {
                if let Some(a) = acc {
                    sum = sum.add(&a);
                }
            }
        }
        if !sum.is_zero() {
            let args: Vec<String> = picks.iter().map(|&i| name(&monos[i], sym)).collect();
            return Some(format!("at ({}): {}", args.join(", "), sum.render_with(sym)));
        }
    }
    None
}

fn need(prec: i64, m: u32) -> Result<()> {
    if prec < m as i64 {
        return Err(Error::precision(m as i64, prec));
    }
    Ok(())
}

/// Membership of `T` in the kernel of `H (x) H -> H (x)_{U(g)} H`, tested with
/// all PBW monomials of degree `<= m`. Returns the first nonzero witness.
pub fn ideal_test(ps: &PhaseSpace, t: &LTensor, m: u32) -> Result<Option<String>> {
    need(t.prec(), m)?;
    let monos = MultiIndex::all_up_to(ps.dim(), m);
    let mut slots = Vec::new();
    for (a, b) in t.pairs() {
        slots.push(vec![left_values(ps, a, &monos)?, left_values(ps, b, &monos)?]);
    }
    Ok(criterion(ps.u_left(), &monos, &slots, "x"))
}

/// The right-handed criterion `sum (u <| h)(v <| h') = 0`.
pub fn ideal_test_r(ps: &PhaseSpace, t: &RTensor, m: u32) -> Result<Option<String>> {
    need(t.prec(), m)?;
    let monos = MultiIndex::all_up_to(ps.dim(), m);
    let mut slots = Vec::new();
    for (a, b) in t.pairs() {
        slots.push(vec![right_values(ps, a, &monos)?, right_values(ps, b, &monos)?]);
    }
    Ok(criterion(ps.u_right(), &monos, &slots, "y"))
}

/// Triple criterion `sum (h |> f)(h' |> g)(h'' |> k) = 0`.
pub fn ideal_test3(ps: &PhaseSpace, t: &Triple<false>, m: u32) -> Result<Option<String>> {
    let monos = MultiIndex::all_up_to(ps.dim(), m);
    let mut slots = Vec::new();
    for (a, b, c) in t.terms() {
        for e in [a, b, c] {
            need(e.prec(), m)?;
        }
        slots.push(vec![
            left_values(ps, a, &monos)?,
            left_values(ps, b, &monos)?,
            left_values(ps, c, &monos)?,
        ]);
    }
    Ok(criterion(ps.u_left(), &monos, &slots, "x"))
}

pub fn ideal_test3_r(ps: &PhaseSpace, t: &Triple<true>, m: u32) -> Result<Option<String>> {
    let monos = MultiIndex::all_up_to(ps.dim(), m);
    let mut slots = Vec::new();
    for (a, b, c) in t.terms() {
        for e in [a, b, c] {
            need(e.prec(), m)?;
        }
        slots.push(vec![
            right_values(ps, a, &monos)?,
            right_values(ps, b, &monos)?,
            right_values(ps, c, &monos)?,
        ]);
    }
    Ok(criterion(ps.u_right(), &monos, &slots, "y"))
}

/// Takeuchi condition `sum b (x) b' x_mu = sum b y_mu (x) b'` for every `mu`,
/// decided by [`ideal_test`]. Slots need precision `m + 1`.
pub fn takeuchi_test(ps: &PhaseSpace, t: &LTensor, m: u32) -> Result<Option<String>> {
    for mu in 0..ps.dim() {
        let (x, y) = (ps.x(mu), ps.y(mu));
        let mut diff = LTensor::zero(ps.dim());
        for (b, b2) in t.pairs() {
            diff.push(b.clone(), ps.mul(b2, &x));
            diff.push(ps.mul(b, &y).neg(), b2.clone());
        }
        if let Some(w) = ideal_test(ps, &diff, m)? {
            return Ok(Some(format!("a = x{}: {w}", mu + 1)));
        }
    }
    Ok(None)
}

/// Right Takeuchi condition `sum y_mu b (x) b' = sum b (x) z_mu b'` with
/// `z_mu = beta^R(y_mu)`.
pub fn takeuchi_test_r(ps: &PhaseSpace, t: &RTensor, m: u32) -> Result<Option<String>> {
    let n = ps.dim();
    for mu in 0..n {
        let y = RElem::gen(n, mu);
        let z = ps.beta_r_form(&UElem::gen(n, mu));
        let mut diff = RTensor::zero(n);
        for (b, b2) in t.pairs() {
            diff.push(ps.mul_r(&y, b), b2.clone());
            diff.push(b.neg(), ps.mul_r(&z, b2));
        }
        if let Some(w) = ideal_test_r(ps, &diff, m)? {
            return Ok(Some(format!("a = y{}: {w}", mu + 1)));
        }
    }
    Ok(None)
}

// ---- antipode ---------------------------------------------------------------

/// `S(h)`: antihomomorphism with `S(d) = -d` and `S(y_mu) = x_mu`.
pub fn antipode(ps: &PhaseSpace, h: &HElem) -> HElem {
    ps.antipode(h)
}

pub fn antipode_inv(ps: &PhaseSpace, h: &HElem) -> HElem {
    ps.antipode_inv(h)
}

/// `m (S (x) id) Delta^L(h)`, known through `min(prec h, N) - deg_x h`.
pub fn s_tensor_id(ps: &PhaseSpace, db: &DualBasis, h: &HElem) -> Result<HElem> {
    let n = ps.dim();
    let d = h.gen_degree() as i64;
    let top = h.prec().min(db.level() as i64);
    if top < d {
        return Err(Error::precision(d, top));
    }
    let mut out = HElem::zero(n, top - d);
    for (j, p) in h.iter() {
        let ts = coproduct(ps, db, p, top as u32, top as u32)?;
        let mut by_a: BTreeMap<MultiIndex, Series> = BTreeMap::new();
        for ((a, b), c) in ts.iter() {
            by_a.entry(a.clone())
                .or_insert_with(|| Series::zero(n, EXACT))
                .add_term(b.clone(), c.clone());
        }
        for (a, rest) in by_a {
            let s = ps.antipode(&HElem::term(j.clone(), Series::monomial(a, Rational::one(), EXACT)));
            out = out.add(&ps.mul(&s, &HElem::series(rest)).truncate(top - d));
        }
    }
    Ok(out)
}

/// `m (id (x) S) Delta^R(h)`, read off the right normal form of `h`.
pub fn id_tensor_s(ps: &PhaseSpace, db: &DualBasis, h: &HElem) -> Result<HElem> {
    let n = ps.dim();
    let r = ps.to_r(h);
    let d = r.gen_degree() as i64;
    let top = r.prec().min(db.level() as i64);
    if top < d {
        return Err(Error::precision(d, top));
    }
    let mut out = HElem::zero(n, top - d);
    for (k, q) in r.iter() {
        // S(Q y_K) = rho^-1(y_K) Q(-d)
        let word = HElem::from_u(&ps.rho_inv(&mono(k)));
        let ts = coproduct(ps, db, q, top as u32, top as u32)?;
        let mut by_d: BTreeMap<MultiIndex, Series> = BTreeMap::new();
        for ((c, dd), v) in ts.iter() {
            by_d.entry(dd.clone())
                .or_insert_with(|| Series::zero(n, EXACT))
                .add_term(c.clone(), v.clone());
        }
        for (dd, left) in by_d {
            let s = ps.mul(&word, &HElem::series(Series::monomial(dd, Rational::one(), EXACT).reflect()));
            out = out.add(&ps.mul(&HElem::series(left), &s).truncate(top - d));
        }
    }
    Ok(out)
}

// ---- normal forms for the two-sided coassociativity ---------------------------

/// `series (x) H (x) series` keyed by the outer monomials, with the precision
/// through which every middle entry (present or not) is known.
struct Canon {
    map: BTreeMap<(MultiIndex, MultiIndex), HElem>,
    floor: i64,
}

impl Canon {
    fn new(floor: i64) -> Self {
        Canon { map: BTreeMap::new(), floor }
    }

    fn bound(&mut self, p: i64) {
        self.floor = self.floor.min(p);
    }

    fn add(&mut self, key: (MultiIndex, MultiIndex), h: HElem) {
        self.bound(h.prec());
        match self.map.get_mut(&key) {
            Some(v) => *v = v.add(&h),
            None => {
                self.map.insert(key, h);
            }
        }
    }
}

fn series_part<const R: bool>(e: &Elem<R>) -> Series {
    e.coeff(&MultiIndex::zero(e.n()))
}

/// `sum_K P_K x_K` (series left of ordered `x` monomials), computed in the
/// opposite phase space where the `x` are right-hand generators.
fn x_right_form(ps: &PhaseSpace, op: &PhaseSpace, h: &HElem) -> RElem {
    let mut out = RElem::zero(ps.dim(), h.prec());
    for (j, p) in h.iter() {
        let m = RElem::term(j.clone(), Series::one(ps.dim(), EXACT));
        out = out.add(&op.mul_r(&m, &RElem::series(p.clone())));
    }
    out
}

/// `sum_J y_J P_J` (ordered `y` monomials left of series).
fn y_left_form(ps: &PhaseSpace, op: &PhaseSpace, r: &RElem) -> HElem {
    let mut out = HElem::zero(ps.dim(), r.prec());
    for (k, q) in r.iter() {
        out = out.add(&op.mul(&HElem::series(q.clone()), &op.x_mono(k)));
    }
    out
}

/// `x_{w1} ... x_{wl}` as `beta^R` of a word, moved across the tensor sign:
/// `alpha^R((y_{wl} - t_{wl}) ... (y_{w1} - t_{w1}))`.
fn x_word_as_target(ps: &PhaseSpace, k: &MultiIndex) -> HElem {
    let t = ps.lie().trace_vector();
    let mut letters = k.letters();
    letters.reverse();
    let mut acc = ps.one();
    for l in letters {
        let f = ps.y(l).sub(&ps.scalar(t[l].clone()));
        acc = ps.mul(&acc, &f);
    }
    acc
}

fn budget(db: &DualBasis, p: i64, low: u32) -> Result<u32> {
    let p = p.min(db.level() as i64);
    if p < low as i64 {
        return Err(Error::precision(low as i64, p));
    }
    Ok(p as u32)
}

/// `(Delta^R (x) id) Delta^L(h)` and `(id (x) Delta^L) Delta^R(h)` in normal
/// form, outer monomials of degree `<= k`.
fn mixed_first(ps: &PhaseSpace, db: &DualBasis, h: &HElem, r: &RElem, k: u32) -> Result<(Canon, Canon)> {
    let p = budget(db, h.prec(), 2 * k)?;
    let mut lhs = Canon::new(EXACT);
    for (a, b) in delta_l_split(ps, db, h, p - k, k)?.pairs() {
        let bs = series_part(b);
        let ra = ps.to_r(a);
        let pa = budget(db, ra.prec(), 2 * k)?;
        for (c, mid) in delta_r_split(ps, db, &ra, k, pa - k)?.pairs() {
            let ml = ps.to_l(mid);
            lhs.bound(ml.prec());
            for (cm, _) in series_part(c).iter() {
                for (bm, bc) in bs.iter() {
                    lhs.add((cm.clone(), bm.clone()), ml.scale(bc));
                }
            }
        }
    }
    let pr = budget(db, r.prec(), 2 * k)?;
    let mut rhs = Canon::new(EXACT);
    for (c, mid) in delta_r_split(ps, db, r, k, pr - k)?.pairs() {
        let ml = ps.to_l(mid);
        let pm = budget(db, ml.prec(), 2 * k)?;
        let cs = series_part(c);
        for (a, b) in delta_l_split(ps, db, &ml, pm - k, k)?.pairs() {
            rhs.bound(a.prec());
            for (cm, cc) in cs.iter() {
                for (bm, bc) in series_part(b).iter() {
                    rhs.add((cm.clone(), bm.clone()), a.scale(&(cc * bc)));
                }
            }
        }
    }
    // entries missing from both sides are known through the coarsest slot
    let floor = (p - 2 * k).min(pr - 2 * k) as i64 - h.gen_degree().max(r.gen_degree()) as i64;
    lhs.bound(floor);
    rhs.bound(floor);
    Ok((lhs, rhs))
}

/// `(Delta^L (x) id) Delta^R(h)` and `(id (x) Delta^R) Delta^L(h)` in normal
/// form. The first slot is brought to `sum y_J P_J` and its `y_J = beta^L(.)`
/// moved into the middle; the last slot to `sum P_K x_K` with
/// `x_K = beta^R(.)` moved likewise. Each conversion costs `d` degrees, `d`
/// the x-degree of `h`: the left side needs `prec >= 2k + 3d`, the right side
/// `2k + 2d`.
fn mixed_second(
    ps: &PhaseSpace,
    op: &PhaseSpace,
    db: &DualBasis,
    h: &HElem,
    r: &RElem,
    k: u32,
) -> Result<(Canon, Canon)> {
    let d = h.gen_degree().max(r.gen_degree());
    let pr = budget(db, r.prec(), 2 * k + 3 * d)?;
    let left = pr - k - 2 * d;
    let mut lhs = Canon::new((left - k - d) as i64);
    for (c, mid3) in delta_r_split(ps, db, r, left, k + 2 * d)?.pairs() {
        let xr = x_right_form(ps, op, &ps.to_l(mid3));
        need(xr.prec(), k)?;
        for (cm, _) in series_part(c).iter() {
            let dc = coproduct(ps, db, &Series::monomial(cm.clone(), Rational::one(), EXACT), left, left)?;
            for ((c1, c2), v) in dc.iter() {
                if c1.degree() > k {
                    continue;
                }
                let head = HElem::series(Series::monomial(c2.clone(), v.clone(), (left - c1.degree()) as i64));
                for (kw, pk) in xr.iter() {
                    let mid = ps.mul(&head, &x_word_as_target(ps, kw));
                    lhs.bound(mid.prec());
                    for (bm, bc) in pk.iter() {
                        if bm.degree() <= k {
                            lhs.add((c1.clone(), bm.clone()), mid.scale(bc));
                        }
                    }
                }
            }
        }
    }
    let ph = budget(db, h.prec(), 2 * k + 2 * d)?;
    let right = ph - k - 2 * d;
    let mut rhs = Canon::new((right - k) as i64);
    for (a, b) in delta_l_split(ps, db, h, k + 2 * d, right)?.pairs() {
        let yl = y_left_form(ps, op, &ps.to_r(a));
        need(yl.prec(), k)?;
        for (bm, _) in series_part(b).iter() {
            let db2 = coproduct(ps, db, &Series::monomial(bm.clone(), Rational::one(), EXACT), right, right)?;
            for ((b1, b2), v) in db2.iter() {
                if b2.degree() > k {
                    continue;
                }
                let tail = HElem::series(Series::monomial(b1.clone(), v.clone(), (right - b2.degree()) as i64));
                for (jw, pj) in yl.iter() {
                    let mut rev = jw.letters();
                    rev.reverse();
                    let head = HElem::from_u(&ps.u_left().word(&rev));
                    let mid = ps.mul(&head, &tail);
                    rhs.bound(mid.prec());
                    for (cm, cc) in pj.iter() {
                        if cm.degree() <= k {
                            rhs.add((cm.clone(), b2.clone()), mid.scale(cc));
                        }
                    }
                }
            }
        }
    }
    Ok((lhs, rhs))
}

fn compare_canon(a: &Canon, b: &Canon, k: u32) -> Result<Option<String>> {
    let p = a.floor.min(b.floor);
    if p < 0 {
        return Err(Error::precision(0, p));
    }
    let keys: std::collections::BTreeSet<&(MultiIndex, MultiIndex)> = a.map.keys().chain(b.map.keys()).collect();
    for key in keys {
        if key.0.degree() > k || key.1.degree() > k {
            continue;
        }
        let z = HElem::zero(key.0.n(), EXACT);
        let (x, y) = (a.map.get(key).unwrap_or(&z), b.map.get(key).unwrap_or(&z));
        if let Some(w) = x.first_difference(y, p) {
            return Ok(Some(format!("component {} (x) . (x) {}: {w}", name(&key.0, "d"), name(&key.1, "d"))));
        }
    }
    Ok(None)
}

// ---- the check suite ----------------------------------------------------------

/// A test element in both normal forms, each computed on its own side so that
/// neither loses precision to a conversion.
#[derive(Clone)]
pub struct Gen {
    pub name: String,
    pub l: HElem,
    pub r: RElem,
}

/// `x_mu, y_mu, d^mu, O^mu_nu` and the products `x_mu d^mu'`, `d^mu x_mu'`,
/// `x_mu' y_mu` with `mu' = mu + 1 mod n`.
pub fn generators(ps: &PhaseSpace) -> Vec<Gen> {
    let n = ps.dim();
    let xr = |mu: usize| ps.to_r_mono(&MultiIndex::unit(n, mu));
    let dr = |mu: usize| RElem::d(n, mu);
    let yr = |mu: usize| RElem::gen(n, mu);
    let mut out = Vec::new();
    for mu in 0..n {
        out.push(Gen { name: format!("x{}", mu + 1), l: ps.x(mu), r: xr(mu) });
    }
    for mu in 0..n {
        out.push(Gen { name: format!("y{}", mu + 1), l: ps.y(mu), r: yr(mu) });
    }
    for mu in 0..n {
        out.push(Gen { name: format!("d{}", mu + 1), l: ps.d(mu), r: dr(mu) });
    }
    for mu in 0..n {
        for nu in 0..n {
            let o = ps.o().get(mu, nu).clone();
            out.push(Gen { name: format!("O{}_{}", mu + 1, nu + 1), l: HElem::series(o.clone()), r: RElem::series(o) });
        }
    }
    for mu in 0..n {
        let m2 = (mu + 1) % n;
        out.push(Gen {
            name: format!("x{} d{}", mu + 1, m2 + 1),
            l: ps.mul(&ps.x(mu), &ps.d(m2)),
            r: ps.mul_r(&xr(mu), &dr(m2)),
        });
        out.push(Gen {
            name: format!("d{} x{}", mu + 1, m2 + 1),
            l: ps.mul(&ps.d(mu), &ps.x(m2)),
            r: ps.mul_r(&dr(mu), &xr(m2)),
        });
        // x and y commute; this order keeps the full precision of y
        out.push(Gen {
            name: format!("x{} y{}", m2 + 1, mu + 1),
            l: ps.mul(&ps.x(m2), &ps.y(mu)),
            r: ps.mul_r(&xr(m2), &yr(mu)),
        });
    }
    out
}

/// `x_mu, d^mu, y_mu`, the right factors of the multiplicativity checks.
fn basic(gens: &[Gen], n: usize) -> Vec<Gen> {
    gens[..2 * n].iter().chain(&gens[2 * n..3 * n]).cloned().collect()
}

fn same<const R: bool>(a: &Elem<R>, b: &Elem<R>, what: &str) -> Result<Option<String>> {
    let p = a.prec().min(b.prec());
    if p < 0 {
        return Err(Error::precision(0, p));
    }
    Ok(a.first_difference(b, p).map(|w| format!("{what}: {w}")))
}

fn first<I: IntoIterator<Item = Result<Option<String>>>>(it: I) -> Result<Option<String>> {
    for r in it {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn tagged(g: &Gen, r: Result<Option<String>>) -> Result<Option<String>> {
    r.map(|w| w.map(|w| format!("h = {}: {w}", g.name)))
}

/// Shared state for one run.
struct Ctx<'a> {
    ps: &'a PhaseSpace,
    op: PhaseSpace,
    db: DualBasis,
    gens: Vec<Gen>,
    m: u32,
}

impl<'a> Ctx<'a> {
    fn new(ps: &'a PhaseSpace, m: u32) -> Result<Self> {
        let level = ps.prec().max(0) as u32;
        Ok(Ctx { ps, op: ps.opposite(), db: DualBasis::new(ps, level)?, gens: generators(ps), m })
    }

    fn n(&self) -> usize {
        self.ps.dim()
    }

    fn words(&self, deg: u32) -> Vec<UElem> {
        MultiIndex::all_up_to(self.n(), deg).iter().map(mono).collect()
    }
}

type Check<'c> = Box<dyn Fn() -> Outcome + Send + Sync + 'c>;

fn run_all(checks: Vec<Check<'_>>) -> Vec<Outcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = checks.iter().map(|c| s.spawn(move || c())).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    })
}

/// Counits, coassociativity, bimodule-map property and the coproducts of the
/// generators, for both coproducts.
pub fn coring_suite(ps: &PhaseSpace, m: u32) -> Vec<Outcome> {
    match Ctx::new(ps, m) {
        Ok(cx) => run_all(coring_checks(&cx)),
        Err(e) => vec![Outcome::from_result("coring.setup", Err(e))],
    }
}

/// Takeuchi property, multiplicativity and the character property of the
/// counits.
pub fn bialgebroid_suite(ps: &PhaseSpace, m: u32) -> Vec<Outcome> {
    match Ctx::new(ps, m) {
        Ok(cx) => run_all(bialgebroid_checks(&cx)),
        Err(e) => vec![Outcome::from_result("bialgebroid.setup", Err(e))],
    }
}

/// Source/target compatibilities, two-sided coassociativity and the antipode.
pub fn hopf_suite(ps: &PhaseSpace, m: u32) -> Vec<Outcome> {
    match Ctx::new(ps, m) {
        Ok(cx) => run_all(hopf_checks(&cx)),
        Err(e) => vec![Outcome::from_result("hopf.setup", Err(e))],
    }
}

/// Every Hopf algebroid axiom on the generator set, tensor identities decided
/// to order `m`.
pub fn axiom_suite(l: &LieAlgebra, n: i64, m: u32) -> Vec<Outcome> {
    axiom_suite_on(&PhaseSpace::new(l.clone(), n), m)
}

pub fn axiom_suite_on(ps: &PhaseSpace, m: u32) -> Vec<Outcome> {
    match Ctx::new(ps, m) {
        Ok(cx) => {
            let mut checks = coring_checks(&cx);
            checks.extend(bialgebroid_checks(&cx));
            checks.extend(hopf_checks(&cx));
            run_all(checks)
        }
        Err(e) => vec![Outcome::from_result("algebroid.setup", Err(e))],
    }
}

/// Elements whose checks ran below the requested order for lack of precision.
#[derive(Default)]
struct Lowered(Vec<(String, u32)>, Vec<String>);

impl Lowered {
    fn note(&self, m: u32) -> String {
        let mut out = format!("to order {m}");
        if !self.0.is_empty() {
            let mut by_k: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
            for (name, k) in &self.0 {
                by_k.entry(*k).or_default().push(name);
            }
            let parts: Vec<String> =
                by_k.iter().map(|(k, names)| format!("order {k} for {}", names.join(", "))).collect();
            out.push_str(&format!("; {} (precision)", parts.join("; ")));
        }
        if !self.1.is_empty() {
            out.push_str(&format!("; not reached at this N: {}", self.1.join(", ")));
        }
        out
    }
}

/// Runs `f` at order `m`, stepping down while the truncation is too coarse.
fn adaptive(
    m: u32,
    low: &mut Lowered,
    name: &str,
    mut f: impl FnMut(u32) -> Result<Option<String>>,
) -> Result<Option<String>> {
    let mut k = m;
    loop {
        match f(k) {
            Err(Error::Precision { .. }) if k > 0 => k -= 1,
            r => {
                if k < m && !matches!(r, Err(Error::Precision { .. })) {
                    low.0.push((name.to_string(), k));
                }
                return r.map(|w| w.map(|w| format!("{name}: {w}")));
            }
        }
    }
}

type GenCheck<'c> = Box<dyn Fn(&Gen, u32) -> Result<Option<String>> + Send + Sync + 'c>;

/// One check over every test element.
fn per_gen<'c>(cx: &'c Ctx<'c>, tag: &'static str, id: &'static str, f: GenCheck<'c>) -> Check<'c> {
    per_gen_with(cx, tag, id, f, false)
}

/// With `spare` set, products whose budget exceeds `N` even at order 0 are
/// listed in the note instead of failing the check; single generators never
/// are.
fn per_gen_with<'c>(cx: &'c Ctx<'c>, tag: &'static str, id: &'static str, f: GenCheck<'c>, spare: bool) -> Check<'c> {
    Box::new(move || {
        let mut low = Lowered::default();
        let o = timed(tag, id, || {
            first(cx.gens.iter().map(|g| {
                let r = adaptive(cx.m, &mut low, &g.name, |k| f(g, k));
                if spare && g.name.contains(' ') && matches!(r, Err(Error::Precision { .. })) {
                    low.1.push(g.name.clone());
                    return Ok(None);
                }
                r.map(|w| w.map(|w| format!("h = {w}")))
            }))
        });
        o.note(low.note(cx.m))
    })
}

type PairCheck<'c> = Box<dyn Fn(&Gen, &Gen, u32) -> Result<Option<String>> + Send + Sync + 'c>;

/// One check over test elements `h1` times `h2` in `x_mu, d^mu, y_mu`.
fn per_pair<'c>(cx: &'c Ctx<'c>, tag: &'static str, id: &'static str, f: PairCheck<'c>) -> Check<'c> {
    Box::new(move || {
        let mut low = Lowered::default();
        let right = basic(&cx.gens, cx.n());
        let o = timed(tag, id, || {
            let mut out = Ok(None);
            'outer: for g1 in &cx.gens {
                for g2 in &right {
                    let name = format!("{} * {}", g1.name, g2.name);
                    let r = adaptive(cx.m, &mut low, &name, |k| f(g1, g2, k)).map(|w| w.map(|w| format!("h1 * h2 = {w}")));
                    if !matches!(r, Ok(None)) {
                        out = r;
                        break 'outer;
                    }
                }
            }
            out
        });
        o.note(low.note(cx.m))
    })
}

fn coring_checks<'c>(cx: &'c Ctx<'c>) -> Vec<Check<'c>> {
    let mut v: Vec<Check<'c>> = Vec::new();
    let (ps, db) = (cx.ps, &cx.db);
    let n = cx.n();
    let level = db.level() as i64;

    v.push(Box::new(move || {
        timed("alpha(eps(h_(1))) h_(2) = h = beta(eps(h_(2))) h_(1)", "coring.counit_left", || {
            first(cx.gens.iter().map(|g| {
                let e = (g.l.prec().min(level) / 2) as u32;
                let t = delta_l_split(ps, db, &g.l, e, e)?;
                let mut a = HElem::zero(n, t.prec());
                let mut b = HElem::zero(n, t.prec());
                for (h1, h2) in t.pairs() {
                    a = a.add(&ps.mul(&ps.alpha_l(&ps.counit_l(h1)?), h2));
                    b = b.add(&ps.mul(&ps.beta_l(&ps.counit_l(h2)?), h1));
                }
                tagged(g, first([same(&a, &g.l, "first"), same(&b, &g.l, "second")]))
            }))
        })
    }));

    v.push(Box::new(move || {
        timed("h_(2) beta(eps(h_(1))) = h = h_(1) alpha(eps(h_(2)))", "coring.counit_right", || {
            first(cx.gens.iter().map(|g| {
                let e = (g.r.prec().min(level) / 2) as u32;
                let t = delta_r_split(ps, db, &g.r, e, e)?;
                let mut a = RElem::zero(n, t.prec());
                let mut b = RElem::zero(n, t.prec());
                for (h1, h2) in t.pairs() {
                    let e1 = ps.black_right_r(&UElem::one(n), h1)?;
                    let e2 = ps.black_right_r(&UElem::one(n), h2)?;
                    a = a.add(&ps.mul_r(h2, &ps.beta_r_form(&e1)));
                    b = b.add(&ps.mul_r(h1, &RElem::from_u(&e2)));
                }
                tagged(g, first([same(&a, &g.r, "first"), same(&b, &g.r, "second")]))
            }))
        })
    }));

    v.push(Box::new(move || {
        timed("y_mu (x) 1 - 1 (x) x_mu lies in the ideal", "coring.ideal_generators", || {
            let m = cx.m;
            first((0..n).flat_map(|mu| {
                let l = LTensor::pure(ps.y(mu), ps.one()).sub(&LTensor::pure(ps.one(), ps.x(mu)));
                let z = ps.beta_r_form(&UElem::gen(n, mu));
                let r = RTensor::pure(RElem::gen(n, mu), RElem::one(n)).sub(&RTensor::pure(RElem::one(n), z));
                [ideal_test(ps, &l, m), ideal_test_r(ps, &r, m)]
            }))
        })
    }));

    v.push(Box::new(move || {
        let mut low = Lowered::default();
        let o = timed(
            "Delta^L(x) = x (x) 1, Delta^L(y) = 1 (x) y, Delta^L(O) = O (x) O",
            "coring.delta_l_generators",
            || {
                let one = ps.one();
                let mut cases: Vec<(String, HElem, LTensor)> = Vec::new();
                for mu in 0..n {
                    cases.push((format!("x{}", mu + 1), ps.x(mu), LTensor::pure(ps.x(mu), one.clone())));
                    cases.push((format!("y{}", mu + 1), ps.y(mu), LTensor::pure(one.clone(), ps.y(mu))));
                    for nu in 0..n {
                        let mut want = LTensor::zero(n);
                        for g in 0..n {
                            want = want.add(&LTensor::pure(ps.o_entry(g, nu), ps.o_entry(mu, g)));
                        }
                        cases.push((format!("O{}_{}", mu + 1, nu + 1), ps.o_entry(mu, nu), want));
                    }
                }
                first(cases.iter().map(|(name, h, want)| {
                    adaptive(cx.m, &mut low, name, |k| {
                        ideal_test(ps, &delta_l_split(ps, db, h, k, k)?.sub(want), k)
                    })
                }))
            },
        );
        o.note(low.note(cx.m))
    }));

    v.push(Box::new(move || {
        let mut low = Lowered::default();
        let mut flipped = Vec::new();
        let o = timed(
            "Delta^R(y) = 1 (x) y, Delta^R(x) = x (x) 1, Delta^R(O) = O (x) O",
            "coring.delta_r_generators",
            || {
                let one = RElem::one(n);
                let os = |a: usize, b: usize| RElem::series(ps.o().get(a, b).clone());
                let mut cases: Vec<(String, RElem, RTensor)> = Vec::new();
                for mu in 0..n {
                    let xr = ps.to_r_mono(&MultiIndex::unit(n, mu));
                    let y = RElem::gen(n, mu);
                    cases.push((format!("y{}", mu + 1), y.clone(), RTensor::pure(one.clone(), y)));
                    cases.push((format!("x{}", mu + 1), xr.clone(), RTensor::pure(xr, one.clone())));
                    for nu in 0..n {
                        let mut want = RTensor::zero(n);
                        for g in 0..n {
                            want = want.add(&RTensor::pure(os(g, nu), os(mu, g)));
                        }
                        cases.push((format!("O{}_{}", mu + 1, nu + 1), os(mu, nu), want));
                    }
                }
                first(cases.iter().map(|(name, r, want)| {
                    adaptive(cx.m, &mut low, name, |k| {
                        let d = delta_r_split(ps, db, r, k, k)?;
                        if name.starts_with('x') {
                            let other = RTensor::pure(one.clone(), r.clone());
                            if ideal_test_r(ps, &d.sub(&other), k)?.is_some() && !flipped.contains(name) {
                                flipped.push(name.clone());
                            }
                        }
                        ideal_test_r(ps, &d.sub(want), k)
                    })
                }))
            },
        );
        let mut note = low.note(cx.m);
        if !flipped.is_empty() {
            note.push_str(&format!("; Delta^R(x) differs from 1 (x) x for {}", flipped.join(", ")));
        }
        o.note(note)
    }));

    v.push(per_gen(
        cx,
        "(Delta^L (x) id) Delta^L = (id (x) Delta^L) Delta^L",
        "coring.coassociative_left",
        Box::new(move |g, k| {
            let mut lhs = Triple::zero(n);
            for (a, b) in delta_l_split(ps, db, &g.l, 2 * k, k)?.pairs() {
                for (a1, a2) in delta_l_split(ps, db, a, k, k)?.pairs() {
                    lhs.push(a1.clone(), a2.clone(), b.clone());
                }
            }
            let mut rhs = Triple::zero(n);
            for (a, b) in delta_l_split(ps, db, &g.l, k, 2 * k)?.pairs() {
                for (b1, b2) in delta_l_split(ps, db, b, k, k)?.pairs() {
                    rhs.push(a.clone(), b1.clone(), b2.clone());
                }
            }
            ideal_test3(ps, &lhs.sub(&rhs), k)
        }),
    ));

    v.push(per_gen(
        cx,
        "(Delta^R (x) id) Delta^R = (id (x) Delta^R) Delta^R",
        "coring.coassociative_right",
        Box::new(move |g, k| {
            let mut lhs = Triple::zero(n);
            for (a, b) in delta_r_split(ps, db, &g.r, 2 * k, k)?.pairs() {
                for (a1, a2) in delta_r_split(ps, db, a, k, k)?.pairs() {
                    lhs.push(a1.clone(), a2.clone(), b.clone());
                }
            }
            let mut rhs = Triple::zero(n);
            for (a, b) in delta_r_split(ps, db, &g.r, k, 2 * k)?.pairs() {
                for (b1, b2) in delta_r_split(ps, db, b, k, k)?.pairs() {
                    rhs.push(a.clone(), b1.clone(), b2.clone());
                }
            }
            ideal_test3_r(ps, &lhs.sub(&rhs), k)
        }),
    ));

    v.push(per_gen(
        cx,
        "Delta^L(x_mu h) = x_mu h_(1) (x) h_(2), Delta^L(y_mu h) = h_(1) (x) y_mu h_(2)",
        "coring.bimodule_left",
        Box::new(move |g, k| {
            let d = delta_l_split(ps, db, &g.l, k, k)?;
            for mu in 0..n {
                let (x, y) = (ps.x(mu), ps.y(mu));
                let lx = delta_l_split(ps, db, &ps.mul(&x, &g.l), k, k)?;
                let ly = delta_l_split(ps, db, &ps.mul(&y, &g.l), k, k)?;
                let mut rx = LTensor::zero(n);
                let mut ry = LTensor::zero(n);
                for (a, b) in d.pairs() {
                    rx.push(ps.mul(&x, a), b.clone());
                    ry.push(a.clone(), ps.mul(&y, b));
                }
                let w = first([ideal_test(ps, &lx.sub(&rx), k), ideal_test(ps, &ly.sub(&ry), k)])?;
                if let Some(w) = w {
                    return Ok(Some(format!("mu = {}: {w}", mu + 1)));
                }
            }
            Ok(None)
        }),
    ));

    v.push(per_gen(
        cx,
        "Delta^R(h y_mu) = h_(1) (x) h_(2) y_mu, Delta^R(h z_mu) = h_(1) z_mu (x) h_(2)",
        "coring.bimodule_right",
        Box::new(move |g, k| {
            let d = delta_r_split(ps, db, &g.r, k + 1, k + 1)?;
            for mu in 0..n {
                let y = RElem::gen(n, mu);
                let z = ps.beta_r_form(&UElem::gen(n, mu));
                let ly = delta_r_split(ps, db, &ps.mul_r(&g.r, &y), k, k)?;
                let lz = delta_r_split(ps, db, &ps.mul_r(&g.r, &z), k, k)?;
                let mut ry = RTensor::zero(n);
                let mut rz = RTensor::zero(n);
                for (a, b) in d.pairs() {
                    ry.push(a.clone(), ps.mul_r(b, &y));
                    rz.push(ps.mul_r(a, &z), b.clone());
                }
                let w = first([ideal_test_r(ps, &ly.sub(&ry), k), ideal_test_r(ps, &lz.sub(&rz), k)])?;
                if let Some(w) = w {
                    return Ok(Some(format!("mu = {}: {w}", mu + 1)));
                }
            }
            Ok(None)
        }),
    ));
    v
}

fn bialgebroid_checks<'c>(cx: &'c Ctx<'c>) -> Vec<Check<'c>> {
    let mut v: Vec<Check<'c>> = Vec::new();
    let (ps, db) = (cx.ps, &cx.db);
    let n = cx.n();

    v.push(per_gen(
        cx,
        "Delta^L(h) lies in the Takeuchi product",
        "bialgebroid.takeuchi_left",
        Box::new(move |g, k| takeuchi_test(ps, &delta_l_split(ps, db, &g.l, k + 1, k + 1)?, k)),
    ));

    v.push(per_gen(
        cx,
        "Delta^R(h) lies in the right Takeuchi product",
        "bialgebroid.takeuchi_right",
        Box::new(move |g, k| takeuchi_test_r(ps, &delta_r_split(ps, db, &g.r, k + 1, k + 1)?, k)),
    ));

    v.push(per_pair(
        cx,
        "Delta^L(h1 h2) = Delta^L(h1) Delta^L(h2)",
        "bialgebroid.multiplicative_left",
        Box::new(move |g1, g2, k| {
            let d2 = g2.l.gen_degree();
            let lhs = delta_l_split(ps, db, &ps.mul(&g1.l, &g2.l), k, k)?;
            let a = delta_l_split(ps, db, &g1.l, k + d2, k)?;
            let b = delta_l_split(ps, db, &g2.l, k, k)?;
            ideal_test(ps, &lhs.sub(&a.mul(ps, &b)), k)
        }),
    ));

    v.push(per_pair(
        cx,
        "Delta^R(h1 h2) = Delta^R(h1) Delta^R(h2)",
        "bialgebroid.multiplicative_right",
        Box::new(move |g1, g2, k| {
            let d1 = g1.r.gen_degree();
            let lhs = delta_r_split(ps, db, &ps.mul_r(&g1.r, &g2.r), k, k)?;
            let a = delta_r_split(ps, db, &g1.r, k, k)?;
            let b = delta_r_split(ps, db, &g2.r, k, k + d1)?;
            ideal_test_r(ps, &lhs.sub(&a.mul(ps, &b)), k)
        }),
    ));

    v.push(Box::new(move || {
        timed("eps^L(h alpha^L(f)) = h |> f, eps^R(alpha^R(u) h) = u <| h", "bialgebroid.counit_character", || {
            let fs = cx.words(cx.m);
            first(cx.gens.iter().flat_map(|g| {
                let fs = &fs;
                fs.iter().map(move |f| {
                    let a = ps.counit_l(&ps.mul(&g.l, &ps.alpha_l(f)))?;
                    let b = ps.black_left(&g.l, f)?;
                    if a != b {
                        return Ok(Some(format!("h = {}, f = {}: {} vs {}", g.name, f.render(), a.render(), b.render())));
                    }
                    let ur = ps.rho(f);
                    let c = ps.black_right_r(&UElem::one(n), &ps.mul_r(&RElem::from_u(&ur), &g.r))?;
                    let d = ps.black_right(&ur, &g.l)?;
                    Ok((c != d).then(|| {
                        format!("h = {}, u = {}: {} vs {}", g.name, ur.render_with("y"), c.render_with("y"), d.render_with("y"))
                    }))
                })
            }))
        })
    }));
    v
}

fn render_shift(lhs: &str, base: &str, c: &Rational) -> String {
    if c.is_zero() {
        format!("{lhs} = {base}")
    } else if c > &Rational::zero() {
        format!("{lhs} = {base} + {}", fmt_rational(c))
    } else {
        format!("{lhs} = {base} - {}", fmt_rational(&-c.clone()))
    }
}

/// `S^2` on the `x` and `S^-2` on the `y`: both must be shifts by the trace
/// vector `t_mu = C^l_{mu l}`, with `S^2(x_mu) = x_mu - t_mu` and
/// `S^-2(y_mu) = y_mu + t_mu`. Returns the rendered values.
pub fn square_values(ps: &PhaseSpace) -> Result<(Vec<String>, Option<String>)> {
    let n = ps.dim();
    let t = ps.lie().trace_vector();
    let mut lines = Vec::new();
    let mut bad = None;
    for mu in 0..n {
        for (inv, base, sign) in [(false, ps.x(mu), -1), (true, ps.y(mu), 1)] {
            let img = if inv {
                ps.antipode_inv(&ps.antipode_inv(&base))
            } else {
                ps.antipode(&ps.antipode(&base))
            };
            let diff = img.sub(&base);
            let (lhs, sym) = if inv {
                (format!("S^-2(y{})", mu + 1), format!("y{}", mu + 1))
            } else {
                (format!("S^2(x{})", mu + 1), format!("x{}", mu + 1))
            };
            if diff.prec() < 0 {
                return Err(Error::precision(0, diff.prec()));
            }
            let z = MultiIndex::zero(n);
            let c = diff.coeff(&z).coeff(&z);
            let constant = HElem::series(Series::constant(n, c.clone(), EXACT));
            if let Some(w) = diff.first_difference(&constant, diff.prec()) {
                bad.get_or_insert(format!("{lhs} is not a shift: {w}"));
            }
            let want = &t[mu] * Rational::from_integer(sign.into());
            if c != want && bad.is_none() {
                bad = Some(format!("{lhs}: shift {} instead of {}", fmt_rational(&c), fmt_rational(&want)));
            }
            lines.push(render_shift(&lhs, &sym, &c));
        }
    }
    Ok((lines, bad))
}


fn hopf_checks<'c>(cx: &'c Ctx<'c>) -> Vec<Check<'c>> {
    let mut v: Vec<Check<'c>> = Vec::new();
    let (ps, db, op) = (cx.ps, &cx.db, &cx.op);

    v.push(Box::new(move || {
        timed(
            "alpha^L eps^L beta^R = beta^R, beta^L eps^L alpha^R = alpha^R, alpha^R eps^R beta^L = beta^L, beta^R eps^R alpha^L = alpha^L",
            "hopf.source_target",
            || {
                let words = cx.words(2);
                first(words.iter().map(|a| {
                    let b = ps.rho(a);
                    let br = ps.beta_r(&b);
                    let ar = ps.alpha_r(&b);
                    let bl = ps.beta_l(a);
                    let al = ps.alpha_l(a);
                    first([
                        same(&ps.alpha_l(&ps.counit_l(&br)?), &br, &format!("beta^R({})", b.render_with("y"))),
                        same(&ps.beta_l(&ps.counit_l(&ar)?), &ar, &format!("alpha^R({})", b.render_with("y"))),
                        same(&ps.alpha_r(&ps.counit_r(&bl)?), &bl, &format!("beta^L({})", a.render())),
                        same(&ps.beta_r(&ps.counit_r(&al)?), &al, &format!("alpha^L({})", a.render())),
                    ])
                }))
            },
        )
    }));

    v.push(per_gen(
        cx,
        "(Delta^R (x) id) Delta^L = (id (x) Delta^L) Delta^R",
        "hopf.mixed_coassociative_first",
        Box::new(move |g, k| {
            let (a, b) = mixed_first(ps, db, &g.l, &g.r, k)?;
            compare_canon(&a, &b, k)
        }),
    ));

    v.push(per_gen_with(
        cx,
        "(Delta^L (x) id) Delta^R = (id (x) Delta^R) Delta^L",
        "hopf.mixed_coassociative_second",
        Box::new(move |g, k| {
            let (a, b) = mixed_second(ps, op, db, &g.l, &g.r, k)?;
            compare_canon(&a, &b, k)
        }),
        true,
    ));

    v.push(Box::new(move || {
        // words of degree 2 lose too much precision below N = 5
        let mut low = Lowered::default();
        let o = timed("S beta^L = alpha^L, S beta^R = alpha^R", "hopf.antipode_source_target", || {
            adaptive(2, &mut low, "words", |k| {
                first(cx.words(k).iter().map(|a| {
                    let b = ps.rho(a);
                    first([
                        same(&ps.antipode(&ps.beta_l(a)), &ps.alpha_l(a), &format!("a = {}", a.render())),
                        same(&ps.antipode(&ps.beta_r(&b)), &ps.alpha_r(&b), &format!("b = {}", b.render_with("y"))),
                    ])
                }))
            })
        });
        o.note(low.note(2))
    }));

    v.push(Box::new(move || {
        timed("m (S (x) id) Delta^L = alpha^R eps^R", "hopf.antipode_left", || {
            first(cx.gens.iter().map(|g| {
                let lhs = s_tensor_id(ps, db, &g.l)?;
                let rhs = ps.alpha_r(&ps.counit_r(&g.l)?);
                tagged(g, same(&lhs, &rhs, "value"))
            }))
        })
    }));

    v.push(Box::new(move || {
        timed("m (id (x) S) Delta^R = alpha^L eps^L", "hopf.antipode_right", || {
            first(cx.gens.iter().map(|g| {
                let lhs = id_tensor_s(ps, db, &g.l)?;
                let rhs = ps.alpha_l(&ps.counit_l(&g.l)?);
                tagged(g, same(&lhs, &rhs, "value"))
            }))
        })
    }));

    v.push(Box::new(move || {
        timed("S(h1 h2) = S(h2) S(h1)", "hopf.antipode_antimultiplicative", || {
            let right = basic(&cx.gens, cx.n());
            first(cx.gens.iter().flat_map(|g1| {
                right.iter().map(move |g2| {
                    let lhs = ps.antipode(&ps.mul(&g1.l, &g2.l));
                    let rhs = ps.mul(&ps.antipode(&g2.l), &ps.antipode(&g1.l));
                    same(&lhs, &rhs, &format!("h1 = {}, h2 = {}", g1.name, g2.name))
                })
            }))
        })
    }));

    v.push(Box::new(move || {
        timed("S S^-1 = id = S^-1 S", "hopf.antipode_inverse", || {
            first(cx.gens.iter().map(|g| {
                let a = ps.antipode(&ps.antipode_inv(&g.l));
                let b = ps.antipode_inv(&ps.antipode(&g.l));
                tagged(g, first([same(&a, &g.l, "S S^-1"), same(&b, &g.l, "S^-1 S")]))
            }))
        })
    }));

    v.push(Box::new(move || {
        let t = std::time::Instant::now();
        let mut o = match square_values(ps) {
            Ok((lines, None)) => Outcome::pass("hopf.antipode_square").note(lines.join("; ")),
            Ok((lines, Some(w))) => Outcome::fail("hopf.antipode_square", format!("{w}; values {}", lines.join("; "))),
            Err(e) => Outcome::from_result("hopf.antipode_square", Err(e)),
        }
        .tag("S^2 and S^-2 shift by the trace vector");
        o.millis = t.elapsed().as_millis() as u64;
        o
    }));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn ps(l: LieAlgebra, n: i64) -> PhaseSpace {
        PhaseSpace::new(l, n)
    }

    #[test]
    fn primitive_generators() {
        let p = ps(LieAlgebra::heisenberg3(), 6);
        let t = delta_l(&p, &p.x(0), 2).unwrap();
        assert!(ideal_test(&p, &t.sub(&LTensor::pure(p.x(0), p.one())), 2).unwrap().is_none());
        assert!(ideal_test(&p, &LTensor::zero(3), 2).unwrap().is_none());
    }

    #[test]
    fn nonabelian_control() {
        for l in [LieAlgebra::heisenberg3(), LieAlgebra::sl2(), LieAlgebra::solvable2()] {
            let p = ps(l, 6);
            let n = p.dim();
            let found = (0..n).any(|mu| {
                let t = LTensor::pure(p.x(mu), p.one()).sub(&LTensor::pure(p.one(), p.x(mu)));
                ideal_test(&p, &t, 2).unwrap().is_some()
            });
            assert!(found);
        }
        let p = ps(LieAlgebra::abelian(2), 6);
        let t = LTensor::pure(p.x(0), p.one()).sub(&LTensor::pure(p.one(), p.x(0)));
        assert!(ideal_test(&p, &t, 2).unwrap().is_none());
    }

    #[test]
    fn takeuchi_power() {
        let p = ps(LieAlgebra::sl2(), 6);
        assert!(takeuchi_test(&p, &LTensor::pure(p.one(), p.one()), 2).unwrap().is_none());
        assert!(takeuchi_test(&p, &LTensor::pure(p.one(), p.x(0)), 2).unwrap().is_some());
    }

    #[test]
    fn solvable_square() {
        let p = ps(LieAlgebra::solvable2(), 6);
        let (lines, bad) = square_values(&p).unwrap();
        assert!(bad.is_none(), "{bad:?}");
        assert_eq!(lines[0], "S^2(x1) = x1 - 1");
        assert_eq!(lines[1], "S^-2(y1) = y1 + 1");
        assert_eq!(lines[2], "S^2(x2) = x2");
        let _ = int(0);
    }
}
