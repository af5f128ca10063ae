//! The pairing between `U(g)` and the series ring, the dual basis `d^{K}`,
//! and the coproduct of the series ring obtained from it by duality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{big, fmt_rational, mbinom, MultiIndex, Rational};
use crate::pbw::UElem;
use crate::phase::{HElem, PhaseSpace};
use crate::report::{timed, Outcome};
use crate::series::{render_monomial, Series, EXACT};
use crate::{Error, Result};

/// `<P, x_C>` for every `|C| <= maxdeg`.
pub fn pairing_table(ps: &PhaseSpace, p: &Series, maxdeg: u32) -> Result<BTreeMap<MultiIndex, Rational>> {
    if p.prec() < maxdeg as i64 {
        return Err(Error::precision(maxdeg as i64, p.prec()));
    }
    let n = ps.dim();
    let der = ps.derivations();
    let mut table: HashMap<MultiIndex, Series> = HashMap::new();
    let mut out = BTreeMap::new();
    for c in MultiIndex::all_up_to(n, maxdeg) {
        let s = match c.max_letter() {
            None => p.truncate(maxdeg as i64),
            Some(l) => der.apply(l, &table[&c.sub_unit(l).expect("letter")]),
        };
        out.insert(c.clone(), s.eval_at_zero()?);
        table.insert(c, s);
    }
    Ok(out)
}

/// `<P, u>` read off a pairing table.
fn pair_with(table: &BTreeMap<MultiIndex, Rational>, u: &UElem) -> Rational {
    u.iter().fold(Rational::zero(), |acc, (k, c)| acc + c * &table[k])
}

/// The series `d^{K}` with `<d^{K}, x_J> = K! delta_KJ`, through level `r`.
#[derive(Clone, Debug)]
pub struct DualBasis {
    n: usize,
    level: u32,
    /// `G[M][C] = <d^M, x_C>` for `|M| <= |C| <= level`.
    gram: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Rational>>,
    /// `A[K][M]`, coefficient of `d^M` in `d^{K}`.
    coeffs: BTreeMap<MultiIndex, BTreeMap<MultiIndex, Rational>>,
}

impl DualBasis {
    pub fn new(ps: &PhaseSpace, level: u32) -> Result<Self> {
        let n = ps.dim();
        let monos = MultiIndex::all_up_to(n, level);
        let mut gram = BTreeMap::new();
        for m in &monos {
            let p = Series::monomial(m.clone(), Rational::one(), EXACT);
            let row: BTreeMap<MultiIndex, Rational> = pairing_table(ps, &p, level)?
                .into_iter()
                .filter(|(c, v)| c.degree() >= m.degree() && !v.is_zero())
                .collect();
            gram.insert(m.clone(), row);
        }
        // equal-degree blocks are diag(M!)
        for m in &monos {
            for c in MultiIndex::all_of_degree(n, m.degree()) {
                let want = if &c == m { big(&m.factorial()) } else { Rational::zero() };
                let have = gram[m].get(&c).cloned().unwrap_or_else(Rational::zero);
                if have != want {
                    return Err(Error::Domain(format!(
                        "pairing block not diagonal at {m:?}, {c:?}: {}",
                        fmt_rational(&have)
                    )));
                }
            }
        }
        // back-substitution in increasing |J|
        let mut coeffs = BTreeMap::new();
        for k in &monos {
            let mut a: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
            a.insert(k.clone(), Rational::one());
            for j in &monos {
                if j.degree() <= k.degree() {
                    continue;
                }
                let mut s = Rational::zero();
                for (m, am) in &a {
                    if m.degree() < j.degree() {
                        if let Some(g) = gram[m].get(j) {
                            s += am * g;
                        }
                    }
                }
                if !s.is_zero() {
                    a.insert(j.clone(), -s / big(&j.factorial()));
                }
            }
            coeffs.insert(k.clone(), a);
        }
        Ok(DualBasis { n, level, gram, coeffs })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d^{K}` as a series at precision `level`.
    pub fn element(&self, k: &MultiIndex) -> Series {
        match self.coeffs.get(k) {
            Some(a) => Series::from_terms(self.n, self.level as i64, a.iter().map(|(m, c)| (m.clone(), c.clone()))),
            None => Series::zero(self.n, self.level as i64),
        }
    }

    pub fn coeffs(&self, k: &MultiIndex) -> Option<&BTreeMap<MultiIndex, Rational>> {
        self.coeffs.get(k)
    }

    /// `<d^M, x_C>`.
    pub fn gram(&self, m: &MultiIndex, c: &MultiIndex) -> Rational {
        self.gram
            .get(m)
            .and_then(|row| row.get(c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `d_{K,J}` in `d^J = sum_K d_{K,J} d^{K}`.
    pub fn change_of_basis(&self, k: &MultiIndex, j: &MultiIndex) -> Rational {
        self.gram(j, k) / big(&k.factorial())
    }

    /// Expands a series of precision `>= level` in the dual basis:
    /// `f = sum_J <f, x_J>/J! d^{J}`.
    pub fn expand(&self, ps: &PhaseSpace, f: &Series) -> Result<BTreeMap<MultiIndex, Rational>> {
        let t = pairing_table(ps, f, self.level)?;
        Ok(t.into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| {
                let jf = big(&j.factorial());
                (j, v / jf)
            })
            .collect())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for k in self.coeffs.keys() {
            let name = render_monomial(k, "d", "*");
            let name = if name.is_empty() { "1".to_string() } else { name };
            s.push_str(&format!("{{{name}}} = {}\n", self.element(k).render()));
        }
        s
    }
}

/// Element of the completed tensor square of the series ring, stored in the
/// monomial basis `d^A (x) d^B`.
///
/// The coefficient of `(A, B)` is known when `|A|, |B| <= each` and
/// `|A| + |B| <= total`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorSeries {
    n: usize,
    each: i64,
    total: i64,
    terms: BTreeMap<(MultiIndex, MultiIndex), Rational>,
}

impl TensorSeries {
    pub fn zero(n: usize, each: i64, total: i64) -> Self {
        TensorSeries { n, each, total, terms: BTreeMap::new() }
    }

    /// `P (x) Q`.
    pub fn pure(p: &Series, q: &Series) -> Self {
        let each = p.prec().min(q.prec());
        let mut t = Self::zero(p.n(), each, 2 * each.min(EXACT / 2));
        for (a, ca) in p.iter() {
            for (b, cb) in q.iter() {
                t.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        t
    }

    pub fn known(&self, a: &MultiIndex, b: &MultiIndex) -> bool {
        let (da, db) = (a.degree() as i64, b.degree() as i64);
        da <= self.each && db <= self.each && da + db <= self.total
    }

    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: Rational) {
        if c.is_zero() || !self.known(&a, &b) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
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

    pub fn each(&self) -> i64 {
        self.each
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &MultiIndex, b: &MultiIndex) -> Rational {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Lowers the precision bounds, dropping terms that become unknown.
    pub fn truncate(&self, each: i64, total: i64) -> Self {
        let mut out = Self::zero(self.n, self.each.min(each), self.total.min(total));
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.each, other.total);
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.each, self.total);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Slotwise product in the commutative tensor square.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.each.min(other.each), self.total.min(other.total));
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.add(a2), b1.add(b2), c1 * c2);
            }
        }
        out
    }

    /// The flip `P (x) Q -> Q (x) P`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.n, self.each, self.total);
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// `(eps (x) id)`, a series at precision `min(each, total)`.
    pub fn counit_left(&self) -> Series {
        let z = MultiIndex::zero(self.n);
        let mut s = Series::zero(self.n, self.each.min(self.total));
        for ((a, b), c) in &self.terms {
            if *a == z {
                s.add_term(b.clone(), c.clone());
            }
        }
        s
    }

    /// `(id (x) eps)`.
    pub fn counit_right(&self) -> Series {
        self.swap().counit_left()
    }

    /// First coefficient known to both sides where they differ.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let keys: std::collections::BTreeSet<&(MultiIndex, MultiIndex)> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for (a, b) in keys {
            if !self.known(a, b) || !other.known(a, b) {
                continue;
            }
            let (x, y) = (self.coeff(a, b), other.coeff(a, b));
            if x != y {
                return Some(format!(
                    "coefficient of {} (x) {}: {} vs {}",
                    mono_name(a),
                    mono_name(b),
                    fmt_rational(&x),
                    fmt_rational(&y)
                ));
            }
        }
        None
    }

    /// `c*dA (x) dB` summands in graded order of the pair.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{}*", fmt_rational(&mag)));
            }
            s.push_str(&format!("{} (x) {}", mono_name(a), mono_name(b)));
        }
        s
    }

    pub fn render_stamped(&self) -> String {
        format!("{}\n[each {}, total {}]", self.render(), self.each, self.total)
    }
}

impl fmt::Debug for TensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn mono_name(k: &MultiIndex) -> String {
    let s = render_monomial(k, "d", "*");
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `Delta(P) = sum_{J,K} <P, x_J x_K>/(J! K!) d^{J} (x) d^{K}`, known for
/// `|A|, |B| <= each` and `|A| + |B| <= total`.
pub fn coproduct(ps: &PhaseSpace, db: &DualBasis, p: &Series, each: u32, total: u32) -> Result<TensorSeries> {
    let total = total.min(2 * each);
    if (db.level() as i64) < each as i64 {
        return Err(Error::precision(each as i64, db.level() as i64));
    }
    let n = ps.dim();
    let table = pairing_table(ps, &p.truncate(total as i64), total)?;
    let u = ps.u_left();
    let mut out = TensorSeries::zero(n, each as i64, total as i64);
    let monos = MultiIndex::all_up_to(n, each);
    for j in &monos {
        for k in &monos {
            if j.degree() + k.degree() > total {
                continue;
            }
            let v = pair_with(&table, &u.mono_mul(j, k));
            if v.is_zero() {
                continue;
            }
            let v = v / big(&(j.factorial() * k.factorial()));
            let (aj, ak) = (db.coeffs(j).expect("level"), db.coeffs(k).expect("level"));
            for (a, ca) in aj {
                for (b, cb) in ak {
                    out.add_term(a.clone(), b.clone(), &v * ca * cb);
                }
            }
        }
    }
    Ok(out)
}

/// Coproduct with each slot at precision `N`; needs `prec(P) >= 2N`.
pub fn s_coproduct(ps: &PhaseSpace, p: &Series, each: u32) -> Result<TensorSeries> {
    let need = 2 * each as i64;
    if p.prec() < need {
        return Err(Error::precision(need, p.prec()));
    }
    let db = DualBasis::new(ps, each)?;
    coproduct(ps, &db, p, each, 2 * each)
}

/// `sum c (dA |> f)(dB |> g)`, the right side of the defining relation.
pub fn act_on_product(ps: &PhaseSpace, t: &TensorSeries, f: &UElem, g: &UElem) -> Result<UElem> {
    let n = ps.dim();
    let (df, dg) = (f.degree() as i64, g.degree() as i64);
    if t.each() < df.max(dg) || t.total() < df + dg {
        return Err(Error::precision(df.max(dg), t.each()));
    }
    let mut memo: HashMap<(MultiIndex, bool), UElem> = HashMap::new();
    let mut act = |k: &MultiIndex, left: bool| -> Result<UElem> {
        if let Some(v) = memo.get(&(k.clone(), left)) {
            return Ok(v.clone());
        }
        let h = HElem::series(Series::monomial(k.clone(), Rational::one(), EXACT));
        let v = ps.black_left(&h, if left { f } else { g })?;
        memo.insert((k.clone(), left), v.clone());
        Ok(v)
    };
    let u = ps.u_left();
    let mut out = UElem::zero(n);
    for ((a, b), c) in t.iter() {
        if a.degree() as i64 > df || b.degree() as i64 > dg {
            continue;
        }
        let (x, y) = (act(a, true)?, act(b, false)?);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        out.add_scaled(&u.mul(&x, &y), c);
    }
    Ok(out)
}

fn first<I: IntoIterator<Item = Result<Option<String>>>>(it: I) -> Result<Option<String>> {
    for r in it {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn mono(k: &MultiIndex) -> UElem {
    UElem::monomial(k.clone(), Rational::one())
}

/// Checks on the pairing and the dual basis at level `r`.
pub fn lemma_suite(ps: &PhaseSpace, r: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let mut out = Vec::new();
    let db = match DualBasis::new(ps, r) {
        Ok(db) => db,
        Err(e) => {
            out.push(Outcome::from_result("lemma.dual_basis", Err(e)).tag("dual basis"));
            return out;
        }
    };
    let monos = MultiIndex::all_up_to(n, r);

    out.push(timed("<d^K, x_J> = K! if K >= J", "lemma.triangular", || {
        first(monos.iter().flat_map(|k| {
            monos.iter().filter(|j| MultiIndex::le(j, k)).map(move |j| {
                let v = ps.pairing(&mono(j), &Series::monomial(k.clone(), Rational::one(), EXACT))?;
                let want = if j == k { big(&k.factorial()) } else { Rational::zero() };
                Ok((v != want).then(|| format!("K={k:?} J={j:?}: {}", fmt_rational(&v))))
            })
        }))
    }));

    out.push(timed("<d^{K}, x_J> = K! delta", "lemma.duality", || {
        first(monos.iter().flat_map(|k| {
            let e = db.element(k);
            monos.iter().map(move |j| {
                let v = ps.pairing(&mono(j), &e)?;
                let want = if j == k { big(&k.factorial()) } else { Rational::zero() };
                Ok((v != want).then(|| format!("K={k:?} J={j:?}: {}", fmt_rational(&v))))
            })
        }))
    }));

    out.push(timed("d^{K} starts in degree |K|", "lemma.support", || {
        Ok(monos.iter().find_map(|k| {
            let e = db.element(k);
            e.min_degree()
                .filter(|&d| d < k.degree())
                .map(|d| format!("K={k:?} has a term of degree {d}"))
        }))
    }));

    out.push(timed("levels are compatible", "lemma.projection", || {
        if r == 0 {
            return Ok(None);
        }
        let lower = DualBasis::new(ps, r - 1)?;
        Ok(MultiIndex::all_up_to(n, r - 1).iter().find_map(|k| {
            let (a, b) = (db.element(k).truncate(r as i64 - 1), lower.element(k));
            a.first_difference(&b, r as i64 - 1)
                .map(|(m, x, y)| format!("K={k:?} at {m:?}: {} vs {}", fmt_rational(&x), fmt_rational(&y)))
        }))
    }));

    out.push(timed("d^J = sum d_KJ d^{K}", "lemma.change_of_basis", || {
        Ok(monos.iter().find_map(|j| {
            let mut s = Series::zero(n, r as i64);
            for k in &monos {
                let c = db.change_of_basis(k, j);
                if !c.is_zero() {
                    s = s.add(&db.element(k).scale(&c));
                }
            }
            let want = Series::monomial(j.clone(), Rational::one(), r as i64);
            s.first_difference(&want, r as i64)
                .map(|(m, x, y)| format!("J={j:?} at {m:?}: {} vs {}", fmt_rational(&x), fmt_rational(&y)))
        }))
    }));

    out.push(timed("P |> u = sum <u_(2), P> u_(1)", "lemma.heisenberg_double", || {
        first(monos.iter().flat_map(|k| {
            let p = db.element(k);
            monos.iter().map(move |j| {
                let f = mono(j);
                let lhs = ps.black_left(&HElem::series(p.clone()), &f)?;
                let mut rhs = UElem::zero(n);
                for ((a, b), c) in f.coproduct() {
                    let v = ps.pairing(&mono(&b), &p)?;
                    rhs.add_scaled(&mono(&a), &(v * c));
                }
                Ok((lhs != rhs).then(|| format!("P=d^{{{k:?}}} u=x_{j:?}: {lhs:?} vs {rhs:?}")))
            })
        }))
    }));

    out.push(timed("phi(x_I) on a product of monomials", "lemma.phi_coproduct", || {
        let top = r.min(3);
        let small = MultiIndex::all_up_to(n, top);
        let der = ps.derivations();
        let act = |p: &Series, i: &MultiIndex| der.apply_word(&i.letters(), p);
        first(small.iter().flat_map(|i| {
            small.iter().flat_map(move |j| {
                j.submultiindices().into_iter().map(move |j1| {
                    let j2 = j.checked_sub(&j1).expect("sub");
                    let dj = |m: &MultiIndex| Series::monomial(m.clone(), Rational::one(), EXACT);
                    let lhs = act(&dj(j), i);
                    let mut rhs = Series::zero(n, EXACT);
                    for i1 in i.submultiindices() {
                        let i2 = i.checked_sub(&i1).expect("sub");
                        let t = act(&dj(&j1), &i1).mul(&act(&dj(&j2), &i2));
                        rhs = rhs.add(&t.scale(&big(&mbinom(i, &i1))));
                    }
                    let p = lhs.prec().min(rhs.prec());
                    Ok(lhs.first_difference(&rhs, p).map(|(m, x, y)| {
                        format!("I={i:?} J1={j1:?} J2={j2:?} at {m:?}: {} vs {}", fmt_rational(&x), fmt_rational(&y))
                    }))
                })
            })
        }))
    }));
    out
}

/// Checks on the coproduct of the series ring with slots at precision `each`,
/// against `f, g` of PBW degree `<= deg`.
pub fn coproduct_suite(ps: &PhaseSpace, each: u32, deg: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let mut out = Vec::new();
    let db = match DualBasis::new(ps, each) {
        Ok(db) => db,
        Err(e) => {
            out.push(Outcome::from_result("coproduct.dual_basis", Err(e)).tag("dual basis"));
            return out;
        }
    };
    let gens: Vec<Series> = (0..n)
        .map(|mu| Series::var(n, mu, EXACT))
        .chain(MultiIndex::all_of_degree(n, 2).into_iter().map(|k| Series::monomial(k, Rational::one(), EXACT)))
        .collect();
    let deltas: Vec<Result<TensorSeries>> = gens.iter().map(|p| coproduct(ps, &db, p, each, 2 * each)).collect();
    let monos = MultiIndex::all_up_to(n, deg);

    out.push(timed("P |> (f g) = (P_(1) |> f)(P_(2) |> g)", "coproduct.defining", || {
        let u = ps.u_left();
        first(gens.iter().zip(&deltas).flat_map(|(p, d)| {
            let monos = &monos;
            monos.iter().flat_map(move |j| {
                monos.iter().map(move |k| {
                    let d = d.as_ref().map_err(|e| Error::Domain(e.to_string()))?;
                    let (f, g) = (mono(j), mono(k));
                    let lhs = ps.black_left(&HElem::series(p.clone()), &u.mul(&f, &g))?;
                    let rhs = act_on_product(ps, d, &f, &g)?;
                    Ok((lhs != rhs).then(|| format!("P={} f=x_{j:?} g=x_{k:?}: {lhs:?} vs {rhs:?}", p.render())))
                })
            })
        }))
    }));

    out.push(timed("(eps (x) id) Delta = id = (id (x) eps) Delta", "coproduct.counit", || {
        first(gens.iter().zip(&deltas).map(|(p, d)| {
            let d = d.as_ref().map_err(|e| Error::Domain(e.to_string()))?;
            let e = each as i64;
            for s in [d.counit_left(), d.counit_right()] {
                if let Some((m, x, y)) = s.first_difference(p, e) {
                    return Ok(Some(format!("P={} at {m:?}: {} vs {}", p.render(), fmt_rational(&x), fmt_rational(&y))));
                }
            }
            Ok(None)
        }))
    }));

    out.push(timed("Delta(PQ) = Delta(P) Delta(Q)", "coproduct.multiplicative", || {
        first((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
            let (da, dbb) = (deltas[a].as_ref(), deltas[b].as_ref());
            let (da, dbb) = (
                da.map_err(|e| Error::Domain(e.to_string()))?,
                dbb.map_err(|e| Error::Domain(e.to_string()))?,
            );
            let pq = gens[a].mul(&gens[b]);
            let lhs = coproduct(ps, &db, &pq, each, 2 * each)?;
            Ok(lhs.first_difference(&da.mul(dbb)).map(|w| format!("P=d{} Q=d{}: {w}", a + 1, b + 1)))
        }))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::lie::LieAlgebra;

    fn mi(e: &[u16]) -> MultiIndex {
        MultiIndex::from_slice(e)
    }

    #[test]
    fn heisenberg_pairing() {
        let ps = PhaseSpace::new(LieAlgebra::heisenberg3(), 6);
        let d3 = Series::var(3, 2, EXACT);
        assert_eq!(ps.pairing(&mono(&mi(&[1, 1, 0])), &d3).unwrap(), rat(1, 2));
        assert_eq!(ps.pairing(&UElem::one(3), &Series::one(3, EXACT)).unwrap(), int(1));
    }

    #[test]
    fn abelian_dual_basis_is_monomial() {
        let ps = PhaseSpace::new(LieAlgebra::abelian(2), 4);
        let db = DualBasis::new(&ps, 3).unwrap();
        for k in MultiIndex::all_up_to(2, 3) {
            assert_eq!(db.element(&k), Series::monomial(k.clone(), int(1), 3));
            for j in MultiIndex::all_up_to(2, 3) {
                let want = if j == k { int(1) } else { int(0) };
                assert_eq!(db.change_of_basis(&k, &j), want);
            }
        }
    }

    #[test]
    fn heisenberg_coproduct_of_d3() {
        let ps = PhaseSpace::new(LieAlgebra::heisenberg3(), 8);
        let t = s_coproduct(&ps, &Series::var(3, 2, EXACT), 3).unwrap();
        let (z, e1, e2, e3) = (mi(&[0, 0, 0]), mi(&[1, 0, 0]), mi(&[0, 1, 0]), mi(&[0, 0, 1]));
        let mut want = TensorSeries::zero(3, 3, 6);
        want.add_term(e3.clone(), z.clone(), int(1));
        want.add_term(z, e3, int(1));
        want.add_term(e1.clone(), e2.clone(), rat(1, 2));
        want.add_term(e2, e1, rat(-1, 2));
        assert_eq!(t, want);
        assert_eq!(t.render(), "1 (x) d3 + 1/2*d1 (x) d2 - 1/2*d2 (x) d1 + d3 (x) 1");
    }

    #[test]
    fn abelian_primitive() {
        let ps = PhaseSpace::new(LieAlgebra::abelian(2), 6);
        let t = s_coproduct(&ps, &Series::var(2, 0, EXACT), 3).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(&mi(&[1, 0]), &mi(&[0, 0])), int(1));
    }

    #[test]
    fn suites_small() {
        for l in [LieAlgebra::heisenberg3(), LieAlgebra::solvable2(), LieAlgebra::sl2()] {
            let ps = PhaseSpace::new(l, 6);
            for o in lemma_suite(&ps, 3).into_iter().chain(coproduct_suite(&ps, 3, 2)) {
                assert!(o.passed(), "{} {:?}", o.check_id, o.witness);
            }
        }
    }
}
