//! Identity families relating `O`, `O^-1`, the generators and the two black
//! actions, each checked exhaustively on small PBW bases.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use super::{HElem, PhaseSpace, RElem};
use crate::arith::{MultiIndex, Rational};
use crate::pbw::UElem;
use crate::report::{timed, Outcome};
use crate::series::Series;
use crate::{Error, Result};

/// Compares two elements through degree `p`, demanding that both are known
/// that far.
pub fn same_at<const R: bool>(
    a: &super::Elem<R>,
    b: &super::Elem<R>,
    p: i64,
    what: &str,
) -> Result<Option<String>> {
    let have = a.prec().min(b.prec());
    if have < p {
        return Err(Error::precision(p, have));
    }
    Ok(a.first_difference(b, p).map(|w| format!("{what}: {w}")))
}

pub fn same_u(a: &UElem, b: &UElem, what: &str) -> Option<String> {
    (a != b).then(|| format!("{what}: {} vs {}", a.render(), b.render()))
}

fn first<T>(it: impl IntoIterator<Item = Result<Option<T>>>) -> Result<Option<T>> {
    for r in it {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `P |> x_C` and `y_C <| P` for the entries of `O` and `O^-1`, memoized.
struct SeriesActions<'a> {
    ps: &'a PhaseSpace,
    left: Mutex<HashMap<(bool, usize, usize, MultiIndex), UElem>>,
    right: Mutex<HashMap<(bool, usize, usize, MultiIndex), UElem>>,
}

impl<'a> SeriesActions<'a> {
    fn new(ps: &'a PhaseSpace) -> Self {
        SeriesActions { ps, left: Mutex::new(HashMap::new()), right: Mutex::new(HashMap::new()) }
    }

    fn entry(&self, inv: bool, r: usize, c: usize) -> Series {
        if inv {
            self.ps.o_inv().get(r, c).clone()
        } else {
            self.ps.o().get(r, c).clone()
        }
    }

    /// `M^r_c |> f` with `M = O` or `O^-1`.
    fn left(&self, inv: bool, r: usize, c: usize, f: &UElem) -> Result<UElem> {
        let mut out = UElem::zero(self.ps.dim());
        for (k, coef) in f.iter() {
            let key = (inv, r, c, k.clone());
            let hit = self.left.lock().expect("cache").get(&key).cloned();
            let v = match hit {
                Some(v) => v,
                None => {
                    let h = HElem::series(self.entry(inv, r, c));
                    let v = self.ps.black_left(&h, &UElem::monomial(k.clone(), Rational::one()))?;
                    self.left.lock().expect("cache").insert(key, v.clone());
                    v
                }
            };
            out.add_scaled(&v, coef);
        }
        Ok(out)
    }

    /// `f <| M^r_c` with `f` in the opposite enveloping algebra.
    fn right(&self, inv: bool, r: usize, c: usize, f: &UElem) -> Result<UElem> {
        let mut out = UElem::zero(self.ps.dim());
        for (k, coef) in f.iter() {
            let key = (inv, r, c, k.clone());
            let hit = self.right.lock().expect("cache").get(&key).cloned();
            let v = match hit {
                Some(v) => v,
                None => {
                    let q = RElem::series(self.entry(inv, r, c));
                    let v = self
                        .ps
                        .black_right_r(&UElem::monomial(k.clone(), Rational::one()), &q)?;
                    self.right.lock().expect("cache").insert(key, v.clone());
                    v
                }
            };
            out.add_scaled(&v, coef);
        }
        Ok(out)
    }
}

fn basis(n: usize, deg: u32) -> Vec<UElem> {
    MultiIndex::all_up_to(n, deg)
        .into_iter()
        .map(|k| UElem::monomial(k, Rational::one()))
        .collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

/// Commutation relations of `O`, `O^-1` with the generators, the quadratic
/// relations and `[x_mu, y_nu] = 0`, all through degree `N - 1`.
pub fn theorem1(ps: &PhaseSpace) -> Vec<Outcome> {
    let n = ps.dim();
    let l = ps.lie();
    let p = ps.prec() - 1;
    let mut out = Vec::new();
    let ys: Vec<HElem> = (0..n).map(|m| ps.y(m)).collect();
    let xs: Vec<HElem> = (0..n).map(|m| ps.x(m)).collect();

    out.push(timed("O-y commutator", "thm1.O_y", || {
        first(pairs(n).flat_map(|(lam, mu)| {
            let ys = &ys;
            (0..n).map(move |nu| {
                let lhs = ps.commutator(&ps.o_entry(lam, mu), &ys[nu]);
                let mut rhs = HElem::zero(n, ps.prec());
                for rho in 0..n {
                    rhs = rhs.add(&ps.o_entry(rho, mu).scale(l.c(rho, nu, lam)));
                }
                same_at(&lhs, &rhs, p, &format!("[O^{}_{}, y{}]", lam + 1, mu + 1, nu + 1))
            })
        }))
    }));
    out.push(timed("O-x commutator", "thm1.O_x", || {
        first(pairs(n).flat_map(|(lam, mu)| {
            let xs = &xs;
            (0..n).map(move |nu| {
                let lhs = ps.commutator(&ps.o_entry(lam, mu), &xs[nu]);
                let mut rhs = HElem::zero(n, ps.prec());
                for rho in 0..n {
                    rhs = rhs.add(&ps.o_entry(lam, rho).scale(l.c(mu, nu, rho)));
                }
                same_at(&lhs, &rhs, p, &format!("[O^{}_{}, x{}]", lam + 1, mu + 1, nu + 1))
            })
        }))
    }));
    out.push(timed("Oinv-x commutator", "thm1.Oinv_x", || {
        first(pairs(n).flat_map(|(lam, mu)| {
            let xs = &xs;
            (0..n).map(move |nu| {
                let lhs = ps.commutator(&ps.oi_entry(lam, mu), &xs[nu]);
                let mut rhs = HElem::zero(n, ps.prec());
                for rho in 0..n {
                    rhs = rhs.sub(&ps.oi_entry(rho, mu).scale(l.c(rho, nu, lam)));
                }
                same_at(&lhs, &rhs, p, &format!("[Oinv^{}_{}, x{}]", lam + 1, mu + 1, nu + 1))
            })
        }))
    }));
    out.push(timed("Oinv-y commutator", "thm1.Oinv_y", || {
        first(pairs(n).flat_map(|(lam, mu)| {
            let ys = &ys;
            (0..n).map(move |nu| {
                let lhs = ps.commutator(&ps.oi_entry(lam, mu), &ys[nu]);
                let mut rhs = HElem::zero(n, ps.prec());
                for rho in 0..n {
                    rhs = rhs.sub(&ps.oi_entry(lam, rho).scale(l.c(mu, nu, rho)));
                }
                same_at(&lhs, &rhs, p, &format!("[Oinv^{}_{}, y{}]", lam + 1, mu + 1, nu + 1))
            })
        }))
    }));
    out.push(timed("quadratic O relations", "thm1.quadratic", || {
        first([false, true].into_iter().flat_map(|inv| {
            pairs(n).flat_map(move |(mu, nu)| {
                (0..n).map(move |lam| {
                    let m = |r: usize, c: usize| {
                        if inv {
                            ps.o_inv().get(r, c).clone()
                        } else {
                            ps.o().get(r, c).clone()
                        }
                    };
                    let mut lhs = Series::zero(n, ps.prec());
                    for tau in 0..n {
                        lhs.add_assign_scaled(&m(lam, tau), l.c(mu, nu, tau));
                    }
                    let mut rhs = Series::zero(n, ps.prec());
                    for (rho, sig) in pairs(n) {
                        let c = l.c(rho, sig, lam);
                        if !c.is_zero() {
                            rhs.add_assign_scaled(&m(rho, mu).mul(&m(sig, nu)), c);
                        }
                    }
                    Ok(lhs.first_difference(&rhs, ps.prec()).map(|(k, a, b)| {
                        format!(
                            "{} lambda={} mu={} nu={} at {k}: {a} vs {b}",
                            if inv { "Oinv" } else { "O" },
                            lam + 1,
                            mu + 1,
                            nu + 1
                        )
                    }))
                })
            })
        }))
    }));
    out.push(timed("x and y commute", "thm1.x_y", || {
        first(pairs(n).map(|(mu, nu)| {
            let c = ps.commutator(&xs[mu], &ys[nu]);
            same_at(&c, &HElem::zero(n, ps.prec()), p, &format!("[x{}, y{}]", mu + 1, nu + 1))
        }))
    }));
    out
}

/// Identities for the left black action on PBW monomials up to degree `deg`.
pub fn theorem2(ps: &PhaseSpace, deg: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let u = ps.u_left();
    let acts = SeriesActions::new(ps);
    let b = basis(n, deg);
    let mut out = Vec::new();

    out.push(timed("x f = (O |> f) x", "thm2.leibniz", || {
        first(b.iter().flat_map(|f| {
            let acts = &acts;
            (0..n).map(move |a| {
                let lhs = u.mul(&UElem::gen(n, a), f);
                let mut rhs = UElem::zero(n);
                for be in 0..n {
                    rhs = rhs.add(&u.mul(&acts.left(false, be, a, f)?, &UElem::gen(n, be)));
                }
                Ok(same_u(&lhs, &rhs, &format!("alpha={} f={}", a + 1, f.render())))
            })
        }))
    }));
    for inv in [false, true] {
        let (name, id) = if inv {
            ("Oinv |> is anti-multiplicative", "thm2.Oinv_product")
        } else {
            ("O |> is multiplicative", "thm2.O_product")
        };
        out.push(timed(name, id, || {
            first(b.iter().flat_map(|g| {
                let (acts, b) = (&acts, &b);
                b.iter().flat_map(move |f| {
                    pairs(n).map(move |(ga, al)| {
                        let lhs = acts.left(inv, ga, al, &u.mul(g, f))?;
                        let mut rhs = UElem::zero(n);
                        for be in 0..n {
                            let (x, y) = if inv {
                                (acts.left(true, ga, be, g)?, acts.left(true, be, al, f)?)
                            } else {
                                (acts.left(false, be, al, g)?, acts.left(false, ga, be, f)?)
                            };
                            rhs = rhs.add(&u.mul(&x, &y));
                        }
                        Ok(same_u(
                            &lhs,
                            &rhs,
                            &format!("gamma={} alpha={} g={} f={}", ga + 1, al + 1, g.render(), f.render()),
                        ))
                    })
                })
            }))
        }));
    }
    out.push(timed("y |> f = f x", "thm2.y_action", || {
        let ys: Vec<HElem> = (0..n).map(|m| ps.y(m)).collect();
        first(b.iter().flat_map(|f| {
            let ys = &ys;
            (0..n).map(move |a| {
                let lhs = ps.black_left(&ys[a], f)?;
                let rhs = u.mul(f, &UElem::gen(n, a));
                Ok(same_u(&lhs, &rhs, &format!("alpha={} f={}", a + 1, f.render())))
            })
        }))
    }));
    out.push(timed("(x |> f) g = (O |> f)(x |> g)", "thm2.leibniz_full", || {
        first(b.iter().flat_map(|f| {
            let (acts, b) = (&acts, &b);
            b.iter().flat_map(move |g| {
                (0..n).map(move |a| {
                    let lhs = u.mul(&ps.black_left(&ps.x(a), f)?, g);
                    let mut rhs = UElem::zero(n);
                    for be in 0..n {
                        let xg = ps.black_left(&ps.x(be), g)?;
                        rhs = rhs.add(&u.mul(&acts.left(false, be, a, f)?, &xg));
                    }
                    Ok(same_u(&lhs, &rhs, &format!("alpha={} f={} g={}", a + 1, f.render(), g.render())))
                })
            })
        }))
    }));
    out
}

/// Mirror identities for the right black action, `f, g` in `U(g^op)`.
pub fn theorem3(ps: &PhaseSpace, deg: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let u = ps.u_right();
    let acts = SeriesActions::new(ps);
    let b = basis(n, deg);
    let ry = |f: &UElem| f.render_with("y");
    let mut out = Vec::new();

    out.push(timed("f y = y (f <| Oinv)", "thm3.leibniz", || {
        first(b.iter().flat_map(|f| {
            let acts = &acts;
            (0..n).map(move |a| {
                let lhs = u.mul(f, &UElem::gen(n, a));
                let mut rhs = UElem::zero(n);
                for be in 0..n {
                    rhs = rhs.add(&u.mul(&UElem::gen(n, be), &acts.right(true, be, a, f)?));
                }
                Ok(same_u(&lhs, &rhs, &format!("alpha={} f={}", a + 1, ry(f))))
            })
        }))
    }));
    for inv in [false, true] {
        let (name, id) = if inv {
            ("<| Oinv on products", "thm3.Oinv_product")
        } else {
            ("<| O on products", "thm3.O_product")
        };
        out.push(timed(name, id, || {
            first(b.iter().flat_map(|g| {
                let (acts, b) = (&acts, &b);
                b.iter().flat_map(move |f| {
                    pairs(n).map(move |(ga, al)| {
                        let lhs = acts.right(inv, ga, al, &u.mul(g, f))?;
                        let mut rhs = UElem::zero(n);
                        for be in 0..n {
                            let (x, y) = if inv {
                                (acts.right(true, ga, be, g)?, acts.right(true, be, al, f)?)
                            } else {
                                (acts.right(false, be, al, g)?, acts.right(false, ga, be, f)?)
                            };
                            rhs = rhs.add(&u.mul(&x, &y));
                        }
                        Ok(same_u(
                            &lhs,
                            &rhs,
                            &format!("gamma={} alpha={} g={} f={}", ga + 1, al + 1, ry(g), ry(f)),
                        ))
                    })
                })
            }))
        }));
    }
    out.push(timed("f <| z = y f", "thm3.z_action", || {
        let zs: Vec<RElem> = (0..n).map(|a| ps.beta_r_form(&UElem::gen(n, a))).collect();
        first(b.iter().flat_map(|f| {
            let zs = &zs;
            (0..n).map(move |a| {
                let lhs = ps.black_right_r(f, &zs[a])?;
                let rhs = u.mul(&UElem::gen(n, a), f);
                Ok(same_u(&lhs, &rhs, &format!("alpha={} f={}", a + 1, ry(f))))
            })
        }))
    }));
    out.push(timed("g (f <| y) = (g <| y)(f <| Oinv)", "thm3.leibniz_full", || {
        first(b.iter().flat_map(|f| {
            let (acts, b) = (&acts, &b);
            b.iter().flat_map(move |g| {
                (0..n).map(move |a| {
                    let fy = ps.black_right_r(f, &RElem::gen(n, a))?;
                    let lhs = u.mul(g, &fy);
                    let mut rhs = UElem::zero(n);
                    for be in 0..n {
                        let gy = ps.black_right_r(g, &RElem::gen(n, be))?;
                        rhs = rhs.add(&u.mul(&gy, &acts.right(true, be, a, f)?));
                    }
                    Ok(same_u(&lhs, &rhs, &format!("alpha={} f={} g={}", a + 1, ry(f), ry(g))))
                })
            })
        }))
    }));
    out
}

/// `beta^L(g) |> f = f g`, `u <| beta^R(v) = v u`, and commuting source and
/// target images.
pub fn bimodule(ps: &PhaseSpace, deg: u32) -> Vec<Outcome> {
    let n = ps.dim();
    let b = basis(n, deg);
    let mut out = Vec::new();
    out.push(timed("beta^L(g) |> f = f g", "bimodule.beta_l_action", || {
        first(b.iter().flat_map(|g| {
            let bg = ps.beta_l(g);
            let b = &b;
            b.iter()
                .map(move |f| {
                    let lhs = ps.black_left(&bg, f)?;
                    let rhs = ps.u_left().mul(f, g);
                    Ok(same_u(&lhs, &rhs, &format!("g={} f={}", g.render(), f.render())))
                })
                .collect::<Vec<_>>()
        }))
    }));
    out.push(timed("u <| beta^R(v) = v u", "bimodule.beta_r_action", || {
        first(b.iter().flat_map(|v| {
            let bv = ps.beta_r_form(v);
            let b = &b;
            b.iter()
                .map(move |f| {
                    let lhs = ps.black_right_r(f, &bv)?;
                    let rhs = ps.u_right().mul(v, f);
                    Ok(same_u(&lhs, &rhs, &format!("v={} u={}", v.render_with("y"), f.render_with("y"))))
                })
                .collect::<Vec<_>>()
        }))
    }));
    out.push(timed("alpha^R and beta^R images commute", "bimodule.right_commute", || {
        let p = ps.prec() - 1;
        first(pairs(n).map(|(mu, nu)| {
            let y = RElem::gen(n, mu);
            let z = ps.beta_r_form(&UElem::gen(n, nu));
            let c = ps.mul_r(&y, &z).sub(&ps.mul_r(&z, &y));
            same_at(&c, &RElem::zero(n, ps.prec()), p, &format!("[y{}, z{}]", mu + 1, nu + 1))
        }))
    }));
    out
}

/// Unit checks for the counits and black actions on a few fixed inputs.
pub fn counit_values(ps: &PhaseSpace) -> Vec<Outcome> {
    let n = ps.dim();
    vec![timed("counit values", "counit.values", || {
        let one = UElem::one(n);
        for mu in 0..n {
            if !ps.counit_l(&ps.d(mu))?.is_zero() {
                return Ok(Some(format!("eps^L(d{}) != 0", mu + 1)));
            }
            if ps.counit_l(&ps.x(mu))? != UElem::gen(n, mu) {
                return Ok(Some(format!("eps^L(x{}) != x{}", mu + 1, mu + 1)));
            }
            if !ps.black_right(&one, &ps.d(mu))?.is_zero() {
                return Ok(Some(format!("1 <| d{} != 0", mu + 1)));
            }
            for nu in 0..n {
                let want = if mu == nu { one.clone() } else { UElem::zero(n) };
                if ps.counit_l(&ps.o_entry(mu, nu))? != want {
                    return Ok(Some(format!("eps^L(O^{}_{})", mu + 1, nu + 1)));
                }
                if ps.counit_r(&ps.oi_entry(mu, nu))? != want {
                    return Ok(Some(format!("eps^R(Oinv^{}_{})", mu + 1, nu + 1)));
                }
            }
        }
        Ok(None)
    })]
}
