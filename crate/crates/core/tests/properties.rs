//! Algebraic invariants on random elements.

use liephase::arith::{rat, MultiIndex, Rational};
use liephase::expr::parse_h;
use liephase::lie::LieAlgebra;
use liephase::pbw::{UElem, UEnv};
use liephase::phase::{HElem, PhaseSpace};
use liephase::series::{Series, EXACT};
use proptest::prelude::*;

fn algebra(i: usize) -> LieAlgebra {
    match i % 4 {
        0 => LieAlgebra::heisenberg3(),
        1 => LieAlgebra::sl2(),
        2 => LieAlgebra::solvable2(),
        _ => LieAlgebra::kappa(3),
    }
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

fn index(n: usize, max_deg: u16) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(0..=max_deg, n)
        .prop_filter("degree", move |e| e.iter().sum::<u16>() <= max_deg)
        .prop_map(|e| MultiIndex::from_slice(&e))
}

fn series(n: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec((index(n, 3), coeff()), 0..4)
        .prop_map(move |ts| Series::from_terms(n, EXACT, ts))
}

fn u_elem(n: usize) -> impl Strategy<Value = UElem> {
    proptest::collection::vec((index(n, 2), coeff()), 0..4).prop_map(move |ts| UElem::from_terms(n, ts))
}

/// Sums of `c x_A d^B` with small degrees.
fn h_elem(n: usize) -> impl Strategy<Value = HElem> {
    proptest::collection::vec((index(n, 2), index(n, 2), coeff()), 0..3).prop_map(move |ts| {
        let mut h = HElem::zero(n, EXACT);
        for (a, b, c) in ts {
            h = h.add(&HElem::term(a, Series::monomial(b, c, EXACT)));
        }
        h
    })
}

fn agree(a: &HElem, b: &HElem) -> bool {
    let p = a.prec().min(b.prec());
    p < 0 || a.first_difference(b, p).is_none()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn series_ring_axioms(a in series(2), b in series(2), c in series(2), p in 0i64..6) {
        let (a, b, c) = (a.truncate(p), b.truncate(p), c.truncate(p));
        prop_assert!(a.mul(&b).mul(&c).eq_at(&a.mul(&b.mul(&c)), p));
        prop_assert!(a.mul(&b).eq_at(&b.mul(&a), p));
        prop_assert!(a.mul(&b.add(&c)).eq_at(&a.mul(&b).add(&a.mul(&c)), p));
    }

    #[test]
    fn series_truncation_commutes_with_product(a in series(3), b in series(3), p in 0i64..5) {
        let lhs = a.truncate(p).mul(&b.truncate(p));
        prop_assert_eq!(lhs.prec(), p);
        prop_assert!(lhs.eq_at(&a.mul(&b), p));
    }

    #[test]
    fn enveloping_algebra_is_associative(i in 0usize..4, a in u_elem(3), b in u_elem(3), c in u_elem(3)) {
        let l = algebra(i);
        if l.dim() == 3 {
            let u = UEnv::new(l);
            prop_assert_eq!(u.mul(&u.mul(&a, &b), &c), u.mul(&a, &u.mul(&b, &c)));
        }
    }

    #[test]
    fn enveloping_algebra_bracket(i in 0usize..4, mu in 0usize..2, nu in 0usize..2) {
        let l = algebra(i);
        let n = l.dim();
        let u = UEnv::new(l.clone());
        let (x, y) = (UElem::gen(n, mu), UElem::gen(n, nu));
        let comm = u.mul(&x, &y).sub(&u.mul(&y, &x));
        let want = UElem::from_terms(n, l.bracket(mu, nu).into_iter().map(|(lam, c)| (MultiIndex::unit(n, lam), c)));
        prop_assert_eq!(comm, want);
    }

    #[test]
    fn phase_space_is_associative(i in 0usize..4, a in h_elem(3), b in h_elem(3), c in h_elem(3)) {
        let l = algebra(i);
        if l.dim() == 3 {
            let ps = PhaseSpace::new(l, 5);
            let lhs = ps.mul(&ps.mul(&a, &b), &c);
            let rhs = ps.mul(&a, &ps.mul(&b, &c));
            prop_assert!(agree(&lhs, &rhs));
        }
    }

    /// A product computed at order N agrees, through its reported
    /// precision, with the same product computed at order N + 3.
    #[test]
    fn precision_is_sound(i in 0usize..4, a in h_elem(3), b in h_elem(3), n in 0i64..5) {
        let l = algebra(i);
        if l.dim() == 3 {
            let lo = PhaseSpace::new(l.clone(), n);
            let hi = PhaseSpace::new(l, n + 3);
            let p = lo.mul(&a, &b);
            let q = hi.mul(&a, &b);
            prop_assert!(p.prec() < 0 || p.first_difference(&q, p.prec()).is_none());
            let s = lo.antipode(&a);
            let t = hi.antipode(&a);
            prop_assert!(s.prec() < 0 || s.first_difference(&t, s.prec()).is_none());
        }
    }

    #[test]
    fn antipode_reverses_products(i in 0usize..4, a in h_elem(3), b in h_elem(3)) {
        let l = algebra(i);
        if l.dim() == 3 {
            let ps = PhaseSpace::new(l, 6);
            let lhs = ps.antipode(&ps.mul(&a, &b));
            let rhs = ps.mul(&ps.antipode(&b), &ps.antipode(&a));
            prop_assert!(agree(&lhs, &rhs));
            prop_assert!(agree(&ps.antipode_inv(&ps.antipode(&a)), &a));
        }
    }

    #[test]
    fn printed_forms_reparse(i in 0usize..4, a in h_elem(3), b in h_elem(3)) {
        let l = algebra(i);
        if l.dim() == 3 {
            let ps = PhaseSpace::new(l, 4);
            let h = ps.mul(&a, &b);
            let text = h.render_stamped().replace('\n', " ");
            let back = parse_h(&ps, &text).unwrap();
            prop_assert_eq!(back.prec(), h.prec());
            prop_assert!(back.first_difference(&h, h.prec().max(0)).is_none());
        }
    }

    #[test]
    fn black_action_is_a_module_action(i in 0usize..4, a in h_elem(3), b in h_elem(3), f in u_elem(3)) {
        let l = algebra(i);
        if l.dim() == 3 {
            let ps = PhaseSpace::new(l, 6);
            let lhs = ps.black_left(&ps.mul(&a, &b), &f);
            let rhs = ps.black_left(&b, &f).and_then(|g| ps.black_left(&a, &g));
            if let (Ok(x), Ok(y)) = (lhs, rhs) {
                prop_assert_eq!(x, y);
            }
        }
    }
}
