use super::*;
use crate::arith::int;

fn mi(e: &[u16]) -> MultiIndex {
    MultiIndex::from_slice(e)
}

#[test]
fn d_past_x() {
    for l in LieAlgebra::builtins() {
        let ps = PhaseSpace::new(l, 5);
        let n = ps.dim();
        for mu in 0..n {
            for nu in 0..n {
                let lhs = ps.mul(&ps.d(mu), &ps.x(nu));
                let mut rhs = HElem::term(MultiIndex::unit(n, nu), Series::var(n, mu, EXACT));
                rhs.add_term(MultiIndex::zero(n), ps.phi().get(mu, nu).clone());
                assert!(lhs.agrees(&rhs), "{lhs:?} vs {rhs:?}");
                assert_eq!(lhs.prec(), 5);
            }
        }
    }
}

#[test]
fn heisenberg_products() {
    let ps = PhaseSpace::new(LieAlgebra::heisenberg3(), 4);
    let h = ps.mul(&ps.d(2), &ps.x(0));
    assert_eq!(h.render(), "1/2*d2 + x1 * d3");
    let b = ps.beta_l(&UElem::gen(3, 0));
    assert_eq!(b.render(), "x1 + x3 * (-d2)");
    let r = ps.to_r(&ps.x(0));
    assert_eq!(r.render(), "y1 + d2 * y3");
}

#[test]
fn black_actions() {
    let ps = PhaseSpace::new(LieAlgebra::heisenberg3(), 4);
    let u = ps.u_left();
    let f = UElem::gen(3, 1);
    let got = ps.black_left(&ps.y(0), &f).unwrap();
    let want = UElem::from_terms(3, [(mi(&[1, 1, 0]), int(1)), (mi(&[0, 0, 1]), int(-1))]);
    assert_eq!(got, want);
    assert_eq!(got, u.word(&[1, 0]));
    assert!(ps.black_left(&ps.d(0), &UElem::one(3)).unwrap().is_zero());
    for mu in 0..3 {
        for nu in 0..3 {
            let e = ps.counit_l(&ps.o_entry(mu, nu)).unwrap();
            assert_eq!(e.counit(), if mu == nu { int(1) } else { int(0) });
        }
    }
    let short = HElem::series(Series::var(3, 0, 1));
    assert!(ps.black_left(&short, &UElem::monomial(mi(&[2, 0, 0]), int(1))).is_err());
}

#[test]
fn right_action_z() {
    let ps = PhaseSpace::new(LieAlgebra::sl2(), 5);
    let f = UElem::monomial(mi(&[1, 0, 1]), int(1));
    for a in 0..3 {
        let z = ps.beta_r_form(&UElem::gen(3, a));
        let got = ps.black_right_r(&f, &z).unwrap();
        assert_eq!(got, ps.u_right().mul(&UElem::gen(3, a), &f));
    }
    assert_eq!(ps.counit_r(&ps.x(1)).unwrap(), UElem::gen(3, 1));
    let ps = PhaseSpace::new(LieAlgebra::solvable2(), 5);
    let want = UElem::gen(2, 0).sub(&UElem::one(2));
    assert_eq!(ps.black_right(&UElem::one(2), &ps.x(0)).unwrap(), want);
}

#[test]
fn conversions_round_trip() {
    for l in LieAlgebra::builtins() {
        let ps = PhaseSpace::new(l, 6);
        let n = ps.dim();
        let h = ps.mul(&ps.x(0), &ps.mul(&ps.x(n - 1), &ps.d(0)));
        let back = ps.to_l(&ps.to_r(&h));
        assert!(back.agrees(&h), "{h:?} -> {back:?}");
        assert!(back.prec() >= 2);
    }
}

#[test]
fn antipode_basics() {
    for l in LieAlgebra::builtins() {
        let ps = PhaseSpace::new(l.clone(), 5);
        let n = ps.dim();
        for mu in 0..n {
            assert!(ps.antipode(&ps.d(mu)).agrees(&ps.d(mu).neg()));
            assert!(ps.antipode(&ps.y(mu)).agrees(&ps.x(mu)));
            assert!(ps.antipode_inv(&ps.x(mu)).agrees(&ps.y(mu)));
            for nu in 0..n {
                assert!(ps.antipode(&ps.o_entry(mu, nu)).agrees(&ps.oi_entry(mu, nu)));
            }
            if l.is_abelian() {
                assert!(ps.antipode(&ps.x(mu)).agrees(&ps.x(mu)));
            }
        }
    }
}

#[test]
fn identity_families_small() {
    for l in [LieAlgebra::heisenberg3(), LieAlgebra::solvable2(), LieAlgebra::sl2()] {
        let ps = PhaseSpace::new(l.clone(), 6);
        let mut all = identities::theorem1(&ps);
        all.extend(identities::theorem2(&ps, 2));
        all.extend(identities::theorem3(&ps, 2));
        all.extend(identities::bimodule(&ps, 2));
        all.extend(identities::counit_values(&ps));
        for o in all {
            assert!(o.passed(), "{}: {o:?}", l.label());
        }
    }
}
