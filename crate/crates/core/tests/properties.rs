use modseries_core::curve::WeierstrassCurve;
use modseries_core::{F64Series, PuiseuxSeries, QPuiseux, QSeries, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-7i64..=7, 1i64..=5).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn series(var: &'static str, vals: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = QSeries> {
    (vals, rat().prop_filter("nonzero", |c| !c.is_zero()), prop::collection::vec(rat(), 0..16))
        .prop_map(move |(v, lead, rest)| {
            let mut c = vec![lead];
            c.extend(rest);
            let p = v + c.len() as i64;
            QSeries::from_coeffs(var, v, c, p)
        })
}

fn puiseux() -> impl Strategy<Value = QPuiseux> {
    (1u32..=4, series("x", -2..=2)).prop_map(|(d, s)| PuiseuxSeries::new(d, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn puiseux_ring_laws(a in puiseux(), b in puiseux(), c in puiseux()) {
        prop_assert!(a.add(&b).unwrap().agrees_with(&b.add(&a).unwrap()));
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r));
        prop_assert_eq!(l.precision(), r.precision());
        let q = a.mul(&b).unwrap().div(&b).unwrap();
        prop_assert!(q.agrees_with(&a));
    }

    #[test]
    fn normalize_keeps_the_series(a in puiseux(), k in 1u32..4) {
        let up = a.rescale(k);
        prop_assert!(up.agrees_with(&a));
        let n = up.normalize();
        prop_assert!(n.agrees_with(&a));
        prop_assert!(n.ramification() <= up.ramification());
        prop_assert!(n.precision() <= up.precision());
    }

    #[test]
    fn weierstrass_identities_over_series(
        a1 in series("t", 0..=1),
        a2 in series("t", 0..=1),
        a3 in series("t", 0..=1),
        a4 in series("t", 0..=1),
        a6 in series("t", 0..=1),
    ) {
        let e = WeierstrassCurve::new(a1, a2, a3, a4, a6);
        if let Ok(inv) = e.invariants() {
            prop_assert!(inv.identities_hold().unwrap());
        }
    }

    #[test]
    fn compose_is_associative(
        f in series("x", 0..=2),
        g in series("x", 1..=2),
        h in series("x", 1..=2),
    ) {
        let l = f.compose(&g).unwrap().compose(&h).unwrap();
        let r = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r));
    }

    #[test]
    fn derivative_is_a_derivation(a in series("x", -2..=2), b in series("x", -2..=2)) {
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a.derivative().mul(&b).unwrap().add(&a.mul(&b.derivative()).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn float_series_share_the_algorithms() {
    let s = F64Series::from_coeffs("x", 0, vec![1.0, -1.0], 30);
    let r = s.unit_root(3).unwrap();
    let back = r.pow_int(3).unwrap();
    for k in 0..30 {
        let want = match k {
            0 => 1.0,
            1 => -1.0,
            _ => 0.0,
        };
        assert!((back.coeff(k).unwrap() - want).abs() < 1e-12);
    }
    let geo = F64Series::from_coeffs("x", 1, vec![1.0, 1.0], 20).revert().unwrap();
    assert!((geo.coeff(4).unwrap() + 5.0).abs() < 1e-9);
}
