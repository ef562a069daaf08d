//! One line per acceptance criterion. Runs without the libtest harness so
//! the PASS/FAIL lines are always visible.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use modseries_cli::suite::{run_suite, Suite};
use modseries_core::covers::{
    branch_map, congruence_invariants, cover_degree, ramification_profile,
    riemann_hurwitz_check, ProjectivePoint, SubgroupKind,
};
use modseries_core::modforms::{
    hauptmodul_h, j_expansion, q_in_hinv, verify_j_h_identity,
};
use modseries_core::poly::Polynomial;
use modseries_core::tate::{
    deuring_alpha, deuring_curve, deuring_tate_parameter, eisenstein_square_classes,
    legendre_curve, legendre_j_closed_form, legendre_lambda, reduction_type, tate_parameter,
    torsion_certificate, unit_decomposition, verify_deuring_j, Reduction, PI, T,
};
use modseries_core::{ConstantRoot, PuiseuxSeries, QSeries, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn fr(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn coeffs(s: &QSeries, from: i64, n: usize) -> Vec<Rat> {
    (from..from + n as i64).map(|k| s.coeff(k).unwrap()).collect()
}

fn within(limit: Duration, f: impl FnOnce()) -> Duration {
    let t = Instant::now();
    f();
    let e = t.elapsed();
    assert!(e < limit, "took {e:?}, limit {limit:?}");
    e
}

fn hauptmodul() {
    let h: QSeries = hauptmodul_h(5);
    assert_eq!(h.valuation(), -1);
    assert_eq!(coeffs(&h, -1, 6), [1, -12, 54, -76, -243, 1188].map(r));
    within(Duration::from_secs(1), || {
        let h: QSeries = hauptmodul_h(200);
        assert_eq!(h.precision(), 200);
    });
}

fn reversion() {
    let q = q_in_hinv(6).unwrap();
    assert_eq!(q.valuation(), 1);
    assert_eq!(coeffs(&q, 1, 5), [1, -12, 198, -3748, 76629].map(r));
}

fn identity() {
    within(Duration::from_secs(5), || {
        let rep = verify_j_h_identity(200);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.compared_through >= 199);
    });
}

fn j_coefficients() {
    let j: QSeries = j_expansion(3);
    assert_eq!(coeffs(&j, -1, 4), [1, 744, 196884, 21493760].map(r));
}

fn deuring_j() {
    let rep = verify_deuring_j(203);
    assert!(rep.passed(), "{rep:?}");
    assert!(rep.compared_through >= 200);
}

fn is_power_of_three(n: &BigInt) -> bool {
    let mut n = n.clone();
    while (&n % 3u32).is_zero() {
        n /= 3u32;
    }
    n.is_one()
}

fn tate() {
    let q = deuring_tate_parameter(102).unwrap();
    assert_eq!(q.valuation(), 1);
    assert_eq!(coeffs(&q, 1, 2), [fr(-1, 27), fr(-4, 243)]);
    let j = deuring_curve(102).unwrap().invariants().unwrap().j;
    let q_full = tate_parameter(&j, 102).unwrap();
    assert_eq!(q_full, q);
    let back = j_expansion::<Rat>(102).compose(&q).unwrap();
    assert!(back.agrees_with(&j));
    assert!(back.precision().min(j.precision()) - 1 >= 99, "round trip through 100 orders");
    // exact rationals, in fact in Z[1/3]
    assert!(q.coefficients().iter().all(|c| is_power_of_three(c.denom())));
}

fn unit_part() {
    let q = deuring_tate_parameter(101).unwrap();
    let dec = unit_decomposition(&q).unwrap();
    assert_eq!(dec.constant, ConstantRoot::Rational(fr(-1, 27)));
    assert_eq!(dec.exponent, r(1));
    assert!(dec.unit.is_unit_normalized());
    assert!(dec.reassemble().unwrap().agrees_with(&PuiseuxSeries::lift(&q, 1).unwrap()));
    for n in 1..=3 {
        let cert = torsion_certificate(n, 101).unwrap();
        assert!(cert.holds(), "n = {n}: {cert:?}");
        assert!(cert.terms >= 100);
    }
}

fn alpha() {
    let a = deuring_alpha(40).unwrap();
    let cube = a.scale(&fr(1, 3)).pow_int(3).unwrap();
    assert_eq!(cube, QSeries::from_coeffs(PI, 0, vec![r(1), r(-1)], 40));
    assert_eq!(a.coeff(2).unwrap(), fr(-1, 3));
    assert_eq!(a.coeff(3).unwrap(), fr(-5, 27));
    assert_ne!(a.coeff(3).unwrap(), fr(-10, 9));
    let rep = run_suite(Suite::Tate, 8)
        .into_iter()
        .find(|r| r.check == "alpha-consistency")
        .unwrap();
    assert!(rep.passed());
    assert!(rep.notes.iter().any(|n| n.contains("-10/9")), "discrepancy recorded");
}

fn reduction() {
    for p in [8, 40] {
        let rt = reduction_type(&deuring_curve(p).unwrap(), &eisenstein_square_classes()).unwrap();
        assert_eq!(rt.classification, Reduction::SplitMultiplicative);
        assert_eq!((rt.disc_valuation, rt.c4_valuation), (1, 0));
        assert_eq!(rt.tangent_cone_discriminant, Some(r(-3)));
        assert_eq!(rt.residue_witness, Some(r(-3)));
    }
}

fn ramification() {
    let f = branch_map();
    let prof = |y| ramification_profile(&f, &y).unwrap().multiplicities();
    assert_eq!(prof(ProjectivePoint::int(0)), [1, 3]);
    assert_eq!(prof(ProjectivePoint::int(1728)), [2, 2]);
    assert_eq!(prof(ProjectivePoint::Infinity), [1, 3]);
    let g = f.numerator().sub(&f.denominator().scale(&r(1728)));
    assert_eq!(g, Polynomial::<Rat>::from_i64s(&[-19683, -486, 1]).pow(2));
    let pts = [ProjectivePoint::int(0), ProjectivePoint::int(1728), ProjectivePoint::Infinity];
    assert_eq!(riemann_hurwitz_check(&f, &pts).unwrap().genus, 0);
}

fn congruence() {
    assert_eq!(congruence_invariants(SubgroupKind::Full, 3).unwrap().cusps, 4);
    let g03 = congruence_invariants(SubgroupKind::Gamma0, 3).unwrap();
    assert_eq!((g03.cusps, g03.nu3), (2, 1));
    for kind in [SubgroupKind::Full, SubgroupKind::Gamma0, SubgroupKind::Gamma1] {
        for n in 1..=100 {
            let inv = congruence_invariants(kind, n).unwrap();
            assert!(inv.genus_identity_holds(), "{kind:?} {n}");
        }
    }
    assert_eq!([1, 2, 3].map(|n| cover_degree(n).unwrap()), [3, 81, 2187]);
}

fn legendre() {
    let l = legendre_lambda(60).unwrap();
    let d = l.scale_int(2).add_constant(&r(-1));
    assert_eq!(d.mul(&d).unwrap(), QSeries::from_terms(T, &[(0, r(1)), (4, r(-1))], 60));
    let (_, inv) = legendre_curve(60).unwrap();
    assert!(inv.j.agrees_with(&legendre_j_closed_form(60)));
    assert_eq!(inv.j.precision(), 44);
}

// criterion 13

fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| fr(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |c| !c.is_zero())
}

fn series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (-3i64..=3, nonzero_rat(), prop::collection::vec(rat(), 0..max_len), 0i64..4).prop_map(
        |(v, lead, rest, slack)| {
            let mut c = vec![lead];
            c.extend(rest);
            let p = v + c.len() as i64 + slack;
            QSeries::from_coeffs("x", v, c, p)
        },
    )
}

/// `c x^k (1 + ...)` style series with positive valuation, for composition.
fn inner_series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (1i64..=2, nonzero_rat(), prop::collection::vec(rat(), 0..max_len)).prop_map(|(v, lead, rest)| {
        let mut c = vec![lead];
        c.extend(rest);
        let p = v + c.len() as i64;
        QSeries::from_coeffs("x", v, c, p)
    })
}

fn unit(max_len: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(rat(), 1..max_len).prop_map(|rest| {
        let mut c = vec![r(1)];
        c.extend(rest);
        let p = c.len() as i64;
        QSeries::from_coeffs("x", 0, c, p)
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn properties() {
    runner()
        .run(&(series(20), series(20), series(20)), |(a, b, c)| {
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert!(lhs.agrees_with(&rhs));
            prop_assert!(a.sub(&a).unwrap().is_zero());
            let inv = a.invert().unwrap();
            let one = a.mul(&inv).unwrap();
            prop_assert!(one.agrees_with(&QSeries::one("x", one.precision())));
            prop_assert_eq!(one.precision() - one.valuation(), a.precision() - a.valuation());
            Ok(())
        })
        .unwrap();

    // revert takes monic valuation-1 input
    let revertible = prop::collection::vec(rat(), 0..40).prop_map(|rest| {
        let mut c = vec![r(1)];
        c.extend(rest);
        let p = 1 + c.len() as i64;
        QSeries::from_coeffs("x", 1, c, p)
    });
    runner()
        .run(&(revertible, series(12), inner_series(12)), |(s, outer, inner)| {
            let t = s.revert().unwrap();
            let p = s.precision();
            prop_assert_eq!(t.precision(), p);
            prop_assert_eq!(s.compose(&t).unwrap(), QSeries::variable("x", p));
            prop_assert_eq!(t.compose(&s).unwrap(), QSeries::variable("x", p));
            // composition is a ring map: (f g) o h = (f o h)(g o h)
            let sq = outer.mul(&outer).unwrap().compose(&inner).unwrap();
            let c = outer.compose(&inner).unwrap();
            prop_assert!(sq.agrees_with(&c.mul(&c).unwrap()));
            Ok(())
        })
        .unwrap();

    runner()
        .run(&(unit(64), prop::sample::select(vec![2u32, 3, 9, 27])), |(u, m)| {
            let root = u.unit_root(m).unwrap();
            prop_assert_eq!(root.pow_int(m as i64).unwrap(), u);
            Ok(())
        })
        .unwrap();

    let general = (nonzero_rat(), -4i64..=4, unit(40), 1u32..=9);
    runner()
        .run(&general, |(c, v, u, m)| {
            let s = u.shift(v).scale(&c);
            let p = PuiseuxSeries::lift(&s, 1).unwrap();
            let dec = p.frac_root(m).unwrap();
            prop_assert!(dec.unit.is_unit_normalized());
            prop_assert_eq!(&dec.exponent * Rat::from_integer(m.into()), r(v));
            let back = dec.pow(m as i64).unwrap().reassemble().unwrap();
            prop_assert!(back.agrees_with(&p));
            prop_assert_eq!(back.precision(), p.precision());
            if let Some(k) = dec.constant.as_rational() {
                let k_pow = num_traits::pow(k.clone(), m as usize);
                prop_assert_eq!(&k_pow, &c);
            }
            Ok(())
        })
        .unwrap();

    let bin = env!("CARGO_BIN_EXE_modseries");
    within(Duration::from_secs(30), || {
        let out = Command::new(bin).args(["verify", "all", "--terms", "200"]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    });
}

fn main() {
    let criteria: Vec<(&str, fn())> = vec![
        ("1 hauptmodul expansion", hauptmodul),
        ("2 reversion q(1/h)", reversion),
        ("3 j = (h+27)(h+243)^3/h^3 through 200 orders", identity),
        ("4 j-expansion coefficients", j_coefficients),
        ("5 Deuring j through 200 orders", deuring_j),
        ("6 Tate parameter and round trip", tate),
        ("7 unit decomposition and 3^n-th roots", unit_part),
        ("8 alpha consistency", alpha),
        ("9 split multiplicative reduction", reduction),
        ("10 branch map ramification", ramification),
        ("11 congruence invariants", congruence),
        ("12 Legendre example", legendre),
        ("13 property suites and full verify timing", properties),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
