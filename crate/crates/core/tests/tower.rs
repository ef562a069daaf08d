use modseries_core::modforms::{hauptmodul_h, j_from_hauptmodul, q_frac_power_in_h, q_in_hinv, q_root_coefficients};
use modseries_core::tate::{deuring_tate_parameter, tate_parameter, torsion_parameters, PI};
use modseries_core::{ConstantRoot, QSeries, Rat};

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[test]
fn cube_root_of_q_in_hinv() {
    // q^(1/3) = w^(1/3) (1 - 4w + ...), so b_{1,1} = -4
    let b = q_root_coefficients(1, 12).unwrap();
    assert_eq!(&b[..2], &[r(1), r(-4)]);
    let p = q_frac_power_in_h(1, 12).unwrap();
    let cube = p.pow_int(3).unwrap().normalize();
    assert!(cube.body().agrees_with(&q_in_hinv(12).unwrap()));
}

#[test]
fn j_from_h_is_integral_and_starts_right() {
    let h: QSeries = hauptmodul_h(40);
    let j = j_from_hauptmodul(&h).unwrap();
    assert_eq!(j.valuation(), -1);
    assert_eq!(j.coeff(0).unwrap(), r(744));
    assert!(j.coefficients().iter().all(|c| c.is_integer()));
}

#[test]
fn tate_parameter_is_stable_under_precision() {
    let small = deuring_tate_parameter(10).unwrap();
    let big = deuring_tate_parameter(60).unwrap();
    assert_eq!(big.truncate(10), small);
}

#[test]
fn tate_parameter_of_j_itself_is_q() {
    let j = modseries_core::modforms::j_expansion::<Rat>(30).with_var(PI);
    let q = tate_parameter(&j, 100).unwrap();
    assert_eq!(q, QSeries::variable(PI, 32));
}

#[test]
fn torsion_units_are_shared_per_b() {
    let ps = torsion_parameters(1, 10).unwrap();
    for p in &ps {
        let same = ps.iter().filter(|o| o.q_exponent == p.q_exponent).all(|o| std::sync::Arc::ptr_eq(&o.unit, &p.unit));
        assert!(same);
        assert!(p.zeta_exponent < 3 && p.q_exponent < 3);
    }
    let b2 = ps.iter().find(|p| p.q_exponent == 2).unwrap();
    assert_eq!(b2.constant, ConstantRoot::Rational(Rat::new(1.into(), 9.into())));
}
