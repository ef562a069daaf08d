//! The named checks behind `modseries verify`.

use modseries_core::covers::{
    branch_map, congruence_invariants, cover_degree, ramification_profile,
    riemann_hurwitz_check, ProjectivePoint, SubgroupKind,
};
use modseries_core::modforms::{
    hauptmodul_at_q_of_w, hauptmodul_h, is_integral, j_expansion, q_in_hinv, verify_j_h_identity,
};
use modseries_core::poly::Polynomial;
use modseries_core::tate::{
    branch_map_at_cover_point, deuring_alpha, deuring_curve, deuring_j_from_alpha_cube,
    deuring_j_rational, deuring_tate_parameter, eisenstein_square_classes, legendre_curve,
    legendre_j_closed_form, legendre_lambda, reduction_type, tate_parameter,
    tate_parameter_from_cover, torsion_certificate, torsion_parameters, unit_decomposition,
    PI, T,
};
use modseries_core::{ConstantRoot, QSeries, Rat, Result, VerificationReport};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Identity,
    Tate,
    Covers,
    Torsion,
    Legendre,
}

/// Smallest `--terms` accepted by `verify`.
pub const MIN_TERMS: i64 = 8;

/// The published value of the cube coefficient of alpha; the
/// cube-back identity forces -5/27 instead.
pub const PRINTED_ALPHA_CUBE_COEFF: &str = "-10/9";

type Check = fn(i64) -> VerificationReport;

fn checks(suite: Suite) -> Vec<Check> {
    let identity: [Check; 4] = [
        hauptmodul_coefficients,
        j_coefficients,
        identity_check,
        q_reversion,
    ];
    let tate: [Check; 8] = [
        alpha_consistency,
        deuring_j,
        deuring_closed_forms,
        reduction,
        tate_leading,
        tate_round_trip,
        tate_cover_consistency,
        unit_part,
    ];
    let covers: [Check; 4] = [profiles, riemann_hurwitz, congruence, degrees];
    let torsion: [Check; 4] = [torsion_list, torsion_n1, torsion_n2, torsion_n3];
    let legendre: [Check; 3] = [legendre_lambda_check, legendre_j, legendre_round_trip];
    match suite {
        Suite::Identity => identity.to_vec(),
        Suite::Tate => tate.to_vec(),
        Suite::Covers => covers.to_vec(),
        Suite::Torsion => torsion.to_vec(),
        Suite::Legendre => legendre.to_vec(),
        Suite::All => [&identity[..], &tate, &covers, &torsion, &legendre].concat(),
    }
}

/// Runs every check of `suite` in parallel; the reports come back sorted by
/// check name.
pub fn run_suite(suite: Suite, terms: i64) -> Vec<VerificationReport> {
    let mut reports: Vec<_> = checks(suite).par_iter().map(|c| c(terms)).collect();
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    reports
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn fr(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn item(order: impl ToString, expected: impl ToString, actual: impl ToString) -> (String, String, String) {
    (order.to_string(), expected.to_string(), actual.to_string())
}

/// Compares the leading coefficients of `s` from `start` against `want`.
fn leading(s: &QSeries, start: i64, want: &[Rat]) -> Vec<(String, String, String)> {
    want.iter()
        .enumerate()
        .map(|(i, w)| {
            let k = start + i as i64;
            let got = s.coeff(k).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
            item(k, w, got)
        })
        .collect()
}

fn guard(check: &str, location: &str, requested: i64, f: impl FnOnce() -> Result<VerificationReport>) -> VerificationReport {
    f().unwrap_or_else(|e| VerificationReport::error(check, location, requested, e))
}

// identity

fn hauptmodul_coefficients(terms: i64) -> VerificationReport {
    const C: &str = "hauptmodul-coefficients";
    const L: &str = "h = (eta(q)/eta(q^3))^12 + 27 = 1/q - 12 + 54q - 76q^2 + ...";
    let h: QSeries = hauptmodul_h(terms - 1);
    let want: Vec<Rat> = [1, -12, 54, -76, -243, 1188].map(r).to_vec();
    let mut items = leading(&h, -1, &want);
    items.push(item("integrality", true, is_integral(&h)));
    VerificationReport::all_of(C, L, 4, 4, items)
}

fn j_coefficients(_terms: i64) -> VerificationReport {
    const C: &str = "j-expansion-coefficients";
    const L: &str = "j(q) = 1/q + 744 + 196884q + ...";
    let j: QSeries = j_expansion(3);
    let want = [1, 744, 196884, 21493760].map(r);
    VerificationReport::all_of(C, L, 2, 2, leading(&j, -1, &want))
}

fn identity_check(terms: i64) -> VerificationReport {
    verify_j_h_identity(terms)
}

fn q_reversion(terms: i64) -> VerificationReport {
    const C: &str = "q-in-hinv-reversion";
    const L: &str = "q = 1/h - 12/h^2 + 198/h^3 - ... by reversion of 1/h";
    guard(C, L, terms - 1, || {
        let qw = q_in_hinv(6)?;
        let want = [1, -12, 198, -3748, 76629].map(r);
        let mut items = leading(&qw, 1, &want);
        let back = hauptmodul_at_q_of_w(terms + 1)?;
        let one_over_w = QSeries::monomial("w", -1, r(1), back.precision());
        let rt = VerificationReport::compare_series(C, L, &one_over_w, &back, terms - 2);
        items.push(item("h(q(w)) = 1/w", "pass", if rt.passed() { "pass".to_string() } else { format!("{:?}", rt.mismatch) }));
        Ok(VerificationReport::all_of(C, L, terms - 2, rt.compared_through, items))
    })
}

// tate

fn alpha_consistency(terms: i64) -> VerificationReport {
    const C: &str = "alpha-consistency";
    const L: &str = "alpha = 3(1 - pi)^(1/3) = 3 - pi - pi^2/3 - ...";
    let p = terms.max(4);
    guard(C, L, p - 1, || {
        let a = deuring_alpha(p)?;
        let cube = a.scale(&fr(1, 3)).pow_int(3)?;
        let want = QSeries::from_coeffs(PI, 0, vec![r(1), r(-1)], p);
        let mut items = leading(&a, 0, &[r(3), r(-1), fr(-1, 3), fr(-5, 27)]);
        items.push(item("(alpha/3)^3", &want, &cube));
        Ok(VerificationReport::all_of(C, L, p - 1, cube.precision() - 1, items).with_note(format!(
            "pi^3 coefficient {} is forced by (alpha/3)^3 = 1 - pi; the printed value {} is inconsistent with it",
            fr(-5, 27),
            PRINTED_ALPHA_CUBE_COEFF
        )))
    })
}

fn deuring_j(terms: i64) -> VerificationReport {
    modseries_core::tate::verify_deuring_j(terms + 3)
}

fn deuring_closed_forms(_terms: i64) -> VerificationReport {
    const C: &str = "deuring-j-closed-form";
    const L: &str = "alpha^3(alpha^3-24)^3/(alpha^3-27) = -27(t-1)(t-9)^3/t^3 = f(-27t)";
    guard(C, L, 0, || {
        let want = deuring_j_rational();
        Ok(VerificationReport::all_of(
            C,
            L,
            0,
            0,
            vec![
                item("from alpha^3", &want, deuring_j_from_alpha_cube()?),
                item("branch map at -27t", &want, branch_map_at_cover_point()?),
            ],
        ))
    })
}

fn reduction(terms: i64) -> VerificationReport {
    const C: &str = "reduction-type";
    const L: &str = "the Deuring curve has split multiplicative reduction at pi";
    guard(C, L, 0, || {
        let e = deuring_curve(terms.max(4))?;
        let rt = reduction_type(&e, &eisenstein_square_classes())?;
        let nonsplit = reduction_type(&e, &[r(1)])?;
        Ok(VerificationReport::all_of(
            C,
            L,
            0,
            0,
            vec![
                item("classification", "SplitMultiplicative", format!("{:?}", rt.classification)),
                item("v(disc)", 1, rt.disc_valuation),
                item("v(c4)", 0, rt.c4_valuation),
                item("singular point", "Some((-1, 1))", format!("{:?}", rt.singular_point.map(|(x, y)| (x.to_string(), y.to_string()))).replace('"', "")),
                item("tangent cone discriminant", "-3", rt.tangent_cone_discriminant.map(|d| d.to_string()).unwrap_or_default()),
                item("square class", "-3", rt.residue_witness.map(|d| d.to_string()).unwrap_or_default()),
                item("over Q only", "NonsplitMultiplicative", format!("{:?}", nonsplit.classification)),
            ],
        )
        .with_note(format!("checked at working precision {}", terms.max(4))))
    })
}

/// The Tate parameter pinned at its third coefficient.
pub const TATE_PI3: (i64, i64) = (-22, 2187);

fn tate_leading(terms: i64) -> VerificationReport {
    const C: &str = "tate-parameter-leading";
    const L: &str = "q = -(1/27)pi - (4/243)pi^2 + ...";
    guard(C, L, 3, || {
        let q = deuring_tate_parameter(terms.max(4))?;
        let mut items = leading(&q, 1, &[fr(-1, 27), fr(-4, 243), fr(TATE_PI3.0, TATE_PI3.1)]);
        items.push(item("valuation", 1, q.valuation()));
        Ok(VerificationReport::all_of(C, L, 3, 3, items)
            .with_note(format!("q = {}", q.truncate(4)))
            .with_note("all coefficients are exact rationals by construction"))
    })
}

/// Deuring `j` and `q` with `j` known through `pi^(terms - 1)`.
fn deuring_j_and_q(terms: i64) -> Result<(QSeries, QSeries)> {
    let inv = deuring_curve(terms + 2)?.invariants()?;
    let q = tate_parameter(&inv.j, terms + 2)?;
    Ok((inv.j, q))
}

fn round_trip(j: &QSeries, q: &QSeries) -> Result<QSeries> {
    let w = q.valuation();
    let need = (j.precision() + w - 1) / w + 1;
    j_expansion::<Rat>(need).compose(q)
}

fn tate_round_trip(terms: i64) -> VerificationReport {
    const C: &str = "tate-round-trip";
    const L: &str = "j(q(pi)) = j(E) for the Deuring curve";
    guard(C, L, terms - 1, || {
        let (j, q) = deuring_j_and_q(terms)?;
        let back = round_trip(&j, &q)?;
        Ok(VerificationReport::compare_series(C, L, &j, &back, terms - 1))
    })
}

fn tate_cover_consistency(terms: i64) -> VerificationReport {
    const C: &str = "tate-cover-consistency";
    const L: &str = "q(pi) equals q(1/h) at h = -27t, since j(E) = f(-27t)";
    guard(C, L, terms - 1, || {
        let q = deuring_tate_parameter(terms)?;
        let via_cover = tate_parameter_from_cover(terms)?;
        Ok(VerificationReport::compare_series(C, L, &via_cover, &q, terms - 1))
    })
}

fn unit_part(terms: i64) -> VerificationReport {
    const C: &str = "unit-decomposition";
    const L: &str = "q = -(1/27) pi u with u in 1 + pi R";
    guard(C, L, terms - 1, || {
        let q = deuring_tate_parameter(terms)?;
        let dec = unit_decomposition(&q)?;
        let back = dec
            .reassemble()
            .map(|p| p.agrees_with(&modseries_core::PuiseuxSeries::lift(&q, 1).expect("d = 1")))
            .unwrap_or(false);
        Ok(VerificationReport::all_of(
            C,
            L,
            terms - 1,
            dec.unit.body().precision(),
            vec![
                item("constant", fr(-1, 27), &dec.constant),
                item("exponent", 1, &dec.exponent),
                item("u starts with 1", true, dec.unit.is_unit_normalized()),
                item("u at pi", fr(4, 9), dec.unit.coeff(&r(1))?),
                item("reassembly", true, back),
            ],
        ))
    })
}

// covers

fn profiles(_terms: i64) -> VerificationReport {
    const C: &str = "ramification-profiles";
    const L: &str = "f(x) = (x+27)(x+243)^3/x^3 over 0, 1728, infinity";
    guard(C, L, 0, || {
        let f = branch_map();
        let m = |y: ProjectivePoint| -> Result<String> {
            Ok(format!("{:?}", ramification_profile(&f, &y)?.multiplicities()))
        };
        let sq = Polynomial::<Rat>::from_i64s(&[-19683, -486, 1]).pow(2);
        let g = f.numerator().sub(&f.denominator().scale(&r(1728)));
        Ok(VerificationReport::all_of(
            C,
            L,
            0,
            0,
            vec![
                item("over 0", "[1, 3]", m(ProjectivePoint::int(0))?),
                item("over 1728", "[2, 2]", m(ProjectivePoint::int(1728))?),
                item("over inf", "[1, 3]", m(ProjectivePoint::Infinity)?),
                item("numerator of f - 1728", &sq, &g),
            ],
        ))
    })
}

fn riemann_hurwitz(_terms: i64) -> VerificationReport {
    const C: &str = "riemann-hurwitz";
    const L: &str = "the cover X(3) -> X(1) of degree 12 factors through f, genus 0";
    guard(C, L, 0, || {
        let pts = [ProjectivePoint::int(0), ProjectivePoint::int(1728), ProjectivePoint::Infinity];
        let rh = riemann_hurwitz_check(&branch_map(), &pts)?;
        let x3 = congruence_invariants(SubgroupKind::Full, 3)?;
        Ok(VerificationReport::all_of(
            C,
            L,
            0,
            0,
            vec![
                item("degree", 4, rh.degree),
                item("total ramification", 6, rh.total_ramification),
                item("genus of source", 0, rh.genus),
                item("X(3) genus", 0, x3.genus),
                item("[PSL2(Z) : Gamma(3)]", 12, x3.index),
            ],
        ))
    })
}

fn congruence(_terms: i64) -> VerificationReport {
    const C: &str = "congruence-invariants";
    const L: &str = "X(3) has 4 cusps; X0(3) has two cusps and one elliptic point";
    guard(C, L, 100, || {
        let x3 = congruence_invariants(SubgroupKind::Full, 3)?;
        let x03 = congruence_invariants(SubgroupKind::Gamma0, 3)?;
        let mut items = vec![
            item("X(3) cusps", 4, x3.cusps),
            item("X0(3) cusps", 2, x03.cusps),
            item("X0(3) nu3", 1, x03.nu3),
        ];
        for kind in [SubgroupKind::Full, SubgroupKind::Gamma0, SubgroupKind::Gamma1] {
            for n in 1..=100 {
                let inv = congruence_invariants(kind, n)?;
                items.push(item(format!("{} genus identity N={n}", kind.name()), true, inv.genus_identity_holds()));
            }
        }
        Ok(VerificationReport::all_of(C, L, 100, 100, items))
    })
}

fn degrees(_terms: i64) -> VerificationReport {
    const C: &str = "cover-degree";
    const L: &str = "degree of X(3^n) -> X(3)";
    guard(C, L, 3, || {
        let items = [(1, 3), (2, 81), (3, 2187)]
            .into_iter()
            .map(|(n, d)| Ok(item(format!("n={n}"), d, cover_degree(n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport::all_of(C, L, 3, 3, items))
    })
}

// torsion

fn torsion_list(terms: i64) -> VerificationReport {
    const C: &str = "torsion-parameters";
    const L: &str = "eta^a q^(b/3^n) with rational unit parts";
    guard(C, L, terms - 1, || {
        let mut items = Vec::new();
        for n in 1..=2 {
            let ps = torsion_parameters(n, terms + 1)?;
            let m = 3u64.pow(n);
            items.push(item(format!("n={n} count"), m * m, ps.len()));
            let bad = ps.iter().filter(|p| !p.unit.is_unit_normalized()).count();
            items.push(item(format!("n={n} units in 1 + pi Q[[pi]]"), 0, bad));
            let p = ps.iter().find(|p| p.q_exponent == 1).expect("b = 1 present");
            items.push(item(format!("n={n} exponent"), fr(1, m as i64), &p.monomial_exponent));
            if n == 1 {
                items.push(item("n=1 constant", fr(-1, 3), &p.constant));
                items.push(item("n=1 unit at pi", fr(4, 27), p.unit.coeff(&r(1))?));
            } else {
                items.push(item("n=2 constant^9", ConstantRoot::Rational(fr(-1, 27)), p.constant.pow(9)?));
            }
        }
        Ok(VerificationReport::all_of(C, L, terms - 1, terms - 1, items))
    })
}

fn torsion_level(n: u32, terms: i64) -> VerificationReport {
    let check = format!("torsion-certificate-n{n}");
    const L: &str = "roots of u lie in 1 + pi R: u^(1/3^n) has rational coefficients";
    guard(&check, L, terms - 1, || {
        let cert = torsion_certificate(n, terms + 1)?;
        Ok(VerificationReport::all_of(
            &check,
            L,
            terms - 1,
            cert.terms - 1,
            vec![
                item("constant term 1", true, cert.unit_starts_with_one),
                item(format!("unit^{}", 3u32.pow(n)), true, cert.power_back),
                item("constant power", true, cert.constant_power_back),
                item("exponent lattice", true, cert.exponents_in_lattice),
            ],
        )
        .with_note(format!("constant {}", cert.decomposition.constant)))
    })
}

fn torsion_n1(terms: i64) -> VerificationReport {
    torsion_level(1, terms)
}

fn torsion_n2(terms: i64) -> VerificationReport {
    torsion_level(2, terms)
}

fn torsion_n3(terms: i64) -> VerificationReport {
    torsion_level(3, terms)
}

// legendre

fn legendre_lambda_check(terms: i64) -> VerificationReport {
    const C: &str = "legendre-lambda";
    const L: &str = "lambda = (1 + sqrt(1 - t^4))/2";
    guard(C, L, terms - 1, || {
        let l = legendre_lambda(terms)?;
        let d = l.scale_int(2).add_constant(&r(-1));
        let sq = d.mul(&d)?;
        let want = QSeries::from_terms(T, &[(0, r(1)), (4, r(-1))], terms);
        let prod = l.mul(&l.add_constant(&r(-1)))?;
        let want_prod = QSeries::monomial(T, 4, fr(-1, 4), terms);
        let a = VerificationReport::compare_series(C, L, &want, &sq, terms - 1);
        let b = VerificationReport::compare_series(C, L, &want_prod, &prod, terms - 1);
        Ok(VerificationReport::all_of(
            C,
            L,
            terms - 1,
            a.compared_through.min(b.compared_through),
            vec![
                item("(2 lambda - 1)^2 = 1 - t^4", "pass", if a.passed() { "pass".into() } else { format!("{:?}", a.mismatch) }),
                item("lambda(lambda - 1) = -t^4/4", "pass", if b.passed() { "pass".into() } else { format!("{:?}", b.mismatch) }),
            ],
        ))
    })
}

fn legendre_j(terms: i64) -> VerificationReport {
    const C: &str = "legendre-j";
    const L: &str = "j(y^2 = x(x-1)(x-lambda)) = 64(4 - t^4)^3/t^8";
    guard(C, L, terms - 1, || {
        let (_, inv) = legendre_curve(terms + 16)?;
        Ok(VerificationReport::compare_series(
            C,
            L,
            &legendre_j_closed_form(terms + 16),
            &inv.j,
            terms - 1,
        ))
    })
}

fn legendre_round_trip(terms: i64) -> VerificationReport {
    const C: &str = "legendre-tate-round-trip";
    const L: &str = "j(q(t)) = j(E_t) for the Legendre curve";
    guard(C, L, terms - 1, || {
        let (_, inv) = legendre_curve(terms + 16)?;
        let q = tate_parameter(&inv.j, i64::MAX)?;
        let back = round_trip(&inv.j, &q)?;
        Ok(VerificationReport::compare_series(C, L, &inv.j, &back, terms - 1)
            .with_note(format!("q = {}", q.truncate(q.valuation() + 5))))
    })
}
