//! `modseries`: verification suites and coefficient tables for the level-3
//! Hauptmodul, the Deuring curve's Tate parameter, and friends.

pub mod document;
pub mod suite;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use modseries_core::covers::{
    branch_map, congruence_invariants, ramification_profile, FiberPoint, ProjectivePoint,
    SubgroupKind,
};
use modseries_core::modforms::{euler_kernel, hauptmodul_h, j_expansion, q_in_hinv};
use modseries_core::tate::{
    deuring_alpha, deuring_tate_parameter, legendre_lambda, torsion_certificate,
};
use modseries_core::{QSeries, Result, SeriesError, Status, VerificationReport};
use serde_json::json;

pub use document::SeriesDocument;
pub use suite::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modseries", version, about = "Exact q-series checks for the level-3 tower and the Deuring curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Precision in terms (default: 200 for verify, 20 for expand, 100 for torsion)
    #[arg(long, global = true)]
    pub terms: Option<i64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Print a series expansion
    Expand {
        #[arg(value_enum)]
        object: Object,
    },
    /// Index, cusps, elliptic points and genus of a congruence subgroup
    Invariants {
        #[arg(value_enum)]
        group: Group,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Root decomposition of q^(1/3^n) and its rationality certificate
    Torsion {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=4))]
        n: u32,
    },
    /// Fiber of the branch map over 0, 1728 or infinity
    Ramification {
        #[arg(value_enum)]
        over: Fiber,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    H,
    J,
    Euler,
    QInHinv,
    Alpha,
    TateQ,
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Full,
    Gamma0,
    Gamma1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fiber {
    #[value(name = "0")]
    Zero,
    #[value(name = "1728")]
    J1728,
    Inf,
}

/// The first `terms` coefficients of `object`, starting at its valuation.
pub fn expansion(object: Object, terms: i64) -> Result<QSeries> {
    if terms < 1 {
        return Err(SeriesError::InvalidArgument("--terms must be at least 1".into()));
    }
    let (valuation, s) = match object {
        Object::H => (-1, hauptmodul_h(terms - 1)),
        Object::J => (-1, j_expansion(terms - 1)),
        Object::Euler => (0, euler_kernel(terms)),
        Object::QInHinv => (1, q_in_hinv(terms + 1)?),
        Object::Alpha => (0, deuring_alpha(terms.max(2))?),
        Object::TateQ => (1, deuring_tate_parameter(terms + 1)?),
        Object::Lambda => (0, legendre_lambda(terms)?),
    };
    Ok(s.truncate(valuation + terms))
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    json!({
        "check": r.check,
        "location": r.location,
        "status": if r.passed() { "pass" } else { "fail" },
        "requested": r.requested,
        "compared_through": r.compared_through,
        "mismatch": r.mismatch.as_ref().map(|m| json!({
            "order": m.order, "expected": m.expected, "actual": m.actual,
        })),
        "notes": r.notes,
    })
}

fn report_text(r: &VerificationReport) -> String {
    let status = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    };
    let mut s = format!("{status} {} (through {}) -- {}\n", r.check, r.compared_through, r.location);
    if let Some(m) = &r.mismatch {
        s += &format!("  first mismatch at {}: expected {}, got {}\n", m.order, m.expected, m.actual);
    }
    for n in &r.notes {
        s += &format!("  note: {n}\n");
    }
    s
}

fn usage(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Verify { suite } => {
            let terms = cli.terms.unwrap_or(200);
            if terms < suite::MIN_TERMS {
                return usage(err, &format!("verify needs --terms >= {}", suite::MIN_TERMS));
            }
            let reports = run_suite(suite, terms);
            for r in &reports {
                let _ = if json {
                    writeln!(out, "{}", report_json(r))
                } else {
                    write!(out, "{}", report_text(r))
                };
            }
            if reports.iter().all(|r| r.passed()) {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Command::Expand { object } => {
            let terms = cli.terms.unwrap_or(20);
            if terms < 1 {
                return usage(err, "expand needs --terms >= 1");
            }
            match expansion(object, terms) {
                Ok(s) => {
                    let doc = SeriesDocument::from_series(&s);
                    let _ = if json {
                        writeln!(out, "{}", doc.to_json())
                    } else {
                        write!(out, "{}", expansion_text(&doc))
                    };
                    EXIT_OK
                }
                Err(e) => usage(err, &e.to_string()),
            }
        }
        Command::Invariants { group, level } => {
            let kind = match group {
                Group::Full => SubgroupKind::Full,
                Group::Gamma0 => SubgroupKind::Gamma0,
                Group::Gamma1 => SubgroupKind::Gamma1,
            };
            match congruence_invariants(kind, level) {
                Ok(inv) => {
                    let rows = [
                        ("index", inv.index as i64),
                        ("cusps", inv.cusps as i64),
                        ("nu2", inv.nu2 as i64),
                        ("nu3", inv.nu3 as i64),
                        ("genus", inv.genus),
                    ];
                    if json {
                        let mut m = serde_json::Map::new();
                        m.insert("group".into(), json!(kind.name()));
                        m.insert("level".into(), json!(level));
                        for (k, v) in rows {
                            m.insert(k.into(), json!(v));
                        }
                        m.insert("genus_identity".into(), json!(inv.genus_identity_holds()));
                        let _ = writeln!(out, "{}", serde_json::Value::Object(m));
                    } else {
                        let _ = writeln!(out, "{}({level})", kind.name());
                        for (k, v) in rows {
                            let _ = writeln!(out, "  {k:<6} {v}");
                        }
                    }
                    if inv.genus_identity_holds() {
                        EXIT_OK
                    } else {
                        EXIT_FAILED
                    }
                }
                Err(e) => usage(err, &e.to_string()),
            }
        }
        Command::Torsion { n } => {
            let terms = cli.terms.unwrap_or(100);
            if terms < 1 {
                return usage(err, "torsion needs --terms >= 1");
            }
            match torsion_certificate(n, terms + 1) {
                Ok(cert) => {
                    let dec = &cert.decomposition;
                    let unit = SeriesDocument::from_puiseux(&dec.unit.normalize());
                    if json {
                        let v = json!({
                            "level": n,
                            "constant": dec.constant.to_string(),
                            "exponent": dec.exponent.to_string(),
                            "unit": unit,
                            "certificate": {
                                "terms": cert.terms,
                                "unit_starts_with_one": cert.unit_starts_with_one,
                                "power_back": cert.power_back,
                                "constant_power_back": cert.constant_power_back,
                                "exponents_in_lattice": cert.exponents_in_lattice,
                                "holds": cert.holds(),
                            },
                        });
                        let _ = writeln!(out, "{v}");
                    } else {
                        let _ = writeln!(out, "q^(1/{}) = c * pi^e * u", 3u32.pow(n));
                        let _ = writeln!(out, "  c = {}", dec.constant);
                        let _ = writeln!(out, "  e = {}", dec.exponent);
                        let _ = writeln!(out, "  u = {}", dec.unit.normalize().body());
                        let _ = writeln!(
                            out,
                            "certificate: {} ({} unit coefficients; constant term 1: {}; u^{} = unit of q: {}; c^{} = -1/27: {})",
                            if cert.holds() { "pass" } else { "fail" },
                            cert.terms,
                            cert.unit_starts_with_one,
                            3u32.pow(n),
                            cert.power_back,
                            3u32.pow(n),
                            cert.constant_power_back,
                        );
                    }
                    if cert.holds() {
                        EXIT_OK
                    } else {
                        EXIT_FAILED
                    }
                }
                Err(e) => usage(err, &e.to_string()),
            }
        }
        Command::Ramification { over } => {
            let y = match over {
                Fiber::Zero => ProjectivePoint::int(0),
                Fiber::J1728 => ProjectivePoint::int(1728),
                Fiber::Inf => ProjectivePoint::Infinity,
            };
            match ramification_profile(&branch_map(), &y) {
                Ok(p) => {
                    let points: Vec<_> = p
                        .points
                        .iter()
                        .map(|(pt, e)| (fiber_point(pt), pt.count(), *e))
                        .collect();
                    if json {
                        let pts: Vec<_> = points
                            .iter()
                            .map(|(s, c, e)| json!({"point": s, "count": c, "multiplicity": e}))
                            .collect();
                        let v = json!({"fiber": y.to_string(), "points": pts, "multiplicities": p.multiplicities()});
                        let _ = writeln!(out, "{v}");
                    } else {
                        let _ = writeln!(out, "f(x) = (x+27)(x+243)^3/x^3 over {y}");
                        for (s, _, e) in points {
                            let _ = writeln!(out, "  {s}  e = {e}");
                        }
                        let _ = writeln!(out, "  profile {:?}", p.multiplicities());
                    }
                    EXIT_OK
                }
                Err(e) => usage(err, &e.to_string()),
            }
        }
    }
}

fn fiber_point(p: &FiberPoint) -> String {
    match p {
        FiberPoint::Rational(r) => format!("x = {r}"),
        FiberPoint::Infinity => "x = inf".into(),
        FiberPoint::Conjugates(f) => format!("roots of {f}"),
    }
}

fn expansion_text(doc: &SeriesDocument) -> String {
    let mut s = format!(
        "{} (valuation {}, known mod {}^{})\n",
        doc.variable, doc.valuation, doc.variable, doc.precision
    );
    for (e, c) in &doc.coefficients {
        s += &format!("{e:>6}  {c}\n");
    }
    s
}
