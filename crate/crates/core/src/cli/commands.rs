use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{Cli, Command, ConfigError, KindArg};
use crate::assembly::{brauer_report, AbGroupExpr, BaseDescriptor};
use crate::cohomology::{
    brute_force_cohomology, builtin_rep, cohomology, parse_module, tensor_with, CyclicModule, MAX_DEGREE, MAX_ORDER,
};
use crate::intlinalg::{cokernel, parse_matrix, smith_normal_form, FinAbGroup, IntMatrix};
use crate::moduli::checks::{
    aut_survey, check_change_of_variables, check_identities, check_taut_discriminants, special_fiber,
    supported_fields,
};
use crate::moduli::FiniteField;
use crate::padic::is_prime;
use crate::witness::{find_t, verify_certificate, verify_json, WitnessConfig, WitnessKind, DEFAULT_MAX_PRIME};

/// A finished command: verdict plus both renderings.
pub struct Outcome {
    pub command: &'static str,
    pub passed: bool,
    pub seed: Option<u64>,
    pub precision: Option<u32>,
    pub text: String,
    pub json: serde_json::Value,
}

impl Outcome {
    fn new(command: &'static str, passed: bool, text: String, json: serde_json::Value) -> Self {
        Self { command, passed, seed: None, precision: None, text, json }
    }
}

pub(super) fn dispatch(cli: &Cli) -> Result<Outcome, ConfigError> {
    match &cli.command {
        Command::Cohomology { rep, fixture, coeff, degrees } => {
            cmd_cohomology(*rep, fixture.as_deref(), coeff, degrees)
        }
        Command::Witness { primes, kind, m } => cmd_witness(primes, *kind, *m, cli.precision),
        Command::VerifyCertificate { path } => cmd_verify(path),
        Command::Brauer { base } => cmd_brauer(base),
        Command::ModuliIdentities { bound, samples, aut_bound } => {
            let mut o = cmd_moduli(*bound, *samples, *aut_bound, cli.seed)?;
            o.seed = Some(cli.seed);
            Ok(o)
        }
        Command::Snf { path } => cmd_snf(path),
    }
}

fn read_input(path: &Path) -> Result<String, ConfigError> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(ConfigError::new)
    } else {
        std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }
}

fn parse_degrees(s: &str) -> Result<(u32, u32), ConfigError> {
    let bad = || ConfigError(format!("bad degree range {s:?}; expected e.g. 0..4"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || hi > MAX_DEGREE {
        return Err(ConfigError(format!("degrees must satisfy {lo} <= {hi} <= {MAX_DEGREE}")));
    }
    Ok((lo, hi))
}

/// `Z`, `Z/6`, `Z (+) Z/2` or `Z + Z/2`.
fn parse_coefficients(s: &str) -> Result<FinAbGroup, ConfigError> {
    let e: AbGroupExpr = s
        .replace(" + ", " (+) ")
        .parse()
        .map_err(|_| ConfigError(format!("bad coefficient group {s:?}")))?;
    if e.is_symbolic() || !e.divisible_parts().is_empty() {
        return Err(ConfigError(format!("coefficients must be finitely generated: {s:?}")));
    }
    Ok(FinAbGroup::from_u64(e.cyclic_factors(), e.free_rank() as usize))
}

#[derive(Serialize)]
struct CohomologyRow {
    degree: u32,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
}

fn cmd_cohomology(
    rep: Option<crate::cohomology::RepName>,
    fixture: Option<&Path>,
    coeff: &str,
    degrees: &str,
) -> Result<Outcome, ConfigError> {
    let (lo, hi) = parse_degrees(degrees)?;
    let (label, module): (String, CyclicModule) = match (rep, fixture) {
        (Some(r), None) => {
            let g = parse_coefficients(coeff)?;
            let m = tensor_with(&builtin_rep(r).module, &g).map_err(ConfigError::new)?;
            (format!("{r} (x) {g}"), m)
        }
        (None, Some(path)) => {
            let text = read_input(path)?;
            let m = parse_module(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), m)
        }
        _ => return Err(ConfigError("give exactly one of --rep or --fixture".into())),
    };
    let finite = module.underlying_group().order().is_some_and(|o| o <= MAX_ORDER.into());
    let rows: Vec<CohomologyRow> = (lo..=hi)
        .map(|i| {
            let group = cohomology(&module, i).map_err(ConfigError::new)?;
            let oracle = if finite && i <= 2 {
                Some(brute_force_cohomology(&module, i).map_err(ConfigError::new)?)
            } else {
                None
            };
            Ok(CohomologyRow {
                degree: i,
                group: group.to_string(),
                oracle: oracle.map(|o| o.to_string()),
            })
        })
        .collect::<Result<_, ConfigError>>()?;
    let passed = rows.iter().all(|r| r.oracle.as_ref().is_none_or(|o| *o == r.group));
    let mut text = format!("C_{} acting on {label}\n", module.n);
    for r in &rows {
        let _ = write!(text, "H^{} = {}", r.degree, r.group);
        match &r.oracle {
            Some(o) if *o == r.group => text.push_str("  (oracle agrees)"),
            Some(o) => {
                let _ = write!(text, "  (oracle: {o})");
            }
            None => {}
        }
        text.push('\n');
    }
    let json = json!({ "module": label, "oracle_checked": finite, "rows": rows });
    Ok(Outcome::new("cohomology", passed, text, json))
}

fn cmd_witness(primes: &[u64], kind: KindArg, m: Option<i64>, precision: Option<u32>) -> Result<Outcome, ConfigError> {
    for &p in primes {
        if p < 3 || !is_prime(p) {
            return Err(ConfigError(format!("{p} is not an odd prime")));
        }
        if p > DEFAULT_MAX_PRIME {
            return Err(ConfigError(format!("{p} is above the supported bound {DEFAULT_MAX_PRIME}")));
        }
    }
    let kinds: &[WitnessKind] = match kind {
        KindArg::Nonzero => &[WitnessKind::Nonzero],
        KindArg::Zero => &[WitnessKind::Zero],
        KindArg::Both => &[WitnessKind::Nonzero, WitnessKind::Zero],
    };
    let cfg = WitnessConfig { precision, m_override: m, ..WitnessConfig::default() };
    let jobs: Vec<(u64, WitnessKind)> = primes.iter().flat_map(|&p| kinds.iter().map(move |&k| (p, k))).collect();
    let results: Vec<_> = jobs.par_iter().map(|&(p, k)| (p, k, find_t(p, k, &cfg))).collect();

    let mut certificates = Vec::new();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let mut text = String::new();
    for (p, k, r) in results {
        match r {
            Ok(cert) => {
                let rep = verify_certificate(&cert);
                let _ = writeln!(
                    text,
                    "p = {p} {k}: t = {}, s = {}, v(disc) = {}, symbol = {}, {}",
                    cert.t,
                    cert.s,
                    cert.discriminant_valuation,
                    cert.symbol_exponent,
                    if rep.passed { "verified" } else { "VERIFICATION FAILED" }
                );
                certificates.push(cert);
                reports.push(rep);
            }
            Err(e) => {
                let _ = writeln!(text, "p = {p} {k}: ERROR {e}");
                errors.push(json!({ "p": p.to_string(), "kind": k, "error": e.to_string() }));
            }
        }
    }
    let passed = errors.is_empty() && reports.iter().all(|r| r.passed);
    let json = json!({ "certificates": certificates, "verification": reports, "errors": errors });
    let mut o = Outcome::new("witness", passed, text, json);
    o.precision = precision;
    Ok(o)
}

fn cmd_verify(path: &Path) -> Result<Outcome, ConfigError> {
    let text_in = read_input(path)?;
    let reports = verify_json(&text_in).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "p = {} {}: {}", r.p, r.kind, if r.passed { "pass" } else { "FAIL" });
        for c in r.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(text, "  {}: {}", c.field, c.detail);
        }
    }
    let passed = !reports.is_empty() && reports.iter().all(|r| r.passed);
    Ok(Outcome::new("verify-certificate", passed, text, json!({ "reports": reports })))
}

fn cmd_brauer(spec: &str) -> Result<Outcome, ConfigError> {
    let base = BaseDescriptor::parse(spec).map_err(ConfigError::new)?;
    let report = brauer_report(&base).map_err(ConfigError::new)?;
    let mut text = format!("Br = {}\n", report.brauer);
    if !report.complete {
        text.push_str("(primary parts for primes outside P are not determined)\n");
    }
    let _ = writeln!(text, "Pic = {}", report.picard);
    for c in &report.checks {
        let _ = writeln!(text, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    let passed = report.passed();
    let json = serde_json::to_value(&report).map_err(ConfigError::new)?;
    Ok(Outcome::new("brauer", passed, text, json))
}

fn cmd_moduli(bound: u64, samples: usize, aut_bound: u64, seed: u64) -> Result<Outcome, ConfigError> {
    if aut_bound > 49 {
        return Err(ConfigError("--aut-bound above 49 is too slow for an exhaustive survey".into()));
    }
    let fields: Vec<FiniteField> = supported_fields(bound).into_iter().filter(|f| f.characteristic() > 2).collect();
    if fields.is_empty() {
        return Err(ConfigError(format!("no supported odd fields of size <= {bound}")));
    }
    let identities: Vec<_> = fields.par_iter().map(check_identities).collect();
    let changes: Vec<_> = fields.par_iter().map(check_change_of_variables).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let discs = check_taut_discriminants(samples, &mut rng);
    let aut_fields: Vec<FiniteField> = fields.iter().copied().filter(|f| f.order() <= aut_bound).collect();
    let surveys: Vec<_> = aut_fields.iter().map(aut_survey).collect();
    let fibers: Vec<serde_json::Value> = aut_fields
        .iter()
        .map(|f| {
            let e = special_fiber(f);
            let count = e.point.as_ref().and_then(|p| e.aut_fixing_point(p).ok());
            json!({ "q": f.order(), "aut_fixing_point": count })
        })
        .collect();

    let mut text = String::new();
    let mut passed = true;
    for r in &identities {
        passed &= r.passed();
        let _ = writeln!(text, "identities F_{}: {} valid t, {}", r.q, r.valid_t, verdict(r.passed()));
    }
    for r in &changes {
        let ok = r.matched == r.valid_t;
        passed &= ok;
        let _ = writeln!(text, "change of variables F_{}: {}/{} matched", r.q, r.matched, r.valid_t);
    }
    for r in &discs {
        passed &= r.passed();
        let _ = writeln!(text, "discriminant {}: {}/{} matched", r.ring, r.matched, r.evaluated);
    }
    for (s, fib) in surveys.iter().zip(&fibers) {
        let ok = s.all_divide_four();
        passed &= ok;
        let _ = writeln!(
            text,
            "automorphisms F_{}: {} pairs, histogram {:?}, s = -1/4 fiber fixes {}",
            s.q, s.pairs, s.histogram, fib["aut_fixing_point"]
        );
    }
    let json = json!({
        "identities": identities,
        "change_of_variables": changes,
        "discriminants": discs,
        "automorphisms": surveys,
        "special_fibers": fibers,
    });
    Ok(Outcome::new("moduli-identities", passed, text, json))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_snf(path: &Path) -> Result<Outcome, ConfigError> {
    let text_in = read_input(path)?;
    let a = parse_matrix(&text_in).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let r = smith_normal_form(&a);
    let id = |n| IntMatrix::identity(n);
    let checks = [
        ("U A V = D", r.u.mul(&a).mul(&r.v) == r.d),
        ("U U^-1 = I", r.u.mul(&r.u_inv) == id(a.rows())),
        ("V V^-1 = I", r.v.mul(&r.v_inv) == id(a.cols())),
        ("divisibility", r.invariants().windows(2).all(|w| (&w[1] % &w[0]) == 0.into())),
    ];
    let passed = checks.iter().all(|c| c.1);
    let invariants: Vec<String> = r.invariants().iter().map(|d| d.to_string()).collect();
    let coker = cokernel(&a);
    let mut text = format!("invariants: [{}]\ncokernel: {coker}\n", invariants.join(", "));
    let _ = write!(text, "D =\n{}U =\n{}V =\n{}", r.d, r.u, r.v);
    for (name, ok) in &checks {
        let _ = writeln!(text, "[{}] {name}", if *ok { "ok" } else { "FAIL" });
    }
    let rows = |m: &IntMatrix| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
    };
    let json = json!({
        "invariants": invariants,
        "cokernel": coker.to_string(),
        "d": rows(&r.d),
        "u": rows(&r.u),
        "v": rows(&r.v),
        "checks": checks.iter().map(|(n, ok)| json!({ "name": n, "passed": ok })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new("snf", passed, text, json))
}
