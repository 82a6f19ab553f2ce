// Witnesses t for the symbol (zeta_p, s(t)), as JSON certificates that
// re-verify independently.

use brauer_y02::witness::{find_t, verify_json, WitnessConfig, WitnessKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = WitnessConfig::default();
    let mut certs = Vec::new();
    for p in [3, 5, 7, 11] {
        for kind in [WitnessKind::Nonzero, WitnessKind::Zero] {
            let c = find_t(p, kind, &cfg)?;
            println!("p = {p:>2} {:<7} t = {:<12} symbol exponent {}", kind.as_str(), c.t, c.symbol_exponent);
            certs.push(c);
        }
    }
    let json = serde_json::to_string_pretty(&certs)?;
    let reports = verify_json(&json)?;
    assert!(reports.iter().all(|r| r.passed));
    println!("{} certificates verified", reports.len());
    println!("{}", serde_json::to_string_pretty(&certs[1])?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
