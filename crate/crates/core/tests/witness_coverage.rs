use std::time::Instant;

use brauer_y02::padic::is_prime;
use brauer_y02::witness::*;
use rayon::prelude::*;

#[test]
fn every_prime_up_to_97() {
    let start = Instant::now();
    let primes: Vec<u64> = (3..=97).filter(|&p| is_prime(p)).collect();
    let cfg = WitnessConfig::default();
    let results: Vec<_> = primes
        .par_iter()
        .flat_map(|&p| {
            [WitnessKind::Nonzero, WitnessKind::Zero].into_par_iter().map(move |k| {
                let t0 = Instant::now();
                let cert = find_t(p, k, &cfg).unwrap();
                let report = verify_certificate(&cert);
                (p, k, cert, report, t0.elapsed())
            })
        })
        .collect();
    for (p, k, cert, report, dt) in &results {
        assert!(report.passed, "p={p} {k}: {report:?}");
        assert_eq!(cert.symbol_exponent == "0", *k == WitnessKind::Zero);
        if *k == WitnessKind::Nonzero && *p > 3 {
            let m = default_m(*p);
            let expect = (*p - brauer_y02::padic::inv_mod_prime(m as i64, *p).unwrap()) % p;
            assert_eq!(cert.symbol_exponent, expect.to_string());
        }
        eprintln!("p={p:>2} {k:<7} {:?}", dt);
    }
    assert_eq!(results.len(), 2 * primes.len());
    eprintln!("total {:?}", start.elapsed());
}

#[test]
fn certificates_are_stable() {
    let cfg = WitnessConfig::default();
    for p in [3, 13, 31] {
        assert_eq!(find_t_nonzero(p, &cfg).unwrap(), find_t_nonzero(p, &cfg).unwrap());
        assert_eq!(find_t_zero(p, &cfg).unwrap(), find_t_zero(p, &cfg).unwrap());
    }
}
