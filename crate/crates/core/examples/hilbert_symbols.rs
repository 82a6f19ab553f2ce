// Quadratic symbols over Q and the degree-p symbol (zeta, b) over Q_p(zeta).

use brauer_y02::padic::{
    inv_mod_prime, product_formula_holds, quad_hilbert, relevant_places, symbol_zeta, CycloRing,
};
use num_rational::BigRational;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for (a, b) in [(r(-1, 1), r(-1, 1)), (r(-1, 1), r(2, 1)), (r(-1, 1), r(3, 1)), (r(5, 3), r(-7, 2))] {
        let line: Vec<String> = relevant_places(&a, &b)
            .into_iter()
            .map(|v| Ok(format!("{v:?}:{:+}", quad_hilbert(&a, &b, v)?)))
            .collect::<Result<_, brauer_y02::padic::PadicError>>()?;
        println!("({a}, {b})  {}  product formula: {}", line.join(" "), product_formula_holds(&a, &b)?);
    }

    // (zeta, m^p + a p) has exponent -a/m mod p
    for p in [3u64, 5, 7] {
        let ring = CycloRing::with_default_precision(p)?;
        let (a, m) = (1i64, 2i64);
        let b = ring.from_int(m).pow(p).add(&ring.from_int(a * p as i64));
        let e = symbol_zeta(&b)?;
        let want = (p as i64 - a * inv_mod_prime(m, p).expect("m is a unit mod p") as i64 % p as i64) % p as i64;
        println!("p = {p}: (zeta, {m}^{p} + {a}*{p}) = zeta^{}", e.value);
        assert_eq!(e.value as i64, want);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
