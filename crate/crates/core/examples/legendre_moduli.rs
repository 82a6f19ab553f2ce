// The coarse maps t -> s -> j for the Legendre family over a finite field,
// and the S_3 orbit of t.

use brauer_y02::moduli::checks::check_identities;
use brauer_y02::moduli::{j_of_s, j_of_t, s3_orbit, s_of_t, FiniteField, WeierstrassCurve};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = FiniteField::new(25)?;
    let t = f.parse("g + 2")?;
    let s = s_of_t(&t)?;
    let j = j_of_t(&t)?;
    println!("over F_25: t = {t}, s = {s}, j = {j}");
    assert_eq!(j_of_s(&s)?, j);

    let orbit = s3_orbit(&t)?;
    println!("S_3 orbit of t: {}", orbit.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    for u in &orbit {
        assert_eq!(j_of_t(u)?, j);
    }

    let e = WeierstrassCurve::legendre(&t);
    println!("y^2 = x(x-1)(x-t) has discriminant {}", e.discriminant());

    for q in [13, 25, 27, 49] {
        let r = check_identities(&FiniteField::new(q)?);
        println!("F_{q}: {} values of t, all identities hold: {}", r.valid_t, r.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
