// Brauer and Picard groups over the supported bases, with the spectral
// sequence pieces behind them.

use brauer_y02::assembly::{
    apply_differentials, brauer_report, compute_g_and_gprime, e2_page, two_primary_brauer, BaseDescriptor,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["ZP:2", "Q", "algclosed:0"] {
        let r = brauer_report(&BaseDescriptor::parse(spec)?)?;
        println!("{spec:<12} Br = {}   Pic = {}", r.brauer, r.picard);
        assert!(r.passed());
    }

    let base = BaseDescriptor::parse("ZP:2")?;
    let page = e2_page(&base)?;
    for e in &page.entries {
        println!("E2^({},{}) = {}", e.i, e.j, e.group);
    }
    let inf = apply_differentials(&page)?;
    println!("E_inf: {} | {} | {}", inf.e20, inf.e11, inf.e02);

    let (g, gp) = compute_g_and_gprime(&[2])?;
    println!("G = {} generated by {:?}, G' = {}", g.group, g.generators, gp.group);

    for ps in [&[2, 3][..], &[2, 5], &[2, 3, 5, 7]] {
        println!("2-primary over Z_P, P = {ps:?}: {}", two_primary_brauer(ps)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
