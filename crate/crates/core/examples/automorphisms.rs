// Automorphisms of elliptic curves fixing a 2-torsion point, by enumeration.

use std::collections::BTreeMap;

use brauer_y02::moduli::checks::{aut_survey, special_fiber};
use brauer_y02::moduli::{parse_curves, CurveRecord, FiniteField};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let curves = parse_curves(
        "# j = 1728 over F_13 and F_9
         F13, 0 0 0 -36 0, -6 0
         F9,  0 0 0 -1 0,  0 0",
    )?;
    for c in &curves {
        if let CurveRecord::Finite(e) = c {
            let p = e.point.as_ref().expect("point given");
            println!(
                "y^2 = x^3 + ({})x, P = ({}, 0): Aut = {}, fixing P = {}",
                e.a4,
                p.0,
                e.aut_count()?,
                e.aut_fixing_point(p)?
            );
        }
    }

    let mut totals: BTreeMap<usize, usize> = BTreeMap::new();
    for q in [9, 13, 25, 27] {
        let f = FiniteField::new(q)?;
        let s = aut_survey(&f);
        let fiber = special_fiber(&f);
        let n = fiber.aut_fixing_point(fiber.point.as_ref().unwrap())?;
        println!("F_{q}: {} pairs {:?}; s = -1/4 gives {n}", s.pairs, s.histogram);
        for (k, v) in s.histogram {
            *totals.entry(k).or_default() += v;
        }
    }
    assert!(totals.keys().all(|k| 4 % k == 0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
