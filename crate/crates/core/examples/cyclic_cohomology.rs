// Cohomology of C_2 with coefficients in the small representations, checked
// against cochain enumeration where the module is finite.

use brauer_y02::cohomology::{brute_force_cohomology, builtin_rep, cohomology, tensor_with, RepName};
use brauer_y02::intlinalg::FinAbGroup;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let coefficients = [FinAbGroup::free(1), FinAbGroup::cyclic(4), FinAbGroup::from_u64(&[2], 1)];
    for rep in [RepName::Triv, RepName::Sgn, RepName::RhoTildeRestricted] {
        for m in &coefficients {
            let module = tensor_with(&builtin_rep(rep).module, m)?;
            let row: Vec<String> = (0..=4).map(|i| cohomology(&module, i).map(|g| g.to_string())).collect::<Result<_, _>>()?;
            println!("{:<22} (x) {:<8} {}", rep.as_str(), m.to_string(), row.join(" | "));
            if m.is_finite() {
                for i in 0..=2 {
                    assert_eq!(brute_force_cohomology(&module, i)?, cohomology(&module, i)?);
                }
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
