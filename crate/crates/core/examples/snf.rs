// Smith normal form with both transforms, and the cokernel it describes.

use brauer_y02::intlinalg::{cokernel, parse_matrix, smith_normal_form};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = parse_matrix(
        "2   4   4
        -6   6  12
        10  -4 -16",
    )?;
    let r = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("D = U A V =\n{}", r.d);
    assert_eq!(r.u.mul(&a).mul(&r.v), r.d);

    let inv: Vec<String> = r.invariants().iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", inv.join(", "));
    println!("Z^3 / A Z^3 = {}", cokernel(&a));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
