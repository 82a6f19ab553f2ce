macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(snf, "snf.rs");
example!(cyclic_cohomology, "cyclic_cohomology.rs");
example!(hilbert_symbols, "hilbert_symbols.rs");
example!(legendre_moduli, "legendre_moduli.rs");
example!(automorphisms, "automorphisms.rs");
example!(witnesses, "witnesses.rs");
example!(brauer_groups, "brauer_groups.rs");

#[test]
fn examples_run() {
    snf::run_example().unwrap();
    cyclic_cohomology::run_example().unwrap();
    hilbert_symbols::run_example().unwrap();
    legendre_moduli::run_example().unwrap();
    automorphisms::run_example().unwrap();
    witnesses::run_example().unwrap();
    brauer_groups::run_example().unwrap();
}
