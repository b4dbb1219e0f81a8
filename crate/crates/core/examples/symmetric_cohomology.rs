// Symmetric cohomology `HS`, the exterior theory `H_λ` and the δ-part,
// computed through the based resolutions and cross-checked against the
// explicit subcomplex `CS ⊂ C`.

use std::sync::Arc;

use cohomforge::cochain::{antisymmetric_ks, classical_c, symmetric_cs};
use cohomforge::cohom::{cohomology, compute_table, Theory};
use cohomforge::gmod::GModule;
use cohomforge::grp::Group;
use cohomforge::Limits;

pub fn run_example() -> cohomforge::Result<()> {
    let limits = Limits::default();
    let c2 = Arc::new(Group::parse_spec("C2")?);
    let f2 = GModule::trivial_cyclic(&c2, 2);

    let hs = compute_table(Theory::Symmetric, &f2, 9, &limits)?;
    print!("{}", hs.to_text());
    for d in &hs.degrees {
        assert_eq!(d.invariants.is_zero(), !(d.n == 0 || d.n % 4 == 1));
    }

    for theory in [Theory::Exterior, Theory::Delta] {
        print!("{}", compute_table(theory, &f2, 6, &limits)?.to_text());
    }

    // same answer from the fixed points of the transpositions on C
    let c = classical_c(&f2, 4, &limits)?;
    let cs = symmetric_cs(&c)?;
    let ks = antisymmetric_ks(&f2, 4, &limits)?;
    assert_eq!(cohomology(&cs.complex, "HS", "C2", "F2")?, cohomology(&ks.complex, "HS", "C2", "F2")?);
    println!("CS and KS agree through degree 4");

    let c5 = Arc::new(Group::parse_spec("C5")?);
    let t = compute_table(Theory::Exterior, &GModule::trivial_integers(&c5), 6, &limits)?;
    print!("{}", t.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("symmetric example");
}
