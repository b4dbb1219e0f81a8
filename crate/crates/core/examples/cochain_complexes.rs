// The inhomogeneous complex `C`, the homogeneous complex `K`, and the
// normalized subcomplexes, with `ψ: K → C` relating them.

use std::sync::Arc;

use cohomforge::cochain::{classical_c, homogeneous_k, normalized_nc, normalized_nk, psi_chain_map};
use cohomforge::cohom::cohomology;
use cohomforge::gmod::GModule;
use cohomforge::grp::Group;
use cohomforge::Limits;

pub fn run_example() -> cohomforge::Result<()> {
    let g = Arc::new(Group::parse_spec("C3")?);
    let m = GModule::trivial_integers(&g);
    let limits = Limits::default();

    let c = classical_c(&m, 4, &limits)?;
    let k = homogeneous_k(&m, 4, &limits)?;
    c.complex.verify()?;
    k.complex.verify()?;
    for n in 0..=5 {
        println!("degree {n}: C has {} generators, K has {}", c.complex.group(n).gens(), k.complex.group(n).gens());
    }

    let psi = psi_chain_map(&k, &c)?;
    psi.verify(&k.complex, &c.complex)?;
    assert!(psi.is_degreewise_iso());

    let from_c = cohomology(&c.complex, "H", g.label(), m.label())?;
    let from_k = cohomology(&k.complex, "H", g.label(), m.label())?;
    assert_eq!(from_c, from_k);
    print!("{}", from_k.to_text());

    let nc = normalized_nc(&c)?;
    let nk = normalized_nk(&k)?;
    assert_eq!(cohomology(&nc.complex, "H", "C3", "Z")?.degrees, from_c.degrees);
    assert_eq!(cohomology(&nk.complex, "H", "C3", "Z")?.degrees, from_k.degrees);
    println!("normalized cochains give the same groups");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cochain example");
}
