// Coefficient modules, the based modules `T^n`, `Λ^n`, `Δ^n`, `Λ~^n` over
// `Z[G]`, their orbit decompositions and equivariant Hom spaces.

use std::sync::Arc;

use cohomforge::gmod::{boundary, equivariant_hom, BasedModule, Family, GModule, ModuleSpec};
use cohomforge::grp::Group;
use cohomforge::Limits;

pub fn run_example() -> cohomforge::Result<()> {
    let g = Arc::new(Group::parse_spec("S3")?);
    let limits = Limits::default();

    for spec in ["Z", "F2", "Zsign", "ZG"] {
        let m = ModuleSpec::parse(spec)?.build(&g)?;
        println!("{:<6} carrier {}", m.label(), m.carrier().invariant_factors());
    }

    for family in [Family::Tensor, Family::Exterior, Family::Delta, Family::TildeExterior] {
        let sizes: Vec<usize> =
            (1..=4).map(|n| BasedModule::build(family, &g, n, &limits).map(|b| b.len())).collect::<Result<_, _>>()?;
        println!("{:<3} ranks for n = 1..4: {:?}", family.symbol(), sizes);
    }

    // Λ^3 Z[S3]: orbits under left multiplication, with stabilizers and characters
    let l3 = BasedModule::exterior_power(&g, 3, &limits)?;
    let dec = l3.orbit_decomposition();
    for o in &dec.orbits {
        let stab = o.stabilizer.order();
        let sign = if o.has_trivial_character() { "trivial" } else { "sign" };
        println!("  orbit of {:?}: stabilizer order {stab}, character {sign}", l3.tuple(o.rep));
        assert_eq!(3 % stab, 0);
    }

    let z = GModule::trivial_integers(&g);
    let hom = equivariant_hom(&l3, &z)?;
    println!("Hom_G(Λ^3, Z) = {}", hom.group().invariant_factors());

    let l2 = BasedModule::exterior_power(&g, 2, &limits)?;
    let d = boundary(&l3, &l2)?.to_abhom(&l3, &l2);
    println!("∂: Λ^3 → Λ^2 has rank-{} image", d.image().group.invariant_factors().free_rank);

    let err = BasedModule::tensor_power(&g, 9, &limits).unwrap_err();
    println!("guarded: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("modules example");
}
