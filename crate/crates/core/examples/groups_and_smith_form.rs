// Finite groups from specs, and finitely presented abelian groups reduced
// by Smith normal form.

use cohomforge::grp::Group;
use cohomforge::zmod::{smith_normal_form, AbHom, IntMatrix, PresentedAb};

pub fn run_example() -> cohomforge::Result<()> {
    let s3 = Group::parse_spec("S3")?;
    println!("{} has order {}", s3.label(), s3.order());
    for g in 0..s3.order() {
        println!("  {:>8}  order {}", s3.names()[g], s3.element_order(g));
    }
    let twos = s3.cyclic_subgroups_of_order(2);
    println!("subgroups of order 2: {}", twos.len());
    assert_eq!(twos.len(), 3);
    // x^2 = 1 has the three transpositions as nontrivial roots
    assert!(!s3.power_equation_is_trivial(2));
    assert!(Group::parse_spec("C3")?.power_equation_is_trivial(2));

    let klein = Group::parse_spec("C2xC2")?;
    println!("{} is abelian of order {}", klein.label(), klein.order());

    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let (u, d, v) = smith_normal_form(&a);
    assert_eq!(u.mul(&a).mul(&v), d);
    println!("Smith form diagonal: {:?}", (0..3).map(|i| d[(i, i)].to_string()).collect::<Vec<_>>());

    let coker = PresentedAb::new(3, a.clone())?;
    println!("Z^3 / im A = {}", coker.invariant_factors());

    // multiplication by 2 on Z/4: kernel Z/2, image Z/2, cokernel Z/2
    let z4 = PresentedAb::cyclic(4);
    let twice = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]]))?;
    println!(
        "2·: Z/4 → Z/4  ker {}  im {}  coker {}",
        twice.kernel().group.invariant_factors(),
        twice.image().group.invariant_factors(),
        twice.cokernel().0.invariant_factors()
    );
    assert!(!twice.is_injective());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("groups example");
}
