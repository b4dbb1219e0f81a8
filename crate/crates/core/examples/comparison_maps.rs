// The maps `α: HS → H`, `β: H_λ → H`, `γ: H_λ → HS` and the splitting
// `HS ≅ H_λ ⊕ H_δ`.

use std::sync::Arc;

use cohomforge::cohom::{comparison_maps, direct_sum_check, lambda_equals_ks};
use cohomforge::gmod::GModule;
use cohomforge::grp::Group;
use cohomforge::Limits;

pub fn run_example() -> cohomforge::Result<()> {
    let limits = Limits::default();
    let c2 = Arc::new(Group::parse_spec("C2")?);
    let f2 = GModule::trivial_cyclic(&c2, 2);

    let cmp = comparison_maps(&f2, 5, &limits)?;
    print!("{}", cmp.gamma.to_text());
    let g5 = cmp.gamma.degree(5);
    println!("γ^5: mono {}, cokernel {}", g5.is_mono, g5.cokernel);
    assert!(g5.is_mono && !g5.is_iso);
    assert!(cmp.beta_is_alpha_gamma.iter().all(|&b| b));

    let split = direct_sum_check(&f2, 5, &limits)?;
    for d in &split.degrees {
        println!("  n={}  {} ≅ {} ⊕ {}", d.n, d.symmetric, d.exterior, d.delta);
    }
    assert!(split.holds());

    let s3 = Arc::new(Group::parse_spec("S3")?);
    let z = GModule::trivial_integers(&s3);
    let cmp = comparison_maps(&z, 2, &limits)?;
    print!("{}", cmp.beta.to_text());
    let same = lambda_equals_ks(&z, 4, &limits)?;
    println!("KS = K_λ in K for S3 with Z coefficients: {same:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("comparison example");
}
