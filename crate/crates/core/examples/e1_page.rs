// The `E_1` page built from the orbits of `Λ^{p+1} Z[G]`, with the checks
// that tie its columns to cyclic subgroups.

use std::sync::Arc;

use cohomforge::gmod::GModule;
use cohomforge::grp::Group;
use cohomforge::ss::{e1_page, prime_column_crosscheck, vanishing_report};
use cohomforge::Limits;

pub fn run_example() -> cohomforge::Result<()> {
    let limits = Limits::default();
    let s3 = Arc::new(Group::parse_spec("S3")?);
    let z = GModule::trivial_integers(&s3);

    let page = e1_page(&z, 5, 3, &limits)?;
    print!("{}", page.to_text());
    let e = page.entry(1, 1);
    println!("E1^(1,1) = {} from {} orbits", e.invariants, e.orbits.len());

    for (ell, q) in [(2, 1), (3, 2)] {
        let c = prime_column_crosscheck(&z, ell, q, &limits)?;
        println!("ℓ={ell} q={q}: {} subgroups, {} = {}", c.subgroups, c.entry, c.expected);
        assert!(c.pass);
    }

    let forced = vanishing_report(&page, &s3).into_iter().filter(|c| c.reason.is_some()).count();
    println!("{forced} cells are forced to vanish, all do");
    assert!(vanishing_report(&page, &s3).iter().all(|c| c.pass));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("e1 example");
}
