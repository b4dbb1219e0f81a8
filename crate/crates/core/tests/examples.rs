#[allow(dead_code)]
mod groups_and_smith_form {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groups_and_smith_form.rs"));
}

#[test]
fn groups_and_smith_form_runs() {
    groups_and_smith_form::run_example().expect("groups_and_smith_form example should run");
}

#[allow(dead_code)]
mod modules_and_bases {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/modules_and_bases.rs"));
}

#[test]
fn modules_and_bases_runs() {
    modules_and_bases::run_example().expect("modules_and_bases example should run");
}

#[allow(dead_code)]
mod cochain_complexes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cochain_complexes.rs"));
}

#[test]
fn cochain_complexes_runs() {
    cochain_complexes::run_example().expect("cochain_complexes example should run");
}

#[allow(dead_code)]
mod symmetric_cohomology {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/symmetric_cohomology.rs"));
}

#[test]
fn symmetric_cohomology_runs() {
    symmetric_cohomology::run_example().expect("symmetric_cohomology example should run");
}

#[allow(dead_code)]
mod comparison_maps {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/comparison_maps.rs"));
}

#[test]
fn comparison_maps_runs() {
    comparison_maps::run_example().expect("comparison_maps example should run");
}

#[allow(dead_code)]
mod e1_page {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/e1_page.rs"));
}

#[test]
fn e1_page_runs() {
    e1_page::run_example().expect("e1_page example should run");
}

#[allow(dead_code)]
mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example should run");
}
