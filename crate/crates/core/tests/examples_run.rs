mod cardano_inverse {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cardano_inverse.rs"));
}

mod quadrature_vs_closed_form {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quadrature_vs_closed_form.rs"));
}

mod wrong_msa_counterexample {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wrong_msa_counterexample.rs"));
}

mod theorem_construction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/theorem_construction.rs"));
}

mod arctan_blowup {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/arctan_blowup.rs"));
}

mod aronsson_singular {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/aronsson_singular.rs"));
}

mod verify_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_report.rs"));
}


#[test]
fn cardano_inverse_example_runs() {
    cardano_inverse::run_example().expect("cardano inverse example should run");
}

#[test]
fn quadrature_vs_closed_form_example_runs() {
    quadrature_vs_closed_form::run_example().expect("quadrature vs closed form example should run");
}

#[test]
fn wrong_msa_counterexample_example_runs() {
    wrong_msa_counterexample::run_example().expect("wrong msa counterexample example should run");
}

#[test]
fn theorem_construction_example_runs() {
    theorem_construction::run_example().expect("theorem construction example should run");
}

#[test]
fn arctan_blowup_example_runs() {
    arctan_blowup::run_example().expect("arctan blowup example should run");
}

#[test]
fn aronsson_singular_example_runs() {
    aronsson_singular::run_example().expect("aronsson singular example should run");
}

#[test]
fn verify_report_example_runs() {
    verify_report::run_example().expect("verify report example should run");
}
