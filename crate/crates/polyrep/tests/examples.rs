mod normal_order_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/normal_order.rs"));
}

#[test]
fn normal_order_example_runs() {
    normal_order_example::run_example().expect("normal_order example should run");
}

mod casimir_check_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/casimir_check.rs"));
}

#[test]
fn casimir_check_example_runs() {
    casimir_check_example::run_example().expect("casimir_check example should run");
}

mod module_actions_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/module_actions.rs"));
}

#[test]
fn module_actions_example_runs() {
    module_actions_example::run_example().expect("module_actions example should run");
}

mod action_band_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/action_band.rs"));
}

#[test]
fn action_band_example_runs() {
    action_band_example::run_example().expect("action_band example should run");
}

mod oracle_check_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracle_check.rs"));
}

#[test]
fn oracle_check_example_runs() {
    oracle_check_example::run_example().expect("oracle_check example should run");
}

mod sequences_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sequences.rs"));
}

#[test]
fn sequences_example_runs() {
    sequences_example::run_example().expect("sequences example should run");
}

mod parse_roundtrip_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/parse_roundtrip.rs"));
}

#[test]
fn parse_roundtrip_example_runs() {
    parse_roundtrip_example::run_example().expect("parse_roundtrip example should run");
}

mod lemma23_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lemma23.rs"));
}

#[test]
fn lemma23_example_runs() {
    lemma23_example::run_example().expect("lemma23 example should run");
}

mod verify_report_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_report.rs"));
}

#[test]
fn verify_report_example_runs() {
    verify_report_example::run_example().expect("verify_report example should run");
}

mod printed_variant_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/printed_variant.rs"));
}

#[test]
fn printed_variant_example_runs() {
    printed_variant_example::run_example().expect("printed_variant example should run");
}

mod cli_session_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_session.rs"));
}

#[test]
fn cli_session_example_runs() {
    cli_session_example::run_example().expect("cli_session example should run");
}
