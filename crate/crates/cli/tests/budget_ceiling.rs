// Own test binary: the ceiling is process-wide environment state.
use lndkit_cli::run_args;

#[test]
fn budget_ceiling_clamps() {
    std::env::set_var(lndkit_cli::BUDGET_CEILING_VAR, "2");
    let out = run_args(&["extactic", "--dx", "y", "--dy", "-x", "--order", "3", "--budget", "10"]);
    std::env::remove_var(lndkit_cli::BUDGET_CEILING_VAR);
    assert_eq!(out.exit_code, 4);
    assert_eq!(out.report.inputs["budget"], "2");
    assert!(out.report.caveats.iter().any(|c| c.contains("ceiling")));
    assert_eq!(out.report.error.as_ref().unwrap().kind, "budget");
}
