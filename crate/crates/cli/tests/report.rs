use std::path::Path;

use lndkit_cli::{parse_poly, run_args, Report};

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&doc).expect("schema compiles")
}

const INVOCATIONS: &[&[&str]] = &[
    &["lnd", "--dx", "y", "--dy", "0"],
    &["lnd", "--dx", "-x", "--dy", "y"],
    &["lnd", "--dx", "x^2", "--dy", ""],
    &["rectify", "--dx", "2*y", "--dy", "1"],
    &["exp", "--dx", "x", "--dy", "0", "--cap", "3"],
    &["theorem-check", "--dx", "x", "--dy", "2*y", "--dmax", "6"],
    &["theorem-check", "--dx", "y", "--dy", "0", "--dmax", "4"],
    &["ju", "--u", "x^2+1"],
    &["triangular", "--ell", "1", "--a", "1", "--b1", "2", "--m", "4"],
    &["extactic", "--dx", "y", "--dy", "-x", "--order", "5"],
    &["census", "--dx", "x", "--dy", "2*y", "--h", "y-x^2"],
    &["dim3-example", "--p", "20"],
    &["invert", "--f", "x+y^3", "--g", "y"],
    &["no-such-command"],
];

#[test]
fn json_reports_validate_against_schema() {
    let schema = schema();
    for args in INVOCATIONS {
        let mut argv = args.to_vec();
        argv.push("--json");
        let out = run_args(&argv);
        let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        if let Err(errors) = schema.validate(&value) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{args:?}: {}", msgs.join("; "));
        }
        let mut back: Report = serde_json::from_value(value).unwrap();
        let mut expected = out.report.clone();
        back.timings.clear();
        expected.timings.clear();
        assert_eq!(back, expected);
    }
}

#[test]
fn emitted_witnesses_reverify() {
    let mut checked = 0;
    for args in INVOCATIONS {
        let out = run_args(args);
        for w in out.report.witnesses.iter().filter(|w| w.commutes.is_some()) {
            assert_eq!(w.commutes, Some(true), "{args:?}: {}", w.label);
            let mut argv: Vec<String> = vec!["commute".into()];
            if w.nvars == 2 {
                argv.extend(["--dx".into(), w.derivation[0].clone(), "--dy".into(), w.derivation[1].clone()]);
                argv.extend(["--f".into(), w.components[0].clone(), "--g".into(), w.components[1].clone()]);
            } else {
                argv.extend(["--nvars".into(), w.nvars.to_string()]);
                for (i, c) in w.derivation.iter().enumerate() {
                    argv.extend([format!("--d{}", i + 1), c.clone()]);
                }
                for (i, c) in w.components.iter().enumerate() {
                    argv.extend([format!("--m{}", i + 1), c.clone()]);
                }
            }
            let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
            let again = run_args(&argv);
            assert_eq!(again.exit_code, 0, "{}", again.stdout);
            assert_eq!(again.report.headline(), Some("commutes"), "{args:?}: {}", w.label);
            checked += 1;
        }
    }
    assert!(checked >= 8, "only {checked} witnesses re-checked");
}

#[test]
fn echoed_inputs_reparse() {
    let out = run_args(&["lnd", "--dx", "(x+y)^2", "--dy", "3/4 - x"]);
    let echoed = &out.report.inputs["derivation"];
    let inner = echoed.trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(", ").collect();
    assert_eq!(parse_poly(parts[0], 2).unwrap(), parse_poly("(x+y)^2", 2).unwrap());
    assert_eq!(parse_poly(parts[1], 2).unwrap(), parse_poly("3/4 - x", 2).unwrap());
}

#[test]
fn parse_errors_carry_position() {
    let out = run_args(&["lnd", "--dx", "x + * y", "--dy", "0"]);
    assert_eq!(out.exit_code, 2);
    let e = out.report.error.unwrap();
    assert_eq!(e.kind, "parse");
    assert_eq!(e.position, Some(4));
}
