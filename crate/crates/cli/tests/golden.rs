mod common;

use common::{check_case, fixture, golden_path, run, CASES};
use cryptologic_cli::report::Report;
use cryptologic_cli::spec::parse_spec;

#[test]
fn fixtures_match_golden_reports() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn golden_reports_round_trip() {
    for case in CASES {
        let text = std::fs::read_to_string(golden_path(case.golden)).unwrap();
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text, "{}", case.golden);
        assert_eq!(report.exit_code(), case.exit, "{}", case.golden);
    }
}

#[test]
fn reports_are_byte_stable() {
    let case = CASES.iter().find(|c| c.golden == "game_elgamal_cca").unwrap();
    let args = common::case_args(case);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (_, first, _) = run(&refs, true);
    let (_, second, _) = run(&refs, true);
    assert_eq!(first, second);
}

#[test]
fn otp_fixture_has_three_fields_and_four_views() {
    let spec = parse_spec(&fixture("otp.json")).unwrap();
    assert_eq!(spec.schema().unwrap().field_names(), ["k", "m", "c"]);
    assert_eq!(spec.views().unwrap().len(), 4);
}

#[test]
fn human_output() {
    let expect = |args: &[&str], code: i32, needles: &[&str]| {
        let (c, out, _) = run(args, false);
        assert_eq!(c, code, "{args:?}\n{out}");
        for n in needles {
            assert!(out.contains(n), "{args:?} lacks {n:?}:\n{out}");
        }
        assert!(out.contains("time: "), "{out}");
    };
    expect(&["check", "fixtures/otp.json"], 0, &["IT-SEC: holds"]);
    expect(
        &["check", "fixtures/vernam_j2.json"],
        10,
        &["witness c=00, m=00: posterior 1/2, prior 1/4"],
    );
    expect(&["game", "fixtures/vernam_plus_bit_cpa.json"], 10, &["success 1/1"]);
    expect(&["game", "fixtures/elgamal_cca.json"], 10, &["success 1/1"]);
    expect(&["game", "fixtures/otp_cpa_corpus.json"], 0, &["192 attackers, success 1/2"]);
    expect(&["muddy", "fixtures/muddy_classical.json"], 0, &["round 2: all know"]);
    let (c, _, err) = run(&["muddy", "fixtures/muddy_too_many.json"], false);
    assert_eq!(c, 2);
    assert!(err.contains("maximum is 6"), "{err}");
    let (c, _, err) = run(&["check", "fixtures/bad_distribution.json"], false);
    assert_eq!(c, 2);
    assert!(err.contains("\"m\"") && err.contains("9/8"), "{err}");
}

#[test]
fn json_output_has_no_timing_or_floats() {
    for case in CASES {
        let text = std::fs::read_to_string(golden_path(case.golden)).unwrap();
        assert!(!text.contains("time"), "{}", case.golden);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["spec_version"], 1);
        let mut stack = vec![&value];
        while let Some(v) = stack.pop() {
            match v {
                serde_json::Value::Number(n) => assert!(n.is_u64(), "{}: {n}", case.golden),
                serde_json::Value::Array(items) => stack.extend(items),
                serde_json::Value::Object(map) => stack.extend(map.values()),
                _ => {}
            }
        }
    }
}

#[test]
fn bad_flags_exit_2() {
    let (c, _, _) = run(&["game", "fixtures/otp_cpa_corpus.json", "--coin-bias", "3/2"], true);
    assert_eq!(c, 2);
    let (c, _, _) = run(&["game", "fixtures/otp_cpa_corpus.json", "--coin-bias", "0"], true);
    assert_eq!(c, 2);
    let (c, _, _) = run(&["check", "fixtures/otp.json", "--inner-mode", "sideways"], false);
    assert_eq!(c, 2);
    let (c, _, _) = run(&["check", "fixtures/does_not_exist.json"], false);
    assert_eq!(c, 2);
}
