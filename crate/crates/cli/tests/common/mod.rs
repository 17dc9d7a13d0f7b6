//! Shipped fixtures, the command line each is run with, and the exit code
//! it must produce. Reports are pinned under `tests/golden/`.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub golden: &'static str,
    pub args: &'static [&'static str],
    pub fixture: &'static str,
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { golden: "check_otp", args: &["check"], fixture: "otp.json", exit: 0 },
    Case { golden: "check_otp_system", args: &["check"], fixture: "otp_system.json", exit: 0 },
    Case { golden: "check_vernam_j2", args: &["check"], fixture: "vernam_j2.json", exit: 10 },
    Case { golden: "check_group_queries", args: &["check"], fixture: "group_queries.json", exit: 10 },
    Case { golden: "check_group_queries_objective", args: &["check", "--inner-mode", "objective"], fixture: "group_queries.json", exit: 10 },
    Case { golden: "check_bad_distribution", args: &["check"], fixture: "bad_distribution.json", exit: 2 },
    Case { golden: "check_malformed", args: &["check"], fixture: "malformed.json", exit: 2 },
    Case { golden: "check_otp_capped", args: &["check", "--max-states", "10"], fixture: "otp.json", exit: 2 },
    Case { golden: "eval_otp_attacker", args: &["eval", "--query", "attacker-sees-prior"], fixture: "otp.json", exit: 0 },
    Case { golden: "eval_group_observer", args: &["eval", "--query", "observer-knows-exponent"], fixture: "group_queries.json", exit: 10 },
    Case { golden: "eval_unknown_query", args: &["eval", "--query", "nope"], fixture: "otp.json", exit: 2 },
    Case { golden: "game_vernam_plus_bit", args: &["game"], fixture: "vernam_plus_bit_cpa.json", exit: 10 },
    Case { golden: "game_elgamal_cca", args: &["game"], fixture: "elgamal_cca.json", exit: 10 },
    Case { golden: "game_otp_corpus", args: &["game"], fixture: "otp_cpa_corpus.json", exit: 0 },
    Case { golden: "game_otp_corpus_biased", args: &["game"], fixture: "otp_cpa_biased.json", exit: 0 },
    Case { golden: "game_otp_corpus_flag_bias", args: &["game", "--coin-bias", "2/5"], fixture: "otp_cpa_corpus.json", exit: 0 },
    Case { golden: "game_elgamal_ddh", args: &["game"], fixture: "elgamal_cpa_ddh.json", exit: 10 },
    Case { golden: "game_elgamal_blind", args: &["game"], fixture: "elgamal_cpa_blind.json", exit: 0 },
    Case { golden: "game_wrong_target", args: &["game"], fixture: "vernam_j2.json", exit: 2 },
    Case { golden: "muddy_classical", args: &["muddy"], fixture: "muddy_classical.json", exit: 0 },
    Case { golden: "muddy_noisy", args: &["muddy"], fixture: "muddy_noisy.json", exit: 0 },
    Case { golden: "muddy_too_many", args: &["muddy"], fixture: "muddy_too_many.json", exit: 2 },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[allow(dead_code)]
pub fn fixture(name: &str) -> PathBuf {
    crate_dir().join("fixtures").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{name}.json"))
}

/// Runs the binary from the crate directory so paths in reports are stable.
pub fn run(args: &[&str], json: bool) -> (i32, String, String) {
    let bin = Path::new(env!("CARGO_BIN_EXE_cryptologic"));
    let mut cmd = Command::new(bin);
    cmd.current_dir(crate_dir()).args(args);
    if json {
        cmd.arg("--json");
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

pub fn case_args(case: &Case) -> Vec<String> {
    let mut args: Vec<String> = vec![case.args[0].to_string(), format!("fixtures/{}", case.fixture)];
    args.extend(case.args[1..].iter().map(|s| s.to_string()));
    args
}

/// Compares one case against its golden report. Returns a description of
/// the first difference.
pub fn check_case(case: &Case) -> Result<(), String> {
    let args = case_args(case);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, stdout, _) = run(&refs, true);
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}", case.golden, case.exit));
    }
    let path = golden_path(case.golden);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stdout != golden {
        return Err(format!("{}: report differs from {}", case.golden, path.display()));
    }
    Ok(())
}
