//! End-to-end tests of the binary: exact bytes, JSON round-trips, exit codes.

use std::process::{Command, Output};

fn pdseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pdseq(args);
    assert!(out.status.success(), "{args:?}: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn env_output_matches_pinned_bytes() {
    assert_eq!(
        stdout(&["env", "bab"]),
        "E(2,2) = ababa, mu1 = a, mu2 = a\n"
    );
    assert_eq!(stdout(&["env", "a"]), "E(1,1) = a, mu1 = eps, mu2 = eps\n");
}

#[test]
fn gaps_output_matches_pinned_bytes() {
    assert_eq!(
        stdout(&["gaps", "aa", "--count", "2"]),
        "p=1 (a)^-1 | p=2 babab\n"
    );
}

#[test]
fn prefix_positions_and_theta() {
    assert_eq!(stdout(&["prefix", "16"]), "abaaabababaaabaa\n");
    assert_eq!(stdout(&["prefix", "0"]), "eps\n");
    assert_eq!(stdout(&["position", "bab", "3"]), "22\n");
    assert_eq!(stdout(&["theta", "1", "8"]), "abbaaabb\n");
    assert_eq!(stdout(&["theta", "2", "8"]), "abacacab\n");
}

#[test]
fn census_ranges_emit_csv() {
    assert_eq!(
        stdout(&["palindromes", "1..5"]),
        "n_or_N,value\n1,2\n2,1\n3,3\n4,0\n5,4\n"
    );
    assert_eq!(stdout(&["squares", "12"]), "7\n");
    assert_eq!(
        stdout(&["squares", "3..6"]),
        "n_or_N,value\n3,1\n4,1\n5,2\n6,3\n"
    );
}

#[test]
fn json_outputs_parse_and_round_trip() {
    let parsed: serde_json::Value =
        serde_json::from_str(&stdout(&["env", "bab", "--json"])).unwrap();
    assert_eq!(parsed["envelope"], "E(2,2)");
    assert_eq!(parsed["mu1"], "a");

    let gaps: serde_json::Value =
        serde_json::from_str(&stdout(&["gaps", "aa", "--count", "4", "--json"])).unwrap();
    assert_eq!(gaps[0]["kind"], "overlapped");
    assert_eq!(gaps[0]["signed_length"], -1);
    assert_eq!(gaps[3]["role"], "G4");
    // Every rendered gap parses back to an equal value.
    for entry in gaps.as_array().unwrap() {
        let gap: pdseq::Gap = serde_json::from_value(entry.clone()).unwrap();
        assert_eq!(
            gap.signed_length(),
            entry["signed_length"].as_i64().unwrap()
        );
    }

    let points: Vec<pdseq::CensusPoint> =
        serde_json::from_str(&stdout(&["palindromes", "1..3", "--json"])).unwrap();
    assert_eq!(points[2], pdseq::CensusPoint { n: 3, value: 3 });
}

#[test]
fn identical_invocations_are_byte_identical() {
    assert_eq!(
        stdout(&["gaps", "aab", "--count", "6"]),
        stdout(&["gaps", "aab", "--count", "6"])
    );
}

#[test]
fn small_verify_sweep_is_clean() {
    let out = pdseq(&[
        "verify",
        "--max-len",
        "8",
        "--prefix-pow",
        "10",
        "--max-p",
        "12",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "0 divergences\n");
}

#[test]
fn exit_codes_distinguish_failures() {
    // 3: a well-formed word that never occurs.
    assert_eq!(pdseq(&["env", "bb"]).status.code(), Some(3));
    // 2: malformed word.
    assert_eq!(pdseq(&["env", "abc"]).status.code(), Some(2));
    assert_eq!(pdseq(&["gaps", ""]).status.code(), Some(2));
    // 2: unknown subcommand (clap usage error).
    assert_eq!(pdseq(&["frobnicate"]).status.code(), Some(2));
    // 4: budget violation.
    assert_eq!(pdseq(&["prefix", "99999999999"]).status.code(), Some(4));
    // 2: bad range.
    assert_eq!(pdseq(&["palindromes", "9..2"]).status.code(), Some(2));
    assert_eq!(pdseq(&["theta", "3", "5"]).status.code(), Some(2));
}
