//! Exit-code contract of the `fullfield` binary.

use std::process::Command;

use fullfield_core::fusion_data::{builtin_category, emit_category, Builtin};
use fullfield_core::C64;

fn code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_fullfield")).args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn passing_suites_exit_zero() {
    assert_eq!(code(&["verify-category", "builtin:fibonacci"]), 0);
    assert_eq!(code(&["operad-check", "--exact", "--trials", "5"]), 0);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["verify-category"]), 1);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&["verify-category", "builtin:nope"]), 2);
    assert_eq!(code(&["verify-category", "/nonexistent/category.json"]), 2);
    assert_eq!(code(&["verify-category", "builtin:fibonacci", "--exact"]), 2);
}

#[test]
fn failed_verification_exits_three() {
    let d = builtin_category(Builtin::Fibonacci);
    let bad = d.with_r_scaled(1, 1, d.unit(), C64::new(-1.0, 0.0)).unwrap();
    let path = std::env::temp_dir().join(format!("fullfield-corrupt-{}.json", std::process::id()));
    std::fs::write(&path, emit_category(&bad)).unwrap();
    let c = code(&["verify-category", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(c, 3);
}
