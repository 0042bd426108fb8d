mod common;

use clifford_cli::parser::parse;
use common::{check_typed, fuzz_inputs};

#[test]
fn random_bytes_yield_typed_errors() {
    for input in fuzz_inputs(1000, 0x5eed) {
        check_typed(&input).unwrap();
    }
}

#[test]
fn hostile_inputs() {
    let long_sum = vec!["e1"; 5000].join(" + ");
    let cases = [
        "(".repeat(10_000),
        ")".repeat(100),
        "-".repeat(10_000),
        "~!".repeat(5000),
        format!("{}e1{}", "(".repeat(63), ")".repeat(63)),
        long_sum,
        vec!["e1"; 511].join(" "),
        "9".repeat(400),
        "e99999999999999999999999".into(),
        "exp(exp(exp(exp(e1))))".into(),
        "inv(0)".into(),
        "grade(e1, 99999999999)".into(),
        "a = ".into(),
        "= e1".into(),
        "\u{0}\u{7f}\u{feff}".into(),
        "e1\te2\r".into(),
        "é1 ∧ e2".into(),
        "point(1,2)".into(),
        "translator(e1, 0, 0)".into(),
        "x".repeat(100_000),
    ];
    for c in &cases {
        check_typed(c).unwrap();
    }
}

#[test]
fn errors_carry_columns() {
    let err = parse("e1 + * e2", 3).unwrap_err();
    assert_eq!(err.column, 6);
    let err = parse("e1 e4", 3).unwrap_err();
    assert_eq!(err.column, 4);
    let err = parse("(e1", 3).unwrap_err();
    assert_eq!(err.column, 4);
}
