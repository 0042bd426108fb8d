//! Shared corpora for the integration tests.

#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};

use clifford_cli::{parse_signature, CliError, Session};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `(signature, input, expected output)`.
pub const GOLDEN: [(&str, &str, &str); 50] = [
    ("2,0,0", "e1 e2", "e12"),
    ("2,0,0", "e12 e12", "-1"),
    ("2,0,0", "e1 e12", "e2"),
    ("2,0,0", "e12 e1", "-e2"),
    ("2,0,0", "e1 e2 e1", "-e2"),
    ("2,0,0", "~(e1 e2)", "-e12"),
    ("2,0,0", "grade(e1*e12, 1)", "e2"),
    ("2,0,0", "exp(0.5*3.14159265*e12)", "e12"),
    ("2,0,0", "(1 + e1)(1 - e1)", "0"),
    ("2,0,0", "inv(e1 + e2)", "0.5e1 + 0.5e2"),
    ("2,0,0", "norm(3e1 + 4e2)", "5"),
    ("2,0,0", "e1 <| e12", "e2"),
    ("2,0,0", "e12 |> e2", "e1"),
    ("2,0,0", "(e1 + 2e2) % (3e1 - e2)", "1"),
    ("2,0,0", "exp(0.5 pi e12)", "e12"),
    ("3,0,0", "(e1^e2).dual", "e3"),
    ("3,0,0", "meet(e1^e2, e2^e3)", "e2"),
    ("3,0,0", "join(e12, e23)", "e123"),
    ("3,0,0", "project(e1 + e3 + e12 + e23, e12)", "e1 + e12"),
    ("3,0,0", "reject(e1 + e3, e12)", "e3"),
    ("3,0,0", "e1 <| (I e2)", "-e3"),
    ("3,0,0", "I I", "-1"),
    ("3,0,0", "e31", "-e13"),
    ("3,0,0", "e123 e1", "e23"),
    ("3,0,0", "!(1 + e1 + e12 + e123)", "1 - e1 + e12 - e123"),
    ("3,0,0", "conj(1 + e1 + e12 + e123)", "1 - e1 - e12 + e123"),
    ("3,0,0", "rev(1 + e1 + e12 + e123)", "1 + e1 - e12 - e123"),
    ("3,0,0", "invol(e1 + e12)", "-e1 + e12"),
    ("3,0,0", "undual(e3)", "e12"),
    ("3,0,0", "dual(e1)", "-e23"),
    ("3,0,0", "reflect(e1 + e2, e1)", "-e1 + e2"),
    ("3,0,0", "apply(exp(-0.25 pi e12), e1)", "-e2"),
    ("3,0,0", "(e1 + e2) ^ (e2 + e3)", "e12 + e13 + e23"),
    ("3,0,0", "(e1 + e2)(e1 - e2)", "-2e12"),
    ("3,0,0", "2(e1 + e2) - 3e3", "2e1 + 2e2 - 3e3"),
    ("3,0,0", "grade(1 + e1 + e12 + e123, 2)", "e12"),
    ("3,0,0", "-e1 e2 e3", "-e123"),
    ("3,0,0", "inv(2 + e12)", "0.4 - 0.2e12"),
    ("3,0,0", "exp(e1)", "1.54308 + 1.1752e1"),
    ("3,0,0", "e1 ^ e1", "0"),
    ("0,2,0", "e1 e1", "-1"),
    ("0,2,0", "inv(e1)", "-e1"),
    ("1,3,0", "e1 e1 + e2 e2", "0"),
    ("1,3,0", "e12 e12", "1"),
    ("1,3,0", "e23 e23", "-1"),
    ("2,0,1", "e3 e3", "0"),
    ("2,0,1", "(1 + e3)(1 - e3)", "1"),
    ("4,1,0", "apply(translator(1,0,0), point(0,0,0))", "e1 + e5"),
    ("4,1,0", "point(1,2,3) <| point(0,0,0)", "-7"),
    ("4,1,0", "einf eo + eo einf", "-2"),
];

/// Bytes that exercise the grammar more often than uniform noise would.
const ALPHABET: &[u8] = b"e0123456789 +-*^<|>%~!.,=()abcdefgijklmnopqrstuvwxyzIE_";

/// `count` random byte strings, decoded lossily as UTF-8.
pub fn fuzz_inputs(count: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let len = rng.gen_range(0..40);
            let bytes: Vec<u8> = (0..len)
                .map(|_| if i % 2 == 0 { rng.gen() } else { ALPHABET[rng.gen_range(0..ALPHABET.len())] })
                .collect();
            String::from_utf8_lossy(&bytes).into_owned()
        })
        .collect()
}

/// Evaluate `input` in a few algebras; success or a positioned syntax or
/// evaluation error are acceptable, anything else is described in `Err`.
pub fn check_typed(input: &str) -> Result<(), String> {
    for sig in ["3,0,0", "4,1,0", "2,0,1"] {
        let mut session = Session::new(parse_signature(sig).unwrap());
        let outcome = catch_unwind(AssertUnwindSafe(|| session.run(input)))
            .map_err(|_| format!("panic on {input:?} in {sig}"))?;
        match outcome {
            Ok(_) => {}
            Err(CliError::Syntax(e)) if e.column >= 1 => {}
            Err(CliError::Eval(e)) if e.column >= 1 => {}
            Err(e) => return Err(format!("untyped error on {input:?} in {sig}: {e:?}")),
        }
    }
    Ok(())
}
