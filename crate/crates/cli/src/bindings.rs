//! JSON files of named multivectors: `{"name": <multivector>, ...}`.

use std::collections::BTreeMap;

use clifford_core::Multivector;

use crate::error::CliError;
use crate::session::Session;

pub fn export(session: &Session) -> Result<String, CliError> {
    serde_json::to_string_pretty(session.vars())
        .map_err(|e| CliError::Eval(crate::error::EvalError::new(0, e.to_string())))
}

/// Load bindings into `session`. The session adopts the file's signature,
/// which must be shared by every entry.
pub fn import(session: &mut Session, text: &str) -> Result<usize, CliError> {
    let vars: BTreeMap<String, Multivector> =
        serde_json::from_str(text).map_err(|e| CliError::Io(format!("bad bindings file: {e}")))?;
    let mut sigs = vars.values().map(Multivector::sig);
    if let Some(first) = sigs.next() {
        if sigs.any(|s| s != first) {
            return Err(CliError::Io("bindings mix several signatures".into()));
        }
        session.set_signature(first);
    }
    for (name, value) in &vars {
        session.bind(name, value.clone())?;
    }
    Ok(vars.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_signature;

    #[test]
    fn round_trip() {
        let mut s = Session::new(parse_signature("3,0,0").unwrap());
        s.run("a = 0.1 + e12").unwrap();
        s.run("b = 1/3").ok();
        s.run("c = 2e3 - e123").unwrap();
        let text = export(&s).unwrap();
        let mut t = Session::new(parse_signature("2,0,0").unwrap());
        assert_eq!(import(&mut t, &text).unwrap(), 2);
        assert_eq!(t.signature(), s.signature());
        assert_eq!(t.vars(), s.vars());
    }

    #[test]
    fn rejects_mixed_or_bad_files() {
        let mut s = Session::new(parse_signature("3,0,0").unwrap());
        let mixed = r#"{"a":{"signature":[2,0,0],"coeffs":{}},"b":{"signature":[3,0,0],"coeffs":{}}}"#;
        assert!(import(&mut s, mixed).is_err());
        assert!(import(&mut s, "[1,2]").is_err());
        let reserved = r#"{"pi":{"signature":[2,0,0],"coeffs":{}}}"#;
        assert!(import(&mut s, reserved).is_err());
    }
}
