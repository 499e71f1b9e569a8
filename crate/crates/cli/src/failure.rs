use std::process::ExitCode;

use enriched_ph::io::to_pretty;
use enriched_ph::{Error, ErrorClass};
use serde_json::{json, Value};

/// A failed command: exit status, message for stderr and, for rejected
/// incarnations or operators, a verdict with its witness for stdout.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub verdict: Option<Value>,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), verdict: None }
    }

    pub fn report(self) -> ExitCode {
        if let Some(v) = &self.verdict {
            print!("{}", to_pretty(v));
        }
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}

/// The offending names of an error, when it carries any.
pub fn witness(e: &Error) -> Value {
    match e {
        Error::NotAnOperation { op, measurement } => json!({ "op": op, "measurement": measurement }),
        Error::Equivariance { measurement, op, lhs, rhs } => {
            json!({ "measurement": measurement, "op": op, "lhs": lhs, "rhs": rhs })
        }
        Error::NotInvariant { point, op } => json!({ "point": point, "op": op }),
        Error::RelationViolation { omega, omega_prime, left, right } => {
            json!({ "omega": omega, "omega_prime": omega_prime, "left": left, "right": right })
        }
        Error::CoincidenceViolation { omega, g, omega_prime, h } => {
            json!({ "omega": omega, "g": g, "omega_prime": omega_prime, "h": h })
        }
        Error::NotABasis(names) => json!({ "basis": names }),
        Error::NotHomomorphism { g, h } => json!({ "g": g, "h": h }),
        Error::KindMismatch(what) | Error::CopairConflict(what) => json!({ "detail": what }),
        _ => Value::Null,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, verdict) = match e.class() {
            ErrorClass::Input => (2, None),
            ErrorClass::Incarnation => (3, Some(json!({ "valid": false, "error": e.to_string(), "witness": witness(&e) }))),
            ErrorClass::Hypothesis => (4, Some(json!({ "valid": false, "error": e.to_string(), "witness": witness(&e) }))),
            ErrorClass::Internal => (1, None),
        };
        Failure { code, message: e.to_string(), verdict }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::input(e.to_string())
    }
}
