//! Exit-code contract: 0 pass, 1 domain failure, 2 oracle disagreement, 3 undecided or cap hit.

use ybe_core::Error;

pub const PASS: i32 = 0;
pub const DOMAIN: i32 = 1;
pub const DISAGREEMENT: i32 = 2;
pub const UNDECIDED: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn domain(message: impl Into<String>) -> Self {
        Failure { code: DOMAIN, message: message.into() }
    }

    pub fn undecided(message: impl Into<String>) -> Self {
        Failure { code: UNDECIDED, message: message.into() }
    }

    pub fn disagreement(message: impl Into<String>) -> Self {
        Failure { code: DISAGREEMENT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undecided(_) | Error::SizeLimit { .. } => UNDECIDED,
            _ => DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}
