//! Command-line front end for `orefield-core`: an expression language,
//! scenario files, verification suites and their reports.

pub mod checks;
pub mod cli;
pub mod expr;
pub mod report;
pub mod scenario;

pub const EXIT_OK: u8 = 0;
/// Malformed expression or scenario file.
pub const EXIT_PARSE: u8 = 2;
/// Well-formed input that fails validation or cannot be evaluated.
pub const EXIT_VALIDATION: u8 = 3;
/// A requested check failed.
pub const EXIT_CHECK_FAILED: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        Self {
            code: EXIT_PARSE,
            message,
        }
    }

    pub fn validation(message: String) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message,
        }
    }

    pub fn internal(message: String) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}
