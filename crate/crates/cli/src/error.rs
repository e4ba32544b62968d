use lcbv_core::LcError;

/// Failure of a CLI run, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("numeric: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<LcError> for CliError {
    fn from(e: LcError) -> Self {
        match e {
            LcError::Numeric(_) | LcError::Resolution(_) | LcError::Io(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("io: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Check("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(LcError::Domain("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(LcError::Resolution("x".into())).exit_code(), 3);
    }
}
