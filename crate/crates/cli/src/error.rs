use thiserror::Error;

/// Failure of a CLI run, mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] hahn_lsq::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_THRESHOLD: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Core(e) if e.is_hypothesis_violation() => EXIT_THRESHOLD,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Core(_) => EXIT_CONFIG,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hahn_lsq::Error;

    #[test]
    fn exit_codes_are_distinct() {
        let threshold = CliError::from(Error::Threshold {
            required: 3.0,
            threshold: 2.0,
        });
        let numerical = CliError::from(Error::IllConditioned { condition: 1e13 });
        let config = CliError::Config("bad".into());
        let domain = CliError::from(Error::Parameter("alpha".into()));
        assert_eq!(threshold.exit_code(), 3);
        assert_eq!(numerical.exit_code(), 4);
        assert_eq!(config.exit_code(), 2);
        assert_eq!(domain.exit_code(), 2);
    }
}
