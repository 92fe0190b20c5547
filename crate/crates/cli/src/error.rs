use std::io;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] cyclic_sort::Error),
    #[error("{0}")]
    Usage(String),
    /// A request over a default cap or the memory budget.
    #[error("{0}")]
    Refused(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    /// A verification suite reported failures; the report is already out.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(cyclic_sort::Error::Resource(_)) | CliError::Refused(_) => 3,
            CliError::Lib(_) | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) | CliError::Failed(_) => 1,
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let parse = cyclic_sort::Permutation::new(&[1, 1]).unwrap_err();
        assert_eq!(CliError::Lib(parse).exit_code(), 2);
        assert_eq!(
            CliError::Lib(cyclic_sort::Error::Resource("x".into())).exit_code(),
            3
        );
        assert_eq!(CliError::Refused("x".into()).exit_code(), 3);
        assert_eq!(CliError::Failed("x".into()).exit_code(), 1);
    }
}
