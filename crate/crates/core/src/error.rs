/// Errors raised while reading model and graph files. Line numbers are 1-based;
/// line 0 refers to the file as a whole.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate interval id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: interval `{id}` has begin {start} >= end {end}")]
    EmptyInterval {
        line: usize,
        id: String,
        start: f64,
        end: f64,
    },
}

impl ParseError {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        ParseError::Malformed {
            line,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Malformed { line, .. }
            | ParseError::DuplicateId { line, .. }
            | ParseError::EmptyInterval { line, .. } => *line,
        }
    }
}
