use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{kind} error at {line}:{col}: {message}")]
    Parse { kind: ParseErrorKind, line: usize, col: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    Semantic,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Semantic => "semantic",
        })
    }
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UndeclaredGenerator(_) => "E_UNDECLARED",
            Error::Degree(_) => "E_DEGREE",
            Error::Shape(_) => "E_SHAPE",
            Error::NotACycle(_) => "E_NOT_CYCLE",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Parse { kind: ParseErrorKind::Lexical, .. } => "E_LEX",
            Error::Parse { kind: ParseErrorKind::Syntax, .. } => "E_SYNTAX",
            Error::Parse { kind: ParseErrorKind::Semantic, .. } => "E_SEMANTIC",
            Error::UnknownName(_) => "E_UNKNOWN",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
