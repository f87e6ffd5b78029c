use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared symbol `{symbol}`{}", location(.line))]
    Undeclared { symbol: String, line: Option<usize> },
    #[error("duplicate declaration of `{symbol}`{}", location(.line))]
    Duplicate { symbol: String, line: Option<usize> },
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
    #[error("invalid grammar: {0}")]
    Invalid(String),
    #[error("epsilon right-hand side in production `{0}`; only a start -> eps copy-production is accepted")]
    EpsilonProduction(String),
    #[error("production `{0}` cannot be normalized: {1}")]
    NotNormalizable(String, &'static str),
    #[error("grammar is not in indexed normal form (run `normalize` first): {0}")]
    NotNormalForm(String),
    #[error("grammar is not in Chomsky normal form: {0}")]
    NotCnf(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("malformed flag string: {0}")]
    MalformedFlag(String),
    #[error("sample bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("generated name `{0}` collides with an existing symbol")]
    NameCollision(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0}")]
    Domain(String),
    #[error("witness replay failed at step {step}: {message}")]
    Replay { step: usize, message: String },
}

fn location(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" on line {l}"),
        None => String::new(),
    }
}
