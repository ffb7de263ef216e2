use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("row {0} of the constraint matrix is zero")]
    ZeroRow(usize),

    #[error("objective vector is zero")]
    ZeroObjective,

    #[error("matrix is singular")]
    Singular,

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("matrix is rank deficient (rank {rank} < {required})")]
    RankDeficient { rank: usize, required: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not integral")]
    NotIntegral,

    #[error("enumeration of {count} subsets exceeds the guard of {limit}")]
    GuardExceeded { count: u128, limit: u128 },

    #[error("point is infeasible for row {0}")]
    Infeasible(usize),

    #[error("unbounded edge encountered from basis position {0}; was the polytope bounded?")]
    UnboundedEdge(usize),

    #[error("phase 1 solution is not certified optimal")]
    Uncertified,

    #[error("no certified optimum after {0} doublings of phi")]
    IterationGuard(u32),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
