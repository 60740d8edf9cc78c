use thiserror::Error;

/// Errors reported by ballot validation, winner selection and the
/// simulation configuration checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("election must have at least one candidate")]
    NoCandidates,

    #[error("duplicate candidate name '{0}'")]
    DuplicateCandidate(String),

    #[error("norm must be positive and finite, got {0}")]
    InvalidNorm(f64),

    #[error("ballot {ballot} has {got} scores but the election has {expected} candidates")]
    BallotLength {
        ballot: usize,
        got: usize,
        expected: usize,
    },

    #[error("ballot has no scores")]
    EmptyBallot,

    #[error("{}score for candidate {candidate} is not finite", fmt_ballot(.ballot))]
    NonFiniteScore {
        ballot: Option<usize>,
        candidate: usize,
    },

    #[error("{}score magnitudes sum to {actual}, expected norm {norm}", fmt_ballot(.ballot))]
    NormViolation {
        ballot: Option<usize>,
        actual: f64,
        norm: f64,
    },

    #[error("unknown candidate index {index} (election has {count} candidates)")]
    UnknownCandidate { index: usize, count: usize },

    #[error("no qualified candidate: every candidate drew more negative than positive votes")]
    NoQualifiedCandidate,

    #[error("{}candidates {a} and {b} have tied scores; ranking needs distinct scores", fmt_ballot(.ballot))]
    TiedScores {
        ballot: Option<usize>,
        a: usize,
        b: usize,
    },

    #[error("invalid metric parameters c={c}, b={b}: {reason}")]
    InvalidMetricParams { c: f64, b: f64, reason: &'static str },

    #[error("metric '{metric}' is outside the admissible region for {m} candidates (pass --force to run it anyway)")]
    NonAdmissibleMetric { metric: String, m: usize },

    #[error("invalid metric spec '{0}': expected w:<b>,<c>, exp, sqsum or power")]
    MetricSpec(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("failed to parse election JSON: {0}")]
    Json(String),
}

fn fmt_ballot(ballot: &Option<usize>) -> String {
    match ballot {
        Some(i) => format!("ballot {i}: "),
        None => String::new(),
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        // serde_json's Display includes line and column of the offending token.
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
