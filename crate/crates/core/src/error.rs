use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("size limit exceeded: {what} would exceed {cap} elements")]
    SizeLimit { what: String, cap: usize },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("group axiom failed: {0}")]
    GroupAxiom(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("λ_{0} not bijective")]
    LambdaNotBijective(usize),
    #[error("ρ_{0} not bijective")]
    RhoNotBijective(usize),
    #[error("braid at (x,y,z)=({0},{1},{2})")]
    Braid(usize, usize, usize),
    #[error("not a congruence: classes of {0} and {1} do not induce well-defined maps")]
    NotCongruence(usize, usize),
    #[error("brace compatibility fails at (a,b,c)=({0},{1},{2})")]
    Compatibility(usize, usize, usize),
    #[error("not an ideal: {0}")]
    NotIdeal(String),
    #[error("subset not invariant: element {x} leaves the subset under {map} of {a}")]
    NotInvariant { a: usize, x: usize, map: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypotheses violated: {}", .0.join("; "))]
    Rejected(Vec<String>),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn size_limit(what: impl Into<String>, cap: usize) -> Self {
        Error::SizeLimit { what: what.into(), cap }
    }
}
