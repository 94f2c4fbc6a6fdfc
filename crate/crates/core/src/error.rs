use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("invalid partition {0:?}: parts must be positive and nonempty")]
    InvalidPartition(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("base surface has genus 0; the parity criterion needs positive genus")]
    InvalidGenus,
    #[error("base surface has no boundary component")]
    NoBoundary,
    #[error("cover spec does not fit the base surface: {0}")]
    SpecMismatch(String),
    #[error("no cover exists: {boundary_components} boundary components vs d·χ = {degree_times_chi} have different parity")]
    Infeasible {
        boundary_components: usize,
        degree_times_chi: i64,
    },
    #[error("search exhausted after {samples} samples without a connected realization")]
    SearchExhausted { samples: u64 },
    #[error("generator images do not satisfy the surface relator")]
    RelatorViolation,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("enumeration needs {required} tuples but the budget is {cap}")]
    BudgetExceeded { required: String, cap: u64 },
    #[error("malformed representation: {0}")]
    MalformedRep(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("input is not a simple surface amalgam")]
    NotSimple,
    #[error("need at least 3 pieces, got {0}")]
    TooFewPieces(usize),
    #[error("Euler characteristic {0} must be even and at most -2")]
    InvalidChi(i64),
    #[error("D - d = {difference} is not a positive multiple of {modulus}")]
    NotDivisible { difference: i128, modulus: i128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow while building the construction")]
    Overflow,
    #[error("cover is not a double cover of the expected shape: {0}")]
    NotDoubleCover(String),
    #[error("embedding witness check `{0}` failed")]
    WitnessInvariantViolation(String),
    #[error("constructed cover failed verification: {0}")]
    Verification(String),
    #[error("realizing piece `{piece}`: {source}")]
    Realization {
        piece: String,
        #[source]
        source: CoverError,
    },
}
