use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. [`Error::code`] gives the stable
/// snake-case label used in CLI diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m = {m} is outside 1..={n}")]
    MOutOfRange { n: u32, m: u32 },
    #[error("dimension of the trivial summand must be even, got {0}")]
    OddTrivialDimension(u64),
    #[error("degree d must be at least 1")]
    DegreeZero,
    #[error("n must be at least 1")]
    RankZero,
    #[error("multiplicity N must be at least 1")]
    CopiesZero,
    #[error("at least one multiplicity N_m must be positive")]
    NoPrimarySummand,
    #[error("expected {expected} multiplicities N_1..N_n, got {got}")]
    MultiplicityLength { expected: usize, got: usize },
    #[error("half-spin part {part} does not match n = {n}")]
    HalfSpinMismatch { n: u32, part: &'static str },
    #[error("signature profile: {0}")]
    BadSignature(String),

    #[error("spin part {part} is not admissible for a space of dimension {dim_h}")]
    ParityMismatch { dim_h: u32, part: &'static str },
    #[error("spin representations need a space of dimension at least 3, got {0}")]
    SpinDimensionTooSmall(u32),
    #[error("explicit enumeration over {0} coordinates is too large")]
    EnumerationTooLarge(u32),
    #[error("projected weight {0} lies outside the admissible set")]
    UnexpectedWeight(String),
    #[error("scalar multiset is not symmetric under negation")]
    NotSymmetric,
    #[error("scalar {0} is not an integral sl2 weight")]
    NonIntegral(String),
    #[error("no complete sl2 string through highest weight {0}")]
    InconsistentString(String),

    #[error("quadratic form coefficient {0} is zero")]
    DegenerateForm(usize),
    #[error("basis mask {mask:#b} uses generators beyond {dim}")]
    MaskOutOfRange { mask: u32, dim: usize },
    #[error("Clifford kernel supports at most {max} generators, got {got}")]
    TooManyGenerators { max: usize, got: usize },

    #[error("rank {0} is not an integer")]
    NonIntegralRank(String),

    #[error("no points supplied")]
    EmptyInput,
    #[error("graded point rank must be positive")]
    ZeroRank,
    #[error("subobject rank {rank} exceeds total rank {total}")]
    RankExceedsTotal { rank: u64, total: u64 },
    #[error("two different degrees given at the total rank {0}")]
    ConflictingTotal(u64),
    #[error("cover degree must be at least 1")]
    CoverDegreeZero,
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u64),

    #[error("rank_u = {rank_u} exceeds genus {g}")]
    RankExceedsGenus { g: u64, rank_u: u64 },
    #[error("the primary criterion assumes no trivial summand, got dim_v0 = {0}")]
    V0NonzeroForPrimaryCriterion(u64),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MOutOfRange { .. } => "m_out_of_range",
            Error::OddTrivialDimension(_) => "odd_trivial_dimension",
            Error::DegreeZero => "degree_zero",
            Error::RankZero => "n_zero",
            Error::CopiesZero => "copies_zero",
            Error::NoPrimarySummand => "no_primary_summand",
            Error::MultiplicityLength { .. } => "multiplicity_length",
            Error::HalfSpinMismatch { .. } => "half_spin_mismatch",
            Error::BadSignature(_) => "bad_signature",
            Error::ParityMismatch { .. } => "parity_mismatch",
            Error::SpinDimensionTooSmall(_) => "spin_dimension_too_small",
            Error::EnumerationTooLarge(_) => "enumeration_too_large",
            Error::UnexpectedWeight(_) => "unexpected_weight",
            Error::NotSymmetric => "not_symmetric",
            Error::NonIntegral(_) => "non_integral",
            Error::InconsistentString(_) => "inconsistent_string",
            Error::DegenerateForm(_) => "degenerate_form",
            Error::MaskOutOfRange { .. } => "mask_out_of_range",
            Error::TooManyGenerators { .. } => "too_many_generators",
            Error::NonIntegralRank(_) => "non_integral_rank",
            Error::EmptyInput => "empty_input",
            Error::ZeroRank => "zero_rank",
            Error::RankExceedsTotal { .. } => "rank_exceeds_total",
            Error::ConflictingTotal(_) => "conflicting_total",
            Error::CoverDegreeZero => "cover_degree_zero",
            Error::GenusTooSmall(_) => "g_too_small",
            Error::RankExceedsGenus { .. } => "rank_exceeds_genus",
            Error::V0NonzeroForPrimaryCriterion(_) => "v0_nonzero_for_primary_criterion",
        }
    }
}
