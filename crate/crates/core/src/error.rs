use thiserror::Error;

use crate::sigmacalc::ProfileViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sequence is not non-decreasing: entry {index} ({left}) > entry {} ({right})", index + 1)]
    Unsorted { index: usize, left: i64, right: i64 },
    #[error("counting profile is negative at degree {degree} (value {value})")]
    NegativeProfile { degree: i64, value: i64 },
    #[error("counting profile decreases at degree {degree} ({from} -> {to})")]
    DecreasingProfile { degree: i64, from: i64, to: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("derived rank is negative: ancestor rank {ancestor_rank} + eventual Σ {eventual}")]
    NegativeRank { ancestor_rank: u64, eventual: i64 },
    #[error("smoothness level m must be at least 1")]
    InvalidLevel,
    #[error("elements belong to different classes: ancestors {left:?} and {right:?}")]
    AncestorMismatch { left: String, right: String },
    #[error("two different descriptors share the name {name:?}")]
    AncestorCollision { name: String },
    #[error("elements carry different levels m = {left} and m = {right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("pointwise join of Σ functions is only available for m = 1 (got m = {m})")]
    JoinRequiresLevelOne { m: u32 },
    #[error("invalid descriptor {name:?}: {reason}")]
    InvalidDescriptor { name: String, reason: String },
    #[error("no ambient space is attached to ancestor {name:?}")]
    MissingAmbient { name: String },
    #[error("section count of {name:?} is not specified at degree {degree}")]
    UnspecifiedSections { name: String, degree: i64 },
    #[error("computed h0 is negative ({value}) at degree {degree}: inadmissible presentation")]
    NegativeHilbert { degree: i64, value: i128 },
    #[error("integer overflow while evaluating {what}")]
    Overflow { what: &'static str },
    #[error("inadmissible Σ profile: {0}")]
    Inadmissible(ProfileViolation),
    #[error("unknown ancestor {name:?}")]
    UnknownAncestor { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalityError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("rank of the ancestor ({rank_e}) is smaller than m ({m})")]
    RankBelowLevel { rank_e: u64, m: u32 },
    #[error("surjection has {available} twists but {needed} are required")]
    SurjectionTooSmall { needed: usize, available: usize },
    #[error(
        "the presentation must have no line-bundle summand on the ancestor side (b is nonempty)"
    )]
    NotAReduction,
    #[error("element has no presentation witness")]
    MissingPresentation,
    #[error("pool is empty")]
    EmptyPool,
    #[error("chain head violates the admissible lower bound at degree {degree}")]
    HeadBelowFloor { degree: i64 },
    #[error("window [{lower}, {upper}] is empty")]
    EmptyWindow { lower: i64, upper: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("reduction/extension sequence must be nonempty")]
    EmptySequence,
    #[error("target is not below the start element at degree {degree}")]
    TargetNotBelow { degree: i64 },
    #[error("height of elementary biliaison overflows")]
    HeightOverflow,
}

impl SeqError {
    /// Stable snake_case identifier for machine consumers.
    pub fn code(&self) -> &'static str {
        match self {
            SeqError::Unsorted { .. } => "unsorted",
            SeqError::NegativeProfile { .. } => "negative_profile",
            SeqError::DecreasingProfile { .. } => "decreasing_profile",
        }
    }
}

impl ClassError {
    pub fn code(&self) -> &'static str {
        match self {
            ClassError::NegativeRank { .. } => "negative_rank",
            ClassError::InvalidLevel => "invalid_level",
            ClassError::AncestorMismatch { .. } => "ancestor_mismatch",
            ClassError::AncestorCollision { .. } => "ancestor_collision",
            ClassError::LevelMismatch { .. } => "level_mismatch",
            ClassError::JoinRequiresLevelOne { .. } => "join_requires_level_one",
            ClassError::InvalidDescriptor { .. } => "invalid_descriptor",
            ClassError::MissingAmbient { .. } => "missing_ambient",
            ClassError::UnspecifiedSections { .. } => "unspecified_sections",
            ClassError::NegativeHilbert { .. } => "negative_hilbert",
            ClassError::Overflow { .. } => "overflow",
            ClassError::Inadmissible(_) => "inadmissible",
            ClassError::UnknownAncestor { .. } => "unknown_ancestor",
        }
    }
}

impl MinimalityError {
    pub fn code(&self) -> &'static str {
        match self {
            MinimalityError::Class(e) => e.code(),
            MinimalityError::RankBelowLevel { .. } => "rank_below_level",
            MinimalityError::SurjectionTooSmall { .. } => "surjection_too_small",
            MinimalityError::NotAReduction => "not_a_reduction",
            MinimalityError::MissingPresentation => "missing_presentation",
            MinimalityError::EmptyPool => "empty_pool",
            MinimalityError::HeadBelowFloor { .. } => "head_below_floor",
            MinimalityError::EmptyWindow { .. } => "empty_window",
        }
    }
}

impl MoveError {
    pub fn code(&self) -> &'static str {
        match self {
            MoveError::Class(e) => e.code(),
            MoveError::EmptySequence => "empty_sequence",
            MoveError::TargetNotBelow { .. } => "target_not_below",
            MoveError::HeightOverflow => "height_overflow",
        }
    }
}
