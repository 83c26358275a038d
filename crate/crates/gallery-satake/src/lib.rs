//! Galleries, root operators and Satake combinatorics for residually split
//! groups over local fields, in exact arithmetic.

pub mod acceptance;
pub mod characters;
pub mod coxeter;
pub mod crystal;
pub mod gallery;
pub mod hecke;
pub mod linalg;
pub mod mvcells;
pub mod poly;
pub mod presets;
pub mod rootdata;

pub type Q = num_rational::Rational64;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coinvariant lattice has torsion: elementary divisors {0:?}")]
    Torsion(Vec<i64>),
    #[error("preset error: {0}")]
    Preset(String),
    #[error("parabolic subgroup of type {0:#b} is infinite")]
    Infinite(u32),
    #[error("gallery is not positively folded")]
    NotPositivelyFolded,
    #[error("negative multiplicity {mult} at weight {weight:?}")]
    NegativeMultiplicity { weight: Vec<i64>, mult: i64 },
    #[error("non-integral twist exponent {0} at weight {1:?}")]
    HalfIntegerTwist(String, Vec<i64>),
    #[error("negative exponent q^{0} cannot be specialized at q = 0")]
    NegativeExponent(i32),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
