//! Exact computational machinery for graded multiplicities in the exterior
//! algebra of a simple Lie algebra.
//!
//! The crate builds, for any reduced irreducible root system A1..G2:
//! root-system combinatorics ([`rootsys`]), finite and affine Weyl groups
//! ([`weyl`]), the group algebra of the weight lattice over Q(q^{1/2}, t)
//! ([`groupalg`]), Demazure-Lusztig and G-operators of the affine Hecke
//! algebra ([`hecke`]), Macdonald/Cherednik scalar products ([`scalar`]),
//! Macdonald polynomials ([`macdonald`]) and the graded multiplicities
//! GM_lambda of V(0), V(theta_s), V(theta) in the exterior algebra,
//! computed by three independent routes ([`gradedmult`]).

pub mod coeff;
pub mod gradedmult;
pub mod groupalg;
pub mod hecke;
pub mod macdonald;
pub mod rootsys;
pub mod scalar;
pub mod verify;
pub mod weyl;
pub mod wpoly;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("denominator vanishes under the specialization t = q^(-{k}/2)")]
    SpecializationCollapse { k: u32 },
    #[error("expected integral powers of q, found q^({half}/2)")]
    FractionalQPower { half: i64 },
    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("element is not in the affine Weyl group W^a")]
    NotInAffineWeylGroup,
    #[error("root system {0} has no short roots")]
    SimplyLaced(String),
    #[error("negative multiplicity for weight {weight:?} at q^{degree}")]
    NegativeMultiplicity { weight: Vec<i64>, degree: i64 },
    #[error("non-zero remainder in exact character division")]
    NonZeroRemainder,
    #[error("result is not a polynomial in q: stray term q^({half}/2) t^{tpow}")]
    NonPolynomialResult { half: i64, tpow: i64 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
