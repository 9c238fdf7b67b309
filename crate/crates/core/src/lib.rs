//! Decoding Reed-Muller codes beyond half the minimum distance from
//! syndromes.

pub mod field;
pub mod jennrich;
pub mod linalg;
pub mod multilinear;
pub mod poly;
pub mod polyspace;
pub mod rm;
