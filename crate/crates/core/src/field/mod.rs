//! Finite fields: prime fields `F_p`, binary extensions `F_{2^k}` with
//! bit-packed elements, and general extensions `F_{p^k}`.
//!
//! All three share the [`Field`] trait. Field values are small descriptors
//! (cheap to clone, immutable) and elements are `Copy` handles, so matrices
//! and polynomials can be generic over the field without lifetimes.

mod binary;
mod ext;
pub mod factor;
mod prime;

pub use binary::BinaryField;
pub use ext::ExtField;
pub use prime::PrimeField;

use std::fmt;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::factor::{factor_u128, FactorBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} cannot be represented")]
    TooLarge { p: u64, k: u32 },
    #[error("field modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("order factorization too large: {0}")]
    OrderFactorizationTooLarge(String),
}

/// JSON form of a field: `{"p": .., "k": .., "modulus": [lowest-first]}`.
///
/// Prime fields use `k = 1` and the modulus `[0, 1]` (the polynomial `X`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
}

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Degree over the prime subfield.
    fn degree(&self) -> u32;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    /// Image of the integer `v` in the prime subfield.
    fn from_int(&self, v: u64) -> Self::Elem;
    /// The integer representative if `a` lies in the prime subfield.
    fn to_prime(&self, a: Self::Elem) -> Option<u64>;

    /// Coefficients over the prime field, lowest first, length `degree()`.
    fn to_coeffs(&self, a: Self::Elem) -> Vec<u64>;
    fn from_coeffs(&self, coeffs: &[u64]) -> Self::Elem;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Reduction polynomial over the prime field, monic, lowest first.
    fn modulus(&self) -> Vec<u64>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn is_gf2(&self) -> bool {
        self.characteristic() == 2 && self.degree() == 1
    }

    /// Number of elements, `p^k`.
    fn order(&self) -> u128 {
        (self.characteristic() as u128).pow(self.degree())
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    fn pow(&self, a: Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    fn frobenius(&self, a: Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u128)
    }

    /// The element whose base-`p` digits (lowest first) are its coefficients.
    fn element_at(&self, index: u128) -> Self::Elem {
        let p = self.characteristic() as u128;
        let mut rest = index;
        let coeffs: Vec<u64> = (0..self.degree())
            .map(|_| {
                let d = (rest % p) as u64;
                rest /= p;
                d
            })
            .collect();
        self.from_coeffs(&coeffs)
    }

    /// Inverse of [`Field::element_at`].
    fn index_of(&self, a: Self::Elem) -> u128 {
        let p = self.characteristic() as u128;
        self.to_coeffs(a)
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.characteristic(),
            k: self.degree(),
            modulus: self.modulus(),
        }
    }
}

/// Deterministic search for a generator of the multiplicative group.
///
/// Candidates are tried in [`Field::element_at`] order. The group order
/// `p^k - 1` is factored under `budget`; if that fails the caller gets
/// [`FieldError::OrderFactorizationTooLarge`].
pub fn find_primitive_element<F: Field>(
    field: &F,
    budget: &FactorBudget,
) -> Result<F::Elem, FieldError> {
    let n = field.order() - 1;
    let factors = factor_u128(n, budget)
        .map_err(|e| FieldError::OrderFactorizationTooLarge(e.to_string()))?;
    let one = field.one();
    let mut idx: u128 = 1;
    loop {
        let g = field.element_at(idx);
        if factors.iter().all(|&(q, _)| field.pow(g, n / q) != one) {
            return Ok(g);
        }
        idx += 1;
    }
}

/// Multiplicative order of a nonzero element, using the factorization of
/// `p^k - 1`.
pub fn multiplicative_order<F: Field>(
    field: &F,
    a: F::Elem,
    budget: &FactorBudget,
) -> Result<u128, FieldError> {
    let n = field.order() - 1;
    let factors = factor_u128(n, budget)
        .map_err(|e| FieldError::OrderFactorizationTooLarge(e.to_string()))?;
    let one = field.one();
    let mut order = n;
    for (q, mult) in factors {
        for _ in 0..mult {
            if order % q == 0 && field.pow(a, order / q) == one {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}
