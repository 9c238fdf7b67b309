use std::sync::Arc;

use rand::Rng;

use super::{Field, FieldError, PrimeField};
use crate::poly::{find_irreducible, is_irreducible, UniPoly};

/// Maximum supported extension degree (digits held on the stack).
const MAX_DIGITS: usize = 64;

/// `F_{p^k} = F_p[z]/(f)` with elements packed as base-`p` integers
/// `sum c_i p^i` (so `p^k` must fit in a `u64`).
///
/// Each element is a coefficient vector modulo `f`; products are reduced
/// eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    k: u32,
    /// Monic modulus, lowest first, length k + 1.
    modulus: Arc<[u64]>,
    order: u64,
}

impl ExtField {
    /// Field defined by the first irreducible in [`find_irreducible`] order.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        Self::check_size(p, k)?;
        let f = find_irreducible(&base, k);
        Self::build(base, k, f.coeffs().to_vec())
    }

    pub fn with_modulus(p: u64, coeffs: &[u64]) -> Result<Self, FieldError> {
        let base = PrimeField::new(p)?;
        let k = coeffs.len().saturating_sub(1) as u32;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        Self::check_size(p, k)?;
        let poly = UniPoly::new(&base, coeffs.iter().map(|&c| c % p).collect());
        if poly.degree() != Some(k as usize)
            || poly.leading() != Some(1)
            || !is_irreducible(&base, &poly).unwrap_or(false)
        {
            return Err(FieldError::BadModulus(k));
        }
        Self::build(base, k, poly.coeffs().to_vec())
    }

    /// Largest `k` for which `p^k` fits the packed representation.
    pub fn max_degree(p: u64) -> u32 {
        let mut k = 0u32;
        while (p as u128).pow(k + 1) <= u64::MAX as u128 && (k as usize) < MAX_DIGITS {
            k += 1;
        }
        k
    }

    fn check_size(p: u64, k: u32) -> Result<(), FieldError> {
        if k > Self::max_degree(p) {
            return Err(FieldError::TooLarge { p, k });
        }
        Ok(())
    }

    fn build(base: PrimeField, k: u32, modulus: Vec<u64>) -> Result<Self, FieldError> {
        let order = base.p().pow(k);
        Ok(Self {
            base,
            k,
            modulus: modulus.into(),
            order,
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    #[inline]
    fn unpack(&self, mut a: u64, out: &mut [u64; MAX_DIGITS]) {
        let p = self.base.p();
        for d in out.iter_mut().take(self.k as usize) {
            *d = a % p;
            a /= p;
        }
    }

    #[inline]
    fn pack(&self, digits: &[u64]) -> u64 {
        let p = self.base.p();
        digits
            .iter()
            .take(self.k as usize)
            .rev()
            .fold(0u64, |acc, &d| acc * p + d)
    }

    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.k as usize {
            da[i] = op(da[i], db[i]);
        }
        self.pack(&da)
    }
}

impl Field for ExtField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let f = &self.base;
        self.digitwise(a, b, |x, y| f.add(x, y))
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        let f = &self.base;
        self.digitwise(a, b, |x, y| f.sub(x, y))
    }

    fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let k = self.k as usize;
        let p = self.base.p();
        let mut da = [0u64; MAX_DIGITS];
        let mut db = [0u64; MAX_DIGITS];
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // Eager reduction by the monic modulus from the top down.
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus.iter().take(k).enumerate() {
                let t = (c * m) % p;
                prod[d - k + i] = self.base.sub(prod[d - k + i], t);
            }
        }
        self.pack(&prod[..k])
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.order as u128 - 2))
    }

    fn from_int(&self, v: u64) -> u64 {
        v % self.base.p()
    }

    fn to_prime(&self, a: u64) -> Option<u64> {
        (a < self.base.p()).then_some(a)
    }

    fn to_coeffs(&self, a: u64) -> Vec<u64> {
        let mut d = [0u64; MAX_DIGITS];
        self.unpack(a, &mut d);
        d[..self.k as usize].to_vec()
    }

    fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        let p = self.base.p();
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        self.pack(&reduced)
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.order)
    }

    fn modulus(&self) -> Vec<u64> {
        self.modulus.to_vec()
    }

    fn order(&self) -> u128 {
        self.order as u128
    }

    fn element_at(&self, index: u128) -> u64 {
        (index % self.order as u128) as u64
    }

    fn index_of(&self, a: u64) -> u128 {
        a as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_multiplication_table_closed_and_invertible() {
        let f = ExtField::new(3, 2).unwrap();
        for a in 1..9u64 {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
            for b in 0..9u64 {
                assert!(f.mul(a, b) < 9);
            }
        }
    }

    #[test]
    fn max_degree_bounds() {
        assert_eq!(ExtField::max_degree(2), 63);
        assert_eq!(ExtField::max_degree(3), 40);
        assert!(matches!(
            ExtField::new(3, 41),
            Err(FieldError::TooLarge { .. })
        ));
    }
}
