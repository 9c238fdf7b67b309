use std::sync::Arc;

use rand::Rng;

use super::{Field, FieldError, PrimeField};
use crate::poly::{find_irreducible, is_irreducible, UniPoly};

/// `F_{2^k}` for `1 <= k <= 127`, elements packed into the low `k` bits of a
/// `u128` (bit `i` is the coefficient of `z^i`).
///
/// Multiplication is a software carry-less product followed by table-driven
/// reduction: `reduce[pos][nibble]` holds the residue of the nibble placed at
/// bit `k + 4*pos`.
#[derive(Clone)]
pub struct BinaryField {
    k: u32,
    /// Full modulus including the `z^k` bit.
    modulus: u128,
    reduce: Arc<[[u128; 16]]>,
}

impl std::fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryField")
            .field("k", &self.k)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for BinaryField {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for BinaryField {}

#[inline]
fn clmul64(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16usize {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc = 0u128;
    for shift in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * shift)) & 0xf) as usize];
    }
    acc
}

/// Carry-less product of two `u128` values as `(hi, lo)`.
#[inline]
fn clmul128(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64, (a >> 64) as u64);
    let (b0, b1) = (b as u64, (b >> 64) as u64);
    let p0 = clmul64(a0, b0);
    let p2 = if a1 == 0 || b1 == 0 {
        0
    } else {
        clmul64(a1, b1)
    };
    let p1 =
        (if b1 == 0 { 0 } else { clmul64(a0, b1) }) ^ (if a1 == 0 { 0 } else { clmul64(a1, b0) });
    (p2 ^ (p1 >> 64), p0 ^ (p1 << 64))
}

impl BinaryField {
    /// Field defined by the first irreducible of degree `k` in the
    /// deterministic search order of [`find_irreducible`].
    pub fn new(k: u32) -> Result<Self, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if k > 127 {
            return Err(FieldError::TooLarge { p: 2, k });
        }
        let f2 = PrimeField::new(2).expect("2 is prime");
        let modulus = find_irreducible(&f2, k);
        Self::from_bits(k, bits_of(&modulus))
    }

    /// Field defined by a caller-supplied modulus given lowest-first.
    pub fn with_modulus(coeffs: &[u64]) -> Result<Self, FieldError> {
        let k = coeffs.len().saturating_sub(1) as u32;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if k > 127 {
            return Err(FieldError::TooLarge { p: 2, k });
        }
        let f2 = PrimeField::new(2).expect("2 is prime");
        let poly = UniPoly::new(&f2, coeffs.iter().map(|&c| c % 2).collect());
        if poly.degree() != Some(k as usize) || !is_irreducible(&f2, &poly).unwrap_or(false) {
            return Err(FieldError::BadModulus(k));
        }
        Self::from_bits(k, bits_of(&poly))
    }

    /// Builds the arithmetic for `modulus` without checking irreducibility.
    /// Used for arithmetic in `F_2[z]/(f)` with arbitrary `f`.
    pub(crate) fn from_bits(k: u32, modulus: u128) -> Result<Self, FieldError> {
        debug_assert!(k >= 1 && k <= 127);
        debug_assert_eq!(127 - modulus.leading_zeros(), k);
        let mask = (1u128 << k) - 1;
        // Residues of z^(k+j) for j in 0..k.
        let mut powers = Vec::with_capacity(k as usize);
        let mut x = modulus & mask; // z^k mod f
        for _ in 0..k {
            powers.push(x);
            x <<= 1;
            if (x >> k) & 1 == 1 {
                x ^= modulus;
            }
        }
        let positions = (k as usize).div_ceil(4);
        let mut reduce = vec![[0u128; 16]; positions];
        for (pos, table) in reduce.iter_mut().enumerate() {
            for nib in 1..16usize {
                let mut acc = 0u128;
                for bit in 0..4 {
                    let j = 4 * pos + bit;
                    if nib >> bit & 1 == 1 && j < k as usize {
                        acc ^= powers[j];
                    }
                }
                table[nib] = acc;
            }
        }
        Ok(Self {
            k,
            modulus,
            reduce: reduce.into(),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus_bits(&self) -> u128 {
        self.modulus
    }

    #[inline]
    fn mask(&self) -> u128 {
        (1u128 << self.k) - 1
    }

    /// Reduce a product of two reduced elements (degree <= 2k - 2).
    #[inline]
    fn reduce_wide(&self, hi: u128, lo: u128) -> u128 {
        let k = self.k;
        // high = product >> k, at most k - 1 bits.
        let high = (lo >> k) | (hi << (128 - k));
        let mut acc = lo & self.mask();
        let mut h = high;
        let mut pos = 0;
        while h != 0 {
            acc ^= self.reduce[pos][(h & 0xf) as usize];
            h >>= 4;
            pos += 1;
        }
        acc
    }
}

pub(crate) fn bits_of(poly: &UniPoly<u64>) -> u128 {
    poly.coeffs()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &c)| acc | ((c as u128 & 1) << i))
}

impl Field for BinaryField {
    type Elem = u128;

    fn characteristic(&self) -> u64 {
        2
    }

    fn degree(&self) -> u32 {
        self.k
    }

    fn zero(&self) -> u128 {
        0
    }

    fn one(&self) -> u128 {
        1
    }

    #[inline]
    fn add(&self, a: u128, b: u128) -> u128 {
        a ^ b
    }

    #[inline]
    fn sub(&self, a: u128, b: u128) -> u128 {
        a ^ b
    }

    #[inline]
    fn neg(&self, a: u128) -> u128 {
        a
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        if self.k <= 64 {
            self.reduce_wide(0, clmul64(a as u64, b as u64))
        } else {
            let (hi, lo) = clmul128(a, b);
            self.reduce_wide(hi, lo)
        }
    }

    fn inv(&self, a: u128) -> Option<u128> {
        if a == 0 {
            return None;
        }
        // Extended Euclid in F_2[z]; invariants g1*a = u, g2*a = v (mod f).
        let deg = |x: u128| 127 - x.leading_zeros() as i32;
        let (mut u, mut v) = (a, self.modulus);
        let (mut g1, mut g2) = (1u128, 0u128);
        while u != 1 {
            if u == 0 {
                // a shares a factor with the modulus (only possible via from_bits).
                return None;
            }
            let mut j = deg(u) - deg(v);
            if j < 0 {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                j = -j;
            }
            u ^= v << j;
            g1 ^= g2 << j;
        }
        Some(self.reduce_poly(g1))
    }

    fn from_int(&self, v: u64) -> u128 {
        (v & 1) as u128
    }

    fn to_prime(&self, a: u128) -> Option<u64> {
        (a <= 1).then_some(a as u64)
    }

    fn to_coeffs(&self, a: u128) -> Vec<u64> {
        (0..self.k).map(|i| ((a >> i) & 1) as u64).collect()
    }

    fn from_coeffs(&self, coeffs: &[u64]) -> u128 {
        coeffs
            .iter()
            .take(self.k as usize)
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | (((c & 1) as u128) << i))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u128 {
        rng.gen::<u128>() & self.mask()
    }

    fn modulus(&self) -> Vec<u64> {
        (0..=self.k)
            .map(|i| ((self.modulus >> i) & 1) as u64)
            .collect()
    }

    fn element_at(&self, index: u128) -> u128 {
        index & self.mask()
    }

    fn index_of(&self, a: u128) -> u128 {
        a
    }
}

impl BinaryField {
    /// Reduce an arbitrary element of `F_2[z]` of degree < 128.
    fn reduce_poly(&self, mut x: u128) -> u128 {
        let k = self.k;
        while x >> k != 0 {
            let d = 127 - x.leading_zeros();
            x ^= self.modulus << (d - k);
        }
        x
    }
}
