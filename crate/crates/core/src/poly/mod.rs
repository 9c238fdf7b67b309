//! Dense univariate polynomials over a [`Field`], irreducibility testing and
//! root extraction.

mod irreducible;
mod roots;

pub use irreducible::{find_irreducible, is_irreducible, NotMonic};
pub use roots::{berlekamp_roots, RootFactorization};

use crate::field::Field;

/// Coefficients lowest degree first; never carries trailing zeros, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Copy + Eq> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        let zero = field.zero();
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// `X`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// `X - a`.
    pub fn linear<F: Field<Elem = E>>(field: &F, a: E) -> Self {
        Self {
            coeffs: vec![field.neg(a), field.one()],
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<E> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> Option<E> {
        self.coeffs.get(i).copied()
    }
}

/// Polynomial arithmetic over a fixed field.
#[derive(Debug, Clone)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    fn make(&self, coeffs: Vec<F::Elem>) -> UniPoly<F::Elem> {
        UniPoly::new(self.field, coeffs)
    }

    pub fn add(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let f = self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let x = a.coeff(i).unwrap_or(f.zero());
                let y = b.coeff(i).unwrap_or(f.zero());
                f.add(x, y)
            })
            .collect();
        self.make(out)
    }

    pub fn sub(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let f = self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let x = a.coeff(i).unwrap_or(f.zero());
                let y = b.coeff(i).unwrap_or(f.zero());
                f.sub(x, y)
            })
            .collect();
        self.make(out)
    }

    pub fn scale(&self, a: &UniPoly<F::Elem>, c: F::Elem) -> UniPoly<F::Elem> {
        self.make(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        let f = self.field;
        let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == f.zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        self.make(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(
        &self,
        a: &UniPoly<F::Elem>,
        b: &UniPoly<F::Elem>,
    ) -> (UniPoly<F::Elem>, UniPoly<F::Elem>) {
        let f = self.field;
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(b.coeffs[db]).expect("nonzero leading coefficient");
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (UniPoly::zero(), a.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == f.zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - db] = q;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(q, bj));
            }
        }
        rem.truncate(db);
        (self.make(quot), self.make(rem))
    }

    pub fn rem(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        match a.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(a, self.field.inv(l).expect("nonzero")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn mul_mod(
        &self,
        a: &UniPoly<F::Elem>,
        b: &UniPoly<F::Elem>,
        modulus: &UniPoly<F::Elem>,
    ) -> UniPoly<F::Elem> {
        self.rem(&self.mul(a, b), modulus)
    }

    pub fn pow_mod(
        &self,
        a: &UniPoly<F::Elem>,
        mut e: u128,
        modulus: &UniPoly<F::Elem>,
    ) -> UniPoly<F::Elem> {
        let mut base = self.rem(a, modulus);
        let mut acc = self.rem(&UniPoly::constant(self.field, self.field.one()), modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, modulus);
            }
        }
        acc
    }

    /// `a^q mod modulus` where `q` is the field order, computed as `degree`
    /// successive `p`-th powers so that `q` never needs to be materialised.
    pub fn frobenius_mod(
        &self,
        a: &UniPoly<F::Elem>,
        modulus: &UniPoly<F::Elem>,
    ) -> UniPoly<F::Elem> {
        let p = self.field.characteristic() as u128;
        let mut x = self.rem(a, modulus);
        for _ in 0..self.field.degree() {
            x = self.pow_mod(&x, p, modulus);
        }
        x
    }

    pub fn eval(&self, a: &UniPoly<F::Elem>, x: F::Elem) -> F::Elem {
        let f = self.field;
        a.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, a: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let f = self.field;
        let out = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as u64)))
            .collect();
        self.make(out)
    }

    /// `prod (X - r)` over the given roots.
    pub fn from_roots(&self, roots: &[F::Elem]) -> UniPoly<F::Elem> {
        roots.iter().fold(
            UniPoly::constant(self.field, self.field.one()),
            |acc, &r| self.mul(&acc, &UniPoly::linear(self.field, r)),
        )
    }
}
