//! Root extraction by Berlekamp's trace method.
//!
//! `g = gcd(f, X^q - X)` isolates the product of the distinct linear factors
//! of `f`. Each pass then picks `d` and splits every pending factor `h` of `g`
//! by `gcd(h, Tr(dX) - c)` for `c` in the prime field, where
//! `Tr(y) = y + y^p + ... + y^{p^{k-1}}`. Every root `b` has `Tr(d b)` in
//! `F_p`, so the gcds partition the roots.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PolyRing, UniPoly};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootFactorization<E> {
    /// Distinct roots in the coefficient field with their multiplicities,
    /// sorted by element.
    pub roots: Vec<(E, u32)>,
    /// Degree of the part of `f` with no roots in the field.
    pub nonlinear_degree: usize,
}

impl<E: Copy> RootFactorization<E> {
    pub fn distinct_roots(&self) -> Vec<E> {
        self.roots.iter().map(|&(r, _)| r).collect()
    }

    /// True when `f` is a product of distinct linear factors.
    pub fn splits_simply(&self) -> bool {
        self.nonlinear_degree == 0 && self.roots.iter().all(|&(_, m)| m == 1)
    }
}

/// `a^p mod m`, with a shortcut for characteristic 2 where squaring only
/// squares coefficients.
fn pth_power_mod<F: Field>(
    ring: &PolyRing<'_, F>,
    a: &UniPoly<F::Elem>,
    m: &UniPoly<F::Elem>,
) -> UniPoly<F::Elem> {
    let field = ring.field();
    if field.characteristic() == 2 {
        let mut sq = vec![field.zero(); 2 * a.coeffs().len()];
        for (i, &c) in a.coeffs().iter().enumerate() {
            sq[2 * i] = field.mul(c, c);
        }
        ring.rem(&UniPoly::new(field, sq), m)
    } else {
        ring.pow_mod(a, field.characteristic() as u128, m)
    }
}

fn trace_mod<F: Field>(
    ring: &PolyRing<'_, F>,
    d: F::Elem,
    m: &UniPoly<F::Elem>,
) -> UniPoly<F::Elem> {
    let field = ring.field();
    let mut y = ring.rem(&UniPoly::new(field, vec![field.zero(), d]), m);
    let mut acc = y.clone();
    for _ in 1..field.degree() {
        y = pth_power_mod(ring, &y, m);
        acc = ring.add(&acc, &y);
    }
    acc
}

/// Roots of `f` lying in its coefficient field.
///
/// Panics if `f` is the zero polynomial.
pub fn berlekamp_roots<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> RootFactorization<F::Elem> {
    assert!(!f.is_zero(), "roots of the zero polynomial are undefined");
    let ring = PolyRing::new(field);
    let degree = f.degree().unwrap_or(0);
    if degree == 0 {
        return RootFactorization {
            roots: Vec::new(),
            nonlinear_degree: 0,
        };
    }
    let f = ring.monic(f);
    let x = UniPoly::x(field);
    // X^q mod f by k successive p-th powers.
    let mut xq = ring.rem(&x, &f);
    for _ in 0..field.degree() {
        xq = pth_power_mod(&ring, &xq, &f);
    }
    let g = ring.gcd(&f, &ring.sub(&xq, &x));

    let mut found: Vec<F::Elem> = Vec::new();
    let mut pending: Vec<UniPoly<F::Elem>> = Vec::new();
    let mut sort_factor =
        |h: UniPoly<F::Elem>, pending: &mut Vec<UniPoly<F::Elem>>| match h.degree() {
            Some(0) | None => {}
            Some(1) => found.push(field.neg(h.coeffs()[0])),
            Some(_) => pending.push(h),
        };
    sort_factor(g.clone(), &mut pending);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_b3e1);
    let p = field.characteristic();
    while !pending.is_empty() {
        let d = field.random(&mut rng);
        if field.is_zero(d) {
            continue;
        }
        let t = trace_mod(&ring, d, &g);
        let mut next = Vec::new();
        for h in pending.drain(..) {
            let th = ring.rem(&t, &h);
            let mut rest = h;
            for c in 0..p {
                if rest.degree() <= Some(1) {
                    break;
                }
                let shifted = ring.sub(&th, &UniPoly::constant(field, field.from_int(c)));
                let part = ring.gcd(&rest, &shifted);
                let dp = part.degree().unwrap_or(0);
                if dp >= 1 && Some(dp) < rest.degree() {
                    rest = ring.div_rem(&rest, &part).0;
                    sort_factor(part, &mut next);
                }
            }
            sort_factor(rest, &mut next);
        }
        pending = next;
    }

    // Multiplicities by repeated division.
    let mut roots: Vec<(F::Elem, u32)> = found
        .into_iter()
        .map(|r| {
            let lin = UniPoly::linear(field, r);
            let mut mult = 0u32;
            let mut cur = f.clone();
            loop {
                let (q, rem) = ring.div_rem(&cur, &lin);
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                cur = q;
            }
            (r, mult)
        })
        .collect();
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let linear: usize = roots.iter().map(|&(_, m)| m as usize).sum();
    RootFactorization {
        roots,
        nonlinear_degree: degree - linear,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BinaryField, ExtField, PrimeField};
    use rand::Rng;

    #[test]
    fn x_squared_plus_x_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let r = berlekamp_roots(&f, &UniPoly::new(&f, vec![0, 1, 1]));
        assert_eq!(r.roots, vec![(0, 1), (1, 1)]);
        assert!(r.splits_simply());
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let f = PrimeField::new(2).unwrap();
        let r = berlekamp_roots(&f, &UniPoly::new(&f, vec![1, 1, 1]));
        assert!(r.roots.is_empty());
        assert_eq!(r.nonlinear_degree, 2);
    }

    #[test]
    fn repeated_roots_report_multiplicity() {
        let f = PrimeField::new(5).unwrap();
        let ring = PolyRing::new(&f);
        let g = ring.from_roots(&[1, 1, 1, 3]);
        let r = berlekamp_roots(&f, &g);
        assert_eq!(r.roots, vec![(1, 3), (3, 1)]);
        assert!(!r.splits_simply());
    }

    #[test]
    fn two_chosen_roots_in_f_2_16() {
        let f = BinaryField::new(16).unwrap();
        let ring = PolyRing::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let mut b = f.random(&mut rng);
            while b == a {
                b = f.random(&mut rng);
            }
            let g = ring.from_roots(&[a, b]);
            let mut expect = vec![a, b];
            expect.sort();
            assert_eq!(berlekamp_roots(&f, &g).distinct_roots(), expect);
        }
    }

    /// Every returned root evaluates to zero and an exhaustive scan of the
    /// field finds nothing else.
    fn exhaustive_check<F: Field>(field: &F, trials: usize, seed: u64) {
        let ring = PolyRing::new(field);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let deg = rng.gen_range(1..8);
            let mut c: Vec<F::Elem> = (0..deg).map(|_| field.random(&mut rng)).collect();
            c.push(field.one());
            // Plant a couple of roots half the time.
            let mut g = UniPoly::new(field, c);
            if rng.gen_bool(0.5) {
                let planted: Vec<F::Elem> = (0..rng.gen_range(1..4))
                    .map(|_| field.random(&mut rng))
                    .collect();
                g = ring.mul(&g, &ring.from_roots(&planted));
            }
            let res = berlekamp_roots(field, &g);
            let got = res.distinct_roots();
            for &r in &got {
                assert!(field.is_zero(ring.eval(&g, r)));
            }
            let brute: Vec<F::Elem> = (0..field.order())
                .map(|i| field.element_at(i))
                .filter(|&x| field.is_zero(ring.eval(&g, x)))
                .collect();
            let mut brute_sorted = brute.clone();
            brute_sorted.sort();
            assert_eq!(got, brute_sorted);
        }
    }

    #[test]
    fn no_missed_roots_small_fields() {
        exhaustive_check(&BinaryField::new(12).unwrap(), 20, 1);
        exhaustive_check(&BinaryField::new(5).unwrap(), 50, 2);
        exhaustive_check(&ExtField::new(3, 4).unwrap(), 30, 3);
        exhaustive_check(&PrimeField::new(7).unwrap(), 50, 4);
        exhaustive_check(&ExtField::new(5, 2).unwrap(), 30, 5);
    }
}
