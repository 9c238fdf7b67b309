use thiserror::Error;

use super::{PolyRing, UniPoly};
use crate::field::{BinaryField, Field, PrimeField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("irreducibility test needs a monic polynomial of degree >= 1")]
pub struct NotMonic;

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` over `F_q` is irreducible iff
/// `X^{q^n} = X (mod f)` and `gcd(X^{q^{n/r}} - X, f) = 1` for every prime
/// `r | n`.
pub fn is_irreducible<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Result<bool, NotMonic> {
    let n = match f.degree() {
        Some(n) if n >= 1 && f.leading() == Some(field.one()) => n,
        _ => return Err(NotMonic),
    };
    if n == 1 {
        return Ok(true);
    }
    if field.is_gf2() && n <= 127 {
        let bits = f.coeffs().iter().enumerate().fold(0u128, |acc, (i, &c)| {
            acc | (((field.to_prime(c).unwrap_or(0)) as u128) << i)
        });
        return Ok(is_irreducible_gf2(n as u32, bits));
    }
    Ok(rabin_generic(field, f, n))
}

fn rabin_generic<F: Field>(field: &F, f: &UniPoly<F::Elem>, n: usize) -> bool {
    let ring = PolyRing::new(field);
    let x = UniPoly::x(field);
    let divisors = prime_divisors(n);
    // powers[d] = X^{q^d} mod f
    let mut h = ring.rem(&x, f);
    let mut powers = vec![h.clone()];
    for _ in 0..n {
        h = ring.frobenius_mod(&h, f);
        powers.push(h.clone());
    }
    if powers[n] != ring.rem(&x, f) {
        return false;
    }
    divisors.into_iter().all(|r| {
        let diff = ring.sub(&powers[n / r], &x);
        ring.gcd(&diff, f).degree() == Some(0)
    })
}

fn gf2x_gcd(mut a: u128, mut b: u128) -> u128 {
    let deg = |x: u128| 127 - x.leading_zeros() as i32;
    while b != 0 {
        while a != 0 && deg(a) >= deg(b) {
            a ^= b << (deg(a) - deg(b));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin's test on bit-packed polynomials over `F_2`.
fn is_irreducible_gf2(n: u32, bits: u128) -> bool {
    let ring = BinaryField::from_bits(n, bits).expect("degree checked by caller");
    let x = 2u128; // n >= 2, so X is already reduced.
    let mut powers = vec![x];
    let mut h = x;
    for _ in 0..n {
        h = ring.mul(h, h);
        powers.push(h);
    }
    if powers[n as usize] != x {
        return false;
    }
    prime_divisors(n as usize)
        .into_iter()
        .all(|r| gf2x_gcd(bits, powers[n as usize / r] ^ x) == 1)
}

/// First monic irreducible of degree `k` over `F_p`: trinomials
/// `X^k + X^j + 1` for increasing `j`, then all monic polynomials in
/// lexicographic order of their lower coefficients (lowest coefficient is
/// the least significant digit).
pub fn find_irreducible(base: &PrimeField, k: u32) -> UniPoly<u64> {
    assert!(k >= 1, "degree must be at least 1");
    let p = base.p();
    let k = k as usize;
    for j in 1..k {
        let mut c = vec![0u64; k + 1];
        c[0] = 1;
        c[j] = 1;
        c[k] = 1;
        let f = UniPoly::new(base, c);
        if is_irreducible(base, &f).expect("monic") {
            return f;
        }
    }
    let mut idx: u128 = 0;
    loop {
        let mut c = vec![0u64; k + 1];
        let mut rest = idx;
        for slot in c.iter_mut().take(k) {
            *slot = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        c[k] = 1;
        let f = UniPoly::new(base, c);
        if is_irreducible(base, &f).expect("monic") {
            return f;
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    /// Brute-force: no monic factor of degree 1..=n/2 divides f.
    fn irreducible_by_trial_division(field: &PrimeField, f: &UniPoly<u64>) -> bool {
        let ring = PolyRing::new(field);
        let n = f.degree().unwrap();
        let p = field.p() as u128;
        for d in 1..=n / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut c = vec![0u64; d + 1];
                let mut rest = idx;
                for slot in c.iter_mut().take(d) {
                    *slot = (rest % p) as u64;
                    rest /= p;
                }
                c[d] = 1;
                let g = UniPoly::new(field, c);
                if ring.rem(f, &g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn small_cases() {
        let f = f2();
        assert!(is_irreducible(&f, &UniPoly::new(&f, vec![1, 1, 1])).unwrap());
        assert!(!is_irreducible(&f, &UniPoly::new(&f, vec![1, 0, 1])).unwrap());
        assert_eq!(
            is_irreducible(&f, &UniPoly::new(&f, vec![1])),
            Err(NotMonic)
        );
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            is_irreducible(&f3, &UniPoly::new(&f3, vec![1, 0, 2])),
            Err(NotMonic)
        );
    }

    #[test]
    fn degree_one_and_two_outputs() {
        let f = f2();
        let d1 = find_irreducible(&f, 1);
        assert_eq!(d1.degree(), Some(1));
        assert_eq!(find_irreducible(&f, 2).coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn octic_passes_gcd_test_for_every_proper_degree() {
        let f = f2();
        let ring = PolyRing::new(&f);
        let g = find_irreducible(&f, 8);
        assert_eq!(g.degree(), Some(8));
        let x = UniPoly::x(&f);
        let mut h = x.clone();
        for d in 1..8u32 {
            h = ring.pow_mod(&h, 2, &g);
            if 8 % d == 0 {
                assert_eq!(ring.gcd(&ring.sub(&h, &x), &g).degree(), Some(0), "d={d}");
            }
        }
        assert!(irreducible_by_trial_division(&f, &g));
    }

    #[test]
    fn agrees_with_trial_division_exhaustively() {
        for (p, max_deg) in [(2u64, 9usize), (3, 5), (5, 3)] {
            let field = PrimeField::new(p).unwrap();
            for n in 1..=max_deg {
                for idx in 0..(p as u128).pow(n as u32) {
                    let mut c = vec![0u64; n + 1];
                    let mut rest = idx;
                    for slot in c.iter_mut().take(n) {
                        *slot = (rest % p as u128) as u64;
                        rest /= p as u128;
                    }
                    c[n] = 1;
                    let g = UniPoly::new(&field, c);
                    assert_eq!(
                        is_irreducible(&field, &g).unwrap(),
                        irreducible_by_trial_division(&field, &g),
                        "p={p} {:?}",
                        g
                    );
                }
            }
        }
    }

    #[test]
    fn products_of_irreducibles_are_reducible() {
        for p in [2u64, 3] {
            let field = PrimeField::new(p).unwrap();
            let ring = PolyRing::new(&field);
            let a = find_irreducible(&field, 3);
            let b = find_irreducible(&field, 4);
            let c = find_irreducible(&field, 2);
            assert!(!is_irreducible(&field, &ring.mul(&a, &b)).unwrap());
            assert!(!is_irreducible(&field, &ring.mul(&a, &c)).unwrap());
            assert!(!is_irreducible(&field, &ring.mul(&b, &b)).unwrap());
        }
    }

    #[test]
    fn find_irreducible_output_is_irreducible() {
        for p in [2u64, 3, 5, 7] {
            let field = PrimeField::new(p).unwrap();
            for k in 1..=12u32 {
                let g = find_irreducible(&field, k);
                assert_eq!(g.degree(), Some(k as usize));
                assert!(is_irreducible(&field, &g).unwrap());
            }
        }
        let f = f2();
        for k in [16u32, 40, 64, 80, 120, 127] {
            let g = find_irreducible(&f, k);
            assert!(is_irreducible(&f, &g).unwrap());
        }
    }

    #[test]
    fn gf2_fast_path_matches_generic_path() {
        let f = f2();
        for n in 2..=11usize {
            for idx in 0u128..(1 << n) {
                let mut c: Vec<u64> = (0..n).map(|i| ((idx >> i) & 1) as u64).collect();
                c.push(1);
                let g = UniPoly::new(&f, c);
                assert_eq!(is_irreducible(&f, &g).unwrap(), rabin_generic(&f, &g, n));
            }
        }
    }
}
