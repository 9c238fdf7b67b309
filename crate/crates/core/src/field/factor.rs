//! Integer factorization for multiplicative group orders `p^k - 1`.
//!
//! Trial division up to a bound, then Miller-Rabin and Pollard-Brent rho with
//! an iteration budget. Exceeding the budget is an error rather than a hang.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("could not split composite cofactor {0} within the rho budget")]
    BudgetExhausted(u128),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division runs over all candidates below this bound.
    pub trial_bound: u64,
    /// Total rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_bound: 1 << 16,
            rho_iterations: 1 << 22,
        }
    }
}

fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return (a * b) % n;
    }
    // Double-and-add; operands stay below n < 2^127 so sums cannot overflow.
    debug_assert!(n < 1 << 127);
    let (mut a, mut b) = (a % n, b % n);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc += a;
            if acc >= n {
                acc -= n;
            }
        }
        a += a;
        if a >= n {
            a -= n;
        }
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut e: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin. Deterministic below 2^64 (first twelve prime bases); above
/// that the twenty-base test has error probability below 4^-20 per input.
pub fn is_prime_u128(n: u128) -> bool {
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let bases: &[u128] = if n <= u64::MAX as u128 {
        &BASES[..12]
    } else {
        &BASES
    };
    'witness: for &a in bases {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; returns a nontrivial factor or `None`
/// when the budget runs out.
fn rho(n: u128, budget: u64) -> Option<u128> {
    let mut spent = 0u64;
    let mut c = 0u128;
    loop {
        c += 1;
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let mut x;
        let mut g;
        let mut ys;
        let m = 128u64;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            loop {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    let diff = x.abs_diff(y);
                    q = mul_mod(q, diff, n);
                }
                g = gcd(q, n);
                k += m;
                if k >= r || g != 1 {
                    break;
                }
            }
            spent += r;
            if g != 1 || spent > budget {
                break;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != 1 && g != n {
            return Some(g);
        }
        if spent > budget {
            return None;
        }
    }
}

/// Prime factorization as `(prime, multiplicity)` pairs in increasing order.
pub fn factor_u128(n: u128, budget: &FactorBudget) -> Result<Vec<(u128, u32)>, FactorError> {
    let mut primes: Vec<u128> = Vec::new();
    let mut rest = n;
    if rest <= 1 {
        return Ok(Vec::new());
    }
    let mut d = 2u128;
    while d < budget.trial_bound as u128 && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime_u128(x) {
            primes.push(x);
            continue;
        }
        let f = rho(x, budget.rho_iterations).ok_or(FactorError::BudgetExhausted(x))?;
        stack.push(f);
        stack.push(x / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(u128, u32)]) -> u128 {
        f.iter().map(|&(p, m)| p.pow(m)).product()
    }

    #[test]
    fn small_numbers_match_trial_division() {
        for n in 2u128..2000 {
            let f = factor_u128(n, &FactorBudget::default()).unwrap();
            assert_eq!(product(&f), n);
            for &(p, _) in &f {
                assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }
    }

    #[test]
    fn mersenne_style_orders() {
        let budget = FactorBudget::default();
        // 2^60 + 1 = 17 * 241 * 61681 * 4562284561
        let f = factor_u128((1u128 << 60) + 1, &budget).unwrap();
        assert_eq!(f, vec![(17, 1), (241, 1), (61681, 1), (4562284561, 1)]);
        for k in [16u32, 40, 64, 80, 96, 100, 120, 127] {
            let n = (1u128 << k) - 1;
            let f = factor_u128(n, &budget).unwrap();
            assert_eq!(product(&f), n, "k={k}");
            assert!(f.iter().all(|&(p, _)| is_prime_u128(p)));
        }
        assert_eq!(factor_u128((1u128 << 127) - 1, &budget).unwrap().len(), 1);
    }

    #[test]
    fn known_primes_and_composites() {
        assert!(is_prime_u128(2));
        assert!(is_prime_u128(65537));
        assert!(is_prime_u128((1u128 << 61) - 1));
        assert!(!is_prime_u128(3215031751)); // strong pseudoprime to 2,3,5,7
        assert!(!is_prime_u128(1));
        assert!(!is_prime_u128((1u128 << 64) + 1));
    }
}
