use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::roots::find_unique_root;
use super::PolyspaceError;
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::multilinear::{MonomialIndex, PolySpace};
use crate::rm::ErrorSet;

/// Number `l` of constraints used to isolate one of `t` points: the least
/// `l` with `p^l >= 2t`, clamped to `[1, m - 1]`. Over `F_2` this is
/// `ceil(log2 t) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsolationParams {
    pub t: usize,
    pub l: usize,
}

impl IsolationParams {
    pub fn new(t: usize, m: usize, p: u64) -> Self {
        let mut l = 0usize;
        let mut cap = 1u128;
        while cap < 2 * t as u128 {
            cap *= p as u128;
            l += 1;
        }
        Self {
            t,
            l: l.clamp(1, m.saturating_sub(1).max(1)),
        }
    }
}

/// `l` linearly independent vectors `a_i` and constants `b_i`; a point `x`
/// survives when `<a_i, x> = b_i` for all `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VvSample {
    pub params: IsolationParams,
    pub a: Vec<Vec<u64>>,
    pub b: Vec<u64>,
    /// Whether `t <= 2^{m/2} / 100`, the regime where the isolation bound is
    /// proven. Sampling proceeds either way.
    pub within_hypothesis: bool,
}

impl VvSample {
    pub fn survivors<'a>(&self, f: &PrimeField, points: &'a [Vec<u64>]) -> Vec<&'a Vec<u64>> {
        points
            .iter()
            .filter(|x| {
                self.a.iter().zip(&self.b).all(|(a, &b)| {
                    a.iter()
                        .zip(x.iter())
                        .fold(0, |acc, (&ai, &xi)| f.add(acc, f.mul(ai, xi)))
                        == b
                })
            })
            .collect()
    }
}

pub fn vv_hypothesis_holds(m: usize, t: usize) -> bool {
    100.0 * t as f64 <= 2f64.powf(m as f64 / 2.0)
}

/// Uniform independent `l`-tuple by rejection, uniform constants.
pub fn vv_sample<R: Rng + ?Sized>(m: usize, t: usize, p: u64, rng: &mut R) -> VvSample {
    let params = IsolationParams::new(t, m, p);
    let f = PrimeField::new(p).expect("prime");
    let within_hypothesis = vv_hypothesis_holds(m, t);
    if !within_hypothesis {
        log::debug!("isolation sampling outside t <= 2^(m/2)/100 (m = {m}, t = {t})");
    }
    let a = loop {
        let rows: Vec<Vec<u64>> = (0..params.l)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if Matrix::from_rows(&f, rows.clone()).rank() == params.l {
            break rows;
        }
    };
    let b = (0..params.l).map(|_| rng.gen_range(0..p)).collect();
    VvSample {
        params,
        a,
        b,
        within_hypothesis,
    }
}

/// Uniform element of `GL(m, F_p)` by rejection.
pub fn sample_invertible<R: Rng + ?Sized>(
    f: &PrimeField,
    m: usize,
    rng: &mut R,
) -> Matrix<PrimeField> {
    loop {
        let a = Matrix::from_fn(f, m, m, |_, _| rng.gen_range(0..f.p()));
        if a.is_invertible() {
            return a;
        }
    }
}

/// Substitution `x = M z + b` after which the last `l` coordinates of `z`
/// are pinned to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRestriction {
    pub matrix: Matrix<PrimeField>,
    pub offset: Vec<u64>,
    pub l: usize,
}

impl AffineRestriction {
    /// Maps `{x : <a_i, x> = b_i}` onto `{z : z_{m-l+1..m} = 0}`. The other
    /// rows of the inverse map are drawn uniformly until invertible.
    pub fn from_vv<R: Rng + ?Sized>(f: &PrimeField, m: usize, vv: &VvSample, rng: &mut R) -> Self {
        let l = vv.a.len();
        let t = loop {
            let mut rows: Vec<Vec<u64>> = (0..m - l)
                .map(|_| (0..m).map(|_| rng.gen_range(0..f.p())).collect())
                .collect();
            rows.extend(vv.a.iter().cloned());
            let t = Matrix::from_rows(f, rows);
            if t.is_invertible() {
                break t;
            }
        };
        // z = T x - (0, b)  <=>  x = T^{-1} z + T^{-1} (0, b).
        let matrix = t.inverse().expect("invertible");
        let mut shift = vec![0u64; m];
        shift[m - l..].copy_from_slice(&vv.b);
        let offset = matrix.mul_vec(&shift);
        Self { matrix, offset, l }
    }

    /// `x = M z + b` for `z` with its last `l` coordinates zero.
    pub fn lift(&self, z_head: &[u64]) -> Vec<u64> {
        let f = self.matrix.field();
        let mut z = z_head.to_vec();
        z.resize(self.matrix.cols(), 0);
        self.matrix
            .mul_vec(&z)
            .iter()
            .zip(&self.offset)
            .map(|(&a, &b)| f.add(a, b))
            .collect()
    }
}

/// Target indices for repeated restriction: entry `k` has `m - 1 - k`
/// variables.
pub(crate) fn restriction_chain(
    index: &MonomialIndex,
    depth: usize,
) -> Result<Vec<Arc<MonomialIndex>>, PolyspaceError> {
    (1..=depth)
        .map(|k| {
            Ok(Arc::new(MonomialIndex::new(
                index.m() - k,
                index.bound(),
                index.p(),
            )?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindRootsOutcome {
    pub errors: ErrorSet,
    pub iterations: usize,
    /// Whether `codim(V)` distinct points were found within the budget.
    pub complete: bool,
}

/// `ceil(100 t log2 t)`, at least 1.
pub fn iteration_budget(t: usize) -> usize {
    if t <= 1 {
        return 1;
    }
    (100.0 * t as f64 * (t as f64).log2()).ceil() as usize
}

/// Randomized common-zero search by repeated isolation.
pub fn find_roots<R: Rng + ?Sized>(
    v: &PolySpace,
    rng: &mut R,
) -> Result<FindRootsOutcome, PolyspaceError> {
    let index = v.index().clone();
    let (m, p) = (index.m(), index.p());
    let t = v.codim();
    if t == 0 {
        return Ok(FindRootsOutcome {
            errors: ErrorSet::empty(m, p),
            iterations: 0,
            complete: true,
        });
    }
    if t == 1 {
        let found = find_unique_root(v).filter(|x| v.vanishes_at(x).unwrap_or(false));
        let complete = found.is_some();
        return Ok(FindRootsOutcome {
            errors: ErrorSet::new(m, p, found.into_iter().collect())?,
            iterations: 1,
            complete,
        });
    }
    let f = index.field().clone();
    let l = IsolationParams::new(t, m, p).l;
    let chain = restriction_chain(&index, l)?;
    let budget = iteration_budget(t);
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut iterations = 0;
    while iterations < budget && found.len() < t {
        iterations += 1;
        let vv = vv_sample(m, t, p, rng);
        let map = AffineRestriction::from_vv(&f, m, &vv, rng);
        let mut w = v.affine_substitute(&map.matrix, &map.offset)?;
        for target in &chain {
            w = w.restrict_last_into(target.clone(), 0)?;
        }
        if let Some(z) = find_unique_root(&w) {
            let x = map.lift(&z);
            // Any true common zero passes; guards against spurious reads.
            if v.vanishes_at(&x)? {
                found.insert(x);
            }
        }
    }
    let complete = found.len() == t;
    if !complete {
        log::warn!(
            "root search stopped after {iterations} iterations with {} of {t} points",
            found.len()
        );
    }
    Ok(FindRootsOutcome {
        errors: ErrorSet::new(m, p, found.into_iter().collect())?,
        iterations,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm::point_from_index;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isolation_params() {
        assert_eq!(IsolationParams::new(1, 10, 2).l, 1);
        for t in 1..200usize {
            let l = IsolationParams::new(t, 40, 2).l;
            let c = (1u64 << l) as f64 / t as f64;
            assert!((2.0..4.0).contains(&c), "t={t} l={l}");
            assert_eq!(l, (t as f64).log2().ceil() as usize + 1);
        }
        assert_eq!(IsolationParams::new(5, 10, 3).l, 3);
        assert_eq!(IsolationParams::new(1000, 4, 2).l, 3);
    }

    #[test]
    fn vv_vectors_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = PrimeField::new(2).unwrap();
        for t in [1usize, 3, 8, 20] {
            let s = vv_sample(10, t, 2, &mut rng);
            assert_eq!(Matrix::from_rows(&f, s.a.clone()).rank(), s.params.l);
            assert_eq!(s.b.len(), s.params.l);
        }
        assert!(!vv_sample(16, 8, 2, &mut rng).within_hypothesis);
        assert!(vv_sample(24, 8, 2, &mut rng).within_hypothesis);
    }

    #[test]
    fn restriction_map_sends_constraints_to_coordinates() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for p in [2u64, 3] {
            let f = PrimeField::new(p).unwrap();
            let m = 5;
            let vv = vv_sample(m, 4, p, &mut rng);
            let map = AffineRestriction::from_vv(&f, m, &vv, &mut rng);
            let l = vv.params.l;
            // Every lifted point satisfies the constraints, and all of them
            // are reached.
            let heads = p.pow((m - l) as u32);
            let mut lifted = BTreeSet::new();
            for i in 0..heads {
                let x = map.lift(&point_from_index(i, m - l, p));
                assert_eq!(vv.survivors(&f, std::slice::from_ref(&x)).len(), 1);
                lifted.insert(x);
            }
            let all: Vec<Vec<u64>> = (0..p.pow(m as u32))
                .map(|i| point_from_index(i, m, p))
                .collect();
            assert_eq!(lifted.len(), vv.survivors(&f, &all).len());
        }
    }

    #[test]
    fn budget_values() {
        assert_eq!(iteration_budget(1), 1);
        assert_eq!(iteration_budget(2), 200);
        assert_eq!(iteration_budget(8), 2400);
    }
}
