use std::sync::Arc;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::multilinear::{MonomialIndex, PolySpace};
use crate::rm::{RmError, Syndrome};

/// Index of the polynomials searched for: degree at most `r + 1`.
pub fn root_space_index(syndrome: &Syndrome) -> Result<Arc<MonomialIndex>, RmError> {
    let params = syndrome.params();
    Ok(Arc::new(MonomialIndex::new(
        params.m,
        params.r as u32 + 1,
        params.p,
    )?))
}

/// All reduced `A` of degree at most `r + 1` with
/// `sum_M a_M s_{M M'} = 0` for every `M'` of degree at most `r`.
///
/// `syndrome_index` must be the degree-`2r + 1` index of the syndrome.
pub fn space_roots(
    syndrome: &Syndrome,
    syndrome_index: &MonomialIndex,
    target: Arc<MonomialIndex>,
) -> PolySpace {
    let params = syndrome.params();
    let r = params.r as u32;
    assert_eq!(target.bound(), r + 1, "target index must have bound r + 1");
    assert_eq!(syndrome_index.len(), params.syndrome_len());
    let f = target.field().clone();
    let rows = target.prefix_len(r);
    let s = syndrome.entries();
    let system = Matrix::from_fn(&f, rows, target.len(), |i, j| {
        let code = syndrome_index.mul_codes(target.code(i), target.code(j));
        s[syndrome_index
            .position(code)
            .expect("degree at most 2r + 1")]
    });
    PolySpace::span(target, &system.nullspace_basis())
}

/// Number of common zeroes of a vanishing space of a U_r set.
pub fn count_errors(v: &PolySpace) -> usize {
    v.codim()
}

/// The point `e` when, for every coordinate `j`, exactly one `X_j - a`
/// lies in `V`; otherwise `None`.
pub fn find_unique_root(v: &PolySpace) -> Option<Vec<u64>> {
    let index = v.index();
    let f = index.field();
    let p = f.p();
    let mut point = Vec::with_capacity(index.m());
    let mut probe = vec![0u64; index.len()];
    for j in 0..index.m() {
        let pos = index.position(index.times_var(0, j))?;
        let mut found = None;
        for a in 0..p {
            probe.iter_mut().for_each(|c| *c = 0);
            probe[0] = f.neg(a);
            probe[pos] = 1;
            if v.contains_coeffs(&probe) {
                if found.is_some() {
                    return None;
                }
                found = Some(a);
            }
        }
        point.push(found?);
    }
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rm::{sample_error_set, CodeParams, ErrorSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn idx(m: usize, bound: u32, p: u64) -> Arc<MonomialIndex> {
        Arc::new(MonomialIndex::new(m, bound, p).unwrap())
    }

    fn roots_of(params: CodeParams, e: &ErrorSet, mags: &[u64]) -> PolySpace {
        let s = Syndrome::from_weighted_errors(&params, e, mags).unwrap();
        space_roots(
            &s,
            &params.syndrome_index().unwrap(),
            root_space_index(&s).unwrap(),
        )
    }

    #[test]
    fn zero_syndrome_gives_full_space() {
        let params = CodeParams::binary(6, 1).unwrap();
        let v = roots_of(params, &ErrorSet::empty(6, 2), &[]);
        assert_eq!(v.codim(), 0);
    }

    #[test]
    fn single_point_example() {
        // E = {(1,1)} in F_2^2 with r = 0.
        let params = CodeParams::binary(2, 0).unwrap();
        let e = ErrorSet::new(2, 2, vec![vec![1, 1]]).unwrap();
        let v = roots_of(params, &e, &[1]);
        // Brute force: A = a0 + a1 X1 + a2 X2 with a0 + a1 + a2 = 0.
        let f = params.field();
        let brute: Vec<Vec<u64>> = (0..8u64)
            .map(|w| vec![w & 1, w >> 1 & 1, w >> 2 & 1])
            .filter(|a| a.iter().sum::<u64>() % 2 == 0)
            .collect();
        let expect = PolySpace::span(idx(2, 1, 2), &Matrix::from_rows(&f, brute));
        assert_eq!(v, expect);
        assert_eq!(v.codim(), 1);
    }

    #[test]
    fn matches_evaluation_nullspace() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, r, p, t) in [(6usize, 1usize, 2u64, 5usize), (8, 2, 2, 9), (4, 1, 3, 3)] {
            let params = CodeParams::new(m, r, p).unwrap();
            for _ in 0..5 {
                let e = sample_error_set(&params, t, &mut rng, 100).unwrap().errors;
                let mags: Vec<u64> = (0..t).map(|_| rng.gen_range(1..p)).collect();
                let v = roots_of(params, &e, &mags);
                let oracle = PolySpace::vanishing(idx(m, r as u32 + 1, p), e.points()).unwrap();
                assert_eq!(v, oracle);
                assert_eq!(count_errors(&v), t);
            }
        }
    }

    #[test]
    fn unique_root_examples() {
        let v = PolySpace::vanishing(idx(3, 1, 2), &[vec![1, 0, 1]]).unwrap();
        assert_eq!(find_unique_root(&v), Some(vec![1, 0, 1]));
        let two = PolySpace::vanishing(idx(2, 1, 2), &[vec![0, 0], vec![1, 1]]).unwrap();
        // Neither X1 nor 1 + X1 vanishes on both points.
        assert!(!two.contains_coeffs(&[0, 1, 0]) && !two.contains_coeffs(&[1, 1, 0]));
        assert_eq!(find_unique_root(&two), None);
        assert_eq!(find_unique_root(&PolySpace::full(idx(3, 2, 2))), None);
        let v3 = PolySpace::vanishing(idx(3, 2, 3), &[vec![2, 0, 1]]).unwrap();
        assert_eq!(find_unique_root(&v3), Some(vec![2, 0, 1]));
    }

    #[test]
    fn count_after_zero_restriction() {
        let v = PolySpace::vanishing(idx(2, 1, 2), &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(count_errors(&v), 2);
        let r = v.restrict_last_zero().unwrap();
        assert_eq!(count_errors(&r), 1);
        assert_eq!(r, PolySpace::vanishing(idx(1, 1, 2), &[vec![0]]).unwrap());
    }
}
