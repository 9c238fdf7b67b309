use crate::field::Field;

use super::tensor::pairing;

/// `a = (1, α, .., α^m)` and `b = (α^{3m}, α^{3m+2}, .., α^{5m})`.
pub fn derandomized_flattening_vectors<F: Field>(
    field: &F,
    alpha: F::Elem,
    m: usize,
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let a = (0..=m).map(|i| field.pow(alpha, i as u128)).collect();
    let b = (0..=m)
        .map(|i| field.pow(alpha, (3 * m + 2 * i) as u128))
        .collect();
    (a, b)
}

/// Whether `a_i = <a, (1, e_i)>` and `b_i = <b, (1, e_i)>` are `2t`
/// distinct nonzero values with pairwise distinct ratios `a_i / b_i`.
pub fn check_flattening_conditions<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    points: &[Vec<u64>],
) -> bool {
    let av: Vec<F::Elem> = points.iter().map(|x| pairing(field, a, x)).collect();
    let bv: Vec<F::Elem> = points.iter().map(|x| pairing(field, b, x)).collect();
    let mut all: Vec<F::Elem> = av.iter().chain(&bv).copied().collect();
    if all.iter().any(|&v| field.is_zero(v)) {
        return false;
    }
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut ratios: Vec<F::Elem> = av
        .iter()
        .zip(&bv)
        .map(|(&x, &y)| field.div(x, y).expect("nonzero"))
        .collect();
    ratios.sort_unstable();
    ratios.windows(2).all(|w| w[0] != w[1])
}
