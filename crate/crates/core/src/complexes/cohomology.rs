use std::collections::BTreeMap;

use super::complex::Complex;
use crate::exact_linear::Field;

/// `dim H^n(X)` over the field, after expanding each projective into its
/// path basis. Only nonzero degrees are listed.
pub fn cohomology_dims<F: Field>(x: &Complex<F>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let Some((lo, hi)) = x.support() else {
        return out;
    };
    let alg = x.algebra();
    let ranks: BTreeMap<i32, usize> = (lo - 1..=hi)
        .map(|n| (n, x.diff(n).to_matrix(alg).rank()))
        .collect();
    for n in lo..=hi {
        let dim: usize = x.term(n).iter().map(|&v| alg.projective_dimension(v)).sum();
        let h = dim - ranks[&n] - ranks[&(n - 1)];
        if h > 0 {
            out.insert(n, h);
        }
    }
    out
}
