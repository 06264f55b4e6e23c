use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cotstruct_core::algebra::{PathAlgebra, Quiver};
use cotstruct_core::complexes::{
    cohomology_dims, cone, hom_space, is_null_homotopic, ChainMap, Complex,
};
use cotstruct_core::cotstructure::{decompose, default_max_iter, in_a_bar, in_b, GeneratorSet};
use cotstruct_core::exact_linear::Field;
use cotstruct_core::random::{random_complex, random_corpus, RandomParams};
use cotstruct_core::{ComplexF5, MatrixF5, MatrixQ, F5, Q};

fn quiver(kind: u8) -> Arc<PathAlgebra> {
    let q = match kind {
        0 => Quiver::trivial(),
        1 => Quiver::linear(2),
        2 => Quiver::linear(3),
        _ => Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "1".into(), "3".into()),
            ],
        )
        .unwrap(),
    };
    Arc::new(PathAlgebra::new(q))
}

fn small() -> RandomParams {
    RandomParams {
        degree_span: 4,
        max_rank: 2,
    }
}

fn complex(alg: &Arc<PathAlgebra>, seed: u64, params: &RandomParams) -> ComplexF5 {
    random_complex(alg, params, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Gaussian elimination over `Z/5` on plain integers.
fn rank_mod5(mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] % 5 != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = (1..5).find(|i| i * rows[rank][c] % 5 == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % 5;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + 5 * 5 - f * rows[rank][k]) % 5;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Vector space `Hom(P_i, X^n)`: one coordinate per (summand, path from `i`).
fn hom_basis(alg: &PathAlgebra, x: &ComplexF5, i: usize, n: i32) -> Vec<(usize, usize)> {
    x.term(n)
        .iter()
        .enumerate()
        .flat_map(|(c, &v)| alg.paths_between(i, v).iter().map(move |&p| (c, p)))
        .collect()
}

/// Rank of `Hom(P_i, d^n)` computed entry by entry from path products.
fn hom_diff_rank(alg: &PathAlgebra, x: &ComplexF5, i: usize, n: i32) -> usize {
    let src = hom_basis(alg, x, i, n);
    let dst = hom_basis(alg, x, i, n + 1);
    if src.is_empty() || dst.is_empty() {
        return 0;
    }
    let d = x.diff(n);
    let mut rows = vec![vec![0u32; src.len()]; dst.len()];
    for (col, &(c, p)) in src.iter().enumerate() {
        for r in 0..d.rows().len() {
            for (q, coeff) in d.get(r, c).terms() {
                if let Some(qp) = alg.path_product(q, p) {
                    let row = dst.iter().position(|&e| e == (r, qp)).unwrap();
                    rows[row][col] = (rows[row][col] + coeff.value()) % 5;
                }
            }
        }
    }
    rank_mod5(rows)
}

/// `dim Hom_K(P_i, Σ^n X) = dim H^n(Hom(P_i, X))`.
fn oracle_hom_dim(alg: &PathAlgebra, x: &ComplexF5, i: usize, n: i32) -> usize {
    let dim = hom_basis(alg, x, i, n).len();
    dim - hom_diff_rank(alg, x, i, n) - hom_diff_rank(alg, x, i, n - 1)
}

fn matrix_f5(rows: usize, cols: usize, data: &[i64]) -> MatrixF5 {
    MatrixF5::from_rows(
        cols,
        data.chunks(cols)
            .take(rows)
            .map(|r| r.iter().map(|&v| F5::new(v)).collect())
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, data in prop::collection::vec(0i64..5, 36)) {
        let m = matrix_f5(rows, cols, &data);
        prop_assert_eq!(m.rank() + m.kernel_basis().cols(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.mul(&m.kernel_basis()).unwrap().is_zero());
    }

    #[test]
    fn solve_recovers_image_vectors(rows in 1usize..6, cols in 1usize..6,
                                    data in prop::collection::vec(0i64..5, 36),
                                    v in prop::collection::vec(0i64..5, 6)) {
        let m = matrix_f5(rows, cols, &data);
        let v: Vec<F5> = v[..cols].iter().map(|&x| F5::new(x)).collect();
        let b = m.mul_vec(&v).unwrap();
        let x = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn rational_rank_matches_integer_rank(data in prop::collection::vec(-4i64..5, 9)) {
        let q = MatrixQ::from_rows(3, data.chunks(3).map(|r| r.iter().map(|&v| Q::from_i64(v)).collect()).collect()).unwrap();
        let det = data[0] * (data[4] * data[8] - data[5] * data[7])
            - data[1] * (data[3] * data[8] - data[5] * data[6])
            + data[2] * (data[3] * data[7] - data[4] * data[6]);
        prop_assert_eq!(q.rank() == 3, det != 0);
    }

    #[test]
    fn fields_invert(a in 1i64..5, p in -20i64..20, r in 1i64..20) {
        let x = F5::new(a);
        prop_assert_eq!(x.clone() * x.inverse().unwrap(), F5::new(1));
        let q = Q::new(p.into(), r.into());
        if p != 0 {
            prop_assert_eq!(q.clone() * q.inverse().unwrap(), Q::from_i64(1));
        } else {
            prop_assert!(q.inverse().is_none());
        }
    }

    #[test]
    fn random_complexes_square_to_zero(kind in 0u8..4, seed in any::<u64>()) {
        let alg = quiver(kind);
        let x = complex(&alg, seed, &RandomParams::default());
        let (lo, hi) = x.support().unwrap();
        let rebuilt = Complex::new(
            alg.clone(),
            (lo..=hi).map(|n| (n, x.term(n).to_vec())).collect(),
            (lo..hi).map(|n| (n, x.diff(n).into_owned())).collect(),
        );
        prop_assert_eq!(rebuilt.unwrap(), x.clone());
        prop_assert!(!x.term(lo).is_empty() && !x.term(hi).is_empty());
        prop_assert!(hi - lo < 7 && lo >= -3 && hi <= 3);
    }

    #[test]
    fn hom_from_projectives_matches_oracle(kind in 0u8..4, seed in any::<u64>()) {
        let alg = quiver(kind);
        let x = complex(&alg, seed, &RandomParams::default());
        let (lo, hi) = x.support().unwrap();
        for i in 0..alg.vertex_count() {
            let p = Complex::stalk(alg.clone(), vec![i], 0);
            for n in lo - 1..=hi + 1 {
                prop_assert_eq!(hom_space(&p, &x, n).unwrap().dimension(), oracle_hom_dim(&alg, &x, i, n));
            }
        }
        if kind == 0 {
            for n in lo..=hi {
                let h = cohomology_dims(&x).get(&n).copied().unwrap_or(0);
                prop_assert_eq!(h, oracle_hom_dim(&alg, &x, 0, n));
            }
        }
    }

    #[test]
    fn hom_dims_survive_suspension_and_reordering(kind in 1u8..4, s1 in any::<u64>(), s2 in any::<u64>(), n in -2i32..3, k in 1i32..3) {
        let alg = quiver(kind);
        let x = complex(&alg, s1, &small());
        let y = complex(&alg, s2, &small());
        let d = hom_space(&x, &y, n).unwrap().dimension();
        prop_assert_eq!(hom_space(&x.suspend(k), &y.suspend(k), n).unwrap().dimension(), d);
        prop_assert_eq!(hom_space(&x, &y.suspend(n), 0).unwrap().dimension(), d);
        let (lo, _) = y.support().unwrap();
        let r = y.term(lo).len();
        let perm: Vec<usize> = (0..r).rev().collect();
        prop_assert_eq!(hom_space(&x, &y.reorder_term(lo, &perm), n).unwrap().dimension(), d);
    }

    #[test]
    fn hom_representatives_are_independent_classes(kind in 1u8..3, s1 in any::<u64>(), s2 in any::<u64>(), n in -1i32..2) {
        let alg = quiver(kind);
        let x = complex(&alg, s1, &small());
        let y = complex(&alg, s2, &small());
        let h = hom_space(&x, &y, n).unwrap();
        let mut sum = ChainMap::zero(&x, &y, n);
        for (j, rep) in h.representatives.iter().enumerate() {
            prop_assert!(rep.is_chain_map());
            prop_assert!(is_null_homotopic(rep).is_none());
            let coords = h.coordinates(rep).unwrap();
            for (i, c) in coords.iter().enumerate() {
                prop_assert_eq!(*c == F5::new(1), i == j);
            }
            sum = sum.add(&rep.scale(&F5::new(j as i64 + 1)));
        }
        let expected: Vec<F5> = (0..h.dimension()).map(|j| F5::new(j as i64 + 1)).collect();
        prop_assert_eq!(h.coordinates(&sum).unwrap(), expected);
    }

    #[test]
    fn cones_of_random_maps_are_sound(kind in 0u8..3, s1 in any::<u64>(), s2 in any::<u64>(), pick in any::<u64>()) {
        let alg = quiver(kind);
        let x = complex(&alg, s1, &small());
        let y = complex(&alg, s2, &small());
        let h = hom_space(&x, &y, 0).unwrap();
        let f = h.representatives.iter().enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(ChainMap::zero(&x, &y, 0), |acc, (_, r)| acc.add(r));
        let t = cone(&f).unwrap();
        prop_assert!(t.is_sound(), "{:?}", t.failures());
    }

    #[test]
    fn decompositions_land_in_both_halves(kind in 0u8..4, seed in any::<u64>(), algebra_stalk in any::<bool>()) {
        let alg = quiver(kind);
        let x = complex(&alg, seed, &small());
        let gens = if algebra_stalk {
            GeneratorSet::algebra_stalk(alg.clone())
        } else {
            let tops: Vec<ComplexF5> = (0..alg.vertex_count())
                .map(|v| Complex::stalk(alg.clone(), vec![v], 0))
                .collect();
            GeneratorSet::new(tops, true).unwrap()
        };
        let dec = decompose(&x, &gens, default_max_iter(&x, &gens)).unwrap();
        prop_assert!(in_b(&dec.b_part, &gens).unwrap().holds);
        prop_assert!(in_a_bar(&dec.a_part, &gens).unwrap().holds);
        prop_assert!(dec.a_bar.holds);
        prop_assert!(dec.triangle.is_sound(), "{:?}", dec.triangle.failures());
        prop_assert!(hom_space(&dec.a_part.suspend(-1), &dec.b_part, 0).unwrap().is_zero());
    }

    #[test]
    fn corpora_are_deterministic(kind in 0u8..4, seed in any::<u64>()) {
        let alg = quiver(kind);
        let a: Vec<ComplexF5> = random_corpus(&alg, &small(), seed, 5);
        let b: Vec<ComplexF5> = random_corpus(&alg, &small(), seed, 5);
        prop_assert_eq!(a, b);
    }
}
