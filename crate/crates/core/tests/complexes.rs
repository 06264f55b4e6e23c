use std::sync::Arc;

use cotstruct_core::algebra::{PathAlgebra, Quiver};
use cotstruct_core::complexes::{
    cohomology_dims, cone, direct_sum, hom_space, is_contractible, is_null_homotopic, shift_window,
    ChainMap, Complex,
};
use cotstruct_core::F5;

fn trivial() -> Arc<PathAlgebra> {
    Arc::new(PathAlgebra::new(Quiver::trivial()))
}

fn a2() -> Arc<PathAlgebra> {
    Arc::new(PathAlgebra::new(Quiver::linear(2)))
}

fn stalk(alg: &Arc<PathAlgebra>, degree: i32) -> Complex<F5> {
    Complex::stalk(alg.clone(), vec![0], degree)
}

fn two_term(alg: &Arc<PathAlgebra>, entry: &str) -> Complex<F5> {
    Complex::from_labels(
        alg.clone(),
        &[(0, &["1"]), (1, &["1"])],
        &[(0, &[&[entry]])],
    )
    .unwrap()
}

#[test]
fn suspension_moves_degrees_and_inverts() {
    let alg = trivial();
    let x = stalk(&alg, 0);
    assert_eq!(x.suspend(0), x);
    assert_eq!(x.suspend(1).support(), Some((-1, -1)));
    let y = two_term(&alg, "2*e_1");
    assert_eq!(y.suspend(1).suspend(-1), y);
}

#[test]
fn stalk_hom_matches_cohomology() {
    let alg = trivial();
    let s = stalk(&alg, 0);
    let x = two_term(&alg, "0");
    assert_eq!(cohomology_dims(&x), [(0, 1), (1, 1)].into());
    for n in -3..=3 {
        let expected = cohomology_dims(&x).get(&n).copied().unwrap_or(0);
        assert_eq!(
            hom_space(&s, &x, n).unwrap().dimension(),
            expected,
            "n = {n}"
        );
    }
}

#[test]
fn contractible_two_term_complex() {
    let alg = trivial();
    let s = stalk(&alg, 0);
    let x = two_term(&alg, "e_1");
    assert!(is_contractible(&x));
    for n in -3..=3 {
        assert_eq!(hom_space(&s, &x, n).unwrap().dimension(), 0);
    }
    assert!(cohomology_dims(&x).is_empty());
}

#[test]
fn identity_of_stalk_is_not_null_homotopic() {
    let alg = trivial();
    let s = stalk(&alg, 0);
    assert!(is_null_homotopic(&ChainMap::identity(&s)).is_none());
    assert!(!is_contractible(&s));
    let z = ChainMap::zero(&s, &s, 0);
    assert!(is_null_homotopic(&z).is_some());
    assert!(is_contractible(&Complex::<F5>::zero(alg)));
}

#[test]
fn hom_space_contains_identity_class() {
    let alg = a2();
    let x =
        Complex::<F5>::from_labels(alg, &[(0, &["1"]), (1, &["2"])], &[(0, &[&["a1"]])]).unwrap();
    let h = hom_space(&x, &x, 0).unwrap();
    assert!(h.dimension() >= 1);
    assert_eq!(h.dimension(), h.ambient_dim - h.boundary_dim);
    let coords = h.coordinates(&ChainMap::identity(&x)).unwrap();
    assert!(coords.iter().any(|c| *c != F5::new(0)));
}

#[test]
fn cone_of_zero_stalk_map() {
    let alg = trivial();
    let k = stalk(&alg, 0);
    let t = cone(&ChainMap::zero(&k, &k, 0)).unwrap();
    let w = t.third();
    assert_eq!(w.support(), Some((-1, 0)));
    assert!(w.diff(-1).is_zero());
    assert!(t.is_sound(), "{:?}", t.failures());
}

#[test]
fn cone_of_identity_is_contractible() {
    let alg = a2();
    let x =
        Complex::<F5>::from_labels(alg, &[(0, &["1"]), (1, &["2"])], &[(0, &[&["a1"]])]).unwrap();
    let t = cone(&ChainMap::identity(&x)).unwrap();
    assert!(is_contractible(t.third()));
    assert!(t.is_sound());
}

#[test]
fn direct_sum_is_additive() {
    let alg = trivial();
    let s = stalk(&alg, 0);
    let x = two_term(&alg, "0");
    let y = stalk(&alg, 1);
    let sum = direct_sum(&alg, &[x.clone(), y.clone()]).unwrap();
    for n in -2..=3 {
        let lhs = hom_space(&s, &sum.sum, n).unwrap().dimension();
        let rhs =
            hom_space(&s, &x, n).unwrap().dimension() + hom_space(&s, &y, n).unwrap().dimension();
        assert_eq!(lhs, rhs);
    }
    for (i, p) in sum.injections.iter().zip(&sum.projections) {
        assert!(i.is_chain_map() && p.is_chain_map());
    }
    assert!(direct_sum::<F5>(&alg, &[]).unwrap().sum.is_empty());
    assert_eq!(direct_sum(&alg, &[x.clone()]).unwrap().sum, x);
}

#[test]
fn shift_window_is_support_overlap() {
    let alg = trivial();
    let x = two_term(&alg, "0");
    let y = stalk(&alg, 3);
    assert_eq!(shift_window(&x, &y), Some((2, 3)));
    assert_eq!(shift_window(&x, &Complex::zero(alg)), None);
}

#[test]
fn a2_homs_between_projective_stalks() {
    let alg = a2();
    let p1 = Complex::<F5>::stalk(alg.clone(), vec![0], 0);
    let p2 = Complex::<F5>::stalk(alg.clone(), vec![1], 0);
    assert_eq!(hom_space(&p1, &p2, 0).unwrap().dimension(), 1);
    assert_eq!(hom_space(&p2, &p1, 0).unwrap().dimension(), 0);
    // The simple at vertex 2 is resolved by P_1 -> P_2.
    let s2 =
        Complex::<F5>::from_labels(alg, &[(-1, &["1"]), (0, &["2"])], &[(-1, &[&["a1"]])]).unwrap();
    assert_eq!(hom_space(&p2, &s2, 0).unwrap().dimension(), 1);
    assert_eq!(hom_space(&p1, &s2, 0).unwrap().dimension(), 0);
    assert_eq!(hom_space(&p1, &s2, -1).unwrap().dimension(), 0);
}
