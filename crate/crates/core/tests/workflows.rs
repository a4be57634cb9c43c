use homlie_core::binhom::{f_of_phi, f_space, pair_maps_satisfy, satisfies_f_equation, Symmetry};
use homlie_core::homspaces::{centroid_basis, hom_lie_basis, hom_lie_basis_all_triples, is_hom_lie, MapSpace};
use homlie_core::jordancheck::{anticommutator_closure, harvest_square_zero, square_closure};
use homlie_core::suits::{heart_from_squarezero, heart_search};
use homlie_core::{Field, Gf5, Gf7, LieAlgebra, Matrix, Rational};
use proptest::prelude::*;

type Q = Rational;

fn shifts<T: Field>(p: usize) -> Vec<Matrix<T>> {
    (0..p)
        .map(|sigma| {
            let mut m = Matrix::zeros(p, p);
            for a in 0..p {
                m[((a + sigma) % p, a)] = T::one();
            }
            m
        })
        .collect()
}

#[test]
fn witt_homlie_is_spanned_by_shifts() {
    let l = LieAlgebra::<Gf7>::witt_mod_p().unwrap();
    let s = hom_lie_basis(&l).unwrap();
    let span = MapSpace::spanned_by(7, &shifts(7)).unwrap();
    assert!(s.is_subspace_of(&span) && span.is_subspace_of(&s));
    assert!(anticommutator_closure(&s).closed);
}

#[test]
fn deduplicated_system_matches_all_triples() {
    let sl2 = LieAlgebra::<Q>::sl2();
    for l in [
        sl2.clone(),
        sl2.current(2).unwrap(),
        sl2.direct_sum(&LieAlgebra::heisenberg()),
    ] {
        assert_eq!(
            hom_lie_basis(&l).unwrap().basis(),
            hom_lie_basis_all_triples(&l).unwrap().basis()
        );
    }
    let z = LieAlgebra::<Gf5>::zassenhaus(1).unwrap();
    assert_eq!(
        hom_lie_basis(&z).unwrap().basis(),
        hom_lie_basis_all_triples(&z).unwrap().basis()
    );
}

#[test]
fn json_document_drives_the_same_analysis() {
    let l = LieAlgebra::<Gf5>::zassenhaus(1).unwrap();
    let doc = serde_json::to_string(&l.to_json()).unwrap();
    let back = LieAlgebra::<Gf5>::from_json(&serde_json::from_str(&doc).unwrap()).unwrap();
    assert_eq!(hom_lie_basis(&back).unwrap(), hom_lie_basis(&l).unwrap());
    assert!(LieAlgebra::<Q>::from_json(&l.to_json()).is_err());
}

#[test]
fn zassenhaus_heart_pipeline() {
    let l = LieAlgebra::<Gf5>::zassenhaus(1).unwrap();
    let out = heart_search(&l, 64, 3).unwrap();
    let w = out.witness.expect("heart witness");
    assert_eq!(w.a.dim() + w.b.dim(), 5);
    let s = hom_lie_basis(&l).unwrap();
    for z in harvest_square_zero(&l, &s, 64, 3).found {
        assert!(z.matrix.mul(&z.matrix).is_zero());
        heart_from_squarezero(&l, &z.matrix).unwrap();
    }
}

#[test]
fn centroid_of_sl2_sum_is_two_dimensional() {
    let sl2 = LieAlgebra::<Q>::sl2();
    let c = centroid_basis(&sl2.direct_sum(&sl2)).unwrap();
    assert_eq!(c.dim(), 2);
    assert_eq!(centroid_basis(&sl2).unwrap().dim(), 1);
}

#[test]
fn f_space_contains_images_on_current_algebra() {
    let l = LieAlgebra::<Q>::sl2().current(2).unwrap();
    let skew = f_space(&l, Symmetry::Skew).unwrap();
    for phi in hom_lie_basis(&l).unwrap().basis() {
        assert!(skew.contains(&f_of_phi(&l, phi).unwrap()));
    }
}

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

#[test]
fn closure_equivalences_on_open_spaces() {
    // r2 + r2 and the 4-dimensional filiform algebra
    let r2r2 = LieAlgebra::<Q>::from_brackets(4, vec![(0, 1, vec![(1, q(1))]), (2, 3, vec![(3, q(1))])]).unwrap();
    let fil = LieAlgebra::<Q>::from_brackets(4, vec![(0, 1, vec![(2, q(1))]), (0, 2, vec![(3, q(1))])]).unwrap();
    for (l, dim) in [(r2r2, 12), (fil, 14)] {
        let s = hom_lie_basis(&l).unwrap();
        assert_eq!(s.dim(), dim);
        let closed = anticommutator_closure(&s);
        assert!(!closed.closed);
        let (i, j) = closed.witness.as_ref().unwrap().pair;
        assert!(!s.contains(&homlie_core::jordancheck::anticommutator(&s.basis()[i], &s.basis()[j])));
        assert!(!square_closure(&s));
        assert!(!pair_maps_satisfy(&l, &s).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homlie_membership_matches_direct_check(v in proptest::collection::vec(-2i64..=2, 9), pick in 0usize..6) {
        let l = LieAlgebra::<Q>::sl2();
        let s = hom_lie_basis(&l).unwrap();
        let phi = Matrix::from_vec(3, 3, v.into_iter().map(Q::from_i64).collect()).unwrap();
        prop_assert_eq!(s.contains(&phi), is_hom_lie(&l, &phi));
        let sum = phi.add(&s.basis()[pick]);
        prop_assert_eq!(s.contains(&sum), s.contains(&phi));
        prop_assert_eq!(satisfies_f_equation(&l, &f_of_phi(&l, &phi).unwrap()).unwrap(), s.contains(&phi));
    }

    #[test]
    fn witt_shift_combinations_are_homlie(c in proptest::collection::vec(0i64..5, 5)) {
        let l = LieAlgebra::<Gf5>::witt_mod_p().unwrap();
        let m = shifts::<Gf5>(5)
            .iter()
            .zip(&c)
            .fold(Matrix::zeros(5, 5), |acc, (s, &k)| acc.add(&s.scale(&Gf5::from_i64(k))));
        prop_assert!(is_hom_lie(&l, &m));
    }
}
