use proptest::prelude::*;

use qgca_core::intmat;
use qgca_core::qmatrix::{LocAlgebra, MatAlgebra, MatElement, Shape};
use qgca_core::seed::{e_matrix, Seed, GRADING};
use qgca_core::verify::principal_seed;
use qgca_core::QCoeff;

fn skew(m: usize, entries: &[i64]) -> Vec<Vec<i64>> {
    let mut b = intmat::zeros(m, m);
    let mut it = entries.iter();
    for i in 0..m {
        for j in i + 1..m {
            let x = *it.next().unwrap();
            b[i][j] = x;
            b[j][i] = -x;
        }
    }
    b
}

prop_compose! {
    fn seeds()(m in 1usize..=2, d in 1i64..=3, pad in any::<bool>(),
               entries in prop::collection::vec(-3i64..=3, 1),
               top in prop::collection::vec(-3i64..=3, 2),
               moves in prop::collection::vec(0usize..2, 0..3)) -> Seed {
        let s = principal_seed(&skew(m, &entries), d, pad, &top[..m]).unwrap();
        moves.iter().fold(s, |s, &k| s.mutate(k % m).unwrap())
    }
}

fn qcoeffs() -> impl Strategy<Value = QCoeff> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(QCoeff::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn e_is_an_involution(s in seeds(), k in 0usize..2) {
        let k = s.mutable_indices()[k % s.mutable_indices().len()];
        let e = e_matrix(s.b(), k, s.mutable()).unwrap();
        prop_assert_eq!(intmat::matmul(&e, &e), intmat::identity(s.rank()));
    }

    #[test]
    fn mutation_is_involutive_and_keeps_d(s in seeds(), k in 0usize..2) {
        let k = s.mutable_indices()[k % s.mutable_indices().len()];
        let m = s.mutate(k).unwrap();
        prop_assert_eq!(m.check_matrices().unwrap(), s.check_matrices().unwrap());
        m.check_quasi_commutation().unwrap();
        prop_assert_eq!(m.mutate(k).unwrap(), s);
    }

    #[test]
    fn mutated_variables_are_homogeneous(s in seeds(), moves in prop::collection::vec(0usize..2, 1..4)) {
        // weights can only be read off while the cluster is the torus generators
        let initial = Seed::initial(
            s.b().clone(), s.l().clone(), s.gradings().clone(), s.mutable().to_vec(),
            s.vertices().to_vec(), s.labels().to_vec(),
        ).unwrap();
        let w = initial.torus_weights().unwrap();
        let ks = initial.mutable_indices();
        let m = moves.iter().fold(initial, |m, &k| m.mutate(ks[k % ks.len()]).unwrap());
        m.check_homogeneity(&w).unwrap();
    }

    #[test]
    fn rescaling_reverses(s in seeds(), shift in -2i64..=2) {
        let g: Vec<i64> = s.grading(GRADING).unwrap().iter().map(|x| x * shift).collect();
        let r = s.rescale_by_q(&g).unwrap();
        let back: Vec<i64> = g.iter().map(|x| -x).collect();
        prop_assert_eq!(r.rescale_by_q(&back).unwrap(), s);
    }

    #[test]
    fn qcoeff_ring_laws(a in qcoeffs(), b in qcoeffs(), c in qcoeffs()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &a), &QCoeff::zero());
    }
}

fn words() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1usize..=2, 1usize..=3), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quantum_matrix_product_is_associative(a in words(), b in words(), c in words()) {
        let alg = MatAlgebra::new(Shape::new(2, 3));
        let nf = |w: &[(usize, usize)]| alg.normal_form(&QCoeff::one(), w).unwrap();
        let (x, y, z) = (nf(&a), nf(&b), nf(&c));
        let left = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let whole: Vec<_> = a.iter().chain(&b).chain(&c).cloned().collect();
        prop_assert_eq!(left, nf(&whole));
    }

    #[test]
    fn right_division_inverts_multiplication(a in words(), b in words()) {
        let alg = MatAlgebra::new(Shape::new(2, 3));
        let x = alg.normal_form(&QCoeff::one(), &a).unwrap();
        // a word times X11 has a unit leading coefficient above the constant
        let b: Vec<_> = b.iter().cloned().chain([(1, 1)]).collect();
        let y = alg.normal_form(&QCoeff::one(), &b).unwrap().add(&MatElement::one(alg.shape())).unwrap();
        prop_assert_eq!(alg.divide_right(&alg.mul(&x, &y).unwrap(), &y).unwrap(), x);
    }

    #[test]
    fn alpha_is_multiplicative(a in words(), b in words()) {
        let loc = LocAlgebra::new(2, 5).unwrap();
        let alg = MatAlgebra::new(Shape::new(2, 3));
        let x = alg.normal_form(&QCoeff::one(), &a).unwrap();
        let y = alg.normal_form(&QCoeff::one(), &b).unwrap();
        let lhs = loc.alpha(&alg.mul(&x, &y).unwrap()).unwrap();
        let rhs = loc.normalize(&loc.mul(&loc.alpha(&x).unwrap(), &loc.alpha(&y).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
