use cfinv_core::invariants::{random_full_rank, random_symplectic, recover_g_sp, Invariance};
use cfinv_core::json::{matrix_from_json, matrix_to_json, skew_from_json, skew_to_json};
use cfinv_core::skew::{factor_through_form, pfaffian, pull_back_form, skew_normal_form};
use cfinv_core::varieties::{Case, Locus};
use cfinv_core::{ExactMatrix, Field, Scalar, SkewMatrix, StandardForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Q),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(7))
    ]
}

fn skew_from(field: Field, n: usize, v: &[i64]) -> SkewMatrix<Scalar> {
    let mut k = 0;
    SkewMatrix::from_fn(n, |_, _| {
        k += 1;
        field.from_i64(v[k - 1])
    })
}

fn arb_skew(max_n: usize) -> impl Strategy<Value = (Field, SkewMatrix<Scalar>)> {
    (fields(), 0..=max_n).prop_flat_map(|(f, n)| {
        proptest::collection::vec(-4i64..=4, n * n.saturating_sub(1) / 2).prop_map(move |v| (f, skew_from(f, n, &v)))
    })
}

fn arb_square(field: Field, n: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| ExactMatrix::from_fn(field, n, n, |i, j| field.from_i64(v[i * n + j])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pfaffian_squares_to_determinant((f, a) in arb_skew(8)) {
        prop_assume!(a.size() % 2 == 0);
        let pf = pfaffian(&f, &a).unwrap();
        prop_assert_eq!(&pf * &pf, a.to_exact(f).determinant().unwrap());
    }

    #[test]
    fn pfaffian_of_congruence_scales_by_determinant(
        (f, a, x) in arb_skew(6)
            .prop_filter("even", |(_, a)| a.size() % 2 == 0)
            .prop_flat_map(|(f, a)| { let n = a.size(); (Just(f), Just(a), arb_square(f, n)) })
    ) {
        let moved = x.transpose().mul(&a.to_exact(f)).unwrap().mul(&x).unwrap();
        let b = SkewMatrix::from_exact(&moved).unwrap();
        let lhs = pfaffian(&f, &b).unwrap();
        let rhs = &x.determinant().unwrap() * &pfaffian(&f, &a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_a_congruence((f, a) in arb_skew(8)) {
        let nf = skew_normal_form(f, &a);
        prop_assert!(nf.x.inverse().is_some());
        let got = nf.x.transpose().mul(&a.to_exact(f)).unwrap().mul(&nf.x).unwrap();
        prop_assert_eq!(got, StandardForm::new(f, nf.r).padded(a.size()));
        prop_assert_eq!(2 * nf.r, a.to_exact(f).rank());
    }

    #[test]
    fn factor_round_trips_exactly_when_rank_allows((f, a) in arb_skew(6), t in 1usize..=4) {
        let rank = a.to_exact(f).rank();
        match factor_through_form(f, &a, t) {
            Ok(tm) => {
                prop_assert!(rank <= 2 * (t - 1));
                prop_assert_eq!(pull_back_form(&tm).unwrap(), a);
            }
            Err(_) => prop_assert!(rank > 2 * (t - 1)),
        }
    }

    #[test]
    fn json_round_trips((f, a) in arb_skew(6)) {
        let (g, b) = skew_from_json(&skew_to_json(f, &a)).unwrap();
        prop_assert_eq!(g, f);
        prop_assert_eq!(b, a.clone());
        let m = a.to_exact(f);
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn symplectic_fibers_recover_their_group_element(seed in 0u64..1000, r in 1usize..=2, extra in 0usize..=2) {
        let f = Field::Prime(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_full_rank(f, 2 * r, 2 * r + extra, 4, &mut rng);
        let g0 = random_symplectic(f, r, 5, &mut rng);
        let phi2 = g0.inverse().unwrap().mul(&phi).unwrap();
        prop_assert_eq!(recover_g_sp(&phi, &phi2).unwrap(), Some(g0));
    }
}

#[test]
fn coordinate_images_are_invariant() {
    let cases = [Case::gl(3, 2, 2), Case::gl(3, 3, 3), Case::sp(5, 2), Case::sp(6, 3)];
    for case in cases {
        let case = case.unwrap();
        for f in [Q, Field::Prime(2), Field::Prime(3)] {
            let locus = Locus::new(case, f).unwrap();
            let inv = Invariance::new(case, f).unwrap();
            let images = locus.coordinate_images().unwrap();
            for (k, y) in images.iter().enumerate() {
                assert!(inv.is_invariant(y).unwrap(), "{case} over {f}: coordinate {k}");
                let z = &images[(k + 1) % images.len()];
                assert!(inv.is_invariant(&y.mul(z)).unwrap(), "{case} over {f}: product {k}");
            }
        }
    }
}

#[test]
fn single_parameter_coordinates_are_not_invariant() {
    for case in [Case::gl(2, 2, 2).unwrap(), Case::sp(4, 2).unwrap()] {
        for f in [Q, Field::Prime(2)] {
            let locus = Locus::new(case, f).unwrap();
            let inv = Invariance::new(case, f).unwrap();
            let ring = &locus.param.ring;
            for v in 0..ring.nvars() {
                assert!(
                    !inv.is_invariant(&ring.var(v)).unwrap(),
                    "{case} over {f}: variable {v}"
                );
            }
        }
    }
}
