use proptest::prelude::*;
use tightframe::frames::{
    ap_two_tight, iterate_two_tight, make_two_row_table, sign_matrix, weight_in_front,
    weight_in_front_unnormalized,
};
use tightframe::paving::weight_profile;
use tightframe::unitary::{
    block_pair, constant_first_row, constant_two_rows, second_case, two_constant_diag, weave,
    BlockPairForm, WeaveCoefficients,
};
use tightframe::verify::{check_orthogonal_columns, check_tight_frame, check_unitary};
use tightframe::{hyperplane, rational, Error, ExactMatrix, RadicalScalar, Rational};

fn q(n: i64) -> Rational {
    rational(n, 1)
}

fn unitary(a: &ExactMatrix) -> bool {
    check_unitary(a).is_ok_and(|r| r.passed)
}

fn two_tight(a: &ExactMatrix) -> bool {
    let r = check_tight_frame(a);
    r.all_passed() && r.k_value == Some(q(2))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..50, 1i64..20).prop_map(|(n, d)| rational(n, d))
}

/// Rotation with rational cosine and sine from a Pythagorean triple.
fn rotation() -> impl Strategy<Value = (RadicalScalar, RadicalScalar)> {
    (1i64..12, 1i64..12, any::<bool>()).prop_map(|(p, r, flip)| {
        let d = p * p + r * r;
        let (c, s) = (rational(p * p - r * r, d), rational(2 * p * r, d));
        let s = if flip { -s } else { s };
        (RadicalScalar::from_rational(c), RadicalScalar::from_rational(s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ap_frames_are_two_tight(a in positive_rational(), b in (0i64..50, 1i64..20)) {
        let b = rational(b.0, b.1);
        let f = ap_two_tight(&a, &b).unwrap();
        prop_assert_eq!(f.shape(), (8, 4));
        prop_assert!(two_tight(&f));
    }

    #[test]
    fn iterated_frames_are_two_tight(a in positive_rational(), b in positive_rational()) {
        let (fa, fb) = (ap_two_tight(&a, &b).unwrap(), ap_two_tight(&b, &a).unwrap());
        let it = iterate_two_tight(&fa, &fb).unwrap();
        // four row blocks, each row the concatenation of two unit rows
        prop_assert_eq!(it.shape(), (32, 8));
        let r = check_tight_frame(&it);
        prop_assert!(r.passed);
        prop_assert_eq!(r.k_value, Some(q(8)));
        let unit = check_tight_frame(&it.normalize_rows().unwrap());
        prop_assert!(unit.all_passed());
        prop_assert_eq!(unit.k_value, Some(q(4)));
    }

    #[test]
    fn weave_of_rotation_and_unitaries((c, s) in rotation(), m in 2usize..6) {
        let coeffs = WeaveCoefficients::rotation(&c, &s).unwrap();
        prop_assert!(coeffs.is_orthonormal());
        let blocks = [constant_first_row(m).unwrap(), two_constant_diag(m).unwrap()];
        prop_assert!(unitary(&weave(&coeffs, &blocks).unwrap()));
    }

    #[test]
    fn weave_of_rotation_and_frames((c, s) in rotation(), a in positive_rational(), b in positive_rational()) {
        let coeffs = WeaveCoefficients::rotation(&c, &s).unwrap();
        let blocks = [ap_two_tight(&a, &b).unwrap(), ap_two_tight(&b, &a).unwrap()];
        let w = weave(&coeffs, &blocks).unwrap();
        prop_assert_eq!(w.shape(), (16, 8));
        prop_assert!(two_tight(&w));
    }

    #[test]
    fn weave_keeps_columns_orthogonal((c, s) in rotation(), scale in 1i64..5) {
        // unnormalized coefficient columns still weave to orthogonal columns
        let coeffs = ExactMatrix::from_rows(vec![
            vec![c.clone(), s.scale(&q(scale))],
            vec![-&s, c.scale(&q(scale))],
        ]).unwrap();
        let coeffs = WeaveCoefficients::new(coeffs).unwrap();
        let blocks = [
            hyperplane::build(4).unwrap().into_matrix().transpose(),
            ExactMatrix::identity(4).row_slice(0, 2).unwrap().transpose(),
        ];
        let w = weave(&coeffs, &blocks).unwrap();
        prop_assert!(check_orthogonal_columns(&w).passed);
    }

    #[test]
    fn block_pair_corrected_is_unitary((c, s) in rotation(), m in 2usize..5) {
        let (a, b) = (constant_first_row(m).unwrap(), two_constant_diag(m).unwrap());
        let u = block_pair(&a, &b, &c, &s, BlockPairForm::Corrected).unwrap();
        prop_assert!(unitary(&u));
    }

    #[test]
    fn weight_in_front_tables(
        values in prop::collection::vec(1i64..40, 1..=8),
        extra in 0i64..20,
    ) {
        let len = values.len().next_power_of_two().max(2);
        let mut values: Vec<Rational> = values.into_iter().map(q).collect();
        values.resize(len, q(1));
        let m = values.iter().max().unwrap() + q(extra);
        let table = make_two_row_table(&values, &m).unwrap();
        let width = table.width() as i64;
        prop_assert_eq!(table.row_sum(), &m * q(width / 2));
        for j in 0..table.width() {
            prop_assert_eq!(&table.top()[j] + &table.bottom()[j], m.clone());
        }
        let raw = weight_in_front_unnormalized(&table).unwrap();
        let expected = RadicalScalar::from_rational(&m * q(width));
        prop_assert!(weight_profile(&raw).column_sums.iter().all(|c| *c == expected));
        prop_assert!(two_tight(&weight_in_front(&table).unwrap()));
    }
}

#[test]
fn two_row_family_over_even_sizes() {
    for n in (4..=20).step_by(2) {
        let u = constant_two_rows(n).unwrap();
        assert!(unitary(&u), "n = {n}");
        // the first two rows are constant in absolute value
        for i in 0..2 {
            let first = u[(i, 0)].square();
            assert!(u.row(i).iter().all(|x| x.square() == first), "n = {n}, row {i}");
        }
    }
    assert!(matches!(constant_two_rows(5), Err(Error::Domain(_))));
    assert!(matches!(constant_two_rows(2), Err(Error::Domain(_))));
}

#[test]
fn second_case_needs_quarter_constraint() {
    let half: RadicalScalar = "1/2".parse().unwrap();
    assert!(second_case(&half, &half).is_err());
    let a: RadicalScalar = "1/4*sqrt(2)".parse().unwrap();
    assert!(unitary(&second_case(&a, &a).unwrap()));
}

#[test]
fn paper_block_pair_is_refused_off_the_diagonal_case() {
    let id = ExactMatrix::identity(2);
    let (a, b): (RadicalScalar, RadicalScalar) = ("3/5".parse().unwrap(), "4/5".parse().unwrap());
    match block_pair(&id, &id, &a, &b, BlockPairForm::Paper) {
        Err(Error::Refused { defect, .. }) => assert!(defect.starts_with("diag(")),
        other => panic!("{other:?}"),
    }
    let h: RadicalScalar = "1/2*sqrt(2)".parse().unwrap();
    assert!(unitary(&block_pair(&id, &id, &h, &h, BlockPairForm::Paper).unwrap()));
}

#[test]
fn weave_rejects_bad_inputs() {
    let coeffs = WeaveCoefficients::new(ExactMatrix::identity(2)).unwrap();
    let blocks = [ExactMatrix::identity(2)];
    assert!(matches!(weave(&coeffs, &blocks), Err(Error::Dimension { .. })));
    let skew = ExactMatrix::from_integers(&[[1, 1], [0, 1]]).unwrap();
    assert!(WeaveCoefficients::new(skew.clone()).is_err());
    let blocks = [skew, ExactMatrix::identity(2)];
    assert!(matches!(weave(&coeffs, &blocks), Err(Error::Precondition(_))));
}

#[test]
fn sign_matrices_are_hadamard() {
    for j in 2..=5 {
        let s = sign_matrix(j).unwrap();
        let n = s.order();
        assert_eq!(n, 1 << j);
        let gram = s.matrix().gram_rows();
        assert_eq!(gram, ExactMatrix::identity(n).scale_rational(&q(n as i64)), "order {n}");
        assert!(s.is_negative(0, 0));
    }
    assert!(sign_matrix(1).is_err());
}

#[test]
fn table_inputs_are_checked() {
    assert!(make_two_row_table(&[q(1), q(2), q(3)], &q(5)).is_err());
    assert!(make_two_row_table(&[q(1), q(9)], &q(5)).is_err());
    assert!(make_two_row_table(&[q(0), q(1)], &q(5)).is_err());
    assert!(ap_two_tight(&q(0), &q(1)).is_err());
    assert!(ap_two_tight(&q(1), &q(-1)).is_err());
}

#[test]
fn matrix_algebra() {
    let a = hyperplane::build(6).unwrap().into_matrix();
    let b = constant_first_row(6).unwrap();
    let c = two_constant_diag(6).unwrap();
    assert_eq!(
        a.matmul(&b).unwrap().matmul(&c).unwrap(),
        a.matmul(&b.matmul(&c).unwrap()).unwrap()
    );
    assert_eq!(a.reverse_rows().reverse_rows(), a);
    assert_eq!(a.reverse_cols().reverse_cols(), a);
    assert_eq!(a.reverse_both(), a.reverse_rows().reverse_cols());
    assert_eq!(a.transpose().transpose(), a);
    assert_eq!(b.matmul(&b.transpose()).unwrap(), ExactMatrix::identity(6));
    assert!(a.matmul(&a).is_err());
}
