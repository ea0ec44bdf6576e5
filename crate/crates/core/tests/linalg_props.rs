use beilinson_core::linalg::{in_span, FieldSpec, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(101).unwrap()),
        Just(FieldSpec::Rationals),
    ]
}

fn scalar(field: FieldSpec, num: i64, den: i64) -> Scalar {
    match field {
        FieldSpec::Rationals => Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
        _ => field.from_i64(num),
    }
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0..6usize, 0..6usize).prop_flat_map(|(field, r, c)| {
        prop::collection::vec((-5i64..=5, 1i64..=4), r * c).prop_map(move |entries| {
            let rows = entries
                .chunks(c.max(1))
                .take(r)
                .map(|ch| ch.iter().map(|&(n, d)| scalar(field, n, d)).collect())
                .collect();
            Matrix::from_row_vecs(field, c, if c == 0 { vec![vec![]; r] } else { rows }).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_column_count(m in matrix_strategy()) {
        let k = m.kernel_basis().unwrap();
        prop_assert_eq!(m.rank().unwrap() + k.len(), m.cols());
    }

    #[test]
    fn rref_is_idempotent_and_pivots_are_unit_columns(m in matrix_strategy()) {
        let rr = m.rref().unwrap();
        prop_assert_eq!(&rr.echelon.rref().unwrap().echelon, &rr.echelon);
        for (r, &c) in rr.pivots.iter().enumerate() {
            for i in 0..rr.echelon.rows() {
                prop_assert_eq!(rr.echelon.get(i, c).is_one(), i == r);
                prop_assert!(i == r || rr.echelon.get(i, c).is_zero());
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix_strategy()) {
        for v in m.kernel_basis().unwrap() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(m in matrix_strategy()) {
        prop_assert_eq!(m.rank().unwrap(), m.transpose().rank().unwrap());
    }

    #[test]
    fn combinations_of_rows_are_in_their_span(
        m in matrix_strategy(),
        coeffs in prop::collection::vec(-3i64..=3, 6),
    ) {
        prop_assume!(m.rows() > 0 && m.cols() > 0);
        let field = m.field();
        let rows = m.row_vecs();
        let mut v = vec![field.zero(); m.cols()];
        for (row, &c) in rows.iter().zip(&coeffs) {
            let c = field.from_i64(c);
            for (x, y) in v.iter_mut().zip(row) {
                *x += &(&c * y);
            }
        }
        let w = in_span(&v, &rows).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        let mut back = vec![field.zero(); m.cols()];
        for (row, c) in rows.iter().zip(&w) {
            for (x, y) in back.iter_mut().zip(row) {
                *x += &(c * y);
            }
        }
        prop_assert_eq!(back, v);
    }

    #[test]
    fn product_transposes_in_reverse(a in matrix_strategy(), seed in 0u64..1000) {
        let field = a.field();
        let cols = (seed % 4) as usize;
        let b = Matrix::from_row_vecs(
            field,
            cols,
            (0..a.cols())
                .map(|i| (0..cols).map(|j| field.from_i64((seed as i64 + 3 * i as i64 - j as i64) % 7)).collect())
                .collect(),
        )
        .unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
    }

    #[test]
    fn nonzero_residues_invert(v in 1i64..101) {
        let f = FieldSpec::prime(101).unwrap();
        let x = f.from_i64(v);
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }
}
