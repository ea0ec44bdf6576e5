//! Fixtures shared by the benchmarks.

use beilinson_core::graded::ProblemSpec;
use beilinson_core::{FieldSpec, Matrix};

/// Deterministic dense `rows × cols` matrix with small entries.
pub fn dense_matrix(field: FieldSpec, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut state = seed | 1;
    let mut next = || {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 11) as i64 - 5
    };
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| field.from_i64(next())).collect())
        .collect();
    Matrix::from_row_vecs(field, cols, data).expect("rectangular")
}

pub fn conic() -> ProblemSpec {
    ProblemSpec::parse(2, FieldSpec::Rationals, &["X0*X2 - X1^2"], None, None).expect("valid conic")
}

pub fn twisted_cubic() -> ProblemSpec {
    ProblemSpec::parse(
        3,
        FieldSpec::Rationals,
        &["X0*X2 - X1^2", "X0*X3 - X1*X2", "X1*X3 - X2^2"],
        None,
        None,
    )
    .expect("valid twisted cubic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let m = dense_matrix(FieldSpec::prime(7).unwrap(), 4, 5, 3);
        assert_eq!((m.rows(), m.cols()), (4, 5));
        assert_eq!(conic().d, 2);
        assert_eq!(twisted_cubic().polys.len(), 3);
    }
}
