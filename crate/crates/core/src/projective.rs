//! Enumeration of projective points over prime fields.

use crate::linalg::{normalize_leading_one, FieldSpec, Scalar};

/// Number of lines in `F_q^dim`, i.e. `(q^dim - 1) / (q - 1)`. Saturates.
pub fn line_count(q: u32, dim: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q);
    }
    total
}

/// Canonical (leading-1) representatives of every line in `F_p^len`, in a
/// fixed order: by position of the leading 1, then odometer order on the
/// trailing coordinates.
pub fn lines(field: FieldSpec, len: usize) -> Lines {
    let p = field.order().expect("enumeration needs a finite field");
    Lines {
        p,
        len,
        lead: 0,
        tail: vec![0; len.saturating_sub(1)],
        done: len == 0,
    }
}

pub struct Lines {
    p: u32,
    len: usize,
    lead: usize,
    tail: Vec<u32>,
    done: bool,
}

impl Iterator for Lines {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        if self.done {
            return None;
        }
        let p = self.p;
        let mut v = Vec::with_capacity(self.len);
        for _ in 0..self.lead {
            v.push(Scalar::Mod { value: 0, p });
        }
        v.push(Scalar::Mod { value: 1 % p, p });
        for &t in &self.tail {
            v.push(Scalar::Mod { value: t, p });
        }
        // advance
        let mut i = self.tail.len();
        loop {
            if i == 0 {
                self.lead += 1;
                if self.lead == self.len {
                    self.done = true;
                } else {
                    self.tail = vec![0; self.len - self.lead - 1];
                }
                break;
            }
            i -= 1;
            self.tail[i] += 1;
            if self.tail[i] < p {
                break;
            }
            self.tail[i] = 0;
        }
        Some(v)
    }
}

/// Canonical representatives of the lines inside `span(basis)`. The basis
/// must be linearly independent; the output has no duplicates.
pub fn lines_in_span(field: FieldSpec, basis: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let Some(width) = basis.first().map(Vec::len) else {
        return Vec::new();
    };
    lines(field, basis.len())
        .map(|coeffs| {
            let mut v = vec![field.zero(); width];
            for (c, b) in coeffs.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &(c * y);
                }
            }
            let nonzero = normalize_leading_one(&mut v);
            debug_assert!(nonzero, "basis must be independent");
            v
        })
        .collect()
}
