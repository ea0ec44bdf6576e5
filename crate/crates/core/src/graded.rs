//! Degree-by-degree model of the homogeneous coordinate ring `⊕ S^m V / I_m`.
//!
//! Each degree gets a [`GradedSlice`]: the ambient monomial basis of `S^m V`,
//! the standard (non-pivot) monomials spanning the quotient, and a projection
//! from ambient coordinates to quotient coordinates. Multiplication by a
//! variable between consecutive slices is a [`MultMap`].

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{FieldSpec, LinalgError, Matrix, Scalar};
use crate::poly::{HomPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("ambient dimension n must be at least 1")]
    AmbientTooSmall,
    #[error("polynomial {index} lives in {found} variables, expected {expected}")]
    VariableCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("polynomial {index} is over {found}, expected {expected}")]
    Field {
        index: usize,
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("polynomial {index} is constant; relations must have degree at least 1")]
    ConstantPolynomial { index: usize },
    #[error("degree bound d = {d} is below the largest relation degree {max}")]
    DegreeBound { d: u32, max: u32 },
    #[error("degree bound d must be at least 1")]
    DegreeBoundZero,
    #[error("intermediate degree e = {e} must satisfy 0 < e < d = {d}")]
    Intermediate { e: u32, d: u32 },
    #[error("this construction needs an intermediate degree e, which requires d >= 2")]
    NoIntermediate,
    #[error("problem is over {file}; it cannot be read over F_{q}")]
    FieldOverride { file: FieldSpec, q: u32 },
    #[error("polynomial {index} has no image over F_{q}")]
    VanishesModQ { index: usize, q: u32 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The input data: `X = V(f_1..f_r) ⊂ P^n` with degree bounds `d` and `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub n: usize,
    pub field: FieldSpec,
    pub polys: Vec<HomPoly>,
    pub d: u32,
    pub e: Option<u32>,
}

impl ProblemSpec {
    /// Validates the data. `d` defaults to the largest relation degree (at
    /// least 1), `e` to `d - 1` when `d >= 2`.
    pub fn new(
        n: usize,
        field: FieldSpec,
        polys: Vec<HomPoly>,
        d: Option<u32>,
        e: Option<u32>,
    ) -> Result<Self, SpecError> {
        if n < 1 {
            return Err(SpecError::AmbientTooSmall);
        }
        for (index, f) in polys.iter().enumerate() {
            if f.nvars() != n + 1 {
                return Err(SpecError::VariableCount {
                    index,
                    expected: n + 1,
                    found: f.nvars(),
                });
            }
            if f.field() != field {
                return Err(SpecError::Field {
                    index,
                    expected: field,
                    found: f.field(),
                });
            }
            if f.degree() == 0 {
                return Err(SpecError::ConstantPolynomial { index });
            }
        }
        let max = polys.iter().map(HomPoly::degree).max().unwrap_or(0);
        let d = d.unwrap_or(max.max(1));
        if d == 0 {
            return Err(SpecError::DegreeBoundZero);
        }
        if d < max {
            return Err(SpecError::DegreeBound { d, max });
        }
        let e = match e {
            Some(e) if e == 0 || e >= d => return Err(SpecError::Intermediate { e, d }),
            Some(e) => Some(e),
            None if d >= 2 => Some(d - 1),
            None => None,
        };
        Ok(ProblemSpec {
            n,
            field,
            polys,
            d,
            e,
        })
    }

    /// Parses each polynomial in `X0..Xn` over `field`.
    pub fn parse(
        n: usize,
        field: FieldSpec,
        polys: &[&str],
        d: Option<u32>,
        e: Option<u32>,
    ) -> Result<Self, crate::Error> {
        let polys = polys
            .iter()
            .map(|t| HomPoly::parse(t, n, field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(n, field, polys, d, e)?)
    }

    pub fn with_degrees(&self, d: u32, e: Option<u32>) -> Result<Self, SpecError> {
        Self::new(self.n, self.field, self.polys.clone(), Some(d), e)
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(HomPoly::degree).max().unwrap_or(0)
    }

    pub fn intermediate(&self) -> Result<u32, SpecError> {
        self.e.ok_or(SpecError::NoIntermediate)
    }

    /// The same problem read over `F_q`. A problem already over a prime
    /// field only accepts its own characteristic.
    pub fn over_prime(&self, q: u32) -> Result<Self, SpecError> {
        let target = FieldSpec::prime(q)?;
        match self.field {
            FieldSpec::Prime(p) if p == q => Ok(self.clone()),
            FieldSpec::Prime(_) => Err(SpecError::FieldOverride {
                file: self.field,
                q,
            }),
            FieldSpec::Rationals => {
                let polys = self
                    .polys
                    .iter()
                    .enumerate()
                    .map(|(index, f)| {
                        f.reduce_into(target)
                            .ok_or(SpecError::VanishesModQ { index, q })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ProblemSpec {
                    field: target,
                    polys,
                    ..self.clone()
                })
            }
        }
    }
}

/// Degree-`m` monomials in `X0..Xn`, graded-lex with `X0 > ... > Xn`.
pub fn monomial_basis(n: usize, m: u32) -> Vec<Monomial> {
    Monomial::basis(n + 1, m)
}

/// Generators `μ·f_i` of `I_m` as coefficient rows over the degree-`m` basis.
pub fn ideal_slice(spec: &ProblemSpec, m: u32) -> Matrix {
    let basis = monomial_basis(spec.n, m);
    let index = index_of(&basis);
    ideal_rows(spec, m, &index, basis.len())
}

fn ideal_rows(
    spec: &ProblemSpec,
    m: u32,
    index: &HashMap<Monomial, usize>,
    width: usize,
) -> Matrix {
    let mut rows = Vec::new();
    for f in &spec.polys {
        if f.degree() > m {
            continue;
        }
        for mu in monomial_basis(spec.n, m - f.degree()) {
            let mut row = vec![spec.field.zero(); width];
            for (t, c) in f.terms() {
                row[index[&t.mul(&mu)]] = c.clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_row_vecs(spec.field, width, rows).expect("rows have basis width")
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// `S^m V / I_m` with a standard-monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub m: u32,
    pub ambient_basis: Vec<Monomial>,
    /// Positions in `ambient_basis` of the standard monomials.
    pub standard: Vec<usize>,
    /// `dim × ambient` matrix; kills `I_m` and fixes standard monomials.
    pub projection: Matrix,
    index: HashMap<Monomial, usize>,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_basis.len()
    }

    pub fn standard_monomials(&self) -> Vec<&Monomial> {
        self.standard
            .iter()
            .map(|&i| &self.ambient_basis[i])
            .collect()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Quotient coordinates of the class of a monomial of this degree.
    pub fn class_of(&self, m: &Monomial) -> Vec<Scalar> {
        self.projection.column(self.index[m])
    }

    /// Quotient coordinates of the class of an ambient vector.
    pub fn project(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(ambient)
    }

    /// Restricts a functional on `S^m V` (given by its values on the ambient
    /// basis) to the standard monomials, i.e. its coordinates in the basis
    /// dual to the quotient basis. Meaningful for functionals vanishing on `I_m`.
    pub fn restrict_functional(&self, values: &[Scalar]) -> Vec<Scalar> {
        self.standard.iter().map(|&i| values[i].clone()).collect()
    }
}

/// Builds the quotient slice at degree `m`.
pub fn quotient_slice(spec: &ProblemSpec, m: u32) -> GradedSlice {
    let ambient_basis = monomial_basis(spec.n, m);
    let index = index_of(&ambient_basis);
    let width = ambient_basis.len();
    let gens = ideal_rows(spec, m, &index, width);
    let rref = gens.rref().expect("generators share the problem field");
    let mut pivot_row = vec![None; width];
    for (r, &p) in rref.pivots.iter().enumerate() {
        pivot_row[p] = Some(r);
    }
    let standard: Vec<usize> = (0..width).filter(|&c| pivot_row[c].is_none()).collect();
    let mut projection = Matrix::zeros(spec.field, standard.len(), width);
    for (k, &s) in standard.iter().enumerate() {
        projection.set(k, s, spec.field.one());
    }
    // pivot monomial ≡ -Σ_s R[r, s]·(standard s)
    for (c, row) in pivot_row.iter().enumerate() {
        if let Some(r) = *row {
            for (k, &s) in standard.iter().enumerate() {
                let v = rref.echelon.get(r, s);
                if !v.is_zero() {
                    projection.set(k, c, -v);
                }
            }
        }
    }
    GradedSlice {
        m,
        ambient_basis,
        standard,
        projection,
        index,
    }
}

/// Multiplication by `X_j` from degree `m` to degree `m + 1`, in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultMap {
    pub var: usize,
    pub from_degree: u32,
    pub matrix: Matrix,
}

/// Cached slices for degrees `0..=d`, computed eagerly.
#[derive(Clone, Debug)]
pub struct GradedRing {
    spec: ProblemSpec,
    slices: Vec<GradedSlice>,
}

impl GradedRing {
    pub fn new(spec: &ProblemSpec) -> Self {
        let slices = (0..=spec.d)
            .into_par_iter()
            .map(|m| quotient_slice(spec, m))
            .collect();
        GradedRing {
            spec: spec.clone(),
            slices,
        }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn field(&self) -> FieldSpec {
        self.spec.field
    }

    /// Slice at degree `m`; degrees above `d` are computed on demand.
    pub fn slice(&self, m: u32) -> std::borrow::Cow<'_, GradedSlice> {
        match self.slices.get(m as usize) {
            Some(s) => std::borrow::Cow::Borrowed(s),
            None => std::borrow::Cow::Owned(quotient_slice(&self.spec, m)),
        }
    }

    pub fn dim(&self, m: u32) -> usize {
        self.slice(m).dim()
    }

    /// Multiplication by an arbitrary monomial `mono`, from degree `m` to `m + deg mono`.
    pub fn mult_by_monomial(&self, m: u32, mono: &Monomial) -> Matrix {
        let src = self.slice(m);
        let tgt = self.slice(m + mono.degree());
        let mut out = Matrix::zeros(self.field(), tgt.dim(), src.dim());
        for (col, s) in src.standard_monomials().into_iter().enumerate() {
            let class = tgt.class_of(&s.mul(mono));
            for (row, v) in class.into_iter().enumerate() {
                out.set(row, col, v);
            }
        }
        out
    }

    pub fn mult_map(&self, m: u32, j: usize) -> MultMap {
        MultMap {
            var: j,
            from_degree: m,
            matrix: self.mult_by_monomial(m, &Monomial::var(self.spec.nvars(), j)),
        }
    }

    pub fn hilbert_function(&self, upto: u32) -> Vec<usize> {
        (0..=upto).map(|m| self.dim(m)).collect()
    }
}

pub fn mult_map(spec: &ProblemSpec, m: u32, j: usize) -> MultMap {
    let ring = GradedRing::new(&ProblemSpec {
        d: spec.d.max(m + 1),
        ..spec.clone()
    });
    ring.mult_map(m, j)
}

/// `dim S^m V / I_m` for `m = 0..=upto`.
pub fn hilbert_function(spec: &ProblemSpec, upto: u32) -> Vec<usize> {
    (0..=upto)
        .into_par_iter()
        .map(|m| quotient_slice(spec, m).dim())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn conic(d: u32) -> ProblemSpec {
        ProblemSpec::parse(2, f5(), &["X0*X2 - X1^2"], Some(d), None).unwrap()
    }

    fn free(n: usize, d: u32) -> ProblemSpec {
        ProblemSpec::parse(n, f5(), &[], Some(d), None).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            ProblemSpec::parse(2, f5(), &["X0*X2 - X1^2"], Some(1), None),
            Err(crate::Error::Spec(SpecError::DegreeBound { d: 1, max: 2 }))
        );
        assert_eq!(
            ProblemSpec::parse(2, f5(), &["X0"], Some(2), Some(2)),
            Err(crate::Error::Spec(SpecError::Intermediate { e: 2, d: 2 }))
        );
        assert!(matches!(
            ProblemSpec::parse(2, f5(), &["3"], None, None),
            Err(crate::Error::Spec(SpecError::ConstantPolynomial {
                index: 0
            }))
        ));
        let s = ProblemSpec::parse(2, f5(), &[], None, None).unwrap();
        assert_eq!((s.d, s.e), (1, None));
        assert_eq!(conic(3).e, Some(2));
    }

    #[test]
    fn over_prime_reinterprets_rationals() {
        let q = ProblemSpec::parse(1, FieldSpec::Rationals, &["X0 - 6*X1"], None, None).unwrap();
        let p = q.over_prime(5).unwrap();
        assert_eq!(p.polys[0].to_string(), "X0 + 4*X1");
        let bad = ProblemSpec::parse(1, FieldSpec::Rationals, &["5*X0"], None, None).unwrap();
        assert_eq!(
            bad.over_prime(5),
            Err(SpecError::VanishesModQ { index: 0, q: 5 })
        );
        assert!(matches!(
            conic(2).over_prime(7),
            Err(SpecError::FieldOverride { q: 7, .. })
        ));
    }

    #[test]
    fn ideal_slices_of_the_conic() {
        let s = conic(3);
        let i1 = ideal_slice(&s, 1);
        assert_eq!(i1.rows(), 0);
        assert_eq!(i1.cols(), 3);
        let i2 = ideal_slice(&s, 2);
        assert_eq!((i2.rows(), i2.rank().unwrap()), (1, 1));
        let i3 = ideal_slice(&s, 3);
        assert_eq!((i3.rows(), i3.cols(), i3.rank().unwrap()), (3, 10, 3));
    }

    #[test]
    fn quotient_dims_of_the_conic() {
        let s = conic(3);
        assert_eq!(quotient_slice(&s, 1).dim(), 3);
        assert_eq!(quotient_slice(&s, 2).dim(), 5);
        assert_eq!(quotient_slice(&s, 3).dim(), 7);
    }

    #[test]
    fn projection_kills_generators_and_fixes_standard() {
        let s = conic(4);
        for m in 0..=4 {
            let slice = quotient_slice(&s, m);
            let gens = ideal_slice(&s, m);
            for r in 0..gens.rows() {
                assert!(slice.project(gens.row(r)).iter().all(Scalar::is_zero));
            }
            for (k, &c) in slice.standard.iter().enumerate() {
                let mut unit = vec![s.field.zero(); slice.dim()];
                unit[k] = s.field.one();
                assert_eq!(slice.projection.column(c), unit);
            }
        }
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(hilbert_function(&free(2, 1), 3), vec![1, 3, 6, 10]);
        assert_eq!(hilbert_function(&conic(2), 4), vec![1, 3, 5, 7, 9]);
        let pt = ProblemSpec::parse(1, f5(), &["X0"], None, None).unwrap();
        assert_eq!(hilbert_function(&pt, 4), vec![1, 1, 1, 1, 1]);
        let empty = ProblemSpec::parse(2, f5(), &["X0", "X1", "X2"], None, None).unwrap();
        assert_eq!(hilbert_function(&empty, 2), vec![1, 0, 0]);
    }

    #[test]
    fn mult_maps() {
        let ring = GradedRing::new(&free(1, 1));
        let x0 = ring.mult_map(0, 0).matrix;
        let x1 = ring.mult_map(0, 1).matrix;
        assert_eq!(x0, Matrix::from_i64(f5(), &[&[1], &[0]]));
        assert_eq!(x1, Matrix::from_i64(f5(), &[&[0], &[1]]));

        // In degree 2 the leading monomial of the conic is X0*X2, so X1*X1
        // stays a standard monomial and X0*X2 rewrites to X1^2.
        let s = conic(2);
        let ring = GradedRing::new(&s);
        let a1 = ring.mult_map(1, 1).matrix;
        assert_eq!((a1.rows(), a1.cols()), (5, 3));
        let slice2 = ring.slice(2);
        let x1sq = slice2.class_of(&Monomial::new(vec![0, 2, 0]));
        assert_eq!(a1.column(1), x1sq);
        let a0 = ring.mult_map(1, 0).matrix;
        assert_eq!(a0.column(2), x1sq);
    }

    #[test]
    fn mult_maps_commute() {
        let s = ProblemSpec::parse(
            3,
            f5(),
            &["X0*X2 - X1^2", "X0*X3 - X1*X2", "X1*X3 - X2^2"],
            Some(3),
            None,
        )
        .unwrap();
        let ring = GradedRing::new(&s);
        for m in 0..2 {
            for j in 0..4 {
                for k in 0..4 {
                    let lhs = ring
                        .mult_map(m + 1, k)
                        .matrix
                        .mul(&ring.mult_map(m, j).matrix);
                    let rhs = ring
                        .mult_map(m + 1, j)
                        .matrix
                        .mul(&ring.mult_map(m, k).matrix);
                    assert_eq!(lhs.unwrap(), rhs.unwrap());
                }
            }
        }
    }
}
