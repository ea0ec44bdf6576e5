//! Homogeneous polynomials over an exact field and points of projective space.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{normalize_leading_one, FieldSpec, Scalar};
pub use monomial::{Monomial, VarScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable {name} at column {pos} is out of range (largest index is {max})")]
    VariableOutOfRange {
        name: String,
        pos: usize,
        max: usize,
    },
    #[error("polynomial is not homogeneous: it mixes degrees {first} and {second}")]
    NonHomogeneous { first: u32, second: u32 },
    #[error("zero polynomial is not a valid relation")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
}

/// A homogeneous polynomial in `X0..Xn` with nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    n: usize,
    degree: u32,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomPoly {
    /// Parses `text` as a polynomial in `X0..Xn` with coefficients reduced into `field`.
    pub fn parse(text: &str, n: usize, field: FieldSpec) -> Result<Self, PolyError> {
        Self::parse_with(text, &VarScheme::projective(n + 1), field)
    }

    pub fn parse_with(text: &str, vars: &VarScheme, field: FieldSpec) -> Result<Self, PolyError> {
        let terms = parse::parse_terms(text, vars, field)?;
        let n = vars.nvars().saturating_sub(1);
        Self::from_terms(n, field, terms)
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, dropping zeros.
    pub fn from_terms(
        n: usize,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != n + 1 {
                return Err(PolyError::DimensionMismatch {
                    expected: n + 1,
                    found: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(PolyError::FieldMismatch(field, c.field()));
            }
            let mut single = BTreeMap::new();
            single.insert(m, c);
            parse::add_into(&mut map, &single);
        }
        let mut degrees = map.keys().map(Monomial::degree);
        let Some(first) = degrees.next() else {
            return Err(PolyError::ZeroPolynomial);
        };
        if let Some(second) = degrees.find(|&d| d != first) {
            return Err(PolyError::NonHomogeneous { first, second });
        }
        Ok(HomPoly {
            n,
            degree: first,
            field,
            terms: map,
        })
    }

    pub fn monomial(m: Monomial, field: FieldSpec) -> Self {
        let n = m.nvars() - 1;
        Self::from_terms(n, field, [(m, field.one())]).expect("single nonzero term")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self, a: &ProjPoint) -> Result<Scalar, PolyError> {
        self.evaluate_at(a.coords())
    }

    /// Evaluates at an affine representative; the result depends on the
    /// representative but whether it vanishes does not.
    pub fn evaluate_at(&self, coords: &[Scalar]) -> Result<Scalar, PolyError> {
        if coords.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: coords.len(),
            });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != self.field) {
            return Err(PolyError::FieldMismatch(self.field, c.field()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in coords.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn multiply(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field, other.field));
        }
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        let terms = parse::product(&self.terms, &other.terms);
        Ok(HomPoly {
            n: self.n,
            degree: self.degree + other.degree,
            field: self.field,
            terms,
        })
    }

    pub fn times_monomial(&self, m: &Monomial) -> HomPoly {
        HomPoly {
            n: self.n,
            degree: self.degree + m.degree(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Maps the coefficients into another field; `None` if some coefficient
    /// has no image (denominator divisible by the characteristic) or the
    /// image is the zero polynomial.
    pub fn reduce_into(&self, field: FieldSpec) -> Option<HomPoly> {
        let terms: Option<Vec<_>> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let q = match c {
                    Scalar::Rat(r) => r.clone(),
                    Scalar::Mod { value, .. } => {
                        num_rational::BigRational::from_integer((*value).into())
                    }
                };
                field.from_rational(&q).map(|s| (m.clone(), s))
            })
            .collect();
        HomPoly::from_terms(self.n, field, terms?).ok()
    }

    pub fn display_with(&self, vars: &VarScheme) -> String {
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.display_with(vars);
            if m.degree() == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VarScheme::projective(self.nvars())))
    }
}

impl Serialize for HomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of projective space, stored with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(mut coords: Vec<Scalar>) -> Result<Self, PolyError> {
        if let Some(first) = coords.first() {
            let f = first.field();
            if let Some(c) = coords.iter().find(|c| c.field() != f) {
                return Err(PolyError::FieldMismatch(f, c.field()));
            }
        }
        if !normalize_leading_one(&mut coords) {
            return Err(PolyError::ZeroPoint);
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Result<Self, PolyError> {
        Self::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    /// Values of all degree-`m` monomials at this point, in basis order.
    pub fn veronese(&self, m: u32) -> Vec<Scalar> {
        veronese(&self.coords, m)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Degree-`m` Veronese coordinates of an affine vector.
pub fn veronese(coords: &[Scalar], m: u32) -> Vec<Scalar> {
    let field = coords[0].field();
    Monomial::basis(coords.len(), m)
        .iter()
        .map(|mono| {
            let mut acc = field.one();
            for (x, &e) in coords.iter().zip(mono.exponents()) {
                if e > 0 {
                    acc *= &x.pow(e);
                }
            }
            acc
        })
        .collect()
}
