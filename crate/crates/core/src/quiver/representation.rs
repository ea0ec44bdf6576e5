use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presentation::PresentationJson;
use super::{PathCombo, QuiverError, QuiverPresentation};
use crate::linalg::Matrix;

/// A finite-dimensional representation: a space `k^dims[v]` per vertex and
/// a `dims[tgt] × dims[src]` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub presentation: QuiverPresentation,
    pub dims: Vec<usize>,
    pub mats: BTreeMap<String, Matrix>,
}

/// A relation that does not evaluate to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub relation: String,
}

impl Representation {
    /// Builds and validates shapes against the presentation.
    pub fn new(
        presentation: QuiverPresentation,
        dims: Vec<usize>,
        mats: BTreeMap<String, Matrix>,
    ) -> Result<Self, QuiverError> {
        let rep = Representation {
            presentation,
            dims,
            mats,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        let p = &self.presentation;
        if self.dims.len() != p.vertices.len() {
            return Err(QuiverError::DimsLength {
                expected: p.vertices.len(),
                found: self.dims.len(),
            });
        }
        for a in &p.arrows {
            let m = self
                .mats
                .get(&a.label)
                .ok_or_else(|| QuiverError::MissingMatrix(a.label.clone()))?;
            let want = (self.dims[a.tgt], self.dims[a.src]);
            if (m.rows(), m.cols()) != want {
                return Err(QuiverError::MatrixShape {
                    arrow: a.label.clone(),
                    expected: want,
                    found: (m.rows(), m.cols()),
                });
            }
            if m.field() != p.field {
                return Err(QuiverError::Field(0));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> crate::linalg::FieldSpec {
        self.presentation.field
    }

    pub fn matrix(&self, label: &str) -> Result<&Matrix, QuiverError> {
        self.mats
            .get(label)
            .ok_or_else(|| QuiverError::MissingMatrix(label.to_string()))
    }

    /// Matrix of a path: the product of its arrow matrices, last arrow leftmost.
    pub fn path_matrix(&self, path: &[String]) -> Result<Matrix, QuiverError> {
        let (src, _) = self.presentation.path_ends(path)?;
        let mut acc = Matrix::identity(self.field(), self.dims[src]);
        for label in path {
            acc = self.matrix(label)?.mul(&acc)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, rel: &PathCombo) -> Result<Matrix, QuiverError> {
        let mut acc: Option<Matrix> = None;
        for (c, path) in &rel.terms {
            let pm = self.path_matrix(path)?;
            let scaled = Matrix::from_row_vecs(
                pm.field(),
                pm.cols(),
                pm.row_vecs()
                    .into_iter()
                    .map(|r| r.iter().map(|x| x * c).collect())
                    .collect(),
            )?;
            acc = Some(match acc {
                None => scaled,
                Some(prev) => add(&prev, &scaled)?,
            });
        }
        acc.ok_or(QuiverError::EmptyRelation(0))
    }

    /// Relations of the presentation that do not vanish on this representation.
    pub fn check_relations(&self) -> Result<Vec<Violation>, QuiverError> {
        self.check_against(&self.presentation.relations)
    }

    pub fn check_against(&self, relations: &[PathCombo]) -> Result<Vec<Violation>, QuiverError> {
        let mut out = Vec::new();
        for (index, rel) in relations.iter().enumerate() {
            if !self.evaluate(rel)?.is_zero() {
                out.push(Violation {
                    index,
                    relation: rel.to_string(),
                });
            }
        }
        Ok(out)
    }

    /// The dual representation: same dimensions, arrows reversed, matrices
    /// transposed. Submodules of the dual are quotients of the original.
    pub fn dual(&self) -> Representation {
        Representation {
            presentation: self.presentation.opposite(),
            dims: self.dims.clone(),
            mats: self
                .mats
                .iter()
                .map(|(l, m)| (l.clone(), m.transpose()))
                .collect(),
        }
    }

    /// Restriction to the full subquiver on `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Representation {
        let presentation = self.presentation.restrict(keep);
        let mats = presentation
            .arrows
            .iter()
            .map(|a| (a.label.clone(), self.mats[&a.label].clone()))
            .collect();
        Representation {
            dims: keep.iter().map(|&v| self.dims[v]).collect(),
            presentation,
            mats,
        }
    }
}

fn add(a: &Matrix, b: &Matrix) -> Result<Matrix, QuiverError> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(QuiverError::MatrixShape {
            arrow: "<sum>".into(),
            expected: (a.rows(), a.cols()),
            found: (b.rows(), b.cols()),
        });
    }
    let rows = (0..a.rows())
        .map(|r| a.row(r).iter().zip(b.row(r)).map(|(x, y)| x + y).collect())
        .collect();
    Ok(Matrix::from_row_vecs(a.field(), a.cols(), rows)?)
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    presentation: PresentationJson,
    dims: Vec<usize>,
    matrices: BTreeMap<String, Vec<Vec<String>>>,
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RepresentationJson {
            presentation: (&self.presentation).into(),
            dims: self.dims.clone(),
            matrices: self
                .mats
                .iter()
                .map(|(l, m)| {
                    let rows = m
                        .row_vecs()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect();
                    (l.clone(), rows)
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RepresentationJson::deserialize(d)?;
        let presentation =
            QuiverPresentation::try_from(j.presentation).map_err(D::Error::custom)?;
        let field = presentation.field;
        let mut mats = BTreeMap::new();
        for a in &presentation.arrows {
            let rows = j
                .matrices
                .get(&a.label)
                .ok_or_else(|| D::Error::custom(format!("no matrix for arrow {}", a.label)))?;
            let cols = j.dims.get(a.src).copied().unwrap_or(0);
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|x| field.parse_scalar(x)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()
                .map_err(D::Error::custom)?;
            let m = Matrix::from_row_vecs(field, cols, parsed).map_err(D::Error::custom)?;
            mats.insert(a.label.clone(), m);
        }
        Representation::new(presentation, j.dims, mats).map_err(D::Error::custom)
    }
}
