use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::QuiverError;
use crate::linalg::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A linear combination of paths. Paths list arrow labels in traversal
/// order: `[a, b]` means "first `a`, then `b`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCombo {
    pub terms: Vec<(Scalar, Vec<String>)>,
}

impl PathCombo {
    pub fn new(terms: Vec<(Scalar, Vec<String>)>) -> Self {
        PathCombo { terms }
    }

    /// Replaces every occurrence of arrow `from` by the path `to`.
    pub fn substitute(&self, from: &str, to: &[String]) -> PathCombo {
        PathCombo {
            terms: self
                .terms
                .iter()
                .map(|(c, path)| {
                    let p = path
                        .iter()
                        .flat_map(|a| {
                            if a == from {
                                to.to_vec()
                            } else {
                                vec![a.clone()]
                            }
                        })
                        .collect();
                    (c.clone(), p)
                })
                .collect(),
        }
    }

    pub fn is_homogeneous_length(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.len() == w[1].1.len())
    }
}

impl fmt::Display for PathCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, path)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(&path.join("·"))?;
        }
        Ok(())
    }
}

/// Quiver with relations `kQ/J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<PathCombo>,
}

impl QuiverPresentation {
    pub fn new(field: FieldSpec, vertices: Vec<String>) -> Self {
        QuiverPresentation {
            field,
            vertices,
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn add_arrow(&mut self, label: impl Into<String>, src: usize, tgt: usize) {
        self.arrows.push(Arrow {
            label: label.into(),
            src,
            tgt,
        });
    }

    pub fn arrow(&self, label: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.label == label)
    }

    pub fn arrow_index(&self) -> HashMap<&str, usize> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.label.as_str(), i))
            .collect()
    }

    /// Source and target vertex of a path, checking composability.
    pub fn path_ends(&self, path: &[String]) -> Result<(usize, usize), QuiverError> {
        let first = path.first().ok_or(QuiverError::EmptyPath)?;
        let a0 = self
            .arrow(first)
            .ok_or_else(|| QuiverError::UnknownArrow(first.clone()))?;
        let mut at = a0.tgt;
        for label in &path[1..] {
            let a = self
                .arrow(label)
                .ok_or_else(|| QuiverError::UnknownArrow(label.clone()))?;
            if a.src != at {
                return Err(QuiverError::NotComposable(path.join("·")));
            }
            at = a.tgt;
        }
        Ok((a0.src, at))
    }

    /// Structural checks: arrows reference vertices, labels are unique, the
    /// quiver is acyclic, and every relation is composable with common ends.
    pub fn validate(&self) -> Result<(), QuiverError> {
        let nv = self.vertices.len();
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            if a.src >= nv || a.tgt >= nv {
                return Err(QuiverError::UnknownVertex(a.label.clone()));
            }
            if !seen.insert(a.label.as_str()) {
                return Err(QuiverError::DuplicateArrow(a.label.clone()));
            }
        }
        self.topological_order()?;
        for (i, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            for (c, path) in &rel.terms {
                if c.field() != self.field {
                    return Err(QuiverError::Field(i));
                }
                let e = self.path_ends(path)?;
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => return Err(QuiverError::MixedEnds(i)),
                    _ => {}
                }
            }
            if ends.is_none() {
                return Err(QuiverError::EmptyRelation(i));
            }
        }
        Ok(())
    }

    /// Kahn's algorithm; ties broken by vertex index.
    pub fn topological_order(&self) -> Result<Vec<usize>, QuiverError> {
        let nv = self.vertices.len();
        let mut indeg = vec![0usize; nv];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    ready.insert(a.tgt);
                }
            }
        }
        if order.len() != nv {
            return Err(QuiverError::Cyclic);
        }
        Ok(order)
    }

    /// Same vertices, every arrow reversed, every relation path reversed.
    pub fn opposite(&self) -> QuiverPresentation {
        QuiverPresentation {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    src: a.tgt,
                    tgt: a.src,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| PathCombo {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| (c.clone(), p.iter().rev().cloned().collect()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Full subquiver on `keep` (in the given order); relations touching
    /// removed arrows are dropped.
    pub fn restrict(&self, keep: &[usize]) -> QuiverPresentation {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow {
                    label: a.label.clone(),
                    src: *pos.get(&a.src)?,
                    tgt: *pos.get(&a.tgt)?,
                })
            })
            .collect();
        let kept: std::collections::HashSet<&str> =
            arrows.iter().map(|a| a.label.as_str()).collect();
        let relations = self
            .relations
            .iter()
            .filter(|r| {
                r.terms
                    .iter()
                    .all(|(_, p)| p.iter().all(|l| kept.contains(l.as_str())))
            })
            .cloned()
            .collect();
        QuiverPresentation {
            field: self.field,
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            arrows,
            relations,
        }
    }
}

// JSON mirror types. Scalars travel as strings.

#[derive(Serialize, Deserialize)]
pub(crate) struct ArrowJson {
    pub label: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PresentationJson {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<Vec<TermJson>>,
}

impl From<&QuiverPresentation> for PresentationJson {
    fn from(p: &QuiverPresentation) -> Self {
        PresentationJson {
            field: p.field,
            vertices: p.vertices.clone(),
            arrows: p
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    label: a.label.clone(),
                    src: p.vertices[a.src].clone(),
                    tgt: p.vertices[a.tgt].clone(),
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, path)| TermJson {
                            coeff: c.to_string(),
                            path: path.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<PresentationJson> for QuiverPresentation {
    type Error = crate::Error;

    fn try_from(j: PresentationJson) -> Result<Self, crate::Error> {
        let vertex = |name: &str| {
            j.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
        };
        let mut p = QuiverPresentation::new(j.field, j.vertices.clone());
        for a in &j.arrows {
            p.add_arrow(a.label.clone(), vertex(&a.src)?, vertex(&a.tgt)?);
        }
        for rel in j.relations {
            let terms = rel
                .into_iter()
                .map(|t| Ok((j.field.parse_scalar(&t.coeff)?, t.path)))
                .collect::<Result<Vec<_>, crate::Error>>()?;
            p.relations.push(PathCombo { terms });
        }
        p.validate()?;
        Ok(p)
    }
}

impl Serialize for QuiverPresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PresentationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuiverPresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PresentationJson::deserialize(d)?;
        QuiverPresentation::try_from(j).map_err(serde::de::Error::custom)
    }
}
