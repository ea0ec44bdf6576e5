//! Builders for the Beilinson-type quivers and the module `M_m = S^m V / I_m`
//! in each model.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{PathCombo, QuiverError, QuiverPresentation, Representation};
use crate::graded::{GradedRing, ProblemSpec};
use crate::linalg::{FieldSpec, Matrix};
use crate::poly::{HomPoly, Monomial};

/// Label of the arrow for variable `j` between levels `i` and `i + 1`.
pub fn arrow_label(j: usize, i: u32) -> String {
    format!("x{j}^{i}")
}

pub const SPLIT_IN: &str = "z0";
pub const SPLIT_OUT: &str = "y0";
pub const AUX_VERTEX: &str = "0'";

/// Beilinson quiver on vertices `0..=d` with `n + 1` arrows per level and
/// the commutativity relations `x_j^i x_k^{i+1} = x_k^i x_j^{i+1}` for `j < k`.
pub fn beilinson_quiver(field: FieldSpec, n: usize, d: u32) -> QuiverPresentation {
    let mut p = QuiverPresentation::new(field, (0..=d).map(|v| v.to_string()).collect());
    for i in 0..d {
        for j in 0..=n {
            p.add_arrow(arrow_label(j, i), i as usize, i as usize + 1);
        }
    }
    for i in 0..d.saturating_sub(1) {
        for j in 0..=n {
            for k in j + 1..=n {
                p.relations.push(PathCombo::new(vec![
                    (field.one(), vec![arrow_label(j, i), arrow_label(k, i + 1)]),
                    (-field.one(), vec![arrow_label(k, i), arrow_label(j, i + 1)]),
                ]));
            }
        }
    }
    p
}

/// Path representative of `f` starting at vertex `start`: each monomial
/// becomes the path through its variables in nondecreasing order.
pub fn lift_relation(
    f: &HomPoly,
    start: u32,
    presentation: &QuiverPresentation,
) -> Result<PathCombo, QuiverError> {
    let last = presentation.vertices.len() as u32 - 1;
    if start + f.degree() > last {
        return Err(QuiverError::Overrun {
            start,
            degree: f.degree(),
            last,
        });
    }
    let terms = f
        .terms()
        .map(|(m, c)| {
            let path = m
                .factors()
                .into_iter()
                .enumerate()
                .map(|(t, j)| arrow_label(j, start + t as u32))
                .collect();
            (c.clone(), path)
        })
        .collect();
    Ok(PathCombo::new(terms))
}

/// Where to start the lift of each relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Starts {
    /// One start vertex per polynomial.
    Given(Vec<u32>),
    /// Every admissible start `0..=d - deg f`.
    All,
}

/// Beilinson quiver on `0..=d` plus the lifted relations.
pub fn bounded_algebra(
    spec: &ProblemSpec,
    starts: &Starts,
) -> Result<QuiverPresentation, QuiverError> {
    let mut p = beilinson_quiver(spec.field, spec.n, spec.d);
    match starts {
        Starts::Given(s) => {
            if s.len() != spec.polys.len() {
                return Err(QuiverError::StartCount {
                    expected: spec.polys.len(),
                    found: s.len(),
                });
            }
            for (f, &a) in spec.polys.iter().zip(s) {
                let rel = lift_relation(f, a, &p)?;
                p.relations.push(rel);
            }
        }
        Starts::All => {
            for f in &spec.polys {
                for a in 0..=spec.d - f.degree() {
                    let rel = lift_relation(f, a, &p)?;
                    p.relations.push(rel);
                }
            }
        }
    }
    Ok(p)
}

/// Replaces the arrow `x_0^0` by a path `z0` then `y0` through a new vertex
/// placed right after vertex `0`, rewriting every relation.
pub fn split_first_arrow(p: &QuiverPresentation) -> QuiverPresentation {
    let first = arrow_label(0, 0);
    // old vertex v > 0 moves to v + 1
    let shift = |v: usize| if v == 0 { 0 } else { v + 1 };
    let mut vertices = vec![p.vertices[0].clone(), AUX_VERTEX.to_string()];
    vertices.extend(p.vertices[1..].iter().cloned());
    let mut out = QuiverPresentation::new(p.field, vertices);
    for a in &p.arrows {
        if a.label == first {
            out.add_arrow(SPLIT_IN, 0, 1);
            out.add_arrow(SPLIT_OUT, 1, shift(a.tgt));
        } else {
            out.add_arrow(a.label.clone(), shift(a.src), shift(a.tgt));
        }
    }
    let replacement = [SPLIT_IN.to_string(), SPLIT_OUT.to_string()];
    out.relations = p
        .relations
        .iter()
        .map(|r| r.substitute(&first, &replacement))
        .collect();
    out
}

/// Beilinson quiver with `x_0^0` split into a length-two path.
pub fn modified_beilinson(field: FieldSpec, n: usize, d: u32) -> QuiverPresentation {
    split_first_arrow(&beilinson_quiver(field, n, d))
}

/// `M` on the chain `0..=d`: vertex `m` carries `S^m V / I_m` and `x_j^i`
/// acts as multiplication by `X_j`. The attached presentation carries the
/// lifts of every relation at every admissible start.
pub fn module_m_full(ring: &GradedRing) -> Representation {
    let spec = ring.spec();
    let presentation = bounded_algebra(spec, &Starts::All).expect("all starts are admissible");
    let dims = (0..=spec.d).map(|m| ring.dim(m)).collect();
    let mut mats = BTreeMap::new();
    for i in 0..spec.d {
        for j in 0..=spec.n {
            mats.insert(arrow_label(j, i), ring.mult_map(i, j).matrix);
        }
    }
    Representation::new(presentation, dims, mats).expect("shapes follow the slices")
}

/// [`module_m_full`] over the split quiver: the auxiliary vertex carries a
/// copy of `S^0 V`, `z0` is the identity and `y0` multiplies by `X_0`.
pub fn module_m_modified(ring: &GradedRing) -> Representation {
    let full = module_m_full(ring);
    let presentation = split_first_arrow(&full.presentation);
    let mut mats = full.mats;
    let x00 = mats.remove(&arrow_label(0, 0)).expect("x_0^0 is present");
    mats.insert(
        SPLIT_IN.to_string(),
        Matrix::identity(ring.field(), ring.dim(0)),
    );
    mats.insert(SPLIT_OUT.to_string(), x00);
    let mut dims = full.dims;
    dims.insert(1, ring.dim(0));
    Representation::new(presentation, dims, mats).expect("shapes follow the slices")
}

/// Arrow label for multiplication by `mono` in the three-vertex model.
pub fn triple_label(first_leg: bool, mono: &Monomial) -> String {
    format!("{}[{mono}]", if first_leg { "a" } else { "b" })
}

/// `M` restricted to the degrees `0, e, d`: one arrow per degree-`e`
/// monomial from `0` to `e`, one per degree-`(d - e)` monomial from `e` to `d`.
pub fn module_m_triple(ring: &GradedRing) -> Result<Representation, crate::Error> {
    let spec = ring.spec();
    let e = spec.intermediate()?;
    let d = spec.d;
    let mut p = QuiverPresentation::new(
        spec.field,
        vec!["0".to_string(), e.to_string(), d.to_string()],
    );
    let mut mats = BTreeMap::new();
    for mono in Monomial::basis(spec.nvars(), e) {
        let label = triple_label(true, &mono);
        p.add_arrow(label.clone(), 0, 1);
        mats.insert(label, ring.mult_by_monomial(0, &mono));
    }
    for mono in Monomial::basis(spec.nvars(), d - e) {
        let label = triple_label(false, &mono);
        p.add_arrow(label.clone(), 1, 2);
        mats.insert(label, ring.mult_by_monomial(e, &mono));
    }
    let dims = vec![ring.dim(0), ring.dim(e), ring.dim(d)];
    Ok(Representation::new(p, dims, mats)?)
}

/// `M = (S^{d-1} V / I_{d-1}, S^d V / I_d)` over the `(n + 1)`-Kronecker quiver.
pub fn module_m_kronecker(ring: &GradedRing) -> Representation {
    let spec = ring.spec();
    let d = spec.d;
    let mut p = QuiverPresentation::new(spec.field, vec![(d - 1).to_string(), d.to_string()]);
    let mut mats = BTreeMap::new();
    for j in 0..=spec.n {
        let label = format!("x{j}");
        p.add_arrow(label.clone(), 0, 1);
        mats.insert(label, ring.mult_map(d - 1, j).matrix);
    }
    Representation::new(p, vec![ring.dim(d - 1), ring.dim(d)], mats)
        .expect("shapes follow the slices")
}

/// The three modules whose thin submodules realize `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Kronecker,
    Triple,
    Full,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Kronecker, Model::Triple, Model::Full];

    /// Degree carried by each vertex, in vertex order.
    pub fn degrees(self, spec: &ProblemSpec) -> Result<Vec<u32>, crate::Error> {
        Ok(match self {
            Model::Kronecker => vec![spec.d - 1, spec.d],
            Model::Triple => vec![0, spec.intermediate()?, spec.d],
            Model::Full => (0..=spec.d).collect(),
        })
    }

    pub fn build(self, ring: &GradedRing) -> Result<Representation, crate::Error> {
        Ok(match self {
            Model::Kronecker => module_m_kronecker(ring),
            Model::Triple => module_m_triple(ring)?,
            Model::Full => module_m_full(ring),
        })
    }

    /// Whether the model exists for this problem (the triple needs `d >= 2`).
    pub fn applies_to(self, spec: &ProblemSpec) -> bool {
        self != Model::Triple || spec.e.is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Kronecker => "kronecker",
            Model::Triple => "triple",
            Model::Full => "full",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kronecker" => Ok(Model::Kronecker),
            "triple" => Ok(Model::Triple),
            "full" => Ok(Model::Full),
            _ => Err(format!("unknown model {s:?}")),
        }
    }
}
