//! Thin quiver-grassmannian points over `F_q` and their comparison with `X(F_q)`.
//!
//! The module `M` of each model is built with multiplication maps; its thin
//! submodules carry no information (multiplying a nonzero form by different
//! variables never lands in one line). The realization of `X` lives in the
//! dual `M^∨`, the injective module with socle `S^0 V`: a point `a ∈ X`
//! gives the evaluation functionals `ev_a` on every slice, and contraction
//! by `X_j` sends `ev_a` at degree `m + 1` to `a_j · ev_a` at degree `m`.
//! All comparisons below therefore enumerate submodules of [`Representation::dual`].

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graded::{GradedRing, ProblemSpec};
use crate::linalg::{normalize_leading_one, FieldSpec, Matrix, Scalar};
use crate::poly::{HomPoly, Monomial, ProjPoint, VarScheme};
use crate::projective::{line_count, lines, lines_in_span};
use crate::quiver::{module_m_triple, Model, Representation};

/// Default cap on candidate evaluations for exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassError {
    #[error("point enumeration needs a finite field, got {0}")]
    NotFinite(FieldSpec),
    #[error("estimated {estimate} candidates exceeds the budget of {budget}")]
    Budget { estimate: u128, budget: u128 },
    #[error("point {0} is not on the variety")]
    NotOnVariety(ProjPoint),
    #[error(
        "internal inconsistency: evaluation functional of {point} vanishes at degree {degree}"
    )]
    ZeroGenerator { point: ProjPoint, degree: u32 },
    #[error("equations need a two-vertex representation with all arrows parallel")]
    NotKronecker,
    #[error("socle reduction needs a one-dimensional degree-0 slice, found dimension {0}")]
    LemmaHypothesis(usize),
}

/// One thin submodule: a generator per vertex, each leading-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GrassPoint {
    pub generators: Vec<Vec<Scalar>>,
}

impl GrassPoint {
    /// Every arrow maps the source generator into the target line.
    pub fn is_submodule_of(&self, rep: &Representation) -> bool {
        if self.generators.len() != rep.dims.len()
            || self
                .generators
                .iter()
                .zip(&rep.dims)
                .any(|(g, &d)| g.len() != d || g.iter().all(Scalar::is_zero))
        {
            return false;
        }
        rep.presentation.arrows.iter().all(|a| {
            let img = rep.mats[&a.label].apply(&self.generators[a.src]);
            is_multiple(&img, &self.generators[a.tgt])
        })
    }

    /// Vertices (with outgoing arrows) whose generator every outgoing arrow kills.
    pub fn degenerate_vertices(&self, rep: &Representation) -> Vec<usize> {
        (0..rep.dims.len())
            .filter(|&v| {
                let mut out = rep
                    .presentation
                    .arrows
                    .iter()
                    .filter(|a| a.src == v)
                    .peekable();
                out.peek().is_some()
                    && out.all(|a| {
                        rep.mats[&a.label]
                            .apply(&self.generators[v])
                            .iter()
                            .all(Scalar::is_zero)
                    })
            })
            .collect()
    }
}

/// `x` is a (possibly zero) multiple of the nonzero vector `g`.
fn is_multiple(x: &[Scalar], g: &[Scalar]) -> bool {
    let Some(l) = g.iter().position(|v| !v.is_zero()) else {
        return x.iter().all(Scalar::is_zero);
    };
    let ratio = &x[l] * &g[l].inv().expect("nonzero");
    x.iter().zip(g).all(|(xi, gi)| *xi == &ratio * gi)
}

/// A degenerate line: a generator killed by every arrow leaving its vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegenerateLine {
    pub vertex: String,
    pub line: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassEnumeration {
    pub points: Vec<GrassPoint>,
    pub degenerate: Vec<DegenerateLine>,
}

/// Upper estimate of the work of [`enumerate_grass`]: free line choices at
/// the sinks times the number of constrained vertices.
pub fn estimate_grass(rep: &Representation) -> Result<u128, GrassError> {
    let q = rep
        .field()
        .order()
        .ok_or(GrassError::NotFinite(rep.field()))?;
    let p = &rep.presentation;
    let mut free: u128 = 1;
    for v in 0..rep.dims.len() {
        if !p.arrows.iter().any(|a| a.src == v) {
            free = free.saturating_mul(line_count(q, rep.dims[v]));
        }
    }
    Ok(free.saturating_mul(rep.dims.len() as u128))
}

/// All submodules of dimension vector `(1, …, 1)` over the rep's finite field.
///
/// Vertices are visited sinks first. Once the targets of a vertex are fixed,
/// the vectors it may carry form the subspace `{x : A x ∈ line(tgt)}` for each
/// outgoing arrow `A`, so candidates are the lines of that subspace.
pub fn enumerate_grass(
    rep: &Representation,
    budget: u128,
) -> Result<GrassEnumeration, crate::Error> {
    let field = rep.field();
    if !field.is_finite() {
        return Err(GrassError::NotFinite(field).into());
    }
    let estimate = estimate_grass(rep)?;
    if estimate > budget {
        return Err(GrassError::Budget { estimate, budget }.into());
    }
    let mut order = rep.presentation.topological_order()?;
    order.reverse();
    let nv = rep.dims.len();
    if nv == 0 || rep.dims.contains(&0) {
        return Ok(GrassEnumeration {
            points: Vec::new(),
            degenerate: Vec::new(),
        });
    }

    let search = Search { rep, order: &order };
    let first = order[0];
    let mut gens: Vec<Option<Vec<Scalar>>> = vec![None; nv];
    let candidates = search.candidates(first, &gens)?;
    let mut points: Vec<GrassPoint> = candidates
        .into_par_iter()
        .map(|c| {
            let mut gens = gens.clone();
            gens[first] = Some(c);
            let mut out = Vec::new();
            search.descend(1, &mut gens, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<Vec<GrassPoint>>, crate::Error>>()?
        .into_iter()
        .flatten()
        .collect();
    gens.clear();
    points.sort();
    points.dedup();

    let mut degenerate = BTreeSet::new();
    for pt in &points {
        for v in pt.degenerate_vertices(rep) {
            degenerate.insert(DegenerateLine {
                vertex: rep.presentation.vertices[v].clone(),
                line: pt.generators[v].clone(),
            });
        }
    }
    Ok(GrassEnumeration {
        points,
        degenerate: degenerate.into_iter().collect(),
    })
}

struct Search<'a> {
    rep: &'a Representation,
    order: &'a [usize],
}

impl Search<'_> {
    fn candidates(
        &self,
        v: usize,
        gens: &[Option<Vec<Scalar>>],
    ) -> Result<Vec<Vec<Scalar>>, crate::Error> {
        let rep = self.rep;
        let field = rep.field();
        let dim = rep.dims[v];
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for a in rep.presentation.arrows.iter().filter(|a| a.src == v) {
            let g = gens[a.tgt].as_ref().expect("targets come first");
            let mat = &rep.mats[&a.label];
            let l = g
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero generator");
            // (A x)_i - g_i (A x)_l = 0 for i != l, with g_l = 1
            for (i, gi) in g.iter().enumerate() {
                if i == l {
                    continue;
                }
                let row: Vec<Scalar> = mat
                    .row(i)
                    .iter()
                    .zip(mat.row(l))
                    .map(|(ai, al)| ai - &(gi * al))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Ok(lines(field, dim).collect());
        }
        let basis = Matrix::from_row_vecs(field, dim, rows)?.kernel_basis()?;
        Ok(lines_in_span(field, &basis))
    }

    fn descend(
        &self,
        depth: usize,
        gens: &mut Vec<Option<Vec<Scalar>>>,
        out: &mut Vec<GrassPoint>,
    ) -> Result<(), crate::Error> {
        if depth == self.order.len() {
            out.push(GrassPoint {
                generators: gens.iter().map(|g| g.clone().expect("assigned")).collect(),
            });
            return Ok(());
        }
        let v = self.order[depth];
        for c in self.candidates(v, gens)? {
            gens[v] = Some(c);
            self.descend(depth + 1, gens, out)?;
        }
        gens[v] = None;
        Ok(())
    }
}

/// `X(F_q)` by brute force over `P^n(F_q)`, in enumeration order.
pub fn variety_points(spec: &ProblemSpec) -> Result<Vec<ProjPoint>, GrassError> {
    if !spec.field.is_finite() {
        return Err(GrassError::NotFinite(spec.field));
    }
    Ok(lines(spec.field, spec.nvars())
        .filter(|a| {
            spec.polys
                .iter()
                .all(|f| f.evaluate_at(a).expect("matching field").is_zero())
        })
        .map(|a| ProjPoint::new(a).expect("canonical nonzero"))
        .collect())
}

/// The thin submodule of `M^∨` cut out by the evaluation functionals of `a`:
/// at a vertex of degree `m`, the values of `a` on the standard monomials.
pub fn veronese_point(
    a: &ProjPoint,
    model: Model,
    ring: &GradedRing,
) -> Result<GrassPoint, crate::Error> {
    let spec = ring.spec();
    for f in &spec.polys {
        if !f.evaluate(a)?.is_zero() {
            return Err(GrassError::NotOnVariety(a.clone()).into());
        }
    }
    let generators = model
        .degrees(spec)?
        .into_iter()
        .map(|m| {
            let mut g = ring.slice(m).restrict_functional(&a.veronese(m));
            if normalize_leading_one(&mut g) {
                Ok(g)
            } else {
                Err(GrassError::ZeroGenerator {
                    point: a.clone(),
                    degree: m,
                }
                .into())
            }
        })
        .collect::<Result<_, crate::Error>>()?;
    Ok(GrassPoint { generators })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub model: Model,
    pub q: u32,
    pub count_x: usize,
    pub count_grass: usize,
    pub degenerate: Vec<DegenerateLine>,
    pub bijection_ok: bool,
    pub failures: Vec<String>,
}

/// Checks that `a ↦ veronese_point(a)` is a bijection from `X(F_q)` onto the
/// thin submodules of the dual of the model's `M`.
pub fn compare(
    spec: &ProblemSpec,
    model: Model,
    q: u32,
    budget: u128,
) -> Result<ComparisonReport, crate::Error> {
    let spec = spec.over_prime(q)?;
    let ring = GradedRing::new(&spec);
    let injective = model.build(&ring)?.dual();
    let points = variety_points(&spec)?;
    let grass = enumerate_grass(&injective, budget)?;

    let mut failures = Vec::new();
    let mut images = BTreeMap::new();
    for a in &points {
        match veronese_point(a, model, &ring) {
            Ok(gp) => {
                if !gp.is_submodule_of(&injective) {
                    failures.push(format!("image of {a} is not a submodule"));
                }
                if let Some(prev) = images.insert(gp, a.clone()) {
                    failures.push(format!("{prev} and {a} have the same image"));
                }
            }
            Err(e) => failures.push(format!("{a}: {e}")),
        }
    }
    let enumerated: BTreeSet<&GrassPoint> = grass.points.iter().collect();
    for gp in images.keys() {
        if !enumerated.contains(gp) {
            failures.push(format!("image of {} was not enumerated", images[gp]));
        }
    }
    let missed = grass
        .points
        .iter()
        .filter(|gp| !images.contains_key(*gp))
        .count();
    if missed > 0 {
        failures.push(format!("{missed} enumerated submodules have no preimage"));
    }
    if !grass.degenerate.is_empty() {
        failures.push(format!("{} degenerate lines", grass.degenerate.len()));
    }
    Ok(ComparisonReport {
        model,
        q,
        count_x: points.len(),
        count_grass: grass.points.len(),
        bijection_ok: failures.is_empty() && points.len() == grass.points.len(),
        degenerate: grass.degenerate,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub q: u32,
    pub count_triple: usize,
    pub count_restricted: usize,
    pub bijection_ok: bool,
    pub failures: Vec<String>,
}

/// Thin submodules of the three-vertex `M^∨` versus those of its restriction
/// to the degrees `e, d`: restriction is a bijection because the socle
/// `S^0 V` is one-dimensional, so every restricted point extends in exactly
/// one way.
pub fn lemma_reduction_check(
    spec: &ProblemSpec,
    q: u32,
    budget: u128,
) -> Result<LemmaReport, crate::Error> {
    let spec = spec.over_prime(q)?;
    let ring = GradedRing::new(&spec);
    let triple = module_m_triple(&ring)?.dual();
    if triple.dims[0] != 1 {
        return Err(GrassError::LemmaHypothesis(triple.dims[0]).into());
    }
    let restricted = triple.restrict(&[1, 2]);
    let full_pts = enumerate_grass(&triple, budget)?.points;
    let sub_pts = enumerate_grass(&restricted, budget)?.points;

    let mut failures = Vec::new();
    let field = spec.field;
    let socle_lines: Vec<Vec<Scalar>> = lines(field, 1).collect();
    let full_set: BTreeSet<&GrassPoint> = full_pts.iter().collect();
    let mut extended = BTreeSet::new();
    for p in &sub_pts {
        let exts: Vec<GrassPoint> = socle_lines
            .iter()
            .map(|g0| GrassPoint {
                generators: vec![g0.clone(), p.generators[0].clone(), p.generators[1].clone()],
            })
            .filter(|gp| gp.is_submodule_of(&triple))
            .collect();
        if exts.len() != 1 {
            failures.push(format!(
                "restricted point {:?} has {} extensions",
                p.generators,
                exts.len()
            ));
            continue;
        }
        let ext = exts.into_iter().next().expect("one extension");
        if !full_set.contains(&ext) {
            failures.push(format!(
                "extension of {:?} was not enumerated",
                p.generators
            ));
        }
        extended.insert(ext);
    }
    let sub_set: BTreeSet<&GrassPoint> = sub_pts.iter().collect();
    for p in &full_pts {
        let r = GrassPoint {
            generators: p.generators[1..].to_vec(),
        };
        if !sub_set.contains(&r) {
            failures.push(format!(
                "restriction of {:?} was not enumerated",
                p.generators
            ));
        }
    }
    Ok(LemmaReport {
        q,
        count_triple: full_pts.len(),
        count_restricted: sub_pts.len(),
        bijection_ok: failures.is_empty()
            && full_pts.len() == sub_pts.len()
            && extended.len() == sub_pts.len(),
        failures,
    })
}

/// Bilinear equations of the thin grassmannian of a two-vertex representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equations {
    pub source_dim: usize,
    pub target_dim: usize,
    pub vars: VarScheme,
    pub polys: Vec<HomPoly>,
}

impl Equations {
    pub fn texts(&self) -> Vec<String> {
        self.polys
            .iter()
            .map(|f| f.display_with(&self.vars))
            .collect()
    }

    /// True when every equation vanishes at `(u, w)`.
    pub fn vanish_at(&self, u: &[Scalar], w: &[Scalar]) -> bool {
        let point: Vec<Scalar> = u.iter().chain(w).cloned().collect();
        self.polys
            .iter()
            .all(|f| f.evaluate_at(&point).expect("matching arity").is_zero())
    }
}

impl Serialize for Equations {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.texts().serialize(s)
    }
}

/// For every arrow `A` and rows `p < s` of the target: the minor
/// `(A u)_p w_s - (A u)_s w_p` of `[A u | w]`, in variables `u0.., w0..`.
/// Minors that vanish identically are omitted.
pub fn emit_equations(rep: &Representation) -> Result<Equations, crate::Error> {
    let p = &rep.presentation;
    if rep.dims.len() != 2 || p.arrows.is_empty() {
        return Err(GrassError::NotKronecker.into());
    }
    let (src, tgt) = (p.arrows[0].src, p.arrows[0].tgt);
    if src == tgt || p.arrows.iter().any(|a| (a.src, a.tgt) != (src, tgt)) {
        return Err(GrassError::NotKronecker.into());
    }
    let (a_dim, b_dim) = (rep.dims[src], rep.dims[tgt]);
    let nvars = a_dim + b_dim;
    let field = rep.field();
    let vars = VarScheme::blocks(vec![("u".into(), a_dim), ("w".into(), b_dim)]);
    let var = |i: usize| Monomial::var(nvars, i);
    let mut polys = Vec::new();
    for a in &p.arrows {
        let m = &rep.mats[&a.label];
        for r in 0..b_dim {
            for s in r + 1..b_dim {
                let mut terms = Vec::new();
                for c in 0..a_dim {
                    let uc = var(c);
                    terms.push((uc.mul(&var(a_dim + s)), m.get(r, c).clone()));
                    terms.push((uc.mul(&var(a_dim + r)), -m.get(s, c)));
                }
                match HomPoly::from_terms(nvars - 1, field, terms) {
                    Ok(f) => polys.push(f),
                    Err(crate::poly::PolyError::ZeroPolynomial) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(Equations {
        source_dim: a_dim,
        target_dim: b_dim,
        vars,
        polys,
    })
}

/// Pairs of lines `(u, w)` on which every equation vanishes, by brute force,
/// keeping only those where some arrow is nonzero on `u`.
pub fn solve_equations(
    rep: &Representation,
    eqs: &Equations,
    budget: u128,
) -> Result<Vec<GrassPoint>, crate::Error> {
    let field = rep.field();
    let q = field.order().ok_or(GrassError::NotFinite(field))?;
    let estimate = line_count(q, eqs.source_dim).saturating_mul(line_count(q, eqs.target_dim));
    if estimate > budget {
        return Err(GrassError::Budget { estimate, budget }.into());
    }
    let src = rep.presentation.arrows[0].src;
    let us: Vec<Vec<Scalar>> = lines(field, eqs.source_dim).collect();
    let mut out: Vec<GrassPoint> = us
        .par_iter()
        .flat_map_iter(|u| {
            let nondegenerate = rep
                .presentation
                .arrows
                .iter()
                .any(|a| rep.mats[&a.label].apply(u).iter().any(|x| !x.is_zero()));
            lines(field, eqs.target_dim)
                .filter(move |w| nondegenerate && eqs.vanish_at(u, w))
                .map(move |w| {
                    let mut generators = vec![Vec::new(), Vec::new()];
                    generators[src] = u.clone();
                    generators[1 - src] = w;
                    GrassPoint { generators }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    Ok(out)
}
