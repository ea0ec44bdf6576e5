//! Thin sincere modules over the bounded Beilinson algebra and its modified
//! (split first arrow) variant, classified up to the torus action.
//!
//! A thin module on the chain `0..=d` is a scalar per arrow; level `i`
//! collects the `n + 1` scalars of the arrows `x_j^i`. Rescaling vertex `i`
//! by `t_i` multiplies level `i` by `t_{i+1} / t_i`, so each nonzero level is
//! only defined up to scale and the orbit normal form is the tuple of
//! leading-1 level vectors.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graded::ProblemSpec;
use crate::grass::variety_points;
use crate::linalg::{normalize_leading_one, FieldSpec, Matrix, Scalar};
use crate::poly::ProjPoint;
use crate::projective::{line_count, lines};
use crate::quiver::models::{arrow_label, SPLIT_IN, SPLIT_OUT};
use crate::quiver::{bounded_algebra, split_first_arrow, QuiverPresentation, Starts};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("moduli enumeration needs a finite field, got {0}")]
    NotFinite(FieldSpec),
    #[error("estimated {estimate} candidates exceeds the budget of {budget}")]
    Budget { estimate: u128, budget: u128 },
    #[error("commuting levels that are not proportional: {0}")]
    NotCollinear(String),
    #[error("arrow {0:?} is not part of a thin chain module")]
    UnknownArrow(String),
}

/// Scalars of the split path `z0` then `y0` replacing `x_0^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Split {
    pub z: Scalar,
    pub y: Scalar,
}

/// A thin sincere representation of the (possibly modified) Beilinson quiver.
///
/// With `split` present, `levels[0][0]` is the composite `y0·z0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThinModule {
    pub levels: Vec<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
}

/// Orbit of a thin module under the vertex torus, stored as its normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ThinIsoClass {
    pub normal_form: ThinModule,
}

#[derive(Clone, Copy)]
enum Slot {
    Level(usize, usize),
    Z,
    Y,
}

impl ThinModule {
    pub fn chain(levels: Vec<Vec<Scalar>>) -> Self {
        ThinModule {
            levels,
            split: None,
        }
    }

    fn field(&self) -> FieldSpec {
        self.levels[0][0].field()
    }

    fn slot(&self, s: Slot) -> &Scalar {
        match (s, &self.split) {
            (Slot::Level(i, j), _) => &self.levels[i][j],
            (Slot::Z, Some(sp)) => &sp.z,
            (Slot::Y, Some(sp)) => &sp.y,
            _ => unreachable!("split arrows only on split modules"),
        }
    }

    /// Arrow edges `(src, tgt, scalar)` on vertices `0..=d`, with the auxiliary
    /// vertex numbered `d + 1` when split.
    fn edges(&self) -> Vec<(usize, usize, Scalar)> {
        let d = self.levels.len();
        let mut out = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            for (j, c) in level.iter().enumerate() {
                if i == 0 && j == 0 && self.split.is_some() {
                    continue;
                }
                out.push((i, i + 1, c.clone()));
            }
        }
        if let Some(sp) = &self.split {
            out.push((0, d + 1, sp.z.clone()));
            out.push((d + 1, 1, sp.y.clone()));
        }
        out
    }

    fn vertex_count(&self) -> usize {
        self.levels.len() + 1 + usize::from(self.split.is_some())
    }

    /// The nonzero arrows connect every vertex.
    pub fn is_indecomposable_thin(&self) -> bool {
        let nv = self.vertex_count();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn root(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        let mut components = nv;
        for (s, t, c) in self.edges() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (root(&mut parent, s), root(&mut parent, t));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// `dim End`: tuples `(λ_v)` with `c (λ_tgt - λ_src) = 0` on every arrow.
    pub fn endomorphism_dim(&self) -> usize {
        let field = self.field();
        let nv = self.vertex_count();
        let rows: Vec<Vec<Scalar>> = self
            .edges()
            .into_iter()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(s, t, c)| {
                let mut row = vec![field.zero(); nv];
                row[t] = c.clone();
                row[s] = -&c;
                row
            })
            .collect();
        Matrix::from_row_vecs(field, nv, rows)
            .and_then(|m| m.kernel_basis())
            .expect("homogeneous system over one field")
            .len()
    }

    /// Each nonzero level made leading-1; split arrows normalized to `z = 1`.
    pub fn normal_form(&self) -> ThinIsoClass {
        let mut levels = self.levels.clone();
        let mut split = self.split.clone();
        for (i, l) in levels.iter_mut().enumerate() {
            if i == 0 {
                if let Some(sp) = split.as_mut() {
                    l[0] = &sp.z * &sp.y;
                    normalize_leading_one(l);
                    let field = l[0].field();
                    // the auxiliary vertex absorbs z when it is nonzero, else y
                    *sp = if !sp.z.is_zero() {
                        Split {
                            z: field.one(),
                            y: l[0].clone(),
                        }
                    } else if sp.y.is_zero() {
                        Split {
                            z: field.zero(),
                            y: field.zero(),
                        }
                    } else {
                        Split {
                            z: field.zero(),
                            y: field.one(),
                        }
                    };
                    continue;
                }
            }
            normalize_leading_one(l);
        }
        ThinIsoClass {
            normal_form: ThinModule { levels, split },
        }
    }

    /// Action of the vertex torus on a chain module (`t` indexed by vertex).
    pub fn rescale(&self, t: &[Scalar]) -> ThinModule {
        assert!(self.split.is_none(), "rescale is defined on chain modules");
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let f = &t[i + 1] * &t[i].inv().expect("torus entries are nonzero");
                l.iter().map(|c| c * &f).collect()
            })
            .collect();
        ThinModule::chain(levels)
    }

    /// Value of a relation on this module.
    pub fn evaluate(&self, rel: &crate::quiver::PathCombo) -> Result<Scalar, ModuliError> {
        let compiled = compile(std::slice::from_ref(rel))?;
        Ok(eval_compiled(self, &compiled[0]))
    }

    pub fn satisfies(&self, presentation: &QuiverPresentation) -> Result<bool, ModuliError> {
        let compiled = compile(&presentation.relations)?;
        Ok(compiled.iter().all(|r| eval_compiled(self, r).is_zero()))
    }

    /// The common point of all levels, when they agree projectively.
    pub fn common_point(&self) -> Option<ProjPoint> {
        let mut canon = self.normal_form().normal_form.levels;
        let first = canon.swap_remove(0);
        if canon.iter().all(|l| *l == first) {
            ProjPoint::new(first).ok()
        } else {
            None
        }
    }
}

type Compiled = Vec<(Scalar, Vec<Slot>)>;

fn slot_of(label: &str) -> Result<Slot, ModuliError> {
    if label == SPLIT_IN {
        return Ok(Slot::Z);
    }
    if label == SPLIT_OUT {
        return Ok(Slot::Y);
    }
    let bad = || ModuliError::UnknownArrow(label.to_string());
    let rest = label.strip_prefix('x').ok_or_else(bad)?;
    let (j, i) = rest.split_once('^').ok_or_else(bad)?;
    let j: usize = j.parse().map_err(|_| bad())?;
    let i: usize = i.parse().map_err(|_| bad())?;
    debug_assert_eq!(arrow_label(j, i as u32), label);
    Ok(Slot::Level(i, j))
}

fn compile(relations: &[crate::quiver::PathCombo]) -> Result<Vec<Compiled>, ModuliError> {
    relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|(c, path)| {
                    Ok((
                        c.clone(),
                        path.iter().map(|l| slot_of(l)).collect::<Result<_, _>>()?,
                    ))
                })
                .collect()
        })
        .collect()
}

fn eval_compiled(m: &ThinModule, rel: &Compiled) -> Scalar {
    let field = m.field();
    let mut acc = field.zero();
    for (c, slots) in rel {
        let mut t = c.clone();
        for &s in slots {
            t *= m.slot(s);
            if t.is_zero() {
                break;
            }
        }
        acc += &t;
    }
    acc
}

fn max_level(rel: &Compiled) -> usize {
    rel.iter()
        .flat_map(|(_, slots)| slots.iter())
        .map(|s| match s {
            Slot::Level(i, _) => *i,
            Slot::Z | Slot::Y => 0,
        })
        .max()
        .unwrap_or(0)
}

struct LevelSearch<'a> {
    field: FieldSpec,
    nvars: usize,
    d: usize,
    buckets: Vec<Vec<Compiled>>,
    split: bool,
    candidates: &'a [Vec<Scalar>],
}

impl LevelSearch<'_> {
    fn run(&self) -> Result<Vec<ThinIsoClass>, ModuliError> {
        let mut out = Vec::new();
        let placeholder = vec![self.field.zero(); self.nvars];
        let mut m = ThinModule {
            levels: vec![placeholder; self.d],
            split: None,
        };
        self.descend(0, &mut m, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn descend(
        &self,
        level: usize,
        m: &mut ThinModule,
        out: &mut Vec<ThinIsoClass>,
    ) -> Result<(), ModuliError> {
        if level == self.d {
            if m.split.is_none() && m.common_point().is_none() {
                return Err(ModuliError::NotCollinear(format!("{:?}", m.levels)));
            }
            out.push(m.normal_form());
            return Ok(());
        }
        for c in self.candidates {
            if level == 0 && self.split {
                // uniserial: composite y0·z0 nonzero, normalized to z0 = 1
                if c[0].is_zero() {
                    continue;
                }
                m.split = Some(Split {
                    z: self.field.one(),
                    y: c[0].clone(),
                });
            }
            m.levels[level] = c.clone();
            if self.buckets[level]
                .iter()
                .all(|r| eval_compiled(m, r).is_zero())
            {
                self.descend(level + 1, m, out)?;
            }
        }
        Ok(())
    }
}

fn search(
    presentation: &QuiverPresentation,
    spec: &ProblemSpec,
    split: bool,
    budget: u128,
) -> Result<Vec<ThinIsoClass>, ModuliError> {
    let field = spec.field;
    let q = field.order().ok_or(ModuliError::NotFinite(field))?;
    let per_level = line_count(q, spec.nvars());
    let estimate = (0..spec.d).fold(1u128, |acc, _| acc.saturating_mul(per_level));
    if estimate > budget {
        return Err(ModuliError::Budget { estimate, budget });
    }
    let compiled = compile(&presentation.relations)?;
    let d = spec.d as usize;
    let mut buckets = vec![Vec::new(); d];
    for r in compiled {
        let l = max_level(&r);
        buckets[l].push(r);
    }
    let candidates: Vec<Vec<Scalar>> = lines(field, spec.nvars()).collect();
    LevelSearch {
        field,
        nvars: spec.nvars(),
        d,
        buckets,
        split,
        candidates: &candidates,
    }
    .run()
}

/// Isomorphism classes of thin sincere indecomposable modules over the
/// bounded Beilinson algebra (every relation lifted at every start).
pub fn enumerate_thin_moduli(
    spec: &ProblemSpec,
    q: u32,
    budget: u128,
) -> Result<Vec<ThinIsoClass>, crate::Error> {
    let spec = spec.over_prime(q)?;
    let p = bounded_algebra(&spec, &Starts::All)?;
    Ok(search(&p, &spec, false, budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub q: u32,
    pub classes: Vec<ThinIsoClass>,
    pub points: Vec<ProjPoint>,
    pub matched: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

fn match_points(q: u32, classes: Vec<ThinIsoClass>, expected: Vec<ProjPoint>) -> ModuliReport {
    let mut failures = Vec::new();
    let mut images = BTreeSet::new();
    for c in &classes {
        match c.normal_form.common_point() {
            Some(a) => {
                if !images.insert(a.clone()) {
                    failures.push(format!("two classes map to {a}"));
                }
            }
            None => failures.push(format!(
                "class {:?} has no common point",
                c.normal_form.levels
            )),
        }
    }
    let want: BTreeSet<ProjPoint> = expected.iter().cloned().collect();
    for a in images.difference(&want) {
        failures.push(format!("{a} is not a point of X"));
    }
    for a in want.difference(&images) {
        failures.push(format!("{a} has no class"));
    }
    ModuliReport {
        q,
        matched: failures.is_empty(),
        classes,
        points: expected,
        failures,
    }
}

/// Maps each class to the common point of its levels and checks this is a
/// bijection onto `X(F_q)`.
pub fn moduli_variety_bijection(
    spec: &ProblemSpec,
    q: u32,
    budget: u128,
) -> Result<ModuliReport, crate::Error> {
    let classes = enumerate_thin_moduli(spec, q, budget)?;
    let points = variety_points(&spec.over_prime(q)?)?;
    Ok(match_points(q, classes, points))
}

/// Uniserial thin modules over the modified quiver with relations: those
/// with `y0·z0 ≠ 0`, normalized to `z0 = 1`.
pub fn uniserial_chart(
    spec: &ProblemSpec,
    q: u32,
    budget: u128,
) -> Result<Vec<ThinIsoClass>, crate::Error> {
    let spec = spec.over_prime(q)?;
    let p = split_first_arrow(&bounded_algebra(&spec, &Starts::All)?);
    Ok(search(&p, &spec, true, budget)?)
}

/// Uniserial chart versus the affine chart `{a ∈ X(F_q) : a_0 ≠ 0}`.
pub fn chart_bijection(
    spec: &ProblemSpec,
    q: u32,
    budget: u128,
) -> Result<ModuliReport, crate::Error> {
    let classes = uniserial_chart(spec, q, budget)?;
    let points = variety_points(&spec.over_prime(q)?)?
        .into_iter()
        .filter(|a| !a.coords()[0].is_zero())
        .collect();
    Ok(match_points(q, classes, points))
}

/// Arrow scalars keyed by label, for inspection and JSON.
pub fn arrow_scalars(m: &ThinModule) -> HashMap<String, Scalar> {
    let mut out = HashMap::new();
    for (i, l) in m.levels.iter().enumerate() {
        for (j, c) in l.iter().enumerate() {
            if i == 0 && j == 0 && m.split.is_some() {
                continue;
            }
            out.insert(arrow_label(j, i as u32), c.clone());
        }
    }
    if let Some(sp) = &m.split {
        out.insert(SPLIT_IN.into(), sp.z.clone());
        out.insert(SPLIT_OUT.into(), sp.y.clone());
    }
    out
}
