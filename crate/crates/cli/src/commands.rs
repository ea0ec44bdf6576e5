use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, Context};
use beilinson_core::graded::{hilbert_function, ProblemSpec};
use beilinson_core::grass::{
    compare, emit_equations, enumerate_grass, lemma_reduction_check, solve_equations,
    variety_points, GrassError, GrassPoint,
};
use beilinson_core::moduli::{
    chart_bijection, enumerate_thin_moduli, moduli_variety_bijection, uniserial_chart, ThinIsoClass,
};
use beilinson_core::problem::load_problem;
use beilinson_core::projective::line_count;
use beilinson_core::quiver::models::Model;
use beilinson_core::quiver::{
    module_m_full, module_m_kronecker, module_m_modified, module_m_triple,
};
use beilinson_core::{GradedRing, HomPoly, Representation, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Outcome;
use crate::{BuildModel, Via};

fn load(file: &Path) -> anyhow::Result<ProblemSpec> {
    Ok(load_problem(file)?)
}

/// `q` from the flag, else the file's characteristic.
fn resolve_q(spec: &ProblemSpec, q: Option<u32>) -> anyhow::Result<u32> {
    match (q, spec.field.order()) {
        (Some(q), _) => Ok(q),
        (None, Some(p)) => Ok(p),
        (None, None) => bail!("the problem is over Q; pass --q <prime>"),
    }
}

fn texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub fn build(file: &Path, model: BuildModel, out: Option<&Path>) -> anyhow::Result<Outcome> {
    let spec = load(file)?;
    let ring = GradedRing::new(&spec);
    let rep = match model {
        BuildModel::Beilinson => module_m_full(&ring),
        BuildModel::Modified => module_m_modified(&ring),
        BuildModel::Triple => module_m_triple(&ring)?,
        BuildModel::Kronecker => module_m_kronecker(&ring),
    };
    let violations = rep.check_relations()?;
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&rep)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let p = &rep.presentation;
    let lines = vec![
        format!("vertices {:?}", p.vertices),
        format!("dims {:?}", rep.dims),
        format!("arrows {}, relations {}", p.arrows.len(), p.relations.len()),
        format!("violated relations {}", violations.len()),
    ];
    Ok(Outcome {
        results: json!({
            "vertices": p.vertices,
            "dims": rep.dims,
            "arrows": p.arrows.len(),
            "relations": p.relations.len(),
            "violations": violations,
            "written": out,
        }),
        lines,
        ok: violations.is_empty(),
    })
}

fn class_point(c: &ThinIsoClass) -> Vec<String> {
    texts(&c.normal_form.levels[0])
}

pub fn points(file: &Path, via: Via, q: Option<u32>, budget: u128) -> anyhow::Result<Outcome> {
    let spec = load(file)?;
    let q = resolve_q(&spec, q)?;
    let over = spec.over_prime(q)?;
    let (count, listed): (usize, Value) = match via {
        Via::Direct => {
            let estimate = line_count(q, over.nvars());
            if estimate > budget {
                return Err(GrassError::Budget { estimate, budget }.into());
            }
            let pts = variety_points(&over)?;
            (pts.len(), serde_json::to_value(&pts)?)
        }
        Via::Kronecker | Via::Triple | Via::Full => {
            let model = match via {
                Via::Kronecker => Model::Kronecker,
                Via::Triple => Model::Triple,
                _ => Model::Full,
            };
            let rep = model.build(&GradedRing::new(&over))?.dual();
            let found = enumerate_grass(&rep, budget)?;
            (found.points.len(), serde_json::to_value(&found.points)?)
        }
        Via::Moduli => {
            let classes = enumerate_thin_moduli(&spec, q, budget)?;
            let pts: Vec<_> = classes.iter().map(class_point).collect();
            (pts.len(), serde_json::to_value(pts)?)
        }
        Via::Chart => {
            let classes = uniserial_chart(&spec, q, budget)?;
            let pts: Vec<_> = classes.iter().map(class_point).collect();
            (pts.len(), serde_json::to_value(pts)?)
        }
    };
    let mut lines = vec![format!("q = {q}, count {count}")];
    if let Value::Array(items) = &listed {
        for item in items {
            lines.push(render(item));
        }
    }
    Ok(Outcome {
        results: json!({ "q": q, "count": count, "points": listed }),
        lines,
        ok: true,
    })
}

/// Compact rendering of nested string lists: `[1:0:2]` or `[1:0] [0:1:1]`.
fn render(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(Value::is_string) => format!(
            "[{}]",
            items
                .iter()
                .map(|s| s.as_str().unwrap_or_default())
                .collect::<Vec<_>>()
                .join(":")
        ),
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(" "),
        Value::Object(map) => map.values().map(render).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct Check {
    name: String,
    ok: bool,
    detail: Value,
}

impl Check {
    fn line(&self) -> String {
        let status = if self.ok { "ok  " } else { "FAIL" };
        format!("{status} {}: {}", self.name, summarize(&self.detail))
    }
}

fn summarize(detail: &Value) -> String {
    match detail {
        Value::Object(map) => map
            .iter()
            .filter(|(_, v)| !v.is_array() || v.as_array().is_some_and(|a| !a.is_empty()))
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn equation_check(spec: &ProblemSpec, q: u32, budget: u128) -> anyhow::Result<Check> {
    let over = spec.over_prime(q)?;
    let rep = module_m_kronecker(&GradedRing::new(&over)).dual();
    let eqs = emit_equations(&rep)?;
    let grass = enumerate_grass(&rep, budget)?;
    let unsound: Vec<&GrassPoint> = grass
        .points
        .iter()
        .filter(|p| !eqs.vanish_at(&p.generators[1], &p.generators[0]))
        .collect();
    let mut detail = json!({
        "equations": eqs.polys.len(),
        "points": grass.points.len(),
        "unsound": unsound,
    });
    let mut ok = unsound.is_empty();
    match solve_equations(&rep, &eqs, budget) {
        Ok(solved) => {
            let solved: BTreeSet<GrassPoint> = solved.into_iter().collect();
            let enumerated: BTreeSet<GrassPoint> = grass.points.iter().cloned().collect();
            let complete = solved == enumerated;
            ok &= complete;
            detail["complete"] = json!(complete);
        }
        Err(beilinson_core::Error::Grass(GrassError::Budget { estimate, .. })) => {
            detail["complete"] = json!(format!("skipped, {estimate} candidates"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Check {
        name: format!("equations q={q}"),
        ok,
        detail,
    })
}

fn verify_q(spec: &ProblemSpec, q: u32, budget: u128) -> anyhow::Result<Vec<Check>> {
    let mut checks = Vec::new();
    for model in Model::ALL {
        if !model.applies_to(spec) {
            continue;
        }
        let r = compare(spec, model, q, budget)?;
        checks.push(Check {
            name: format!("{} q={q}", model.name()),
            ok: r.bijection_ok,
            detail: json!({
                "count_x": r.count_x,
                "count_grass": r.count_grass,
                "degenerate": r.degenerate,
                "failures": r.failures,
            }),
        });
    }
    if spec.e.is_some() {
        let r = lemma_reduction_check(spec, q, budget)?;
        checks.push(Check {
            name: format!("restriction to degrees e,d q={q}"),
            ok: r.bijection_ok,
            detail: json!({
                "count_triple": r.count_triple,
                "count_restricted": r.count_restricted,
                "failures": r.failures,
            }),
        });
    }
    let m = moduli_variety_bijection(spec, q, budget)?;
    checks.push(Check {
        name: format!("moduli q={q}"),
        ok: m.matched,
        detail: json!({
            "classes": m.classes.len(),
            "points": m.points.len(),
            "failures": m.failures,
        }),
    });
    let c = chart_bijection(spec, q, budget)?;
    checks.push(Check {
        name: format!("chart q={q}"),
        ok: c.matched,
        detail: json!({
            "classes": c.classes.len(),
            "points": c.points.len(),
            "failures": c.failures,
        }),
    });
    let full = module_m_full(&GradedRing::new(&spec.over_prime(q)?));
    let bad = full.check_relations()?;
    checks.push(Check {
        name: format!("relations of M q={q}"),
        ok: bad.is_empty(),
        detail: json!({ "relations": full.presentation.relations.len(), "violated": bad }),
    });
    checks.push(equation_check(spec, q, budget)?);
    Ok(checks)
}

pub fn verify(
    file: &Path,
    qs: &[u32],
    representation: Option<&Path>,
    budget: u128,
) -> anyhow::Result<Outcome> {
    let spec = load(file)?;
    let qs = if qs.is_empty() {
        vec![resolve_q(&spec, None)?]
    } else {
        qs.to_vec()
    };
    let mut checks = Vec::new();
    if let Some(path) = representation {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let rep: Representation = serde_json::from_str(&text)
            .with_context(|| format!("parsing representation {}", path.display()))?;
        let bad = rep.check_relations()?;
        checks.push(Check {
            name: "stored representation".into(),
            ok: bad.is_empty(),
            detail: json!({ "relations": rep.presentation.relations.len(), "violated": bad }),
        });
    }
    for &q in &qs {
        checks.extend(verify_q(&spec, q, budget)?);
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(Outcome {
        lines: checks.iter().map(Check::line).collect(),
        results: json!({ "checks": checks }),
        ok,
    })
}

pub fn hilbert(file: &Path, upto: u32) -> anyhow::Result<Outcome> {
    let spec = load(file)?;
    let h = hilbert_function(&spec, upto);
    let mut lines = vec!["m  dim".to_string()];
    lines.extend(h.iter().enumerate().map(|(m, d)| format!("{m:<2} {d}")));
    Ok(Outcome {
        results: json!({ "values": h }),
        lines,
        ok: true,
    })
}

pub fn equations(file: &Path) -> anyhow::Result<Outcome> {
    let spec = load(file)?;
    let rep = module_m_kronecker(&GradedRing::new(&spec)).dual();
    let eqs = emit_equations(&rep)?;
    let texts = eqs.texts();
    let reparsed = texts
        .iter()
        .zip(&eqs.polys)
        .all(|(t, f)| HomPoly::parse_with(t, &eqs.vars, spec.field).as_ref() == Ok(f));
    let mut lines = vec![format!(
        "{} equations in u (dim {}) and w (dim {})",
        texts.len(),
        eqs.source_dim,
        eqs.target_dim
    )];
    lines.extend(texts.iter().cloned());
    Ok(Outcome {
        results: json!({
            "count": texts.len(),
            "source_dim": eqs.source_dim,
            "target_dim": eqs.target_dim,
            "equations": texts,
            "reparsed": reparsed,
        }),
        lines,
        ok: reparsed,
    })
}
