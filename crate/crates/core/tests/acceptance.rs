//! End-to-end acceptance checks. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use beilinson_core::graded::{hilbert_function, ProblemSpec};
use beilinson_core::grass::{
    compare, emit_equations, enumerate_grass, lemma_reduction_check, solve_equations,
    variety_points, DEFAULT_BUDGET,
};
use beilinson_core::linalg::Scalar;
use beilinson_core::moduli::{chart_bijection, moduli_variety_bijection, ThinModule};
use beilinson_core::problem::{catalog, CATALOG};
use beilinson_core::quiver::models::Model;
use beilinson_core::quiver::{beilinson_quiver, module_m_full, module_m_kronecker};
use beilinson_core::{FieldSpec, GradedRing, Matrix};
use common::{brute_points, coords, fp, projective_count, random_poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, optional wall-clock limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bundled() -> Vec<(&'static str, ProblemSpec)> {
    CATALOG
        .iter()
        .map(|(name, _)| (*name, catalog(name).unwrap()))
        .collect()
}

fn q_of(spec: &ProblemSpec) -> u32 {
    spec.field.order().unwrap()
}

fn projective_baseline() -> Outcome {
    let mut runs = 0;
    for n in 1..=2usize {
        for q in [2u32, 3, 5] {
            let want = projective_count(q as u64, n as u32) as usize;
            for d in 1..=3u32 {
                let spec = ProblemSpec::new(n, fp(q), vec![], Some(d), None).unwrap();
                for model in Model::ALL {
                    if !model.applies_to(&spec) {
                        continue;
                    }
                    let r = compare(&spec, model, q, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    ensure(
                        r.count_grass == want && r.count_x == want && r.bijection_ok,
                        || format!("n={n} q={q} d={d} {}: {r:?}", model.name()),
                    )?;
                    runs += 1;
                }
                let m = moduli_variety_bijection(&spec, q, DEFAULT_BUDGET)
                    .map_err(|e| e.to_string())?;
                ensure(m.classes.len() == want && m.matched, || {
                    format!("n={n} q={q} d={d} moduli: {} classes", m.classes.len())
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} realizations"))
}

fn curved_examples() -> Outcome {
    let mut runs = 0;
    let curves: [(&str, usize, &[&str]); 2] = [
        ("conic", 2, &["X0*X2 - X1^2"]),
        (
            "twisted cubic",
            3,
            &["X0*X2 - X1^2", "X0*X3 - X1*X2", "X1*X3 - X2^2"],
        ),
    ];
    for (name, n, polys) in curves {
        for q in [3u32, 5, 7] {
            let spec =
                ProblemSpec::parse(n, FieldSpec::Rationals, polys, Some(2), Some(1)).unwrap();
            let oracle = brute_points(&spec.over_prime(q).unwrap());
            for model in Model::ALL {
                let r = compare(&spec, model, q, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure(
                    r.count_x == oracle.len()
                        && r.count_grass == oracle.len()
                        && r.bijection_ok
                        && r.degenerate.is_empty(),
                    || format!("{name} q={q} {}: {r:?}", model.name()),
                )?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} comparisons"))
}

fn socle_reduction() -> Outcome {
    let mut checked = 0;
    for (name, spec) in bundled() {
        let spec = if spec.d < 2 {
            spec.with_degrees(2, Some(1)).unwrap()
        } else {
            spec
        };
        let r = lemma_reduction_check(&spec, q_of(&spec), DEFAULT_BUDGET)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.bijection_ok, || format!("{name}: {r:?}"))?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2usize);
        let r = rng.gen_range(0..=2usize);
        let texts: Vec<String> = (0..r).map(|_| random_poly(&mut rng, n, 3)).collect();
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let spec = ProblemSpec::parse(n, fp(3), &refs, Some(2), Some(1))
            .map_err(|e| format!("{texts:?}: {e}"))?;
        let rep = lemma_reduction_check(&spec, 3, DEFAULT_BUDGET)
            .map_err(|e| format!("{texts:?}: {e}"))?;
        ensure(rep.bijection_ok, || format!("{texts:?}: {rep:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} specs"))
}

fn relation_lifts() -> Outcome {
    let mut rels = 0;
    for (name, spec) in bundled() {
        let rep = module_m_full(&GradedRing::new(&spec));
        let bad = rep.check_relations().map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("{name}: {bad:?}"))?;
        rels += rep.presentation.relations.len();
    }
    Ok(format!("{rels} lifted relations vanish"))
}

fn all_vectors(field: FieldSpec, len: usize) -> Vec<Vec<Scalar>> {
    let elems: Vec<Scalar> = field.elements().unwrap().collect();
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn thin_indecomposability() -> Outcome {
    let mut modules = 0;
    for n in 1..=2usize {
        for d in 1..=2u32 {
            for q in [2u32, 3] {
                let field = fp(q);
                let p = beilinson_quiver(field, n, d);
                let levels = all_vectors(field, n + 1);
                let mut tuples: Vec<Vec<Vec<Scalar>>> = vec![vec![]];
                for _ in 0..d {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            levels.iter().map(move |l| {
                                let mut t = t.clone();
                                t.push(l.clone());
                                t
                            })
                        })
                        .collect();
                }
                for t in tuples {
                    let m = ThinModule::chain(t);
                    if !m.satisfies(&p).map_err(|e| e.to_string())? {
                        continue;
                    }
                    ensure(
                        m.is_indecomposable_thin() == (m.endomorphism_dim() == 1),
                        || format!("disagreement on {:?}", m.levels),
                    )?;
                    modules += 1;
                }
            }
        }
    }
    Ok(format!("{modules} modules"))
}

fn moduli_points() -> Outcome {
    let mut checked = 0;
    for (name, spec) in bundled() {
        let q = q_of(&spec);
        let oracle = brute_points(&spec);
        let m = moduli_variety_bijection(&spec, q, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<u64>> = m
            .classes
            .iter()
            .map(|c| coords(&c.normal_form.levels[0]))
            .collect();
        ensure(
            m.matched && m.classes.len() == oracle.len() && got == oracle,
            || {
                format!(
                    "{name}: {} classes, {} points",
                    m.classes.len(),
                    oracle.len()
                )
            },
        )?;
        let chart_oracle = oracle.iter().filter(|a| a[0] != 0).count();
        let c = chart_bijection(&spec, q, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(c.matched && c.classes.len() == chart_oracle, || {
            format!("{name}: chart {} vs {chart_oracle}", c.classes.len())
        })?;
        if name == "conic" {
            ensure(m.classes.len() == 6 && c.classes.len() == 5, || {
                "conic over F5 should give 6 and 5".into()
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} examples"))
}

fn equations() -> Outcome {
    let mut total = 0;
    for q in [3u32, 5] {
        let spec = ProblemSpec::parse(2, FieldSpec::Rationals, &["X0*X2 - X1^2"], None, None)
            .unwrap()
            .over_prime(q)
            .unwrap();
        let rep = module_m_kronecker(&GradedRing::new(&spec)).dual();
        let eqs = emit_equations(&rep).map_err(|e| e.to_string())?;
        let grass = enumerate_grass(&rep, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        for p in &grass.points {
            ensure(eqs.vanish_at(&p.generators[1], &p.generators[0]), || {
                format!("q={q}: equations fail at {:?}", p.generators)
            })?;
        }
        let solved: BTreeSet<_> = solve_equations(&rep, &eqs, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let enumerated: BTreeSet<_> = grass.points.into_iter().collect();
        ensure(solved == enumerated, || {
            format!(
                "q={q}: {} solutions vs {} points",
                solved.len(),
                enumerated.len()
            )
        })?;
        ensure(
            enumerated.len() == variety_points(&spec).unwrap().len(),
            || format!("q={q}: point count mismatch"),
        )?;
        total += eqs.polys.len();
    }
    Ok(format!("{total} minors over F3 and F5"))
}

fn hilbert() -> Outcome {
    // a basis of S^m/(X0X2 - X1^2) is the monomials with X1-exponent at most 1
    let rewrite_count = |m: u32| {
        (0..=m)
            .flat_map(|a| (0..=m - a).map(move |b| (a, b)))
            .filter(|&(_, b)| b <= 1)
            .count()
    };
    for field in [FieldSpec::Rationals, fp(5), fp(3)] {
        let spec = ProblemSpec::parse(2, field, &["X0*X2 - X1^2"], None, None).unwrap();
        let h = hilbert_function(&spec, 4);
        let ring = GradedRing::new(&spec);
        for m in 0..=4u32 {
            let want = 2 * m as usize + 1;
            ensure(
                h[m as usize] == want && rewrite_count(m) == want && ring.dim(m) == want,
                || format!("{field}: m={m} gives {}", h[m as usize]),
            )?;
        }
    }
    Ok("1,3,5,7,9".into())
}

fn random_matrix<R: Rng>(rng: &mut R, field: FieldSpec) -> Matrix {
    let rows = rng.gen_range(0..=6usize);
    let cols = rng.gen_range(0..=6usize);
    let low_rank = rng.gen_bool(0.3);
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|_| {
                    if low_rank && r % 2 == 1 {
                        return field.zero();
                    }
                    let num = rng.gen_range(-4..=4i64);
                    match field {
                        FieldSpec::Rationals => Scalar::Rat(BigRational::new(
                            BigInt::from(num),
                            BigInt::from(rng.gen_range(1..=3i64)),
                        )),
                        _ => field.from_i64(num),
                    }
                })
                .collect()
        })
        .collect();
    let mut m = Matrix::from_row_vecs(field, cols, data).unwrap();
    if low_rank && rows >= 2 {
        // duplicate a row so dependencies are common
        for c in 0..cols {
            let v = m.get(0, c).clone();
            m.set(rows - 1, c, v);
        }
    }
    m
}

fn linear_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for field in [fp(5), FieldSpec::Rationals] {
        for i in 0..1000 {
            let m = random_matrix(&mut rng, field);
            let rr = m.rref().map_err(|e| e.to_string())?;
            let kernel = m.kernel_basis().map_err(|e| e.to_string())?;
            ensure(rr.rank + kernel.len() == m.cols(), || {
                format!("{field} #{i}: rank-nullity on\n{m}")
            })?;
            let again = rr.echelon.rref().map_err(|e| e.to_string())?;
            ensure(again.echelon == rr.echelon && again.rank == rr.rank, || {
                format!("{field} #{i}: rref not idempotent on\n{m}")
            })?;
            ensure(m.transpose().rank().unwrap() == rr.rank, || {
                format!("{field} #{i}: row rank differs from column rank")
            })?;
            for v in &kernel {
                ensure(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero), || {
                    format!("{field} #{i}: kernel vector not annihilated")
                })?;
            }
            if !kernel.is_empty() {
                let k = Matrix::from_row_vecs(field, m.cols(), kernel.clone()).unwrap();
                ensure(k.rank().unwrap() == kernel.len(), || {
                    format!("{field} #{i}: kernel basis is dependent")
                })?;
            }
        }
    }
    Ok("2000 matrices".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "projective-space baseline",
            projective_baseline,
            Some(Duration::from_secs(5)),
        ),
        (
            "curved examples: points = thin submodules",
            curved_examples,
            Some(Duration::from_secs(30)),
        ),
        (
            "socle reduction to two vertices",
            socle_reduction,
            Some(Duration::from_secs(60)),
        ),
        ("relation lifts at every start", relation_lifts, None),
        (
            "thin indecomposability oracle",
            thin_indecomposability,
            None,
        ),
        ("thin moduli and uniserial chart", moduli_points, None),
        ("grassmannian equations", equations, None),
        ("conic Hilbert function", hilbert, None),
        ("linear algebra properties", linear_algebra, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[{}] PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{}] FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
