#![allow(dead_code)]

use std::collections::BTreeSet;

use beilinson_core::graded::ProblemSpec;
use beilinson_core::{FieldSpec, HomPoly, Scalar};
use rand::Rng;

pub fn fp(q: u32) -> FieldSpec {
    FieldSpec::prime(q).unwrap()
}

pub fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Mod { value, .. } => *value as u64,
        Scalar::Rat(_) => panic!("residue of a rational"),
    }
}

/// `|P^n(F_q)|`.
pub fn projective_count(q: u64, n: u32) -> u64 {
    (q.pow(n + 1) - 1) / (q - 1)
}

fn eval_mod(f: &HomPoly, a: &[u64], q: u64) -> u64 {
    f.terms().fold(0, |acc, (m, c)| {
        let t = m
            .exponents()
            .iter()
            .zip(a)
            .fold(residue(c), |t, (&e, &x)| t * x.pow(e) % q);
        (acc + t) % q
    })
}

/// Points of `X(F_q)` as leading-1 residue vectors, by scanning `F_q^{n+1}`.
pub fn brute_points(spec: &ProblemSpec) -> BTreeSet<Vec<u64>> {
    let q = spec.field.order().expect("finite field") as u64;
    let len = spec.n + 1;
    let total = q.pow(len as u32);
    let mut out = BTreeSet::new();
    for code in 1..total {
        let mut a = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            a.push(c % q);
            c /= q;
        }
        if a.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        if spec.polys.iter().all(|f| eval_mod(f, &a, q) == 0) {
            out.insert(a);
        }
    }
    out
}

pub fn coords(s: &[Scalar]) -> Vec<u64> {
    s.iter().map(residue).collect()
}

/// Random polynomial text in `X0..Xn` of degree 1 or 2 with small
/// integer coefficients; never zero modulo `q`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, q: i64) -> String {
    loop {
        let deg = rng.gen_range(1..=2u32);
        let mut terms = Vec::new();
        for i in 0..=n {
            if deg == 1 {
                terms.push((rng.gen_range(-2..=2i64), format!("X{i}")));
            } else {
                for j in i..=n {
                    terms.push((rng.gen_range(-2..=2i64), format!("X{i}*X{j}")));
                }
            }
        }
        terms.retain(|(c, _)| c.rem_euclid(q) != 0 && rng.gen_bool(0.6));
        if terms.is_empty() {
            continue;
        }
        let mut text = String::new();
        for (i, (c, m)) in terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if i > 0 {
                text.push_str(&format!(" {sign} "));
            } else if *c < 0 {
                text.push('-');
            }
            text.push_str(&format!("{}*{m}", c.abs()));
        }
        return text;
    }
}
