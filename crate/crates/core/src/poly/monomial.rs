use std::cmp::Ordering;
use std::fmt;

/// Exponent vector over the variables `X0..Xn`.
///
/// The `Ord` impl is the basis order used throughout the crate: by degree,
/// then lexicographically with `X0 > X1 > ... > Xn` listed first. So
/// `X0^2 < X0*X1 < X1^2` in this order, matching their positions in
/// [`Monomial::basis`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, j: usize) -> Monomial {
        let mut e = self.0.clone();
        e[j] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Variable indices with multiplicity, nondecreasing: `X0*X2^2 -> [0, 2, 2]`.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &e)| std::iter::repeat_n(j, e as usize))
            .collect()
    }

    /// All monomials of degree `m` in `nvars` variables, in basis order.
    pub fn basis(nvars: usize, m: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        if nvars == 0 {
            if m == 0 {
                out.push(Monomial(cur));
            }
            return out;
        }
        fill(&mut cur, 0, m, &mut out);
        out
    }

    pub fn display_with(&self, names: &VarScheme) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                let v = names.name(j);
                if e == 1 {
                    v
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn fill(cur: &mut Vec<u32>, idx: usize, left: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == cur.len() {
        cur[idx] = left;
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[idx] = e;
        fill(cur, idx + 1, left - e, out);
    }
    cur[idx] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VarScheme::projective(self.nvars())))
    }
}

/// How variables are named: consecutive blocks of `prefix` + index.
///
/// The default scheme is a single block `X0..Xn`; bihomogeneous equations use
/// `u0.., w0..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarScheme {
    blocks: Vec<(String, usize)>,
}

impl VarScheme {
    pub fn projective(nvars: usize) -> Self {
        VarScheme {
            blocks: vec![("X".into(), nvars)],
        }
    }

    pub fn blocks(blocks: Vec<(String, usize)>) -> Self {
        VarScheme { blocks }
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|(_, c)| c).sum()
    }

    pub fn name(&self, mut j: usize) -> String {
        for (prefix, count) in &self.blocks {
            if j < *count {
                return format!("{prefix}{j}");
            }
            j -= count;
        }
        format!("?{j}")
    }

    /// Position of `prefix` + `index`, or the largest valid index of that
    /// prefix when out of range. `None` for unknown prefixes.
    pub(crate) fn lookup(&self, prefix: &str, index: usize) -> Option<Result<usize, usize>> {
        let mut offset = 0;
        for (p, count) in &self.blocks {
            if p == prefix {
                return Some(if index < *count {
                    Ok(offset + index)
                } else {
                    Err(count.saturating_sub(1))
                });
            }
            offset += count;
        }
        None
    }
}
