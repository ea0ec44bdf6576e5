//! Recursive-descent reader for integer-coefficient polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR ('^' INT)? | '(' expr ')'
//! VAR    := letter INT
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Monomial, PolyError, VarScheme};
use crate::linalg::{FieldSpec, Scalar};

type Terms = BTreeMap<Monomial, Scalar>;

pub(crate) fn parse_terms(
    text: &str,
    vars: &VarScheme,
    field: FieldSpec,
) -> Result<Terms, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    let terms = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarScheme,
    field: FieldSpec,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.vars.nvars()
    }

    fn syntax(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Terms, PolyError> {
        let negate_head = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate_head {
            acc = scale(&acc, &-self.field.one());
        }
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            let t = if op == b'-' {
                scale(&t, &-self.field.one())
            } else {
                t
            };
            add_into(&mut acc, &t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = product(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let s = self.field.from_bigint(&v);
                Ok(constant(self.nvars(), s))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let prefix = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.syntax("variable needs an index, e.g. X0"));
                }
                let idx_pos = self.pos;
                let index = self.integer()?;
                let index: usize = index.try_into().map_err(|_| PolyError::Syntax {
                    pos: idx_pos + 1,
                    msg: "variable index too large".into(),
                })?;
                let j = match self.vars.lookup(prefix, index) {
                    None => {
                        return Err(PolyError::Syntax {
                            pos: start + 1,
                            msg: format!("unknown variable {prefix}{index}"),
                        })
                    }
                    Some(Err(max)) => {
                        return Err(PolyError::VariableOutOfRange {
                            name: format!("{prefix}{index}"),
                            pos: start + 1,
                            max,
                        })
                    }
                    Some(Ok(j)) => j,
                };
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e_pos = self.pos;
                    if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                        return Err(self.syntax("expected exponent"));
                    }
                    exp = self.integer()?.try_into().map_err(|_| PolyError::Syntax {
                        pos: e_pos + 1,
                        msg: "exponent too large".into(),
                    })?;
                }
                let mut e = vec![0; self.nvars()];
                e[j] = exp;
                let mut t = Terms::new();
                t.insert(Monomial::new(e), self.field.one());
                Ok(t)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.syntax("expected integer, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| PolyError::Syntax {
            pos: start + 1,
            msg: "expected integer".into(),
        })
    }
}

fn constant(nvars: usize, s: Scalar) -> Terms {
    let mut t = Terms::new();
    if !s.is_zero() {
        t.insert(Monomial::one(nvars), s);
    }
    t
}

fn scale(t: &Terms, s: &Scalar) -> Terms {
    t.iter().map(|(m, c)| (m.clone(), c * s)).collect()
}

pub(crate) fn add_into(acc: &mut Terms, t: &Terms) {
    for (m, c) in t {
        let e = acc.entry(m.clone()).or_insert_with(|| c.field().zero());
        *e += c;
        if e.is_zero() {
            acc.remove(m);
        }
    }
}

pub(crate) fn product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            let c = ca * cb;
            let e = out.entry(m.clone()).or_insert_with(|| c.field().zero());
            *e += &c;
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}
