//! Exact literals `(a + b sqrt d) / c`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HyperError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticLiteral {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: u64,
}

impl QuadraticLiteral {
    pub fn new(a: i64, b: i64, c: i64, d: u64) -> Result<Self> {
        let q = Self { a, b, c, d };
        q.check()?;
        Ok(q)
    }

    pub fn check(&self) -> Result<()> {
        if self.c <= 0 {
            return Err(HyperError::Parse(format!(
                "quadratic literal needs a positive denominator, got {}",
                self.c
            )));
        }
        if !is_square_free(self.d) {
            return Err(HyperError::Parse(format!(
                "quadratic literal radicand {} is not square-free",
                self.d
            )));
        }
        Ok(())
    }

    pub fn value(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    fn is_rational(&self) -> bool {
        self.b == 0 || self.d == 0
    }
}

impl fmt::Display for QuadraticLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let numerator = if self.is_rational() {
            a.to_string()
        } else {
            let root = if d == 1 { String::new() } else { format!("√{d}") };
            let coeff = |x: i64| match x.abs() {
                1 if d != 1 => String::new(),
                v => v.to_string(),
            };
            let surd = format!("{}{root}", coeff(b));
            match (a, b < 0) {
                (0, false) => surd,
                (0, true) => format!("-{surd}"),
                (_, false) => format!("{a}+{surd}"),
                (_, true) => format!("{a}-{surd}"),
            }
        };
        if c == 1 {
            f.write_str(&numerator)
        } else if self.is_rational() || a == 0 {
            write!(f, "{numerator}/{c}")
        } else {
            write!(f, "({numerator})/{c}")
        }
    }
}

pub fn is_square_free(d: u64) -> bool {
    if d < 4 {
        return true;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Bounded search for a literal within `tol` of `x` with `|a|, |b|, c <= bound`
/// and square-free `d <= bound`. Rationals are preferred, then smaller
/// denominators, radicands and `|b|`.
pub fn recognize(x: f64, bound: i64, tol: f64) -> Option<QuadraticLiteral> {
    if !x.is_finite() {
        return None;
    }
    for c in 1..=bound {
        let a = (x * c as f64).round();
        if a.abs() <= bound as f64 && (a / c as f64 - x).abs() <= tol {
            let a = a as i64;
            let g = gcd(a.unsigned_abs(), c as u64) as i64;
            return Some(QuadraticLiteral {
                a: a / g,
                b: 0,
                c: c / g,
                d: 0,
            });
        }
    }
    for c in 1..=bound {
        for d in 2..=bound as u64 {
            if !is_square_free(d) {
                continue;
            }
            let root = (d as f64).sqrt();
            for mag in 1..=bound {
                for b in [mag, -mag] {
                    let a = (x * c as f64 - b as f64 * root).round();
                    if a.abs() > bound as f64 {
                        continue;
                    }
                    let q = QuadraticLiteral {
                        a: a as i64,
                        b,
                        c,
                        d,
                    };
                    if (q.value() - x).abs() <= tol {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
