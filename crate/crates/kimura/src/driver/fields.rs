//! Named data functions and polynomial coefficient files.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{KimuraError, Result};
use crate::field::{Constant, CubicKink, Exponential, Field, GenericField, Polynomial};
use crate::scalar::Scalar;

/// Coordinates a polynomial file is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolynomialModel {
    /// Exponent vectors of length `n + 1`.
    Affine,
    /// Exponent vectors of length `n`; `x_{n+1}` does not appear.
    Projective,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialTerm {
    pub e: Vec<u32>,
    pub c: f64,
}

/// `{"n": 2, "model": "affine", "terms": [{"e": [1, 0, 2], "c": 0.5}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub n: usize,
    pub model: PolynomialModel,
    pub terms: Vec<PolynomialTerm>,
}

impl PolynomialFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The polynomial in the `n + 1` affine variables.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let width = match self.model {
            PolynomialModel::Affine => self.n + 1,
            PolynomialModel::Projective => self.n,
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.e.len() != width {
                return Err(KimuraError::Format(format!(
                    "exponent vector {:?} has length {}, expected {width} for the {:?} model",
                    t.e,
                    t.e.len(),
                    self.model
                )));
            }
            let mut e = t.e.clone();
            e.resize(self.n + 1, 0);
            terms.push((e, t.c));
        }
        Polynomial::new(self.n + 1, terms)
    }
}

/// A data function chosen by name, as accepted on the command line and in
/// solution files. Coordinate indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Constant { value: f64 },
    /// `x_i^p`.
    Coordinate { index: usize, power: u32 },
    /// `exp(Σ a_i x_i)`.
    Exponential { a: Vec<f64> },
    /// `scale (x_i - center)_+^3`.
    Kink { coordinate: usize, center: f64, scale: f64 },
    /// `x_1 x_2 ... x_{n+1}`.
    Bubble,
    Polynomial(PolynomialFile),
}

struct Bubble;

impl GenericField for Bubble {
    fn eval<T: Scalar>(&self, x: &[T]) -> T {
        x.iter().fold(T::cst(1.0), |acc, &v| acc * v)
    }
}

impl FieldSpec {
    /// Parses `constant:V`, `coordinate:I[:P]`, `exp:A1,A2,..`,
    /// `kink:I:C[:S]`, `bubble` or `file:PATH`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.splitn(2, ':');
        let name = parts.next().unwrap_or("").trim();
        let rest = parts.next().unwrap_or("");
        let bad = |what: &str| KimuraError::Format(format!("cannot parse field {text:?}: {what}"));
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("{s:?} is not a number")));
        let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(&format!("{s:?} is not an index")));
        let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
        match name {
            "constant" => match args.as_slice() {
                [v] => Ok(FieldSpec::Constant { value: num(v)? }),
                _ => Err(bad("expected constant:VALUE")),
            },
            "coordinate" => match args.as_slice() {
                [i] => Ok(FieldSpec::Coordinate { index: int(i)?, power: 1 }),
                [i, p] => Ok(FieldSpec::Coordinate {
                    index: int(i)?,
                    power: int(p)? as u32,
                }),
                _ => Err(bad("expected coordinate:INDEX[:POWER]")),
            },
            "exp" | "exponential" => match args.as_slice() {
                [a] => Ok(FieldSpec::Exponential {
                    a: a.split(',').map(num).collect::<Result<_>>()?,
                }),
                _ => Err(bad("expected exp:A1,A2,...")),
            },
            "kink" => match args.as_slice() {
                [i, c] => Ok(FieldSpec::Kink {
                    coordinate: int(i)?,
                    center: num(c)?,
                    scale: 1.0,
                }),
                [i, c, s] => Ok(FieldSpec::Kink {
                    coordinate: int(i)?,
                    center: num(c)?,
                    scale: num(s)?,
                }),
                _ => Err(bad("expected kink:INDEX:CENTER[:SCALE]")),
            },
            "bubble" if args.is_empty() => Ok(FieldSpec::Bubble),
            "file" if !rest.is_empty() => Ok(FieldSpec::Polynomial(PolynomialFile::load(Path::new(rest))?)),
            _ => Err(bad("unknown field name")),
        }
    }

    /// The field on the n-simplex.
    pub fn build(&self, n: usize) -> Result<Arc<dyn Field>> {
        let check_index = |i: usize| {
            if i == 0 || i > n + 1 {
                Err(KimuraError::domain(format!("coordinate index {i} is outside 1..={}", n + 1)))
            } else {
                Ok(i - 1)
            }
        };
        Ok(match self {
            FieldSpec::Constant { value } => Arc::new(Constant(*value)),
            FieldSpec::Coordinate { index, power } => {
                let i = check_index(*index)?;
                let mut e = vec![0; n + 1];
                e[i] = *power;
                Arc::new(Polynomial::new(n + 1, vec![(e, 1.0)])?)
            }
            FieldSpec::Exponential { a } => {
                if a.len() != n + 1 {
                    return Err(KimuraError::DimensionMismatch {
                        expected: n + 1,
                        got: a.len(),
                    });
                }
                Arc::new(Exponential { a: a.clone() })
            }
            FieldSpec::Kink {
                coordinate,
                center,
                scale,
            } => Arc::new(CubicKink {
                coordinate: check_index(*coordinate)?,
                center: *center,
                scale: *scale,
            }),
            FieldSpec::Bubble => Arc::new(Bubble),
            FieldSpec::Polynomial(file) => {
                if file.n != n {
                    return Err(KimuraError::DimensionMismatch {
                        expected: n,
                        got: file.n,
                    });
                }
                Arc::new(file.to_polynomial()?)
            }
        })
    }
}
