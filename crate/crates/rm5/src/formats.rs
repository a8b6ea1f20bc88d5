//! JSON file formats: polynomials, curves, quadratic forms and IC providers.

use std::path::Path;

use rm5_core::arith::{Rational, Sqrt5};
use rm5_core::experiments::ICProvider;
use rm5_core::invariants::{FieldTag, IgusaClebsch, SexticModel};
use rm5_core::matrix::Matrix;
use rm5_core::poly::MultiPoly;
use rm5_core::qf_reduce::PolyQF;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::literal::{format_rational, format_sqrt5, parse_rational, parse_sqrt5, LiteralError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Literal(#[from] LiteralError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub e: Vec<u32>,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub vars: Vec<String>,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub field: String,
    pub coeffs: Vec<String>,
}

/// A Gram entry: a term list over the file's `vars`, or an expression string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramEntry {
    Terms(Vec<Term>),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QfFile {
    pub vars: Vec<String>,
    pub gram: Vec<GramEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcProviderFile {
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(rename = "I2")]
    pub i2: PolynomialFile,
    #[serde(rename = "I4")]
    pub i4: PolynomialFile,
    #[serde(rename = "I6")]
    pub i6: PolynomialFile,
    #[serde(rename = "I10")]
    pub i10: PolynomialFile,
}

/// Terms in descending graded lexicographic order.
fn terms_of(p: &MultiPoly, vars: &[String]) -> Result<Vec<Term>, FormatError> {
    let p = p.with_vars(vars).map_err(|e| invalid(e.to_string()))?;
    Ok(p.terms().rev().map(|(e, c)| Term { e: e.to_vec(), c: format_rational(c) }).collect())
}

fn poly_from_terms(vars: &[String], terms: &[Term]) -> Result<MultiPoly, FormatError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.e.len() != vars.len() {
            return Err(invalid(format!("exponent {:?} does not match {} variables", t.e, vars.len())));
        }
        if !seen.insert(t.e.clone()) {
            return Err(invalid(format!("repeated exponent {:?}", t.e)));
        }
        out.push((t.e.clone(), parse_rational(&t.c)?));
    }
    MultiPoly::from_terms(vars.to_vec(), out).map_err(|e| invalid(e.to_string()))
}

fn check_vars(vars: &[String]) -> Result<(), FormatError> {
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || vars[..i].contains(v) {
            return Err(invalid(format!("bad variable name `{v}`")));
        }
    }
    Ok(())
}

impl PolynomialFile {
    /// Uses the variables of `p` in their stored order.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let vars = p.vars().to_vec();
        PolynomialFile { terms: terms_of(p, &vars).expect("own variables"), vars }
    }

    pub fn with_vars(p: &MultiPoly, vars: &[String]) -> Result<Self, FormatError> {
        Ok(PolynomialFile { vars: vars.to_vec(), terms: terms_of(p, vars)? })
    }

    pub fn to_poly(&self) -> Result<MultiPoly, FormatError> {
        check_vars(&self.vars)?;
        poly_from_terms(&self.vars, &self.terms)
    }
}

/// A curve `y^2 = c0 + c1 x + ... + c6 x^6` over `Q` or `Q(sqrt 5)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    Rational(SexticModel),
    Sqrt5(SexticModel<Sqrt5>),
}

impl Curve {
    pub fn field(&self) -> FieldTag {
        match self {
            Curve::Rational(_) => FieldTag::Rational,
            Curve::Sqrt5(_) => FieldTag::RationalSqrt5,
        }
    }

    pub fn to_sqrt5(&self) -> SexticModel<Sqrt5> {
        match self {
            Curve::Rational(m) => m.map(|c| Sqrt5::from_rational(c.clone())),
            Curve::Sqrt5(m) => m.clone(),
        }
    }

    /// The same curve over `field`; fails when a coefficient is irrational
    /// and `field` is `Q`.
    pub fn over(&self, field: FieldTag) -> Result<Curve, FormatError> {
        match (self, field) {
            (Curve::Sqrt5(m), FieldTag::Rational) => {
                let cs: Option<Vec<Rational>> = m.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
                let cs = cs.ok_or_else(|| invalid("curve has coefficients outside Q"))?;
                Ok(Curve::Rational(SexticModel::from_slice(&cs).map_err(|e| invalid(e.to_string()))?))
            }
            (_, FieldTag::Rational) => Ok(self.clone()),
            _ => Ok(Curve::Sqrt5(self.to_sqrt5())),
        }
    }

    pub fn to_file(&self) -> CurveFile {
        match self {
            Curve::Rational(m) => {
                CurveFile { field: "q".to_string(), coeffs: m.coeffs().iter().map(format_rational).collect() }
            }
            Curve::Sqrt5(m) => CurveFile { field: "q5".to_string(), coeffs: m.coeffs().iter().map(format_sqrt5).collect() },
        }
    }

    pub fn from_file(f: &CurveFile) -> Result<Self, FormatError> {
        if f.coeffs.len() != 7 {
            return Err(invalid(format!("expected 7 coefficients, found {}", f.coeffs.len())));
        }
        let bad = |e: rm5_core::invariants::InvariantError| invalid(e.to_string());
        match f.field.as_str() {
            "q" => {
                let cs = f.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
                Ok(Curve::Rational(SexticModel::from_slice(&cs).map_err(bad)?))
            }
            "q5" => {
                let cs = f.coeffs.iter().map(|c| parse_sqrt5(c)).collect::<Result<Vec<_>, _>>()?;
                Ok(Curve::Sqrt5(SexticModel::from_slice(&cs).map_err(bad)?))
            }
            other => Err(invalid(format!("unknown field `{other}`, expected q or q5"))),
        }
    }
}

impl QfFile {
    pub fn from_form(q: &PolyQF) -> Self {
        let vars = q.vars().to_vec();
        let gram = q
            .gram()
            .entries()
            .iter()
            .map(|p| GramEntry::Terms(terms_of(p, &vars).expect("entries lie in the coefficient ring")))
            .collect();
        QfFile { vars, gram }
    }

    pub fn to_form(&self) -> Result<PolyQF, FormatError> {
        check_vars(&self.vars)?;
        let k = self.gram.len();
        let n = (1..=k).find(|n| n * n >= k).unwrap_or(0);
        if n == 0 || n * n != k {
            return Err(invalid(format!("gram has {k} entries, not a square number")));
        }
        let refs: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let entries = self
            .gram
            .iter()
            .map(|g| match g {
                GramEntry::Terms(t) => poly_from_terms(&self.vars, t),
                GramEntry::Expr(s) => MultiPoly::parse_with_vars(s, &refs).map_err(|e| invalid(format!("`{s}`: {e}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::new(n, n, entries);
        if !m.is_symmetric() {
            return Err(invalid("gram matrix is not symmetric"));
        }
        PolyQF::new(m, &refs).map_err(|e| invalid(e.to_string()))
    }

    /// The constant Gram matrix, for forms over `Q`.
    pub fn to_rational(&self) -> Result<Matrix<Rational>, FormatError> {
        let q = self.to_form()?;
        q.gram().try_map(|p| p.as_constant().ok_or_else(|| invalid("form has non-constant entries")))
    }
}

impl IcProviderFile {
    pub fn from_provider(p: &ICProvider) -> Self {
        let f = PolynomialFile::from_poly;
        IcProviderFile { d: p.d, i2: f(&p.ic.i2), i4: f(&p.ic.i4), i6: f(&p.ic.i6), i10: f(&p.ic.i10) }
    }

    pub fn to_provider(&self, provenance: &str) -> Result<ICProvider, FormatError> {
        let ic = IgusaClebsch::new(self.i2.to_poly()?, self.i4.to_poly()?, self.i6.to_poly()?, self.i10.to_poly()?);
        ICProvider::new(self.d, ic, provenance).map_err(|e| invalid(e.to_string()))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

pub fn from_text<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    from_text(&text)
}

pub fn save<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    std::fs::write(path, to_text(value)).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
