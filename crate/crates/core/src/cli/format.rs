//! JSON file formats read and written by the command-line tool.

use std::any::Any;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicNormalForm;
use crate::numcore::{ExactScalar, Scalar};
use crate::poles::{Diagnostics, PoleDecomposition};
use crate::poly::{BinaryForm, TernaryPoly};
use crate::spinor::Pole;

/// A float written with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let text = if self.0 == 0.0 { "0".to_string() } else { format!("{:.16e}", self.0) };
        RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// A coefficient as written in a file: an integer, a float, or an exact "p/q" string.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Default for Coef {
    fn default() -> Self {
        Coef::Int(0)
    }
}

impl Serialize for Coef {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self {
            Coef::Int(n) => s.serialize_i64(*n),
            Coef::Float(x) => Num(*x).serialize(s),
            Coef::Text(t) => s.serialize_str(t),
        }
    }
}

impl Coef {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Coef::Float(_))
    }

    pub fn rational(&self, location: &str) -> Result<BigRational> {
        match self {
            Coef::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Coef::Float(x) => BigRational::from_float(*x).ok_or_else(|| parse_error(location, "non-finite number")),
            Coef::Text(t) => parse_rational(t.trim()).ok_or_else(|| parse_error(location, format!("cannot read {t:?} as a rational p/q"))),
        }
    }

    pub fn float(&self, location: &str) -> Result<f64> {
        match self {
            Coef::Float(x) => Ok(*x),
            _ => Ok(self.rational(location)?.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Coef::Text(q.to_string())
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    if let Ok(q) = BigRational::from_str(t) {
        return Some(q);
    }
    // decimal strings such as "0.25" are read exactly
    let (int, frac) = t.split_once('.')?;
    let digits = format!("{int}{frac}");
    let num = num_bigint::BigInt::from_str(&digits).ok()?;
    Some(BigRational::new(num, num_bigint::BigInt::from(10).pow(frac.len() as u32)))
}

pub fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

/// Real and imaginary parts of one coefficient.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexCoef {
    #[serde(default)]
    pub re: Coef,
    #[serde(default)]
    pub im: Coef,
}

impl ComplexCoef {
    fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    fn exact(&self, location: &str) -> Result<ExactScalar> {
        Ok(ExactScalar::complex(self.re.rational(&format!("{location}.re"))?, self.im.rational(&format!("{location}.im"))?))
    }

    fn float(&self, location: &str) -> Result<Complex64> {
        Ok(Complex64::new(self.re.float(&format!("{location}.re"))?, self.im.float(&format!("{location}.im"))?))
    }

    /// Exact rational parts become "p/q" strings; anything else is written as floats.
    pub fn from_scalar<S: Scalar>(c: &S) -> Self {
        if let Some(g) = (c as &dyn Any).downcast_ref::<ExactScalar>().and_then(|e| e.as_gaussian()) {
            return ComplexCoef { re: Coef::from_rational(&g.re), im: Coef::from_rational(&g.im) };
        }
        let z = c.to_complex();
        ComplexCoef { re: Coef::Float(z.re), im: Coef::Float(z.im) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialTerm {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    #[serde(default)]
    pub re: Coef,
    #[serde(default)]
    pub im: Coef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiTerm {
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(default)]
    pub re: Coef,
    #[serde(default)]
    pub im: Coef,
}

/// A ternary form, either by monomials in (x, y, z) or by components φ^M on the C^L_M basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum HarmonicFile {
    Monomial {
        degree: u32,
        terms: Vec<MonomialTerm>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        real: bool,
    },
    Phi {
        #[serde(rename = "L")]
        l: u32,
        coeffs: Vec<PhiTerm>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        real: bool,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialBody {
    #[serde(rename = "type")]
    _kind: String,
    degree: u32,
    terms: Vec<MonomialTerm>,
    #[serde(default)]
    real: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiBody {
    #[serde(rename = "type")]
    _kind: String,
    #[serde(rename = "L")]
    l: u32,
    coeffs: Vec<PhiTerm>,
    #[serde(default)]
    real: bool,
}

fn body<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> std::result::Result<T, String> {
    serde_path_to_error::deserialize(v).map_err(|e| format!("{}: {}", e.path(), e.inner()))
}

// dispatched by hand so errors inside the body keep their JSON path
impl<'de> Deserialize<'de> for HarmonicFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let parsed = match v.get("type").and_then(|t| t.as_str()) {
            Some("monomial") => body::<MonomialBody>(v).map(|b| HarmonicFile::Monomial { degree: b.degree, terms: b.terms, real: b.real }),
            Some("phi") => body::<PhiBody>(v).map(|b| HarmonicFile::Phi { l: b.l, coeffs: b.coeffs, real: b.real }),
            Some(other) => Err(format!("type: unknown variant {other:?}, expected \"monomial\" or \"phi\"")),
            None => Err("type: missing \"type\" tag".to_string()),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// A parsed ternary form, exact when every coefficient in the file was an integer or "p/q".
#[derive(Clone, Debug, PartialEq)]
pub enum Ternary {
    Exact(TernaryPoly<ExactScalar>),
    Float(TernaryPoly<Complex64>),
}

impl Ternary {
    pub fn degree(&self) -> u32 {
        match self {
            Ternary::Exact(p) => p.degree(),
            Ternary::Float(p) => p.degree(),
        }
    }

    pub fn to_complex(&self) -> TernaryPoly<Complex64> {
        match self {
            Ternary::Exact(p) => p.to_complex(),
            Ternary::Float(p) => p.clone(),
        }
    }
}

impl HarmonicFile {
    pub fn degree(&self) -> u32 {
        match self {
            HarmonicFile::Monomial { degree, .. } => *degree,
            HarmonicFile::Phi { l, .. } => *l,
        }
    }

    /// Converts to a polynomial; with the "real" flag set, non-real data is a validation error.
    pub fn to_ternary(&self, tol: f64) -> Result<Ternary> {
        match self {
            HarmonicFile::Monomial { degree, terms, real } => {
                for (k, t) in terms.iter().enumerate() {
                    if t.p + t.q + t.r != *degree {
                        return Err(parse_error(
                            format!("terms[{k}]"),
                            format!("exponents ({}, {}, {}) sum to {}, expected degree {degree}", t.p, t.q, t.r, t.p + t.q + t.r),
                        ));
                    }
                }
                let cc = |t: &MonomialTerm| ComplexCoef { re: t.re.clone(), im: t.im.clone() };
                let poly = if terms.iter().all(|t| cc(t).is_exact()) {
                    let items = terms.iter().enumerate().map(|(k, t)| Ok(([t.p, t.q, t.r], cc(t).exact(&format!("terms[{k}]"))?)));
                    Ternary::Exact(TernaryPoly::from_terms(*degree, items.collect::<Result<Vec<_>>>()?)?)
                } else {
                    let items = terms.iter().enumerate().map(|(k, t)| Ok(([t.p, t.q, t.r], cc(t).float(&format!("terms[{k}]"))?)));
                    Ternary::Float(TernaryPoly::from_terms(*degree, items.collect::<Result<Vec<_>>>()?)?)
                };
                if *real {
                    let p = poly.to_complex();
                    let imag = p.max_imag();
                    if imag > tol * p.norm().max(f64::MIN_POSITIVE) {
                        return Err(Error::NotReal(format!("file is flagged real but has imaginary parts up to {imag:.3e}")));
                    }
                }
                Ok(poly)
            }
            HarmonicFile::Phi { l, coeffs, real } => {
                let li = *l as i64;
                let mut phi = vec![Complex64::new(0.0, 0.0); 2 * *l as usize + 1];
                let mut seen = vec![false; phi.len()];
                for (k, c) in coeffs.iter().enumerate() {
                    let location = format!("coeffs[{k}]");
                    if c.m.abs() > li {
                        return Err(parse_error(location, format!("M = {} outside -{l}..={l}", c.m)));
                    }
                    let slot = (c.m + li) as usize;
                    if seen[slot] {
                        return Err(parse_error(location, format!("M = {} given twice", c.m)));
                    }
                    seen[slot] = true;
                    phi[slot] = ComplexCoef { re: c.re.clone(), im: c.im.clone() }.float(&location)?;
                }
                let form = HarmonicNormalForm::new(*l, phi)?;
                if *real && !form.is_real(tol.max(1e-12)) {
                    return Err(Error::NotReal(format!("components violate the reality condition by {:.3e}", form.reality_defect())));
                }
                Ok(Ternary::Float(form.to_poly()?))
            }
        }
    }

    pub fn from_poly<S: Scalar>(p: &TernaryPoly<S>) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let cc = ComplexCoef::from_scalar(c);
                MonomialTerm { p: e[0], q: e[1], r: e[2], re: cc.re, im: cc.im }
            })
            .collect();
        HarmonicFile::Monomial { degree: p.degree(), terms, real: false }
    }

    pub fn from_normal_form(form: &HarmonicNormalForm) -> Self {
        let l = form.l as i64;
        let coeffs = (-l..=l)
            .map(|m| {
                let c = form.component(m);
                PhiTerm { m, re: Coef::Float(c.re), im: Coef::Float(c.im) }
            })
            .collect();
        HarmonicFile::Phi { l: form.l, coeffs, real: false }
    }
}

/// A binary form b_0 ξ^d + b_1 ξ^{d−1}η + … + b_d η^d.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinaryFile {
    #[serde(rename = "type")]
    pub kind: BinaryTag,
    pub degree: usize,
    pub coeffs: Vec<BinaryCoef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryTag {
    Binary,
}

/// A plain number or "p/q" for real coefficients, {re, im} otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BinaryCoef {
    Real(Coef),
    Complex(ComplexCoef),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Binary {
    Exact(BinaryForm<ExactScalar>),
    Float(BinaryForm<Complex64>),
}

impl BinaryFile {
    pub fn to_binary(&self) -> Result<Binary> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(parse_error("coeffs", format!("degree {} needs {} coefficients, got {}", self.degree, self.degree + 1, self.coeffs.len())));
        }
        let complex: Vec<ComplexCoef> = self
            .coeffs
            .iter()
            .map(|c| match c {
                BinaryCoef::Real(r) => ComplexCoef { re: r.clone(), im: Coef::Int(0) },
                BinaryCoef::Complex(z) => z.clone(),
            })
            .collect();
        let location = |k: usize| format!("coeffs[{k}]");
        if complex.iter().all(|c| c.is_exact()) {
            let v = complex.iter().enumerate().map(|(k, c)| c.exact(&location(k))).collect::<Result<Vec<_>>>()?;
            Ok(Binary::Exact(BinaryForm::new(v)?))
        } else {
            let v = complex.iter().enumerate().map(|(k, c)| c.float(&location(k))).collect::<Result<Vec<_>>>()?;
            Ok(Binary::Float(BinaryForm::new(v)?))
        }
    }

    pub fn from_form<S: Scalar>(b: &BinaryForm<S>) -> Self {
        let coeffs = b
            .coeffs()
            .iter()
            .map(|c| {
                let cc = ComplexCoef::from_scalar(c);
                let real_part_only = match &cc.im {
                    Coef::Text(t) => t == "0",
                    Coef::Float(x) => *x == 0.0,
                    Coef::Int(n) => *n == 0,
                };
                if real_part_only {
                    BinaryCoef::Real(cc.re)
                } else {
                    BinaryCoef::Complex(cc)
                }
            })
            .collect();
        BinaryFile { kind: BinaryTag::Binary, degree: b.degree(), coeffs, note: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleEntry {
    pub x: Num,
    pub y: Num,
    pub z: Num,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsEntry {
    pub residual: Num,
    pub c_imaginary: Num,
    pub root_backward_error: Num,
    pub pairing_defect: Num,
    pub cone_samples: usize,
}

/// Φ = C·∏(r·p_i) + r²G.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFile {
    #[serde(rename = "type")]
    pub kind: DecompositionTag,
    pub degree: u32,
    #[serde(rename = "C")]
    pub c: Num,
    pub poles: Vec<PoleEntry>,
    #[serde(rename = "G")]
    pub g: HarmonicFile,
    pub diagnostics: DiagnosticsEntry,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionTag {
    Decomposition,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &PoleDecomposition) -> Self {
        let poles = d
            .poles
            .iter()
            .map(|p| PoleEntry { x: Num(p.direction[0]), y: Num(p.direction[1]), z: Num(p.direction[2]), multiplicity: p.multiplicity })
            .collect();
        // G is real; drop the round-off imaginary parts
        let g = d.g.map(|c| Complex64::new(c.re, 0.0)).prune(0.0);
        let diag = &d.diagnostics;
        DecompositionFile {
            kind: DecompositionTag::Decomposition,
            degree: d.degree,
            c: Num(d.c),
            poles,
            g: HarmonicFile::from_poly(&g),
            diagnostics: DiagnosticsEntry {
                residual: Num(diag.residual),
                c_imaginary: Num(diag.c_imaginary),
                root_backward_error: Num(diag.root_backward_error),
                pairing_defect: Num(diag.pairing_defect),
                cone_samples: diag.cone_samples,
            },
        }
    }

    pub fn to_decomposition(&self) -> Result<PoleDecomposition> {
        let g = match self.g.to_ternary(f64::INFINITY)? {
            Ternary::Exact(p) => p.to_complex(),
            Ternary::Float(p) => p,
        };
        let expected_g = self.degree.saturating_sub(2);
        if self.degree >= 2 && g.degree() != expected_g && !g.is_zero() {
            return Err(parse_error("G", format!("degree {} does not match L − 2 = {expected_g}", g.degree())));
        }
        let g = if g.is_zero() { TernaryPoly::zero(expected_g) } else { g };
        let poles = self.poles.iter().map(|p| Pole { direction: [p.x.0, p.y.0, p.z.0], multiplicity: p.multiplicity }).collect();
        let d = &self.diagnostics;
        Ok(PoleDecomposition {
            degree: self.degree,
            c: self.c.0,
            poles,
            g,
            diagnostics: Diagnostics {
                residual: d.residual.0,
                c_imaginary: d.c_imaginary.0,
                root_backward_error: d.root_backward_error.0,
                pairing_defect: d.pairing_defect.0,
                cone_samples: d.cone_samples,
            },
        })
    }
}

/// Parses JSON; syntax errors carry line and column, shape errors the JSON path.
pub fn from_json<T: serde::de::DeserializeOwned>(text: &str, source: &str) -> Result<T> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_error(format!("{source}:{}:{}", e.line(), e.column()), strip_position(&e.to_string())))?;
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let location = if path == "." { source.to_string() } else { format!("{source}: {path}") };
        parse_error(location, e.inner().to_string())
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(k) => message[..k].to_string(),
        None => message.to_string(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Consistency(format!("serialization failed: {e}")))
}

/// Reads an exact scalar back from a "p/q" or {re, im} entry.
pub fn exact_from_json(v: &serde_json::Value, location: &str) -> Result<ExactScalar> {
    let c: BinaryCoef = serde_json::from_value(v.clone()).map_err(|e| parse_error(location, e.to_string()))?;
    match c {
        BinaryCoef::Real(r) => Ok(ExactScalar::rational(r.rational(location)?)),
        BinaryCoef::Complex(z) => z.exact(location),
    }
}

/// A JSON string for an exact scalar: "p/q" when real, {re, im} when Gaussian.
pub fn exact_to_json(c: &ExactScalar) -> serde_json::Value {
    match c.as_gaussian() {
        Some(g) if g.im.is_zero() => serde_json::Value::String(g.re.to_string()),
        Some(g) => serde_json::json!({ "re": g.re.to_string(), "im": g.im.to_string() }),
        None => serde_json::Value::String(c.to_string()),
    }
}
