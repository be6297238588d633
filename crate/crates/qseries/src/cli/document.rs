//! JSON input format for series specifications.
//!
//! ```json
//! {
//!   "coefficients": { "period": 2, "values": [["1", "0"], ["-1", "0"]] },
//!   "exponent": { "type": "polynomial", "coefficients": ["0", "0", "1"] },
//!   "root_of_unity": { "p": 1, "N": 6 }
//! }
//! ```
//!
//! Polynomial coefficients are listed constant term first and must be exact
//! rationals (`"3"`, `"-1/2"`, `"0.25"`). Coefficient values and the
//! exponential base are decimals read at working precision; `"p/q"` is also
//! accepted there and converted with a single rounding.

use std::path::Path;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::numeric::{self, HpComplex, HpReal};
use crate::poly::RatPoly;
use crate::radial::RootOfUnity;
use crate::series::{
    Exponent, ExponentialExponent, PeriodicCoefficients, PolynomialExponent, SeriesSpec,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsDoc {
    pub period: usize,
    pub values: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExponentDoc {
    Polynomial { coefficients: Vec<String> },
    Exponential { base: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDoc {
    pub p: i64,
    #[serde(rename = "N")]
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub coefficients: CoefficientsDoc,
    pub exponent: ExponentDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_of_unity: Option<RootDoc>,
}

/// Decimal or `p/q`, rounded once to `prec` bits.
pub fn parse_real(s: &str, prec: u32) -> Result<HpReal> {
    let t = s.trim();
    if t.contains('/') {
        let r = numeric::parse_rational(t)
            .map_err(|_| Error::InvalidSpec(format!("bad number {s:?}")))?;
        return Ok(Float::with_val(prec, &r));
    }
    numeric::parse_decimal(t, prec).map_err(|_| Error::InvalidSpec(format!("bad number {s:?}")))
}

/// Shortest decimal that reads back to the same float.
fn exact_decimal(x: &HpReal) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, None)
}

impl SeriesDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("malformed series document: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_spec(&self, prec: u32) -> Result<(SeriesSpec, RootOfUnity)> {
        let c = &self.coefficients;
        if c.period == 0 || c.values.is_empty() {
            return Err(Error::InvalidSpec("coefficient period must be >= 1".into()));
        }
        if c.period != c.values.len() {
            return Err(Error::InvalidSpec(format!(
                "period {} does not match {} listed values",
                c.period,
                c.values.len()
            )));
        }
        let values = c
            .values
            .iter()
            .map(|[re, im]| Ok(HpComplex::new(parse_real(re, prec)?, parse_real(im, prec)?)))
            .collect::<Result<Vec<_>>>()?;
        let coefficients = PeriodicCoefficients::new(values)?;
        let exponent = match &self.exponent {
            ExponentDoc::Polynomial { coefficients } => {
                let coeffs = coefficients
                    .iter()
                    .map(|s| {
                        numeric::parse_rational(s)
                            .map_err(|_| Error::InvalidSpec(format!("bad rational {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Exponent::Polynomial(PolynomialExponent::new(RatPoly::new(coeffs))?)
            }
            ExponentDoc::Exponential { base } => {
                Exponent::Exponential(ExponentialExponent::new(parse_real(base, prec)?)?)
            }
        };
        let xi = match &self.root_of_unity {
            Some(r) => RootOfUnity::new(r.p, r.n)?,
            None => RootOfUnity::one(),
        };
        Ok((
            SeriesSpec {
                coefficients,
                exponent,
            },
            xi,
        ))
    }

    pub fn from_spec(spec: &SeriesSpec, xi: &RootOfUnity) -> Self {
        let values = spec
            .coefficients
            .values()
            .iter()
            .map(|v| [exact_decimal(&v.re), exact_decimal(&v.im)])
            .collect::<Vec<_>>();
        let exponent = match &spec.exponent {
            Exponent::Polynomial(p) => ExponentDoc::Polynomial {
                coefficients: p.poly().coeffs().iter().map(|r| r.to_string()).collect(),
            },
            Exponent::Exponential(e) => ExponentDoc::Exponential {
                base: exact_decimal(e.base()),
            },
        };
        SeriesDocument {
            coefficients: CoefficientsDoc {
                period: values.len(),
                values,
            },
            exponent,
            root_of_unity: (!xi.is_one()).then(|| RootDoc {
                p: xi.p() as i64,
                n: xi.order(),
            }),
        }
    }
}
