//! JSON and LaTeX renderings of polynomials and rational functions.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{GeometricFactor, LaurentPoly, ProductRationalFunction};
use crate::error::{contract, Result};

/// Wire form `{"numerator":[[a,b,"coeff"],...],"denominator":[[a,b],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub numerator: Vec<(i64, i64, String)>,
    pub denominator: Vec<(i64, i64)>,
}

impl From<&ProductRationalFunction> for RationalFunctionJson {
    fn from(f: &ProductRationalFunction) -> Self {
        RationalFunctionJson {
            numerator: poly_to_json_terms(f.numerator()),
            denominator: f.denominator().iter().map(|g| (g.x_exponent(), g.y_exponent())).collect(),
        }
    }
}

impl TryFrom<RationalFunctionJson> for ProductRationalFunction {
    type Error = crate::Error;

    fn try_from(json: RationalFunctionJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(json.numerator.len());
        for (a, b, c) in json.numerator {
            let coeff: BigInt = c.parse().map_err(|_| contract(format!("bad coefficient {c:?}")))?;
            terms.push((a, b, coeff));
        }
        let factors =
            json.denominator.into_iter().map(|(a, b)| GeometricFactor::new(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(ProductRationalFunction::new(LaurentPoly::from_terms(terms), factors))
    }
}

pub fn poly_to_json_terms(p: &LaurentPoly) -> Vec<(i64, i64, String)> {
    p.terms().map(|(a, b, c)| (a, b, c.to_string())).collect()
}

impl ProductRationalFunction {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RationalFunctionJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let json: RationalFunctionJson =
            serde_json::from_value(value.clone()).map_err(|e| contract(format!("malformed rational function: {e}")))?;
        json.try_into()
    }

    /// LaTeX display with `X` rendered as `p` and `Y` as `p^{-s}`.
    pub fn to_latex(&self) -> String {
        let num = poly_to_latex(self.numerator());
        if self.denominator().is_empty() {
            return num;
        }
        let den: String =
            self.denominator().iter().map(|g| format!("(1-{})", power_of_p(g.x_exponent(), g.y_exponent()))).collect();
        format!("\\frac{{{num}}}{{{den}}}")
    }
}

/// `p^{a-bs}`, the image of `X^a Y^b`.
fn power_of_p(a: i64, b: i64) -> String {
    let s_part = match b {
        0 => String::new(),
        1 => "-s".to_string(),
        -1 => "+s".to_string(),
        _ if b > 0 => format!("-{b}s"),
        _ => format!("+{}s", -b),
    };
    match (a, b) {
        (0, 0) => "1".to_string(),
        (1, 0) => "p".to_string(),
        (_, 0) => format!("p^{{{a}}}"),
        (0, _) => format!("p^{{{}}}", s_part.trim_start_matches('+')),
        _ => format!("p^{{{a}{s_part}}}"),
    }
}

pub fn poly_to_latex(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (a, b, c)) in p.terms().enumerate() {
        let mag = c.abs();
        if c.is_negative() {
            out.push_str(if k == 0 { "-" } else { " - " });
        } else if k > 0 {
            out.push_str(" + ");
        }
        let mono = power_of_p(a, b);
        if mono == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    out
}
