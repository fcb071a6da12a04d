//! JSON matrix documents.
//!
//! ```json
//! {"ring": {"vars": ["z1", "z2", "z3"], "order": "lex"},
//!  "matrix": [["z1 - z2", "0"], ["1", "z3"]],
//!  "divisors": [{"var": "z1", "rhs": "z2", "power": 1}]}
//! ```

use polymat::factorizer::{DivisorProduct, LinearDivisor};
use polymat::{OrderKind, Poly, PolyMatrix, PolyRing, Ring};
use serde::{Deserialize, Serialize};

use crate::Failure;

fn default_order() -> String {
    "lex".into()
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
}

impl RingSpec {
    pub fn of(ring: &Ring) -> Self {
        RingSpec {
            vars: ring.names().to_vec(),
            order: ring.order().kind().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub var: String,
    pub rhs: String,
    #[serde(default = "one")]
    pub power: u32,
}

impl DivisorSpec {
    pub fn of(d: &LinearDivisor, power: u32) -> Self {
        DivisorSpec {
            var: d.var_name().to_string(),
            rhs: d.rhs().to_string(),
            power,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub ring: RingSpec,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisors: Vec<DivisorSpec>,
}

impl MatrixDocument {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_matrix(m: &PolyMatrix, divisors: &[(LinearDivisor, u32)]) -> Self {
        MatrixDocument {
            ring: RingSpec::of(m.ring()),
            matrix: m.to_strings(),
            divisors: divisors.iter().map(|(d, q)| DivisorSpec::of(d, *q)).collect(),
        }
    }

    /// The declared ring, with `order` replacing the declared order if given.
    pub fn ring(&self, order: Option<OrderKind>) -> Result<Ring, Failure> {
        let kind = match order {
            Some(k) => k,
            None => self.ring.order.parse().map_err(Failure::Input)?,
        };
        PolyRing::new(&self.ring.vars, kind).map_err(|e| Failure::Input(e.to_string()))
    }

    pub fn matrix(&self, ring: &Ring) -> Result<PolyMatrix, Failure> {
        if self.matrix.is_empty() || self.matrix[0].is_empty() {
            return Err(Failure::Input("matrix is empty".into()));
        }
        let rows = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        Poly::parse(s, ring).map_err(|e| Failure::Input(format!("entry ({}, {}): {e}", i + 1, j + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        PolyMatrix::new(ring, rows).map_err(|e| Failure::Input(e.to_string()))
    }

    /// The declared divisors, or `None` when there are none.
    pub fn divisor_product(&self, ring: &Ring) -> Result<Option<DivisorProduct>, Failure> {
        if self.divisors.is_empty() {
            return Ok(None);
        }
        let factors = self
            .divisors
            .iter()
            .map(|s| {
                let d = LinearDivisor::parse(&s.var, &s.rhs, ring)
                    .map_err(|e| Failure::Input(format!("divisor {} - ({}): {e}", s.var, s.rhs)))?;
                Ok((d, s.power))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        DivisorProduct::new(factors)
            .map(Some)
            .map_err(|e| Failure::Input(e.to_string()))
    }

    /// The single declared divisor of power one.
    pub fn single_divisor(&self, ring: &Ring) -> Result<LinearDivisor, Failure> {
        match self.divisor_product(ring)? {
            Some(p) if p.factors().len() == 1 && p.factors()[0].1 == 1 => Ok(p.factors()[0].0.clone()),
            Some(_) => Err(Failure::Input(
                "document declares a divisor product; pass --divisor or use `chain`".into(),
            )),
            None => Err(Failure::Input(
                "no divisor given; pass --divisor or declare one in the document".into(),
            )),
        }
    }
}

/// Parses a divisor written as a polynomial, e.g. `z1 - z2` or `2*z3 + z1^2`.
pub fn parse_divisor(text: &str, ring: &Ring) -> Result<LinearDivisor, Failure> {
    let p = Poly::parse(text, ring).map_err(|e| Failure::Input(format!("divisor `{text}`: {e}")))?;
    LinearDivisor::from_poly(&p).map_err(|e| Failure::Input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"ring": {"vars": ["z1", "z2"]}, "matrix": [["z1 - z2", "z2"]],
        "divisors": [{"var": "z1", "rhs": "z2"}]}"#;

    #[test]
    fn defaults_are_lex_and_power_one() {
        let doc = MatrixDocument::from_json(EXAMPLE).unwrap();
        assert_eq!(doc.ring.order, "lex");
        assert_eq!(doc.divisors[0].power, 1);
        let ring = doc.ring(None).unwrap();
        assert_eq!(doc.single_divisor(&ring).unwrap().to_string(), "z1 - z2");
    }

    #[test]
    fn round_trip() {
        let doc = MatrixDocument::from_json(EXAMPLE).unwrap();
        let ring = doc.ring(None).unwrap();
        let m = doc.matrix(&ring).unwrap();
        let d = doc.single_divisor(&ring).unwrap();
        let again = MatrixDocument::from_matrix(&m, &[(d, 1)]);
        assert_eq!(MatrixDocument::from_json(&again.to_json()).unwrap(), again);
        assert_eq!(again.matrix(&ring).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MatrixDocument::from_json("{").is_err());
        let doc = MatrixDocument::from_json(r#"{"ring": {"vars": ["x"]}, "matrix": [["y"]]}"#).unwrap();
        let ring = doc.ring(None).unwrap();
        assert!(doc.matrix(&ring).is_err());
        let ragged = MatrixDocument::from_json(r#"{"ring": {"vars": ["x"]}, "matrix": [["x"], ["1", "x"]]}"#).unwrap();
        assert!(ragged.matrix(&ring).is_err());
        let bad = MatrixDocument::from_json(
            r#"{"ring": {"vars": ["z1"]}, "matrix": [["z1"]], "divisors": [{"var": "z1", "rhs": "z1"}]}"#,
        )
        .unwrap();
        assert!(bad.divisor_product(&bad.ring(None).unwrap()).is_err());
        assert!(parse_divisor("z1 - z1", &ring).is_err());
    }
}
