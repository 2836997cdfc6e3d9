//! JSON schemas for polynomials, link patterns, ground-state vectors, and
//! reports. Serialization is canonical: terms in ascending graded-lex order,
//! rationals in lowest terms, so a round trip is byte-identical.

use serde::{Deserialize, Serialize};

use crate::brauer::{GroundStateVector, Model};
use crate::pattern::{LinkPattern, PatternKind};
use crate::poly::{Monomial, Polynomial};
use crate::ring::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub e: Vec<u32>,
    pub c: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyDto {
    pub n_vars: usize,
    pub ring: String,
    pub terms: Vec<TermDto>,
}

pub fn poly_to_dto<C: Scalar>(p: &Polynomial<C>) -> PolyDto {
    PolyDto {
        n_vars: p.n_vars(),
        ring: C::RING.as_str().to_string(),
        terms: p
            .terms()
            .map(|(m, c)| TermDto {
                e: m.0.clone(),
                c: c.coeff_parts(),
            })
            .collect(),
    }
}

pub fn poly_from_dto<C: Scalar>(dto: &PolyDto, location: &str) -> Result<Polynomial<C>, SchemaError> {
    if dto.ring != C::RING.as_str() {
        return Err(invalid(
            location,
            format!("ring tag {} does not match expected {}", dto.ring, C::RING.as_str()),
        ));
    }
    let mut terms = Vec::with_capacity(dto.terms.len());
    for (k, t) in dto.terms.iter().enumerate() {
        let loc = format!("{location}.terms[{k}]");
        if t.e.len() != dto.n_vars {
            return Err(invalid(&loc, "exponent vector length != n_vars"));
        }
        let c = C::parse_parts(&t.c).map_err(|e| invalid(&loc, e.to_string()))?;
        if c.is_zero() {
            return Err(invalid(&loc, "stored coefficient is zero"));
        }
        terms.push((Monomial(t.e.clone()), c));
    }
    // enforce strictly ascending canonical order (also rules out duplicates)
    for w in terms.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(invalid(location, "terms not in ascending graded-lex order"));
        }
    }
    Ok(Polynomial::from_terms(dto.n_vars, terms))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorDto {
    pub model: Model,
    #[serde(rename = "N")]
    pub n: usize,
    pub ring: String,
    pub patterns: Vec<Vec<usize>>,
    pub components: Vec<PolyDto>,
}

pub fn vector_to_dto<C: Scalar>(gsv: &GroundStateVector<C>) -> VectorDto {
    VectorDto {
        model: gsv.model,
        n: gsv.n_points,
        ring: C::RING.as_str().to_string(),
        patterns: gsv
            .patterns
            .iter()
            .map(|p| p.partner_array().to_vec())
            .collect(),
        components: gsv.components.iter().map(poly_to_dto).collect(),
    }
}

pub fn vector_from_dto<C: Scalar>(dto: &VectorDto) -> Result<GroundStateVector<C>, SchemaError> {
    let kind = match dto.model {
        Model::Brauer => PatternKind::Crossing,
        Model::Tl => PatternKind::NonCrossing,
    };
    if dto.patterns.len() != dto.components.len() {
        return Err(invalid("$", "patterns and components length mismatch"));
    }
    let mut patterns = Vec::with_capacity(dto.patterns.len());
    for (k, p) in dto.patterns.iter().enumerate() {
        if p.len() != dto.n {
            return Err(invalid(format!("$.patterns[{k}]"), "partner array length != N"));
        }
        patterns.push(LinkPattern::new(p.clone(), kind));
    }
    let mut components = Vec::with_capacity(dto.components.len());
    for (k, c) in dto.components.iter().enumerate() {
        if c.n_vars != dto.n {
            return Err(invalid(format!("$.components[{k}]"), "n_vars != N"));
        }
        components.push(poly_from_dto(c, &format!("$.components[{k}]"))?);
    }
    Ok(GroundStateVector {
        model: dto.model,
        n_points: dto.n,
        patterns,
        components,
    })
}

pub fn vector_to_json<C: Scalar>(gsv: &GroundStateVector<C>) -> String {
    serde_json::to_string_pretty(&vector_to_dto(gsv)).expect("serializable")
}

pub fn vector_from_json<C: Scalar>(json: &str) -> Result<GroundStateVector<C>, SchemaError> {
    let dto: VectorDto = serde_json::from_str(json)?;
    vector_from_dto(&dto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::build_vector;
    use crate::poly::QPoly;

    #[test]
    fn vector_round_trip_is_byte_identical() {
        let v = build_vector(4).unwrap();
        let json = vector_to_json(&v);
        let back = vector_from_json::<crate::ring::Rational>(&json).unwrap();
        assert_eq!(vector_to_json(&back), json);
        assert_eq!(back.patterns, v.patterns);
        assert_eq!(back.components, v.components);
    }

    #[test]
    fn malformed_coefficient_rejected() {
        let dto = PolyDto {
            n_vars: 1,
            ring: "Q".into(),
            terms: vec![TermDto {
                e: vec![0],
                c: vec!["1/0".into()],
            }],
        };
        let err = poly_from_dto::<crate::ring::Rational>(&dto, "$").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("terms[0]"), "{msg}");
    }

    #[test]
    fn wrong_order_rejected() {
        let p = QPoly::var(2, 1).add(&QPoly::var(2, 2));
        let mut dto = poly_to_dto(&p);
        dto.terms.reverse();
        assert!(poly_from_dto::<crate::ring::Rational>(&dto, "$").is_err());
    }
}
