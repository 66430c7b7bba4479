//! A versioned JSON document for tensor elements and pairs.
//!
//! ```json
//! {
//!   "format": "erb-element",
//!   "version": 1,
//!   "ring": { "indeterminates": ["lambda", "kappa"], "mu_relation": false },
//!   "generators": ["x"],
//!   "kind": "element",
//!   "terms": [ { "coeff": "2*lambda", "slots": [["x", "1"]] } ]
//! }
//! ```
//!
//! Every word is a list of monomials; elements have one slot per term and
//! pairs two.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base::{parse_monomial, BaseAlgebraSpec};
use crate::error::{Error, Result};
use crate::hopf::TensorPair;
use crate::lincomb::Render;
use crate::scalar::{RingContext, ScalarPoly};
use crate::shuffle::{TensorElement, Word};

pub const FORMAT: &str = "erb-element";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDescriptor {
    pub indeterminates: Vec<String>,
    pub mu_relation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Element,
    Pair,
}

impl Kind {
    fn slots(self) -> usize {
        match self {
            Kind::Element => 1,
            Kind::Pair => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coeff: String,
    pub slots: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub format: String,
    pub version: u32,
    pub ring: RingDescriptor,
    pub generators: Vec<String>,
    pub kind: Kind,
    pub terms: Vec<TermRecord>,
}

/// The value carried by a parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Element(TensorElement),
    Pair(TensorPair),
}

/// A parsed document together with the ring and base algebra it declared.
#[derive(Debug, Clone)]
pub struct Document {
    pub ring: Arc<RingContext>,
    pub base: Arc<BaseAlgebraSpec>,
    pub value: Value,
}

fn word_strings(w: &Word, gens: &[String]) -> Vec<String> {
    w.letters().iter().map(|m| m.render(gens)).collect()
}

fn header(ctx: &RingContext, base: &BaseAlgebraSpec, kind: Kind) -> ElementDocument {
    ElementDocument {
        format: FORMAT.into(),
        version: VERSION,
        ring: RingDescriptor {
            indeterminates: ctx.names().to_vec(),
            mu_relation: ctx.mu_relation(),
        },
        generators: base.generators().to_vec(),
        kind,
        terms: Vec::new(),
    }
}

fn to_text(doc: &ElementDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn element_document(base: &BaseAlgebraSpec, u: &TensorElement) -> ElementDocument {
    let gens = base.generators();
    let mut doc = header(u.context(), base, Kind::Element);
    doc.terms = u
        .iter()
        .map(|(w, c)| TermRecord {
            coeff: c.to_string(),
            slots: vec![word_strings(w, gens)],
        })
        .collect();
    doc
}

pub fn pair_document(base: &BaseAlgebraSpec, t: &TensorPair) -> ElementDocument {
    let gens = base.generators();
    let mut doc = header(t.context(), base, Kind::Pair);
    doc.terms = t
        .iter()
        .map(|((a, b), c)| TermRecord {
            coeff: c.to_string(),
            slots: vec![word_strings(a, gens), word_strings(b, gens)],
        })
        .collect();
    doc
}

pub fn serialize_element(base: &BaseAlgebraSpec, u: &TensorElement) -> String {
    to_text(&element_document(base, u))
}

pub fn serialize_pair(base: &BaseAlgebraSpec, t: &TensorPair) -> String {
    to_text(&pair_document(base, t))
}

fn parse_word(base: &BaseAlgebraSpec, letters: &[String]) -> Result<Word> {
    Word::new(
        letters
            .iter()
            .map(|m| parse_monomial(base, m))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Parse a document produced by [`serialize_element`] or [`serialize_pair`].
pub fn parse_document(text: &str) -> Result<Document> {
    let doc: ElementDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_document(&doc)
}

pub fn from_document(doc: &ElementDocument) -> Result<Document> {
    if doc.format != FORMAT {
        return Err(Error::InvalidArgument(format!("unknown format `{}`", doc.format)));
    }
    if doc.version != VERSION {
        return Err(Error::InvalidArgument(format!("unsupported version {}", doc.version)));
    }
    let ring = RingContext::new(doc.ring.indeterminates.iter().cloned(), doc.ring.mu_relation)?;
    let base = BaseAlgebraSpec::new(doc.generators.iter().cloned(), true)?;
    let slots = doc.kind.slots();
    let mut element = TensorElement::zero(&ring);
    let mut pair = TensorPair::zero(&ring);
    for (i, term) in doc.terms.iter().enumerate() {
        if term.slots.len() != slots {
            return Err(Error::InvalidArgument(format!(
                "term {i} has {} slots, expected {slots}",
                term.slots.len()
            )));
        }
        let c = ScalarPoly::parse(&ring, &term.coeff)?;
        match doc.kind {
            Kind::Element => element.add_term(parse_word(&base, &term.slots[0])?, c),
            Kind::Pair => pair.add_term(
                (parse_word(&base, &term.slots[0])?, parse_word(&base, &term.slots[1])?),
                c,
            ),
        }
    }
    let value = match doc.kind {
        Kind::Element => Value::Element(element),
        Kind::Pair => Value::Pair(pair),
    };
    Ok(Document { ring, base, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfAlgebra;
    use crate::shuffle::{ErbWeight, ShuffleAlgebra};

    #[test]
    fn unit_tensor_square() {
        let ctx = RingContext::weight_ring();
        let alg = ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), ErbWeight::symbolic(&ctx).unwrap());
        let u = alg.ones(2).unwrap();
        let doc = element_document(alg.base(), &u);
        assert_eq!(doc.terms.len(), 1);
        assert_eq!(doc.terms[0].coeff, "1");
        assert_eq!(doc.terms[0].slots, vec![vec!["1".to_string(), "1".to_string()]]);
        let back = parse_document(&serialize_element(alg.base(), &u)).unwrap();
        assert_eq!(back.value, Value::Element(u));
    }

    #[test]
    fn pair_round_trip() {
        let h = HopfAlgebra::new(BaseAlgebraSpec::scalars()).unwrap();
        let t = h.coproduct_kk(2).unwrap();
        let text = serialize_pair(h.algebra().base(), &t);
        let back = parse_document(&text).unwrap();
        assert_eq!(back.value, Value::Pair(t));
        assert!(back.ring.mu_relation());
        assert_eq!(
            serialize_pair(
                &back.base,
                match &back.value {
                    Value::Pair(p) => p,
                    _ => unreachable!(),
                }
            ),
            text
        );
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let text = r#"{"format":"erb-element","version":1,
            "ring":{"indeterminates":["lambda","kappa"],"mu_relation":false},
            "generators":["x"],"kind":"element",
            "terms":[{"coeff":"0","slots":[["x"]]},{"coeff":"lambda - lambda + 2","slots":[["1","x^2"]]}]}"#;
        let doc = parse_document(text).unwrap();
        let Value::Element(u) = doc.value else { panic!() };
        assert_eq!(u.len(), 1);
    }

    #[test]
    fn malformed_documents() {
        match parse_document("{\n  \"format\": 3") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let unknown_field = r#"{"format":"erb-element","version":1,"extra":1,
            "ring":{"indeterminates":[],"mu_relation":false},"generators":[],"kind":"element","terms":[]}"#;
        assert!(matches!(parse_document(unknown_field), Err(Error::Parse { .. })));
        let empty_word = r#"{"format":"erb-element","version":1,
            "ring":{"indeterminates":[],"mu_relation":false},"generators":[],"kind":"element",
            "terms":[{"coeff":"1","slots":[[]]}]}"#;
        assert_eq!(parse_document(empty_word).err(), Some(Error::EmptyWord));
        let bad_version = r#"{"format":"erb-element","version":9,
            "ring":{"indeterminates":[],"mu_relation":false},"generators":[],"kind":"element","terms":[]}"#;
        assert!(matches!(parse_document(bad_version), Err(Error::InvalidArgument(_))));
    }
}
