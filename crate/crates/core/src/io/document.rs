use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{ColoringCertificate, Verdict};
use crate::convex::Segment;

pub const CERTIFICATE_SCHEMA: &str = "dn-coloring-certificate";
pub const THRACKLE_SCHEMA: &str = "dn-thrackle-set";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unsupported schema {schema:?} version {version}")]
    Schema { schema: String, version: u32 },

    #[error("{location}: cell [{a},{b}] {reason}")]
    Cell { location: String, a: u32, b: u32, reason: &'static str },

    #[error("{0}")]
    Field(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Generator {
    tool: String,
    version: String,
    path_indices: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Conflict {
    class: usize,
    first: [u32; 2],
    second: [u32; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerdictDoc {
    valid: bool,
    uncovered: Vec<[u32; 2]>,
    conflicts: Vec<Conflict>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    schema: String,
    schema_version: u32,
    n: u32,
    classes: Vec<Vec<[u32; 2]>>,
    generator: Generator,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThrackleDoc {
    schema: String,
    schema_version: u32,
    n: u32,
    thrackles: Vec<Vec<[u32; 2]>>,
}

fn pair(s: Segment) -> [u32; 2] {
    [s.a(), s.b()]
}

fn cell(location: String, [a, b]: [u32; 2], n: u32) -> Result<Segment, DocumentError> {
    let reason = if a == 0 {
        "has a label below 1"
    } else if a >= b {
        "is not ordered a < b"
    } else if b > n {
        "has a label above n"
    } else {
        return Ok(Segment::within(a, b, n).expect("checked above"));
    };
    Err(DocumentError::Cell { location, a, b, reason })
}

fn check_schema(schema: &str, version: u32, expected: &str) -> Result<(), DocumentError> {
    if schema != expected || version != SCHEMA_VERSION {
        return Err(DocumentError::Schema { schema: schema.to_string(), version });
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents always serialize");
    out.push('\n');
    out
}

/// Pretty JSON for a certificate, optionally with its verification verdict.
pub fn emit_certificate(cert: &ColoringCertificate, verdict: Option<&Verdict>) -> String {
    let doc = CertificateDoc {
        schema: CERTIFICATE_SCHEMA.to_string(),
        schema_version: SCHEMA_VERSION,
        n: cert.n,
        classes: cert.classes.iter().map(|c| c.iter().map(|&s| pair(s)).collect()).collect(),
        generator: Generator {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            path_indices: cert.class_labels.clone(),
        },
        verdict: verdict.map(|v| VerdictDoc {
            valid: v.is_valid(),
            uncovered: v.uncovered.iter().map(|&s| pair(s)).collect(),
            conflicts: v
                .conflicts
                .iter()
                .map(|c| Conflict { class: c.class, first: pair(c.first), second: pair(c.second) })
                .collect(),
        }),
    };
    to_json(&doc)
}

pub fn parse_certificate(text: &str) -> Result<ColoringCertificate, DocumentError> {
    let doc: CertificateDoc = serde_json::from_str(text)?;
    check_schema(&doc.schema, doc.schema_version, CERTIFICATE_SCHEMA)?;
    if doc.generator.path_indices.len() != doc.classes.len() {
        return Err(DocumentError::Field(format!(
            "generator.path_indices has {} entries for {} classes",
            doc.generator.path_indices.len(),
            doc.classes.len()
        )));
    }
    let mut classes = Vec::with_capacity(doc.classes.len());
    for (c, raw) in doc.classes.iter().enumerate() {
        let mut seen = BTreeSet::new();
        let mut class = Vec::with_capacity(raw.len());
        for (x, &p) in raw.iter().enumerate() {
            let s = cell(format!("classes[{c}][{x}]"), p, doc.n)?;
            if !seen.insert(s) {
                return Err(DocumentError::Cell {
                    location: format!("classes[{c}][{x}]"),
                    a: p[0],
                    b: p[1],
                    reason: "appears twice in the class",
                });
            }
            class.push(s);
        }
        classes.push(class);
    }
    Ok(ColoringCertificate { n: doc.n, classes, class_labels: doc.generator.path_indices })
}

/// Edge sets of several thrackles on the same `n` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThrackleSet {
    pub n: u32,
    pub thrackles: Vec<BTreeSet<Segment>>,
}

pub fn emit_thrackles(set: &ThrackleSet) -> String {
    to_json(&ThrackleDoc {
        schema: THRACKLE_SCHEMA.to_string(),
        schema_version: SCHEMA_VERSION,
        n: set.n,
        thrackles: set.thrackles.iter().map(|t| t.iter().map(|&s| pair(s)).collect()).collect(),
    })
}

pub fn parse_thrackles(text: &str) -> Result<ThrackleSet, DocumentError> {
    let doc: ThrackleDoc = serde_json::from_str(text)?;
    check_schema(&doc.schema, doc.schema_version, THRACKLE_SCHEMA)?;
    let mut thrackles = Vec::with_capacity(doc.thrackles.len());
    for (t, raw) in doc.thrackles.iter().enumerate() {
        let edges = raw
            .iter()
            .enumerate()
            .map(|(x, &p)| cell(format!("thrackles[{t}][{x}]"), p, doc.n))
            .collect::<Result<BTreeSet<_>, _>>()?;
        thrackles.push(edges);
    }
    Ok(ThrackleSet { n: doc.n, thrackles })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyDocument {
    Certificate(ColoringCertificate),
    Thrackles(ThrackleSet),
}

/// Dispatch on the `schema` field.
pub fn parse_any(text: &str) -> Result<AnyDocument, DocumentError> {
    #[derive(Deserialize)]
    struct Head {
        schema: String,
    }
    let head: Head = serde_json::from_str::<serde_json::Value>(text)
        .and_then(serde_json::from_value)?;
    match head.schema.as_str() {
        CERTIFICATE_SCHEMA => parse_certificate(text).map(AnyDocument::Certificate),
        THRACKLE_SCHEMA => parse_thrackles(text).map(AnyDocument::Thrackles),
        other => Err(DocumentError::Schema { schema: other.to_string(), version: 0 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{optimal_coloring, verify_coloring};

    #[test]
    fn certificate_round_trip() {
        let cert = optimal_coloring(12).unwrap();
        let text = emit_certificate(&cert, None);
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        let verdict = verify_coloring(&cert).unwrap();
        let with_verdict = emit_certificate(&cert, Some(&verdict));
        assert!(with_verdict.contains("\"valid\": true"));
        assert_eq!(parse_certificate(&with_verdict).unwrap(), cert);
    }

    fn doc(n: &str, classes: &str) -> String {
        format!(
            r#"{{"schema":"dn-coloring-certificate","schema_version":1,{n}"classes":{classes},
            "generator":{{"tool":"t","version":"0","path_indices":[0]}}}}"#
        )
    }

    #[test]
    fn rejects_bad_cells() {
        let err = parse_certificate(&doc(r#""n":6,"#, "[[[5,5]]]")).unwrap_err();
        assert!(err.to_string().contains("[5,5]"), "{err}");
        let err = parse_certificate(&doc(r#""n":6,"#, "[[[1,7]]]")).unwrap_err();
        assert!(err.to_string().contains("above n"));
        let err = parse_certificate(&doc(r#""n":6,"#, "[[[1,2],[1,2]]]")).unwrap_err();
        assert!(err.to_string().contains("twice"));
    }

    #[test]
    fn rejects_structural_problems() {
        let err = parse_certificate(&doc("", "[[[1,2]]]")).unwrap_err();
        assert!(err.to_string().contains("missing field `n`"), "{err}");
        let extra = doc(r#""n":6,"extra":1,"#, "[[[1,2]]]");
        assert!(parse_certificate(&extra).unwrap_err().to_string().contains("unknown field"));
        let wrong = doc(r#""n":6,"#, "[[[1,2]]]").replace("schema_version\":1", "schema_version\":9");
        assert!(matches!(parse_certificate(&wrong), Err(DocumentError::Schema { .. })));
        let err = parse_certificate("{\n  \"schema\": \n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn thrackle_documents() {
        let set = ThrackleSet {
            n: 5,
            thrackles: vec![[(1, 2), (1, 3)].iter().map(|&(a, b)| Segment::new(a, b).unwrap()).collect()],
        };
        let text = emit_thrackles(&set);
        assert_eq!(parse_thrackles(&text).unwrap(), set);
        assert_eq!(parse_any(&text).unwrap(), AnyDocument::Thrackles(set));
        let cert = optimal_coloring(5).unwrap();
        assert_eq!(parse_any(&emit_certificate(&cert, None)).unwrap(), AnyDocument::Certificate(cert));
        assert!(parse_any(r#"{"schema":"other"}"#).is_err());
    }
}
