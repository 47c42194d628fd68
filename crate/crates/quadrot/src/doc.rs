//! Polygon input documents.
//!
//! The on-disk format is a small JSON object:
//!
//! ```json
//! {"kind": "quad", "label": "demo", "vertices": [[0,0],[1,0],[2,1],[0.5,2]]}
//! ```
//!
//! `kind` is one of `quad`, `parallelogram`, `triangle`, `hexagon`; the
//! vertex count must match the kind; `label` is optional.

use crate::error::{Error, Result};
use crate::hexagon::Hexagon;
use crate::morley::Triangle;
use crate::point::Point;
use crate::quad::Quadrilateral;
use crate::square::ParallelogramQuad;
use serde::Deserialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonKind {
    Quad,
    Parallelogram,
    Triangle,
    Hexagon,
}

impl PolygonKind {
    pub fn vertex_count(self) -> usize {
        match self {
            PolygonKind::Quad | PolygonKind::Parallelogram => 4,
            PolygonKind::Triangle => 3,
            PolygonKind::Hexagon => 6,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PolygonKind::Quad => "quad",
            PolygonKind::Parallelogram => "parallelogram",
            PolygonKind::Triangle => "triangle",
            PolygonKind::Hexagon => "hexagon",
        }
    }
}

impl fmt::Display for PolygonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolygonKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(PolygonKind::Quad),
            "parallelogram" => Ok(PolygonKind::Parallelogram),
            "triangle" => Ok(PolygonKind::Triangle),
            "hexagon" => Ok(PolygonKind::Hexagon),
            other => Err(Error::ValidationError(format!(
                "unknown polygon kind '{other}' (expected quad, parallelogram, triangle or hexagon)"
            ))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: PolygonKind,
    vertices: Vec<[f64; 2]>,
    #[serde(default)]
    label: String,
}

/// A parsed polygon document: kind, vertices and label. Still untyped
/// geometrically; use the `to_*` conversions to build validated objects.
#[derive(Clone, Debug)]
pub struct PolygonDocument {
    pub kind: PolygonKind,
    pub vertices: Vec<Point>,
    pub label: String,
}

/// Parses a document, splitting syntax problems (with line/column
/// diagnostics) from structural ones.
pub fn parse_polygon(text: &str) -> Result<PolygonDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        if e.classify() == serde_json::error::Category::Data {
            Error::ValidationError(e.to_string())
        } else {
            Error::ParseError {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })?;
    let expected = raw.kind.vertex_count();
    if raw.vertices.len() != expected {
        return Err(Error::ValidationError(format!(
            "kind '{}' needs {} vertices, got {}",
            raw.kind,
            expected,
            raw.vertices.len()
        )));
    }
    let vertices: Vec<Point> = raw
        .vertices
        .iter()
        .map(|[x, y]| Point::new(*x, *y))
        .collect();
    if vertices.iter().any(|p| !p.is_finite()) {
        return Err(Error::ValidationError(
            "vertex coordinates must be finite".into(),
        ));
    }
    Ok(PolygonDocument {
        kind: raw.kind,
        vertices,
        label: raw.label,
    })
}

impl PolygonDocument {
    /// Quadrilateral view; valid for `quad` and `parallelogram` documents.
    pub fn to_quadrilateral(&self) -> Result<Quadrilateral> {
        match self.kind {
            PolygonKind::Quad | PolygonKind::Parallelogram => Quadrilateral::new([
                self.vertices[0],
                self.vertices[1],
                self.vertices[2],
                self.vertices[3],
            ]),
            other => Err(Error::ValidationError(format!(
                "document of kind '{other}' is not a quadrilateral"
            ))),
        }
    }

    pub fn to_parallelogram(&self, tol: f64) -> Result<ParallelogramQuad> {
        if self.kind != PolygonKind::Parallelogram {
            return Err(Error::ValidationError(format!(
                "document of kind '{}' is not a parallelogram",
                self.kind
            )));
        }
        ParallelogramQuad::new(&self.to_quadrilateral()?, tol)
    }

    pub fn to_triangle(&self) -> Result<Triangle> {
        if self.kind != PolygonKind::Triangle {
            return Err(Error::ValidationError(format!(
                "document of kind '{}' is not a triangle",
                self.kind
            )));
        }
        Triangle::new([self.vertices[0], self.vertices[1], self.vertices[2]])
    }

    pub fn to_hexagon(&self) -> Result<Hexagon> {
        if self.kind != PolygonKind::Hexagon {
            return Err(Error::ValidationError(format!(
                "document of kind '{}' is not a hexagon",
                self.kind
            )));
        }
        Hexagon::new([
            self.vertices[0],
            self.vertices[1],
            self.vertices[2],
            self.vertices[3],
            self.vertices[4],
            self.vertices[5],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_reference_quadrilateral() {
        let doc =
            parse_polygon(r#"{"kind":"quad","vertices":[[0,0],[1,0],[2,1],[0.5,2]]}"#).unwrap();
        assert_eq!(doc.kind, PolygonKind::Quad);
        assert_eq!(doc.vertices.len(), 4);
        assert_eq!(doc.vertices[3], Point::new(0.5, 2.0));
        assert!(doc.to_quadrilateral().is_ok());
    }

    #[test]
    fn parses_the_reference_parallelogram() {
        let doc = parse_polygon(
            r#"{"kind":"parallelogram","label":"demo","vertices":[[0,0],[1,0],[1.5,2],[0.5,2]]}"#,
        )
        .unwrap();
        assert_eq!(doc.kind, PolygonKind::Parallelogram);
        assert_eq!(doc.label, "demo");
        let qp = doc.to_parallelogram(1e-9).unwrap();
        assert!(qp.center().distance(Point::new(0.75, 1.0)) < 1e-15);
    }

    #[test]
    fn wrong_vertex_count_is_a_validation_error() {
        let res = parse_polygon(r#"{"kind":"quad","vertices":[[0,0],[1,0],[2,1]]}"#);
        assert!(matches!(res, Err(Error::ValidationError(_))));
    }

    #[test]
    fn malformed_syntax_reports_position() {
        let res = parse_polygon("{\"kind\": \"quad\",\n  \"vertices\": [[0,0],]}");
        match res {
            Err(Error::ParseError { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_kind_and_fields_are_validation_errors() {
        assert!(matches!(
            parse_polygon(r#"{"kind":"pentagon","vertices":[[0,0],[1,0],[2,1],[0.5,2]]}"#),
            Err(Error::ValidationError(_))
        ));
        assert!(matches!(
            parse_polygon(r#"{"kind":"quad","verts":[[0,0],[1,0],[2,1],[0.5,2]]}"#),
            Err(Error::ValidationError(_))
        ));
    }

    #[test]
    fn kind_mismatch_in_conversions() {
        let doc = parse_polygon(r#"{"kind":"triangle","vertices":[[0,0],[4,0],[1,3]]}"#).unwrap();
        assert!(doc.to_triangle().is_ok());
        assert!(matches!(
            doc.to_quadrilateral(),
            Err(Error::ValidationError(_))
        ));
        assert!(matches!(doc.to_hexagon(), Err(Error::ValidationError(_))));
    }
}
