//! Terrain file parsing, result records and SVG rendering.
//!
//! Two input formats are accepted:
//!
//! * text: line 1 holds the vertex count `n`, lines 2..n+1 hold `x y` as
//!   decimal literals with strictly increasing x;
//! * JSON: `{"vertices": [[x, y], ...]}`.

pub mod svg;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fptas::Measure;
use crate::geom::Point;
use crate::terrain::{Terrain, TerrainError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid terrain: {0}")]
    Terrain(#[from] TerrainError),
}

#[derive(Deserialize)]
struct JsonTerrain {
    vertices: Vec<[f64; 2]>,
}

pub fn parse_terrain_file(path: &Path) -> Result<Terrain, ParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_terrain_str(&text)
}

/// Parse either format; JSON documents are recognized by a leading `{`.
pub fn parse_terrain_str(text: &str) -> Result<Terrain, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: JsonTerrain = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let pts: Vec<Point> = doc.vertices.iter().map(|v| Point::new(v[0], v[1])).collect();
        return Ok(Terrain::build(&pts)?);
    }
    parse_text_format(text)
}

fn parse_text_format(text: &str) -> Result<Terrain, ParseError> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| ParseError::Syntax {
            line: 1,
            column: 1,
            message: "empty input".into(),
        })?;
    let n: usize = first.trim().parse().map_err(|_| ParseError::Syntax {
        line: first_no + 1,
        column: 1,
        message: format!("expected vertex count, got {:?}", first.trim()),
    })?;
    let mut pts = Vec::with_capacity(n);
    for (line_no, line) in lines {
        let line_trim = line.trim();
        if line_trim.is_empty() {
            continue;
        }
        if pts.len() == n {
            return Err(ParseError::Syntax {
                line: line_no + 1,
                column: 1,
                message: format!("expected {n} vertices, found more"),
            });
        }
        let mut split = line_trim.split_whitespace();
        let x_str = split.next().unwrap();
        let y_str = split.next().ok_or_else(|| ParseError::Syntax {
            line: line_no + 1,
            column: line.find(x_str).unwrap_or(0) + x_str.len() + 1,
            message: "expected two coordinates".into(),
        })?;
        if split.next().is_some() {
            return Err(ParseError::Syntax {
                line: line_no + 1,
                column: 1,
                message: "expected exactly two coordinates".into(),
            });
        }
        let x: f64 = x_str.parse().map_err(|_| ParseError::Syntax {
            line: line_no + 1,
            column: line.find(x_str).unwrap_or(0) + 1,
            message: format!("bad number {x_str:?}"),
        })?;
        let y: f64 = y_str.parse().map_err(|_| ParseError::Syntax {
            line: line_no + 1,
            column: line.rfind(y_str).unwrap_or(0) + 1,
            message: format!("bad number {y_str:?}"),
        })?;
        pts.push(Point::new(x, y));
    }
    if pts.len() != n {
        return Err(ParseError::Syntax {
            line: text.lines().count(),
            column: 1,
            message: format!("expected {n} vertices, found {}", pts.len()),
        });
    }
    Ok(Terrain::build(&pts)?)
}

/// Text-format serialization; `f64` Display round-trips shortest decimal
/// representations exactly.
pub fn serialize_terrain(t: &Terrain) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", t.n());
    for p in t.chain() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Diameter,
    Triangle,
    Kgon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Length,
    Perimeter,
    Area,
}

impl From<Measure> for MeasureKind {
    fn from(m: Measure) -> Self {
        match m {
            Measure::Perimeter => MeasureKind::Perimeter,
            Measure::Area => MeasureKind::Area,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub tie_break: String,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleEcho {
    pub value: f64,
    pub delta: f64,
}

/// The machine-readable result printed by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultRecord {
    pub problem: Problem,
    pub measure: MeasureKind,
    pub value: f64,
    pub vertices: Vec<[f64; 2]>,
    pub config: ConfigEcho,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEcho>,
}

impl ResultRecord {
    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| Point::new(v[0], v[1])).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}
