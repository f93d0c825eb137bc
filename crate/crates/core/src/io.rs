//! JSON documents and file helpers.
//!
//! Combinatorial inputs use the model types directly. Geometric inputs:
//! points `{"points": [["p/q","p/q"], ...]}`, lines
//! `{"lines": [{"base": [..], "dir": [..]}, ...]}`, circles
//! `{"disks": [{"cx","cy","r"}, ...]}` and disk maps
//! `{"disks": {"name": {"cx","cy","r"}}}`. Documents produced by
//! `reduce`/`realize` carry the same fields, so they can be fed back in.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::model::{Graph, Poset, Rank3Matroid, WiringDiagram};
use crate::{Disk, Line3, Point2};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {err}")]
    Read { path: PathBuf, err: std::io::Error },
    #[error("{path}: {err}")]
    Write { path: PathBuf, err: std::io::Error },
    #[error("{path}: malformed JSON: {err}")]
    Json {
        path: PathBuf,
        err: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsDoc {
    pub points: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinesDoc {
    pub lines: Vec<Line3>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirclesDoc {
    pub disks: Vec<Disk>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskMapDoc {
    pub disks: BTreeMap<String, Disk>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|err| IoError::Read {
        path: path.to_path_buf(),
        err,
    })?;
    serde_json::from_str(&text).map_err(|err| IoError::Json {
        path: path.to_path_buf(),
        err,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|err| IoError::Write {
        path: path.to_path_buf(),
        err,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    write_text(path, &to_json(value))
}

fn invalid(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Invalid {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

pub fn read_matroid(path: &Path) -> Result<Rank3Matroid, IoError> {
    let m: Rank3Matroid = read_json(path)?;
    let m = Rank3Matroid::new(m.n, m.flats);
    let rep = m.validate();
    if !rep.is_valid() {
        return Err(invalid(path, format!("invalid matroid: {rep}")));
    }
    Ok(m)
}

pub fn read_wiring(path: &Path) -> Result<WiringDiagram, IoError> {
    let w: WiringDiagram = read_json(path)?;
    let rep = w.validate();
    if !rep.is_valid() {
        return Err(invalid(path, format!("invalid wiring diagram: {rep}")));
    }
    Ok(w)
}

/// A bare document, or the `key` field of a wrapper such as a reduction
/// certificate.
fn read_maybe_wrapped<T: DeserializeOwned>(path: &Path, key: &str) -> Result<T, IoError> {
    let mut v: serde_json::Value = read_json(path)?;
    let inner = match v.get_mut(key) {
        Some(inner) => inner.take(),
        None => v,
    };
    serde_json::from_value(inner).map_err(|err| IoError::Json {
        path: path.to_path_buf(),
        err,
    })
}

pub fn read_graph(path: &Path) -> Result<Graph, IoError> {
    read_maybe_wrapped(path, "graph")
}

pub fn read_poset(path: &Path) -> Result<Poset, IoError> {
    read_maybe_wrapped(path, "poset")
}

pub fn read_points(path: &Path) -> Result<Vec<Point2>, IoError> {
    Ok(read_json::<PointsDoc>(path)?.points)
}

pub fn read_lines(path: &Path) -> Result<Vec<Line3>, IoError> {
    let lines = read_json::<LinesDoc>(path)?.lines;
    if lines.iter().any(|l| l.dir.is_zero()) {
        return Err(invalid(path, "line with zero direction"));
    }
    Ok(lines)
}

pub fn read_circles(path: &Path) -> Result<Vec<Disk>, IoError> {
    Ok(read_json::<CirclesDoc>(path)?.disks)
}

pub fn read_disk_map(path: &Path) -> Result<BTreeMap<String, Disk>, IoError> {
    Ok(read_json::<DiskMapDoc>(path)?.disks)
}
