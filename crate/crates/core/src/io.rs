//! JSON documents for graphs and conflict specs.
//!
//! ```json
//! {"vertices": [1, 2, 3], "edges": [[1, 2], [2, 3], [1, 3]]}
//! {"matrix": [[1, 0, -1, 0]], "p": 1}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ConflictMatrix, ConflictSpec, ModelError, OrderedGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<i64>,
    pub edges: Vec<[i64; 2]>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<OrderedGraph, ModelError> {
        OrderedGraph::new(
            self.vertices.clone(),
            self.edges.iter().map(|&[a, b]| (a, b)).collect(),
        )
    }
}

impl From<&OrderedGraph> for GraphDoc {
    fn from(g: &OrderedGraph) -> Self {
        GraphDoc {
            vertices: g.vertices().to_vec(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub matrix: Vec<[i64; 4]>,
    pub p: i64,
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<ConflictSpec, ModelError> {
        Ok(ConflictSpec::new(ConflictMatrix::new(self.matrix.clone())?, self.p))
    }
}

impl From<&ConflictSpec> for SpecDoc {
    fn from(s: &ConflictSpec) -> Self {
        SpecDoc {
            matrix: s.matrix.rows().to_vec(),
            p: s.p,
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: name.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json { path: name, source })
}

pub fn read_graph(path: &Path) -> Result<OrderedGraph, IoError> {
    Ok(read_json::<GraphDoc>(path)?.to_graph()?)
}

pub fn read_spec(path: &Path) -> Result<ConflictSpec, IoError> {
    Ok(read_json::<SpecDoc>(path)?.to_spec()?)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = OrderedGraph::new(vec![3, 1, 2], vec![(2, 1), (3, 1)]).unwrap();
        let doc = GraphDoc::from(&g);
        assert_eq!(doc.vertices, vec![1, 2, 3]);
        assert_eq!(doc.edges, vec![[1, 2], [1, 3]]);
        let text = serde_json::to_string(&doc).unwrap();
        let back: GraphDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn spec_round_trip_and_validation() {
        let doc: SpecDoc = serde_json::from_str(r#"{"matrix":[[1,0,-1,0]],"p":2}"#).unwrap();
        let s = doc.to_spec().unwrap();
        assert_eq!(SpecDoc::from(&s), doc);
        let empty: SpecDoc = serde_json::from_str(r#"{"matrix":[],"p":0}"#).unwrap();
        assert!(empty.to_spec().is_err());
        assert!(serde_json::from_str::<SpecDoc>(r#"{"matrix":[[1,0,0]],"p":0}"#).is_err());
        assert!(serde_json::from_str::<SpecDoc>(r#"{"matrix":[[1,0,0,0]],"p":0,"x":1}"#).is_err());
    }
}
