//! Algebraic reductions on conflict matrices and the classification of a
//! matrix into the family whose closed forms apply to it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{nest_matrix, shift_matrix, ConflictMatrix, ConflictSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("complement exchange needs exactly one row, got {0}")]
pub struct NotSingleRow(pub usize);

/// A reduction step that preserves `A` and `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// Columns permuted to (3, 4, 1, 2); the conflict graph is unchanged.
    SwapEdgeRoles,
    /// Columns reversed and negated; conflict graph of `G` maps to that of `-G`.
    ReverseNegate,
}

impl Transform {
    pub fn apply(self, m: &ConflictMatrix) -> ConflictMatrix {
        match self {
            Transform::SwapEdgeRoles => swap_edge_roles(m),
            Transform::ReverseNegate => reverse_negate(m),
        }
    }
}

pub fn is_translation_invariant(m: &ConflictMatrix) -> bool {
    m.row_sums().iter().all(|&s| s == 0)
}

pub fn swap_edge_roles(m: &ConflictMatrix) -> ConflictMatrix {
    map_rows(m, |r| [r[2], r[3], r[0], r[1]])
}

/// `-M̄`.
pub fn reverse_negate(m: &ConflictMatrix) -> ConflictMatrix {
    map_rows(m, |r| [-r[3], -r[2], -r[1], -r[0]])
}

fn map_rows(m: &ConflictMatrix, f: impl Fn(&[i64; 4]) -> [i64; 4]) -> ConflictMatrix {
    ConflictMatrix::new(m.rows().iter().map(f).collect()).expect("row count and range preserved")
}

/// For a single row `M` and threshold `p`, the spec whose conflict graph is
/// the complement of `M_p(G)` on every ordered graph.
pub fn complement_spec(spec: &ConflictSpec) -> Result<ConflictSpec, NotSingleRow> {
    let rows = spec.matrix.rows();
    if rows.len() != 1 {
        return Err(NotSingleRow(rows.len()));
    }
    let [m1, m2, m3, m4] = rows[0];
    let matrix = ConflictMatrix::new(vec![[-m1, -m2, -m3, -m4], [-m3, -m4, -m1, -m2]])
        .expect("negation keeps entries in range");
    Ok(ConflictSpec::new(matrix, 1 - spec.p))
}

/// Shift spec at `1 - p` and nest spec at `p`; their conflict graphs are
/// complements of each other on every ordered graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementPair {
    pub shift: ConflictSpec,
    pub nest: ConflictSpec,
}

pub fn nest_shift_pair(p: i64) -> ComplementPair {
    ComplementPair {
        shift: ConflictSpec::new(shift_matrix(), 1 - p),
        nest: ConflictSpec::new(nest_matrix(), p),
    }
}

/// Coarse family of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum MatrixTag {
    /// Some row sum nonzero, all row sums positive.
    NonInvariantPositive,
    NonInvariantNegative,
    /// Some row sum nonzero but the row sums are not of one strict sign.
    NonInvariantMixed,
    Zero,
    /// One of the translation-invariant sign rows, numbered 3 to 11.
    TableRow { row: u8 },
    /// Shift (12) or nest (13).
    NestLike { row: u8 },
    GeneralInvariant,
}

impl MatrixTag {
    /// Table row number (2 for the zero matrix), if the matrix belongs to one.
    pub fn table_row(&self) -> Option<u8> {
        match *self {
            MatrixTag::Zero => Some(2),
            MatrixTag::TableRow { row } | MatrixTag::NestLike { row } => Some(row),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixClass {
    #[serde(flatten)]
    pub tag: MatrixTag,
    pub representative: Vec<[i64; 4]>,
    pub trace: Vec<Transform>,
}

impl MatrixClass {
    pub fn representative_matrix(&self) -> ConflictMatrix {
        ConflictMatrix::new(self.representative.clone()).expect("representative is valid")
    }

    /// Whether the trace flips left and right (odd number of reverse-negate steps).
    pub fn mirrors(&self) -> bool {
        self.trace
            .iter()
            .filter(|&&t| t == Transform::ReverseNegate)
            .count()
            % 2
            == 1
    }
}

/// Representative single-row matrices of rows 3 to 11.
pub const STARRED_ROWS: [(u8, [i64; 4]); 9] = [
    (3, [1, 0, -1, 0]),
    (4, [-1, 1, 0, 0]),
    (5, [1, -1, 0, 0]),
    (6, [-1, 1, -1, 1]),
    (7, [1, -1, 1, -1]),
    (8, [1, -1, -1, 1]),
    (9, [1, 1, -1, -1]),
    (10, [1, 0, 0, -1]),
    (11, [-1, 0, 0, 1]),
];

/// All 19 translation-invariant single-row sign matrices, in lexicographic order.
pub fn invariant_sign_rows() -> Vec<[i64; 4]> {
    all_sign_rows()
        .into_iter()
        .filter(|r| r.iter().sum::<i64>() == 0)
        .collect()
}

/// All 81 single rows with entries in {-1, 0, 1}.
pub fn all_sign_rows() -> Vec<[i64; 4]> {
    let mut out = Vec::with_capacity(81);
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Traces tried in order: shortest first, then swap before reverse-negate.
const TRACES: [&[Transform]; 4] = [
    &[],
    &[Transform::SwapEdgeRoles],
    &[Transform::ReverseNegate],
    &[Transform::SwapEdgeRoles, Transform::ReverseNegate],
];

pub fn classify_matrix(m: &ConflictMatrix) -> MatrixClass {
    let plain = |tag| MatrixClass {
        tag,
        representative: m.rows().to_vec(),
        trace: Vec::new(),
    };
    let sums = m.row_sums();
    if sums.iter().any(|&s| s != 0) {
        let tag = if sums.iter().all(|&s| s > 0) {
            MatrixTag::NonInvariantPositive
        } else if sums.iter().all(|&s| s < 0) {
            MatrixTag::NonInvariantNegative
        } else {
            MatrixTag::NonInvariantMixed
        };
        return plain(tag);
    }
    if m.rows().iter().flatten().all(|&x| x == 0) {
        return plain(MatrixTag::Zero);
    }
    if !m.is_sign_matrix() {
        return plain(MatrixTag::GeneralInvariant);
    }

    let mut targets: Vec<(MatrixTag, Vec<[i64; 4]>)> = Vec::new();
    match m.canonical_rows().len() {
        1 => {
            for (row, r) in STARRED_ROWS {
                targets.push((MatrixTag::TableRow { row }, vec![r]));
            }
        }
        2 => {
            targets.push((MatrixTag::NestLike { row: 12 }, shift_matrix().canonical_rows()));
            targets.push((MatrixTag::NestLike { row: 13 }, nest_matrix().canonical_rows()));
        }
        _ => {}
    }
    for trace in TRACES {
        let image = trace.iter().fold(m.clone(), |acc, t| t.apply(&acc));
        let canon = image.canonical_rows();
        if let Some((tag, _)) = targets.iter().find(|(_, rows)| *rows == canon) {
            return MatrixClass {
                tag: *tag,
                representative: image.rows().to_vec(),
                trace: trace.to_vec(),
            };
        }
    }
    plain(MatrixTag::GeneralInvariant)
}
