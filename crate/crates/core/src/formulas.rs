//! Closed forms for `A`, `W`, `X_ind` and `X_cli`.
//!
//! Each (matrix family, threshold, quantity) triple has a [`Law`]: identically
//! one, an exact function of `k`, a two-sided bound, or unknown. `A` and `W`
//! evaluate the law; `X_ind` and `X_cli` invert it as `sup { k : law(k) <= a }`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::model::{ConflictMatrix, ConflictSpec};
use crate::transforms::{classify_matrix, MatrixTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(u64),
    #[error("bound must be at least 1, got {0}")]
    BoundTooSmall(u64),
    #[error("value does not fit in 64 bits")]
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    A,
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FormulaValue {
    Exact {
        value: u64,
    },
    Bounds {
        #[serde(with = "ratio_repr")]
        lower: Ratio<i64>,
        #[serde(with = "ratio_repr")]
        upper: Ratio<i64>,
    },
    Infinite,
    Unknown,
}

impl FormulaValue {
    pub fn exact(&self) -> Option<u64> {
        match *self {
            FormulaValue::Exact { value } => Some(value),
            _ => None,
        }
    }

    /// Whether an integer is consistent with this value.
    pub fn admits(&self, x: u64) -> bool {
        match self {
            FormulaValue::Exact { value } => *value == x,
            FormulaValue::Bounds { lower, upper } => {
                let x = Ratio::from_integer(x as i64);
                *lower <= x && x <= *upper
            }
            FormulaValue::Infinite => false,
            FormulaValue::Unknown => true,
        }
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Exact { value } => write!(f, "{value}"),
            FormulaValue::Bounds { lower, upper } => write!(f, "[{lower}, {upper}]"),
            FormulaValue::Infinite => f.write_str("infinite"),
            FormulaValue::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    #[serde(flatten)]
    pub value: FormulaValue,
    pub provenance: String,
}

/// Rationals as JSON integers when integral, otherwise `"num/den"` strings.
mod ratio_repr {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            s.serialize_i64(*r.numer())
        } else {
            s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Ratio::from_integer(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[inline]
fn c2(k: i128) -> i128 {
    k * (k - 1) / 2
}

/// `ceil(a / b)` for `b > 0`.
#[inline]
fn cdiv(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

/// Largest `k` with `k(k-1)/2 <= x`.
pub fn f_largest_k(x: u64) -> Result<u64, FormulaError> {
    if x < 1 {
        return Err(FormulaError::BoundTooSmall(x));
    }
    Ok(f_ext(x))
}

/// `f` extended by `f(0) = 1`, which Table 2 needs at arguments like `w - 1`.
fn f_ext(x: u64) -> u64 {
    if x == 0 {
        return 1;
    }
    let s = (2 * x as u128).isqrt();
    let bump = x as u128 >= s * (s + 1) / 2;
    (s + u128::from(bump)) as u64
}

type IntFn = Box<dyn Fn(i128) -> i128>;
type RatFn = Box<dyn Fn(i128) -> Ratio<i128>>;

/// How a quantity depends on `k`.
enum Law {
    /// Identically 1 for every `k >= 2`.
    One,
    Exact(IntFn),
    Bounds { lower: RatFn, upper: IntFn },
    Unknown,
}

fn exact(f: impl Fn(i128) -> i128 + 'static) -> Law {
    Law::Exact(Box::new(f))
}

fn choose2() -> Law {
    exact(c2)
}

fn row6_w(p: i128) -> Law {
    if p <= 2 {
        return choose2();
    }
    let h = cdiv(p, 2);
    exact(move |k| if k <= h { 1 } else { p % 2 + c2(k - h + 1) })
}

/// Laws for the zero matrix (row 2), the starred rows 3-11, shift (12) and nest (13).
fn table1_law(row: u8, p: i128, q: Quantity) -> Law {
    use Quantity::*;
    match (row, q) {
        (2, A) if p <= 0 => Law::One,
        (2, A) => choose2(),
        (2, W) if p <= 0 => choose2(),
        (2, W) => Law::One,

        (3, A) if p <= 0 => Law::One,
        (3, A) => exact(|k| k - 1),
        (3, W) if p <= 0 => choose2(),
        (3, W) => exact(move |k| cdiv(k - 1, p)),

        (4, A) => Law::One,
        (4, W) if p <= 1 => choose2(),
        (4, W) => exact(move |k| if k <= p { 1 } else { 1 + c2(k - p + 1) }),

        (5, A) if p >= 0 => choose2(),
        (5, A) => {
            let q = -p;
            exact(move |k| if k <= q + 1 { 1 } else { c2(k - q) })
        }
        (5, W) => Law::One,

        (6, A) => Law::One,
        (6, W) => row6_w(p),
        (7, A) => row6_w(1 - p),
        (7, W) => Law::One,

        (8, A) => Law::One,
        (8, W) if p <= 0 => choose2(),
        (8, W) => exact(move |k| cdiv(k - 1, p)),

        (9, A) => Law::One,
        (9, W) if p <= 0 => choose2(),
        (9, W) => exact(move |k| cdiv(2 * k - 3, p)),

        (10, A) if p >= 1 => exact(|k| (k + 1) * (k + 1) / 4 - 1),
        (10, A) => {
            let q = -p;
            exact(move |k| if k <= q + 1 { 1 } else { (k + p) * (k + p) / 4 })
        }
        (10, W) if p >= 1 => exact(move |k| cdiv(k - 1, p + 1)),
        (10, W) => exact(|k| k - 1),

        (11, A) => Law::One,
        (11, W) if p <= 1 => choose2(),
        (11, W) => exact(move |k| if k <= p { 1 } else { c2(k - p + 2) }),

        (12, A) if p >= 1 => exact(|k| k - 1),
        (12, A) => {
            let d = 1 - p;
            Law::Bounds {
                lower: Box::new(move |k| Ratio::new(k, 4 * d)),
                upper: Box::new(move |k| cdiv(k - 1, 2 * d)),
            }
        }
        (12, W) if p >= 1 => exact(move |k| cdiv(k - 1, p)),
        (12, W) => exact(|k| 2 * k - 3),

        // Nest at p is the complement of shift at 1 - p.
        (13, A) => table1_law(12, 1 - p, W),
        (13, W) => table1_law(12, 1 - p, A),

        _ => Law::Unknown,
    }
}

/// Theorem-level rules for a translation-invariant single row.
fn invariant_row_law(m: [i64; 4], p: i128, q: Quantity) -> (Law, &'static str) {
    let [m1, m2, m3, m4] = m.map(i128::from);
    let s = m2 + m4;
    if s >= p.max(0) {
        let law = match q {
            Quantity::A => Law::One,
            Quantity::W => choose2(),
        };
        return (law, "theorem1.i");
    }
    if m1 + m2 == 0 && m3 + m4 == 0 && m2 <= 0 && m4 <= 0 && p > s {
        let law = match q {
            Quantity::A => choose2(),
            Quantity::W => Law::One,
        };
        return (law, "theorem1.ii");
    }
    match q {
        Quantity::A if s > 0 || (s == 0 && m1 != 0 && m2 != 0) => (Law::One, "theorem1.iii"),
        Quantity::W if m2 < 0 && m4 < 0 => (Law::One, "theorem1.iv"),
        _ => (Law::Unknown, "open"),
    }
}

fn law_for(matrix: &ConflictMatrix, p: i64, q: Quantity) -> (Law, String) {
    let class = classify_matrix(matrix);
    let p = i128::from(p);
    match class.tag {
        MatrixTag::NonInvariantPositive | MatrixTag::NonInvariantNegative => {
            (Law::One, "theorem1.non-invariant".into())
        }
        MatrixTag::NonInvariantMixed => match q {
            Quantity::W => (Law::One, "theorem1.non-invariant".into()),
            Quantity::A => (Law::Unknown, "open".into()),
        },
        MatrixTag::Zero | MatrixTag::TableRow { .. } | MatrixTag::NestLike { .. } => {
            let row = class.tag.table_row().expect("tag carries a row");
            (table1_law(row, p, q), format!("table1.row{row}"))
        }
        MatrixTag::GeneralInvariant if matrix.canonical_rows().len() == 1 => {
            let (law, prov) = invariant_row_law(matrix.canonical_rows()[0], p, q);
            (law, prov.into())
        }
        MatrixTag::GeneralInvariant => (Law::Unknown, "open".into()),
    }
}

fn to_u64(x: i128) -> Result<u64, FormulaError> {
    u64::try_from(x).map_err(|_| FormulaError::Overflow)
}

fn to_ratio(r: Ratio<i128>) -> Result<Ratio<i64>, FormulaError> {
    let n = i64::try_from(*r.numer()).map_err(|_| FormulaError::Overflow)?;
    let d = i64::try_from(*r.denom()).map_err(|_| FormulaError::Overflow)?;
    Ok(Ratio::new(n, d))
}

fn evaluate(law: &Law, k: i128) -> Result<FormulaValue, FormulaError> {
    Ok(match law {
        Law::One => FormulaValue::Exact { value: 1 },
        Law::Exact(f) => FormulaValue::Exact { value: to_u64(f(k))? },
        Law::Bounds { lower, upper } => FormulaValue::Bounds {
            lower: to_ratio(lower(k))?,
            upper: Ratio::from_integer(i64::try_from(upper(k)).map_err(|_| FormulaError::Overflow)?),
        },
        Law::Unknown => FormulaValue::Unknown,
    })
}

fn closed_form(spec: &ConflictSpec, k: u64, q: Quantity) -> Result<FormulaResult, FormulaError> {
    if k < 2 {
        return Err(FormulaError::KTooSmall(k));
    }
    let (law, provenance) = law_for(&spec.matrix, spec.p, q);
    Ok(FormulaResult {
        value: evaluate(&law, i128::from(k))?,
        provenance,
    })
}

/// `A(M, p, k)`: minimum independence number of `M_p(G)` over `G` with `chi(G) >= k`.
pub fn closed_form_a(spec: &ConflictSpec, k: u64) -> Result<FormulaResult, FormulaError> {
    closed_form(spec, k, Quantity::A)
}

/// `W(M, p, k)`: minimum clique number of `M_p(G)` over `G` with `chi(G) >= k`.
pub fn closed_form_w(spec: &ConflictSpec, k: u64) -> Result<FormulaResult, FormulaError> {
    closed_form(spec, k, Quantity::W)
}

pub fn closed_form_value(spec: &ConflictSpec, k: u64, q: Quantity) -> Result<FormulaResult, FormulaError> {
    closed_form(spec, k, q)
}

/// Beyond this `k` a finite supremum is reported as overflow.
const K_SEARCH_LIMIT: i128 = 1 << 62;

/// `sup { k >= 2 : g(k) }` for a downward-closed predicate with `g(2)` true.
fn sup_k(g: impl Fn(i128) -> bool) -> Result<i128, FormulaError> {
    if !g(2) {
        // only the edgeless graphs remain
        return Ok(1);
    }
    let mut lo = 2;
    let mut hi = 4;
    while g(hi) {
        lo = hi;
        hi *= 2;
        if hi > K_SEARCH_LIMIT {
            return Err(FormulaError::Overflow);
        }
    }
    // g(lo) holds, g(hi) fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if g(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn invert(law: &Law, bound: u64) -> Result<FormulaValue, FormulaError> {
    let b = i128::from(bound);
    Ok(match law {
        Law::One => FormulaValue::Infinite,
        Law::Exact(f) => FormulaValue::Exact {
            value: to_u64(sup_k(|k| f(k) <= b)?)?,
        },
        Law::Bounds { lower, upper } => {
            // upper(k) <= b forces the quantity below b; lower(k) > b rules it out.
            let lo = sup_k(|k| upper(k) <= b)?;
            let hi = sup_k(|k| lower(k) <= Ratio::from_integer(b))?;
            FormulaValue::Bounds {
                lower: Ratio::from_integer(i64::try_from(lo).map_err(|_| FormulaError::Overflow)?),
                upper: Ratio::from_integer(i64::try_from(hi).map_err(|_| FormulaError::Overflow)?),
            }
        }
        Law::Unknown => FormulaValue::Unknown,
    })
}

fn inverse_provenance(prov: String) -> String {
    match prov.strip_prefix("table1.") {
        Some(rest) => format!("table2.{rest}"),
        None => prov,
    }
}

fn closed_form_x(spec: &ConflictSpec, bound: u64, q: Quantity) -> Result<FormulaResult, FormulaError> {
    if bound < 1 {
        return Err(FormulaError::BoundTooSmall(bound));
    }
    let (law, provenance) = law_for(&spec.matrix, spec.p, q);
    Ok(FormulaResult {
        value: invert(&law, bound)?,
        provenance: inverse_provenance(provenance),
    })
}

/// `X_ind(M, p, a) = sup { k : A(M, p, k) <= a }`.
pub fn closed_form_x_ind(spec: &ConflictSpec, a: u64) -> Result<FormulaResult, FormulaError> {
    closed_form_x(spec, a, Quantity::A)
}

/// `X_cli(M, p, w) = sup { k : W(M, p, k) <= w }`.
pub fn closed_form_x_cli(spec: &ConflictSpec, w: u64) -> Result<FormulaResult, FormulaError> {
    closed_form_x(spec, w, Quantity::W)
}

/// Whether the law of a quantity is identically 1.
pub fn is_identically_one(spec: &ConflictSpec, q: Quantity) -> bool {
    matches!(law_for(&spec.matrix, spec.p, q).0, Law::One)
}

fn ex(v: i128) -> FormulaValue {
    FormulaValue::Exact { value: v as u64 }
}

fn int_bounds(lo: i128, hi: i128) -> FormulaValue {
    FormulaValue::Bounds {
        lower: Ratio::from_integer(lo as i64),
        upper: Ratio::from_integer(hi as i64),
    }
}

/// Table 2 entries for `X_ind`, coded directly (not via inversion).
///
/// Rows as in [`table1_law`]; rows without an entry return `Unknown`.
pub fn table2_x_ind(row: u8, p: i64, a: u64) -> FormulaValue {
    let p = i128::from(p);
    let fa = i128::from(f_ext(a));
    let a = i128::from(a);
    let inf = FormulaValue::Infinite;
    match row {
        2 if p <= 0 => inf,
        2 => ex(fa),
        3 if p <= 0 => inf,
        3 => ex(a + 1),
        4 | 6 | 8 | 9 | 11 => inf,
        5 if p >= 0 => ex(fa),
        5 => ex(fa - p),
        7 if p >= -1 => ex(fa),
        7 => ex(i128::from(f_ext((a - (1 - p) % 2) as u64)) + cdiv(-(p + 1), 2)),
        10 if p <= 0 => ex((4 * a + 3).isqrt() - p),
        10 => ex((4 * a + 7).isqrt() - 1),
        12 if p <= 0 => int_bounds(2 * (1 - p) * a + 1, 4 * (1 - p) * a),
        12 => ex(a + 1),
        13 if p <= 0 => ex((1 - p) * a + 1),
        13 => ex((a + 3) / 2),
        _ => FormulaValue::Unknown,
    }
}

/// Table 2 entries for `X_cli`, coded directly.
pub fn table2_x_cli(row: u8, p: i64, w: u64) -> FormulaValue {
    let p = i128::from(p);
    let f = |x: i128| i128::from(f_ext(x as u64));
    let w = i128::from(w);
    let inf = FormulaValue::Infinite;
    match row {
        2 if p <= 0 => ex(f(w)),
        2 => inf,
        3 if p <= 0 => ex(f(w)),
        3 => ex(p * w + 1),
        4 if p <= 1 => ex(f(w)),
        4 => ex(f(w - 1) + p - 1),
        5 | 7 => inf,
        6 if p <= 2 => ex(f(w)),
        6 => ex(f(w - p % 2) + cdiv(p - 2, 2)),
        8 if p <= 0 => ex(f(w)),
        8 => ex(p * w + 1),
        9 if p <= 0 => ex(f(w)),
        9 => ex((p * w + 3) / 2),
        10 if p <= 0 => ex(w + 1),
        10 => ex((p + 1) * w + 1),
        11 if p <= 1 => ex(f(w)),
        11 => ex(f(w) + p - 2),
        12 if p <= 0 => ex((w + 3) / 2),
        12 => ex(p * w + 1),
        13 if p <= 0 => ex(w + 1),
        13 => int_bounds(2 * p * w + 1, 4 * p * w),
        _ => FormulaValue::Unknown,
    }
}
