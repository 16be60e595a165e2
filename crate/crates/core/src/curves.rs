//! Curve records and the intersection calculus over a fixed branch locus.
//!
//! Each curve on the surface is described by its geometric genus, its branch
//! multiplicities at the marked points (the number of smooth transversal
//! branches through each point), and a count of extra nodes away from the
//! marked points. From these the whole pairing table is rebuilt:
//!
//! * self-intersection: `C^2 = 1 - g + sum m_i (m_i - 1) + 2 * extra_nodes`,
//! * cross-intersection: `A . B = sum m_{A,i} m_{B,i} + extra_meetings`,
//! * canonical degree of a totally geodesic curve: `K . C = 3g - 3`,
//! * adjunction: `p_a = 1 + (C^2 + K . C) / 2`.
//!
//! All built-in curves are totally geodesic curves on a smooth ball quotient,
//! so genus 0 and 1 records are rejected by the scenario validator: a ball
//! quotient contains no rational or elliptic curves.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rational_from_integer, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("marked point {label:?}: quotient type 1/{n}(1,{a}) is not valid (need n >= 2, 1 <= a < n, gcd(n, a) = 1)")]
    BadQuotientType { label: String, n: i64, a: i64 },
    #[error("curve {label:?}: genus {genus} is negative")]
    NegativeGenus { label: String, genus: i64 },
    #[error("curve {label:?}: negative multiplicity {value}")]
    NegativeMultiplicity { label: String, value: i64 },
    #[error("curve {label:?}: negative extra node count {value}")]
    NegativeNodes { label: String, value: i64 },
    #[error("curve {label:?}: {got} multiplicities for {expected} marked points")]
    MultiplicityCount {
        label: String,
        expected: usize,
        got: usize,
    },
    #[error(
        "curve {label:?} has genus {genus}; a smooth ball quotient carries no curves of genus <= 1"
    )]
    GenusTooSmall { label: String, genus: i64 },
    #[error("duplicate curve label {label:?}")]
    DuplicateCurve { label: String },
}

/// A quotient-singular point marked on the surface below, of cyclic type
/// `1/n (1, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub label: String,
    /// `(n, a)` for the cyclic type `1/n (1, a)`.
    pub quotient_type: (i64, i64),
}

impl MarkedPoint {
    pub fn new(label: impl Into<String>, n: i64, a: i64) -> Result<Self, CurveError> {
        let label = label.into();
        if n < 2 || a < 1 || a >= n || n.gcd(&a) != 1 {
            return Err(CurveError::BadQuotientType { label, n, a });
        }
        Ok(Self {
            label,
            quotient_type: (n, a),
        })
    }
}

/// An irreducible curve described by its smooth model and singularities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    /// Geometric genus of the smooth model.
    pub genus: i64,
    /// Branch multiplicity at each marked point, in marked-point order.
    pub mults: Vec<i64>,
    /// Nodes away from the marked points (each contributes 2 to `C^2`).
    pub extra_nodes: i64,
    /// Whether the cyclic automorphism maps the curve to itself.
    pub sigma_invariant: bool,
}

impl CurveRecord {
    pub fn new(
        label: impl Into<String>,
        genus: i64,
        mults: Vec<i64>,
        extra_nodes: i64,
        sigma_invariant: bool,
    ) -> Result<Self, CurveError> {
        let label = label.into();
        if genus < 0 {
            return Err(CurveError::NegativeGenus { label, genus });
        }
        if let Some(&value) = mults.iter().find(|&&m| m < 0) {
            return Err(CurveError::NegativeMultiplicity { label, value });
        }
        if extra_nodes < 0 {
            return Err(CurveError::NegativeNodes {
                label,
                value: extra_nodes,
            });
        }
        Ok(Self {
            label,
            genus,
            mults,
            extra_nodes,
            sigma_invariant,
        })
    }

    /// Total number of branches through marked points; for a curve invariant
    /// under the cyclic automorphism these are exactly its fixed points.
    pub fn branch_count(&self) -> i64 {
        self.mults.iter().sum()
    }
}

/// `K . C = 3g - 3` for a totally geodesic curve of genus `g` on a ball
/// quotient with the canonical polarization normalized as in the built-in
/// scenario. Genus <= 1 inputs are not meaningful there; the scenario
/// validator rejects them before this is called.
pub fn canonical_degree(record: &CurveRecord) -> i64 {
    3 * record.genus - 3
}

/// `A . B = <mults_A, mults_B> + extra_meetings` for distinct curves meeting
/// transversally away from the marked points in `extra_meetings` points.
pub fn cross_intersection(a: &CurveRecord, b: &CurveRecord, extra_meetings: i64) -> i64 {
    assert_eq!(
        a.mults.len(),
        b.mults.len(),
        "curves indexed over different marked point sets"
    );
    let dot: i64 = a.mults.iter().zip(&b.mults).map(|(x, y)| x * y).sum();
    dot + extra_meetings
}

/// `C^2 = 1 - g + sum m_i (m_i - 1) + 2 * extra_nodes`.
pub fn self_intersection(record: &CurveRecord) -> i64 {
    let node_term: i64 = record.mults.iter().map(|m| m * (m - 1)).sum();
    1 - record.genus + node_term + 2 * record.extra_nodes
}

/// Adjunction: `p_a = 1 + (C^2 + K . C) / 2`, kept exact so non-integral
/// results can be flagged rather than rounded.
pub fn arithmetic_genus(self_intersection: &Rational, canonical_degree: &Rational) -> Rational {
    rational_from_integer(1) + (self_intersection + canonical_degree) / rational_from_integer(2)
}

/// Arithmetic genus from the singularity data itself:
/// `p_a = g + sum m_i (m_i - 1) / 2 + extra_nodes`.
pub fn record_arithmetic_genus(record: &CurveRecord) -> i64 {
    let delta: i64 = record.mults.iter().map(|m| m * (m - 1) / 2).sum();
    record.genus + delta + record.extra_nodes
}

/// Rejects records that cannot live on a smooth ball quotient (genus <= 1)
/// and duplicate labels.
pub fn validate_ball_quotient(records: &[CurveRecord]) -> Result<(), CurveError> {
    for (i, record) in records.iter().enumerate() {
        if record.genus <= 1 {
            return Err(CurveError::GenusTooSmall {
                label: record.label.clone(),
                genus: record.genus,
            });
        }
        if records[..i].iter().any(|r| r.label == record.label) {
            return Err(CurveError::DuplicateCurve {
                label: record.label.clone(),
            });
        }
    }
    Ok(())
}

/// Key for the extra-meeting table: an unordered pair of curve labels.
pub fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// One cell where the rebuilt table disagrees with the expected one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMismatch {
    pub row: String,
    pub col: String,
    pub expected: Rational,
    pub computed: Rational,
}

/// Rebuilds the full pairing table from the records and per-pair extra
/// meeting counts, and lists every cell that disagrees with `expected`
/// (upper triangle, so a symmetric disagreement is reported once).
pub fn verify_table(
    records: &[CurveRecord],
    expected: &RationalMatrix,
    extra_meetings: &BTreeMap<(String, String), i64>,
) -> Result<Vec<TableMismatch>, CurveError> {
    let n = records.len();
    assert!(
        expected.rows() == n && expected.cols() == n,
        "expected table shape does not match record count"
    );
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in i..n {
            let computed = if i == j {
                self_intersection(&records[i])
            } else {
                let key = pair_key(&records[i].label, &records[j].label);
                let extra = extra_meetings.get(&key).copied().unwrap_or(0);
                cross_intersection(&records[i], &records[j], extra)
            };
            let computed = rational_from_integer(computed);
            if &computed != expected.get(i, j) {
                mismatches.push(TableMismatch {
                    row: records[i].label.clone(),
                    col: records[j].label.clone(),
                    expected: expected.get(i, j).clone(),
                    computed,
                });
            }
        }
    }
    Ok(mismatches)
}
