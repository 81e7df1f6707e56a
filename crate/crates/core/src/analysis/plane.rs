//! Comparisons between reports and bounds-plane plot data.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{BoundsReport, KStarKind};
use crate::error::Result;

const EPS: f64 = 1e-9;

/// How a generator moved on the (log2 #π, |G|) plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Movement {
    Unchanged,
    /// Same code, smaller space: resizing the output without touching knowledge.
    ScaleChange,
    /// Same scale, different code or K*.
    KnowledgeChange,
    /// Same code, larger space: recombination without new knowledge.
    OatmealChange,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub from: String,
    pub to: String,
    pub delta_code_length: i64,
    pub delta_log2_space: f64,
    pub delta_k_star: i64,
    /// False when one side is exact and the other estimated; the K* delta
    /// is then not meaningful.
    pub k_star_kinds_match: bool,
    pub movement: Movement,
}

/// Deltas are `b - a`.
pub fn compare(a: &BoundsReport, b: &BoundsReport) -> ComparisonRecord {
    let dc = b.code_length as i64 - a.code_length as i64;
    let dl = b.log2_space - a.log2_space;
    let dk = b.k_star as i64 - a.k_star as i64;
    let same_scale = dl.abs() < EPS;
    let movement = match (dc == 0, same_scale) {
        (true, true) if dk == 0 => Movement::Unchanged,
        (true, false) if dl < 0.0 => Movement::ScaleChange,
        (true, false) => Movement::OatmealChange,
        (_, true) => Movement::KnowledgeChange,
        (false, false) => Movement::Mixed,
    };
    ComparisonRecord {
        from: a.label.clone(),
        to: b.label.clone(),
        delta_code_length: dc,
        delta_log2_space: dl,
        delta_k_star: dk,
        k_star_kinds_match: a.k_star_kind == b.k_star_kind,
        movement,
    }
}

/// One CSV row of the bounds plane: x = log2_space, y = code_length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneRow {
    pub label: String,
    pub log2_space: f64,
    pub code_length: usize,
    pub k_star: usize,
    pub k_star_kind: KStarKind,
    pub upper_bound: usize,
    /// Empty on estimate rows.
    pub certified_lower: String,
}

pub fn bounds_plane_points(reports: &[BoundsReport]) -> Vec<PlaneRow> {
    reports
        .iter()
        .map(|r| PlaneRow {
            label: r.label.clone(),
            log2_space: r.log2_space,
            code_length: r.code_length,
            k_star: r.k_star,
            k_star_kind: r.k_star_kind,
            upper_bound: r.upper_bound,
            certified_lower: r.certified_lower.map(|c| c.to_string()).unwrap_or_default(),
        })
        .collect()
}

pub fn write_plane_csv<W: Write>(rows: &[PlaneRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "label",
            "log2_space",
            "code_length",
            "k_star",
            "k_star_kind",
            "upper_bound",
            "certified_lower",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
