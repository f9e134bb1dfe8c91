//! Published reference values, loaded from the versioned data file
//! `data/golden.json`. Every `reproduce` cell cites its provenance string
//! from here.

use crate::error::{Error, Result};
use crate::rat::{parse_rat, Rat};
use serde::Deserialize;
use std::sync::OnceLock;

pub const GOLDEN_JSON: &str = include_str!("../data/golden.json");

#[derive(Debug, Deserialize)]
pub struct Golden {
    pub version: u32,
    pub headline: Headline,
    pub remark3: Remark3,
    #[serde(rename = "tableD")]
    pub table_d: TableD,
    #[serde(rename = "tableE")]
    pub table_e: TableE,
    #[serde(rename = "tableF")]
    pub table_f: TableF,
    #[serde(rename = "tableG")]
    pub table_g: TableG,
}

#[derive(Debug, Deserialize)]
pub struct Headline {
    pub source: String,
    pub upsilon_strict_bound: f64,
    pub upsilon_range_low: f64,
    pub corrections: Vec<(u32, u32)>,
    pub constituents: Vec<Constituent>,
    pub pieces: Pieces,
}

#[derive(Debug, Deserialize)]
pub struct Constituent {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    #[serde(default)]
    pub known_deviation: bool,
    #[serde(default)]
    pub computed_reference: Option<f64>,
}

#[derive(Debug, Deserialize)]
pub struct Pieces {
    #[serde(rename = "R2")]
    pub r2: PieceSet,
    #[serde(rename = "R3")]
    pub r3: PieceSet,
    #[serde(rename = "R4")]
    pub r4: PieceSet,
    #[serde(rename = "R3prime")]
    pub r3prime: PieceSet,
}

#[derive(Debug, Deserialize)]
pub struct PieceSet {
    pub values: Vec<f64>,
    /// true when the published numbers already include the `1/(k-3)!` factor
    pub scaled: bool,
    pub tol: f64,
    #[serde(default)]
    pub known_deviation: bool,
    #[serde(default)]
    pub computed_reference: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
pub struct Remark3 {
    pub source: String,
    pub upsilon: f64,
    pub tol: f64,
    pub strict_below: f64,
}

#[derive(Debug, Deserialize)]
pub struct TableD {
    pub source: String,
    pub corrections_col1: Vec<(u32, u32)>,
    pub corrections_col2: Vec<(u32, u32)>,
    pub rows: Vec<TableDRow>,
    pub tol_bound: f64,
    pub tol_conj: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct TableDRow {
    pub k: usize,
    pub bound: f64,
    pub bound_with41: f64,
    pub conj_f1: f64,
    pub conj_f2: f64,
}

#[derive(Debug, Deserialize)]
pub struct TableE {
    pub source: String,
    pub corrections: Vec<(u32, u32)>,
    pub rows: Vec<TableERow>,
    pub tol: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableERow {
    pub k: usize,
    pub theta: String,
    pub value: f64,
}

#[derive(Debug, Deserialize)]
pub struct TableF {
    pub source: String,
    pub rows: Vec<TableFRow>,
    pub f5_extended12: f64,
    pub tol: f64,
    pub tol_extended12: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct TableFRow {
    pub k: usize,
    pub f1: f64,
    pub f2: f64,
}

#[derive(Debug, Deserialize)]
pub struct TableG {
    pub source: String,
    pub rows: Vec<TableGRow>,
    pub tol_optimizer: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct TableGRow {
    pub k: usize,
    pub value: f64,
}

pub fn golden() -> &'static Golden {
    static CELL: OnceLock<Golden> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(GOLDEN_JSON).expect("golden data parses"))
}

pub const HEADLINE_CORRECTIONS: [(u32, u32); 6] = [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2)];
pub const GEH_CORRECTIONS: [(u32, u32); 5] = [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)];
pub const FLAT_CORRECTIONS: [(u32, u32); 7] =
    [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (3, 3)];

pub const F5_EXTENDED12: f64 = 15.01185;

pub fn table_d_row(k: usize) -> Option<TableDRow> {
    golden().table_d.rows.iter().copied().find(|r| r.k == k)
}

pub fn table_e_row(k: usize) -> Option<(Rat, f64)> {
    golden()
        .table_e
        .rows
        .iter()
        .find(|r| r.k == k)
        .map(|r| (parse_rat(&r.theta).expect("rational theta"), r.value))
}

pub fn table_f_row(k: usize) -> Option<(f64, f64)> {
    golden()
        .table_f
        .rows
        .iter()
        .find(|r| r.k == k)
        .map(|r| (r.f1, r.f2))
}

pub fn table_g_row(k: usize) -> Option<f64> {
    golden().table_g.rows.iter().find(|r| r.k == k).map(|r| r.value)
}

pub fn headline_constituent(name: &str) -> Result<&'static Constituent> {
    golden()
        .headline
        .constituents
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidParams(format!("no golden constituent {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_is_consistent() {
        let g = golden();
        assert_eq!(g.version, 1);
        assert_eq!(g.table_d.rows.len(), 8);
        assert_eq!(g.table_e.rows.len(), 8);
        assert_eq!(g.table_f.rows.len(), 8);
        assert_eq!(g.table_g.rows.len(), 8);
        // piece sums recombine to the published totals
        let h = &g.headline;
        let r2_sum: f64 = h.pieces.r2.values.iter().sum();
        let j21 = headline_constituent("J2,1").unwrap().value;
        assert!((r2_sum / 2.0 - j21).abs() < 1e-9);
        let r3_sum: f64 = h.pieces.r3.values.iter().sum();
        let j31 = headline_constituent("J3,1").unwrap().value;
        assert!((r3_sum / 2.0 - j31).abs() < 1e-9);
        let r4_sum: f64 = h.pieces.r4.values.iter().sum();
        let j41 = headline_constituent("J4,1").unwrap().value;
        assert!((r4_sum - j41).abs() < 1e-9);
        // the published combination itself
        let j = headline_constituent("J").unwrap().value;
        let j0 = headline_constituent("J0").unwrap().value;
        let sum: f64 = ["J1,1", "J2,1", "J3,1", "J4,1", "J2,2", "J3,2"]
            .iter()
            .map(|n| headline_constituent(n).unwrap().value)
            .sum();
        let upsilon = 5.0 * (j0 - 0.25 * sum) / j + 40.0 / 3.0;
        assert!(upsilon < h.upsilon_strict_bound);
        assert!((upsilon - 14.9858).abs() < 1e-4);
    }

    #[test]
    fn table_e_thetas_parse() {
        for k in 3..=10 {
            let (theta, _) = table_e_row(k).unwrap();
            let v = crate::rat::to_f64(&theta);
            assert!((0.3..0.4).contains(&v));
        }
    }
}
