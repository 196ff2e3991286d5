//! Recomputation of the calibration tables against their printed values.
//!
//! Tables I–III report the lag coefficient at the edge of existence, IV–VI the
//! normalized limit coefficients, and VII summary statistics over the
//! robustness calibrations.

use calvo_core::model_core::{preset, ModelParams};
use calvo_core::phillips::{cutoff_lag, limit_coeffs};
use calvo_core::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Printed values carry three decimals.
pub const PRINTED_TOLERANCE: f64 = 1e-3;
/// Tolerance for the recomputed summary statistics of Table VII.
pub const SUMMARY_TOLERANCE: f64 = 2e-3;

pub const COLUMNS: [&str; 5] = ["b0", "b1", "b2", "b3", "b4"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum TableId {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
    #[value(name = "IV")]
    IV,
    #[value(name = "V")]
    V,
    #[value(name = "VI")]
    VI,
    #[value(name = "VII")]
    VII,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::I,
        TableId::II,
        TableId::III,
        TableId::IV,
        TableId::V,
        TableId::VI,
        TableId::VII,
    ];

    pub fn title(self) -> &'static str {
        match self {
            TableId::I => "Lag Cut-Off at Different Frisch Elasticities",
            TableId::II => "Lag Cut-Off at Different Price Rigidities",
            TableId::III => "Lag Cut-Off at Different Output Responses",
            TableId::IV => "Slope Coefficients Varying Frisch Elasticity",
            TableId::V => "Slope Coefficients Varying Price Rigidities",
            TableId::VI => "Slope Coefficients at Greater Output Responses",
            TableId::VII => "Slope Coefficients Robustness",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::VI => "VI",
            TableId::VII => "VII",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub row: String,
    pub column: String,
    pub computed: f64,
    pub printed: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub mismatch: bool,
}

impl Cell {
    pub fn new(row: &str, column: &str, computed: f64, printed: f64, tolerance: f64) -> Self {
        let abs_diff = (computed - printed).abs();
        Cell {
            row: row.to_string(),
            column: column.to_string(),
            computed,
            printed,
            abs_diff,
            tolerance,
            mismatch: !(abs_diff <= tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: TableId,
    pub title: &'static str,
    pub cells: Vec<Cell>,
}

impl Table {
    pub fn mismatches(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.mismatch)
    }

    pub fn cell(&self, row: &str, column: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.row == row && c.column == column)
    }
}

type CutoffRow = (&'static str, &'static str, f64);
type CoeffRow = (&'static str, &'static str, [f64; 5]);

const TABLE_I: [CutoffRow; 3] = [
    ("eta=1", "eta1", 0.647),
    ("eta=2", "eta2", 0.667),
    ("eta=6", "eta6", 0.727),
];
const TABLE_II: [CutoffRow; 2] = [
    ("alpha=0.6", "alpha06", 0.759),
    ("alpha=0.8", "alpha08", 0.593),
];
const TABLE_III: [CutoffRow; 5] = [
    ("a_y=0", "ay0", 0.733),
    ("a_y=1", "ay1", 0.68),
    ("a_y=1.5", "ay15", 0.667),
    ("a_y=2", "ay2", 0.657),
    ("a_y=2.5", "ay25", 0.65),
];
// 0.318 is a printed value, not an approximation of 1/π.
#[allow(clippy::approx_constant)]
const TABLE_IV: [CoeffRow; 3] = [
    ("eta=1", "eta1", [0.588, 0.0, -0.074, 0.353, 0.118]),
    ("eta=2", "eta2", [0.583, 0.0, -0.139, 0.333, 0.167]),
    ("eta=6", "eta6", [0.568, 0.0, -0.341, 0.271, 0.318]),
];
const TABLE_V: [CoeffRow; 2] = [
    (
        "alpha=0.6",
        "alpha06",
        [0.580, -0.036, -0.457, 0.241, 0.357],
    ),
    ("alpha=0.8", "alpha08", [0.551, 0.017, -0.046, 0.406, 0.085]),
];
const TABLE_VI: [CoeffRow; 4] = [
    ("a_y=1", "ay1", [0.58, 0.067, -0.267, 0.32, 0.2]),
    ("a_y=1.5", "ay15", [0.583, 0.111, -0.278, 0.333, 0.167]),
    ("a_y=2", "ay2", [0.586, 0.143, -0.286, 0.343, 0.143]),
    ("a_y=2.5", "ay25", [0.588, 0.167, -0.292, 0.35, 0.125]),
];

/// Printed summary rows of Table VII.
pub const TABLE_VII: [(&str, [f64; 5]); 6] = [
    ("Max", [0.588, 0.167, -0.046, 0.406, 0.085]),
    ("Min", [0.551, -0.137, -0.074, 0.241, 0.357]),
    ("Mean", [0.579, 0.028, -0.242, 0.328, 0.187]),
    ("Std Dev.", [0.011, 0.088, 0.125, 0.045, 0.087]),
    ("Benchmark", [0.575, 0.0, -0.25, 0.3, 0.25]),
    ("Bench Dev.", [0.041, 0.093, 0.125, 0.053, 0.107]),
];

/// The nine robustness calibrations behind Tables IV–VI.
pub const ROBUSTNESS_PRESETS: [&str; 9] = [
    "eta1", "eta2", "eta6", "alpha06", "alpha08", "ay1", "ay15", "ay2", "ay25",
];

/// Normalized limit coefficients `(b0, …, b4)`.
pub fn normalized_limit(p: &ModelParams<f64>) -> Result<[f64; 5]> {
    Ok(limit_coeffs(p)?.normalized().as_array())
}

fn cutoff_table(id: TableId, rows: &[CutoffRow]) -> Result<Table> {
    let cells = rows
        .iter()
        .map(|(label, name, printed)| {
            Ok(Cell::new(
                label,
                "cutoff",
                cutoff_lag(&preset::<f64>(name)?)?,
                *printed,
                PRINTED_TOLERANCE,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        id,
        title: id.title(),
        cells,
    })
}

fn coeff_table(id: TableId, rows: &[CoeffRow]) -> Result<Table> {
    let mut cells = Vec::new();
    for (label, name, printed) in rows {
        let got = normalized_limit(&preset(name)?)?;
        for (j, col) in COLUMNS.iter().enumerate() {
            cells.push(Cell::new(label, col, got[j], printed[j], PRINTED_TOLERANCE));
        }
    }
    Ok(Table {
        id,
        title: id.title(),
        cells,
    })
}

/// Values of each coefficient entering the Table VII statistics.
///
/// `b0, b2, b3, b4` use the nine Table IV–VI calibrations. The output slope is
/// identically zero at `a_y = 1/2`, so `b1` instead uses its nonzero Table V–VI
/// values together with `η ∈ {1,2,6}` at `a_y ∈ {0,1}`.
pub fn robustness_samples() -> Result<[Vec<f64>; 5]> {
    let rows: Vec<[f64; 5]> = ROBUSTNESS_PRESETS
        .iter()
        .map(|n| normalized_limit(&preset(n)?))
        .collect::<Result<_>>()?;
    let mut out: [Vec<f64>; 5] = Default::default();
    for (j, col) in out.iter_mut().enumerate() {
        if j != 1 {
            *col = rows.iter().map(|r| r[j]).collect();
        }
    }
    let mut b1: Vec<f64> = Vec::new();
    for n in ["alpha06", "alpha08", "ay1", "ay15", "ay2", "ay25"] {
        b1.push(normalized_limit(&preset(n)?)?[1]);
    }
    for a_y in [0.0, 1.0] {
        for eta in [1.0, 2.0, 6.0] {
            let mut p = ModelParams::<f64>::benchmark();
            p.eta = eta;
            p.a_y = a_y;
            b1.push(normalized_limit(&p)?[1]);
        }
    }
    out[1] = b1;
    Ok(out)
}

/// `(max, min, mean, population std, RMS deviation from benchmark)` of a sample.
pub fn summary_stats(x: &[f64], bench: f64) -> [f64; 5] {
    let n = x.len() as f64;
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = x.iter().sum::<f64>() / n;
    let std = (x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let dev = (x.iter().map(|v| (v - bench).powi(2)).sum::<f64>() / n).sqrt();
    [max, min, mean, std, dev]
}

fn summary_table() -> Result<Table> {
    let samples = robustness_samples()?;
    let bench = normalized_limit(&ModelParams::benchmark())?;
    let stats: Vec<[f64; 5]> = samples
        .iter()
        .zip(bench)
        .map(|(s, b)| summary_stats(s, b))
        .collect();
    let mut cells = Vec::new();
    for (i, (label, printed)) in TABLE_VII.iter().enumerate() {
        for (j, col) in COLUMNS.iter().enumerate() {
            let (computed, tol) = match i {
                0..=3 => (stats[j][i], SUMMARY_TOLERANCE),
                4 => (bench[j], PRINTED_TOLERANCE),
                _ => (stats[j][4], SUMMARY_TOLERANCE),
            };
            cells.push(Cell::new(label, col, computed, printed[j], tol));
        }
    }
    Ok(Table {
        id: TableId::VII,
        title: TableId::VII.title(),
        cells,
    })
}

pub fn reproduce_table(id: TableId) -> Result<Table> {
    match id {
        TableId::I => cutoff_table(id, &TABLE_I),
        TableId::II => cutoff_table(id, &TABLE_II),
        TableId::III => cutoff_table(id, &TABLE_III),
        TableId::IV => coeff_table(id, &TABLE_IV),
        TableId::V => coeff_table(id, &TABLE_V),
        TableId::VI => coeff_table(id, &TABLE_VI),
        TableId::VII => summary_table(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_oracle() {
        let s = summary_stats(&[1.0, 2.0, 3.0, 4.0], 0.0);
        assert_eq!(s[0], 4.0);
        assert_eq!(s[1], 1.0);
        assert_eq!(s[2], 2.5);
        assert!((s[3] - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((s[4] - 7.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn sample_sizes() {
        let s = robustness_samples().unwrap();
        assert_eq!(
            s.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![9, 12, 9, 9, 9]
        );
    }
}
