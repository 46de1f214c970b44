//! Parameter curves behind the figures, as CSV tables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::massdomain::{branch_masses, from_alpha, theta_exotic, theta_ordinary, Branch};

pub const DEFAULT_M_MAX: f64 = 125.0;
pub const DEFAULT_POINTS: usize = 500;
/// Upper end of the α axis of fig2.
pub const ALPHA_RANGE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [Self::Fig1, Self::Fig2, Self::Fig3, Self::Fig4];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.csv", self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSeries {
    pub figure_id: FigureId,
    pub columns: Vec<(String, Vec<f64>)>,
    pub m_max: f64,
}

impl FigureSeries {
    fn new(figure_id: FigureId, names: &[&str], m_max: f64) -> Self {
        Self { figure_id, columns: names.iter().map(|n| (n.to_string(), Vec::new())).collect(), m_max }
    }

    fn push_row(&mut self, row: &[f64]) {
        for ((_, col), &v) in self.columns.iter_mut().zip(row) {
            col.push(v);
        }
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            let cells: Vec<String> = self.columns.iter().map(|(_, c)| format_g(c[i], 12)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `%.{digits}g`-style formatting: shortest of fixed and scientific notation
/// at the given significant digits, trailing zeros removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{x:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (precision as i32 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `n` evenly spaced points on `[a, b]` with `extra` inserted, strictly increasing.
fn axis(a: f64, b: f64, n: usize, extra: &[f64]) -> Vec<f64> {
    let n = n.max(2);
    let mut xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    xs[n - 1] = b;
    xs.extend_from_slice(extra);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * (b - a).abs());
    xs
}

fn check_inputs(m_max: f64, points: usize) -> Result<()> {
    if !(m_max > 0.0) || !m_max.is_finite() {
        return Err(Error::InvalidArgument(format!("m_max must be positive, got {m_max}")));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {points}")));
    }
    Ok(())
}

/// `(p1, p5, p0)` on the upper sheet of `p0² − p1² + p5² = M²` over
/// `p1, p5 ∈ [−2M, 2M]`, keeping only real `p0`.
pub fn fig1(m_max: f64, points: usize) -> Result<FigureSeries> {
    check_inputs(m_max, points)?;
    let side = (points / 10).max(2);
    let grid = axis(-2.0 * m_max, 2.0 * m_max, side, &[]);
    let mut s = FigureSeries::new(FigureId::Fig1, &["p1", "p5", "p0"], m_max);
    for &p1 in &grid {
        for &p5 in &grid {
            let p0_sq = m_max * m_max + p1 * p1 - p5 * p5;
            if p0_sq >= 0.0 {
                s.push_row(&[p1, p5, p0_sq.sqrt()]);
            }
        }
    }
    Ok(s)
}

/// `(alpha, m, m1, m2)` over `α ∈ [0, 3]`, including the peak `α = asinh 1`.
pub fn fig2(m_max: f64, points: usize) -> Result<FigureSeries> {
    check_inputs(m_max, points)?;
    let mut s = FigureSeries::new(FigureId::Fig2, &["alpha", "m", "m1", "m2"], m_max);
    for alpha in axis(0.0, ALPHA_RANGE, points, &[1f64.asinh()]) {
        let p = from_alpha(alpha, m_max)?;
        let (m1, m2) = p.selected();
        s.push_row(&[alpha, p.m, m1, m2]);
    }
    Ok(s)
}

/// `(m, m1, m2, m3, m4)` over `m ∈ [0, m_max]`.
pub fn fig3(m_max: f64, points: usize) -> Result<FigureSeries> {
    check_inputs(m_max, points)?;
    let mut s = FigureSeries::new(FigureId::Fig3, &["m", "m1", "m2", "m3", "m4"], m_max);
    for m in axis(0.0, m_max, points, &[]) {
        let p = branch_masses(m, m_max, Branch::Lower)?;
        s.push_row(&[m, p.m1, p.m2, p.m3, p.m4]);
    }
    Ok(s)
}

/// `(theta, m, m1, m2, m3, m4)` over `θ ∈ [0, π/2]`, including `θ = π/4`.
pub fn fig4(m_max: f64, points: usize) -> Result<FigureSeries> {
    check_inputs(m_max, points)?;
    let mut s = FigureSeries::new(FigureId::Fig4, &["theta", "m", "m1", "m2", "m3", "m4"], m_max);
    for theta in axis(0.0, FRAC_PI_2, points, &[FRAC_PI_4]) {
        let (m, m1, m2) = theta_ordinary(theta, m_max)?;
        let (_, m3, m4) = theta_exotic(theta, m_max)?;
        s.push_row(&[theta, m, m1, m2, m3, m4]);
    }
    Ok(s)
}

pub fn figure(id: FigureId, m_max: f64, points: usize) -> Result<FigureSeries> {
    match id {
        FigureId::Fig1 => fig1(m_max, points),
        FigureId::Fig2 => fig2(m_max, points),
        FigureId::Fig3 => fig3(m_max, points),
        FigureId::Fig4 => fig4(m_max, points),
    }
}

/// Writes `fig1.csv` … `fig4.csv` into `dir`, creating it if needed.
pub fn write_figures(dir: &std::path::Path, m_max: f64, points: usize) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for id in FigureId::ALL {
        let series = figure(id, m_max, points).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e))?;
        let path = dir.join(id.file_name());
        std::fs::write(&path, series.to_csv())?;
        written.push(path);
    }
    Ok(written)
}

/// Checks the `FigureSeries` invariants: equal column lengths and a strictly
/// increasing abscissa (lexicographic over the first two columns for fig1).
pub fn series_is_well_formed(s: &FigureSeries) -> bool {
    let n = s.rows();
    if s.columns.iter().any(|(_, c)| c.len() != n) {
        return false;
    }
    let x = &s.columns[0].1;
    match s.figure_id {
        FigureId::Fig1 => {
            let y = &s.columns[1].1;
            (1..n).all(|i| x[i] > x[i - 1] || (x[i] == x[i - 1] && y[i] > y[i - 1]))
        }
        _ => x.windows(2).all(|w| w[1] > w[0]),
    }
}

/// One-line summary, e.g. `fig2 (501 rows: alpha, m, m1, m2)`.
pub fn describe(s: &FigureSeries) -> String {
    let names: Vec<&str> = s.columns.iter().map(|(n, _)| n.as_str()).collect();
    format!("{} ({} rows: {})", s.figure_id.as_str(), s.rows(), names.join(", "))
}
