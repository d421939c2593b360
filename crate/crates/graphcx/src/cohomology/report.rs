use std::fmt::Write;

use super::SliceComplex;

/// Output style of a slice report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Machine,
}

/// One degree of a slice report.  At the bottom degree of the window the
/// incoming rank is unknown and the cohomology is only an upper bound on
/// the kernel, so `h_dim` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub complex: String,
    pub chi: i64,
    pub degree: i64,
    pub dim: usize,
    pub rank_in: Option<usize>,
    pub rank_out: usize,
    pub h_dim: Option<usize>,
}

impl SliceComplex {
    pub fn rows(&self) -> Vec<ReportRow> {
        self.spaces
            .iter()
            .map(|s| {
                let rank_in = self.rank_in(s.degree);
                let rank_out = self.rank_out(s.degree).expect("in window");
                ReportRow {
                    complex: self.spec.complex.to_string(),
                    chi: self.spec.chi,
                    degree: s.degree,
                    dim: s.dim(),
                    rank_in,
                    rank_out,
                    h_dim: rank_in.map(|r| s.dim() - r - rank_out),
                }
            })
            .collect()
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// The table `complex chi degree dim_C rank_in rank_out h_dim`.  In text
/// form an unknown value prints as `-`; the machine form uses `key=value`
/// fields with `?` for unknown values.
pub fn slice_report(slices: &[SliceComplex], format: ReportFormat) -> String {
    let rows: Vec<ReportRow> = slices.iter().flat_map(|s| s.rows()).collect();
    let mut out = String::new();
    match format {
        ReportFormat::Machine => {
            for r in &rows {
                let q = |x: Option<usize>| x.map_or_else(|| "?".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "slice complex={} chi={} degree={} dim_C={} rank_in={} rank_out={} h_dim={}",
                    r.complex,
                    r.chi,
                    r.degree,
                    r.dim,
                    q(r.rank_in),
                    r.rank_out,
                    q(r.h_dim)
                )
                .expect("string write");
            }
        }
        ReportFormat::Text => {
            let header = ["complex", "chi", "degree", "dim_C", "rank_in", "rank_out", "h_dim"];
            let cells: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    [
                        r.complex.clone(),
                        r.chi.to_string(),
                        r.degree.to_string(),
                        r.dim.to_string(),
                        opt(r.rank_in),
                        r.rank_out.to_string(),
                        opt(r.h_dim),
                    ]
                })
                .collect();
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for c in &cells {
                for (w, x) in width.iter_mut().zip(c) {
                    *w = (*w).max(x.len());
                }
            }
            let line = |fields: Vec<&str>| -> String {
                let parts: Vec<String> = fields.iter().zip(&width).map(|(f, w)| format!("{f:>w$}")).collect();
                parts.join("  ")
            };
            writeln!(out, "{}", line(header.to_vec())).expect("string write");
            for c in &cells {
                writeln!(out, "{}", line(c.iter().map(String::as_str).collect())).expect("string write");
            }
        }
    }
    out
}
