//! Geography tables of diagnosed assemblies.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::assembly::{diagnose, Assembly, Diagnosis};
use crate::error::Result;
use crate::rational::{self, rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Table,
    Csv,
}

pub const CSV_HEADER: &str = "label,chi,sigma,slack,classification";

/// Label order with digit runs compared numerically (`M_9` < `M_10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, _) => return Ordering::Less,
            (_, None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let i = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let j = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (p, q) = (trim_zeros(&x[..i]), trim_zeros(&y[..j]));
                let ord = p.len().cmp(&q.len()).then_with(|| p.cmp(q));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[k.min(digits.len().saturating_sub(1))..]
}

fn ratio(d: &Diagnosis) -> Option<String> {
    (d.chi != 0).then(|| rational::display(&rat(d.sigma, d.chi)))
}

/// Diagnoses every assembly, then renders them sorted by label.
pub fn emit_report(assemblies: &[Assembly], format: OutputFormat) -> Result<String> {
    let diagnoses = assemblies.iter().map(diagnose).collect::<Result<Vec<_>>>()?;
    Ok(render(diagnoses, format))
}

pub fn render(mut diagnoses: Vec<Diagnosis>, format: OutputFormat) -> String {
    diagnoses.sort_by(|a, b| natural_cmp(&a.label, &b.label));
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for d in &diagnoses {
                let _ = writeln!(out, "{},{},{},{},{}", csv_field(&d.label), d.chi, d.sigma, d.slack, d.classification);
            }
        }
        OutputFormat::Json => {
            let rows: Vec<_> = diagnoses
                .iter()
                .map(|d| {
                    json!({
                        "label": d.label,
                        "chi": d.chi,
                        "sigma": d.sigma,
                        "slack": d.slack,
                        "sigma_over_chi": ratio(d).map(|r| rational::to_json(&rational::parse(&r).expect("own output"))),
                        "classification": d.classification,
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&rows).expect("plain values serialize");
            out.push('\n');
        }
        OutputFormat::Table => {
            let header = ["label", "chi", "sigma", "slack", "sigma/chi", "classification"];
            let rows: Vec<[String; 6]> = diagnoses
                .iter()
                .map(|d| {
                    [
                        d.label.clone(),
                        d.chi.to_string(),
                        d.sigma.to_string(),
                        d.slack.to_string(),
                        if d.chi == 0 { "-".into() } else { format!("{:.6}", d.sigma as f64 / d.chi as f64) },
                        d.classification.to_string(),
                    ]
                })
                .collect();
            out = table(&header, &rows);
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Left-aligned first column, right-aligned numbers, two-space gutters.
pub fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths: [usize; N] = header.map(|h| h.chars().count());
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 || i == N - 1 {
                    format!("{c:<w$}", w = widths[i])
                } else {
                    format!("{c:>w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_m, build_z};

    #[test]
    fn natural_order() {
        let mut v = vec!["M_10", "M_2", "M'_1", "M_1", "Z_2", "a", "M_02"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["M'_1", "M_1", "M_02", "M_2", "M_10", "Z_2", "a"]);
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(emit_report(&[], OutputFormat::Csv).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn m_rows_have_zero_slack() {
        let ms: Vec<_> = (1..=3).map(|m| build_m(m).unwrap()).collect();
        let csv = emit_report(&ms, OutputFormat::Csv).unwrap();
        assert_eq!(
            csv,
            "label,chi,sigma,slack,classification\nM_1,12,4,0,EqualityCertified\nM_2,24,8,0,EqualityCertified\nM_3,36,12,0,EqualityCertified\n"
        );
    }

    #[test]
    fn z_ratio_column() {
        let zs: Vec<_> = (2..=3).map(|n| build_z(n).unwrap()).collect();
        let js: serde_json::Value = serde_json::from_str(&emit_report(&zs, OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(js[0]["sigma_over_chi"], "1/5");
        assert_eq!(js[1]["sigma_over_chi"], "4/15");
        let t = emit_report(&zs, OutputFormat::Table).unwrap();
        assert!(t.lines().nth(1).unwrap().contains("0.200000"));
    }
}
