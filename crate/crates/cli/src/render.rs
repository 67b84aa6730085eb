use std::fmt::Write as _;

use clap::ValueEnum;
use fchd_core::combinatorics::{enumerate_dplus, shifted_half_mu, SignVector};
use fchd_core::invariants::{harmonic_dim, EtaBranch, EtaResult};
use fchd_core::{FchdManifold, SpinStructure};
use serde::Serialize;

use crate::catalog::{prop1_verdict, CatalogEntry, RationalPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
struct EtaJson<'a> {
    n: u32,
    k: u32,
    structure: &'a str,
    eta: RationalPair,
    eta_decimal: f64,
    branch: &'a str,
    multiplicities: &'a [u64],
}

fn branch_tag(b: EtaBranch) -> &'static str {
    match b {
        EtaBranch::OddK => "odd_k",
        EtaBranch::EvenKVanishing => "even_k_vanishing",
    }
}

pub fn render_eta(r: &EtaResult, format: OutputFormat) -> String {
    let m = &r.manifold;
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            writeln!(out, "manifold   {m}").unwrap();
            writeln!(out, "structure  {}", r.structure).unwrap();
            writeln!(out, "branch     {}", r.branch).unwrap();
            if r.branch == EtaBranch::EvenKVanishing {
                writeln!(out, "note       k even").unwrap();
            }
            writeln!(out, "eta        {}", r.value).unwrap();
            writeln!(out, "decimal    {:.12}", r.value.to_f64()).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "{:>4}  {:>6}", "r", "A_r").unwrap();
            for (i, c) in r.table.counts().iter().enumerate() {
                writeln!(out, "{i:>4}  {c:>6}").unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let doc = EtaJson {
                n: m.n(),
                k: m.k(),
                structure: r.structure.as_str(),
                eta: RationalPair::from(&r.value),
                eta_decimal: r.value.to_f64(),
                branch: branch_tag(r.branch),
                multiplicities: r.table.counts(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec![
                "n".to_string(),
                "k".into(),
                "structure".into(),
                "eta".into(),
                "branch".into(),
            ];
            header.extend((0..m.n()).map(|r| format!("A{r}")));
            w.write_record(&header).unwrap();
            let mut row = vec![
                m.n().to_string(),
                m.k().to_string(),
                r.structure.to_string(),
                r.value.to_fraction_string(),
                branch_tag(r.branch).to_string(),
            ];
            row.extend(r.table.counts().iter().map(u64::to_string));
            w.write_record(&row).unwrap();
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

/// Rows of the residue table: `(ε, μ_ε/2 + c(k)n [+ k], r)`.
///
/// Listed lexicographically with `+1` before `-1`, the order the sign
/// vectors are usually written in by hand.
pub fn table_rows(m: &FchdManifold, s: SpinStructure) -> Vec<(SignVector, i64, u32)> {
    let mut rows: Vec<_> = enumerate_dplus(m.k())
        .map(|e| {
            let t = shifted_half_mu(&e, m, s).expect("matching length");
            (e, t, t.rem_euclid(m.n() as i64) as u32)
        })
        .collect();
    rows.sort_by_key(|(e, _, _)| e.signs().iter().map(|&x| -x).collect::<Vec<_>>());
    rows
}

fn shift_label(m: &FchdManifold, s: SpinStructure) -> &'static str {
    match (s, m.delta()) {
        (SpinStructure::Plus, 0) => "mu/2",
        (SpinStructure::Plus, _) => "mu/2+c(k)n",
        (SpinStructure::Minus, _) => "mu/2+c(k)n+k",
    }
}

#[derive(Debug, Serialize)]
struct TableRowJson {
    epsilon: Vec<i8>,
    shifted_half_mu: i64,
    residue: u32,
}

pub fn render_table(m: &FchdManifold, s: SpinStructure, format: OutputFormat) -> String {
    let rows = table_rows(m, s);
    let label = shift_label(m, s);
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "# n = {}, k = {}, {}: r = {} mod {}",
                m.n(),
                m.k(),
                s,
                label,
                m.n()
            )
            .unwrap();
            let eps_width = rows
                .iter()
                .map(|(e, _, _)| e.to_string().len())
                .max()
                .unwrap_or(3)
                .max(3);
            let mid_width = label.len().max(4);
            writeln!(
                out,
                "{:<eps_width$}  {:>mid_width$}  {:>3}",
                "eps", label, "r"
            )
            .unwrap();
            for (e, t, r) in &rows {
                writeln!(
                    out,
                    "{:<eps_width$}  {:>mid_width$}  {:>3}",
                    e.to_string(),
                    t,
                    r
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let doc: Vec<TableRowJson> = rows
                .iter()
                .map(|(e, t, r)| TableRowJson {
                    epsilon: e.signs(),
                    shifted_half_mu: *t,
                    residue: *r,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["epsilon", label, "r"]).unwrap();
            for (e, t, r) in &rows {
                w.write_record([e.to_string(), t.to_string(), r.to_string()])
                    .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

#[derive(Debug, Serialize)]
struct HarmonicJson<'a> {
    n: u32,
    k: u32,
    structure: &'a str,
    harmonic_dim: u64,
    verdict: &'a str,
}

pub fn render_harmonic(
    m: &FchdManifold,
    structures: &[SpinStructure],
    format: OutputFormat,
) -> String {
    let rows: Vec<(SpinStructure, u64, &str, &str)> = structures
        .iter()
        .map(|&s| {
            let d = harmonic_dim(m, s);
            let (key, verdict) = prop1_verdict(m, s, d);
            (s, d, key, verdict)
        })
        .collect();
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for (s, d, key, verdict) in rows {
                writeln!(out, "harmonic_dim({m}, {s}) = {d}    [{key}: {verdict}]").unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let doc: Vec<HarmonicJson> = rows
                .iter()
                .map(|(s, d, _, v)| HarmonicJson {
                    n: m.n(),
                    k: m.k(),
                    structure: s.as_str(),
                    harmonic_dim: *d,
                    verdict: v,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "structure", "harmonic_dim", "verdict"])
                .unwrap();
            for (s, d, _, v) in rows {
                w.write_record([
                    m.n().to_string(),
                    m.k().to_string(),
                    s.to_string(),
                    d.to_string(),
                    v.to_string(),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
    }
}

pub fn catalog_json(entries: &[CatalogEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("serializable");
    s.push('\n');
    s
}

/// Check columns in a fixed order; `oracle_agreement` only when some entry has it.
fn check_columns(entries: &[CatalogEntry]) -> Vec<&'static str> {
    let mut cols = vec!["corollary1", "corollary2", "prop1a", "prop1b"];
    if entries
        .iter()
        .any(|e| e.checks.contains_key("oracle_agreement"))
    {
        cols.push("oracle_agreement");
    }
    cols
}

/// `n,k,structure,eta,harmonic_dim,A0,...` with the `A` columns padded to the
/// largest `n` in the sweep, then the check verdicts.
pub fn catalog_csv(entries: &[CatalogEntry]) -> String {
    let max_n = entries.iter().map(|e| e.n).max().unwrap_or(0) as usize;
    let checks = check_columns(entries);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["n", "k", "structure", "eta", "harmonic_dim"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..max_n).map(|r| format!("A{r}")));
    header.extend(checks.iter().map(|s| s.to_string()));
    w.write_record(&header).unwrap();
    for e in entries {
        let mut row = vec![
            e.n.to_string(),
            e.k.to_string(),
            e.structure.clone(),
            format!("{}/{}", e.eta.numerator, e.eta.denominator),
            e.harmonic_dim.to_string(),
        ];
        row.extend((0..max_n).map(|r| {
            e.multiplicities
                .get(r)
                .map(u64::to_string)
                .unwrap_or_default()
        }));
        row.extend(
            checks
                .iter()
                .map(|c| e.checks.get(*c).cloned().unwrap_or_default()),
        );
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_table_order_and_values() {
        let m = FchdManifold::new(3).unwrap();
        let rows: Vec<(String, i64, u32)> = table_rows(&m, SpinStructure::Plus)
            .into_iter()
            .map(|(e, t, r)| (e.to_string(), t, r))
            .collect();
        assert_eq!(
            rows,
            vec![
                ("(1,1,1)".to_string(), 3, 3),
                ("(1,-1,-1)".to_string(), -2, 5),
                ("(-1,1,-1)".to_string(), -1, 6),
                ("(-1,-1,1)".to_string(), 0, 0),
            ]
        );
    }

    #[test]
    fn n3_table_single_row() {
        let m = FchdManifold::new(1).unwrap();
        let rows = table_rows(&m, SpinStructure::Plus);
        assert_eq!(rows.len(), 1);
        assert_eq!(
            (rows[0].0.to_string(), rows[0].1, rows[0].2),
            ("(1)".to_string(), 2, 2)
        );
    }

    #[test]
    fn n9_table_has_eight_rows() {
        let m = FchdManifold::new(4).unwrap();
        assert_eq!(table_rows(&m, SpinStructure::Plus).len(), 8);
    }

    #[test]
    fn csv_pads_short_rows() {
        let entries = crate::catalog::sweep(1, 2, &[SpinStructure::Plus], false);
        let csv = catalog_csv(&entries);
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("n,k,structure,eta,harmonic_dim,A0,A1,A2,A3,A4,corollary1"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("3,1,plus,-2/3,0,0,0,2,,,"), "{first}");
    }
}
