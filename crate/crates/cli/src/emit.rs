//! Report serialization: json, csv, table, and plotdata.

use companion_core::{rational::sqrt_f64, ConditionReport, KappaSource};
use serde_json::{json, Map, Value};

use crate::analyze::{Analysis, ReportRow};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
    PlotData,
}

impl OutputFormat {
    pub fn from_name(name: &str) -> Result<Self, CliError> {
        match name {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            "plotdata" => Ok(OutputFormat::PlotData),
            other => Err(CliError::Parse(format!(
                "unknown format {:?}; expected json, csv, table, or plotdata",
                other
            ))),
        }
    }
}

/// Serialize an analysis. Exact values are rendered as rational strings
/// ("p/q"); kappa additionally gets a floating-point square-root column.
pub fn emit_report(analysis: &Analysis, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => emit_json(analysis),
        OutputFormat::Csv => emit_csv(analysis),
        OutputFormat::Table => emit_table(analysis),
        OutputFormat::PlotData => emit_plotdata(analysis),
    }
}

fn report_json(report: &ConditionReport) -> Value {
    let mut params = Map::new();
    for (name, value) in &report.params.0 {
        params.insert((*name).to_string(), Value::String(value.to_string()));
    }
    json!({
        "family": report.family.name(),
        "params": Value::Object(params),
        "norm_sq": report.norm_sq.to_string(),
        "inv_norm_sq": report.inv_norm_sq.to_string(),
        "kappa_sq": report.kappa_sq.to_string(),
        "kappa_float": report.kappa_float(),
        "source": report.source.name(),
    })
}

fn emit_json(analysis: &Analysis) -> String {
    let reports: Vec<Value> = analysis
        .rows
        .iter()
        .map(|row| match row {
            ReportRow::Computed(report) => report_json(report),
            ReportRow::Skipped { family, params, reason } => {
                let mut map = Map::new();
                for (name, value) in &params.0 {
                    map.insert((*name).to_string(), Value::String(value.to_string()));
                }
                json!({
                    "family": family.name(),
                    "params": Value::Object(map),
                    "skipped_reason": reason,
                })
            }
        })
        .collect();
    let doc = json!({
        "polynomial": {
            "degree": analysis.polynomial.degree(),
            "order": "ascending",
            "coeffs": analysis
                .polynomial
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        },
        "reports": reports,
        "recommendation": {
            "best": report_json(&analysis.recommendation.best),
            "runners_up": analysis
                .recommendation
                .runners_up
                .iter()
                .map(report_json)
                .collect::<Vec<_>>(),
            "tie_break": analysis.recommendation.tie_break,
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn emit_csv(analysis: &Analysis) -> String {
    let mut out = String::from(
        "family,params,norm_sq,inv_norm_sq,kappa_sq,kappa_float,source,skipped_reason\n",
    );
    for row in &analysis.rows {
        let line = match row {
            ReportRow::Computed(r) => [
                r.family.name().to_string(),
                r.params.to_string(),
                r.norm_sq.to_string(),
                r.inv_norm_sq.to_string(),
                r.kappa_sq.to_string(),
                format!("{}", r.kappa_float()),
                r.source.name().to_string(),
                String::new(),
            ],
            ReportRow::Skipped { family, params, reason } => [
                family.name().to_string(),
                params.to_string(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                reason.clone(),
            ],
        };
        let escaped: Vec<String> = line.iter().map(|f| csv_escape(f)).collect();
        out.push_str(&escaped.join(","));
        out.push('\n');
    }
    out
}

fn emit_table(analysis: &Analysis) -> String {
    let header =
        ["family", "params", "norm_sq", "inv_norm_sq", "kappa_sq", "kappa", "source"];
    let mut grid: Vec<[String; 7]> = Vec::new();
    for row in &analysis.rows {
        grid.push(match row {
            ReportRow::Computed(r) => [
                r.family.name().to_string(),
                r.params.to_string(),
                r.norm_sq.to_string(),
                r.inv_norm_sq.to_string(),
                r.kappa_sq.to_string(),
                format!("{:.6}", r.kappa_float()),
                r.source.name().to_string(),
            ],
            ReportRow::Skipped { family, params, reason } => [
                family.name().to_string(),
                params.to_string(),
                "-".to_string(),
                "-".to_string(),
                "-".to_string(),
                "-".to_string(),
                format!("skipped: {}", reason),
            ],
        });
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &grid {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    out.push_str(&format!("polynomial: {}\n", analysis.polynomial));
    let fmt_row = |cells: &[String]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push_str(&fmt_row(&header.map(String::from)));
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    out.push('\n');
    for row in &grid {
        out.push_str(&fmt_row(row));
        out.push('\n');
    }
    let best = &analysis.recommendation.best;
    out.push_str(&format!(
        "\nrecommendation: {}{} with kappa^2 = {} (kappa = {:.6})\n",
        best.family,
        if best.params.is_empty() {
            String::new()
        } else {
            format!("[{}]", best.params)
        },
        best.kappa_sq,
        best.kappa_float()
    ));
    out.push_str(&format!("tie-break: {}\n", analysis.recommendation.tie_break));
    out
}

fn emit_plotdata(analysis: &Analysis) -> String {
    let mut out = String::from("# columns: label kappa_float\n");
    for row in &analysis.rows {
        if let ReportRow::Computed(r) = row {
            if r.source != KappaSource::Oracle {
                continue;
            }
            let label = if r.params.is_empty() {
                r.family.name().to_string()
            } else {
                format!("{}[{}]", r.family.name(), r.params)
            };
            out.push_str(&format!("{} {}\n", label, sqrt_f64(&r.kappa_sq)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::{analyze, AnalysisRequest};
    use companion_core::{Family, MonicPolynomial};

    fn sample() -> Analysis {
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 3, 8, 5, 2, 6, 8]).unwrap();
        analyze(&AnalysisRequest::new(p, vec![Family::Fiedler, Family::Striped]).unwrap())
            .unwrap()
    }

    #[test]
    fn json_round_trips_exact_values() {
        let analysis = sample();
        let text = emit_report(&analysis, OutputFormat::Json);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["recommendation"]["best"]["kappa_sq"], "14112");
        assert_eq!(doc["recommendation"]["best"]["family"], "striped");
        let coeffs = doc["polynomial"]["coeffs"].as_array().unwrap();
        assert_eq!(coeffs.len(), 9);
        for report in doc["reports"].as_array().unwrap() {
            if report.get("skipped_reason").is_none() {
                let kappa =
                    companion_core::parse_rational(report["kappa_sq"].as_str().unwrap()).unwrap();
                assert!(kappa > companion_core::rat_int(0));
            }
        }
    }

    #[test]
    fn csv_has_one_line_per_row_plus_header() {
        let analysis = sample();
        let text = emit_report(&analysis, OutputFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), analysis.rows.len() + 1);
        assert!(lines[0].starts_with("family,params,"));
        assert!(lines.iter().skip(1).any(|l| l.contains("\"tuple=(3,3,3)\"")));
    }

    #[test]
    fn plotdata_lists_oracle_rows() {
        let analysis = sample();
        let text = emit_report(&analysis, OutputFormat::PlotData);
        let data_lines: Vec<&str> =
            text.lines().filter(|l| !l.starts_with('#')).collect();
        let oracle_rows = analysis
            .rows
            .iter()
            .filter(|row| {
                matches!(row, ReportRow::Computed(r) if r.source == KappaSource::Oracle)
            })
            .count();
        assert_eq!(data_lines.len(), oracle_rows);
        assert!(data_lines.iter().any(|l| l.starts_with("striped[tuple=(3,3,3)]")));
    }

    #[test]
    fn table_mentions_recommendation() {
        let text = emit_report(&sample(), OutputFormat::Table);
        assert!(text.contains("recommendation: striped[tuple=(3,3,3)]"));
    }
}
