//! Text emitters. Every emitter is a pure function of the bundle; numbers
//! are rounded half-up once, here, and all three formats print the same
//! rounded values.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::{ReportBundle, ReportError};
use crate::footprint::Interval;
use crate::pipeline::ledger_shares;
use crate::rounding::{format_fixed, round_half_up};
use crate::scenario::MetricRanges;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Markdown => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected markdown, csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// Daily operators, energy, CO₂, water and per-document energy.
    Scenario,
    /// Reductions against the baseline plus incremental-cost rows.
    Reduction,
    /// Token ledger composition of the use case.
    Token,
    /// Energy, CO₂ and water of the use-case run.
    UsecaseFootprint,
}

impl Table {
    pub fn file_stem(self) -> &'static str {
        match self {
            Table::Scenario => "scenario_table",
            Table::Reduction => "reduction_table",
            Table::Token => "token_table",
            Table::UsecaseFootprint => "usecase_footprint",
        }
    }
}

struct Metric {
    key: &'static str,
    label: &'static str,
    unit: &'static str,
    decimals: u32,
}

const OPERATORS: Metric = Metric {
    key: "operators",
    label: "Operators",
    unit: "count",
    decimals: 0,
};
const ENERGY: Metric = Metric {
    key: "energy",
    label: "Energy (kWh/day)",
    unit: "kWh/day",
    decimals: 1,
};
const CO2: Metric = Metric {
    key: "co2",
    label: "CO2 (kg/day)",
    unit: "kg/day",
    decimals: 1,
};
const WATER: Metric = Metric {
    key: "water",
    label: "Water (L/day)",
    unit: "L/day",
    decimals: 1,
};
const PER_DOC: Metric = Metric {
    key: "energy_per_doc",
    label: "Energy per Doc (kWh/doc)",
    unit: "kWh/doc",
    decimals: 6,
};

struct Cell {
    metric: &'static Metric,
    lo: f64,
    hi: f64,
}

impl Cell {
    fn new(metric: &'static Metric, iv: Interval) -> Cell {
        Cell {
            metric,
            lo: round_half_up(iv.lo(), metric.decimals),
            hi: round_half_up(iv.hi(), metric.decimals),
        }
    }

    fn text(&self, signed: bool) -> String {
        let f = |x: f64| {
            let s = format_fixed(x, self.metric.decimals);
            if signed && !s.starts_with('-') {
                format!("+{s}")
            } else {
                s
            }
        };
        if self.lo == self.hi {
            f(self.lo)
        } else {
            format!("{} -- {}", f(self.lo), f(self.hi))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn json_text(table: &str, rows: Vec<Value>) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "table": table, "rows": rows })).expect("json");
    s.push('\n');
    s
}

fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
    out.push_str(&line(header));
    out.push_str(&line(&vec!["---".to_string(); header.len()]));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn scenario_cells(bundle: &ReportBundle) -> Vec<(String, Vec<Cell>)> {
    bundle
        .scenarios
        .iter()
        .map(|f| {
            let mut cells = vec![
                Cell::new(&OPERATORS, f.operators),
                Cell::new(&ENERGY, f.energy.as_kwh()),
                Cell::new(&CO2, f.co2.as_kilograms()),
                Cell::new(&WATER, f.water.as_liters()),
            ];
            if f.energy_per_doc_kwh > 0.0 {
                cells.push(Cell::new(&PER_DOC, Interval::point(f.energy_per_doc_kwh)));
            }
            (f.scenario.clone(), cells)
        })
        .collect()
}

fn scenario_table(bundle: &ReportBundle, format: Format) -> Result<String, ReportError> {
    if bundle.scenarios.is_empty() {
        return Err(ReportError::NoScenarios);
    }
    let data = scenario_cells(bundle);
    Ok(match format {
        Format::Markdown => {
            let mut header = vec!["Metric".to_string()];
            header.extend(data.iter().map(|(name, _)| md_escape(name)));
            let rows: Vec<Vec<String>> = [&OPERATORS, &ENERGY, &CO2, &WATER, &PER_DOC]
                .iter()
                .map(|m| {
                    let mut row = vec![m.label.to_string()];
                    row.extend(data.iter().map(|(_, cells)| {
                        cells
                            .iter()
                            .find(|c| c.metric.key == m.key)
                            .map_or_else(|| "N/A".to_string(), |c| c.text(false))
                    }));
                    row
                })
                .collect();
            markdown_table(&header, &rows)
        }
        Format::Csv => {
            let mut out = String::from("scenario,metric,unit,lo,hi\n");
            for (name, cells) in &data {
                for c in cells {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        csv_field(name),
                        c.metric.key,
                        c.metric.unit,
                        format_fixed(c.lo, c.metric.decimals),
                        format_fixed(c.hi, c.metric.decimals)
                    );
                }
            }
            out
        }
        Format::Json => json_text(
            "scenario_table",
            data.iter()
                .flat_map(|(name, cells)| {
                    cells.iter().map(move |c| {
                        json!({"scenario": name, "metric": c.metric.key, "unit": c.metric.unit, "lo": c.lo, "hi": c.hi})
                    })
                })
                .collect(),
        ),
    })
}

const PCT: Metric = Metric {
    key: "pct",
    label: "%",
    unit: "%",
    decimals: 1,
};

struct ChangeRow {
    kind: &'static str,
    reference: String,
    candidate: String,
    cells: [Cell; 3],
}

fn change_cells(r: &MetricRanges) -> [Cell; 3] {
    [
        Cell::new(&PCT, r.energy_pct),
        Cell::new(&PCT, r.co2_pct),
        Cell::new(&PCT, r.water_pct),
    ]
}

fn reduction_table(bundle: &ReportBundle, format: Format) -> Result<String, ReportError> {
    if bundle.scenarios.is_empty() {
        return Err(ReportError::NoScenarios);
    }
    if bundle.comparisons.is_empty() {
        return Err(ReportError::MissingTable("scenario comparisons"));
    }
    let rows: Vec<ChangeRow> = bundle
        .comparisons
        .iter()
        .map(|c| ChangeRow {
            kind: "reduction",
            reference: c.baseline.clone(),
            candidate: c.candidate.clone(),
            cells: change_cells(&c.reduction),
        })
        .chain(bundle.increments.iter().map(|i| ChangeRow {
            kind: "increment",
            reference: i.reference.clone(),
            candidate: i.candidate.clone(),
            cells: change_cells(&i.increase),
        }))
        .collect();
    Ok(match format {
        Format::Markdown => {
            let header = [
                "Scenario",
                "Energy Reduction (%)",
                "CO2 Reduction (%)",
                "Water Reduction (%)",
            ]
            .map(String::from);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let signed = r.kind == "increment";
                    let label = if signed {
                        format!("Incremental Cost: {} vs {} (%)", r.candidate, r.reference)
                    } else {
                        format!("{} vs {}", r.candidate, r.reference)
                    };
                    let mut row = vec![md_escape(&label)];
                    row.extend(r.cells.iter().map(|c| c.text(signed)));
                    row
                })
                .collect();
            markdown_table(&header, &body)
        }
        Format::Csv => {
            let mut out =
                String::from("kind,reference,candidate,energy_lo,energy_hi,co2_lo,co2_hi,water_lo,water_hi\n");
            for r in &rows {
                let _ = write!(
                    out,
                    "{},{},{}",
                    r.kind,
                    csv_field(&r.reference),
                    csv_field(&r.candidate)
                );
                for c in &r.cells {
                    let _ = write!(out, ",{},{}", format_fixed(c.lo, 1), format_fixed(c.hi, 1));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => json_text(
            "reduction_table",
            rows.iter()
                .map(|r| {
                    let [e, c, w] = &r.cells;
                    json!({
                        "kind": r.kind, "reference": r.reference, "candidate": r.candidate,
                        "energy": [e.lo, e.hi], "co2": [c.lo, c.hi], "water": [w.lo, w.hi],
                    })
                })
                .collect(),
        ),
    })
}

fn token_table(bundle: &ReportBundle, format: Format) -> Result<String, ReportError> {
    let usecase = bundle
        .usecase
        .as_ref()
        .ok_or(ReportError::MissingTable("use-case run"))?;
    let ledger = usecase.ledger;
    let shares = ledger_shares(&ledger)?.rounded();
    let rows = [
        ("document", "Proforma Invoice (Input)", ledger.document, shares.document),
        ("prompt", "Extraction Prompt (Input)", ledger.prompt, shares.prompt),
        ("output", "JSON Output (Output)", ledger.output, shares.output),
        (
            "thinking",
            "Thinking/Reasoning (Hidden)",
            ledger.thinking,
            shares.thinking,
        ),
        ("total", "TOTAL", ledger.total(), 100.0),
    ];
    let source = serde_json::to_value(ledger.source).expect("source serializes");
    let source = source.as_str().unwrap_or_default().to_string();
    Ok(match format {
        Format::Markdown => {
            let header = ["Component", "Tokens", "Percent"].map(String::from);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(_, label, n, pct)| vec![label.to_string(), n.to_string(), format!("{}%", format_fixed(*pct, 1))])
                .collect();
            format!("{}\nLedger source: {source}\n", markdown_table(&header, &body))
        }
        Format::Csv => {
            let mut out = String::from("component,tokens,percent,source\n");
            for (key, _, n, pct) in rows {
                let _ = writeln!(out, "{key},{n},{},{source}", format_fixed(pct, 1));
            }
            out
        }
        Format::Json => json_text(
            "token_table",
            rows.iter()
                .map(|(key, _, n, pct)| json!({"component": key, "tokens": n, "percent": pct, "source": source}))
                .collect(),
        ),
    })
}

const UC_ENERGY: Metric = Metric {
    key: "energy",
    label: "Energy (kWh)",
    unit: "kWh",
    decimals: 5,
};
const UC_CO2: Metric = Metric {
    key: "co2",
    label: "CO2 (g)",
    unit: "g",
    decimals: 2,
};
const UC_WATER: Metric = Metric {
    key: "water",
    label: "Water (L)",
    unit: "L",
    decimals: 4,
};

fn usecase_footprint(bundle: &ReportBundle, format: Format) -> Result<String, ReportError> {
    let usecase = bundle
        .usecase
        .as_ref()
        .ok_or(ReportError::MissingTable("use-case run"))?;
    let fp = &usecase.footprint;
    let cells = [
        Cell::new(&UC_ENERGY, fp.energy.as_kwh()),
        Cell::new(&UC_CO2, fp.co2.as_grams()),
        Cell::new(&UC_WATER, fp.water.as_liters()),
    ];
    Ok(match format {
        Format::Markdown => {
            let header = ["Metric", "Value"].map(String::from);
            let body: Vec<Vec<String>> = cells
                .iter()
                .map(|c| vec![c.metric.label.to_string(), c.text(false)])
                .collect();
            markdown_table(&header, &body)
        }
        Format::Csv => {
            let mut out = String::from("metric,unit,lo,hi\n");
            for c in &cells {
                let d = c.metric.decimals;
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    c.metric.key,
                    c.metric.unit,
                    format_fixed(c.lo, d),
                    format_fixed(c.hi, d)
                );
            }
            out
        }
        Format::Json => json_text(
            "usecase_footprint",
            cells
                .iter()
                .map(|c| json!({"metric": c.metric.key, "unit": c.metric.unit, "lo": c.lo, "hi": c.hi}))
                .collect(),
        ),
    })
}

/// Render one table of the bundle.
pub fn emit_table(bundle: &ReportBundle, which: Table, format: Format) -> Result<String, ReportError> {
    match which {
        Table::Scenario => scenario_table(bundle, format),
        Table::Reduction => reduction_table(bundle, format),
        Table::Token => token_table(bundle, format),
        Table::UsecaseFootprint => usecase_footprint(bundle, format),
    }
}

/// One bar of a daily-comparison chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRecord {
    pub scenario: String,
    pub metric: &'static str,
    pub unit: &'static str,
    pub lo: f64,
    pub hi: f64,
    pub mid: f64,
}

/// Energy, CO₂ and water ranges per scenario as JSON series. `lo` and `hi`
/// equal the scenario table's printed values.
pub fn emit_plot_data(bundle: &ReportBundle) -> Result<String, ReportError> {
    if bundle.scenarios.is_empty() {
        return Err(ReportError::NoScenarios);
    }
    let series: Vec<PlotRecord> = scenario_cells(bundle)
        .into_iter()
        .flat_map(|(name, cells)| {
            cells
                .into_iter()
                .filter(|c| matches!(c.metric.key, "energy" | "co2" | "water"))
                .map(move |c| PlotRecord {
                    scenario: name.clone(),
                    metric: c.metric.key,
                    unit: c.metric.unit,
                    lo: c.lo,
                    hi: c.hi,
                    mid: round_half_up((c.lo + c.hi) / 2.0, c.metric.decimals + 1),
                })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json!({ "series": series })).expect("json");
    s.push('\n');
    Ok(s)
}

/// The bundle's deviation records.
pub fn emit_deviations(bundle: &ReportBundle, format: Format) -> String {
    let range = |r: [f64; 2]| {
        if r[0] == r[1] {
            r[0].to_string()
        } else {
            format!("{} -- {}", r[0], r[1])
        }
    };
    match format {
        Format::Markdown => {
            let header = ["Id", "Metric", "Unit", "Reference", "Reproduced", "Note"].map(String::from);
            let body: Vec<Vec<String>> = bundle
                .deviations
                .iter()
                .map(|d| {
                    vec![
                        d.id.to_string(),
                        d.metric.to_string(),
                        d.unit.to_string(),
                        range(d.reference),
                        range(d.reproduced),
                        md_escape(d.note),
                    ]
                })
                .collect();
            markdown_table(&header, &body)
        }
        Format::Csv => {
            let mut out = String::from("id,metric,unit,reference_lo,reference_hi,reproduced_lo,reproduced_hi,note\n");
            for d in &bundle.deviations {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    d.id,
                    d.metric,
                    d.unit,
                    d.reference[0],
                    d.reference[1],
                    d.reproduced[0],
                    d.reproduced[1],
                    csv_field(d.note)
                );
            }
            out
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "deviations": bundle.deviations })).expect("json");
            s.push('\n');
            s
        }
    }
}
