//! Report-producing commands. Each writes one JSON document or a CSV
//! report (sections separated by a blank line) and returns whether every
//! check passed.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use super::config::{check_v0, Format, RunConfig};
use crate::adders::{full_add, rca_resources, AdderVariant, RcaScenario};
use crate::device::DeviceParams;
use crate::engine::{
    choose_v0, divider_voltages, run_program_transient, verify_gate_truth_table, GateKind,
    StepTiming, V0Choice, V0Preset, VoltageWindow,
};
use crate::error::{Error, Result};
use crate::error_analysis::{
    cell_metrics, compare_with_references, rca_metrics, rca_metrics_sampled, ErrorRow, RankedRow,
    MAX_EXHAUSTIVE_WIDTH,
};
use crate::image::{
    evaluate, read_netpbm, run_dataset, write_netpbm, App, AppInputs, DatasetReport, QualityReport,
};
use crate::isa::ResourceReport;
use crate::reference::{reported, CellErrorRow, CellResourceRow, QualityRow};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 1,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Mismatch
        }
    }
}

/// Exit code for a command that failed before producing a report.
pub const EXIT_INVALID: u8 = 2;

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Writes one CSV section; sections after the first are preceded by a
/// blank line.
fn write_csv_section<T: Serialize>(out: &mut dyn Write, first: bool, rows: &[T]) -> Result<()> {
    if !first {
        writeln!(out)?;
    }
    let mut w = csv::Writer::from_writer(&mut *out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn b(v: bool) -> u8 {
    u8::from(v)
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

fn output_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = cfg
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from("felix-out"));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn scenario_list(scenario: Option<u8>) -> Vec<u8> {
    scenario.map_or_else(|| vec![1, 2], |s| vec![s])
}

// ---------------------------------------------------------------- gates

#[derive(Clone, Debug, Default)]
pub struct GatesOpts {
    /// Gates to verify; empty means all five.
    pub gates: Vec<GateKind>,
    /// Drive voltage applied to every selected gate, overriding the preset.
    pub v0: Option<f64>,
}

#[derive(Serialize)]
struct GateRow {
    gate: GateKind,
    v0: f64,
    v0_source: &'static str,
    window_lower: f64,
    window_upper: f64,
    in_window: bool,
    pattern: String,
    node_voltage: f64,
    expected: u8,
    output: u8,
    static_prediction: u8,
    inputs_preserved: bool,
    energy_j: f64,
    pass: bool,
}

#[derive(Serialize)]
struct GateSummary {
    gate: GateKind,
    v0: f64,
    v0_source: &'static str,
    window: VoltageWindow,
    in_window: bool,
    passed: usize,
    total: usize,
    mean_energy_j: f64,
}

#[derive(Serialize)]
struct GatesReport<'a> {
    command: &'static str,
    device: &'a DeviceParams,
    v0_preset: &'static str,
    timing: StepTiming,
    gates: Vec<GateSummary>,
    rows: Vec<GateRow>,
    all_pass: bool,
}

pub fn cmd_gates_verify(cfg: &RunConfig, opts: &GatesOpts, out: &mut dyn Write) -> Result<Status> {
    let gates = if opts.gates.is_empty() {
        GateKind::ALL.to_vec()
    } else {
        opts.gates.clone()
    };
    let preset = match opts.v0 {
        Some(v) => {
            check_v0(v)?;
            V0Preset::Explicit(gates.iter().map(|&g| (g, v)).collect())
        }
        None => cfg.v0_preset.clone(),
    };
    let timing = cfg.timing()?;
    let mut summaries = Vec::new();
    let mut rows = Vec::new();
    for &gate in &gates {
        let choice = choose_v0(gate, &preset, &cfg.device)?;
        let report = verify_gate_truth_table(gate, choice.v0, &cfg.device, timing)?;
        let node: BTreeMap<String, f64> = divider_voltages(gate, choice.v0, &cfg.device)
            .into_iter()
            .map(|(p, v)| (bits(&p), v))
            .collect();
        if cfg.dump_waveforms {
            let dir = output_dir(cfg)?;
            for row in &report.rows {
                if let Some(trace) = &row.trace {
                    let f =
                        fs::File::create(dir.join(format!("wave_{}_{}.csv", gate, row.pattern())))?;
                    trace.write_csv(f)?;
                }
            }
        }
        for row in &report.rows {
            rows.push(GateRow {
                gate,
                v0: choice.v0,
                v0_source: choice.source,
                window_lower: choice.window.lower,
                window_upper: choice.window.upper,
                in_window: choice.in_window(),
                node_voltage: node[&row.pattern()],
                pattern: row.pattern(),
                expected: b(row.expected),
                output: b(row.output),
                static_prediction: b(row.static_prediction),
                inputs_preserved: row.inputs_preserved,
                energy_j: row.energy,
                pass: row.pass(),
            });
        }
        summaries.push(GateSummary {
            gate,
            v0: choice.v0,
            v0_source: choice.source,
            window: choice.window,
            in_window: choice.in_window(),
            passed: report.passed(),
            total: report.rows.len(),
            mean_energy_j: report.mean_energy(),
        });
    }
    let all_pass = summaries.iter().all(|s| s.passed == s.total);
    match cfg.format {
        Format::Json => write_json(
            out,
            &GatesReport {
                command: "gates verify",
                device: &cfg.device,
                v0_preset: preset.name(),
                timing,
                gates: summaries,
                rows,
                all_pass,
            },
        )?,
        Format::Csv => write_csv_section(out, true, &rows)?,
    }
    Ok(Status::from_ok(all_pass))
}

// ---------------------------------------------------------------- adder

#[derive(Serialize)]
struct AdderRow {
    a: u8,
    b: u8,
    cin: u8,
    sum: u8,
    cout: u8,
    exact_sum: u8,
    exact_cout: u8,
    transient_sum: Option<u8>,
    transient_cout: Option<u8>,
    transient_energy_j: Option<f64>,
    agree: Option<bool>,
}

#[derive(Serialize)]
struct TransientSummary {
    status: String,
    v0: Vec<V0Choice>,
    mean_energy_j: Option<f64>,
}

#[derive(Serialize)]
struct AdderReport {
    command: &'static str,
    variant: AdderVariant,
    program: Option<String>,
    truth_table: Vec<AdderRow>,
    metrics: ErrorRow,
    resources: ResourceReport,
    transient: TransientSummary,
    reported_resources: Option<CellResourceRow>,
    reported_error: Option<CellErrorRow>,
}

#[derive(Serialize)]
struct KeyValue {
    key: String,
    value: String,
}

fn kv(key: &str, value: impl ToString) -> KeyValue {
    KeyValue {
        key: key.to_string(),
        value: value.to_string(),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

/// Truth table, transient cross-check, error metrics and resources of one cell.
pub fn cmd_adder(cfg: &RunConfig, variant: AdderVariant, out: &mut dyn Write) -> Result<Status> {
    if !variant.is_executable() {
        return Err(Error::UnsupportedVariant(variant.name().to_string()));
    }
    let prog = variant
        .program()
        .expect("executable variants have a program");
    let timing = cfg.timing()?;
    let transient_gates: Option<Vec<GateKind>> =
        prog.steps.iter().map(|s| GateKind::from_op(s.op)).collect();
    let mut v0 = Vec::new();
    let mut status = "ok".to_string();
    if let Some(gates) = &transient_gates {
        let mut seen: Vec<GateKind> = gates.clone();
        seen.sort();
        seen.dedup();
        for g in seen {
            v0.push(choose_v0(g, &cfg.v0_preset, &cfg.device)?);
        }
    } else {
        status = "skipped: program uses operations without a transient model".into();
    }
    let v0_for = |g: GateKind| v0.iter().find(|c| c.gate == g).map_or(0.0, |c| c.v0);

    let mut rows = Vec::with_capacity(8);
    let mut all_agree = true;
    let mut energies = Vec::new();
    for i in 0u8..8 {
        let (a, bb, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
        let (s, co) = full_add(variant, a, bb, c)?;
        let (es, eco) = full_add(AdderVariant::ExactArithmetic, a, bb, c)?;
        let mut row = AdderRow {
            a: b(a),
            b: b(bb),
            cin: b(c),
            sum: b(s),
            cout: b(co),
            exact_sum: b(es),
            exact_cout: b(eco),
            transient_sum: None,
            transient_cout: None,
            transient_energy_j: None,
            agree: None,
        };
        if transient_gates.is_some() {
            let inputs = [("A", a), ("B", bb), ("Cin", c)];
            match run_program_transient(prog, &inputs, v0_for, &cfg.device, timing) {
                Ok(run) => {
                    let (ts, tc) = (run.outputs["Sum"], run.outputs["Cout"]);
                    row.transient_sum = Some(b(ts));
                    row.transient_cout = Some(b(tc));
                    row.transient_energy_j = Some(run.energy);
                    row.agree = Some(ts == s && tc == co);
                    energies.push(run.energy);
                }
                Err(Error::StepViolation(msg)) => {
                    row.agree = Some(false);
                    status = format!("step violation: {msg}");
                }
                Err(e) => return Err(e),
            }
            all_agree &= row.agree == Some(true);
        }
        rows.push(row);
    }
    if !all_agree && status == "ok" {
        status = "mismatch between transient and functional outputs".into();
    }
    let mean_energy = (energies.len() == 8).then(|| energies.iter().sum::<f64>() / 8.0);
    let metrics = cell_metrics(variant)?.row();
    let resources = prog.resources();
    let rep = reported();
    let lookup = if variant.is_exact() {
        "exact-felix"
    } else {
        variant.name()
    };
    let reported_resources = rep.cell_resources(lookup).cloned();
    let reported_error = match variant {
        AdderVariant::Fafa1 | AdderVariant::Fafa2 => rep.cell_error("FAFA").cloned(),
        _ => None,
    };
    match cfg.format {
        Format::Json => write_json(
            out,
            &AdderReport {
                command: "adder",
                variant,
                program: Some(prog.to_string()),
                truth_table: rows,
                metrics,
                resources,
                transient: TransientSummary {
                    status,
                    v0,
                    mean_energy_j: mean_energy,
                },
                reported_resources,
                reported_error,
            },
        )?,
        Format::Csv => {
            write_csv_section(out, true, &rows)?;
            let summary = vec![
                kv("variant", variant),
                kv("memristors", resources.memristor_count),
                kv("compute_cycles", resources.compute_cycles),
                kv("init_cycles", resources.init_cycles),
                kv("cycles_with_init", resources.cycles_with_init),
                kv("init_policy", resources.init_policy),
                kv("ed_total", metrics.ed_total),
                kv("ed_max", metrics.ed_max),
                kv("er_sum", metrics.er_sum),
                kv("er_cout", opt(metrics.er_cout)),
                kv("med", metrics.med),
                kv("nmed", metrics.nmed),
                kv("transient_status", &status),
                kv("transient_mean_energy_j", opt(mean_energy)),
                kv(
                    "reported_memristors",
                    opt(reported_resources.as_ref().map(|r| r.memristors)),
                ),
                kv(
                    "reported_cycles",
                    opt(reported_resources.as_ref().map(|r| r.cycles)),
                ),
                kv(
                    "reported_energy_uj",
                    opt(reported_resources.as_ref().and_then(|r| r.energy_uj)),
                ),
            ];
            write_csv_section(out, false, &summary)?;
        }
    }
    Ok(Status::from_ok(all_agree))
}

// ---------------------------------------------------------------- rca

#[derive(Clone, Debug)]
pub struct RcaOpts {
    /// Numbered 8-bit scenario; `None` runs both unless `width` is given.
    pub scenario: Option<u8>,
    pub variant: AdderVariant,
    /// Custom adder width with `approx_lsbs` approximate positions.
    pub width: Option<u32>,
    pub approx_lsbs: Option<u32>,
}

impl Default for RcaOpts {
    fn default() -> Self {
        Self {
            scenario: None,
            variant: AdderVariant::Fafa1,
            width: None,
            approx_lsbs: None,
        }
    }
}

#[derive(Serialize)]
struct RcaEntry {
    scenario: String,
    variant: AdderVariant,
    width: u32,
    approx_lsb_count: u32,
    metrics: ErrorRow,
    resources: ResourceReport,
    reported_memristors: Option<u32>,
    reported_cycles: Option<u32>,
    reported_med: Option<f64>,
    reported_nmed: Option<f64>,
    /// Human-readable notes on computed values that differ from reported ones.
    discrepancies: Vec<String>,
    ranking: Vec<RankedRow>,
}

#[derive(Serialize)]
struct RcaCsvRow<'a> {
    scenario: &'a str,
    variant: AdderVariant,
    width: u32,
    approx_lsb_count: u32,
    samples: u64,
    exhaustive: bool,
    med: f64,
    med_exact: &'a str,
    nmed: f64,
    ed_max: u64,
    er: f64,
    memristors: u32,
    cycles_with_init: u32,
    reported_memristors: String,
    reported_cycles: String,
    reported_med: String,
    reported_nmed: String,
    discrepancies: String,
}

#[derive(Serialize)]
struct RankCsvRow<'a> {
    scenario: &'a str,
    rank: usize,
    name: &'a str,
    med: f64,
    nmed: f64,
    source: &'static str,
}

fn rca_scenarios(opts: &RcaOpts) -> Result<Vec<RcaScenario>> {
    if let Some(w) = opts.width {
        let approx = opts.approx_lsbs.unwrap_or(0);
        return Ok(vec![RcaScenario::new(w, approx, opts.variant)?]);
    }
    if opts.approx_lsbs.is_some() {
        return Err(Error::InvalidArgument("--approx-lsbs needs --width".into()));
    }
    scenario_list(opts.scenario)
        .into_iter()
        .map(|id| RcaScenario::numbered(id, opts.variant))
        .collect()
}

/// Error metrics, resources and the published comparison for RCA scenarios.
pub fn cmd_rca(cfg: &RunConfig, opts: &RcaOpts, out: &mut dyn Write) -> Result<Status> {
    let mut entries = Vec::new();
    for s in rca_scenarios(opts)? {
        let metrics = if s.width <= MAX_EXHAUSTIVE_WIDTH {
            rca_metrics(&s)?
        } else {
            let n = cfg.samples.ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{}-bit adder needs `samples` for sampled error analysis",
                    s.width
                ))
            })?;
            rca_metrics_sampled(&s, n, cfg.seed)?
        };
        let resources = rca_resources(&s)?;
        let id = s.number();
        let rep = reported();
        // All-exact adders compare against the exact FELIX row.
        let (res_id, res_name) = if s.approx_lsb_count == 0 {
            (Some(0), "exact-felix")
        } else {
            (id, s.approx_variant.name())
        };
        let rep_res = res_id
            .filter(|_| s.width == 8)
            .and_then(|i| rep.rca_resources(i, res_name));
        let rep_err = id
            .filter(|_| s.approx_lsb_count > 0)
            .and_then(|i| rep.rca_errors(i).find(|r| r.name == "FAFA"));
        let mut discrepancies = Vec::new();
        if let Some(r) = rep_res {
            if r.cycles != resources.cycles_with_init {
                discrepancies.push(format!(
                    "cycles: computed {} vs reported {}",
                    resources.cycles_with_init, r.cycles
                ));
            }
            if r.memristors != resources.memristor_count {
                discrepancies.push(format!(
                    "memristors: computed {} vs reported {}",
                    resources.memristor_count, r.memristors
                ));
            }
        }
        let report_row = metrics.row();
        entries.push(RcaEntry {
            scenario: id.map_or_else(|| s.label(), |i| i.to_string()),
            variant: s.approx_variant,
            width: s.width,
            approx_lsb_count: s.approx_lsb_count,
            ranking: compare_with_references(&metrics, &s),
            metrics: report_row,
            resources,
            reported_memristors: rep_res.map(|r| r.memristors),
            reported_cycles: rep_res.map(|r| r.cycles),
            reported_med: rep_err.map(|r| r.med),
            reported_nmed: rep_err.map(|r| r.nmed),
            discrepancies,
        });
    }
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                scenarios: &'a [RcaEntry],
            }
            write_json(
                out,
                &Doc {
                    command: "rca",
                    scenarios: &entries,
                },
            )?;
        }
        Format::Csv => {
            let rows: Vec<RcaCsvRow> = entries
                .iter()
                .map(|e| RcaCsvRow {
                    scenario: &e.scenario,
                    variant: e.variant,
                    width: e.width,
                    approx_lsb_count: e.approx_lsb_count,
                    samples: e.metrics.sample_count,
                    exhaustive: e.metrics.exhaustive,
                    med: e.metrics.med,
                    med_exact: &e.metrics.med_exact,
                    nmed: e.metrics.nmed,
                    ed_max: e.metrics.ed_max,
                    er: e.metrics.er_sum,
                    memristors: e.resources.memristor_count,
                    cycles_with_init: e.resources.cycles_with_init,
                    reported_memristors: opt(e.reported_memristors),
                    reported_cycles: opt(e.reported_cycles),
                    reported_med: opt(e.reported_med),
                    reported_nmed: opt(e.reported_nmed),
                    discrepancies: e.discrepancies.join("; "),
                })
                .collect();
            write_csv_section(out, true, &rows)?;
            let ranks: Vec<RankCsvRow> = entries
                .iter()
                .flat_map(|e| {
                    e.ranking.iter().enumerate().map(|(i, r)| RankCsvRow {
                        scenario: &e.scenario,
                        rank: i + 1,
                        name: &r.name,
                        med: r.med,
                        nmed: r.nmed,
                        source: r.source,
                    })
                })
                .collect();
            write_csv_section(out, false, &ranks)?;
        }
    }
    Ok(Status::Pass)
}

// ---------------------------------------------------------------- image

#[derive(Clone, Debug)]
pub struct ImageOpts {
    pub app: App,
    pub inputs: Vec<PathBuf>,
    pub scenario: Option<u8>,
    pub variant: AdderVariant,
}

#[derive(Serialize)]
struct ImageEntry {
    #[serde(flatten)]
    quality: QualityReport,
    reported: Option<QualityRow>,
    psnr_above_30: bool,
    mssim_above_0_9: bool,
}

#[derive(Serialize)]
struct ImageCsvRow<'a> {
    app: &'a str,
    scenario: &'a str,
    psnr: String,
    ssim: f64,
    mssim: f64,
    reported_psnr: String,
    reported_ssim: String,
    reported_mssim: String,
}

fn csv_quality<'a>(q: &'a QualityReport, r: Option<&QualityRow>) -> ImageCsvRow<'a> {
    ImageCsvRow {
        app: &q.app,
        scenario: &q.scenario,
        psnr: q.psnr.to_string(),
        ssim: q.ssim,
        mssim: q.mssim,
        reported_psnr: opt(r.map(|r| r.psnr)),
        reported_ssim: opt(r.map(|r| r.ssim)),
        reported_mssim: opt(r.map(|r| r.mssim)),
    }
}

fn display_paths(paths: &[PathBuf]) -> Vec<String> {
    paths.iter().map(|p| p.display().to_string()).collect()
}

/// Runs one application in the selected scenarios and scores approximate
/// against exact output. Writes the output images when `output_dir` is set.
pub fn cmd_image(cfg: &RunConfig, opts: &ImageOpts, out: &mut dyn Write) -> Result<Status> {
    if opts.inputs.len() != opts.app.arity() {
        return Err(Error::InvalidArgument(format!(
            "{} takes {} input image(s), got {}",
            opts.app,
            opts.app.arity(),
            opts.inputs.len()
        )));
    }
    let images = opts
        .inputs
        .iter()
        .map(read_netpbm)
        .collect::<Result<Vec<_>>>()?;
    let inputs = match images.as_slice() {
        [a] => AppInputs::Single(a),
        [a, b] => AppInputs::Pair(a, b),
        _ => unreachable!("arity checked"),
    };
    let mut entries = Vec::new();
    for id in scenario_list(opts.scenario) {
        let s = RcaScenario::numbered(id, opts.variant)?;
        let run = evaluate(opts.app, &inputs, &s)?;
        if let Some(dir) = &cfg.output_dir {
            fs::create_dir_all(dir)?;
            let ext = if run.exact.is_gray() { "pgm" } else { "ppm" };
            write_netpbm(dir.join(format!("{}_exact.{ext}", opts.app)), &run.exact)?;
            write_netpbm(
                dir.join(format!("{}_scenario{id}.{ext}", opts.app)),
                &run.approx,
            )?;
        }
        let q = run.quality;
        entries.push(ImageEntry {
            psnr_above_30: q.psnr.value() > 30.0,
            mssim_above_0_9: q.mssim > 0.9,
            reported: reported().image(opts.app.name(), id).cloned(),
            quality: q,
        });
    }
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                app: App,
                variant: AdderVariant,
                inputs: Vec<String>,
                results: &'a [ImageEntry],
            }
            write_json(
                out,
                &Doc {
                    command: "image",
                    app: opts.app,
                    variant: opts.variant,
                    inputs: display_paths(&opts.inputs),
                    results: &entries,
                },
            )?;
        }
        Format::Csv => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| csv_quality(&e.quality, e.reported.as_ref()))
                .collect();
            write_csv_section(out, true, &rows)?;
        }
    }
    Ok(Status::Pass)
}

// ---------------------------------------------------------------- dataset

#[derive(Clone, Debug)]
pub struct DatasetOpts {
    pub app: App,
    pub dir: PathBuf,
    pub scenario: Option<u8>,
    pub variant: AdderVariant,
}

#[derive(Serialize)]
struct DatasetEntry {
    #[serde(flatten)]
    report: DatasetReport,
    reported_average: Option<QualityRow>,
}

#[derive(Serialize)]
struct DatasetCsvRow<'a> {
    scenario: &'a str,
    inputs: &'a str,
    psnr: String,
    ssim: f64,
    mssim: f64,
    reported_psnr: String,
    reported_ssim: String,
    reported_mssim: String,
}

/// Per-image and averaged quality over a directory of images.
pub fn cmd_dataset(cfg: &RunConfig, opts: &DatasetOpts, out: &mut dyn Write) -> Result<Status> {
    let mut entries = Vec::new();
    for id in scenario_list(opts.scenario) {
        let s = RcaScenario::numbered(id, opts.variant)?;
        entries.push(DatasetEntry {
            report: run_dataset(&opts.dir, opts.app, &s)?,
            reported_average: reported().dataset(opts.app.name(), id).cloned(),
        });
    }
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'static str,
                variant: AdderVariant,
                results: &'a [DatasetEntry],
            }
            write_json(
                out,
                &Doc {
                    command: "dataset",
                    variant: opts.variant,
                    results: &entries,
                },
            )?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for e in &entries {
                let scenario = &e.report.average.scenario;
                for r in &e.report.rows {
                    rows.push(DatasetCsvRow {
                        scenario,
                        inputs: &r.inputs,
                        psnr: r.quality.psnr.to_string(),
                        ssim: r.quality.ssim,
                        mssim: r.quality.mssim,
                        reported_psnr: String::new(),
                        reported_ssim: String::new(),
                        reported_mssim: String::new(),
                    });
                }
                let q = &e.report.average;
                let r = e.reported_average.as_ref();
                rows.push(DatasetCsvRow {
                    scenario,
                    inputs: "average",
                    psnr: q.psnr.to_string(),
                    ssim: q.ssim,
                    mssim: q.mssim,
                    reported_psnr: opt(r.map(|r| r.psnr)),
                    reported_ssim: opt(r.map(|r| r.ssim)),
                    reported_mssim: opt(r.map(|r| r.mssim)),
                });
            }
            write_csv_section(out, true, &rows)?;
        }
    }
    Ok(Status::Pass)
}
