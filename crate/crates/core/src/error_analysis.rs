//! Error distance metrics for full-adder cells and ripple-carry adders.
//!
//! Counts are kept as integers; MED and ER are exact rationals until they
//! are printed.

use std::thread;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adders::{full_add, rca_add, AdderVariant, RcaScenario};
use crate::error::{Error, Result};
use crate::reference::reported;

/// Widest adder enumerated exhaustively (2^32 operand pairs).
pub const MAX_EXHAUSTIVE_WIDTH: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorReport {
    pub label: String,
    pub sample_count: u64,
    pub ed_total: u64,
    pub ed_max: u64,
    /// Samples whose Sum output (the whole result word for an RCA) is wrong.
    pub sum_errors: u64,
    /// Samples whose carry output is wrong. Cell level only.
    pub cout_errors: Option<u64>,
    /// Largest exact output value: 3 for a cell, `2^(w+1) - 1` for a w-bit RCA.
    pub normalization: u64,
    pub exhaustive: bool,
}

impl ErrorReport {
    fn empty(label: impl Into<String>, normalization: u64, cell: bool, exhaustive: bool) -> Self {
        Self {
            label: label.into(),
            sample_count: 0,
            ed_total: 0,
            ed_max: 0,
            sum_errors: 0,
            cout_errors: cell.then_some(0),
            normalization,
            exhaustive,
        }
    }

    fn record(&mut self, ed: u64, sum_wrong: bool) {
        self.sample_count += 1;
        self.ed_total += ed;
        self.ed_max = self.ed_max.max(ed);
        self.sum_errors += u64::from(sum_wrong);
    }

    /// Combines partial reports over disjoint sample sets.
    pub fn merge(mut self, other: &ErrorReport) -> Self {
        self.sample_count += other.sample_count;
        self.ed_total += other.ed_total;
        self.ed_max = self.ed_max.max(other.ed_max);
        self.sum_errors += other.sum_errors;
        self.cout_errors = match (self.cout_errors, other.cout_errors) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
        self.exhaustive &= other.exhaustive;
        self
    }

    pub fn med_exact(&self) -> Ratio<u64> {
        Ratio::new(self.ed_total, self.sample_count.max(1))
    }

    pub fn nmed_exact(&self) -> Ratio<u64> {
        self.med_exact() / self.normalization
    }

    pub fn med(&self) -> f64 {
        ratio_f64(self.med_exact())
    }

    pub fn nmed(&self) -> f64 {
        ratio_f64(self.nmed_exact())
    }

    pub fn er_sum(&self) -> f64 {
        self.sum_errors as f64 / self.sample_count.max(1) as f64
    }

    pub fn er_cout(&self) -> Option<f64> {
        self.cout_errors
            .map(|c| c as f64 / self.sample_count.max(1) as f64)
    }

    pub fn row(&self) -> ErrorRow {
        ErrorRow {
            label: self.label.clone(),
            sample_count: self.sample_count,
            exhaustive: self.exhaustive,
            ed_total: self.ed_total,
            ed_max: self.ed_max,
            er_sum: self.er_sum(),
            er_cout: self.er_cout(),
            med: self.med(),
            med_exact: self.med_exact().to_string(),
            nmed: self.nmed(),
            normalization: self.normalization,
        }
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Flat, serializable view of an [`ErrorReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorRow {
    pub label: String,
    pub sample_count: u64,
    pub exhaustive: bool,
    pub ed_total: u64,
    pub ed_max: u64,
    pub er_sum: f64,
    pub er_cout: Option<f64>,
    pub med: f64,
    pub med_exact: String,
    pub nmed: f64,
    pub normalization: u64,
}

/// All eight input rows of one cell against the exact full adder.
pub fn cell_metrics(variant: AdderVariant) -> Result<ErrorReport> {
    let mut r = ErrorReport::empty(variant.name(), 3, true, true);
    for bits in 0u8..8 {
        let (a, b, c) = (bits & 4 != 0, bits & 2 != 0, bits & 1 != 0);
        let (s, co) = full_add(variant, a, b, c)?;
        let (es, eco) = full_add(AdderVariant::ExactArithmetic, a, b, c)?;
        let value = u64::from(s) + 2 * u64::from(co);
        let exact = u64::from(es) + 2 * u64::from(eco);
        r.record(value.abs_diff(exact), s != es);
        if co != eco {
            *r.cout_errors.as_mut().expect("cell report") += 1;
        }
    }
    Ok(r)
}

fn normalization(width: u32) -> u64 {
    (1u64 << (width + 1)) - 1
}

fn exact_sum(s: &RcaScenario, a: u64, b: u64) -> u64 {
    a + b + u64::from(s.carry_in)
}

fn accumulate(s: &RcaScenario, r: &mut ErrorReport, a: u64, b: u64) -> Result<()> {
    let approx = rca_add(s, a, b)?;
    let exact = exact_sum(s, a, b);
    r.record(approx.abs_diff(exact), approx != exact);
    Ok(())
}

/// Every operand pair of the scenario, split across threads by `a`.
pub fn rca_metrics(scenario: &RcaScenario) -> Result<ErrorReport> {
    scenario.validate()?;
    if scenario.width > MAX_EXHAUSTIVE_WIDTH {
        return Err(Error::InvalidArgument(format!(
            "{}-bit adder is too wide for exhaustive enumeration (max {MAX_EXHAUSTIVE_WIDTH}); use sampled mode",
            scenario.width
        )));
    }
    let n = 1u64 << scenario.width;
    let workers = thread::available_parallelism()
        .map(|p| p.get() as u64)
        .unwrap_or(1)
        .clamp(1, n);
    let chunk = n.div_ceil(workers);
    let label = scenario.label();
    let norm = normalization(scenario.width);
    let parts: Vec<Result<ErrorReport>> = thread::scope(|sc| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let label = label.clone();
                sc.spawn(move || {
                    let mut r = ErrorReport::empty(label, norm, false, true);
                    for a in (w * chunk)..((w + 1) * chunk).min(n) {
                        for b in 0..n {
                            accumulate(scenario, &mut r, a, b)?;
                        }
                    }
                    Ok(r)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut total = ErrorReport::empty(label, norm, false, true);
    for p in parts {
        total = total.merge(&p?);
    }
    Ok(total)
}

/// Uniformly sampled operand pairs, reproducible from `seed`.
pub fn rca_metrics_sampled(scenario: &RcaScenario, samples: u64, seed: u64) -> Result<ErrorReport> {
    scenario.validate()?;
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = 1u64 << scenario.width;
    let mut r = ErrorReport::empty(
        scenario.label(),
        normalization(scenario.width),
        false,
        false,
    );
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(0..hi), rng.gen_range(0..hi));
        accumulate(scenario, &mut r, a, b)?;
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedRow {
    pub name: String,
    pub med: f64,
    pub nmed: f64,
    /// `computed` or `reported`.
    pub source: &'static str,
}

/// Computed metrics ranked among the published baselines for the same
/// numbered scenario, by NMED then name. Unnumbered scenarios have no
/// baselines.
pub fn compare_with_references(report: &ErrorReport, scenario: &RcaScenario) -> Vec<RankedRow> {
    let mut rows = vec![
        RankedRow {
            name: "exact".into(),
            med: 0.0,
            nmed: 0.0,
            source: "computed",
        },
        RankedRow {
            name: report.label.clone(),
            med: report.med(),
            nmed: report.nmed(),
            source: "computed",
        },
    ];
    if let Some(id) = scenario.number() {
        rows.extend(
            reported()
                .rca_errors(id)
                .filter(|r| r.name != "FAFA")
                .map(|r| RankedRow {
                    name: r.name.clone(),
                    med: r.med,
                    nmed: r.nmed,
                    source: "reported",
                }),
        );
    }
    rows.sort_by(|x, y| x.nmed.total_cmp(&y.nmed).then_with(|| x.name.cmp(&y.name)));
    rows
}
