//! Transient execution of single FELIX gate steps.
//!
//! Every simulated gate shares one topology: the input cells are driven in
//! parallel from `v0` at their top electrodes, their bottom electrodes meet
//! at a common node, and the output cell sits between that node and ground
//! with its top electrode grounded. The output therefore sees the negative
//! node voltage and resets toward `r_off` once the node rises above the
//! device's reset threshold; inputs see `v0 - v_node`.

mod crossbar;
mod verify;
mod window;

pub use crossbar::{run_program_transient, TransientRun};
pub use verify::{verify_gate_truth_table, GateReport, PatternOutcome};
pub use window::{
    choose_v0, divider_voltages, static_prediction, static_window, V0Choice, V0Preset,
    VoltageWindow,
};

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::device::{reset_traversal_time, DeviceParams, MemristorCell};
use crate::error::{Error, Result};
use crate::isa::FunctionalOp;

/// Gates with a transient model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    #[serde(rename = "NOR3")]
    Nor3,
    #[serde(rename = "NAND3")]
    Nand3,
    /// Two-input NAND; `NAND(w, 1)` when the second operand is a cell held at 1.
    #[serde(rename = "NAND2")]
    Nand2,
    #[serde(rename = "MIN3")]
    Min3,
    #[serde(rename = "NOT1")]
    Not1,
}

impl GateKind {
    pub const ALL: [GateKind; 5] = [
        GateKind::Min3,
        GateKind::Nand2,
        GateKind::Nand3,
        GateKind::Not1,
        GateKind::Nor3,
    ];

    pub fn arity(self) -> usize {
        self.op().arity()
    }

    pub fn op(self) -> FunctionalOp {
        match self {
            GateKind::Nor3 => FunctionalOp::Nor3,
            GateKind::Nand3 => FunctionalOp::Nand3,
            GateKind::Nand2 => FunctionalOp::Nand2,
            GateKind::Min3 => FunctionalOp::Min3,
            GateKind::Not1 => FunctionalOp::Not,
        }
    }

    pub fn from_op(op: FunctionalOp) -> Option<Self> {
        GateKind::ALL.into_iter().find(|g| g.op() == op)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Nor3 => "NOR3",
            GateKind::Nand3 => "NAND3",
            GateKind::Nand2 => "NAND2",
            GateKind::Min3 => "MIN3",
            GateKind::Not1 => "NOT1",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_uppercase();
        GateKind::ALL
            .into_iter()
            .find(|g| g.name() == s || (s == "NOT" && *g == GateKind::Not1))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown gate `{s}`")))
    }
}

/// Voltage across a grounded output cell of resistance `r_out` fed through
/// the parallel combination of `input_resistances` from `v0`.
pub fn node_voltage(v0: f64, r_out: f64, input_resistances: &[f64]) -> Result<f64> {
    if input_resistances.is_empty() {
        return Err(Error::InvalidArgument(
            "divider needs at least one input".into(),
        ));
    }
    if r_out <= 0.0 || input_resistances.iter().any(|&r| r <= 0.0) {
        return Err(Error::InvalidArgument(
            "resistances must be positive".into(),
        ));
    }
    let conductance: f64 = input_resistances.iter().map(|r| r.recip()).sum();
    let r_par = conductance.recip();
    Ok(v0 * r_out / (r_out + r_par))
}

/// Multiple of the reset traversal time used as the default pulse width.
pub const PULSE_FACTOR: f64 = 20.0;
pub const DEFAULT_DT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepTiming {
    pub pulse_width: f64,
    pub dt: f64,
    /// Record a waveform sample every `trace_stride` time steps (0 = off).
    pub trace_stride: usize,
}

impl StepTiming {
    /// `PULSE_FACTOR` times the time a written-1 cell needs to cross into 0
    /// under sustained reset drive.
    pub fn derived(params: &DeviceParams, dt: f64) -> Result<Self> {
        let traverse = reset_traversal_time(params, dt)?;
        Ok(Self {
            pulse_width: PULSE_FACTOR * traverse,
            dt,
            trace_stride: 0,
        })
    }

    pub fn with_trace(mut self, stride: usize) -> Self {
        self.trace_stride = stride;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.pulse_width > 0.0 && self.pulse_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "pulse width must be positive, got {}",
                self.pulse_width
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.pulse_width / self.dt).ceil() as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepSetup {
    pub gate: GateKind,
    pub inputs: Vec<usize>,
    pub output: usize,
    pub v0: f64,
    pub timing: StepTiming,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub node_voltage: f64,
    pub x: Vec<f64>,
}

/// Sampled waveform of one step: node voltage and the state of every
/// participating cell (inputs first, output last).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub labels: Vec<String>,
    pub samples: Vec<TraceSample>,
}

impl Trace {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["time".to_string(), "node_voltage".to_string()];
        header.extend(self.labels.iter().map(|l| format!("x_{l}")));
        w.write_record(&header)?;
        for s in &self.samples {
            let mut rec = vec![format!("{:e}", s.t), format!("{}", s.node_voltage)];
            rec.extend(s.x.iter().map(|x| x.to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepResult {
    pub output_logic: bool,
    /// Energy delivered during the pulse, joules.
    pub energy: f64,
    pub inputs_preserved: bool,
    pub trace: Option<Trace>,
}

impl StepResult {
    /// Turns a disturbed-input step into an error.
    pub fn check(self, gate: GateKind, v0: f64) -> Result<Self> {
        if self.inputs_preserved {
            Ok(self)
        } else {
            Err(Error::StepViolation(format!(
                "{gate} at v0={v0:.4} V rewrote an input cell"
            )))
        }
    }
}

/// Applies one `v0` pulse to the cells named in `setup`, integrating every
/// participating cell with explicit Euler.
pub fn execute_step(
    cells: &mut [MemristorCell],
    setup: &StepSetup,
    params: &DeviceParams,
) -> Result<StepResult> {
    setup.timing.validate()?;
    if setup.inputs.len() != setup.gate.arity() {
        return Err(Error::Arity {
            op: setup.gate.name(),
            expected: setup.gate.arity(),
            got: setup.inputs.len(),
        });
    }
    if setup.output >= cells.len() || setup.inputs.iter().any(|&i| i >= cells.len()) {
        return Err(Error::InvalidArgument(
            "step refers to a cell outside the row".into(),
        ));
    }
    if setup.inputs.contains(&setup.output) {
        return Err(Error::InvalidArgument(
            "output cell must differ from every input".into(),
        ));
    }
    if !(setup.v0 > 0.0 && setup.v0.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "v0 must be positive, got {}",
            setup.v0
        )));
    }
    if !cells[setup.output].logic() {
        return Err(Error::InvalidArgument(format!(
            "output cell {} must be initialized to logic 1",
            cells[setup.output].label
        )));
    }

    let before: Vec<bool> = setup.inputs.iter().map(|&i| cells[i].logic()).collect();
    let dt = setup.timing.dt;
    let stride = setup.timing.trace_stride;
    let mut trace = (stride > 0).then(|| Trace {
        labels: setup
            .inputs
            .iter()
            .chain(std::iter::once(&setup.output))
            .map(|&i| cells[i].label.clone())
            .collect(),
        samples: Vec::new(),
    });

    let mut energy = 0.0;
    let mut r_in = vec![0.0; setup.inputs.len()];
    let n = setup.timing.steps();
    for step in 0..n {
        for (r, &i) in r_in.iter_mut().zip(&setup.inputs) {
            *r = cells[i].resistance(params);
        }
        let r_out = cells[setup.output].resistance(params);
        let vn = node_voltage(setup.v0, r_out, &r_in)?;
        let v_input = setup.v0 - vn;

        if let Some(tr) = trace.as_mut() {
            if step % stride == 0 {
                tr.samples.push(TraceSample {
                    t: step as f64 * dt,
                    node_voltage: vn,
                    x: setup
                        .inputs
                        .iter()
                        .chain(std::iter::once(&setup.output))
                        .map(|&i| cells[i].x)
                        .collect(),
                });
            }
        }

        energy += r_in.iter().map(|r| v_input * v_input / r).sum::<f64>() * dt;
        energy += vn * vn / r_out * dt;

        for &i in &setup.inputs {
            cells[i].x = crate::device::integrate_state(cells[i].x, v_input, dt, params)?;
        }
        let o = setup.output;
        cells[o].x = crate::device::integrate_state(cells[o].x, -vn, dt, params)?;
    }

    let inputs_preserved = setup
        .inputs
        .iter()
        .zip(&before)
        .all(|(&i, &b)| cells[i].logic() == b);
    Ok(StepResult {
        output_logic: cells[setup.output].logic(),
        energy,
        inputs_preserved,
        trace,
    })
}
