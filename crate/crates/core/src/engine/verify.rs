use serde::Serialize;

use super::{
    execute_step, static_prediction, static_window, GateKind, StepSetup, StepTiming, Trace,
    VoltageWindow,
};
use crate::device::{DeviceParams, MemristorCell};
use crate::error::Result;
use crate::isa::patterns;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternOutcome {
    pub inputs: Vec<bool>,
    pub expected: bool,
    pub output: bool,
    pub static_prediction: bool,
    pub inputs_preserved: bool,
    pub energy: f64,
    #[serde(skip)]
    pub trace: Option<Trace>,
}

impl PatternOutcome {
    pub fn pass(&self) -> bool {
        self.output == self.expected && self.inputs_preserved
    }

    pub fn pattern(&self) -> String {
        self.inputs
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub gate: GateKind,
    pub v0: f64,
    pub window: VoltageWindow,
    pub rows: Vec<PatternOutcome>,
}

impl GateReport {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.pass()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.passed() == self.rows.len()
    }

    /// Mean step energy over all input patterns, joules.
    pub fn mean_energy(&self) -> f64 {
        self.rows.iter().map(|r| r.energy).sum::<f64>() / self.rows.len() as f64
    }
}

/// Runs one transient step per input pattern on fresh cells and compares the
/// result to the gate's Boolean function.
pub fn verify_gate_truth_table(
    gate: GateKind,
    v0: f64,
    params: &DeviceParams,
    timing: StepTiming,
) -> Result<GateReport> {
    let n = gate.arity();
    let mut rows = Vec::with_capacity(1 << n);
    for pattern in patterns(n) {
        let mut cells: Vec<MemristorCell> = pattern
            .iter()
            .enumerate()
            .map(|(i, &b)| MemristorCell::with_logic(format!("in{i}"), b, params))
            .collect();
        cells.push(MemristorCell::with_logic("out", true, params));
        let setup = StepSetup {
            gate,
            inputs: (0..n).collect(),
            output: n,
            v0,
            timing,
        };
        let step = execute_step(&mut cells, &setup, params)?;
        rows.push(PatternOutcome {
            expected: gate.op().eval(&pattern)?,
            static_prediction: static_prediction(&pattern, v0, params),
            output: step.output_logic,
            inputs_preserved: step.inputs_preserved,
            energy: step.energy,
            trace: step.trace,
            inputs: pattern,
        });
    }
    Ok(GateReport {
        gate,
        v0,
        window: static_window(gate, params),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DEFAULT_DT;

    fn timing(p: &DeviceParams) -> StepTiming {
        StepTiming::derived(p, DEFAULT_DT).unwrap()
    }

    #[test]
    fn min3_in_window_matches_minority() {
        let p = DeviceParams::default();
        let v0 = static_window(GateKind::Min3, &p).midpoint();
        let r = verify_gate_truth_table(GateKind::Min3, v0, &p, timing(&p)).unwrap();
        assert_eq!(r.passed(), 8);
        for row in &r.rows {
            let ones = row.inputs.iter().filter(|&&b| b).count();
            assert_eq!(row.output, ones < 2, "{}", row.pattern());
        }
    }

    #[test]
    fn not_has_two_rows() {
        let p = DeviceParams::default();
        let v0 = static_window(GateKind::Not1, &p).midpoint();
        let r = verify_gate_truth_table(GateKind::Not1, v0, &p, timing(&p)).unwrap();
        assert_eq!((r.passed(), r.rows.len()), (2, 2));
    }

    #[test]
    fn far_below_window_output_sticks_at_one() {
        let p = DeviceParams::default();
        let r = verify_gate_truth_table(GateKind::Min3, 0.2, &p, timing(&p)).unwrap();
        assert!(r.rows.iter().all(|row| row.output && row.static_prediction));
        assert!(!r.all_pass());
    }

    #[test]
    fn published_not_voltage_disturbs_a_zero_input() {
        let p = DeviceParams::default();
        let r = verify_gate_truth_table(GateKind::Not1, 1.55, &p, timing(&p)).unwrap();
        let zero = &r.rows[0];
        assert!(!zero.inputs_preserved);
        assert!(!zero.pass());
        assert!(r.rows[1].pass());
    }
}
