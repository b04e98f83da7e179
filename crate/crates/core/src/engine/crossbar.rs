use std::collections::BTreeMap;

use super::{execute_step, GateKind, StepResult, StepSetup, StepTiming};
use crate::device::{DeviceParams, MemristorCell};
use crate::error::{Error, Result};
use crate::isa::MicroProgram;

#[derive(Clone, Debug, PartialEq)]
pub struct TransientRun {
    pub outputs: BTreeMap<String, bool>,
    /// Sum of compute-step energies; initialization writes are not charged.
    pub energy: f64,
    pub steps: Vec<StepResult>,
    pub cells: Vec<MemristorCell>,
}

/// Executes a micro-program on one row of behavioral memristors: inputs and
/// initialization are ideal writes, every compute step is a transient pulse.
///
/// `v0_for` supplies the drive voltage per gate. Fails with a step violation
/// if any pulse rewrites one of its input cells.
pub fn run_program_transient(
    prog: &MicroProgram,
    inputs: &[(&str, bool)],
    v0_for: impl Fn(GateKind) -> f64,
    params: &DeviceParams,
    timing: StepTiming,
) -> Result<TransientRun> {
    prog.validate()?;
    let mut cells: Vec<MemristorCell> = (0..prog.cell_count())
        .map(|c| MemristorCell::with_logic(prog.label(c), false, params))
        .collect();
    for (i, name) in prog.inputs.iter().enumerate() {
        let bit = inputs
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, b)| b)
            .ok_or_else(|| Error::Program(format!("missing input {name}")))?;
        cells[i] = cells[i].clone().set_logic(bit, params);
    }
    let mut init: Vec<_> = prog.init.iter().collect();
    init.sort_by_key(|w| w.cycle);
    for w in init {
        cells[w.cell] = cells[w.cell].clone().set_logic(w.value, params);
    }

    let mut steps = Vec::with_capacity(prog.steps.len());
    let mut energy = 0.0;
    for step in &prog.steps {
        let gate = GateKind::from_op(step.op)
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no transient model", step.op)))?;
        let v0 = v0_for(gate);
        let setup = StepSetup {
            gate,
            inputs: step.inputs.clone(),
            output: step.output,
            v0,
            timing,
        };
        let result = execute_step(&mut cells, &setup, params)?.check(gate, v0)?;
        energy += result.energy;
        steps.push(result);
    }

    let outputs = prog
        .outputs
        .iter()
        .map(|(name, &c)| (name.clone(), cells[c].logic()))
        .collect();
    Ok(TransientRun {
        outputs,
        energy,
        steps,
        cells,
    })
}
