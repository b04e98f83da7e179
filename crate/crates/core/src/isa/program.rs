use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FunctionalOp, InitPolicy, ResourceReport};
use crate::error::{Error, Result};

/// Index into a program's cell list: input cells first, then work cells.
pub type CellId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitWrite {
    pub cell: CellId,
    pub value: bool,
    /// Initialization cycle this write belongs to. Writes sharing a cycle
    /// happen in parallel.
    pub cycle: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeStep {
    pub op: FunctionalOp,
    pub inputs: Vec<CellId>,
    pub output: CellId,
}

/// A straight-line FELIX program over one row of memristors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MicroProgram {
    pub name: String,
    pub inputs: Vec<String>,
    pub work: Vec<String>,
    pub init: Vec<InitWrite>,
    pub steps: Vec<ComputeStep>,
    pub outputs: BTreeMap<String, CellId>,
    /// How this program's initialization composes when it is one cell in a
    /// larger structure.
    pub init_policy: InitPolicy,
}

impl MicroProgram {
    pub fn cell_count(&self) -> usize {
        self.inputs.len() + self.work.len()
    }

    pub fn work_cell_count(&self) -> usize {
        self.work.len()
    }

    pub fn label(&self, cell: CellId) -> &str {
        if cell < self.inputs.len() {
            &self.inputs[cell]
        } else {
            &self.work[cell - self.inputs.len()]
        }
    }

    pub fn cell_id(&self, label: &str) -> Option<CellId> {
        self.inputs
            .iter()
            .chain(self.work.iter())
            .position(|l| l == label)
    }

    pub fn is_input(&self, cell: CellId) -> bool {
        cell < self.inputs.len()
    }

    pub fn compute_cycles(&self) -> u32 {
        self.steps.iter().map(|s| s.op.cycles()).sum()
    }

    pub fn init_cycles(&self) -> u32 {
        self.init
            .iter()
            .map(|w| w.cycle)
            .collect::<BTreeSet<_>>()
            .len() as u32
    }

    pub fn resources(&self) -> ResourceReport {
        let compute = self.compute_cycles();
        let init = self.init_cycles();
        ResourceReport {
            memristor_count: self.cell_count() as u32,
            compute_cycles: compute,
            init_cycles: init,
            cycles_with_init: compute + init,
            init_policy: self.init_policy,
        }
    }

    /// Static well-formedness: operand arity, cell ranges, outputs never
    /// overwrite inputs, every read is of an input, an initialized cell or
    /// an earlier result, and every written cell was initialized first.
    pub fn validate(&self) -> Result<()> {
        let n = self.cell_count();
        let mut defined: Vec<bool> = (0..n).map(|c| self.is_input(c)).collect();
        let mut initialized = vec![false; n];
        for w in &self.init {
            if w.cell >= n {
                return Err(Error::Program(format!(
                    "init refers to missing cell {}",
                    w.cell
                )));
            }
            if self.is_input(w.cell) {
                return Err(Error::Program(format!(
                    "init overwrites input cell {}",
                    self.label(w.cell)
                )));
            }
            defined[w.cell] = true;
            initialized[w.cell] = true;
        }
        for (i, step) in self.steps.iter().enumerate() {
            if step.inputs.len() != step.op.arity() {
                return Err(Error::Arity {
                    op: step.op.mnemonic(),
                    expected: step.op.arity(),
                    got: step.inputs.len(),
                });
            }
            if step.output >= n || step.inputs.iter().any(|&c| c >= n) {
                return Err(Error::Program(format!("step {i} refers to a missing cell")));
            }
            if self.is_input(step.output) {
                return Err(Error::Program(format!(
                    "step {i} writes input cell {}",
                    self.label(step.output)
                )));
            }
            if step.inputs.contains(&step.output) {
                return Err(Error::Program(format!("step {i} reads its own output")));
            }
            if let Some(&c) = step.inputs.iter().find(|&&c| !defined[c]) {
                return Err(Error::Program(format!(
                    "step {i} reads {} before it is initialized",
                    self.label(c)
                )));
            }
            if !initialized[step.output] {
                return Err(Error::Program(format!(
                    "step {i} writes {} which was never initialized",
                    self.label(step.output)
                )));
            }
            defined[step.output] = true;
        }
        for (name, &c) in &self.outputs {
            if c >= n {
                return Err(Error::Program(format!(
                    "output {name} refers to a missing cell"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramRun {
    pub outputs: BTreeMap<String, bool>,
    pub resources: ResourceReport,
    /// Input cell values after the last step, in declaration order.
    pub inputs_after: Vec<bool>,
}

/// Executes `prog` on a fresh cell store.
pub fn run_program(prog: &MicroProgram, inputs: &[(&str, bool)]) -> Result<ProgramRun> {
    let mut cells: Vec<Option<bool>> = vec![None; prog.cell_count()];
    for (i, name) in prog.inputs.iter().enumerate() {
        let bit = inputs
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, b)| b)
            .ok_or_else(|| Error::Program(format!("missing input {name}")))?;
        cells[i] = Some(bit);
    }
    let mut order: Vec<&InitWrite> = prog.init.iter().collect();
    order.sort_by_key(|w| w.cycle);
    for w in order {
        if w.cell >= cells.len() || prog.is_input(w.cell) {
            return Err(Error::Program(format!("invalid init target {}", w.cell)));
        }
        cells[w.cell] = Some(w.value);
    }
    let mut operands = Vec::with_capacity(3);
    for (i, step) in prog.steps.iter().enumerate() {
        if prog.is_input(step.output) || step.output >= cells.len() {
            return Err(Error::Program(format!(
                "step {i} has an invalid output cell"
            )));
        }
        operands.clear();
        for &c in &step.inputs {
            let v = cells.get(c).copied().flatten().ok_or_else(|| {
                Error::Program(format!("step {i} reads cell {c} before it is initialized"))
            })?;
            operands.push(v);
        }
        if cells[step.output].is_none() {
            return Err(Error::Program(format!(
                "step {i} writes {} which was never initialized",
                prog.label(step.output)
            )));
        }
        cells[step.output] = Some(step.op.eval(&operands)?);
    }
    let mut outputs = BTreeMap::new();
    for (name, &c) in &prog.outputs {
        let v = cells
            .get(c)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Program(format!("output {name} was never computed")))?;
        outputs.insert(name.clone(), v);
    }
    let inputs_after = cells[..prog.inputs.len()]
        .iter()
        .map(|v| v.unwrap_or(false))
        .collect();
    Ok(ProgramRun {
        outputs,
        resources: prog.resources(),
        inputs_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> MicroProgram {
        MicroProgram {
            name: "nand-then-not".into(),
            inputs: vec!["A".into(), "B".into()],
            work: vec!["W1".into(), "W2".into()],
            init: vec![
                InitWrite {
                    cell: 2,
                    value: true,
                    cycle: 0,
                },
                InitWrite {
                    cell: 3,
                    value: true,
                    cycle: 0,
                },
            ],
            steps: vec![
                ComputeStep {
                    op: FunctionalOp::Nand2,
                    inputs: vec![0, 1],
                    output: 2,
                },
                ComputeStep {
                    op: FunctionalOp::Not,
                    inputs: vec![2],
                    output: 3,
                },
            ],
            outputs: [("And".to_string(), 3)].into_iter().collect(),
            init_policy: InitPolicy::PerCell,
        }
    }

    #[test]
    fn runs_and_counts() {
        let p = tiny();
        p.validate().unwrap();
        let run = run_program(&p, &[("A", true), ("B", true)]).unwrap();
        assert!(run.outputs["And"]);
        assert_eq!(run.resources.compute_cycles, 2);
        assert_eq!(run.resources.memristor_count, 4);
        assert_eq!(run.resources.cycles_with_init, 3);
        assert_eq!(run.inputs_after, vec![true, true]);
    }

    #[test]
    fn use_before_init_is_an_error() {
        let mut p = tiny();
        p.init.retain(|w| w.cell != 2);
        assert!(matches!(p.validate(), Err(Error::Program(_))));
        assert!(matches!(
            run_program(&p, &[("A", true), ("B", false)]),
            Err(Error::Program(_))
        ));
    }

    #[test]
    fn writing_an_input_is_rejected() {
        let mut p = tiny();
        p.steps[1].output = 0;
        assert!(p.validate().is_err());
        assert!(run_program(&p, &[("A", true), ("B", false)]).is_err());
    }

    #[test]
    fn missing_input_is_rejected() {
        assert!(run_program(&tiny(), &[("A", true)]).is_err());
    }

    #[test]
    fn arity_checked_statically() {
        let mut p = tiny();
        p.steps[0].inputs.push(1);
        assert!(matches!(p.validate(), Err(Error::Arity { .. })));
    }
}
