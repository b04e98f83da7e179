//! Functional (bit-level) semantics of FELIX operations, micro-programs for
//! adder cells, and cycle/memristor accounting.

mod program;
mod resources;
mod text;

pub use program::{run_program, CellId, ComputeStep, InitWrite, MicroProgram, ProgramRun};
pub use resources::{account_composition, InitPolicy, ResourceReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boolean operations a FELIX row can evaluate, with their cycle costs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionalOp {
    Not,
    Or2,
    Nor3,
    Nand2,
    Nand3,
    Min3,
    Maj3,
    Xor2,
    And2,
}

impl FunctionalOp {
    pub const ALL: [FunctionalOp; 9] = [
        FunctionalOp::Not,
        FunctionalOp::Or2,
        FunctionalOp::Nor3,
        FunctionalOp::Nand2,
        FunctionalOp::Nand3,
        FunctionalOp::Min3,
        FunctionalOp::Maj3,
        FunctionalOp::Xor2,
        FunctionalOp::And2,
    ];

    pub fn arity(self) -> usize {
        match self {
            FunctionalOp::Not => 1,
            FunctionalOp::Or2 | FunctionalOp::Nand2 | FunctionalOp::Xor2 | FunctionalOp::And2 => 2,
            FunctionalOp::Nor3 | FunctionalOp::Nand3 | FunctionalOp::Min3 | FunctionalOp::Maj3 => 3,
        }
    }

    /// FELIX cycles: single-cycle for NOT/OR/NOR/NAND/MIN, two for MAJ/XOR/AND.
    pub fn cycles(self) -> u32 {
        match self {
            FunctionalOp::Maj3 | FunctionalOp::Xor2 | FunctionalOp::And2 => 2,
            _ => 1,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            FunctionalOp::Not => "NOT",
            FunctionalOp::Or2 => "OR",
            FunctionalOp::Nor3 => "NOR3",
            FunctionalOp::Nand2 => "NAND2",
            FunctionalOp::Nand3 => "NAND3",
            FunctionalOp::Min3 => "MIN3",
            FunctionalOp::Maj3 => "MAJ3",
            FunctionalOp::Xor2 => "XOR2",
            FunctionalOp::And2 => "AND2",
        }
    }

    pub fn eval(self, bits: &[bool]) -> Result<bool> {
        eval_functional(self, bits)
    }
}

impl fmt::Display for FunctionalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl FromStr for FunctionalOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionalOp::ALL
            .into_iter()
            .find(|op| op.mnemonic().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Program(format!("unknown operation `{s}`")))
    }
}

fn ones(bits: &[bool]) -> usize {
    bits.iter().filter(|&&b| b).count()
}

pub fn eval_functional(op: FunctionalOp, bits: &[bool]) -> Result<bool> {
    if bits.len() != op.arity() {
        return Err(Error::Arity {
            op: op.mnemonic(),
            expected: op.arity(),
            got: bits.len(),
        });
    }
    let k = ones(bits);
    let out = match op {
        FunctionalOp::Not => !bits[0],
        FunctionalOp::Or2 => k > 0,
        FunctionalOp::Nor3 => k == 0,
        FunctionalOp::Nand2 | FunctionalOp::Nand3 => k < bits.len(),
        FunctionalOp::And2 => k == bits.len(),
        FunctionalOp::Min3 => k < 2,
        FunctionalOp::Maj3 => k >= 2,
        FunctionalOp::Xor2 => k == 1,
    };
    Ok(out)
}

/// Yields every input pattern of `n` bits, MSB-first (`000`, `001`, ...).
pub fn patterns(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u32 << n).map(move |p| (0..n).map(|i| (p >> (n - 1 - i)) & 1 == 1).collect())
}
