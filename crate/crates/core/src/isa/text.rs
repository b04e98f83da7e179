//! Line-oriented text form of a [`MicroProgram`].
//!
//! ```text
//! program fafa2
//! inputs A B Cin
//! work W1 W2
//! policy shared-single
//! init 0 W1=1 W2=1
//! MIN3 W1 <- A B Cin
//! NOT W2 <- W1
//! output Cout W2
//! output Sum W1
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{ComputeStep, FunctionalOp, InitPolicy, InitWrite, MicroProgram};
use crate::error::{Error, Result};

impl fmt::Display for MicroProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "program {}", self.name)?;
        writeln!(f, "inputs {}", self.inputs.join(" "))?;
        if !self.work.is_empty() {
            writeln!(f, "work {}", self.work.join(" "))?;
        }
        writeln!(f, "policy {}", self.init_policy)?;
        let mut cycles: BTreeMap<u32, Vec<&InitWrite>> = BTreeMap::new();
        for w in &self.init {
            cycles.entry(w.cycle).or_default().push(w);
        }
        for (cycle, writes) in cycles {
            write!(f, "init {cycle}")?;
            for w in writes {
                write!(f, " {}={}", self.label(w.cell), u8::from(w.value))?;
            }
            writeln!(f)?;
        }
        for step in &self.steps {
            write!(f, "{} {} <-", step.op, self.label(step.output))?;
            for &c in &step.inputs {
                write!(f, " {}", self.label(c))?;
            }
            writeln!(f)?;
        }
        for (name, &c) in &self.outputs {
            writeln!(f, "output {name} {}", self.label(c))?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::Program(format!("line {line}: {msg}"))
}

impl FromStr for MicroProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut prog = MicroProgram {
            name: String::new(),
            inputs: Vec::new(),
            work: Vec::new(),
            init: Vec::new(),
            steps: Vec::new(),
            outputs: BTreeMap::new(),
            init_policy: InitPolicy::PerCell,
        };
        // Cell names must be declared before steps refer to them.
        let lookup = |prog: &MicroProgram, ln: usize, name: &str| {
            prog.cell_id(name)
                .ok_or_else(|| parse_err(ln, format!("unknown cell `{name}`")))
        };
        for (i, raw) in s.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or_default();
            match head {
                "program" => prog.name = words.collect::<Vec<_>>().join(" "),
                "inputs" => prog.inputs = words.map(String::from).collect(),
                "work" => prog.work = words.map(String::from).collect(),
                "policy" => {
                    prog.init_policy = match words.next() {
                        Some("per-cell") => InitPolicy::PerCell,
                        Some("shared-single") => InitPolicy::SharedSingle,
                        Some("mixed") => InitPolicy::Mixed,
                        other => return Err(parse_err(ln, format!("bad policy {other:?}"))),
                    }
                }
                "init" => {
                    let cycle: u32 = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| parse_err(ln, "init needs a cycle number"))?;
                    for w in words {
                        let (name, value) = w.split_once('=').ok_or_else(|| {
                            parse_err(ln, format!("expected cell=bit, got `{w}`"))
                        })?;
                        let value = match value {
                            "0" => false,
                            "1" => true,
                            _ => return Err(parse_err(ln, format!("bad bit `{value}`"))),
                        };
                        let cell = lookup(&prog, ln, name)?;
                        prog.init.push(InitWrite { cell, value, cycle });
                    }
                }
                "output" => {
                    let name = words
                        .next()
                        .ok_or_else(|| parse_err(ln, "output needs a name"))?;
                    let cell = words
                        .next()
                        .ok_or_else(|| parse_err(ln, "output needs a cell"))?;
                    let id = lookup(&prog, ln, cell)?;
                    prog.outputs.insert(name.to_string(), id);
                }
                op => {
                    let op: FunctionalOp = op.parse().map_err(|e| parse_err(ln, e))?;
                    let out = words
                        .next()
                        .ok_or_else(|| parse_err(ln, "missing output cell"))?;
                    if words.next() != Some("<-") {
                        return Err(parse_err(ln, "expected `<-`"));
                    }
                    let output = lookup(&prog, ln, out)?;
                    let inputs = words
                        .map(|w| lookup(&prog, ln, w))
                        .collect::<Result<Vec<_>>>()?;
                    prog.steps.push(ComputeStep { op, inputs, output });
                }
            }
        }
        if prog.name.is_empty() {
            return Err(Error::Program("missing `program <name>` line".into()));
        }
        prog.validate()?;
        Ok(prog)
    }
}
