use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a cell's initialization cycles are charged in a composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitPolicy {
    /// The cell pays its own initialization cycles.
    PerCell,
    /// A run of adjacent cells with this policy shares one initialization cycle.
    SharedSingle,
    /// Composite of cells with different policies.
    Mixed,
}

impl fmt::Display for InitPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitPolicy::PerCell => "per-cell",
            InitPolicy::SharedSingle => "shared-single",
            InitPolicy::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub memristor_count: u32,
    pub compute_cycles: u32,
    pub init_cycles: u32,
    pub cycles_with_init: u32,
    pub init_policy: InitPolicy,
}

impl ResourceReport {
    pub fn with_policy(mut self, policy: InitPolicy) -> Self {
        self.init_policy = policy;
        self
    }
}

/// Composes per-cell reports in order (LSB first for an adder).
///
/// Compute cycles add up. A `PerCell` cell contributes its own init cycles,
/// and every maximal run of adjacent `SharedSingle` cells contributes one.
/// `shared_between_neighbours` memristors are counted once per adjacent pair
/// (e.g. 1 for a carry that is the next cell's carry-in).
pub fn account_composition(
    cells: &[ResourceReport],
    shared_between_neighbours: u32,
) -> Result<ResourceReport> {
    if cells.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot compose an empty cell list".into(),
        ));
    }
    let compute: u32 = cells.iter().map(|c| c.compute_cycles).sum();
    let mut init = 0;
    let mut in_shared_run = false;
    for c in cells {
        match c.init_policy {
            InitPolicy::SharedSingle => {
                if !in_shared_run {
                    init += 1;
                }
                in_shared_run = true;
            }
            InitPolicy::PerCell | InitPolicy::Mixed => {
                init += c.init_cycles;
                in_shared_run = false;
            }
        }
    }
    let memristors: u32 = cells.iter().map(|c| c.memristor_count).sum::<u32>()
        - shared_between_neighbours * (cells.len() as u32 - 1);
    let policy = if cells.iter().all(|c| c.init_policy == cells[0].init_policy) {
        cells[0].init_policy
    } else {
        InitPolicy::Mixed
    };
    Ok(ResourceReport {
        memristor_count: memristors,
        compute_cycles: compute,
        init_cycles: init,
        cycles_with_init: compute + init,
        init_policy: policy,
    })
}
