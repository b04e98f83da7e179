use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{node_voltage, GateKind};
use crate::device::DeviceParams;
use crate::error::{Error, Result};
use crate::isa::patterns;

/// Drive voltages `v0` with `lower < v0 <= upper`. The lower bound is open
/// because the reset threshold itself lies inside the dead zone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoltageWindow {
    pub lower: f64,
    pub upper: f64,
}

impl VoltageWindow {
    pub fn contains(&self, v0: f64) -> bool {
        v0 > self.lower && v0 <= self.upper
    }

    pub fn is_empty(&self) -> bool {
        self.upper.partial_cmp(&self.lower) != Some(std::cmp::Ordering::Greater)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        (self.upper - self.lower).max(0.0)
    }
}

/// Divider fraction `v_node / v0` before any cell moves.
fn divider_ratio(pattern: &[bool], params: &DeviceParams) -> f64 {
    let r_in: Vec<f64> = pattern.iter().map(|&b| params.resistance_for(b)).collect();
    node_voltage(1.0, params.r_on, &r_in).expect("non-empty positive resistances")
}

/// Interval of `v0` for which the output resets exactly on the patterns
/// whose result is 0, and no input cell sees more than `v_on_threshold`.
pub fn static_window(gate: GateKind, params: &DeviceParams) -> VoltageWindow {
    let mut lower: f64 = 0.0;
    let mut upper = f64::INFINITY;
    for pattern in patterns(gate.arity()) {
        let ratio = divider_ratio(&pattern, params);
        let expected = gate.op().eval(&pattern).expect("arity matches");
        let reset_at = params.v_off_threshold / ratio;
        if expected {
            upper = upper.min(reset_at);
        } else {
            lower = lower.max(reset_at);
        }
        upper = upper.min(params.v_on_threshold / (1.0 - ratio));
    }
    VoltageWindow { lower, upper }
}

/// Output the static threshold analysis predicts for one input pattern.
pub fn static_prediction(pattern: &[bool], v0: f64, params: &DeviceParams) -> bool {
    divider_ratio(pattern, params) * v0 <= params.v_off_threshold
}

/// Initial node voltage for every input pattern (MSB-first order).
pub fn divider_voltages(gate: GateKind, v0: f64, params: &DeviceParams) -> Vec<(Vec<bool>, f64)> {
    patterns(gate.arity())
        .map(|p| {
            let v = divider_ratio(&p, params) * v0;
            (p, v)
        })
        .collect()
}

/// Where the drive voltage for each gate comes from.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum V0Preset {
    /// Midpoint of the static window for the active device parameters.
    #[default]
    Derived,
    /// The published FAFA execution voltages: MIN 1.2 V, NAND 1.2 V, NOT 1.55 V.
    /// NOR3 has no published value and falls back to the derived midpoint.
    Published,
    Explicit(BTreeMap<GateKind, f64>),
}

impl V0Preset {
    pub fn name(&self) -> &'static str {
        match self {
            V0Preset::Derived => "derived",
            V0Preset::Published => "table6",
            V0Preset::Explicit(_) => "explicit",
        }
    }

    fn published(gate: GateKind) -> Option<f64> {
        match gate {
            GateKind::Min3 => Some(1.2),
            GateKind::Nand2 | GateKind::Nand3 => Some(1.2),
            GateKind::Not1 => Some(1.55),
            GateKind::Nor3 => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct V0Choice {
    pub gate: GateKind,
    pub v0: f64,
    pub source: &'static str,
    pub window: VoltageWindow,
}

impl V0Choice {
    pub fn in_window(&self) -> bool {
        self.window.contains(self.v0)
    }
}

pub fn choose_v0(gate: GateKind, preset: &V0Preset, params: &DeviceParams) -> Result<V0Choice> {
    let window = static_window(gate, params);
    let derived = || {
        if window.is_empty() {
            Err(Error::NotRealizable(gate.name()))
        } else {
            Ok(window.midpoint())
        }
    };
    let (v0, source) = match preset {
        V0Preset::Derived => (derived()?, "derived-midpoint"),
        V0Preset::Published => match V0Preset::published(gate) {
            Some(v) => (v, "table6"),
            None => (derived()?, "derived-midpoint"),
        },
        V0Preset::Explicit(map) => match map.get(&gate) {
            Some(&v) => (v, "explicit"),
            None => (derived()?, "derived-midpoint"),
        },
    };
    Ok(V0Choice {
        gate,
        v0,
        source,
        window,
    })
}
