//! Run configuration from a flat `key = value` file, `FELIX_*` environment
//! variables and command-line overrides, in increasing precedence.
//!
//! Keys:
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `device` | base parameter set, `default` or `legacy` | `default` |
//! | `a`, `r_on`, `r_off`, `v_on`, `v_off`, `x_init` | device parameters | from `device` |
//! | `dt` | Euler step, seconds | `1e-6` |
//! | `pulse_width` | pulse length, seconds | 20 x reset traversal time |
//! | `v0_preset` | `derived` or `table6` | `derived` |
//! | `v0_min3`, `v0_nand2`, `v0_nand3`, `v0_not1`, `v0_nor3` | explicit drive voltage, (0, 10] V | unset |
//! | `format` | `json` or `csv` | `json` |
//! | `seed` | RNG seed for sampled error analysis | `1` |
//! | `samples` | sample count for adders wider than 16 bits | unset |
//! | `output_dir` | where images and waveforms are written | unset |
//! | `dump_waveforms` | write per-step CSV traces | `false` |
//! | `trace_stride` | time steps between waveform samples | `1` |
//!
//! The environment variable for a key is `FELIX_` plus the key in upper
//! case, e.g. `FELIX_R_OFF=2000`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::device::DeviceParams;
use crate::engine::{GateKind, StepTiming, V0Preset, DEFAULT_DT};
use crate::error::{Error, Result};

pub const ENV_PREFIX: &str = "FELIX_";

const KEYS: &[&str] = &[
    "device",
    "a",
    "r_on",
    "r_off",
    "v_on",
    "v_off",
    "x_init",
    "dt",
    "pulse_width",
    "v0_preset",
    "v0_min3",
    "v0_nand2",
    "v0_nand3",
    "v0_not1",
    "v0_nor3",
    "format",
    "seed",
    "samples",
    "output_dir",
    "dump_waveforms",
    "trace_stride",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!(
                "format must be json or csv, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub device: DeviceParams,
    pub dt: f64,
    pub pulse_width: Option<f64>,
    pub v0_preset: V0Preset,
    pub format: Format,
    pub seed: u64,
    pub samples: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub dump_waveforms: bool,
    pub trace_stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            device: DeviceParams::default(),
            dt: DEFAULT_DT,
            pulse_width: None,
            v0_preset: V0Preset::Derived,
            format: Format::Json,
            seed: 1,
            samples: None,
            output_dir: None,
            dump_waveforms: false,
            trace_stride: 1,
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        out.push((
            k.trim().to_ascii_lowercase(),
            v.trim().trim_matches('"').to_string(),
        ));
    }
    Ok(out)
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}`")))
}

fn flag(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(Error::Config(format!(
            "`{key}`: expected a boolean, got `{v}`"
        ))),
    }
}

impl RunConfig {
    /// Layers `file`, then environment variables, then `overrides`.
    pub fn load(
        file: Option<&Path>,
        env: impl IntoIterator<Item = (String, String)>,
        overrides: &[(String, String)],
    ) -> Result<Self> {
        let mut merged: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            merged.extend(parse_kv(&text)?);
        }
        for (k, v) in env {
            if let Some(key) = k.strip_prefix(ENV_PREFIX) {
                let key = key.to_ascii_lowercase();
                if KEYS.contains(&key.as_str()) {
                    merged.insert(key, v);
                }
            }
        }
        merged.extend(overrides.iter().cloned());
        Self::from_pairs(&merged)
    }

    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(k) = pairs.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown key `{k}`")));
        }
        let mut cfg = RunConfig::default();
        if let Some(d) = pairs.get("device") {
            cfg.device = match d.as_str() {
                "default" => DeviceParams::default(),
                "legacy" => DeviceParams::legacy_divider(),
                _ => {
                    return Err(Error::Config(format!(
                        "device must be default or legacy, got `{d}`"
                    )))
                }
            };
        }
        let mut explicit = BTreeMap::new();
        for (k, v) in pairs {
            let k = k.as_str();
            match k {
                "device" => {}
                "a" => cfg.device.a = num(k, v)?,
                "r_on" => cfg.device.r_on = num(k, v)?,
                "r_off" => cfg.device.r_off = num(k, v)?,
                "v_on" => cfg.device.v_on_threshold = num(k, v)?,
                "v_off" => cfg.device.v_off_threshold = num(k, v)?,
                "x_init" => cfg.device.x_init = num(k, v)?,
                "dt" => cfg.dt = num(k, v)?,
                "pulse_width" => cfg.pulse_width = Some(num(k, v)?),
                "v0_preset" => {
                    cfg.v0_preset = match v.to_ascii_lowercase().as_str() {
                        "derived" | "derived-midpoint" => V0Preset::Derived,
                        "table6" => V0Preset::Published,
                        _ => {
                            return Err(Error::Config(format!(
                                "v0_preset must be derived or table6, got `{v}`"
                            )))
                        }
                    }
                }
                "format" => cfg.format = v.parse()?,
                "seed" => cfg.seed = num(k, v)?,
                "samples" => cfg.samples = Some(num(k, v)?),
                "output_dir" => cfg.output_dir = Some(PathBuf::from(v)),
                "dump_waveforms" => cfg.dump_waveforms = flag(k, v)?,
                "trace_stride" => cfg.trace_stride = num(k, v)?,
                _ => {
                    let gate: GateKind = k.trim_start_matches("v0_").parse()?;
                    let volts: f64 = num(k, v)?;
                    check_v0(volts)?;
                    explicit.insert(gate, volts);
                }
            }
        }
        if !explicit.is_empty() {
            cfg.v0_preset = V0Preset::Explicit(explicit);
        }
        cfg.device.validate()?;
        if !cfg.dt.is_finite() || cfg.dt <= 0.0 {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                cfg.dt
            )));
        }
        if cfg.trace_stride == 0 {
            return Err(Error::Config("trace_stride must be at least 1".into()));
        }
        Ok(cfg)
    }

    pub fn timing(&self) -> Result<StepTiming> {
        let mut t = StepTiming::derived(&self.device, self.dt)?;
        if let Some(p) = self.pulse_width {
            t.pulse_width = p;
        }
        if self.dump_waveforms {
            t = t.with_trace(self.trace_stride);
        }
        Ok(t)
    }
}

/// Explicit drive voltages must lie in (0, 10] V.
pub fn check_v0(v0: f64) -> Result<()> {
    if v0 > 0.0 && v0 <= 10.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "explicit v0 must be in (0, 10] V, got {v0}"
        )))
    }
}
