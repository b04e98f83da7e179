//! Voltage-controlled behavioral memristor model.
//!
//! The state variable `x` moves only when the voltage across the device leaves
//! the dead zone `[-v_off, v_on]`:
//!
//! ```text
//! dx/dt =  exp(a - x)    v >  v_on
//!          0             -v_off <= v <= v_on
//!         -exp(x + a)    v < -v_off
//! ```
//!
//! Resistance is binary: `r_on` (logic 1) for `x >= 0`, `r_off` (logic 0)
//! otherwise, and the device is ohmic at that resistance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    /// Switching-rate parameter (dimensionless).
    pub a: f64,
    /// Low resistance state, ohms.
    pub r_on: f64,
    /// High resistance state, ohms.
    pub r_off: f64,
    /// Positive switching threshold, volts.
    pub v_on_threshold: f64,
    /// Magnitude of the negative switching threshold, volts.
    pub v_off_threshold: f64,
    /// Magnitude of `x` written by an ideal set/reset.
    pub x_init: f64,
}

impl Default for DeviceParams {
    fn default() -> Self {
        Self {
            a: 10.0,
            r_on: 100.0,
            r_off: 1000.0,
            v_on_threshold: 1.2,
            v_off_threshold: 0.6,
            x_init: 1.0,
        }
    }
}

impl DeviceParams {
    /// The 10 kΩ / 10 MΩ divider setting with a 0.5 V reset threshold that
    /// the classic FELIX NOR/MIN/NAND voltages (1 V / 0.75 V / 0.67 V) were
    /// derived for.
    pub fn legacy_divider() -> Self {
        Self {
            r_on: 10e3,
            r_off: 10e6,
            v_off_threshold: 0.5,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.a,
            self.r_on,
            self.r_off,
            self.v_on_threshold,
            self.v_off_threshold,
            self.x_init,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "device parameters must be finite".into(),
            ));
        }
        if !(self.r_on > 0.0 && self.r_off > self.r_on) {
            return Err(Error::InvalidArgument(format!(
                "need r_off > r_on > 0, got r_on={} r_off={}",
                self.r_on, self.r_off
            )));
        }
        if self.v_on_threshold <= 0.0 || self.v_off_threshold <= 0.0 {
            return Err(Error::InvalidArgument(
                "switching thresholds must be positive".into(),
            ));
        }
        if self.a <= 0.0 {
            return Err(Error::InvalidArgument("a must be positive".into()));
        }
        if self.x_init <= 0.0 {
            return Err(Error::InvalidArgument("x_init must be positive".into()));
        }
        Ok(())
    }

    /// Resistance corresponding to a stored logic value.
    pub fn resistance_for(&self, bit: bool) -> f64 {
        if bit {
            self.r_on
        } else {
            self.r_off
        }
    }
}

/// State derivative for device voltage `v` (top electrode minus bottom).
pub fn dx_dt(x: f64, v: f64, params: &DeviceParams) -> Result<f64> {
    if !x.is_finite() || !v.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite state or voltage (x={x}, v={v})"
        )));
    }
    let rate = if v > params.v_on_threshold {
        (params.a - x).exp()
    } else if v < -params.v_off_threshold {
        -(x + params.a).exp()
    } else {
        0.0
    };
    Ok(rate)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemristorCell {
    pub x: f64,
    pub label: String,
}

impl MemristorCell {
    pub fn new(label: impl Into<String>, x: f64) -> Self {
        Self {
            x,
            label: label.into(),
        }
    }

    /// A cell written to `bit` with the default `x_init` magnitude.
    pub fn with_logic(label: impl Into<String>, bit: bool, params: &DeviceParams) -> Self {
        Self::new(label, 0.0).set_logic(bit, params)
    }

    pub fn resistance(&self, params: &DeviceParams) -> f64 {
        params.resistance_for(self.logic())
    }

    /// Logic 1 iff `x >= 0` (the boundary reads as R_on).
    pub fn logic(&self) -> bool {
        self.x >= 0.0
    }

    /// Ideal write: `x = +x_init` for 1, `-x_init` for 0.
    pub fn set_logic(mut self, bit: bool, params: &DeviceParams) -> Self {
        self.x = if bit { params.x_init } else { -params.x_init };
        self
    }

    /// One explicit-Euler step of length `dt` under device voltage `v`.
    pub fn integrate(&self, v: f64, dt: f64, params: &DeviceParams) -> Result<Self> {
        Ok(Self {
            x: integrate_state(self.x, v, dt, params)?,
            label: self.label.clone(),
        })
    }

    /// Current through the cell at voltage `v`.
    pub fn current(&self, v: f64, params: &DeviceParams) -> f64 {
        v / self.resistance(params)
    }
}

/// `x + dt * dx/dt`, unclamped.
pub fn integrate_state(x: f64, v: f64, dt: f64, params: &DeviceParams) -> Result<f64> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive, got {dt}"
        )));
    }
    Ok(x + dt * dx_dt(x, v, params)?)
}

/// Time for a cell written to logic 1 to cross into logic 0 under a constant
/// over-threshold reset, measured with the same Euler step the engine uses.
pub fn reset_traversal_time(params: &DeviceParams, dt: f64) -> Result<f64> {
    let drive = -(params.v_off_threshold * 2.0);
    let mut x = params.x_init;
    let mut t = 0.0;
    // exp(x + a) with x <= x_init bounds the steps; this cap only guards bad dt.
    for _ in 0..10_000_000u64 {
        if x < 0.0 {
            return Ok(t);
        }
        x = integrate_state(x, drive, dt, params)?;
        t += dt;
    }
    Err(Error::InvalidArgument(format!(
        "state never crossed zero with dt={dt}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> DeviceParams {
        DeviceParams::default()
    }

    #[test]
    fn dead_zone_rate_is_zero() {
        assert_eq!(dx_dt(5.0, 0.5, &p()).unwrap(), 0.0);
        assert_eq!(dx_dt(5.0, 1.2, &p()).unwrap(), 0.0);
        assert_eq!(dx_dt(5.0, -0.6, &p()).unwrap(), 0.0);
    }

    #[test]
    fn drive_branches() {
        let e10 = 10f64.exp();
        assert!((dx_dt(0.0, 2.0, &p()).unwrap() - e10).abs() < 1e-9 * e10);
        assert!((dx_dt(0.0, -1.0, &p()).unwrap() + e10).abs() < 1e-9 * e10);
        assert!((e10 - 2.2026e4).abs() < 1.0);
    }

    #[test]
    fn non_finite_inputs_rejected() {
        assert!(matches!(dx_dt(f64::NAN, 0.0, &p()), Err(Error::Domain(_))));
        assert!(matches!(
            dx_dt(0.0, f64::INFINITY, &p()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn euler_steps() {
        assert_eq!(integrate_state(5.0, 0.0, 1e-6, &p()).unwrap(), 5.0);
        let x = integrate_state(0.0, 2.0, 1e-6, &p()).unwrap();
        assert!((x - 0.022026).abs() < 1e-6, "{x}");
        assert!(integrate_state(-0.01, -2.0, 1e-3, &p()).unwrap() < -0.01);
        assert!(integrate_state(-0.01, -2.0, 1e-9, &p()).unwrap() < -0.01);
    }

    #[test]
    fn non_positive_dt_rejected() {
        assert!(matches!(
            integrate_state(0.0, 2.0, 0.0, &p()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(integrate_state(0.0, 2.0, -1e-6, &p()).is_err());
    }

    #[test]
    fn resistance_and_logic() {
        let params = p();
        assert_eq!(MemristorCell::new("m", 0.0).resistance(&params), 100.0);
        assert_eq!(MemristorCell::new("m", -0.1).resistance(&params), 1000.0);
        assert_eq!(MemristorCell::new("m", 3.7).resistance(&params), 100.0);
        assert!(MemristorCell::new("m", 0.0).logic());
        assert!(!MemristorCell::new("m", -5.0).logic());
    }

    #[test]
    fn writes() {
        let params = p();
        let c = MemristorCell::new("m", 0.3).set_logic(false, &params);
        assert!(!c.logic());
        assert_eq!(c.resistance(&params), params.r_off);
        let one = MemristorCell::new("m", -2.0).set_logic(true, &params);
        assert!(one.logic());
        assert_eq!(one.clone().set_logic(true, &params), one);
    }

    #[test]
    fn param_validation() {
        assert!(p().validate().is_ok());
        assert!(DeviceParams::legacy_divider().validate().is_ok());
        let bad = DeviceParams { r_off: 50.0, ..p() };
        assert!(bad.validate().is_err());
        let bad = DeviceParams {
            v_off_threshold: 0.0,
            ..p()
        };
        assert!(bad.validate().is_err());
        let bad = DeviceParams { a: -1.0, ..p() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn traversal_time_matches_closed_form() {
        // x(t) = -ln(exp(-x0) + exp(a) t) crosses zero at t = (1 - exp(-x0)) / exp(a).
        let params = p();
        let exact = (1.0 - (-1.0f64).exp()) / 10f64.exp();
        let t = reset_traversal_time(&params, 1e-8).unwrap();
        assert!((t - exact).abs() / exact < 0.01, "{t} vs {exact}");
    }
}
