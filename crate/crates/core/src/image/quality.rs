use std::fmt;

use serde::{Serialize, Serializer};

use super::ImagePlane;
use crate::error::{Error, Result};

const K1: f64 = 0.01;
const K2: f64 = 0.03;
const L: f64 = 255.0;

/// Peak signal-to-noise ratio in dB; identical images have no noise.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }

    pub fn value(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v.is_infinite() {
            Psnr::Infinite
        } else {
            Psnr::Finite(v)
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

/// Serialized as a number, or the string `"inf"`.
impl Serialize for Psnr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Psnr::Finite(v) => s.serialize_f64(*v),
            Psnr::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn psnr(reference: &ImagePlane, test: &ImagePlane) -> Result<Psnr> {
    reference.require_same_shape(test)?;
    let sse: u64 = reference
        .data()
        .iter()
        .zip(test.data())
        .map(|(&a, &b)| u64::from(a.abs_diff(b)).pow(2))
        .sum();
    if sse == 0 {
        return Ok(Psnr::Infinite);
    }
    let mse = sse as f64 / reference.data().len() as f64;
    Ok(Psnr::Finite(10.0 * (L * L / mse).log10()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SsimMode {
    /// 8x8 uniform window.
    Ssim,
    /// 11x11 Gaussian window, sigma 1.5.
    Mssim,
}

impl SsimMode {
    fn kernel(self) -> Vec<f64> {
        match self {
            SsimMode::Ssim => vec![1.0 / 8.0; 8],
            SsimMode::Mssim => {
                let g: Vec<f64> = (0..11)
                    .map(|i| {
                        let d = i as f64 - 5.0;
                        (-d * d / (2.0 * 1.5 * 1.5)).exp()
                    })
                    .collect();
                let s: f64 = g.iter().sum();
                g.into_iter().map(|v| v / s).collect()
            }
        }
    }
}

/// Mean of the local SSIM map over all windows fully inside the image
/// (no padding), averaged over channels. Local variances are biased.
pub fn ssim(reference: &ImagePlane, test: &ImagePlane, mode: SsimMode) -> Result<f64> {
    reference.require_same_shape(test)?;
    let kernel = mode.kernel();
    let k = kernel.len();
    let (w, h) = (reference.width(), reference.height());
    if w < k || h < k {
        return Err(Error::Image(format!(
            "{w}x{h} image is smaller than the {k}x{k} window"
        )));
    }
    let mut total = 0.0;
    for c in 0..reference.channels() {
        let x: Vec<f64> = reference
            .channel(c)?
            .data()
            .iter()
            .map(|&v| f64::from(v))
            .collect();
        let y: Vec<f64> = test
            .channel(c)?
            .data()
            .iter()
            .map(|&v| f64::from(v))
            .collect();
        total += ssim_plane(&x, &y, w, h, &kernel);
    }
    Ok(total / reference.channels() as f64)
}

fn ssim_plane(x: &[f64], y: &[f64], w: usize, h: usize, kernel: &[f64]) -> f64 {
    let sq = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p * q).collect() };
    let mx = filter_valid(x, w, h, kernel);
    let my = filter_valid(y, w, h, kernel);
    let mxx = filter_valid(&sq(x, x), w, h, kernel);
    let myy = filter_valid(&sq(y, y), w, h, kernel);
    let mxy = filter_valid(&sq(x, y), w, h, kernel);
    let c1 = (K1 * L).powi(2);
    let c2 = (K2 * L).powi(2);
    let n = mx.len();
    let sum: f64 = (0..n)
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = mxx[i] - ux * ux;
            let vy = myy[i] - uy * uy;
            let cxy = mxy[i] - ux * uy;
            ((2.0 * ux * uy + c1) * (2.0 * cxy + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2))
        })
        .sum();
    sum / n as f64
}

/// Separable correlation keeping only fully covered positions.
fn filter_valid(src: &[f64], w: usize, h: usize, kernel: &[f64]) -> Vec<f64> {
    let k = kernel.len();
    let ow = w - k + 1;
    let oh = h - k + 1;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        for x in 0..ow {
            rows[y * ow + x] = kernel.iter().zip(&line[x..x + k]).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for (j, kv) in kernel.iter().enumerate() {
            let src_row = &rows[(y + j) * ow..(y + j + 1) * ow];
            for (o, s) in out[y * ow..(y + 1) * ow].iter_mut().zip(src_row) {
                *o += kv * s;
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QualityReport {
    pub app: String,
    pub scenario: String,
    pub psnr: Psnr,
    pub ssim: f64,
    pub mssim: f64,
}

impl QualityReport {
    pub fn measure(
        app: &str,
        scenario: &str,
        reference: &ImagePlane,
        test: &ImagePlane,
    ) -> Result<Self> {
        Ok(Self {
            app: app.to_string(),
            scenario: scenario.to_string(),
            psnr: psnr(reference, test)?,
            ssim: ssim(reference, test, SsimMode::Ssim)?,
            mssim: ssim(reference, test, SsimMode::Mssim)?,
        })
    }
}

/// Arithmetic mean of each metric. Any infinite PSNR makes the mean infinite.
pub fn mean_quality(app: &str, scenario: &str, reports: &[QualityReport]) -> Result<QualityReport> {
    if reports.is_empty() {
        return Err(Error::InvalidArgument("no reports to average".into()));
    }
    let n = reports.len() as f64;
    let psnr = reports.iter().map(|r| r.psnr.value()).sum::<f64>() / n;
    Ok(QualityReport {
        app: app.to_string(),
        scenario: scenario.to_string(),
        psnr: Psnr::from_value(psnr),
        ssim: reports.iter().map(|r| r.ssim).sum::<f64>() / n,
        mssim: reports.iter().map(|r| r.mssim).sum::<f64>() / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp() -> ImagePlane {
        ImagePlane::from_fn(32, 24, |x, y| ((x * 7 + y * 5) % 256) as u8).unwrap()
    }

    #[test]
    fn psnr_cases() {
        let a = ramp();
        assert_eq!(psnr(&a, &a).unwrap(), Psnr::Infinite);
        let black = ImagePlane::filled(4, 4, 1, 0).unwrap();
        let white = ImagePlane::filled(4, 4, 1, 255).unwrap();
        assert_eq!(psnr(&black, &white).unwrap(), Psnr::Finite(0.0));
        assert!(psnr(&black, &ramp()).is_err());
    }

    #[test]
    fn identical_is_one() {
        let a = ramp();
        for m in [SsimMode::Ssim, SsimMode::Mssim] {
            assert!((ssim(&a, &a, m).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_offset_is_near_one() {
        let a = ImagePlane::filled(16, 16, 1, 100).unwrap();
        let b = ImagePlane::filled(16, 16, 1, 101).unwrap();
        assert!(ssim(&a, &b, SsimMode::Ssim).unwrap() > 0.999);
    }

    #[test]
    fn too_small_for_window() {
        let a = ImagePlane::filled(8, 8, 1, 0).unwrap();
        assert!(ssim(&a, &a, SsimMode::Ssim).is_ok());
        assert!(ssim(&a, &a, SsimMode::Mssim).is_err());
    }

    #[test]
    fn mean_with_infinite() {
        let r = |p| QualityReport {
            app: "x".into(),
            scenario: "1".into(),
            psnr: p,
            ssim: 1.0,
            mssim: 0.5,
        };
        let m = mean_quality("x", "1", &[r(Psnr::Finite(30.0)), r(Psnr::Finite(40.0))]).unwrap();
        assert_eq!(m.psnr, Psnr::Finite(35.0));
        let m = mean_quality("x", "1", &[r(Psnr::Finite(30.0)), r(Psnr::Infinite)]).unwrap();
        assert!(m.psnr.is_infinite());
        assert_eq!(serde_json::to_string(&m.psnr).unwrap(), "\"inf\"");
    }
}
