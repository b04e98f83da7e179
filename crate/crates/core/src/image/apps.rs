//! Image pipelines whose every addition goes through a ripple-carry adder.
//! The exact pipeline is the same code with no approximate positions.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{ImagePlane, QualityReport};
use crate::adders::{extend_scenario, rca_add, RcaScenario};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum App {
    Addition,
    Motion,
    Grayscale,
    AvgPool,
}

impl App {
    pub const ALL: [App; 4] = [App::Addition, App::Motion, App::Grayscale, App::AvgPool];

    pub fn name(self) -> &'static str {
        match self {
            App::Addition => "addition",
            App::Motion => "motion",
            App::Grayscale => "grayscale",
            App::AvgPool => "avgpool",
        }
    }

    /// Images consumed per run.
    pub fn arity(self) -> usize {
        match self {
            App::Addition | App::Motion => 2,
            App::Grayscale | App::AvgPool => 1,
        }
    }
}

impl fmt::Display for App {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for App {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for App {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "addition" | "add" => Ok(App::Addition),
            "motion" | "motion-detection" => Ok(App::Motion),
            "grayscale" | "gray" => Ok(App::Grayscale),
            "avgpool" | "pool" | "average-pooling" => Ok(App::AvgPool),
            _ => Err(Error::InvalidArgument(format!(
                "unknown application `{s}` (addition, motion, grayscale, avgpool)"
            ))),
        }
    }
}

/// Precomputed results of one adder for all operand pairs.
struct AddTable {
    width: u32,
    sums: Vec<u16>,
}

impl AddTable {
    fn new(scenario: &RcaScenario) -> Result<Self> {
        let w = scenario.width;
        let n = 1u64 << w;
        let mut sums = Vec::with_capacity((n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                sums.push(rca_add(scenario, a, b)? as u16);
            }
        }
        Ok(Self { width: w, sums })
    }

    fn add(&self, a: u16, b: u16) -> u16 {
        self.sums[(usize::from(a) << self.width) | usize::from(b)]
    }
}

fn require_byte_scenario(s: &RcaScenario) -> Result<()> {
    s.validate()?;
    if s.width != 8 {
        return Err(Error::InvalidArgument(format!(
            "image pipelines take an 8-bit adder, got {} bits",
            s.width
        )));
    }
    Ok(())
}

fn require_gray(img: &ImagePlane, what: &str) -> Result<()> {
    if img.is_gray() {
        Ok(())
    } else {
        Err(Error::Image(format!("{what} must be grayscale")))
    }
}

/// Per-pixel 8-bit sum, saturated at 255.
pub fn app_addition(a: &ImagePlane, b: &ImagePlane, scenario: &RcaScenario) -> Result<ImagePlane> {
    require_byte_scenario(scenario)?;
    require_gray(a, "addition input")?;
    a.require_same_shape(b)?;
    let t = AddTable::new(&scenario.with_carry_in(false))?;
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&p, &q)| t.add(p.into(), q.into()).min(255) as u8)
        .collect();
    ImagePlane::gray(a.width(), a.height(), data)
}

/// Per-pixel `|a - b|`: operands are ordered exactly, then the difference is
/// the low byte of `max + !min + 1` through the adder.
pub fn app_motion(a: &ImagePlane, b: &ImagePlane, scenario: &RcaScenario) -> Result<ImagePlane> {
    require_byte_scenario(scenario)?;
    require_gray(a, "motion input")?;
    a.require_same_shape(b)?;
    let t = AddTable::new(&scenario.with_carry_in(true))?;
    let data = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&p, &q)| {
            let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
            (t.add(hi.into(), (!lo).into()) & 0xFF) as u8
        })
        .collect();
    ImagePlane::gray(a.width(), a.height(), data)
}

/// `((R + G) + B) / 3`, the second sum on the adder widened to 9 bits.
pub fn app_grayscale(rgb: &ImagePlane, scenario: &RcaScenario) -> Result<ImagePlane> {
    require_byte_scenario(scenario)?;
    if rgb.channels() != 3 {
        return Err(Error::Image("grayscale input must be RGB".into()));
    }
    let s8 = scenario.with_carry_in(false);
    let t8 = AddTable::new(&s8)?;
    let t9 = AddTable::new(&extend_scenario(&s8, 9)?)?;
    let data = rgb
        .data()
        .chunks_exact(3)
        .map(|px| {
            let rg = t8.add(px[0].into(), px[1].into());
            // Approximate sums can overshoot 765 slightly.
            (t9.add(rg, px[2].into()) / 3).min(255) as u8
        })
        .collect();
    ImagePlane::gray(rgb.width(), rgb.height(), data)
}

/// Non-overlapping 2x2 mean: two 8-bit sums, one 9-bit sum, then `/ 4`.
pub fn app_avg_pool(img: &ImagePlane, scenario: &RcaScenario) -> Result<ImagePlane> {
    require_byte_scenario(scenario)?;
    require_gray(img, "pooling input")?;
    let (w, h) = (img.width(), img.height());
    if w % 2 != 0 || h % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "pooling needs even dimensions, got {w}x{h}"
        )));
    }
    let s8 = scenario.with_carry_in(false);
    let t8 = AddTable::new(&s8)?;
    let t9 = AddTable::new(&extend_scenario(&s8, 9)?)?;
    ImagePlane::from_fn(w / 2, h / 2, |x, y| {
        let p = |dx, dy| u16::from(img.get(2 * x + dx, 2 * y + dy, 0));
        let s1 = t8.add(p(0, 0), p(1, 0));
        let s2 = t8.add(p(0, 1), p(1, 1));
        (t9.add(s1, s2) / 4).min(255) as u8
    })
}

pub enum AppInputs<'a> {
    Single(&'a ImagePlane),
    Pair(&'a ImagePlane, &'a ImagePlane),
}

#[derive(Clone, Debug)]
pub struct AppRun {
    pub exact: ImagePlane,
    pub approx: ImagePlane,
    pub quality: QualityReport,
}

fn scenario_tag(s: &RcaScenario) -> String {
    s.number().map_or_else(|| s.label(), |n| n.to_string())
}

fn run(app: App, inputs: &AppInputs, s: &RcaScenario) -> Result<ImagePlane> {
    match (app, inputs) {
        (App::Addition, AppInputs::Pair(a, b)) => app_addition(a, b, s),
        (App::Motion, AppInputs::Pair(a, b)) => app_motion(a, b, s),
        (App::Grayscale, AppInputs::Single(a)) => app_grayscale(a, s),
        (App::AvgPool, AppInputs::Single(a)) => app_avg_pool(a, s),
        _ => Err(Error::InvalidArgument(format!(
            "{app} takes {} input image(s)",
            app.arity()
        ))),
    }
}

/// Runs the exact and approximate pipelines and scores approx against exact.
pub fn evaluate(app: App, inputs: &AppInputs, scenario: &RcaScenario) -> Result<AppRun> {
    let exact_scenario = RcaScenario {
        approx_lsb_count: 0,
        ..*scenario
    };
    let exact = run(app, inputs, &exact_scenario)?;
    let approx = run(app, inputs, scenario)?;
    let quality = QualityReport::measure(app.name(), &scenario_tag(scenario), &exact, &approx)?;
    Ok(AppRun {
        exact,
        approx,
        quality,
    })
}
