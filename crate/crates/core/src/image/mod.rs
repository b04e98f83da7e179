//! 8-bit rasters, netpbm IO, quality metrics and the adder-driven image
//! pipelines.

mod apps;
mod dataset;
mod netpbm;
mod quality;

pub use apps::{
    app_addition, app_avg_pool, app_grayscale, app_motion, evaluate, App, AppInputs, AppRun,
};
pub use dataset::{run_dataset, DatasetReport, DatasetRow};
pub use netpbm::{read_netpbm, write_netpbm};
pub use quality::{mean_quality, psnr, ssim, Psnr, QualityReport, SsimMode};

use crate::error::{Error, Result};

/// Row-major interleaved 8-bit samples with 1 (gray) or 3 (RGB) channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImagePlane {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl ImagePlane {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::Image(format!(
                "{channels} channels, expected 1 or 3"
            )));
        }
        if width == 0 || height == 0 {
            return Err(Error::Image("empty image".into()));
        }
        if data.len() != width * height * channels {
            return Err(Error::Image(format!(
                "{} samples for {width}x{height}x{channels}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub fn gray(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        Self::new(width, height, 1, data)
    }

    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self> {
        Self::new(
            width,
            height,
            channels,
            vec![value; width * height * channels],
        )
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::gray(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn is_gray(&self) -> bool {
        self.channels == 1
    }

    pub fn get(&self, x: usize, y: usize, c: usize) -> u8 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    pub fn same_shape(&self, other: &ImagePlane) -> bool {
        (self.width, self.height, self.channels) == (other.width, other.height, other.channels)
    }

    pub fn require_same_shape(&self, other: &ImagePlane) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{}x{} vs {}x{}x{}",
                self.width, self.height, self.channels, other.width, other.height, other.channels
            )))
        }
    }

    /// One channel as its own gray plane.
    pub fn channel(&self, c: usize) -> Result<ImagePlane> {
        if c >= self.channels {
            return Err(Error::Image(format!("no channel {c}")));
        }
        let data = self
            .data
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect();
        Self::gray(self.width, self.height, data)
    }

    /// Every sample inverted (`255 - v`).
    pub fn inverted(&self) -> ImagePlane {
        ImagePlane {
            data: self.data.iter().map(|v| 255 - v).collect(),
            ..self.clone()
        }
    }
}
