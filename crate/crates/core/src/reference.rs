//! Published figures, loaded from `data/reported.toml`.
//!
//! These are reported constants, never computed. They exist so reports can
//! print computed values next to the published ones.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct CellErrorRow {
    pub name: String,
    pub ed: u32,
    pub er_sum: f64,
    pub er_cout: f64,
    pub med: f64,
    pub nmed: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct CellResourceRow {
    pub name: String,
    pub memristors: u32,
    pub cycles: u32,
    #[serde(default)]
    pub energy_uj: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct RcaResourceRow {
    pub scenario: u8,
    pub name: String,
    pub memristors: u32,
    pub cycles: u32,
    #[serde(default)]
    pub energy_uj: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct RcaErrorRow {
    pub scenario: u8,
    pub name: String,
    pub med: f64,
    pub nmed: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct QualityRow {
    pub app: String,
    pub scenario: u8,
    pub psnr: f64,
    pub ssim: f64,
    pub mssim: f64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Reported {
    pub version: u32,
    pub v0: BTreeMap<String, f64>,
    pub cell_error: Vec<CellErrorRow>,
    pub cell_resources: Vec<CellResourceRow>,
    pub rca_resources: Vec<RcaResourceRow>,
    pub rca_error: Vec<RcaErrorRow>,
    pub image: Vec<QualityRow>,
    pub dataset: Vec<QualityRow>,
}

pub const SOURCE: &str = include_str!("../data/reported.toml");

pub fn reported() -> &'static Reported {
    static R: OnceLock<Reported> = OnceLock::new();
    R.get_or_init(|| toml::from_str(SOURCE).expect("bundled reported.toml parses"))
}

impl Reported {
    pub fn cell_error(&self, name: &str) -> Option<&CellErrorRow> {
        self.cell_error
            .iter()
            .find(|r| r.name.eq_ignore_ascii_case(name))
    }

    pub fn cell_resources(&self, name: &str) -> Option<&CellResourceRow> {
        self.cell_resources
            .iter()
            .find(|r| r.name.eq_ignore_ascii_case(name))
    }

    pub fn rca_resources(&self, scenario: u8, name: &str) -> Option<&RcaResourceRow> {
        self.rca_resources
            .iter()
            .find(|r| r.scenario == scenario && r.name.eq_ignore_ascii_case(name))
    }

    pub fn rca_errors(&self, scenario: u8) -> impl Iterator<Item = &RcaErrorRow> {
        self.rca_error
            .iter()
            .filter(move |r| r.scenario == scenario)
    }

    pub fn image(&self, app: &str, scenario: u8) -> Option<&QualityRow> {
        self.image
            .iter()
            .find(|r| r.app == app && r.scenario == scenario)
    }

    pub fn dataset(&self, app: &str, scenario: u8) -> Option<&QualityRow> {
        self.dataset
            .iter()
            .find(|r| r.app == app && r.scenario == scenario)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        let r = reported();
        assert_eq!(r.version, 1);
        assert_eq!(r.v0["NOT1"], 1.55);
        let said1 = r.cell_error("SAID1").unwrap();
        assert_eq!((said1.med, said1.nmed), (0.5, 0.166));
        assert_eq!(r.rca_resources(1, "FAFA2").unwrap().cycles, 39);
        assert_eq!(r.rca_errors(1).count(), 10);
        assert_eq!(r.image("addition", 1).unwrap().psnr, 39.471);
        assert_eq!(r.dataset("grayscale", 2).unwrap().psnr, 36.034);
    }
}
