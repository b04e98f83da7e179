//! Simulator for FELIX stateful logic on memristor rows.
//!
//! The crate goes from device physics up to applications:
//!
//! - [`device`]: threshold-switching behavioral memristor, explicit Euler.
//! - [`engine`]: one FELIX gate step as a transient voltage divider, static
//!   operating windows, truth-table verification, energy.
//! - [`isa`]: bit-level semantics, micro-programs and cycle accounting.
//! - [`adders`]: exact and approximate (FAFA1/FAFA2) full adders and
//!   ripple-carry composition.
//! - [`error_analysis`]: ED/ER/MED/NMED for cells and whole adders.
//! - [`image`]: four adder-driven image pipelines scored by PSNR/SSIM.
//! - [`cli`]: configuration and the report-producing commands behind the
//!   `felix-sim` binary.
//!
//! ```
//! use felix_sim::adders::{rca_add, AdderVariant, RcaScenario};
//!
//! let s = RcaScenario::numbered(1, AdderVariant::Fafa2)?;
//! assert_eq!(rca_add(&s, 0, 0)?, 15);
//! # Ok::<(), felix_sim::Error>(())
//! ```

pub mod adders;
pub mod cli;
pub mod device;
pub mod engine;
mod error;
pub mod error_analysis;
pub mod image;
pub mod isa;
pub mod reference;

pub use error::{Error, Result};
