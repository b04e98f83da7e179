//! Full-adder cells and ripple-carry composition.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::isa::{account_composition, run_program, FunctionalOp, MicroProgram, ResourceReport};

/// Published approximate designs carried only as reported constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Baseline {
    Siafa1,
    Siafa2,
    Siafa3,
    Siafa4,
    Safan,
    Said1,
    Said2,
    Sinc,
    SincPlus,
}

impl Baseline {
    pub const ALL: [Baseline; 9] = [
        Baseline::Siafa1,
        Baseline::Siafa2,
        Baseline::Siafa3,
        Baseline::Siafa4,
        Baseline::Safan,
        Baseline::Said1,
        Baseline::Said2,
        Baseline::Sinc,
        Baseline::SincPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Baseline::Siafa1 => "SIAFA1",
            Baseline::Siafa2 => "SIAFA2",
            Baseline::Siafa3 => "SIAFA3",
            Baseline::Siafa4 => "SIAFA4",
            Baseline::Safan => "SAFAN",
            Baseline::Said1 => "SAID1",
            Baseline::Said2 => "SAID2",
            Baseline::Sinc => "SINC",
            Baseline::SincPlus => "SINC+",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdderVariant {
    /// Plain Boolean full adder.
    ExactArithmetic,
    /// The exact FELIX micro-program (XOR/XOR/MIN/NOT).
    ExactFelix,
    /// Approximate cell, `Cout = NAND(MIN, 1)` form.
    Fafa1,
    /// Approximate cell, `Cout = NOT(MIN)` form.
    Fafa2,
    Baseline(Baseline),
}

impl AdderVariant {
    pub fn name(self) -> &'static str {
        match self {
            AdderVariant::ExactArithmetic => "exact",
            AdderVariant::ExactFelix => "exact-felix",
            AdderVariant::Fafa1 => "FAFA1",
            AdderVariant::Fafa2 => "FAFA2",
            AdderVariant::Baseline(b) => b.name(),
        }
    }

    pub fn is_executable(self) -> bool {
        !matches!(self, AdderVariant::Baseline(_))
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            AdderVariant::ExactArithmetic | AdderVariant::ExactFelix
        )
    }

    /// The FELIX micro-program implementing this cell, if there is one.
    /// `ExactArithmetic` is realized by the exact FELIX program.
    pub fn program(self) -> Option<&'static MicroProgram> {
        match self {
            AdderVariant::ExactArithmetic | AdderVariant::ExactFelix => Some(exact_felix_program()),
            AdderVariant::Fafa1 => Some(fafa1_program()),
            AdderVariant::Fafa2 => Some(fafa2_program()),
            AdderVariant::Baseline(_) => None,
        }
    }
}

impl fmt::Display for AdderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for AdderVariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for AdderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = match s.to_ascii_lowercase().as_str() {
            "exact" | "exact-arithmetic" => AdderVariant::ExactArithmetic,
            "exact-felix" | "felix" => AdderVariant::ExactFelix,
            "fafa1" => AdderVariant::Fafa1,
            "fafa2" | "fafa" => AdderVariant::Fafa2,
            other => Baseline::ALL
                .into_iter()
                .find(|b| b.name().eq_ignore_ascii_case(other))
                .map(AdderVariant::Baseline)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown adder variant `{s}`")))?,
        };
        Ok(v)
    }
}

fn load(src: &str) -> MicroProgram {
    src.parse().expect("bundled micro-program is well formed")
}

pub fn exact_felix_program() -> &'static MicroProgram {
    static P: OnceLock<MicroProgram> = OnceLock::new();
    P.get_or_init(|| load(include_str!("../data/programs/exact_felix.prog")))
}

pub fn fafa1_program() -> &'static MicroProgram {
    static P: OnceLock<MicroProgram> = OnceLock::new();
    P.get_or_init(|| load(include_str!("../data/programs/fafa1.prog")))
}

pub fn fafa2_program() -> &'static MicroProgram {
    static P: OnceLock<MicroProgram> = OnceLock::new();
    P.get_or_init(|| load(include_str!("../data/programs/fafa2.prog")))
}

/// `(sum, carry)` of one full-adder cell.
pub fn full_add(variant: AdderVariant, a: bool, b: bool, c: bool) -> Result<(bool, bool)> {
    match variant {
        AdderVariant::ExactArithmetic => {
            let carry = (a & b) | (a & c) | (b & c);
            Ok((a ^ b ^ c, carry))
        }
        AdderVariant::ExactFelix => {
            let run = run_program(exact_felix_program(), &[("A", a), ("B", b), ("Cin", c)])?;
            Ok((run.outputs["Sum"], run.outputs["Cout"]))
        }
        AdderVariant::Fafa1 | AdderVariant::Fafa2 => {
            let sum = FunctionalOp::Min3.eval(&[a, b, c])?;
            Ok((sum, !sum))
        }
        AdderVariant::Baseline(b) => Err(Error::UnsupportedVariant(b.name().to_string())),
    }
}

/// Width and approximate-LSB split of a ripple-carry adder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RcaScenario {
    pub width: u32,
    /// Positions `0..approx_lsb_count` use `approx_variant`; the rest are exact.
    pub approx_lsb_count: u32,
    pub approx_variant: AdderVariant,
    pub carry_in: bool,
}

pub const MAX_WIDTH: u32 = 62;

impl RcaScenario {
    pub fn exact(width: u32) -> Self {
        Self {
            width,
            approx_lsb_count: 0,
            approx_variant: AdderVariant::ExactArithmetic,
            carry_in: false,
        }
    }

    /// Numbered 8-bit splits: 1 = four approximate LSBs, 2 = five.
    pub fn numbered(id: u8, variant: AdderVariant) -> Result<Self> {
        let approx = match id {
            1 => 4,
            2 => 5,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown scenario {id}, expected 1 or 2"
                )))
            }
        };
        Self::new(8, approx, variant)
    }

    pub fn new(width: u32, approx_lsb_count: u32, approx_variant: AdderVariant) -> Result<Self> {
        let s = Self {
            width,
            approx_lsb_count,
            approx_variant,
            carry_in: false,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_carry_in(mut self, carry_in: bool) -> Self {
        self.carry_in = carry_in;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width > MAX_WIDTH {
            return Err(Error::InvalidArgument(format!(
                "adder width must be in 1..={MAX_WIDTH}, got {}",
                self.width
            )));
        }
        if self.approx_lsb_count > self.width {
            return Err(Error::InvalidArgument(format!(
                "{} approximate positions exceed width {}",
                self.approx_lsb_count, self.width
            )));
        }
        if self.approx_lsb_count > 0 && !self.approx_variant.is_executable() {
            return Err(Error::UnsupportedVariant(
                self.approx_variant.name().to_string(),
            ));
        }
        Ok(())
    }

    pub fn variant_at(&self, position: u32) -> AdderVariant {
        if position < self.approx_lsb_count {
            self.approx_variant
        } else {
            AdderVariant::ExactArithmetic
        }
    }

    /// Numbered 8-bit scenario this matches, if any.
    pub fn number(&self) -> Option<u8> {
        match (self.width, self.approx_lsb_count) {
            (8, 4) => Some(1),
            (8, 5) => Some(2),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        if self.approx_lsb_count == 0 || self.approx_variant.is_exact() {
            format!("exact-{}bit", self.width)
        } else {
            format!(
                "{}-{}bit-{}lsb",
                self.approx_variant.name(),
                self.width,
                self.approx_lsb_count
            )
        }
    }
}

/// Ripple addition LSB to MSB. The result has `width + 1` bits, the top one
/// being the final carry.
pub fn rca_add(scenario: &RcaScenario, a: u64, b: u64) -> Result<u64> {
    scenario.validate()?;
    let w = scenario.width;
    for v in [a, b] {
        if v >> w != 0 {
            return Err(Error::OperandOverflow { value: v, width: w });
        }
    }
    let mut carry = scenario.carry_in;
    let mut out = 0u64;
    for i in 0..w {
        let (s, c) = full_add(
            scenario.variant_at(i),
            (a >> i) & 1 == 1,
            (b >> i) & 1 == 1,
            carry,
        )?;
        out |= u64::from(s) << i;
        carry = c;
    }
    Ok(out | u64::from(carry) << w)
}

/// Cycle and memristor totals for the scenario's cell inventory. Each carry
/// cell is counted once, in the cell that produces it.
pub fn rca_resources(scenario: &RcaScenario) -> Result<ResourceReport> {
    scenario.validate()?;
    let cells = (0..scenario.width)
        .map(|i| {
            scenario
                .variant_at(i)
                .program()
                .map(|p| p.resources())
                .ok_or_else(|| Error::UnsupportedVariant(scenario.variant_at(i).name().to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    account_composition(&cells, 1)
}

/// Widens the adder, keeping the approximate LSB count; new MSBs are exact.
pub fn extend_scenario(scenario: &RcaScenario, new_width: u32) -> Result<RcaScenario> {
    if new_width < scenario.width {
        return Err(Error::InvalidArgument(format!(
            "cannot extend a {}-bit adder to {new_width} bits",
            scenario.width
        )));
    }
    let s = RcaScenario {
        width: new_width,
        ..*scenario
    };
    s.validate()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fafa_rows() {
        assert_eq!(
            full_add(AdderVariant::Fafa1, false, false, true).unwrap(),
            (true, false)
        );
        assert_eq!(
            full_add(AdderVariant::Fafa2, false, false, false).unwrap(),
            (true, false)
        );
        assert_eq!(
            full_add(AdderVariant::ExactArithmetic, false, false, false).unwrap(),
            (false, false)
        );
        assert_eq!(
            full_add(AdderVariant::ExactArithmetic, true, true, true).unwrap(),
            (true, true)
        );
    }

    #[test]
    fn baselines_are_not_executable() {
        let v = AdderVariant::Baseline(Baseline::Said1);
        assert!(matches!(
            full_add(v, true, false, true),
            Err(Error::UnsupportedVariant(_))
        ));
        assert!(RcaScenario::new(8, 4, v).is_err());
    }

    #[test]
    fn scenario1_traces() {
        let s = RcaScenario::numbered(1, AdderVariant::Fafa1).unwrap();
        assert_eq!(rca_add(&s, 0, 0).unwrap(), 15);
        assert_eq!(rca_add(&s, 15, 15).unwrap(), 16);
    }

    #[test]
    fn all_exact_is_addition() {
        let s = RcaScenario::new(8, 0, AdderVariant::Fafa2).unwrap();
        for (a, b) in [(0, 0), (255, 255), (17, 200), (128, 127)] {
            assert_eq!(rca_add(&s, a, b).unwrap(), a + b);
            assert_eq!(rca_add(&s.with_carry_in(true), a, b).unwrap(), a + b + 1);
        }
    }

    #[test]
    fn overflow_rejected() {
        let s = RcaScenario::exact(8);
        assert!(matches!(
            rca_add(&s, 256, 0),
            Err(Error::OperandOverflow {
                value: 256,
                width: 8
            })
        ));
    }

    #[test]
    fn resources_match_published_cycles() {
        assert_eq!(
            rca_resources(&RcaScenario::exact(8))
                .unwrap()
                .cycles_with_init,
            64
        );
        let s1 = RcaScenario::numbered(1, AdderVariant::Fafa1).unwrap();
        assert_eq!(rca_resources(&s1).unwrap().cycles_with_init, 41);
        for v in [AdderVariant::Fafa1, AdderVariant::Fafa2] {
            let s2 = RcaScenario::numbered(2, v).unwrap();
            assert_eq!(rca_resources(&s2).unwrap().cycles_with_init, 35);
        }
    }

    #[test]
    fn inventory_counts_each_carry_once() {
        assert_eq!(
            rca_resources(&RcaScenario::exact(8))
                .unwrap()
                .memristor_count,
            8 * 7 - 7
        );
        let s1 = RcaScenario::numbered(1, AdderVariant::Fafa2).unwrap();
        assert_eq!(
            rca_resources(&s1).unwrap().memristor_count,
            4 * 5 + 4 * 7 - 7
        );
    }

    #[test]
    fn extension() {
        let s1 = RcaScenario::numbered(1, AdderVariant::Fafa1).unwrap();
        let e = extend_scenario(&s1, 9).unwrap();
        assert_eq!((e.width, e.approx_lsb_count), (9, 4));
        let s2 = RcaScenario::numbered(2, AdderVariant::Fafa1).unwrap();
        let e = extend_scenario(&s2, 10).unwrap();
        assert_eq!((e.width, e.approx_lsb_count), (10, 5));
        assert_eq!(extend_scenario(&s1, 8).unwrap(), s1);
        assert!(extend_scenario(&s1, 7).is_err());
    }

    #[test]
    fn variant_names_parse() {
        for v in [
            AdderVariant::ExactArithmetic,
            AdderVariant::ExactFelix,
            AdderVariant::Fafa1,
            AdderVariant::Fafa2,
            AdderVariant::Baseline(Baseline::SincPlus),
        ] {
            assert_eq!(v.name().parse::<AdderVariant>().unwrap(), v);
        }
        assert!("ripple".parse::<AdderVariant>().is_err());
    }
}
