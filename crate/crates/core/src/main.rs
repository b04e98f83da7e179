use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{builder::PossibleValuesParser, Args, Parser, Subcommand};

use felix_sim::adders::AdderVariant;
use felix_sim::cli::{
    cmd_adder, cmd_dataset, cmd_gates_verify, cmd_image, cmd_rca, DatasetOpts, GatesOpts,
    ImageOpts, RcaOpts, RunConfig, Status, EXIT_INVALID,
};
use felix_sim::engine::GateKind;
use felix_sim::image::App;
use felix_sim::Result;

/// FELIX memristive logic simulator: gate verification, full adders,
/// ripple-carry error analysis and image benchmarks.
///
/// Configuration is layered: a flat `key = value` file (--config), then
/// FELIX_<KEY> environment variables, then --set and the flags below.
#[derive(Parser)]
#[command(name = "felix-sim", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a configuration key (repeatable), e.g. --set r_off=2000.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Report format.
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Drive voltage source for each gate.
    #[arg(long, global = true, value_parser = ["table6", "derived"])]
    v0_preset: Option<String>,
    /// Write per-step waveform CSVs into the output directory.
    #[arg(long, global = true)]
    dump_waveforms: bool,
    /// Directory for output images and waveforms.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// Seed for sampled error analysis.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Sample count for adders too wide for exhaustive enumeration.
    #[arg(long, global = true)]
    samples: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Gate-level checks.
    Gates {
        #[command(subcommand)]
        action: GatesAction,
    },
    /// One full-adder cell: truth table, transient cross-check, metrics, resources.
    Adder {
        #[arg(long, default_value = "fafa2", value_parser = variant_parser())]
        variant: String,
    },
    /// Ripple-carry adder error analysis and resource accounting.
    Rca {
        /// 1: four approximate LSBs, 2: five. Both when omitted.
        #[arg(long, value_parser = ["1", "2"])]
        scenario: Option<String>,
        /// Full-adder cell used in the approximate positions.
        #[arg(long, default_value = "fafa1", value_parser = variant_parser())]
        variant: String,
        /// Custom adder width instead of a numbered scenario.
        #[arg(long)]
        width: Option<u32>,
        /// Approximate LSB positions for --width.
        #[arg(long)]
        approx_lsbs: Option<u32>,
    },
    /// One image application on explicit input files.
    Image {
        /// addition, motion, grayscale or avgpool.
        app: String,
        /// One input (grayscale, avgpool) or two (addition, motion).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// 1: four approximate LSBs, 2: five. Both when omitted.
        #[arg(long, value_parser = ["1", "2"])]
        scenario: Option<String>,
        /// Full-adder cell used in the approximate positions.
        #[arg(long, default_value = "fafa1", value_parser = variant_parser())]
        variant: String,
    },
    /// One image application over every PGM/PPM file in a directory.
    Dataset {
        app: String,
        dir: PathBuf,
        /// 1: four approximate LSBs, 2: five. Both when omitted.
        #[arg(long, value_parser = ["1", "2"])]
        scenario: Option<String>,
        /// Full-adder cell used in the approximate positions.
        #[arg(long, default_value = "fafa1", value_parser = variant_parser())]
        variant: String,
    },
}

#[derive(Subcommand)]
enum GatesAction {
    /// Transient truth-table verification of MIN3, NAND2, NAND3, NOT1 and NOR3.
    Verify {
        /// Restrict to these gates (repeatable).
        #[arg(long)]
        gate: Vec<String>,
        /// Drive every selected gate at this voltage, (0, 10] V.
        #[arg(long)]
        v0: Option<f64>,
    },
}

fn variant_parser() -> PossibleValuesParser {
    PossibleValuesParser::new(["exact", "exact-felix", "fafa1", "fafa2"])
}

fn overrides(g: &Global) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for s in &g.set {
        let (k, v) = s.split_once('=').ok_or_else(|| {
            felix_sim::Error::Config(format!("--set expects KEY=VALUE, got `{s}`"))
        })?;
        out.push((k.trim().to_ascii_lowercase(), v.trim().to_string()));
    }
    let mut push = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            out.push((k.to_string(), v));
        }
    };
    push("format", g.format.clone());
    push("v0_preset", g.v0_preset.clone());
    push(
        "output_dir",
        g.output_dir.as_ref().map(|p| p.display().to_string()),
    );
    push("seed", g.seed.map(|v| v.to_string()));
    push("samples", g.samples.map(|v| v.to_string()));
    if g.dump_waveforms {
        push("dump_waveforms", Some("true".into()));
    }
    Ok(out)
}

fn scenario(s: Option<String>) -> Option<u8> {
    s.and_then(|s| s.parse().ok())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    let cfg = RunConfig::load(
        cli.global.config.as_deref(),
        std::env::vars(),
        &overrides(&cli.global)?,
    )?;
    match cli.command {
        Command::Gates {
            action: GatesAction::Verify { gate, v0 },
        } => {
            let gates = gate
                .iter()
                .map(|g| g.parse::<GateKind>())
                .collect::<Result<_>>()?;
            cmd_gates_verify(&cfg, &GatesOpts { gates, v0 }, out)
        }
        Command::Adder { variant } => cmd_adder(&cfg, variant.parse()?, out),
        Command::Rca {
            scenario: s,
            variant,
            width,
            approx_lsbs,
        } => {
            let opts = RcaOpts {
                scenario: scenario(s),
                variant: variant.parse::<AdderVariant>()?,
                width,
                approx_lsbs,
            };
            cmd_rca(&cfg, &opts, out)
        }
        Command::Image {
            app,
            inputs,
            scenario: s,
            variant,
        } => {
            let opts = ImageOpts {
                app: app.parse::<App>()?,
                inputs,
                scenario: scenario(s),
                variant: variant.parse()?,
            };
            cmd_image(&cfg, &opts, out)
        }
        Command::Dataset {
            app,
            dir,
            scenario: s,
            variant,
        } => {
            let opts = DatasetOpts {
                app: app.parse::<App>()?,
                dir,
                scenario: scenario(s),
                variant: variant.parse()?,
            };
            cmd_dataset(&cfg, &opts, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
