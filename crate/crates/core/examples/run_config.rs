//! Layered configuration driving a report command, written to stdout.

use felix_sim::cli::{cmd_rca, parse_kv, RcaOpts, RunConfig};

fn main() -> felix_sim::Result<()> {
    let file = "# run settings\nformat = csv\nseed = 3\n";
    let overrides = parse_kv(file)?;
    let env = [("FELIX_FORMAT".to_string(), "json".to_string())];
    // Overrides beat the environment, so the report is CSV.
    let cfg = RunConfig::load(None, env, &overrides)?;
    let opts = RcaOpts {
        scenario: Some(2),
        ..RcaOpts::default()
    };
    let status = cmd_rca(&cfg, &opts, &mut std::io::stdout())?;
    eprintln!("status: {status:?}");
    Ok(())
}
