//! Transient truth-table check of every gate at the derived and the
//! published drive voltages.

use felix_sim::device::DeviceParams;
use felix_sim::engine::{
    choose_v0, verify_gate_truth_table, GateKind, StepTiming, V0Preset, DEFAULT_DT,
};

fn main() -> felix_sim::Result<()> {
    let p = DeviceParams::default();
    let timing = StepTiming::derived(&p, DEFAULT_DT)?;
    println!(
        "pulse width {:.3e} s, {} Euler steps",
        timing.pulse_width,
        timing.steps()
    );
    for preset in [V0Preset::Derived, V0Preset::Published] {
        println!("preset {}:", preset.name());
        for g in GateKind::ALL {
            let c = choose_v0(g, &preset, &p)?;
            let r = verify_gate_truth_table(g, c.v0, &p, timing)?;
            println!(
                "  {g:<6} v0={:.3} V in_window={:<5} {}/{} rows, mean energy {:.3e} J",
                c.v0,
                c.in_window(),
                r.passed(),
                r.rows.len(),
                r.mean_energy()
            );
            for row in r.rows.iter().filter(|row| !row.pass()) {
                println!(
                    "    {} expected {} got {} inputs_preserved={}",
                    row.pattern(),
                    u8::from(row.expected),
                    u8::from(row.output),
                    row.inputs_preserved
                );
            }
        }
    }
    Ok(())
}
