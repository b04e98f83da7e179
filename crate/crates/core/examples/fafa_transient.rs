//! FAFA1 and FAFA2 executed pulse by pulse on behavioral memristors, with
//! the averaged energy of each.

use felix_sim::adders::{fafa1_program, fafa2_program, full_add, AdderVariant};
use felix_sim::device::DeviceParams;
use felix_sim::engine::{choose_v0, run_program_transient, StepTiming, V0Preset, DEFAULT_DT};

fn main() -> felix_sim::Result<()> {
    let p = DeviceParams::default();
    let timing = StepTiming::derived(&p, DEFAULT_DT)?;
    let v0 = |g| {
        choose_v0(g, &V0Preset::Derived, &p)
            .map(|c| c.v0)
            .unwrap_or(0.0)
    };
    let mut mean = Vec::new();
    for (variant, prog) in [
        (AdderVariant::Fafa1, fafa1_program()),
        (AdderVariant::Fafa2, fafa2_program()),
    ] {
        let mut total = 0.0;
        println!("{variant}:");
        for i in 0u8..8 {
            let (a, b, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
            let run =
                run_program_transient(prog, &[("A", a), ("B", b), ("Cin", c)], v0, &p, timing)?;
            let functional = full_add(variant, a, b, c)?;
            let transient = (run.outputs["Sum"], run.outputs["Cout"]);
            total += run.energy;
            println!(
                "  {}{}{} -> Sum {} Cout {}  energy {:.3e} J  {}",
                u8::from(a),
                u8::from(b),
                u8::from(c),
                u8::from(transient.0),
                u8::from(transient.1),
                run.energy,
                if transient == functional {
                    "ok"
                } else {
                    "MISMATCH"
                }
            );
        }
        mean.push(total / 8.0);
    }
    println!(
        "mean energy FAFA1 {:.3e} J, FAFA2 {:.3e} J, ratio {:.3}",
        mean[0],
        mean[1],
        mean[1] / mean[0]
    );
    Ok(())
}
