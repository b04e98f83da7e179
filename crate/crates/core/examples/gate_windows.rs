//! Static operating windows and divider voltages for both parameter sets.

use felix_sim::device::DeviceParams;
use felix_sim::engine::{divider_voltages, static_window, GateKind};

fn main() {
    for (name, p) in [
        ("default", DeviceParams::default()),
        ("legacy", DeviceParams::legacy_divider()),
    ] {
        println!(
            "{name}: r_on={} r_off={} v_off={}",
            p.r_on, p.r_off, p.v_off_threshold
        );
        for g in GateKind::ALL {
            let w = static_window(g, &p);
            println!("  {g:<6} ({:.4}, {:.4}] V", w.lower, w.upper);
        }
    }

    let legacy = DeviceParams::legacy_divider();
    println!("NOR3 node voltage at v0 = 1 V:");
    for (pattern, v) in divider_voltages(GateKind::Nor3, 1.0, &legacy) {
        let bits: String = pattern.iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!("  {bits}: {v:.3} V");
    }
}
