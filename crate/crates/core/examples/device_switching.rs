//! A written-1 cell under sustained reset drive, step by step.

use felix_sim::device::{reset_traversal_time, DeviceParams, MemristorCell};

fn main() -> felix_sim::Result<()> {
    let p = DeviceParams::default();
    let dt = 1e-6;
    let mut cell = MemristorCell::with_logic("out", true, &p);
    println!("t_us,x,resistance_ohm,logic");
    for step in 0..=40 {
        if step % 4 == 0 {
            println!(
                "{},{:.4},{},{}",
                step,
                cell.x,
                cell.resistance(&p),
                u8::from(cell.logic())
            );
        }
        cell = cell.integrate(-1.0, dt, &p)?;
    }
    let t = reset_traversal_time(&p, dt)?;
    println!("reset traversal time: {t:.3e} s");

    // Inside the dead zone nothing moves.
    let still = MemristorCell::with_logic("in", false, &p).integrate(0.5, 1.0, &p)?;
    println!("x after 1 s at 0.5 V: {}", still.x);
    Ok(())
}
