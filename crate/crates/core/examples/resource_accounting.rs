//! Cycle and memristor totals of composed adders next to the published
//! figures.

use felix_sim::adders::{rca_resources, AdderVariant, RcaScenario};
use felix_sim::reference::reported;

fn main() -> felix_sim::Result<()> {
    let rep = reported();
    let mut rows = vec![(0u8, "exact-felix", RcaScenario::exact(8))];
    for id in [1, 2] {
        for v in [AdderVariant::Fafa1, AdderVariant::Fafa2] {
            rows.push((id, v.name(), RcaScenario::numbered(id, v)?));
        }
    }
    println!("scenario variant      cycles (reported)  memristors (reported)");
    for (id, name, s) in rows {
        let r = rca_resources(&s)?;
        let p = rep.rca_resources(id, name).expect("published row");
        let flag = if p.cycles != r.cycles_with_init {
            "  <- differs"
        } else {
            ""
        };
        println!(
            "{id:>8} {name:<12} {:>6} ({:>3})        {:>4} ({:>3}){flag}",
            r.cycles_with_init, p.cycles, r.memristor_count, p.memristors
        );
    }
    Ok(())
}
