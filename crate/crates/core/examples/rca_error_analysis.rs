//! Exhaustive error metrics of the two 8-bit approximate adders, ranked
//! against the published baselines.

use felix_sim::adders::{rca_add, AdderVariant, RcaScenario};
use felix_sim::error_analysis::{cell_metrics, compare_with_references, rca_metrics};

fn main() -> felix_sim::Result<()> {
    let cell = cell_metrics(AdderVariant::Fafa2)?;
    println!(
        "cell: ED total {} max {}, MED {}, NMED {:.4}, ER_sum {}",
        cell.ed_total,
        cell.ed_max,
        cell.med_exact(),
        cell.nmed(),
        cell.er_sum()
    );

    for id in [1, 2] {
        let s = RcaScenario::numbered(id, AdderVariant::Fafa1)?;
        println!(
            "scenario {id}: 0 + 0 = {}, 15 + 15 = {}",
            rca_add(&s, 0, 0)?,
            rca_add(&s, 15, 15)?
        );
        let r = rca_metrics(&s)?;
        println!(
            "  {} pairs, MED {} = {:.4}, NMED {:.5}, worst ED {}",
            r.sample_count,
            r.med_exact(),
            r.med(),
            r.nmed(),
            r.ed_max
        );
        for (rank, row) in compare_with_references(&r, &s).iter().enumerate() {
            println!(
                "  {:>2}. {:<18} NMED {:.5} ({})",
                rank + 1,
                row.name,
                row.nmed,
                row.source
            );
        }
    }
    Ok(())
}
