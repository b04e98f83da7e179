//! Averaged quality over the bundled image sets.

use std::path::PathBuf;

use felix_sim::adders::{AdderVariant, RcaScenario};
use felix_sim::image::{run_dataset, App};

fn main() -> felix_sim::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/dataset");
    let s = RcaScenario::numbered(1, AdderVariant::Fafa2)?;
    for (app, dir) in [
        (App::Addition, "gray"),
        (App::Motion, "motion"),
        (App::Grayscale, "rgb"),
        (App::AvgPool, "gray"),
    ] {
        let r = run_dataset(data.join(dir), app, &s)?;
        println!("{app}:");
        for row in &r.rows {
            println!(
                "  {:<28} PSNR {} dB  SSIM {:.4}",
                row.inputs, row.quality.psnr, row.quality.ssim
            );
        }
        println!(
            "  average                      PSNR {} dB  SSIM {:.4}  MSSIM {:.4}",
            r.average.psnr, r.average.ssim, r.average.mssim
        );
    }
    Ok(())
}
