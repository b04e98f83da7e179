//! The four image applications on the bundled test images, with the
//! outputs written to a temporary directory.

use std::path::PathBuf;

use felix_sim::adders::{AdderVariant, RcaScenario};
use felix_sim::image::{evaluate, read_netpbm, write_netpbm, App, AppInputs};

fn main() -> felix_sim::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata");
    let camera = read_netpbm(data.join("cameraman.pgm"))?;
    let page = read_netpbm(data.join("page.pgm"))?;
    let coffee = read_netpbm(data.join("coffee.ppm"))?;
    let frame_a = read_netpbm(data.join("motion_a.pgm"))?;
    let frame_b = read_netpbm(data.join("motion_b.pgm"))?;
    let out = std::env::temp_dir().join("felix-image-pipelines");
    std::fs::create_dir_all(&out)?;

    for id in [1, 2] {
        let s = RcaScenario::numbered(id, AdderVariant::Fafa1)?;
        for app in App::ALL {
            let inputs = match app {
                App::Addition => AppInputs::Pair(&camera, &page),
                App::Motion => AppInputs::Pair(&frame_a, &frame_b),
                App::Grayscale => AppInputs::Single(&coffee),
                App::AvgPool => AppInputs::Single(&camera),
            };
            let run = evaluate(app, &inputs, &s)?;
            write_netpbm(out.join(format!("{app}_scenario{id}.pgm")), &run.approx)?;
            let q = run.quality;
            println!(
                "scenario {id} {app:<9} PSNR {} dB  SSIM {:.4}  MSSIM {:.4}",
                q.psnr, q.ssim, q.mssim
            );
        }
    }
    println!("outputs in {}", out.display());
    Ok(())
}
