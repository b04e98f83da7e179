//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the console.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use felix_sim::adders::{
    exact_felix_program, fafa1_program, fafa2_program, full_add, rca_add, rca_resources,
    AdderVariant, RcaScenario,
};
use felix_sim::cli::{cmd_rca, Format, RcaOpts, RunConfig};
use felix_sim::device::{integrate_state, DeviceParams, MemristorCell};
use felix_sim::engine::{
    choose_v0, execute_step, node_voltage, run_program_transient, static_window, GateKind,
    StepSetup, StepTiming, V0Preset, DEFAULT_DT,
};
use felix_sim::error_analysis::{cell_metrics, rca_metrics};
use felix_sim::image::{evaluate, read_netpbm, App, AppInputs, ImagePlane};
use felix_sim::isa::run_program;
use felix_sim::reference::reported;
use num_rational::Ratio;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: f64) -> Result<(), String> {
    ensure(
        elapsed.as_secs_f64() < limit,
        format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()),
    )
}

fn bits(i: u8) -> (bool, bool, bool) {
    (i & 4 != 0, i & 2 != 0, i & 1 != 0)
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn truth_tables() -> Check {
    let t = Instant::now();
    let p = DeviceParams::default();
    let timing = StepTiming::derived(&p, DEFAULT_DT).map_err(e)?;
    let v0 = |g| {
        choose_v0(g, &V0Preset::Derived, &p)
            .map(|c| c.v0)
            .unwrap_or(f64::NAN)
    };
    const SUM: [bool; 8] = [true, true, true, false, true, false, false, false];
    for i in 0u8..8 {
        let (a, b, c) = bits(i);
        let ins = [("A", a), ("B", b), ("Cin", c)];
        let want = (SUM[i as usize], !SUM[i as usize]);
        for (v, prog) in [
            (AdderVariant::Fafa1, fafa1_program()),
            (AdderVariant::Fafa2, fafa2_program()),
        ] {
            ensure(
                full_add(v, a, b, c).map_err(e)? == want,
                format!("{v} functional row {i:03b}"),
            )?;
            let tr = run_program_transient(prog, &ins, v0, &p, timing).map_err(e)?;
            ensure(
                (tr.outputs["Sum"], tr.outputs["Cout"]) == want,
                format!("{v} transient row {i:03b}"),
            )?;
        }
        let ex = run_program(exact_felix_program(), &ins).map_err(e)?;
        let ones = u8::from(a) + u8::from(b) + u8::from(c);
        ensure(
            u8::from(ex.outputs["Sum"]) + 2 * u8::from(ex.outputs["Cout"]) == ones,
            format!("exact program row {i:03b}"),
        )?;
    }
    within(t.elapsed(), 1.0)?;
    Ok(format!(
        "8/8 rows for FAFA1, FAFA2 (functional and transient) and exact, {:.0} ms",
        t.elapsed().as_secs_f64() * 1e3
    ))
}

fn divider() -> Check {
    let p = DeviceParams::legacy_divider();
    let (on, off) = (p.r_on, p.r_off);
    let mut got = Vec::new();
    for (rs, want) in [
        (vec![off, off, off], 0.003),
        (vec![off, off, on], 0.5),
        (vec![off, on, on], 0.667),
        (vec![on, on, on], 0.75),
    ] {
        let v = node_voltage(1.0, on, &rs).map_err(e)?;
        ensure(
            (v - want).abs() <= 0.005,
            format!("node voltage {v:.4} vs {want}"),
        )?;
        got.push(format!("{v:.3}"));
    }
    for (g, v) in [
        (GateKind::Nor3, 1.0),
        (GateKind::Min3, 0.75),
        (GateKind::Nand3, 0.67),
    ] {
        let w = static_window(g, &p);
        ensure(
            w.contains(v),
            format!("{g} window ({:.4}, {:.4}] misses {v}", w.lower, w.upper),
        )?;
    }
    Ok(format!(
        "NOR3 node voltages {} V; windows contain 1/0.75/0.67 V",
        got.join("/")
    ))
}

fn cell() -> Check {
    let r = cell_metrics(AdderVariant::Fafa1).map_err(e)?;
    ensure(
        r.med_exact() == Ratio::new(1, 4),
        format!("MED {}", r.med_exact()),
    )?;
    ensure(
        (r.nmed() - 0.0833).abs() <= 0.0005,
        format!("NMED {}", r.nmed()),
    )?;
    ensure(r.er_sum() == 0.25, format!("ER_sum {}", r.er_sum()))?;
    ensure(
        r.er_cout() == Some(0.0),
        format!("ER_cout {:?}", r.er_cout()),
    )?;
    Ok(format!(
        "MED {} NMED {:.4} ER_sum {} ER_cout 0",
        r.med_exact(),
        r.nmed(),
        r.er_sum()
    ))
}

/// Stores every ED, then reduces; independent of the streaming enumerator.
fn two_pass_total(s: &RcaScenario) -> Result<u64, String> {
    let mut eds = Vec::with_capacity(1 << 16);
    for a in 0..256u64 {
        for b in 0..256u64 {
            eds.push(rca_add(s, a, b).map_err(e)?.abs_diff(a + b));
        }
    }
    Ok(eds.iter().sum())
}

fn rca_errors() -> Check {
    let t = Instant::now();
    let mut out = Vec::new();
    for (id, med, nmed) in [(1, 3.617, 0.007), (2, 7.376, 0.014)] {
        let s = RcaScenario::numbered(id, AdderVariant::Fafa1).map_err(e)?;
        let r = rca_metrics(&s).map_err(e)?;
        ensure(
            r.sample_count == 65536 && r.exhaustive,
            "not exhaustive over 65536 pairs",
        )?;
        ensure(
            (r.med() - med).abs() <= 0.001,
            format!("scenario {id} MED {}", r.med()),
        )?;
        ensure(
            (r.nmed() - nmed).abs() <= 0.0005,
            format!("scenario {id} NMED {}", r.nmed()),
        )?;
        ensure(
            two_pass_total(&s)? == r.ed_total,
            format!("scenario {id} oracle disagrees"),
        )?;
        out.push(format!("s{id} MED {} NMED {:.4}", r.med_exact(), r.nmed()));
    }
    within(t.elapsed(), 10.0)?;
    Ok(format!(
        "{}; two-pass oracle agrees; {:.2} s",
        out.join(", "),
        t.elapsed().as_secs_f64()
    ))
}

fn resources() -> Check {
    for (prog, want) in [
        (exact_felix_program(), (7, 6)),
        (fafa1_program(), (6, 2)),
        (fafa2_program(), (5, 2)),
    ] {
        let r = prog.resources();
        ensure(
            (r.memristor_count, r.compute_cycles) == want,
            format!("{} cell {:?}", prog.name, r),
        )?;
    }
    let cycles = |s: RcaScenario| rca_resources(&s).map(|r| r.cycles_with_init).map_err(e);
    ensure(cycles(RcaScenario::exact(8))? == 64, "exact 8-bit cycles")?;
    ensure(
        cycles(RcaScenario::numbered(1, AdderVariant::Fafa1).map_err(e)?)? == 41,
        "scenario 1 FAFA1 cycles",
    )?;
    for v in [AdderVariant::Fafa1, AdderVariant::Fafa2] {
        ensure(
            cycles(RcaScenario::numbered(2, v).map_err(e)?)? == 35,
            format!("scenario 2 {v} cycles"),
        )?;
    }
    let cfg = RunConfig {
        format: Format::Csv,
        ..RunConfig::default()
    };
    let opts = RcaOpts {
        scenario: Some(1),
        variant: AdderVariant::Fafa2,
        ..RcaOpts::default()
    };
    let mut buf = Vec::new();
    cmd_rca(&cfg, &opts, &mut buf).map_err(e)?;
    let text = String::from_utf8(buf).map_err(e)?;
    let published = reported()
        .rca_resources(1, "FAFA2")
        .map(|r| r.cycles)
        .unwrap_or(0);
    let flag = format!("cycles: computed 41 vs reported {published}");
    ensure(
        text.contains(&flag),
        "scenario 1 FAFA2 row lacks the cycle discrepancy flag",
    )?;
    Ok(format!(
        "cells 7/6, 6/2, 5/2; RCA cycles 64/41/35; scenario 1 FAFA2 flagged ({flag})"
    ))
}

fn energy() -> Check {
    let p = DeviceParams::default();
    let timing = StepTiming::derived(&p, DEFAULT_DT).map_err(e)?;
    let v0 = |g| {
        choose_v0(g, &V0Preset::Derived, &p)
            .map(|c| c.v0)
            .unwrap_or(f64::NAN)
    };
    let mut mean = Vec::new();
    for prog in [fafa1_program(), fafa2_program()] {
        let mut total = 0.0;
        for i in 0u8..8 {
            let (a, b, c) = bits(i);
            total += run_program_transient(prog, &[("A", a), ("B", b), ("Cin", c)], v0, &p, timing)
                .map_err(e)?
                .energy;
        }
        mean.push(total / 8.0);
    }
    let ratio = mean[1] / mean[0];
    ensure(
        mean[1] < mean[0] && ratio < 0.9,
        format!("E2/E1 = {ratio:.3}"),
    )?;
    Ok(format!(
        "E(FAFA1) {:.3e} J, E(FAFA2) {:.3e} J, ratio {ratio:.3}",
        mean[0], mean[1]
    ))
}

fn load(name: &str) -> Result<ImagePlane, String> {
    read_netpbm(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("testdata")
            .join(name),
    )
    .map_err(e)
}

fn images() -> Check {
    let t = Instant::now();
    let cam = load("cameraman.pgm")?;
    let page = load("page.pgm")?;
    let coffee = load("coffee.ppm")?;
    let (fa, fb) = (load("motion_a.pgm")?, load("motion_b.pgm")?);
    let target = reported()
        .image("addition", 1)
        .map(|r| r.psnr)
        .unwrap_or(f64::NAN);
    let mut addition_s1 = f64::NAN;
    let mut worst = (f64::INFINITY, f64::INFINITY);
    for id in [1, 2] {
        let s = RcaScenario::numbered(id, AdderVariant::Fafa1).map_err(e)?;
        for app in App::ALL {
            let inputs = match app {
                App::Addition => AppInputs::Pair(&cam, &page),
                App::Motion => AppInputs::Pair(&fa, &fb),
                App::Grayscale => AppInputs::Single(&coffee),
                App::AvgPool => AppInputs::Single(&cam),
            };
            let q = evaluate(app, &inputs, &s).map_err(e)?.quality;
            let psnr = q.psnr.value();
            if app == App::Addition && id == 1 {
                addition_s1 = psnr;
            }
            ensure(psnr > 30.0, format!("{app} s{id} PSNR {psnr:.3}"))?;
            let (metric, floor) = if app == App::Motion && id == 2 {
                (q.ssim, 0.85)
            } else {
                (q.mssim, 0.9)
            };
            ensure(
                metric > floor,
                format!("{app} s{id} similarity {metric:.4}"),
            )?;
            worst = (worst.0.min(psnr), worst.1.min(q.mssim));
        }
    }
    ensure(
        (addition_s1 - target).abs() <= 2.0,
        format!("addition s1 PSNR {addition_s1:.3} vs {target}"),
    )?;
    within(t.elapsed(), 30.0)?;
    Ok(format!(
        "addition s1 PSNR {addition_s1:.3} dB (target {target} +-2, page image stands in for rice); min PSNR {:.2}, min MSSIM {:.3}; {:.2} s",
        worst.0,
        worst.1,
        t.elapsed().as_secs_f64()
    ))
}

fn exact_pipelines() -> Check {
    let exact = RcaScenario::exact(8);
    let mut pixels = 0usize;
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata");
    let mut gray = Vec::new();
    let mut rgb = Vec::new();
    for sub in ["", "dataset/gray", "dataset/motion", "dataset/rgb"] {
        let mut files: Vec<_> = std::fs::read_dir(dir.join(sub))
            .map_err(e)?
            .filter_map(|f| f.ok().map(|f| f.path()))
            .collect();
        files.sort();
        for f in files {
            match f.extension().and_then(|x| x.to_str()) {
                Some("pgm") => gray.push(read_netpbm(&f).map_err(e)?),
                Some("ppm") => rgb.push(read_netpbm(&f).map_err(e)?),
                _ => {}
            }
        }
    }
    for (i, a) in gray.iter().enumerate() {
        let b = &gray[(i + 1) % gray.len()];
        let pool = evaluate(App::AvgPool, &AppInputs::Single(a), &exact)
            .map_err(e)?
            .approx;
        for y in 0..pool.height() {
            for x in 0..pool.width() {
                let s: u32 = [(0, 0), (1, 0), (0, 1), (1, 1)]
                    .iter()
                    .map(|&(dx, dy)| u32::from(a.get(2 * x + dx, 2 * y + dy, 0)))
                    .sum();
                ensure(u32::from(pool.get(x, y, 0)) == s / 4, "avgpool pixel")?;
            }
        }
        pixels += pool.data().len();
        if a.same_shape(b) {
            let add = evaluate(App::Addition, &AppInputs::Pair(a, b), &exact)
                .map_err(e)?
                .approx;
            let mot = evaluate(App::Motion, &AppInputs::Pair(a, b), &exact)
                .map_err(e)?
                .approx;
            for (k, (&p, &q)) in a.data().iter().zip(b.data()).enumerate() {
                ensure(
                    u16::from(add.data()[k]) == (u16::from(p) + u16::from(q)).min(255),
                    "addition pixel",
                )?;
                ensure(mot.data()[k] == p.abs_diff(q), "motion pixel")?;
            }
            pixels += 2 * a.data().len();
        }
    }
    for img in &rgb {
        let g = evaluate(App::Grayscale, &AppInputs::Single(img), &exact)
            .map_err(e)?
            .approx;
        for (k, px) in img.data().chunks_exact(3).enumerate() {
            let s: u16 = px.iter().map(|&v| u16::from(v)).sum();
            ensure(u16::from(g.data()[k]) == s / 3, "grayscale pixel")?;
        }
        pixels += g.data().len();
    }
    Ok(format!(
        "{pixels} output pixels over {} images identical to integer arithmetic",
        gray.len() + rgb.len()
    ))
}

fn properties() -> Check {
    let p = DeviceParams::default();
    let timing = StepTiming::derived(&p, DEFAULT_DT).map_err(e)?;
    for g in GateKind::ALL {
        let v0 = choose_v0(g, &V0Preset::Derived, &p).map_err(e)?.v0;
        for i in 0u8..(1 << g.arity()) {
            let pattern: Vec<bool> = (0..g.arity()).map(|k| i >> k & 1 == 1).collect();
            let mut cells: Vec<MemristorCell> = pattern
                .iter()
                .map(|&b| MemristorCell::with_logic("in", b, &p))
                .collect();
            cells.push(MemristorCell::with_logic("out", true, &p));
            let before = cells[..g.arity()].to_vec();
            let setup = StepSetup {
                gate: g,
                inputs: (0..g.arity()).collect(),
                output: g.arity(),
                v0,
                timing,
            };
            let r = execute_step(&mut cells, &setup, &p).map_err(e)?;
            ensure(
                r.inputs_preserved && cells[..g.arity()] == before[..],
                format!("{g} disturbed its inputs"),
            )?;
        }
    }
    for k in 0..=100 {
        let v = -p.v_off_threshold + f64::from(k) / 100.0 * (p.v_on_threshold + p.v_off_threshold);
        for x in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            ensure(
                integrate_state(x, v, 1e-3, &p).map_err(e)? == x,
                "dead zone moved the state",
            )?;
        }
    }
    for v in [AdderVariant::Fafa1, AdderVariant::Fafa2] {
        for k in [4, 5] {
            let s = RcaScenario::new(8, k, v).map_err(e)?;
            for a in 0..256u64 {
                for b in 0..256u64 {
                    ensure(
                        rca_add(&s, a, b).map_err(e)? >> k == (a + b) >> k,
                        "carry chain diverged",
                    )?;
                }
            }
        }
    }
    for i in 0u8..8 {
        let (a, b, c) = bits(i);
        let maj = u8::from(a) + u8::from(b) + u8::from(c) >= 2;
        ensure(
            full_add(AdderVariant::Fafa1, a, b, c).map_err(e)?.0 == !maj,
            "MIN3 is not the inverted majority",
        )?;
    }
    let cellr = cell_metrics(AdderVariant::Fafa2).map_err(e)?;
    let s1 = rca_metrics(&RcaScenario::numbered(1, AdderVariant::Fafa2).map_err(e)?).map_err(e)?;
    ensure(
        cellr.nmed_exact() == cellr.med_exact() / 3,
        "cell normalization",
    )?;
    ensure(s1.nmed_exact() == s1.med_exact() / 511, "RCA normalization")?;
    Ok("non-destructive steps, dead zone, carry exactness at width 8, MIN3 = NOT MAJ3, NMED normalization".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("truth tables", truth_tables),
        ("divider reproduction", divider),
        ("cell metrics", cell),
        ("RCA error analysis", rca_errors),
        ("resource accounting", resources),
        ("energy ordering", energy),
        ("image benchmarks", images),
        ("exact-pipeline oracle", exact_pipelines),
        ("property suite", properties),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
