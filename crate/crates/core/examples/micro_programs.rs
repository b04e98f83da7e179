//! The three full-adder micro-programs: text form, functional run,
//! resources.

use felix_sim::adders::{exact_felix_program, fafa1_program, fafa2_program};
use felix_sim::isa::run_program;

fn main() -> felix_sim::Result<()> {
    for prog in [exact_felix_program(), fafa1_program(), fafa2_program()] {
        println!("{prog}");
        println!("A B Cin | Sum Cout");
        for i in 0u8..8 {
            let (a, b, c) = (i & 4 != 0, i & 2 != 0, i & 1 != 0);
            let run = run_program(prog, &[("A", a), ("B", b), ("Cin", c)])?;
            println!(
                "{} {} {}   | {}   {}",
                u8::from(a),
                u8::from(b),
                u8::from(c),
                u8::from(run.outputs["Sum"]),
                u8::from(run.outputs["Cout"])
            );
        }
        let r = prog.resources();
        println!(
            "{} memristors, {} compute cycles, {} with init ({})\n",
            r.memristor_count, r.compute_cycles, r.cycles_with_init, r.init_policy
        );
    }
    Ok(())
}
