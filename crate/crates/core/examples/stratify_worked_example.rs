//! Runs the stratification on two small graded representations and verifies the
//! resulting decomposition.

use std::sync::Arc;

use torus_strata::exact_geometry::format_q;
use torus_strata::stratify::{stratify, verify_decomposition, StratifyOptions};
use torus_strata::torus_rep::{RepVector, Representation};

fn run(lines: &[(Vec<i64>, i64)]) -> torus_strata::Result<()> {
    let rep = Arc::new(Representation::from_graded(1, lines)?);
    let u = RepVector::from_real(rep, &vec![1.0; lines.len()])?;
    let r = stratify(&u, &StratifyOptions::default())?;
    println!("lines {lines:?}");
    println!("  x = {:?}, sigma = {}, degrees {:?}", r.x, r.sigma, r.degrees());
    for (n, s) in r.stages.iter().enumerate() {
        println!(
            "  stage {n}: c = {} (upper {}), S = {:?}, nu exponents {:?}",
            format_q(&s.c),
            format_q(&s.c_upper),
            s.lines,
            s.nu_exponents
        );
    }
    println!("  residual exponents {:?}", r.residual_exponents);
    let check = verify_decomposition(&r, &u);
    println!("  verified: {}", check.all_passed());
    Ok(())
}

fn main() -> torus_strata::Result<()> {
    run(&[(vec![1], 1), (vec![-1], 2)])?;
    run(&[(vec![0], 1), (vec![1], 1), (vec![-1], 3)])?;
    Ok(())
}
