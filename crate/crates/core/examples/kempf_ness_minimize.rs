//! Minimizes the torus Kempf-Ness functional for stable, polystable and unstable data.

use torus_strata::kempf_ness::{kn_minimize, KnProblem, DEFAULT_TOL};

fn main() -> torus_strata::Result<()> {
    let cases = [
        ("stable", 1, vec![vec![1], vec![-1]], vec![4.0, 1.0]),
        ("flat", 2, vec![vec![1, 0], vec![-1, 0]], vec![1.0, 9.0]),
        ("unstable", 2, vec![vec![1, 1], vec![2, -1]], vec![1.0, 1.0]),
    ];
    for (name, rank, weights, norms) in cases {
        let p = KnProblem::new(rank, weights, norms)?;
        let r = kn_minimize(&p, DEFAULT_TOL)?;
        println!(
            "{name}: {:?} after {} iterations, value {:.6}, minimizer {:?}, gradient {:.1e}",
            r.status, r.iterations, r.value, r.minimizer, r.gradient_norm
        );
        if let Some(ray) = &r.descent_ray {
            println!("  descent ray {ray:?}");
        }
        if let Some(flat) = &r.flat_space {
            println!("  flat directions {:?}", flat.basis());
        }
    }
    // closed form for the first case: x = -ln(2)/2, value 4
    println!("expected minimizer {:.6}", -std::f64::consts::LN_2 / 2.0);
    Ok(())
}
