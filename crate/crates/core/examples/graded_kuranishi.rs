//! Round trip through the Kuranishi map on a random positively graded complex.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torus_strata::graded_kuranishi::{
    kuranishi_forward, kuranishi_inverse_graded, obstruction, random_complex, random_slice_vector,
    RandomComplexParams,
};

fn main() -> torus_strata::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cx = random_complex(&mut rng, &RandomComplexParams::default());
    println!("grades {:?}, total dimension {}", cx.grades(), cx.total_dim());
    for (w, g) in cx.grades().zip(cx.green()) {
        println!("  grade {w}: green status {:?}", g.status);
    }
    let x = random_slice_vector(&mut rng, &cx);
    let u = kuranishi_inverse_graded(&cx, &x)?;
    let back = kuranishi_forward(&cx, &u)?;
    println!("|kappa(kappa^-1(x)) - x| = {:.2e}", back.sub(&x).norm());
    println!("|obstruction| = {:.4}", obstruction(&cx, &x)?.norm());
    Ok(())
}
