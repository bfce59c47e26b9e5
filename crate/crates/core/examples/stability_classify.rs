//! Classifies a few torus vectors and checks each certificate.

use std::sync::Arc;

use torus_strata::stability::{classify, destabilizer_bruteforce};
use torus_strata::torus_rep::{RepVector, Representation};

fn show(name: &str, rank: usize, weights: &[Vec<i64>]) -> torus_strata::Result<()> {
    let rep = Arc::new(Representation::from_weights(rank, weights)?);
    let v = RepVector::from_real(rep, &vec![1.0; weights.len()])?;
    let c = classify(&v)?;
    println!("{name}: {} (certificate verifies: {})", c.class.as_str(), c.verify());
    println!("  certificate: {:?}", c.certificate);
    println!("  box search destabilizer: {:?}", destabilizer_bruteforce(&v, 10));
    Ok(())
}

fn main() -> torus_strata::Result<()> {
    show("triangle", 2, &[vec![1, 0], vec![0, 1], vec![-1, -1]])?;
    show("line", 2, &[vec![1, 0], vec![-1, 0]])?;
    show("corner", 2, &[vec![1, 0], vec![0, 1], vec![-1, 0]])?;
    show("half plane", 2, &[vec![1, 2], vec![3, 1]])?;
    Ok(())
}
