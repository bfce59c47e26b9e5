//! Exact hull queries on a small integer point set.

use torus_strata::exact_geometry::{format_q, saturated_kernel, PolytopeQ, QVec};

fn main() -> torus_strata::Result<()> {
    let square = PolytopeQ::from_i64(&[vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1], vec![0, 1]])?;
    let origin = QVec::zeros(2);
    println!("dimension: {}", square.dimension());
    println!("origin: {:?}", square.hull_position(&origin)?);

    let top = QVec::from_i64(&[0, 1]);
    println!("minimal face of (0,1): generators {:?}", square.minimal_face(&top)?);
    if let Some(w) = square.convex_weights(&top)? {
        let w: Vec<String> = w.iter().map(format_q).collect();
        println!("convex weights: [{}]", w.join(", "));
    }

    let segment = PolytopeQ::from_i64(&[vec![2, -1], vec![-4, 2]])?;
    println!("segment through origin: {:?}", segment.hull_position(&origin)?);

    let kernel = saturated_kernel(3, &[vec![2, 4, 6]])?;
    println!("saturated kernel of (2,4,6): {:?}", kernel.basis());
    Ok(())
}
