//! Combinatorics of a block-diagonal Higgs bundle: partitions, the slice
//! representation and the cyclic Higgs field.

use torus_strata::shb_model::{
    cyclic_phi_weights, expected_dim_central_locus, partition_dim, partitions_with_order,
    positive_slice_rep, GradingConvention, ShbSpec, StableBlock,
};

fn main() -> torus_strata::Result<()> {
    let spec = ShbSpec::new(
        2,
        vec![StableBlock::bundle(1), StableBlock::new(vec![1, 1], vec![1, -1])?],
    )?;
    println!("rank {}, expected dimension {}", spec.rank(), expected_dim_central_locus(spec.rank(), spec.genus));

    let poset = partitions_with_order(&spec)?;
    for p in &poset.partitions {
        let d = partition_dim(p, &spec.block_ranks(), spec.genus)?;
        println!("  partition {:?}: dim {} of {}", p.parts, d.dim, d.expected);
    }
    println!("  order pairs {:?}", poset.order_pairs());

    let slice = positive_slice_rep(&spec, GradingConvention::Default)?;
    println!("positive slice classes:");
    for (line, class) in slice.rep.lines().iter().zip(&slice.classes) {
        println!("  {} weight {:?} rho {:?}", class.label(), line.weight, line.rho);
    }

    let cyclic = cyclic_phi_weights(&spec)?;
    println!("cyclic Higgs field is {}", cyclic.verdict.class.as_str());
    for b in &cyclic.rr_bounds {
        println!("  {b:?}");
    }
    Ok(())
}
