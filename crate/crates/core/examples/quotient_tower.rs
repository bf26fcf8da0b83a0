//! Coset tower G/H₁ ← G/H₂ ← … for a chain of normal subgroups.
//!
//!     cargo run --example quotient_tower

use skewring::algebra::{is_simple_linear, DEFAULT_MAX_DIM};
use skewring::group::action_from_images;
use skewring::scalar::Field;
use skewring::tower::{build_quotient_tower, level_ring, limit_simplicity_verdict};

fn main() -> skewring::Result<()> {
    // S₃ with the chain A₃ ⊃ 1.
    let s3 = action_from_images(&[("s", &[2, 1, 3]), ("r", &[2, 3, 1])])?;
    let g = s3.group();
    let a3 = g.subgroup_closure(&[s3.element("r")?]);
    let chain = vec![a3, vec![g.identity()]];
    let (tower, act) = build_quotient_tower(g, &chain)?;

    for level in 1..=tower.depth() {
        let ctx = level_ring(&tower, &act, level, Field::Rational, false)?;
        let v = is_simple_linear(&ctx, DEFAULT_MAX_DIM)?;
        println!("level {level}: {:?}, ring dim {}, simple {}", tower.labels(level), ctx.dim(), v.simple);
    }
    let report = limit_simplicity_verdict(&tower, &act, tower.depth(), None)?;
    println!("verdict at depth {}: {:?}", tower.depth(), report.verdict);
    Ok(())
}
