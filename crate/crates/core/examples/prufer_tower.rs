//! The Prüfer 2-group acting on the dyadic tower: every level is
//! transitive and every generator is eventually free.
//!
//!     cargo run --example prufer_tower

use skewring::scalar::Field;
use skewring::tower::{build_prufer_tower, invariant_clopen_search, level_ring, limit_simplicity_verdict};

fn main() -> skewring::Result<()> {
    let depth = 6;
    let (tower, act) = build_prufer_tower(depth)?;
    for level in 1..=3 {
        let ctx = level_ring(&tower, &act, level, Field::Rational, true)?;
        println!("level {level}: {} points, ring dim {}", tower.size(level), ctx.dim());
    }

    let search = invariant_clopen_search(&tower, &act, depth - 1)?;
    println!("clopen search: {:?} after {} tests", search.outcome, search.tests.len());

    let report = limit_simplicity_verdict(&tower, &act, depth, None)?;
    println!("limit verdict: {:?}", report.verdict);
    for line in &report.reasoning {
        println!("  {line}");
    }
    Ok(())
}
