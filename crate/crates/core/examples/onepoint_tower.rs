//! No proper clopen of the one-point tower is invariant, yet the thread of
//! stars gives a proper invariant ideal in the limit.
//!
//!     cargo run --example onepoint_tower

use skewring::group::Word;
use skewring::scalar::Field;
use skewring::tower::{
    build_onepoint_tower, eventual_freeness, invariant_clopen_search, limit_simplicity_verdict, verify_fixed_thread_ideal,
    ONEPOINT_STAR,
};

fn main() -> skewring::Result<()> {
    let depth = 7;
    let (tower, act) = build_onepoint_tower(depth)?;

    let search = invariant_clopen_search(&tower, &act, depth - 1)?;
    println!("clopen search up to level {}: {:?}", depth - 1, search.outcome);

    let w = Word::parse("g3")?;
    println!("g3: {:?}", eventual_freeness(&tower, &act, &w, depth)?);

    let thread: Vec<usize> = (1..=depth).map(|n| tower.point(n, ONEPOINT_STAR).expect("star")).collect();
    println!("star thread ideal invariant: {}", verify_fixed_thread_ideal(&tower, &act, &thread, depth, Field::Rational)?);

    let report = limit_simplicity_verdict(&tower, &act, depth, None)?;
    println!("limit verdict: {:?}", report.verdict);
    Ok(())
}
