//! Shorten an element of an ideal step by step until a unit or an
//! obstruction appears.
//!
//!     cargo run --example length_reduction

use skewring::ground::GroundElement;
use skewring::group::action_from_images;
use skewring::reduce::{reduce_to_completion, ReductionStep};
use skewring::scalar::Field;
use skewring::skew::SkewRingContext;

fn show(ctx: &SkewRingContext, start: &str, x: skewring::skew::SkewElement) -> skewring::Result<()> {
    let trace = reduce_to_completion(ctx, &x)?;
    println!("start {start}:");
    for (i, y) in trace.chain.iter().enumerate() {
        println!("  [{i}] {}", ctx.display(y));
    }
    match &trace.last {
        ReductionStep::Unit(u) => println!("  reached the unit {}", ctx.display(u)),
        ReductionStep::Stalled(phi) => println!("  stalled at invariant idempotent {:?}", phi.to_json()),
        ReductionStep::Obstruction { group_element, witness, verified, .. } => println!(
            "  obstruction: {} is inner on a corner, witness {} (verified: {verified})",
            ctx.group().label(*group_element),
            witness.to_json()
        ),
        ReductionStep::Shorter(_) => unreachable!("the trace never ends on a shorter element"),
    }
    Ok(())
}

fn main() -> skewring::Result<()> {
    let field = Field::Rational;
    let free = SkewRingContext::new(action_from_images(&[("g", &[2, 3, 1])])?, field);
    let a = GroundElement::from_i64s(field, &[1, 2, 0]);
    let b = GroundElement::from_i64s(field, &[0, 1, 1]);
    let x = free.add(&free.ground(&a), &free.monomial(&b, 1))?;
    show(&free, "a + b·g in k³*Z₃", x)?;

    // A transposition fixing the third coordinate: e₃(1 − g) cannot shrink.
    let fixed = SkewRingContext::new(action_from_images(&[("g", &[2, 1, 3])])?, field);
    let e3 = GroundElement::basis(field, 3, 2);
    let y = fixed.sub(&fixed.ground(&e3), &fixed.monomial(&e3, 1))?;
    show(&fixed, "e3 - e3·g in k³*Z₂", y)
}
