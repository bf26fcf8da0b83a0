//! Two-sided ideal generated by an element, and membership tests.
//!
//!     cargo run --example ideal_closure

use skewring::algebra::DEFAULT_MAX_DIM;
use skewring::ground::GroundElement;
use skewring::group::action_from_images;
use skewring::ideal::{check_g_invariant_intersection, close};
use skewring::scalar::Field;
use skewring::skew::SkewRingContext;

fn main() -> skewring::Result<()> {
    // Z₂ swapping the first two of three coordinates: two orbits.
    let act = action_from_images(&[("g", &[2, 1, 3])])?;
    let ctx = SkewRingContext::new(act, Field::Rational);
    let field = ctx.field();

    let e1 = ctx.ground(&GroundElement::basis(field, 3, 0));
    let closure = close(&ctx, std::slice::from_ref(&e1), DEFAULT_MAX_DIM)?;
    println!("ideal of e1: dim {} of {}", closure.dim(), ctx.dim());

    let basis = closure.basis();
    let e2 = ctx.ground(&GroundElement::basis(field, 3, 1));
    let e3 = ctx.ground(&GroundElement::basis(field, 3, 2));
    println!("contains e2: {}, contains e3: {}", basis.contains(&ctx, &e2), basis.contains(&ctx, &e3));

    if let Some(terms) = closure.express(&ctx, &e2) {
        println!("e2 = sum of {} products a·e1·b", terms.len());
    }
    let meet = check_g_invariant_intersection(&ctx, &basis);
    println!("meets kⁿ in dim {}, G-simple ground ring: {}", meet.intersection.len(), meet.g_simple);
    Ok(())
}
