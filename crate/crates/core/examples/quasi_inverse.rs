//! Von Neumann regularity: solve x·y·x = x, and see it fail when the
//! characteristic divides a stabilizer order.
//!
//!     cargo run --example quasi_inverse

use skewring::error::Error;
use skewring::ground::GroundElement;
use skewring::group::{Action, FiniteGroup};
use skewring::scalar::Field;
use skewring::skew::SkewRingContext;

fn main() -> skewring::Result<()> {
    // Z₂ acting trivially on k¹: the group algebra k[Z₂].
    let act = Action::trivial(FiniteGroup::cyclic(2), 1);
    for field in [Field::Rational, Field::Prime(3), Field::Prime(2)] {
        let ctx = SkewRingContext::new(act.clone(), field);
        let one = GroundElement::one(field, 1);
        let x = ctx.add(&ctx.one(), &ctx.monomial(&one, 1))?;
        match ctx.quasi_inverse(&x) {
            Ok(y) => {
                let check = ctx.product(&[&x, &y, &x])? == x;
                println!("{field}: y = {}, x·y·x = x: {check}", ctx.display(&y));
            }
            Err(Error::NoSolution) => println!("{field}: 1 + g has no quasi-inverse"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
