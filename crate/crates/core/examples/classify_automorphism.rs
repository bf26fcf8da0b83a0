//! Identity, X-inner or X-outer: classify the automorphism of kⁿ induced by
//! a group element, and produce a corner-inner witness when one exists.
//!
//!     cargo run --example classify_automorphism

use skewring::classify::{classify_automorphism, AutomorphismClass, corner_inner_witness, verify_corner_inner_witness};
use skewring::group::action_from_images;
use skewring::scalar::Field;

fn main() -> skewring::Result<()> {
    let act = action_from_images(&[("f", &[2, 1, 3, 4]), ("h", &[2, 3, 4, 1])])?;
    for reference in ["1", "f", "h", "f*h"] {
        let g = act.element(reference)?;
        let rep = classify_automorphism(&act, g, Field::Rational);
        let class = match &rep.class {
            AutomorphismClass::Identity => "identity".to_string(),
            AutomorphismClass::XInner { e } => format!("X-inner on e = {}", e.to_json()),
            AutomorphismClass::XOuterElement => "X-outer".to_string(),
        };
        println!(
            "{reference} = {}: {class}, fixed points {:?}, annihilator dim {}",
            act.perm(g).cycle_string(),
            rep.fixed_points.iter().map(|i| i + 1).collect::<Vec<_>>(),
            rep.annihilator.len()
        );
        if let Some(w) = corner_inner_witness(&act, g, Field::Rational) {
            println!("  witness {} (verifies: {})", w.to_json(), verify_corner_inner_witness(&act, g, &w));
        }
    }
    Ok(())
}
