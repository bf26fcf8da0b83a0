//! Decide simplicity of kⁿ*G two ways and print the evidence.
//!
//!     cargo run --example simplicity

use skewring::algebra::{is_simple_linear, DEFAULT_MAX_DIM};
use skewring::ground::GroundElement;
use skewring::group::action_from_images;
use skewring::ideal::{proper_ideal_witness, simplicity_certificate};
use skewring::scalar::Field;
use skewring::skew::SkewRingContext;
use skewring::structure::structure_oracle;

fn main() -> skewring::Result<()> {
    // Z₃ cycling three coordinates: transitive and free.
    let cyclic = action_from_images(&[("g", &[2, 3, 1])])?;
    // S₃ on three points: transitive, but stabilizers have order 2.
    let symmetric = action_from_images(&[("s", &[2, 1, 3]), ("t", &[1, 3, 2])])?;

    for (name, act) in [("Z3 on 3 points", cyclic), ("S3 on 3 points", symmetric)] {
        let ctx = SkewRingContext::new(act.clone(), Field::Rational);
        let linear = is_simple_linear(&ctx, DEFAULT_MAX_DIM)?;
        let oracle = structure_oracle(&act);
        println!("{name}: dim {}, linear engine simple = {}", linear.dim, linear.simple);
        println!("  decomposition {}", oracle.decomposition());

        if linear.simple {
            // e₁ generates: find Σ aᵢ·e₁·bᵢ = 1.
            let x = ctx.ground(&GroundElement::basis(Field::Rational, ctx.n(), 0));
            let cert = simplicity_certificate(&ctx, &x, DEFAULT_MAX_DIM)?;
            println!("  certificate with {} terms, verifies: {}", cert.pairs.len(), cert.verify(&ctx));
        } else if let Some(w) = proper_ideal_witness(&ctx, DEFAULT_MAX_DIM)? {
            println!(
                "  proper ideal ({:?}) generated by {} has dim {} < {}",
                w.kind,
                ctx.display(&w.generator),
                w.closure_dim,
                ctx.dim()
            );
        }
    }
    Ok(())
}
