//! G-simplicity of the ground ring kⁿ: invariant ideals are orbit unions.
//!
//!     cargo run --example g_simplicity

use skewring::classify::is_g_simple;
use skewring::group::action_from_images;
use skewring::scalar::Field;

fn main() -> skewring::Result<()> {
    let cases = [
        ("4-cycle", action_from_images(&[("a", &[2, 3, 4, 1])])?),
        ("two transpositions", action_from_images(&[("a", &[2, 1, 3, 4]), ("b", &[1, 2, 4, 3])])?),
    ];
    for (name, act) in cases {
        let r = is_g_simple(&act, Field::Prime(5));
        println!("{name}: G-simple = {}, orbits {:?}", r.g_simple, r.orbits);
        if let Some(w) = &r.witness {
            println!("  invariant idempotent {:?}", w.to_json());
        }
    }
    Ok(())
}
