//! Length reduction inside a two-sided ideal.
//!
//! The length of `x = Σ r_g g` is the number of nonzero coefficients. One
//! step normalises `x` so that its identity coefficient is an idempotent `e`
//! and then looks for an element of the ideal generated by `x` that is
//! strictly shorter. Every candidate is built from `x` by multiplying on the
//! left and right and subtracting, so it stays in the ideal.
//!
//! When nothing shorter exists and the length is at least two, the
//! normalised element is `e + r₂·g₂ + …` with every coefficient supported on
//! points fixed by its group element, which yields a corner-inner witness
//! for `g₂⁻¹`.

use crate::classify::{verify_corner_inner_witness, CornerInnerWitness};
use crate::error::{Error, Result};
use crate::ground::GroundElement;
use crate::skew::{SkewElement, SkewRingContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// A strictly shorter nonzero element of the ideal.
    Shorter(SkewElement),
    /// The ideal contains this unit (always `1`).
    Unit(SkewElement),
    /// A length-one element whose translates only cover a proper invariant
    /// idempotent `φ ≠ 1`; `φ` lies in the ideal.
    Stalled(GroundElement),
    /// No shorter element: `group_element` acts as an inner automorphism on
    /// the corner described by `witness`.
    Obstruction {
        element: SkewElement,
        group_element: usize,
        witness: CornerInnerWitness,
        verified: bool,
    },
}

/// `s·x·g₁⁻¹` with `g₁` the least element of the support and `s` the
/// quasi-inverse of its coefficient. The identity coefficient becomes
/// the support idempotent of `r₁`.
pub fn normalize(ctx: &SkewRingContext, x: &SkewElement) -> Result<SkewElement> {
    ctx.check(x)?;
    let (g1, r1) = x.terms().next().ok_or(Error::ZeroInput)?;
    let s = ctx.ground(&r1.quasi_inverse());
    let g1_inv = ctx.group_element(ctx.group().inv(g1));
    ctx.product(&[&s, x, &g1_inv])
}

fn candidates(ctx: &SkewRingContext, xp: &SkewElement) -> Vec<SkewElement> {
    let f = ctx.field();
    let n = ctx.n();
    let id = ctx.group().identity();
    let mut out = Vec::new();
    for c in 0..n {
        let ec = ctx.ground(&GroundElement::basis(f, n, c));
        let l = ctx.mul_unchecked(&ec, xp);
        let r = ctx.mul_unchecked(xp, &ec);
        out.push(ctx.sub(&l, &r).expect("same ring"));
    }
    for h in ctx.group().elements().filter(|&h| h != id) {
        out.push(ctx.sub(&ctx.conjugate(h, xp), xp).expect("same ring"));
    }
    let e = xp.coefficient(id).expect("normalised element has an identity term").clone();
    if let Some((g2, r2)) = xp.terms().find(|&(g, _)| g != id) {
        let supp2 = r2.support_idempotent();
        let g2_inv = ctx.group().inv(g2);
        let right = ctx.ground(&ctx.act(g2_inv, &supp2));
        out.push(ctx.sub(xp, &ctx.mul_unchecked(xp, &right)).expect("same ring"));
        out.push(ctx.sub(xp, &ctx.mul_unchecked(&ctx.ground(&supp2), xp)).expect("same ring"));
    }
    out.push(ctx.sub(&ctx.mul_unchecked(xp, &ctx.ground(&e)), xp).expect("same ring"));
    out.push(ctx.sub(&ctx.mul_unchecked(&ctx.ground(&e), xp), xp).expect("same ring"));
    out
}

/// One reduction step for a nonzero `x`.
pub fn length_reduce(ctx: &SkewRingContext, x: &SkewElement) -> Result<ReductionStep> {
    let xp = normalize(ctx, x)?;
    if xp.len() < x.len() {
        return Ok(ReductionStep::Shorter(xp));
    }
    if let Some(c) = candidates(ctx, &xp).into_iter().find(|c| !c.is_zero() && c.len() < xp.len()) {
        return Ok(ReductionStep::Shorter(c));
    }
    let id = ctx.group().identity();
    let e = xp.coefficient(id).expect("normalised").clone();
    if xp.len() == 1 {
        let n = ctx.n();
        let one = GroundElement::one(ctx.field(), n);
        let mut phi = GroundElement::zero(ctx.field(), n);
        for h in ctx.group().elements() {
            phi = phi.add(&ctx.act(h, &e).mul(&one.sub(&phi)));
        }
        return Ok(if phi.is_one() {
            ReductionStep::Unit(ctx.one())
        } else {
            ReductionStep::Stalled(phi)
        });
    }
    let (g2, r2) = xp.terms().find(|&(g, _)| g != id).expect("length at least two");
    let y = r2.quasi_inverse();
    let e_prime = ctx.act(g2, &e);
    let witness = CornerInnerWitness {
        u: r2.mul(&e_prime),
        v: e_prime.mul(&y).mul(&e),
        e,
        e_prime,
    };
    let group_element = ctx.group().inv(g2);
    let verified = verify_corner_inner_witness(ctx.action(), group_element, &witness);
    Ok(ReductionStep::Obstruction {
        element: xp.clone(),
        group_element,
        witness,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Input followed by each shorter element produced.
    pub chain: Vec<SkewElement>,
    /// The step that ended the run (never `Shorter`).
    pub last: ReductionStep,
}

/// Repeats [`length_reduce`] until it stops producing shorter elements.
/// Each step strictly lowers the length, so at most `|G|` steps run.
pub fn reduce_to_completion(ctx: &SkewRingContext, x: &SkewElement) -> Result<ReductionTrace> {
    let mut chain = vec![x.clone()];
    loop {
        let cur = chain.last().expect("nonempty");
        match length_reduce(ctx, cur)? {
            ReductionStep::Shorter(y) => chain.push(y),
            last => return Ok(ReductionTrace { chain, last }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;
    use crate::group::action_from_images;
    use crate::ideal::ideal_closure;
    use crate::scalar::Field;

    fn ctx(gens: &[(&str, &[usize])]) -> SkewRingContext {
        SkewRingContext::new(action_from_images(gens).unwrap(), Field::Rational)
    }

    #[test]
    fn free_action_reaches_a_unit() {
        let c = ctx(&[("a", &[2, 3, 4, 1])]);
        let a = c.action().element("a").unwrap();
        let r = GroundElement::from_i64s(c.field(), &[1, 2, 0, -1]);
        let s = GroundElement::from_i64s(c.field(), &[3, 0, 1, 1]);
        let x = c.add(&c.ground(&r), &c.monomial(&s, a)).unwrap();
        let trace = reduce_to_completion(&c, &x).unwrap();
        assert_eq!(trace.last, ReductionStep::Unit(c.one()));
        let ideal = ideal_closure(&c, &[x], DEFAULT_MAX_DIM).unwrap();
        for y in &trace.chain {
            assert!(ideal.contains(&c, y));
        }
        for w in trace.chain.windows(2) {
            assert!(w[1].len() < w[0].len());
        }
    }

    #[test]
    fn stabilizer_difference_is_an_obstruction() {
        let c = ctx(&[("g", &[2, 1, 3])]);
        let g = c.action().element("g").unwrap();
        let e3 = GroundElement::basis(c.field(), 3, 2);
        let x = c.sub(&c.ground(&e3), &c.monomial(&e3, g)).unwrap();
        match length_reduce(&c, &x).unwrap() {
            ReductionStep::Obstruction {
                group_element,
                witness,
                verified,
                ..
            } => {
                assert_eq!(group_element, g);
                assert_eq!(witness.e, e3);
                assert_eq!(witness.e_prime, e3);
                assert_eq!(witness.u, e3.neg());
                assert_eq!(witness.v, e3.neg());
                assert!(verified);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn intransitive_length_one_stalls() {
        let c = ctx(&[("g", &[2, 1, 3])]);
        let e1 = GroundElement::basis(c.field(), 3, 0);
        let step = length_reduce(&c, &c.ground(&e1)).unwrap();
        assert_eq!(step, ReductionStep::Stalled(GroundElement::from_i64s(c.field(), &[1, 1, 0])));
    }

    #[test]
    fn zero_is_rejected() {
        let c = ctx(&[("g", &[2, 1])]);
        assert_eq!(length_reduce(&c, &c.zero()), Err(Error::ZeroInput));
    }
}
