//! Two-sided ideals of kⁿ *_α G as subspaces, simplicity certificates and
//! proper-ideal witnesses.
//!
//! The closure starts from the generators and multiplies every accepted
//! vector on both sides by the algebra generators `e_c·1` and `1·g` (`g` in
//! the group's generating set) until nothing new appears. These multipliers
//! generate the ring as an algebra, so the fixpoint is the two-sided ideal.
//! Each accepted vector is recorded as `a·x_j·b` with monomials `a`, `b`,
//! which is what turns a membership proof of `1` into a certificate.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ground::GroundElement;
use crate::group::orbits;
use crate::linalg::{null_space, Echelon, Insertion, SparseVec};
use crate::skew::{SkewElement, SkewRingContext};
use crate::structure::structure_oracle;

/// Reduced row echelon basis of a two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub rows: Vec<SparseVec>,
    pub ambient_dim: usize,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn elements(&self, ctx: &SkewRingContext) -> Vec<SkewElement> {
        self.rows.iter().map(|r| ctx.from_vector(r)).collect()
    }

    fn echelon(&self, ctx: &SkewRingContext) -> Echelon {
        let mut e = Echelon::new(ctx.field(), self.ambient_dim);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn contains(&self, ctx: &SkewRingContext, x: &SkewElement) -> bool {
        self.echelon(ctx).contains(&ctx.to_vector(x))
    }
}

/// Where an accepted vector came from: `left · gens[generator] · right`.
#[derive(Clone, Debug)]
struct Provenance {
    generator: usize,
    left: SkewElement,
    right: SkewElement,
}

/// The closure together with the bookkeeping needed for certificates.
pub struct Closure {
    echelon: Echelon,
    provenance: Vec<Option<Provenance>>,
    gens: Vec<SkewElement>,
}

impl Closure {
    pub fn basis(&self) -> IdealBasis {
        IdealBasis {
            rows: self.echelon.rows(),
            ambient_dim: self.echelon.dim(),
        }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_full(&self) -> bool {
        self.echelon.is_full()
    }

    /// Pairs `(a_i, b_i)` with `Σ a_i·x_{j_i}·b_i = target`, if `target` lies in the ideal.
    pub fn express(&self, ctx: &SkewRingContext, target: &SkewElement) -> Option<Vec<(usize, SkewElement, SkewElement)>> {
        let combo = self.echelon.express(&ctx.to_vector(target))?;
        Some(
            combo
                .iter()
                .map(|(k, c)| {
                    let p = self.provenance[k].as_ref().expect("combination uses accepted vectors only");
                    (p.generator, ctx.scale(c, &p.left), p.right.clone())
                })
                .collect(),
        )
    }

    pub fn generators(&self) -> &[SkewElement] {
        &self.gens
    }
}

/// Algebra generators used as multipliers: `e_c·1` then `1·g`.
pub fn multipliers(ctx: &SkewRingContext) -> Vec<SkewElement> {
    let id = ctx.group().identity();
    let mut m: Vec<SkewElement> = (0..ctx.n()).map(|c| ctx.basis_element(c, id)).collect();
    m.extend(ctx.group().generators().iter().map(|&g| ctx.group_element(g)));
    m
}

/// Breadth-first closure with provenance tracking.
pub fn close(ctx: &SkewRingContext, gens: &[SkewElement], max_dim: usize) -> Result<Closure> {
    let dim = ctx.dim();
    if dim > max_dim {
        return Err(Error::DimensionBoundExceeded { dim, bound: max_dim });
    }
    for g in gens {
        ctx.check(g)?;
    }
    let mult = multipliers(ctx);
    let mut closure = Closure {
        echelon: Echelon::with_tracking(ctx.field(), dim),
        provenance: Vec::new(),
        gens: gens.to_vec(),
    };
    let mut queue: VecDeque<(SkewElement, Provenance)> = VecDeque::new();
    let offer = |closure: &mut Closure, elem: SkewElement, prov: Provenance, queue: &mut VecDeque<(SkewElement, Provenance)>| {
        if elem.is_zero() || closure.echelon.is_full() {
            return;
        }
        match closure.echelon.insert(ctx.to_vector(&elem)) {
            Insertion::Added { .. } => {
                closure.provenance.push(Some(prov.clone()));
                queue.push_back((elem, prov));
            }
            Insertion::Dependent { .. } => closure.provenance.push(None),
        }
    };
    for (j, g) in gens.iter().enumerate() {
        let prov = Provenance {
            generator: j,
            left: ctx.one(),
            right: ctx.one(),
        };
        offer(&mut closure, g.clone(), prov, &mut queue);
    }
    while let Some((elem, prov)) = queue.pop_front() {
        for m in &mult {
            let l = ctx.mul_unchecked(m, &elem);
            let lp = Provenance {
                generator: prov.generator,
                left: ctx.mul_unchecked(m, &prov.left),
                right: prov.right.clone(),
            };
            offer(&mut closure, l, lp, &mut queue);
            let r = ctx.mul_unchecked(&elem, m);
            let rp = Provenance {
                generator: prov.generator,
                left: prov.left.clone(),
                right: ctx.mul_unchecked(&prov.right, m),
            };
            offer(&mut closure, r, rp, &mut queue);
        }
    }
    verify_closed(ctx, &closure.echelon, &mult)?;
    Ok(closure)
}

fn verify_closed(ctx: &SkewRingContext, ech: &Echelon, mult: &[SkewElement]) -> Result<()> {
    if ech.is_full() {
        return Ok(());
    }
    for row in ech.rows() {
        let x = ctx.from_vector(&row);
        for m in mult {
            if !ech.contains(&ctx.to_vector(&ctx.mul_unchecked(m, &x))) || !ech.contains(&ctx.to_vector(&ctx.mul_unchecked(&x, m))) {
                return Err(Error::VerificationFailed("ideal closure is not closed under multiplication".into()));
            }
        }
    }
    Ok(())
}

/// The two-sided ideal generated by `gens`.
pub fn ideal_closure(ctx: &SkewRingContext, gens: &[SkewElement], max_dim: usize) -> Result<IdealBasis> {
    Ok(close(ctx, gens, max_dim)?.basis())
}

/// `Σ a_i·x·b_i = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub x: SkewElement,
    pub pairs: Vec<(SkewElement, SkewElement)>,
}

impl Certificate {
    /// Re-evaluates the sum using only ring arithmetic.
    pub fn verify(&self, ctx: &SkewRingContext) -> bool {
        let mut acc = ctx.zero();
        for (a, b) in &self.pairs {
            let term = match ctx.product(&[a, &self.x, b]) {
                Ok(t) => t,
                Err(_) => return false,
            };
            acc = match ctx.add(&acc, &term) {
                Ok(s) => s,
                Err(_) => return false,
            };
        }
        ctx.check(&self.x).is_ok() && acc == ctx.one()
    }
}

/// Certificate that `x` generates the whole ring.
pub fn simplicity_certificate(ctx: &SkewRingContext, x: &SkewElement, max_dim: usize) -> Result<Certificate> {
    let closure = close(ctx, std::slice::from_ref(x), max_dim)?;
    if !closure.is_full() {
        return Err(Error::NotGenerating {
            ideal_dim: closure.dim(),
            ambient_dim: ctx.dim(),
        });
    }
    let pairs = closure
        .express(ctx, &ctx.one())
        .expect("a full ideal contains 1")
        .into_iter()
        .map(|(_, a, b)| (a, b))
        .collect();
    let cert = Certificate { x: x.clone(), pairs };
    if !cert.verify(ctx) {
        return Err(Error::VerificationFailed("certificate does not evaluate to 1".into()));
    }
    Ok(cert)
}

/// How a proper-ideal witness was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `e_i·(1 − g)` with `g ≠ 1` fixing coordinate `i`.
    StabilizerDifference,
    /// Indicator of an orbit of an intransitive action.
    OrbitIndicator,
}

/// A generator of a proper nonzero ideal and its properness certificate: a
/// nonempty G-invariant coordinate set `S` such that `w` acts as zero on
/// the module `k^S`. The annihilator of a nonzero module is a proper ideal
/// containing the ideal generated by `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperIdealWitness {
    pub generator: SkewElement,
    pub kind: WitnessKind,
    pub invariant_coordinates: Vec<usize>,
    pub closure_dim: usize,
}

/// The action of `Σ r_g g` on the natural module kⁿ: `v ↦ Σ r_g·ᵍv`.
pub fn module_action(ctx: &SkewRingContext, w: &SkewElement, v: &GroundElement) -> GroundElement {
    w.terms()
        .fold(GroundElement::zero(ctx.field(), ctx.n()), |acc, (g, r)| acc.add(&r.mul(&ctx.act(g, v))))
}

/// Checks the properness certificate without any ideal computation.
pub fn check_properness(ctx: &SkewRingContext, w: &SkewElement, coords: &[usize]) -> std::result::Result<(), String> {
    let n = ctx.n();
    if w.is_zero() {
        return Err("the generator is zero".into());
    }
    if coords.is_empty() || coords.iter().any(|&c| c >= n) {
        return Err("the coordinate set is empty or out of range".into());
    }
    let inside = |c: usize| coords.contains(&c);
    for p in ctx.action().perms() {
        if coords.iter().any(|&c| !inside(p.apply(c))) {
            return Err("the coordinate set is not G-invariant".into());
        }
    }
    for &c in coords {
        let image = module_action(ctx, w, &GroundElement::basis(ctx.field(), n, c));
        if !image.is_zero() {
            return Err(format!("the generator does not annihilate e_{}", c + 1));
        }
    }
    Ok(())
}

/// A generator of a proper nonzero ideal, or `None` when the ring is simple.
///
/// Preference order: `e_i·(1 − g)` for the least coordinate `i` fixed by some
/// `g ≠ 1` (least such `g`), then the indicator of the orbit of coordinate 1.
pub fn proper_ideal_witness(ctx: &SkewRingContext, max_dim: usize) -> Result<Option<ProperIdealWitness>> {
    let act = ctx.action();
    if structure_oracle(act).simple {
        return Ok(None);
    }
    let n = ctx.n();
    let f = ctx.field();
    let id = ctx.group().identity();
    let orbs = orbits(act);
    let orbit_of = |i: usize| orbs.iter().find(|o| o.contains(&i)).cloned().unwrap();
    let stabilized = (0..n).find_map(|i| ctx.group().elements().find(|&g| g != id && act.perm(g).apply(i) == i).map(|g| (i, g)));
    let (generator, kind, coords) = match stabilized {
        Some((i, g)) => {
            let ei = GroundElement::basis(f, n, i);
            let w = ctx.sub(&ctx.ground(&ei), &ctx.monomial(&ei, g))?;
            (w, WitnessKind::StabilizerDifference, orbit_of(i))
        }
        None => {
            let o = orbs[0].clone();
            let complement: Vec<usize> = (0..n).filter(|c| !o.contains(c)).collect();
            let w = ctx.ground(&GroundElement::indicator(f, n, o));
            (w, WitnessKind::OrbitIndicator, complement)
        }
    };
    check_properness(ctx, &generator, &coords).map_err(Error::VerificationFailed)?;
    let closure = close(ctx, std::slice::from_ref(&generator), max_dim)?;
    if closure.is_full() || closure.dim() == 0 {
        return Err(Error::VerificationFailed("witness closure is not a proper nonzero ideal".into()));
    }
    Ok(Some(ProperIdealWitness {
        generator,
        kind,
        invariant_coordinates: coords,
        closure_dim: closure.dim(),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    /// Basis of `I ∩ R`.
    pub intersection: Vec<GroundElement>,
    pub g_simple: bool,
    /// When `R` is G-simple and `I ∩ R ≠ 0`: whether `I` is the whole ring.
    pub forces_full: Option<bool>,
}

/// `I ∩ R`, where `R` sits in the ring as the identity-coefficient elements.
pub fn check_g_invariant_intersection(ctx: &SkewRingContext, ideal: &IdealBasis) -> IntersectionReport {
    let n = ctx.n();
    let f = ctx.field();
    let id = ctx.group().identity();
    let on_identity = |k: usize| k / n == id;
    // Combinations Σ c_k row_k whose non-identity coordinates vanish.
    let mut eqs: std::collections::BTreeMap<usize, Vec<(usize, crate::scalar::Scalar)>> = Default::default();
    for (k, row) in ideal.rows.iter().enumerate() {
        for (i, v) in row.iter() {
            if !on_identity(i) {
                eqs.entry(i).or_default().push((k, v.clone()));
            }
        }
    }
    let combos = null_space(f, ideal.rows.len(), eqs.into_values().map(SparseVec::from_entries));
    let mut ech = Echelon::new(f, ctx.dim());
    for c in combos {
        let v = c.iter().fold(SparseVec::new(), |acc, (k, s)| acc.axpy(s, &ideal.rows[k]));
        ech.insert(v);
    }
    let intersection: Vec<GroundElement> = ech
        .rows()
        .iter()
        .map(|v| {
            let x = ctx.from_vector(v);
            x.coefficient(id).cloned().unwrap_or_else(|| GroundElement::zero(f, n))
        })
        .collect();
    let g_simple = orbits(ctx.action()).len() == 1;
    let forces_full = (g_simple && !intersection.is_empty()).then(|| ideal.is_full());
    IntersectionReport {
        intersection,
        g_simple,
        forces_full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_MAX_DIM;
    use crate::group::{action_from_images, Action, FiniteGroup};
    use crate::scalar::Field;

    fn ctx(gens: &[(&str, &[usize])]) -> SkewRingContext {
        SkewRingContext::new(action_from_images(gens).unwrap(), Field::Rational)
    }

    fn e(c: &SkewRingContext, i: usize) -> GroundElement {
        GroundElement::basis(c.field(), c.n(), i)
    }

    #[test]
    fn closure_examples() {
        let swap = ctx(&[("g", &[2, 1])]);
        let full = ideal_closure(&swap, &[swap.ground(&e(&swap, 0))], DEFAULT_MAX_DIM).unwrap();
        assert!(full.is_full());
        assert_eq!(full.dim(), 4);

        let c3 = ctx(&[("g", &[2, 1, 3])]);
        let g = c3.action().element("g").unwrap();
        let i = ideal_closure(&c3, &[c3.ground(&e(&c3, 2))], DEFAULT_MAX_DIM).unwrap();
        assert_eq!(i.dim(), 2);
        assert!(i.contains(&c3, &c3.ground(&e(&c3, 2))));
        assert!(i.contains(&c3, &c3.monomial(&e(&c3, 2), g)));

        assert!(ideal_closure(&swap, &[swap.zero()], DEFAULT_MAX_DIM).unwrap().is_zero());
    }

    #[test]
    fn closure_is_idempotent() {
        let s3 = ctx(&[("a", &[2, 1, 3]), ("b", &[1, 3, 2])]);
        let a = s3.action().element("a").unwrap();
        let w = s3.sub(&s3.ground(&e(&s3, 2)), &s3.monomial(&e(&s3, 2), a)).unwrap();
        let once = ideal_closure(&s3, &[w], DEFAULT_MAX_DIM).unwrap();
        let twice = ideal_closure(&s3, &once.elements(&s3), DEFAULT_MAX_DIM).unwrap();
        assert_eq!(once, twice);
        assert!(!once.is_full());
    }

    #[test]
    fn certificate_examples() {
        let swap = ctx(&[("g", &[2, 1])]);
        let g = swap.action().element("g").unwrap();
        let cert = simplicity_certificate(&swap, &swap.ground(&e(&swap, 0)), DEFAULT_MAX_DIM).unwrap();
        let gg = swap.group_element(g);
        assert_eq!(cert.pairs, vec![(swap.one(), swap.one()), (gg.clone(), gg)]);
        assert!(cert.verify(&swap));

        let one = simplicity_certificate(&swap, &swap.one(), DEFAULT_MAX_DIM).unwrap();
        assert_eq!(one.pairs, vec![(swap.one(), swap.one())]);

        let c3 = ctx(&[("g", &[2, 1, 3])]);
        assert_eq!(
            simplicity_certificate(&c3, &c3.ground(&e(&c3, 2)), DEFAULT_MAX_DIM),
            Err(Error::NotGenerating { ideal_dim: 2, ambient_dim: 6 })
        );
    }

    #[test]
    fn tampered_certificate_fails() {
        let swap = ctx(&[("g", &[2, 1])]);
        let mut cert = simplicity_certificate(&swap, &swap.ground(&e(&swap, 0)), DEFAULT_MAX_DIM).unwrap();
        cert.pairs[0].0 = swap.scale(&crate::scalar::Scalar::from_i64(Field::Rational, 2), &cert.pairs[0].0);
        assert!(!cert.verify(&swap));
    }

    #[test]
    fn witness_examples() {
        let c3 = ctx(&[("g", &[2, 1, 3])]);
        let g = c3.action().element("g").unwrap();
        let w = proper_ideal_witness(&c3, DEFAULT_MAX_DIM).unwrap().unwrap();
        let expected = c3.sub(&c3.ground(&e(&c3, 2)), &c3.monomial(&e(&c3, 2), g)).unwrap();
        assert_eq!(w.generator, expected);
        assert_eq!(w.kind, WitnessKind::StabilizerDifference);
        assert!(w.closure_dim < 6);

        let triv = SkewRingContext::new(Action::trivial(FiniteGroup::trivial(), 2), Field::Rational);
        let w = proper_ideal_witness(&triv, DEFAULT_MAX_DIM).unwrap().unwrap();
        assert_eq!(w.generator, triv.ground(&e(&triv, 0)));
        assert_eq!(w.closure_dim, 1);

        let cyc = ctx(&[("a", &[2, 3, 4, 1])]);
        assert_eq!(proper_ideal_witness(&cyc, DEFAULT_MAX_DIM).unwrap(), None);
    }

    #[test]
    fn properness_check_rejects_bad_sets() {
        let c3 = ctx(&[("g", &[2, 1, 3])]);
        let w = c3.ground(&e(&c3, 2));
        assert!(check_properness(&c3, &w, &[0, 1]).is_ok());
        assert!(check_properness(&c3, &w, &[0]).is_err());
        assert!(check_properness(&c3, &w, &[2]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let swap = ctx(&[("g", &[2, 1])]);
        let full = ideal_closure(&swap, &[swap.one()], DEFAULT_MAX_DIM).unwrap();
        let r = check_g_invariant_intersection(&swap, &full);
        assert_eq!(r.intersection.len(), 2);
        assert_eq!(r.forces_full, Some(true));

        let c3 = ctx(&[("g", &[2, 1, 3])]);
        let g = c3.action().element("g").unwrap();
        let w = c3.sub(&c3.ground(&e(&c3, 2)), &c3.monomial(&e(&c3, 2), g)).unwrap();
        let i = ideal_closure(&c3, &[w], DEFAULT_MAX_DIM).unwrap();
        let r = check_g_invariant_intersection(&c3, &i);
        assert!(!r.g_simple);
        assert_eq!(r.forces_full, None);
        // The ideal is spanned by e₃(1 − g); it meets R trivially.
        assert_eq!(i.dim(), 1);
        assert!(r.intersection.is_empty());

        let zero = ideal_closure(&swap, &[], DEFAULT_MAX_DIM).unwrap();
        assert!(check_g_invariant_intersection(&swap, &zero).intersection.is_empty());
    }
}
