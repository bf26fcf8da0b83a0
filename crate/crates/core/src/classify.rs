//! Automorphism classes of coordinate permutations of kⁿ, corner-inner
//! witnesses, G-simplicity of kⁿ, and the predicate bundle of an action.
//!
//! Every automorphism here is `f = α(g)`, `f(r) = ᵍr`. For kⁿ the classes are
//! decided by fixed points: `f` is the identity on `eR` exactly for
//! idempotents `e` supported on `Fix(g)`, and every ideal of kⁿ is the span
//! of a coordinate subset, so G-invariant ideals are unions of orbits.

use crate::ground::GroundElement;
use crate::group::{orbits, Action};
use crate::linalg::{null_space, Echelon, SparseVec};
use crate::scalar::Field;

/// Outcome of the G-simplicity test of kⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSimplicity {
    pub g_simple: bool,
    pub orbits: Vec<Vec<usize>>,
    /// Indicator of an orbit, generating a proper G-invariant ideal.
    pub witness: Option<GroundElement>,
    pub reasoning: Vec<String>,
}

/// kⁿ is G-simple iff the action is transitive. The witness for failure is
/// the lexicographically least orbit indicator vector.
pub fn is_g_simple(act: &Action, field: Field) -> GSimplicity {
    let orbs = orbits(act);
    let n = act.n();
    let mut reasoning = vec![format!(
        "[ideals-of-k^n] ideals of k^{n} are spans of coordinate subsets; G-invariant ones are unions of orbits; {} orbit(s)",
        orbs.len()
    )];
    if orbs.len() == 1 {
        reasoning.push("[transitive] one orbit: the only invariant ideals are 0 and R".into());
        return GSimplicity {
            g_simple: true,
            orbits: orbs,
            witness: None,
            reasoning,
        };
    }
    let witness = orbs
        .iter()
        .map(|o| GroundElement::indicator(field, n, o.iter().copied()))
        .min_by(|a, b| {
            let key = |e: &GroundElement| e.coords().iter().map(|c| c.is_one()).collect::<Vec<_>>();
            key(a).cmp(&key(b))
        });
    reasoning.push("[orbit-indicator] the least orbit indicator spans a proper nonzero invariant ideal".into());
    GSimplicity {
        g_simple: false,
        orbits: orbs,
        witness,
        reasoning,
    }
}

/// Class of the automorphism `α(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismClass {
    Identity,
    /// Identity on `eR`, `e` the indicator of the fixed coordinates.
    XInner { e: GroundElement },
    XOuterElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismReport {
    pub class: AutomorphismClass,
    pub fixed_points: Vec<usize>,
    /// Basis of `ann_R((id − f)(R))`, computed by solving linear equations.
    pub annihilator: Vec<GroundElement>,
    /// Whether the annihilator equals `eR` for the fixed-set indicator `e`.
    pub annihilator_matches: bool,
}

/// Annihilator of `(id − f)(R)` inside `R = kⁿ`, as a basis of a subspace.
///
/// Unknown `x ∈ kⁿ`; equations `x·(e_j − f(e_j)) = 0` for every basis `e_j`.
pub fn annihilator_of_difference(act: &Action, g: usize, field: Field) -> Vec<GroundElement> {
    let n = act.n();
    let mut rows = Vec::new();
    for j in 0..n {
        let ej = GroundElement::basis(field, n, j);
        let diff = ej.sub(&ej.permuted(act.perm(g)));
        // (x·diff)_i = diff_i · x_i
        for i in 0..n {
            if !diff.coord(i).is_zero() {
                rows.push(SparseVec::from_entries(vec![(i, diff.coord(i).clone())]));
            }
        }
    }
    null_space(field, n, rows)
        .into_iter()
        .map(|v| GroundElement::new(field, v.to_dense(field, n)).expect("field-consistent vector"))
        .collect()
}

fn same_span(field: Field, n: usize, a: &[GroundElement], b: &[GroundElement]) -> bool {
    let span = |xs: &[GroundElement]| {
        let mut e = Echelon::new(field, n);
        for x in xs {
            e.insert(SparseVec::from_dense(x.coords()));
        }
        e.rows()
    };
    span(a) == span(b)
}

pub fn classify_automorphism(act: &Action, g: usize, field: Field) -> AutomorphismReport {
    let n = act.n();
    let p = act.perm(g);
    let fixed = p.fixed_points();
    let e = GroundElement::indicator(field, n, fixed.iter().copied());
    let class = if p.is_identity() {
        AutomorphismClass::Identity
    } else if !fixed.is_empty() {
        AutomorphismClass::XInner { e: e.clone() }
    } else {
        AutomorphismClass::XOuterElement
    };
    let annihilator = annihilator_of_difference(act, g, field);
    let e_r: Vec<GroundElement> = fixed.iter().map(|&i| GroundElement::basis(field, n, i)).collect();
    let annihilator_matches = same_span(field, n, &annihilator, &e_r);
    AutomorphismReport {
        class,
        fixed_points: fixed,
        annihilator,
        annihilator_matches,
    }
}

/// Idempotents `e, e′` and `u ∈ eRe′`, `v ∈ e′Re` with `uv = e`, `vu = e′`
/// and `f(x) = u·x·v` on `e′Re′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerInnerWitness {
    pub e: GroundElement,
    pub e_prime: GroundElement,
    pub u: GroundElement,
    pub v: GroundElement,
}

impl CornerInnerWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "e": self.e.to_json(),
            "e_prime": self.e_prime.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
        })
    }
}

/// `e = e′ = u = v = indicator(Fix(g))`, or `None` when `g` has no fixed coordinate.
pub fn corner_inner_witness(act: &Action, g: usize, field: Field) -> Option<CornerInnerWitness> {
    let fixed = act.perm(g).fixed_points();
    if fixed.is_empty() {
        return None;
    }
    let e = GroundElement::indicator(field, act.n(), fixed);
    Some(CornerInnerWitness {
        e: e.clone(),
        e_prime: e.clone(),
        u: e.clone(),
        v: e,
    })
}

/// Checks a corner-inner witness for `f = α(g)`, reporting the first failed condition.
pub fn check_corner_inner_witness(act: &Action, g: usize, w: &CornerInnerWitness) -> Result<(), String> {
    let n = act.n();
    let parts = [&w.e, &w.e_prime, &w.u, &w.v];
    let field = w.e.field();
    if parts.iter().any(|x| x.len() != n || x.field() != field) {
        return Err("components have the wrong length or field".into());
    }
    if w.e.is_zero() {
        return Err("e is zero".into());
    }
    if !w.e.is_idempotent() || w.e.mul(&w.e) != w.e {
        return Err("e is not idempotent".into());
    }
    let f_inv = act.perm(act.group().inv(g));
    if w.e_prime != w.e.permuted(f_inv) {
        return Err("e′ ≠ f⁻¹(e)".into());
    }
    if w.e.mul(&w.u).mul(&w.e_prime) != w.u {
        return Err("u ∉ eRe′".into());
    }
    if w.e_prime.mul(&w.v).mul(&w.e) != w.v {
        return Err("v ∉ e′Re".into());
    }
    if w.u.mul(&w.v) != w.e {
        return Err("uv ≠ e".into());
    }
    if w.v.mul(&w.u) != w.e_prime {
        return Err("vu ≠ e′".into());
    }
    let f = act.perm(g);
    for c in w.e_prime.support() {
        let x = GroundElement::basis(field, n, c).mul(&w.e_prime);
        if x.permuted(f) != w.u.mul(&x).mul(&w.v) {
            return Err(format!("f(x) ≠ uxv for the basis element e_{} of e′Re′", c + 1));
        }
    }
    Ok(())
}

pub fn verify_corner_inner_witness(act: &Action, g: usize, w: &CornerInnerWitness) -> bool {
    check_corner_inner_witness(act, g, w).is_ok()
}

/// A boolean with the element (or pair) that refutes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Predicate {
    fn yes() -> Self {
        Predicate { holds: true, witness: None }
    }

    fn no(w: Vec<usize>) -> Self {
        Predicate {
            holds: false,
            witness: Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionPredicates {
    pub faithful: Predicate,
    /// Inner automorphisms of a commutative ring are trivial, so outer ⟺ faithful.
    pub outer: Predicate,
    pub abelian: Predicate,
    /// No nonidentity element is X-inner.
    pub x_outer: Predicate,
    /// No `g ≠ 1` has a fixed coordinate; the same condition as `x_outer` here.
    pub fixed_point_free: Predicate,
}

pub fn action_predicates(act: &Action) -> ActionPredicates {
    let grp = act.group();
    let id = grp.identity();
    let faithful = match grp.elements().find(|&g| g != id && act.perm(g).is_identity()) {
        Some(g) => Predicate::no(vec![g]),
        None => Predicate::yes(),
    };
    let abelian = match grp.non_commuting_pair() {
        Some((a, b)) => Predicate::no(vec![a, b]),
        None => Predicate::yes(),
    };
    let free = match grp
        .elements()
        .find(|&g| g != id && !act.perm(g).fixed_points().is_empty())
    {
        Some(g) => Predicate::no(vec![g]),
        None => Predicate::yes(),
    };
    ActionPredicates {
        outer: faithful.clone(),
        faithful,
        abelian,
        x_outer: free.clone(),
        fixed_point_free: free,
    }
}
