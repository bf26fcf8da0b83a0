//! A generic simplicity decider for finite-dimensional algebras given by
//! structure constants.
//!
//! The radical is read off the trace form `(x, y) ↦ Tr(L_{xy})`: its kernel
//! contains the radical in every characteristic and equals it in
//! characteristic 0 or `p > dim`. With zero radical the algebra is simple
//! exactly when its center is a field, which is decided by
//! * ℚ: an element `z(c) = Σ cⁱ z_i` of the center with minimal polynomial of
//!   full degree exists for some `c ≤ dim(Z)³`; the center is then `ℚ[t]/(m)`
//!   and is a field iff `m` is irreducible;
//! * GF(p): the Frobenius-fixed subspace `{z : z^p = z}` of the center has
//!   dimension equal to the number of simple factors.
//!
//! Whenever a minimal polynomial factors, a nontrivial central idempotent is
//! built from the coprime splitting and returned as the witness.

use crate::error::{Error, Result};
use crate::linalg::{null_space, Echelon, Insertion, SparseVec};
use crate::poly::{factor, Poly};
use crate::scalar::{Field, Scalar};
use crate::skew::SkewRingContext;

/// Default bound on the algebra dimension handled by the linear engine.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// A finite-dimensional associative unital algebra with a fixed basis.
pub trait FiniteAlgebra {
    fn field(&self) -> Field;
    fn dim(&self) -> usize;
    /// `b_i·b_j` in coordinates.
    fn basis_product(&self, i: usize, j: usize) -> SparseVec;
    fn one_vector(&self) -> SparseVec;

    /// A set generating the algebra as a k-algebra; the center is the
    /// common centralizer of these.
    fn algebra_generators(&self) -> Vec<SparseVec> {
        (0..self.dim()).map(|i| SparseVec::unit(i, self.field())).collect()
    }

    fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j).iter() {
                    pairs.push((k, &ab * c));
                }
            }
        }
        SparseVec::from_entries(pairs)
    }
}

impl FiniteAlgebra for SkewRingContext {
    fn field(&self) -> Field {
        SkewRingContext::field(self)
    }

    fn dim(&self) -> usize {
        SkewRingContext::dim(self)
    }

    fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        match SkewRingContext::basis_product(self, i, j) {
            Some(k) => SparseVec::unit(k, SkewRingContext::field(self)),
            None => SparseVec::new(),
        }
    }

    fn one_vector(&self) -> SparseVec {
        self.to_vector(&self.one())
    }

    fn algebra_generators(&self) -> Vec<SparseVec> {
        let mut gens: Vec<SparseVec> = (0..self.n())
            .map(|c| self.to_vector(&self.basis_element(c, self.group().identity())))
            .collect();
        gens.extend(
            self.group()
                .generators()
                .iter()
                .map(|&g| self.to_vector(&self.group_element(g))),
        );
        gens
    }

    fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.to_vector(&self.mul_unchecked(&self.from_vector(x), &self.from_vector(y)))
    }
}

/// Which argument made the radical computation sound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalRegime {
    /// Characteristic 0 or `p > dim`: the trace-form kernel is the radical.
    TraceFormExact,
    /// Small characteristic, but the trace-form kernel is zero, and the
    /// kernel always contains the radical.
    TraceFormNondegenerate,
}

/// Why the center is or is not a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterEvidence {
    OneDimensional,
    /// `Σ cⁱ z_i` generates the center and has this irreducible minimal polynomial.
    PrimitiveElement { c: u64, minimal_polynomial: Poly },
    /// The Frobenius-fixed subspace of the center is one-dimensional.
    FrobeniusFixedLine,
    /// This central element has a reducible minimal polynomial.
    SplitMinimalPolynomial { element: SparseVec, minimal_polynomial: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearVerdict {
    pub simple: bool,
    pub dim: usize,
    pub regime: RadicalRegime,
    /// Basis of the radical (empty when semisimple).
    pub radical: Vec<SparseVec>,
    /// Least `k` with `J^k = 0`, when the radical is nonzero.
    pub nilpotency_index: Option<usize>,
    pub center: Vec<SparseVec>,
    pub center_evidence: Option<CenterEvidence>,
    /// Nontrivial central idempotent, when the center splits.
    pub central_idempotent: Option<SparseVec>,
    pub reasoning: Vec<String>,
}

/// Basis of `{x : Σ x_k col_k = 0}` for a map given by its columns.
pub fn kernel_of_columns(field: Field, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
    for (k, col) in columns.iter().enumerate() {
        for (i, v) in col.iter() {
            rows.entry(i).or_default().push((k, v.clone()));
        }
    }
    null_space(field, columns.len(), rows.into_values().map(SparseVec::from_entries))
}

fn trace_vector<A: FiniteAlgebra>(alg: &A) -> SparseVec {
    let f = alg.field();
    let dim = alg.dim();
    let mut pairs = Vec::new();
    for k in 0..dim {
        let mut t = Scalar::zero(f);
        for j in 0..dim {
            if let Some(c) = alg.basis_product(k, j).get(j) {
                t += c;
            }
        }
        pairs.push((k, t));
    }
    SparseVec::from_entries(pairs)
}

fn linear_functional(t: &SparseVec, v: &SparseVec, field: Field) -> Scalar {
    t.dot(v).unwrap_or_else(|| Scalar::zero(field))
}

/// Nilpotency index of the span of `basis`, or `None` if not nilpotent.
pub fn nilpotency_index<A: FiniteAlgebra>(alg: &A, basis: &[SparseVec]) -> Option<usize> {
    if basis.is_empty() {
        return Some(0);
    }
    let mut power: Vec<SparseVec> = basis.to_vec();
    for k in 1..=alg.dim() + 1 {
        // `power` spans J^k here.
        if power.is_empty() {
            return Some(k);
        }
        let mut ech = Echelon::new(alg.field(), alg.dim());
        for x in &power {
            for y in basis {
                let p = alg.mul_vec(x, y);
                if !p.is_zero() {
                    ech.insert(p);
                }
            }
        }
        power = ech.rows();
    }
    None
}

/// Center of the algebra: common kernel of `z ↦ z·a − a·z` over generators.
pub fn center<A: FiniteAlgebra>(alg: &A) -> Vec<SparseVec> {
    let dim = alg.dim();
    let f = alg.field();
    let gens = alg.algebra_generators();
    let columns: Vec<SparseVec> = (0..dim)
        .map(|k| {
            let b = SparseVec::unit(k, f);
            let mut pairs = Vec::new();
            for (a_idx, a) in gens.iter().enumerate() {
                let comm = alg.mul_vec(&b, a).sub(&alg.mul_vec(a, &b));
                pairs.extend(comm.iter().map(|(i, v)| (a_idx * dim + i, v.clone())));
            }
            SparseVec::from_entries(pairs)
        })
        .collect();
    kernel_of_columns(f, &columns)
}

/// Minimal polynomial of `z` over the base field.
pub fn minimal_polynomial<A: FiniteAlgebra>(alg: &A, z: &SparseVec) -> Poly {
    let f = alg.field();
    let mut ech = Echelon::with_tracking(f, alg.dim());
    let mut power = alg.one_vector();
    for m in 0..=alg.dim() {
        match ech.insert(power.clone()) {
            Insertion::Added { .. } => power = alg.mul_vec(&power, z),
            Insertion::Dependent { combination } => {
                // z^m = Σ c_k z^k
                let mut coeffs: Vec<Scalar> = (0..m).map(|k| -&combination.get(k).cloned().unwrap_or_else(|| Scalar::zero(f))).collect();
                coeffs.push(Scalar::one(f));
                return Poly::new(f, coeffs);
            }
        }
    }
    unreachable!("powers of an element span at most dim + 1 vectors")
}

/// `p(z)` by Horner's rule.
pub fn evaluate<A: FiniteAlgebra>(alg: &A, p: &Poly, z: &SparseVec) -> SparseVec {
    let one = alg.one_vector();
    p.coeffs()
        .iter()
        .rev()
        .fold(SparseVec::new(), |acc, c| alg.mul_vec(&acc, z).add(&one.scale(c)))
}

/// For `z` with reducible squarefree-part minimal polynomial, the central
/// idempotent `b(z)·h(z)` where `a·f + b·h = 1`, `f` the first primary
/// factor and `h = m/f`.
pub fn split_idempotent<A: FiniteAlgebra>(alg: &A, z: &SparseVec, m: &Poly) -> Option<SparseVec> {
    let fs = factor(m);
    if fs.len() < 2 {
        return None;
    }
    let (f0, mult) = &fs[0];
    let primary = (0..*mult).fold(Poly::one(m.field()), |acc, _| acc.mul(f0));
    let h = m.divrem(&primary).0;
    let (g, _a, b) = primary.ext_gcd(&h);
    debug_assert!(g.degree() == Some(0));
    Some(evaluate(alg, &b.mul(&h).rem(m), z))
}

fn is_central<A: FiniteAlgebra>(alg: &A, z: &SparseVec) -> bool {
    alg.algebra_generators()
        .iter()
        .all(|a| alg.mul_vec(z, a) == alg.mul_vec(a, z))
}

fn frobenius<A: FiniteAlgebra>(alg: &A, z: &SparseVec, p: u64) -> SparseVec {
    let mut acc = alg.one_vector();
    let mut base = z.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = alg.mul_vec(&acc, &base);
        }
        base = alg.mul_vec(&base, &base);
        e >>= 1;
    }
    acc
}

/// Decides simplicity by the trace form and the center.
pub fn is_simple_linear<A: FiniteAlgebra>(alg: &A, max_dim: usize) -> Result<LinearVerdict> {
    let dim = alg.dim();
    let f = alg.field();
    if dim > max_dim {
        return Err(Error::DimensionBoundExceeded { dim, bound: max_dim });
    }
    let mut reasoning = Vec::new();
    let t = trace_vector(alg);
    let gram_rows = (0..dim).map(|i| {
        SparseVec::from_entries(
            (0..dim)
                .map(|j| (j, linear_functional(&t, &alg.basis_product(i, j), f)))
                .collect(),
        )
    });
    let kernel = null_space(f, dim, gram_rows);
    let p = f.characteristic();
    let regime = if p == 0 || p > dim as u64 {
        let why = if p == 0 { "characteristic 0".to_string() } else { format!("characteristic {p} > dim {dim}") };
        reasoning.push(format!(
            "[trace-form] {why}: the radical equals the kernel of (x,y) ↦ Tr(L_xy), of dimension {}",
            kernel.len()
        ));
        RadicalRegime::TraceFormExact
    } else if kernel.is_empty() {
        reasoning.push(format!(
            "[trace-form] characteristic {p} ≤ dim {dim}, but the trace form is nondegenerate and its kernel contains the radical, so the radical is 0"
        ));
        RadicalRegime::TraceFormNondegenerate
    } else {
        return Err(Error::UnsupportedCharacteristic { characteristic: p, dim });
    };

    let mut verdict = LinearVerdict {
        simple: false,
        dim,
        regime,
        radical: Vec::new(),
        nilpotency_index: None,
        center: Vec::new(),
        center_evidence: None,
        central_idempotent: None,
        reasoning,
    };

    if !kernel.is_empty() {
        let idx = nilpotency_index(alg, &kernel)
            .ok_or_else(|| Error::VerificationFailed("trace-form kernel is not nilpotent".into()))?;
        verdict.reasoning.push(format!(
            "[radical] nonzero radical of dimension {} with J^{idx} = 0: not semisimple, hence not simple",
            kernel.len()
        ));
        verdict.radical = kernel;
        verdict.nilpotency_index = Some(idx);
        return Ok(verdict);
    }

    let z = center(alg);
    verdict.reasoning.push(format!("[center] semisimple; center has dimension {}", z.len()));
    verdict.center = z.clone();
    if z.len() == 1 {
        verdict.simple = true;
        verdict.center_evidence = Some(CenterEvidence::OneDimensional);
        verdict.reasoning.push("[center] the center is the base field, so the algebra is simple".into());
        return Ok(verdict);
    }

    let split = |element: SparseVec, m: Poly, verdict: &mut LinearVerdict| -> Result<()> {
        let e = split_idempotent(alg, &element, &m).expect("reducible minimal polynomial");
        let ok = alg.mul_vec(&e, &e) == e && !e.is_zero() && e != alg.one_vector() && is_central(alg, &e);
        if !ok {
            return Err(Error::VerificationFailed("constructed central idempotent failed its checks".into()));
        }
        verdict.reasoning.push(format!(
            "[center] a central element has reducible minimal polynomial {m}; its coprime splitting yields a nontrivial central idempotent"
        ));
        verdict.center_evidence = Some(CenterEvidence::SplitMinimalPolynomial {
            element,
            minimal_polynomial: m,
        });
        verdict.central_idempotent = Some(e);
        Ok(())
    };

    for zi in &z {
        let m = minimal_polynomial(alg, zi);
        if factor(&m).len() > 1 {
            split(zi.clone(), m, &mut verdict)?;
            return Ok(verdict);
        }
    }

    match f {
        Field::Rational => {
            let d = z.len() as u64;
            for c in 1..=d * d * d + 1 {
                let cs = Scalar::from_i64(f, c as i64);
                let mut coef = cs.clone();
                let mut elem = SparseVec::new();
                for zi in &z {
                    elem = elem.axpy(&coef, zi);
                    coef = &coef * &cs;
                }
                let m = minimal_polynomial(alg, &elem);
                if factor(&m).len() > 1 {
                    split(elem, m, &mut verdict)?;
                    return Ok(verdict);
                }
                if m.degree() == Some(z.len()) {
                    verdict.simple = true;
                    verdict.reasoning.push(format!(
                        "[center] Σ {c}^i z_i generates the center with irreducible minimal polynomial {m}, so the center is a field"
                    ));
                    verdict.center_evidence = Some(CenterEvidence::PrimitiveElement { c, minimal_polynomial: m });
                    return Ok(verdict);
                }
            }
            Err(Error::Inconclusive("no primitive element of the center found".into()))
        }
        Field::Prime(p) => {
            let columns: Vec<SparseVec> = z.iter().map(|zi| frobenius(alg, zi, p).sub(zi)).collect();
            let fixed: Vec<SparseVec> = kernel_of_columns(f, &columns)
                .into_iter()
                .map(|coeffs| {
                    coeffs
                        .iter()
                        .fold(SparseVec::new(), |acc, (i, c)| acc.axpy(c, &z[i]))
                })
                .collect();
            if fixed.len() == 1 {
                verdict.simple = true;
                verdict.center_evidence = Some(CenterEvidence::FrobeniusFixedLine);
                verdict.reasoning.push(
                    "[center] the Frobenius-fixed subspace of the center is one-dimensional, so the center is a field".into(),
                );
                return Ok(verdict);
            }
            for x in fixed {
                let m = minimal_polynomial(alg, &x);
                if factor(&m).len() > 1 {
                    split(x, m, &mut verdict)?;
                    return Ok(verdict);
                }
            }
            Err(Error::Inconclusive("Frobenius-fixed subspace did not split".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{action_from_images, Action, FiniteGroup};

    /// Upper triangular 2×2 matrices, basis E11, E12, E22.
    struct UpperTriangular(Field);

    impl FiniteAlgebra for UpperTriangular {
        fn field(&self) -> Field {
            self.0
        }
        fn dim(&self) -> usize {
            3
        }
        fn basis_product(&self, i: usize, j: usize) -> SparseVec {
            let ij = |k: usize| match k {
                0 => (0, 0),
                1 => (0, 1),
                _ => (1, 1),
            };
            let (a, b) = ij(i);
            let (c, d) = ij(j);
            if b != c {
                return SparseVec::new();
            }
            let k = match (a, d) {
                (0, 0) => 0,
                (0, 1) => 1,
                _ => 2,
            };
            SparseVec::unit(k, self.0)
        }
        fn one_vector(&self) -> SparseVec {
            SparseVec::from_entries(vec![(0, Scalar::one(self.0)), (2, Scalar::one(self.0))])
        }
    }

    #[test]
    fn triangular_matrices_have_a_radical() {
        let v = is_simple_linear(&UpperTriangular(Field::Rational), DEFAULT_MAX_DIM).unwrap();
        assert!(!v.simple);
        assert_eq!(v.radical, vec![SparseVec::unit(1, Field::Rational)]);
        assert_eq!(v.nilpotency_index, Some(2));
    }

    #[test]
    fn swap_ring_is_simple() {
        let ctx = SkewRingContext::new(action_from_images(&[("g", &[2, 1])]).unwrap(), Field::Rational);
        let v = is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap();
        assert!(v.simple);
        assert!(v.radical.is_empty());
        assert_eq!(v.center.len(), 1);
    }

    #[test]
    fn s3_on_three_points_splits() {
        let ctx = SkewRingContext::new(
            action_from_images(&[("a", &[2, 1, 3]), ("b", &[1, 3, 2])]).unwrap(),
            Field::Rational,
        );
        let v = is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap();
        assert!(!v.simple);
        assert_eq!(v.center.len(), 2);
        let e = v.central_idempotent.unwrap();
        assert_eq!(ctx.mul_vec(&e, &e), e);
    }

    #[test]
    fn rational_group_algebra_of_order_two() {
        let ctx = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(2), 1), Field::Rational);
        let v = is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap();
        assert!(!v.simple);
        let half = Scalar::from_ratio(Field::Rational, 1, 2).unwrap();
        let expected = SparseVec::from_entries(vec![(0, half.clone()), (1, half)]);
        assert_eq!(v.central_idempotent, Some(expected));
        match v.center_evidence {
            Some(CenterEvidence::SplitMinimalPolynomial { minimal_polynomial, .. }) => {
                assert_eq!(minimal_polynomial, Poly::from_i64s(Field::Rational, &[-1, 0, 1]));
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }

    #[test]
    fn cyclic_group_algebra_over_rationals_is_not_simple_but_center_field_case() {
        // ℚ[Z₃] ≅ ℚ × ℚ(ω): center is everything, not a field.
        let ctx = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(3), 1), Field::Rational);
        assert!(!is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap().simple);
        // ℚ[Z₄] acting freely on k⁴ is M₄(ℚ): simple.
        let ctx = SkewRingContext::new(action_from_images(&[("a", &[2, 3, 4, 1])]).unwrap(), Field::Rational);
        assert!(is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap().simple);
    }

    #[test]
    fn small_characteristic_regimes() {
        let z2 = FiniteGroup::cyclic(2);
        let gf2 = SkewRingContext::new(Action::trivial(z2, 1), Field::Prime(2));
        assert_eq!(
            is_simple_linear(&gf2, DEFAULT_MAX_DIM),
            Err(Error::UnsupportedCharacteristic { characteristic: 2, dim: 2 })
        );
        // Free action, 7 ∤ |G|: trace form nondegenerate even though 7 ≤ dim.
        let ctx = SkewRingContext::new(action_from_images(&[("a", &[2, 3, 1])]).unwrap(), Field::Prime(7));
        let v = is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap();
        assert!(v.simple);
        assert_eq!(v.regime, RadicalRegime::TraceFormNondegenerate);
        // GF(7)[Z₃] with trivial action: 7 ≡ 1 mod 3 so it splits as GF(7)³.
        let ctx = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(3), 1), Field::Prime(7));
        assert!(!is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap().simple);
        // GF(2)[Z₃] ≅ GF(2) × GF(4): center splits through the Frobenius test.
        let ctx = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(3), 1), Field::Prime(2));
        assert!(!is_simple_linear(&ctx, DEFAULT_MAX_DIM).unwrap().simple);
    }

    #[test]
    fn dimension_bound() {
        let ctx = SkewRingContext::new(action_from_images(&[("a", &[2, 3, 4, 1])]).unwrap(), Field::Rational);
        assert_eq!(
            is_simple_linear(&ctx, 10),
            Err(Error::DimensionBoundExceeded { dim: 16, bound: 10 })
        );
    }

    #[test]
    fn minimal_polynomial_of_generator() {
        let ctx = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(4), 1), Field::Rational);
        let g = ctx.to_vector(&ctx.group_element(1));
        assert_eq!(minimal_polynomial(&ctx, &g), Poly::from_i64s(Field::Rational, &[-1, 0, 0, 0, 1]));
    }
}
