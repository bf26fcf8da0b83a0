//! The skew group ring R *_α G with R = kⁿ.
//!
//! Elements are finite sums `Σ r_g g` stored sparsely by group index. The
//! multiplication rule is `g·r = (ᵍr)·g`, hence `(r g)(s h) = r·(ᵍs)·(gh)`.
//!
//! As a k-vector space the ring has basis `e_c·g`, ordered group-index major
//! and coordinate minor: `e_c·g` has index `g·n + c`. All matrices, vectors
//! and certificates in the crate use this ordering.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ground::GroundElement;
use crate::group::{Action, FiniteGroup, Permutation};
use crate::linalg::{solve_columns, Matrix, SparseVec};
use crate::scalar::{Field, Scalar};

/// An element of R *_α G. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewElement {
    field: Field,
    n: usize,
    terms: BTreeMap<usize, GroundElement>,
}

impl SkewElement {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length: number of group elements with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Group indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, g: usize) -> Option<&GroundElement> {
        self.terms.get(&g)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &GroundElement)> {
        self.terms.iter().map(|(g, r)| (*g, r))
    }

    fn insert_term(&mut self, g: usize, r: GroundElement) {
        if r.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, r);
        }
    }

    fn accumulate(&mut self, g: usize, r: &GroundElement) {
        let next = match self.terms.get(&g) {
            Some(prev) => prev.add(r),
            None => r.clone(),
        };
        self.insert_term(g, next);
    }
}

/// The ambient ring: `k`, `n` and the action of `G` on `kⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRingContext {
    field: Field,
    action: Action,
}

impl SkewRingContext {
    pub fn new(action: Action, field: Field) -> Self {
        SkewRingContext { field, action }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.action.n()
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn order(&self) -> usize {
        self.action.order()
    }

    /// `n·|G|`, the k-dimension of the ring.
    pub fn dim(&self) -> usize {
        self.n() * self.order()
    }

    pub fn perm(&self, g: usize) -> &Permutation {
        self.action.perm(g)
    }

    /// `ᵍr`.
    pub fn act(&self, g: usize, r: &GroundElement) -> GroundElement {
        r.permuted(self.perm(g))
    }

    pub fn check(&self, x: &SkewElement) -> Result<()> {
        if x.field != self.field {
            return Err(Error::ContextMismatch(format!("field {} ≠ {}", x.field, self.field)));
        }
        if x.n != self.n() {
            return Err(Error::ContextMismatch(format!("n = {} ≠ {}", x.n, self.n())));
        }
        if let Some(&g) = x.terms.keys().find(|&&g| g >= self.order()) {
            return Err(Error::ContextMismatch(format!("group index {g} out of range")));
        }
        Ok(())
    }

    pub fn check_ground(&self, r: &GroundElement) -> Result<()> {
        if r.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: r.field().to_string(),
            });
        }
        if r.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: r.len(),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> SkewElement {
        SkewElement {
            field: self.field,
            n: self.n(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> SkewElement {
        self.ground(&GroundElement::one(self.field, self.n()))
    }

    /// `r·g`.
    pub fn monomial(&self, r: &GroundElement, g: usize) -> SkewElement {
        assert!(g < self.order(), "group index out of range");
        assert_eq!(r.len(), self.n(), "ground element has the wrong length");
        let mut x = self.zero();
        x.insert_term(g, r.clone());
        x
    }

    /// `r·1`, the embedding R → R*G.
    pub fn ground(&self, r: &GroundElement) -> SkewElement {
        self.monomial(r, self.group().identity())
    }

    /// `1·g`.
    pub fn group_element(&self, g: usize) -> SkewElement {
        self.monomial(&GroundElement::one(self.field, self.n()), g)
    }

    /// `e_c·g`, the basis element with index `g·n + c`.
    pub fn basis_element(&self, c: usize, g: usize) -> SkewElement {
        self.monomial(&GroundElement::basis(self.field, self.n(), c), g)
    }

    pub fn basis_by_index(&self, k: usize) -> SkewElement {
        self.basis_element(k % self.n(), k / self.n())
    }

    /// `(c, g)` of a basis index.
    pub fn basis_parts(&self, k: usize) -> (usize, usize) {
        (k % self.n(), k / self.n())
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (usize, GroundElement)>) -> Result<SkewElement> {
        let mut x = self.zero();
        for (g, r) in terms {
            if g >= self.order() {
                return Err(Error::ContextMismatch(format!("group index {g} out of range")));
            }
            self.check_ground(&r)?;
            x.accumulate(g, &r);
        }
        Ok(x)
    }

    pub fn add(&self, x: &SkewElement, y: &SkewElement) -> Result<SkewElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        for (g, r) in &y.terms {
            out.accumulate(*g, r);
        }
        Ok(out)
    }

    pub fn sub(&self, x: &SkewElement, y: &SkewElement) -> Result<SkewElement> {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &SkewElement) -> SkewElement {
        SkewElement {
            field: x.field,
            n: x.n,
            terms: x.terms.iter().map(|(g, r)| (*g, r.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar, x: &SkewElement) -> SkewElement {
        let mut out = self.zero();
        for (g, r) in &x.terms {
            out.insert_term(*g, r.scale(s));
        }
        out
    }

    /// `x·y` with `(r g)(s h) = r·(ᵍs)·(gh)`.
    pub fn mul(&self, x: &SkewElement, y: &SkewElement) -> Result<SkewElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &SkewElement, y: &SkewElement) -> SkewElement {
        let mut out = self.zero();
        for (&g, r) in &x.terms {
            for (&h, s) in &y.terms {
                let coeff = r.mul(&self.act(g, s));
                if !coeff.is_zero() {
                    out.accumulate(self.group().mul(g, h), &coeff);
                }
            }
        }
        out
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[&SkewElement]) -> Result<SkewElement> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: usize, x: &SkewElement) -> SkewElement {
        let grp = self.group();
        let gi = grp.inv(g);
        let mut out = self.zero();
        for (&h, r) in &x.terms {
            out.insert_term(grp.mul(grp.mul(g, h), gi), self.act(g, r));
        }
        out
    }

    /// Coordinates in the basis `e_c·g` (index `g·n + c`).
    pub fn to_vector(&self, x: &SkewElement) -> SparseVec {
        let n = self.n();
        let mut pairs = Vec::new();
        for (&g, r) in &x.terms {
            for (c, v) in r.coords().iter().enumerate() {
                if !v.is_zero() {
                    pairs.push((g * n + c, v.clone()));
                }
            }
        }
        SparseVec::from_entries(pairs)
    }

    pub fn from_vector(&self, v: &SparseVec) -> SkewElement {
        let n = self.n();
        let mut coeffs: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (k, val) in v.iter() {
            let (c, g) = (k % n, k / n);
            coeffs.entry(g).or_insert_with(|| vec![Scalar::zero(self.field); n])[c] = val.clone();
        }
        let mut x = self.zero();
        for (g, coords) in coeffs {
            x.insert_term(g, GroundElement::new(self.field, coords).expect("coords share the field"));
        }
        x
    }

    /// Product of basis elements `b_i·b_j`: `(e_c g)(e_d h) = [c = g(d)]·e_c·(gh)`.
    /// The coefficient is always 1 when nonzero.
    pub fn basis_product(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.n();
        let (c, g) = (i % n, i / n);
        let (d, h) = (j % n, j / n);
        (self.perm(g).apply(d) == c).then(|| self.group().mul(g, h) * n + c)
    }

    /// Matrix of left multiplication `L_x` in the standard basis.
    pub fn regular_rep(&self, x: &SkewElement) -> Matrix {
        let dim = self.dim();
        let columns: Vec<SparseVec> = (0..dim)
            .map(|j| self.to_vector(&self.mul_unchecked(x, &self.basis_by_index(j))))
            .collect();
        Matrix::from_columns(self.field, dim, &columns)
    }

    /// Matrix of right multiplication `R_x`.
    pub fn right_rep(&self, x: &SkewElement) -> Matrix {
        let dim = self.dim();
        let columns: Vec<SparseVec> = (0..dim)
            .map(|j| self.to_vector(&self.mul_unchecked(&self.basis_by_index(j), x)))
            .collect();
        Matrix::from_columns(self.field, dim, &columns)
    }

    /// Returns the two-sided inverse when `x` is a unit.
    ///
    /// `L_x` invertible is decided by solving `L_x y = 1`; in a
    /// finite-dimensional algebra a right inverse is two-sided, which is
    /// re-checked exactly before returning.
    pub fn inverse(&self, x: &SkewElement) -> Result<Option<SkewElement>> {
        self.check(x)?;
        let dim = self.dim();
        let columns: Vec<SparseVec> = (0..dim)
            .map(|j| self.to_vector(&self.mul_unchecked(x, &self.basis_by_index(j))))
            .collect();
        let one = self.to_vector(&self.one());
        let Some(y) = solve_columns(self.field, dim, &columns, &one) else {
            return Ok(None);
        };
        let y = self.from_vector(&y);
        let one = self.one();
        if self.mul_unchecked(x, &y) == one && self.mul_unchecked(&y, x) == one {
            Ok(Some(y))
        } else {
            Ok(None)
        }
    }

    pub fn is_unit(&self, x: &SkewElement) -> Result<bool> {
        Ok(self.inverse(x)?.is_some())
    }

    /// Solves `x·y·x = x` for `y`, which is linear in `y`. Free variables are
    /// set to zero. `NoSolution` means `x` is not a regular element.
    pub fn quasi_inverse(&self, x: &SkewElement) -> Result<SkewElement> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(self.zero());
        }
        let dim = self.dim();
        let columns: Vec<SparseVec> = (0..dim)
            .map(|j| {
                let xb = self.mul_unchecked(x, &self.basis_by_index(j));
                self.to_vector(&self.mul_unchecked(&xb, x))
            })
            .collect();
        let rhs = self.to_vector(x);
        let y = solve_columns(self.field, dim, &columns, &rhs).ok_or(Error::NoSolution)?;
        Ok(self.from_vector(&y))
    }

    /// JSON form: `[[label, [coeffs…]], …]` sorted by group index.
    pub fn element_to_json(&self, x: &SkewElement) -> serde_json::Value {
        serde_json::Value::Array(
            x.terms
                .iter()
                .map(|(g, r)| serde_json::json!([self.group().label(*g), r.to_json()]))
                .collect(),
        )
    }

    /// Parses the JSON form. Labels may be element labels or words in the
    /// named generators; repeated labels are summed.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<SkewElement> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema("", "skew element must be an array of [label, coefficients] pairs"))?;
        let mut terms = Vec::new();
        for (k, item) in arr.iter().enumerate() {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::schema(format!("/{k}"), "expected [label, coefficients]"))?;
            let label = pair[0]
                .as_str()
                .ok_or_else(|| Error::schema(format!("/{k}/0"), "group element label must be a string"))?;
            let g = self.action.element(label)?;
            let r = GroundElement::from_json(self.field, &pair[1])?;
            self.check_ground(&r)?;
            terms.push((g, r));
        }
        self.from_terms(terms)
    }

    pub fn display(&self, x: &SkewElement) -> String {
        DisplaySkew { ctx: self, x }.to_string()
    }
}

struct DisplaySkew<'a> {
    ctx: &'a SkewRingContext,
    x: &'a SkewElement,
}

impl fmt::Display for DisplaySkew<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        for (k, (g, r)) in self.x.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{r}·{}", self.ctx.group().label(g))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::action_from_images;
    use proptest::prelude::*;

    fn swap_ctx(field: Field) -> SkewRingContext {
        SkewRingContext::new(action_from_images(&[("g", &[2, 1])]).unwrap(), field)
    }

    fn e(ctx: &SkewRingContext, c: usize) -> GroundElement {
        GroundElement::basis(ctx.field(), ctx.n(), c)
    }

    #[test]
    fn idempotent_in_swap_ring() {
        let ctx = swap_ctx(Field::Rational);
        let g = ctx.action().element("g").unwrap();
        let x = ctx.add(&ctx.ground(&e(&ctx, 0)), &ctx.monomial(&e(&ctx, 1), g)).unwrap();
        assert_eq!(ctx.mul(&x, &x).unwrap(), x);
        let y = ctx.monomial(&e(&ctx, 0), g);
        assert!(ctx.mul(&y, &y).unwrap().is_zero());
        assert_eq!(ctx.mul(&ctx.one(), &x).unwrap(), x);
        assert!(!ctx.is_unit(&x).unwrap());
    }

    #[test]
    fn conjugation_swaps_idempotents() {
        let ctx = swap_ctx(Field::Rational);
        let g = ctx.action().element("g").unwrap();
        let e1 = ctx.ground(&e(&ctx, 0));
        assert_eq!(ctx.conjugate(g, &e1), ctx.ground(&e(&ctx, 1)));
        assert_eq!(ctx.conjugate(0, &e1), e1);
    }

    #[test]
    fn conjugation_in_cyclic_four() {
        let ctx = SkewRingContext::new(action_from_images(&[("a", &[2, 3, 4, 1])]).unwrap(), Field::Rational);
        let a = ctx.action().element("a").unwrap();
        let h = ctx.action().element("a^2").unwrap();
        let x = ctx.monomial(&e(&ctx, 0), h);
        let lhs = ctx.conjugate(a, &x);
        let ai = ctx.group().inv(a);
        let rhs = ctx
            .product(&[&ctx.group_element(a), &x, &ctx.group_element(ai)])
            .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, ctx.monomial(&e(&ctx, 1), h));
    }

    #[test]
    fn regular_representation_examples() {
        let ctx = swap_ctx(Field::Rational);
        assert!(ctx.regular_rep(&ctx.one()).is_identity());
        let g = ctx.group_element(ctx.action().element("g").unwrap());
        let m = ctx.regular_rep(&g);
        assert!(m.is_permutation_matrix());
        assert!(m.mul(&m).is_identity());
        let e1 = ctx.regular_rep(&ctx.ground(&e(&ctx, 0)));
        assert_eq!(e1.rank(), ctx.order());
    }

    #[test]
    fn units_and_inverses() {
        let ctx = SkewRingContext::new(action_from_images(&[("a", &[2, 3, 4, 1])]).unwrap(), Field::Rational);
        let a = ctx.action().element("a").unwrap();
        let inv = ctx.inverse(&ctx.group_element(a)).unwrap().unwrap();
        assert_eq!(inv, ctx.group_element(ctx.group().inv(a)));
        assert!(ctx.inverse(&ctx.ground(&e(&ctx, 0))).unwrap().is_none());
    }

    #[test]
    fn quasi_inverse_examples() {
        let ctx = swap_ctx(Field::Rational);
        let g = ctx.action().element("g").unwrap();
        let x = ctx.monomial(&e(&ctx, 0), g);
        let y = ctx.quasi_inverse(&x).unwrap();
        assert_eq!(y, ctx.monomial(&e(&ctx, 1), g));
        assert!(ctx.quasi_inverse(&ctx.zero()).unwrap().is_zero());

        let z2 = crate::group::FiniteGroup::cyclic(2);
        let gf2 = SkewRingContext::new(Action::trivial(z2, 1), Field::Prime(2));
        let x = ctx_sum(&gf2, &[0, 1]);
        assert_eq!(gf2.quasi_inverse(&x), Err(Error::NoSolution));
    }

    fn ctx_sum(ctx: &SkewRingContext, gs: &[usize]) -> SkewElement {
        gs.iter()
            .fold(ctx.zero(), |acc, &g| ctx.add(&acc, &ctx.group_element(g)).unwrap())
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = swap_ctx(Field::Rational);
        let b = swap_ctx(Field::Prime(3));
        assert!(matches!(a.mul(&a.one(), &b.one()), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let ctx = swap_ctx(Field::Rational);
        let x = ctx.element_from_json(&serde_json::json!([["1", ["1/2", "0"]], ["g", ["0", "-3"]]])).unwrap();
        assert_eq!(ctx.element_from_json(&ctx.element_to_json(&x)).unwrap(), x);
        assert_eq!(ctx.display(&x), "(1/2,0)·1 + (0,-3)·g");
    }

    fn s3_ctx() -> SkewRingContext {
        SkewRingContext::new(
            action_from_images(&[("a", &[2, 1, 3]), ("b", &[1, 3, 2])]).unwrap(),
            Field::Rational,
        )
    }

    fn element(ctx: &SkewRingContext) -> impl Strategy<Value = SkewElement> {
        let (dim, field) = (ctx.dim(), ctx.field());
        let ctx = ctx.clone();
        prop::collection::vec((0..dim, -3i64..4), 0..6).prop_map(move |pairs| {
            let v = SparseVec::from_entries(pairs.into_iter().map(|(i, c)| (i, Scalar::from_i64(field, c))).collect());
            ctx.from_vector(&v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn regular_rep_is_multiplicative((x, y) in (element(&s3_ctx()), element(&s3_ctx()))) {
            let ctx = s3_ctx();
            let xy = ctx.mul(&x, &y).unwrap();
            prop_assert_eq!(ctx.regular_rep(&xy), ctx.regular_rep(&x).mul(&ctx.regular_rep(&y)));
            prop_assert!(xy.len() <= x.len() * y.len());
        }

        #[test]
        fn associativity_and_conjugation((x, y, z) in (element(&s3_ctx()), element(&s3_ctx()), element(&s3_ctx())), g in 0usize..6) {
            let ctx = s3_ctx();
            let l = ctx.mul(&ctx.mul(&x, &y).unwrap(), &z).unwrap();
            let r = ctx.mul(&x, &ctx.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(ctx.conjugate(g, &x).len(), x.len());
            let gi = ctx.group().inv(g);
            let direct = ctx.product(&[&ctx.group_element(g), &x, &ctx.group_element(gi)]).unwrap();
            prop_assert_eq!(ctx.conjugate(g, &x), direct);
        }

        #[test]
        fn quasi_inverse_over_rationals(x in element(&s3_ctx())) {
            let ctx = s3_ctx();
            let y = ctx.quasi_inverse(&x).unwrap();
            prop_assert_eq!(ctx.product(&[&x, &y, &x]).unwrap(), x.clone());
            if let Some(inv) = ctx.inverse(&x).unwrap() {
                prop_assert_eq!(ctx.mul(&x, &inv).unwrap(), ctx.one());
                prop_assert_eq!(ctx.mul(&inv, &x).unwrap(), ctx.one());
            }
        }
    }
}
