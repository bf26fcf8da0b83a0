//! The split commutative regular ground ring R = kⁿ.
//!
//! Elements are coordinate vectors with componentwise operations. The
//! primitive idempotents are the coordinate indicators `e_i`, every ideal is
//! the span of a coordinate subset, and every element has the componentwise
//! quasi-inverse, so R is Von Neumann regular.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Permutation;
use crate::scalar::{Field, Scalar};

/// Which componentwise operation [`ground_arithmetic`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroundOp {
    Add,
    Sub,
    Mul,
}

/// An element of kⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundElement {
    field: Field,
    coords: Vec<Scalar>,
}

impl GroundElement {
    /// Validates that all coordinates live in `field` and that `n ≥ 1`.
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: bad.field().to_string(),
            });
        }
        Ok(GroundElement { field, coords })
    }

    pub fn from_i64s(field: Field, values: &[i64]) -> Self {
        GroundElement {
            field,
            coords: values.iter().map(|&v| Scalar::from_i64(field, v)).collect(),
        }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        GroundElement {
            field,
            coords: vec![Scalar::zero(field); n],
        }
    }

    pub fn one(field: Field, n: usize) -> Self {
        GroundElement {
            field,
            coords: vec![Scalar::one(field); n],
        }
    }

    /// The primitive idempotent `e_i` (0-indexed).
    pub fn basis(field: Field, n: usize, i: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coords[i] = Scalar::one(field);
        e
    }

    /// Indicator vector of a coordinate subset (0-indexed).
    pub fn indicator(field: Field, n: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut e = Self::zero(field, n);
        for p in points {
            e.coords[p] = Scalar::one(field);
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords.iter().all(Scalar::is_one)
    }

    /// Coordinates with a nonzero entry, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// Unit of kⁿ: every coordinate nonzero.
    pub fn is_unit(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }

    pub fn check_compatible(&self, other: &GroundElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &GroundElement, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> GroundElement {
        assert_eq!(self.len(), other.len(), "ground elements of different length");
        GroundElement {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &GroundElement) -> GroundElement {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GroundElement) -> GroundElement {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &GroundElement) -> GroundElement {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> GroundElement {
        GroundElement {
            field: self.field,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> GroundElement {
        GroundElement {
            field: self.field,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Componentwise quasi-inverse: `x_i = a_i⁻¹` where `a_i ≠ 0`, else 0.
    /// Satisfies `a·x·a = a` and `x·a·x = x`.
    pub fn quasi_inverse(&self) -> GroundElement {
        GroundElement {
            field: self.field,
            coords: self
                .coords
                .iter()
                .map(|c| c.inv().unwrap_or_else(|| Scalar::zero(self.field)))
                .collect(),
        }
    }

    /// `a·quasi_inverse(a)`: the indicator of the support of `a`.
    pub fn support_idempotent(&self) -> GroundElement {
        self.mul(&self.quasi_inverse())
    }

    /// Applies the coordinate automorphism induced by `perm`:
    /// `(σ·a)_i = a_{σ⁻¹(i)}`, so that `σ·e_j = e_{σ(j)}`.
    pub fn permuted(&self, perm: &Permutation) -> GroundElement {
        assert_eq!(perm.len(), self.len(), "permutation degree differs from n");
        let mut coords = vec![Scalar::zero(self.field); self.len()];
        for (j, c) in self.coords.iter().enumerate() {
            coords[perm.apply(j)] = c.clone();
        }
        GroundElement { field: self.field, coords }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(field: Field, v: &serde_json::Value) -> Result<GroundElement> {
        let arr = v.as_array().ok_or_else(|| Error::InvalidScalar {
            value: v.to_string(),
            reason: "expected an array of scalars".into(),
        })?;
        let coords = arr
            .iter()
            .map(|s| Scalar::from_json(field, s))
            .collect::<Result<Vec<_>>>()?;
        GroundElement::new(field, coords)
    }
}

impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise `a op b`, rejecting mismatched lengths or fields.
pub fn ground_arithmetic(a: &GroundElement, b: &GroundElement, op: GroundOp) -> Result<GroundElement> {
    a.check_compatible(b)?;
    Ok(match op {
        GroundOp::Add => a.add(b),
        GroundOp::Sub => a.sub(b),
        GroundOp::Mul => a.mul(b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> GroundElement {
        GroundElement::from_i64s(Field::Rational, v)
    }

    fn gf5(v: &[i64]) -> GroundElement {
        GroundElement::from_i64s(Field::Prime(5), v)
    }

    #[test]
    fn componentwise_examples() {
        assert_eq!(ground_arithmetic(&q(&[1, 2]), &q(&[3, 4]), GroundOp::Mul).unwrap(), q(&[3, 8]));
        let sum = ground_arithmetic(&q(&[1, 0]), &q(&[0, 1]), GroundOp::Add).unwrap();
        assert!(sum.is_one());
        assert_eq!(ground_arithmetic(&gf5(&[3, 4]), &gf5(&[2, 2]), GroundOp::Mul).unwrap(), gf5(&[1, 3]));
    }

    #[test]
    fn mismatches_are_errors() {
        assert!(matches!(
            ground_arithmetic(&q(&[1, 2]), &q(&[1, 2, 3]), GroundOp::Add),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ground_arithmetic(&q(&[1, 2]), &gf5(&[1, 2]), GroundOp::Add),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn quasi_inverse_examples() {
        let x = q(&[2, 0, 3]).quasi_inverse();
        assert_eq!(x.to_string(), "(1/2,0,1/3)");
        assert!(q(&[0, 0]).quasi_inverse().is_zero());
        assert_eq!(gf5(&[3, 4]).quasi_inverse(), gf5(&[2, 4]));
    }

    #[test]
    fn support_idempotent_examples() {
        assert_eq!(q(&[2, 0, 3]).support_idempotent(), q(&[1, 0, 1]));
        assert!(q(&[0, 0, 0]).support_idempotent().is_zero());
        assert!(gf5(&[5, 5]).support_idempotent().is_zero());
    }

    #[test]
    fn permutation_moves_basis_vectors() {
        let p = Permutation::from_one_indexed(&[2, 3, 1]).unwrap();
        let e1 = GroundElement::basis(Field::Rational, 3, 0);
        assert_eq!(e1.permuted(&p), GroundElement::basis(Field::Rational, 3, 1));
    }

    fn element(field: Field, n: usize) -> impl Strategy<Value = GroundElement> {
        prop::collection::vec(-4i64..5, n).prop_map(move |v| GroundElement::from_i64s(field, &v))
    }

    fn any_field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(7))]
    }

    proptest! {
        #[test]
        fn quasi_inverse_laws((f, a) in any_field().prop_flat_map(|f| (Just(f), element(f, 6)))) {
            let x = a.quasi_inverse();
            prop_assert_eq!(a.mul(&x).mul(&a), a.clone());
            prop_assert_eq!(x.mul(&a).mul(&x), x.clone());
            let e = a.support_idempotent();
            prop_assert_eq!(e.mul(&e), e.clone());
            prop_assert_eq!(e.mul(&a), a);
            prop_assert!(e.field() == f);
        }

        #[test]
        fn ring_axioms((a, b, c) in any_field().prop_flat_map(|f| (element(f, 4), element(f, 4), element(f, 4)))) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).sub(&b), a);
        }
    }
}
