//! Univariate polynomials over ℚ and GF(p), with factorization into monic
//! irreducibles: Berlekamp over GF(p), Zassenhaus (Berlekamp mod a good
//! prime, multifactor Hensel lifting, subset recombination) over ℚ.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{null_space, SparseVec};
use crate::scalar::{is_prime, Field, Scalar};

/// Dense polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect())
    }

    pub fn zero(field: Field) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// `x^k`.
    pub fn monomial(field: Field, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(field); k + 1];
        coeffs[k] = Scalar::one(field);
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..len).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lc().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![Scalar::zero(self.field); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc().cloned() {
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_i64(self.field, i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Order by degree, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.canonical_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if mag == "1" && i > 0 { String::new() } else { mag };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic irreducible factors with multiplicities, in canonical order.
/// Constants have no factors.
pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if f.is_constant() {
        return out;
    }
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        let pieces = match f.field() {
            Field::Prime(_) => berlekamp(&part),
            Field::Rational => zassenhaus(&part),
        };
        out.extend(pieces.into_iter().map(|p| (p, mult)));
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

pub fn is_irreducible(f: &Poly) -> bool {
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Monic squarefree parts `(a_i, i)` with `f = Π a_i^i`, for monic `f`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    match f.field() {
        Field::Rational => yun(f),
        Field::Prime(p) => sqf_prime(f, p),
    }
}

fn yun(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.divrem(&a0).0;
    let c = d.divrem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&dd);
        let b_next = b.divrem(&a).0;
        let c_next = dd.divrem(&a).0;
        dd = c_next.sub(&b_next.derivative());
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn sqf_prime(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_constant() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_constant() {
        // c is a p-th power: take the p-th root coefficientwise.
        let root = Poly::new(f.field(), c.coeffs.iter().step_by(p as usize).cloned().collect());
        for (g, m) in sqf_prime(&root.monic(), p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Factors a monic squarefree polynomial over GF(p).
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let p = field.characteristic();
    let d = f.degree().unwrap_or(0);
    if d <= 1 {
        return vec![f.clone()];
    }
    let xp = Poly::monomial(field, 1).pow_mod(p, f);
    let mut q_rows: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    let mut cur = Poly::one(field);
    for _ in 0..d {
        q_rows.push((0..d).map(|j| cur.coeff(j)).collect());
        cur = cur.mul(&xp).rem(f);
    }
    // v with Σ_i v_i (Q_ij − δ_ij) = 0 for every j.
    let equations = (0..d).map(|j| {
        SparseVec::from_entries(
            (0..d)
                .map(|i| {
                    let mut v = q_rows[i][j].clone();
                    if i == j {
                        v -= &Scalar::one(field);
                    }
                    (i, v)
                })
                .collect(),
        )
    });
    let kernel: Vec<Poly> = null_space(field, d, equations)
        .into_iter()
        .map(|v| Poly::new(field, v.to_dense(field, d)))
        .collect();
    let r = kernel.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    if p <= 256 {
        for v in kernel.iter().filter(|v| !v.is_constant()) {
            let mut next = Vec::new();
            for h in factors {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let mut rest = h;
                for s in 0..p {
                    let g = rest.gcd(&v.sub(&Poly::constant(Scalar::from_i64(field, s as i64))));
                    if !g.is_constant() {
                        rest = rest.divrem(&g).0;
                        next.push(g);
                    }
                    if rest.is_constant() {
                        break;
                    }
                }
            }
            factors = next;
            if factors.len() == r {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
        let e = (p - 1) / 2;
        while factors.len() < r {
            let v = kernel.iter().fold(Poly::zero(field), |acc, k| {
                acc.add(&k.scale(&Scalar::from_i64(field, rng.gen_range(0..p.min(i64::MAX as u64)) as i64)))
            });
            let mut next = Vec::new();
            for h in factors {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let w = v.pow_mod(e, &h).sub(&Poly::one(field));
                let g = h.gcd(&w);
                if !g.is_constant() && g.degree() < h.degree() {
                    next.push(h.divrem(&g).0.monic());
                    next.push(g);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    factors.into_iter().map(|g| g.monic()).collect()
}

// ---------------------------------------------------------------------------
// Integer polynomials, used by the Zassenhaus factorizer.

type ZPoly = Vec<BigInt>;

fn zp_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zp_deg(a: &ZPoly) -> usize {
    a.len().saturating_sub(1)
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_trim(out)
}

fn zp_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let len = a.len().max(b.len());
    let z = BigInt::zero();
    zp_trim((0..len).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zp_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let len = a.len().max(b.len());
    let z = BigInt::zero();
    zp_trim((0..len).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zp_scale(a: &ZPoly, s: &BigInt) -> ZPoly {
    zp_trim(a.iter().map(|c| c * s).collect())
}

fn zp_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    zp_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients in the symmetric range `(-m/2, m/2]`.
fn zp_sym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    zp_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a polynomial whose leading coefficient is a unit mod `m`.
fn zp_divrem_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = zp_deg(b);
    let inv = mod_inverse(b.last().expect("nonzero divisor"), m);
    let mut rem = zp_mod(a, m);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = (&rem[k + db] * &inv).mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * bc).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (zp_trim(quot), zp_trim(rem))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient is not invertible");
    e.x.mod_floor(m)
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(a: &ZPoly) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    let sign = if a.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

/// Exact quotient `a / b` in ℤ[x], if `b` divides `a`.
fn zp_exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = zp_deg(b);
    let lb = b.last()?;
    let mut rem = a.clone();
    if rem.len() <= db {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let (c, r) = rem[k + db].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[k + j] -= &c * bc;
        }
        quot[k] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(zp_trim(quot))
    } else {
        None
    }
}

fn to_prime_poly(a: &ZPoly, p: u64) -> Poly {
    let f = Field::Prime(p);
    Poly::new(f, a.iter().map(|c| Scalar::from_bigint(f, c)).collect())
}

fn from_prime_poly(a: &Poly) -> ZPoly {
    zp_trim(
        a.coeffs()
            .iter()
            .map(|c| match c {
                Scalar::Modular { value, .. } => BigInt::from(*value),
                Scalar::Rational(_) => unreachable!("expected a GF(p) polynomial"),
            })
            .collect(),
    )
}

/// One quadratic Hensel step: from `f ≡ g·h (mod m)`, `s·g + t·h ≡ 1 (mod m)`,
/// `h` monic, to the same relations mod `m²`.
fn hensel_step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zp_mod(&zp_sub(f, &zp_mul(g, h)), &m2);
    let (q, r) = zp_divrem_mod(&zp_mul(s, &e), h, &m2);
    let g2 = zp_mod(&zp_add(g, &zp_add(&zp_mul(t, &e), &zp_mul(&q, g))), &m2);
    let h2 = zp_mod(&zp_add(h, &r), &m2);
    let b = zp_mod(&zp_sub(&zp_add(&zp_mul(s, &g2), &zp_mul(t, &h2)), &vec![BigInt::one()]), &m2);
    let (c, d) = zp_divrem_mod(&zp_mul(s, &b), &h2, &m2);
    let s2 = zp_mod(&zp_sub(s, &d), &m2);
    let t2 = zp_mod(&zp_sub(t, &zp_add(&zp_mul(t, &b), &zp_mul(&c, &g2))), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` with monic factors to a
/// factorization mod `p^k` (given as `pk`), returning monic lifted factors.
fn multifactor_lift(f: &ZPoly, factors: &[ZPoly], p: u64, pk: &BigInt) -> Vec<ZPoly> {
    let bp = BigInt::from(p);
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), pk);
        return vec![zp_mod(&zp_scale(f, &inv), pk)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc = f.last().unwrap().mod_floor(&bp);
    let g0 = zp_mod(&zp_scale(&left.iter().fold(vec![BigInt::one()], |a, b| zp_mul(&a, b)), &lc), &bp);
    let h0 = zp_mod(&right.iter().fold(vec![BigInt::one()], |a, b| zp_mul(&a, b)), &bp);
    let (gcd, s0, t0) = to_prime_poly(&g0, p).ext_gcd(&to_prime_poly(&h0, p));
    debug_assert!(gcd.degree() == Some(0));
    let (mut g, mut h, mut s, mut t) = (g0, h0, from_prime_poly(&s0), from_prime_poly(&t0));
    let mut m = bp.clone();
    while &m < pk {
        let next = hensel_step(f, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let g = zp_mod(&g, pk);
    let h = zp_mod(&h, pk);
    let mut out = multifactor_lift(&g, left, p, pk);
    out.extend(multifactor_lift(&h, right, p, pk));
    out
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive integer polynomial.
fn zassenhaus_int(f: &ZPoly) -> Vec<ZPoly> {
    let d = zp_deg(f);
    if d <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let p = (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fp = to_prime_poly(f, p);
            fp.gcd(&fp.derivative()).is_constant()
        })
        .expect("a good prime exists for a squarefree polynomial");
    let modular = berlekamp(&to_prime_poly(f, p).monic());
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficient bound for any factor, scaled by lc.
    let norm2 = f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << d) * norm2 * 2;
    let bp = BigInt::from(p);
    let mut pk = bp.clone();
    while pk <= bound {
        pk *= &bp;
    }
    let lifted = multifactor_lift(f, &modular.iter().map(from_prime_poly).collect::<Vec<_>>(), p, &pk);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let lc_cur = current.last().unwrap().clone();
        let mut hit = None;
        for subset in (0..remaining.len()).combinations(size) {
            let prod = subset
                .iter()
                .fold(vec![lc_cur.clone()], |acc, &i| zp_mod(&zp_mul(&acc, &remaining[i]), &pk));
            let candidate = primitive_part(&zp_sym(&prod, &pk));
            if let Some(q) = zp_exact_div(&current, &candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                current = primitive_part(&q);
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if zp_deg(&current) > 0 {
        found.push(current);
    }
    found
}

/// Factors a monic squarefree polynomial over ℚ into monic irreducibles.
fn zassenhaus(f: &Poly) -> Vec<Poly> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![f.clone()];
    }
    let denom_lcm = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").denom().clone())
        .fold(BigInt::one(), |a, b| a.lcm(&b));
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&denom_lcm / q.denom())
        })
        .collect();
    zassenhaus_int(&primitive_part(&ints))
        .into_iter()
        .map(|g| Poly::new(Field::Rational, g.iter().map(|c| Scalar::from_bigint(Field::Rational, c)).collect()).monic())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rational, c)
    }

    fn expand(fs: &[(Poly, usize)], field: Field) -> Poly {
        fs.iter().fold(Poly::one(field), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn division_and_gcd() {
        let f = q(&[-1, 0, 1]);
        let (quot, rem) = f.divrem(&q(&[-1, 1]));
        assert_eq!(quot, q(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(f.gcd(&q(&[1, 1])), q(&[1, 1]));
        let (g, s, t) = q(&[1, 0, 1]).ext_gcd(&q(&[-1, 1]));
        assert_eq!(g, Poly::one(Field::Rational));
        assert_eq!(s.mul(&q(&[1, 0, 1])).add(&t.mul(&q(&[-1, 1]))), g);
    }

    #[test]
    fn rational_factorizations() {
        // t² − 1 = (t − 1)(t + 1)
        let fs = factor(&q(&[-1, 0, 1]));
        assert_eq!(fs, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 1)]);
        assert!(is_irreducible(&q(&[1, 0, 1])));
        assert!(is_irreducible(&q(&[-2, 0, 1])));
        // t⁴ + 1 is irreducible over ℚ but splits mod every prime.
        assert!(is_irreducible(&q(&[1, 0, 0, 0, 1])));
        // (t² − 2)(t² − 3) has no rational roots.
        let f = q(&[-2, 0, 1]).mul(&q(&[-3, 0, 1]));
        assert_eq!(factor(&f).len(), 2);
        // Repeated factor.
        let f = q(&[1, 1]).mul(&q(&[1, 1])).mul(&q(&[1, 0, 1]));
        assert_eq!(factor(&f), vec![(q(&[1, 1]), 2), (q(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn cyclotomic_products_over_rationals() {
        // t^12 − 1 has the cyclotomic factors of the divisors of 12.
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = q(&c);
        let fs = factor(&f);
        let degrees: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(expand(&fs, Field::Rational), f);
    }

    #[test]
    fn prime_field_factorizations() {
        let f7 = Field::Prime(7);
        // t² + 1 is irreducible mod 7 (7 ≡ 3 mod 4).
        assert!(is_irreducible(&Poly::from_i64s(f7, &[1, 0, 1])));
        let f5 = Field::Prime(5);
        // t² + 1 = (t − 2)(t − 3) mod 5.
        assert_eq!(factor(&Poly::from_i64s(f5, &[1, 0, 1])).len(), 2);
        // t² + 1 = (t + 1)² mod 2.
        let f2 = Field::Prime(2);
        assert_eq!(factor(&Poly::from_i64s(f2, &[1, 0, 1])), vec![(Poly::from_i64s(f2, &[1, 1]), 2)]);
        // t^8 − t over GF(2): product of all irreducibles of degree 1 and 3.
        let f = Poly::from_i64s(f2, &[0, -1, 0, 0, 0, 0, 0, 0, 1]);
        let degrees: Vec<usize> = factor(&f).iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 3, 3]);
    }

    #[test]
    fn large_prime_uses_random_splitting() {
        let p = 1_000_000_007;
        let f = Field::Prime(p);
        let g = Poly::from_i64s(f, &[-1, 1]).mul(&Poly::from_i64s(f, &[-2, 1])).mul(&Poly::from_i64s(f, &[5, 0, 1]));
        let fs = factor(&g);
        assert_eq!(expand(&fs, f), g);
        for (h, _) in &fs {
            assert!(h.degree() == Some(1) || factor(h).len() == 1);
        }
    }

    /// Independent irreducibility oracle over GF(p) for small degrees: no
    /// monic divisor of degree ≤ d/2 exists among all candidates.
    fn brute_irreducible(f: &Poly, p: u64) -> bool {
        let d = f.degree().unwrap();
        let field = Field::Prime(p);
        for k in 1..=d / 2 {
            for code in 0..p.pow(k as u32) {
                let mut c: Vec<i64> = (0..k).map(|i| ((code / p.pow(i as u32)) % p) as i64).collect();
                c.push(1);
                if f.rem(&Poly::from_i64s(field, &c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn berlekamp_agrees_with_trial_division() {
        for p in [2u64, 3, 5] {
            let field = Field::Prime(p);
            for code in 0..p.pow(4) {
                let mut c: Vec<i64> = (0..4).map(|i| ((code / p.pow(i)) % p) as i64).collect();
                c.push(1);
                let f = Poly::from_i64s(field, &c);
                let fs = factor(&f);
                assert_eq!(expand(&fs, field), f);
                assert_eq!(is_irreducible(&f), brute_irreducible(&f, p), "{f} over GF({p})");
            }
        }
    }
}
