//! Exact sparse linear algebra: sparse vectors, incremental reduced row
//! echelon form, null spaces and linear solves.
//!
//! Pivots are always the lowest nonzero column of a row, and free variables
//! of a solve are set to zero, so every result here is canonical.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates and dropping zeros.
    pub fn from_entries(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one(field))],
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(field); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, s: &Scalar) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * s)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&Scalar::one(v.field()), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&-Scalar::one(v.field()), other),
        }
    }

    /// Remaps indices through `f`, dropping entries mapped to `None`.
    /// `f` must be injective on the support.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        let pairs = self
            .entries
            .iter()
            .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone())))
            .collect();
        SparseVec::from_entries(pairs)
    }

    pub fn dot(&self, other: &SparseVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    let p = x * y;
                    acc = Some(match acc {
                        Some(s) => &s + &p,
                        None => p,
                    });
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent; its reduced form now has this pivot.
    Added { pivot: usize },
    /// The vector lies in the span. With tracking on, `combination` expresses
    /// it in terms of the previously inserted vectors (by insertion index).
    Dependent { combination: SparseVec },
}

/// Incremental reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            combos: None,
            inserted: 0,
        }
    }

    /// Also records, for every row, which combination of inputs produced it.
    pub fn with_tracking(field: Field, dim: usize) -> Self {
        let mut e = Self::new(field, dim);
        e.combos = Some(Vec::new());
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Rows ordered by pivot column.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.pivots.values().map(|&r| self.rows[r].clone()).collect()
    }

    fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        // Rows are fully reduced, so subtracting one row never changes the
        // coefficient of another pivot column: one pass over v suffices.
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| self.pivots.get(&i).map(|&r| (r, c.clone())))
            .collect();
        let mut out = v.clone();
        let mut combo = SparseVec::new();
        for (r, c) in hits {
            let neg = -&c;
            out = out.axpy(&neg, &self.rows[r]);
            if let Some(combos) = &self.combos {
                combo = combo.axpy(&neg, &combos[r]);
            }
        }
        (out, combo)
    }

    /// Remainder of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Expresses `v` in terms of the inserted vectors; needs tracking.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        self.combos.as_ref()?;
        let (rest, combo) = self.reduce_tracked(v);
        if rest.is_zero() {
            Some(combo.neg())
        } else {
            None
        }
    }

    pub fn insert(&mut self, v: SparseVec) -> Insertion {
        let index = self.inserted;
        self.inserted += 1;
        debug_assert!(v.max_index().is_none_or(|m| m < self.dim));
        let (rest, combo) = self.reduce_tracked(&v);
        let Some((pivot, lead)) = rest.leading() else {
            return Insertion::Dependent { combination: combo.neg() };
        };
        let inv = lead.inv().expect("leading coefficient is nonzero");
        let row = rest.scale(&inv);
        let row_combo = self.combos.as_ref().map(|_| combo.axpy(&Scalar::one(self.field), &SparseVec::unit(index, self.field)).scale(&inv));
        for r in 0..self.rows.len() {
            if let Some(c) = self.rows[r].get(pivot).cloned() {
                let neg = -&c;
                self.rows[r] = self.rows[r].axpy(&neg, &row);
                if let (Some(combos), Some(rc)) = (self.combos.as_mut(), row_combo.as_ref()) {
                    combos[r] = combos[r].axpy(&neg, rc);
                }
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        if let (Some(combos), Some(rc)) = (self.combos.as_mut(), row_combo) {
            combos.push(rc);
        }
        Insertion::Added { pivot }
    }

    /// Basis of `{x : row·x = 0 for every row}`, one vector per free column,
    /// in increasing free-column order.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let one = Scalar::one(self.field);
        let mut out = Vec::new();
        // column -> list of (pivot, coefficient) for rows with an entry there
        let mut by_col: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (&p, &r) in &self.pivots {
            for (c, v) in self.rows[r].iter() {
                if c != p {
                    by_col.entry(c).or_default().push((p, v.clone()));
                }
            }
        }
        for free in (0..self.dim).filter(|c| !self.pivots.contains_key(c)) {
            let mut pairs = vec![(free, one.clone())];
            if let Some(list) = by_col.get(&free) {
                pairs.extend(list.iter().map(|(p, v)| (*p, -v)));
            }
            out.push(SparseVec::from_entries(pairs));
        }
        out
    }
}

/// Null space of the matrix whose rows are given.
pub fn null_space(field: Field, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new(field, ncols);
    for r in rows {
        if !r.is_zero() {
            ech.insert(r);
            if ech.is_full() {
                break;
            }
        }
    }
    ech.null_space()
}

/// Solves `A·y = b` where `A` is given by its columns (each of length `nrows`).
/// Returns the canonical solution with every free variable zero, or `None`
/// when the system is inconsistent.
pub fn solve_columns(field: Field, nrows: usize, columns: &[SparseVec], rhs: &SparseVec) -> Option<SparseVec> {
    let ncols = columns.len();
    // Transpose into augmented rows [A | b].
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter() {
            rows[i].push((j, v.clone()));
        }
    }
    for (i, v) in rhs.iter() {
        rows[i].push((ncols, v.clone()));
    }
    let mut ech = Echelon::new(field, ncols + 1);
    for r in rows {
        if !r.is_empty() {
            ech.insert(SparseVec::from_entries(r));
        }
    }
    if ech.pivots.contains_key(&ncols) {
        return None;
    }
    let pairs = ech
        .pivots
        .iter()
        .filter_map(|(&p, &r)| ech.rows[r].get(ncols).map(|v| (p, v.clone())))
        .collect();
    Some(SparseVec::from_entries(pairs))
}

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            nrows,
            ncols,
            data: vec![Scalar::zero(field); nrows * ncols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_columns(field: Field, nrows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(&self.data[i * self.ncols..(i + 1) * self.ncols])
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_entries((0..self.nrows).map(|i| (i, self.get(i, j).clone())).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix shapes do not chain");
        let mut out = Matrix::zeros(self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.ncols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.ncols);
        for i in 0..self.nrows {
            let r = self.row(i);
            if !r.is_zero() {
                ech.insert(r);
            }
        }
        ech.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols && *self == Matrix::identity(self.field, self.nrows)
    }

    /// Permutation-style check used in tests and reports.
    pub fn is_permutation_matrix(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        (0..self.nrows).all(|i| {
            let r = self.row(i);
            r.nnz() == 1 && r.leading().is_some_and(|(_, v)| v.is_one())
        }) && (0..self.ncols).all(|j| {
            let c = self.column(j);
            c.nnz() == 1
        })
    }
}
