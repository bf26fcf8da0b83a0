//! Finite groups as Cayley tables and their actions on coordinates.
//!
//! Conventions used throughout the crate:
//! * permutations are stored 0-indexed and serialized 1-indexed;
//! * composition is `(p ∘ q)(i) = p(q(i))`;
//! * an [`Action`] is a homomorphism `perm_of(g·h) = perm_of(g) ∘ perm_of(h)`;
//! * the label of a generated element is a shortest word `a^2*b`, read as
//!   the product `a·a·b`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on group orders handled with exhaustive Cayley-table checks.
pub const DEFAULT_ORDER_BOUND: usize = 256;

/// A bijection of `{0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// From a 0-indexed image list.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image {:?} is not a bijection of 1..{n}",
                    image.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    /// From a 1-indexed image list, the serialized form.
    pub fn from_one_indexed(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation("images are 1-indexed; found 0".into()));
        }
        Self::new(image.iter().map(|&i| i - 1).collect())
    }

    /// From disjoint cycles written 1-indexed, e.g. `[[1, 2], [3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(Error::InvalidPermutation(format!("cycle entry out of range 1..{n}")));
                }
                image[a - 1] = b - 1;
            }
        }
        Self::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn to_one_indexed(&self) -> Vec<usize> {
        self.image.iter().map(|i| i + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.image[i] == i).collect()
    }

    /// Cycle notation, 1-indexed, omitting fixed points; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.image[i];
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: Latin square, two-sided identity, inverses,
    /// and associativity (exhaustively, when the order is within `order_bound`).
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>, order_bound: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element list".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup(format!("table must be {n}×{n}")));
        }
        {
            let mut uniq: Vec<&String> = labels.iter().collect();
            uniq.sort();
            uniq.dedup();
            if uniq.len() != n {
                return Err(Error::NotAGroup("duplicate element labels".into()));
            }
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(Error::NotAGroup(format!("row {i} is not a permutation of the elements")));
                }
                seen[x] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[j]] {
                    return Err(Error::NotAGroup(format!("column {j} repeats an element")));
                }
                seen[row[j]] = true;
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| flat[x * n + y] == identity && flat[y * n + x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", labels[x])))?;
        }
        if n <= order_bound {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b];
                    for c in 0..n {
                        if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                            return Err(Error::NotAGroup(format!(
                                "not associative at ({}, {}, {})",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            labels,
            table: flat,
            identity,
            inverse,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// The group with one element.
    pub fn trivial() -> Self {
        FiniteGroup {
            labels: vec!["1".into()],
            table: vec![0],
            identity: 0,
            inverse: vec![0],
            generators: Vec::new(),
        }
    }

    /// Cyclic group `Z_m` with labels `1, g, g^2, …`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let labels = (0..m)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::from_table(labels, table, usize::MAX).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cayley table rows (`table[a][b] = a·b`).
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|c| c.to_vec()).collect()
    }

    /// A generating set, in increasing index order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in a + 1..self.order() {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Elements of the subgroup generated by `gens`, ascending.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| inside[i]).collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut inside = vec![false; self.order()];
        for &e in elems {
            if e >= self.order() {
                return false;
            }
            inside[e] = true;
        }
        inside[self.identity]
            && elems
                .iter()
                .all(|&a| inside[self.inv(a)] && elems.iter().all(|&b| inside[self.mul(a, b)]))
    }

    pub fn is_normal_subgroup(&self, elems: &[usize]) -> bool {
        if !self.is_subgroup(elems) {
            return false;
        }
        let mut inside = vec![false; self.order()];
        for &e in elems {
            inside[e] = true;
        }
        self.elements()
            .all(|g| elems.iter().all(|&h| inside[self.mul(self.mul(g, h), self.inv(g))]))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in self.elements() {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// Resolves an element reference: an exact label, or the identity `1`.
    pub fn resolve_label(&self, label: &str) -> Result<usize> {
        let t = label.trim();
        if let Some(i) = self.index_of(t) {
            return Ok(i);
        }
        if t == "1" || t.is_empty() || t == "e" || t == "id" {
            return Ok(self.identity);
        }
        Err(Error::UnknownElement(label.to_string()))
    }
}

/// A parsed group word: letters with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<(String, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letter(name: &str) -> Self {
        Word {
            letters: vec![(name.to_string(), 1)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses `a*b^2*c^-1`; `1` or the empty string is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for token in t.split('*') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::UnknownElement(format!("empty letter in word {s:?}")));
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::UnknownElement(format!("bad exponent in {token:?}")))?;
                    (n.trim(), e)
                }
                None => (token, 1),
            };
            if name == "1" {
                continue;
            }
            if exp != 0 {
                letters.push((name.to_string(), exp));
            }
        }
        Ok(Word { letters })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|(n, _)| n.as_str())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Formats a sequence of generator names as a compressed word label.
fn word_label(names: &[&str]) -> String {
    if names.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<(String, usize)> = Vec::new();
    for &n in names {
        match parts.last_mut() {
            Some((last, k)) if last == n => *k += 1,
            _ => parts.push((n.to_string(), 1)),
        }
    }
    parts
        .into_iter()
        .map(|(n, k)| if k == 1 { n } else { format!("{n}^{k}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// A group acting on `{0, …, n-1}` through a permutation homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    group: FiniteGroup,
    n: usize,
    perms: Vec<Permutation>,
    generator_names: Vec<(String, usize)>,
}

impl Action {
    /// Checks `perm_of(gh) = perm_of(g)∘perm_of(h)` on all pairs and `perm_of(1) = id`.
    pub fn new(group: FiniteGroup, n: usize, perms: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if perms.len() != group.order() {
            return Err(Error::NotAHomomorphism(format!(
                "{} permutations for a group of order {}",
                perms.len(),
                group.order()
            )));
        }
        if let Some(p) = perms.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if !perms[group.identity()].is_identity() {
            return Err(Error::NotAHomomorphism("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if perms[group.mul(g, h)] != perms[g].compose(&perms[h]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "perm({}·{}) ≠ perm({})∘perm({})",
                        group.label(g),
                        group.label(h),
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(Action {
            group,
            n,
            perms,
            generator_names: Vec::new(),
        })
    }

    /// The trivial action of `group` on `n` coordinates.
    pub fn trivial(group: FiniteGroup, n: usize) -> Self {
        let perms = vec![Permutation::identity(n); group.order()];
        Action::new(group, n, perms).expect("trivial action is a homomorphism")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Named generators when the action came from [`group_from_generators`].
    pub fn generator_names(&self) -> &[(String, usize)] {
        &self.generator_names
    }

    /// Resolves a label or a word over the named generators.
    pub fn element(&self, reference: &str) -> Result<usize> {
        if let Ok(i) = self.group.resolve_label(reference) {
            return Ok(i);
        }
        let word = Word::parse(reference)?;
        self.evaluate(&word)
    }

    pub fn evaluate(&self, word: &Word) -> Result<usize> {
        let mut acc = self.group.identity();
        for (name, exp) in &word.letters {
            let g = match self.generator_names.iter().find(|(n, _)| n == name) {
                Some((_, g)) => *g,
                None => self
                    .group
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownElement(name.clone()))?,
            };
            acc = self.group.mul(acc, self.group.pow(g, *exp));
        }
        Ok(acc)
    }

    /// Stabilizer of coordinate `i`, ascending.
    pub fn stabilizer(&self, i: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.perms[g].apply(i) == i).collect()
    }

    /// Elements acting trivially, ascending.
    pub fn kernel(&self) -> Vec<usize> {
        self.group.elements().filter(|&g| self.perms[g].is_identity()).collect()
    }
}

/// Closes named generator permutations under composition.
///
/// Elements are discovered breadth-first (identity first, then right
/// multiplication by the generators in the given order), so every label is a
/// shortest word and element indices are deterministic.
pub fn group_from_generators(gens: &[(String, Permutation)], order_bound: usize) -> Result<Action> {
    let n = match gens.first() {
        Some((_, p)) => p.len(),
        None => return Err(Error::InvalidPermutation("at least one generator is required".into())),
    };
    if let Some((name, p)) = gens.iter().find(|(_, p)| p.len() != n) {
        return Err(Error::InvalidPermutation(format!(
            "generator {name:?} acts on {} points, expected {n}",
            p.len()
        )));
    }
    {
        let mut names: Vec<&String> = gens.iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        if names.len() != gens.len() {
            return Err(Error::InvalidPermutation("duplicate generator names".into()));
        }
    }
    let mut perms: Vec<Permutation> = vec![Permutation::identity(n)];
    let mut words: Vec<Vec<&str>> = vec![Vec::new()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(Permutation::identity(n), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (name, g) in gens {
            let y = perms[x].compose(g);
            if !index.contains_key(&y) {
                if perms.len() >= order_bound {
                    return Err(Error::OrderBoundExceeded { bound: order_bound });
                }
                let mut w = words[x].clone();
                w.push(name.as_str());
                index.insert(y.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(y);
                words.push(w);
            }
        }
    }
    let order = perms.len();
    let table: Vec<Vec<usize>> = (0..order)
        .map(|a| (0..order).map(|b| index[&perms[a].compose(&perms[b])]).collect())
        .collect();
    let labels: Vec<String> = words.iter().map(|w| word_label(w)).collect();
    let mut group = FiniteGroup::from_table(labels, table, order_bound)?;
    let generator_names: Vec<(String, usize)> = gens.iter().map(|(name, p)| (name.clone(), index[p])).collect();
    let mut gen_idx: Vec<usize> = generator_names
        .iter()
        .map(|(_, i)| *i)
        .filter(|&i| i != group.identity())
        .collect();
    gen_idx.sort_unstable();
    gen_idx.dedup();
    group.generators = gen_idx;
    let mut act = Action::new(group, n, perms)?;
    act.generator_names = generator_names;
    Ok(act)
}

/// Convenience wrapper: generators given as 1-indexed image lists.
pub fn action_from_images(gens: &[(&str, &[usize])]) -> Result<Action> {
    let named = gens
        .iter()
        .map(|(n, img)| Ok(((*n).to_string(), Permutation::from_one_indexed(img)?)))
        .collect::<Result<Vec<_>>>()?;
    group_from_generators(&named, DEFAULT_ORDER_BOUND)
}

/// Coordinate orbits of the action, each ascending, ordered by least element.
pub fn orbits(act: &Action) -> Vec<Vec<usize>> {
    let n = act.n();
    let mut owner = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        owner[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for p in act.perms() {
                let y = p.apply(x);
                if owner[y] == usize::MAX {
                    owner[y] = id;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(act: &Action) -> bool {
    orbits(act).len() == 1
}

/// Convenience index of an element's orbit membership, for reports.
pub fn orbit_map(act: &Action) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for (k, o) in orbits(act).iter().enumerate() {
        for &p in o {
            m.insert(p, k);
        }
    }
    m
}
