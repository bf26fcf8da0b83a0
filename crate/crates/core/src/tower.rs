//! Inverse systems of finite sets with compatible generator actions.
//!
//! Levels are numbered from 1. The bond `φ_n: X_n → X_{n−1}` exists for
//! `n ≥ 2`. A generator `g` with base level `ℓ(g)` acts on every `X_n` with
//! `n ≥ ℓ(g)` and satisfies `φ_n ∘ g@n = g@(n−1) ∘ φ_n`. A clopen subset of
//! the limit is a subset of some `X_n`; it is lifted to finer levels by bond
//! preimage and never projected down.
//!
//! Every verdict here is relative to the depth that was built.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ground::GroundElement;
use crate::group::{group_from_generators, Action, FiniteGroup, Permutation, Word};
use crate::scalar::Field;
use crate::skew::SkewRingContext;

pub const DEFAULT_DEPTH_BOUND: usize = 12;
/// Levels up to this size get an exhaustive subset search.
pub const EXHAUSTIVE_LEVEL_SIZE: usize = 16;
const LEVEL_GROUP_BOUND: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    labels: Vec<Vec<String>>,
    /// `bonds[i]` maps level `i + 2` onto level `i + 1`.
    bonds: Vec<Vec<usize>>,
    /// `composites[m−1][n−1][p]`: the image of `p ∈ X_m` in `X_n`, `n ≤ m`.
    composites: Vec<Vec<Vec<usize>>>,
}

impl Tower {
    /// `bonds` holds, 0-indexed, the maps for levels `2..=D` in order.
    pub fn new(labels: Vec<Vec<String>>, bonds: Vec<Vec<usize>>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidTower("a tower needs at least one level".into()));
        }
        if bonds.len() + 1 != labels.len() {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} bonds, found {}",
                labels.len(),
                labels.len() - 1,
                bonds.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidTower(format!("level {} is empty", i + 1)));
            }
            let distinct: BTreeSet<&String> = l.iter().collect();
            if distinct.len() != l.len() {
                return Err(Error::InvalidTower(format!("level {} has repeated labels", i + 1)));
            }
        }
        for (i, b) in bonds.iter().enumerate() {
            let (src, dst) = (labels[i + 1].len(), labels[i].len());
            if b.len() != src || b.iter().any(|&x| x >= dst) {
                return Err(Error::InvalidTower(format!("bond at level {} is not a map X_{} → X_{}", i + 2, i + 2, i + 1)));
            }
            let hit: BTreeSet<usize> = b.iter().copied().collect();
            if hit.len() != dst {
                return Err(Error::InvalidTower(format!("bond at level {} is not surjective", i + 2)));
            }
        }
        let depth = labels.len();
        let mut composites = Vec::with_capacity(depth);
        for m in 0..depth {
            let mut row: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
            row[m] = (0..labels[m].len()).collect();
            for n in (0..m).rev() {
                row[n] = row[n + 1].iter().map(|&p| bonds[n][p]).collect();
            }
            composites.push(row);
        }
        Ok(Tower { labels, bonds, composites })
    }

    /// Levels of the given sizes with labels `1..=size`.
    pub fn from_sizes(sizes: &[usize], bonds: Vec<Vec<usize>>) -> Result<Self> {
        let labels = sizes.iter().map(|&s| (1..=s).map(|i| i.to_string()).collect()).collect();
        Tower::new(labels, bonds)
    }

    pub fn depth(&self) -> usize {
        self.labels.len()
    }

    pub fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.depth() {
            return Err(Error::LevelOutOfRange {
                level,
                required: 1,
                max: self.depth(),
            });
        }
        Ok(())
    }

    pub fn size(&self, level: usize) -> usize {
        self.labels[level - 1].len()
    }

    pub fn labels(&self, level: usize) -> &[String] {
        &self.labels[level - 1]
    }

    pub fn label(&self, level: usize, p: usize) -> &str {
        &self.labels[level - 1][p]
    }

    pub fn point(&self, level: usize, label: &str) -> Option<usize> {
        self.labels[level - 1].iter().position(|l| l == label)
    }

    /// `φ_n`, for `n ≥ 2`.
    pub fn bond(&self, level: usize) -> &[usize] {
        &self.bonds[level - 2]
    }

    pub fn bonds(&self) -> &[Vec<usize>] {
        &self.bonds
    }

    /// `φ_{m,n}(p)` for `p ∈ X_m`, `n ≤ m`.
    pub fn project(&self, from: usize, to: usize, p: usize) -> usize {
        self.composites[from - 1][to - 1][p]
    }

    /// Points of `X_m` lying over `p ∈ X_n`, ascending.
    pub fn fiber(&self, to: usize, from: usize, p: usize) -> Vec<usize> {
        (0..self.size(to)).filter(|&q| self.project(to, from, q) == p).collect()
    }

    /// Preimage of a level-`n` subset at level `m ≥ n`.
    pub fn lift(&self, from: usize, subset: &[usize], to: usize) -> Vec<usize> {
        let mut mask = vec![false; self.size(from)];
        for &p in subset {
            mask[p] = true;
        }
        (0..self.size(to)).filter(|&q| mask[self.project(to, from, q)]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerGenerator {
    pub name: String,
    pub base_level: usize,
    /// `perms[i]` is `g@(base_level + i)`, up to the tower depth.
    pub perms: Vec<Permutation>,
}

/// A finite group acting on every level, as in coset towers. When present,
/// level rings use this group rather than the permutation image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGroupAction {
    pub group: FiniteGroup,
    /// `perms[n−1][g]`: element `g` on level `n`.
    pub perms: Vec<Vec<Permutation>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerAction {
    generators: Vec<TowerGenerator>,
    abstract_group: Option<AbstractGroupAction>,
}

impl TowerAction {
    /// Validates bijectivity, level coverage and the compatibility law.
    pub fn new(tower: &Tower, generators: Vec<TowerGenerator>) -> Result<Self> {
        let names: BTreeSet<&str> = generators.iter().map(|g| g.name.as_str()).collect();
        if names.len() != generators.len() {
            return Err(Error::InvalidTower("duplicate generator names".into()));
        }
        for g in &generators {
            if g.base_level == 0 || g.base_level > tower.depth() {
                return Err(Error::InvalidTower(format!("generator {} has base level {} outside 1..={}", g.name, g.base_level, tower.depth())));
            }
            if g.perms.len() != tower.depth() + 1 - g.base_level {
                return Err(Error::InvalidTower(format!(
                    "generator {} needs permutations for levels {}..={}",
                    g.name,
                    g.base_level,
                    tower.depth()
                )));
            }
            for (i, p) in g.perms.iter().enumerate() {
                if p.len() != tower.size(g.base_level + i) {
                    return Err(Error::InvalidTower(format!("generator {} at level {} has the wrong degree", g.name, g.base_level + i)));
                }
            }
        }
        let act = TowerAction {
            generators,
            abstract_group: None,
        };
        act.verify_compatibility(tower)?;
        Ok(act)
    }

    /// Checks `φ_n ∘ g@n = g@(n−1) ∘ φ_n` at every level above each base.
    pub fn verify_compatibility(&self, tower: &Tower) -> Result<()> {
        for g in &self.generators {
            for n in g.base_level + 1..=tower.depth() {
                let bond = tower.bond(n);
                let upper = &g.perms[n - g.base_level];
                let lower = &g.perms[n - 1 - g.base_level];
                if let Some(p) = (0..tower.size(n)).find(|&p| bond[upper.apply(p)] != lower.apply(bond[p])) {
                    return Err(Error::InvalidTower(format!(
                        "generator {} breaks compatibility at level {} on point {}",
                        g.name,
                        n,
                        tower.label(n, p)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[TowerGenerator] {
        &self.generators
    }

    pub fn abstract_group(&self) -> Option<&AbstractGroupAction> {
        self.abstract_group.as_ref()
    }

    pub fn generator(&self, name: &str) -> Result<&TowerGenerator> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn perm_at<'a>(&self, g: &'a TowerGenerator, level: usize, depth: usize) -> Result<&'a Permutation> {
        if level < g.base_level || level > depth {
            return Err(Error::LevelOutOfRange {
                level,
                required: g.base_level,
                max: depth,
            });
        }
        Ok(&g.perms[level - g.base_level])
    }

    /// The least level at which every letter of `word` acts (1 for the identity).
    pub fn word_base_level(&self, word: &Word) -> Result<usize> {
        word.names()
            .map(|n| self.generator(n).map(|g| g.base_level))
            .try_fold(1, |acc, l| Ok(acc.max(l?)))
    }

    /// The word's permutation of `X_level`; the leftmost letter acts last.
    pub fn word_perm(&self, tower: &Tower, word: &Word, level: usize) -> Result<Permutation> {
        tower.check_level(level)?;
        let required = self.word_base_level(word)?;
        if level < required {
            return Err(Error::LevelOutOfRange {
                level,
                required,
                max: tower.depth(),
            });
        }
        let mut acc = Permutation::identity(tower.size(level));
        for (name, exp) in &word.letters {
            let g = self.generator(name)?;
            acc = acc.compose(&self.perm_at(g, level, tower.depth())?.pow(*exp));
        }
        Ok(acc)
    }

    /// Generators acting on level `n`, in declaration order.
    pub fn visible_at(&self, level: usize) -> impl Iterator<Item = &TowerGenerator> + '_ {
        self.generators.iter().filter(move |g| g.base_level <= level)
    }
}

/// A function on the limit that factors through `X_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocallyConstantFn {
    pub level: usize,
    pub values: GroundElement,
}

impl LocallyConstantFn {
    pub fn new(tower: &Tower, level: usize, values: GroundElement) -> Result<Self> {
        tower.check_level(level)?;
        if values.len() != tower.size(level) {
            return Err(Error::DimensionMismatch {
                expected: tower.size(level),
                found: values.len(),
            });
        }
        Ok(LocallyConstantFn { level, values })
    }

    pub fn indicator(tower: &Tower, level: usize, field: Field, points: &[usize]) -> Self {
        LocallyConstantFn {
            level,
            values: GroundElement::indicator(field, tower.size(level), points.iter().copied()),
        }
    }
}

/// Pullback along `φ_{m,level}`.
pub fn refine(tower: &Tower, f: &LocallyConstantFn, m: usize) -> Result<LocallyConstantFn> {
    tower.check_level(m)?;
    if m < f.level {
        return Err(Error::LevelOutOfRange {
            level: m,
            required: f.level,
            max: tower.depth(),
        });
    }
    let coords = (0..tower.size(m))
        .map(|p| f.values.coord(tower.project(m, f.level, p)).clone())
        .collect();
    Ok(LocallyConstantFn {
        level: m,
        values: GroundElement::new(f.values.field(), coords)?,
    })
}

/// Equal as functions on the limit: agree after refinement to a common level.
pub fn functions_equal(tower: &Tower, f: &LocallyConstantFn, g: &LocallyConstantFn) -> Result<bool> {
    let m = f.level.max(g.level);
    Ok(refine(tower, f, m)?.values == refine(tower, g, m)?.values)
}

/// `(ᵍf)(p) = f(g⁻¹(p))` at the level of `f`.
pub fn act_on_function(tower: &Tower, act: &TowerAction, word: &Word, f: &LocallyConstantFn) -> Result<LocallyConstantFn> {
    let perm = act.word_perm(tower, word, f.level)?;
    Ok(LocallyConstantFn {
        level: f.level,
        values: f.values.permuted(&perm),
    })
}

fn check_depth(depth: usize, bound: usize) -> Result<()> {
    if depth == 0 || depth > bound {
        return Err(Error::DepthBoundExceeded { depth, bound });
    }
    Ok(())
}

/// Levels `{1..2ⁿ}`, `φ_n(i) = ⌊(i+1)/2⌋`, and `ḡ_n@m: x ↦ x + 2^{m−n} mod 2^m`.
pub fn build_prufer_tower(depth: usize) -> Result<(Tower, TowerAction)> {
    check_depth(depth, DEFAULT_DEPTH_BOUND)?;
    let sizes: Vec<usize> = (1..=depth).map(|n| 1 << n).collect();
    let bonds = (2..=depth).map(|n| (0..1usize << n).map(|i| i / 2).collect()).collect();
    let tower = Tower::from_sizes(&sizes, bonds)?;
    let generators = (1..=depth)
        .map(|n| TowerGenerator {
            name: format!("g{n}"),
            base_level: n,
            perms: (n..=depth)
                .map(|m| {
                    let size = 1usize << m;
                    let step = 1usize << (m - n);
                    Permutation::new((0..size).map(|x| (x + step) % size).collect()).expect("a rotation")
                })
                .collect(),
        })
        .collect();
    let act = TowerAction::new(&tower, generators)?;
    for n in 1..depth {
        let lower = &act.generators[n - 1];
        let upper = &act.generators[n];
        for m in n + 1..=depth {
            let sq = upper.perms[m - upper.base_level].pow(2);
            if sq != lower.perms[m - lower.base_level] {
                return Err(Error::InvalidTower(format!("g{}² ≠ g{} at level {m}", n + 1, n)));
            }
        }
    }
    Ok((tower, act))
}

pub const ONEPOINT_STAR: &str = "*";

/// Level `n` is `{1,…,n,*}`; the bond sends `n` to `*`; `g_n` cycles
/// `1 → 2 → … → n → 1` and fixes everything else.
pub fn build_onepoint_tower(depth: usize) -> Result<(Tower, TowerAction)> {
    check_depth(depth, DEFAULT_DEPTH_BOUND)?;
    let labels = (1..=depth)
        .map(|n| (1..=n).map(|i| i.to_string()).chain([ONEPOINT_STAR.to_string()]).collect())
        .collect();
    // Level n has n + 1 points; index n − 1 is the label n, index n is *.
    let bonds = (2..=depth)
        .map(|n| (0..=n).map(|i| if i + 1 < n { i } else { n - 1 }).collect())
        .collect();
    let tower = Tower::new(labels, bonds)?;
    let generators = (1..=depth)
        .map(|k| TowerGenerator {
            name: format!("g{k}"),
            base_level: k,
            perms: (k..=depth)
                .map(|m| {
                    let image = (0..=m)
                        .map(|i| match i {
                            i if i + 1 < k => i + 1,
                            i if i + 1 == k => 0,
                            i => i,
                        })
                        .collect();
                    Permutation::new(image).expect("a cycle")
                })
                .collect(),
        })
        .collect();
    let act = TowerAction::new(&tower, generators)?;
    Ok((tower, act))
}

/// Coset spaces `G/H_i` for a descending chain of normal subgroups, with
/// every nonidentity element acting by left multiplication from level 1.
pub fn build_quotient_tower(group: &FiniteGroup, chain: &[Vec<usize>]) -> Result<(Tower, TowerAction)> {
    if chain.is_empty() {
        return Err(Error::InvalidTower("the subgroup chain is empty".into()));
    }
    check_depth(chain.len(), DEFAULT_DEPTH_BOUND)?;
    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    for (i, h) in chain.iter().enumerate() {
        let mut h = h.clone();
        h.sort_unstable();
        h.dedup();
        if !group.is_subgroup(&h) || !group.is_normal_subgroup(&h) {
            return Err(Error::NotNormal(i + 1));
        }
        if let Some(prev) = subgroups.last() {
            if !h.iter().all(|x| prev.contains(x)) {
                return Err(Error::NotDescending(i + 1));
            }
        }
        subgroups.push(h);
    }
    // Cosets gH, listed by least element; `owner[x]` is the coset of x.
    let coset_data: Vec<(Vec<Vec<usize>>, Vec<usize>)> = subgroups
        .iter()
        .map(|h| {
            let mut owner = vec![usize::MAX; group.order()];
            let mut cosets = Vec::new();
            for x in group.elements() {
                if owner[x] == usize::MAX {
                    let c: Vec<usize> = {
                        let mut c: Vec<usize> = h.iter().map(|&y| group.mul(x, y)).collect();
                        c.sort_unstable();
                        c
                    };
                    for &y in &c {
                        owner[y] = cosets.len();
                    }
                    cosets.push(c);
                }
            }
            (cosets, owner)
        })
        .collect();
    let labels = coset_data
        .iter()
        .zip(&subgroups)
        .map(|((cosets, _), h)| {
            cosets
                .iter()
                .map(|c| if h.len() == 1 { group.label(c[0]).to_string() } else { format!("{}H", group.label(c[0])) })
                .collect()
        })
        .collect();
    let bonds = (1..coset_data.len())
        .map(|i| coset_data[i].0.iter().map(|c| coset_data[i - 1].1[c[0]]).collect())
        .collect();
    let tower = Tower::new(labels, bonds)?;
    let level_perms: Vec<Vec<Permutation>> = coset_data
        .iter()
        .map(|(cosets, owner)| {
            group
                .elements()
                .map(|g| Permutation::new(cosets.iter().map(|c| owner[group.mul(g, c[0])]).collect()).expect("left multiplication"))
                .collect()
        })
        .collect();
    let generators = group
        .elements()
        .filter(|&g| g != group.identity())
        .map(|g| TowerGenerator {
            name: group.label(g).to_string(),
            base_level: 1,
            perms: level_perms.iter().map(|lv| lv[g].clone()).collect(),
        })
        .collect();
    let mut act = TowerAction::new(&tower, generators)?;
    act.abstract_group = Some(AbstractGroupAction {
        group: group.clone(),
        perms: level_perms,
    });
    Ok((tower, act))
}

/// A generator moving a lifted clopen: `point ∈ U` lifted, `g(point) ∉ U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovingWitness {
    pub generator: String,
    pub level: usize,
    pub point: usize,
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenTest {
    pub level: usize,
    pub subset: Vec<usize>,
    pub mover: Option<MovingWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every proper nonempty subset.
    Exhaustive,
    /// Unions of orbits of the generators visible at the level.
    OrbitUnions,
    /// Too many orbits to enumerate unions; nothing tested.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSearch {
    pub level: usize,
    pub mode: SearchMode,
    pub tested: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClopenOutcome {
    NoneFound { depth: usize },
    Witness { level: usize, subset: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenSearch {
    pub outcome: ClopenOutcome,
    pub levels: Vec<LevelSearch>,
    /// Every subset tested, in search order, with its moving generator.
    pub tests: Vec<ClopenTest>,
}

/// The first generator (declaration order) that moves `U ⊆ X_level`.
pub fn moving_generator(tower: &Tower, act: &TowerAction, level: usize, subset: &[usize]) -> Option<MovingWitness> {
    for g in act.generators() {
        let m = level.max(g.base_level);
        let lifted = tower.lift(level, subset, m);
        let mut mask = vec![false; tower.size(m)];
        for &p in &lifted {
            mask[p] = true;
        }
        let perm = &g.perms[m - g.base_level];
        if let Some(&p) = lifted.iter().find(|&&p| !mask[perm.apply(p)]) {
            return Some(MovingWitness {
                generator: g.name.clone(),
                level: m,
                point: p,
                image: perm.apply(p),
            });
        }
    }
    None
}

/// Rechecks a moving witness from the tower data alone.
pub fn check_moving_witness(tower: &Tower, act: &TowerAction, level: usize, subset: &[usize], w: &MovingWitness) -> bool {
    let Ok(g) = act.generator(&w.generator) else {
        return false;
    };
    if w.level < level.max(g.base_level) || w.level > tower.depth() {
        return false;
    }
    let perm = &g.perms[w.level - g.base_level];
    let down = |p: usize| subset.contains(&tower.project(w.level, level, p));
    w.point < tower.size(w.level) && perm.apply(w.point) == w.image && down(w.point) && !down(w.image)
}

fn level_orbits(tower: &Tower, act: &TowerAction, level: usize) -> Vec<Vec<usize>> {
    let size = tower.size(level);
    let perms: Vec<&Permutation> = act.visible_at(level).map(|g| &g.perms[level - g.base_level]).collect();
    let mut owner = vec![usize::MAX; size];
    let mut out = Vec::new();
    for start in 0..size {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        owner[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for perm in &perms {
                let q = perm.apply(p);
                if owner[q] == usize::MAX {
                    owner[q] = id;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Searches levels `1..=max_level` for a proper nonempty invariant clopen.
pub fn invariant_clopen_search(tower: &Tower, act: &TowerAction, max_level: usize) -> Result<ClopenSearch> {
    if max_level == 0 || max_level > tower.depth() {
        return Err(Error::DepthBoundExceeded {
            depth: max_level,
            bound: tower.depth(),
        });
    }
    let mut levels = Vec::new();
    let mut tests = Vec::new();
    for level in 1..=max_level {
        let size = tower.size(level);
        let (mode, candidates): (SearchMode, Vec<Vec<usize>>) = if size <= EXHAUSTIVE_LEVEL_SIZE {
            let all = (1u32..(1u32 << size) - 1)
                .map(|mask| (0..size).filter(|&i| mask >> i & 1 == 1).collect())
                .collect();
            (SearchMode::Exhaustive, all)
        } else {
            let orbs = level_orbits(tower, act, level);
            if orbs.len() > EXHAUSTIVE_LEVEL_SIZE {
                (SearchMode::Skipped, Vec::new())
            } else {
                let k = orbs.len();
                let unions = (1u32..(1u32 << k) - 1)
                    .map(|mask| {
                        let mut u: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).flat_map(|i| orbs[i].clone()).collect();
                        u.sort_unstable();
                        u
                    })
                    .collect();
                (SearchMode::OrbitUnions, unions)
            }
        };
        levels.push(LevelSearch {
            level,
            mode,
            tested: candidates.len(),
        });
        for subset in candidates {
            let mover = moving_generator(tower, act, level, &subset);
            let invariant = mover.is_none();
            tests.push(ClopenTest {
                level,
                subset: subset.clone(),
                mover,
            });
            if invariant {
                return Ok(ClopenSearch {
                    outcome: ClopenOutcome::Witness { level, subset },
                    levels,
                    tests,
                });
            }
        }
    }
    Ok(ClopenSearch {
        outcome: ClopenOutcome::NoneFound { depth: max_level },
        levels,
        tests,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    FreeAtLevel(usize),
    /// `point ∈ X_level` whose fibers are fixed pointwise through the depth;
    /// `clopen` lists every such point at that level.
    StableFixedClopen { level: usize, point: usize, clopen: Vec<usize> },
    Inconclusive { depth: usize },
}

pub fn eventual_freeness(tower: &Tower, act: &TowerAction, word: &Word, depth: usize) -> Result<Freeness> {
    let depth = depth.min(tower.depth());
    let base = act.word_base_level(word)?;
    if base > depth {
        return Ok(Freeness::Inconclusive { depth });
    }
    let perms: Vec<Permutation> = (base..=depth)
        .map(|n| act.word_perm(tower, word, n))
        .collect::<Result<_>>()?;
    let at = |n: usize| &perms[n - base];
    if let Some(n) = (base..=depth).find(|&n| at(n).fixed_points().is_empty()) {
        for m in n..=depth {
            assert!(at(m).fixed_points().is_empty(), "fixed point at level {m} projects to one at level {n}");
        }
        return Ok(Freeness::FreeAtLevel(n));
    }
    for n in base..=depth {
        let stable: Vec<usize> = at(n)
            .fixed_points()
            .into_iter()
            .filter(|&p| (n..=depth).all(|m| tower.fiber(m, n, p).iter().all(|&q| at(m).apply(q) == q)))
            .collect();
        if let Some(&point) = stable.first() {
            return Ok(Freeness::StableFixedClopen { level: n, point, clopen: stable });
        }
    }
    Ok(Freeness::Inconclusive { depth })
}

/// Products of at most two generators: every `a`, then every `a*b`.
pub fn default_sample(act: &TowerAction) -> Vec<Word> {
    let names: Vec<&str> = act.generators().iter().map(|g| g.name.as_str()).collect();
    let mut out: Vec<Word> = names.iter().map(|n| Word::letter(n)).collect();
    for a in &names {
        for b in &names {
            out.push(Word {
                letters: vec![(a.to_string(), 1), (b.to_string(), 1)],
            });
        }
    }
    out
}

/// A point thread fixed by every generator: the functions vanishing on it
/// form a proper nonzero invariant ideal when some level has two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedThreadIdeal {
    /// `thread[n−1] ∈ X_n`.
    pub thread: Vec<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFreeness {
    pub word: Word,
    /// The word acts trivially at the depth; excluded from the evidence.
    pub trivial_at_depth: bool,
    pub freeness: Freeness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitVerdict {
    SimplicityEvidence { depth: usize },
    NotGSimple,
    Inconclusive { failing: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub depth: usize,
    /// `(level, transitive)` for levels `1..=depth`.
    pub transitivity: Vec<(usize, bool)>,
    pub freeness: Vec<WordFreeness>,
    pub invariant_ideal: Option<FixedThreadIdeal>,
    pub verdict: LimitVerdict,
    pub reasoning: Vec<String>,
}

/// Verifies that `{f : f(thread) = 0}` is invariant: for each level and each
/// generator acting there, translates of the indicators spanning the ideal
/// still vanish at the thread point.
pub fn verify_fixed_thread_ideal(tower: &Tower, act: &TowerAction, thread: &[usize], depth: usize, field: Field) -> Result<bool> {
    if thread.len() < depth {
        return Ok(false);
    }
    for n in 1..=depth {
        let p = thread[n - 1];
        if n > 1 && tower.bond(n)[p] != thread[n - 2] {
            return Ok(false);
        }
        for q in (0..tower.size(n)).filter(|&q| q != p) {
            let f = LocallyConstantFn::indicator(tower, n, field, &[q]);
            for g in act.visible_at(n) {
                let moved = act_on_function(tower, act, &Word::letter(&g.name), &f)?;
                if !moved.values.coord(p).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn fixed_thread(tower: &Tower, act: &TowerAction, depth: usize) -> Option<Vec<usize>> {
    let p = (0..tower.size(depth)).find(|&p| act.visible_at(depth).all(|g| g.perms[depth - g.base_level].apply(p) == p))?;
    Some((1..=depth).map(|n| tower.project(depth, n, p)).collect())
}

pub fn limit_simplicity_verdict(tower: &Tower, act: &TowerAction, depth: usize, sample: Option<&[Word]>) -> Result<LimitReport> {
    let depth = depth.clamp(1, tower.depth());
    let mut reasoning = Vec::new();
    let transitivity: Vec<(usize, bool)> = (1..=depth).map(|n| (n, level_orbits(tower, act, n).len() == 1)).collect();
    let owned;
    let sample = match sample {
        Some(s) => s,
        None => {
            owned = default_sample(act);
            &owned
        }
    };
    let mut freeness = Vec::new();
    for w in sample {
        let base = act.word_base_level(w)?;
        let trivial_at_depth = base <= depth && act.word_perm(tower, w, depth)?.is_identity();
        freeness.push(WordFreeness {
            word: w.clone(),
            trivial_at_depth,
            freeness: eventual_freeness(tower, act, w, depth)?,
        });
    }
    let invariant_ideal = match fixed_thread(tower, act, depth) {
        Some(thread) if (1..=depth).any(|n| tower.size(n) > 1) => {
            let verified = verify_fixed_thread_ideal(tower, act, &thread, depth, Field::Rational)?;
            Some(FixedThreadIdeal { thread, verified })
        }
        _ => None,
    };
    let all_transitive = transitivity.iter().all(|&(_, t)| t);
    reasoning.push(format!(
        "[dense-orbits] visible generators act transitively at {} of {} levels",
        transitivity.iter().filter(|t| t.1).count(),
        depth
    ));
    let mut failing: Vec<String> = transitivity
        .iter()
        .filter(|t| !t.1)
        .map(|(n, _)| format!("level {n} is not transitive"))
        .collect();
    for wf in &freeness {
        if wf.trivial_at_depth {
            continue;
        }
        if !matches!(wf.freeness, Freeness::FreeAtLevel(_)) {
            failing.push(format!("word {} is not free by level {depth}", wf.word));
        }
    }
    reasoning.push(format!(
        "[eventual-freeness] {} sampled word(s), {} free by level {}",
        freeness.iter().filter(|w| !w.trivial_at_depth).count(),
        freeness.iter().filter(|w| matches!(w.freeness, Freeness::FreeAtLevel(_))).count(),
        depth
    ));
    let verdict = match &invariant_ideal {
        Some(FixedThreadIdeal { thread, verified: true }) => {
            reasoning.push(format!(
                "[fixed-thread-ideal] functions vanishing at the thread ending in {} form an invariant ideal",
                tower.label(depth, thread[depth - 1])
            ));
            LimitVerdict::NotGSimple
        }
        _ if all_transitive && failing.is_empty() => {
            reasoning.push(format!("[dense-orbits] evidence of simplicity to depth {depth}"));
            LimitVerdict::SimplicityEvidence { depth }
        }
        _ => LimitVerdict::Inconclusive { failing },
    };
    Ok(LimitReport {
        depth,
        transitivity,
        freeness,
        invariant_ideal,
        verdict,
        reasoning,
    })
}

/// The skew group ring `k^{X_n} * G_n`. For coset towers `G_n` is the whole
/// group; otherwise it is generated by `g@n` for generators visible at `n`.
/// With `restrict` unset, any generator above level `n` is an error.
pub fn level_ring(tower: &Tower, act: &TowerAction, level: usize, field: Field, restrict: bool) -> Result<SkewRingContext> {
    tower.check_level(level)?;
    if let Some(ab) = &act.abstract_group {
        let action = Action::new(ab.group.clone(), tower.size(level), ab.perms[level - 1].clone())?;
        return Ok(SkewRingContext::new(action, field));
    }
    if !restrict {
        if let Some(g) = act.generators().iter().find(|g| g.base_level > level) {
            return Err(Error::GeneratorBelowBaseLevel {
                name: g.name.clone(),
                base: g.base_level,
                level,
            });
        }
    }
    let gens: Vec<(String, Permutation)> = act
        .visible_at(level)
        .map(|g| (g.name.clone(), g.perms[level - g.base_level].clone()))
        .collect();
    let action = if gens.is_empty() {
        Action::trivial(FiniteGroup::trivial(), tower.size(level))
    } else {
        group_from_generators(&gens, LEVEL_GROUP_BOUND)?
    };
    Ok(SkewRingContext::new(action, field))
}
