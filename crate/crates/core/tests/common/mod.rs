//! Instance families and oracles shared by the integration tests.
//!
//! The oracles here work directly on permutation images and never call the
//! engine's deciders.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use skewring::ground::GroundElement;
use skewring::group::{group_from_generators, Action, FiniteGroup, Permutation};
use skewring::scalar::{Field, Scalar};
use skewring::skew::{SkewElement, SkewRingContext};

pub const SEED: u64 = 0x5eed_2026;
pub const MAX_RANDOM_ORDER: usize = 24;

#[derive(Clone)]
pub struct Instance {
    pub name: String,
    pub action: Action,
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn action_of(gens: &[Vec<usize>], n: usize) -> Action {
    let named: Vec<(String, Permutation)> = gens
        .iter()
        .filter(|g| g.iter().enumerate().any(|(i, &j)| i != j))
        .enumerate()
        .map(|(k, g)| (["a", "b", "c"][k].to_string(), Permutation::new(g.clone()).unwrap()))
        .collect();
    if named.is_empty() {
        Action::trivial(FiniteGroup::trivial(), n)
    } else {
        group_from_generators(&named, 5040).unwrap()
    }
}

/// Every subgroup of `S_n`, `n ≤ max_n`, acting naturally. Subgroups of
/// `S_4` and below are 2-generated, so closures of pairs find them all.
pub fn subgroup_family(max_n: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let perms = all_perms(n);
        let mut seen: BTreeSet<BTreeSet<Vec<usize>>> = BTreeSet::new();
        for a in &perms {
            for b in &perms {
                let h = closure(&[a.clone(), b.clone()], n);
                if seen.insert(h.clone()) {
                    let gens = if a == b { vec![a.clone()] } else { vec![a.clone(), b.clone()] };
                    out.push(Instance {
                        name: format!("S{n}-subgroup-order{}-#{}", h.len(), seen.len()),
                        action: action_of(&gens, n),
                    });
                }
            }
        }
    }
    out
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random actions on `n ≤ 6` points with `|G| ≤ 24`. A third of them carry
/// hidden coordinates that are dropped, which makes the action non-faithful.
pub fn random_family(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=6);
        let hidden = if rng.gen_range(0..3) == 0 { rng.gen_range(1..=3) } else { 0 };
        let k = rng.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let mut p = random_perm(&mut rng, n);
                p.extend(random_perm(&mut rng, hidden).into_iter().map(|i| i + n));
                p
            })
            .collect();
        if closure(&gens, n + hidden).len() > MAX_RANDOM_ORDER {
            continue;
        }
        let full = action_of(&gens, n + hidden);
        let action = if hidden == 0 {
            full
        } else {
            let perms = full
                .perms()
                .iter()
                .map(|p| Permutation::new(p.image()[..n].to_vec()).unwrap())
                .collect();
            Action::new(full.group().clone(), n, perms).unwrap()
        };
        out.push(Instance {
            name: format!("random-{}-n{}-order{}", out.len(), n, action.order()),
            action,
        });
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn orbit_count(act: &Action) -> usize {
    let n = act.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(p) = stack.pop() {
            for perm in act.perms() {
                let q = perm.image()[p];
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    count
}

pub fn transitive(act: &Action) -> bool {
    orbit_count(act) == 1
}

/// No nonidentity element fixes a coordinate.
pub fn free(act: &Action) -> bool {
    let id = act.group().identity();
    act.group()
        .elements()
        .filter(|&g| g != id)
        .all(|g| act.perm(g).image().iter().enumerate().all(|(i, &j)| i != j))
}

pub fn faithful(act: &Action) -> bool {
    let id = act.group().identity();
    act.group().elements().filter(|&g| g != id).all(|g| !act.perm(g).is_identity())
}

pub fn abelian(act: &Action) -> bool {
    let g = act.group();
    g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
}

pub fn stabilizer_orders(act: &Action) -> Vec<usize> {
    (0..act.n())
        .map(|i| act.group().elements().filter(|&g| act.perm(g).image()[i] == i).count())
        .collect()
}

pub fn random_ground(rng: &mut ChaCha8Rng, field: Field, n: usize, density: f64) -> GroundElement {
    let coords = (0..n)
        .map(|_| {
            if rng.gen_bool(density) {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-3..=3);
                }
                Scalar::from_i64(field, v)
            } else {
                Scalar::zero(field)
            }
        })
        .collect();
    GroundElement::new(field, coords).unwrap()
}

/// A random element; never zero.
pub fn random_element(rng: &mut ChaCha8Rng, ctx: &SkewRingContext) -> SkewElement {
    loop {
        let density = rng.gen_range(0.2..0.9);
        let mut terms = Vec::new();
        for g in ctx.group().elements() {
            if rng.gen_bool(0.6) {
                terms.push((g, random_ground(rng, ctx.field(), ctx.n(), density)));
            }
        }
        let x = ctx.from_terms(terms).unwrap();
        if !x.is_zero() {
            return x;
        }
    }
}

/// Ring description in the CLI input format.
pub fn ring_spec_json(act: &Action) -> Value {
    json!({
        "n": act.n(),
        "group": {
            "elements": act.group().labels(),
            "table": act.group().table_rows(),
            "perms": act.perms().iter().map(Permutation::to_one_indexed).collect::<Vec<_>>(),
        }
    })
}

pub fn field_name(f: Field) -> String {
    f.to_string()
}
