//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
//! failure. Runs without the libtest harness so the lines always show.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    abelian, faithful, free, random_element, random_family, ring_spec_json, rng, stabilizer_orders, subgroup_family, transitive,
    Instance, SEED,
};
use rand::Rng;
use serde_json::{json, Value};
use skewring::algebra::{is_simple_linear, DEFAULT_MAX_DIM};
use skewring::classify::{classify_automorphism, corner_inner_witness, is_g_simple, verify_corner_inner_witness, AutomorphismClass};
use skewring::cli::{self, verify_ring_artifact};
use skewring::error::Error;
use skewring::ground::GroundElement;
use skewring::group::{action_from_images, group_from_generators, Action, FiniteGroup, Permutation, Word};
use skewring::ideal::{check_properness, proper_ideal_witness, simplicity_certificate};
use skewring::reduce::{length_reduce, reduce_to_completion, ReductionStep};
use skewring::scalar::Field;
use skewring::skew::SkewRingContext;
use skewring::structure::structure_oracle;
use skewring::tower::{
    build_onepoint_tower, build_prufer_tower, build_quotient_tower, invariant_clopen_search, level_ring, limit_simplicity_verdict,
    verify_fixed_thread_ideal, ClopenOutcome, LimitVerdict, Tower, TowerAction, ONEPOINT_STAR,
};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

struct Outcome {
    pass: bool,
    summary: String,
    /// Deterministic details, compared across runs.
    data: Value,
}

fn outcome(pass: bool, summary: String, data: Value) -> Outcome {
    Outcome { pass, summary, data }
}

struct Family {
    instances: Vec<Instance>,
}

fn family() -> Family {
    let mut instances = subgroup_family(4);
    instances.extend(random_family(200, SEED));
    Family { instances }
}

/// Verdicts per (instance, field), shared by criteria 1–3.
struct Verdicts {
    rows: Vec<Row>,
}

struct Row {
    instance: usize,
    field: Field,
    linear: std::result::Result<bool, Error>,
    oracle: bool,
    predicate: bool,
    g_simple: bool,
}

fn verdicts(fam: &Family) -> Verdicts {
    let mut rows = Vec::new();
    for (i, inst) in fam.instances.iter().enumerate() {
        for field in FIELDS {
            let ctx = SkewRingContext::new(inst.action.clone(), field);
            rows.push(Row {
                instance: i,
                field,
                linear: is_simple_linear(&ctx, DEFAULT_MAX_DIM).map(|v| v.simple),
                oracle: structure_oracle(&inst.action).simple,
                predicate: transitive(&inst.action) && free(&inst.action),
                g_simple: is_g_simple(&inst.action, field).g_simple,
            });
        }
    }
    Verdicts { rows }
}

fn criterion_1(fam: &Family, v: &Verdicts) -> Outcome {
    let mut bad = Vec::new();
    for r in &v.rows {
        let agree = matches!(r.linear, Ok(l) if l == r.oracle) && r.oracle == r.predicate;
        if !agree {
            bad.push(json!({"instance": fam.instances[r.instance].name, "field": r.field.to_string(), "linear": format!("{:?}", r.linear)}));
        }
    }
    let simple = v.rows.iter().filter(|r| r.oracle).count();
    outcome(
        bad.is_empty(),
        format!(
            "oracle agreement: {}/{} (instance, field) pairs agree; {} simple, {} not simple",
            v.rows.len() - bad.len(),
            v.rows.len(),
            simple,
            v.rows.len() - simple
        ),
        json!({"pairs": v.rows.len(), "simple": simple, "disagreements": bad}),
    )
}

fn criterion_2(fam: &Family, v: &Verdicts) -> Outcome {
    let rows: Vec<&Row> = v
        .rows
        .iter()
        .filter(|r| {
            let a = &fam.instances[r.instance].action;
            abelian(a) && faithful(a)
        })
        .collect();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.oracle != r.g_simple || r.g_simple != transitive(&fam.instances[r.instance].action))
        .map(|r| fam.instances[r.instance].name.clone())
        .collect();
    outcome(
        bad.is_empty() && !rows.is_empty(),
        format!("abelian faithful actions: simple ⟺ G-simple on {}/{} pairs", rows.len() - bad.len(), rows.len()),
        json!({"pairs": rows.len(), "failures": bad}),
    )
}

fn criterion_3(fam: &Family, v: &Verdicts) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut equivalence_breaks = Vec::new();
    for r in &v.rows {
        let a = &fam.instances[r.instance].action;
        let id = a.group().identity();
        let no_fixed = free(a);
        let no_witness = a.group().elements().filter(|&g| g != id).all(|g| corner_inner_witness(a, g, r.field).is_none());
        if no_fixed != no_witness {
            equivalence_breaks.push(fam.instances[r.instance].name.clone());
        }
        if no_fixed {
            count += 1;
            if r.oracle != r.g_simple {
                bad.push(fam.instances[r.instance].name.clone());
            }
        }
    }
    outcome(
        bad.is_empty() && equivalence_breaks.is_empty() && count > 0,
        format!(
            "fixed-point-free actions: simple ⟺ G-simple on {}/{} pairs; witness-free ⟺ fixed-point-free everywhere: {}",
            count - bad.len(),
            count,
            equivalence_breaks.is_empty()
        ),
        json!({"pairs": count, "failures": bad, "equivalence_breaks": equivalence_breaks}),
    )
}

/// Identity on `eR` for some nonzero idempotent `e`, by trying every subset.
fn exhaustive_identity_corner(f: &Permutation) -> bool {
    let n = f.len();
    (1u32..1 << n).any(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| f.image()[i] == i))
}

fn criterion_4() -> Outcome {
    let mut r = rng(SEED ^ 4);
    let mut bad = Vec::new();
    let mut witnesses = 0;
    let mut classes = [0usize; 3];
    for k in 0..100 {
        let n = r.gen_range(1..=10);
        let mut img: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(img.as_mut_slice(), &mut r);
        let f = Permutation::new(img).unwrap();
        let act = if f.is_identity() {
            Action::trivial(FiniteGroup::trivial(), n)
        } else {
            group_from_generators(&[("f".to_string(), f.clone())], 256).unwrap()
        };
        let g = act.element("f").unwrap_or(act.group().identity());
        let rep = classify_automorphism(&act, g, Field::Rational);
        let x_inner = !matches!(rep.class, AutomorphismClass::XOuterElement);
        classes[match rep.class {
            AutomorphismClass::Identity => 0,
            AutomorphismClass::XInner { .. } => 1,
            AutomorphismClass::XOuterElement => 2,
        }] += 1;
        let ann = !rep.annihilator.is_empty();
        let search = exhaustive_identity_corner(&f);
        let fixed_nonempty = f.image().iter().enumerate().any(|(i, &j)| i == j);
        let w = corner_inner_witness(&act, g, Field::Rational);
        let witness_ok = w.as_ref().is_none_or(|w| verify_corner_inner_witness(&act, g, w));
        witnesses += usize::from(w.is_some());
        if !(x_inner == ann && ann == search && w.is_some() == fixed_nonempty && witness_ok) {
            bad.push(json!({"case": k, "perm": f.to_one_indexed()}));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "automorphism classes: 100/100 permutations consistent across classifier, annihilator and exhaustive search = {}; {} corner witnesses verified (identity {}, x-inner {}, x-outer {})",
            bad.is_empty(),
            witnesses,
            classes[0],
            classes[1],
            classes[2]
        ),
        json!({"failures": bad, "witnesses": witnesses, "classes": classes}),
    )
}

/// `e_i · Σ_{h ∈ Stab(i)} h`: not regular when the characteristic divides `|Stab(i)|`.
fn norm_samples(ctx: &SkewRingContext) -> Vec<skewring::skew::SkewElement> {
    let act = ctx.action();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for i in 0..ctx.n() {
        let orbit_rep = (0..=i).find(|&j| act.group().elements().any(|g| act.perm(g).apply(j) == i)).unwrap();
        if seen.contains(&orbit_rep) {
            continue;
        }
        seen.push(orbit_rep);
        let ei = GroundElement::basis(ctx.field(), ctx.n(), i);
        let terms = act.stabilizer(i).into_iter().map(|h| (h, ei.clone()));
        out.push(ctx.from_terms(terms).unwrap());
    }
    out
}

fn criterion_5(fam: &Family) -> Outcome {
    let mut r = rng(SEED ^ 5);
    let c4 = action_from_images(&[("a", &[2, 3, 4, 1])]).unwrap();
    let ctx = SkewRingContext::new(c4, Field::Rational);
    let mut q_ok = 0;
    for _ in 0..100 {
        let x = random_element(&mut r, &ctx);
        if let Ok(y) = ctx.quasi_inverse(&x) {
            if ctx.product(&[&x, &y, &x]).unwrap() == x {
                q_ok += 1;
            }
        }
    }
    let z2 = SkewRingContext::new(Action::trivial(FiniteGroup::cyclic(2), 1), Field::Prime(2));
    let g = z2.group().index_of("g").unwrap();
    let one_plus_g = z2.add(&z2.one(), &z2.group_element(g)).unwrap();
    let gf2_fails = z2.quasi_inverse(&one_plus_g) == Err(Error::NoSolution);

    let mut bad = Vec::new();
    let mut tested = 0;
    let mut regular_count = 0;
    for p in [2u64, 3, 5] {
        let field = Field::Prime(p);
        for inst in fam.instances.iter().take(100) {
            let ctx = SkewRingContext::new(inst.action.clone(), field);
            let mut samples: Vec<_> = (0..4).map(|_| random_element(&mut r, &ctx)).collect();
            samples.extend(norm_samples(&ctx));
            let all_ok = samples.iter().all(|x| match ctx.quasi_inverse(x) {
                Ok(y) => ctx.product(&[x, &y, x]).unwrap() == *x,
                Err(_) => false,
            });
            let regular = stabilizer_orders(&inst.action).iter().all(|&s| !(s as u64).is_multiple_of(p));
            regular_count += usize::from(regular);
            tested += 1;
            if all_ok != regular || structure_oracle(&inst.action).regular_over(field) != regular {
                bad.push(json!({"instance": inst.name, "p": p}));
            }
        }
    }
    outcome(
        q_ok == 100 && gf2_fails && bad.is_empty(),
        format!(
            "regularity: {q_ok}/100 quasi-inverses in k⁴*Z₄ over ℚ; 1+g in GF(2)[Z₂] has none: {gf2_fails}; sampled success ⟺ p ∤ stabilizer orders on {}/{} (instance, p) pairs ({} regular)",
            tested - bad.len(),
            tested,
            regular_count
        ),
        json!({"q_ok": q_ok, "gf2_fails": gf2_fails, "tested": tested, "regular": regular_count, "failures": bad}),
    )
}

/// Checks the Prüfer data against the defining formulas, independently of the builder.
fn prufer_formulas_hold(tower: &Tower, act: &TowerAction, depth: usize) -> bool {
    for m in 2..=depth {
        let bond = tower.bond(m);
        if (1..=1usize << m).any(|i| bond[i - 1] + 1 != i.div_ceil(2)) {
            return false;
        }
    }
    for g in act.generators() {
        let n = g.base_level;
        for m in n..=depth {
            let p = &g.perms[m - n];
            if (0..1usize << m).any(|x| p.apply(x) != (x + (1 << (m - n))) % (1 << m)) {
                return false;
            }
            if m > n && (0..1usize << m).any(|x| tower.bond(m)[p.apply(x)] != g.perms[m - 1 - n].apply(tower.bond(m)[x])) {
                return false;
            }
        }
    }
    for n in 1..depth {
        let (lo, hi) = (&act.generators()[n - 1], &act.generators()[n]);
        for m in n + 1..=depth {
            if hi.perms[m - hi.base_level].pow(2) != lo.perms[m - lo.base_level] {
                return false;
            }
        }
    }
    true
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let depth = 8;
    let (tower, act) = build_prufer_tower(depth).unwrap();
    let formulas = prufer_formulas_hold(&tower, &act, depth);
    let mut linear_ok = true;
    for n in 1..=4 {
        let ctx = level_ring(&tower, &act, n, Field::Rational, true).unwrap();
        linear_ok &= ctx.dim() == 1 << (2 * n) && is_simple_linear(&ctx, DEFAULT_MAX_DIM).map(|v| v.simple).unwrap_or(false);
    }
    let mut oracle_ok = true;
    for n in 1..=depth {
        let ctx = level_ring(&tower, &act, n, Field::Rational, true).unwrap();
        oracle_ok &= ctx.dim() == 1 << (2 * n) && structure_oracle(ctx.action()).simple;
    }
    let sample: Vec<Word> = (1..=depth)
        .flat_map(|k| {
            (1..1i64 << k).step_by(2).map(move |j| Word {
                letters: vec![(format!("g{k}"), j)],
            })
        })
        .collect();
    let verdict = limit_simplicity_verdict(&tower, &act, depth, Some(&sample)).unwrap().verdict;
    let evidence = verdict == LimitVerdict::SimplicityEvidence { depth };
    // The wall-clock time stays out of the summary so reports compare byte for byte.
    let in_time = start.elapsed() < Duration::from_secs(60);
    outcome(
        formulas && linear_ok && oracle_ok && evidence && in_time,
        format!(
            "Prüfer tower to depth {depth}: formulas, compatibility and squaring relations {formulas}; linear engine simple for levels ≤ 4: {linear_ok}; oracle simple for levels ≤ {depth}: {oracle_ok}; {} sampled words, evidence to depth {depth}: {evidence}; under a minute: {in_time}",
            sample.len(),
        ),
        json!({"formulas": formulas, "linear": linear_ok, "oracle": oracle_ok, "sample": sample.len(), "evidence": evidence, "under_a_minute": in_time}),
    )
}

fn criterion_7() -> Outcome {
    let depth = 10;
    // One level of headroom so that clopens at level 10 meet g₁₁.
    let (tower, act) = build_onepoint_tower(depth + 1).unwrap();
    let search = invariant_clopen_search(&tower, &act, depth).unwrap();
    let none_found = search.outcome == ClopenOutcome::NoneFound { depth };
    // Recheck each mover directly: the lifted point lies over U and its image does not.
    let movers_ok = search.tests.iter().all(|t| {
        t.mover.as_ref().is_some_and(|w| {
            let g = act.generator(&w.generator).unwrap();
            let p = &g.perms[w.level - g.base_level];
            let over = |q: usize| t.subset.contains(&tower.project(w.level, t.level, q));
            p.apply(w.point) == w.image && over(w.point) && !over(w.image)
        })
    });
    let stars: Vec<usize> = (1..=depth).map(|n| tower.point(n, ONEPOINT_STAR).unwrap()).collect();
    let stars_fixed = act
        .generators()
        .iter()
        .all(|g| (g.base_level..=depth).all(|m| g.perms[m - g.base_level].apply(stars[m - 1]) == stars[m - 1]));
    let ideal_ok = verify_fixed_thread_ideal(&tower, &act, &stars, depth, Field::Rational).unwrap();
    let verdict = limit_simplicity_verdict(&tower, &act, depth, None).unwrap().verdict;
    outcome(
        none_found && movers_ok && stars_fixed && ideal_ok && verdict == LimitVerdict::NotGSimple,
        format!(
            "one-point tower to depth {depth}: no invariant proper clopen among {} tested ({}), every one moved by a verified generator: {movers_ok}; the *-vanishing ideal is invariant: {ideal_ok}; limit verdict not G-simple: {}",
            search.tests.len(),
            if none_found { "none found" } else { "FOUND ONE" },
            verdict == LimitVerdict::NotGSimple
        ),
        json!({"tested": search.tests.len(), "none_found": none_found, "movers": movers_ok, "ideal": ideal_ok}),
    )
}

fn quotient_case(name: &str, act: &Action, chain: &[Vec<usize>]) -> (bool, Value) {
    let (tower, tact) = build_quotient_tower(act.group(), chain).unwrap();
    let depth = tower.depth();
    let mut ok = true;
    let mut levels = Vec::new();
    for n in 1..=depth {
        let ctx = level_ring(&tower, &tact, n, Field::Rational, false).unwrap();
        let trans = transitive(ctx.action());
        let simple = structure_oracle(ctx.action()).simple;
        let mut certified = false;
        if n == depth {
            let x = ctx.basis_element(0, ctx.group().identity());
            if let Ok(cert) = simplicity_certificate(&ctx, &x, DEFAULT_MAX_DIM) {
                let pairs: Vec<Value> = cert
                    .pairs
                    .iter()
                    .map(|(a, b)| json!([ctx.element_to_json(a), ctx.element_to_json(b)]))
                    .collect();
                let artifact = json!({"kind": "unit-certificate", "ring_hash": cli::ring_hash(&ctx), "x": ctx.element_to_json(&x), "pairs": pairs});
                certified = cert.verify(&ctx) && verify_ring_artifact(&ctx, &artifact, "").unwrap().is_ok();
            }
            ok &= trans && simple && certified;
        } else {
            let w = proper_ideal_witness(&ctx, DEFAULT_MAX_DIM).unwrap();
            certified = w
                .as_ref()
                .is_some_and(|w| check_properness(&ctx, &w.generator, &w.invariant_coordinates).is_ok() && w.closure_dim < ctx.dim());
            ok &= trans && !simple && certified;
        }
        levels.push(json!({"level": n, "points": tower.size(n), "transitive": trans, "simple": simple, "artifact_verified": certified}));
    }
    (ok, json!({"group": name, "levels": levels}))
}

fn criterion_8() -> Outcome {
    let s3 = action_from_images(&[("a", &[2, 1, 3]), ("b", &[1, 3, 2])]).unwrap();
    let a3: Vec<usize> = s3.group().elements().filter(|&g| s3.perm(g).fixed_points().len() != 1).collect();
    let (ok1, d1) = quotient_case("S3", &s3, &[a3, vec![s3.group().identity()]]);

    let z = action_from_images(&[("a", &[2, 1, 3, 4, 5, 6, 7]), ("b", &[1, 2, 4, 3, 5, 6, 7]), ("c", &[1, 2, 3, 4, 6, 7, 5])]).unwrap();
    let grp = z.group();
    let (a, b) = (z.element("a").unwrap(), z.element("b").unwrap());
    let chain = vec![grp.subgroup_closure(&[a, b]), grp.subgroup_closure(&[a]), vec![grp.identity()]];
    let (ok2, d2) = quotient_case("Z2xZ2xZ3", &z, &chain);
    outcome(
        ok1 && ok2,
        format!("quotient towers: S₃ with (A₃, 1) {ok1}; Z₂×Z₂×Z₃ with a 3-step chain {ok2} (transitive levels, certified top level, witnessed intermediate levels)"),
        json!([d1, d2]),
    )
}

fn criterion_9(fam: &Family) -> Outcome {
    let mut r = rng(SEED ^ 9);
    let (mut certs, mut cert_bad) = (0, Vec::new());
    let (mut reductions, mut red_bad) = (0, Vec::new());
    let (mut obstructions, mut obs_bad) = (0, Vec::new());
    for inst in &fam.instances {
        for field in FIELDS {
            let ctx = SkewRingContext::new(inst.action.clone(), field);
            let act = &inst.action;
            if transitive(act) && free(act) {
                let bound = ctx.n() * ctx.order();
                let hash = cli::ring_hash(&ctx);
                for _ in 0..20 {
                    let x = random_element(&mut r, &ctx);
                    let ok = match simplicity_certificate(&ctx, &x, DEFAULT_MAX_DIM) {
                        Ok(cert) => {
                            let pairs: Vec<Value> = cert
                                .pairs
                                .iter()
                                .map(|(a, b)| json!([ctx.element_to_json(a), ctx.element_to_json(b)]))
                                .collect();
                            let artifact = json!({"kind": "unit-certificate", "ring_hash": hash, "x": ctx.element_to_json(&x), "pairs": pairs});
                            cert.verify(&ctx) && verify_ring_artifact(&ctx, &artifact, "").unwrap().is_ok()
                        }
                        Err(_) => false,
                    };
                    certs += 1;
                    if !ok {
                        cert_bad.push(inst.name.clone());
                    }
                    let trace = reduce_to_completion(&ctx, &x).unwrap();
                    reductions += 1;
                    if trace.last != ReductionStep::Unit(ctx.one()) || trace.chain.len() - 1 > bound {
                        red_bad.push(inst.name.clone());
                    }
                }
            }
            let id = ctx.group().identity();
            let start = (0..ctx.n()).find_map(|i| ctx.group().elements().find(|&g| g != id && act.perm(g).apply(i) == i).map(|g| (i, g)));
            if let Some((i, g)) = start {
                let ei = GroundElement::basis(field, ctx.n(), i);
                let x = ctx.sub(&ctx.ground(&ei), &ctx.monomial(&ei, g)).unwrap();
                obstructions += 1;
                let ok = matches!(length_reduce(&ctx, &x), Ok(ReductionStep::Obstruction { group_element, witness, verified: true, .. })
                    if verify_corner_inner_witness(act, group_element, &witness));
                if !ok {
                    obs_bad.push(inst.name.clone());
                }
            }
        }
    }
    outcome(
        cert_bad.is_empty() && red_bad.is_empty() && obs_bad.is_empty() && certs > 0 && obstructions > 0,
        format!(
            "certificates {}/{} exact and accepted by verify; reductions reaching a unit within n|G| steps {}/{}; stabilizer-difference starts ending in a verified corner-inner obstruction {}/{}",
            certs - cert_bad.len(),
            certs,
            reductions - red_bad.len(),
            reductions,
            obstructions - obs_bad.len(),
            obstructions
        ),
        json!({"certificates": certs, "cert_failures": cert_bad, "reductions": reductions, "reduction_failures": red_bad, "obstructions": obstructions, "obstruction_failures": obs_bad}),
    )
}

/// CLI jobs whose reports enter the determinism comparison.
fn cli_reports(fam: &Family) -> Vec<String> {
    let mut jobs = vec![
        json!({"command": "simple", "input": {"ring": {"n": 2, "generators": {"g": [2, 1]}}}}),
        json!({"command": "classify-aut", "input": {"ring": {"n": 3, "generators": {"g": [2, 1, 3]}}, "element": "g"}}),
        json!({"command": "tower", "input": {"tower": {"builtin": "prufer", "depth": 6}, "check": "limit-simplicity"}}),
        json!({"command": "tower", "input": {"tower": {"builtin": "onepoint", "depth": 6}, "check": "clopen"}}),
    ];
    for inst in fam.instances.iter().take(40) {
        jobs.push(json!({"command": "simple", "input": {"ring": ring_spec_json(&inst.action)}}));
        jobs.push(json!({"command": "simple", "input": {"ring": ring_spec_json(&inst.action), "field": "p=7"}}));
    }
    jobs.iter().map(|j| cli::run_json(&j.to_string()).to_json_string()).collect()
}

struct SuiteRun {
    outcomes: Vec<(usize, Outcome, Duration)>,
    json: String,
}

fn run_suite() -> SuiteRun {
    let fam = family();
    let timed = |f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        (o, t.elapsed())
    };
    let t = Instant::now();
    let v = verdicts(&fam);
    let verdict_time = t.elapsed();
    let mut outcomes = Vec::new();
    let (o, d) = timed(&|| criterion_1(&fam, &v));
    outcomes.push((1, o, d + verdict_time));
    let (o, d) = timed(&|| criterion_2(&fam, &v));
    outcomes.push((2, o, d));
    let (o, d) = timed(&|| criterion_3(&fam, &v));
    outcomes.push((3, o, d));
    let (o, d) = timed(&criterion_4);
    outcomes.push((4, o, d));
    let (o, d) = timed(&|| criterion_5(&fam));
    outcomes.push((5, o, d));
    let (o, d) = timed(&criterion_6);
    outcomes.push((6, o, d));
    let (o, d) = timed(&criterion_7);
    outcomes.push((7, o, d));
    let (o, d) = timed(&criterion_8);
    outcomes.push((8, o, d));
    let (o, d) = timed(&|| criterion_9(&fam));
    outcomes.push((9, o, d));
    let doc = json!({
        "criteria": outcomes.iter().map(|(id, o, _)| json!({"id": id, "pass": o.pass, "summary": o.summary, "data": o.data})).collect::<Vec<_>>(),
        "cli_reports": cli_reports(&fam),
    });
    SuiteRun {
        outcomes,
        json: serde_json::to_string_pretty(&doc).unwrap(),
    }
}

fn main() -> ExitCode {
    let total = Instant::now();
    let first = run_suite();
    let second = run_suite();
    let mut all = true;
    for (id, o, d) in &first.outcomes {
        all &= o.pass;
        println!("{} [{id}] {} ({:.2}s)", if o.pass { "PASS" } else { "FAIL" }, o.summary, d.as_secs_f64());
    }
    let identical = first.json == second.json;
    all &= identical;
    println!(
        "{} [10] determinism: two consecutive suite runs produced {} JSON reports ({} bytes)",
        if identical { "PASS" } else { "FAIL" },
        if identical { "byte-identical" } else { "DIFFERENT" },
        first.json.len()
    );
    let out = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance_report.json");
    if std::fs::write(&out, &first.json).is_ok() {
        println!("report written to {}", out.display());
    }
    println!("acceptance: {} in {:.1}s", if all { "all criteria pass" } else { "FAILURES" }, total.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
