//! Acceptance criteria, one line of output each.
//!
//! Runs without the libtest harness so the verdicts are always printed:
//! `cargo test -p adequate --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use adequate::canonical::{canonical_form, CanonicalForm};
use adequate::enumerate::all_trees;
use adequate::model::{enumerate_small_models, Assignment, Evaluator};
use adequate::ops::{classify, AlgebraMode, FreeAlgebra, Sidedness};
use adequate::prune::{is_pruned, oracle_prune, prune, prune_with};
use adequate::random::RandomSpec;
use adequate::term::{eval_term, parse_term, tree_to_term, words_equal, Alphabet};
use adequate::tree::SigmaTree;
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// 500 random trees with at most 6 edges, cycling through the three sidedness modes.
fn oracle_equivalence() -> Outcome {
    let modes = [
        AlgebraMode::LEFT,
        AlgebraMode::RIGHT,
        AlgebraMode::TWO_SIDED,
    ];
    let mut gens: Vec<_> = modes
        .iter()
        .enumerate()
        .map(|(i, &m)| RandomSpec::ab(100 + i as u64, 6, m).generator())
        .collect();
    for i in 0..500 {
        let x = gens[i % 3].tree();
        let oracle = oracle_prune(&x, 8).map_err(|e| e.to_string())?;
        ensure(
            canonical_form(&prune(&x)) == canonical_form(&oracle),
            || format!("tree {i} disagrees: {x:?}"),
        )?;
    }
    Ok("500/500 trees agree with the retraction search".into())
}

/// 200 random trees with at most 15 edges, 100 random fold orders each.
fn confluence() -> Outcome {
    let mut g = RandomSpec::ab(200, 15, AlgebraMode::TWO_SIDED).generator();
    let mut folds = 0usize;
    for i in 0..200 {
        let x = g.tree();
        let expected = canonical_form(&prune(&x));
        for _ in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(g.rng().gen());
            let p = prune_with(&x, |_, c| rng.gen_range(0..c.len()));
            folds += p.steps.len();
            ensure(canonical_form(&p.tree) == expected, || {
                format!("tree {i}: {x:?}")
            })?;
        }
    }
    Ok(format!(
        "200 trees x 100 orders agree ({folds} folds applied)"
    ))
}

/// 1000 instances of each of the six identities on each side.
fn identity_suite() -> Outcome {
    for (seed, side) in [(300, Sidedness::Left), (301, Sidedness::Right)] {
        let mut g = RandomSpec::ab(seed, 6, AlgebraMode::monoid(side)).generator();
        for i in 0..1000 {
            for (name, lhs, rhs) in identity_instances(side, &mut g) {
                ensure(form(&lhs) == form(&rhs), || {
                    format!("{side} {name}, instance {i}")
                })?;
            }
        }
    }
    Ok("6 identities x 1000 instances hold on each side".into())
}

fn word_problem() -> Outcome {
    let cases = [
        ("a^+a", "a", true),
        ("(ab)^+", "(ab^+)^+", true),
        ("a^+", "(aa)^+", false),
        ("a", "b", false),
    ];
    for (s, t, expected) in cases {
        let got = words_equal(s, t, &Alphabet::Unrestricted, AlgebraMode::LEFT)
            .map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{s} vs {t}: got {got}"))?;
    }
    Ok("4/4 verdicts correct".into())
}

fn figure_fidelity() -> Outcome {
    let eval = |s: &str| {
        let t = parse_term(s, &Alphabet::Unrestricted, AlgebraMode::LEFT).expect("valid term");
        eval_term(&t, true)
    };
    let (left, middle, right) = (
        data("figure_left.json"),
        data("figure_middle.json"),
        data("figure_right.json"),
    );
    ensure(form(&eval("ab^+")) == form(&middle), || {
        "ab^+ differs from the middle tree".into()
    })?;
    ensure(form(&eval("(ab)^+a")) == form(&left), || {
        "(ab)^+a differs from the left tree".into()
    })?;
    for (name, x, left_adequate) in [
        ("left", &left, true),
        ("middle", &middle, true),
        ("right", &right, false),
    ] {
        let c = classify(x);
        ensure(
            c.is_left_adequate == left_adequate && !c.is_right_adequate,
            || format!("{name} tree classified as {c}"),
        )?;
    }
    Ok("2 evaluations and 3 classifications match".into())
}

/// Every left adequate monoid of order at most 4 and every assignment of `a`, `b`.
fn freeness() -> Outcome {
    let models = enumerate_small_models(4, Sidedness::Left).map_err(|e| e.to_string())?;
    let alg = FreeAlgebra::new(AlgebraMode::LEFT);
    let mut g = RandomSpec::ab(600, 8, AlgebraMode::LEFT).generator();
    let trees: Vec<SigmaTree> = (0..200).map(|_| g.pruned_tree()).collect();
    let partners: Vec<SigmaTree> = (0..200).map(|_| g.pruned_tree()).collect();
    let products: Vec<SigmaTree> = trees
        .iter()
        .zip(&partners)
        .map(|(x, y)| alg.multiply(x, y).expect("pruned"))
        .collect();
    let pluses: Vec<SigmaTree> = trees.iter().map(|x| alg.plus(x).expect("pruned")).collect();
    let mut checks = 0usize;
    let mut pairs = 0usize;
    for m in &models {
        for chi in Assignment::all(&ab(), m.order()) {
            pairs += 1;
            let ev = Evaluator::new(m, chi, Sidedness::Left, false).map_err(|e| e.to_string())?;
            let rho = |x: &SigmaTree| ev.rho_hat(x).expect("pruned left adequate");
            ensure(rho(&SigmaTree::trivial()) == ev.one(), || "unit".into())?;
            for a in ab() {
                ensure(
                    rho(&SigmaTree::base(a.clone())) == ev.generator(&a).unwrap(),
                    || format!("generator {a}"),
                )?;
            }
            for i in 0..trees.len() {
                let (rx, ry) = (rho(&trees[i]), rho(&partners[i]));
                ensure(rho(&products[i]) == ev.mul(rx, ry), || {
                    format!("product, model\n{}tree {i}", m.to_model_string())
                })?;
                ensure(rho(&pluses[i]) == ev.unary(rx), || {
                    format!("plus, model\n{}tree {i}", m.to_model_string())
                })?;
                checks += 2;
            }
        }
    }
    Ok(format!(
        "{} models, {pairs} assignments, {checks} product/plus checks",
        models.len()
    ))
}

fn generation_round_trip() -> Outcome {
    let mut g = RandomSpec::ab(700, 12, AlgebraMode::LEFT).generator();
    for i in 0..500 {
        let x = g.pruned_tree();
        let t = tree_to_term(&x, Sidedness::Left).map_err(|e| e.to_string())?;
        ensure(form(&eval_term(&t, true)) == form(&x), || {
            format!("tree {i}: {x:?} via {t}")
        })?;
    }
    Ok("500/500 trees rebuilt from their terms".into())
}

fn two_sided_intersection() -> Outcome {
    let pruned: Vec<SigmaTree> = all_trees(&[letter("a")], 4)
        .into_iter()
        .filter(is_pruned)
        .collect();
    let mut words = Vec::new();
    for x in &pruned {
        let c = classify(x);
        ensure(
            (c.is_left_adequate && c.is_right_adequate) == c.is_trunk_only,
            || format!("{x:?} classified as {c}"),
        )?;
        if c.is_trunk_only {
            words.push(x.clone());
        }
    }
    let alg = FreeAlgebra::new(AlgebraMode::TWO_SIDED);
    for x in &words {
        for y in &words {
            let joined: Vec<_> = x
                .trunk_labels()
                .into_iter()
                .chain(y.trunk_labels())
                .collect();
            let product = alg.multiply(x, y).map_err(|e| e.to_string())?;
            ensure(form(&product) == form(&SigmaTree::word(&joined)), || {
                "concatenation".into()
            })?;
        }
    }
    Ok(format!(
        "{} pruned trees, {} trunk-only, {} products",
        pruned.len(),
        words.len(),
        words.len() * words.len()
    ))
}

/// Searches for distinct `X`, `Y` with `X = P Y Q` and `Y = R X S`.
fn j_triviality() -> Outcome {
    let trees: Vec<SigmaTree> = all_trees(&ab(), 3)
        .into_iter()
        .filter(|x| x.is_left_adequate() && is_pruned(x))
        .collect();
    let alg = FreeAlgebra::new(AlgebraMode::LEFT);
    let index: BTreeMap<CanonicalForm, usize> = trees
        .iter()
        .enumerate()
        .map(|(i, x)| (form(x), i))
        .collect();
    // ideal[i] = indices j with trees[j] in the two-sided ideal of trees[i]
    let mut ideal: Vec<BTreeSet<usize>> = Vec::with_capacity(trees.len());
    let mut products = 0usize;
    for y in &trees {
        let mut reached = BTreeSet::new();
        for p in &trees {
            let py = alg.multiply(p, y).expect("pruned");
            for q in &trees {
                products += 1;
                let pyq = alg.multiply(&py, q).expect("pruned");
                if let Some(&j) = index.get(&form(&pyq)) {
                    reached.insert(j);
                }
            }
        }
        ideal.push(reached);
    }
    for (i, reached) in ideal.iter().enumerate() {
        for &j in reached {
            ensure(i == j || !ideal[j].contains(&i), || {
                format!("{:?} and {:?} are J-related", trees[i], trees[j])
            })?;
        }
    }
    Ok(format!(
        "{} trees, {products} products, no witness",
        trees.len()
    ))
}

fn depth_bound() -> Outcome {
    let mut g = RandomSpec::ab(1000, 6, AlgebraMode::LEFT).generator();
    let alg = FreeAlgebra::new(AlgebraMode::LEFT);
    let mut worst = 0;
    for set in 0..50 {
        let size = g.rng().gen_range(1..=4);
        let gens: Vec<SigmaTree> = (0..size).map(|_| g.pruned_tree()).collect();
        let bound = gens.iter().map(SigmaTree::trunk_depth).max().unwrap_or(0);
        for _ in 0..1000 {
            let len = g.rng().gen_range(1..=6);
            let mut x = gens.choose(g.rng()).expect("non-empty").clone();
            for _ in 1..len {
                let y = gens.choose(g.rng()).expect("non-empty");
                x = alg.multiply(&x, y).expect("pruned");
            }
            ensure(x.trunk_depth() <= bound, || {
                format!("set {set}: depth {} > {bound}", x.trunk_depth())
            })?;
            worst = worst.max(x.trunk_depth());
        }
    }
    Ok(format!(
        "50 sets x 1000 products, deepest vertex at distance {worst}"
    ))
}

struct Criterion {
    number: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            number: 1,
            name: "pruning matches the brute-force retract",
            limit: secs(60),
            run: oracle_equivalence,
        },
        Criterion {
            number: 2,
            name: "fold order is irrelevant",
            limit: secs(120),
            run: confluence,
        },
        Criterion {
            number: 3,
            name: "basic identities",
            limit: secs(60),
            run: identity_suite,
        },
        Criterion {
            number: 4,
            name: "word problem regression",
            limit: None,
            run: word_problem,
        },
        Criterion {
            number: 5,
            name: "figure trees",
            limit: None,
            run: figure_fidelity,
        },
        Criterion {
            number: 6,
            name: "evaluation in small models is a morphism",
            limit: secs(300),
            run: freeness,
        },
        Criterion {
            number: 7,
            name: "trees rebuilt from terms",
            limit: None,
            run: generation_round_trip,
        },
        Criterion {
            number: 8,
            name: "two-sided trees are words",
            limit: None,
            run: two_sided_intersection,
        },
        Criterion {
            number: 9,
            name: "no J-related pair",
            limit: secs(600),
            run: j_triviality,
        },
        Criterion {
            number: 10,
            name: "products keep trunk distance bounded",
            limit: None,
            run: depth_bound,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = started.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("over the {} s limit", limit.as_secs()))
            }
            (o, _) => o,
        };
        let limit = c
            .limit
            .map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        let timing = format!("{:.2} s{limit}", elapsed.as_secs_f64());
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {}: {detail} ({timing})",
                c.number, c.name
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {:>2} FAIL  {}: {detail} ({timing})",
                    c.number, c.name
                );
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
