//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use sga_core::builders::fixtures::{self, f1, f2, f3, f5};
use sga_core::builders::{build_sft, build_zeta};
use sga_core::ktheory::k0;
use sga_core::linalg::EchelonBasis;
use sga_core::props::{self, Bounds, CHECK_NAMES};
use sga_core::report::CheckReport;
use sga_core::rep::{BlockLabel, BlockMode, RepModel};
use sga_core::{Algebra, QRepOperator, Semigraph, Token};

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn model(sg: &Semigraph) -> RepModel<'_> {
    RepModel::new(sg, BlockMode::AllSubsets).unwrap()
}

fn require(report: &CheckReport, context: &str) -> Result<(), String> {
    if report.passed() {
        Ok(())
    } else {
        Err(format!("{context}: {report}"))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn fixtures_1_to_5() -> Vec<(&'static str, Semigraph)> {
    fixtures::all()
}

fn relations_audit() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut cases: Vec<(String, Semigraph)> = fixtures_1_to_5().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    cases.extend((0..25).map(|_| common::random_semigraph(&mut rng, 12)));
    let mut slowest = Duration::ZERO;
    for (label, sg) in &cases {
        let (report, took) = timed(|| props::check_relations(&model(sg)));
        require(&report, label)?;
        if took > Duration::from_secs(10) {
            return Err(format!("{label} took {took:?}"));
        }
        slowest = slowest.max(took);
    }
    Ok(format!("{} semigraphs, slowest {slowest:.2?}", cases.len()))
}

fn normal_form_oracle() -> Outcome {
    let mut details = Vec::new();
    for (label, sg) in [("F1", f1()), ("F2", f2()), ("F5", f5())] {
        let (report, took) = timed(|| props::check_normal_form(&model(&sg), 4));
        require(&report, label)?;
        if took > Duration::from_secs(60) {
            return Err(format!("{label} took {took:?}"));
        }
        details.push(format!("{label}: {} words in {took:.2?}", report.cases));
    }
    Ok(details.join(", "))
}

fn inverse_semigroup_laws() -> Outcome {
    let sg = f1();
    let m = model(&sg);
    let report = props::check_inverse_semigroup(&m, 4);
    require(&report, "F1")?;
    let range = |name: &str| -> QRepOperator {
        let l: QRepOperator = m.letter(Token::new(sg.lookup(name).unwrap(), false));
        &l * &l.transpose()
    };
    let mut pairs = 0;
    for group in [["a", "b"].as_slice(), ["aa", "ab", "ba", "bb"].as_slice()] {
        for x in group {
            for y in group {
                if x != y {
                    pairs += 1;
                    if !(&range(x) * &range(y)).is_zero() {
                        return Err(format!("P_{x} P_{y} ≠ 0"));
                    }
                }
            }
        }
    }
    Ok(format!("{} cases, {pairs} orthogonal pairs", report.cases))
}

fn separation() -> Outcome {
    let mut cases = 0;
    for (label, sg) in [("F1", f1()), ("F5", f5())] {
        let report = model(&sg).separation_check();
        require(&report, label)?;
        cases += report.cases;
    }
    Ok(format!("{cases} cases"))
}

fn chain_law() -> Outcome {
    let (ranks, took) = timed(|| (1..=5).map(|n| k0(&build_zeta(1, n)).map(|r| r.rank)).collect::<Result<Vec<_>, _>>());
    let ranks = ranks.map_err(|e| e.to_string())?;
    let expected: Vec<usize> = (1..=5).map(|n| n + 1).collect();
    if ranks != expected {
        return Err(format!("ranks {ranks:?}"));
    }
    if took > Duration::from_secs(30) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("ranks {ranks:?} in {took:.2?}"))
}

fn path_fixture() -> Outcome {
    let sg = f5();
    let rank = k0(&sg).map_err(|e| e.to_string())?.rank;
    let dim = model(&sg).algebra_dimension();
    // ℂ ⊕ ℂ ⊕ M₂ with minimal projections v − aa* and w − a*a, and matrix
    // units aa*, a, a*, a*a.
    let summands = [1usize, 1, 2];
    let hand_dim: usize = summands.iter().map(|n| n * n).sum();
    if rank != summands.len() || dim != hand_dim {
        return Err(format!("rank {rank}, dimension {dim}"));
    }
    Ok(format!("rank {rank}, dimension {dim}"))
}

fn order_laws() -> Outcome {
    let mut cases = 0;
    for (label, sg) in [("F1", f1()), ("F2", f2())] {
        let report = props::check_order_laws(&model(&sg));
        require(&report, label)?;
        cases += report.cases;
    }
    Ok(format!("{cases} cases"))
}

fn freeness() -> Outcome {
    let bounds = Bounds::default();
    let mut verdicts = Vec::new();
    for (label, sg) in fixtures_1_to_5() {
        let m = model(&sg);
        for report in [
            props::check_free(&m, bounds.max_join),
            props::check_weakly_free(&m, bounds.factors),
            props::check_cancelling(&m, bounds.factors, bounds.witness_factors),
        ] {
            require(&report, label)?;
            verdicts.push(report.verdict);
        }
    }
    let f3 = f3();
    require(&props::check_lemma_mini22(&model(&f3)), "F3")?;
    Ok(format!("{} reports, bounds {bounds:?}", verdicts.len() + 1))
}

fn finite_dimensionality() -> Outcome {
    let mut details = Vec::new();
    for (label, sg) in [("F1", f1()), ("F2", f2()), ("F5", f5())] {
        let m = model(&sg);
        let ops: Vec<QRepOperator> =
            Algebra::new(&sg).enumerate_standard_words().par_iter().map(|w| m.represent_word(w)).collect();
        let mut basis = EchelonBasis::new();
        for op in &ops {
            basis.insert(&op.to_sparse_vec());
        }
        let escaped = ops
            .par_iter()
            .flat_map_iter(|a| ops.iter().map(move |b| (a, b)))
            .filter(|(a, b)| !basis.contains(&(*a * *b).to_sparse_vec()))
            .count();
        if escaped > 0 {
            return Err(format!("{label}: {escaped} products leave the span"));
        }
        details.push(format!("{label}: rank {}, {} products", basis.rank(), ops.len() * ops.len()));
    }
    Ok(details.join(", "))
}

fn block_model_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(77);
    let mut trials = 0;
    for (label, sg) in fixtures_1_to_5() {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        let base = model(&sg);
        for _ in 0..100 {
            let mut extended = base.clone();
            for _ in 0..rng.gen_range(1..=3) {
                extended.add_tuple_block(common::random_tuple(&mut rng, &sg));
            }
            let a = common::random_element(&mut rng, &alg, &words);
            let b = match rng.gen_range(0..3) {
                0 => a.clone(),
                1 => -&a,
                _ => common::random_element(&mut rng, &alg, &words),
            };
            if common::verdicts(&base, &alg, &a, &b) != common::verdicts(&extended, &alg, &a, &b) {
                return Err(format!("{label}: tuple blocks changed a verdict for {}", a.display(&sg)));
            }
            trials += 1;
        }
    }
    for (label, sg) in [("F1", f1()), ("F2", f2()), ("F5", f5())] {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        let full = model(&sg);
        let anti = RepModel::new(&sg, BlockMode::Antichains).unwrap();
        if full.algebra_dimension() != anti.algebra_dimension() {
            return Err(format!("{label}: dimensions differ between block modes"));
        }
        for _ in 0..100 {
            let a = common::random_element(&mut rng, &alg, &words);
            let b = common::random_element(&mut rng, &alg, &words);
            if common::verdicts(&full, &alg, &a, &b) != common::verdicts(&anti, &alg, &a, &b) {
                return Err(format!("{label}: block modes disagree"));
            }
        }
    }
    Ok(format!("{trials} duplicate-block trials, 300 mode comparisons"))
}

fn truncation_growth() -> Outcome {
    let ranks = |build: &dyn Fn(usize) -> Semigraph| -> Result<Vec<usize>, String> {
        (1..=5).map(|n| k0(&build(n)).map(|r| r.rank).map_err(|e| e.to_string())).collect()
    };
    let zeta = ranks(&|n| build_zeta(1, n))?;
    let sft = ranks(&|n| build_sft(&fixtures::golden_mean(n)))?;
    for (name, r) in [("zeta", &zeta), ("sft", &sft)] {
        if !r.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("{name} ranks {r:?}"));
        }
    }
    Ok(format!("zeta {zeta:?}, sft {sft:?}"))
}

/// Overrides `λ_t` by a cyclic shift of the basis in every block.
fn cyclic_model<'a>(sg: &'a Semigraph, t: &str) -> RepModel<'a> {
    let mut m = model(sg);
    let t = sg.lookup(t).unwrap();
    for b in 0..m.blocks().len() {
        let n = m.blocks()[b].len();
        let map: Vec<Option<usize>> = (0..n).map(|i| Some((i + 1) % n)).collect();
        m.override_generator(t, b, &map).unwrap();
    }
    m
}

fn local(m: &RepModel<'_>, block: usize, name: &str) -> usize {
    let sg = m.semigraph();
    m.blocks()[block].basis.iter().position(|&y| sg.name(y) == name).unwrap()
}

fn negative_controls() -> Outcome {
    let bounds = Bounds::default();
    let mut caught: Vec<(&str, String)> = Vec::new();
    let mut record = |reports: Vec<CheckReport>, control: &str| {
        for r in reports {
            if !r.passed() && !r.witnesses.is_empty() {
                caught.push((CHECK_NAMES.iter().find(|&&n| n == r.name).copied().unwrap_or("?"), control.to_string()));
            }
        }
    };

    let z = build_zeta(1, 1);
    record(props::run_suite(&cyclic_model(&z, "t"), bounds), "cyclic λ_t on ζ₁(1)");

    let f2 = f2();
    let mut m = model(&f2);
    let t = f2.lookup("t").unwrap();
    m.override_generator(t, 0, &[Some(1), Some(3), None, None]).unwrap();
    record(vec![props::check_relations(&m)], "λ_t(t) = ttt on F2");

    let mut m = model(&f2);
    let bi = m.block_index(&BlockLabel::Subset(vec![t])).unwrap();
    m.override_generator(t, bi, &[None, None]).unwrap();
    record(vec![m.separation_check()], "λ_t = 0 on the {t} block of F2");

    let f3 = f3();
    let mut m = model(&f3);
    let n = m.blocks()[0].len();
    let mut map = vec![None; n];
    map[local(&m, 0, "v")] = Some(local(&m, 0, "ef"));
    map[local(&m, 0, "e")] = Some(local(&m, 0, "f"));
    m.override_generator(f3.lookup("f").unwrap(), 0, &map).unwrap();
    record(vec![props::check_lemma_mini22(&m)], "λ_f(v) = ef on F3");

    let f1 = f1();
    let mut m = model(&f1);
    let (a, b) = (f1.lookup("a").unwrap(), f1.lookup("b").unwrap());
    for blk in 0..m.blocks().len() {
        let n = m.blocks()[blk].len();
        let map: Vec<Option<usize>> = (0..n).map(|i| if blk == 0 && i == 0 { None } else { Some(i) }).collect();
        m.override_generator(a, blk, &map).unwrap();
    }
    let n = m.blocks()[0].len();
    let mut map = vec![None; n];
    map[0] = Some(0);
    m.override_generator(b, 0, &map).unwrap();
    record(vec![props::check_standard_projections(&m, bounds.factors)], "λ_a = 1, λ_b = e₀ on F1");

    let missing: Vec<&&str> = CHECK_NAMES.iter().filter(|n| !caught.iter().any(|(c, _)| c == *n)).collect();
    if !missing.is_empty() {
        return Err(format!("no failing control for {missing:?}"));
    }
    Ok(format!("all {} checkers caught a corruption", CHECK_NAMES.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("relations audit", relations_audit),
        ("normal-form oracle equivalence", normal_form_oracle),
        ("inverse-semigroup laws and orthogonality", inverse_semigroup_laws),
        ("separation", separation),
        ("K0 chain law", chain_law),
        ("path fixture", path_fixture),
        ("order laws", order_laws),
        ("freeness suite", freeness),
        ("finite-dimensionality", finite_dimensionality),
        ("block-model soundness", block_model_soundness),
        ("monotone truncation growth", truncation_growth),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let (outcome, took) = timed(run);
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
