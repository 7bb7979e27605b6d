//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kouter::verify::middle_set_orders;
use kouter::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Log-uniform sizes between `3k` (at least 10) and `max`.
fn sizes(k: usize, count: usize, max: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = (3 * k).max(10) as f64;
    (0..count)
        .map(|_| (lo * (max as f64 / lo).powf(rng.gen::<f64>())).round() as usize)
        .collect()
}

fn is_fact_violation(e: &ForestError) -> bool {
    matches!(e, ForestError::FactViolation { .. })
}

#[derive(Default)]
struct BoundsTally {
    instances: usize,
    tree_fail: Vec<String>,
    branch_fail: Vec<String>,
    fact_fail: Vec<String>,
    tree_slack: usize,
    branch_slack: usize,
}

/// Criteria 1, 2 and the Fact part of 7.
fn width_bounds() -> BoundsTally {
    let mut t = BoundsTally {
        tree_slack: usize::MAX,
        branch_slack: usize::MAX,
        ..Default::default()
    };
    for k in 1..=5 {
        for (i, n) in sizes(k, 500, 10_000, 1000 + k as u64)
            .into_iter()
            .enumerate()
        {
            let seed = (k * 100_000 + i) as u64;
            let emb = match generate(&GenSpec::new(k, n, seed)) {
                Ok(e) => e,
                Err(e) => {
                    t.tree_fail.push(format!("k={k} n={n} seed={seed}: {e}"));
                    continue;
                }
            };
            t.instances += 1;
            let g = emb.to_graph();
            let tag = format!("k={k} n={n} seed={seed}");
            match decompose(&emb) {
                Ok(td) => match check_td(&g, &td) {
                    Ok(()) if td.width() <= 3 * k - 1 => {
                        t.tree_slack = t.tree_slack.min(3 * k - 1 - td.width())
                    }
                    Ok(()) => t.tree_fail.push(format!("{tag}: width {}", td.width())),
                    Err(v) => t.tree_fail.push(format!("{tag}: {v}")),
                },
                Err(TdError::Forest(e)) if is_fact_violation(&e) => {
                    t.fact_fail.push(format!("{tag}: {e}"))
                }
                Err(e) => t.tree_fail.push(format!("{tag}: {e}")),
            }
            match branch_decompose(&emb) {
                Ok(bd) => match check_bd(&g, &bd) {
                    Ok(w) if w <= 2 * k + 1 => t.branch_slack = t.branch_slack.min(2 * k + 1 - w),
                    Ok(w) => t.branch_fail.push(format!("{tag}: width {w}")),
                    Err(v) => t.branch_fail.push(format!("{tag}: {v}")),
                },
                Err(e) if is_fact_violation(&e) => t.fact_fail.push(format!("{tag}: {e}")),
                Err(e) => t.branch_fail.push(format!("{tag}: {e}")),
            }
        }
    }
    t
}

fn first(fails: &[String]) -> String {
    match fails.first() {
        Some(f) => format!("{} failures, first {f}", fails.len()),
        None => String::new(),
    }
}

/// Criterion 3, plus its Fact violations.
fn remember_bounds(facts: &mut Vec<String>) -> Outcome {
    let mut fails = Vec::new();
    for i in 0..200 {
        let k = 1 + i % 5;
        let n = sizes(k, 1, 2000, 3000 + i as u64)[0];
        let seed = 300_000 + i as u64;
        let emb = generate(&GenSpec::new(k, n, seed)).unwrap();
        let front = match FrontEnd::run(&emb) {
            Ok(f) => f,
            Err(e) if is_fact_violation(&e) => {
                facts.push(format!("k={k} n={n} seed={seed}: {e}"));
                continue;
            }
            Err(e) => {
                fails.push(format!("k={k} n={n} seed={seed}: {e}"));
                continue;
            }
        };
        match remember_numbers(&front.expanded.to_graph(), &front.forest.in_forest) {
            Ok(r) => {
                if r.vr > 3 * k - 1 || r.er > 2 * k {
                    fails.push(format!("k={k} n={n} seed={seed}: vr={} er={}", r.vr, r.er));
                }
            }
            Err(e) => fails.push(format!("k={k} n={n} seed={seed}: {e}")),
        }
    }
    Outcome::new(fails.is_empty(), format!("200 instances {}", first(&fails)))
}

/// Small outerplanar embeddings: generated instances and fixtures.
fn outerplanar_small() -> Vec<Embedding> {
    let mut out = Vec::new();
    for seed in 0..60 {
        for n in [3, 4, 6, 8, 10] {
            out.push(generate(&GenSpec::new(1, n, seed)).unwrap());
        }
    }
    for name in ["c3", "c7", "c10", "p1", "p2", "p6", "p10", "star4", "star9"] {
        out.push(canned(name).unwrap());
    }
    out
}

/// Criterion 4.
fn outerplanar_exact(bounds_ok: bool) -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    for emb in outerplanar_small() {
        let td = decompose(&emb).unwrap();
        let exact = oracle_treewidth(&emb.to_graph()).unwrap();
        checked += 1;
        if td.width() > 2 || td.width() != exact || check_td(&emb.to_graph(), &td).is_err() {
            fails.push(format!(
                "{} vertices: width {} vs exact {}",
                emb.n(),
                td.width(),
                exact
            ));
        }
    }
    let pass = fails.is_empty() && bounds_ok;
    Outcome::new(
        pass,
        format!(
            "{checked} oracle-sized instances exact, 500 large k=1 instances within 2 {}",
            first(&fails)
        ),
    )
}

/// Connected embedded graphs with at most eight vertices and edges.
fn tiny_embeddings() -> Vec<Embedding> {
    let mut out = Vec::new();
    for name in [
        "c3", "c4", "c5", "c6", "c7", "c8", "p2", "p3", "p5", "p8", "star3", "star7", "k4",
        "wheel3", "wheel4",
    ] {
        out.push(canned(name).unwrap());
    }
    for seed in 0..50u64 {
        for (k, n) in [(1, 3), (1, 5), (1, 7), (1, 8), (2, 6), (2, 7), (2, 8)] {
            let emb = generate(&GenSpec::new(k, n, seed)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed * 31 + n as u64);
            let mut cur = emb;
            let mut tries = 0;
            while cur.m() > 8 && tries < 200 {
                tries += 1;
                let e = rng.gen_range(0..cur.m());
                let next = cur.delete_edges(&[e]);
                if next.to_graph().is_connected() {
                    cur = next;
                }
            }
            if cur.m() <= 8 && cur.n() <= 8 && cur.m() >= 1 {
                out.push(cur);
            }
        }
    }
    out
}

/// Criterion 5.
fn sandwich() -> Outcome {
    let mut fails = Vec::new();
    let graphs = tiny_embeddings();
    for emb in &graphs {
        let g = emb.to_graph();
        let t = oracle_treewidth(&g).unwrap();
        let b = oracle_branchwidth(&g).unwrap();
        if !(b.max(2) <= t + 1 && t + 1 <= (3 * b / 2).max(2)) {
            fails.push(format!("t={t} b={b} on {:?}", g.edges()));
        }
        let tw = decompose(emb).unwrap().width();
        let bw = branch_decompose(emb).unwrap().width();
        if tw < t || bw < b {
            fails.push(format!(
                "pipeline {tw}/{bw} below exact {t}/{b} on {:?}",
                g.edges()
            ));
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!("{} graphs {}", graphs.len(), first(&fails)),
    )
}

/// Criterion 6.
fn per_edge_orders() -> Outcome {
    let mut fails = Vec::new();
    let mut edges_checked = 0;
    for i in 0..100u64 {
        let k = 1 + (i % 4) as usize;
        let n = 3 * k + (i as usize * 7) % 150;
        let emb = generate(&GenSpec::new(k, n, 600_000 + i)).unwrap();
        let run = run_branch(&emb).unwrap();
        let g = run.front.expanded.to_graph();
        let r = remember_numbers(&g, &run.front.forest.in_forest).unwrap();
        for part in &run.expanded_bd.components {
            for (order, origins) in middle_set_orders(&g, part).into_iter().zip(&part.origins) {
                for origin in origins {
                    edges_checked += 1;
                    let ok = match *origin {
                        EdgeOrigin::Forest(e) => order <= r.per_edge[e] + 1,
                        EdgeOrigin::Leaf(e) => run.front.forest.in_forest[e] || order <= 2,
                    };
                    if !ok {
                        fails.push(format!("instance {i}: {origin:?} has order {order}"));
                    }
                }
            }
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!(
            "100 instances, {edges_checked} tree edges {}",
            first(&fails)
        ),
    )
}

/// Median wall time of `decompose` per instance. Repetitions cycle
/// through the instances so that machine noise hits all of them alike.
fn median_times(embs: &[Embedding], reps: usize) -> Vec<Duration> {
    for emb in embs {
        decompose(emb).unwrap();
    }
    let mut times = vec![Vec::with_capacity(reps); embs.len()];
    for _ in 0..reps {
        for (i, emb) in embs.iter().enumerate() {
            let t = Instant::now();
            decompose(emb).unwrap();
            times[i].push(t.elapsed());
        }
    }
    times
        .into_iter()
        .map(|mut t| {
            t.sort();
            t[reps / 2]
        })
        .collect()
}

/// Criterion 8.
fn scaling() -> Outcome {
    let sized: Vec<Embedding> = [1 << 14, 1 << 15, 1 << 16]
        .iter()
        .map(|&n| generate(&GenSpec::new(3, n, 8)).unwrap())
        .collect();
    let times = median_times(&sized, 5);
    let r1 = times[1].as_secs_f64() / times[0].as_secs_f64();
    let r2 = times[2].as_secs_f64() / times[1].as_secs_f64();
    let by_k: Vec<Embedding> = [2, 5]
        .iter()
        .map(|&k| generate(&GenSpec::new(k, 1 << 15, 8)).unwrap())
        .collect();
    let tk = median_times(&by_k, 5);
    let rk = tk[1].as_secs_f64() / tk[0].as_secs_f64();
    let pass = r1 <= 2.5 && r2 <= 2.5 && rk <= 4.0;
    Outcome::new(
        pass,
        format!(
            "k=3 doubling ratios {r1:.2} {r2:.2} (limit 2.5), k=5/k=2 ratio {rk:.2} (limit 4), times {:?}",
            times.iter().map(|t| format!("{:.1}ms", t.as_secs_f64() * 1e3)).collect::<Vec<_>>()
        ),
    )
}

/// Criterion 9.
fn determinism() -> Outcome {
    let mut fails = Vec::new();
    let mut cases = 0;
    for k in 1..=5 {
        for seed in [0u64, 17, 1 << 40] {
            cases += 1;
            let spec = GenSpec::new(k, 40 * k + 50, seed);
            let a = write_emb(&generate(&spec).unwrap());
            let b = write_emb(&generate(&spec).unwrap());
            let emb = parse_emb(&a).unwrap();
            if a != b || write_emb(&emb) != a {
                fails.push(format!("emb k={k} seed={seed}"));
            }
            let g = emb.to_graph();
            let td1 = write_td(&decompose(&emb).unwrap(), emb.n());
            let td2 = write_td(&decompose(&parse_emb(&b).unwrap()).unwrap(), emb.n());
            let bd1 = write_bd(&branch_decompose(&emb).unwrap(), &g);
            let bd2 = write_bd(&branch_decompose(&parse_emb(&b).unwrap()).unwrap(), &g);
            if td1 != td2 || bd1 != bd2 {
                fails.push(format!("decomposition k={k} seed={seed}"));
            }
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!(
            "{cases} seeds, .emb/.td/.bd byte-identical {}",
            first(&fails)
        ),
    )
}

fn report(id: usize, name: &str, o: &Outcome, took: Duration) {
    println!(
        "criterion {id} [{name}] {} ({:.1}s) {}",
        if o.pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        o.detail.trim_end()
    );
}

fn main() -> ExitCode {
    let run = |id: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        report(id, name, &o, t.elapsed());
        o.pass
    };

    let t = Instant::now();
    let bounds = width_bounds();
    let took = t.elapsed();
    let mut facts = bounds.fact_fail.clone();
    report(
        1,
        "tree width <= 3k-1",
        &Outcome::new(
            bounds.tree_fail.is_empty() && bounds.fact_fail.is_empty(),
            format!(
                "{} instances, min slack {} {}",
                bounds.instances,
                bounds.tree_slack,
                first(&bounds.tree_fail)
            ),
        ),
        took,
    );
    report(
        2,
        "branch width <= 2k+1",
        &Outcome::new(
            bounds.branch_fail.is_empty() && bounds.fact_fail.is_empty(),
            format!(
                "{} instances, min slack {} {}",
                bounds.instances,
                bounds.branch_slack,
                first(&bounds.branch_fail)
            ),
        ),
        Duration::ZERO,
    );
    let mut all = bounds.tree_fail.is_empty() && bounds.branch_fail.is_empty();
    all &= run(3, "remember numbers", &mut || remember_bounds(&mut facts));
    let k1_ok = bounds.tree_fail.iter().all(|f| !f.starts_with("k=1 "));
    all &= run(4, "outerplanar exactness", &mut || outerplanar_exact(k1_ok));
    all &= run(5, "oracle sandwich", &mut sandwich);
    all &= run(6, "per-edge order bound", &mut per_edge_orders);
    all &= run(7, "structural facts", &mut || {
        Outcome::new(
            facts.is_empty(),
            format!("no violations during criteria 1-3 {}", first(&facts)),
        )
    });
    all &= run(8, "near-linear scaling", &mut scaling);
    all &= run(9, "determinism", &mut determinism);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
