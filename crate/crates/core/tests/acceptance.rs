//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use incidence_centrality::centrality::{
    analyze, hypergraph_centralities, vertex_centrality, AnalysisConfig,
};
use incidence_centrality::experiments::{
    generate_cycle, generate_er, generate_grid_motif, generate_path, generate_random_connected,
    load_karate, run_equivalence, run_grid_experiment, GraphSource, GRID_AUTHORITY, GRID_HUB,
};
use incidence_centrality::oracles::{
    betweenness, coefficient_of_variation, current_flow_closeness, effective_resistance,
    resistance_sum_residuals, symmetric_pseudoinverse, BetweennessTarget, ResistanceMatrix,
};
use incidence_centrality::spectral::{compact_svd, truncated_svd, RegularizationConfig, Side};
use incidence_centrality::{build_hypergraph_incidence, build_incidence, pseudoinverse_diagonal};
use incidence_centrality::{DirectedGraph, Hypergraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn equivalence_rho(g: &DirectedGraph, source: GraphSource) -> Result<f64, String> {
    let r = run_equivalence(g, source, &RegularizationConfig::default()).map_err(|e| e.to_string())?;
    Ok(r.metrics["pearson_rho"])
}

fn ac1_path() -> Outcome {
    let start = Instant::now();
    let rho = equivalence_rho(&generate_path(8).unwrap(), GraphSource::Path { n: 8 })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    let detail = format!("rho = {rho:.4} (target 0.986 ± 0.02), {elapsed:?}");
    if (rho - 0.986).abs() <= 0.02 { Ok(detail) } else { Err(detail) }
}

fn ac2_karate() -> Outcome {
    let start = Instant::now();
    let rho = equivalence_rho(&load_karate(), GraphSource::Karate)?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(2))?;
    let detail = format!("rho = {rho:.4} (target 0.928 ± 0.03), {elapsed:?}");
    if (rho - 0.928).abs() <= 0.03 { Ok(detail) } else { Err(detail) }
}

fn ac3_erdos_renyi() -> Outcome {
    let start = Instant::now();
    let mut rhos = Vec::new();
    let mut seed = 0u64;
    while rhos.len() < 20 {
        let g = generate_er(15, 0.3, seed).unwrap();
        if g.is_connected() {
            rhos.push(equivalence_rho(&g, GraphSource::ErdosRenyi { n: 15, p: 0.3, seed })?);
        }
        seed += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    let mut sorted = rhos.clone();
    sorted.sort_by(f64::total_cmp);
    let median = (sorted[9] + sorted[10]) / 2.0;
    let min = sorted[0];
    let detail = format!(
        "median rho = {median:.4} (≥ 0.93), min = {min:.4} (≥ 0.85), seeds 0..{seed}, {elapsed:?}"
    );
    if median >= 0.93 && min >= 0.85 { Ok(detail) } else { Err(detail) }
}

fn ac4_resistance_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut graphs: Vec<DirectedGraph> = (0..50)
        .map(|i| {
            let n = rng.random_range(2..=40);
            let extra = rng.random_range(0..=2 * n);
            generate_random_connected(n, extra, 400 + i).unwrap()
        })
        .collect();
    graphs.push(generate_path(2).unwrap());
    graphs.push(generate_cycle(4).unwrap());
    graphs.push(load_karate());
    let cfg = RegularizationConfig::unregularized();
    let mut worst = 0.0f64;
    for g in &graphs {
        let n = g.vertex_count();
        let d = compact_svd(&build_incidence(g).unwrap(), None).unwrap();
        let c_v = vertex_centrality(&d, &cfg);
        let trace = d.pseudoinverse_trace(&cfg);
        let sums = ResistanceMatrix::from_graph(g).row_sums();
        let residual = resistance_sum_residuals(&sums, &c_v, trace)
            .into_iter()
            .fold(0.0, f64::max);
        worst = worst.max(residual / n as f64);
        if residual > 1e-8 * n as f64 {
            return Err(format!("n = {n}: residual {residual:.3e} > {:.1e}", 1e-8 * n as f64));
        }
    }
    Ok(format!("{} graphs, max residual/n = {worst:.3e}", graphs.len()))
}

fn ac5_grid() -> Outcome {
    let start = Instant::now();
    let r = run_grid_experiment(0.0).map_err(|e| e.to_string())?;
    let g = generate_grid_motif();
    let node_bc = betweenness(&g, BetweennessTarget::Node, true);
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    let hub = r.metrics["hub_argmax"] as usize;
    let auth = r.metrics["auth_argmax"] as usize;
    let top = g.edges()[r.metrics["s_e_argmax"] as usize];
    let hub_cv = r.metrics["hub_cv"];
    let nonzero: Vec<f64> = node_bc.values.iter().copied().filter(|&x| x > 0.0).collect();
    let bc_cv = coefficient_of_variation(&nonzero);
    let detail = format!(
        "hub {} auth {} top edge {}; nonzero betweenness CV {bc_cv:.4} < hub CV {hub_cv:.4}, {elapsed:?}",
        r.annotations["hub_argmax"], r.annotations["auth_argmax"], r.annotations["s_e_argmax"]
    );
    if hub == GRID_HUB && auth == GRID_AUTHORITY && top == (GRID_HUB, GRID_AUTHORITY) && bc_cv < hub_cv {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn ac6_orientation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = AnalysisConfig {
        alpha: None,
        ..AnalysisConfig::default()
    };
    let mut worst = 0.0f64;
    for gi in 0..10 {
        let n = rng.random_range(3..=25);
        let g = generate_random_connected(n, rng.random_range(0..=n), 600 + gi).unwrap();
        let base = analyze(&g, &cfg).map_err(|e| e.to_string())?;
        let d0 = compact_svd(&build_incidence(&g).unwrap(), None).unwrap();
        for _ in 0..100 {
            let subset: BTreeSet<usize> = (0..g.edge_count()).filter(|_| rng.random::<bool>()).collect();
            let b = build_incidence(&g).unwrap().flip_orientations(&subset).unwrap();
            let d1 = compact_svd(&b, None).unwrap();
            let flipped: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(k, &(t, h))| if subset.contains(&k) { (h, t) } else { (t, h) })
                .collect();
            let h = DirectedGraph::new(n, flipped).unwrap();
            let other = analyze(&h, &cfg).map_err(|e| e.to_string())?;
            let diff = [
                max_abs_diff(d0.sigma(), d1.sigma()),
                max_abs_diff(&base.c_v, &other.c_v),
                max_abs_diff(&base.c_e, &other.c_e),
            ]
            .into_iter()
            .fold(0.0, f64::max);
            worst = worst.max(diff);
            if diff > 1e-10 {
                return Err(format!("graph {gi}: difference {diff:.3e}"));
            }
        }
    }
    Ok(format!("10 graphs × 100 flips, max difference {worst:.3e}"))
}

fn random_graph(rng: &mut ChaCha8Rng) -> DirectedGraph {
    let n = rng.random_range(1..=30);
    let m = rng.random_range(0..=2 * n);
    let edges = (0..m)
        .filter_map(|_| {
            let t = rng.random_range(0..n);
            let h = rng.random_range(0..n);
            (t != h).then_some((t, h))
        })
        .collect();
    DirectedGraph::new(n, edges).unwrap()
}

fn ac7_topology() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for gi in 0..50 {
        let g = random_graph(&mut rng);
        let (n, m) = (g.vertex_count(), g.edge_count());
        let c = g.connected_components().count();
        let d = compact_svd(&build_incidence(&g).unwrap(), None).unwrap();
        let rank = d.numerical_rank();
        let nullity = m - rank;
        if rank != n - c || nullity != m + c - n {
            return Err(format!(
                "graph {gi}: n={n} m={m} c={c}, rank {rank} nullity {nullity}"
            ));
        }
    }
    Ok("50 graphs, rank = n − c and nullity = m − n + c".to_string())
}

fn ac8_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = RegularizationConfig::unregularized();
    let mut worst = 0.0f64;
    let mut compared = 0usize;
    for gi in 0..20 {
        let g = if gi % 4 == 0 {
            random_graph(&mut rng)
        } else {
            let n = rng.random_range(2..=50);
            generate_random_connected(n, rng.random_range(0..=n), 800 + gi).unwrap()
        };
        let n = g.vertex_count();
        let d = compact_svd(&build_incidence(&g).unwrap(), None).unwrap();
        let oracle = ResistanceMatrix::from_graph(&g);
        for i in 0..n {
            for j in 0..n {
                let a = effective_resistance(&d, i, j).map_err(|e| e.to_string())?;
                let b = oracle.get(i, j);
                let diff = if a.is_infinite() || b.is_infinite() {
                    if a == b { 0.0 } else { f64::INFINITY }
                } else {
                    (a - b).abs()
                };
                worst = worst.max(diff);
                if diff > 1e-8 {
                    return Err(format!("graph {gi}: R({i},{j}) svd {a} oracle {b}"));
                }
            }
        }
        if !g.is_connected() || n < 2 {
            continue;
        }
        let c_v = vertex_centrality(&d, &cfg);
        let cfc = current_flow_closeness(&g).map_err(|e| e.to_string())?;
        // Ascending c_v must order vertices exactly as descending closeness;
        // pairs tied in c_v carry no order.
        for i in 0..n {
            for j in 0..n {
                if (c_v[i] - c_v[j]).abs() <= 1e-10 {
                    continue;
                }
                compared += 1;
                if (c_v[i] < c_v[j]) != (cfc[i] > cfc[j]) {
                    return Err(format!("graph {gi}: vertices {i},{j} ranked differently"));
                }
            }
        }
    }
    Ok(format!(
        "20 graphs (n ≤ 50), max resistance difference {worst:.3e}, {compared} ordered pairs agree"
    ))
}

fn ac9_truncation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for gi in 0..10 {
        let n = rng.random_range(4..=40);
        let g = generate_random_connected(n, rng.random_range(0..=2 * n), 900 + gi).unwrap();
        let b = build_incidence(&g).unwrap();
        let dense = b.to_dense();
        let r = compact_svd(&b, None).unwrap().numerical_rank();
        for k in [1, r / 2, r].into_iter().filter(|&k| k >= 1) {
            let d = truncated_svd(&b, k).map_err(|e| e.to_string())?;
            let direct = (&dense - d.reconstruct()).norm();
            let reported = d.frobenius_tail();
            // At k = r both are rounding noise; measure against ‖B‖_F there.
            let scale = if direct > 1e-8 * b.frobenius_norm() { direct } else { b.frobenius_norm() };
            let rel = (reported - direct).abs() / scale;
            worst = worst.max(rel);
            if rel > 1e-9 {
                return Err(format!("graph {gi}, k = {k}: reported {reported} direct {direct}"));
            }
        }
    }
    Ok(format!("10 graphs, k ∈ {{1, r/2, r}}, max relative error {worst:.3e}"))
}

fn random_hypergraph(rng: &mut ChaCha8Rng) -> Hypergraph {
    let n = rng.random_range(2..=10);
    let m = rng.random_range(1..=12);
    let mut hyperedges: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let size = rng.random_range(1..=n);
            (0..size).map(|_| rng.random_range(0..n)).collect()
        })
        .collect();
    let dup = hyperedges[rng.random_range(0..m)].clone();
    hyperedges.push(dup);
    Hypergraph::new(n, hyperedges).unwrap()
}

fn ac10_hypergraphs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cfg = RegularizationConfig::unregularized();
    let mut worst = 0.0f64;
    let mut worst_dup = 0.0f64;
    for hi in 0..30 {
        let h = random_hypergraph(&mut rng);
        let report = hypergraph_centralities(&h, &cfg).map_err(|e| e.to_string())?;
        let b = build_hypergraph_incidence(&h).unwrap().to_dense();
        let lv = symmetric_pseudoinverse(&(&b * b.transpose()));
        let le = symmetric_pseudoinverse(&(b.transpose() * &b));
        let diff = max_abs_diff(&report.c_v, lv.diagonal().as_slice())
            .max(max_abs_diff(&report.c_e, le.diagonal().as_slice()));
        worst = worst.max(diff);
        if diff > 1e-8 {
            return Err(format!("hypergraph {hi}: brute-force difference {diff:.3e}"));
        }
        let edges = h.hyperedges();
        for a in 0..edges.len() {
            for b in (a + 1)..edges.len() {
                if edges[a] == edges[b] {
                    let d = (report.c_e[a] - report.c_e[b]).abs();
                    worst_dup = worst_dup.max(d);
                    if d > 1e-10 {
                        return Err(format!("hypergraph {hi}: duplicates {a},{b} differ by {d:.3e}"));
                    }
                }
            }
        }
    }
    // The SVD route must agree with the helper used by the library itself.
    let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
    let d = compact_svd(&build_hypergraph_incidence(&h).unwrap(), None).unwrap();
    let c_v = pseudoinverse_diagonal(&d, Side::Vertex, &cfg);
    let expected = [2.0 / 9.0, 5.0 / 9.0, 5.0 / 9.0];
    if max_abs_diff(&c_v, &expected) > 1e-12 {
        return Err(format!("two-edge hypergraph: c_v = {c_v:?}"));
    }
    Ok(format!(
        "30 hypergraphs (n ≤ 10), max difference {worst:.3e}, duplicates within {worst_dup:.3e}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1  path P8 equivalence", ac1_path),
        ("AC2  karate equivalence", ac2_karate),
        ("AC3  ER(15, 0.3) distribution", ac3_erdos_renyi),
        ("AC4  resistance-sum identity", ac4_resistance_sums),
        ("AC5  grid motif recovery", ac5_grid),
        ("AC6  orientation invariance", ac6_orientation),
        ("AC7  rank and nullity", ac7_topology),
        ("AC8  oracle equivalence", ac8_oracles),
        ("AC9  truncation tail", ac9_truncation),
        ("AC10 hypergraph pipeline", ac10_hypergraphs),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
