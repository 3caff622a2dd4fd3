//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcpart::exec::{compute_metrics, Locality};
use qcpart::oracle::oracle_partition;
use qcpart::pipeline::weights_of;
use qcpart::*;

const FIG3: &str = "qubits 3\ncnot 1 3\ncnot 1 3\ncnot 2 3\n";
const FIG7: &str =
    "qubits 4\ncnot 1 2\ncnot 2 3\ncnot 1 3\ncnot 4 3\ncnot 3 4\ncnot 2 3\ncnot 3 4\n";
const FIG9: &str =
    "qubits 4\ncnot 1 2\ncnot 3 1\ncnot 1 4\nh 4\ncnot 4 2\nh 2\ncnot 2 4\ncnot 1 2\ncnot 4 1\n";

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn set(qs: &[usize]) -> QubitSubset {
    QubitSubset::from_qubits(qs.iter().map(|q| q - 1))
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn ac1_bigraph_edges() -> Check {
    let c = parse_circuit(FIG3).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let g = qc_to_bigraph(&c);
    let elapsed = start.elapsed();
    let got: BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(g, q)| (g + 1, q.number()))
        .collect();
    let want: BTreeSet<(usize, usize)> = [(1, 1), (1, 3), (2, 1), (2, 3), (3, 2), (3, 3)]
        .into_iter()
        .collect();
    ensure(
        got == want && g.edges().len() == 6,
        format!("edges {got:?}"),
    )?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("6 edges in {elapsed:?}"))
}

fn ac2_fig7_optimum() -> Check {
    let w = weights_of(&parse_circuit(FIG7).unwrap());
    let start = Instant::now();
    let r = dp_partition(&w, 3).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.cost == 4, format!("cost {}", r.cost))?;
    let want =
        PartitionAssignment::from_parts(4, vec![set(&[1]), set(&[2]), set(&[3, 4])]).unwrap();
    ensure(
        r.assignment == want,
        format!("assignment {:?}", r.assignment.numbered()),
    )?;
    within(elapsed, Duration::from_millis(10))?;
    Ok(format!(
        "cost 4, parts {:?} in {elapsed:?}",
        r.assignment.numbered()
    ))
}

fn ac3_table_rows() -> Check {
    let w = weights_of(&parse_circuit(FIG7).unwrap());
    let t = dp_table(&w, 3).map_err(|e| e.to_string())?;
    for mask in 1..=15 {
        ensure(t.get(mask, 1) == Some(0), format!("k=1 index {mask}"))?;
    }
    let row2 = [
        (3, 1),
        (5, 1),
        (6, 2),
        (7, 2),
        (9, 0),
        (10, 0),
        (11, 0),
        (12, 3),
        (13, 1),
        (14, 2),
        (15, 2),
    ];
    for (mask, want) in row2 {
        ensure(
            t.get(mask, 2) == Some(want),
            format!("k=2 index {mask}: got {:?}, want {want}", t.get(mask, 2)),
        )?;
    }
    for mask in [1, 2, 4, 8] {
        ensure(
            t.get(mask, 2).is_none(),
            format!("k=2 index {mask} should be N.A"),
        )?;
    }
    // The printed table shows 2 here; the worked expansion and brute force give 4.
    ensure(
        t.get(15, 3) == Some(4),
        format!("k=3 index 15: {:?}", t.get(15, 3)),
    )?;
    Ok("k=1 all 0, k=2 row exact, k=3 index 15 = 4 (printed 2 treated as erratum)".into())
}

fn ac4_fig9_trace() -> Check {
    let c = parse_circuit(FIG9).unwrap();
    let a = PartitionAssignment::from_parts(4, vec![set(&[1, 2, 4]), set(&[3])]).unwrap();
    let trace = trace_execution(&c, &a).map_err(|e| e.to_string())?;
    let kinds: String = trace.iter().map(|e| e.kind.letter()).collect();
    ensure(kinds == "LGLLLLLLL", format!("L/G column {kinds}"))?;
    ensure(
        trace[1].rendering == "CNOT(q3,p1,q1,p0)",
        trace[1].rendering.clone(),
    )?;
    let cut = trace.last().map_or(0, |e| e.teleports_so_far);
    let dp = dp_partition(&weights_of(&c), 2).unwrap();
    Ok(format!(
        "only g2 global; cut-gate count {cut} (optimal K=2 cost {}); counted as one teleportation per global gate, not two halves",
        dp.cost
    ))
}

fn random_corpus() -> Vec<Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..200)
        .map(|i| {
            let n = rng.gen_range(2..=10);
            let gates = rng.gen_range(0..=40);
            random_circuit(n, gates, 1000 + i).unwrap()
        })
        .collect()
}

fn ac5_oracle_sweep(corpus: &[Circuit]) -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for c in corpus {
        let w = weights_of(c);
        for k in 1..=c.width() {
            let dp = dp_partition(&w, k).map_err(|e| e.to_string())?;
            let oracle = oracle_partition(&w, k).map_err(|e| e.to_string())?;
            ensure(
                dp.cost == oracle.cost,
                format!("{} K={k}: dp {} oracle {}", c.name(), dp.cost, oracle.cost),
            )?;
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} circuits, {runs} (circuit, K) pairs agree in {elapsed:.2?}",
        corpus.len()
    ))
}

fn ac6_complete_graph() -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for n in 2..=12usize {
        let w = weights_of(&gen_qft(n).unwrap());
        for k in 1..=n {
            let want = choose2(n as u64) - choose2((n - k + 1) as u64);
            let dp = dp_partition(&w, k).map_err(|e| e.to_string())?;
            ensure(
                dp.cost == want,
                format!("qft{n} K={k}: dp {} want {want}", dp.cost),
            )?;
            if n <= 8 {
                let oracle = oracle_partition(&w, k).map_err(|e| e.to_string())?;
                ensure(
                    oracle.cost == want,
                    format!("qft{n} K={k}: oracle {}", oracle.cost),
                )?;
            }
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{runs} (n, K) pairs match C(n,2)-C(n-K+1,2) in {elapsed:.2?}"
    ))
}

fn ac7_properties(corpus: &[Circuit]) -> Check {
    for (idx, c) in corpus.iter().enumerate() {
        let w = weights_of(c);
        let mut order: Vec<usize> = (0..c.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let shuffled = weights_of(&c.with_gate_order(&order));
        let mut prev = 0;
        for k in 1..=c.width() {
            let r = dp_partition(&w, k).unwrap();
            ensure(r.cost >= prev, format!("{} cost drops at K={k}", c.name()))?;
            prev = r.cost;
            ensure(
                r.assignment.cost(&w) == r.cost,
                format!("{} K={k} recount", c.name()),
            )?;
            let trace = trace_execution(c, &r.assignment).unwrap();
            let globals = trace.iter().filter(|e| e.kind == Locality::Global).count() as u64;
            ensure(
                globals == r.cost,
                format!("{} K={k} trace {globals}", c.name()),
            )?;
            let pairwise: u64 = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .map(|(a, b)| {
                    connect(r.assignment.parts()[a], r.assignment.parts()[b], &w).unwrap()
                })
                .sum();
            ensure(
                pairwise == r.cost,
                format!("{} K={k} connect-sum", c.name()),
            )?;
            let s = dp_partition(&shuffled, k).unwrap();
            ensure(s.cost == r.cost, format!("{} K={k} gate order", c.name()))?;
        }
    }
    Ok("monotone in K; trace = DP = recount = connect-sum; gate order irrelevant".into())
}

fn ac8_ratio(corpus: &[Circuit]) -> Check {
    for c in corpus {
        let w = weights_of(c);
        for k in 1..=c.width() {
            let r = dp_partition(&w, k).unwrap();
            let m = compute_metrics(c, &r);
            let two_n = 2 * c.width() as u64;
            ensure(
                m.ratio_r == Ratio::new(r.cost, two_n)
                    && *m.ratio_r.numer() * two_n == r.cost * *m.ratio_r.denom(),
                format!("{} K={k}: R {}", c.name(), m.ratio_r),
            )?;
            ensure(
                (m.ratio_r > Ratio::from_integer(1)) == (r.cost > two_n),
                format!("{} K={k}: R>1 test", c.name()),
            )?;
        }
    }
    let c = parse_circuit(FIG7).unwrap();
    let r = dp_partition(&weights_of(&c), 3).unwrap();
    let shown = compute_metrics(&c, &r).ratio_display();
    ensure(shown == "0.50", format!("fig7 K=3 R = {shown}"))?;
    Ok("exact rational on corpus; fig7 K=3 R = 0.50".into())
}

fn ac9_scale() -> Check {
    let c = random_circuit(18, 120, 18).unwrap();
    let w = weights_of(&c);
    let start = Instant::now();
    let r = dp_partition(&w, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    let recount = r.assignment.cost(&w);
    ensure(
        recount == r.cost,
        format!("recount {recount} vs {}", r.cost),
    )?;
    let globals = trace_execution(&c, &r.assignment)
        .unwrap()
        .iter()
        .filter(|e| e.kind == Locality::Global)
        .count() as u64;
    ensure(globals == r.cost, format!("trace {globals} vs {}", r.cost))?;
    Ok(format!(
        "18 qubits, 120 gates, K=4: cost {} in {elapsed:.2?}",
        r.cost
    ))
}

fn main() -> ExitCode {
    let corpus = random_corpus();
    let criteria: Vec<Criterion> = vec![
        ("AC1 bigraph edges", Box::new(ac1_bigraph_edges)),
        ("AC2 four-qubit optimum", Box::new(ac2_fig7_optimum)),
        ("AC3 memo table rows", Box::new(ac3_table_rows)),
        ("AC4 execution trace", Box::new(ac4_fig9_trace)),
        (
            "AC5 oracle equivalence",
            Box::new(|| ac5_oracle_sweep(&corpus)),
        ),
        (
            "AC6 complete-graph closed form",
            Box::new(ac6_complete_graph),
        ),
        (
            "AC7 monotonicity and consistency",
            Box::new(|| ac7_properties(&corpus)),
        ),
        ("AC8 ratio R", Box::new(|| ac8_ratio(&corpus))),
        ("AC9 18-qubit scale", Box::new(ac9_scale)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
