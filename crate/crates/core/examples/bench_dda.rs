//! Quick solver benchmark: `cargo run -p bidlab-core --release --example bench_dda [n]`

use std::time::Instant;

use bidlab_core::{DealGenerator, Solver, SolverConfig};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let gen = DealGenerator::new(424242);
    let tt_bits: u32 = std::env::var("TT_BITS").ok().and_then(|v| v.parse().ok()).unwrap_or(22);
    let mut solver = Solver::new(SolverConfig { tt_bits, ..SolverConfig::default() });
    let mut times: Vec<f64> = Vec::new();
    let start_nodes = solver.nodes();
    for id in 0..n {
        let deal = gen.deal(id);
        let t0 = Instant::now();
        let ddt = solver.ddt(&deal);
        let dt = t0.elapsed().as_secs_f64();
        times.push(dt);
        let st = solver.stats();
        println!(
            "deal {id}: {:.3}s nodes {} boundaries {} probes {} hits {} cutoffs {} quick {}  N row {:?}",
            dt,
            solver.nodes() - start_nodes,
            st.boundaries,
            st.tt_probes,
            st.tt_hits,
            st.tt_cutoffs,
            st.quick_cutoffs,
            (0..5).map(|s| ddt.values()[s]).collect::<Vec<_>>()
        );
    }
    let st = solver.stats();
    println!("by_remaining: {:?}", st.by_remaining);
    println!("avg children/ply {:.2}  first-lead cutoff rate {:.3}", st.children as f64 / solver.nodes() as f64, st.first_lead_cutoffs as f64 / st.lead_cutoffs.max(1) as f64);
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!(
        "median {:.3}s  p95 {:.3}s  total nodes {}",
        times[times.len() / 2],
        times[((times.len() as f64 * 0.95) as usize).min(times.len() - 1)],
        solver.nodes() - start_nodes
    );
}
