//! Node growth per deal size: `cargo run -p bidlab-core --release --example bench_scaling`

use std::time::Instant;

use bidlab_core::{Card, Hand, Seat, SeedRng, Solver, SolverConfig, Strain, Stream};
use rand::Rng;

fn mini(rng: &mut SeedRng, n: usize) -> [Hand; 4] {
    let mut deck: Vec<u8> = (0..52).collect();
    for i in (1..52).rev() {
        let j = rng.random_range(0..=i);
        deck.swap(i, j);
    }
    let mut hands = [Hand::EMPTY; 4];
    for (i, &c) in deck.iter().take(4 * n).enumerate() {
        hands[i % 4] = hands[i % 4].with(Card::from_index(c));
    }
    hands
}

fn main() {
    for n in [13usize] {
        let mut rng = SeedRng::substream(9, Stream::Eval, n as u64);
        let mut solver = Solver::new(SolverConfig::default());
        let mut nodes = 0u64;
        let t0 = Instant::now();
        let reps = 3;
        for _ in 0..reps {
            let hands = mini(&mut rng, n);
            let before = solver.nodes();
            solver.solve_hands(hands, Seat::North, Strain::NoTrump);
            solver.solve_hands(hands, Seat::North, Strain::Spades);
            nodes += solver.nodes() - before;
        }
        let st = solver.stats();
        println!("visits by R: {:?}", st.by_remaining);
        println!("misses by R: {:?}", st.miss_by_remaining);
        println!("avg stored depth fraction {:.3}", st.stored_depth_sum as f64 / st.stored_count_sum.max(1) as f64);
        println!(
            "n={n:2}  avg nodes/solve {:>12}  avg time {:.4}s  probes {} hits {} cuts {} quick {}",
            nodes / (2 * reps),
            t0.elapsed().as_secs_f64() / (2 * reps) as f64,
            st.tt_probes, st.tt_hits, st.tt_cutoffs, st.quick_cutoffs
        );
    }
}
