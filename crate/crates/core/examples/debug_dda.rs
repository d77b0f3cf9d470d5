//! Feature bisection on an oracle counterexample.

use bidlab_core::{Hand, Seat, Solver, SolverConfig, Strain};

fn main() {
    let hands = [
        Hand::parse("J7..A2.").unwrap(),
        Hand::parse("..J.T75").unwrap(),
        Hand::parse(".A2..AK").unwrap(),
        Hand::parse(".4.Q9.4").unwrap(),
    ];
    let base = SolverConfig::unassisted();
    let configs = [
        ("unassisted", base),
        (
            "tt",
            SolverConfig {
                use_tt: true,
                tt_bits: 16,
                ..base
            },
        ),
        (
            "quick",
            SolverConfig {
                quick_tricks: true,
                ..base
            },
        ),
        (
            "order",
            SolverConfig {
                move_ordering: true,
                ..base
            },
        ),
        (
            "tt+quick",
            SolverConfig {
                use_tt: true,
                quick_tricks: true,
                tt_bits: 16,
                ..base
            },
        ),
        ("small(all)", SolverConfig::small()),
    ];
    for (name, cfg) in configs {
        let mut solver = Solver::new(cfg);
        let v = solver.solve_hands(hands, Seat::North, Strain::Spades);
        println!("{name:12} -> {v}");
    }
}
