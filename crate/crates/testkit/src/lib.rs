//! Test-only oracles and golden data.
//!
//! Everything here re-derives rules from first principles, independently
//! of the production code paths it is used to check: the auction oracle
//! rescans raw bid sequences, and the play oracle is a plain exhaustive
//! minimax with no pruning, no transposition table and no move ordering.

pub mod auction_oracle;
pub mod gen;
pub mod goldens;
pub mod play_oracle;
