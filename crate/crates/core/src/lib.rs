//! Core bridge domain: cards, seats, deals, the auction state machine,
//! feature encoding, duplicate scoring and the double dummy solver.

pub mod auction;
pub mod cards;
pub mod dda;
pub mod deal;
pub mod encoding;
pub mod rng;
pub mod scoring;

pub use auction::{AuctionState, Bid, BidError, BidSet, Contract, Doubling, PlayedContract};
pub use cards::{Card, Hand, Rank, Strain, Suit};
pub use deal::{Deal, DealGenerator, DealerPolicy, Seat, Side, Vul, VulPolicy};
pub use dda::{DoubleDummyTable, Solver, SolverConfig};
pub use rng::{SeedRng, Stream};
