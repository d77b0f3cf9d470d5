//! Random generators for auctions, decision histories and mini-deals.

use bidlab_core::{AuctionState, Bid, Card, Hand, Seat, SeedRng};
use rand::Rng;

/// A random legal auction played to termination. `pass_bias` is the
/// probability of passing whenever pass is legal; the remaining mass is
/// uniform over the other legal calls.
pub fn random_terminal_auction(rng: &mut SeedRng, dealer: Seat, pass_bias: f64) -> Vec<Bid> {
    let mut state = AuctionState::new(dealer);
    while !state.is_terminal() {
        state = state.apply(pick_bid(rng, &state, pass_bias)).unwrap();
    }
    state.bids().to_vec()
}

/// A random legal non-terminal decision history: a random prefix of a
/// random auction.
pub fn random_decision_history(rng: &mut SeedRng, pass_bias: f64) -> Vec<Bid> {
    let auction = random_terminal_auction(rng, Seat::North, pass_bias);
    // Every strict prefix of a terminal auction is a decision state.
    let len = rng.random_range(0..auction.len());
    auction[..len].to_vec()
}

fn pick_bid(rng: &mut SeedRng, state: &AuctionState, pass_bias: f64) -> Bid {
    let legal = state.legal_bids();
    let others: Vec<Bid> = legal.iter().filter(|&b| b != Bid::PASS).collect();
    if others.is_empty() || rng.random_range(0.0..1.0) < pass_bias {
        Bid::PASS
    } else {
        others[rng.random_range(0..others.len())]
    }
}

/// Four disjoint random hands of `cards_per_hand` cards each, drawn from
/// the full deck.
pub fn random_mini_deal(rng: &mut SeedRng, cards_per_hand: usize) -> [Hand; 4] {
    assert!(cards_per_hand <= 13);
    let mut deck: Vec<u8> = (0..52).collect();
    for i in (1..deck.len()).rev() {
        let j = rng.random_range(0..=i);
        deck.swap(i, j);
    }
    let mut hands = [Hand::EMPTY; 4];
    for (i, &card) in deck.iter().take(4 * cards_per_hand).enumerate() {
        hands[i % 4] = hands[i % 4].with(Card::from_index(card));
    }
    hands
}
