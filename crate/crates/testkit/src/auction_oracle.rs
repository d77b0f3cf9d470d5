//! Brute-force auction rules: every query rescans the raw bid sequence.

use bidlab_core::{Bid, Contract, Doubling, PlayedContract, Seat};

fn is_pass(b: Bid) -> bool {
    b == Bid::PASS
}

/// Terminal iff at least one non-pass call is followed by three passes,
/// or the first four calls are all passes.
pub fn is_terminal(bids: &[Bid]) -> bool {
    let n = bids.len();
    if bids.iter().any(|&b| !is_pass(b)) {
        n >= 3 && bids[n - 3..].iter().all(|&b| is_pass(b))
    } else {
        n == 4
    }
}

/// Is `candidate` a legal next call after `bids`?
pub fn is_legal(bids: &[Bid], candidate: Bid) -> bool {
    if is_terminal(bids) {
        return false;
    }
    let n = bids.len();
    let last_non_pass = bids.iter().rposition(|&b| !is_pass(b));
    match candidate {
        Bid::PASS => true,
        Bid::DOUBLE => match last_non_pass {
            // The most recent non-pass call must be an opponent's
            // contract bid (odd seat distance from the actor).
            Some(j) => bids[j].is_contract() && (n - j) % 2 == 1,
            None => false,
        },
        Bid::REDOUBLE => match last_non_pass {
            Some(j) => bids[j] == Bid::DOUBLE && (n - j) % 2 == 1,
            None => false,
        },
        contract => bids
            .iter()
            .filter(|b| b.is_contract())
            .all(|b| b.index() < contract.index()),
    }
}

/// The full 38-bid legality mask after `bids`.
pub fn legal_mask(bids: &[Bid]) -> u64 {
    let mut mask = 0u64;
    for i in 0..bidlab_core::auction::NUM_BIDS {
        let bid = Bid::from_index(i).unwrap();
        if is_legal(bids, bid) {
            mask |= 1 << i;
        }
    }
    mask
}

/// Contract of a terminal auction, rederived by scanning.
pub fn final_contract(dealer: Seat, bids: &[Bid]) -> Contract {
    assert!(is_terminal(bids));
    let Some(winning) = bids.iter().rposition(|b| b.is_contract()) else {
        return Contract::PassedOut;
    };
    let winning_bid = bids[winning];
    let doubling = bids[winning..]
        .iter()
        .fold(Doubling::Undoubled, |acc, &b| match b {
            Bid::REDOUBLE => Doubling::Redoubled,
            Bid::DOUBLE if acc == Doubling::Undoubled => Doubling::Doubled,
            _ => acc,
        });
    let seat_at = |i: usize| Seat::from_index(dealer.index() + i);
    let winning_side = seat_at(winning).side();
    let strain = winning_bid.strain().unwrap();
    let declarer = bids
        .iter()
        .enumerate()
        .find(|(i, b)| b.strain() == Some(strain) && seat_at(*i).side() == winning_side)
        .map(|(i, _)| seat_at(i))
        .expect("the winning bid names the strain at the latest");
    Contract::Played(PlayedContract {
        level: winning_bid.level().unwrap(),
        strain,
        doubling,
        declarer,
    })
}
