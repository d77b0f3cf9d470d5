//! Plain exhaustive minimax over card play, for mini-deal cross-checks.
//!
//! No alpha-beta, no transposition table, no rank equivalence, no move
//! ordering: every legal line is enumerated.

use bidlab_core::{Hand, Seat, Strain};

const SUIT_MASK: u64 = 0x1FFF;

struct Minimax {
    hands: [u64; 4],
    trump: Option<usize>,
}

impl Minimax {
    fn beats(&self, card: usize, winner: usize) -> bool {
        if card / 13 == winner / 13 {
            card % 13 > winner % 13
        } else {
            Some(card / 13) == self.trump
        }
    }

    /// Future NS tricks with `to_play` acting on the current trick.
    fn node(&mut self, to_play: usize, trick: &mut [(usize, usize); 4], count: usize) -> u32 {
        let hand = self.hands[to_play];
        let legal = if count == 0 {
            hand
        } else {
            let lead_suit = trick[0].1 / 13;
            let in_suit = hand & (SUIT_MASK << (13 * lead_suit));
            if in_suit != 0 {
                in_suit
            } else {
                hand
            }
        };
        let maximizing = to_play % 2 == 0;
        let mut best: Option<u32> = None;
        let mut bits = legal;
        while bits != 0 {
            let card = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.hands[to_play] &= !(1u64 << card);
            trick[count] = (to_play, card);
            let v = if count == 3 {
                let (mut winner_seat, mut winner_card) = trick[0];
                for &(seat, c) in &trick[1..4] {
                    if self.beats(c, winner_card) {
                        winner_seat = seat;
                        winner_card = c;
                    }
                }
                let inc = if winner_seat % 2 == 0 { 1 } else { 0 };
                if self.hands[winner_seat] == 0 {
                    inc
                } else {
                    inc + self.node(winner_seat, &mut [(0, 0); 4], 0)
                }
            } else {
                self.node((to_play + 1) & 3, trick, count + 1)
            };
            self.hands[to_play] |= 1u64 << card;
            best = Some(match best {
                None => v,
                Some(b) if maximizing => b.max(v),
                Some(b) => b.min(v),
            });
        }
        best.expect("player holds at least one card")
    }
}

/// NS tricks under exhaustive perfect play.
pub fn minimax_ns_tricks(hands: [Hand; 4], trump: Strain, leader: Seat) -> u8 {
    let mut search = Minimax {
        hands: hands.map(|h| h.bits()),
        trump: trump.trump_suit().map(|s| s.index()),
    };
    if search.hands[leader.index()] == 0 {
        return 0;
    }
    search.node(leader.index(), &mut [(0, 0); 4], 0) as u8
}

/// Declarer-side tricks under exhaustive perfect play, opening lead at
/// declarer's left.
pub fn minimax_solve(hands: [Hand; 4], declarer: Seat, strain: Strain) -> u8 {
    let total = hands[0].len() as u8;
    let ns = minimax_ns_tricks(hands, strain, declarer.next());
    match declarer {
        Seat::North | Seat::South => ns,
        Seat::East | Seat::West => total - ns,
    }
}
