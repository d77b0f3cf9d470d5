//! Double dummy analysis: perfect-information play values per declarer
//! and strain, used as the reward and analysis oracle.

mod solver;
mod tt;

use std::fmt;

use crate::auction::{Doubling, PlayedContract};
use crate::cards::{Card, Hand, Strain, STRAINS};
use crate::deal::{Seat, Side, Vul, SEATS};
use crate::scoring::declarer_points;

pub use solver::{Solver, SolverConfig};

/// Tricks available to each of the 4 declarers in each of the 5 strains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DoubleDummyTable {
    tricks: [[u8; 5]; 4],
}

impl DoubleDummyTable {
    pub fn get(&self, declarer: Seat, strain: Strain) -> u8 {
        self.tricks[declarer.index()][strain.index()]
    }

    pub fn set(&mut self, declarer: Seat, strain: Strain, tricks: u8) {
        debug_assert!(tricks <= 13);
        self.tricks[declarer.index()][strain.index()] = tricks;
    }

    /// Row-major flat view: declarers N, E, S, W by strains C, D, H, S, NT.
    pub fn values(&self) -> [u8; 20] {
        let mut out = [0; 20];
        for (d, row) in self.tricks.iter().enumerate() {
            out[d * 5..d * 5 + 5].copy_from_slice(row);
        }
        out
    }

    pub fn from_values(values: [u8; 20]) -> DoubleDummyTable {
        let mut table = DoubleDummyTable::default();
        for d in 0..4 {
            for s in 0..5 {
                table.tricks[d][s] = values[d * 5 + s];
            }
        }
        table
    }
}

impl fmt::Display for DoubleDummyTable {
    /// Grid with rows N, E, S, W and columns C, D, H, S, NT.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "     C  D  H  S  N")?;
        for seat in SEATS {
            write!(f, "{}  ", seat)?;
            for strain in STRAINS {
                write!(f, "{:3}", self.get(seat, strain))?;
            }
            if seat != Seat::West {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Mid-play position: remaining cards, trump, the trick in progress and
/// the running trick counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayState {
    pub remaining: [Hand; 4],
    pub trump: Strain,
    pub leader: Seat,
    pub trick: Vec<(Seat, Card)>,
    pub tricks_ns: u8,
    pub tricks_ew: u8,
}

impl PlayState {
    pub fn new(remaining: [Hand; 4], trump: Strain, leader: Seat) -> PlayState {
        PlayState {
            remaining,
            trump,
            leader,
            trick: Vec::with_capacity(4),
            tricks_ns: 0,
            tricks_ew: 0,
        }
    }

    pub fn to_play(&self) -> Seat {
        let mut seat = self.leader;
        for _ in 0..self.trick.len() {
            seat = seat.next();
        }
        seat
    }

    /// Plays one legal card, completing the trick when it is the fourth.
    pub fn play(&mut self, card: Card) {
        let seat = self.to_play();
        debug_assert!(legal_plays(self, seat).contains(card));
        self.remaining[seat.index()] = self.remaining[seat.index()].without(card);
        self.trick.push((seat, card));
        if self.trick.len() == 4 {
            let plays: [(Seat, Card); 4] = [self.trick[0], self.trick[1], self.trick[2], self.trick[3]];
            let winner = trick_winner(&plays, self.trump);
            match winner.side() {
                Side::NorthSouth => self.tricks_ns += 1,
                Side::EastWest => self.tricks_ew += 1,
            }
            self.trick.clear();
            self.leader = winner;
        }
    }
}

/// Cards `seat` may legally play: lead-suit cards if any are held,
/// otherwise the whole hand.
pub fn legal_plays(state: &PlayState, seat: Seat) -> Hand {
    debug_assert_eq!(state.to_play(), seat, "seat is not to play");
    let hand = state.remaining[seat.index()];
    match state.trick.first() {
        Some(&(_, lead)) => {
            let suit = lead.suit();
            if hand.suit_len(suit) > 0 {
                let mask = (0x1FFFu64) << (suit.index() * 13);
                Hand::from_bits(hand.bits() & mask)
            } else {
                hand
            }
        }
        None => hand,
    }
}

/// Winner of a complete trick: highest trump if any trump was played,
/// otherwise the highest card in the lead suit.
pub fn trick_winner(plays: &[(Seat, Card); 4], trump: Strain) -> Seat {
    let trump_suit = trump.trump_suit();
    let mut winner = plays[0];
    for &play in &plays[1..] {
        let (_, card) = play;
        let (_, best) = winner;
        let beats = if card.suit() == best.suit() {
            card.rank() > best.rank()
        } else {
            Some(card.suit()) == trump_suit
        };
        if beats {
            winner = play;
        }
    }
    winner.0
}

/// The highest-scoring strictly makeable contract for `side` given a
/// double dummy table: the best non-sacrificial contract. Undoubled,
/// ignoring what the opponents might outbid.
pub fn best_makeable_contract(
    ddt: &DoubleDummyTable,
    side: Side,
    vul: Vul,
) -> Option<(PlayedContract, i32)> {
    let vulnerable = vul.is_vulnerable(side);
    let mut best: Option<(PlayedContract, i32)> = None;
    for declarer in side.seats() {
        for strain in STRAINS {
            let tricks = ddt.get(declarer, strain);
            for level in 1..=7u8 {
                if tricks < level + 6 {
                    break;
                }
                let contract = PlayedContract {
                    level,
                    strain,
                    doubling: Doubling::Undoubled,
                    declarer,
                };
                let score = declarer_points(contract, tricks, vulnerable);
                let better = match best {
                    None => true,
                    Some((b, s)) => {
                        score > s
                            || (score == s
                                && (level, strain.index(), declarer.index())
                                    < (b.level, b.strain.index(), b.declarer.index()))
                    }
                };
                if better {
                    best = Some((contract, score));
                }
            }
        }
    }
    best
}

/// FNV-1a hash of the canonical hand text, used to key the on-disk DDT
/// cache (`<deal-hash> <20 integers>` per line).
pub fn deal_cards_hash(hands: &[Hand; 4]) -> u64 {
    let text = format!("N={} E={} S={} W={}", hands[0], hands[1], hands[2], hands[3]);
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::{rank_from_char, Suit};
    use crate::deal::{Deal, DealGenerator};

    fn card(text: &str) -> Card {
        let mut chars = text.chars();
        let suit = match chars.next().unwrap() {
            'C' => Suit::Clubs,
            'D' => Suit::Diamonds,
            'H' => Suit::Hearts,
            'S' => Suit::Spades,
            _ => panic!("bad suit"),
        };
        Card::new(suit, rank_from_char(chars.next().unwrap()).unwrap())
    }

    #[test]
    fn follow_suit_rules() {
        let hands = [
            Hand::parse("AK..T9.2").unwrap(),
            Hand::parse("Q2.A4..").unwrap(),
            Hand::parse("J.K5.8.").unwrap(),
            Hand::parse("T3..2.A").unwrap(),
        ];
        let mut state = PlayState::new(hands, Strain::Hearts, Seat::North);
        // Leader may play anything held.
        assert_eq!(legal_plays(&state, Seat::North), hands[0]);
        state.play(card("SK"));
        // East holds spades: must follow.
        let legal = legal_plays(&state, Seat::East);
        assert_eq!(legal, Hand::parse("Q2...").unwrap());
        state.play(card("SQ"));
        // South void in spades: anything goes.
        assert_eq!(legal_plays(&state, Seat::South), state.remaining[2]);
        state.play(card("HK"));
        state.play(card("S3"));
        // South ruffed with the heart king: trick to North-South.
        assert_eq!((state.tricks_ns, state.tricks_ew), (1, 0));
        assert_eq!(state.leader, Seat::South);
    }

    #[test]
    fn trick_winner_rules() {
        // No trump: highest lead-suit card wins.
        let plays = [
            (Seat::North, card("S5")),
            (Seat::East, card("SK")),
            (Seat::South, card("S2")),
            (Seat::West, card("S9")),
        ];
        assert_eq!(trick_winner(&plays, Strain::NoTrump), Seat::East);
        // A lone ruff wins over the lead suit.
        let plays = [
            (Seat::North, card("SA")),
            (Seat::East, card("H2")),
            (Seat::South, card("S3")),
            (Seat::West, card("S4")),
        ];
        assert_eq!(trick_winner(&plays, Strain::Hearts), Seat::East);
        // The higher of two ruffs wins.
        let plays = [
            (Seat::North, card("SA")),
            (Seat::East, card("H2")),
            (Seat::South, card("S3")),
            (Seat::West, card("HQ")),
        ];
        assert_eq!(trick_winner(&plays, Strain::Hearts), Seat::West);
        // Discards never win.
        let plays = [
            (Seat::North, card("S5")),
            (Seat::East, card("DA")),
            (Seat::South, card("S2")),
            (Seat::West, card("C9")),
        ];
        assert_eq!(trick_winner(&plays, Strain::NoTrump), Seat::North);
    }

    #[test]
    fn thirteen_trumps_take_everything() {
        let hands = [
            Hand::parse("AKQJT98765432...").unwrap(),
            Hand::parse(".AKQJT98765432..").unwrap(),
            Hand::parse("..AKQJT98765432.").unwrap(),
            Hand::parse("...AKQJT98765432").unwrap(),
        ];
        let deal = Deal::new(0, Seat::North, Vul::None, hands).unwrap();
        let mut solver = Solver::new(SolverConfig::small());
        assert_eq!(solver.solve(&deal, Seat::North, Strain::Spades), 13);
        let ddt = solver.ddt(&deal);
        assert_eq!(ddt.get(Seat::North, Strain::Spades), 13);
        assert_eq!(ddt.get(Seat::East, Strain::Spades), 0);
    }

    #[test]
    fn ddt_round_trips_and_is_bounded() {
        let deal = DealGenerator::new(11).deal(0);
        let mut solver = Solver::new(SolverConfig::small());
        let ddt = solver.ddt(&deal);
        for seat in SEATS {
            for strain in STRAINS {
                assert!(ddt.get(seat, strain) <= 13);
            }
        }
        assert_eq!(DoubleDummyTable::from_values(ddt.values()), ddt);
    }

    #[test]
    fn best_makeable_prefers_games() {
        let mut ddt = DoubleDummyTable::default();
        ddt.set(Seat::North, Strain::Hearts, 10);
        ddt.set(Seat::North, Strain::NoTrump, 9);
        ddt.set(Seat::South, Strain::Clubs, 10);
        let (contract, score) = best_makeable_contract(&ddt, Side::NorthSouth, Vul::None).unwrap();
        // 4H (420) beats 3NT (400) and 4C (130).
        assert_eq!((contract.level, contract.strain), (4, Strain::Hearts));
        assert_eq!(score, 420);
        assert!(best_makeable_contract(&ddt, Side::EastWest, Vul::None).is_none());
    }
}
