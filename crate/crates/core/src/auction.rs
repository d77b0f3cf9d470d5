//! The bidding state machine: bid legality, termination, final contract
//! and declarer determination.

use std::fmt;

use thiserror::Error;

use crate::cards::Strain;
use crate::deal::Seat;

/// Number of distinct calls: 35 contract bids plus pass, double, redouble.
pub const NUM_BIDS: usize = 38;

/// Longest bid history a player to act can ever observe: three leading
/// passes plus, per contract bid, the bid itself and up to eight
/// non-contract calls (pass-pass-double-pass-pass-redouble-pass-pass).
pub const MAX_DECISION_HISTORY: usize = 3 + 9 * 35;

/// Longest terminal auction: a maximal decision history plus the final pass.
pub const MAX_AUCTION_LEN: usize = MAX_DECISION_HISTORY + 1;

/// Longest non-terminal decision history (318).
pub fn max_auction_length() -> usize {
    MAX_DECISION_HISTORY
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BidError {
    #[error("contract bid {bid} does not beat {last}")]
    TooLow { bid: Bid, last: Bid },
    #[error("double is not legal here")]
    IllegalDouble,
    #[error("redouble is not legal here")]
    IllegalRedouble,
    #[error("auction is already over")]
    Terminal,
    #[error("unknown bid token '{0}'")]
    BadToken(String),
}

/// One call, indexed 0..38: contract bids 0..35 in rank order
/// (1C=0, 1D=1, ..., 7N=34), then pass=35, double=36, redouble=37.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bid(u8);

impl Bid {
    pub const PASS: Bid = Bid(35);
    pub const DOUBLE: Bid = Bid(36);
    pub const REDOUBLE: Bid = Bid(37);

    pub fn contract(level: u8, strain: Strain) -> Bid {
        debug_assert!((1..=7).contains(&level));
        Bid(5 * (level - 1) + strain as u8)
    }

    pub fn from_index(index: usize) -> Option<Bid> {
        (index < NUM_BIDS).then_some(Bid(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_contract(self) -> bool {
        self.0 < 35
    }

    pub fn level(self) -> Option<u8> {
        self.is_contract().then_some(self.0 / 5 + 1)
    }

    pub fn strain(self) -> Option<Strain> {
        self.is_contract().then(|| Strain::from_index(self.0 as usize % 5))
    }

    /// Parses the text tokens `P`, `X`, `XX` and `<level><C|D|H|S|N>`.
    pub fn parse(token: &str) -> Result<Bid, BidError> {
        let bad = || BidError::BadToken(token.to_string());
        match token.to_ascii_uppercase().as_str() {
            "P" => Ok(Bid::PASS),
            "X" => Ok(Bid::DOUBLE),
            "XX" => Ok(Bid::REDOUBLE),
            t => {
                let mut chars = t.chars();
                let level = chars
                    .next()
                    .and_then(|c| c.to_digit(10))
                    .filter(|l| (1..=7).contains(l))
                    .ok_or_else(bad)? as u8;
                let strain = chars
                    .next()
                    .and_then(Strain::from_letter)
                    .ok_or_else(bad)?;
                if chars.next().is_some() {
                    return Err(bad());
                }
                Ok(Bid::contract(level, strain))
            }
        }
    }
}

impl fmt::Display for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bid::PASS => write!(f, "P"),
            Bid::DOUBLE => write!(f, "X"),
            Bid::REDOUBLE => write!(f, "XX"),
            b => write!(f, "{}{}", b.level().unwrap(), b.strain().unwrap()),
        }
    }
}

impl fmt::Debug for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a space-separated auction like `P P 1C X XX P 1H P P`.
pub fn parse_auction(text: &str) -> Result<Vec<Bid>, BidError> {
    text.split_whitespace().map(Bid::parse).collect()
}

pub fn format_auction(bids: &[Bid]) -> String {
    bids.iter()
        .map(Bid::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A set of bids as a 38-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BidSet(u64);

impl BidSet {
    pub const EMPTY: BidSet = BidSet(0);

    pub fn from_mask(mask: u64) -> BidSet {
        debug_assert_eq!(mask >> NUM_BIDS, 0);
        BidSet(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, bid: Bid) {
        self.0 |= 1 << bid.index();
    }

    pub fn contains(self, bid: Bid) -> bool {
        self.0 & (1 << bid.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Bid> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Bid::from_index(i)
            }
        })
    }
}

impl FromIterator<Bid> for BidSet {
    fn from_iter<I: IntoIterator<Item = Bid>>(iter: I) -> BidSet {
        let mut set = BidSet::EMPTY;
        for bid in iter {
            set.insert(bid);
        }
        set
    }
}

/// Doubling status of the current contract bid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Doubling {
    Undoubled,
    Doubled,
    Redoubled,
}

impl fmt::Display for Doubling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Doubling::Undoubled => Ok(()),
            Doubling::Doubled => write!(f, "X"),
            Doubling::Redoubled => write!(f, "XX"),
        }
    }
}

/// The auction outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Contract {
    PassedOut,
    Played(PlayedContract),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlayedContract {
    pub level: u8,
    pub strain: Strain,
    pub doubling: Doubling,
    pub declarer: Seat,
}

impl PlayedContract {
    /// Tricks the declaring side must win: level plus six.
    pub fn target_tricks(self) -> u8 {
        self.level + 6
    }
}

impl fmt::Display for PlayedContract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{} by {}",
            self.level, self.strain, self.doubling, self.declarer
        )
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contract::PassedOut => write!(f, "passed out"),
            Contract::Played(c) => write!(f, "{c}"),
        }
    }
}

/// Immutable auction state; `apply` returns the successor state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuctionState {
    dealer: Seat,
    bids: Vec<Bid>,
    to_act: Seat,
    last_contract: Option<(Bid, Seat)>,
    doubling: Doubling,
    doubler: Option<Seat>,
    consecutive_passes: u32,
}

impl AuctionState {
    pub fn new(dealer: Seat) -> AuctionState {
        AuctionState {
            dealer,
            bids: Vec::new(),
            to_act: dealer,
            last_contract: None,
            doubling: Doubling::Undoubled,
            doubler: None,
            consecutive_passes: 0,
        }
    }

    /// Replays a full bid sequence from scratch.
    pub fn replay(dealer: Seat, bids: &[Bid]) -> Result<AuctionState, BidError> {
        let mut state = AuctionState::new(dealer);
        for &bid in bids {
            state = state.apply(bid)?;
        }
        Ok(state)
    }

    pub fn dealer(&self) -> Seat {
        self.dealer
    }

    pub fn bids(&self) -> &[Bid] {
        &self.bids
    }

    pub fn to_act(&self) -> Seat {
        self.to_act
    }

    pub fn last_contract(&self) -> Option<(Bid, Seat)> {
        self.last_contract
    }

    pub fn doubling(&self) -> Doubling {
        self.doubling
    }

    pub fn consecutive_passes(&self) -> u32 {
        self.consecutive_passes
    }

    /// True once the auction has ended: three passes after any contract
    /// bid, or four opening passes.
    pub fn is_terminal(&self) -> bool {
        if self.last_contract.is_some() {
            self.consecutive_passes >= 3
        } else {
            self.bids.len() == 4
        }
    }

    /// The set of legal calls for the player to act.
    ///
    /// Must not be called on a terminal state.
    pub fn legal_bids(&self) -> BidSet {
        assert!(!self.is_terminal(), "legal_bids on a terminal auction");
        let mut set = BidSet::EMPTY;
        set.insert(Bid::PASS);
        let floor = match self.last_contract {
            Some((bid, _)) => bid.index() + 1,
            None => 0,
        };
        for idx in floor..35 {
            set.insert(Bid(idx as u8));
        }
        if self.can_double() {
            set.insert(Bid::DOUBLE);
        }
        if self.can_redouble() {
            set.insert(Bid::REDOUBLE);
        }
        set
    }

    fn can_double(&self) -> bool {
        match self.last_contract {
            Some((_, seat)) => {
                self.doubling == Doubling::Undoubled && seat.side() != self.to_act.side()
            }
            None => false,
        }
    }

    fn can_redouble(&self) -> bool {
        self.doubling == Doubling::Doubled
            && self.doubler.map(Seat::side) != Some(self.to_act.side())
    }

    /// Appends one call, returning the successor state or the reason the
    /// call is illegal.
    pub fn apply(&self, bid: Bid) -> Result<AuctionState, BidError> {
        if self.is_terminal() {
            return Err(BidError::Terminal);
        }
        let mut next = self.clone();
        match bid {
            Bid::PASS => next.consecutive_passes += 1,
            Bid::DOUBLE => {
                if !self.can_double() {
                    return Err(BidError::IllegalDouble);
                }
                next.doubling = Doubling::Doubled;
                next.doubler = Some(self.to_act);
                next.consecutive_passes = 0;
            }
            Bid::REDOUBLE => {
                if !self.can_redouble() {
                    return Err(BidError::IllegalRedouble);
                }
                next.doubling = Doubling::Redoubled;
                next.consecutive_passes = 0;
            }
            contract => {
                if let Some((last, _)) = self.last_contract {
                    if contract <= last {
                        return Err(BidError::TooLow {
                            bid: contract,
                            last,
                        });
                    }
                }
                next.last_contract = Some((contract, self.to_act));
                next.doubling = Doubling::Undoubled;
                next.doubler = None;
                next.consecutive_passes = 0;
            }
        }
        next.bids.push(bid);
        next.to_act = self.to_act.next();
        Ok(next)
    }

    /// The contract of a finished auction.
    ///
    /// Must not be called on a non-terminal state.
    pub fn final_contract(&self) -> Contract {
        assert!(self.is_terminal(), "final_contract on a live auction");
        let Some((winning_bid, winning_seat)) = self.last_contract else {
            return Contract::PassedOut;
        };
        let strain = winning_bid.strain().unwrap();
        let side = winning_seat.side();
        // Declarer: the member of the winning partnership who first bid
        // the winning strain anywhere in the auction.
        let mut seat = self.dealer;
        let mut declarer = winning_seat;
        for &bid in &self.bids {
            if bid.strain() == Some(strain) && seat.side() == side {
                declarer = seat;
                break;
            }
            seat = seat.next();
        }
        Contract::Played(PlayedContract {
            level: winning_bid.level().unwrap(),
            strain,
            doubling: self.doubling,
            declarer,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(dealer: Seat, text: &str) -> AuctionState {
        AuctionState::replay(dealer, &parse_auction(text).unwrap()).unwrap()
    }

    #[test]
    fn bid_index_layout() {
        assert_eq!(Bid::contract(1, Strain::Clubs).index(), 0);
        assert_eq!(Bid::contract(1, Strain::NoTrump).index(), 4);
        assert_eq!(Bid::contract(2, Strain::Clubs).index(), 5);
        assert_eq!(Bid::contract(7, Strain::NoTrump).index(), 34);
        assert_eq!(Bid::PASS.index(), 35);
        for i in 0..NUM_BIDS {
            let b = Bid::from_index(i).unwrap();
            assert_eq!(Bid::parse(&b.to_string()).unwrap(), b);
        }
    }

    #[test]
    fn opening_legal_bids() {
        let state = AuctionState::new(Seat::North);
        let legal = state.legal_bids();
        assert_eq!(legal.len(), 36);
        assert!(legal.contains(Bid::PASS));
        assert!(!legal.contains(Bid::DOUBLE));
        assert!(!legal.contains(Bid::REDOUBLE));
    }

    #[test]
    fn double_then_redouble() {
        let state = run(Seat::North, "1C");
        let legal = state.legal_bids();
        assert!(legal.contains(Bid::DOUBLE));
        assert!(!legal.contains(Bid::REDOUBLE));
        assert!(!legal.contains(Bid::contract(1, Strain::Clubs)));
        assert!(legal.contains(Bid::contract(1, Strain::Diamonds)));

        // After N:1C E:X S:P W:P it is N to act again: redouble available.
        let state = run(Seat::North, "1C X P P");
        let legal = state.legal_bids();
        assert!(legal.contains(Bid::REDOUBLE));
        assert!(!legal.contains(Bid::DOUBLE));
    }

    #[test]
    fn cannot_double_partner() {
        let state = run(Seat::North, "1C P");
        assert_eq!(
            state.apply(Bid::DOUBLE).unwrap_err(),
            BidError::IllegalDouble
        );
    }

    #[test]
    fn too_low_contract_rejected() {
        let state = run(Seat::North, "1H");
        let err = state.apply(Bid::contract(1, Strain::Clubs)).unwrap_err();
        assert!(matches!(err, BidError::TooLow { .. }));
        let err = state.apply(Bid::contract(1, Strain::Hearts)).unwrap_err();
        assert!(matches!(err, BidError::TooLow { .. }));
    }

    #[test]
    fn pass_advances_seat() {
        let state = AuctionState::new(Seat::North).apply(Bid::PASS).unwrap();
        assert_eq!(state.bids().len(), 1);
        assert_eq!(state.to_act(), Seat::East);
    }

    #[test]
    fn example_sequence_replays() {
        // pass pass 1C double redouble pass 1H pass pass
        let state = run(Seat::North, "P P 1C X XX P 1H P P");
        assert!(!state.is_terminal());
        assert_eq!(state.bids().len(), 9);
        let state = state.apply(Bid::PASS).unwrap();
        assert!(state.is_terminal());
        match state.final_contract() {
            Contract::Played(c) => {
                assert_eq!(c.level, 1);
                assert_eq!(c.strain, Strain::Hearts);
                assert_eq!(c.doubling, Doubling::Undoubled);
                // 1H was bid by South (3rd seat from dealer North... index 6 => N+6 = South? )
                assert_eq!(c.declarer, Seat::South);
            }
            other => panic!("unexpected contract {other:?}"),
        }
    }

    #[test]
    fn termination_rules() {
        assert!(run(Seat::North, "P P P P").is_terminal());
        assert!(!run(Seat::North, "P P P").is_terminal());
        assert!(run(Seat::North, "1C P P P").is_terminal());
        assert!(!run(Seat::North, "1C P P").is_terminal());
        assert_eq!(
            run(Seat::North, "P P P P").final_contract(),
            Contract::PassedOut
        );
        assert_eq!(
            run(Seat::West, "P P P P").apply(Bid::PASS).unwrap_err(),
            BidError::Terminal
        );
    }

    #[test]
    fn declarer_is_first_to_name_strain() {
        // N opens 1H, S raises to 4H: N declared hearts first.
        let state = run(Seat::North, "1H P 4H P P P");
        match state.final_contract() {
            Contract::Played(c) => {
                assert_eq!(c.declarer, Seat::North);
                assert_eq!(c.level, 4);
            }
            _ => panic!(),
        }
        // E bid hearts in between: irrelevant, wrong partnership.
        let state = run(Seat::North, "1H 2H 4H P P P");
        match state.final_contract() {
            Contract::Played(c) => assert_eq!(c.declarer, Seat::North),
            _ => panic!(),
        }
    }

    #[test]
    fn redoubled_contract() {
        let state = run(Seat::North, "1C X XX P P P");
        match state.final_contract() {
            Contract::Played(c) => {
                assert_eq!(c.doubling, Doubling::Redoubled);
                assert_eq!(c.declarer, Seat::North);
                assert_eq!(c.level, 1);
                assert_eq!(c.strain, Strain::Clubs);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn doubling_resets_on_new_contract() {
        let state = run(Seat::North, "1C X 1H");
        assert_eq!(state.doubling(), Doubling::Undoubled);
        assert!(state.legal_bids().contains(Bid::DOUBLE));
    }

    #[test]
    fn max_lengths() {
        assert_eq!(max_auction_length(), 318);
        assert_eq!(MAX_AUCTION_LEN, 319);
    }
}
