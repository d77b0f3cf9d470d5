//! Cards, suits, strains and bit-set hands.
//!
//! Card indices run 0..52 over the ordered deck clubs 2..A, diamonds 2..A,
//! hearts 2..A, spades 2..A. That single ordering is shared by hand bit
//! sets, feature positions and file formats.

use std::fmt;

use thiserror::Error;

pub const NUM_CARDS: usize = 52;
pub const NUM_RANKS: usize = 13;
pub const NUM_SUITS: usize = 4;
pub const CARDS_PER_HAND: usize = 13;

/// All 52 card bits set.
pub const FULL_DECK: u64 = (1u64 << NUM_CARDS) - 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CardParseError {
    #[error("bad rank character '{0}'")]
    BadRank(char),
    #[error("bad suit character '{0}'")]
    BadSuit(char),
    #[error("bad hand '{0}': expected 4 dot-separated suits")]
    BadHandShape(String),
    #[error("duplicate card in hand '{0}'")]
    DuplicateCard(String),
}

/// The four suits, clubs lowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Suit {
    Clubs = 0,
    Diamonds = 1,
    Hearts = 2,
    Spades = 3,
}

pub const SUITS: [Suit; 4] = [Suit::Clubs, Suit::Diamonds, Suit::Hearts, Suit::Spades];

impl Suit {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Suit {
        SUITS[i]
    }

    pub fn letter(self) -> char {
        match self {
            Suit::Clubs => 'C',
            Suit::Diamonds => 'D',
            Suit::Hearts => 'H',
            Suit::Spades => 'S',
        }
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A contract denomination: one of the four suits or no trump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Strain {
    Clubs = 0,
    Diamonds = 1,
    Hearts = 2,
    Spades = 3,
    NoTrump = 4,
}

pub const STRAINS: [Strain; 5] = [
    Strain::Clubs,
    Strain::Diamonds,
    Strain::Hearts,
    Strain::Spades,
    Strain::NoTrump,
];

impl Strain {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Strain {
        STRAINS[i]
    }

    /// The trump suit, or `None` for no trump.
    pub fn trump_suit(self) -> Option<Suit> {
        match self {
            Strain::NoTrump => None,
            s => Some(Suit::from_index(s as usize)),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Strain::NoTrump => 'N',
            s => s.trump_suit().unwrap().letter(),
        }
    }

    pub fn from_letter(c: char) -> Option<Strain> {
        match c.to_ascii_uppercase() {
            'C' => Some(Strain::Clubs),
            'D' => Some(Strain::Diamonds),
            'H' => Some(Strain::Hearts),
            'S' => Some(Strain::Spades),
            'N' => Some(Strain::NoTrump),
            _ => None,
        }
    }
}

impl fmt::Display for Strain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Rank within a suit: 0 = "2" up to 12 = "A".
pub type Rank = u8;

const RANK_CHARS: [char; 13] = [
    '2', '3', '4', '5', '6', '7', '8', '9', 'T', 'J', 'Q', 'K', 'A',
];

pub fn rank_char(rank: Rank) -> char {
    RANK_CHARS[rank as usize]
}

pub fn rank_from_char(c: char) -> Option<Rank> {
    let c = c.to_ascii_uppercase();
    RANK_CHARS.iter().position(|&r| r == c).map(|i| i as Rank)
}

/// A single card identified by its deck index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Card(u8);

impl Card {
    pub fn from_index(index: u8) -> Card {
        debug_assert!((index as usize) < NUM_CARDS);
        Card(index)
    }

    pub fn new(suit: Suit, rank: Rank) -> Card {
        debug_assert!((rank as usize) < NUM_RANKS);
        Card(suit as u8 * NUM_RANKS as u8 + rank)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn suit(self) -> Suit {
        Suit::from_index(self.0 as usize / NUM_RANKS)
    }

    pub fn rank(self) -> Rank {
        self.0 % NUM_RANKS as u8
    }

    pub fn bit(self) -> u64 {
        1u64 << self.0
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.suit().letter(), rank_char(self.rank()))
    }
}

impl fmt::Debug for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A set of cards as a 52-bit mask. Initial deal hands hold exactly 13.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Hand(u64);

impl Hand {
    pub const EMPTY: Hand = Hand(0);

    pub fn from_bits(bits: u64) -> Hand {
        debug_assert_eq!(bits & !FULL_DECK, 0);
        Hand(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, card: Card) -> bool {
        self.0 & card.bit() != 0
    }

    pub fn with(self, card: Card) -> Hand {
        Hand(self.0 | card.bit())
    }

    pub fn without(self, card: Card) -> Hand {
        Hand(self.0 & !card.bit())
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Bits of `suit` shifted down to a 13-bit mask.
    pub fn suit_ranks(self, suit: Suit) -> u16 {
        ((self.0 >> (suit as usize * NUM_RANKS)) & 0x1FFF) as u16
    }

    pub fn suit_len(self, suit: Suit) -> usize {
        self.suit_ranks(suit).count_ones() as usize
    }

    pub fn cards(self) -> impl Iterator<Item = Card> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                Some(Card::from_index(i))
            }
        })
    }

    /// High card points: A=4, K=3, Q=2, J=1.
    pub fn hcp(self) -> u32 {
        let mut total = 0;
        for suit in SUITS {
            let ranks = self.suit_ranks(suit);
            for (rank, points) in [(12u16, 4), (11, 3), (10, 2), (9, 1)] {
                if ranks & (1 << rank) != 0 {
                    total += points;
                }
            }
        }
        total
    }

    /// Parses `spades.hearts.diamonds.clubs` with ranks in `2..9TJQKA`,
    /// e.g. `AKQ2.T94.873.J65`. A void suit is an empty segment.
    pub fn parse(text: &str) -> Result<Hand, CardParseError> {
        let parts: Vec<&str> = text.split('.').collect();
        if parts.len() != 4 {
            return Err(CardParseError::BadHandShape(text.to_string()));
        }
        let mut bits = 0u64;
        // Text order is spades first; suit indices run clubs first.
        for (part, suit) in parts.iter().zip([
            Suit::Spades,
            Suit::Hearts,
            Suit::Diamonds,
            Suit::Clubs,
        ]) {
            for c in part.chars() {
                let rank = rank_from_char(c).ok_or(CardParseError::BadRank(c))?;
                let bit = Card::new(suit, rank).bit();
                if bits & bit != 0 {
                    return Err(CardParseError::DuplicateCard(text.to_string()));
                }
                bits |= bit;
            }
        }
        Ok(Hand(bits))
    }
}

impl fmt::Display for Hand {
    /// Canonical text form: suits spades-first, ranks descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, suit) in [Suit::Spades, Suit::Hearts, Suit::Diamonds, Suit::Clubs]
            .into_iter()
            .enumerate()
        {
            if i > 0 {
                write!(f, ".")?;
            }
            let ranks = self.suit_ranks(suit);
            for rank in (0..NUM_RANKS as u8).rev() {
                if ranks & (1 << rank) != 0 {
                    write!(f, "{}", rank_char(rank))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::BitOr for Hand {
    type Output = Hand;
    fn bitor(self, rhs: Hand) -> Hand {
        Hand(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for Hand {
    type Output = Hand;
    fn bitand(self, rhs: Hand) -> Hand {
        Hand(self.0 & rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn card_index_layout() {
        assert_eq!(Card::new(Suit::Clubs, 0).index(), 0);
        assert_eq!(Card::new(Suit::Clubs, 12).index(), 12);
        assert_eq!(Card::new(Suit::Diamonds, 0).index(), 13);
        assert_eq!(Card::new(Suit::Spades, 12).index(), 51);
        for i in 0..NUM_CARDS as u8 {
            let c = Card::from_index(i);
            assert_eq!(Card::new(c.suit(), c.rank()), c);
        }
    }

    #[test]
    fn hand_round_trip() {
        let text = "AKQ2.T94.873.J65";
        let hand = Hand::parse(text).unwrap();
        assert_eq!(hand.len(), 13);
        assert_eq!(hand.to_string(), text);
        assert_eq!(hand.suit_len(Suit::Spades), 4);
        assert_eq!(hand.hcp(), 4 + 3 + 2 + 1);
    }

    #[test]
    fn hand_parse_rejects_garbage() {
        assert!(Hand::parse("AKQ2.T94.873").is_err());
        assert!(Hand::parse("AKX2.T94.873.J65").is_err());
        assert!(Hand::parse("AA.T94.873.J65").is_err());
    }

    #[test]
    fn void_suits() {
        let hand = Hand::parse("AKQJT98765432...").unwrap();
        assert_eq!(hand.len(), 13);
        assert_eq!(hand.suit_len(Suit::Hearts), 0);
        assert_eq!(hand.to_string(), "AKQJT98765432...");
    }
}
