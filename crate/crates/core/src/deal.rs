//! Seats, vulnerability, deals and deterministic deal generation.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::cards::{Card, CardParseError, Hand, CARDS_PER_HAND, FULL_DECK, NUM_CARDS};
use crate::rng::{SeedRng, Stream};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DealParseError {
    #[error("malformed deal record '{0}'")]
    Malformed(String),
    #[error(transparent)]
    Card(#[from] CardParseError),
    #[error("hands are not a partition of the deck")]
    NotAPartition,
}

/// Table positions in clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Seat {
    North = 0,
    East = 1,
    South = 2,
    West = 3,
}

pub const SEATS: [Seat; 4] = [Seat::North, Seat::East, Seat::South, Seat::West];

impl Seat {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Seat {
        SEATS[i % 4]
    }

    pub fn partner(self) -> Seat {
        Seat::from_index(self.index() + 2)
    }

    /// Next seat clockwise (the left-hand opponent).
    pub fn next(self) -> Seat {
        Seat::from_index(self.index() + 1)
    }

    pub fn side(self) -> Side {
        match self {
            Seat::North | Seat::South => Side::NorthSouth,
            Seat::East | Seat::West => Side::EastWest,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Seat::North => 'N',
            Seat::East => 'E',
            Seat::South => 'S',
            Seat::West => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Seat> {
        match c.to_ascii_uppercase() {
            'N' => Some(Seat::North),
            'E' => Some(Seat::East),
            'S' => Some(Seat::South),
            'W' => Some(Seat::West),
            _ => None,
        }
    }
}

impl fmt::Display for Seat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A partnership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    NorthSouth,
    EastWest,
}

impl Side {
    pub fn seats(self) -> [Seat; 2] {
        match self {
            Side::NorthSouth => [Seat::North, Seat::South],
            Side::EastWest => [Seat::East, Seat::West],
        }
    }

    pub fn opponent(self) -> Side {
        match self {
            Side::NorthSouth => Side::EastWest,
            Side::EastWest => Side::NorthSouth,
        }
    }

    pub fn contains(self, seat: Seat) -> bool {
        seat.side() == self
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::NorthSouth => write!(f, "NS"),
            Side::EastWest => write!(f, "EW"),
        }
    }
}

/// Board vulnerability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vul {
    None,
    Ns,
    Ew,
    Both,
}

pub const VULS: [Vul; 4] = [Vul::None, Vul::Ns, Vul::Ew, Vul::Both];

impl Vul {
    pub fn is_vulnerable(self, side: Side) -> bool {
        matches!(
            (self, side),
            (Vul::Both, _) | (Vul::Ns, Side::NorthSouth) | (Vul::Ew, Side::EastWest)
        )
    }

    /// Two-bit vulnerability code relative to `seat`:
    /// `[own side vulnerable, opponents vulnerable]`, i.e. `00` none,
    /// `11` both, `01` favorable, `10` unfavorable.
    pub fn relative(self, seat: Seat) -> [bool; 2] {
        let own = self.is_vulnerable(seat.side());
        let opp = self.is_vulnerable(seat.side().opponent());
        [own, opp]
    }

    pub fn name(self) -> &'static str {
        match self {
            Vul::None => "none",
            Vul::Ns => "ns",
            Vul::Ew => "ew",
            Vul::Both => "both",
        }
    }

    pub fn from_name(s: &str) -> Option<Vul> {
        match s {
            "none" => Some(Vul::None),
            "ns" => Some(Vul::Ns),
            "ew" => Some(Vul::Ew),
            "both" => Some(Vul::Both),
            _ => None,
        }
    }
}

impl fmt::Display for Vul {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One board: four 13-card hands plus dealer and vulnerability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deal {
    pub id: u64,
    pub dealer: Seat,
    pub vul: Vul,
    hands: [Hand; 4],
}

impl Deal {
    /// Builds a deal, checking that the hands partition the deck.
    pub fn new(id: u64, dealer: Seat, vul: Vul, hands: [Hand; 4]) -> Result<Deal, DealParseError> {
        let mut union = 0u64;
        let mut total = 0;
        for h in hands {
            union |= h.bits();
            total += h.len();
        }
        if union != FULL_DECK || total != NUM_CARDS {
            return Err(DealParseError::NotAPartition);
        }
        Ok(Deal {
            id,
            dealer,
            vul,
            hands,
        })
    }

    pub fn hand(&self, seat: Seat) -> Hand {
        self.hands[seat.index()]
    }

    pub fn hands(&self) -> [Hand; 4] {
        self.hands
    }

    /// One-line text record:
    /// `DEAL <id> dealer=<N|E|S|W> vul=<none|ns|ew|both> N=<hand> E=<hand> S=<hand> W=<hand>`
    pub fn to_line(&self) -> String {
        format!(
            "DEAL {} dealer={} vul={} N={} E={} S={} W={}",
            self.id,
            self.dealer,
            self.vul,
            self.hand(Seat::North),
            self.hand(Seat::East),
            self.hand(Seat::South),
            self.hand(Seat::West),
        )
    }

    pub fn parse_line(line: &str) -> Result<Deal, DealParseError> {
        let malformed = || DealParseError::Malformed(line.to_string());
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("DEAL") {
            return Err(malformed());
        }
        let id: u64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(malformed)?;
        let mut dealer = None;
        let mut vul = None;
        let mut hands: [Option<Hand>; 4] = [None; 4];
        for token in tokens {
            let (key, value) = token.split_once('=').ok_or_else(malformed)?;
            match key {
                "dealer" => {
                    let c = value.chars().next().ok_or_else(malformed)?;
                    dealer = Some(Seat::from_letter(c).ok_or_else(malformed)?);
                }
                "vul" => vul = Some(Vul::from_name(value).ok_or_else(malformed)?),
                "N" | "E" | "S" | "W" => {
                    let seat = Seat::from_letter(key.chars().next().unwrap()).unwrap();
                    hands[seat.index()] = Some(Hand::parse(value)?);
                }
                _ => return Err(malformed()),
            }
        }
        let dealer = dealer.ok_or_else(malformed)?;
        let vul = vul.ok_or_else(malformed)?;
        let hands = [
            hands[0].ok_or_else(malformed)?,
            hands[1].ok_or_else(malformed)?,
            hands[2].ok_or_else(malformed)?,
            hands[3].ok_or_else(malformed)?,
        ];
        Deal::new(id, dealer, vul, hands)
    }
}

/// How the dealer of each generated board is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DealerPolicy {
    Fixed(Seat),
    /// Dealer rotates N, E, S, W with the deal id.
    Rotate,
    Random,
}

/// How the vulnerability of each generated board is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VulPolicy {
    Fixed(Vul),
    Random,
}

/// Deterministic random-access deal source: deal `id` depends only on
/// `(seed, id)` and the two policies.
#[derive(Debug, Clone, Copy)]
pub struct DealGenerator {
    pub seed: u64,
    pub dealer_policy: DealerPolicy,
    pub vul_policy: VulPolicy,
}

impl DealGenerator {
    pub fn new(seed: u64) -> DealGenerator {
        DealGenerator {
            seed,
            dealer_policy: DealerPolicy::Random,
            vul_policy: VulPolicy::Random,
        }
    }

    pub fn deal(&self, id: u64) -> Deal {
        let mut rng = SeedRng::substream(self.seed, Stream::DealGen, id);
        generate_deal(&mut rng, id, self.dealer_policy, self.vul_policy)
    }
}

/// Uniform random partition of the deck into four 13-card hands via an
/// unbiased Fisher–Yates shuffle. Draw order is cards, dealer, vulnerability.
pub fn generate_deal(
    rng: &mut SeedRng,
    id: u64,
    dealer_policy: DealerPolicy,
    vul_policy: VulPolicy,
) -> Deal {
    let mut deck: [u8; NUM_CARDS] = std::array::from_fn(|i| i as u8);
    for i in (1..NUM_CARDS).rev() {
        let j = rng.random_range(0..=i);
        deck.swap(i, j);
    }
    let mut hands = [Hand::EMPTY; 4];
    for (pos, &card) in deck.iter().enumerate() {
        let seat = pos / CARDS_PER_HAND;
        hands[seat] = hands[seat].with(Card::from_index(card));
    }
    let dealer = match dealer_policy {
        DealerPolicy::Fixed(seat) => seat,
        DealerPolicy::Rotate => Seat::from_index(id as usize),
        DealerPolicy::Random => SEATS[rng.random_range(0..4usize)],
    };
    let vul = match vul_policy {
        VulPolicy::Fixed(v) => v,
        VulPolicy::Random => VULS[rng.random_range(0..4usize)],
    };
    Deal {
        id,
        dealer,
        vul,
        hands,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seat_relations() {
        assert_eq!(Seat::North.partner(), Seat::South);
        assert_eq!(Seat::East.partner(), Seat::West);
        for seat in SEATS {
            assert_eq!(seat.partner().partner(), seat);
            assert_eq!(seat.next().next().next().next(), seat);
        }
        assert_eq!(Seat::North.next(), Seat::East);
    }

    #[test]
    fn relative_vulnerability_codes() {
        assert_eq!(Vul::None.relative(Seat::North), [false, false]);
        assert_eq!(Vul::Both.relative(Seat::East), [true, true]);
        // NS vulnerable: favorable for E/W, unfavorable for N/S.
        assert_eq!(Vul::Ns.relative(Seat::East), [false, true]);
        assert_eq!(Vul::Ns.relative(Seat::North), [true, false]);
        assert_eq!(Vul::Ew.relative(Seat::West), [true, false]);
    }

    #[test]
    fn generated_deals_partition_the_deck() {
        let gen = DealGenerator::new(7);
        for id in 0..50 {
            let deal = gen.deal(id);
            let mut union = 0u64;
            for seat in SEATS {
                assert_eq!(deal.hand(seat).len(), 13);
                assert_eq!(union & deal.hand(seat).bits(), 0);
                union |= deal.hand(seat).bits();
            }
            assert_eq!(union, FULL_DECK);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let gen = DealGenerator::new(7);
        assert_eq!(gen.deal(0), gen.deal(0));
        assert_ne!(gen.deal(0).hands(), gen.deal(1).hands());
        let other = DealGenerator::new(8);
        assert_ne!(gen.deal(0).hands(), other.deal(0).hands());
    }

    #[test]
    fn rotate_policy_cycles_dealer() {
        let gen = DealGenerator {
            seed: 1,
            dealer_policy: DealerPolicy::Rotate,
            vul_policy: VulPolicy::Fixed(Vul::None),
        };
        assert_eq!(gen.deal(0).dealer, Seat::North);
        assert_eq!(gen.deal(1).dealer, Seat::East);
        assert_eq!(gen.deal(5).dealer, Seat::East);
        assert_eq!(gen.deal(5).vul, Vul::None);
    }

    #[test]
    fn deal_line_round_trip() {
        let deal = DealGenerator::new(3).deal(17);
        let line = deal.to_line();
        let parsed = Deal::parse_line(&line).unwrap();
        assert_eq!(parsed, deal);
    }

    #[test]
    fn deal_parser_rejects_overlap() {
        let deal = DealGenerator::new(3).deal(0);
        let north = deal.hand(Seat::North);
        let bad = Deal::new(0, Seat::North, Vul::None, [north; 4]);
        assert_eq!(bad.unwrap_err(), DealParseError::NotAPartition);

        let line = deal.to_line().replace(
            &format!("E={}", deal.hand(Seat::East)),
            &format!("E={}", north),
        );
        assert!(matches!(
            Deal::parse_line(&line),
            Err(DealParseError::NotAPartition)
        ));
    }
}
