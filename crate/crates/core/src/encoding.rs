//! Fixed-width feature vectors for the two bidding networks.
//!
//! A bid history is packed into 318 binary slots: positions 0-2 hold up
//! to three leading passes, and each contract bid `k` owns a 9-slot block
//! at `3 + 9k` laid out as
//! `[bid, pass, pass, double, pass, pass, redouble, pass, pass]`.
//! Every call in the history occupies exactly one slot, assigned left to
//! right, which makes the encoding injective on decision histories.

use std::fmt;

use thiserror::Error;

use crate::auction::{AuctionState, Bid, MAX_DECISION_HISTORY};
use crate::cards::{Hand, NUM_CARDS};
use crate::deal::{Deal, Seat};

/// Bits in a packed history vector.
pub const HISTORY_DIM: usize = MAX_DECISION_HISTORY;

/// Estimation-network input width: 52 hand bits, 2 vulnerability bits,
/// 318 history bits.
pub const ENN_INPUT_DIM: usize = NUM_CARDS + 2 + HISTORY_DIM;

/// Policy-network input width: the estimation input plus 52 partner-card
/// probabilities.
pub const PNN_INPUT_DIM: usize = ENN_INPUT_DIM + NUM_CARDS;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("history is terminal; only decision states are encodable")]
    TerminalHistory,
    #[error("history is not a legal bid sequence")]
    IllegalHistory,
    #[error("bit pattern is not reachable by any legal history")]
    UnreachablePattern,
    #[error("partner estimate must have 52 components in [0,1]")]
    BadEstimate,
    #[error("seat is not to act in the given auction state")]
    SeatNotToAct,
}

/// 318 binary slots describing a bid history.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HistoryVector {
    words: [u64; 5],
}

impl HistoryVector {
    pub const ZERO: HistoryVector = HistoryVector { words: [0; 5] };

    pub fn get(&self, bit: usize) -> bool {
        debug_assert!(bit < HISTORY_DIM);
        self.words[bit / 64] & (1u64 << (bit % 64)) != 0
    }

    pub fn set(&mut self, bit: usize) {
        debug_assert!(bit < HISTORY_DIM);
        self.words[bit / 64] |= 1u64 << (bit % 64);
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True if every bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &HistoryVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..HISTORY_DIM).filter(move |&i| self.get(i))
    }

    pub fn from_bits<I: IntoIterator<Item = usize>>(bits: I) -> HistoryVector {
        let mut v = HistoryVector::ZERO;
        for bit in bits {
            v.set(bit);
        }
        v
    }
}

impl fmt::Debug for HistoryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HistoryVector{:?}", self.ones().collect::<Vec<_>>())
    }
}

/// Where the next call of each kind would land inside a contract block.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// No contract bid yet; counts leading passes.
    Opening(usize),
    /// Inside block `base`; `passes` seen since the phase started.
    AfterBid { base: usize, passes: usize },
    AfterDouble { base: usize, passes: usize },
    AfterRedouble { base: usize, passes: usize },
}

fn block_base(bid: Bid) -> usize {
    3 + 9 * bid.index()
}

/// Packs a dealer-first bid sequence into its 318-bit vector.
///
/// The input must be a legal decision history: any legal non-terminal
/// sequence, or a terminal sequence minus its final pass. Full terminal
/// histories have no slot for the last pass and are rejected.
pub fn encode_history(bids: &[Bid]) -> Result<HistoryVector, EncodingError> {
    let mut v = HistoryVector::ZERO;
    let mut phase = Phase::Opening(0);
    for &bid in bids {
        match bid {
            Bid::PASS => match phase {
                Phase::Opening(n) => {
                    if n >= 3 {
                        return Err(EncodingError::TerminalHistory);
                    }
                    v.set(n);
                    phase = Phase::Opening(n + 1);
                }
                Phase::AfterBid { base, passes } => {
                    if passes >= 2 {
                        return Err(EncodingError::TerminalHistory);
                    }
                    v.set(base + 1 + passes);
                    phase = Phase::AfterBid {
                        base,
                        passes: passes + 1,
                    };
                }
                Phase::AfterDouble { base, passes } => {
                    if passes >= 2 {
                        return Err(EncodingError::TerminalHistory);
                    }
                    v.set(base + 4 + passes);
                    phase = Phase::AfterDouble {
                        base,
                        passes: passes + 1,
                    };
                }
                Phase::AfterRedouble { base, passes } => {
                    if passes >= 2 {
                        return Err(EncodingError::TerminalHistory);
                    }
                    v.set(base + 7 + passes);
                    phase = Phase::AfterRedouble {
                        base,
                        passes: passes + 1,
                    };
                }
            },
            Bid::DOUBLE => match phase {
                Phase::AfterBid { base, .. } => {
                    v.set(base + 3);
                    phase = Phase::AfterDouble { base, passes: 0 };
                }
                _ => return Err(EncodingError::IllegalHistory),
            },
            Bid::REDOUBLE => match phase {
                Phase::AfterDouble { base, .. } => {
                    v.set(base + 6);
                    phase = Phase::AfterRedouble { base, passes: 0 };
                }
                _ => return Err(EncodingError::IllegalHistory),
            },
            contract => {
                let base = block_base(contract);
                match phase {
                    Phase::Opening(_) => {}
                    Phase::AfterBid { base: prev, .. }
                    | Phase::AfterDouble { base: prev, .. }
                    | Phase::AfterRedouble { base: prev, .. } => {
                        if base <= prev {
                            return Err(EncodingError::IllegalHistory);
                        }
                    }
                }
                v.set(base);
                phase = Phase::AfterBid { base, passes: 0 };
            }
        }
    }
    Ok(v)
}

/// Inverse of [`encode_history`]: recovers the bid sequence and rejects
/// bit patterns no legal decision history produces.
pub fn decode_history(v: &HistoryVector) -> Result<Vec<Bid>, EncodingError> {
    // Chronological order equals ascending slot order: blocks are entered
    // in increasing base order and never revisited, and slots within a
    // block fill left to right.
    let mut bids = Vec::with_capacity(v.popcount());
    for bit in v.ones() {
        let bid = if bit < 3 {
            Bid::PASS
        } else {
            let offset = (bit - 3) % 9;
            let block = (bit - 3) / 9;
            match offset {
                0 => Bid::from_index(block).unwrap(),
                3 => Bid::DOUBLE,
                6 => Bid::REDOUBLE,
                _ => Bid::PASS,
            }
        };
        bids.push(bid);
    }
    // The sequence must replay legally (dealer choice does not affect
    // legality) and re-encode to the very same bits.
    if AuctionState::replay(Seat::North, &bids).is_err() {
        return Err(EncodingError::UnreachablePattern);
    }
    let reencoded = encode_history(&bids).map_err(|_| EncodingError::UnreachablePattern)?;
    if reencoded != *v {
        return Err(EncodingError::UnreachablePattern);
    }
    Ok(bids)
}

/// Input features of the estimation network: own cards, relative
/// vulnerability and the packed bid history, in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnnInput {
    pub hand: Hand,
    pub vul: [bool; 2],
    pub history: HistoryVector,
}

impl EnnInput {
    /// Dense 372-wide feature vector.
    pub fn features<T: From<f32>>(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(ENN_INPUT_DIM);
        self.write_features(&mut out);
        out
    }

    fn write_features<T: From<f32>>(&self, out: &mut Vec<T>) {
        let on = || T::from(1.0f32);
        let off = || T::from(0.0f32);
        for i in 0..NUM_CARDS as u8 {
            let held = self.hand.bits() & (1u64 << i) != 0;
            out.push(if held { on() } else { off() });
        }
        out.push(if self.vul[0] { on() } else { off() });
        out.push(if self.vul[1] { on() } else { off() });
        for bit in 0..HISTORY_DIM {
            out.push(if self.history.get(bit) { on() } else { off() });
        }
    }
}

/// Input features of the policy network: the estimation input followed by
/// 52 partner-card probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct PnnInput<T> {
    pub base: EnnInput,
    pub estimate: Vec<T>,
}

impl<T: From<f32> + PartialOrd + Copy> PnnInput<T> {
    /// Dense 424-wide feature vector.
    pub fn features(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(PNN_INPUT_DIM);
        self.base.write_features(&mut out);
        out.extend_from_slice(&self.estimate);
        out
    }
}

/// Builds the estimation-network input for the player to act.
pub fn build_enn_input(
    deal: &Deal,
    seat: Seat,
    state: &AuctionState,
) -> Result<EnnInput, EncodingError> {
    if state.is_terminal() || state.to_act() != seat {
        return Err(EncodingError::SeatNotToAct);
    }
    debug_assert_eq!(state.dealer(), deal.dealer);
    let history = encode_history(state.bids())?;
    Ok(EnnInput {
        hand: deal.hand(seat),
        vul: deal.vul.relative(seat),
        history,
    })
}

/// Attaches a 52-probability partner estimate to an estimation input.
pub fn build_pnn_input<T: From<f32> + PartialOrd + Copy>(
    base: EnnInput,
    estimate: Vec<T>,
) -> Result<PnnInput<T>, EncodingError> {
    let zero = T::from(0.0f32);
    let one = T::from(1.0f32);
    if estimate.len() != NUM_CARDS || estimate.iter().any(|&p| p < zero || p > one) {
        return Err(EncodingError::BadEstimate);
    }
    Ok(PnnInput { base, estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auction::parse_auction;
    use crate::deal::{DealGenerator, DealerPolicy, Vul, VulPolicy};

    fn encode_text(text: &str) -> HistoryVector {
        encode_history(&parse_auction(text).unwrap()).unwrap()
    }

    #[test]
    fn empty_history_is_zero() {
        let v = encode_history(&[]).unwrap();
        assert_eq!(v, HistoryVector::ZERO);
        assert_eq!(decode_history(&v).unwrap(), vec![]);
    }

    #[test]
    fn single_opening_bid() {
        let v = encode_text("1C");
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn example_sequence_bits() {
        let v = encode_text("P P 1C X XX P 1H P P");
        assert_eq!(
            v.ones().collect::<Vec<_>>(),
            vec![0, 1, 3, 6, 9, 10, 21, 22, 23]
        );
        let bids = decode_history(&v).unwrap();
        assert_eq!(bids, parse_auction("P P 1C X XX P 1H P P").unwrap());
    }

    #[test]
    fn popcount_matches_bid_count() {
        for text in ["", "P", "P P P", "1C", "1C P P", "P P 1C X XX P 1H P P"] {
            let bids = parse_auction(text).unwrap();
            assert_eq!(encode_history(&bids).unwrap().popcount(), bids.len());
        }
    }

    #[test]
    fn terminal_histories_rejected() {
        let four_passes = parse_auction("P P P P").unwrap();
        assert_eq!(
            encode_history(&four_passes).unwrap_err(),
            EncodingError::TerminalHistory
        );
        let done = parse_auction("1C P P P").unwrap();
        assert_eq!(
            encode_history(&done).unwrap_err(),
            EncodingError::TerminalHistory
        );
    }

    #[test]
    fn unreachable_patterns_rejected() {
        // Slot base+2 used while base+1 is free: passes must fill left to right.
        let v = HistoryVector::from_bits([3, 5]);
        assert_eq!(
            decode_history(&v).unwrap_err(),
            EncodingError::UnreachablePattern
        );
        // Double slot without its contract bid.
        let v = HistoryVector::from_bits([6]);
        assert_eq!(
            decode_history(&v).unwrap_err(),
            EncodingError::UnreachablePattern
        );
        // Redouble slot without a double.
        let v = HistoryVector::from_bits([3, 9]);
        assert_eq!(
            decode_history(&v).unwrap_err(),
            EncodingError::UnreachablePattern
        );
    }

    #[test]
    fn enn_input_layout() {
        let deal = DealGenerator {
            seed: 5,
            dealer_policy: DealerPolicy::Fixed(Seat::North),
            vul_policy: VulPolicy::Fixed(Vul::Ns),
        }
        .deal(0);
        let state = AuctionState::new(Seat::North);
        let input = build_enn_input(&deal, Seat::North, &state).unwrap();
        let feats: Vec<f32> = input.features();
        assert_eq!(feats.len(), ENN_INPUT_DIM);
        let hand_ones: f32 = feats[..52].iter().sum();
        assert_eq!(hand_ones, 13.0);
        // North is vulnerable, East-West is not: unfavorable = [1, 0].
        assert_eq!(&feats[52..54], &[1.0, 0.0]);
        assert!(feats[54..].iter().all(|&b| b == 0.0));

        // Wrong seat is a contract violation.
        assert_eq!(
            build_enn_input(&deal, Seat::East, &state).unwrap_err(),
            EncodingError::SeatNotToAct
        );
    }

    #[test]
    fn pnn_input_validates_estimate() {
        let deal = DealGenerator::new(5).deal(0);
        let state = AuctionState::new(deal.dealer);
        let base = build_enn_input(&deal, deal.dealer, &state).unwrap();
        let ok = build_pnn_input(base.clone(), vec![0.0f32; 52]).unwrap();
        assert_eq!(ok.features().len(), PNN_INPUT_DIM);
        assert_eq!(
            build_pnn_input(base.clone(), vec![0.5f32; 51]).unwrap_err(),
            EncodingError::BadEstimate
        );
        assert_eq!(
            build_pnn_input(base, vec![1.5f32; 52]).unwrap_err(),
            EncodingError::BadEstimate
        );
    }
}
