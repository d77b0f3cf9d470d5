//! Duplicate bridge scoring and IMP conversion.
//!
//! Score tables (laws-standard values):
//! - trick points per trick over six: minors 20, majors 30, no trump 40
//!   for the first and 30 after; doubled x2, redoubled x4;
//! - bonuses (not vul / vul): partscore 50, game 300/500 when trick
//!   points reach 100, small slam +500/+750, grand slam +1000/+1500,
//!   insult 50 doubled / 100 redoubled;
//! - overtricks each (not vul / vul): undoubled trick value, doubled
//!   100/200, redoubled 200/400;
//! - undertricks cumulative: see `undertrick_penalty`.

use thiserror::Error;

use crate::auction::{Contract, Doubling, PlayedContract};
use crate::cards::Strain;
use crate::deal::Side;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoreError {
    #[error("tricks must be 0..=13, got {0}")]
    BadTricks(u8),
    #[error("a passed-out board carries no tricks")]
    PassedOutTricks,
}

/// The outcome of one played board.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoardResult {
    pub contract: Contract,
    /// Tricks won by the declaring side; 0 for a passed-out board.
    pub tricks: u8,
    pub declarer_vulnerable: bool,
}

impl BoardResult {
    pub fn new(
        contract: Contract,
        tricks: u8,
        declarer_vulnerable: bool,
    ) -> Result<BoardResult, ScoreError> {
        if tricks > 13 {
            return Err(ScoreError::BadTricks(tricks));
        }
        if contract == Contract::PassedOut && tricks != 0 {
            return Err(ScoreError::PassedOutTricks);
        }
        Ok(BoardResult {
            contract,
            tricks,
            declarer_vulnerable,
        })
    }
}

/// A zero-sum pair of table scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DuplicateScore {
    pub ns: i32,
    pub ew: i32,
}

impl DuplicateScore {
    pub const ZERO: DuplicateScore = DuplicateScore { ns: 0, ew: 0 };

    fn for_side(side: Side, points: i32) -> DuplicateScore {
        match side {
            Side::NorthSouth => DuplicateScore {
                ns: points,
                ew: -points,
            },
            Side::EastWest => DuplicateScore {
                ns: -points,
                ew: points,
            },
        }
    }

    pub fn for_team(&self, side: Side) -> i32 {
        match side {
            Side::NorthSouth => self.ns,
            Side::EastWest => self.ew,
        }
    }
}

fn doubling_factor(doubling: Doubling) -> i32 {
    match doubling {
        Doubling::Undoubled => 1,
        Doubling::Doubled => 2,
        Doubling::Redoubled => 4,
    }
}

/// Per-trick value used for contracted tricks beyond the first and for
/// undoubled overtricks.
fn trick_value(strain: Strain) -> i32 {
    match strain {
        Strain::Clubs | Strain::Diamonds => 20,
        _ => 30,
    }
}

fn contracted_trick_points(level: u8, strain: Strain) -> i32 {
    let level = level as i32;
    match strain {
        Strain::NoTrump => 40 + (level - 1) * 30,
        s => level * trick_value(s),
    }
}

/// Signed duplicate points from the declaring side's view.
pub fn declarer_points(contract: PlayedContract, tricks: u8, vulnerable: bool) -> i32 {
    let target = contract.target_tricks();
    if tricks >= target {
        making_points(contract, tricks - target, vulnerable)
    } else {
        -undertrick_penalty(contract.doubling, target - tricks, vulnerable)
    }
}

fn making_points(contract: PlayedContract, overtricks: u8, vulnerable: bool) -> i32 {
    let trick_points =
        contracted_trick_points(contract.level, contract.strain) * doubling_factor(contract.doubling);
    let game_bonus = if trick_points >= 100 {
        if vulnerable {
            500
        } else {
            300
        }
    } else {
        50
    };
    let slam_bonus = match (contract.level, vulnerable) {
        (6, false) => 500,
        (6, true) => 750,
        (7, false) => 1000,
        (7, true) => 1500,
        _ => 0,
    };
    let per_overtrick = match (contract.doubling, vulnerable) {
        (Doubling::Undoubled, _) => trick_value(contract.strain),
        (Doubling::Doubled, false) => 100,
        (Doubling::Doubled, true) => 200,
        (Doubling::Redoubled, false) => 200,
        (Doubling::Redoubled, true) => 400,
    };
    let insult = match contract.doubling {
        Doubling::Undoubled => 0,
        Doubling::Doubled => 50,
        Doubling::Redoubled => 100,
    };
    trick_points + game_bonus + slam_bonus + overtricks as i32 * per_overtrick + insult
}

/// Cumulative defender score for `down` undertricks (positive number).
fn undertrick_penalty(doubling: Doubling, down: u8, vulnerable: bool) -> i32 {
    let down = down as i32;
    match doubling {
        Doubling::Undoubled => down * if vulnerable { 100 } else { 50 },
        Doubling::Doubled | Doubling::Redoubled => {
            let doubled = if vulnerable {
                // 200 then 300 each.
                200 + (down - 1) * 300
            } else {
                // 100, 200, 200, then 300 each.
                match down {
                    1 => 100,
                    2 => 300,
                    3 => 500,
                    n => 500 + (n - 3) * 300,
                }
            };
            if doubling == Doubling::Redoubled {
                doubled * 2
            } else {
                doubled
            }
        }
    }
}

/// Scores one board under duplicate rules. A passed-out board scores zero.
pub fn duplicate_score(result: &BoardResult) -> DuplicateScore {
    match result.contract {
        Contract::PassedOut => DuplicateScore::ZERO,
        Contract::Played(contract) => {
            let points = declarer_points(contract, result.tricks, result.declarer_vulnerable);
            DuplicateScore::for_side(contract.declarer.side(), points)
        }
    }
}

/// Absolute score-difference thresholds of the IMP scale; the IMP value
/// is the number of thresholds not exceeding the difference.
const IMP_THRESHOLDS: [i32; 24] = [
    20, 50, 90, 130, 170, 220, 270, 320, 370, 430, 500, 600, 750, 900, 1100, 1300, 1500, 1750,
    2000, 2250, 2500, 3000, 3500, 4000,
];

/// Converts a summed two-table score difference to International Match
/// Points in [-24, 24]; odd and nondecreasing.
pub fn imp(score_diff: i32) -> i32 {
    let magnitude = IMP_THRESHOLDS
        .iter()
        .take_while(|&&t| t <= score_diff.abs())
        .count() as i32;
    magnitude * score_diff.signum()
}

/// IMP result for `team` over two tables of the same deal, with the team
/// seated North-South at table 1 and East-West at table 2.
pub fn team_match_imp(table1: DuplicateScore, table2: DuplicateScore, team: Side) -> i32 {
    let diff = match team {
        Side::NorthSouth => table1.ns + table2.ew,
        Side::EastWest => table1.ew + table2.ns,
    };
    imp(diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deal::Seat;

    fn contract(level: u8, strain: Strain, doubling: Doubling) -> PlayedContract {
        PlayedContract {
            level,
            strain,
            doubling,
            declarer: Seat::North,
        }
    }

    fn made(level: u8, strain: Strain, tricks: u8, vul: bool) -> i32 {
        declarer_points(contract(level, strain, Doubling::Undoubled), tricks, vul)
    }

    #[test]
    fn partscore_basics() {
        // 2NT, 2S, 2C made exactly, not vulnerable.
        assert_eq!(made(2, Strain::NoTrump, 8, false), 120);
        assert_eq!(made(2, Strain::Spades, 8, false), 110);
        assert_eq!(made(2, Strain::Clubs, 8, false), 90);
    }

    #[test]
    fn game_bonuses() {
        assert_eq!(made(4, Strain::Hearts, 10, false), 420);
        assert_eq!(made(4, Strain::Hearts, 10, true), 620);
        assert_eq!(made(3, Strain::NoTrump, 9, false), 400);
        assert_eq!(made(5, Strain::Clubs, 11, true), 600);
    }

    #[test]
    fn passed_out_scores_zero() {
        let result = BoardResult::new(Contract::PassedOut, 0, false).unwrap();
        assert_eq!(duplicate_score(&result), DuplicateScore::ZERO);
        assert!(BoardResult::new(Contract::PassedOut, 5, false).is_err());
    }

    #[test]
    fn zero_sum_per_table() {
        for declarer in [Seat::North, Seat::East] {
            let c = PlayedContract {
                level: 3,
                strain: Strain::NoTrump,
                doubling: Doubling::Undoubled,
                declarer,
            };
            let result = BoardResult::new(Contract::Played(c), 8, false).unwrap();
            let score = duplicate_score(&result);
            assert_eq!(score.ns + score.ew, 0);
        }
    }

    #[test]
    fn score_sign_follows_declarer_side() {
        let c = PlayedContract {
            level: 1,
            strain: Strain::NoTrump,
            doubling: Doubling::Undoubled,
            declarer: Seat::East,
        };
        let result = BoardResult::new(Contract::Played(c), 7, false).unwrap();
        let score = duplicate_score(&result);
        assert_eq!(score.ew, 90);
        assert_eq!(score.ns, -90);
    }

    #[test]
    fn imp_examples() {
        assert_eq!(imp(0), 0);
        assert_eq!(imp(10), 0);
        assert_eq!(imp(20), 1);
        assert_eq!(imp(620), 12);
        assert_eq!(imp(-30), -1);
        assert_eq!(imp(4000), 24);
        assert_eq!(imp(100_000), 24);
    }

    #[test]
    fn imp_is_odd_and_monotone() {
        for d in -5000..=5000 {
            assert_eq!(imp(-d), -imp(d));
            assert!(imp(d + 1) >= imp(d));
        }
    }

    #[test]
    fn team_match_examples() {
        let plus = DuplicateScore { ns: 620, ew: -620 };
        let flat = DuplicateScore::ZERO;
        // The same deal played identically at both tables cancels out:
        // the team holds the NS cards at table 1 and the EW cards at 2.
        assert_eq!(team_match_imp(plus, plus, Side::NorthSouth), 0);
        assert_eq!(team_match_imp(plus, flat, Side::NorthSouth), 12);
        assert_eq!(
            team_match_imp(plus, flat, Side::NorthSouth),
            -team_match_imp(plus, flat, Side::EastWest)
        );
    }

    #[test]
    fn making_score_monotone_in_tricks() {
        for level in 1..=7u8 {
            for strain in crate::cards::STRAINS {
                for vul in [false, true] {
                    for doubling in [Doubling::Undoubled, Doubling::Doubled, Doubling::Redoubled] {
                        let c = contract(level, strain, doubling);
                        for tricks in 0..13u8 {
                            assert!(
                                declarer_points(c, tricks + 1, vul) >= declarer_points(c, tricks, vul)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn doubling_raises_defender_score_when_set() {
        for vul in [false, true] {
            for level in 1..=7u8 {
                for tricks in 0..level + 6 {
                    let undoubled =
                        -declarer_points(contract(level, Strain::Hearts, Doubling::Undoubled), tricks, vul);
                    let doubled =
                        -declarer_points(contract(level, Strain::Hearts, Doubling::Doubled), tricks, vul);
                    let redoubled =
                        -declarer_points(contract(level, Strain::Hearts, Doubling::Redoubled), tricks, vul);
                    assert!(redoubled >= doubled && doubled >= undoubled);
                }
            }
        }
    }
}
