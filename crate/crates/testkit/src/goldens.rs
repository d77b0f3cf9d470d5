//! Hand-computed golden tables frozen for regression tests.

use bidlab_core::{Doubling, Strain};

/// One scoring golden: `(level, strain, doubling, vulnerable, tricks,
/// declarer_points)`. Values computed by hand from the score tables:
/// trick points (doubled x2 / redoubled x4), partscore 50 / game 300-500,
/// slam 500-750 / 1000-1500, insult 50/100, overtricks, and the
/// cumulative undertrick ladders.
pub const SCORE_GOLDENS: [(u8, Strain, Doubling, bool, u8, i32); 40] = {
    use Doubling::{Doubled as X, Redoubled as XX, Undoubled as U};
    use Strain::{Clubs as C, Diamonds as D, Hearts as H, NoTrump as N, Spades as S};
    [
        // Making, undoubled.
        (1, C, U, false, 7, 70),
        (2, N, U, false, 8, 120),
        (2, S, U, false, 8, 110),
        (2, C, U, false, 8, 90),
        (3, N, U, false, 9, 400),
        (3, N, U, true, 9, 600),
        (4, S, U, false, 10, 420),
        (4, H, U, true, 10, 620),
        (5, D, U, true, 11, 600),
        (6, C, U, false, 12, 920),
        (6, N, U, true, 12, 1440),
        (7, N, U, true, 13, 2220),
        (7, C, U, false, 13, 1440),
        // Overtricks.
        (1, N, U, false, 9, 150),
        (2, H, U, false, 9, 140),
        (3, C, U, true, 11, 150),
        // Doubled and redoubled, making.
        (2, S, X, false, 8, 470),
        (2, S, X, false, 9, 570),
        (2, S, X, true, 9, 870),
        (1, N, X, false, 8, 280),
        (2, C, XX, false, 8, 560),
        (2, C, XX, true, 9, 1160),
        (4, H, X, true, 10, 790),
        (6, S, X, false, 12, 1210),
        (7, N, XX, true, 13, 2980),
        // Undertricks, undoubled.
        (1, C, U, false, 6, -50),
        (1, C, U, true, 6, -100),
        (3, N, U, false, 6, -150),
        (3, N, U, true, 6, -300),
        // The doubled ladder, not vulnerable: 100, 300, 500, 800, 1100.
        (2, H, X, false, 7, -100),
        (2, H, X, false, 6, -300),
        (2, H, X, false, 5, -500),
        (2, H, X, false, 4, -800),
        (2, H, X, false, 3, -1100),
        // The doubled ladder, vulnerable: 200 then 300 each.
        (2, H, X, true, 7, -200),
        (2, H, X, true, 6, -500),
        (2, H, X, true, 4, -1100),
        // Redoubled undertricks.
        (2, H, XX, false, 6, -600),
        (2, H, XX, true, 5, -1600),
        (7, N, XX, true, 0, -7600),
    ]
};

/// Both edges of every IMP band: `(abs score difference, IMPs)`.
pub const IMP_BAND_EDGES: [(i32, i32); 50] = [
    (0, 0),
    (10, 0),
    (20, 1),
    (40, 1),
    (50, 2),
    (80, 2),
    (90, 3),
    (120, 3),
    (130, 4),
    (160, 4),
    (170, 5),
    (210, 5),
    (220, 6),
    (260, 6),
    (270, 7),
    (310, 7),
    (320, 8),
    (360, 8),
    (370, 9),
    (420, 9),
    (430, 10),
    (490, 10),
    (500, 11),
    (590, 11),
    (600, 12),
    (740, 12),
    (750, 13),
    (890, 13),
    (900, 14),
    (1090, 14),
    (1100, 15),
    (1290, 15),
    (1300, 16),
    (1490, 16),
    (1500, 17),
    (1740, 17),
    (1750, 18),
    (1990, 18),
    (2000, 19),
    (2240, 19),
    (2250, 20),
    (2490, 20),
    (2500, 21),
    (2990, 21),
    (3000, 22),
    (3490, 22),
    (3500, 23),
    (3990, 23),
    (4000, 24),
    (1_000_000, 24),
];
