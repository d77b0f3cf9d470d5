//! Depth-first alpha-beta search on trick counts with rank-equivalence
//! canonicalization, a relevance-keyed trick-boundary transposition table
//! and zero-window probing over the trick target.
//!
//! Every search result carries the set of cards its proof depended on
//! ("winners"): per completed trick these are the lead-suit and trump
//! cards played; a node that cuts off inherits only the cutoff child's
//! winners, while a node searched in full inherits the union. Stored
//! bounds are keyed by hand shape plus the top-of-suit prefixes covering
//! those winners, so they transfer to any position that differs only in
//! the placement of lower cards.

use crate::cards::{Hand, Strain};
use crate::deal::{Deal, Seat, Side};

use super::tt::{PositionCtx, TransTable, NO_HINT};
use super::DoubleDummyTable;

/// Trump encoding inside the search: 0..4 = suit index, 4 = no trump.
const NO_TRUMP: usize = 4;

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// log2 of the transposition-table capacity.
    pub tt_bits: u32,
    pub use_tt: bool,
    pub move_ordering: bool,
    pub quick_tricks: bool,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            tt_bits: 22,
            use_tt: true,
            move_ordering: true,
            quick_tricks: true,
        }
    }
}

impl SolverConfig {
    /// Small table; handy for tests and many short-lived solvers.
    pub fn small() -> SolverConfig {
        SolverConfig {
            tt_bits: 16,
            ..SolverConfig::default()
        }
    }

    /// Every optimization off: plain alpha-beta, for soundness cross-checks.
    pub fn unassisted() -> SolverConfig {
        SolverConfig {
            tt_bits: 10,
            use_tt: false,
            move_ordering: false,
            quick_tricks: false,
        }
    }
}

/// Search counters, exposed for benchmarks.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub boundaries: u64,
    pub tt_probes: u64,
    pub tt_hits: u64,
    pub tt_cutoffs: u64,
    pub quick_cutoffs: u64,
    pub by_remaining: [u64; 14],
    pub miss_by_remaining: [u64; 14],
    /// Stored-entry pin depth and live-count sums, for transfer analysis.
    pub stored_depth_sum: u64,
    pub stored_count_sum: u64,
    pub children: u64,
    /// Boundary nodes where some lead forced a cutoff.
    pub lead_cutoffs: u64,
    /// ... and it was the first lead tried.
    pub first_lead_cutoffs: u64,
}

/// Perfect-information play solver. One instance is single-threaded;
/// run one instance per thread for deal parallelism.
pub struct Solver {
    cfg: SolverConfig,
    tt: TransTable,
    nodes: u64,
    stats: SearchStats,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Solver {
        Solver {
            cfg,
            tt: TransTable::new(cfg.tt_bits),
            nodes: 0,
            stats: SearchStats::default(),
        }
    }

    pub fn with_defaults() -> Solver {
        Solver::new(SolverConfig::default())
    }

    /// Search nodes visited since construction.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Maximum tricks the declaring side can take against optimal defense,
    /// with the opening lead at declarer's left.
    pub fn solve(&mut self, deal: &Deal, declarer: Seat, strain: Strain) -> u8 {
        self.solve_hands(deal.hands(), declarer, strain)
    }

    /// As `solve`, for explicit hands: any disjoint layout with equal card
    /// counts per seat (mini-deals are first-class for testing).
    pub fn solve_hands(&mut self, hands: [Hand; 4], declarer: Seat, strain: Strain) -> u8 {
        self.solve_hands_with_hint(hands, declarer, strain, None)
    }

    /// `hint` is a guess at the declarer-side trick count; it only steers
    /// the probe order, never the result.
    pub fn solve_hands_with_hint(
        &mut self,
        hands: [Hand; 4],
        declarer: Seat,
        strain: Strain,
        hint: Option<u8>,
    ) -> u8 {
        let n = hands[0].len();
        assert!(
            hands.iter().all(|h| h.len() == n),
            "hands must hold equal card counts"
        );
        let mut union = 0u64;
        for h in &hands {
            assert_eq!(union & h.bits(), 0, "hands must be disjoint");
            union |= h.bits();
        }
        let total = n as i32;
        if total == 0 {
            return 0;
        }

        let trump = match strain.trump_suit() {
            Some(s) => s.index(),
            None => NO_TRUMP,
        };
        self.tt.new_generation();
        let mut search = Search {
            hands: hands.map(|h| h.bits()),
            trump,
            tt: &mut self.tt,
            cfg: self.cfg,
            nodes: &mut self.nodes,
            stats: &mut self.stats,
            lead_hint: None,
            killer_suit: [4; 14],
        };

        let leader = declarer.next().index();
        let declarer_is_ns = declarer.side() == Side::NorthSouth;
        let to_ns = |declarer_tricks: i32| {
            if declarer_is_ns {
                declarer_tricks
            } else {
                total - declarer_tricks
            }
        };

        // Zero-window probes narrow [lo, hi] to a point; the first target
        // comes from the hint, later ones from bisection.
        let mut lo = 0i32;
        let mut hi = total;
        let mut guess = to_ns(hint.map_or((total + 1) / 2, |h| h as i32));
        while lo < hi {
            let target = guess.clamp(lo + 1, hi);
            let (v, _) = search.boundary(leader, target - 1, target);
            if v >= target {
                debug_assert!(v <= hi);
                lo = v;
            } else {
                debug_assert!(v >= lo);
                hi = v;
            }
            guess = (lo + hi + 1) / 2;
        }

        let declarer_tricks = if declarer_is_ns { lo } else { total - lo };
        declarer_tricks as u8
    }

    /// The full 4 declarers x 5 strains table.
    pub fn ddt(&mut self, deal: &Deal) -> DoubleDummyTable {
        self.ddt_hands(deal.hands())
    }

    pub fn ddt_hands(&mut self, hands: [Hand; 4]) -> DoubleDummyTable {
        self.ddt_hands_with_hint(hands, None)
    }

    /// `hints` (e.g. a related deal's table) seeds the probe targets.
    pub fn ddt_hands_with_hint(
        &mut self,
        hands: [Hand; 4],
        hints: Option<&DoubleDummyTable>,
    ) -> DoubleDummyTable {
        let total = hands[0].len() as u8;
        let mut table = DoubleDummyTable::default();
        for strain in crate::cards::STRAINS {
            // Same-side values differ only by the opening leader, and the
            // other side's value mirrors through the total: both make good
            // probe hints.
            let north = self.solve_hands_with_hint(
                hands,
                Seat::North,
                strain,
                hints.map(|h| h.get(Seat::North, strain)),
            );
            let south = self.solve_hands_with_hint(hands, Seat::South, strain, Some(north));
            let east = self.solve_hands_with_hint(
                hands,
                Seat::East,
                strain,
                Some(total - north.max(south)),
            );
            let west = self.solve_hands_with_hint(hands, Seat::West, strain, Some(east));
            table.set(Seat::North, strain, north);
            table.set(Seat::South, strain, south);
            table.set(Seat::East, strain, east);
            table.set(Seat::West, strain, west);
        }
        table
    }
}

const SUIT_MASK: u64 = 0x1FFF;

fn is_ns(seat: usize) -> bool {
    seat & 1 == 0
}

fn suit_of(card: usize) -> usize {
    card / 13
}

fn rank_of(card: usize) -> usize {
    card % 13
}

/// Per-suit absolute rank masks of the cards a proof depended on.
type Winners = [u16; 4];

const NO_WINNERS: Winners = [0; 4];

fn union(a: &mut Winners, b: &Winners) {
    for s in 0..4 {
        a[s] |= b[s];
    }
}

#[derive(Clone, Copy)]
struct TrickState {
    lead_suit: usize,
    /// Cards played so far this trick.
    count: usize,
    winner_seat: usize,
    winner_card: usize,
    /// Current-trick cards; they stay live for rank equivalence.
    trick_mask: u64,
}

impl TrickState {
    fn open(leader: usize) -> TrickState {
        TrickState {
            lead_suit: 0,
            count: 0,
            winner_seat: leader,
            winner_card: 0,
            trick_mask: 0,
        }
    }
}

struct Search<'a> {
    hands: [u64; 4],
    trump: usize,
    tt: &'a mut TransTable,
    cfg: SolverConfig,
    nodes: &'a mut u64,
    stats: &'a mut SearchStats,
    /// Best lead of the trick just searched, in relative-hint encoding.
    lead_hint: Option<u8>,
    /// Per remaining-tricks level, the suit of the last lead that caused
    /// a cutoff there.
    killer_suit: [u8; 14],
}

impl<'a> Search<'a> {
    fn live(&self) -> u64 {
        self.hands[0] | self.hands[1] | self.hands[2] | self.hands[3]
    }

    fn suit_ranks(mask: u64, suit: usize) -> u64 {
        (mask >> (13 * suit)) & SUIT_MASK
    }

    /// Does `card` beat the current `winner` card?
    fn beats(&self, card: usize, winner: usize) -> bool {
        let cs = suit_of(card);
        let ws = suit_of(winner);
        if cs == ws {
            rank_of(card) > rank_of(winner)
        } else {
            cs == self.trump
        }
    }

    /// Everything the transposition table needs to describe this boundary.
    /// Seats are rotated so the leader maps to seat 0: rotations preserve
    /// the leading side's trick count, so all four relabelings of a
    /// position share one entry (bounds are stored in leader-side terms).
    fn position_ctx(&self, leader: usize, remaining: i32) -> PositionCtx {
        let mut owners = [0u32; 4];
        let mut counts = [0u8; 4];
        for s in 0..4 {
            let h1 = Self::suit_ranks(self.hands[(leader + 1) & 3], s);
            let h2 = Self::suit_ranks(self.hands[(leader + 2) & 3], s);
            let h3 = Self::suit_ranks(self.hands[(leader + 3) & 3], s);
            let live = h1 | h2 | h3 | Self::suit_ranks(self.hands[leader], s);
            counts[s] = live.count_ones() as u8;
            owners[s] = pack_owners(h1, h2, h3, live);
        }
        PositionCtx {
            ltr: self.trump as u8,
            owners,
            counts,
            remaining: remaining as u8,
        }
    }

    /// Absolute rank masks of the top `depths` live cards per suit.
    fn prefix_winners(&self, depths: [u8; 4]) -> Winners {
        let live = self.live();
        let mut out = NO_WINNERS;
        for s in 0..4 {
            let mut ranks = Self::suit_ranks(live, s);
            for _ in 0..depths[s] {
                if ranks == 0 {
                    break;
                }
                let top = 63 - ranks.leading_zeros();
                out[s] |= 1 << top;
                ranks &= !(1u64 << top);
            }
        }
        out
    }

    /// Smallest top-of-suit prefixes covering the winner masks.
    fn winner_depths(&self, winners: &Winners) -> [u8; 4] {
        let live = self.live();
        let mut depths = [0u8; 4];
        for s in 0..4 {
            if winners[s] != 0 {
                let lowest = winners[s].trailing_zeros();
                let ranks = Self::suit_ranks(live, s) as u32;
                debug_assert_eq!(winners[s] as u32 & !ranks, 0, "winner not live");
                depths[s] = (ranks >> lowest).count_ones() as u8;
            }
        }
        depths
    }

    /// Value search at a trick boundary: NS tricks from here on, fail-soft
    /// within the window (alpha, beta), plus the cards the result depends
    /// on.
    fn boundary(&mut self, leader: usize, mut alpha: i32, mut beta: i32) -> (i32, Winners) {
        let remaining = self.hands[leader].count_ones() as i32;
        if remaining == 0 {
            return (0, NO_WINNERS);
        }
        if beta > remaining {
            beta = remaining;
        }
        if alpha < 0 {
            alpha = 0;
        }
        if alpha >= remaining {
            return (remaining, NO_WINNERS);
        }
        if beta <= 0 {
            return (0, NO_WINNERS);
        }
        if remaining == 1 {
            return self.last_trick(leader);
        }
        self.stats.boundaries += 1;
        self.stats.by_remaining[remaining as usize] += 1;

        if self.cfg.quick_tricks {
            // Tier 1: the leading hand's own top runs, nearly free.
            let (q, run_winners) = self.leader_runs(leader);
            let q = q as i32;
            if is_ns(leader) {
                if q >= beta {
                    self.stats.quick_cutoffs += 1;
                    return (q, run_winners);
                }
            } else {
                let upper = remaining - q;
                if upper <= alpha {
                    self.stats.quick_cutoffs += 1;
                    return (upper, run_winners);
                }
            }
        }

        let mut ctx = None;
        let mut hint = NO_HINT;
        let leader_ns = is_ns(leader);
        if self.cfg.use_tt {
            let c = self.position_ctx(leader, remaining);
            self.stats.tt_probes += 1;
            if let Some(p) = self.tt.probe(&c) {
                self.stats.tt_hits += 1;
                // Entries hold bounds on the leading side's tricks.
                let (lower, upper) = if leader_ns {
                    (p.lower as i32, p.upper as i32)
                } else {
                    (remaining - p.upper as i32, remaining - p.lower as i32)
                };
                if lower >= beta {
                    self.stats.tt_cutoffs += 1;
                    return (lower, self.prefix_winners(p.depths));
                }
                if upper <= alpha {
                    self.stats.tt_cutoffs += 1;
                    return (upper, self.prefix_winners(p.depths));
                }
                if lower > alpha {
                    alpha = lower;
                }
                if upper < beta {
                    beta = upper;
                }
                hint = p.best;
            } else {
                self.stats.miss_by_remaining[remaining as usize] += 1;
            }
            ctx = Some(c);
        }

        if self.cfg.quick_tricks {
            let (q, cash_winners) = self.cash_tricks(leader);
            if std::env::var("DDA_VERIFY_QUICK").is_ok() {
                let truth = {
                    let mut check = Search {
                        hands: self.hands,
                        trump: self.trump,
                        tt: &mut TransTable::new(8),
                        cfg: SolverConfig::unassisted(),
                        nodes: &mut 0,
                        stats: &mut SearchStats::default(),
                        lead_hint: None,
                        killer_suit: [4; 14],
                    };
                    check.ply(leader, TrickState::open(leader), 0, remaining, NO_HINT).0
                };
                let side_q = if is_ns(leader) { truth } else { remaining - truth };
                assert!(
                    (q as i32) <= side_q,
                    "cash_tricks overcounts: q={q} truth={side_q} hands={:?} leader={leader} trump={}",
                    self.hands,
                    self.trump
                );
            }
            let q = q as i32;
            if is_ns(leader) {
                if q >= beta {
                    self.stats.quick_cutoffs += 1;
                    return (q, cash_winners);
                }
                if q > alpha {
                    alpha = q;
                }
            } else {
                let upper = remaining - q;
                if upper <= alpha {
                    self.stats.quick_cutoffs += 1;
                    return (upper, cash_winners);
                }
                if upper < beta {
                    beta = upper;
                }
            }
        }


        let (v, winners) = self.ply(leader, TrickState::open(leader), alpha, beta, hint);
        if let Some(ctx) = ctx {
            let (ns_lower, ns_upper) = if v >= beta {
                (v, remaining)
            } else if v <= alpha {
                (0, v)
            } else {
                (v, v)
            };
            let (lower, upper) = if leader_ns {
                (ns_lower, ns_upper)
            } else {
                (remaining - ns_upper, remaining - ns_lower)
            };
            // A hint is only trustworthy when the search proved its lead
            // achieves v (exact or fail-high).
            let best = if v > alpha {
                self.lead_hint.take().unwrap_or(NO_HINT)
            } else {
                self.lead_hint = None;
                NO_HINT
            };
            let depths = self.winner_depths(&winners);
            self.stats.stored_depth_sum += depths.iter().map(|&d| d as u64).sum::<u64>();
            self.stats.stored_count_sum += ctx.counts.iter().map(|&c| c as u64).sum::<u64>();
            self.tt.store(&ctx, depths, lower as u8, upper as u8, best);
        }
        (v, winners)
    }

    /// One play within a trick; recurses through the boundary when the
    /// trick completes.
    fn ply(
        &mut self,
        seat: usize,
        trick: TrickState,
        mut alpha: i32,
        mut beta: i32,
        hint: u8,
    ) -> (i32, Winners) {
        *self.nodes += 1;
        let mut moves = [0u8; 13];
        let n = self.candidate_plays(seat, &trick, hint, &mut moves);
        debug_assert!(n > 0);
        let maximizing = is_ns(seat);
        let mut best = if maximizing { i32::MIN } else { i32::MAX };
        let mut best_card = moves[0] as usize;
        let mut best_winners = NO_WINNERS;
        let mut all_winners = NO_WINNERS;
        let mut cut = false;
        let mut tried = 0u32;

        for &m in &moves[..n] {
            tried += 1;
            let card = m as usize;
            let bit = 1u64 << card;
            self.hands[seat] &= !bit;

            let mut next = trick;
            if next.count == 0 {
                next.lead_suit = suit_of(card);
                next.winner_seat = seat;
                next.winner_card = card;
            } else if self.beats(card, next.winner_card) {
                next.winner_seat = seat;
                next.winner_card = card;
            }
            next.trick_mask |= bit;
            next.count += 1;

            let (v, winners) = if next.count == 4 {
                let inc = if is_ns(next.winner_seat) { 1 } else { 0 };
                let (sub, mut w) = self.boundary(next.winner_seat, alpha - inc, beta - inc);
                // Pinning the winning card is enough: the depth conversion
                // covers every card above it in its suit, and lower cards
                // lose to it structurally.
                w[suit_of(next.winner_card)] |= 1 << rank_of(next.winner_card);
                (inc + sub, w)
            } else {
                self.ply((seat + 1) & 3, next, alpha, beta, NO_HINT)
            };

            self.hands[seat] |= bit;
            self.stats.children += 1;

            if maximizing {
                if v > best {
                    best = v;
                    best_card = card;
                    best_winners = winners;
                }
                union(&mut all_winners, &winners);
                if best >= beta {
                    if trick.count == 0 {
                        self.stats.lead_cutoffs += 1;
                        self.stats.first_lead_cutoffs += u64::from(tried == 1);
                        self.killer_suit[self.hands[seat].count_ones() as usize] =
                            suit_of(card) as u8;
                    }
                    cut = true;
                    break;
                }
                if best > alpha {
                    alpha = best;
                }
            } else {
                if v < best {
                    best = v;
                    best_card = card;
                    best_winners = winners;
                }
                union(&mut all_winners, &winners);
                if best <= alpha {
                    if trick.count == 0 {
                        self.stats.lead_cutoffs += 1;
                        self.stats.first_lead_cutoffs += u64::from(tried == 1);
                        self.killer_suit[self.hands[seat].count_ones() as usize] =
                            suit_of(card) as u8;
                    }
                    cut = true;
                    break;
                }
                if best < beta {
                    beta = best;
                }
            }
        }

        if trick.count == 0 {
            self.lead_hint = Some(self.relative_hint(best_card));
        }
        // A cutoff bound rests on the cutoff child alone; a full sweep
        // rests on every explored child.
        let winners = if cut { best_winners } else { all_winners };
        (best, winners)
    }

    /// All four hands hold one card: play it out.
    fn last_trick(&mut self, leader: usize) -> (i32, Winners) {
        let lead_card = self.hands[leader].trailing_zeros() as usize;
        let mut winner_seat = leader;
        let mut winner_card = lead_card;
        let mut played_mask = 1u64 << lead_card;
        for d in 1..4 {
            let seat = (leader + d) & 3;
            let card = self.hands[seat].trailing_zeros() as usize;
            played_mask |= 1u64 << card;
            if self.beats(card, winner_card) {
                winner_seat = seat;
                winner_card = card;
            }
        }
        let _ = played_mask;
        let mut winners = NO_WINNERS;
        winners[suit_of(winner_card)] |= 1 << rank_of(winner_card);
        (i32::from(is_ns(winner_seat)), winners)
    }

    /// The leading hand's own consecutive top cards: in no-trump every
    /// suit counts, with opposing trumps out only the trump suit counts,
    /// and a side suit is skipped when the partner could be forced to
    /// ruff it (void there, holding nothing but trumps).
    fn leader_runs(&self, leader: usize) -> (u32, Winners) {
        let live = self.live();
        let mine = self.hands[leader];
        let mut winners = NO_WINNERS;
        if self.trump != NO_TRUMP {
            let opp = self.hands[(leader + 1) & 3] | self.hands[(leader + 3) & 3];
            if Self::suit_ranks(opp, self.trump) != 0 {
                let (q, mask) = run_from_top(
                    Self::suit_ranks(mine, self.trump),
                    Self::suit_ranks(live, self.trump),
                );
                winners[self.trump] = mask;
                return (q, winners);
            }
        }
        let partner = self.hands[(leader + 2) & 3];
        let partner_trump_bound = self.trump != NO_TRUMP
            && partner != 0
            && partner == Self::suit_ranks(partner, self.trump) << (13 * self.trump);
        let mut total = 0;
        for s in 0..4 {
            if partner_trump_bound && s != self.trump && Self::suit_ranks(partner, s) == 0 {
                continue;
            }
            let (q, mask) = run_from_top(Self::suit_ranks(mine, s), Self::suit_ranks(live, s));
            winners[s] = mask;
            total += q;
        }
        (total, winners)
    }

    /// Tricks the side on lead can bank by cashing top cards and leading
    /// low to the partner's tops, simulated explicitly. Opponents are
    /// over-approximated: a forced follow spends their lowest card of the
    /// suit, but a void discard removes nothing, so the model never
    /// assumes anything about which cards they let go. Side suits are
    /// only cashed once the modeled opponents are out of trumps; trump
    /// tops are always safe. Returns the cards the simulation depended
    /// on, for proof bookkeeping.
    fn cash_tricks(&self, leader: usize) -> (u32, Winners) {
        let mut hands = self.hands;
        let mut turn = leader;
        let mut tricks = 0u32;
        let mut touched = NO_WINNERS;
        for sid in 0..4 {
            let lv = Self::suit_ranks(self.live(), sid);
            if lv != 0 {
                touched[sid] |= 1 << (63 - lv.leading_zeros());
            }
        }
        loop {
            let partner = (turn + 2) & 3;
            let opp_a = (turn + 1) & 3;
            let opp_b = (turn + 3) & 3;
            let live = hands[0] | hands[1] | hands[2] | hands[3];
            if hands[turn] == 0 {
                break;
            }
            let opp_trumps = self.trump != NO_TRUMP
                && Self::suit_ranks(hands[opp_a] | hands[opp_b], self.trump) != 0;

            // A suit whose live top the current hand holds, preferring a
            // trump draw while the opponents still hold trumps.
            let mut cash_suit = None;
            for s in 0..4 {
                if opp_trumps && s != self.trump {
                    continue;
                }
                let lv = Self::suit_ranks(live, s);
                if lv == 0 {
                    continue;
                }
                let top = 1u64 << (63 - lv.leading_zeros());
                if Self::suit_ranks(hands[turn], s) & top != 0 {
                    cash_suit = Some((s, top));
                    break;
                }
            }

            if let Some((s, top)) = cash_suit {
                // A partner holding nothing but trumps would be forced to
                // ruff a side-suit trick and steal the lead; stop there.
                if self.trump != NO_TRUMP && s != self.trump {
                    let p = hands[partner];
                    if p != 0
                        && Self::suit_ranks(p, s) == 0
                        && p == Self::suit_ranks(p, self.trump) << (13 * self.trump)
                    {
                        break;
                    }
                }
                hands[turn] &= !(top << (13 * s));
                touched[s] |= top as u16;
                partner_response(&mut hands[partner], s, self.trump, &mut touched);
                opponent_follow(&mut hands[opp_a], s, &mut touched);
                opponent_follow(&mut hands[opp_b], s, &mut touched);
                tricks += 1;
                continue;
            }

            // Lead low toward the partner's top card; only the trump suit
            // qualifies while the opponents hold trumps.
            let mut transferred = false;
            for s in 0..4 {
                if opp_trumps && s != self.trump {
                    continue;
                }
                let lv = Self::suit_ranks(live, s);
                if lv == 0 {
                    continue;
                }
                let top = 1u64 << (63 - lv.leading_zeros());
                let my = Self::suit_ranks(hands[turn], s);
                if my != 0 && Self::suit_ranks(hands[partner], s) & top != 0 {
                    let low = 1u64 << my.trailing_zeros();
                    hands[turn] &= !(low << (13 * s));
                    hands[partner] &= !(top << (13 * s));
                    touched[s] |= (low | top) as u16;
                    opponent_follow(&mut hands[opp_a], s, &mut touched);
                    opponent_follow(&mut hands[opp_b], s, &mut touched);
                    tricks += 1;
                    turn = partner;
                    transferred = true;
                    break;
                }
            }
            if !transferred {
                break;
            }
        }

        // Convert touched cards to winner masks over the original live set.
        let live = self.live();
        let mut winners = NO_WINNERS;
        for s in 0..4 {
            if touched[s] != 0 {
                let lowest = touched[s].trailing_zeros();
                winners[s] = (Self::suit_ranks(live, s) as u16) & !((1u16 << lowest) - 1);
            }
        }
        (tricks, winners)
    }

    /// Maps a card to its relative hint encoding at the current position.
    fn relative_hint(&self, card: usize) -> u8 {
        let suit = suit_of(card);
        let live = Self::suit_ranks(self.live(), suit);
        let above = (live >> (rank_of(card) + 1)).count_ones() as u8;
        ((suit as u8) << 4) | above
    }

    /// Maps a hint back to a concrete card at the current position.
    fn hint_card(&self, hint: u8) -> Option<usize> {
        if hint == NO_HINT {
            return None;
        }
        let suit = (hint >> 4) as usize;
        let above = hint & 0xF;
        let mut live = Self::suit_ranks(self.live(), suit);
        if live.count_ones() <= above as u32 {
            return None;
        }
        for _ in 0..above {
            live &= !(1u64 << (63 - live.leading_zeros()));
        }
        let rank = (63 - live.leading_zeros()) as usize;
        Some(suit * 13 + rank)
    }

    /// Equivalence-collapsed, heuristically ordered candidate plays.
    fn candidate_plays(
        &self,
        seat: usize,
        trick: &TrickState,
        hint: u8,
        out: &mut [u8; 13],
    ) -> usize {
        let hand = self.hands[seat];
        let live = self.live() | trick.trick_mask;
        let follow = trick.count > 0 && Self::suit_ranks(hand, trick.lead_suit) != 0;

        let hint_card = if trick.count == 0 {
            self.hint_card(hint).filter(|&c| hand & (1u64 << c) != 0)
        } else {
            None
        };

        let mut scored = [(0i32, 0u8); 13];
        let mut n = 0;
        for s in 0..4 {
            if follow && s != trick.lead_suit {
                continue;
            }
            let ranks = Self::suit_ranks(hand, s);
            if ranks == 0 {
                continue;
            }
            let mut keep = collapse_runs(ranks, Self::suit_ranks(live, s));
            while keep != 0 {
                let rank = (63 - keep.leading_zeros()) as usize;
                keep &= !(1u64 << rank);
                let card = s * 13 + rank;
                let score = if Some(card) == hint_card {
                    i32::MAX
                } else if self.cfg.move_ordering {
                    self.move_score(seat, trick, card, live)
                } else {
                    0
                };
                scored[n] = (score, card as u8);
                n += 1;
            }
        }
        debug_assert!(n > 0, "player must hold a card");
        if self.cfg.move_ordering || hint_card.is_some() {
            scored[..n].sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        }
        for (i, &(_, c)) in scored[..n].iter().enumerate() {
            out[i] = c;
        }
        n
    }

    fn move_score(&self, seat: usize, trick: &TrickState, card: usize, live: u64) -> i32 {
        let suit = suit_of(card);
        let rank = rank_of(card) as i32;
        let live_ranks = Self::suit_ranks(live, suit);
        let top_live = (63 - live_ranks.leading_zeros()) as i32;

        if trick.count == 0 {
            // Leading: draw trumps from strength, run established suits,
            // lead low toward the partner's tops, keep other low leads
            // late.
            let mine = Self::suit_ranks(self.hands[seat], suit);
            let partner = Self::suit_ranks(self.hands[(seat + 2) & 3], suit);
            let side = mine | partner;
            let opps = live_ranks & !side;
            let my_len = mine.count_ones() as i32;
            // Consecutive top cards the partnership holds in this suit.
            let mut run = 0i32;
            let mut lv = live_ranks;
            while lv != 0 {
                let bit = 1u64 << (63 - lv.leading_zeros());
                if side & bit == 0 {
                    break;
                }
                run += 1;
                lv &= !bit;
            }
            let killer =
                self.killer_suit[self.hands[seat].count_ones() as usize] == suit as u8;
            let mut score = if rank == top_live {
                // Master: prefer long, well-stocked suits; drawing trumps
                // from strength comes first of all.
                let trump_draw = suit == self.trump
                    && opps != 0
                    && side.count_ones() >= opps.count_ones();
                200 + 4 * run + my_len + if trump_draw { 120 } else { 0 }
            } else if partner != 0 && (63 - partner.leading_zeros()) as i32 == top_live {
                // Low toward the partner's master.
                100 + (12 - rank)
            } else if opps == 0 && partner != 0 {
                // Opponents are out: any card reaches the partnership.
                60 + (12 - rank)
            } else {
                40 - rank
            };
            if killer {
                score += 90;
            }
            score
        } else {
            let wins = self.beats(card, trick.winner_card);
            let partner_winning = trick.winner_seat == ((seat + 2) & 3);
            match trick.count {
                1 => {
                    // Second hand low; winning options after.
                    if wins {
                        60 - rank
                    } else {
                        80 - rank
                    }
                }
                2 => {
                    // Third hand high when the opponents are winning.
                    if partner_winning {
                        80 - rank
                    } else if wins {
                        150 - rank
                    } else {
                        70 - rank
                    }
                }
                _ => {
                    // Fourth hand: win as cheaply as possible, else dump.
                    if partner_winning {
                        90 - rank
                    } else if wins {
                        150 - rank
                    } else {
                        70 - rank
                    }
                }
            }
        }
    }
}

/// The partnership's own response to a lead of `suit`: follow with the
/// lowest card of the suit, else discard the lowest non-trump card. The
/// trump-only-void case is excluded by the caller.
fn partner_response(hand: &mut u64, suit: usize, trump: usize, touched: &mut Winners) {
    if *hand == 0 {
        return;
    }
    let follow = (*hand >> (13 * suit)) & SUIT_MASK;
    let card = if follow != 0 {
        13 * suit + follow.trailing_zeros() as usize
    } else {
        let non_trump = if trump == NO_TRUMP {
            *hand
        } else {
            *hand & !(SUIT_MASK << (13 * trump))
        };
        debug_assert!(non_trump != 0, "forced partner ruff must stop the walk");
        non_trump.trailing_zeros() as usize
    };
    touched[card / 13] |= 1 << (card % 13);
    *hand &= !(1u64 << card);
}

/// A modeled opponent only ever provably loses a card when forced to
/// follow suit (their lowest); a void discard removes nothing, keeping
/// their modeled holding a superset of every real possibility.
fn opponent_follow(hand: &mut u64, suit: usize, touched: &mut Winners) {
    let follow = (*hand >> (13 * suit)) & SUIT_MASK;
    if follow != 0 {
        let card = 13 * suit + follow.trailing_zeros() as usize;
        touched[card / 13] |= 1 << (card % 13);
        *hand &= !(1u64 << card);
    }
}

/// Packs the 2-bit owner codes of the live cards of one suit, top card in
/// the highest used bit pair. Owner codes: hand 1 -> 1, hand 2 -> 2,
/// hand 3 -> 3, hand 0 -> 0.
#[inline]
fn pack_owners(h1: u64, h2: u64, h3: u64, live: u64) -> u32 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("bmi2") {
            // Spread each mask to 2-bit lanes, sum the disjoint codes and
            // compact the live lanes; lane order keeps the top card high.
            unsafe {
                use std::arch::x86_64::_pext_u64;
                let full = spread(h1) | spread(h2) << 1 | spread(h3) | spread(h3) << 1;
                let lanes = spread(live) | spread(live) << 1;
                return _pext_u64(full, lanes) as u32;
            }
        }
    }
    let mut packed = 0u32;
    let mut l = live;
    while l != 0 {
        let top = 63 - l.leading_zeros();
        let owner = ((h1 >> top) & 1) + 2 * ((h2 >> top) & 1) + 3 * ((h3 >> top) & 1);
        packed = packed << 2 | owner as u32;
        l &= !(1u64 << top);
    }
    packed
}

/// Interleaves a 13-bit mask with zero bits (bit k moves to bit 2k).
#[inline]
fn spread(x: u64) -> u64 {
    let mut v = x & 0x1FFF;
    v = (v | v << 16) & 0x0000_FFFF_0000_FFFF;
    v = (v | v << 8) & 0x00FF_00FF_00FF_00FF;
    v = (v | v << 4) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | v << 2) & 0x3333_3333_3333_3333;
    (v | v << 1) & 0x5555_5555_5555_5555
}

/// Number of consecutive top cards of `live` present in `mine`, and the
/// mask of those cards.
fn run_from_top(mine: u64, live: u64) -> (u32, u16) {
    let mut count = 0;
    let mut mask = 0u16;
    let mut l = live;
    while l != 0 {
        let bit = 1u64 << (63 - l.leading_zeros());
        if mine & bit == 0 {
            break;
        }
        count += 1;
        mask |= bit as u16;
        l &= !bit;
    }
    (count, mask)
}

/// Keeps the highest card of each run of `mine` that is contiguous within
/// `live`; lower members of a run are interchangeable and dropped.
fn collapse_runs(mine: u64, live: u64) -> u64 {
    let mut keep = 0u64;
    let mut prev_in_hand = false;
    let mut l = live;
    while l != 0 {
        let bit = 1u64 << (63 - l.leading_zeros());
        let in_hand = mine & bit != 0;
        if in_hand && !prev_in_hand {
            keep |= bit;
        }
        prev_in_hand = in_hand;
        l &= !bit;
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

#[test]
    fn owner_packing_matches_reference() {
        // pack_owners must agree with a plain reference for random masks.
        let mut state = 0x12345678u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            state >> 40
        };
        for _ in 0..2000 {
            let a = next() & 0x1FFF;
            let b = next() & 0x1FFF & !a;
            let c = next() & 0x1FFF & !(a | b);
            let d = next() & 0x1FFF & !(a | b | c);
            let live = a | b | c | d;
            let mut expect = 0u32;
            let mut l = live;
            while l != 0 {
                let top = 63 - l.leading_zeros();
                let owner = ((a >> top) & 1) + 2 * ((b >> top) & 1) + 3 * ((c >> top) & 1);
                expect = expect << 2 | owner as u32;
                l &= !(1u64 << top);
            }
            assert_eq!(pack_owners(a, b, c, live), expect);
        }
    }

    #[test]
    fn collapse_keeps_run_tops() {
        // live A K Q J, mine K Q: K and Q are one run, keep K.
        let a = 1u64 << 12;
        let k = 1u64 << 11;
        let q = 1u64 << 10;
        let j = 1u64 << 9;
        assert_eq!(collapse_runs(k | q, a | k | q | j), k);
        assert_eq!(collapse_runs(a | q, a | k | q), a | q);
        assert_eq!(collapse_runs(a | k | q, a | k | q), a);
    }
}
