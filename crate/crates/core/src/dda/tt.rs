//! Bounded transposition table for the double dummy search.
//!
//! Two stores with one interface:
//!
//! - positions with at most [`SHALLOW_MAX`] tricks left (the bulk of the
//!   traffic) go to an exact-key table: one entry per canonical position,
//!   bounds merged in place;
//! - deeper positions go to a second exact-key table with 128-bit keys.
//!
//! Every entry records, per suit, how many top cards its bounds depend
//! on; probers propagate those as proof dependencies so parent entries
//! pin only what mattered. Eviction prefers stale generations and
//! positions with few tricks left.

/// Relative move hint: `(suit << 4) | n` where `n` is the number of live
/// cards of the suit strictly above the card. 0x3F means no hint.
pub const NO_HINT: u8 = 0x3F;

/// Largest `remaining` handled by the exact-key store.
pub const SHALLOW_MAX: u8 = 5;

/// A probe/store context: everything the table needs to know about the
/// current position.
#[derive(Debug, Clone, Copy)]
pub struct PositionCtx {
    /// Leader (2 bits) and trump (3 bits) packed as `leader << 3 | trump`.
    pub ltr: u8,
    /// Per suit: 2-bit owner codes of the live cards, top card in the
    /// highest used bits (right-aligned sequence of `2 * count` bits).
    pub owners: [u32; 4],
    /// Live cards per suit.
    pub counts: [u8; 4],
    /// Tricks remaining.
    pub remaining: u8,
}

impl PositionCtx {
    /// Exact canonical key for shallow positions (fits 64 bits for
    /// `remaining <= 5`: 40 owner bits + 16 count bits + 5 + guard).
    fn shallow_key(&self) -> u64 {
        debug_assert!(self.remaining <= SHALLOW_MAX);
        let mut key = 1u64;
        for s in 0..4 {
            key = key << (2 * self.counts[s]) | self.owners[s] as u64;
            key = key << 4 | self.counts[s] as u64;
        }
        key << 5 | self.ltr as u64
    }

    /// Exact canonical key for any position (125 bits maximum).
    fn deep_key(&self) -> u128 {
        let mut key = 1u128;
        for s in 0..4 {
            key = key << (2 * self.counts[s]) | self.owners[s] as u128;
            key = key << 4 | self.counts[s] as u128;
        }
        key << 5 | self.ltr as u128
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Probe {
    pub lower: u8,
    pub upper: u8,
    pub best: u8,
    /// Per suit, how many top live cards the combined bounds depend on.
    pub depths: [u8; 4],
}

#[derive(Clone, Copy, Default)]
struct DeepEntry {
    key: u128,
    /// Packed per-suit prefix depths, 4 bits each.
    depths: u16,
    lower: u8,
    upper: u8,
    gen: u8,
    best: u8,
    remaining: u8,
}

fn unpack_depths(packed: u16) -> [u8; 4] {
    std::array::from_fn(|s| ((packed >> (4 * s)) & 0xF) as u8)
}

fn pack_depths(depths: [u8; 4], counts: [u8; 4]) -> u16 {
    let mut packed = 0u16;
    for s in 0..4 {
        packed |= (depths[s].min(counts[s]) as u16) << (4 * s);
    }
    packed
}

const DEEP_WINDOW: usize = 8;
const SHALLOW_WINDOW: usize = 8;

pub struct TransTable {
    deep: Vec<DeepEntry>,
    deep_mask: usize,
    shallow_keys: Vec<u64>,
    /// lower:4 | upper:4 | best:6 | depths:16 | gen:8
    shallow_meta: Vec<u64>,
    shallow_mask: usize,
    generation: u8,
}

impl TransTable {
    /// Table with `2^bits` shallow entries and half as many deep ones.
    pub fn new(bits: u32) -> TransTable {
        let shallow = 1usize << bits;
        let deep = 1usize << bits.saturating_sub(1).max(8);
        TransTable {
            deep: vec![DeepEntry::default(); deep],
            deep_mask: deep - 1,
            shallow_keys: vec![0; shallow],
            shallow_meta: vec![0; shallow],
            shallow_mask: shallow - 1,
            generation: 1,
        }
    }

    /// Starts a new search generation; entries stay probeable but become
    /// preferred eviction victims.
    pub fn new_generation(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.generation = 1;
        }
    }

    pub fn probe(&self, ctx: &PositionCtx) -> Option<Probe> {
        if ctx.remaining <= SHALLOW_MAX {
            self.probe_shallow(ctx)
        } else {
            self.probe_deep(ctx)
        }
    }

    pub fn store(&mut self, ctx: &PositionCtx, depths: [u8; 4], lower: u8, upper: u8, best: u8) {
        if ctx.remaining <= SHALLOW_MAX {
            self.store_shallow(ctx, depths, lower, upper, best);
        } else {
            self.store_deep(ctx, depths, lower, upper, best);
        }
    }

    fn shallow_index(&self, key: u64) -> usize {
        (key.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 24) as usize & self.shallow_mask
    }

    fn probe_shallow(&self, ctx: &PositionCtx) -> Option<Probe> {
        let key = ctx.shallow_key();
        let base = self.shallow_index(key);
        for d in 0..SHALLOW_WINDOW {
            let i = (base + d) & self.shallow_mask;
            if self.shallow_keys[i] == key {
                let m = self.shallow_meta[i];
                return Some(Probe {
                    lower: (m & 0xF) as u8,
                    upper: ((m >> 4) & 0xF) as u8,
                    best: ((m >> 8) & 0x3F) as u8,
                    depths: unpack_depths(((m >> 14) & 0xFFFF) as u16),
                });
            }
            if self.shallow_keys[i] == 0 {
                return None;
            }
        }
        None
    }

    fn store_shallow(
        &mut self,
        ctx: &PositionCtx,
        depths: [u8; 4],
        lower: u8,
        upper: u8,
        best: u8,
    ) {
        let key = ctx.shallow_key();
        let base = self.shallow_index(key);
        let mut victim = base & self.shallow_mask;
        let mut victim_rank = u32::MAX;
        for d in 0..SHALLOW_WINDOW {
            let i = (base + d) & self.shallow_mask;
            if self.shallow_keys[i] == key {
                let m = self.shallow_meta[i];
                let merged_lower = lower.max((m & 0xF) as u8);
                let merged_upper = upper.min(((m >> 4) & 0xF) as u8);
                debug_assert!(merged_lower <= merged_upper);
                let old_best = ((m >> 8) & 0x3F) as u8;
                let best = if best == NO_HINT { old_best } else { best };
                let old_depths = unpack_depths(((m >> 14) & 0xFFFF) as u16);
                let merged: [u8; 4] = std::array::from_fn(|s| depths[s].max(old_depths[s]));
                self.shallow_meta[i] = Self::pack_shallow(
                    merged_lower,
                    merged_upper,
                    best,
                    pack_depths(merged, ctx.counts),
                    self.generation,
                );
                return;
            }
            if self.shallow_keys[i] == 0 {
                victim = i;
                break;
            }
            let gen = ((self.shallow_meta[i] >> 30) & 0xFF) as u8;
            let rank = u32::from(gen == self.generation);
            if rank < victim_rank {
                victim_rank = rank;
                victim = i;
            }
        }
        self.shallow_keys[victim] = key;
        self.shallow_meta[victim] = Self::pack_shallow(
            lower,
            upper,
            best,
            pack_depths(depths, ctx.counts),
            self.generation,
        );
    }

    fn pack_shallow(lower: u8, upper: u8, best: u8, depths: u16, gen: u8) -> u64 {
        (lower as u64)
            | (upper as u64) << 4
            | (best as u64) << 8
            | (depths as u64) << 14
            | (gen as u64) << 30
    }

    fn deep_index(&self, key: u128) -> usize {
        let folded = (key as u64) ^ ((key >> 64) as u64);
        (folded.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 24) as usize & self.deep_mask
    }

    fn probe_deep(&self, ctx: &PositionCtx) -> Option<Probe> {
        let key = ctx.deep_key();
        let base = self.deep_index(key);
        for d in 0..DEEP_WINDOW {
            let e = &self.deep[(base + d) & self.deep_mask];
            if e.key == key {
                return Some(Probe {
                    lower: e.lower,
                    upper: e.upper,
                    best: e.best,
                    depths: unpack_depths(e.depths),
                });
            }
            if e.gen == 0 {
                return None;
            }
        }
        None
    }

    fn store_deep(&mut self, ctx: &PositionCtx, depths: [u8; 4], lower: u8, upper: u8, best: u8) {
        let key = ctx.deep_key();
        let base = self.deep_index(key);
        let mut victim = base & self.deep_mask;
        let mut victim_rank = u32::MAX;
        for d in 0..DEEP_WINDOW {
            let i = (base + d) & self.deep_mask;
            let e = &mut self.deep[i];
            if e.key == key {
                // Merge bounds for the same exact position.
                e.lower = e.lower.max(lower);
                e.upper = e.upper.min(upper);
                debug_assert!(e.lower <= e.upper);
                if best != NO_HINT {
                    e.best = best;
                }
                let old = unpack_depths(e.depths);
                let merged: [u8; 4] = std::array::from_fn(|s| depths[s].max(old[s]));
                e.depths = pack_depths(merged, ctx.counts);
                e.gen = self.generation;
                return;
            }
            if e.gen == 0 {
                victim = i;
                break;
            }
            // Deep positions are the expensive ones to recompute; prefer
            // keeping them even across generations.
            let rank = (e.remaining as u32) * 2 + u32::from(e.gen == self.generation);
            if rank < victim_rank {
                victim_rank = rank;
                victim = i;
            }
        }
        self.deep[victim] = DeepEntry {
            key,
            depths: pack_depths(depths, ctx.counts),
            lower,
            upper,
            gen: self.generation,
            best,
            remaining: ctx.remaining,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(remaining: u8, owners: [u32; 4], counts: [u8; 4]) -> PositionCtx {
        PositionCtx {
            ltr: 0b01_011,
            owners,
            counts,
            remaining,
        }
    }

    #[test]
    fn shallow_store_probe_round_trip() {
        let mut tt = TransTable::new(10);
        let c = ctx(2, 0x1111_2222, [0b1101, 0, 0b0110, 0], [2, 0, 2, 0]);
        assert!(tt.probe(&c).is_none());
        tt.store(&c, [1, 0, 0, 0], 1, 2, 7);
        let p = tt.probe(&c).unwrap();
        assert_eq!((p.lower, p.upper, p.best), (1, 2, 7));
        assert_eq!(p.depths, [1, 0, 0, 0]);
        // Same position merges bounds in place.
        tt.store(&c, [1, 0, 1, 0], 2, 2, NO_HINT);
        let p = tt.probe(&c).unwrap();
        assert_eq!((p.lower, p.upper), (2, 2));
        assert_eq!(p.depths, [1, 0, 1, 0]);
    }

    #[test]
    fn deep_positions_round_trip() {
        let mut tt = TransTable::new(10);
        let a = ctx(6, [0b01_10_11, 0, 0, 0], [3, 0, 0, 0]);
        let b = ctx(6, [0b01_11_10, 0, 0, 0], [3, 0, 0, 0]);
        tt.store(&a, [1, 0, 0, 0], 3, 5, NO_HINT);
        let p = tt.probe(&a).unwrap();
        assert_eq!((p.lower, p.upper), (3, 5));
        assert_eq!(p.depths, [1, 0, 0, 0]);
        // A different small-card layout is a different exact position.
        assert!(tt.probe(&b).is_none());
        // Bounds for the same position merge.
        tt.store(&a, [3, 0, 0, 0], 4, 6, 9);
        let p = tt.probe(&a).unwrap();
        assert_eq!((p.lower, p.upper, p.best), (4, 5, 9));
        assert_eq!(p.depths, [3, 0, 0, 0]);
    }

    #[test]
    fn shallow_keys_distinguish_positions() {
        let a = ctx(2, [0b1101, 0, 0, 0], [2, 0, 0, 0]);
        let b = ctx(2, [0b1110, 0, 0, 0], [2, 0, 0, 0]);
        assert_ne!(a.shallow_key(), b.shallow_key());
        let c = ctx(2, [0b1101, 0, 0, 0], [0, 2, 0, 0]);
        assert_ne!(a.shallow_key(), c.shallow_key());
    }
}
