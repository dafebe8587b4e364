use std::sync::atomic::{AtomicU64, Ordering};

/// Fixed-size table of exact values, shared between threads.
///
/// Each slot is one `AtomicU64` holding the key's high bits and a 2-bit
/// value code, so a read never observes a key paired with another key's
/// value. Keys are first run through a bijective mixer; the low bits pick
/// the slot and the remaining bits are stored. Replacement is always-replace.
pub struct TranspositionTable {
    slots: Vec<AtomicU64>,
    log2: u32,
}

const EMPTY: u64 = 0;

impl TranspositionTable {
    pub fn new(log2: u32) -> Self {
        let log2 = log2.clamp(2, 30);
        TranspositionTable {
            slots: (0..1usize << log2).map(|_| AtomicU64::new(EMPTY)).collect(),
            log2,
        }
    }

    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    fn split(&self, key: u64) -> (usize, u64) {
        let mixed = mix(key);
        let index = (mixed & ((1u64 << self.log2) - 1)) as usize;
        (index, mixed >> self.log2)
    }

    /// Value from the mover's perspective: -1, 0 or 1.
    #[inline]
    pub fn get(&self, key: u64) -> Option<i8> {
        let (index, tag) = self.split(key);
        let entry = self.slots[index].load(Ordering::Relaxed);
        if entry == EMPTY || entry >> 2 != tag {
            return None;
        }
        Some((entry & 3) as i8 - 2)
    }

    #[inline]
    pub fn insert(&self, key: u64, value: i8) {
        debug_assert!((-1..=1).contains(&value));
        let (index, tag) = self.split(key);
        self.slots[index].store((tag << 2) | (value + 2) as u64, Ordering::Relaxed);
    }

    pub fn occupied(&self) -> usize {
        self.slots
            .iter()
            .filter(|s| s.load(Ordering::Relaxed) != EMPTY)
            .count()
    }
}

/// Invertible 64-bit mixer (xorshift-multiply rounds).
#[inline]
fn mix(mut x: u64) -> u64 {
    x ^= x >> 31;
    x = x.wrapping_mul(0x7fb5_d329_728e_a185);
    x ^= x >> 27;
    x = x.wrapping_mul(0x81da_def4_bc2d_d44d);
    x ^= x >> 33;
    x
}
