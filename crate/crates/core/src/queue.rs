//! Min-heap entries with deterministic tie-breaking.

use std::cmp::Ordering;

use crate::lattice::Cost;

/// Order among queue entries with equal keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// First inserted, first out.
    #[default]
    Fifo,
    /// Last inserted, first out.
    Lifo,
}

impl std::str::FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fifo" => Ok(TieBreak::Fifo),
            "lifo" => Ok(TieBreak::Lifo),
            other => Err(format!("unknown tie-break `{other}` (expected fifo or lifo)")),
        }
    }
}

/// Hands out insertion sequence numbers whose ascending order realises the
/// chosen [`TieBreak`].
#[derive(Debug)]
pub(crate) struct Sequencer {
    next: u32,
    lifo: bool,
}

impl Sequencer {
    pub(crate) fn new(tie_break: TieBreak) -> Self {
        Sequencer {
            next: 0,
            lifo: tie_break == TieBreak::Lifo,
        }
    }

    #[inline]
    pub(crate) fn next(&mut self) -> u32 {
        let s = self.next;
        self.next += 1;
        if self.lifo {
            u32::MAX - s
        } else {
            s
        }
    }
}

/// Entry for `BinaryHeap`, reversed so the smallest `(key, seq)` pops first.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MinEntry<C> {
    pub key: C,
    pub seq: u32,
    pub index: u32,
}

impl<C: Cost> PartialEq for MinEntry<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Cost> Eq for MinEntry<C> {}

impl<C: Cost> Ord for MinEntry<C> {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .cmp_cost(&self.key)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl<C: Cost> PartialOrd for MinEntry<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
