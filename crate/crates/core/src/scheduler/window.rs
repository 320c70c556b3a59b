use std::collections::{BTreeSet, HashMap};

use super::{ScheduleConfig, StreamSlot};
use crate::partition::LocalNonZero;

/// Scheduled slot stream of one bin. Slot index equals issue cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledStream {
    slots: Vec<StreamSlot>,
    payload_count: usize,
}

impl ScheduledStream {
    pub fn from_slots(slots: Vec<StreamSlot>) -> Self {
        let payload_count = slots.iter().filter(|s| !s.is_bubble()).count();
        Self {
            slots,
            payload_count,
        }
    }

    pub fn from_words(words: &[u64]) -> Self {
        Self::from_slots(words.iter().map(|&w| super::decode_nonzero(w)).collect())
    }

    pub fn slots(&self) -> &[StreamSlot] {
        &self.slots
    }

    /// Cycles needed to issue the whole stream.
    pub fn makespan(&self) -> usize {
        self.slots.len()
    }

    pub fn payload_count(&self) -> usize {
        self.payload_count
    }

    pub fn bubbles(&self) -> usize {
        self.slots.len() - self.payload_count
    }

    /// Issue cycle of each payload, in slot order.
    pub fn placements(&self) -> impl Iterator<Item = (usize, &LocalNonZero)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(c, s)| s.payload().map(|nz| (c, nz)))
    }
}

/// Greedy out-of-order placement.
///
/// Non-zeros are visited in the given (column-major) order; each takes the
/// earliest free cycle at least `d` cycles after the previous non-zero of the
/// same row. Unfilled cycles below the frontier are bubbles.
pub fn schedule_window(bin: &[LocalNonZero], cfg: ScheduleConfig) -> ScheduledStream {
    let d = cfg.d.max(1);
    let mut slots: Vec<Option<LocalNonZero>> = Vec::with_capacity(bin.len());
    let mut holes = BTreeSet::new();
    let mut last_cycle: HashMap<u32, usize> = HashMap::new();

    for &nz in bin {
        let earliest = last_cycle.get(&nz.local_row).map_or(0, |&c| c + d);
        let cycle = match holes.range(earliest..).next().copied() {
            Some(hole) => {
                holes.remove(&hole);
                slots[hole] = Some(nz);
                hole
            }
            None => {
                let cycle = earliest.max(slots.len());
                holes.extend(slots.len()..cycle);
                slots.resize(cycle, None);
                slots.push(Some(nz));
                cycle
            }
        };
        last_cycle.insert(nz.local_row, cycle);
    }

    ScheduledStream {
        payload_count: bin.len(),
        slots: slots
            .into_iter()
            .map(|s| s.map_or(StreamSlot::Bubble, StreamSlot::Payload))
            .collect(),
    }
}

fn in_order_cycles<'a>(order: impl Iterator<Item = &'a LocalNonZero>, d: usize) -> usize {
    let mut last_cycle: HashMap<u32, usize> = HashMap::new();
    let mut next = 0usize;
    let mut end = 0usize;
    for nz in order {
        let issue = last_cycle
            .get(&nz.local_row)
            .map_or(next, |&c| next.max(c + d));
        last_cycle.insert(nz.local_row, issue);
        next = issue + 1;
        end = next;
    }
    end
}

/// Cycles for issuing the bin strictly in the given column-major order,
/// stalling on every RAW hazard.
pub fn in_order_colmajor_cycles(bin: &[LocalNonZero], cfg: ScheduleConfig) -> usize {
    in_order_cycles(bin.iter(), cfg.d.max(1))
}

/// Like [`in_order_colmajor_cycles`] but visiting the bin row-major.
pub fn in_order_rowmajor_cycles(bin: &[LocalNonZero], cfg: ScheduleConfig) -> usize {
    let mut sorted: Vec<&LocalNonZero> = bin.iter().collect();
    sorted.sort_by_key(|nz| (nz.local_row, nz.local_col));
    in_order_cycles(sorted.into_iter(), cfg.d.max(1))
}
