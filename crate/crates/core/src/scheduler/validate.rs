use std::cmp::Ordering;
use std::collections::HashMap;

use super::{ScheduleConfig, ScheduledStream};
use crate::partition::LocalNonZero;

/// Two same-row payloads closer than the RAW distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawViolation {
    pub row: u32,
    pub first_cycle: usize,
    pub second_cycle: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<RawViolation>,
    /// Bin entries absent from the stream.
    pub missing: usize,
    /// Stream payloads absent from the bin.
    pub unexpected: usize,
    pub trailing_bubble: bool,
    pub makespan: usize,
    pub bubbles: usize,
    pub payload_count: usize,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.missing == 0 && self.unexpected == 0 && !self.trailing_bubble
    }
}

/// Checks a stream against its bin: RAW distance, payload multiset and the
/// no-trailing-bubble rule.
pub fn validate_schedule(
    stream: &ScheduledStream,
    bin: &[LocalNonZero],
    cfg: ScheduleConfig,
) -> ValidationReport {
    let mut report = ValidationReport {
        makespan: stream.makespan(),
        bubbles: stream.bubbles(),
        payload_count: stream.payload_count(),
        trailing_bubble: stream.slots().last().is_some_and(|s| s.is_bubble()),
        ..Default::default()
    };

    // any too-close pair implies a too-close consecutive pair of that row
    let mut last: HashMap<u32, usize> = HashMap::new();
    for (cycle, nz) in stream.placements() {
        if let Some(prev) = last.insert(nz.local_row, cycle) {
            if cycle - prev < cfg.d {
                report.violations.push(RawViolation {
                    row: nz.local_row,
                    first_cycle: prev,
                    second_cycle: cycle,
                });
            }
        }
    }

    let mut got: Vec<_> = stream.placements().map(|(_, nz)| nz.key()).collect();
    let mut want: Vec<_> = bin.iter().map(LocalNonZero::key).collect();
    got.sort_unstable();
    want.sort_unstable();
    let (mut i, mut j) = (0, 0);
    while i < got.len() && j < want.len() {
        match got[i].cmp(&want[j]) {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                report.unexpected += 1;
                i += 1;
            }
            Ordering::Greater => {
                report.missing += 1;
                j += 1;
            }
        }
    }
    report.unexpected += got.len() - i;
    report.missing += want.len() - j;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheduler::{schedule_window, StreamSlot};

    #[test]
    fn flags_close_same_row_pair() {
        let a = LocalNonZero::new(5, 0, 1.0);
        let b = LocalNonZero::new(5, 1, 2.0);
        let stream = ScheduledStream::from_slots(vec![
            StreamSlot::Payload(a),
            StreamSlot::Bubble,
            StreamSlot::Payload(b),
        ]);
        let report = validate_schedule(&stream, &[a, b], ScheduleConfig { d: 4 });
        assert_eq!(
            report.violations,
            vec![RawViolation { row: 5, first_cycle: 0, second_cycle: 2 }]
        );
        assert!(!report.is_clean());
    }

    #[test]
    fn flags_multiset_and_trailing_bubble() {
        let a = LocalNonZero::new(1, 0, 1.0);
        let b = LocalNonZero::new(2, 0, 1.0);
        let stream =
            ScheduledStream::from_slots(vec![StreamSlot::Payload(a), StreamSlot::Bubble]);
        let report = validate_schedule(&stream, &[b], ScheduleConfig { d: 1 });
        assert_eq!((report.missing, report.unexpected), (1, 1));
        assert!(report.trailing_bubble);
    }

    #[test]
    fn greedy_schedules_validate() {
        let bin = crate::scheduler::example_bin();
        let cfg = ScheduleConfig { d: 4 };
        let r = validate_schedule(&schedule_window(&bin, cfg), &bin, cfg);
        assert!(r.is_clean());
        assert_eq!((r.makespan, r.bubbles, r.payload_count), (11, 1, 10));
    }
}
