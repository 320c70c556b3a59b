use super::{schedule_window, ScheduleConfig, ScheduledStream};
use crate::error::{Error, Result};
use crate::partition::PartitionedA;

/// Start offset of every window stream inside a PE's concatenated stream,
/// plus the total length as the final entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointerList {
    q: Vec<usize>,
}

impl PointerList {
    /// Validates `q[0] = 0` and monotonicity.
    pub fn new(q: Vec<usize>) -> Result<Self> {
        match q.first() {
            None => return Err(Error::PointerList("pointer list is empty".into())),
            Some(&first) if first != 0 => {
                return Err(Error::PointerList(format!("first entry is {first}, not 0")))
            }
            _ => {}
        }
        if let Some(j) = q.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::PointerList(format!(
                "entries decrease at window {j}: {} > {}",
                q[j],
                q[j + 1]
            )));
        }
        Ok(Self { q })
    }

    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut q = vec![0];
        for len in lengths {
            q.push(q.last().unwrap() + len);
        }
        Self { q }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.q
    }

    pub fn num_windows(&self) -> usize {
        self.q.len() - 1
    }

    pub fn total(&self) -> usize {
        *self.q.last().unwrap()
    }

    pub fn window(&self, j: usize) -> std::ops::Range<usize> {
        self.q[j]..self.q[j + 1]
    }

    pub fn window_len(&self, j: usize) -> usize {
        self.q[j + 1] - self.q[j]
    }
}

/// One PE's concatenated slot words and their pointer list.
#[derive(Debug, Clone, PartialEq)]
pub struct PeStream {
    words: Vec<u64>,
    q: PointerList,
}

impl PeStream {
    pub fn new(words: Vec<u64>, q: PointerList) -> Result<Self> {
        if q.total() != words.len() {
            return Err(Error::PointerList(format!(
                "last entry {} does not equal stream length {}",
                q.total(),
                words.len()
            )));
        }
        Ok(Self { words, q })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn pointers(&self) -> &PointerList {
        &self.q
    }

    pub fn window_words(&self, j: usize) -> &[u64] {
        &self.words[self.q.window(j)]
    }
}

/// Hardware-consumable schedule of a whole matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledMatrix {
    k0: usize,
    d: usize,
    num_windows: usize,
    pes: Vec<PeStream>,
}

impl ScheduledMatrix {
    pub fn new(k0: usize, d: usize, num_windows: usize, pes: Vec<PeStream>) -> Result<Self> {
        if pes.is_empty() {
            return Err(Error::StreamMismatch("no PE streams".into()));
        }
        if let Some(p) = pes.iter().position(|s| s.q.num_windows() != num_windows) {
            return Err(Error::PointerList(format!(
                "PE {p} has {} windows, expected {num_windows}",
                pes[p].q.num_windows()
            )));
        }
        Ok(Self {
            k0,
            d,
            num_windows,
            pes,
        })
    }

    pub fn p(&self) -> usize {
        self.pes.len()
    }

    pub fn k0(&self) -> usize {
        self.k0
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_windows(&self) -> usize {
        self.num_windows
    }

    pub fn pes(&self) -> &[PeStream] {
        &self.pes
    }

    pub fn pe(&self, p: usize) -> &PeStream {
        &self.pes[p]
    }

    /// Decodes the stream of window `j` on PE `p`.
    pub fn window_stream(&self, p: usize, j: usize) -> ScheduledStream {
        ScheduledStream::from_words(self.pes[p].window_words(j))
    }

    pub fn total_slots(&self) -> usize {
        self.pes.iter().map(|s| s.words.len()).sum()
    }
}

/// Schedules every bin and concatenates each PE's window streams in window
/// order.
pub fn schedule_matrix(pa: &PartitionedA, cfg: ScheduleConfig) -> Result<ScheduledMatrix> {
    cfg.validate()?;
    let pcfg = pa.config();
    let mut pes = Vec::with_capacity(pcfg.p);
    for p in 0..pcfg.p {
        let mut words = Vec::new();
        let mut lengths = Vec::with_capacity(pa.num_windows());
        for j in 0..pa.num_windows() {
            let stream = schedule_window(pa.bin(j, p), cfg);
            lengths.push(stream.makespan());
            for slot in stream.slots() {
                words.push(slot.to_word()?);
            }
        }
        pes.push(PeStream::new(words, PointerList::from_lengths(lengths))?);
    }
    ScheduledMatrix::new(pcfg.k0, cfg.d, pa.num_windows(), pes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partition_a, LocalNonZero, PartitionConfig};
    use crate::sparse::{random_csr, CooMatrix, CsrMatrix, coo_to_csr};

    #[test]
    fn pointer_list_from_two_windows() {
        // window 0 holds the ten-entry example, window 1 six more entries
        let mut entries: Vec<(usize, usize, f32)> = crate::scheduler::EXAMPLE_BIN
            .iter()
            .map(|&(r, c)| (r as usize, c as usize, 1.0))
            .collect();
        entries.extend([(0, 4), (1, 4), (2, 4), (3, 4), (0, 5), (1, 5)].map(|(r, c)| (r, c, 2.0)));
        let a = coo_to_csr(&CooMatrix::from_entries(4, 8, entries).unwrap());
        let pa = partition_a(&a, PartitionConfig { p: 1, n0: 8, k0: 4 }).unwrap();
        let sm = schedule_matrix(&pa, ScheduleConfig { d: 4 }).unwrap();
        assert_eq!(sm.pe(0).pointers().as_slice(), &[0, 11, 17]);
    }

    #[test]
    fn empty_matrix_has_zero_pointers() {
        let a = CsrMatrix::from_parts(5, 12, vec![0; 6], vec![], vec![]).unwrap();
        let pa = partition_a(&a, PartitionConfig { p: 2, n0: 2, k0: 4 }).unwrap();
        let sm = schedule_matrix(&pa, ScheduleConfig::default()).unwrap();
        for pe in sm.pes() {
            assert_eq!(pe.pointers().as_slice(), &[0, 0, 0, 0]);
            assert!(pe.words().is_empty());
        }
    }

    #[test]
    fn slices_decode_to_bins() {
        let a = random_csr(300, 500, 0.05, 4).unwrap();
        let pa = partition_a(&a, PartitionConfig { p: 8, n0: 8, k0: 128 }).unwrap();
        let sm = schedule_matrix(&pa, ScheduleConfig { d: 6 }).unwrap();
        for p in 0..8 {
            let q = sm.pe(p).pointers();
            assert_eq!(q.num_windows(), pa.num_windows());
            for j in 0..pa.num_windows() {
                let stream = sm.window_stream(p, j);
                let mut got: Vec<_> = stream.placements().map(|(_, nz)| nz.key()).collect();
                let mut want: Vec<_> = pa.bin(j, p).iter().map(LocalNonZero::key).collect();
                got.sort_unstable();
                want.sort_unstable();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn pointer_list_validation() {
        assert!(PointerList::new(vec![]).is_err());
        assert!(PointerList::new(vec![1, 2]).is_err());
        assert!(PointerList::new(vec![0, 3, 2]).is_err());
        let q = PointerList::new(vec![0, 3, 3, 5]).unwrap();
        assert_eq!(q.window(2), 3..5);
        assert!(PeStream::new(vec![0; 4], q).is_err());
    }
}
