//! Binary stream file, all integers little-endian:
//!
//! ```text
//! "SXTS" | version u32 | P u32 | num_windows u32 | K0 u32 | D u32
//! per PE: Q as u32 x (num_windows + 1), then Q[last] slot words as u64
//! ```

use std::io::Write;

use super::{PeStream, PointerList, ScheduledMatrix};
use crate::config::COL_BITS;
use crate::error::{Error, Result};

pub const STREAM_MAGIC: [u8; 4] = *b"SXTS";
pub const STREAM_VERSION: u32 = 1;

const HEADER_LEN: usize = 24;

fn to_u32(what: &str, v: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::StreamFormat(format!("{what} = {v} does not fit in u32")))
}

pub fn write_stream_file<W: Write>(mut w: W, sm: &ScheduledMatrix) -> Result<()> {
    let io = |e| Error::io("<stream>", e);
    let mut header = Vec::with_capacity(HEADER_LEN);
    header.extend_from_slice(&STREAM_MAGIC);
    for (what, v) in [
        ("version", STREAM_VERSION as usize),
        ("P", sm.p()),
        ("num_windows", sm.num_windows()),
        ("K0", sm.k0()),
        ("D", sm.d()),
    ] {
        header.extend_from_slice(&to_u32(what, v)?.to_le_bytes());
    }
    w.write_all(&header).map_err(io)?;
    for pe in sm.pes() {
        let mut buf = Vec::with_capacity(4 * (sm.num_windows() + 1) + 8 * pe.words().len());
        for &q in pe.pointers().as_slice() {
            buf.extend_from_slice(&to_u32("Q entry", q)?.to_le_bytes());
        }
        for &word in pe.words() {
            buf.extend_from_slice(&word.to_le_bytes());
        }
        w.write_all(&buf).map_err(io)?;
    }
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let remaining = self.bytes.len() - self.pos;
        if n > remaining {
            return Err(Error::StreamFormat(format!(
                "truncated {what}: need {n} bytes at offset {}, {remaining} left",
                self.pos
            )));
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

/// Parses a stream file, rejecting anything structurally inconsistent.
pub fn read_stream_file(bytes: &[u8]) -> Result<ScheduledMatrix> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.take(4, "magic")?;
    if magic != STREAM_MAGIC {
        return Err(Error::StreamFormat(format!("bad magic {magic:02x?}")));
    }
    let version = cur.u32("version")?;
    if version != STREAM_VERSION {
        return Err(Error::StreamFormat(format!("unsupported version {version}")));
    }
    let p = cur.u32("P")? as usize;
    let num_windows = cur.u32("num_windows")? as usize;
    let k0 = cur.u32("K0")? as usize;
    let d = cur.u32("D")? as usize;
    if p == 0 {
        return Err(Error::StreamFormat("P is 0".into()));
    }
    if k0 == 0 || k0 > 1 << COL_BITS {
        return Err(Error::StreamFormat(format!("K0 = {k0} out of range")));
    }
    if d == 0 {
        return Err(Error::StreamFormat("D is 0".into()));
    }
    let q_bytes = num_windows
        .checked_add(1)
        .and_then(|n| n.checked_mul(4))
        .ok_or_else(|| Error::StreamFormat("num_windows overflows".into()))?;

    let mut pes = Vec::new();
    for pe in 0..p {
        let raw_q = cur.take(q_bytes, "pointer list")?;
        let q: Vec<usize> = raw_q
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
            .collect();
        let q = PointerList::new(q)
            .map_err(|e| Error::StreamFormat(format!("PE {pe}: {e}")))?;
        let words_len = q
            .total()
            .checked_mul(8)
            .ok_or_else(|| Error::StreamFormat("stream length overflows".into()))?;
        let words = cur
            .take(words_len, "slot words")?
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        pes.push(PeStream::new(words, q)?);
    }
    if cur.pos != bytes.len() {
        return Err(Error::StreamFormat(format!(
            "{} trailing bytes after last PE",
            bytes.len() - cur.pos
        )));
    }
    ScheduledMatrix::new(k0, d, num_windows, pes)
}
