//! Binary distance database and sphere-table exporters.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes  "GL2CAYDB"
//! version    u32
//! n          u8
//! spec       u8       0 = sym, 1 = sym-ti
//! flags      u8       bit 0 complete, bit 1 last level complete
//! reserved   u8
//! entries    u64
//! levels     u32
//! entry      u64 key, u8 distance      (repeated, keys strictly increasing)
//! level      u64 orbit count, u32 length, decimal sphere size (repeated)
//! ```

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use num_bigint::BigUint;
use serde_json::json;

use crate::bfs::{DistanceTable, ExplorationResult};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::isometry::{canonicalize, IsometrySpec};

pub const MAGIC: &[u8; 8] = b"GL2CAYDB";
pub const VERSION: u32 = 1;
const HEADER_LEN: u64 = 28;
const ENTRY_LEN: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: usize,
    pub spec: IsometrySpec,
    pub complete: bool,
    pub last_level_complete: bool,
    pub entries: u64,
    pub levels: u32,
}

impl Header {
    fn encode(&self) -> [u8; HEADER_LEN as usize] {
        let mut h = [0u8; HEADER_LEN as usize];
        h[..8].copy_from_slice(MAGIC);
        h[8..12].copy_from_slice(&VERSION.to_le_bytes());
        h[12] = self.n as u8;
        h[13] = self.spec.tag();
        h[14] = u8::from(self.complete) | u8::from(self.last_level_complete) << 1;
        h[16..24].copy_from_slice(&self.entries.to_le_bytes());
        h[24..28].copy_from_slice(&self.levels.to_le_bytes());
        h
    }

    fn decode(h: &[u8]) -> Result<Self> {
        if h.len() < HEADER_LEN as usize {
            return Err(Error::Format("truncated header".into()));
        }
        if &h[..8] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u32::from_le_bytes(h[8..12].try_into().unwrap());
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let n = h[12] as usize;
        if n == 0 || n > crate::gf2::MAX_ORDER {
            return Err(Error::Format(format!("order {n} out of range")));
        }
        if h[14] & !3 != 0 {
            return Err(Error::Format(format!("unknown flags {:#x}", h[14])));
        }
        Ok(Self {
            n,
            spec: IsometrySpec::from_tag(h[13]).map_err(|e| Error::Format(e.to_string()))?,
            complete: h[14] & 1 != 0,
            last_level_complete: h[14] & 2 != 0,
            entries: u64::from_le_bytes(h[16..24].try_into().unwrap()),
            levels: u32::from_le_bytes(h[24..28].try_into().unwrap()),
        })
    }
}

pub fn to_bytes(res: &ExplorationResult) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN as usize + res.dist.len() * ENTRY_LEN as usize);
    write_to(res, &mut out).expect("writing to a Vec cannot fail");
    out
}

fn write_to<W: Write>(res: &ExplorationResult, w: &mut W) -> std::io::Result<()> {
    let header = Header {
        n: res.n,
        spec: res.spec,
        complete: res.complete,
        last_level_complete: res.last_level_complete,
        entries: res.dist.len() as u64,
        levels: res.sphere_sizes.len() as u32,
    };
    w.write_all(&header.encode())?;
    for (key, d) in res.dist.iter() {
        w.write_all(&key.to_le_bytes())?;
        w.write_all(&[d])?;
    }
    for (count, size) in res.orbit_counts.iter().zip(&res.sphere_sizes) {
        let s = size.to_str_radix(10);
        w.write_all(&count.to_le_bytes())?;
        w.write_all(&(s.len() as u32).to_le_bytes())?;
        w.write_all(s.as_bytes())?;
    }
    Ok(())
}

pub fn save(res: &ExplorationResult, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_to(res, &mut w)?;
    w.flush()?;
    Ok(())
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Format(format!("truncated at byte {}", self.pos)))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn from_bytes(buf: &[u8]) -> Result<ExplorationResult> {
    let header = Header::decode(buf)?;
    let mut cur = Cursor { buf, pos: HEADER_LEN as usize };
    let count = usize::try_from(header.entries).map_err(|_| Error::Format("entry count overflow".into()))?;
    if count as u64 * ENTRY_LEN > buf.len() as u64 {
        return Err(Error::Format("truncated entry table".into()));
    }
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let key = cur.u64()?;
        let d = cur.take(1)?[0];
        entries.push((key, d));
    }
    let dist = DistanceTable::from_sorted(entries).map_err(|e| Error::Format(e.to_string()))?;
    let mut orbit_counts = Vec::new();
    let mut sphere_sizes = Vec::new();
    for _ in 0..header.levels {
        orbit_counts.push(cur.u64()?);
        let len = cur.u32()? as usize;
        let digits = cur.take(len)?;
        let size = std::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse::<BigUint>().ok())
            .ok_or_else(|| Error::Format("bad sphere size".into()))?;
        sphere_sizes.push(size);
    }
    if cur.pos != buf.len() {
        return Err(Error::Format(format!("{} trailing bytes", buf.len() - cur.pos)));
    }
    if let Some(&(_, d)) = dist.entries().iter().find(|&&(_, d)| d as usize >= sphere_sizes.len()) {
        return Err(Error::Format(format!("distance {d} beyond recorded levels")));
    }
    Ok(ExplorationResult {
        n: header.n,
        spec: header.spec,
        dist,
        sphere_sizes,
        orbit_counts,
        complete: header.complete,
        last_level_complete: header.last_level_complete,
    })
}

pub fn load(path: &Path) -> Result<ExplorationResult> {
    from_bytes(&std::fs::read(path)?)
}

pub fn read_header(path: &Path) -> Result<Header> {
    let mut h = [0u8; HEADER_LEN as usize];
    File::open(path)?.read_exact(&mut h).map_err(|_| Error::Format("truncated header".into()))?;
    Header::decode(&h)
}

/// Distance of `m` looked up by binary search over the file's entry table,
/// without loading it. `None` means the key is absent.
pub fn lookup_in_file(path: &Path, m: &BitMatrix) -> Result<Option<u8>> {
    let mut f = File::open(path)?;
    let mut h = [0u8; HEADER_LEN as usize];
    f.read_exact(&mut h).map_err(|_| Error::Format("truncated header".into()))?;
    let header = Header::decode(&h)?;
    if m.order() != header.n {
        return Err(Error::DimensionMismatch { left: m.order(), right: header.n });
    }
    let key = canonicalize(m, header.spec).key.bits();
    let (mut lo, mut hi) = (0u64, header.entries);
    let mut rec = [0u8; ENTRY_LEN as usize];
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        f.seek(SeekFrom::Start(HEADER_LEN + mid * ENTRY_LEN))?;
        f.read_exact(&mut rec).map_err(|_| Error::Format("truncated entry table".into()))?;
        let k = u64::from_le_bytes(rec[..8].try_into().unwrap());
        match k.cmp(&key) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Ok(Some(rec[8])),
        }
    }
    Ok(None)
}

/// Checks that every stored key is its own canonical form. Returns the
/// number of keys checked.
pub fn validate_canonical(res: &ExplorationResult) -> Result<usize> {
    for (key, _) in res.dist.iter() {
        let m = BitMatrix::from_bits(res.n, key).map_err(|e| Error::Format(e.to_string()))?;
        if canonicalize(&m, res.spec).key != m {
            return Err(Error::Inconsistent(format!("stored key {key:#x} is not canonical")));
        }
    }
    Ok(res.dist.len())
}

/// `d,orbits,elements` rows.
pub fn sphere_table_csv(res: &ExplorationResult) -> String {
    let mut out = String::from("d,orbits,elements\n");
    for (d, (o, s)) in res.orbit_counts.iter().zip(&res.sphere_sizes).enumerate() {
        let _ = writeln!(out, "{d},{o},{s}");
    }
    out
}

pub fn sphere_table_json(res: &ExplorationResult) -> serde_json::Value {
    let levels: Vec<serde_json::Value> = res
        .orbit_counts
        .iter()
        .zip(&res.sphere_sizes)
        .enumerate()
        .map(|(d, (o, s))| json!({ "d": d, "orbits": o, "elements": s.to_string() }))
        .collect();
    json!({
        "n": res.n,
        "isometry": res.spec,
        "complete": res.complete,
        "last_level_complete": res.last_level_complete,
        "levels": levels,
    })
}
