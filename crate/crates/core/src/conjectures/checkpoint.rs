//! Resumable scan state.
//!
//! Layout (little endian):
//!
//! ```text
//! magic        8 bytes  "WZCKPT01"
//! conjecture   u8
//! family       u8       0 = A, 1 = B, 2 = D
//! rank         u8
//! reserved     u8
//! cap          u64      interval-size cap, u64::MAX when uncapped
//! next_top     u64      number of top elements completed (last index + 1)
//! payload_len  u32
//! payload      JSON tally accumulated so far
//! checksum     u64      FNV-1a over every preceding byte
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::ScanError;
use crate::group::{Family, GroupDescriptor};

use super::report::ConjectureId;
use super::scan::Tally;

const MAGIC: &[u8; 8] = b"WZCKPT01";
const HEADER_LEN: usize = 8 + 4 + 8 + 8 + 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub conjecture: ConjectureId,
    pub group: GroupDescriptor,
    pub cap: Option<usize>,
    pub next_top: u64,
    pub tally: Tally,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn family_code(f: Family) -> u8 {
    match f {
        Family::A => 0,
        Family::B => 1,
        Family::D => 2,
    }
}

impl Checkpoint {
    pub fn encode(&self) -> Vec<u8> {
        let payload = serde_json::to_vec(&self.tally).expect("tally serializes");
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + 8);
        out.extend_from_slice(MAGIC);
        out.push(self.conjecture.code());
        out.push(family_code(self.group.family));
        out.push(self.group.rank as u8);
        out.push(0);
        out.extend_from_slice(&self.cap.map_or(u64::MAX, |c| c as u64).to_le_bytes());
        out.extend_from_slice(&self.next_top.to_le_bytes());
        out.extend_from_slice(&(payload.len() as u32).to_le_bytes());
        out.extend_from_slice(&payload);
        let sum = fnv1a(&out);
        out.extend_from_slice(&sum.to_le_bytes());
        out
    }

    /// Decodes a checkpoint and checks that it belongs to the given scan.
    pub fn decode(
        bytes: &[u8],
        conjecture: ConjectureId,
        group: GroupDescriptor,
        cap: Option<usize>,
    ) -> Result<Self, ScanError> {
        let bad = |why: &str| ScanError::Resume(why.to_string());
        if bytes.len() < HEADER_LEN + 8 {
            return Err(bad("file is truncated"));
        }
        if &bytes[..8] != MAGIC {
            return Err(bad("bad magic"));
        }
        let (body, sum) = bytes.split_at(bytes.len() - 8);
        if fnv1a(body) != u64::from_le_bytes(sum.try_into().expect("8 bytes")) {
            return Err(bad("checksum mismatch"));
        }
        if body[8] != conjecture.code()
            || body[9] != family_code(group.family)
            || body[10] as usize != group.rank
        {
            return Err(bad("checkpoint was written for a different scan"));
        }
        let stored_cap = u64::from_le_bytes(body[12..20].try_into().expect("8 bytes"));
        if stored_cap != cap.map_or(u64::MAX, |c| c as u64) {
            return Err(bad("checkpoint was written with a different interval cap"));
        }
        let next_top = u64::from_le_bytes(body[20..28].try_into().expect("8 bytes"));
        let len = u32::from_le_bytes(body[28..32].try_into().expect("4 bytes")) as usize;
        if HEADER_LEN + len != body.len() {
            return Err(bad("payload length mismatch"));
        }
        let tally: Tally = serde_json::from_slice(&body[HEADER_LEN..])
            .map_err(|e| ScanError::Resume(format!("payload: {e}")))?;
        Ok(Checkpoint {
            conjecture,
            group,
            cap,
            next_top,
            tally,
        })
    }

    /// Writes via a temporary file and rename, so a crash leaves either the
    /// old or the new checkpoint.
    pub fn save(&self, path: &Path) -> Result<(), ScanError> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&self.encode())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(
        path: &Path,
        conjecture: ConjectureId,
        group: GroupDescriptor,
        cap: Option<usize>,
    ) -> Result<Self, ScanError> {
        let bytes = fs::read(path)?;
        Self::decode(&bytes, conjecture, group, cap)
    }
}
