//! On-disk cache of solved empty-board values.
//!
//! The file is a sequence of records, each a little-endian `u32` payload
//! length followed by the payload `w: u32, h: u32, k: u32, outcome: u8`.
//! Unknown trailing bytes in a payload are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use crate::board::Outcome;

const PAYLOAD_LEN: u32 = 13;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueCache {
    entries: BTreeMap<(u32, u32, u32), Outcome>,
}

impl ValueCache {
    pub fn new() -> Self {
        ValueCache::default()
    }

    pub fn get(&self, w: u32, h: u32, k: u32) -> Option<Outcome> {
        self.entries.get(&(w, h, k)).copied()
    }

    pub fn insert(&mut self, w: u32, h: u32, k: u32, outcome: Outcome) {
        self.entries.insert((w, h, k), outcome);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries.len() * (4 + PAYLOAD_LEN as usize));
        for (&(w, h, k), &outcome) in &self.entries {
            out.extend_from_slice(&PAYLOAD_LEN.to_le_bytes());
            for v in [w, h, k] {
                out.extend_from_slice(&v.to_le_bytes());
            }
            out.push(outcome_code(outcome));
        }
        out
    }

    pub fn from_bytes(mut bytes: &[u8]) -> io::Result<Self> {
        let mut cache = ValueCache::new();
        while !bytes.is_empty() {
            let len = read_u32(&mut bytes)? as usize;
            if len < PAYLOAD_LEN as usize || bytes.len() < len {
                return Err(invalid("truncated record"));
            }
            let (mut payload, rest) = bytes.split_at(len);
            bytes = rest;
            let w = read_u32(&mut payload)?;
            let h = read_u32(&mut payload)?;
            let k = read_u32(&mut payload)?;
            let outcome = decode_outcome(payload[0]).ok_or_else(|| invalid("bad outcome code"))?;
            cache.insert(w, h, k, outcome);
        }
        Ok(cache)
    }

    /// A missing file loads as an empty cache.
    pub fn load(path: &Path) -> io::Result<Self> {
        match fs::read(path) {
            Ok(bytes) => ValueCache::from_bytes(&bytes),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(ValueCache::new()),
            Err(e) => Err(e),
        }
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.to_bytes())
    }
}

fn read_u32(bytes: &mut &[u8]) -> io::Result<u32> {
    if bytes.len() < 4 {
        return Err(invalid("truncated length"));
    }
    let (head, rest) = bytes.split_at(4);
    *bytes = rest;
    Ok(u32::from_le_bytes(head.try_into().expect("four bytes")))
}

fn invalid(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::P1Win => 1,
        Outcome::P2Win => 2,
        Outcome::Draw => 3,
    }
}

fn decode_outcome(code: u8) -> Option<Outcome> {
    match code {
        1 => Some(Outcome::P1Win),
        2 => Some(Outcome::P2Win),
        3 => Some(Outcome::Draw),
        _ => None,
    }
}
