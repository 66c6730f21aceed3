//! Versioned binary layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes  "ADRIDX1\0"
//! version    u32      1
//! num_docs   u32
//! docs       num_docs × { id_len u32, id utf-8, length u32 }
//! num_terms  u64
//! terms      num_terms × { term_len u32, term utf-8, cf u64, df u32,
//!                          df × { doc u32, tf u32 } }      (terms sorted)
//! checksum   u64      FNV-1a 64 over every preceding byte
//! ```

use super::{InvertedIndex, Posting, TermEntry, TermStats};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 8] = b"ADRIDX1\0";
const VERSION: u32 = 1;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn write_index<W: Write>(index: &InvertedIndex, mut w: W) -> Result<()> {
    let mut buf = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(index.doc_ids.len() as u32).to_le_bytes());
    for (id, &len) in index.doc_ids.iter().zip(&index.doc_lens) {
        put_str(&mut buf, id);
        buf.extend_from_slice(&len.to_le_bytes());
    }
    buf.extend_from_slice(&(index.terms.len() as u64).to_le_bytes());
    for (term, entry) in &index.terms {
        put_str(&mut buf, term);
        buf.extend_from_slice(&entry.stats.cf.to_le_bytes());
        buf.extend_from_slice(&entry.stats.df.to_le_bytes());
        for p in &entry.postings {
            buf.extend_from_slice(&p.doc.to_le_bytes());
            buf.extend_from_slice(&p.tf.to_le_bytes());
        }
    }
    let sum = fnv1a(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_index<R: Read>(mut r: R) -> Result<InvertedIndex> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn save_index(index: &InvertedIndex, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_index(index, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_index(path: impl AsRef<Path>) -> Result<InvertedIndex> {
    decode(&fs::read(path)?)
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
    buf.extend_from_slice(s.as_bytes());
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format(format!("truncated at byte {}", self.pos)))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let raw = self.take(len)?;
        String::from_utf8(raw.to_vec()).map_err(|_| Error::Format("invalid utf-8 string".into()))
    }
}

fn decode(bytes: &[u8]) -> Result<InvertedIndex> {
    if bytes.is_empty() {
        return Err(Error::Format("empty file".into()));
    }
    if bytes.len() < MAGIC.len() || &bytes[..MAGIC.len()] != MAGIC {
        return Err(Error::Format("bad magic header".into()));
    }
    if bytes.len() < MAGIC.len() + 4 + 8 {
        return Err(Error::Format("truncated header".into()));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let (body, trailer) = bytes.split_at(bytes.len() - 8);
    if fnv1a(body) != u64::from_le_bytes(trailer.try_into().unwrap()) {
        return Err(Error::Format("checksum mismatch (truncated or corrupt)".into()));
    }
    let mut c = Cursor {
        bytes: body,
        pos: MAGIC.len() + 4,
    };
    let num_docs = c.u32()? as usize;
    let mut doc_ids = Vec::with_capacity(num_docs.min(1 << 20));
    let mut doc_lens = Vec::with_capacity(num_docs.min(1 << 20));
    for _ in 0..num_docs {
        doc_ids.push(c.string()?);
        doc_lens.push(c.u32()?);
    }
    let num_terms = c.u64()?;
    let mut terms = BTreeMap::new();
    for _ in 0..num_terms {
        let term = c.string()?;
        let cf = c.u64()?;
        let df = c.u32()?;
        let mut postings = Vec::with_capacity((df as usize).min(1 << 20));
        for _ in 0..df {
            let doc = c.u32()?;
            let tf = c.u32()?;
            postings.push(Posting { doc, tf });
        }
        let entry = TermEntry {
            stats: TermStats { cf, df },
            postings,
        };
        if terms.insert(term.clone(), entry).is_some() {
            return Err(Error::Format(format!("duplicate term `{term}`")));
        }
    }
    if c.pos != body.len() {
        return Err(Error::Format("trailing bytes after term table".into()));
    }
    InvertedIndex::from_parts(doc_ids, doc_lens, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Document;

    fn sample() -> InvertedIndex {
        InvertedIndex::build(vec![Document::new("d1", "a"), Document::new("d2", "a b")]).unwrap()
    }

    #[test]
    fn round_trip() {
        let index = sample();
        let mut buf = Vec::new();
        write_index(&index, &mut buf).unwrap();
        assert_eq!(&buf[..8], MAGIC);
        let back = read_index(buf.as_slice()).unwrap();
        assert_eq!(back, index);
        assert_eq!(back.term_stats("a"), Some(TermStats { cf: 2, df: 2 }));
    }

    #[test]
    fn rejects_empty_and_truncated() {
        assert!(matches!(read_index(&[][..]), Err(Error::Format(_))));
        let mut buf = Vec::new();
        write_index(&sample(), &mut buf).unwrap();
        for cut in [4, 12, buf.len() / 2, buf.len() - 1] {
            assert!(
                matches!(read_index(&buf[..cut]), Err(Error::Format(_))),
                "cut {cut}"
            );
        }
    }

    #[test]
    fn rejects_version_and_corruption() {
        let mut buf = Vec::new();
        write_index(&sample(), &mut buf).unwrap();
        let mut v2 = buf.clone();
        v2[8] = 2;
        let err = read_index(v2.as_slice()).unwrap_err().to_string();
        assert!(err.contains("version"), "{err}");
        let mut flipped = buf.clone();
        let mid = flipped.len() / 2;
        flipped[mid] ^= 0x40;
        assert!(read_index(flipped.as_slice()).is_err());
    }

    #[test]
    fn byte_identical_rebuild() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_index(&sample(), &mut a).unwrap();
        write_index(&sample(), &mut b).unwrap();
        assert_eq!(a, b);
    }
}
