//! Inverted index and corpus statistics.
//!
//! Everything the scoring formulas read (term frequencies, document lengths, collection and
//! document frequencies, average document length) comes from [`InvertedIndex`].

mod persist;

use crate::text::tokenize;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

pub use persist::{load_index, read_index, save_index, write_index, MAGIC};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    #[serde(rename = "id")]
    pub doc_id: String,
    pub text: String,
}

impl Document {
    pub fn new(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            doc_id: doc_id.into(),
            text: text.into(),
        }
    }
}

/// Dense document number assigned in ingestion order.
pub type DocNo = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc: DocNo,
    /// Occurrences of the term in the document, always ≥ 1.
    pub tf: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TermStats {
    /// Collection frequency f_{t,C}.
    pub cf: u64,
    /// Document frequency n_t.
    pub df: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectionStats {
    /// |C|, the number of documents.
    pub num_docs: u32,
    pub total_tokens: u64,
    pub avg_len: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEntry {
    pub stats: TermStats,
    /// Sorted by `doc`.
    pub postings: Vec<Posting>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvertedIndex {
    doc_ids: Vec<String>,
    doc_lens: Vec<u32>,
    lookup: HashMap<String, DocNo>,
    terms: BTreeMap<String, TermEntry>,
    total_tokens: u64,
}

impl InvertedIndex {
    /// Single-pass build; document numbers follow input order.
    pub fn build<I>(docs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Document>,
    {
        let mut builder = IndexBuilder::default();
        for doc in docs {
            builder.add(doc)?;
        }
        Ok(builder.finish())
    }

    pub(crate) fn from_parts(
        doc_ids: Vec<String>,
        doc_lens: Vec<u32>,
        terms: BTreeMap<String, TermEntry>,
    ) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(doc_ids.len());
        for (i, id) in doc_ids.iter().enumerate() {
            if lookup.insert(id.clone(), i as DocNo).is_some() {
                return Err(Error::DuplicateDocId(id.clone()));
            }
        }
        let total_tokens = doc_lens.iter().map(|&l| l as u64).sum();
        let index = Self {
            doc_ids,
            doc_lens,
            lookup,
            terms,
            total_tokens,
        };
        index.check_invariants()?;
        Ok(index)
    }

    pub fn collection(&self) -> CollectionStats {
        let n = self.doc_ids.len() as u32;
        CollectionStats {
            num_docs: n,
            total_tokens: self.total_tokens,
            avg_len: if n == 0 {
                0.0
            } else {
                self.total_tokens as f64 / n as f64
            },
        }
    }

    /// Collection statistics for scoring; errors on an empty collection.
    pub fn scoring_collection(&self) -> Result<CollectionStats> {
        if self.doc_ids.is_empty() {
            return Err(Error::EmptyCollection);
        }
        Ok(self.collection())
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.terms.len()
    }

    pub fn doc_id(&self, doc: DocNo) -> &str {
        &self.doc_ids[doc as usize]
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_no(&self, doc_id: &str) -> Option<DocNo> {
        self.lookup.get(doc_id).copied()
    }

    pub fn doc_len(&self, doc: DocNo) -> u32 {
        self.doc_lens[doc as usize]
    }

    pub fn doc_lens(&self) -> &[u32] {
        &self.doc_lens
    }

    pub fn term(&self, term: &str) -> Option<&TermEntry> {
        self.terms.get(term)
    }

    pub fn term_stats(&self, term: &str) -> Option<TermStats> {
        self.terms.get(term).map(|e| e.stats)
    }

    /// Terms in lexicographic order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&str, &TermEntry)> {
        self.terms.iter().map(|(t, e)| (t.as_str(), e))
    }

    /// f_{t,d}, zero when the term does not occur in the document.
    pub fn tf(&self, term: &str, doc: DocNo) -> u32 {
        self.terms
            .get(term)
            .and_then(|e| {
                e.postings
                    .binary_search_by_key(&doc, |p| p.doc)
                    .ok()
                    .map(|i| e.postings[i].tf)
            })
            .unwrap_or(0)
    }

    /// Full scan of the structural invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Format(m));
        if self.doc_ids.len() != self.doc_lens.len() {
            return fail("document table length mismatch".into());
        }
        let n = self.doc_ids.len() as u64;
        let mut per_doc = vec![0u64; self.doc_ids.len()];
        for (term, entry) in &self.terms {
            let mut cf = 0u64;
            let mut prev: Option<DocNo> = None;
            for p in &entry.postings {
                if p.tf == 0 {
                    return fail(format!("zero tf posting for `{term}`"));
                }
                if (p.doc as u64) >= n {
                    return fail(format!("posting for `{term}` names unknown doc {}", p.doc));
                }
                if prev.is_some_and(|q| q >= p.doc) {
                    return fail(format!("postings for `{term}` not strictly sorted"));
                }
                prev = Some(p.doc);
                cf += p.tf as u64;
                per_doc[p.doc as usize] += p.tf as u64;
            }
            if entry.stats.cf != cf
                || entry.stats.df as usize != entry.postings.len()
                || entry.stats.df as u64 > cf
            {
                return fail(format!("statistics for `{term}` disagree with postings"));
            }
        }
        for (i, (&len, &seen)) in self.doc_lens.iter().zip(&per_doc).enumerate() {
            if len as u64 != seen {
                return fail(format!("length of `{}` disagrees with postings", self.doc_ids[i]));
            }
        }
        Ok(())
    }

    /// Appends a copy of every document under `<id><suffix>`.
    pub fn duplicated(&self, suffix: &str) -> Result<Self> {
        let n = self.doc_ids.len() as DocNo;
        let mut doc_ids = self.doc_ids.clone();
        doc_ids.extend(self.doc_ids.iter().map(|id| format!("{id}{suffix}")));
        let mut doc_lens = self.doc_lens.clone();
        doc_lens.extend_from_slice(&self.doc_lens);
        let terms = self
            .terms
            .iter()
            .map(|(t, e)| {
                let mut postings = e.postings.clone();
                postings.extend(e.postings.iter().map(|p| Posting {
                    doc: p.doc + n,
                    tf: p.tf,
                }));
                let stats = TermStats {
                    cf: e.stats.cf * 2,
                    df: e.stats.df * 2,
                };
                (t.clone(), TermEntry { stats, postings })
            })
            .collect();
        Self::from_parts(doc_ids, doc_lens, terms)
    }
}

/// Incremental single-writer construction.
#[derive(Debug, Default)]
pub struct IndexBuilder {
    doc_ids: Vec<String>,
    doc_lens: Vec<u32>,
    lookup: HashMap<String, DocNo>,
    terms: HashMap<String, TermEntry>,
    total_tokens: u64,
}

impl IndexBuilder {
    pub fn add(&mut self, doc: Document) -> Result<()> {
        if doc.doc_id.is_empty() {
            return Err(Error::EmptyDocId(self.doc_ids.len()));
        }
        if self.lookup.contains_key(&doc.doc_id) {
            return Err(Error::DuplicateDocId(doc.doc_id));
        }
        let no = self.doc_ids.len() as DocNo;
        let tokens = tokenize(&doc.text);
        let mut counts: HashMap<String, u32> = HashMap::new();
        for tok in tokens.iter() {
            *counts.entry(tok.clone()).or_default() += 1;
        }
        for (term, tf) in counts {
            let entry = self.terms.entry(term).or_insert_with(|| TermEntry {
                stats: TermStats::default(),
                postings: Vec::new(),
            });
            entry.stats.cf += tf as u64;
            entry.stats.df += 1;
            entry.postings.push(Posting { doc: no, tf });
        }
        self.lookup.insert(doc.doc_id.clone(), no);
        self.doc_ids.push(doc.doc_id);
        self.doc_lens.push(tokens.len() as u32);
        self.total_tokens += tokens.len() as u64;
        Ok(())
    }

    pub fn finish(self) -> InvertedIndex {
        InvertedIndex {
            doc_ids: self.doc_ids,
            doc_lens: self.doc_lens,
            lookup: self.lookup,
            terms: self.terms.into_iter().collect(),
            total_tokens: self.total_tokens,
        }
    }
}

/// Reads line-delimited `{"id": ..., "text": ...}` records; blank lines are skipped.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: Document =
            serde_json::from_str(&line).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        docs.push(doc);
    }
    Ok(docs)
}
