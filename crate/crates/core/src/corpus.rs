//! Topic bundles, the topic dictionary and term-frequency vectors.
//!
//! A bundle is a directory:
//!
//! ```text
//! topic.json          id, optional length_budget_words, documents [{id, timestamp}],
//!                     optional entities [{type, names}]
//! docs/<doc>.txt      paragraphs separated by blank lines, one sentence per line
//! parses/<doc>.ptb    one bracketed tree per news sentence, same order
//! comments.txt        one comment sentence per line
//! mentions.json       optional mention clusters
//! gold/*.txt          optional reference summaries
//! ```
//!
//! A sentence line may start with `<id>\t` to give the sentence an explicit id.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mentions::ClusterRecord;
use crate::text::{self, Token};
use crate::treebank::{self, ParseTree};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{}:{line}: {message}", file.display())]
    MalformedBundle { file: PathBuf, line: usize, message: String },
    #[error("news sentence {sentence_id} has no parse tree")]
    MissingParse { sentence_id: String },
    #[error("duplicate id {id}")]
    DuplicateId { id: String },
    #[error("dictionary is empty: no content words in the news")]
    EmptyDictionary,
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    News,
    Comment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub id: String,
    pub origin: Origin,
    pub doc_id: Option<String>,
    pub paragraph_index: usize,
    pub position_in_doc: usize,
    pub raw_text: String,
    pub tokens: Vec<Token>,
    pub parse: Option<ParseTree>,
}

impl Sentence {
    pub fn new_news(
        id: &str,
        doc_id: &str,
        paragraph_index: usize,
        position_in_doc: usize,
        raw_text: &str,
        parse: ParseTree,
    ) -> Self {
        Sentence {
            id: id.to_string(),
            origin: Origin::News,
            doc_id: Some(doc_id.to_string()),
            paragraph_index,
            position_in_doc,
            raw_text: raw_text.to_string(),
            tokens: text::tokenize(raw_text),
            parse: Some(parse),
        }
    }

    pub fn new_comment(id: &str, position: usize, raw_text: &str) -> Self {
        Sentence {
            id: id.to_string(),
            origin: Origin::Comment,
            doc_id: None,
            paragraph_index: 0,
            position_in_doc: position,
            raw_text: raw_text.to_string(),
            tokens: text::tokenize(raw_text),
            parse: None,
        }
    }

    /// Word count of the raw text under the shared counting rule.
    pub fn word_count(&self) -> usize {
        text::count_words(&self.raw_text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub timestamp: i64,
    pub paragraphs: Vec<Vec<Sentence>>,
}

impl Document {
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flatten()
    }
}

/// Named entity gazetteer entry used when no `mentions.json` is bundled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityEntry {
    #[serde(rename = "type")]
    pub entity_type: String,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Dictionary {
    pub terms: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Dictionary {
    pub fn from_terms(terms: impl IntoIterator<Item = String>) -> Self {
        let terms: Vec<String> = terms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Dictionary { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn column(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    /// Column ids of the distinct dictionary terms found in `tokens`.
    pub fn distinct_columns(&self, tokens: &[Token]) -> BTreeSet<usize> {
        text::term_keys(tokens).iter().filter_map(|k| self.column(k)).collect()
    }
}

/// Sparse non-negative vector; zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TermVector {
    entries: Vec<(usize, f64)>,
    norm2: f64,
}

impl TermVector {
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut map: BTreeMap<usize, f64> = BTreeMap::new();
        for (col, v) in entries {
            *map.entry(col).or_default() += v;
        }
        let entries: Vec<(usize, f64)> = map.into_iter().filter(|(_, v)| *v != 0.0).collect();
        let norm2 = entries.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
        TermVector { entries, norm2 }
    }

    pub fn from_dense(values: &[f64]) -> Self {
        Self::from_entries(values.iter().copied().enumerate())
    }

    /// Entries divided by their sum, so the weights of a sentence add up to 1.
    pub fn relative(&self) -> TermVector {
        let sum: f64 = self.entries.iter().map(|(_, v)| v).sum();
        if sum == 0.0 {
            return self.clone();
        }
        Self::from_entries(self.entries.iter().map(|&(c, v)| (c, v / sum)))
    }

    /// Entries divided by the Euclidean norm.
    pub fn normalized(&self) -> TermVector {
        if self.norm2 == 0.0 {
            return self.clone();
        }
        Self::from_entries(self.entries.iter().map(|&(c, v)| (c, v / self.norm2)))
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> f64 {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn dot(&self, other: &TermVector) -> f64 {
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a[i].1 * b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Cosine similarity; 0 when either side is the zero vector.
    pub fn cosine(&self, other: &TermVector) -> f64 {
        if self.is_zero() || other.is_zero() {
            return 0.0;
        }
        self.dot(other) / (self.norm2 * other.norm2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topic {
    pub id: String,
    pub documents: Vec<Document>,
    pub comment_sentences: Vec<Sentence>,
    pub dictionary: Dictionary,
    pub length_budget_words: usize,
    pub entities: Vec<EntityEntry>,
    pub mention_clusters: Option<Vec<ClusterRecord>>,
    pub references: Vec<Reference>,
}

impl Topic {
    /// Builds a topic from in-memory parts, checking the invariants and
    /// building the dictionary.
    pub fn new(
        id: &str,
        documents: Vec<Document>,
        comment_sentences: Vec<Sentence>,
        length_budget_words: usize,
    ) -> Result<Self, CorpusError> {
        check_ids(&documents, &comment_sentences)?;
        let mut topic = Topic {
            id: id.to_string(),
            documents,
            comment_sentences,
            dictionary: Dictionary::default(),
            length_budget_words,
            entities: Vec::new(),
            mention_clusters: None,
            references: Vec::new(),
        };
        topic.dictionary = build_dictionary(&topic)?;
        Ok(topic)
    }

    pub fn news_sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.documents.iter().flat_map(Document::sentences)
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    pub fn sentence(&self, id: &str) -> Option<&Sentence> {
        self.news_sentences().chain(&self.comment_sentences).find(|s| s.id == id)
    }

    /// Topic-wide frequency of each dictionary term over news and comments.
    pub fn term_frequencies(&self) -> Vec<f64> {
        let mut tf = vec![0.0; self.dictionary.len()];
        for s in self.news_sentences().chain(&self.comment_sentences) {
            for (col, v) in vectorize(s, &self.dictionary).entries() {
                tf[*col] += v;
            }
        }
        tf
    }
}

fn check_ids(documents: &[Document], comments: &[Sentence]) -> Result<(), CorpusError> {
    let mut seen = BTreeSet::new();
    for d in documents {
        if !seen.insert(format!("doc:{}", d.id)) {
            return Err(CorpusError::DuplicateId { id: d.id.clone() });
        }
    }
    let mut seen = BTreeSet::new();
    for s in documents.iter().flat_map(Document::sentences).chain(comments) {
        if !seen.insert(s.id.as_str()) {
            return Err(CorpusError::DuplicateId { id: s.id.clone() });
        }
    }
    Ok(())
}

/// Dictionary over news unigrams and bigrams, in lexicographic order.
pub fn build_dictionary(topic: &Topic) -> Result<Dictionary, CorpusError> {
    let terms: BTreeSet<String> = topic.news_sentences().flat_map(|s| text::term_keys(&s.tokens)).collect();
    if terms.is_empty() {
        return Err(CorpusError::EmptyDictionary);
    }
    Ok(Dictionary::from_terms(terms))
}

/// Raw counts of dictionary terms; terms outside the dictionary are dropped.
pub fn vectorize(sentence: &Sentence, dict: &Dictionary) -> TermVector {
    TermVector::from_entries(
        text::term_keys(&sentence.tokens)
            .iter()
            .filter_map(|k| dict.column(k))
            .map(|c| (c, 1.0)),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    /// Budget used when `topic.json` does not set one.
    pub default_length_budget: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { default_length_budget: 100 }
    }
}

#[derive(Debug, Deserialize)]
struct TopicFile {
    id: String,
    #[serde(default)]
    length_budget_words: Option<usize>,
    documents: Vec<DocumentEntry>,
    #[serde(default)]
    entities: Vec<EntityEntry>,
}

#[derive(Debug, Deserialize)]
struct DocumentEntry {
    id: String,
    timestamp: i64,
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

fn malformed(file: &Path, line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::MalformedBundle { file: file.to_path_buf(), line, message: message.into() }
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CorpusError> {
    serde_json::from_str(&read(path)?).map_err(|e| malformed(path, e.line(), e.to_string()))
}

/// Splits an optional `<id>\t` prefix off a sentence line.
fn split_line_id(line: &str) -> (Option<&str>, &str) {
    match line.split_once('\t') {
        Some((id, rest)) if !id.trim().is_empty() && !id.contains(' ') => (Some(id.trim()), rest.trim()),
        _ => (None, line.trim()),
    }
}

struct RawSentence {
    id: String,
    paragraph: usize,
    text: String,
}

fn read_document_text(path: &Path, doc_id: &str) -> Result<Vec<RawSentence>, CorpusError> {
    let content = read(path)?;
    let mut out = Vec::new();
    let mut paragraph = 0;
    let mut in_paragraph = false;
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            if in_paragraph {
                paragraph += 1;
                in_paragraph = false;
            }
            continue;
        }
        in_paragraph = true;
        let (explicit, text) = split_line_id(line);
        if text::tokenize(text).is_empty() {
            return Err(malformed(path, i + 1, "sentence has no tokens"));
        }
        let id = explicit.map_or_else(|| format!("{doc_id}-{}", out.len()), str::to_string);
        out.push(RawSentence { id, paragraph, text: text.to_string() });
    }
    if out.is_empty() {
        return Err(malformed(path, 1, "document has no sentences"));
    }
    Ok(out)
}

fn read_parses(path: &Path) -> Result<Vec<(usize, String)>, CorpusError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    Ok(read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.to_string()))
        .collect())
}

/// Reads a topic bundle directory.
pub fn load_topic(path: &Path, config: &CorpusConfig) -> Result<Topic, CorpusError> {
    let topic_path = path.join("topic.json");
    let meta: TopicFile = parse_json(&topic_path)?;
    if meta.documents.is_empty() {
        return Err(malformed(&topic_path, 1, "no documents listed"));
    }
    if meta.length_budget_words == Some(0) {
        return Err(malformed(&topic_path, 1, "length_budget_words must be positive"));
    }

    let mut documents = Vec::with_capacity(meta.documents.len());
    for entry in &meta.documents {
        let doc_path = path.join("docs").join(format!("{}.txt", entry.id));
        let raw = read_document_text(&doc_path, &entry.id)?;
        let parse_path = path.join("parses").join(format!("{}.ptb", entry.id));
        let parses = read_parses(&parse_path)?;
        if parses.len() > raw.len() {
            let (line, _) = parses[raw.len()];
            return Err(malformed(&parse_path, line, "more trees than sentences"));
        }
        let mut paragraphs: Vec<Vec<Sentence>> = Vec::new();
        for (pos, rs) in raw.into_iter().enumerate() {
            let (line, tree_src) = parses
                .get(pos)
                .ok_or_else(|| CorpusError::MissingParse { sentence_id: rs.id.clone() })?;
            let tree = treebank::parse_ptb(tree_src).map_err(|e| malformed(&parse_path, *line, e.to_string()))?;
            if paragraphs.len() <= rs.paragraph {
                paragraphs.resize_with(rs.paragraph + 1, Vec::new);
            }
            paragraphs[rs.paragraph].push(Sentence::new_news(&rs.id, &entry.id, rs.paragraph, pos, &rs.text, tree));
        }
        documents.push(Document { id: entry.id.clone(), timestamp: entry.timestamp, paragraphs });
    }

    let comments_path = path.join("comments.txt");
    let mut comments = Vec::new();
    if comments_path.exists() {
        for line in read(&comments_path)?.lines().filter(|l| !l.trim().is_empty()) {
            let (explicit, text) = split_line_id(line);
            let id = explicit.map_or_else(|| format!("c{}", comments.len()), str::to_string);
            comments.push(Sentence::new_comment(&id, comments.len(), text));
        }
    }

    let mut topic = Topic::new(
        &meta.id,
        documents,
        comments,
        meta.length_budget_words.unwrap_or(config.default_length_budget),
    )?;
    topic.entities = meta.entities;

    let mentions_path = path.join("mentions.json");
    if mentions_path.exists() {
        topic.mention_clusters = Some(parse_json(&mentions_path)?);
    }

    let gold_dir = path.join("gold");
    if gold_dir.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(&gold_dir)
            .map_err(|source| CorpusError::Io { path: gold_dir.clone(), source })?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        for f in files {
            let name = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            topic.references.push(Reference { name, text: read(&f)? });
        }
    }
    Ok(topic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_ptb;

    fn news(id: &str, text: &str) -> Sentence {
        Sentence::new_news(id, "d", 0, 0, text, parse_ptb("(S (NP (NN x)) (VP (VB y)))").unwrap())
    }

    fn topic(news_texts: &[&str], comments: &[&str]) -> Result<Topic, CorpusError> {
        let sentences = news_texts.iter().enumerate().map(|(i, t)| news(&format!("s{i}"), t)).collect();
        let doc = Document { id: "d".into(), timestamp: 0, paragraphs: vec![sentences] };
        let comments = comments.iter().enumerate().map(|(i, t)| Sentence::new_comment(&format!("c{i}"), i, t)).collect();
        Topic::new("t", vec![doc], comments, 100)
    }

    #[test]
    fn dictionary_from_news_only() {
        let t = topic(&["the cat sat"], &["dog barked"]).unwrap();
        assert_eq!(t.dictionary.terms, ["cat", "cat_sat", "sat"]);
        assert!(t.dictionary.column("dog").is_none());
        assert!(t.dictionary.column("bark").is_none());
    }

    #[test]
    fn repeated_word_bigram() {
        let t = topic(&["cat cat"], &[]).unwrap();
        assert_eq!(t.dictionary.terms, ["cat", "cat_cat"]);
    }

    #[test]
    fn empty_dictionary() {
        assert!(matches!(topic(&["the of and"], &[]), Err(CorpusError::EmptyDictionary)));
    }

    #[test]
    fn vectorize_counts() {
        let t = topic(&["the cat sat"], &["dog barked"]).unwrap();
        let v = vectorize(&t.news_sentences().next().unwrap().clone(), &t.dictionary);
        let cat = t.dictionary.column("cat").unwrap();
        let sat = t.dictionary.column("sat").unwrap();
        let cs = t.dictionary.column("cat_sat").unwrap();
        assert_eq!(v.entries(), &[(cat, 1.0), (cs, 1.0), (sat, 1.0)]);
        assert!(vectorize(&t.comment_sentences[0], &t.dictionary).is_zero());
    }

    #[test]
    fn vectorize_repeated_pairs() {
        // Bigrams of "cat sat cat sat": cat_sat, sat_cat, cat_sat.
        let with = topic(&["cat sat cat sat"], &[]).unwrap();
        let v = vectorize(&news("q", "cat sat cat sat"), &with.dictionary);
        let col = |t: &str| with.dictionary.column(t).unwrap();
        assert_eq!(v.get(col("cat")), 2.0);
        assert_eq!(v.get(col("sat")), 2.0);
        assert_eq!(v.get(col("cat_sat")), 2.0);
        assert_eq!(v.get(col("sat_cat")), 1.0);

        let without = topic(&["cat sat"], &[]).unwrap();
        let v = vectorize(&news("q", "cat sat cat sat"), &without.dictionary);
        assert_eq!(v.entries().len(), 3);
        assert!(without.dictionary.column("sat_cat").is_none());
    }

    #[test]
    fn duplicate_sentence_ids() {
        let doc = Document {
            id: "d".into(),
            timestamp: 0,
            paragraphs: vec![vec![news("s1", "cat"), news("s1", "dog")]],
        };
        assert!(matches!(Topic::new("t", vec![doc], vec![], 10), Err(CorpusError::DuplicateId { id }) if id == "s1"));
    }

    #[test]
    fn term_vector_norm_and_cosine() {
        let a = TermVector::from_dense(&[1.0, 1.0, 0.0]);
        let b = TermVector::from_dense(&[1.0, 0.0, 0.0]);
        assert!((a.norm2() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(a.entries().len(), 2);
        assert!((a.cosine(&b) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(a.cosine(&TermVector::default()), 0.0);
    }
}
