//! Phrase salience and pairwise phrase similarity.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{Dictionary, Topic};
use crate::text;
use crate::treebank::{Phrase, PhraseKind};

/// Frequency of every dictionary term over the whole topic.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TopicFrequencies {
    counts: HashMap<String, f64>,
    total: f64,
}

impl TopicFrequencies {
    pub fn from_counts(counts: impl IntoIterator<Item = (String, f64)>) -> Self {
        let counts: HashMap<String, f64> = counts.into_iter().collect();
        let total = counts.values().sum();
        TopicFrequencies { counts, total }
    }

    pub fn from_topic(topic: &Topic) -> Self {
        let tf = topic.term_frequencies();
        Self::from_counts(topic.dictionary.terms.iter().cloned().zip(tf))
    }

    pub fn get(&self, term: &str) -> f64 {
        self.counts.get(term).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.total
    }
}

/// Distinct dictionary terms (unigrams and bigrams) occurring in a phrase.
pub fn phrase_terms(phrase: &Phrase, dict: &Dictionary) -> BTreeSet<String> {
    text::term_keys(&text::tokenize(&phrase.text()))
        .into_iter()
        .filter(|k| dict.column(k).is_some())
        .collect()
}

/// Stemmed content unigrams of a phrase.
pub fn unigram_set(phrase: &Phrase) -> BTreeSet<String> {
    text::content_stems(&text::tokenize(&phrase.text()))
        .into_iter()
        .map(str::to_string)
        .collect()
}

/// Share of the topic's term mass covered by the phrase's distinct terms,
/// scaled by the expressiveness of its sentence.
pub fn phrase_salience(terms: &BTreeSet<String>, expressiveness: f64, tf: &TopicFrequencies) -> f64 {
    if tf.total() <= 0.0 || expressiveness == 0.0 {
        return 0.0;
    }
    let covered: f64 = terms.iter().map(|t| tf.get(t)).sum();
    covered / tf.total() * expressiveness
}

pub fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaliencedPhrase {
    pub phrase: Phrase,
    pub salience: f64,
    pub expressiveness: f64,
    #[serde(skip)]
    pub unigrams: BTreeSet<String>,
}

impl SaliencedPhrase {
    pub fn new(phrase: Phrase, expressiveness: f64, dict: &Dictionary, tf: &TopicFrequencies) -> Self {
        let salience = phrase_salience(&phrase_terms(&phrase, dict), expressiveness, tf);
        let unigrams = unigram_set(&phrase);
        SaliencedPhrase { phrase, salience, expressiveness, unigrams }
    }

    fn related(&self, other: &SaliencedPhrase) -> bool {
        self.phrase.ancestors.contains(&other.phrase.id) || other.phrase.ancestors.contains(&self.phrase.id)
    }
}

/// Candidate phrases: only sentences with positive expressiveness and at
/// least one NP and one VP contribute.
pub fn candidate_pool<'a>(
    sentences: impl IntoIterator<Item = (f64, &'a [Phrase])>,
    dict: &Dictionary,
    tf: &TopicFrequencies,
) -> Vec<SaliencedPhrase> {
    let mut pool = Vec::new();
    for (a, phrases) in sentences {
        if a <= 0.0 {
            continue;
        }
        let has = |k: PhraseKind| phrases.iter().any(|p| p.kind == k);
        if !has(PhraseKind::NP) || !has(PhraseKind::VP) {
            continue;
        }
        pool.extend(phrases.iter().map(|p| SaliencedPhrase::new(p.clone(), a, dict, tf)));
    }
    pool
}

/// Upper-triangular similarity entries `R_ij`, `i < j`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    pub pairs: BTreeMap<(usize, usize), f64>,
}

impl SimilarityMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        let key = if i < j { (i, j) } else { (j, i) };
        self.pairs.get(&key).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Similarity of phrase pairs from different sentences. Pairs within one
/// sentence are left to the tree constraints.
pub fn build_similarity(phrases: &[SaliencedPhrase]) -> SimilarityMatrix {
    let mut pairs = BTreeMap::new();
    for (i, p) in phrases.iter().enumerate() {
        for (j, q) in phrases.iter().enumerate().skip(i + 1) {
            if p.phrase.sentence_id == q.phrase.sentence_id || p.related(q) {
                continue;
            }
            let r = jaccard(&p.unigrams, &q.unigrams);
            if r > 0.0 {
                pairs.insert((i, j), r);
            }
        }
    }
    SimilarityMatrix { pairs }
}
