//! Entity mention clusters: loading, cross-document merging and the choice
//! of full-form and short-form mentions.

use std::collections::{BTreeMap, HashMap};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Topic;
use crate::text;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MentionError {
    #[error("malformed mentions: {0}")]
    MalformedMentions(String),
    #[error("mention span {start}..{end} out of range for sentence {sentence_id}")]
    SpanOutOfRange { sentence_id: String, start: usize, end: usize },
    #[error("cluster has no non-pronoun mention")]
    NoNonPronounMention,
}

/// One cluster as stored in `mentions.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub doc_id: String,
    pub entity_type: String,
    pub mentions: Vec<MentionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionRecord {
    pub sentence_id: String,
    pub start: usize,
    pub end: usize,
    pub surface: String,
    #[serde(default)]
    pub is_pronoun: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityType {
    Person,
    Location,
    Organization,
}

impl EntityType {
    /// Accepts the usual spellings; other entity types are not rewritten.
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PERSON" | "PER" => Some(EntityType::Person),
            "LOCATION" | "LOC" | "GPE" => Some(EntityType::Location),
            "ORGANIZATION" | "ORGANISATION" | "ORG" => Some(EntityType::Organization),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub surface: String,
    pub sentence_id: String,
    /// Leaf span `[start, end)` in the sentence's parse tree.
    pub span: (usize, usize),
    pub is_pronoun: bool,
    pub entity_type: EntityType,
}

impl Mention {
    pub fn word_count(&self) -> usize {
        text::count_words(&self.surface)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionCluster {
    pub id: String,
    pub entity_type: EntityType,
    /// In document order.
    pub mentions: Vec<Mention>,
    pub full_form: Mention,
    pub short_form: Mention,
}

fn mention_stems(surface: &str) -> Vec<String> {
    text::tokenize(surface)
        .into_iter()
        .filter(|t| !t.is_stopword)
        .map(|t| t.stem)
        .collect()
}

/// Picks (full form, short form) from mentions given in document order.
///
/// Both maximize the summed in-cluster frequency of their stems; the full
/// form over all non-pronoun mentions, the short form over the shortest
/// non-pronoun ones. Ties go to the earliest mention.
pub fn select_forms(mentions: &[Mention]) -> Result<(Mention, Mention), MentionError> {
    let mut tf: HashMap<String, usize> = HashMap::new();
    for m in mentions {
        for s in mention_stems(&m.surface) {
            *tf.entry(s).or_default() += 1;
        }
    }
    let score = |m: &Mention| mention_stems(&m.surface).iter().map(|s| tf[s]).sum::<usize>();
    let candidates: Vec<&Mention> = mentions.iter().filter(|m| !m.is_pronoun).collect();
    let best = |pool: &[&Mention]| -> Option<Mention> {
        let mut best: Option<(&Mention, usize)> = None;
        for m in pool {
            let s = score(m);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((m, s));
            }
        }
        best.map(|(m, _)| m.clone())
    };
    let full = best(&candidates).ok_or(MentionError::NoNonPronounMention)?;
    let shortest = candidates.iter().map(|m| m.word_count()).min().unwrap_or(0);
    let short_pool: Vec<&Mention> = candidates.iter().copied().filter(|m| m.word_count() == shortest).collect();
    let short = best(&short_pool).ok_or(MentionError::NoNonPronounMention)?;
    Ok((full, short))
}

/// Position of a news sentence used to order mentions chronologically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SentenceKey {
    timestamp: i64,
    doc_id: String,
    position: usize,
}

struct SentenceInfo {
    key: SentenceKey,
    leaves: Vec<String>,
}

fn sentence_index(topic: &Topic) -> HashMap<String, SentenceInfo> {
    let mut out = HashMap::new();
    for doc in &topic.documents {
        for s in doc.sentences() {
            let leaves = s
                .parse
                .as_ref()
                .map(|t| t.leaves().into_iter().map(str::to_string).collect())
                .unwrap_or_default();
            let key = SentenceKey { timestamp: doc.timestamp, doc_id: doc.id.clone(), position: s.position_in_doc };
            out.insert(s.id.clone(), SentenceInfo { key, leaves });
        }
    }
    out
}

fn validate(records: &[ClusterRecord], index: &HashMap<String, SentenceInfo>) -> Result<(), MentionError> {
    for rec in records {
        if rec.mentions.is_empty() {
            return Err(MentionError::MalformedMentions(format!("empty cluster in document {}", rec.doc_id)));
        }
        for m in &rec.mentions {
            let info = index
                .get(&m.sentence_id)
                .ok_or_else(|| MentionError::MalformedMentions(format!("unknown news sentence {}", m.sentence_id)))?;
            if m.start >= m.end || m.end > info.leaves.len() {
                return Err(MentionError::SpanOutOfRange {
                    sentence_id: m.sentence_id.clone(),
                    start: m.start,
                    end: m.end,
                });
            }
        }
    }
    Ok(())
}

/// Exact-match clusters from the topic's entity gazetteer, one per
/// (document, entity) with at least one occurrence.
fn derive_from_gazetteer(topic: &Topic) -> Vec<ClusterRecord> {
    let mut out = Vec::new();
    for doc in &topic.documents {
        for entity in &topic.entities {
            let mut names: Vec<Vec<&str>> = entity.names.iter().map(|n| n.split_whitespace().collect()).collect();
            names.retain(|n| !n.is_empty());
            names.sort_by_key(|n| std::cmp::Reverse(n.len()));
            let mut mentions = Vec::new();
            for s in doc.sentences() {
                let Some(tree) = &s.parse else { continue };
                let leaves = tree.leaves();
                let mut i = 0;
                while i < leaves.len() {
                    let hit = names.iter().find(|n| leaves[i..].starts_with(n));
                    match hit {
                        Some(n) => {
                            mentions.push(MentionRecord {
                                sentence_id: s.id.clone(),
                                start: i,
                                end: i + n.len(),
                                surface: n.join(" "),
                                is_pronoun: false,
                            });
                            i += n.len();
                        }
                        None => i += 1,
                    }
                }
            }
            if !mentions.is_empty() {
                out.push(ClusterRecord { doc_id: doc.id.clone(), entity_type: entity.entity_type.clone(), mentions });
            }
        }
    }
    out
}

/// Merges clusters that share an entity type and a non-pronoun surface
/// (case-insensitive), then selects forms. Clusters of other entity types
/// or without any non-pronoun mention are dropped.
pub fn merge_clusters(records: &[ClusterRecord], topic: &Topic) -> Result<Vec<MentionCluster>, MentionError> {
    let index = sentence_index(topic);
    validate(records, &index)?;
    let typed: Vec<(EntityType, &ClusterRecord)> = records
        .iter()
        .filter_map(|r| EntityType::parse(&r.entity_type).map(|t| (t, r)))
        .collect();

    let mut uf = UnionFind::<usize>::new(typed.len());
    let mut owner: HashMap<(EntityType, String), usize> = HashMap::new();
    for (i, (ty, rec)) in typed.iter().enumerate() {
        for m in rec.mentions.iter().filter(|m| !m.is_pronoun && !text::is_pronoun_phrase(&m.surface)) {
            let key = (*ty, m.surface.to_lowercase());
            match owner.get(&key) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    owner.insert(key, i);
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..typed.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }

    let mut merged: Vec<(SentenceKey, usize, Vec<Mention>, EntityType)> = Vec::new();
    for members in groups.values() {
        let ty = typed[members[0]].0;
        let mut keyed: Vec<(SentenceKey, Mention)> = members
            .iter()
            .flat_map(|&i| typed[i].1.mentions.iter())
            .map(|m| {
                let key = index[&m.sentence_id].key.clone();
                let mention = Mention {
                    surface: m.surface.clone(),
                    sentence_id: m.sentence_id.clone(),
                    span: (m.start, m.end),
                    is_pronoun: m.is_pronoun || text::is_pronoun_phrase(&m.surface),
                    entity_type: ty,
                };
                (key, mention)
            })
            .collect();
        keyed.sort_by(|a, b| (&a.0, a.1.span, &a.1.surface).cmp(&(&b.0, b.1.span, &b.1.surface)));
        keyed.dedup_by(|a, b| a.1.sentence_id == b.1.sentence_id && a.1.span == b.1.span);
        let first = keyed[0].0.clone();
        let first_start = keyed[0].1.span.0;
        merged.push((first, first_start, keyed.into_iter().map(|(_, m)| m).collect(), ty));
    }
    merged.sort_by(|a, b| (&a.0, a.1, a.3).cmp(&(&b.0, b.1, b.3)));

    let mut clusters = Vec::new();
    for (_, _, mentions, ty) in merged {
        match select_forms(&mentions) {
            Ok((full_form, short_form)) => clusters.push(MentionCluster {
                id: format!("e{}", clusters.len()),
                entity_type: ty,
                mentions,
                full_form,
                short_form,
            }),
            Err(MentionError::NoNonPronounMention) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(clusters)
}

/// Clusters from the bundled `mentions.json` when present, otherwise from
/// the topic's entity gazetteer; merged across documents either way.
pub fn load_or_derive_clusters(topic: &Topic) -> Result<Vec<MentionCluster>, MentionError> {
    match &topic.mention_clusters {
        Some(records) => merge_clusters(records, topic),
        None => merge_clusters(&derive_from_gazetteer(topic), topic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, EntityEntry, Sentence};
    use crate::treebank::parse_ptb;

    fn m(surface: &str) -> Mention {
        Mention {
            surface: surface.into(),
            sentence_id: "s".into(),
            span: (0, 1),
            is_pronoun: text::is_pronoun_phrase(surface),
            entity_type: EntityType::Person,
        }
    }

    /// Scores every mention from scratch and returns the best index, lowest
    /// index on ties.
    fn exhaustive_best(mentions: &[Mention], allowed: impl Fn(&Mention) -> bool) -> usize {
        let stems: Vec<Vec<String>> = mentions.iter().map(|m| mention_stems(&m.surface)).collect();
        let count = |s: &String| stems.iter().flatten().filter(|t| *t == s).count();
        let mut best = (usize::MAX, 0);
        for (i, ms) in stems.iter().enumerate() {
            if !allowed(&mentions[i]) {
                continue;
            }
            let score: usize = ms.iter().map(count).sum();
            if best.0 == usize::MAX || score > best.1 {
                best = (i, score);
            }
        }
        best.0
    }

    #[test]
    fn obama_forms() {
        let mut ms = vec![m("President Barack Obama")];
        ms.extend(std::iter::repeat_n(m("Obama"), 5));
        ms.extend(std::iter::repeat_n(m("he"), 3));
        // tf'(obama) = 6, tf'(president) = tf'(barack) = 1, "he" is a stopword.
        let (full, short) = select_forms(&ms).unwrap();
        assert_eq!(full.surface, "President Barack Obama");
        assert_eq!(short.surface, "Obama");
        let oracle_full = exhaustive_best(&ms, |x| !x.is_pronoun);
        assert_eq!(ms[oracle_full].surface, full.surface);
        let oracle_short = exhaustive_best(&ms, |x| !x.is_pronoun && x.word_count() == 1);
        assert_eq!(ms[oracle_short].surface, short.surface);
    }

    #[test]
    fn identical_mentions() {
        let ms = vec![m("Paris"), m("Paris")];
        let (full, short) = select_forms(&ms).unwrap();
        assert_eq!(full, ms[0]);
        assert_eq!(short, ms[0]);
    }

    #[test]
    fn pronoun_only_cluster() {
        assert_eq!(select_forms(&[m("it")]), Err(MentionError::NoNonPronounMention));
    }

    fn sentence(id: &str, doc: &str, pos: usize, tree: &str) -> Sentence {
        let t = parse_ptb(tree).unwrap();
        let raw = t.leaves().join(" ");
        Sentence::new_news(id, doc, 0, pos, &raw, t)
    }

    fn two_doc_topic(order_swapped: bool) -> Topic {
        let a = Document {
            id: "a".into(),
            timestamp: 1,
            paragraphs: vec![vec![
                sentence("a0", "a", 0, "(S (NP (NNP Barack) (NNP Obama)) (VP (VBD spoke)))"),
                sentence("a1", "a", 1, "(S (NP (NNP Obama)) (VP (VBD left) (NP (NNP Paris))))"),
            ]],
        };
        let b = Document {
            id: "b".into(),
            timestamp: 2,
            paragraphs: vec![vec![sentence(
                "b0",
                "b",
                0,
                "(S (NP (NNP Obama)) (VP (VBD met) (NP (NNP Paris) (NNP Hilton))))",
            )]],
        };
        let docs = if order_swapped { vec![b, a] } else { vec![a, b] };
        Topic::new("t", docs, vec![], 50).unwrap()
    }

    fn rec(doc: &str, ty: &str, ms: &[(&str, usize, usize, &str)]) -> ClusterRecord {
        ClusterRecord {
            doc_id: doc.into(),
            entity_type: ty.into(),
            mentions: ms
                .iter()
                .map(|(s, a, b, surf)| MentionRecord {
                    sentence_id: s.to_string(),
                    start: *a,
                    end: *b,
                    surface: surf.to_string(),
                    is_pronoun: false,
                })
                .collect(),
        }
    }

    #[test]
    fn merges_on_shared_surface_with_type_gate() {
        let topic = two_doc_topic(false);
        let records = vec![
            rec("a", "PERSON", &[("a0", 0, 2, "Barack Obama"), ("a1", 0, 1, "Obama")]),
            rec("b", "PERSON", &[("b0", 0, 1, "Obama")]),
            rec("a", "LOCATION", &[("a1", 2, 3, "Paris")]),
            rec("b", "PERSON", &[("b0", 2, 4, "Paris Hilton")]),
            rec("b", "MISC", &[("b0", 2, 3, "Paris")]),
        ];
        let clusters = merge_clusters(&records, &topic).unwrap();
        assert_eq!(clusters.len(), 3);
        assert_eq!(clusters[0].mentions.len(), 3);
        assert_eq!(clusters[0].full_form.surface, "Barack Obama");
        assert_eq!(clusters[0].short_form.surface, "Obama");
        assert_eq!(clusters[1].entity_type, EntityType::Location);
        assert_eq!(clusters[2].full_form.surface, "Paris Hilton");
    }

    #[test]
    fn merge_is_order_independent() {
        let records = vec![
            rec("a", "PERSON", &[("a0", 0, 2, "Barack Obama"), ("a1", 0, 1, "Obama")]),
            rec("b", "PERSON", &[("b0", 0, 1, "Obama")]),
            rec("b", "PERSON", &[("b0", 2, 4, "Paris Hilton")]),
        ];
        let base = merge_clusters(&records, &two_doc_topic(false)).unwrap();
        let mut reversed = records.clone();
        reversed.reverse();
        assert_eq!(merge_clusters(&reversed, &two_doc_topic(true)).unwrap(), base);
        assert_eq!(merge_clusters(&records, &two_doc_topic(true)).unwrap(), base);
    }

    #[test]
    fn single_mention_cluster() {
        let topic = two_doc_topic(false);
        let clusters = merge_clusters(&[rec("a", "ORG", &[("a1", 2, 3, "Paris")])], &topic).unwrap();
        assert_eq!(clusters[0].full_form, clusters[0].short_form);
    }

    #[test]
    fn span_checks() {
        let topic = two_doc_topic(false);
        let err = merge_clusters(&[rec("a", "PERSON", &[("a0", 1, 9, "x")])], &topic);
        assert!(matches!(err, Err(MentionError::SpanOutOfRange { .. })));
        let err = merge_clusters(&[rec("a", "PERSON", &[("zz", 0, 1, "x")])], &topic);
        assert!(matches!(err, Err(MentionError::MalformedMentions(_))));
    }

    #[test]
    fn gazetteer_fallback() {
        let mut topic = two_doc_topic(false);
        topic.entities = vec![EntityEntry {
            entity_type: "Person".into(),
            names: vec!["Barack Obama".into(), "Obama".into()],
        }];
        let clusters = load_or_derive_clusters(&topic).unwrap();
        assert_eq!(clusters.len(), 1);
        let spans: Vec<_> = clusters[0].mentions.iter().map(|m| (m.sentence_id.as_str(), m.span)).collect();
        assert_eq!(spans, [("a0", (0, 2)), ("a1", (0, 1)), ("b0", (0, 1))]);
    }
}
