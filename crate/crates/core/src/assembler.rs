//! Turns a solved selection into summary text: sentence ordering, entity
//! rewriting and surface cleanup.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Topic;
use crate::mentions::MentionCluster;
use crate::optimizer::{rewrite, Form, IlpSolution, SelectionProblem};
use crate::salience::SaliencedPhrase;
use crate::text;

#[derive(Debug, Error, PartialEq)]
pub enum AssemblyError {
    #[error("emitted summary has {emitted} words but the optimizer accounted {accounted}")]
    LengthMismatch { emitted: usize, accounted: i64 },
    #[error("sentence {0} is not a news sentence of the topic")]
    UnknownSentence(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewrite {
    pub phrase_id: String,
    /// Leaf span of the replaced mention.
    pub span: (usize, usize),
    pub cluster_id: String,
    pub form: Form,
    pub replacement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DraftSentence {
    pub sentence_id: String,
    pub doc_id: String,
    pub pseudo_timestamp: i64,
    pub selected_phrases: Vec<String>,
    pub rewrites: Vec<Rewrite>,
    pub text: String,
    pub words: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SummaryDraft {
    pub sentences: Vec<DraftSentence>,
    pub total_words: usize,
}

impl SummaryDraft {
    /// One sentence per line.
    pub fn text(&self) -> String {
        self.sentences.iter().map(|s| format!("{}\n", s.text)).collect()
    }
}

fn finish_sentence(mut s: String) -> String {
    if let Some(first) = s.chars().next() {
        let upper: String = first.to_uppercase().collect();
        s.replace_range(..first.len_utf8(), &upper);
    }
    if !s.ends_with(['.', '!', '?']) {
        s.push('.');
    }
    s
}

pub fn assemble(
    problem: &SelectionProblem,
    solution: &IlpSolution,
    pool: &[SaliencedPhrase],
    clusters: &[MentionCluster],
    topic: &Topic,
) -> Result<SummaryDraft, AssemblyError> {
    let model = &problem.model;
    let slot_forms = solution.slot_forms(model);
    // Slots are numbered phrase by phrase, in plan order.
    let mut first_slot = Vec::with_capacity(pool.len());
    let mut next = 0;
    for plan in &problem.plans {
        first_slot.push(next);
        next += plan.slots.len();
    }

    let mut by_sentence: Vec<(String, Vec<usize>)> = Vec::new();
    for i in solution.selected_phrases(model) {
        let sid = &pool[i].phrase.sentence_id;
        match by_sentence.iter_mut().find(|(s, _)| s == sid) {
            Some((_, v)) => v.push(i),
            None => by_sentence.push((sid.clone(), vec![i])),
        }
    }

    let mut keyed = Vec::new();
    for (sid, mut phrases) in by_sentence {
        let sentence = topic.sentence(&sid).ok_or_else(|| AssemblyError::UnknownSentence(sid.clone()))?;
        let doc_id = sentence.doc_id.clone().ok_or_else(|| AssemblyError::UnknownSentence(sid.clone()))?;
        let (doc_index, doc) = topic
            .documents
            .iter()
            .enumerate()
            .find(|(_, d)| d.id == doc_id)
            .ok_or_else(|| AssemblyError::UnknownSentence(sid.clone()))?;
        phrases.sort_by_key(|&i| pool[i].phrase.span.0);

        let mut pieces = Vec::new();
        let mut rewrites = Vec::new();
        for &i in &phrases {
            let phrase = &pool[i].phrase;
            let plan = &problem.plans[i];
            let forms: Vec<Form> =
                (0..plan.slots.len()).map(|k| slot_forms[first_slot[i] + k].unwrap_or(Form::Original)).collect();
            for (slot, &form) in plan.slots.iter().zip(&forms) {
                let cl = &clusters[slot.cluster];
                let surface = |f: Form| match f {
                    Form::Full => cl.full_form.surface.clone(),
                    _ => cl.short_form.surface.clone(),
                };
                rewrites.push(Rewrite {
                    phrase_id: phrase.id.clone(),
                    span: slot.first,
                    cluster_id: cl.id.clone(),
                    form,
                    replacement: surface(form),
                });
                for &span in &slot.later {
                    rewrites.push(Rewrite {
                        phrase_id: phrase.id.clone(),
                        span,
                        cluster_id: cl.id.clone(),
                        form: Form::Short,
                        replacement: surface(Form::Short),
                    });
                }
            }
            let piece = rewrite::phrase_text(phrase, plan, clusters, &forms);
            if !piece.is_empty() {
                pieces.push(piece);
            }
        }
        if pieces.is_empty() {
            continue;
        }
        let text = finish_sentence(pieces.join(" "));
        let words = text::count_words(&text);
        keyed.push((
            (doc.timestamp, doc_index, sentence.position_in_doc),
            DraftSentence {
                sentence_id: sid,
                doc_id,
                pseudo_timestamp: doc.timestamp,
                selected_phrases: phrases.iter().map(|&i| pool[i].phrase.id.clone()).collect(),
                rewrites,
                text,
                words,
            },
        ));
    }
    keyed.sort_by_key(|k| k.0);
    let sentences: Vec<DraftSentence> = keyed.into_iter().map(|(_, s)| s).collect();

    let total_words = sentences.iter().map(|s| s.words).sum();
    let accounted = solution.accounted_words(model);
    if total_words as i64 != accounted {
        return Err(AssemblyError::LengthMismatch { emitted: total_words, accounted });
    }
    Ok(SummaryDraft { sentences, total_words })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentence_finishing() {
        assert_eq!(finish_sentence("an armed man walked into an Amish school".into()), "An armed man walked into an Amish school.");
        assert_eq!(finish_sentence("why?".into()), "Why?");
        assert_eq!(finish_sentence("émile left.".into()), "Émile left.");
    }
}
