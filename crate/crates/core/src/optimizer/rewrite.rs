//! Entity mentions inside phrases and the surface text of a phrase under a
//! choice of mention forms.

use serde::{Deserialize, Serialize};

use crate::mentions::MentionCluster;
use crate::text;
use crate::treebank::Phrase;

/// How the first mention of an entity inside a phrase is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Original,
    Full,
    Short,
}

/// Mentions of one entity cluster inside one phrase. Only the first one is
/// subject to the optimizer's choice; the later ones are always short-form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionSlot {
    pub cluster: usize,
    /// Leaf span in the sentence.
    pub first: (usize, usize),
    pub later: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhrasePlan {
    pub slots: Vec<MentionSlot>,
}

/// Non-pronoun mentions lying inside the trimmed span of the phrase, grouped
/// by cluster in order of first appearance. Overlapping mentions keep the
/// earlier (then longer) one.
pub fn plan_phrase(phrase: &Phrase, clusters: &[MentionCluster]) -> PhrasePlan {
    let range = text::trim_phrase_range(&phrase.tokens);
    let lo = phrase.span.0 + range.start;
    let hi = phrase.span.0 + range.end;
    let mut found: Vec<((usize, usize), usize)> = clusters
        .iter()
        .enumerate()
        .flat_map(|(c, cl)| cl.mentions.iter().map(move |m| (m, c)))
        .filter(|(m, _)| !m.is_pronoun && m.sentence_id == phrase.sentence_id)
        .filter(|(m, _)| lo <= m.span.0 && m.span.1 <= hi && m.span.0 < m.span.1)
        .map(|(m, c)| (m.span, c))
        .collect();
    found.sort_by_key(|&((s, e), c)| (s, std::cmp::Reverse(e), c));

    let mut slots: Vec<MentionSlot> = Vec::new();
    let mut covered_to = lo;
    for (span, c) in found {
        if span.0 < covered_to {
            continue;
        }
        covered_to = span.1;
        match slots.iter_mut().find(|s| s.cluster == c) {
            Some(slot) => slot.later.push(span),
            None => slots.push(MentionSlot { cluster: c, first: span, later: Vec::new() }),
        }
    }
    PhrasePlan { slots }
}

/// Tokens of the trimmed phrase with the first mention of slot `k` rendered
/// as `forms[k]` and every later mention in short form.
pub fn phrase_tokens(phrase: &Phrase, plan: &PhrasePlan, clusters: &[MentionCluster], forms: &[Form]) -> Vec<String> {
    assert_eq!(plan.slots.len(), forms.len(), "one form per mention slot");
    let mut replace: Vec<((usize, usize), Option<&str>)> = Vec::new();
    for (slot, form) in plan.slots.iter().zip(forms) {
        let cl = &clusters[slot.cluster];
        let first = match form {
            Form::Original => None,
            Form::Full => Some(cl.full_form.surface.as_str()),
            Form::Short => Some(cl.short_form.surface.as_str()),
        };
        replace.push((slot.first, first));
        replace.extend(slot.later.iter().map(|&sp| (sp, Some(cl.short_form.surface.as_str()))));
    }
    replace.sort_by_key(|r| r.0);

    let range = text::trim_phrase_range(&phrase.tokens);
    let mut out = Vec::new();
    let mut i = phrase.span.0 + range.start;
    let end = phrase.span.0 + range.end;
    let mut next = replace.iter().peekable();
    while i < end {
        match next.peek() {
            Some(&&((s, e), form)) if s == i => {
                match form {
                    Some(surface) => out.extend(surface.split_whitespace().map(str::to_string)),
                    None => out.extend(phrase.tokens[s - phrase.span.0..e - phrase.span.0].iter().cloned()),
                }
                next.next();
                i = e;
            }
            _ => {
                out.push(phrase.tokens[i - phrase.span.0].clone());
                i += 1;
            }
        }
    }
    out
}

pub fn phrase_text(phrase: &Phrase, plan: &PhrasePlan, clusters: &[MentionCluster], forms: &[Form]) -> String {
    text::render_tokens(&phrase_tokens(phrase, plan, clusters, forms))
}

/// Word count with every first mention original, and the change in word
/// count from rendering slot `k` in full or short form instead.
pub fn length_terms(phrase: &Phrase, plan: &PhrasePlan, clusters: &[MentionCluster]) -> (usize, Vec<(i64, i64)>) {
    let n = plan.slots.len();
    let wc = |forms: &[Form]| text::count_words(&phrase_text(phrase, plan, clusters, forms)) as i64;
    let base_forms = vec![Form::Original; n];
    let base = wc(&base_forms);
    let deltas = (0..n)
        .map(|k| {
            let mut forms = base_forms.clone();
            forms[k] = Form::Full;
            let full = wc(&forms) - base;
            forms[k] = Form::Short;
            (full, wc(&forms) - base)
        })
        .collect();
    (base as usize, deltas)
}
