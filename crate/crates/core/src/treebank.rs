//! Penn Treebank bracketed trees and NP/VP phrase extraction.
//!
//! Extraction rules, applied to the matrix `S` node:
//!
//! 1. NP and VP children of `S` are extracted (level 1).
//! 2. A level-1 VP (NP) with at least two parallel VP (NP) children has each
//!    of those children extracted as well (level 2). Recursion stops there.
//! 3. Sub-VPs that follow a modal or an auxiliary/linking verb are not
//!    extracted on their own.
//! 4. An `SBAR` or `S` child in subject position (before the first VP, with
//!    no NP before it) is extracted as an NP.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("unbalanced brackets at byte {position}")]
    UnbalancedBrackets { position: usize },
    #[error("empty tree")]
    EmptyTree,
    #[error("unexpected token {token:?} at byte {position}")]
    UnexpectedToken { token: String, position: usize },
    #[error("no S node found in tree")]
    NoSentenceNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseTree {
    /// Label with functional tags and co-indices stripped (`NP-SBJ-1` → `NP`).
    pub label: String,
    /// Functional tags that were stripped from the label.
    pub function_tags: Vec<String>,
    pub children: Vec<ParseTree>,
    /// Set on preterminals: `(NN cat)` is a leaf with label `NN`.
    pub leaf_token: Option<String>,
    pub span: (usize, usize),
}

impl ParseTree {
    pub fn is_leaf(&self) -> bool {
        self.leaf_token.is_some()
    }

    /// Leaf tokens in order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &self.leaf_token {
            Some(tok) => out.push(tok),
            None => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Node reached by following child indices from this node.
    pub fn node_at(&self, path: &[usize]) -> Option<&ParseTree> {
        path.iter().try_fold(self, |node, &i| node.children.get(i))
    }

    /// Path of the first node labelled `label` in pre-order.
    pub fn find_first(&self, label: &str) -> Option<Vec<usize>> {
        if self.label == label {
            return Some(Vec::new());
        }
        self.children.iter().enumerate().find_map(|(i, c)| {
            c.find_first(label).map(|mut p| {
                p.insert(0, i);
                p
            })
        })
    }

    fn write_brackets(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut label = self.label.clone();
        for tag in &self.function_tags {
            label.push('-');
            label.push_str(tag);
        }
        match &self.leaf_token {
            Some(tok) => write!(f, "({label} {tok})"),
            None => {
                write!(f, "({label}")?;
                for c in &self.children {
                    write!(f, " ")?;
                    c.write_brackets(f)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_brackets(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme<'a> {
    Open(usize),
    Close(usize),
    Atom(&'a str, usize),
}

fn lex(text: &str) -> Vec<Lexeme<'_>> {
    let mut out = Vec::new();
    let mut atom_start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = atom_start.take() {
                out.push(Lexeme::Atom(&text[s..i], s));
            }
            match c {
                '(' => out.push(Lexeme::Open(i)),
                ')' => out.push(Lexeme::Close(i)),
                _ => {}
            }
        } else if atom_start.is_none() {
            atom_start = Some(i);
        }
    }
    if let Some(s) = atom_start {
        out.push(Lexeme::Atom(&text[s..], s));
    }
    out
}

/// Splits `NP-SBJ-1` into (`NP`, [`SBJ`]). Labels starting with `-` such as
/// `-NONE-` are kept whole; numeric co-indices and `=` gap indices are dropped.
fn normalize_label(raw: &str) -> (String, Vec<String>) {
    if raw.starts_with('-') || raw.is_empty() {
        return (raw.to_string(), Vec::new());
    }
    let raw = raw.split('=').next().unwrap_or(raw);
    let mut parts = raw.split('-');
    let label = parts.next().unwrap_or_default().to_string();
    let tags = parts
        .filter(|p| !p.is_empty() && !p.chars().all(|c| c.is_ascii_digit()))
        .map(str::to_string)
        .collect();
    (label, tags)
}

struct Parser<'a> {
    lexemes: Vec<Lexeme<'a>>,
    pos: usize,
    end: usize,
    next_leaf: usize,
}

impl<'a> Parser<'a> {
    fn parse_node(&mut self) -> Result<ParseTree, TreeError> {
        // Caller guarantees the current lexeme is Open.
        self.pos += 1;
        let (label, function_tags) = match self.lexemes.get(self.pos) {
            Some(Lexeme::Atom(a, _)) => {
                self.pos += 1;
                normalize_label(a)
            }
            _ => (String::new(), Vec::new()),
        };
        let start = self.next_leaf;
        let mut children = Vec::new();
        let mut leaf_token = None;
        loop {
            match self.lexemes.get(self.pos) {
                None => return Err(TreeError::UnbalancedBrackets { position: self.end }),
                Some(Lexeme::Close(_)) => {
                    self.pos += 1;
                    break;
                }
                Some(Lexeme::Open(_)) => {
                    if leaf_token.is_some() {
                        let position = self.offset();
                        return Err(TreeError::UnexpectedToken { token: "(".into(), position });
                    }
                    children.push(self.parse_node()?);
                }
                Some(Lexeme::Atom(a, p)) => {
                    if leaf_token.is_some() || !children.is_empty() {
                        return Err(TreeError::UnexpectedToken { token: a.to_string(), position: *p });
                    }
                    leaf_token = Some(a.to_string());
                    self.next_leaf += 1;
                    self.pos += 1;
                }
            }
        }
        if leaf_token.is_none() && children.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        Ok(ParseTree { label, function_tags, children, leaf_token, span: (start, self.next_leaf) })
    }

    fn offset(&self) -> usize {
        match self.lexemes.get(self.pos) {
            Some(Lexeme::Open(p) | Lexeme::Close(p) | Lexeme::Atom(_, p)) => *p,
            None => self.end,
        }
    }
}

/// Parses one bracketed tree. An unlabeled outer bracket wrapping a single
/// tree, as in `( (S ...) )`, is removed.
pub fn parse_ptb(text: &str) -> Result<ParseTree, TreeError> {
    let lexemes = lex(text);
    match lexemes.first() {
        None => return Err(TreeError::EmptyTree),
        Some(Lexeme::Open(_)) => {}
        Some(Lexeme::Close(p)) => return Err(TreeError::UnbalancedBrackets { position: *p }),
        Some(Lexeme::Atom(a, p)) => {
            return Err(TreeError::UnexpectedToken { token: a.to_string(), position: *p })
        }
    }
    let mut parser = Parser { lexemes, pos: 0, end: text.len(), next_leaf: 0 };
    let mut tree = parser.parse_node()?;
    if parser.pos < parser.lexemes.len() {
        let position = parser.offset();
        return Err(match parser.lexemes[parser.pos] {
            Lexeme::Close(_) => TreeError::UnbalancedBrackets { position },
            Lexeme::Open(_) => TreeError::UnexpectedToken { token: "(".into(), position },
            Lexeme::Atom(a, _) => TreeError::UnexpectedToken { token: a.to_string(), position },
        });
    }
    while tree.label.is_empty() && tree.children.len() == 1 {
        tree = tree.children.pop().expect("one child");
    }
    Ok(tree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhraseKind {
    NP,
    VP,
}

impl fmt::Display for PhraseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhraseKind::NP => write!(f, "NP"),
            PhraseKind::VP => write!(f, "VP"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phrase {
    pub id: String,
    pub sentence_id: String,
    pub kind: PhraseKind,
    /// Label of the source node (`NP`, `VP`, `SBAR` or `S`).
    pub label: String,
    /// Child indices from the tree root to the source node.
    pub node_path: Vec<usize>,
    /// Leaf span `[start, end)` within the sentence.
    pub span: (usize, usize),
    /// Leaf tokens of the span.
    pub tokens: Vec<String>,
    pub word_count: usize,
    /// Ids of extracted phrases of the same sentence dominating this one.
    pub ancestors: Vec<String>,
}

impl Phrase {
    pub fn text(&self) -> String {
        text::render_tokens(text::trim_phrase_tokens(&self.tokens))
    }

    pub fn contains_span(&self, span: (usize, usize)) -> bool {
        self.span.0 <= span.0 && span.1 <= self.span.1
    }
}

fn is_verb_tag(label: &str) -> bool {
    label.starts_with("VB")
}

const AUXILIARY_FORMS: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m", "have", "has",
    "had", "having", "'ve", "'d", "do", "does", "did", "done", "doing",
];

/// Modal (`MD`) or a verb whose form is one of be/have/do.
fn is_auxiliary(node: &ParseTree) -> bool {
    match &node.leaf_token {
        Some(tok) if node.label == "MD" => !tok.is_empty(),
        Some(tok) if is_verb_tag(&node.label) => AUXILIARY_FORMS.contains(&tok.to_lowercase().as_str()),
        _ => false,
    }
}

/// Children with the given label, ignoring punctuation and coordinating
/// conjunctions.
fn parallel_children(node: &ParseTree, label: &str) -> Vec<usize> {
    node.children
        .iter()
        .enumerate()
        .filter(|(_, c)| c.label == label)
        .map(|(i, _)| i)
        .collect()
}

struct Extraction<'t> {
    root: &'t ParseTree,
    sentence_id: &'t str,
    found: Vec<(PhraseKind, Vec<usize>)>,
}

impl<'t> Extraction<'t> {
    fn push(&mut self, kind: PhraseKind, path: Vec<usize>) {
        self.found.push((kind, path));
    }

    fn level_two(&mut self, kind: PhraseKind, path: &[usize]) {
        let node = self.root.node_at(path).expect("valid path");
        let label = kind.to_string();
        let subs = parallel_children(node, &label);
        if subs.len() < 2 {
            return;
        }
        for i in subs {
            if kind == PhraseKind::VP && node.children[..i].iter().any(is_auxiliary) {
                continue;
            }
            let mut child = path.to_vec();
            child.push(i);
            self.push(kind, child);
        }
    }

    fn into_phrases(self) -> Vec<Phrase> {
        let Extraction { root, sentence_id, mut found } = self;
        found.sort_by_key(|(_, path)| {
            let node = root.node_at(path).expect("valid path");
            (node.span.0, std::cmp::Reverse(node.span.1), path.len())
        });
        let ids: Vec<String> = (0..found.len()).map(|k| format!("{sentence_id}/p{k}")).collect();
        found
            .iter()
            .enumerate()
            .filter_map(|(k, (kind, path))| {
                let node = root.node_at(path).expect("valid path");
                let tokens: Vec<String> = node.leaves().into_iter().map(str::to_string).collect();
                let word_count = text::count_word_tokens(text::trim_phrase_tokens(&tokens));
                if word_count == 0 {
                    return None;
                }
                let ancestors = found
                    .iter()
                    .enumerate()
                    .filter(|(j, (_, other))| *j != k && other.len() < path.len() && path.starts_with(other))
                    .map(|(j, _)| ids[j].clone())
                    .collect();
                Some(Phrase {
                    id: ids[k].clone(),
                    sentence_id: sentence_id.to_string(),
                    kind: *kind,
                    label: node.label.clone(),
                    node_path: path.clone(),
                    span: node.span,
                    tokens,
                    word_count,
                    ancestors,
                })
            })
            .collect()
    }
}

/// Extracts NP/VP candidates from the first `S` node of `tree`.
pub fn extract_phrases(tree: &ParseTree, sentence_id: &str) -> Result<Vec<Phrase>, TreeError> {
    let s_path = tree.find_first("S").ok_or(TreeError::NoSentenceNode)?;
    let s_node = tree.node_at(&s_path).expect("found path");
    let mut ex = Extraction { root: tree, sentence_id, found: Vec::new() };
    let first_vp = s_node.children.iter().position(|c| c.label == "VP");
    let mut seen_np = false;
    for (i, child) in s_node.children.iter().enumerate() {
        let mut path = s_path.clone();
        path.push(i);
        match child.label.as_str() {
            "NP" => {
                seen_np = true;
                ex.push(PhraseKind::NP, path.clone());
                ex.level_two(PhraseKind::NP, &path);
            }
            "VP" => {
                ex.push(PhraseKind::VP, path.clone());
                ex.level_two(PhraseKind::VP, &path);
            }
            "SBAR" | "S" => {
                let subject_tag = child.function_tags.iter().any(|t| t == "SBJ");
                let before_vp = first_vp.is_some_and(|v| i < v);
                if subject_tag || (before_vp && !seen_np) {
                    seen_np = true;
                    ex.push(PhraseKind::NP, path);
                }
            }
            _ => {}
        }
    }
    Ok(ex.into_phrases())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const ARMED_MAN: &str = "(ROOT (S (NP (DT An) (JJ armed) (NN man)) \
        (VP (VP (VBD walked) (PP (IN into) (NP (DT an) (NNP Amish) (NN school)))) (, ,) \
        (VP (VBD sent) (NP (DT the) (NNS boys)) (ADVP (RB outside))) (CC and) \
        (VP (VP (VBD tied) (PRT (RP up))) (CC and) \
        (VP (VBD shot) (NP (DT the) (NNS girls)) (, ,) \
        (S (VP (VBG killing) (NP (NP (CD three)) (PP (IN of) (NP (PRP them))))))))) (. .)))";

    #[test]
    fn parses_simple_tree() {
        let t = parse_ptb("(S (NP (DT the) (NN cat)) (VP (VBD sat)))").unwrap();
        assert_eq!(t.label, "S");
        assert_eq!(t.children[0].label, "NP");
        assert_eq!(t.children[0].span, (0, 2));
        assert_eq!(t.children[1].label, "VP");
        assert_eq!(t.children[1].span, (2, 3));
        assert_eq!(t.leaves(), ["the", "cat", "sat"]);
    }

    #[test]
    fn unbalanced_reports_end_of_input() {
        let src = "(S (NP (DT the)";
        assert_eq!(parse_ptb(src), Err(TreeError::UnbalancedBrackets { position: src.len() }));
        assert!(matches!(parse_ptb("(S (NN a)))"), Err(TreeError::UnbalancedBrackets { .. })));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_ptb(""), Err(TreeError::EmptyTree));
        assert_eq!(parse_ptb("   "), Err(TreeError::EmptyTree));
        assert_eq!(parse_ptb("(S )"), Err(TreeError::EmptyTree));
    }

    #[test]
    fn functional_tags_are_stripped_and_kept() {
        let t = parse_ptb("(S (NP-SBJ (NN dog)) (VP (VBD ran)))").unwrap();
        assert_eq!(t.children[0].label, "NP");
        assert_eq!(t.children[0].function_tags, ["SBJ"]);
        let t = parse_ptb("(S (NP-SBJ-1 (-NONE- *T*)) (VP (VBD ran)))").unwrap();
        assert_eq!(t.children[0].function_tags, ["SBJ"]);
        assert_eq!(t.children[0].children[0].label, "-NONE-");
    }

    #[test]
    fn display_round_trips() {
        let src = "(S (NP-SBJ (DT the) (NN cat)) (VP (VBD sat)))";
        assert_eq!(parse_ptb(src).unwrap().to_string(), src);
    }

    #[test]
    fn spans_are_contiguous() {
        fn check(node: &ParseTree) {
            if node.is_leaf() {
                assert!(node.children.is_empty());
                assert_eq!(node.span.1, node.span.0 + 1);
                return;
            }
            assert_eq!(node.children.first().unwrap().span.0, node.span.0);
            assert_eq!(node.children.last().unwrap().span.1, node.span.1);
            for w in node.children.windows(2) {
                assert_eq!(w[0].span.1, w[1].span.0);
            }
            node.children.iter().for_each(check);
        }
        check(&parse_ptb(ARMED_MAN).unwrap());
    }

    #[test]
    fn armed_man_decomposition() {
        let tree = parse_ptb(ARMED_MAN).unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        let texts: Vec<String> = phrases.iter().map(Phrase::text).collect();
        assert_eq!(
            texts,
            [
                "An armed man",
                "walked into an Amish school, sent the boys outside and tied up and shot the girls, killing three of them",
                "walked into an Amish school",
                "sent the boys outside",
                "tied up and shot the girls, killing three of them",
            ]
        );
        assert!(phrases[0].ancestors.is_empty());
        assert!(phrases[1].ancestors.is_empty());
        for p in &phrases[2..] {
            assert_eq!(p.ancestors, [phrases[1].id.clone()]);
            assert_eq!(p.kind, PhraseKind::VP);
        }
    }

    #[test]
    fn modal_sub_vp_not_extracted() {
        let tree = parse_ptb("(S (NP (PRP He)) (VP (MD may) (VP (VB leave))))").unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        assert_eq!(phrases.len(), 2);
        assert_eq!(phrases[1].text(), "may leave");
    }

    #[test]
    fn auxiliary_blocks_parallel_sub_vps() {
        let tree = parse_ptb(
            "(S (NP (NNS Police)) (VP (VBP have) (VP (VBN arrived)) (CC and) (VP (VBN left))))",
        )
        .unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        assert_eq!(phrases.len(), 2);
    }

    #[test]
    fn single_clause_has_two_phrases() {
        let tree = parse_ptb("(S (NP (DT the) (NN cat)) (VP (VBD sat)) (. .))").unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        assert_eq!(phrases.len(), 2);
        assert!(phrases.iter().all(|p| p.ancestors.is_empty()));
        assert_eq!(phrases[0].kind, PhraseKind::NP);
        assert_eq!(phrases[1].kind, PhraseKind::VP);
    }

    #[test]
    fn subject_clause_is_np() {
        let tree = parse_ptb(
            "(S (SBAR (IN That) (S (NP (PRP he)) (VP (VBD left)))) (VP (VBD surprised) (NP (PRP us))))",
        )
        .unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        assert_eq!(phrases.len(), 2);
        assert_eq!(phrases[0].kind, PhraseKind::NP);
        assert_eq!(phrases[0].label, "SBAR");
        assert_eq!(phrases[0].text(), "That he left");
    }

    #[test]
    fn coordinated_np_splits_once() {
        let tree = parse_ptb(
            "(S (NP (NP (NNP Police)) (CC and) (NP (NNS medics))) (VP (VBD arrived)))",
        )
        .unwrap();
        let phrases = extract_phrases(&tree, "s").unwrap();
        let texts: Vec<String> = phrases.iter().map(Phrase::text).collect();
        assert_eq!(texts, ["Police and medics", "Police", "medics", "arrived"]);
    }

    #[test]
    fn missing_s_node() {
        let tree = parse_ptb("(NP (DT the) (NN cat))").unwrap();
        assert_eq!(extract_phrases(&tree, "s"), Err(TreeError::NoSentenceNode));
    }
}
