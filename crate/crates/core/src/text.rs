//! Tokenization, stemming, stopwords and the word-counting rule shared by
//! the optimizer, the assembler and the baselines.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const STOPWORDS_TXT: &str = include_str!("../data/stopwords.txt");
const PRONOUNS_TXT: &str = include_str!("../data/pronouns.txt");

fn word_list(src: &'static str) -> HashSet<&'static str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn stopword_set() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| word_list(STOPWORDS_TXT))
}

fn pronoun_set() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| word_list(PRONOUNS_TXT))
}

/// Case-insensitive membership in the shipped stopword list.
pub fn is_stopword(word: &str) -> bool {
    stopword_set().contains(word.to_lowercase().as_str())
}

/// Case-insensitive membership in the shipped pronoun list.
pub fn is_pronoun(word: &str) -> bool {
    pronoun_set().contains(word.to_lowercase().as_str())
}

/// A surface phrase is a pronoun when it is exactly one word from the list.
pub fn is_pronoun_phrase(surface: &str) -> bool {
    let words: Vec<&str> = surface.split_whitespace().collect();
    words.len() == 1 && is_pronoun(words[0])
}

/// Porter stem of the lowercased word.
pub fn stem(word: &str) -> String {
    porter_stemmer::stem(&word.to_lowercase())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub stem: String,
    pub is_stopword: bool,
}

impl Token {
    pub fn new(surface: &str) -> Self {
        Token {
            surface: surface.to_string(),
            stem: stem(surface),
            is_stopword: is_stopword(surface),
        }
    }
}

/// Splits on whitespace and punctuation. Tokens are maximal runs of
/// alphanumeric characters; everything else is a separator and dropped.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(Token::new)
        .collect()
}

/// Stems of the non-stopword tokens, in order.
pub fn content_stems(tokens: &[Token]) -> Vec<&str> {
    tokens
        .iter()
        .filter(|t| !t.is_stopword)
        .map(|t| t.stem.as_str())
        .collect()
}

/// Dictionary keys for a token sequence: every content unigram followed by
/// every bigram of adjacent content stems (stopwords removed first).
pub fn term_keys(tokens: &[Token]) -> Vec<String> {
    let stems = content_stems(tokens);
    let mut keys: Vec<String> = stems.iter().map(|s| s.to_string()).collect();
    keys.extend(stems.windows(2).map(|w| bigram_key(w[0], w[1])));
    keys
}

pub fn bigram_key(a: &str, b: &str) -> String {
    format!("{a}_{b}")
}

/// Converts Penn Treebank escapes back to plain characters.
pub fn unescape_ptb(token: &str) -> &str {
    match token {
        "-LRB-" | "-LCB-" | "-LSB-" => "(",
        "-RRB-" | "-RCB-" | "-RSB-" => ")",
        "``" | "''" => "\"",
        other => other,
    }
}

/// No alphanumeric character at all.
pub fn is_punctuation(token: &str) -> bool {
    !token.chars().any(char::is_alphanumeric)
}

fn is_clitic(token: &str) -> bool {
    let lower = token.to_lowercase();
    (token.starts_with('\'') && token.len() > 1) || lower == "n't"
}

/// A token that contributes one word to the rendered text.
pub fn is_word_token(token: &str) -> bool {
    !is_punctuation(token) && !is_clitic(token)
}

fn attaches_forward(token: &str) -> bool {
    matches!(token, "(" | "[" | "{" | "$" | "#")
}

/// Words of a surface text: whitespace tokens, ignoring punctuation-only ones.
pub fn count_words(text: &str) -> usize {
    text.split_whitespace().filter(|t| !is_punctuation(t)).count()
}

/// Joins treebank tokens into surface text. Punctuation and clitics attach
/// to the previous token, opening brackets to the next one.
pub fn render_tokens<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut glue_next = false;
    for (i, raw) in tokens.iter().enumerate() {
        let tok = unescape_ptb(raw.as_ref());
        let attach_prev = i > 0 && !attaches_forward(tok) && (is_punctuation(tok) || is_clitic(tok));
        if i > 0 && !attach_prev && !glue_next {
            out.push(' ');
        }
        out.push_str(tok);
        glue_next = attaches_forward(tok);
    }
    out
}

/// Drops leading non-word tokens and trailing punctuation so that a phrase
/// never starts or ends with dangling punctuation.
pub fn trim_phrase_tokens<S: AsRef<str>>(tokens: &[S]) -> &[S] {
    &tokens[trim_phrase_range(tokens)]
}

/// Index range kept by [`trim_phrase_tokens`].
pub fn trim_phrase_range<S: AsRef<str>>(tokens: &[S]) -> std::ops::Range<usize> {
    let start = tokens
        .iter()
        .position(|t| is_word_token(unescape_ptb(t.as_ref())) || attaches_forward(unescape_ptb(t.as_ref())))
        .unwrap_or(tokens.len());
    let end = tokens
        .iter()
        .rposition(|t| !is_punctuation(unescape_ptb(t.as_ref())))
        .map_or(start, |e| e + 1)
        .max(start);
    start..end
}

/// Words of a token sequence as rendered text.
pub fn count_word_tokens<S: AsRef<str>>(tokens: &[S]) -> usize {
    count_words(&render_tokens(tokens))
}
