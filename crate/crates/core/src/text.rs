//! Tokenization shared by the tagger, the splitter and the judges.
//!
//! Words are maximal runs of alphanumeric characters; every other
//! non-space character is a token of its own. Offsets are byte offsets
//! into the original text, and matching is done on the lowercased form.

use std::ops::Range;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Lowercased text.
    pub norm: String,
    pub begin: usize,
    pub end: usize,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.norm.chars().next().is_some_and(char::is_alphanumeric)
    }

    pub fn span(&self) -> Range<usize> {
        self.begin..self.end
    }
}

pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c.is_alphanumeric() {
            word_start.get_or_insert(i);
            continue;
        }
        if let Some(s) = word_start.take() {
            tokens.push(make(text, s, i));
        }
        if !c.is_whitespace() {
            tokens.push(make(text, i, i + c.len_utf8()));
        }
    }
    if let Some(s) = word_start {
        tokens.push(make(text, s, text.len()));
    }
    tokens
}

fn make(text: &str, begin: usize, end: usize) -> Token {
    Token {
        norm: text[begin..end].to_lowercase(),
        begin,
        end,
    }
}

/// Lowercased word tokens only.
pub fn words(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(Token::is_word)
        .map(|t| t.norm)
        .collect()
}

/// Collapses runs of whitespace and trims the ends.
pub fn squash_spaces(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}
