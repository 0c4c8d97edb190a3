//! Shallow English analysis: tokenization, lemmatization, POS tagging and
//! noun-phrase chunking.
//!
//! Lemmatization runs before tagging, so the tagger only ever sees base
//! forms. Everything here is a pure function over its inputs.

mod chunk;
mod lemmatize;
mod tagger;
mod tokenize;

pub use chunk::{chunk_noun_phrases, extract_candidates};
pub use lemmatize::lemmatize;
pub use tagger::{Lexicon, LexiconError, Tag};
pub use tokenize::{tokenize, RawQuestion, MAX_QUESTION_CHARS};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("the question is empty")]
    EmptyQuestion,
    #[error("the question is {len} characters long; the limit is {max}")]
    QuestionTooLong { len: usize, max: usize },
}

/// Half-open range of character (not byte) offsets into the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// The whitespace-delimited chunk exactly as typed.
    pub surface: String,
    /// Lowercased surface with edge punctuation removed.
    pub norm: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub norm: String,
    pub lemma: String,
    pub tag: Tag,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhraseKind {
    Noun,
    Adjective,
    NounPhrase,
}

/// A unit handed to the mapper: a single noun/adjective, or a chunked noun
/// phrase of two or more words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CandidatePhrase {
    pub lemmas: Vec<String>,
    /// Normalized (unlemmatized) words, parallel to `lemmas`.
    pub words: Vec<String>,
    pub kind: PhraseKind,
    pub span: Span,
}

impl CandidatePhrase {
    pub fn lemma_text(&self) -> String {
        self.lemmas.join(" ")
    }

    pub fn surface_text(&self) -> String {
        self.words.join(" ")
    }
}

/// Lemmatizes each token and tags the lemma.
pub fn tag_tokens(lexicon: &Lexicon, tokens: &[Token]) -> Vec<TaggedToken> {
    tokens
        .iter()
        .map(|t| {
            let lemma = lemmatize(&t.norm);
            let tag = lexicon.tag(&lemma);
            TaggedToken { norm: t.norm.clone(), lemma, tag, span: t.span }
        })
        .collect()
}

/// Runs the whole pipeline: tokenize, lemmatize, tag, extract candidates.
pub fn analyze(lexicon: &Lexicon, text: &str) -> Result<Vec<CandidatePhrase>, TextError> {
    let question = RawQuestion::new(text)?;
    let tokens = tokenize(&question);
    let tagged = tag_tokens(lexicon, &tokens);
    Ok(extract_candidates(&tagged))
}
