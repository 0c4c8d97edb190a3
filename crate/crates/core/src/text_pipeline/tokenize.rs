use super::{Span, TextError, Token};

pub const MAX_QUESTION_CHARS: usize = 1024;

const EDGE_PUNCTUATION: &[char] = &['?', '.', '!', ',', '\'', '"'];

/// A question that is non-blank and within the length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawQuestion(String);

impl RawQuestion {
    pub fn new(text: &str) -> Result<Self, TextError> {
        if text.trim().is_empty() {
            return Err(TextError::EmptyQuestion);
        }
        let len = text.chars().count();
        if len > MAX_QUESTION_CHARS {
            return Err(TextError::QuestionTooLong { len, max: MAX_QUESTION_CHARS });
        }
        Ok(RawQuestion(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Splits on whitespace. Chunks made only of punctuation produce no token.
pub fn tokenize(question: &RawQuestion) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    let mut pos = 0;
    for ch in question.as_str().chars() {
        if ch.is_whitespace() {
            if !current.is_empty() {
                push_token(&mut tokens, std::mem::take(&mut current), start, pos);
            }
        } else {
            if current.is_empty() {
                start = pos;
            }
            current.push(ch);
        }
        pos += 1;
    }
    if !current.is_empty() {
        push_token(&mut tokens, current, start, pos);
    }
    tokens
}

fn push_token(tokens: &mut Vec<Token>, surface: String, start: usize, end: usize) {
    let norm = surface.trim_matches(EDGE_PUNCTUATION).to_lowercase();
    if norm.is_empty() {
        return;
    }
    tokens.push(Token { surface, norm, span: Span::new(start, end) });
}
