use super::{CandidatePhrase, PhraseKind, Span, TaggedToken};

/// Finds maximal `JJ* NN+` runs of two or more tokens.
pub fn chunk_noun_phrases(tagged: &[TaggedToken]) -> Vec<CandidatePhrase> {
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < tagged.len() {
        let start = i;
        while i < tagged.len() && tagged[i].tag.is_adjective() {
            i += 1;
        }
        let nouns_start = i;
        while i < tagged.len() && tagged[i].tag.is_noun() {
            i += 1;
        }
        if i > nouns_start && i - start >= 2 {
            phrases.push(phrase(&tagged[start..i], PhraseKind::NounPhrase));
        }
        if i == start {
            i += 1;
        }
    }
    phrases
}

/// Noun phrases first, then every single noun or adjective, each group in
/// source order. Words inside a noun phrase are also listed on their own;
/// the mapper decides which reading wins.
pub fn extract_candidates(tagged: &[TaggedToken]) -> Vec<CandidatePhrase> {
    let mut candidates = chunk_noun_phrases(tagged);
    for t in tagged {
        let kind = if t.tag.is_noun() {
            PhraseKind::Noun
        } else if t.tag.is_adjective() {
            PhraseKind::Adjective
        } else {
            continue;
        };
        candidates.push(phrase(std::slice::from_ref(t), kind));
    }
    candidates
}

fn phrase(tokens: &[TaggedToken], kind: PhraseKind) -> CandidatePhrase {
    CandidatePhrase {
        lemmas: tokens.iter().map(|t| t.lemma.clone()).collect(),
        words: tokens.iter().map(|t| t.norm.clone()).collect(),
        kind,
        span: Span::new(tokens[0].span.start, tokens[tokens.len() - 1].span.end),
    }
}
