use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Closed set of part-of-speech tags. Anything the tagger cannot place in a
/// more specific class becomes `OTHER`.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tag {
    NN,
    NNS,
    JJ,
    VB,
    VBD,
    VBG,
    VBN,
    VBZ,
    DT,
    IN,
    WP,
    WRB,
    CC,
    CD,
    OTHER,
}

impl Tag {
    pub const ALL: [Tag; 15] = [
        Tag::NN,
        Tag::NNS,
        Tag::JJ,
        Tag::VB,
        Tag::VBD,
        Tag::VBG,
        Tag::VBN,
        Tag::VBZ,
        Tag::DT,
        Tag::IN,
        Tag::WP,
        Tag::WRB,
        Tag::CC,
        Tag::CD,
        Tag::OTHER,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Tag::NN => "NN",
            Tag::NNS => "NNS",
            Tag::JJ => "JJ",
            Tag::VB => "VB",
            Tag::VBD => "VBD",
            Tag::VBG => "VBG",
            Tag::VBN => "VBN",
            Tag::VBZ => "VBZ",
            Tag::DT => "DT",
            Tag::IN => "IN",
            Tag::WP => "WP",
            Tag::WRB => "WRB",
            Tag::CC => "CC",
            Tag::CD => "CD",
            Tag::OTHER => "OTHER",
        }
    }

    pub fn is_noun(self) -> bool {
        matches!(self, Tag::NN | Tag::NNS)
    }

    pub fn is_adjective(self) -> bool {
        self == Tag::JJ
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tag::ALL.into_iter().find(|t| t.as_str() == s).ok_or(())
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon line {line}: expected `word<TAB>TAG`")]
    Malformed { line: usize },
    #[error("lexicon line {line}: unknown tag {tag:?}")]
    UnknownTag { line: usize, tag: String },
}

/// Word-to-tag table backing the tagger.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: HashMap<String, Tag>,
}

impl Lexicon {
    /// Parses `word<TAB>TAG` lines. Blank lines and `#` comments are skipped;
    /// a later entry for the same word replaces an earlier one.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = line.split_once('\t').ok_or(LexiconError::Malformed { line: i + 1 })?;
            let word = word.trim().to_lowercase();
            if word.is_empty() {
                return Err(LexiconError::Malformed { line: i + 1 });
            }
            let tag = tag.trim();
            let tag = tag.parse().map_err(|_| LexiconError::UnknownTag { line: i + 1, tag: tag.to_string() })?;
            entries.insert(word, tag);
        }
        Ok(Lexicon { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| LexiconError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<Tag> {
        self.entries.get(word).copied()
    }

    /// Tags one lemma. Priority: closed-class words, the lexicon, suffix
    /// heuristics, then `NN`.
    pub fn tag(&self, lemma: &str) -> Tag {
        closed_class(lemma).or_else(|| self.get(lemma)).unwrap_or_else(|| suffix_tag(lemma))
    }

    pub fn tag_all<S: AsRef<str>>(&self, lemmas: &[S]) -> Vec<Tag> {
        lemmas.iter().map(|l| self.tag(l.as_ref())).collect()
    }
}

fn closed_class(word: &str) -> Option<Tag> {
    let tag = match word {
        "the" | "a" | "an" | "this" | "that" | "these" | "those" | "every" | "each" | "some" | "any" | "all" | "no"
        | "another" | "either" | "neither" => Tag::DT,
        "in" | "on" | "at" | "of" | "for" | "with" | "from" | "by" | "to" | "about" | "near" | "into" | "under"
        | "over" | "between" | "without" | "within" | "around" | "across" | "than" | "like" | "during" | "through"
        | "outside" | "inside" | "per" => Tag::IN,
        "what" | "who" | "whom" | "which" | "whose" | "whatever" => Tag::WP,
        "where" | "when" | "why" | "how" => Tag::WRB,
        "and" | "or" | "but" | "nor" => Tag::CC,
        "be" | "have" | "do" | "can" | "could" | "will" | "would" | "shall" | "should" | "may" | "might" | "must" => {
            Tag::VB
        }
        "i" | "me" | "my" | "you" | "your" | "we" | "us" | "our" | "they" | "them" | "their" | "it" | "its" | "he"
        | "him" | "his" | "she" | "her" | "not" | "there" | "here" => Tag::OTHER,
        _ if is_number(word) => Tag::CD,
        _ => return None,
    };
    Some(tag)
}

fn is_number(word: &str) -> bool {
    let digits = word.strip_prefix('-').unwrap_or(word);
    !digits.is_empty()
        && digits.chars().any(|c| c.is_ascii_digit())
        && digits.chars().all(|c| c.is_ascii_digit() || c == '.')
        && digits.matches('.').count() <= 1
}

fn suffix_tag(word: &str) -> Tag {
    if ["ian", "ese", "ish"].iter().any(|s| word.ends_with(s)) {
        Tag::JJ
    } else if word.ends_with("ing") {
        Tag::VBG
    } else if word.ends_with("ed") {
        Tag::VBD
    } else {
        Tag::NN
    }
}
