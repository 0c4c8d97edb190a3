/// Reduces an inflected lowercase word to its base form.
///
/// An exception table handles irregular forms; otherwise the first matching
/// suffix rule applies: `'s` → ∅, `-ies` → `-y`, `-ves` → `-f`,
/// `-es` → ∅ (after a sibilant stem), `-s` → ∅. Unknown words pass through.
/// The result is always a fixed point of this function.
pub fn lemmatize(word: &str) -> String {
    if let Some(base) = exception(word) {
        return base.to_string();
    }
    if let Some(stem) = word.strip_suffix("'s") {
        if !stem.is_empty() {
            return lemmatize(stem);
        }
    }
    // A rule can land on an irregular form ("ares" -> "are"), so the
    // exception table gets the last word.
    let stem = strip_suffix_rules(word);
    match exception(&stem) {
        Some(base) => base.to_string(),
        None => stem,
    }
}

fn strip_suffix_rules(word: &str) -> String {
    let len = word.chars().count();
    if len > 4 {
        if let Some(stem) = word.strip_suffix("ies") {
            return format!("{stem}y");
        }
    }
    if len > 4 {
        if let Some(stem) = word.strip_suffix("ves") {
            return format!("{stem}f");
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if ["ss", "us", "x", "z", "ch", "sh"].iter().any(|s| stem.ends_with(s)) {
            return stem.to_string();
        }
    }
    if len > 3 && !["ss", "us", "is"].iter().any(|s| word.ends_with(s)) {
        if let Some(stem) = word.strip_suffix('s') {
            return stem.to_string();
        }
    }
    word.to_string()
}

fn exception(word: &str) -> Option<&'static str> {
    let base = match word {
        "am" | "is" | "are" | "was" | "were" | "been" | "being" => "be",
        "has" | "had" | "having" => "have",
        "does" | "did" | "done" => "do",
        "went" | "gone" | "goes" => "go",
        "children" => "child",
        "people" => "person",
        "men" => "man",
        "women" => "woman",
        "feet" => "foot",
        "teeth" => "tooth",
        "mice" => "mouse",
        "geese" => "goose",
        "knives" => "knife",
        "wives" => "wife",
        "lives" => "life",
        "olives" => "olive",
        "serves" => "serve",
        "gives" => "give",
        "loves" => "love",
        "moves" => "move",
        "drives" => "drive",
        "arrives" => "arrive",
        "saves" => "save",
        "receives" => "receive",
        "believes" => "believe",
        "deserves" => "deserve",
        "reserves" => "reserve",
        "caves" => "cave",
        "waves" => "wave",
        "curves" => "curve",
        "stoves" => "stove",
        "groves" => "grove",
        "cafes" => "cafe",
        // Words that look plural but are not.
        "this" => "this",
        "thus" => "thus",
        "plus" => "plus",
        "news" => "news",
        "series" => "series",
        "species" => "species",
        "always" => "always",
        "perhaps" => "perhaps",
        "whereas" => "whereas",
        "towards" => "towards",
        "lens" => "lens",
        "canvas" => "canvas",
        "atlas" => "atlas",
        "texas" => "texas",
        _ => return None,
    };
    Some(base)
}
