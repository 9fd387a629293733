use crate::corpus::{LIST_PREFIX, OUTLINE_PREFIX};
use crate::dictionary::normalize_name;
use crate::error::{Error, Result};

pub const GLOSSARY_PREFIX: &str = "Glossary of ";

/// Irregular plurals, lowercase.
const IRREGULAR: &[(&str, &str)] = &[
    ("people", "person"),
    ("men", "man"),
    ("women", "woman"),
    ("children", "child"),
    ("mice", "mouse"),
    ("feet", "foot"),
    ("teeth", "tooth"),
    ("indices", "index"),
    ("vertices", "vertex"),
    ("matrices", "matrix"),
    ("appendices", "appendix"),
    ("axes", "axis"),
    ("analyses", "analysis"),
    ("theses", "thesis"),
    ("hypotheses", "hypothesis"),
    ("crises", "crisis"),
    ("criteria", "criterion"),
    ("phenomena", "phenomenon"),
    ("automata", "automaton"),
    ("schemata", "schema"),
    ("corpora", "corpus"),
    ("radii", "radius"),
    ("foci", "focus"),
    ("loci", "locus"),
    ("caches", "cache"),
    ("niches", "niche"),
];

/// Singular form of one word; case of the untouched prefix is kept.
pub fn singularize_word(word: &str) -> String {
    let lower = word.to_lowercase();
    if let Some((_, singular)) = IRREGULAR.iter().find(|(plural, _)| *plural == lower) {
        return match_case(word, singular);
    }
    let strip = |n: usize| {
        let keep = word.chars().count().saturating_sub(n);
        word.chars().take(keep).collect::<String>()
    };
    if lower.len() <= 3
        || lower.ends_with("ss")
        || lower.ends_with("us")
        || lower.ends_with("is")
        || lower.ends_with("ics")
        || lower.ends_with("series")
        || lower.ends_with("species")
        || !lower.ends_with('s')
    {
        word.to_string()
    } else if lower.ends_with("ies") {
        format!("{}{}", strip(3), if word.ends_with("IES") { "Y" } else { "y" })
    } else if lower.ends_with("sses") || lower.ends_with("xes") || lower.ends_with("ches") || lower.ends_with("shes") {
        strip(2)
    } else {
        strip(1)
    }
}

fn match_case(original: &str, replacement: &str) -> String {
    if original.chars().next().is_some_and(char::is_uppercase) {
        capitalize(replacement)
    } else {
        replacement.to_string()
    }
}

pub fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Singularizes the final word of a phrase.
pub fn singularize(phrase: &str) -> String {
    let trimmed = phrase.trim_end();
    let split = trimmed
        .rfind(|c: char| !c.is_alphanumeric())
        .map(|i| i + trimmed[i..].chars().next().unwrap().len_utf8())
        .unwrap_or(0);
    format!("{}{}", &trimmed[..split], singularize_word(&trimmed[split..]))
}

/// Relation id from a template row header: words case-folded, final word
/// singularized, camel-cased, suffixed with `Of`.
pub fn derive_relation_name(row_header: &str) -> Result<String> {
    let words: Vec<String> = row_header
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect();
    let Some((last, init)) = words.split_last() else {
        return Err(Error::EmptyHeader(row_header.to_string()));
    };
    let mut id = String::new();
    for (i, word) in init.iter().chain(std::iter::once(&singularize_word(last))).enumerate() {
        if i == 0 {
            id.push_str(word);
        } else {
            id.push_str(&capitalize(word));
        }
    }
    id.push_str("Of");
    Ok(id)
}

/// Canonical key of the subject of an overview or glossary page:
/// the title without its prefix, singularized, first letter capitalized.
pub fn page_subject(title: &str) -> Option<String> {
    let title = title.trim();
    let rest = [LIST_PREFIX, OUTLINE_PREFIX, GLOSSARY_PREFIX]
        .iter()
        .find_map(|p| title.strip_prefix(p))
        .unwrap_or(title);
    normalize_name(&capitalize(&singularize(rest))).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_names() {
        assert_eq!(derive_relation_name("Concepts").unwrap(), "conceptOf");
        assert_eq!(derive_relation_name("Functions").unwrap(), "functionOf");
        assert_eq!(derive_relation_name("Key people").unwrap(), "keyPersonOf");
        assert_eq!(derive_relation_name("Data structures").unwrap(), "dataStructureOf");
        assert_eq!(derive_relation_name(" Query-languages! ").unwrap(), "queryLanguageOf");
        assert_eq!(derive_relation_name("Objects").unwrap(), "objectOf");
        assert!(matches!(derive_relation_name(" -- "), Err(Error::EmptyHeader(_))));
        assert!(derive_relation_name("").is_err());
    }

    #[test]
    fn singular_words() {
        let cases = [
            ("structures", "structure"),
            ("Theories", "Theory"),
            ("classes", "class"),
            ("approaches", "approach"),
            ("caches", "cache"),
            ("indexes", "index"),
            ("Indices", "Index"),
            ("process", "process"),
            ("analysis", "analysis"),
            ("graphics", "graphics"),
            ("status", "status"),
            ("bus", "bus"),
            ("people", "person"),
            ("algorithm", "algorithm"),
            ("gas", "gas"),
            ("series", "series"),
        ];
        for (plural, singular) in cases {
            assert_eq!(singularize_word(plural), singular, "{plural}");
        }
        assert_eq!(singularize("data structures"), "data structure");
        assert_eq!(singularize("hash functions "), "hash function");
        assert_eq!(singularize(""), "");
    }

    #[test]
    fn subjects() {
        assert_eq!(page_subject("List of data structures").unwrap(), "Data_structure");
        assert_eq!(page_subject("Outline of cryptography").unwrap(), "Cryptography");
        assert_eq!(
            page_subject("Glossary of computer graphics").unwrap(),
            "Computer_graphics"
        );
        assert_eq!(
            page_subject("List of machine learning concepts").unwrap(),
            "Machine_learning_concept"
        );
        assert_eq!(page_subject("List of ").as_deref(), Some("List_of"));
    }
}
