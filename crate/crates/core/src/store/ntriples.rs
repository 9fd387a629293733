use std::path::Path;

use crate::error::{Error, Result};
use crate::triple::TripleKey;

use super::TripleStore;

pub const ENTITY_NS: &str = "tkb:";
pub const RELATION_NS: &str = "tkbr:";

fn is_plain(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'(' | b')' | b'-' | b'.')
}

/// Percent-encodes every byte outside `[A-Za-z0-9_()-.]`.
pub fn encode_iri(key: &str) -> String {
    let mut out = String::with_capacity(key.len());
    for &b in key.as_bytes() {
        if is_plain(b) {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

/// Inverse of [`encode_iri`]; `None` on a bad escape or non-UTF-8 result.
pub fn decode_iri(encoded: &str) -> Option<String> {
    let bytes = encoded.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hex = encoded.get(i + 1..i + 3)?;
            out.push(u8::from_str_radix(hex, 16).ok()?);
            i += 3;
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).ok()
}

pub(super) fn line((s, r, o): &TripleKey) -> String {
    format!(
        "<{ENTITY_NS}{}> <{RELATION_NS}{}> <{ENTITY_NS}{}> .",
        encode_iri(s),
        encode_iri(r),
        encode_iri(o)
    )
}

fn term<'a>(token: &'a str, ns: &str) -> std::result::Result<String, &'a str> {
    let inner = token
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .and_then(|t| t.strip_prefix(ns))
        .ok_or(token)?;
    if inner.is_empty() {
        return Err(token);
    }
    decode_iri(inner).ok_or(token)
}

/// Parses N-Triples text written by [`TripleStore::write_ntriples`].
/// Blank lines are skipped; `path` is used in error messages only.
pub fn parse_ntriples(text: &str, path: &Path) -> Result<TripleStore> {
    let mut store = TripleStore::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::parse(path, i + 1, msg);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [s, r, o, "."] = tokens.as_slice() else {
            return Err(err(format!("expected `<s> <r> <o> .`, found {line:?}")));
        };
        let decoded = (term(s, ENTITY_NS), term(r, RELATION_NS), term(o, ENTITY_NS));
        let (s, r, o) = match decoded {
            (Ok(s), Ok(r), Ok(o)) => (s, r, o),
            (Err(bad), _, _) | (_, Err(bad), _) | (_, _, Err(bad)) => {
                return Err(err(format!("malformed term {bad:?}")))
            }
        };
        if s == o {
            return Err(err("subject equals object".into()));
        }
        store.insert_key((s, r, o), None);
    }
    Ok(store)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::{Extractor, Provenance, Triple};
    use proptest::prelude::*;

    fn store(keys: &[(&str, &str, &str)]) -> TripleStore {
        keys.iter()
            .map(|(s, r, o)| Triple::new(*s, *r, *o, Provenance::new(Extractor::Toc, "d", "")).unwrap())
            .collect()
    }

    fn parse(text: &str) -> Result<TripleStore> {
        parse_ntriples(text, Path::new("kb.nt"))
    }

    #[test]
    fn single_line_format() {
        let s = store(&[("Hamming_code", "subTopicOf", "Algebraic_Coding_Theory")]);
        assert_eq!(
            s.to_ntriples(),
            "<tkb:Hamming_code> <tkbr:subTopicOf> <tkb:Algebraic_Coding_Theory> .\n"
        );
        assert_eq!(TripleStore::new().to_ntriples(), "");
    }

    #[test]
    fn slash_and_unicode_encoded() {
        assert_eq!(encode_iri("Symmetric/Asymmetric"), "Symmetric%2FAsymmetric");
        assert_eq!(encode_iri("C++"), "C%2B%2B");
        assert_eq!(encode_iri("Dijkstra's_algorithm"), "Dijkstra%27s_algorithm");
        assert_eq!(encode_iri("Gödel"), "G%C3%B6del");
        assert_eq!(encode_iri("50%"), "50%25");
        assert_eq!(encode_iri("B-tree_(x).v2"), "B-tree_(x).v2");
        assert_eq!(decode_iri("G%C3%B6del").unwrap(), "Gödel");
        assert!(decode_iri("bad%2").is_none());
        assert!(decode_iri("%FF").is_none());
    }

    #[test]
    fn lines_sorted() {
        let s = store(&[("b", "typeOf", "a"), ("a", "typeOf", "b"), ("A", "zz", "b")]);
        let text = s.to_ntriples();
        let lines: Vec<&str> = text.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        let text = "<tkb:a> <tkbr:r> <tkb:b> .\n\n<tkb:a> <tkbr:r> <tkb:b>\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        for bad in [
            "<tkb:a> <tkb:r> <tkb:b> .",
            "<tkb:a> <tkbr:r> tkb:b .",
            "<tkb:> <tkbr:r> <tkb:b> .",
            "<tkb:a> <tkbr:r> <tkb:a> .",
            "<tkb:a%zz> <tkbr:r> <tkb:b> .",
            "<tkb:a> <tkbr:r> <tkb:b> . extra",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse { line: 1, .. })), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn encoding_round_trips(key in "\\PC{1,20}") {
            let enc = encode_iri(&key);
            prop_assert!(enc.bytes().all(|b| is_plain(b) || b == b'%' || b.is_ascii_hexdigit()));
            prop_assert!(!enc.contains(char::is_whitespace));
            prop_assert_eq!(decode_iri(&enc).unwrap(), key);
        }

        #[test]
        fn store_round_trips(keys in prop::collection::vec(("[a-c/ é]{1,4}", "[rs]{1,2}", "[a-c/ é]{1,4}"), 0..30)) {
            let triples: Vec<Triple> = keys
                .iter()
                .filter(|(s, _, o)| s != o)
                .map(|(s, r, o)| Triple::new(s.as_str(), r.as_str(), o.as_str(), Provenance::new(Extractor::Toc, "d", "")).unwrap())
                .collect();
            let s: TripleStore = triples.into_iter().collect();
            let back = parse(&s.to_ntriples()).unwrap();
            prop_assert_eq!(back.key_set(), s.key_set());
            prop_assert_eq!(back.to_ntriples(), s.to_ntriples());
        }
    }
}
