//! Parser for the wikitext subset the extractors consume.
//!
//! Recognized: `==` to `======` headings, `*` to `*****` unordered lists,
//! `[[target]]` / `[[target|anchor]]` links and `{{name|key=value...}}`
//! templates (values may contain links, navbox `groupN`/`listN` pairs are
//! folded into rows). Anything else is kept as opaque text. The parser is
//! total: malformed constructs degrade to text.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

const MAX_HEADING_LEVEL: usize = 6;
const MAX_LIST_DEPTH: usize = 5;

/// Template parameters that carry presentation or metadata, never a row.
const RESERVED_TEMPLATE_KEYS: &[&str] = &[
    "name",
    "title",
    "state",
    "above",
    "below",
    "image",
    "imageleft",
    "navbar",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub target: String,
    pub anchor: Option<String>,
    /// Byte offset of the opening `[[` in the raw page text.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heading {
    pub level: u8,
    pub text: String,
    /// Index of the enclosing heading, if any.
    pub parent: Option<usize>,
    /// Items in this heading's immediate scope (up to the next heading of any level).
    pub items: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListItem {
    pub depth: u8,
    pub text: String,
    pub links: Vec<Link>,
    /// Owning heading; `None` means the preamble.
    pub heading: Option<usize>,
}

impl ListItem {
    /// The entity this item names: its first link target.
    pub fn primary_link(&self) -> Option<&str> {
        self.links.first().map(|l| l.target.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateRow {
    pub header: String,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub name: String,
    /// The `title` parameter (first link target, else its text), when given.
    pub title: Option<String>,
    pub rows: Vec<TemplateRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WikiDocument {
    pub title: String,
    pub headings: Vec<Heading>,
    /// Items before the first heading.
    pub preamble: Range<usize>,
    pub items: Vec<ListItem>,
    /// Every link on the page, ordered by position.
    pub links: Vec<Link>,
    pub templates: Vec<Template>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PageKind {
    ListPage,
    OutlinePage,
    Article,
}

impl fmt::Display for PageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PageKind::ListPage => "list page",
            PageKind::OutlinePage => "outline page",
            PageKind::Article => "article",
        })
    }
}

pub const LIST_PREFIX: &str = "List of ";
pub const OUTLINE_PREFIX: &str = "Outline of ";

impl WikiDocument {
    pub fn empty(title: impl Into<String>) -> Self {
        WikiDocument {
            title: title.into(),
            headings: Vec::new(),
            preamble: 0..0,
            items: Vec::new(),
            links: Vec::new(),
            templates: Vec::new(),
        }
    }

    /// Items in the immediate scope of `heading` (`None` = preamble).
    pub fn scope(&self, heading: Option<usize>) -> &[ListItem] {
        let range = match heading {
            Some(h) => self.headings[h].items.clone(),
            None => self.preamble.clone(),
        };
        &self.items[range]
    }

    /// Indices of the direct sub-headings of `heading`.
    pub fn children(&self, heading: usize) -> impl Iterator<Item = usize> + '_ {
        self.headings
            .iter()
            .enumerate()
            .filter(move |(_, h)| h.parent == Some(heading))
            .map(|(i, _)| i)
    }

    pub fn kind(&self) -> PageKind {
        classify_page(self)
    }
}

/// Prefix test on the trimmed title; case-sensitive.
pub fn classify_page(doc: &WikiDocument) -> PageKind {
    let title = doc.title.trim();
    if title.starts_with(LIST_PREFIX) {
        PageKind::ListPage
    } else if title.starts_with(OUTLINE_PREFIX) {
        PageKind::OutlinePage
    } else {
        PageKind::Article
    }
}

pub fn parse_wikitext(raw: &str, title: &str) -> WikiDocument {
    let mut doc = WikiDocument::empty(title.trim());

    let spans = template_spans(raw);
    for span in &spans {
        doc.templates.push(parse_template(
            &raw[span.start + 2..span.end - 2],
            span.start + 2,
            &mut doc.links,
        ));
    }
    let masked = mask(raw, &spans);

    let mut offset = 0;
    for line in masked.split_inclusive('\n') {
        let base = offset;
        offset += line.len();
        let line = line.trim_end_matches(['\n', '\r']);

        if let Some((level, inner, inner_offset)) = heading_line(line) {
            let (text, links) = render_links(inner, base + inner_offset);
            doc.links.extend(links);
            push_heading(&mut doc, level, text);
        } else if let Some((depth, rest, rest_offset)) = list_line(line) {
            let (text, links) = render_links(rest, base + rest_offset);
            doc.links.extend(links.iter().cloned());
            doc.items.push(ListItem {
                depth,
                text: text.trim().to_string(),
                links,
                heading: doc.headings.len().checked_sub(1),
            });
        } else {
            let (_, links) = render_links(line, base);
            doc.links.extend(links);
        }
    }

    close_scope(&mut doc);
    doc.links.sort_by_key(|l| l.position);
    doc
}

fn push_heading(doc: &mut WikiDocument, level: u8, text: String) {
    close_scope(doc);
    let parent = doc.headings.iter().rposition(|h| h.level < level);
    let start = doc.items.len();
    doc.headings.push(Heading {
        level,
        text,
        parent,
        items: start..start,
    });
}

/// Extends the most recent scope (heading or preamble) to the current item count.
fn close_scope(doc: &mut WikiDocument) {
    let end = doc.items.len();
    match doc.headings.last_mut() {
        Some(h) => h.items.end = end,
        None => doc.preamble = 0..end,
    }
}

fn heading_line(line: &str) -> Option<(u8, &str, usize)> {
    let trimmed = line.trim_end();
    let leading = trimmed.bytes().take_while(|&b| b == b'=').count();
    let trailing = trimmed.bytes().rev().take_while(|&b| b == b'=').count();
    if leading < 2 || trailing < 2 || leading + trailing > trimmed.len() {
        return None;
    }
    let level = leading.min(trailing);
    if level > MAX_HEADING_LEVEL {
        return None;
    }
    let inner = &trimmed[level..trimmed.len() - level];
    if inner.trim().is_empty() {
        return None;
    }
    let pad = inner.len() - inner.trim_start().len();
    Some((level as u8, inner.trim(), level + pad))
}

fn list_line(line: &str) -> Option<(u8, &str, usize)> {
    let depth = line.bytes().take_while(|&b| b == b'*').count();
    if depth == 0 || depth > MAX_LIST_DEPTH {
        return None;
    }
    let rest = &line[depth..];
    let pad = rest.len() - rest.trim_start().len();
    Some((depth as u8, rest.trim_start(), depth + pad))
}

/// Byte ranges of balanced top-level `{{...}}` constructs, braces included.
/// An unbalanced opener stops the scan; the remainder stays text.
fn template_spans(raw: &str) -> Vec<Range<usize>> {
    let bytes = raw.as_bytes();
    let mut spans = Vec::new();
    let mut i = 0;
    while i + 1 < bytes.len() {
        if bytes[i] == b'{' && bytes[i + 1] == b'{' {
            match balanced_end(bytes, i) {
                Some(end) => {
                    spans.push(i..end);
                    i = end;
                }
                None => break,
            }
        } else {
            i += 1;
        }
    }
    spans
}

fn balanced_end(bytes: &[u8], start: usize) -> Option<usize> {
    let mut depth = 0usize;
    let mut i = start;
    while i + 1 < bytes.len() {
        match (bytes[i], bytes[i + 1]) {
            (b'{', b'{') => {
                depth += 1;
                i += 2;
            }
            (b'}', b'}') => {
                depth -= 1;
                i += 2;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => i += 1,
        }
    }
    None
}

/// Blanks template spans while keeping byte offsets and line breaks.
fn mask(raw: &str, spans: &[Range<usize>]) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut last = 0;
    for span in spans {
        out.push_str(&raw[last..span.start]);
        for c in raw[span.clone()].chars() {
            if c == '\n' {
                out.push('\n');
            } else {
                out.extend(std::iter::repeat_n(' ', c.len_utf8()));
            }
        }
        last = span.end;
    }
    out.push_str(&raw[last..]);
    out
}

fn parse_template(body: &str, base: usize, all_links: &mut Vec<Link>) -> Template {
    let parts = split_top_level(body, '|');
    let mut parts = parts.into_iter();
    let name = parts.next().map(|(s, _)| s.trim().to_string()).unwrap_or_default();

    let mut title = None;
    let mut rows = Vec::new();
    let mut groups: Vec<(String, String)> = Vec::new();
    let mut lists: Vec<(String, Vec<String>)> = Vec::new();

    for (param, param_offset) in parts {
        let Some(eq) = find_top_level(param, '=') else {
            let (_, links) = render_links(param, base + param_offset);
            all_links.extend(links);
            continue;
        };
        let key = param[..eq].trim();
        let value = &param[eq + 1..];
        let (text, links) = render_links(value, base + param_offset + eq + 1);
        let targets: Vec<String> = links.iter().map(|l| l.target.clone()).collect();
        all_links.extend(links);

        let lower = key.to_ascii_lowercase();
        if lower == "title" {
            title = targets
                .first()
                .cloned()
                .or_else(|| Some(text.trim().to_string()).filter(|t| !t.is_empty()));
        } else if RESERVED_TEMPLATE_KEYS.contains(&lower.as_str())
            || lower.ends_with("style")
            || lower.ends_with("class")
        {
            continue;
        } else if let Some(n) = numbered(&lower, "group") {
            let header = text.trim().to_string();
            match lists.iter().position(|(m, _)| *m == n) {
                Some(p) => rows.push(TemplateRow {
                    header,
                    targets: lists.remove(p).1,
                }),
                None => groups.push((n, header)),
            }
        } else if let Some(n) = numbered(&lower, "list") {
            match groups.iter().position(|(m, _)| *m == n) {
                Some(p) => rows.push(TemplateRow {
                    header: groups.remove(p).1,
                    targets,
                }),
                None => lists.push((n, targets)),
            }
        } else if !key.is_empty() {
            rows.push(TemplateRow {
                header: key.to_string(),
                targets,
            });
        }
    }

    Template { name, title, rows }
}

fn numbered(key: &str, prefix: &str) -> Option<String> {
    let rest = key.strip_prefix(prefix)?;
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then(|| rest.to_string())
}

/// Splits on `sep` outside `[[..]]` and nested `{{..}}`. Yields each part with its byte offset.
fn split_top_level(s: &str, sep: char) -> Vec<(&str, usize)> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut scanner = DepthScanner::default();
    for (i, c) in s.char_indices() {
        if scanner.step(s, i) == 0 && c == sep {
            parts.push((&s[start..i], start));
            start = i + c.len_utf8();
        }
    }
    parts.push((&s[start..], start));
    parts
}

fn find_top_level(s: &str, needle: char) -> Option<usize> {
    let mut scanner = DepthScanner::default();
    s.char_indices()
        .find(|&(i, c)| scanner.step(s, i) == 0 && c == needle)
        .map(|(i, _)| i)
}

/// Tracks bracket nesting while walking a string char by char.
#[derive(Default)]
struct DepthScanner {
    depth: usize,
    skip_until: usize,
}

impl DepthScanner {
    /// Returns the nesting depth in effect for the char at byte `i`.
    fn step(&mut self, s: &str, i: usize) -> usize {
        if i < self.skip_until {
            return self.depth.max(1);
        }
        let rest = &s.as_bytes()[i..];
        if rest.starts_with(b"[[") || rest.starts_with(b"{{") {
            self.depth += 1;
            self.skip_until = i + 2;
            self.depth
        } else if (rest.starts_with(b"]]") || rest.starts_with(b"}}")) && self.depth > 0 {
            self.depth -= 1;
            self.skip_until = i + 2;
            self.depth + 1
        } else {
            self.depth
        }
    }
}

const NON_ARTICLE_NAMESPACES: &[&str] = &["category:", "file:", "image:"];

/// Replaces links with their display text and collects them. `base` is the
/// byte offset of `s` within the raw page.
pub(crate) fn render_links(s: &str, base: usize) -> (String, Vec<Link>) {
    let mut text = String::with_capacity(s.len());
    let mut links = Vec::new();
    let mut rest = s;
    let mut consumed = 0;

    while let Some(open) = rest.find("[[") {
        let after = &rest[open + 2..];
        let Some(close) = after.find("]]") else {
            break;
        };
        // A nested opener before the close means the outer `[[` is text.
        if let Some(inner) = after[..close].find("[[") {
            text.push_str(&rest[..open + 2 + inner]);
            consumed += open + 2 + inner;
            rest = &rest[open + 2 + inner..];
            continue;
        }
        text.push_str(&rest[..open]);
        let inner = &after[..close];
        let (raw_target, anchor) = match inner.split_once('|') {
            Some((t, a)) => (t, Some(a.trim().to_string())),
            None => (inner, None),
        };
        let shown = anchor.clone().unwrap_or_else(|| raw_target.trim().to_string());
        let target = raw_target.split('#').next().unwrap_or("").trim();
        let lower = target.to_lowercase();

        if NON_ARTICLE_NAMESPACES.iter().any(|ns| lower.starts_with(ns)) {
            // rendered as nothing, not an article link
        } else if target.is_empty() {
            text.push_str(&rest[open..open + 2 + close + 2]);
        } else {
            text.push_str(&shown);
            links.push(Link {
                target: target.to_string(),
                anchor,
                position: base + consumed + open,
            });
        }
        let advance = open + 2 + close + 2;
        consumed += advance;
        rest = &rest[advance..];
    }
    text.push_str(rest);
    (text, links)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_page_snippet() {
        let doc = parse_wikitext("== List ==\n* [[XOR linked list]]", "List of data structures");
        assert_eq!(doc.headings.len(), 1);
        assert_eq!(doc.headings[0].level, 2);
        assert_eq!(doc.headings[0].text, "List");
        let scope = doc.scope(Some(0));
        assert_eq!(scope.len(), 1);
        assert_eq!(scope[0].depth, 1);
        assert_eq!(scope[0].primary_link(), Some("XOR linked list"));
        assert_eq!(doc.links.len(), 1);
        assert_eq!(doc.links[0].position, 13);
    }

    #[test]
    fn empty_input() {
        let doc = parse_wikitext("", "Anything");
        assert!(doc.headings.is_empty());
        assert!(doc.items.is_empty());
        assert!(doc.links.is_empty());
        assert!(doc.templates.is_empty());
        assert_eq!(doc.preamble, 0..0);
    }

    #[test]
    fn template_row() {
        let doc = parse_wikitext("{{DBMS|Functions=[[Query optimization]]}}", "Database");
        assert_eq!(doc.templates.len(), 1);
        let t = &doc.templates[0];
        assert_eq!(t.name, "DBMS");
        assert_eq!(t.title, None);
        assert_eq!(
            t.rows,
            vec![TemplateRow {
                header: "Functions".into(),
                targets: vec!["Query optimization".into()],
            }]
        );
        assert_eq!(doc.links[0].target, "Query optimization");
        assert_eq!(doc.links[0].position, 17);
    }

    #[test]
    fn navbox_group_list_pairs_and_title() {
        let raw = "{{Navbox\n|name = Databases\n|title = [[Database management system]]\n\
                   |group1 = Concepts\n|list1 = [[ACID]] * [[Null (SQL)|Null]]\n\
                   |list2 = [[Index (database)|Index]]\n|group2 = Objects\n|liststyle = x\n}}";
        let doc = parse_wikitext(raw, "Database");
        let t = &doc.templates[0];
        assert_eq!(t.name, "Navbox");
        assert_eq!(t.title.as_deref(), Some("Database management system"));
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].header, "Concepts");
        assert_eq!(t.rows[0].targets, vec!["ACID", "Null (SQL)"]);
        assert_eq!(t.rows[1].header, "Objects");
        assert_eq!(t.rows[1].targets, vec!["Index (database)"]);
        assert!(doc.items.is_empty(), "template body must not leak list items");
    }

    #[test]
    fn nested_templates_and_multiline_masking() {
        let raw = "intro {{cite|x={{y}}}}\n== A ==\n* [[B]] {{lang|en}}";
        let doc = parse_wikitext(raw, "T");
        assert_eq!(doc.templates.len(), 2);
        assert_eq!(doc.items.len(), 1);
        assert_eq!(doc.items[0].text, "B");
    }

    #[test]
    fn unbalanced_template_is_text() {
        let doc = parse_wikitext("{{broken\n== H ==\n* [[X]]", "T");
        assert!(doc.templates.is_empty());
        assert_eq!(doc.headings.len(), 1);
        assert_eq!(doc.items[0].primary_link(), Some("X"));
    }

    #[test]
    fn heading_tree_and_scopes() {
        let raw = "* [[Pre]]\n== A ==\n* [[A1]]\n=== A.1 ===\n** [[Deep]]\n== B ==\n==== B.x ====\n* [[Bx]]";
        let doc = parse_wikitext(raw, "T");
        let levels: Vec<_> = doc.headings.iter().map(|h| (h.level, h.parent)).collect();
        assert_eq!(levels, vec![(2, None), (3, Some(0)), (2, None), (4, Some(2))]);
        assert_eq!(doc.scope(None).len(), 1);
        assert_eq!(doc.scope(Some(0))[0].primary_link(), Some("A1"));
        assert_eq!(doc.scope(Some(1))[0].depth, 2);
        assert!(doc.scope(Some(2)).is_empty());
        assert_eq!(doc.children(0).collect::<Vec<_>>(), vec![1]);
        assert_eq!(doc.children(2).collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn heading_edge_cases() {
        let doc = parse_wikitext("= Top =\n======= seven =======\n==  ==\n== a == b ==\n===x==", "T");
        // level 1, level 7 and empty headings are text; the others parse.
        let texts: Vec<_> = doc.headings.iter().map(|h| (h.level, h.text.as_str())).collect();
        assert_eq!(texts, vec![(2, "a == b"), (2, "=x")]);
    }

    #[test]
    fn link_forms() {
        let (text, links) = render_links(
            "see [[Foo|the foo]], [[Bar#Sec]], [[#Local]], [[Category:X]], [[ ]] and [[a [[b]]",
            0,
        );
        let targets: Vec<_> = links.iter().map(|l| l.target.as_str()).collect();
        assert_eq!(targets, vec!["Foo", "Bar", "b"]);
        assert_eq!(links[0].anchor.as_deref(), Some("the foo"));
        assert_eq!(text, "see the foo, Bar#Sec, [[#Local]], , [[ ]] and [[a b");
    }

    #[test]
    fn deep_list_markers() {
        let doc = parse_wikitext("***** [[Five]]\n****** [[Six]]", "T");
        assert_eq!(doc.items.len(), 1);
        assert_eq!(doc.items[0].depth, 5);
        assert_eq!(doc.links.len(), 2);
    }

    #[test]
    fn page_kinds() {
        let kind = |t: &str| classify_page(&WikiDocument::empty(t));
        assert_eq!(kind("List of data structures"), PageKind::ListPage);
        assert_eq!(kind("Outline of cryptography"), PageKind::OutlinePage);
        assert_eq!(kind("Coding theory"), PageKind::Article);
        assert_eq!(kind("  List of x  "), PageKind::ListPage);
        assert_eq!(kind("list of things"), PageKind::Article);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn wikitextish() -> impl Strategy<Value = String> {
            let line = prop_oneof![
                "={2,7} ?[a-z ]{0,8} ?={2,7}",
                "\\*{1,6} ?(\\[\\[[A-Za-z |#]{0,8}\\]\\])?[a-z ]{0,6}",
                "\\{\\{[A-Za-z]{0,5}(\\|[a-z0-9]{1,6}=(\\[\\[[A-Za-z ]{1,6}\\]\\])?)*\\}?\\}?",
                "[a-z\\[\\]\\{\\}|= ]{0,20}",
            ];
            prop::collection::vec(line, 0..12).prop_map(|ls| ls.join("\n"))
        }

        proptest! {
            #[test]
            fn total_and_consistent(raw in wikitextish()) {
                let doc = parse_wikitext(&raw, "Page");
                prop_assert_eq!(&doc, &parse_wikitext(&raw, "Page"));

                for (i, h) in doc.headings.iter().enumerate() {
                    if let Some(p) = h.parent {
                        prop_assert!(p < i);
                        prop_assert!(doc.headings[p].level < h.level);
                    }
                }
                // scopes partition the items in order
                let mut covered = doc.preamble.clone().collect::<Vec<_>>();
                for h in &doc.headings {
                    covered.extend(h.items.clone());
                }
                prop_assert_eq!(covered, (0..doc.items.len()).collect::<Vec<_>>());
                for (i, item) in doc.items.iter().enumerate() {
                    let range = match item.heading {
                        Some(h) => doc.headings[h].items.clone(),
                        None => doc.preamble.clone(),
                    };
                    prop_assert!(range.contains(&i));
                    for l in &item.links {
                        prop_assert!(doc.links.contains(l));
                    }
                }
                for l in &doc.links {
                    prop_assert!(!l.target.trim().is_empty());
                    prop_assert!(raw[l.position..].starts_with("[["));
                }
            }

            #[test]
            fn arbitrary_text_never_panics(raw in ".{0,200}") {
                let _ = parse_wikitext(&raw, "x");
            }
        }
    }
}
