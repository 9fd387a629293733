use super::naming::derive_relation_name;
use super::Emitter;
use crate::corpus::WikiDocument;
use crate::triple::{Extractor, Provenance, Triple};

/// Infobox and citation templates carry attributes, not relations.
fn is_row_template(name: &str) -> bool {
    let lower = name.to_lowercase();
    !(lower.starts_with("infobox") || lower.starts_with("cite"))
}

/// Template rows as new relations: each link under row header H yields
/// `<link> <derived(H)> <subject>`, the subject being the template's title,
/// else its name, else the page title.
pub fn extract_template_relations(doc: &WikiDocument) -> Vec<Triple> {
    let mut out = Emitter::new();
    for template in doc.templates.iter().filter(|t| is_row_template(&t.name)) {
        let subject = template
            .title
            .as_deref()
            .filter(|t| !t.trim().is_empty())
            .or(Some(template.name.as_str()).filter(|n| !n.trim().is_empty()))
            .unwrap_or(&doc.title);
        for row in &template.rows {
            let Ok(relation) = derive_relation_name(&row.header) else {
                continue;
            };
            let prov = Provenance::new(
                Extractor::Template,
                &doc.title,
                format!("{}/{}", template.name, row.header),
            );
            for target in &row.targets {
                out.emit(target, &relation, subject, &prov);
            }
        }
    }
    out.finish()
}
