//! Pipeline stages behind the `techkb` command. Every stage reads the
//! artifacts of earlier stages from the output directory and writes its
//! own there, so any stage can be rerun in isolation.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use techkb_core::annotate::write_annotation_dump;
use techkb_core::classify::{load_posts, run_benchmark, SvmParams, DEFAULT_EXPANSION};
use techkb_core::corpus::{
    load_book_index, load_corpus, load_glossary, GlossaryEntry, IndexEntry, PageKind, WikiDocument,
};
use techkb_core::dictionary::{harvest_entities, resolve_duplicates, DEFAULT_THRESHOLD};
use techkb_core::eval::{score_judgments, stratified_sample, JudgmentSheet, DEFAULT_CONFIDENCE};
use techkb_core::extract::extract_document;
use techkb_core::patterns::{extract_pattern_triples, extract_synonym_triples, non_synonym_patterns};
use techkb_core::store::compute_stats;
use techkb_core::{build_matcher, Dictionary, Matcher, RelationSet, Triple, TripleStore};

pub mod artifacts {
    pub const DOCUMENTS: &str = "documents.jsonl";
    pub const GLOSSARY: &str = "glossary.jsonl";
    pub const INDEX: &str = "index.jsonl";
    pub const DICTIONARY: &str = "dictionary.jsonl";
    pub const SYNONYMS: &str = "synonyms.nt";
    pub const SYNONYM_PROVENANCE: &str = "synonyms.provenance.jsonl";
    pub const ANNOTATIONS: &str = "annotations.tsv";
    pub const KB: &str = "kb.nt";
    pub const KB_PROVENANCE: &str = "kb.provenance.jsonl";
    pub const QUARANTINE: &str = "quarantine.nt";
    pub const STATS: &str = "stats.json";
    pub const SHEET: &str = "sheet.csv";
    pub const REPORT: &str = "report.txt";
    pub const CLASSIFY: &str = "classify.txt";

    /// The subcommand that writes each artifact.
    pub fn producer(name: &str) -> &'static str {
        match name {
            DOCUMENTS | GLOSSARY | INDEX => "ingest",
            DICTIONARY | SYNONYMS | SYNONYM_PROVENANCE | ANNOTATIONS => "build-dict",
            KB | KB_PROVENANCE | QUARANTINE => "extract",
            STATS => "stats",
            SHEET => "sample",
            REPORT => "score",
            _ => "classify",
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_FRACTION: f64 = 0.02;
pub const DEFAULT_TOP_K: usize = 5;
pub const DEFAULT_FOLDS: usize = 5;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub corpus: Option<PathBuf>,
    pub glossaries: Vec<PathBuf>,
    pub indexes: Vec<PathBuf>,
    pub posts: Option<PathBuf>,
    /// Extra or replacement relation specs on top of the shipped set.
    pub relations: Option<PathBuf>,
    pub threshold: f64,
    pub out: PathBuf,
    pub seed: u64,
    pub fraction: f64,
    pub top_k: usize,
    pub folds: usize,
    pub include_quarantined: bool,
    pub confidence: f64,
    /// Judged sheet to score; defaults to the sampled sheet in `out`.
    pub sheet: Option<PathBuf>,
    pub svm: SvmParams,
    pub expansion: Vec<String>,
}

impl PipelineConfig {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            corpus: None,
            glossaries: Vec::new(),
            indexes: Vec::new(),
            posts: None,
            relations: None,
            threshold: DEFAULT_THRESHOLD,
            out: out.into(),
            seed: DEFAULT_SEED,
            fraction: DEFAULT_FRACTION,
            top_k: DEFAULT_TOP_K,
            folds: DEFAULT_FOLDS,
            include_quarantined: false,
            confidence: DEFAULT_CONFIDENCE,
            sheet: None,
            svm: SvmParams {
                seed: DEFAULT_SEED,
                ..SvmParams::default()
            },
            expansion: DEFAULT_EXPANSION.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Rejects out-of-range options before any stage touches the disk.
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.threshold) {
            bail!("--threshold must be in [0, 1], got {}", self.threshold);
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            bail!("--fraction must be in (0, 1], got {}", self.fraction);
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            bail!("--confidence must be in (0, 1), got {}", self.confidence);
        }
        if self.top_k == 0 {
            bail!("--top-k must be at least 1");
        }
        if self.folds < 2 {
            bail!("--folds must be at least 2, got {}", self.folds);
        }
        if self.svm.epochs == 0 || !(self.svm.regularization > 0.0 && self.svm.regularization.is_finite()) {
            bail!("--epochs must be at least 1 and --regularization positive");
        }
        Ok(())
    }

    fn artifact(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    /// Path of an artifact an earlier stage must have written.
    fn input(&self, name: &str) -> Result<PathBuf> {
        let path = self.artifact(name);
        if !path.is_file() {
            bail!(
                "missing artifact {}; run `techkb {}` first",
                path.display(),
                artifacts::producer(name)
            );
        }
        Ok(path)
    }

    fn relation_set(&self) -> Result<RelationSet> {
        Ok(match &self.relations {
            Some(path) => RelationSet::with_overrides(path)?,
            None => RelationSet::default(),
        })
    }

    fn create_out(&self) -> Result<()> {
        fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))
    }
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_jsonl<T: serde::Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut buf = Vec::new();
    for item in items {
        serde_json::to_writer(&mut buf, item)?;
        buf.push(b'\n');
    }
    write(path, buf)
}

fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).with_context(|| format!("{}:{}: malformed record", path.display(), i + 1))
        })
        .collect()
}

/// Parses the raw sources and writes them in normalized form.
pub fn ingest(cfg: &PipelineConfig) -> Result<()> {
    let Some(corpus) = &cfg.corpus else {
        bail!("ingest needs --corpus");
    };
    let docs = load_corpus(corpus)?;
    let mut glossary = Vec::new();
    for path in &cfg.glossaries {
        glossary.extend(load_glossary(path)?);
    }
    let mut index = Vec::new();
    for path in &cfg.indexes {
        index.extend(load_book_index(path)?);
    }
    cfg.create_out()?;
    write_jsonl(&cfg.artifact(artifacts::DOCUMENTS), &docs)?;
    write_jsonl(&cfg.artifact(artifacts::GLOSSARY), &glossary)?;
    write_jsonl(&cfg.artifact(artifacts::INDEX), &index)
}

fn load_documents(cfg: &PipelineConfig) -> Result<Vec<WikiDocument>> {
    read_jsonl(&cfg.input(artifacts::DOCUMENTS)?)
}

fn load_glossary_artifact(cfg: &PipelineConfig) -> Result<Vec<GlossaryEntry>> {
    read_jsonl(&cfg.input(artifacts::GLOSSARY)?)
}

/// Id under which a glossary definition's triples are recorded.
pub fn glossary_doc_id(entry: &GlossaryEntry) -> String {
    format!("glossary:{}:{}", entry.source, entry.term)
}

/// Wiki names for the dictionary: article titles and every link target.
/// Overview page titles are containers, not concepts.
fn wiki_names(docs: &[WikiDocument]) -> Vec<String> {
    let mut names = Vec::new();
    for doc in docs {
        if doc.kind() == PageKind::Article {
            names.push(doc.title.clone());
        }
        names.extend(doc.links.iter().map(|l| l.target.clone()));
    }
    names
}

fn canonicalize(triples: Vec<Triple>, aliases: &HashMap<String, String>) -> Vec<Triple> {
    triples
        .into_iter()
        .filter_map(|mut t| {
            t.subject = Dictionary::canonicalize(aliases, &t.subject).to_string();
            t.object = Dictionary::canonicalize(aliases, &t.object).to_string();
            t.validate().ok().map(|_| t)
        })
        .collect()
}

fn glossary_triples(
    glossary: &[GlossaryEntry],
    matcher: &Matcher,
    mut extract: impl FnMut(&str, &str, &[techkb_core::AnnotatedSpan]) -> techkb_core::Result<Vec<Triple>>,
) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for entry in glossary.iter().filter(|g| !g.definition.trim().is_empty()) {
        let spans = matcher.annotate(&entry.definition);
        out.extend(extract(&glossary_doc_id(entry), &entry.definition, &spans)?);
    }
    Ok(out)
}

/// Harvests and resolves the dictionary, then links synonyms found in
/// glossary definitions.
pub fn build_dict(cfg: &PipelineConfig) -> Result<()> {
    let docs = load_documents(cfg)?;
    let glossary = load_glossary_artifact(cfg)?;
    let index: Vec<IndexEntry> = read_jsonl(&cfg.input(artifacts::INDEX)?)?;
    let relations = cfg.relation_set()?;

    let candidates = harvest_entities(&wiki_names(&docs), &glossary, &index);
    let dict = resolve_duplicates(&candidates, cfg.threshold)?;
    if dict.is_empty() {
        bail!("no entities found in the ingested sources");
    }
    let matcher = build_matcher(&dict)?;
    let synonyms = glossary_triples(&glossary, &matcher, |id, text, spans| {
        extract_synonym_triples(id, text, spans, &relations)
    })?;
    let synonyms = canonicalize(synonyms, &dict.alias_map());
    let dict = dict.link_synonyms(&synonyms)?;

    let mut store = TripleStore::new();
    store.insert_all(synonyms)?;
    let matcher = build_matcher(&dict)?;
    let mut dump = Vec::new();
    for entry in &glossary {
        write_annotation_dump(&mut dump, &glossary_doc_id(entry), &matcher.annotate(&entry.definition))?;
    }
    dict.save(&cfg.artifact(artifacts::DICTIONARY))?;
    store.save_ntriples(&cfg.artifact(artifacts::SYNONYMS))?;
    store.save_provenance(&cfg.artifact(artifacts::SYNONYM_PROVENANCE))?;
    write(&cfg.artifact(artifacts::ANNOTATIONS), dump)
}

fn load_dictionary(cfg: &PipelineConfig) -> Result<Dictionary> {
    Ok(Dictionary::load(&cfg.input(artifacts::DICTIONARY)?)?)
}

/// Runs the structured extractors over every page and the non-synonym
/// surface patterns over glossary text, and writes the knowledge base.
pub fn extract(cfg: &PipelineConfig) -> Result<()> {
    let docs = load_documents(cfg)?;
    let glossary = load_glossary_artifact(cfg)?;
    let dict = load_dictionary(cfg)?;
    let synonyms = TripleStore::load(
        &cfg.input(artifacts::SYNONYMS)?,
        Some(&cfg.input(artifacts::SYNONYM_PROVENANCE)?),
    )?;
    let relations = cfg.relation_set()?;
    let aliases = dict.alias_map();

    let per_doc: Vec<Vec<Triple>> = docs.par_iter().map(|d| extract_document(d, &relations)).collect();
    let mut store = synonyms;
    for triples in per_doc {
        store.insert_all(canonicalize(triples, &aliases))?;
    }

    let matcher = build_matcher(&dict)?;
    let specs = non_synonym_patterns(&relations);
    let quarantined = glossary_triples(&glossary, &matcher, |id, text, spans| {
        extract_pattern_triples(id, text, spans, &specs)
    })?;
    let mut quarantine = TripleStore::new();
    quarantine.insert_all(canonicalize(quarantined, &aliases))?;
    if cfg.include_quarantined {
        for (key, provs) in quarantine.iter() {
            for p in provs {
                store.insert(Triple::new(&key.0, &key.1, &key.2, p.clone())?)?;
            }
        }
    }
    store.save_ntriples(&cfg.artifact(artifacts::KB))?;
    store.save_provenance(&cfg.artifact(artifacts::KB_PROVENANCE))?;
    quarantine.save_ntriples(&cfg.artifact(artifacts::QUARANTINE))?;
    Ok(())
}

fn load_kb(cfg: &PipelineConfig) -> Result<TripleStore> {
    let kb = cfg.input(artifacts::KB)?;
    let sidecar = cfg.artifact(artifacts::KB_PROVENANCE);
    Ok(TripleStore::load(&kb, sidecar.is_file().then_some(sidecar.as_path()))?)
}

pub fn stats(cfg: &PipelineConfig) -> Result<String> {
    let stats = compute_stats(&load_kb(cfg)?);
    write(&cfg.artifact(artifacts::STATS), stats.to_json())?;
    Ok(stats.to_string())
}

pub fn sample(cfg: &PipelineConfig) -> Result<()> {
    let store = load_kb(cfg)?;
    let sheet = stratified_sample(&store, cfg.top_k, cfg.fraction, cfg.seed)?;
    sheet.save(&cfg.artifact(artifacts::SHEET))?;
    Ok(())
}

pub fn score(cfg: &PipelineConfig) -> Result<String> {
    let path = match &cfg.sheet {
        Some(p) => p.clone(),
        None => cfg.input(artifacts::SHEET)?,
    };
    let sheet = JudgmentSheet::load(&path)?;
    sheet.check_against(&load_kb(cfg)?)?;
    let report = score_judgments(&sheet, cfg.confidence)?.to_string();
    write(&cfg.artifact(artifacts::REPORT), &report)?;
    Ok(report)
}

pub fn classify(cfg: &PipelineConfig) -> Result<String> {
    let Some(posts_path) = &cfg.posts else {
        bail!("classify needs --posts");
    };
    let posts = load_posts(posts_path)?;
    let matcher = build_matcher(&load_dictionary(cfg)?)?;
    let store = load_kb(cfg)?;
    let report = run_benchmark(&posts, &matcher, &store, &cfg.expansion, cfg.folds, cfg.seed, cfg.svm)?.to_string();
    write(&cfg.artifact(artifacts::CLASSIFY), &report)?;
    Ok(report)
}

/// Every stage in order. Scoring needs human judgments, so it is left
/// out; classification runs only when a posts file is configured.
pub fn run_all(cfg: &PipelineConfig) -> Result<()> {
    ingest(cfg)?;
    build_dict(cfg)?;
    extract(cfg)?;
    stats(cfg)?;
    sample(cfg)?;
    if cfg.posts.is_some() {
        classify(cfg)?;
    }
    Ok(())
}
