//! Writes the synthetic classification fixture: labeled posts, a dictionary
//! and a knowledge base in which the only class signal of a post is the
//! knowledge-base neighbourhood of the one made-up entity it mentions.
//!
//! Usage: cargo run -p techkb-core --example gen_classify_fixture -- <out-dir>

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use techkb_core::classify::LabeledPost;
use techkb_core::{Dictionary, Entity, Extractor, Provenance, Source, Triple, TripleStore};

const POSTS_PER_CLASS: usize = 100;
const SEED: u64 = 7;

const CLASSES: [(&str, &str); 3] = [
    ("data-structures", "Data_organization"),
    ("databases", "Data_management"),
    ("networking", "Computer_networking"),
];

const RELATIONS: [&str; 3] = ["methodOf", "conceptOf", "algorithmFor"];

// Shared by all classes, so word counts carry no label information.
const FILLER: [&str; 24] = [
    "help",
    "understand",
    "setup",
    "slow",
    "fails",
    "error",
    "question",
    "works",
    "strange",
    "output",
    "running",
    "version",
    "install",
    "problem",
    "faster",
    "simple",
    "example",
    "config",
    "issue",
    "behaviour",
    "random",
    "tutorial",
    "results",
    "trying",
];

const SYLLABLES: [&str; 16] = [
    "vor", "ant", "kel", "mix", "zup", "dar", "quo", "lin", "fex", "bru", "tav", "nom", "gri", "sel", "wup", "yor",
];

fn pseudo_word(rng: &mut ChaCha8Rng) -> String {
    (0..3).map(|_| *SYLLABLES.choose(rng).unwrap()).collect()
}

fn filler(rng: &mut ChaCha8Rng, n: usize) -> Vec<&'static str> {
    (0..n).map(|_| *FILLER.choose(rng).unwrap()).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).ok_or("usage: gen_classify_fixture <out-dir>")?);
    fs::create_dir_all(&out)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let mut names = BTreeSet::new();
    let mut dict = Dictionary::new();
    let mut store = TripleStore::new();
    let mut posts = Vec::new();
    let source = Source::Glossary("synthetic".into());

    for (_, object) in CLASSES {
        let mut e = Entity::new(object);
        e.sources.insert(source.clone());
        dict.insert(e);
    }
    for i in 0..POSTS_PER_CLASS * CLASSES.len() {
        let (label, object) = CLASSES[i % CLASSES.len()];
        let name = loop {
            let candidate = format!("{} {}", pseudo_word(&mut rng), pseudo_word(&mut rng));
            if names.insert(candidate.clone()) {
                break candidate;
            }
        };
        let key = name.replace(' ', "_");
        let mut e = Entity::new(&key);
        e.surface_forms.insert(name.clone());
        e.sources.insert(source.clone());
        dict.insert(e);

        let relation = RELATIONS[rng.gen_range(0..RELATIONS.len())];
        let prov = Provenance::new(Extractor::Template, format!("synthetic:{label}"), relation);
        store.insert(Triple::new(&key, relation, object, prov)?)?;

        let title = format!(
            "{} {} {}",
            filler(&mut rng, 2).join(" "),
            name,
            filler(&mut rng, 2).join(" ")
        );
        let body = filler(&mut rng, 8).join(" ");
        posts.push(LabeledPost {
            id: format!("s{i:03}"),
            title,
            body,
            label: label.to_string(),
        });
    }

    dict.save(&out.join("dictionary.jsonl"))?;
    store.save_ntriples(&out.join("kb.nt"))?;
    let mut lines = String::new();
    for post in &posts {
        lines.push_str(&serde_json::to_string(post)?);
        lines.push('\n');
    }
    fs::write(out.join("posts.jsonl"), lines)?;
    println!("wrote {} posts to {}", posts.len(), out.display());
    Ok(())
}
