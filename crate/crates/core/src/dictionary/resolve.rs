use std::collections::{BTreeMap, BTreeSet};

use super::{Candidate, Dictionary, Entity, Source};
use crate::error::{Error, Result};

/// Default normalized edit-distance threshold for merging.
pub const DEFAULT_THRESHOLD: f64 = 0.1;

/// Levenshtein distance over case-folded keys divided by the longer length.
pub fn normalized_distance(a: &str, b: &str) -> f64 {
    let a = a.to_lowercase();
    let b = b.to_lowercase();
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 0.0;
    }
    strsim::levenshtein(&a, &b) as f64 / longest as f64
}

/// Merges candidates whose keys lie within `threshold` normalized edit
/// distance. Comparisons are restricted to blocks sharing a case-folded
/// first character with lengths within two of each other; merges close
/// transitively. The surviving key is the smallest wiki-title key of a
/// group, or the smallest key when no member came from a wiki title.
pub fn resolve_duplicates(candidates: &[Candidate], threshold: f64) -> Result<Dictionary> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Threshold(threshold));
    }

    let mut by_key: BTreeMap<&str, Entity> = BTreeMap::new();
    for c in candidates {
        let e = by_key.entry(&c.key).or_insert_with(|| Entity::new(c.key.clone()));
        e.sources.insert(c.source.clone());
        e.surface_forms.extend(c.surfaces.iter().cloned());
    }
    let keys: Vec<&str> = by_key.keys().copied().collect();

    let mut sets = DisjointSets::new(keys.len());
    for block in blocks(&keys).values() {
        for (i, &(len_a, a)) in block.iter().enumerate() {
            for &(len_b, b) in &block[i + 1..] {
                if len_b - len_a > 2 {
                    break;
                }
                if normalized_distance(keys[a], keys[b]) <= threshold {
                    sets.union(a, b);
                }
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..keys.len() {
        groups.entry(sets.find(i)).or_default().push(i);
    }

    let mut dict = Dictionary::new();
    for members in groups.values() {
        let wiki = members
            .iter()
            .map(|&i| keys[i])
            .filter(|k| by_key[k].sources.contains(&Source::WikiTitle))
            .min();
        let retained = wiki.unwrap_or_else(|| members.iter().map(|&i| keys[i]).min().unwrap());

        let mut entity = Entity::new(retained);
        for &i in members {
            let e = &by_key[keys[i]];
            entity.surface_forms.extend(e.surface_forms.iter().cloned());
            entity.sources.extend(e.sources.iter().cloned());
            entity.synonyms.extend(e.synonyms.iter().cloned());
        }
        dict.insert(entity);
    }
    Ok(dict)
}

/// Blocks keyed by case-folded first character; members sorted by length.
fn blocks(keys: &[&str]) -> BTreeMap<String, Vec<(usize, usize)>> {
    let mut blocks: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        let first: String = key.chars().next().into_iter().flat_map(char::to_lowercase).collect();
        blocks
            .entry(first)
            .or_default()
            .push((key.to_lowercase().chars().count(), i));
    }
    for block in blocks.values_mut() {
        block.sort_unstable();
    }
    blocks
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Roots at the smaller index so group ids are stable.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Pairs of distinct entities that share a block and lie within `threshold`.
pub fn blocked_pairs_within(dict: &Dictionary, threshold: f64) -> BTreeSet<(String, String)> {
    let keys: Vec<&str> = dict.entities().map(|e| e.canonical.as_str()).collect();
    let mut out = BTreeSet::new();
    for block in blocks(&keys).values() {
        for (i, &(la, a)) in block.iter().enumerate() {
            for &(lb, b) in &block[i + 1..] {
                if lb - la <= 2 && normalized_distance(keys[a], keys[b]) <= threshold {
                    out.insert((keys[a].to_string(), keys[b].to_string()));
                }
            }
        }
    }
    out
}
