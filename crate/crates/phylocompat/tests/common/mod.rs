//! Shared helpers for the integration suites: seeded random instances
//! and an isomorphism oracle that is independent of the split machinery.
#![allow(dead_code)] // each test target uses a different subset

use std::sync::Arc;

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use phylocompat::solver::enumerate_binary_trees;
use phylocompat::{Character, CharacterMatrix, TaxonSet, TaxonSubset, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn taxa(n: usize) -> Arc<TaxonSet> {
    Arc::new(TaxonSet::new((0..n).map(|i| format!("t{i}"))).unwrap())
}

/// A uniform random assignment of every taxon to one of `r` states,
/// retried until at least two states are non-empty (so the character
/// constrains something) and, for `exact`, all `r` are hit.
pub fn random_full_character(
    rng: &mut ChaCha8Rng,
    taxa: &Arc<TaxonSet>,
    r: usize,
    exact: bool,
    name: &str,
) -> Character {
    loop {
        let mut states: Vec<TaxonSubset> = vec![TaxonSubset::new(); r];
        for t in taxa.ids() {
            states[rng.random_range(0..r)].insert(t);
        }
        let non_empty = states.iter().filter(|s| !s.is_empty()).count();
        if non_empty < 2.min(r) || (exact && non_empty != r) {
            continue;
        }
        return Character::new(taxa.clone(), Some(name), states).unwrap();
    }
}

/// A random character that may leave some taxa gapped.
pub fn random_gappy_character(
    rng: &mut ChaCha8Rng,
    taxa: &Arc<TaxonSet>,
    r: usize,
    name: &str,
) -> Character {
    loop {
        let mut states: Vec<TaxonSubset> = vec![TaxonSubset::new(); r];
        let mut covered = 0;
        for t in taxa.ids() {
            if rng.random_range(0..4) == 0 {
                continue; // gap
            }
            covered += 1;
            states[rng.random_range(0..r)].insert(t);
        }
        if covered == 0 {
            continue;
        }
        return Character::new(taxa.clone(), Some(name), states).unwrap();
    }
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    taxa: &Arc<TaxonSet>,
    m: usize,
    r: usize,
    exact: bool,
) -> CharacterMatrix {
    let characters = (0..m)
        .map(|i| random_full_character(rng, taxa, r, exact, &format!("c{i}")))
        .collect();
    CharacterMatrix::new(taxa.clone(), characters).unwrap()
}

/// A uniformly random binary tree built by inserting each leaf into a
/// random edge of the growing tree.
pub fn random_binary_tree(rng: &mut ChaCha8Rng, taxa: &Arc<TaxonSet>) -> Tree {
    assert!(taxa.len() >= 3);
    let mut tree = Tree::star(taxa.prefix(3).unwrap()).unwrap();
    for k in 3..taxa.len() {
        let next = if k + 1 == taxa.len() {
            taxa.clone()
        } else {
            taxa.prefix(k + 1).unwrap()
        };
        let edges = tree.edges();
        let e = *edges.choose(rng).unwrap();
        tree = tree.insert_leaf_on_edge(next, k, e);
    }
    tree
}

/// Every leaf-labeled tree on the taxa, multifurcating ones included:
/// all binary trees plus every contraction of every subset of internal
/// edges. Contains topological duplicates; callers that need distinct
/// topologies must dedupe.
pub fn all_trees_including_multifurcating(taxa: &Arc<TaxonSet>) -> Vec<Tree> {
    let mut out = Vec::new();
    for bin in enumerate_binary_trees(taxa).unwrap() {
        let internal: Vec<(usize, usize)> = bin
            .edges()
            .into_iter()
            .filter(|&(u, v)| !bin.is_leaf(u) && !bin.is_leaf(v))
            .collect();
        let k = internal.len();
        for mask in 0..(1u32 << k) {
            let mut t = bin.clone();
            // contract the selected edges one at a time; indices shift,
            // so re-locate each edge by its current endpoints' taxa sides
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            for (i, &e) in internal.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    chosen.push(e);
                }
            }
            if chosen.is_empty() {
                out.push(t);
                continue;
            }
            // identify edges by the split they induce, which survives
            // the renumbering done by contraction
            let keys: Vec<TaxonSubset> =
                chosen.iter().map(|&(u, v)| t.side_taxa(u, v)).collect();
            for key in keys {
                let edge = t
                    .edges()
                    .into_iter()
                    .find(|&(u, v)| t.side_taxa(u, v) == key || t.side_taxa(v, u) == key)
                    .expect("edge with this split still exists");
                t = t.contract_internal_edge(edge).unwrap();
            }
            out.push(t);
        }
    }
    out
}

/// Canonical form for leaf-labeled isomorphism, independent of splits:
/// suppress degree-2 vertices, root at the unique neighbor of taxon 0's
/// leaf, and write children recursively in sorted order.
pub fn canonical_form(t: &Tree) -> String {
    let t = t.suppressed();
    if t.taxa().len() == 1 {
        return "L0".into();
    }
    let leaf0 = t.vertex_of(0);
    if t.taxa().len() == 2 {
        return "edge(L0,L1)".into();
    }
    let root = t.neighbors(leaf0)[0];
    fn canon(t: &Tree, v: usize, parent: usize) -> String {
        if let Some(taxon) = t.taxon_of(v) {
            return format!("L{taxon}");
        }
        let mut parts: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| canon(t, w, v))
            .collect();
        parts.sort();
        format!("({})", parts.join(","))
    }
    // include leaf 0 itself so the rooting is part of the form
    let mut parts: Vec<String> = t
        .neighbors(root)
        .iter()
        .map(|&w| canon(&t, w, root))
        .collect();
    parts.sort();
    format!("({})", parts.join(","))
}
