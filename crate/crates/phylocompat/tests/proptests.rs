//! Property-based invariants for the data-model algebra: construction
//! normalization, file round trips, and restriction composition.

use std::sync::Arc;

use proptest::prelude::*;

use phylocompat::matrix_file::{parse_matrix, serialize_matrix};
use phylocompat::newick::{from_newick, to_newick};
use phylocompat::{Character, CharacterMatrix, TaxonSet, TaxonSubset, Tree};

fn taxa(n: usize) -> Arc<TaxonSet> {
    Arc::new(TaxonSet::new((0..n).map(|i| format!("t{i}"))).unwrap())
}

// a character as an assignment of each taxon to a state or a gap
fn character_from_assignment(taxa: &Arc<TaxonSet>, assign: &[Option<u8>]) -> Character {
    let r = assign.iter().flatten().max().map_or(0, |&m| m as usize + 1);
    let mut states = vec![TaxonSubset::new(); r];
    for (t, a) in assign.iter().enumerate() {
        if let Some(s) = a {
            states[*s as usize].insert(t);
        }
    }
    Character::new(taxa.clone(), Some("c"), states).unwrap()
}

fn assignment(n: usize) -> impl Strategy<Value = Vec<Option<u8>>> {
    proptest::collection::vec(proptest::option::weighted(0.8, 0u8..6), n)
}

fn tree_from_choices(taxa: &Arc<TaxonSet>, choices: &[u8]) -> Tree {
    let mut tree = Tree::star(taxa.prefix(3).unwrap()).unwrap();
    for (k, &c) in choices.iter().enumerate().take(taxa.len() - 3) {
        let next = if k + 4 == taxa.len() {
            taxa.clone()
        } else {
            taxa.prefix(k + 4).unwrap()
        };
        let edges = tree.edges();
        let e = edges[c as usize % edges.len()];
        tree = tree.insert_leaf_on_edge(next, k + 3, e);
    }
    tree
}

proptest! {
    #[test]
    fn character_construction_is_idempotent(
        n in 3usize..9,
        assign in assignment(8),
    ) {
        let taxa = taxa(n);
        let c = character_from_assignment(&taxa, &assign[..n]);
        let again = Character::new(taxa.clone(), Some("c"), c.states().to_vec()).unwrap();
        prop_assert_eq!(&c, &again);
    }

    #[test]
    fn state_order_never_matters(
        n in 3usize..9,
        assign in assignment(8),
        seed in any::<u64>(),
    ) {
        let taxa = taxa(n);
        let c = character_from_assignment(&taxa, &assign[..n]);
        let mut states = c.states().to_vec();
        // deterministic shuffle
        let k = states.len().max(1);
        states.rotate_left(seed as usize % k);
        states.reverse();
        let shuffled = Character::new(taxa.clone(), Some("c"), states).unwrap();
        prop_assert!(c.same_partition(&shuffled));
    }

    #[test]
    fn newick_round_trip_preserves_splits(
        n in 3usize..10,
        choices in proptest::collection::vec(any::<u8>(), 8),
    ) {
        let taxa = taxa(n);
        let t = tree_from_choices(&taxa, &choices);
        let back = from_newick(&to_newick(&t), Some(taxa.clone())).unwrap();
        prop_assert!(t.split_equal(&back).unwrap());
    }

    #[test]
    fn matrix_file_round_trip_is_lossless(
        n in 2usize..8,
        assigns in proptest::collection::vec(assignment(8), 1..5),
    ) {
        let taxa = taxa(n);
        let characters: Vec<Character> = assigns
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let c = character_from_assignment(&taxa, &a[..n]);
                Character::new(taxa.clone(), Some(&format!("c{i}")), c.states().to_vec()).unwrap()
            })
            .collect();
        let m = CharacterMatrix::new(taxa.clone(), characters).unwrap();
        let text = serialize_matrix(&m);
        let parsed = parse_matrix(&text).unwrap();
        prop_assert_eq!(&parsed, &m);
        prop_assert_eq!(serialize_matrix(&parsed), text);
    }

    #[test]
    fn restriction_composition_on_characters(
        n in 4usize..9,
        assign in assignment(8),
        keep_mask in any::<u16>(),
        keep_mask2 in any::<u16>(),
    ) {
        let taxa = taxa(n);
        let c = character_from_assignment(&taxa, &assign[..n]);
        let xp: TaxonSubset = (0..n).filter(|i| keep_mask & (1 << i) != 0).collect();
        let xpp: TaxonSubset = xp
            .iter()
            .copied()
            .filter(|i| keep_mask2 & (1 << i) != 0)
            .collect();
        let direct = c.restrict(&xpp).unwrap();
        let step = c.restrict(&xp).unwrap();
        let inner: TaxonSubset = xpp
            .iter()
            .map(|&x| step.taxa().id_of(taxa.label(x)).unwrap())
            .collect();
        let two_step = step.restrict(&inner).unwrap();
        prop_assert_eq!(direct.states(), two_step.states());
    }
}
