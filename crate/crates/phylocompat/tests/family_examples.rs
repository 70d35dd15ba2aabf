//! Named examples on the counterexample family and the classical
//! five-taxon instance, exercised through the public API.

use std::sync::Arc;

use phylocompat::construction::{counterexample, fitch_example, lobster_a};
use phylocompat::display::{
    displays_all, displays_quartet, meets, meets_between, Quartet,
};
use phylocompat::solver::{
    decide_pp, enumerate_compatible_trees, minimal_obstructions, triple_test_3state, SearchMode,
};
use phylocompat::verify::{family_quartet, verify_quartet_chain, verify_theorem};
use phylocompat::{Character, TaxonSet, Tree, TreeBuilder};

#[test]
fn restricting_the_first_character_to_a_prefix() {
    // Omega_A cut down to {a1,b1,a2,b2} keeps the block a1 b1 b2 and the
    // lone survivor a2 of the big block
    let inst = counterexample(6).unwrap();
    let omega_a = inst.matrix.character(0);
    let keep = inst.taxa.x_le(2).unwrap();
    let r = omega_a.restrict(&keep).unwrap();
    let expected = Character::new(
        r.taxa().clone(),
        Some("Omega_A"),
        vec![
            r.taxa().subset_of(&["a1", "b1", "b2"]).unwrap(),
            r.taxa().subset_of(&["a2"]).unwrap(),
        ],
    )
    .unwrap();
    assert!(r.same_partition(&expected));
}

#[test]
fn restricting_a_caterpillar_to_two_leaves_gives_their_path() {
    // caterpillar on 5 leaves: l0 - w1(l1) - w2(l2) - w3(l3, l4)
    let taxa = Arc::new(TaxonSet::new(["l0", "l1", "l2", "l3", "l4"]).unwrap());
    let mut b = TreeBuilder::new(taxa.clone());
    let w1 = b.internal("w1");
    let w2 = b.internal("w2");
    let w3 = b.internal("w3");
    b.edge(w1, w2);
    b.edge(w2, w3);
    let leaves: Vec<_> = (0..5).map(|t| b.leaf(t)).collect();
    b.edge(leaves[0], w1);
    b.edge(leaves[1], w1);
    b.edge(leaves[2], w2);
    b.edge(leaves[3], w3);
    b.edge(leaves[4], w3);
    let t = b.build().unwrap();

    let keep = taxa.subset_of(&["l0", "l3"]).unwrap();
    let kept = t.restrict(&keep, false).unwrap();
    // oracle: the path l0..l3 in the full tree has 5 vertices
    let path = t.path(t.vertex_of(0), t.vertex_of(3));
    assert_eq!(kept.vertex_count(), path.len());
    assert_eq!(kept.vertex_count(), 5);
    // suppressed, only the endpoints remain
    assert_eq!(t.restrict(&keep, true).unwrap().vertex_count(), 2);
}

#[test]
fn split_sets_are_invariant_under_vertex_renaming() {
    // rebuild the n = 4 A-lobster with scrambled vertex insertion order
    // and anonymous internals; the split sets must coincide
    let a = lobster_a(4).unwrap();
    let taxa = a.taxa().clone();
    let mut b = TreeBuilder::new(taxa.clone());
    let x = taxa.as_ref();
    let v3 = b.internal("");
    let v2 = b.internal("");
    let v1 = b.internal("");
    let u3 = b.internal("");
    let u2 = b.internal("");
    let u1 = b.internal("");
    for (hub, labels) in [
        (v1, ["b1", "b2"]),
        (v2, ["a2", "a3"]),
        (v3, ["b3", "b4"]),
    ] {
        for l in labels {
            let leaf = b.leaf(x.id_of(l).unwrap());
            b.edge(hub, leaf);
        }
    }
    let a1 = b.leaf(x.id_of("a1").unwrap());
    let a4 = b.leaf(x.id_of("a4").unwrap());
    b.edge(a1, u1);
    b.edge(u1, u2);
    b.edge(u2, u3);
    b.edge(u3, a4);
    b.edge(u1, v1);
    b.edge(u2, v2);
    b.edge(u3, v3);
    let copy = b.build().unwrap();
    assert_eq!(a.splits(), copy.splits());
}

#[test]
fn first_failing_character_of_the_a_lobster_is_omega_b() {
    let inst = counterexample(6).unwrap();
    let a = lobster_a(6).unwrap();
    let verdict = displays_all(&a, &inst.matrix).unwrap();
    let failing = verdict.first_failing.expect("A cannot display everything");
    assert_eq!(inst.matrix.character(failing).name(), Some("Omega_B"));
    // and without that character the verdict is clean
    let rest = inst.matrix.without_character(failing).unwrap();
    assert!(displays_all(&a, &rest).unwrap().all_displayed());
}

#[test]
fn meet_points_on_the_a_lobster() {
    let inst = counterexample(6).unwrap();
    let a = lobster_a(6).unwrap();
    let x = inst.taxa.as_ref();

    // a2 joins the subtree spanning {a1, b1, b2} at u1
    let prefix = x.subset_of(&["a1", "b1", "b2"]).unwrap();
    let m = meets(&a, x.id_of("a2").unwrap(), &prefix).unwrap();
    assert_eq!(m.vertex, a.vertex_by_name("u1").unwrap());

    // b3 joins the subtree spanning {a1, b1, a2, b2} between u1 and a2
    let le2 = x.x_le(2).unwrap();
    let u1 = a.vertex_by_name("u1").unwrap();
    let a2 = a.vertex_of(x.id_of("a2").unwrap());
    assert!(meets_between(&a, x.id_of("b3").unwrap(), &le2, u1, a2).unwrap());

    // but not between u1 and b1, which sits on the other side
    let b1 = a.vertex_of(x.id_of("b1").unwrap());
    assert!(!meets_between(&a, x.id_of("b3").unwrap(), &le2, u1, b1).unwrap());
}

#[test]
fn base_case_quartet_displayed_by_the_a_lobster() {
    let inst = counterexample(6).unwrap();
    let a = lobster_a(6).unwrap();
    let x = inst.taxa.as_ref();
    let mut s1 = x.x_le(2).unwrap();
    s1.insert(x.id_of("a3").unwrap());
    let q = Quartet::new(
        s1,
        [x.id_of("a4").unwrap()].into(),
        [x.id_of("b3").unwrap()].into(),
        [x.id_of("b4").unwrap()].into(),
    )
    .unwrap();
    assert!(displays_quartet(&a, &q).unwrap());
    // the same quartet via the family helper
    let q3 = family_quartet(&inst, 3).unwrap();
    assert_eq!(q, q3);
}

#[test]
fn triple_test_rejects_the_fitch_matrix() {
    let m = fitch_example();
    assert!(!triple_test_3state(&m).unwrap());
}

#[test]
fn the_two_omegas_alone_are_compatible() {
    let inst = counterexample(4).unwrap();
    let omegas = inst
        .matrix
        .select_characters(&[0, inst.matrix.len() - 1])
        .unwrap();
    assert_eq!(omegas.character(0).name(), Some("Omega_A"));
    assert_eq!(omegas.character(1).name(), Some("Omega_B"));
    assert!(decide_pp(&omegas, SearchMode::Exhaustive, None)
        .unwrap()
        .is_compatible());
}

#[test]
fn family_is_its_own_unique_minimal_obstruction() {
    let inst = counterexample(6).unwrap();
    let report = minimal_obstructions(&inst.matrix, 8, None).unwrap();
    assert!(report.complete);
    assert_eq!(report.obstructions.len(), 1);
    assert_eq!(report.obstructions[0].subset, (0..8).collect::<Vec<_>>());
    assert!(report.obstructions[0].minimal);
}

#[test]
fn quartet_chain_holds_for_every_near_witness() {
    // every binary tree displaying C(6) minus {phi_5, Omega_B} passes
    // the whole forced-quartet chain
    let inst = counterexample(6).unwrap();
    let keep: Vec<usize> = (0..inst.matrix.len())
        .filter(|&i| {
            !matches!(inst.matrix.character(i).name(), Some("phi_5") | Some("Omega_B"))
        })
        .collect();
    let near = inst.matrix.select_characters(&keep).unwrap();
    let e = enumerate_compatible_trees(&near, usize::MAX, None).unwrap();
    assert!(e.complete);
    assert!(!e.trees.is_empty());
    for tree in &e.trees {
        let r = verify_quartet_chain(tree, 6).unwrap();
        assert!(r.passed(), "{}", r.evidence);
    }
}

#[test]
fn theorem_holds_at_the_smallest_size() {
    let r = verify_theorem(4, 3).unwrap();
    assert!(r.passed(), "{}", r.evidence);
}

#[test]
fn witness_trees_survive_newick_round_trips() {
    let a: Tree = lobster_a(6).unwrap();
    let text = phylocompat::newick::to_newick(&a);
    let back = phylocompat::newick::from_newick(&text, Some(a.taxa().clone())).unwrap();
    assert!(a.split_equal(&back).unwrap());
}
