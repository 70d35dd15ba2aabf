//! Display semantics: vertex-disjoint restricted subtrees, the meet
//! point of a leaf with a restricted subtree, and generalized quartet
//! display.

use crate::character::{Character, CharacterMatrix};
use crate::error::{Error, Result};
use crate::taxa::{TaxonId, TaxonSubset};
use crate::tree::{Tree, VertexId};

fn check_same_taxa(t: &Tree, c: &Character) -> Result<()> {
    if !t.taxa().same_labels(c.taxa()) {
        return Err(Error::TaxonSetMismatch(format!(
            "tree has {} taxa, character {} has {}",
            t.taxa().len(),
            c.display_name(),
            c.taxa().len()
        )));
    }
    Ok(())
}

/// True iff `t` displays `chi`: the minimal subtrees spanning the states
/// are pairwise vertex-disjoint.
///
/// Singleton states are disjoint from everything automatically, so only
/// states with at least two taxa are marked. Gapped taxa constrain
/// nothing.
pub fn displays_character(t: &Tree, chi: &Character) -> Result<bool> {
    check_same_taxa(t, chi)?;
    const FREE: u32 = u32::MAX;
    let mut owner = vec![FREE; t.vertex_count()];
    for (si, state) in chi.states().iter().enumerate() {
        if state.len() < 2 {
            continue;
        }
        let si = si as u32;
        let mut it = state.iter();
        let root = t.vertex_of(*it.next().expect("non-empty state"));
        if owner[root] != FREE {
            return Ok(false);
        }
        owner[root] = si;
        let parent = tree_parents(t, root);
        for &taxon in it {
            let mut cur = t.vertex_of(taxon);
            while owner[cur] != si {
                if owner[cur] != FREE {
                    return Ok(false);
                }
                owner[cur] = si;
                cur = parent[cur];
            }
        }
    }
    Ok(true)
}

fn tree_parents(t: &Tree, root: VertexId) -> Vec<VertexId> {
    let mut parent = vec![usize::MAX; t.vertex_count()];
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    parent
}

/// Outcome of checking a whole matrix against one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayVerdict {
    /// Index of the first character the tree fails to display, if any.
    pub first_failing: Option<usize>,
}

impl DisplayVerdict {
    pub fn all_displayed(&self) -> bool {
        self.first_failing.is_none()
    }
}

/// Checks every character of `m` against `t`, reporting the first failure.
pub fn displays_all(t: &Tree, m: &CharacterMatrix) -> Result<DisplayVerdict> {
    for (i, c) in m.characters().iter().enumerate() {
        if !displays_character(t, c)? {
            return Ok(DisplayVerdict {
                first_failing: Some(i),
            });
        }
    }
    Ok(DisplayVerdict {
        first_failing: None,
    })
}

/// The vertex at which an outside leaf meets a restricted subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeetPoint {
    pub vertex: VertexId,
}

/// The unique vertex `v` of `T[X']` such that the path from `x` to `v`
/// is edge-disjoint from `T[X']`.
pub fn meets(t: &Tree, x: TaxonId, xprime: &TaxonSubset) -> Result<MeetPoint> {
    if xprime.is_empty() {
        return Err(Error::Domain("meet of an empty subtree".into()));
    }
    if xprime.contains(&x) {
        return Err(Error::Domain(format!(
            "taxon '{}' is inside the restricted subtree",
            t.taxa().label(x)
        )));
    }
    if x >= t.taxa().len() {
        return Err(Error::Domain("taxon out of range".into()));
    }
    let mask = t.steiner_mask(xprime)?;
    // the path from x enters the subtree exactly once, so the nearest
    // masked vertex is the meet point
    let start = t.vertex_of(x);
    let mut seen = vec![false; t.vertex_count()];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if mask[v] {
            return Ok(MeetPoint { vertex: v });
        }
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    unreachable!("tree is connected and the subtree is non-empty")
}

/// True iff the meet point of `x` with `T[X']` lies on the path between
/// `u` and `v` inside `T[X']`, endpoints included.
pub fn meets_between(
    t: &Tree,
    x: TaxonId,
    xprime: &TaxonSubset,
    u: VertexId,
    v: VertexId,
) -> Result<bool> {
    let mask = t.steiner_mask(xprime)?;
    if !mask[u] || !mask[v] {
        return Err(Error::Domain(
            "path endpoints must lie in the restricted subtree".into(),
        ));
    }
    let meet = meets(t, x, xprime)?.vertex;
    Ok(t.path(u, v).contains(&meet))
}

/// Four pairwise-disjoint non-empty taxon sets `S1 | S2 || S3 | S4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quartet {
    pub s1: TaxonSubset,
    pub s2: TaxonSubset,
    pub s3: TaxonSubset,
    pub s4: TaxonSubset,
}

impl Quartet {
    pub fn new(
        s1: TaxonSubset,
        s2: TaxonSubset,
        s3: TaxonSubset,
        s4: TaxonSubset,
    ) -> Result<Self> {
        let sets = [&s1, &s2, &s3, &s4];
        if sets.iter().any(|s| s.is_empty()) {
            return Err(Error::Domain("quartet sets must be non-empty".into()));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if sets[i].intersection(sets[j]).next().is_some() {
                    return Err(Error::Domain("quartet sets must be disjoint".into()));
                }
            }
        }
        Ok(Quartet { s1, s2, s3, s4 })
    }

    fn sets(&self) -> [&TaxonSubset; 4] {
        [&self.s1, &self.s2, &self.s3, &self.s4]
    }
}

/// True iff `t` displays the quartet: there are distinct internal
/// vertices `u`, `v` such that deleting any edge on the `u`–`v` path
/// separates `S1 ∪ S2` from `S3 ∪ S4`, deleting `u` separates `S1` from
/// `S2`, and deleting `v` separates `S3` from `S4`.
///
/// The definition is read with `u != v` required; with singleton sets it
/// then coincides with the usual notion of displaying a quartet.
pub fn displays_quartet(t: &Tree, q: &Quartet) -> Result<bool> {
    Ok(quartet_witness(t, q)?.is_some())
}

/// As [`displays_quartet`], returning the first witnessing vertex pair.
pub fn quartet_witness(t: &Tree, q: &Quartet) -> Result<Option<(VertexId, VertexId)>> {
    for s in q.sets() {
        if s.iter().any(|&x| x >= t.taxa().len()) {
            return Err(Error::Domain("quartet taxon out of range".into()));
        }
    }
    let s12: TaxonSubset = q.s1.union(&q.s2).copied().collect();
    let s34: TaxonSubset = q.s3.union(&q.s4).copied().collect();
    let internal: Vec<VertexId> = t.internal_vertices().collect();
    let seps_s1_s2: Vec<bool> = internal
        .iter()
        .map(|&u| vertex_separates(t, u, &q.s1, &q.s2))
        .collect();
    let seps_s3_s4: Vec<bool> = internal
        .iter()
        .map(|&v| vertex_separates(t, v, &q.s3, &q.s4))
        .collect();
    for (ui, &u) in internal.iter().enumerate() {
        if !seps_s1_s2[ui] {
            continue;
        }
        'pair: for (vi, &v) in internal.iter().enumerate() {
            if u == v || !seps_s3_s4[vi] {
                continue;
            }
            let path = t.path(u, v);
            for w in path.windows(2) {
                let side = t.side_taxa(w[0], w[1]);
                let s12_far = s12.iter().all(|x| side.contains(x));
                let s34_far = s34.iter().all(|x| side.contains(x));
                let s12_near = s12.iter().all(|x| !side.contains(x));
                let s34_near = s34.iter().all(|x| !side.contains(x));
                if !((s12_far && s34_near) || (s34_far && s12_near)) {
                    continue 'pair;
                }
            }
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// True iff no component of `t` minus the vertex `u` contains taxa from
/// both `a` and `b`.
fn vertex_separates(t: &Tree, u: VertexId, a: &TaxonSubset, b: &TaxonSubset) -> bool {
    // each neighbor subtree of u is one component
    for &w in t.neighbors(u) {
        let comp = t.side_taxa(u, w);
        let has_a = a.iter().any(|x| comp.contains(x));
        let has_b = b.iter().any(|x| comp.contains(x));
        if has_a && has_b {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxa::TaxonSet;
    use crate::tree::TreeBuilder;
    use std::sync::Arc;

    fn quartet_tree() -> Tree {
        let taxa = Arc::new(TaxonSet::new(["a", "b", "c", "d"]).unwrap());
        let mut bld = TreeBuilder::new(taxa);
        let u = bld.internal("u");
        let v = bld.internal("v");
        for t in 0..4 {
            let l = bld.leaf(t);
            bld.edge(if t < 2 { u } else { v }, l);
        }
        bld.edge(u, v);
        bld.build().unwrap()
    }

    #[test]
    fn all_singleton_character_always_displayed() {
        let t = quartet_tree();
        let taxa = t.taxa().clone();
        let states = (0..4).map(|i| TaxonSubset::from([i])).collect();
        let c = Character::new(taxa, None, states).unwrap();
        assert!(displays_character(&t, &c).unwrap());
    }

    #[test]
    fn ab_cd_split_character() {
        let t = quartet_tree();
        let taxa = t.taxa().clone();
        let good = Character::new(
            taxa.clone(),
            None,
            vec![taxa.subset_of(&["a", "b"]).unwrap(), taxa.subset_of(&["c", "d"]).unwrap()],
        )
        .unwrap();
        assert!(displays_character(&t, &good).unwrap());
        let bad = Character::new(
            taxa.clone(),
            None,
            vec![taxa.subset_of(&["a", "c"]).unwrap(), taxa.subset_of(&["b", "d"]).unwrap()],
        )
        .unwrap();
        assert!(!displays_character(&t, &bad).unwrap());
    }

    #[test]
    fn empty_matrix_always_displayed() {
        let t = quartet_tree();
        let m = CharacterMatrix::new(t.taxa().clone(), vec![]).unwrap();
        assert!(displays_all(&t, &m).unwrap().all_displayed());
    }

    #[test]
    fn mismatched_taxa_rejected() {
        let t = quartet_tree();
        let other = Arc::new(TaxonSet::new(["x", "y"]).unwrap());
        let c = Character::new(other, None, vec![TaxonSubset::from([0, 1])]).unwrap();
        assert!(displays_character(&t, &c).is_err());
    }

    #[test]
    fn meet_of_extra_leaf_on_internal_edge() {
        // quartet tree ab|cd with e attached to the internal edge
        let taxa = Arc::new(TaxonSet::new(["a", "b", "c", "d", "e"]).unwrap());
        let mut bld = TreeBuilder::new(taxa.clone());
        let u = bld.internal("u");
        let w = bld.internal("w");
        let v = bld.internal("v");
        for t in 0..2 {
            let l = bld.leaf(t);
            bld.edge(u, l);
        }
        for t in 2..4 {
            let l = bld.leaf(t);
            bld.edge(v, l);
        }
        let e = bld.leaf(4);
        bld.edge(u, w);
        bld.edge(w, v);
        bld.edge(w, e);
        let t = bld.build().unwrap();
        let xp = taxa.subset_of(&["a", "b", "c", "d"]).unwrap();
        let m = meets(&t, 4, &xp).unwrap();
        assert_eq!(m.vertex, t.vertex_by_name("w").unwrap());
        // endpoint-inclusive: the meet vertex itself counts as "between"
        assert!(meets_between(&t, 4, &xp, m.vertex, t.vertex_by_name("v").unwrap()).unwrap());
    }

    #[test]
    fn meet_inside_subtree_rejected() {
        let t = quartet_tree();
        let xp = t.taxa().subset_of(&["a", "b"]).unwrap();
        assert!(meets(&t, 0, &xp).is_err());
        assert!(meets(&t, 2, &TaxonSubset::new()).is_err());
    }

    #[test]
    fn crossing_quartet_not_displayed_on_four_leaves() {
        // exhaustively: the tree ab|cd has internal vertices u and v only
        let t = quartet_tree();
        let one = |l: &str| t.taxa().subset_of(&[l]).unwrap();
        let q = Quartet::new(one("a"), one("c"), one("b"), one("d")).unwrap();
        assert!(!displays_quartet(&t, &q).unwrap());
        let ok = Quartet::new(one("a"), one("b"), one("c"), one("d")).unwrap();
        assert!(displays_quartet(&t, &ok).unwrap());
    }

    #[test]
    fn overlapping_quartet_sets_rejected() {
        let t = quartet_tree();
        let s = |ls: &[&str]| t.taxa().subset_of(ls).unwrap();
        assert!(Quartet::new(s(&["a"]), s(&["a"]), s(&["b"]), s(&["c"])).is_err());
    }

    #[test]
    fn generic_quartet_instance() {
        // S1, S2 hang off u; S3, S4 hang off v; u and v joined by a path
        let taxa = Arc::new(
            TaxonSet::new(["p", "q", "r", "s", "w", "x", "y", "z"]).unwrap(),
        );
        let mut bld = TreeBuilder::new(taxa.clone());
        let u = bld.internal("u");
        let mid = bld.internal("");
        let v = bld.internal("v");
        let c1 = bld.internal("");
        let c2 = bld.internal("");
        let c3 = bld.internal("");
        let c4 = bld.internal("");
        bld.edge(u, mid);
        bld.edge(mid, v);
        bld.edge(u, c1);
        bld.edge(u, c2);
        bld.edge(v, c3);
        bld.edge(v, c4);
        for (i, c) in [(0, c1), (1, c1), (2, c2), (3, c2), (4, c3), (5, c3), (6, c4), (7, c4)] {
            let l = bld.leaf(i);
            bld.edge(c, l);
        }
        let t = bld.build().unwrap();
        let s = |ls: &[&str]| taxa.subset_of(ls).unwrap();
        let q = Quartet::new(s(&["p", "q"]), s(&["r", "s"]), s(&["w", "x"]), s(&["y", "z"]))
            .unwrap();
        let w = quartet_witness(&t, &q).unwrap();
        assert_eq!(
            w,
            Some((t.vertex_by_name("u").unwrap(), t.vertex_by_name("v").unwrap()))
        );
    }
}
