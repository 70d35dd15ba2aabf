//! Exact perfect-phylogeny decision: exhaustive enumeration of binary
//! trees, branch-and-bound by incremental leaf insertion, the classical
//! small-state filters, and minimal-obstruction mining.
//!
//! Searching binary trees only is complete: a tree displaying a
//! character still displays it after refining any internal vertex, so
//! any multifurcating witness refines to a binary one. Branch-and-bound
//! prunes a partial tree as soon as the matrix restricted to the placed
//! taxa is not displayed; restricting a tree and a character to the same
//! subset preserves display, so no witness is lost.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::character::{Character, CharacterMatrix};
use crate::display::displays_all;
use crate::error::{Error, Result};
use crate::taxa::{TaxonSet, TaxonSubset};
use crate::tree::Tree;

/// Search strategy for [`decide_pp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Check every binary tree on the taxa.
    Exhaustive,
    /// Grow trees by leaf insertion, pruning on restricted display failure.
    BranchAndBound,
    /// Exhaustive up to 9 taxa, branch-and-bound beyond.
    Auto,
}

/// Why a complete search concluded incompatibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncompatibilityReason {
    /// The (pruned) search space was exhausted without finding a witness.
    ExhaustedSearch,
    /// A named sufficient filter rejected the matrix.
    Filter(String),
}

/// Outcome of a compatibility decision.
#[derive(Debug, Clone)]
pub enum Status {
    /// A tree displaying every character; verified before being returned.
    Compatible(Tree),
    Incompatible(IncompatibilityReason),
    /// The node budget ran out before the search completed.
    Undecided { budget: u64 },
}

/// Search counters reported alongside every verdict.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Trees checked (exhaustive) or partial trees generated (branch-and-bound).
    pub explored: u64,
    /// Partial trees cut off by the restricted display check.
    pub pruned: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn is_compatible(&self) -> bool {
        matches!(self.status, Status::Compatible(_))
    }

    pub fn witness(&self) -> Option<&Tree> {
        match &self.status {
            Status::Compatible(t) => Some(t),
            _ => None,
        }
    }
}

/// Iterator over every unrooted binary tree on the given taxa, generated
/// by inserting leaves in label order into every edge of each smaller
/// tree. Yields `(2n-5)!!` trees, each exactly once.
pub struct BinaryTreeIter {
    taxa: Arc<TaxonSet>,
    prefixes: Vec<Arc<TaxonSet>>,
    stack: Vec<(Tree, usize)>,
}

/// All binary trees on `taxa` (requires at least 3 taxa).
pub fn enumerate_binary_trees(taxa: &Arc<TaxonSet>) -> Result<BinaryTreeIter> {
    let n = taxa.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "binary tree enumeration needs at least 3 taxa, got {n}"
        )));
    }
    let mut prefixes = Vec::with_capacity(n - 2);
    for k in 3..n {
        prefixes.push(taxa.prefix(k)?);
    }
    prefixes.push(taxa.clone());
    let base = Tree::star(prefixes[0].clone())?;
    Ok(BinaryTreeIter {
        taxa: taxa.clone(),
        prefixes,
        stack: vec![(base, 0)],
    })
}

impl Iterator for BinaryTreeIter {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            let (tree, next_edge) = self.stack.last_mut()?;
            let k = tree.taxa().len();
            if k == self.taxa.len() {
                let done = self.stack.pop().expect("non-empty").0;
                return Some(done);
            }
            let edges = tree.edges();
            if *next_edge >= edges.len() {
                self.stack.pop();
                continue;
            }
            let e = edges[*next_edge];
            *next_edge += 1;
            let grown = tree.insert_leaf_on_edge(self.prefixes[k - 2].clone(), k, e);
            self.stack.push((grown, 0));
        }
    }
}

struct BbSearch<'a> {
    matrix: &'a CharacterMatrix,
    prefixes: Vec<Arc<TaxonSet>>,
    restricted: Vec<CharacterMatrix>,
    stats: SearchStats,
    budget: Option<u64>,
}

enum BbOutcome {
    Done,
    BudgetExhausted,
}

impl<'a> BbSearch<'a> {
    fn new(matrix: &'a CharacterMatrix, budget: Option<u64>) -> Result<Self> {
        let taxa = matrix.taxa();
        let n = taxa.len();
        let mut prefixes = Vec::new();
        let mut restricted = Vec::new();
        for k in 3..n {
            let keep: TaxonSubset = (0..k).collect();
            prefixes.push(taxa.prefix(k)?);
            restricted.push(matrix.restrict(&keep)?);
        }
        prefixes.push(taxa.clone());
        restricted.push(matrix.clone());
        Ok(BbSearch {
            matrix,
            prefixes,
            restricted,
            stats: SearchStats::default(),
            budget,
        })
    }

    /// Depth-first traversal of the pruned insertion tree. Calls `found`
    /// on every complete tree that displays the full matrix; stops early
    /// when `found` returns false.
    fn run(&mut self, found: &mut dyn FnMut(&Tree) -> bool) -> Result<BbOutcome> {
        let n = self.matrix.taxa().len();
        let base = Tree::star(self.prefixes[0].clone())?;
        self.stats.explored += 1;
        if !displays_all(&base, &self.restricted[0])?.all_displayed() {
            self.stats.pruned += 1;
            return Ok(BbOutcome::Done);
        }
        if n == 3 {
            found(&base);
            return Ok(BbOutcome::Done);
        }
        let mut stack = vec![(base, 0usize)];
        while let Some((tree, next_edge)) = stack.last_mut() {
            let k = tree.taxa().len();
            let edges = tree.edges();
            if *next_edge >= edges.len() {
                stack.pop();
                continue;
            }
            let e = edges[*next_edge];
            *next_edge += 1;
            if let Some(b) = self.budget {
                if self.stats.explored >= b {
                    return Ok(BbOutcome::BudgetExhausted);
                }
            }
            let grown = tree.insert_leaf_on_edge(self.prefixes[k - 2].clone(), k, e);
            self.stats.explored += 1;
            if !displays_all(&grown, &self.restricted[k - 2])?.all_displayed() {
                self.stats.pruned += 1;
                continue;
            }
            if k + 1 == n {
                if !found(&grown) {
                    return Ok(BbOutcome::Done);
                }
            } else {
                stack.push((grown, 0));
            }
        }
        Ok(BbOutcome::Done)
    }
}

/// Decides whether the matrix admits a perfect phylogeny.
///
/// Returns a verified witness tree, an incompatibility verdict backed by
/// a complete (possibly pruned) search, or an explicit undecided outcome
/// when the node budget runs out.
pub fn decide_pp(m: &CharacterMatrix, mode: SearchMode, budget: Option<u64>) -> Result<Verdict> {
    let start = Instant::now();
    let n = m.taxa().len();
    if n == 0 {
        return Err(Error::Domain("matrix has no taxa".into()));
    }
    let mut stats = SearchStats::default();
    if n <= 2 {
        let tree = Tree::degenerate(m.taxa().clone())?;
        stats.explored = 1;
        stats.wall = start.elapsed();
        let status = if displays_all(&tree, m)?.all_displayed() {
            Status::Compatible(tree)
        } else {
            Status::Incompatible(IncompatibilityReason::ExhaustedSearch)
        };
        return Ok(Verdict { status, stats });
    }
    let mode = match mode {
        SearchMode::Auto if n <= 9 => SearchMode::Exhaustive,
        SearchMode::Auto => SearchMode::BranchAndBound,
        m => m,
    };
    match mode {
        SearchMode::Exhaustive => {
            for tree in enumerate_binary_trees(m.taxa())? {
                if let Some(b) = budget {
                    if stats.explored >= b {
                        stats.wall = start.elapsed();
                        return Ok(Verdict {
                            status: Status::Undecided { budget: b },
                            stats,
                        });
                    }
                }
                stats.explored += 1;
                if displays_all(&tree, m)?.all_displayed() {
                    stats.wall = start.elapsed();
                    return Ok(Verdict {
                        status: certified_compatible(tree, m)?,
                        stats,
                    });
                }
            }
            stats.wall = start.elapsed();
            Ok(Verdict {
                status: Status::Incompatible(IncompatibilityReason::ExhaustedSearch),
                stats,
            })
        }
        SearchMode::BranchAndBound => {
            let mut search = BbSearch::new(m, budget)?;
            let mut witness: Option<Tree> = None;
            let outcome = search.run(&mut |t| {
                witness = Some(t.clone());
                false
            })?;
            let mut stats = search.stats;
            stats.wall = start.elapsed();
            let status = match (witness, outcome) {
                (Some(t), _) => {
                    let t = t.with_taxa(m.taxa().clone())?;
                    certified_compatible(t, m)?
                }
                (None, BbOutcome::BudgetExhausted) => Status::Undecided {
                    budget: budget.expect("budget was hit"),
                },
                (None, BbOutcome::Done) => {
                    Status::Incompatible(IncompatibilityReason::ExhaustedSearch)
                }
            };
            Ok(Verdict { status, stats })
        }
        SearchMode::Auto => unreachable!("resolved above"),
    }
}

fn certified_compatible(tree: Tree, m: &CharacterMatrix) -> Result<Status> {
    // every Compatible verdict is re-verified before being returned
    assert!(
        displays_all(&tree, m)?.all_displayed(),
        "internal error: witness fails the display check"
    );
    Ok(Status::Compatible(tree))
}

/// Classical pair test for two full 2-state characters: the pair is
/// compatible exactly when at least one of the four pairwise state
/// intersections is empty.
pub fn four_gamete_pair_test(a: &Character, b: &Character) -> Result<bool> {
    if !a.taxa().same_labels(b.taxa()) {
        return Err(Error::TaxonSetMismatch(
            "pair test needs characters on the same taxa".into(),
        ));
    }
    for c in [a, b] {
        if c.state_count() != 2 || !c.is_full() {
            return Err(Error::Domain(format!(
                "four-gamete test needs full 2-state characters, '{}' has {} states{}",
                c.display_name(),
                c.state_count(),
                if c.is_full() { "" } else { " and gaps" }
            )));
        }
    }
    for sa in a.states() {
        for sb in b.states() {
            if sa.intersection(sb).next().is_none() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Pairwise four-gamete test over a matrix of full 2-state characters.
/// Agrees with [`decide_pp`] on this domain.
pub fn binary_matrix_test(m: &CharacterMatrix) -> Result<bool> {
    let cs = m.characters();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if !four_gamete_pair_test(&cs[i], &cs[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks every subset of at most 3 characters of a full 3-state matrix
/// for compatibility. Agrees with [`decide_pp`] on this domain.
pub fn triple_test_3state(m: &CharacterMatrix) -> Result<bool> {
    for c in m.characters() {
        if c.state_count() > 3 || !c.is_full() {
            return Err(Error::Domain(format!(
                "triple test needs full characters with at most 3 states, got '{}'",
                c.display_name()
            )));
        }
    }
    let k = m.len().min(3);
    let mut chosen = Vec::new();
    subsets_of_size(m.len(), k, 0, &mut chosen, &mut |subset| {
        let sub = m.select_characters(subset)?;
        Ok(decide_pp(&sub, SearchMode::Auto, None)?.is_compatible())
    })
}

fn subsets_of_size(
    n: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    keep_going: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    if chosen.len() == k {
        return keep_going(chosen);
    }
    for i in start..n {
        chosen.push(i);
        let cont = subsets_of_size(n, k, i + 1, chosen, keep_going)?;
        chosen.pop();
        if !cont {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An incompatible character subset, by indices into the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub subset: Vec<usize>,
    /// Every proper subset is compatible (re-verified on emission).
    pub minimal: bool,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    /// Inclusion-minimal incompatible subsets, smallest first, each
    /// sorted and the list ordered lexicographically within a size.
    pub obstructions: Vec<Obstruction>,
    /// False when the node budget ran out before the lattice was covered.
    pub complete: bool,
}

/// All inclusion-minimal incompatible subsets of at most `max_size`
/// characters, by bottom-up lattice search with memoized compatibility
/// queries. Each reported subset is re-verified minimal by checking its
/// one-smaller subsets.
pub fn minimal_obstructions(
    m: &CharacterMatrix,
    max_size: usize,
    budget: Option<u64>,
) -> Result<ObstructionReport> {
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut spent: u64 = 0;
    let mut complete = true;

    let top = max_size.min(m.len());
    'sizes: for size in 1..=top {
        let mut chosen = Vec::new();
        let finished = subsets_of_size(m.len(), size, 0, &mut chosen, &mut |subset| {
            if found.iter().any(|o| is_subset(o, subset)) {
                return Ok(true); // contains a smaller obstruction; not minimal
            }
            let compatible = decide_memo(m, subset, &mut memo, budget, &mut spent)?;
            match compatible {
                Some(true) => {}
                Some(false) => found.push(subset.to_vec()),
                None => return Ok(false), // budget exhausted
            }
            Ok(true)
        })?;
        if !finished {
            complete = false;
            break 'sizes;
        }
    }

    let mut obstructions = Vec::with_capacity(found.len());
    for subset in found {
        // re-verify minimality: every one-smaller subset must be compatible
        let mut minimal = true;
        for omit in 0..subset.len() {
            let mut smaller = subset.clone();
            smaller.remove(omit);
            if smaller.is_empty() {
                continue;
            }
            match decide_memo(m, &smaller, &mut memo, budget, &mut spent)? {
                Some(true) => {}
                Some(false) => minimal = false,
                None => {
                    complete = false;
                    minimal = false;
                }
            }
        }
        debug_assert!(minimal, "lattice order should guarantee minimality");
        obstructions.push(Obstruction { subset, minimal });
    }
    obstructions.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
    Ok(ObstructionReport {
        obstructions,
        complete,
    })
}

fn decide_memo(
    m: &CharacterMatrix,
    subset: &[usize],
    memo: &mut HashMap<Vec<usize>, bool>,
    budget: Option<u64>,
    spent: &mut u64,
) -> Result<Option<bool>> {
    if let Some(&c) = memo.get(subset) {
        return Ok(Some(c));
    }
    let remaining = budget.map(|b| b.saturating_sub(*spent));
    if remaining == Some(0) {
        return Ok(None);
    }
    let sub = m.select_characters(subset)?;
    let verdict = decide_pp(&sub, SearchMode::Auto, remaining)?;
    *spent += verdict.stats.explored;
    let compatible = match verdict.status {
        Status::Compatible(_) => true,
        Status::Incompatible(_) => false,
        Status::Undecided { .. } => return Ok(None),
    };
    memo.insert(subset.to_vec(), compatible);
    Ok(Some(compatible))
}

fn is_subset(smaller: &[usize], larger: &[usize]) -> bool {
    smaller.iter().all(|x| larger.binary_search(x).is_ok())
}

#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    /// Distinct (by split set) binary witnesses, in lexicographic order
    /// of their split encodings.
    pub trees: Vec<Tree>,
    /// True when the search space was fully traversed (no limit or
    /// budget cut-off), so the list is every binary witness.
    pub complete: bool,
    pub stats: SearchStats,
}

/// Up to `limit` distinct binary trees displaying every character of `m`.
pub fn enumerate_compatible_trees(
    m: &CharacterMatrix,
    limit: usize,
    budget: Option<u64>,
) -> Result<TreeEnumeration> {
    let start = Instant::now();
    if limit == 0 {
        return Ok(TreeEnumeration {
            trees: vec![],
            complete: false,
            stats: SearchStats::default(),
        });
    }
    let n = m.taxa().len();
    if n < 3 {
        let tree = Tree::degenerate(m.taxa().clone())?;
        let ok = displays_all(&tree, m)?.all_displayed();
        return Ok(TreeEnumeration {
            trees: if ok { vec![tree] } else { vec![] },
            complete: true,
            stats: SearchStats {
                explored: 1,
                ..Default::default()
            },
        });
    }
    let mut search = BbSearch::new(m, budget)?;
    let mut hit_limit = false;
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut trees: Vec<Tree> = Vec::new();
    let outcome = search.run(&mut |t| {
        if seen.insert(t.split_encoding()) {
            trees.push(t.clone());
        }
        if trees.len() >= limit {
            hit_limit = true;
            return false;
        }
        true
    })?;
    let mut stats = search.stats;
    stats.wall = start.elapsed();
    let complete = matches!(outcome, BbOutcome::Done) && !hit_limit;
    let mut keyed: Vec<(Vec<Vec<usize>>, Tree)> = trees
        .into_iter()
        .map(|t| {
            let t = t.with_taxa(m.taxa().clone()).expect("same labels");
            (t.split_encoding(), t)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(TreeEnumeration {
        trees: keyed.into_iter().map(|(_, t)| t).collect(),
        complete,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxa::TaxonSet;

    fn set(labels: &[&str]) -> Arc<TaxonSet> {
        Arc::new(TaxonSet::new(labels.to_vec()).unwrap())
    }

    fn chr(taxa: &Arc<TaxonSet>, name: &str, blocks: &[&[&str]]) -> Character {
        let states = blocks
            .iter()
            .map(|b| taxa.subset_of(b).unwrap())
            .collect();
        Character::new(taxa.clone(), Some(name), states).unwrap()
    }

    fn double_factorial(k: i64) -> u64 {
        if k <= 1 {
            1
        } else {
            k as u64 * double_factorial(k - 2)
        }
    }

    #[test]
    fn enumeration_counts_match_double_factorial() {
        for n in 3..=7usize {
            let labels: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
            let taxa = Arc::new(TaxonSet::new(labels).unwrap());
            let count = enumerate_binary_trees(&taxa).unwrap().count() as u64;
            assert_eq!(count, double_factorial(2 * n as i64 - 5), "n = {n}");
        }
    }

    #[test]
    fn enumeration_yields_distinct_topologies() {
        let taxa = set(&["a", "b", "c", "d", "e"]);
        let mut seen = BTreeSet::new();
        for t in enumerate_binary_trees(&taxa).unwrap() {
            assert!(t.is_binary());
            assert!(seen.insert(t.split_encoding()), "duplicate topology");
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn too_few_taxa_rejected() {
        let taxa = set(&["a", "b"]);
        assert!(enumerate_binary_trees(&taxa).is_err());
    }

    #[test]
    fn single_character_is_compatible() {
        let taxa = set(&["a", "b", "c", "d", "e"]);
        let m = CharacterMatrix::new(
            taxa.clone(),
            vec![chr(&taxa, "x", &[&["a", "c"], &["b", "d"], &["e"]])],
        )
        .unwrap();
        let v = decide_pp(&m, SearchMode::Auto, None).unwrap();
        assert!(v.is_compatible());
    }

    #[test]
    fn four_gamete_examples() {
        let taxa = set(&["a", "b", "c", "d"]);
        let ab_cd = chr(&taxa, "x", &[&["a", "b"], &["c", "d"]]);
        let ac_bd = chr(&taxa, "y", &[&["a", "c"], &["b", "d"]]);
        let abc_d = chr(&taxa, "z", &[&["a", "b", "c"], &["d"]]);
        assert!(!four_gamete_pair_test(&ab_cd, &ac_bd).unwrap());
        assert!(four_gamete_pair_test(&ab_cd, &abc_d).unwrap());
        assert!(four_gamete_pair_test(&ab_cd, &ab_cd).unwrap());
        // agreement with the search on the two-character matrices
        for (x, y, expected) in [(&ab_cd, &ac_bd, false), (&ab_cd, &abc_d, true)] {
            let m = CharacterMatrix::new(taxa.clone(), vec![x.clone(), y.clone()]).unwrap();
            assert_eq!(
                decide_pp(&m, SearchMode::Auto, None).unwrap().is_compatible(),
                expected
            );
        }
    }

    #[test]
    fn four_gamete_rejects_wrong_arity() {
        let taxa = set(&["a", "b", "c"]);
        let three = chr(&taxa, "t", &[&["a"], &["b"], &["c"]]);
        let two = chr(&taxa, "u", &[&["a", "b"], &["c"]]);
        assert!(four_gamete_pair_test(&three, &two).is_err());
    }

    #[test]
    fn binary_matrix_test_examples() {
        let taxa = set(&["a", "b", "c", "d"]);
        let same = chr(&taxa, "x", &[&["a", "b"], &["c", "d"]]);
        let ok = CharacterMatrix::new(taxa.clone(), vec![same.clone(), same.clone()]).unwrap();
        assert!(binary_matrix_test(&ok).unwrap());
        let bad = CharacterMatrix::new(
            taxa.clone(),
            vec![same, chr(&taxa, "y", &[&["a", "c"], &["b", "d"]])],
        )
        .unwrap();
        assert!(!binary_matrix_test(&bad).unwrap());
    }

    #[test]
    fn triple_test_checks_small_subsets_too() {
        // a 2-character matrix has no 3-subsets, so the test must fall
        // back to the pairs themselves
        let taxa = set(&["a", "b", "c", "d"]);
        let x = chr(&taxa, "x", &[&["a", "b"], &["c"], &["d"]]);
        let y = chr(&taxa, "y", &[&["a", "c"], &["b", "d"]]);
        let m = CharacterMatrix::new(taxa.clone(), vec![x, y]).unwrap();
        let direct = decide_pp(&m, SearchMode::Auto, None).unwrap().is_compatible();
        assert_eq!(triple_test_3state(&m).unwrap(), direct);
    }

    #[test]
    fn obstructions_of_compatible_matrix_are_empty() {
        let taxa = set(&["a", "b", "c", "d"]);
        let m = CharacterMatrix::new(
            taxa.clone(),
            vec![chr(&taxa, "x", &[&["a", "b"], &["c", "d"]])],
        )
        .unwrap();
        let r = minimal_obstructions(&m, 3, None).unwrap();
        assert!(r.complete);
        assert!(r.obstructions.is_empty());
    }

    #[test]
    fn enumerate_compatible_trees_on_incompatible_matrix_is_empty() {
        let taxa = set(&["a", "b", "c", "d"]);
        let m = CharacterMatrix::new(
            taxa.clone(),
            vec![
                chr(&taxa, "x", &[&["a", "b"], &["c", "d"]]),
                chr(&taxa, "y", &[&["a", "c"], &["b", "d"]]),
            ],
        )
        .unwrap();
        let e = enumerate_compatible_trees(&m, 100, None).unwrap();
        assert!(e.complete);
        assert!(e.trees.is_empty());
    }

    #[test]
    fn enumerate_compatible_trees_single_character() {
        let taxa = set(&["a", "b", "c", "d"]);
        let m = CharacterMatrix::new(
            taxa.clone(),
            vec![chr(&taxa, "x", &[&["a", "b"], &["c", "d"]])],
        )
        .unwrap();
        let e = enumerate_compatible_trees(&m, 10, None).unwrap();
        assert!(!e.trees.is_empty());
        for t in &e.trees {
            assert!(displays_all(t, &m).unwrap().all_displayed());
        }
    }

    #[test]
    fn budget_exhaustion_reports_undecided() {
        let taxa = set(&["a", "b", "c", "d", "e", "f", "g"]);
        let m = CharacterMatrix::new(
            taxa.clone(),
            vec![chr(&taxa, "x", &[&["a", "g"], &["b", "c", "d", "e", "f"]])],
        )
        .unwrap();
        let v = decide_pp(&m, SearchMode::BranchAndBound, Some(2)).unwrap();
        assert!(matches!(v.status, Status::Undecided { budget: 2 }));
    }
}
