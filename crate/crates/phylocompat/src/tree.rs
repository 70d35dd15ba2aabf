//! Unrooted leaf-labeled trees, restriction to taxon subsets, and
//! split-based canonical comparison.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, TaxonSet, TaxonSubset};

/// Index of a vertex within a [`Tree`].
pub type VertexId = usize;

/// One side of the bipartition of the taxa induced by deleting a tree
/// edge, stored in canonical orientation (the side containing taxon 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Split(Vec<TaxonId>);

impl Split {
    pub fn members(&self) -> &[TaxonId] {
        &self.0
    }
}

/// The set of non-trivial splits of a tree. Two trees on the same taxa
/// are isomorphic as leaf-labeled trees (after suppressing degree-2
/// vertices) exactly when their split sets are equal.
pub type SplitSet = BTreeSet<Split>;

/// An unrooted tree whose leaves are bijectively labeled by a taxon set.
///
/// Internal vertices are unlabeled and may have any degree, including
/// degree 2; restricted subtrees keep their degree-2 vertices unless
/// suppression is requested.
#[derive(Debug, Clone)]
pub struct Tree {
    taxa: Arc<TaxonSet>,
    adj: Vec<Vec<VertexId>>,
    leaf_taxon: Vec<Option<TaxonId>>,
    taxon_vertex: Vec<VertexId>,
    names: Option<Vec<String>>,
}

/// Incremental construction of a [`Tree`] from explicit vertices and edges.
pub struct TreeBuilder {
    taxa: Arc<TaxonSet>,
    adj: Vec<Vec<VertexId>>,
    leaf_taxon: Vec<Option<TaxonId>>,
    names: Vec<String>,
    named: bool,
}

impl TreeBuilder {
    pub fn new(taxa: Arc<TaxonSet>) -> Self {
        TreeBuilder {
            taxa,
            adj: Vec::new(),
            leaf_taxon: Vec::new(),
            names: Vec::new(),
            named: false,
        }
    }

    /// Adds the leaf carrying `taxon`.
    pub fn leaf(&mut self, taxon: TaxonId) -> VertexId {
        self.adj.push(Vec::new());
        self.leaf_taxon.push(Some(taxon));
        self.names.push(String::new());
        self.adj.len() - 1
    }

    /// Adds a leaf by taxon label.
    pub fn leaf_named(&mut self, label: &str) -> Result<VertexId> {
        let t = self
            .taxa
            .id_of(label)
            .ok_or_else(|| Error::Domain(format!("unknown taxon '{label}'")))?;
        Ok(self.leaf(t))
    }

    /// Adds an unlabeled internal vertex with a diagnostic name.
    pub fn internal(&mut self, name: &str) -> VertexId {
        self.adj.push(Vec::new());
        self.leaf_taxon.push(None);
        self.names.push(name.to_string());
        if !name.is_empty() {
            self.named = true;
        }
        self.adj.len() - 1
    }

    pub fn edge(&mut self, u: VertexId, v: VertexId) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    /// Validates and finishes the tree.
    pub fn build(self) -> Result<Tree> {
        let n = self.adj.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        let edge_count: usize = self.adj.iter().map(|a| a.len()).sum::<usize>() / 2;
        if edge_count != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{edge_count} edges on {n} vertices is not a tree"
            )));
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidTree("disconnected".into()));
        }
        // leaf labeling is a bijection onto the taxa
        let mut taxon_vertex = vec![usize::MAX; self.taxa.len()];
        for (v, t) in self.leaf_taxon.iter().enumerate() {
            if let Some(t) = t {
                if taxon_vertex[*t] != usize::MAX {
                    return Err(Error::InvalidTree(format!(
                        "taxon '{}' labels two vertices",
                        self.taxa.label(*t)
                    )));
                }
                taxon_vertex[*t] = v;
            }
        }
        if let Some(t) = taxon_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidTree(format!(
                "taxon '{}' labels no vertex",
                self.taxa.label(t)
            )));
        }
        for (v, t) in self.leaf_taxon.iter().enumerate() {
            let deg = self.adj[v].len();
            if t.is_some() && deg > 1 {
                return Err(Error::InvalidTree(format!(
                    "labeled vertex {v} has degree {deg}"
                )));
            }
            if t.is_none() && deg < 2 {
                return Err(Error::InvalidTree(format!(
                    "unlabeled vertex {v} has degree {deg}"
                )));
            }
        }
        Ok(Tree {
            taxa: self.taxa,
            adj: self.adj,
            leaf_taxon: self.leaf_taxon,
            taxon_vertex,
            names: self.named.then_some(self.names),
        })
    }
}

impl Tree {
    pub fn taxa(&self) -> &Arc<TaxonSet> {
        &self.taxa
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn taxon_of(&self, v: VertexId) -> Option<TaxonId> {
        self.leaf_taxon[v]
    }

    pub fn vertex_of(&self, t: TaxonId) -> VertexId {
        self.taxon_vertex[t]
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.leaf_taxon[v].is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.adj.len()
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| !self.is_leaf(v))
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.adj.len().saturating_sub(1));
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// True when every internal vertex has degree exactly 3.
    pub fn is_binary(&self) -> bool {
        self.vertices()
            .all(|v| self.is_leaf(v) || self.degree(v) == 3)
    }

    /// Diagnostic name of a vertex: the builder-supplied name, the taxon
    /// label for leaves, or a generated placeholder.
    pub fn vertex_name(&self, v: VertexId) -> String {
        if let Some(names) = &self.names {
            if !names[v].is_empty() {
                return names[v].clone();
            }
        }
        match self.leaf_taxon[v] {
            Some(t) => self.taxa.label(t).to_string(),
            None => format!("n{v}"),
        }
    }

    /// Finds an internal vertex by its builder-supplied name.
    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        if let Some(names) = &self.names {
            if let Some(v) = names.iter().position(|n| n == name) {
                return Some(v);
            }
        }
        self.taxa.id_of(name).map(|t| self.taxon_vertex[t])
    }

    /// The unique path from `u` to `v`, inclusive of both endpoints.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let parent = self.bfs_parents(u);
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    fn bfs_parents(&self, root: VertexId) -> Vec<VertexId> {
        let mut parent = vec![usize::MAX; self.adj.len()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Vertex set of the minimal subtree spanning the given taxa, as a
    /// membership mask over the vertices.
    pub fn steiner_mask(&self, taxa: &TaxonSubset) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.adj.len()];
        let mut it = taxa.iter();
        let first = match it.next() {
            Some(&t) => t,
            None => return Ok(mask),
        };
        if taxa.iter().any(|&t| t >= self.taxa.len()) {
            return Err(Error::Domain("subset contains out-of-range taxon".into()));
        }
        let root = self.taxon_vertex[first];
        mask[root] = true;
        let parent = self.bfs_parents(root);
        for &t in it {
            let mut cur = self.taxon_vertex[t];
            while !mask[cur] {
                mask[cur] = true;
                cur = parent[cur];
            }
        }
        Ok(mask)
    }

    /// The restriction `T[X']`: the minimal subtree whose vertices contain
    /// the taxa in `keep`, relabeled over the selected taxon set. With
    /// `suppress`, unlabeled degree-2 vertices are smoothed away;
    /// otherwise they are kept.
    pub fn restrict(&self, keep: &TaxonSubset, suppress: bool) -> Result<Tree> {
        if keep.is_empty() {
            return Err(Error::Domain("cannot restrict a tree to no taxa".into()));
        }
        let mask = self.steiner_mask(keep)?;
        let new_taxa = self.taxa.select(keep)?;
        let mut remap = vec![usize::MAX; self.adj.len()];
        let mut adj = Vec::new();
        let mut leaf_taxon = Vec::new();
        let mut names = Vec::new();
        for v in self.vertices().filter(|&v| mask[v]) {
            remap[v] = adj.len();
            adj.push(Vec::new());
            leaf_taxon.push(
                self.leaf_taxon[v]
                    .filter(|t| keep.contains(t))
                    .map(|t| new_taxa.id_of(self.taxa.label(t)).expect("label kept")),
            );
            names.push(match &self.names {
                Some(ns) => ns[v].clone(),
                None => String::new(),
            });
        }
        for (u, v) in self.edges() {
            if mask[u] && mask[v] {
                adj[remap[u]].push(remap[v]);
                adj[remap[v]].push(remap[u]);
            }
        }
        let mut taxon_vertex = vec![usize::MAX; new_taxa.len()];
        for (v, t) in leaf_taxon.iter().enumerate() {
            if let Some(t) = t {
                taxon_vertex[*t] = v;
            }
        }
        let tree = Tree {
            taxa: new_taxa,
            adj,
            leaf_taxon,
            taxon_vertex,
            names: self.names.is_some().then_some(names),
        };
        Ok(if suppress { tree.suppressed() } else { tree })
    }

    /// A copy with every unlabeled degree-2 vertex smoothed away.
    pub fn suppressed(&self) -> Tree {
        let mut adj = self.adj.clone();
        let mut alive = vec![true; adj.len()];
        for v in 0..adj.len() {
            if self.leaf_taxon[v].is_none() && adj[v].len() == 2 {
                let (a, b) = (adj[v][0], adj[v][1]);
                alive[v] = false;
                adj[a].retain(|&w| w != v);
                adj[b].retain(|&w| w != v);
                adj[a].push(b);
                adj[b].push(a);
                adj[v].clear();
            }
        }
        let mut remap = vec![usize::MAX; adj.len()];
        let mut new_adj = Vec::new();
        let mut leaf_taxon = Vec::new();
        let mut names = Vec::new();
        for v in 0..adj.len() {
            if alive[v] {
                remap[v] = new_adj.len();
                new_adj.push(Vec::new());
                leaf_taxon.push(self.leaf_taxon[v]);
                names.push(match &self.names {
                    Some(ns) => ns[v].clone(),
                    None => String::new(),
                });
            }
        }
        for v in 0..adj.len() {
            if alive[v] {
                for &w in &adj[v] {
                    if v < w {
                        new_adj[remap[v]].push(remap[w]);
                        new_adj[remap[w]].push(remap[v]);
                    }
                }
            }
        }
        let mut taxon_vertex = vec![usize::MAX; self.taxa.len()];
        for (v, t) in leaf_taxon.iter().enumerate() {
            if let Some(t) = t {
                taxon_vertex[*t] = v;
            }
        }
        Tree {
            taxa: self.taxa.clone(),
            adj: new_adj,
            leaf_taxon,
            taxon_vertex,
            names: self.names.is_some().then_some(names),
        }
    }

    /// Taxa on the far side of the directed edge `from -> to`.
    pub fn side_taxa(&self, from: VertexId, to: VertexId) -> TaxonSubset {
        let mut side = TaxonSubset::new();
        let mut seen = vec![false; self.adj.len()];
        seen[from] = true;
        seen[to] = true;
        let mut queue = VecDeque::from([to]);
        if let Some(t) = self.leaf_taxon[to] {
            side.insert(t);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    if let Some(t) = self.leaf_taxon[w] {
                        side.insert(t);
                    }
                    queue.push_back(w);
                }
            }
        }
        side
    }

    /// The non-trivial splits of the tree: one per internal edge of the
    /// degree-2-suppressed tree, in canonical orientation.
    pub fn splits(&self) -> SplitSet {
        let total = self.taxa.len();
        let mut out = SplitSet::new();
        for (u, v) in self.edges() {
            let side = self.side_taxa(u, v);
            if side.len() < 2 || total - side.len() < 2 {
                continue;
            }
            let oriented: Vec<TaxonId> = if side.contains(&0) {
                side.iter().copied().collect()
            } else {
                (0..total).filter(|t| !side.contains(t)).collect()
            };
            out.insert(Split(oriented));
        }
        out
    }

    /// True when the two trees are on the same labels and have equal
    /// split sets (leaf-labeled isomorphism after suppression).
    pub fn split_equal(&self, other: &Tree) -> Result<bool> {
        if !self.taxa.same_labels(&other.taxa) {
            let other = other.with_taxa(self.taxa.clone())?;
            return Ok(self.splits() == other.splits());
        }
        Ok(self.splits() == other.splits())
    }

    /// Re-expresses the tree over `taxa`, which must carry the same labels
    /// (possibly in a different order).
    pub fn with_taxa(&self, taxa: Arc<TaxonSet>) -> Result<Tree> {
        if taxa.len() != self.taxa.len() {
            return Err(Error::TaxonSetMismatch(format!(
                "{} taxa vs {}",
                taxa.len(),
                self.taxa.len()
            )));
        }
        let mut leaf_taxon = vec![None; self.adj.len()];
        let mut taxon_vertex = vec![usize::MAX; taxa.len()];
        for (v, t) in self.leaf_taxon.iter().enumerate() {
            if let Some(t) = t {
                let label = self.taxa.label(*t);
                let new_t = taxa.id_of(label).ok_or_else(|| {
                    Error::TaxonSetMismatch(format!("taxon '{label}' missing from target set"))
                })?;
                leaf_taxon[v] = Some(new_t);
                taxon_vertex[new_t] = v;
            }
        }
        Ok(Tree {
            taxa,
            adj: self.adj.clone(),
            leaf_taxon,
            taxon_vertex,
            names: self.names.clone(),
        })
    }

    /// A copy extended over `taxa` (a superset set sharing a prefix of
    /// labels) with the leaf for `taxon` inserted in the middle of the
    /// edge `(u, v)`.
    pub fn insert_leaf_on_edge(
        &self,
        taxa: Arc<TaxonSet>,
        taxon: TaxonId,
        (u, v): (VertexId, VertexId),
    ) -> Tree {
        debug_assert!(taxa.len() > self.taxa.len());
        debug_assert!(taxon >= self.taxa.len() || self.taxon_vertex[taxon] == usize::MAX);
        let mut adj = self.adj.clone();
        let mut leaf_taxon = self.leaf_taxon.clone();
        let mid = adj.len();
        adj.push(vec![u, v]);
        leaf_taxon.push(None);
        let leaf = adj.len();
        adj.push(vec![mid]);
        leaf_taxon.push(Some(taxon));
        adj[mid].push(leaf);
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        adj[u].push(mid);
        adj[v].push(mid);
        let mut taxon_vertex = self.taxon_vertex.clone();
        taxon_vertex.resize(taxa.len(), usize::MAX);
        taxon_vertex[taxon] = leaf;
        let names = self.names.as_ref().map(|ns| {
            let mut ns = ns.clone();
            ns.push(String::new());
            ns.push(String::new());
            ns
        });
        Tree {
            taxa,
            adj,
            leaf_taxon,
            taxon_vertex,
            names,
        }
    }

    /// Contracts the internal edge `(u, v)` (both endpoints unlabeled),
    /// merging its endpoints into one vertex.
    pub fn contract_internal_edge(&self, (u, v): (VertexId, VertexId)) -> Result<Tree> {
        if self.is_leaf(u) || self.is_leaf(v) {
            return Err(Error::Domain("can only contract internal edges".into()));
        }
        if !self.adj[u].contains(&v) {
            return Err(Error::Domain("not an edge".into()));
        }
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        let moved: Vec<VertexId> = adj[v].iter().copied().filter(|&w| w != u).collect();
        for &w in &moved {
            adj[w].retain(|&x| x != v);
            adj[w].push(u);
            adj[u].push(w);
        }
        adj[v].clear();
        // drop v
        let mut remap = vec![usize::MAX; adj.len()];
        let mut new_adj = Vec::new();
        let mut leaf_taxon = Vec::new();
        let mut names = Vec::new();
        for x in 0..adj.len() {
            if x != v {
                remap[x] = new_adj.len();
                new_adj.push(Vec::new());
                leaf_taxon.push(self.leaf_taxon[x]);
                names.push(match &self.names {
                    Some(ns) => ns[x].clone(),
                    None => String::new(),
                });
            }
        }
        for x in 0..adj.len() {
            if x != v {
                for &w in &adj[x] {
                    if x < w {
                        new_adj[remap[x]].push(remap[w]);
                        new_adj[remap[w]].push(remap[x]);
                    }
                }
            }
        }
        let mut taxon_vertex = vec![usize::MAX; self.taxa.len()];
        for (x, t) in leaf_taxon.iter().enumerate() {
            if let Some(t) = t {
                taxon_vertex[*t] = x;
            }
        }
        Ok(Tree {
            taxa: self.taxa.clone(),
            adj: new_adj,
            leaf_taxon,
            taxon_vertex,
            names: self.names.is_some().then_some(names),
        })
    }

    /// Refines the internal vertex `v` by splitting it into an edge:
    /// the neighbors listed in `moved` are re-attached to the new vertex.
    pub fn refine_vertex(&self, v: VertexId, moved: &[VertexId]) -> Result<Tree> {
        if self.is_leaf(v) {
            return Err(Error::Domain("can only refine internal vertices".into()));
        }
        if moved.iter().any(|w| !self.adj[v].contains(w)) {
            return Err(Error::Domain("moved vertices must be neighbors".into()));
        }
        if moved.len() >= self.adj[v].len() {
            return Err(Error::Domain(
                "refinement must leave the split vertex at least one neighbor".into(),
            ));
        }
        let mut adj = self.adj.clone();
        let nv = adj.len();
        adj.push(vec![v]);
        for &w in moved {
            adj[v].retain(|&x| x != w);
            adj[w].retain(|&x| x != v);
            adj[w].push(nv);
            adj[nv].push(w);
        }
        adj[v].push(nv);
        let mut leaf_taxon = self.leaf_taxon.clone();
        leaf_taxon.push(None);
        let names = self.names.as_ref().map(|ns| {
            let mut ns = ns.clone();
            ns.push(String::new());
            ns
        });
        Ok(Tree {
            taxa: self.taxa.clone(),
            adj,
            leaf_taxon,
            taxon_vertex: self.taxon_vertex.clone(),
            names,
        })
    }

    /// The star tree on at least three taxa (single internal hub).
    pub fn star(taxa: Arc<TaxonSet>) -> Result<Tree> {
        if taxa.len() < 3 {
            return Err(Error::Domain("star requires at least 3 taxa".into()));
        }
        let mut b = TreeBuilder::new(taxa.clone());
        let hub = b.internal("");
        for t in taxa.ids() {
            let l = b.leaf(t);
            b.edge(hub, l);
        }
        b.build()
    }

    /// The unique tree shapes on one or two taxa.
    pub fn degenerate(taxa: Arc<TaxonSet>) -> Result<Tree> {
        match taxa.len() {
            1 => {
                let adj = vec![Vec::new()];
                Ok(Tree {
                    taxa,
                    adj,
                    leaf_taxon: vec![Some(0)],
                    taxon_vertex: vec![0],
                    names: None,
                })
            }
            2 => Ok(Tree {
                taxa,
                adj: vec![vec![1], vec![0]],
                leaf_taxon: vec![Some(0), Some(1)],
                taxon_vertex: vec![0, 1],
                names: None,
            }),
            n => Err(Error::Domain(format!(
                "degenerate tree only defined for 1 or 2 taxa, got {n}"
            ))),
        }
    }

    /// Canonical encoding of the split set, usable as an ordering key.
    pub fn split_encoding(&self) -> Vec<Vec<TaxonId>> {
        self.splits().into_iter().map(|s| s.0).collect()
    }
}
