//! Taxon sets: ordered collections of unique labels, with an optional
//! "paired" structured view giving `a(i)`/`b(i)` accessors and
//! prefix/suffix selectors.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a taxon within its [`TaxonSet`] (position in label order).
pub type TaxonId = usize;

/// A set of taxa, always handled relative to one [`TaxonSet`].
pub type TaxonSubset = BTreeSet<TaxonId>;

/// An ordered set of distinct taxon labels.
///
/// Labels are opaque strings; all other types refer to taxa by their
/// index in this set. A set built by [`TaxonSet::paired`] additionally
/// knows it has the form `a1,b1,a2,b2,…,an,bn` and exposes the
/// structured accessors [`TaxonSet::a`], [`TaxonSet::b`],
/// [`TaxonSet::x_le`] and [`TaxonSet::x_ge`].
#[derive(Debug, Clone)]
pub struct TaxonSet {
    labels: Vec<String>,
    index: HashMap<String, TaxonId>,
    paired_n: Option<usize>,
}

impl PartialEq for TaxonSet {
    // The paired view is derived metadata; equality is label equality.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}
impl Eq for TaxonSet {}

impl TaxonSet {
    /// Builds a taxon set from labels, which must be non-empty and distinct.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Domain("empty taxon label".into()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Domain(format!("duplicate taxon label '{l}'")));
            }
        }
        Ok(TaxonSet {
            labels,
            index,
            paired_n: None,
        })
    }

    /// Builds the paired set `a1,b1,a2,b2,…,an,bn` of size `2n`
    /// for an even `n >= 4`.
    pub fn paired(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "paired taxon set requires an even n >= 4, got {n}"
            )));
        }
        let mut labels = Vec::with_capacity(2 * n);
        for i in 1..=n {
            labels.push(format!("a{i}"));
            labels.push(format!("b{i}"));
        }
        let mut set = Self::new(labels)?;
        set.paired_n = Some(n);
        Ok(set)
    }

    /// Number of taxa.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The `n` of a paired set, if this set was built by [`TaxonSet::paired`].
    pub fn paired_n(&self) -> Option<usize> {
        self.paired_n
    }

    pub fn label(&self, id: TaxonId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Option<TaxonId> {
        self.index.get(label).copied()
    }

    /// All taxon ids, in label order.
    pub fn ids(&self) -> impl Iterator<Item = TaxonId> {
        0..self.labels.len()
    }

    /// The full set of taxa as a subset.
    pub fn all(&self) -> TaxonSubset {
        self.ids().collect()
    }

    pub fn same_labels(&self, other: &TaxonSet) -> bool {
        self.labels == other.labels
    }

    fn require_paired(&self) -> Result<usize> {
        self.paired_n
            .ok_or_else(|| Error::Domain("taxon set has no paired structure".into()))
    }

    /// Id of `a_i`, `1 <= i <= n`.
    pub fn a(&self, i: usize) -> Result<TaxonId> {
        let n = self.require_paired()?;
        if i < 1 || i > n {
            return Err(Error::Domain(format!("a({i}) out of range 1..={n}")));
        }
        Ok(2 * (i - 1))
    }

    /// Id of `b_i`, `1 <= i <= n`.
    pub fn b(&self, i: usize) -> Result<TaxonId> {
        let n = self.require_paired()?;
        if i < 1 || i > n {
            return Err(Error::Domain(format!("b({i}) out of range 1..={n}")));
        }
        Ok(2 * (i - 1) + 1)
    }

    /// `{a_j, b_j : j <= i}`. Out-of-range `i` is clamped, so `x_le(0)`
    /// is empty and `x_le(n)` is the whole set.
    pub fn x_le(&self, i: usize) -> Result<TaxonSubset> {
        let n = self.require_paired()?;
        let hi = i.min(n);
        let mut s = TaxonSubset::new();
        for j in 1..=hi {
            s.insert(2 * (j - 1));
            s.insert(2 * (j - 1) + 1);
        }
        Ok(s)
    }

    /// `{a_j, b_j : j >= i}`. Out-of-range `i` is clamped, so `x_ge(n + 1)`
    /// is empty.
    pub fn x_ge(&self, i: usize) -> Result<TaxonSubset> {
        let n = self.require_paired()?;
        let lo = i.max(1);
        let mut s = TaxonSubset::new();
        for j in lo..=n {
            s.insert(2 * (j - 1));
            s.insert(2 * (j - 1) + 1);
        }
        Ok(s)
    }

    /// Resolves a list of labels into a subset.
    pub fn subset_of(&self, labels: &[&str]) -> Result<TaxonSubset> {
        labels
            .iter()
            .map(|l| {
                self.id_of(l)
                    .ok_or_else(|| Error::Domain(format!("unknown taxon '{l}'")))
            })
            .collect()
    }

    /// A plain taxon set over the first `k` labels. Used by the solver to
    /// talk about the taxa placed so far during incremental tree growth.
    pub fn prefix(&self, k: usize) -> Result<Arc<TaxonSet>> {
        if k == 0 || k > self.len() {
            return Err(Error::Domain(format!(
                "prefix size {k} out of range 1..={}",
                self.len()
            )));
        }
        Ok(Arc::new(Self::new(self.labels[..k].to_vec())?))
    }

    /// A plain taxon set over the labels selected by `keep`, in label order.
    pub fn select(&self, keep: &TaxonSubset) -> Result<Arc<TaxonSet>> {
        if keep.iter().any(|&t| t >= self.len()) {
            return Err(Error::Domain("subset contains out-of-range taxon".into()));
        }
        Ok(Arc::new(Self::new(
            keep.iter().map(|&t| self.labels[t].clone()),
        )?))
    }
}
