//! Characters (partitions of a subset of the taxa into state blocks)
//! and character matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, TaxonSet, TaxonSubset};

/// A character: disjoint non-empty state blocks over one taxon set.
///
/// Taxa outside the union of the blocks are *gapped*: the character says
/// nothing about them. Construction normalizes the block list — empty
/// blocks are dropped and blocks are ordered by their smallest member —
/// so two characters are equal exactly when they induce the same
/// partition of the same covered taxa.
#[derive(Debug, Clone)]
pub struct Character {
    taxa: Arc<TaxonSet>,
    name: Option<String>,
    states: Vec<TaxonSubset>,
    state_of: Vec<Option<u32>>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.taxa.same_labels(&other.taxa) && self.name == other.name && self.states == other.states
    }
}
impl Eq for Character {}

impl Character {
    /// Builds a character, normalizing the given states: empty states are
    /// removed and the remaining states are ordered by smallest member.
    ///
    /// Fails if the states overlap or mention out-of-range taxa.
    pub fn new(
        taxa: Arc<TaxonSet>,
        name: Option<&str>,
        states: Vec<TaxonSubset>,
    ) -> Result<Self> {
        let mut states: Vec<TaxonSubset> = states.into_iter().filter(|s| !s.is_empty()).collect();
        states.sort_by_key(|s| *s.iter().next().expect("empty states were dropped"));
        let mut state_of: Vec<Option<u32>> = vec![None; taxa.len()];
        for (si, state) in states.iter().enumerate() {
            for &t in state {
                if t >= taxa.len() {
                    return Err(Error::Domain(format!(
                        "state mentions out-of-range taxon id {t}"
                    )));
                }
                if state_of[t].is_some() {
                    return Err(Error::OverlappingStates {
                        name: name.unwrap_or("<unnamed>").to_string(),
                        taxon: taxa.label(t).to_string(),
                    });
                }
                state_of[t] = Some(si as u32);
            }
        }
        Ok(Character {
            taxa,
            name: name.map(String::from),
            states,
            state_of,
        })
    }

    pub fn taxa(&self) -> &Arc<TaxonSet> {
        &self.taxa
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Display name: the given name or a placeholder with the state count.
    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("<{}-state character>", self.states.len()))
    }

    /// Normalized states, ordered by smallest member.
    pub fn states(&self) -> &[TaxonSubset] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Index of the state containing `t`, or `None` if `t` is gapped.
    pub fn state_of(&self, t: TaxonId) -> Option<usize> {
        self.state_of[t].map(|s| s as usize)
    }

    /// Union of the states.
    pub fn covered(&self) -> TaxonSubset {
        self.states.iter().flatten().copied().collect()
    }

    /// True when every taxon is covered (no gaps).
    pub fn is_full(&self) -> bool {
        self.states.iter().map(|s| s.len()).sum::<usize>() == self.taxa.len()
    }

    /// Same partition of the same covered taxa, ignoring names.
    pub fn same_partition(&self, other: &Character) -> bool {
        self.taxa.same_labels(&other.taxa) && self.states == other.states
    }

    /// The character restricted to `keep`: every state is intersected with
    /// `keep` and the result is re-normalized over the selected taxon set.
    pub fn restrict(&self, keep: &TaxonSubset) -> Result<Character> {
        let new_taxa = self.taxa.select(keep)?;
        self.restrict_onto(keep, new_taxa)
    }

    /// As [`Character::restrict`], but reusing a previously selected taxon
    /// set (ids in `new_taxa` must be `keep` in label order).
    pub fn restrict_onto(&self, keep: &TaxonSubset, new_taxa: Arc<TaxonSet>) -> Result<Character> {
        let states = self
            .states
            .iter()
            .map(|s| {
                s.iter()
                    .filter(|t| keep.contains(t))
                    .map(|&t| {
                        new_taxa
                            .id_of(self.taxa.label(t))
                            .expect("selected set keeps labels")
                    })
                    .collect()
            })
            .collect();
        Character::new(new_taxa, self.name.as_deref(), states)
    }

    /// Drops every singleton state, turning its taxon into a gap.
    pub fn gapify(&self) -> Character {
        let states: Vec<TaxonSubset> = self
            .states
            .iter()
            .filter(|s| s.len() >= 2)
            .cloned()
            .collect();
        Character::new(self.taxa.clone(), self.name.as_deref(), states)
            .expect("subset of disjoint states stays disjoint")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .states
            .iter()
            .map(|s| {
                s.iter()
                    .map(|&t| self.taxa.label(t))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", blocks.join(" | "))
    }
}

/// An ordered list of characters over one shared taxon set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterMatrix {
    taxa: Arc<TaxonSet>,
    characters: Vec<Character>,
}

impl CharacterMatrix {
    pub fn new(taxa: Arc<TaxonSet>, characters: Vec<Character>) -> Result<Self> {
        for c in &characters {
            if !c.taxa().same_labels(&taxa) {
                return Err(Error::TaxonSetMismatch(format!(
                    "character {} lives on a different taxon set",
                    c.display_name()
                )));
            }
        }
        Ok(CharacterMatrix { taxa, characters })
    }

    pub fn taxa(&self) -> &Arc<TaxonSet> {
        &self.taxa
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.characters[i]
    }

    /// Position of the character with the given name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.name() == Some(name))
    }

    /// The sub-matrix with the characters selected by `indices`, in the
    /// given order, over the same taxa.
    pub fn select_characters(&self, indices: &[usize]) -> Result<CharacterMatrix> {
        let characters = indices
            .iter()
            .map(|&i| {
                self.characters
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Domain(format!("character index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        CharacterMatrix::new(self.taxa.clone(), characters)
    }

    /// The matrix without the character at `omit`.
    pub fn without_character(&self, omit: usize) -> Result<CharacterMatrix> {
        let indices: Vec<usize> = (0..self.len()).filter(|&i| i != omit).collect();
        self.select_characters(&indices)
    }

    /// Every character restricted to `keep`, over the selected taxon set.
    pub fn restrict(&self, keep: &TaxonSubset) -> Result<CharacterMatrix> {
        let new_taxa = self.taxa.select(keep)?;
        let characters = self
            .characters
            .iter()
            .map(|c| c.restrict_onto(keep, new_taxa.clone()))
            .collect::<Result<Vec<_>>>()?;
        CharacterMatrix::new(new_taxa, characters)
    }
}
