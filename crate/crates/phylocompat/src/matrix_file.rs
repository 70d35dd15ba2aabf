//! Tab-separated character matrix files.
//!
//! The header row names the characters (its first cell labels the taxon
//! column). Every other row is a taxon id followed by one state token
//! per character; tokens are arbitrary and only equality matters. `?`
//! means gap, with `-` accepted as an input alias. Serialization writes
//! each state's index as its token, so emitted files round-trip
//! byte-exactly.

use std::sync::Arc;

use crate::character::{Character, CharacterMatrix};
use crate::error::{Error, Result};
use crate::taxa::{TaxonSet, TaxonSubset};

const GAP: &str = "?";
const GAP_ALIAS: &str = "-";

/// Parses a tab-separated matrix file.
pub fn parse_matrix(text: &str) -> Result<CharacterMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::MatrixParse {
        line: 1,
        col: 1,
        msg: "empty file".into(),
    })?;
    let header_cells: Vec<&str> = header.split('\t').collect();
    if header_cells.is_empty() || header_cells[0].is_empty() {
        return Err(Error::MatrixParse {
            line: 1,
            col: 1,
            msg: "header must start with a taxon-column label".into(),
        });
    }
    let names: Vec<&str> = header_cells[1..].to_vec();
    let width = header_cells.len();

    let mut taxa_labels: Vec<String> = Vec::new();
    let mut tokens: Vec<Vec<String>> = Vec::new();
    for (line_no, line) in lines {
        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != width {
            return Err(Error::MatrixParse {
                line: line_no,
                col: cells.len(),
                msg: format!("expected {width} tab-separated cells, found {}", cells.len()),
            });
        }
        if cells[0].is_empty() {
            return Err(Error::MatrixParse {
                line: line_no,
                col: 1,
                msg: "empty taxon id".into(),
            });
        }
        if taxa_labels.iter().any(|t| t == cells[0]) {
            return Err(Error::MatrixParse {
                line: line_no,
                col: 1,
                msg: format!("duplicate taxon id '{}'", cells[0]),
            });
        }
        for (ci, cell) in cells.iter().enumerate().skip(1) {
            if cell.is_empty() {
                return Err(Error::MatrixParse {
                    line: line_no,
                    col: ci + 1,
                    msg: "empty state token".into(),
                });
            }
        }
        taxa_labels.push(cells[0].to_string());
        tokens.push(cells[1..].iter().map(|s| s.to_string()).collect());
    }
    if taxa_labels.is_empty() {
        return Err(Error::MatrixParse {
            line: 2,
            col: 1,
            msg: "no taxon rows".into(),
        });
    }

    let taxa = Arc::new(TaxonSet::new(taxa_labels)?);
    let mut characters = Vec::with_capacity(names.len());
    for (ci, name) in names.iter().enumerate() {
        let mut blocks: Vec<(String, TaxonSubset)> = Vec::new();
        for t in taxa.ids() {
            let tok = tokens[t][ci].as_str();
            if tok == GAP || tok == GAP_ALIAS {
                continue;
            }
            match blocks.iter_mut().find(|(s, _)| s == tok) {
                Some((_, b)) => {
                    b.insert(t);
                }
                None => blocks.push((tok.to_string(), TaxonSubset::from([t]))),
            }
        }
        characters.push(Character::new(
            taxa.clone(),
            Some(name),
            blocks.into_iter().map(|(_, b)| b).collect(),
        )?);
    }
    CharacterMatrix::new(taxa, characters)
}

/// Serializes a matrix with each state's index (in normalized order) as
/// its token and `?` for gaps.
pub fn serialize_matrix(m: &CharacterMatrix) -> String {
    serialize_matrix_with_tokens(m, |_, _| None)
}

/// Serializes a matrix, asking `token` for an override per (character
/// index, state index); defaults to the state index in decimal.
pub fn serialize_matrix_with_tokens(
    m: &CharacterMatrix,
    token: impl Fn(usize, usize) -> Option<String>,
) -> String {
    let mut out = String::from("taxon");
    for c in m.characters() {
        out.push('\t');
        out.push_str(&c.display_name());
    }
    out.push('\n');
    for t in m.taxa().ids() {
        out.push_str(m.taxa().label(t));
        for (ci, c) in m.characters().iter().enumerate() {
            out.push('\t');
            match c.state_of(t) {
                Some(si) => match token(ci, si) {
                    Some(tok) => out.push_str(&tok),
                    None => out.push_str(&si.to_string()),
                },
                None => out.push_str(GAP),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{counterexample, fitch_example, gapify};

    #[test]
    fn serialized_matrix_round_trips_byte_exactly() {
        let inst = counterexample(4).unwrap();
        let text = serialize_matrix(&inst.matrix);
        let parsed = parse_matrix(&text).unwrap();
        assert_eq!(serialize_matrix(&parsed), text);
        assert_eq!(parsed, inst.matrix);
    }

    #[test]
    fn gapped_matrix_round_trips() {
        let g = gapify(&counterexample(4).unwrap().matrix);
        let text = serialize_matrix(&g);
        let parsed = parse_matrix(&text).unwrap();
        assert_eq!(parsed, g);
        assert!(text.contains('?'));
    }

    #[test]
    fn dash_is_an_input_alias_for_gap() {
        let a = parse_matrix("taxon\tc\nx\t0\ny\t?\nz\t0\n").unwrap();
        let b = parse_matrix("taxon\tc\nx\t0\ny\t-\nz\t0\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arbitrary_tokens_only_matter_up_to_equality() {
        let m = parse_matrix("taxon\tc1\tc2\nx1\tA\tA\nx2\tA\tC\nx3\tC\tG\n").unwrap();
        let relabeled = parse_matrix("taxon\tc1\tc2\nx1\tfoo\t0\nx2\tfoo\t1\nx3\tbar\t2\n").unwrap();
        assert_eq!(m, relabeled);
    }

    #[test]
    fn ragged_rows_are_located() {
        let err = parse_matrix("taxon\tc1\tc2\nx1\t0\n");
        match err {
            Err(Error::MatrixParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_taxon_rejected() {
        assert!(parse_matrix("taxon\tc\nx\t0\nx\t1\n").is_err());
    }

    #[test]
    fn zero_character_matrix_is_allowed() {
        let m = parse_matrix("taxon\nx\ny\n").unwrap();
        assert_eq!(m.len(), 0);
        assert_eq!(m.taxa().len(), 2);
    }

    #[test]
    fn fitch_round_trip_preserves_partitions() {
        let m = fitch_example();
        let parsed = parse_matrix(&serialize_matrix(&m)).unwrap();
        for (a, b) in m.characters().iter().zip(parsed.characters()) {
            assert!(a.same_partition(b));
        }
    }
}
