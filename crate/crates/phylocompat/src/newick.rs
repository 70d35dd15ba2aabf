//! Newick reading and writing. One tree per line; leaf names are taxon
//! ids; internal labels and branch lengths are tolerated on input and
//! ignored. Output is deterministic: children are ordered by smallest
//! descendant taxon and degree-2 vertices are suppressed.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::taxa::{TaxonId, TaxonSet};
use crate::tree::{Tree, TreeBuilder, VertexId};

/// Serializes a tree as a Newick string (with trailing `;`).
pub fn to_newick(tree: &Tree) -> String {
    let t = tree.suppressed();
    match t.taxa().len() {
        0 => ";".to_string(),
        1 => format!("{};", t.taxa().label(0)),
        2 => {
            let mut names: Vec<&str> = t.taxa().labels().iter().map(String::as_str).collect();
            names.sort();
            format!("({},{});", names[0], names[1])
        }
        _ => {
            let root = t
                .internal_vertices()
                .next()
                .expect("trees on 3+ taxa have an internal vertex");
            let mut out = String::new();
            write_subtree(&t, root, usize::MAX, &mut out);
            out.push(';');
            out
        }
    }
}

// Appends the subtree hanging from `v` (coming from `parent`); returns
// the smallest taxon id in that subtree for deterministic ordering.
fn write_subtree(t: &Tree, v: VertexId, parent: VertexId, out: &mut String) -> TaxonId {
    if let Some(taxon) = t.taxon_of(v) {
        out.push_str(t.taxa().label(taxon));
        return taxon;
    }
    let mut rendered: Vec<(TaxonId, String)> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| {
            let mut s = String::new();
            let min = write_subtree(t, w, v, &mut s);
            (min, s)
        })
        .collect();
    rendered.sort();
    out.push('(');
    for (i, (_, s)) in rendered.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(s);
    }
    out.push(')');
    rendered.first().map(|(m, _)| *m).unwrap_or(usize::MAX)
}

/// Parses one Newick tree. When `taxa` is given, leaf names must match
/// it exactly; otherwise a taxon set is built from the leaf names in
/// order of appearance.
pub fn from_newick(text: &str, taxa: Option<Arc<TaxonSet>>) -> Result<Tree> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let root = parser.parse_subtree()?;
    parser.skip_ws();
    if parser.peek() == Some(b';') {
        parser.pos += 1;
    } else {
        return Err(Error::NewickParse {
            pos: parser.pos,
            msg: "expected ';' at end of tree".into(),
        });
    }
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(Error::NewickParse {
            pos: parser.pos,
            msg: "trailing input after ';'".into(),
        });
    }

    // collect leaf names in appearance order
    let mut leaf_names = Vec::new();
    collect_leaves(&root, &mut leaf_names);
    if leaf_names.is_empty() {
        return Err(Error::NewickParse {
            pos: 0,
            msg: "tree has no leaves".into(),
        });
    }
    let taxa = match taxa {
        Some(t) => t,
        None => Arc::new(TaxonSet::new(leaf_names.clone())?),
    };

    if taxa.len() == 1 && leaf_names.len() == 1 {
        return Tree::degenerate(taxa);
    }
    if leaf_names.len() == 2 {
        // two leaves under one root collapse to a single edge
        let t0 = taxa.id_of(&leaf_names[0]).ok_or_else(|| unknown(&leaf_names[0]))?;
        let t1 = taxa.id_of(&leaf_names[1]).ok_or_else(|| unknown(&leaf_names[1]))?;
        if taxa.len() != 2 {
            return Err(Error::TaxonSetMismatch(
                "tree has 2 leaves but the taxon set is larger".into(),
            ));
        }
        let mut b = TreeBuilder::new(taxa);
        let l0 = b.leaf(t0);
        let l1 = b.leaf(t1);
        b.edge(l0, l1);
        return b.build();
    }

    let mut builder = TreeBuilder::new(taxa.clone());
    let mut seen = vec![false; taxa.len()];
    let root_v = build_vertices(&root, &mut builder, &taxa, &mut seen)?;
    let _ = root_v;
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::TaxonSetMismatch(format!(
            "taxon '{}' missing from the tree",
            taxa.label(missing)
        )));
    }
    let tree = builder.build()?;
    // roots of degree 2 and other unlabeled pass-throughs are an
    // artifact of rooted notation
    Ok(tree.suppressed())
}

fn unknown(name: &str) -> Error {
    Error::TaxonSetMismatch(format!("leaf '{name}' is not in the taxon set"))
}

/// Parses every non-empty line of a Newick file.
pub fn trees_from_newick(text: &str, taxa: Option<Arc<TaxonSet>>) -> Result<Vec<Tree>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| from_newick(l, taxa.clone()))
        .collect()
}

enum Node {
    Leaf(String),
    Internal(Vec<Node>),
}

fn collect_leaves(node: &Node, out: &mut Vec<String>) {
    match node {
        Node::Leaf(name) => out.push(name.clone()),
        Node::Internal(children) => {
            for c in children {
                collect_leaves(c, out);
            }
        }
    }
}

fn build_vertices(
    node: &Node,
    b: &mut TreeBuilder,
    taxa: &TaxonSet,
    seen: &mut [bool],
) -> Result<VertexId> {
    match node {
        Node::Leaf(name) => {
            let t = taxa.id_of(name).ok_or_else(|| unknown(name))?;
            if seen[t] {
                return Err(Error::TaxonSetMismatch(format!(
                    "leaf '{name}' appears twice"
                )));
            }
            seen[t] = true;
            Ok(b.leaf(t))
        }
        Node::Internal(children) => {
            let v = b.internal("");
            for c in children {
                let w = build_vertices(c, b, taxa, seen)?;
                b.edge(v, w);
            }
            Ok(v)
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse_subtree(&mut self) -> Result<Node> {
        self.skip_ws();
        let node = if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = vec![self.parse_subtree()?];
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        children.push(self.parse_subtree()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(Error::NewickParse {
                            pos: self.pos,
                            msg: "expected ',' or ')'".into(),
                        })
                    }
                }
            }
            // internal label: tolerated, ignored
            let _ = self.parse_name();
            Node::Internal(children)
        } else {
            let name = self.parse_name();
            if name.is_empty() {
                return Err(Error::NewickParse {
                    pos: self.pos,
                    msg: "expected a leaf name or '('".into(),
                });
            }
            Node::Leaf(name)
        };
        self.skip_branch_length()?;
        Ok(node)
    }

    fn parse_name(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if matches!(b, b'(' | b')' | b',' | b';' | b':') || b.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn skip_branch_length(&mut self) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(b':') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'))
            {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::NewickParse {
                    pos: self.pos,
                    msg: "expected a branch length after ':'".into(),
                });
            }
        }
        Ok(())
    }
}
