//! Generators: the counterexample family `C(n)` of 8-state characters on
//! the paired taxa `a1,b1,…,an,bn`, the four lobster tree families that
//! witness compatibility of every leave-one-out subset, the classical
//! five-taxon three-character instance, and the taxon-duplication and
//! gap transforms.

use std::sync::Arc;

use crate::character::{Character, CharacterMatrix};
use crate::error::{Error, Result};
use crate::taxa::{TaxonSet, TaxonSubset};
use crate::tree::{Tree, TreeBuilder};

/// A generated family instance: the paired taxa and the matrix `C(n)`
/// with characters named `Omega_A`, `chi_2..chi_{n-2}`,
/// `phi_3..phi_{n-1}`, `Omega_B`, in that order.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub n: usize,
    pub taxa: Arc<TaxonSet>,
    pub matrix: CharacterMatrix,
}

impl FamilyInstance {
    /// Index of the character named `name` in the matrix.
    pub fn character_index(&self, name: &str) -> Option<usize> {
        self.matrix.index_of(name)
    }
}

fn require_even_n(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "the family is defined for even n >= 4, got {n}"
        )));
    }
    Ok(())
}

// Collects {a_j : j in lo..=hi} ∪ {b_j : j in lo..=hi} clamped to [1, n];
// out-of-range indices are treated as non-existent.
fn pairs(x: &TaxonSet, lo: isize, hi: isize) -> TaxonSubset {
    let n = x.paired_n().expect("paired set") as isize;
    let mut s = TaxonSubset::new();
    for j in lo.max(1)..=hi.min(n) {
        s.insert(x.a(j as usize).expect("in range"));
        s.insert(x.b(j as usize).expect("in range"));
    }
    s
}

fn a_only(x: &TaxonSet, js: &[isize]) -> TaxonSubset {
    let n = x.paired_n().expect("paired set") as isize;
    js.iter()
        .filter(|&&j| j >= 1 && j <= n)
        .map(|&j| x.a(j as usize).expect("in range"))
        .collect()
}

fn b_only(x: &TaxonSet, js: &[isize]) -> TaxonSubset {
    let n = x.paired_n().expect("paired set") as isize;
    js.iter()
        .filter(|&&j| j >= 1 && j <= n)
        .map(|&j| x.b(j as usize).expect("in range"))
        .collect()
}

fn union(a: TaxonSubset, b: TaxonSubset) -> TaxonSubset {
    a.into_iter().chain(b).collect()
}

/// Builds the family instance `C(n)` for even `n >= 4`: `2n - 4`
/// characters with at most 8 states each, incompatible as a whole while
/// every proper subset is compatible.
///
/// The taxa are ordered `a1,b1,a2,b2,…`, so prefixes of the label order
/// are exactly the `{a_j,b_j : j <= i}` selectors; the branch-and-bound
/// solver inserts taxa in this order.
pub fn counterexample(n: usize) -> Result<FamilyInstance> {
    require_even_n(n)?;
    let taxa = Arc::new(TaxonSet::paired(n)?);
    let x = taxa.as_ref();
    let ni = n as isize;
    let mut characters = Vec::with_capacity(2 * n - 4);

    // Omega_A = a1 b1 b2 | {a2} ∪ X_{>=3}
    characters.push(Character::new(
        taxa.clone(),
        Some("Omega_A"),
        vec![
            union(a_only(x, &[1]), b_only(x, &[1, 2])),
            union(a_only(x, &[2]), pairs(x, 3, ni)),
        ],
    )?);

    // chi_j = X_{<=j-2} | a_{j-1} | b_{j-1} | a_j a_{j+1} | b_j b_{j+1}
    //         | a_{j+2} | b_{j+2} | X_{>=j+3}
    for j in 2..=(ni - 2) {
        characters.push(Character::new(
            taxa.clone(),
            Some(&format!("chi_{j}")),
            vec![
                pairs(x, 1, j - 2),
                a_only(x, &[j - 1]),
                b_only(x, &[j - 1]),
                a_only(x, &[j, j + 1]),
                b_only(x, &[j, j + 1]),
                a_only(x, &[j + 2]),
                b_only(x, &[j + 2]),
                pairs(x, j + 3, ni),
            ],
        )?);
    }

    // phi_j, even j: X_{<=j-3} ∪ b_{j-2} b_{j-1} | a_{j-2} | a_{j-1}
    //               | b_j | b_{j+1} | a_j a_{j+1} ∪ X_{>=j+2}
    // phi_j, odd j:  X_{<=j-3} ∪ a_{j-2} a_{j-1} | b_{j-2} | b_{j-1}
    //               | a_j | a_{j+1} | b_j b_{j+1} ∪ X_{>=j+2}
    for j in 3..=(ni - 1) {
        let states = if j % 2 == 0 {
            vec![
                union(pairs(x, 1, j - 3), b_only(x, &[j - 2, j - 1])),
                a_only(x, &[j - 2]),
                a_only(x, &[j - 1]),
                b_only(x, &[j]),
                b_only(x, &[j + 1]),
                union(a_only(x, &[j, j + 1]), pairs(x, j + 2, ni)),
            ]
        } else {
            vec![
                union(pairs(x, 1, j - 3), a_only(x, &[j - 2, j - 1])),
                b_only(x, &[j - 2]),
                b_only(x, &[j - 1]),
                a_only(x, &[j]),
                a_only(x, &[j + 1]),
                union(b_only(x, &[j, j + 1]), pairs(x, j + 2, ni)),
            ]
        };
        characters.push(Character::new(taxa.clone(), Some(&format!("phi_{j}")), states)?);
    }

    // Omega_B = X_{<=n-2} ∪ {b_{n-1}} | a_{n-1} a_n b_n
    characters.push(Character::new(
        taxa.clone(),
        Some("Omega_B"),
        vec![
            union(pairs(x, 1, ni - 2), b_only(x, &[ni - 1])),
            union(a_only(x, &[ni - 1, ni]), b_only(x, &[ni])),
        ],
    )?);

    let matrix = CharacterMatrix::new(taxa.clone(), characters)?;
    debug_assert_eq!(matrix.len(), 2 * n - 4);
    Ok(FamilyInstance { n, taxa, matrix })
}

/// Which of `a_i`/`b_i` a lobster cherry carries.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

// Attach the cherry (s_j, s_{j+1}) for side s below the path vertex u_j.
fn attach_cherry(
    b: &mut TreeBuilder,
    x: &TaxonSet,
    u: usize,
    j: usize,
    side: Side,
) -> Result<()> {
    let v = b.internal(&format!("v{j}"));
    b.edge(u, v);
    let (first, second) = match side {
        Side::A => (x.a(j)?, x.a(j + 1)?),
        Side::B => (x.b(j)?, x.b(j + 1)?),
    };
    let l1 = b.leaf(first);
    let l2 = b.leaf(second);
    b.edge(v, l1);
    b.edge(v, l2);
    Ok(())
}

// A-style cherry sides: odd positions carry b-pairs, even carry a-pairs.
fn a_style(j: usize) -> Side {
    if j % 2 == 1 {
        Side::B
    } else {
        Side::A
    }
}

// B-style cherry sides: odd positions carry a-pairs, even carry b-pairs.
fn b_style(j: usize) -> Side {
    if j % 2 == 1 {
        Side::A
    } else {
        Side::B
    }
}

/// Lobster `A`: central path `a1, u1, …, u_{n-1}, an`; each `u_j` carries
/// a cherry `v_j` holding `(b_j, b_{j+1})` for odd `j` and
/// `(a_j, a_{j+1})` for even `j`. Displays every family character except
/// `Omega_B`.
pub fn lobster_a(n: usize) -> Result<Tree> {
    require_even_n(n)?;
    let taxa = Arc::new(TaxonSet::paired(n)?);
    let x = taxa.as_ref();
    let mut b = TreeBuilder::new(taxa.clone());
    let us: Vec<_> = (1..n).map(|j| b.internal(&format!("u{j}"))).collect();
    for w in us.windows(2) {
        b.edge(w[0], w[1]);
    }
    let left = b.leaf(x.a(1)?);
    let right = b.leaf(x.a(n)?);
    b.edge(left, us[0]);
    b.edge(right, us[n - 2]);
    for j in 1..n {
        attach_cherry(&mut b, x, us[j - 1], j, a_style(j))?;
    }
    b.build()
}

/// Lobster `B`: as `A` with the `a`/`b` roles swapped and path endpoints
/// `b1`, `bn`. Displays every family character except `Omega_A`.
pub fn lobster_b(n: usize) -> Result<Tree> {
    require_even_n(n)?;
    let taxa = Arc::new(TaxonSet::paired(n)?);
    let x = taxa.as_ref();
    let mut b = TreeBuilder::new(taxa.clone());
    let us: Vec<_> = (1..n).map(|j| b.internal(&format!("u{j}"))).collect();
    for w in us.windows(2) {
        b.edge(w[0], w[1]);
    }
    let left = b.leaf(x.b(1)?);
    let right = b.leaf(x.b(n)?);
    b.edge(left, us[0]);
    b.edge(right, us[n - 2]);
    for j in 1..n {
        attach_cherry(&mut b, x, us[j - 1], j, b_style(j))?;
    }
    b.build()
}

/// The crossover lobster for `2 <= i <= n-2`: path
/// `a1, u1, …, u_{i-1}, uA, uB, u_{i+1}, …, u_{n-1}, bn`, looking like
/// `A` on `{a_j,b_j : j <= i}` and like `B` on `{a_j,b_j : j >= i+1}`.
/// `uA` carries `a_i` (even `i`) or `b_i` (odd `i`); `uB` carries
/// `b_{i+1}` (even `i`) or `a_{i+1}` (odd `i`). Displays every family
/// character except `chi_i`.
pub fn cross_lobster(n: usize, i: usize) -> Result<Tree> {
    require_even_n(n)?;
    if i < 2 || i > n - 2 {
        return Err(Error::Domain(format!(
            "crossover position {i} out of range 2..={}",
            n - 2
        )));
    }
    let taxa = Arc::new(TaxonSet::paired(n)?);
    let x = taxa.as_ref();
    let mut b = TreeBuilder::new(taxa.clone());
    let mut path = Vec::new();
    for j in 1..i {
        path.push((j, b.internal(&format!("u{j}"))));
    }
    let ua = b.internal("uA");
    let ub = b.internal("uB");
    path.push((0, ua));
    path.push((0, ub));
    for j in (i + 1)..n {
        path.push((j, b.internal(&format!("u{j}"))));
    }
    for w in path.windows(2) {
        b.edge(w[0].1, w[1].1);
    }
    let left = b.leaf(x.a(1)?);
    let right = b.leaf(x.b(n)?);
    b.edge(left, path[0].1);
    b.edge(right, path[path.len() - 1].1);
    let (ua_taxon, ub_taxon) = if i.is_multiple_of(2) {
        (x.a(i)?, x.b(i + 1)?)
    } else {
        (x.b(i)?, x.a(i + 1)?)
    };
    let la = b.leaf(ua_taxon);
    b.edge(ua, la);
    let lb = b.leaf(ub_taxon);
    b.edge(ub, lb);
    for &(j, u) in &path {
        if j == 0 {
            continue;
        }
        let side = if j < i { a_style(j) } else { b_style(j) };
        attach_cherry(&mut b, x, u, j, side)?;
    }
    b.build()
}

/// The offset crossover lobster for `3 <= i <= n-1`: path
/// `a1, u1, …, u_{i-2}, uA, uB, u_i, …, u_{n-1}, bn`, looking like `A`
/// on `{a_j,b_j : j <= i-1}` and like `B` on `{a_j,b_j : j >= i}`. `uA`
/// carries `a_i` (even `i`) or `b_i` (odd `i`); `uB` carries `b_{i-1}`
/// (even `i`) or `a_{i-1}` (odd `i`). Displays every family character
/// except `phi_i`; equals [`cross_lobster`]`(n, i-1)` with one `a`/`b`
/// leaf pair exchanged.
pub fn jagged_lobster(n: usize, i: usize) -> Result<Tree> {
    require_even_n(n)?;
    if i < 3 || i > n - 1 {
        return Err(Error::Domain(format!(
            "offset crossover position {i} out of range 3..={}",
            n - 1
        )));
    }
    let taxa = Arc::new(TaxonSet::paired(n)?);
    let x = taxa.as_ref();
    let mut b = TreeBuilder::new(taxa.clone());
    let mut path = Vec::new();
    for j in 1..=(i - 2) {
        path.push((j, b.internal(&format!("u{j}"))));
    }
    let ua = b.internal("uA");
    let ub = b.internal("uB");
    path.push((0, ua));
    path.push((0, ub));
    for j in i..n {
        path.push((j, b.internal(&format!("u{j}"))));
    }
    for w in path.windows(2) {
        b.edge(w[0].1, w[1].1);
    }
    let left = b.leaf(x.a(1)?);
    let right = b.leaf(x.b(n)?);
    b.edge(left, path[0].1);
    b.edge(right, path[path.len() - 1].1);
    let (ua_taxon, ub_taxon) = if i.is_multiple_of(2) {
        (x.a(i)?, x.b(i - 1)?)
    } else {
        (x.b(i)?, x.a(i - 1)?)
    };
    let la = b.leaf(ua_taxon);
    b.edge(ua, la);
    let lb = b.leaf(ub_taxon);
    b.edge(ub, lb);
    for &(j, u) in &path {
        if j == 0 {
            continue;
        }
        let side = if j < i - 1 { a_style(j) } else { b_style(j) };
        attach_cherry(&mut b, x, u, j, side)?;
    }
    b.build()
}

/// A named leave-one-out witness for the family.
#[derive(Debug, Clone)]
pub struct FamilyWitness {
    /// `A`, `B`, `A_iB(i)` or `A^iB(i)`.
    pub name: String,
    pub tree: Tree,
    /// Index into the family matrix of the only character the tree fails.
    pub avoids: usize,
}

/// The full witness list for `C(n)`: `B` for `Omega_A`, `A_iB(i)` for
/// each `chi_i`, `A^iB(i)` for each `phi_i`, and `A` for `Omega_B`.
pub fn family_witnesses(inst: &FamilyInstance) -> Result<Vec<FamilyWitness>> {
    let n = inst.n;
    let mut out = Vec::with_capacity(inst.matrix.len());
    out.push(FamilyWitness {
        name: "B".into(),
        tree: lobster_b(n)?,
        avoids: inst.character_index("Omega_A").expect("family matrix"),
    });
    for i in 2..=(n - 2) {
        out.push(FamilyWitness {
            name: format!("A_iB({i})"),
            tree: cross_lobster(n, i)?,
            avoids: inst
                .character_index(&format!("chi_{i}"))
                .expect("family matrix"),
        });
    }
    for i in 3..=(n - 1) {
        out.push(FamilyWitness {
            name: format!("A^iB({i})"),
            tree: jagged_lobster(n, i)?,
            avoids: inst
                .character_index(&format!("phi_{i}"))
                .expect("family matrix"),
        });
    }
    out.push(FamilyWitness {
        name: "A".into(),
        tree: lobster_a(n)?,
        avoids: inst.character_index("Omega_B").expect("family matrix"),
    });
    Ok(out)
}

/// Aligned sequences of the classical five-taxon instance whose three
/// characters are pairwise compatible but jointly incompatible.
pub const FITCH_SEQUENCES: [(&str, &str); 5] = [
    ("x1", "AAA"),
    ("x2", "ACC"),
    ("x3", "CGC"),
    ("x4", "CCG"),
    ("x5", "GAG"),
];

/// The five-taxon three-character matrix built from [`FITCH_SEQUENCES`]
/// by grouping equal symbols per column:
/// `chi_1 = x1x2|x3x4|x5`, `chi_2 = x1x5|x2x4|x3`, `chi_3 = x1|x2x3|x4x5`.
pub fn fitch_example() -> CharacterMatrix {
    matrix_from_sequences(&FITCH_SEQUENCES, &["chi_1", "chi_2", "chi_3"])
        .expect("constant table is well-formed")
}

/// Builds a matrix from equal-length sequences: one character per
/// column, one state per distinct symbol.
pub fn matrix_from_sequences(rows: &[(&str, &str)], names: &[&str]) -> Result<CharacterMatrix> {
    let taxa = Arc::new(TaxonSet::new(rows.iter().map(|(t, _)| *t))?);
    let width = rows
        .first()
        .map(|(_, s)| s.chars().count())
        .ok_or_else(|| Error::Domain("no sequences".into()))?;
    if names.len() != width || rows.iter().any(|(_, s)| s.chars().count() != width) {
        return Err(Error::Domain("ragged sequence table".into()));
    }
    let mut characters = Vec::with_capacity(width);
    for (col, name) in names.iter().enumerate() {
        let mut blocks: Vec<(char, TaxonSubset)> = Vec::new();
        for (t, (_, seq)) in rows.iter().enumerate() {
            let sym = seq.chars().nth(col).expect("within width");
            match blocks.iter_mut().find(|(s, _)| *s == sym) {
                Some((_, block)) => {
                    block.insert(t);
                }
                None => blocks.push((sym, TaxonSubset::from([t]))),
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

/// Adds `count` fresh taxa, each placed in exactly the states containing
/// `taxon` (or gapped where it is gapped). Compatibility status is
/// preserved: a witness extends by attaching each copy as a sibling of
/// the original, and restriction removes copies again.
pub fn duplicate_taxon(m: &CharacterMatrix, taxon: &str, count: usize) -> Result<CharacterMatrix> {
    let old = m.taxa();
    let t = old
        .id_of(taxon)
        .ok_or_else(|| Error::Domain(format!("unknown taxon '{taxon}'")))?;
    if count == 0 {
        return Err(Error::Domain("duplication count must be at least 1".into()));
    }
    let mut labels: Vec<String> = old.labels().to_vec();
    for c in 1..=count {
        let mut label = format!("{taxon}_copy{c}");
        while labels.iter().any(|l| l == &label) {
            label.push('x');
        }
        labels.push(label);
    }
    let new_taxa = Arc::new(TaxonSet::new(labels)?);
    let copies: Vec<usize> = (old.len()..new_taxa.len()).collect();
    let characters = m
        .characters()
        .iter()
        .map(|c| {
            let states = c
                .states()
                .iter()
                .map(|s| {
                    let mut s: TaxonSubset = s.clone();
                    if s.contains(&t) {
                        s.extend(copies.iter().copied());
                    }
                    s
                })
                .collect();
            Character::new(new_taxa.clone(), c.name(), states)
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterMatrix::new(new_taxa, characters)
}

/// Replaces every singleton state of every character by a gap. For the
/// family matrices this leaves at most 4 states per character.
pub fn gapify(m: &CharacterMatrix) -> CharacterMatrix {
    let characters = m.characters().iter().map(Character::gapify).collect();
    CharacterMatrix::new(m.taxa().clone(), characters).expect("same taxa")
}
