//! Finite logics given by atoms and blocks.
//!
//! Text format: one block per line, `block: a1 a2 ...` with 1-based atom
//! indices; `#` starts a comment. Atoms are numbered `1..=N` where `N` is
//! the largest index used.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atoms `0..atoms` and blocks (maximal families of mutually orthogonal
/// atoms summing to `𝟙`). A block may list an atom more than once; such a
/// logic is accepted here and rejected by the axiom check.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteLogic {
    atoms: usize,
    blocks: Vec<Vec<usize>>,
}

/// `a ⊆ b` as multisets; both sorted.
fn multiset_contains(b: &[usize], a: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

impl FiniteLogic {
    /// Zero-based constructor. Checks index range, coverage and that no
    /// block is contained in another.
    pub fn new(atoms: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let mut covered = vec![false; atoms];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidLogic(format!("block {} is empty", i + 1)));
            }
            for &a in b {
                if a >= atoms {
                    return Err(Error::InvalidLogic(format!(
                        "atom {} out of range 1..={atoms}",
                        a + 1
                    )));
                }
                covered[a] = true;
            }
        }
        if let Some(a) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidLogic(format!("atom {} lies in no block", a + 1)));
        }
        for i in 0..blocks.len() {
            for j in 0..blocks.len() {
                if i != j && multiset_contains(&blocks[j], &blocks[i]) {
                    return Err(Error::InvalidLogic(format!(
                        "block {} is contained in block {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        blocks.sort();
        Ok(FiniteLogic { atoms, blocks })
    }

    /// One-based blocks; the atom count is the largest index.
    pub fn from_one_based(blocks: &[Vec<usize>]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.contains(&0) {
                return Err(Error::InvalidLogic("atom indices start at 1".into()));
            }
            zero_based.push(b.iter().map(|a| a - 1).collect());
        }
        let atoms = blocks.iter().flatten().copied().max().unwrap_or(0);
        Self::new(atoms, zero_based)
    }

    /// The Boolean logic with one block of `n` atoms.
    pub fn boolean(n: usize) -> Self {
        Self::new(n, vec![(0..n).collect()]).expect("a single block is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: k + 1,
                message,
            };
            let rest = line
                .strip_prefix("block:")
                .ok_or_else(|| err(format!("expected `block:`, found `{line}`")))?;
            let atoms = rest
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("`{t}` is not an atom index")))
                })
                .collect::<Result<Vec<_>>>()?;
            if atoms.is_empty() {
                return Err(err("empty block".into()));
            }
            blocks.push(atoms);
        }
        Self::from_one_based(&blocks)
    }

    pub fn to_text(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let atoms: Vec<String> = b.iter().map(|a| (a + 1).to_string()).collect();
                format!("block: {}\n", atoms.join(" "))
            })
            .collect()
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// One-based copy of the blocks.
    pub fn blocks_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|a| a + 1).collect())
            .collect()
    }

    /// Distinct blocks share at most one atom.
    pub fn is_loop_free_pasting(&self) -> bool {
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if a.iter().filter(|x| b.contains(x)).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Representative of the isomorphism class under atom relabeling.
    ///
    /// For a fixed block order, atoms are determined up to swapping atoms
    /// with identical block memberships, so the sorted list of membership
    /// signatures is a complete invariant. The minimum over block orders
    /// (permuting only within blocks of equal invariant) is canonical.
    pub fn canonical(&self) -> FiniteLogic {
        let degree: Vec<usize> = (0..self.atoms)
            .map(|a| self.blocks.iter().map(|b| b.iter().filter(|&&x| x == a).count()).sum())
            .collect();
        let block_key = |b: &Vec<usize>| {
            let mut d: Vec<usize> = b.iter().map(|&a| degree[a]).collect();
            d.sort_unstable();
            (b.len(), d)
        };
        let mut cells: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            cells.entry(block_key(b)).or_default().push(i);
        }
        let cells: Vec<Vec<usize>> = cells.into_values().collect();

        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut order = Vec::with_capacity(self.blocks.len());
        self.search_orders(&cells, 0, &mut order, &mut best);
        let sigs = best.unwrap_or_default();
        let mut blocks = vec![Vec::new(); self.blocks.len()];
        for (atom, sig) in sigs.iter().enumerate() {
            for &pos in sig {
                blocks[pos].push(atom);
            }
        }
        blocks.sort();
        FiniteLogic {
            atoms: self.atoms,
            blocks,
        }
    }

    fn search_orders(
        &self,
        cells: &[Vec<usize>],
        cell: usize,
        order: &mut Vec<usize>,
        best: &mut Option<Vec<Vec<usize>>>,
    ) {
        if cell == cells.len() {
            let sigs = self.signatures(order);
            if best.as_ref().is_none_or(|b| sigs < *b) {
                *best = Some(sigs);
            }
            return;
        }
        let mut members = cells[cell].clone();
        permute(&mut members, 0, &mut |perm| {
            let len = order.len();
            order.extend_from_slice(perm);
            self.search_orders(cells, cell + 1, order, best);
            order.truncate(len);
        });
    }

    /// Sorted membership signatures of all atoms when block `order[i]` is
    /// placed at position `i`.
    fn signatures(&self, order: &[usize]) -> Vec<Vec<usize>> {
        let mut sigs = vec![Vec::new(); self.atoms];
        for (pos, &b) in order.iter().enumerate() {
            for &a in &self.blocks[b] {
                sigs[a].push(pos);
            }
        }
        sigs.sort();
        sigs
    }
}

/// Calls `f` on every permutation of `v[k..]` (Heap-free recursive swap).
fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

impl fmt::Display for FiniteLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let atoms: Vec<String> = b.iter().map(|a| (a + 1).to_string()).collect();
                format!("{{{}}}", atoms.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}
