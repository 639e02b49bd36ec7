//! The state polytope `{w ≥ 0 : every block sums to 1}` over atom weights.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::events::EventStructure;
use crate::logic::FiniteLogic;
use crate::rational::{int, one, texts, zero, Q};

/// Default cap on the number of vertices enumerated.
pub const MAX_VERTICES: usize = 5000;
/// Largest atom count for support enumeration.
pub const MAX_ATOMS: usize = 24;

/// Rows in reduced row-echelon form, grown one equation at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(Vec<Q>, Q)>,
    pivots: Vec<usize>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Inconsistent;

impl Echelon {
    /// Adds `row·x = rhs`; `Ok(true)` when the row was independent.
    pub fn insert(&mut self, mut row: Vec<Q>, mut rhs: Q) -> Result<bool, Inconsistent> {
        for ((r, b), &p) in self.rows.iter().zip(&self.pivots) {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs -= &f * b;
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return if rhs.is_zero() { Ok(false) } else { Err(Inconsistent) };
        };
        let lead = row[p].clone();
        for x in row.iter_mut() {
            *x /= &lead;
        }
        rhs /= &lead;
        for (r, b) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            *b -= &f * &rhs;
        }
        self.rows.push((row, rhs));
        self.pivots.push(p);
        Ok(true)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> (Vec<Vec<Q>>, Vec<Q>) {
        self.rows.iter().cloned().unzip()
    }

    /// Coordinates whose value is fixed by the equations alone.
    pub fn determined(&self, n: usize) -> Vec<bool> {
        let mut fixed = vec![false; n];
        for ((r, _), &p) in self.rows.iter().zip(&self.pivots) {
            let free_part = r
                .iter()
                .enumerate()
                .any(|(j, x)| j != p && !x.is_zero());
            fixed[p] = !free_part;
        }
        fixed
    }
}

/// Block constraint rows: entry `(b, a)` is the multiplicity of atom `a`
/// in block `b`.
pub fn block_matrix(logic: &FiniteLogic) -> Vec<Vec<Q>> {
    logic
        .blocks()
        .iter()
        .map(|b| {
            let mut row = vec![zero(); logic.atoms()];
            for &a in b {
                row[a] += one();
            }
            row
        })
        .collect()
}

/// Solves `A_S w = 1` on the columns `support`; `None` unless the
/// columns are independent and the system is consistent.
fn solve_on_support(a: &[Vec<Q>], support: &[usize]) -> Option<Vec<Q>> {
    let mut ech = Echelon::default();
    for row in a {
        let r: Vec<Q> = support.iter().map(|&j| row[j].clone()).collect();
        ech.insert(r, one()).ok()?;
    }
    if ech.rank() != support.len() {
        return None;
    }
    let mut w = vec![zero(); support.len()];
    for ((_, b), &p) in ech.rows.iter().zip(&ech.pivots) {
        w[p] = b.clone();
    }
    Some(w)
}

fn independent(a: &[Vec<Q>], cols: &[usize]) -> bool {
    let mut ech = Echelon::default();
    let mut rank = 0;
    for row in a {
        let r: Vec<Q> = cols.iter().map(|&j| row[j].clone()).collect();
        if ech.insert(r, zero()).unwrap_or(false) {
            rank += 1;
        }
    }
    rank == cols.len()
}

/// Vertices of the state polytope, sorted lexicographically.
///
/// A point is a vertex exactly when the columns of its support are
/// independent, so vertices are found by enumerating independent supports
/// and keeping the strictly positive solutions.
pub fn vertices(logic: &FiniteLogic, limit: usize) -> Result<Vec<Vec<Q>>> {
    let n = logic.atoms();
    if n > MAX_ATOMS {
        return Err(Error::TooLarge(format!("{n} atoms exceed {MAX_ATOMS}")));
    }
    let a = block_matrix(logic);
    let mut out = Vec::new();
    let mut support = Vec::new();
    support_search(&a, n, 0, &mut support, &mut out, limit)?;
    out.sort();
    Ok(out)
}

fn support_search(
    a: &[Vec<Q>],
    n: usize,
    start: usize,
    support: &mut Vec<usize>,
    out: &mut Vec<Vec<Q>>,
    limit: usize,
) -> Result<()> {
    for j in start..n {
        support.push(j);
        if independent(a, support) {
            if let Some(w) = solve_on_support(a, support) {
                if w.iter().all(|x| x.is_positive()) {
                    if out.len() == limit {
                        return Err(Error::TooLarge(format!("more than {limit} vertices")));
                    }
                    let mut full = vec![zero(); n];
                    for (&s, x) in support.iter().zip(w) {
                        full[s] = x;
                    }
                    out.push(full);
                }
            }
            support_search(a, n, j + 1, support, out, limit)?;
        }
        support.pop();
    }
    Ok(())
}

/// A state on a finite logic: nonnegative atom weights with every block
/// summing to one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteState {
    weights: Vec<Q>,
}

impl FiniteState {
    pub fn new(logic: &FiniteLogic, weights: Vec<Q>) -> Result<Self> {
        if weights.len() != logic.atoms() {
            return Err(Error::Precondition(format!(
                "{} weights for {} atoms",
                weights.len(),
                logic.atoms()
            )));
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Precondition("negative atom weight".into()));
        }
        for b in logic.blocks() {
            let s: Q = b.iter().map(|&a| &weights[a]).sum();
            if !s.is_one() {
                return Err(Error::Precondition(format!("block sums to {s}")));
            }
        }
        Ok(FiniteState { weights })
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    /// `μ(e)`, summed over the representative's atoms.
    pub fn value(&self, ev: &EventStructure, e: usize) -> Q {
        weight_of(&self.weights, ev.rep(e))
    }

    /// `sμ + (1 − s)ν`.
    pub fn mix(&self, s: &Q, other: &FiniteState) -> FiniteState {
        let t = int(1) - s;
        FiniteState {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| s * a + &t * b)
                .collect(),
        }
    }

    pub fn to_texts(&self) -> Vec<String> {
        texts(&self.weights)
    }
}

impl Serialize for FiniteState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_texts().serialize(s)
    }
}

/// Sum of `w` over the atoms (with multiplicity) of `atoms`.
pub fn weight_of(w: &[Q], atoms: &[usize]) -> Q {
    atoms.iter().map(|&a| &w[a]).sum()
}
