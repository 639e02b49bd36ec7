//! The event set of a finite logic.
//!
//! Every sub-multiset of a block is a candidate event. Candidates with the
//! same atoms are identified, and so are complements (within their blocks)
//! of identified candidates; this is iterated to a fixpoint. Each class is
//! represented by its shortest, then lexicographically least, atom list,
//! and classes are numbered in that order, so event `0` is the zero event.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::logic::FiniteLogic;

/// Largest block handled (orthogonal pairs grow like `3^size`).
pub const MAX_BLOCK_SIZE: usize = 12;
/// Largest event set handled.
pub const MAX_EVENTS: usize = 4096;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

#[derive(Clone, Debug)]
pub struct EventStructure {
    logic: FiniteLogic,
    reps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    orth: Vec<Vec<bool>>,
    orth_list: Vec<Vec<usize>>,
    sums: HashMap<(usize, usize), usize>,
    /// `(e, f, s1, s2)`: two different sums found for one orthogonal pair
    sum_conflicts: Vec<(usize, usize, usize, usize)>,
    one: usize,
}

fn submultiset(block: &[usize], mask: usize) -> Vec<usize> {
    // blocks are sorted, so the selected atoms come out sorted
    block
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

impl EventStructure {
    pub fn new(logic: &FiniteLogic) -> Result<Self> {
        let blocks = logic.blocks();
        if let Some(b) = blocks.iter().find(|b| b.len() > MAX_BLOCK_SIZE) {
            return Err(Error::TooLarge(format!(
                "block of size {} exceeds {MAX_BLOCK_SIZE}",
                b.len()
            )));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in blocks {
            offsets.push(total);
            total += 1 << b.len();
        }
        let node = |b: usize, mask: usize| offsets[b] + mask;

        let mut uf = UnionFind((0..total).collect());
        let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut keys = Vec::with_capacity(total);
        for (b, block) in blocks.iter().enumerate() {
            for mask in 0..1usize << block.len() {
                let key = submultiset(block, mask);
                match first.get(&key) {
                    Some(&n) => {
                        uf.union(n, node(b, mask));
                    }
                    None => {
                        first.insert(key.clone(), node(b, mask));
                    }
                }
                keys.push(key);
            }
        }
        // complements of identified events are identified
        loop {
            let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (b, block) in blocks.iter().enumerate() {
                let full = (1usize << block.len()) - 1;
                for mask in 0..=full {
                    let root = uf.find(node(b, mask));
                    classes.entry(root).or_default().push(node(b, full ^ mask));
                }
            }
            let mut changed = false;
            for comps in classes.values() {
                for w in comps.windows(2) {
                    changed |= uf.union(w[0], w[1]);
                }
            }
            if !changed {
                break;
            }
        }

        let mut best: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
        for (n, key) in keys.iter().enumerate() {
            let root = uf.find(n);
            let slot = best.entry(root).or_insert(key);
            if (key.len(), key) < (slot.len(), *slot) {
                *slot = key;
            }
        }
        if best.len() > MAX_EVENTS {
            return Err(Error::TooLarge(format!(
                "{} events exceed {MAX_EVENTS}",
                best.len()
            )));
        }
        let mut classes: Vec<(usize, &Vec<usize>)> = best.into_iter().collect();
        classes.sort_by(|a, b| (a.1.len(), a.1).cmp(&(b.1.len(), b.1)));
        let reps: Vec<Vec<usize>> = classes.iter().map(|(_, k)| (*k).clone()).collect();
        let id_of_root: HashMap<usize, usize> =
            classes.iter().enumerate().map(|(i, (r, _))| (*r, i)).collect();
        let class: Vec<usize> = (0..total).map(|n| id_of_root[&uf.find(n)]).collect();
        let index: HashMap<Vec<usize>, usize> = keys
            .iter()
            .enumerate()
            .map(|(n, k)| (k.clone(), class[n]))
            .collect();

        let n = reps.len();
        let mut orth = vec![vec![false; n]; n];
        let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
        let mut sum_conflicts = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let full = (1usize << block.len()) - 1;
            for a in 0..=full {
                let rest = full ^ a;
                // all submasks c of rest, including 0
                let mut c = rest;
                loop {
                    let (ea, ec, eu) = (class[node(b, a)], class[node(b, c)], class[node(b, a | c)]);
                    orth[ea][ec] = true;
                    match sums.get(&(ea, ec)) {
                        Some(&s) if s != eu => sum_conflicts.push((ea, ec, s, eu)),
                        Some(_) => {}
                        None => {
                            sums.insert((ea, ec), eu);
                        }
                    }
                    if c == 0 {
                        break;
                    }
                    c = (c - 1) & rest;
                }
            }
        }
        sum_conflicts.sort_unstable();
        sum_conflicts.dedup();
        let orth_list = orth
            .iter()
            .map(|row| (0..n).filter(|&j| row[j]).collect())
            .collect();
        let one = blocks.first().map_or(0, |b| class[node(0, (1 << b.len()) - 1)]);
        Ok(EventStructure {
            logic: logic.clone(),
            reps,
            index,
            orth,
            orth_list,
            sums,
            sum_conflicts,
            one,
        })
    }

    pub fn logic(&self) -> &FiniteLogic {
        &self.logic
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// Representative atom list (sorted, zero-based).
    pub fn rep(&self, e: usize) -> &[usize] {
        &self.reps[e]
    }

    /// The event containing the sub-multiset `atoms` of some block.
    pub fn event_of(&self, atoms: &[usize]) -> Option<usize> {
        let mut key = atoms.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn orthogonal(&self, e: usize, f: usize) -> bool {
        self.orth[e][f]
    }

    /// Events orthogonal to `e`, ascending.
    pub fn orthogonal_to(&self, e: usize) -> &[usize] {
        &self.orth_list[e]
    }

    pub fn sum(&self, e: usize, f: usize) -> Option<usize> {
        self.sums.get(&(e, f)).copied()
    }

    pub fn sum_conflicts(&self) -> &[(usize, usize, usize, usize)] {
        &self.sum_conflicts
    }

    /// All `f` with `f ⊥ e` and `e + f = 𝟙`.
    pub fn complements(&self, e: usize) -> Vec<usize> {
        self.orth_list[e]
            .iter()
            .copied()
            .filter(|&f| self.sum(e, f) == Some(self.one))
            .collect()
    }

    /// The complement `e′` when it is unique.
    pub fn complement(&self, e: usize) -> Option<usize> {
        match self.complements(e)[..] {
            [c] => Some(c),
            _ => None,
        }
    }

    /// Events `f` with `f ⊥ e′`, i.e. `f ≤ e`.
    pub fn below(&self, e: usize) -> Vec<usize> {
        match self.complement(e) {
            Some(c) => self.orth_list[c].clone(),
            None => Vec::new(),
        }
    }

    /// Atom multiplicities of the representative.
    pub fn indicator(&self, e: usize) -> Vec<i64> {
        let mut v = vec![0; self.logic.atoms()];
        for &a in &self.reps[e] {
            v[a] += 1;
        }
        v
    }

    /// `{1,2}` with one-based atoms; the zero event prints as `0`.
    pub fn label(&self, e: usize) -> String {
        if self.reps[e].is_empty() {
            return "0".into();
        }
        let atoms: Vec<String> = self.reps[e].iter().map(|a| (a + 1).to_string()).collect();
        format!("{{{}}}", atoms.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_events_are_subsets() {
        let ev = EventStructure::new(&FiniteLogic::boolean(3)).unwrap();
        assert_eq!(ev.len(), 8);
        assert_eq!(ev.rep(0), &[] as &[usize]);
        assert_eq!(ev.rep(ev.one()), &[0, 1, 2]);
        let a = ev.event_of(&[0]).unwrap();
        let b = ev.event_of(&[1, 2]).unwrap();
        assert!(ev.orthogonal(a, b));
        assert_eq!(ev.sum(a, b), Some(ev.one()));
        assert_eq!(ev.complement(a), Some(b));
        assert_eq!(ev.below(b).len(), 4);
    }

    #[test]
    fn pasting_identifies_complements() {
        let l = FiniteLogic::from_one_based(&[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let ev = EventStructure::new(&l).unwrap();
        // 0, five atoms, {1,2}={4,5}, {1,3}, {2,3}, {3,4}, {3,5}, 𝟙
        assert_eq!(ev.len(), 12);
        assert_eq!(ev.event_of(&[0, 1]), ev.event_of(&[3, 4]));
        assert_eq!(ev.event_of(&[0, 1, 2]), ev.event_of(&[2, 3, 4]));
        let three = ev.event_of(&[2]).unwrap();
        assert_eq!(ev.complement(three), ev.event_of(&[0, 1]));
        assert!(!ev.orthogonal(ev.event_of(&[0]).unwrap(), ev.event_of(&[3]).unwrap()));
        assert!(ev.sum_conflicts().is_empty());
    }
}
