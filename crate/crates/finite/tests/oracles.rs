//! Independent oracles: vertices by exhaustive LP over zero patterns,
//! classical conditioning by formula, and pasting counts by brute-force
//! relabeling.

use std::collections::BTreeSet;

use ucplab_finite::lp::{maximize, LpOutcome};
use ucplab_finite::polytope::{block_matrix, vertices, MAX_VERTICES};
use ucplab_finite::rational::{int, one, zero, Q};
use ucplab_finite::search::{enumerate_logics, enumerate_pastings, SearchConfig};
use ucplab_finite::ucp::{conditional, Conditional};
use ucplab_finite::{EventStructure, FiniteLogic};

/// Every vertex is the unique point of some face `{x_a = 0, a ∈ Z}`.
/// For each zero set `Z`, the face is a single point iff minimizing and
/// maximizing every coordinate over it agree.
fn vertices_by_faces(l: &FiniteLogic) -> BTreeSet<Vec<Q>> {
    let n = l.atoms();
    let mut out = BTreeSet::new();
    for z in 0u32..1 << n {
        let mut a = block_matrix(l);
        let mut b = vec![one(); a.len()];
        for k in 0..n {
            if z >> k & 1 == 1 {
                let mut row = vec![zero(); n];
                row[k] = one();
                a.push(row);
                b.push(zero());
            }
        }
        let mut point = Vec::new();
        let mut single = true;
        for k in 0..n {
            let mut c = vec![zero(); n];
            c[k] = one();
            let hi = maximize(&a, &b, &c);
            c[k] = -one();
            let lo = maximize(&a, &b, &c);
            match (hi, lo) {
                (LpOutcome::Optimal { value: h, .. }, LpOutcome::Optimal { value: l, .. }) => {
                    single &= h == -l;
                    point.push(h);
                }
                _ => {
                    single = false;
                    break;
                }
            }
        }
        if single {
            out.insert(point);
        }
    }
    out
}

#[test]
fn vertices_match_face_oracle() {
    let logics = [
        FiniteLogic::boolean(3),
        FiniteLogic::from_one_based(&[vec![1, 2, 3], vec![3, 4, 5]]).unwrap(),
        FiniteLogic::from_one_based(&[vec![1, 2], vec![3, 4], vec![1, 3, 5], vec![2, 4, 6]]).unwrap(),
        FiniteLogic::from_one_based(&[vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]).unwrap(),
        FiniteLogic::from_one_based(&[vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]]).unwrap(),
    ];
    for l in logics {
        let v: BTreeSet<Vec<Q>> = vertices(&l, MAX_VERTICES).unwrap().into_iter().collect();
        assert_eq!(v, vertices_by_faces(&l), "{l}");
    }
}

#[test]
fn boolean_conditioning_matches_the_classical_formula() {
    let l = FiniteLogic::boolean(4);
    let ev = EventStructure::new(&l).unwrap();
    let mu: Vec<Q> = [1, 2, 3, 4].iter().map(|&k| int(k) / int(10)).collect();
    for e in 1..ev.len() {
        let inside: BTreeSet<usize> = ev.rep(e).iter().copied().collect();
        let me: Q = inside.iter().map(|&a| &mu[a]).sum();
        let expected: Vec<Q> = (0..4)
            .map(|a| if inside.contains(&a) { &mu[a] / &me } else { zero() })
            .collect();
        assert_eq!(conditional(&ev, &mu, e), Conditional::Unique(expected));
    }
}

/// Isomorphism classes of pastings by brute force over all labelings.
fn brute_force_classes(cfg: &SearchConfig) -> usize {
    let mut classes = BTreeSet::new();
    for n in 1..=cfg.max_atoms {
        let subsets: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|m| (0..n).filter(|&k| m >> k & 1 == 1).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| (cfg.block_size_min..=cfg.block_size_max).contains(&s.len()))
            .collect();
        let mut picks = Vec::new();
        choose(subsets.len(), cfg.max_blocks, 0, &mut Vec::new(), &mut picks);
        for pick in picks {
            let blocks: Vec<Vec<usize>> = pick.iter().map(|&k| subsets[k].clone()).collect();
            let covered: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
            let loop_free = blocks.iter().enumerate().all(|(i, a)| {
                blocks[i + 1..]
                    .iter()
                    .all(|b| a.iter().filter(|x| b.contains(x)).count() <= 1)
            });
            if covered.len() != n || !loop_free {
                continue;
            }
            // smallest relabeled block list over all permutations
            let mut best: Option<Vec<Vec<usize>>> = None;
            permutations(n, &mut |p| {
                let mut bs: Vec<Vec<usize>> = blocks
                    .iter()
                    .map(|b| {
                        let mut v: Vec<usize> = b.iter().map(|&a| p[a]).collect();
                        v.sort();
                        v
                    })
                    .collect();
                bs.sort();
                if best.as_ref().is_none_or(|x| bs < *x) {
                    best = Some(bs);
                }
            });
            classes.insert((n, best.unwrap()));
        }
    }
    classes.len()
}

/// Nonempty index sets of size at most `k` from `0..m`.
fn choose(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == k {
        return;
    }
    for i in start..m {
        cur.push(i);
        choose(m, k, i + 1, cur, out);
        cur.pop();
    }
}

fn permutations(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            go(v, k + 1, f);
            v.swap(k, i);
        }
    }
    go(&mut (0..n).collect(), 0, f)
}

#[test]
fn pasting_counts_match_brute_force() {
    for (atoms, blocks, min, max) in [(5, 2, 3, 5), (6, 3, 3, 3), (5, 4, 2, 3), (6, 3, 2, 4)] {
        let cfg = SearchConfig {
            max_atoms: atoms,
            max_blocks: blocks,
            block_size_min: min,
            block_size_max: max,
            ..SearchConfig::default()
        };
        assert_eq!(enumerate_pastings(&cfg).unwrap().len(), brute_force_classes(&cfg), "{cfg:?}");
    }
}

#[test]
fn hand_count_for_five_atoms_two_blocks() {
    // Boolean 3, 4 and 5, and two 3-blocks sharing one atom.
    let cfg = SearchConfig {
        max_atoms: 5,
        max_blocks: 2,
        ..SearchConfig::default()
    };
    let logics = enumerate_logics(&cfg).unwrap();
    let shapes: Vec<Vec<usize>> = logics
        .iter()
        .map(|l| l.blocks().iter().map(Vec::len).collect())
        .collect();
    assert_eq!(shapes.len(), 4);
    for n in 3..=5 {
        assert!(shapes.contains(&vec![n]));
    }
    assert!(shapes.contains(&vec![3, 3]));
}
