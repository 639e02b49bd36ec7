//! Unique conditional probabilities on finite logics (UC1, UC2).
//!
//! A conditional probability of `μ` under `e` is a state `ν` with
//! `ν(f) = μ(f)/μ(e)` for every `f ⊥ e′`. The candidates form a polytope;
//! it is checked for emptiness and then, coordinate by coordinate, for
//! being a single point.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::events::EventStructure;
use crate::lp::{feasible_point, maximize, LpOutcome};
use crate::polytope::{block_matrix, weight_of, Echelon};
use crate::rational::{int, one, texts, zero, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Uc1Report {
    pub pass: bool,
    /// Two distinct events no state separates, one-based labels.
    pub witness: Option<(String, String)>,
    pub vertices: usize,
}

/// UC1 from the vertex list: events are grouped by their values on all
/// vertices, and every group with two members is confirmed by an exact LP
/// over the whole polytope.
pub fn check_uc1(ev: &EventStructure, vertices: &[Vec<Q>]) -> Uc1Report {
    let mut groups: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
    for e in 0..ev.len() {
        let values = vertices.iter().map(|w| weight_of(w, ev.rep(e))).collect();
        groups.entry(values).or_default().push(e);
    }
    let a = block_matrix(ev.logic());
    let b = vec![one(); a.len()];
    let mut witness = None;
    'groups: for members in groups.values() {
        let e = members[0];
        for &f in &members[1..] {
            let d: Vec<Q> = ev
                .indicator(e)
                .iter()
                .zip(ev.indicator(f))
                .map(|(x, y)| int(x - y))
                .collect();
            let neg: Vec<Q> = d.iter().map(|x| -x).collect();
            let separated = |c: &[Q]| match maximize(&a, &b, c) {
                LpOutcome::Optimal { value, .. } => value.is_positive(),
                LpOutcome::Unbounded => true,
                LpOutcome::Infeasible => false,
            };
            if !separated(&d) && !separated(&neg) {
                witness = Some((ev.label(e), ev.label(f)));
                break 'groups;
            }
        }
    }
    Uc1Report {
        pass: witness.is_none(),
        witness,
        vertices: vertices.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conditional {
    /// `μ(e) = 0`
    Null,
    Unique(Vec<Q>),
    /// Two different conditional states.
    NotUnique(Vec<Q>, Vec<Q>),
    Infeasible,
}

impl Conditional {
    pub fn unique(&self) -> Option<&[Q]> {
        match self {
            Conditional::Unique(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Conditional::NotUnique(..) | Conditional::Infeasible)
    }
}

/// The conditional probability of the state `w` under event `e`.
pub fn conditional(ev: &EventStructure, w: &[Q], e: usize) -> Conditional {
    let me = weight_of(w, ev.rep(e));
    if me.is_zero() {
        return Conditional::Null;
    }
    let n = ev.logic().atoms();
    let mut ech = Echelon::default();
    for row in block_matrix(ev.logic()) {
        if ech.insert(row, one()).is_err() {
            return Conditional::Infeasible;
        }
    }
    for f in ev.below(e) {
        let row: Vec<Q> = ev.indicator(f).into_iter().map(int).collect();
        let rhs = weight_of(w, ev.rep(f)) / &me;
        if ech.insert(row, rhs).is_err() {
            return Conditional::Infeasible;
        }
    }
    let (a, b) = ech.rows();
    let Some(x0) = feasible_point(&a, &b, n) else {
        return Conditional::Infeasible;
    };
    let fixed = ech.determined(n);
    for j in (0..n).filter(|&j| !fixed[j]) {
        let mut c = vec![zero(); n];
        c[j] = one();
        let hi = maximize(&a, &b, &c).optimal();
        c[j] = -one();
        let lo = maximize(&a, &b, &c).optimal();
        match (hi, lo) {
            (Some((hv, hx)), Some((lv, lx))) => {
                if hv != -lv {
                    return Conditional::NotUnique(lx, hx);
                }
            }
            _ => return Conditional::Infeasible,
        }
    }
    Conditional::Unique(x0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uc2Report {
    pub pass: bool,
    /// `table[e][v]`: conditional of vertex `v` under event `e`. Rows are
    /// empty past the first failure when checking stopped early.
    pub table: Vec<Vec<Conditional>>,
    /// `(event, vertex)` of the first failure.
    pub witness: Option<(usize, usize)>,
}

impl Uc2Report {
    /// JSON witness: event, vertex state and the two conditional states
    /// (or `null` when none exists).
    pub fn witness_json(&self, ev: &EventStructure, vertices: &[Vec<Q>]) -> serde_json::Value {
        let Some((e, v)) = self.witness else {
            return serde_json::Value::Null;
        };
        let states = match &self.table[e][v] {
            Conditional::NotUnique(a, b) => serde_json::json!([texts(a), texts(b)]),
            _ => serde_json::Value::Null,
        };
        serde_json::json!({
            "event": ev.label(e),
            "state": texts(&vertices[v]),
            "conditionals": states,
        })
    }
}

/// UC2 at every vertex state. With `stop_at_first`, events after the first
/// failing one are not examined.
pub fn check_uc2(ev: &EventStructure, vertices: &[Vec<Q>], stop_at_first: bool) -> Uc2Report {
    let mut table: Vec<Vec<Conditional>> = Vec::with_capacity(ev.len());
    let mut witness = None;
    for e in 0..ev.len() {
        let row: Vec<Conditional> = vertices
            .par_iter()
            .map(|w| conditional(ev, w, e))
            .collect();
        if witness.is_none() {
            witness = row.iter().position(Conditional::is_failure).map(|v| (e, v));
        }
        table.push(row);
        if stop_at_first && witness.is_some() {
            break;
        }
    }
    table.resize(ev.len(), Vec::new());
    Uc2Report {
        pass: witness.is_none(),
        table,
        witness,
    }
}

/// `(sμ + (1−s)ν)_e` from the two conditionals, as atom weights.
pub fn mixture_rule(
    ev: &EventStructure,
    mu: &[Q],
    nu: &[Q],
    s: &Q,
    e: usize,
) -> Option<Vec<Q>> {
    let t = int(1) - s;
    let me = weight_of(mu, ev.rep(e));
    let ne = weight_of(nu, ev.rep(e));
    let total = s * &me + &t * &ne;
    if total.is_zero() {
        return None;
    }
    let part = |w: &[Q], we: &Q, coef: &Q| -> Option<Vec<Q>> {
        if we.is_zero() {
            return Some(vec![zero(); w.len()]);
        }
        let c = conditional(ev, w, e);
        let cw = c.unique()?;
        Some(cw.iter().map(|x| coef * we * x).collect())
    };
    let a = part(mu, &me, s)?;
    let b = part(nu, &ne, &t)?;
    Some(a.iter().zip(&b).map(|(x, y)| (x + y) / &total).collect())
}
