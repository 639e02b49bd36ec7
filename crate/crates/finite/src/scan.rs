//! Exhaustive second- and third-order interference over a finite logic.
//!
//! For a vertex state `μ` and event `g` write `J_g(f) = μ(f|g)μ(g)`, which
//! is additive in `f` and vanishes when `μ(g) = 0`. Both interference terms
//! are then additive in `f`, so their largest absolute value over all
//! events `f` is found block by block from the positive and negative parts
//! of an atom vector.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::events::EventStructure;
use crate::polytope::weight_of;
use crate::rational::{frac, texts, to_text, zero, Q};
use crate::ucp::Conditional;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: Vec<String>,
    /// The conditioning events.
    pub events: Vec<String>,
    pub f: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub max_i2: Q,
    pub i2_witness: Option<Witness>,
    pub max_i3: Q,
    pub i3_witness: Option<Witness>,
    /// Orthogonal pairs and triples examined (per vertex).
    pub pairs: usize,
    pub triples: usize,
    /// Configurations needing a conditional that is not unique.
    pub skipped: usize,
    /// Complete triples where the seven-term sum was compared with the
    /// `T` form, and how many of them disagreed.
    pub t_form_checked: usize,
    pub t_form_mismatches: usize,
}

impl ScanReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_i2": to_text(&self.max_i2),
            "i2_witness": self.i2_witness,
            "max_i3": to_text(&self.max_i3),
            "i3_witness": self.i3_witness,
            "pairs": self.pairs,
            "triples": self.triples,
            "skipped": self.skipped,
            "t_form_checked": self.t_form_checked,
            "t_form_mismatches": self.t_form_mismatches,
        })
    }
}

/// `J_g` as atom weights for every event `g` at one vertex; `None` where
/// the conditional is not unique or does not exist.
fn joint_vectors(
    ev: &EventStructure,
    w: &[Q],
    table: &[Vec<Conditional>],
    v: usize,
) -> Result<Vec<Option<Vec<Q>>>> {
    (0..ev.len())
        .map(|g| {
            let c = table.get(g).and_then(|row| row.get(v)).ok_or_else(|| {
                Error::MissingConditional {
                    event: ev.label(g),
                    vertex: v,
                }
            })?;
            Ok(match c {
                Conditional::Null => Some(vec![zero(); w.len()]),
                Conditional::Unique(nu) => {
                    let mg = weight_of(w, ev.rep(g));
                    Some(nu.iter().map(|x| &mg * x).collect())
                }
                Conditional::NotUnique(..) | Conditional::Infeasible => None,
            })
        })
        .collect()
}

/// `max_f |Σ_{a∈f} d[a]|` and a maximizing event.
fn max_over_events(ev: &EventStructure, d: &[Q]) -> (Q, usize) {
    let mut best = (zero(), ev.zero());
    for block in ev.logic().blocks() {
        for sign in [1i64, -1] {
            let atoms: Vec<usize> = block
                .iter()
                .copied()
                .filter(|&a| if sign > 0 { d[a].is_positive() } else { d[a].is_negative() })
                .collect();
            let total = weight_of(d, &atoms).abs();
            if total > best.0 {
                let f = ev.event_of(&atoms).expect("sub-multisets of blocks are events");
                best = (total, f);
            }
        }
    }
    best
}

fn combine(terms: &[(i64, &Vec<Q>)]) -> Vec<Q> {
    let n = terms[0].1.len();
    (0..n)
        .map(|a| {
            terms
                .iter()
                .map(|(s, v)| if *s > 0 { v[a].clone() } else { -&v[a] })
                .sum()
        })
        .collect()
}

/// Scans all orthogonal pairs and triples, all events `f` and all vertices.
pub fn finite_i3_scan(
    ev: &EventStructure,
    vertices: &[Vec<Q>],
    table: &[Vec<Conditional>],
) -> Result<ScanReport> {
    let mut report = ScanReport {
        max_i2: zero(),
        i2_witness: None,
        max_i3: zero(),
        i3_witness: None,
        pairs: 0,
        triples: 0,
        skipped: 0,
        t_form_checked: 0,
        t_form_mismatches: 0,
    };
    let n = ev.len();
    let half = frac(1, 2);
    let witness = |w: &[Q], es: &[usize], f: usize, value: &Q| Witness {
        vertex: texts(w),
        events: es.iter().map(|&e| ev.label(e)).collect(),
        f: ev.label(f),
        value: to_text(value),
    };
    for (v, w) in vertices.iter().enumerate() {
        let j = joint_vectors(ev, w, table, v)?;
        for e1 in 0..n {
            for &e2 in ev.orthogonal_to(e1).iter().filter(|&&e2| e2 >= e1) {
                let Some(e12) = ev.sum(e1, e2) else { continue };
                report.pairs += 1;
                let (Some(j12), Some(j1), Some(j2)) = (&j[e12], &j[e1], &j[e2]) else {
                    report.skipped += 1;
                    continue;
                };
                let d = combine(&[(1, j12), (-1, j1), (-1, j2)]);
                let (m, f) = max_over_events(ev, &d);
                if m > report.max_i2 {
                    report.i2_witness = Some(witness(w, &[e1, e2], f, &m));
                    report.max_i2 = m;
                }

                for &e3 in ev.orthogonal_to(e1).iter().filter(|&&e3| e3 >= e2) {
                    if !ev.orthogonal(e2, e3) {
                        continue;
                    }
                    let (Some(e13), Some(e23)) = (ev.sum(e1, e3), ev.sum(e2, e3)) else {
                        continue;
                    };
                    let Some(e123) = ev.sum(e12, e3) else { continue };
                    if weight_of(w, ev.rep(e123)).is_zero() {
                        continue;
                    }
                    report.triples += 1;
                    let terms = [e123, e12, e13, e23, e1, e2, e3].map(|g| j[g].as_ref());
                    let [Some(a), Some(b), Some(c), Some(dd), Some(x), Some(y), Some(z)] = terms
                    else {
                        report.skipped += 1;
                        continue;
                    };
                    let i3 = combine(&[(1, a), (-1, b), (-1, c), (-1, dd), (1, x), (1, y), (1, z)]);
                    let (m, f) = max_over_events(ev, &i3);
                    if m > report.max_i3 {
                        report.i3_witness = Some(witness(w, &[e1, e2, e3], f, &m));
                        report.max_i3 = m;
                    }
                    if e123 == ev.one() {
                        // T_e + T_f − T_{e+f} = ½ I_3(e, f, (e+f)′) with e = e1, f = e2
                        report.t_form_checked += 1;
                        let t = |g: usize| -> Option<Vec<Q>> {
                            let gc = ev.complement(g)?;
                            let (jg, jc) = (j[g].as_ref()?, j[gc].as_ref()?);
                            Some(
                                (0..w.len())
                                    .map(|k| &half * (&w[k] + &jg[k] - &jc[k]))
                                    .collect(),
                            )
                        };
                        let agree = match (t(e1), t(e2), t(e12)) {
                            (Some(t1), Some(t2), Some(t12)) => (0..w.len())
                                .all(|k| &t1[k] + &t2[k] - &t12[k] == &half * &i3[k]),
                            _ => false,
                        };
                        if !agree {
                            report.t_form_mismatches += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::FiniteLogic;
    use crate::polytope::{vertices, MAX_VERTICES};
    use crate::ucp::check_uc2;

    #[test]
    fn boolean_logic_has_no_interference() {
        let l = FiniteLogic::boolean(3);
        let ev = EventStructure::new(&l).unwrap();
        let v = vertices(&l, MAX_VERTICES).unwrap();
        let uc2 = check_uc2(&ev, &v, false);
        let r = finite_i3_scan(&ev, &v, &uc2.table).unwrap();
        assert!(r.max_i2.is_zero() && r.max_i3.is_zero());
        assert!(r.triples > 0 && r.t_form_checked > 0);
        assert_eq!((r.skipped, r.t_form_mismatches), (0, 0));
    }

    #[test]
    fn missing_table_is_an_error() {
        let l = FiniteLogic::boolean(2);
        let ev = EventStructure::new(&l).unwrap();
        let v = vertices(&l, MAX_VERTICES).unwrap();
        assert!(matches!(
            finite_i3_scan(&ev, &v, &[]),
            Err(Error::MissingConditional { .. })
        ));
    }
}
