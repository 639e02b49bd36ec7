//! Exhaustive checks of the orthogonality-space axioms OS1–OS6.

use serde::Serialize;

use crate::events::EventStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub pass: bool,
    /// First violation found, if any.
    pub witnesses: Vec<String>,
}

impl AxiomResult {
    fn new(axiom: &str, violation: Option<String>) -> Self {
        AxiomResult {
            axiom: axiom.into(),
            pass: violation.is_none(),
            witnesses: violation.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsReport {
    /// OS1 to OS6 in order.
    pub axioms: Vec<AxiomResult>,
    /// Consequences that hold in UCP spaces but are not part of OS1–OS6:
    /// the difference in OS6 is unique, and `e ⊥ e` only for `e = 0`.
    pub derived: Vec<AxiomResult>,
}

impl OsReport {
    pub fn pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| !a.pass)
    }
}

pub fn check_os_axioms(ev: &EventStructure) -> OsReport {
    let n = ev.len();
    let l = |e: usize| ev.label(e);

    let os1 = (0..n)
        .flat_map(|e| ev.orthogonal_to(e).iter().map(move |&f| (e, f)))
        .find(|&(e, f)| !ev.orthogonal(f, e))
        .map(|(e, f)| format!("{} ⊥ {} but not {} ⊥ {}", l(e), l(f), l(f), l(e)));

    let os2 = if let Some(&(e, f, s, t)) = ev.sum_conflicts().first() {
        Some(format!("{} + {} is both {} and {}", l(e), l(f), l(s), l(t)))
    } else {
        (0..n)
            .flat_map(|e| ev.orthogonal_to(e).iter().map(move |&f| (e, f)))
            .find(|&(e, f)| ev.sum(e, f).is_none() || ev.sum(e, f) != ev.sum(f, e))
            .map(|(e, f)| format!("{} + {} undefined or not commutative", l(e), l(f)))
    };

    let os3 = os3_violation(ev);

    let os4 = (0..n)
        .find(|&e| !ev.orthogonal(0, e) || ev.sum(e, 0) != Some(e))
        .map(|e| format!("0 ⊥ {} or {} + 0 = {} fails", l(e), l(e), l(e)));

    let os5 = (0..n).find_map(|e| {
        let c = ev.complements(e);
        (c.len() != 1).then(|| format!("{} has {} complements", l(e), c.len()))
    });

    let (os6, difference) = os6_violations(ev);

    let self_orth = (0..n)
        .find(|&e| ev.orthogonal(e, e) != (e == ev.zero()))
        .map(|e| format!("{} ⊥ {} is {}", l(e), l(e), ev.orthogonal(e, e)));

    OsReport {
        axioms: vec![
            AxiomResult::new("OS1", os1),
            AxiomResult::new("OS2", os2),
            AxiomResult::new("OS3", os3),
            AxiomResult::new("OS4", os4),
            AxiomResult::new("OS5", os5),
            AxiomResult::new("OS6", os6),
        ],
        derived: vec![
            AxiomResult::new("unique difference", difference),
            AxiomResult::new("self-orthogonal only zero", self_orth),
        ],
    }
}

/// `g ⊥ e, g ⊥ f, e ⊥ f` ⇒ `g ⊥ e+f`, `f ⊥ g+e`, `g+(e+f) = (g+e)+f`.
fn os3_violation(ev: &EventStructure) -> Option<String> {
    let l = |e: usize| ev.label(e);
    for g in 0..ev.len() {
        let og = ev.orthogonal_to(g);
        for &e in og {
            for &f in og {
                if !ev.orthogonal(e, f) {
                    continue;
                }
                let (Some(ef), Some(ge)) = (ev.sum(e, f), ev.sum(g, e)) else {
                    return Some(format!("{} + {} or {} + {} undefined", l(e), l(f), l(g), l(e)));
                };
                if !ev.orthogonal(g, ef) {
                    return Some(format!(
                        "g={}, e={}, f={}: g not orthogonal to e+f={}",
                        l(g),
                        l(e),
                        l(f),
                        l(ef)
                    ));
                }
                if !ev.orthogonal(f, ge) {
                    return Some(format!(
                        "g={}, e={}, f={}: f not orthogonal to g+e={}",
                        l(g),
                        l(e),
                        l(f),
                        l(ge)
                    ));
                }
                if ev.sum(g, ef) != ev.sum(ge, f) {
                    return Some(format!(
                        "g={}, e={}, f={}: g+(e+f) differs from (g+e)+f",
                        l(g),
                        l(e),
                        l(f)
                    ));
                }
            }
        }
    }
    None
}

/// OS6 and the uniqueness of its difference `d`.
fn os6_violations(ev: &EventStructure) -> (Option<String>, Option<String>) {
    let l = |e: usize| ev.label(e);
    let n = ev.len();
    let mut os6 = None;
    let mut difference = None;
    let mut count = vec![0usize; n];
    for e in 0..n {
        count.iter_mut().for_each(|c| *c = 0);
        for &d in ev.orthogonal_to(e) {
            if let Some(s) = ev.sum(e, d) {
                count[s] += 1;
            }
        }
        for f in 0..n {
            let rhs = ev.complement(f).is_some_and(|c| ev.orthogonal(e, c));
            if os6.is_none() && (count[f] > 0) != rhs {
                os6 = Some(format!(
                    "e={}, f={}: difference exists is {}, e ⊥ f′ is {}",
                    l(e),
                    l(f),
                    count[f] > 0,
                    rhs
                ));
            }
            if difference.is_none() && count[f] > 1 {
                difference = Some(format!("e={}, f={}: {} differences", l(e), l(f), count[f]));
            }
        }
        if os6.is_some() && difference.is_some() {
            break;
        }
    }
    (os6, difference)
}
