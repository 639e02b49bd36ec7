//! Enumeration and classification of small block pastings.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms::check_os_axioms;
use crate::error::{Error, Result};
use crate::events::EventStructure;
use crate::logic::FiniteLogic;
use crate::polytope::{vertices, MAX_VERTICES};
use crate::rational::{to_text, Q};
use crate::scan::finite_i3_scan;
use crate::ucp::{check_uc1, check_uc2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_atoms: usize,
    pub max_blocks: usize,
    pub block_size_min: usize,
    pub block_size_max: usize,
    /// Cap on state-polytope vertices before a logic is skipped.
    pub vertex_limit: usize,
    pub out: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_atoms: 6,
            max_blocks: 3,
            block_size_min: 3,
            block_size_max: 6,
            vertex_limit: MAX_VERTICES,
            out: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.into()));
        if self.block_size_min < 2 {
            return bad("block size must be at least 2");
        }
        if self.block_size_min > self.block_size_max {
            return bad("block-size-min exceeds block-size-max");
        }
        if self.max_blocks == 0 {
            return bad("max blocks must be positive");
        }
        if self.vertex_limit == 0 {
            return bad("vertex limit must be positive");
        }
        Ok(())
    }
}

/// Loop-free pastings within the bounds that satisfy OS1–OS6, one per
/// isomorphism class, sorted.
pub fn enumerate_logics(cfg: &SearchConfig) -> Result<Vec<FiniteLogic>> {
    Ok(enumerate_pastings(cfg)?
        .into_iter()
        .filter(|l| EventStructure::new(l).is_ok_and(|ev| check_os_axioms(&ev).pass()))
        .collect())
}

/// All loop-free pastings within the bounds, one per isomorphism class,
/// sorted.
///
/// Blocks are added one at a time; a new block takes at most one atom from
/// each existing block and numbers its fresh atoms consecutively, which
/// reaches every pasting up to relabeling.
pub fn enumerate_pastings(cfg: &SearchConfig) -> Result<Vec<FiniteLogic>> {
    cfg.validate()?;
    let mut found = BTreeSet::new();
    let mut blocks = Vec::new();
    grow(0, &mut blocks, cfg, &mut |used, blocks| {
        let l = FiniteLogic::new(used, blocks.to_vec()).expect("generated blocks are valid");
        found.insert(l.canonical());
    });
    Ok(found.into_iter().collect())
}

fn grow(
    used: usize,
    blocks: &mut Vec<Vec<usize>>,
    cfg: &SearchConfig,
    emit: &mut dyn FnMut(usize, &[Vec<usize>]),
) {
    if !blocks.is_empty() {
        emit(used, blocks);
    }
    if blocks.len() == cfg.max_blocks {
        return;
    }
    for size in cfg.block_size_min..=cfg.block_size_max {
        let mut choices = Vec::new();
        old_atoms(used, 0, size, blocks, &mut Vec::new(), &mut |old| {
            if used + size - old.len() <= cfg.max_atoms {
                choices.push(old.to_vec());
            }
        });
        for mut block in choices {
            let fresh = size - block.len();
            block.extend(used..used + fresh);
            blocks.push(block);
            grow(used + fresh, blocks, cfg, emit);
            blocks.pop();
        }
    }
}

/// Subsets of `0..used` with at most `max` atoms meeting every block in at
/// most one atom.
fn old_atoms(
    used: usize,
    start: usize,
    max: usize,
    blocks: &[Vec<usize>],
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    f(cur);
    if cur.len() == max {
        return;
    }
    for a in start..used {
        let clash = blocks
            .iter()
            .any(|b| b.contains(&a) && cur.iter().any(|c| b.contains(c)));
        if clash {
            continue;
        }
        cur.push(a);
        old_atoms(used, a + 1, max, blocks, cur, f);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotRun,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotRun => "not run",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchRecord {
    pub logic: FiniteLogic,
    pub os: Verdict,
    pub uc1: Verdict,
    pub uc2: Verdict,
    pub vertices: Option<usize>,
    pub max_i2: Option<Q>,
    pub max_i3: Option<Q>,
    /// `skipped: size` and similar.
    pub status: String,
    pub witnesses: Value,
}

impl SearchRecord {
    fn new(logic: FiniteLogic) -> Self {
        SearchRecord {
            logic,
            os: Verdict::NotRun,
            uc1: Verdict::NotRun,
            uc2: Verdict::NotRun,
            vertices: None,
            max_i2: None,
            max_i3: None,
            status: "classified".into(),
            witnesses: json!({}),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "logic": self.logic.blocks_one_based(),
            "atoms": self.logic.atoms(),
            "blocks": self.logic.blocks().len(),
            "status": self.status,
            "os": self.os.as_str(),
            "uc1": self.uc1.as_str(),
            "uc2": self.uc2.as_str(),
            "vertices": self.vertices,
            "max_i2": self.max_i2.as_ref().map(to_text),
            "max_i3": self.max_i3.as_ref().map(to_text),
            "witnesses": self.witnesses,
        })
    }

    fn nonzero(q: &Option<Q>) -> bool {
        q.as_ref().is_some_and(|q| *q != Q::default())
    }
}

/// OS → UC1 → UC2 → interference scan, stopping at the first failure.
pub fn classify(logic: &FiniteLogic, vertex_limit: usize) -> SearchRecord {
    let mut rec = SearchRecord::new(logic.clone());
    let skip = |mut rec: SearchRecord, e: Error| {
        rec.status = match e {
            Error::TooLarge(m) => format!("skipped: size ({m})"),
            e => format!("skipped: {e}"),
        };
        rec
    };
    let ev = match EventStructure::new(logic) {
        Ok(ev) => ev,
        Err(e) => return skip(rec, e),
    };
    let os = check_os_axioms(&ev);
    rec.os = Verdict::from_bool(os.pass());
    if let Some(f) = os.first_failure() {
        rec.witnesses = json!({ "os": f });
        return rec;
    }
    let verts = match vertices(logic, vertex_limit) {
        Ok(v) => v,
        Err(e) => return skip(rec, e),
    };
    rec.vertices = Some(verts.len());
    let uc1 = check_uc1(&ev, &verts);
    rec.uc1 = Verdict::from_bool(uc1.pass);
    if !uc1.pass {
        rec.witnesses = json!({ "uc1": uc1.witness });
        return rec;
    }
    let uc2 = check_uc2(&ev, &verts, true);
    rec.uc2 = Verdict::from_bool(uc2.pass);
    if !uc2.pass {
        rec.witnesses = json!({ "uc2": uc2.witness_json(&ev, &verts) });
        return rec;
    }
    match finite_i3_scan(&ev, &verts, &uc2.table) {
        Ok(scan) => {
            rec.max_i2 = Some(scan.max_i2.clone());
            rec.max_i3 = Some(scan.max_i3.clone());
            rec.witnesses = json!({
                "i2": scan.i2_witness,
                "i3": scan.i3_witness,
                "t_form_mismatches": scan.t_form_mismatches,
            });
            rec
        }
        Err(e) => skip(rec, e),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    /// Pastings rejected by OS1–OS6 before classification.
    pub os_rejected: usize,
    pub enumerated: usize,
    pub os_pass: usize,
    pub uc1_pass: usize,
    pub uc2_pass: usize,
    pub nonzero_i2: usize,
    pub nonzero_i3: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(records: &[SearchRecord], os_rejected: usize) -> Self {
        let count = |p: &dyn Fn(&SearchRecord) -> bool| records.iter().filter(|r| p(r)).count();
        Summary {
            os_rejected,
            enumerated: records.len(),
            os_pass: count(&|r| r.os == Verdict::Pass),
            uc1_pass: count(&|r| r.uc1 == Verdict::Pass),
            uc2_pass: count(&|r| r.uc2 == Verdict::Pass),
            nonzero_i2: count(&|r| SearchRecord::nonzero(&r.max_i2)),
            nonzero_i3: count(&|r| SearchRecord::nonzero(&r.max_i3)),
            skipped: count(&|r| r.status.starts_with("skipped")),
        }
    }

    pub fn table(&self) -> String {
        let rows = [
            ("OS rejected", self.os_rejected),
            ("logics enumerated", self.enumerated),
            ("OS pass", self.os_pass),
            ("UC1 pass", self.uc1_pass),
            ("UC2 pass", self.uc2_pass),
            ("nonzero I2", self.nonzero_i2),
            ("nonzero I3", self.nonzero_i3),
            ("skipped", self.skipped),
        ];
        rows.iter().map(|(k, v)| format!("{k:<18} {v}\n")).collect()
    }
}

/// Classifies every pasting in parallel. Records of logics satisfying
/// OS1–OS6 are kept in canonical order and, when `cfg.out` is set, written
/// one JSON line each.
pub fn run_search(cfg: &SearchConfig) -> Result<(Vec<SearchRecord>, Summary)> {
    let pastings = enumerate_pastings(cfg)?;
    let all: Vec<SearchRecord> = pastings
        .par_iter()
        .map(|l| classify(l, cfg.vertex_limit))
        .collect();
    let total = all.len();
    let records: Vec<SearchRecord> = all.into_iter().filter(|r| r.os != Verdict::Fail).collect();
    let os_rejected = total - records.len();
    if let Some(path) = &cfg.out {
        let io = |e: std::io::Error| Error::Precondition(format!("{}: {e}", path.display()));
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        for r in &records {
            writeln!(w, "{}", r.to_json()).map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    let summary = Summary::of(&records, os_rejected);
    Ok((records, summary))
}
