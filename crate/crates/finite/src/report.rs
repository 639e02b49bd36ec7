//! JSON report for a single logic: `{axiom → pass|fail, witnesses: [...]}`.

use serde_json::{json, Map, Value};

use crate::axioms::check_os_axioms;
use crate::error::Result;
use crate::events::EventStructure;
use crate::logic::FiniteLogic;
use crate::polytope::vertices;
use crate::scan::finite_i3_scan;
use crate::ucp::{check_uc1, check_uc2};

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub pass: bool,
    pub json: Value,
}

/// Runs OS1–OS6, then UC1 and UC2 when the previous stage passed, then the
/// interference scan. `pass` means every axiom and both UC conditions hold.
pub fn check_logic(logic: &FiniteLogic, vertex_limit: usize) -> Result<CheckReport> {
    let ev = EventStructure::new(logic)?;
    let os = check_os_axioms(&ev);
    let mut out = Map::new();
    let mut witnesses = Vec::new();
    let verdict = |b: bool| json!(if b { "pass" } else { "fail" });
    for a in &os.axioms {
        out.insert(a.axiom.clone(), verdict(a.pass));
        witnesses.extend(a.witnesses.iter().map(|w| json!({ "axiom": a.axiom, "witness": w })));
    }
    let derived: Map<String, Value> = os
        .derived
        .iter()
        .map(|d| (d.axiom.clone(), json!({ "pass": d.pass, "witnesses": d.witnesses })))
        .collect();
    out.insert("logic".into(), json!(logic.blocks_one_based()));
    out.insert("events".into(), json!(ev.len()));
    out.insert("derived".into(), Value::Object(derived));

    let mut pass = os.pass();
    if pass {
        let verts = vertices(logic, vertex_limit)?;
        out.insert("vertices".into(), json!(verts.len()));
        let uc1 = check_uc1(&ev, &verts);
        out.insert("UC1".into(), verdict(uc1.pass));
        if let Some((e, f)) = &uc1.witness {
            witnesses.push(json!({ "axiom": "UC1", "witness": [e, f] }));
        }
        pass = uc1.pass;
        if pass {
            let uc2 = check_uc2(&ev, &verts, false);
            out.insert("UC2".into(), verdict(uc2.pass));
            if uc2.witness.is_some() {
                witnesses.push(json!({ "axiom": "UC2", "witness": uc2.witness_json(&ev, &verts) }));
            }
            let failures = uc2.table.iter().flatten().filter(|c| c.is_failure()).count();
            out.insert("uc2_failures".into(), json!(failures));
            pass = uc2.pass;
            let scan = finite_i3_scan(&ev, &verts, &uc2.table)?;
            out.insert("interference".into(), scan.to_json());
        }
    }
    out.insert("witnesses".into(), Value::Array(witnesses));
    out.insert("pass".into(), json!(pass));
    Ok(CheckReport {
        pass,
        json: Value::Object(out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::MAX_VERTICES;

    #[test]
    fn report_shape() {
        let r = check_logic(&FiniteLogic::boolean(3), MAX_VERTICES).unwrap();
        assert!(r.pass);
        assert_eq!(r.json["OS3"], "pass");
        assert_eq!(r.json["UC2"], "pass");
        assert_eq!(r.json["interference"]["max_i3"], "0");
        let bad = FiniteLogic::parse("block: 1 1 2").unwrap();
        let r = check_logic(&bad, MAX_VERTICES).unwrap();
        assert!(!r.pass);
        assert_eq!(r.json["OS3"], "fail");
        assert!(!r.json["witnesses"].as_array().unwrap().is_empty());
    }
}
