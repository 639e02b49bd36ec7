//! Hand-built logics with known verdicts, and regression values for the
//! two-block pasting.

use num_traits::Zero;
use ucplab_finite::axioms::check_os_axioms;
use ucplab_finite::polytope::{vertices, MAX_VERTICES};
use ucplab_finite::rational::{frac, one, zero};
use ucplab_finite::report::check_logic;
use ucplab_finite::scan::finite_i3_scan;
use ucplab_finite::search::{classify, run_search, SearchConfig, Verdict};
use ucplab_finite::ucp::{check_uc1, check_uc2, conditional, Conditional};
use ucplab_finite::{EventStructure, FiniteLogic};

fn logic(blocks: &[Vec<usize>]) -> FiniteLogic {
    FiniteLogic::from_one_based(blocks).unwrap()
}

fn pasting() -> FiniteLogic {
    logic(&[vec![1, 2, 3], vec![3, 4, 5]])
}

#[test]
fn boolean_three_atoms() {
    let l = FiniteLogic::boolean(3);
    let ev = EventStructure::new(&l).unwrap();
    assert!(check_os_axioms(&ev).pass());
    let v = vertices(&l, MAX_VERTICES).unwrap();
    assert_eq!(v.len(), 3);
    assert!(check_uc1(&ev, &v).pass);
    let uc2 = check_uc2(&ev, &v, false);
    assert!(uc2.pass);

    // uniform state conditioned on {1,2}
    let uniform = vec![frac(1, 3); 3];
    let e = ev.event_of(&[0, 1]).unwrap();
    let nu = conditional(&ev, &uniform, e);
    assert_eq!(nu, Conditional::Unique(vec![frac(1, 2), frac(1, 2), zero()]));

    // conditioning on 𝟙 returns the vertex itself
    for (k, w) in v.iter().enumerate() {
        assert_eq!(uc2.table[ev.one()][k], Conditional::Unique(w.clone()));
    }

    let scan = finite_i3_scan(&ev, &v, &uc2.table).unwrap();
    assert!(scan.max_i2.is_zero() && scan.max_i3.is_zero());
    assert_eq!(scan.t_form_mismatches, 0);
}

#[test]
fn pasting_passes_os_and_uc1_but_not_uc2() {
    let l = pasting();
    let ev = EventStructure::new(&l).unwrap();
    let os = check_os_axioms(&ev);
    assert!(os.pass());
    assert!(os.derived.iter().all(|d| d.pass));
    let v = vertices(&l, MAX_VERTICES).unwrap();
    assert_eq!(v.len(), 5);
    assert!(check_uc1(&ev, &v).pass);

    let uc2 = check_uc2(&ev, &v, false);
    assert!(!uc2.pass);
    let (e, k) = uc2.witness.unwrap();
    assert_eq!(ev.label(e), "{1}");
    match &uc2.table[e][k] {
        Conditional::NotUnique(a, b) => {
            assert_ne!(a, b);
            // both are conditional states: they give atom 1 full weight
            assert_eq!((&a[0], &b[0]), (&one(), &one()));
        }
        c => panic!("expected two conditional states, got {c:?}"),
    }

    let rec = classify(&l, MAX_VERTICES);
    assert_eq!(rec.uc2, Verdict::Fail);
    assert!(rec.witnesses["uc2"]["conditionals"].is_array());
}

#[test]
fn pasting_scan_regression() {
    let l = pasting();
    let ev = EventStructure::new(&l).unwrap();
    let v = vertices(&l, MAX_VERTICES).unwrap();
    let uc2 = check_uc2(&ev, &v, false);
    let failures = uc2.table.iter().flatten().filter(|c| c.is_failure()).count();
    assert_eq!(failures, 16);
    let scan = finite_i3_scan(&ev, &v, &uc2.table).unwrap();
    assert_eq!(scan.pairs, 115);
    assert_eq!(scan.triples, 63);
    assert_eq!(scan.skipped, 82);
    assert_eq!(scan.t_form_checked, 16);
    assert_eq!(scan.t_form_mismatches, 0);
    assert!(scan.max_i2.is_zero() && scan.max_i3.is_zero());
}

#[test]
fn repeated_atom_fails_os() {
    let l = FiniteLogic::parse("block: 1 1 2\n").unwrap();
    let r = check_logic(&l, MAX_VERTICES).unwrap();
    assert!(!r.pass);
    assert_eq!(r.json["OS3"], "fail");
    let w = r.json["witnesses"].as_array().unwrap();
    assert_eq!(w[0]["axiom"], "OS3");
    assert!(r.json.get("UC1").is_none());
}

#[test]
fn forced_null_atom_fails_uc1() {
    // Block sums force atoms 5 and 6 to zero, so {5} looks like 0.
    let l = logic(&[vec![1, 2], vec![3, 4], vec![1, 3, 5], vec![2, 4, 6]]);
    let ev = EventStructure::new(&l).unwrap();
    assert!(check_os_axioms(&ev).pass());
    let v = vertices(&l, MAX_VERTICES).unwrap();
    assert!(v.iter().all(|w| w[4].is_zero() && w[5].is_zero()));
    let uc1 = check_uc1(&ev, &v);
    assert!(!uc1.pass);
    assert_eq!(uc1.witness, Some(("0".into(), "{5}".into())));
    let rec = classify(&l, MAX_VERTICES);
    assert_eq!((rec.uc1, rec.uc2), (Verdict::Fail, Verdict::NotRun));
}

#[test]
fn oversized_logics_are_skipped() {
    let rec = classify(&FiniteLogic::boolean(13), MAX_VERTICES);
    assert!(rec.status.starts_with("skipped: size"), "{}", rec.status);
    let rec = classify(&pasting(), 2);
    assert!(rec.status.starts_with("skipped: size"), "{}", rec.status);
}

#[test]
fn search_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let cfg = SearchConfig {
            max_atoms: 6,
            max_blocks: 3,
            block_size_min: 2,
            out: Some(dir.path().join(name)),
            ..SearchConfig::default()
        };
        let (_, summary) = run_search(&cfg).unwrap();
        (summary, std::fs::read(dir.path().join(name)).unwrap())
    };
    let (s1, a) = run("a.jsonl");
    let (s2, b) = run("b.jsonl");
    assert_eq!(s1, s2);
    assert_eq!(a, b);
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), s1.enumerated);
}
