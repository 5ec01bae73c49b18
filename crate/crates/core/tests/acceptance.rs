//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use hyperprime::classify::{self, PhiFunction};
use hyperprime::harness::{self, PropertyResult};
use hyperprime::parse::{self, ParsedFile};
use hyperprime::report;
use hyperprime::sets::SmallSet;
use hyperprime::structure::{ActionTable, HyperOpTable, Hypermodule, Hyperring};
use hyperprime::subobjects;
use hyperprime::verify;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture file")
}

fn base_modules() -> Vec<Hypermodule> {
    ["fix_a.hyp", "fix_b.hyp", "z2.hyp", "z4.hyp", "z2xz2.hyp"]
        .iter()
        .flat_map(|name| parse::parse_structure(&fixture(name)).unwrap().modules)
        .collect()
}

fn corpus() -> harness::Corpus {
    harness::build_corpus(base_modules(), harness::DEFAULT_CORPUS_CAP).unwrap()
}

fn set(elems: &[usize]) -> SmallSet {
    elems.iter().copied().collect()
}

#[test]
fn criterion_1_bundled_example_parses_verifies_and_classifies() {
    let start = Instant::now();
    let parsed = parse::parse_structure(&fixture("fix_a.hyp")).unwrap();
    assert_eq!(parsed.rings.len(), 1);
    assert_eq!(parsed.modules.len(), 1);
    let ring_report = verify::verify_ring_axioms(&parsed.rings[0]);
    assert!(
        ring_report.passed(),
        "ring clauses failed: {}",
        ring_report.failure_summary()
    );
    let m = &parsed.modules[0];
    assert!(!m.unital());
    let module_report = verify::verify_module_axioms(m).unwrap();
    assert!(
        module_report.passed(),
        "module clauses failed: {}",
        module_report.failure_summary()
    );
    assert!(classify::is_classical_prime(m, set(&[0, 2])).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: pass (parse+verify+classify in {elapsed:?})");
}

#[test]
fn criterion_2_phi_reductions_are_exact_over_the_corpus() {
    let corpus = corpus();
    let empty = PhiFunction::empty();
    let zero = PhiFunction::zero();
    let mut checked = 0usize;
    for entry in &corpus.entries {
        let m = &entry.module;
        for h in subobjects::enumerate_subhypermodules(m) {
            if h.members == m.full_set() {
                continue;
            }
            let classical = classify::is_classical_prime(m, h.members).unwrap();
            let weakly = classify::is_weakly_classical_prime(m, h.members).unwrap();
            assert_eq!(
                classify::is_phi_classical_prime(m, h.members, &empty).unwrap(),
                classical,
                "phi-empty reduction broke on {} sub {:?}",
                entry.id,
                h.members
            );
            assert_eq!(
                classify::is_phi_classical_prime(m, h.members, &zero).unwrap(),
                weakly,
                "phi-zero reduction broke on {} sub {:?}",
                entry.id,
                h.members
            );
            checked += 1;
        }
    }
    assert!(checked > 100, "only {checked} proper subhypermodules checked");
    println!("criterion 2: pass ({checked} proper subhypermodules, zero discrepancies)");
}

#[test]
fn criterion_3_enumeration_matches_naive_subset_filter() {
    let corpus = corpus();
    let mut modules_checked = 0usize;
    let mut rings_checked = 0usize;
    for entry in &corpus.entries {
        let m = &entry.module;
        if m.size() <= 6 {
            let fast: Vec<SmallSet> = subobjects::enumerate_subhypermodules(m)
                .iter()
                .map(|h| h.members)
                .collect();
            let mut naive: Vec<SmallSet> = (1..1u64 << m.size())
                .map(SmallSet::from_bits)
                .filter(|&s| subobjects::is_subhypermodule(m, s).unwrap())
                .collect();
            naive.sort_by_key(|s| s.canonical_key());
            assert_eq!(fast, naive, "module {}", entry.id);
            modules_checked += 1;
        }
        let r = m.ring();
        if r.size() <= 6 {
            let fast: Vec<SmallSet> = subobjects::enumerate_hyperideals(r)
                .iter()
                .map(|h| h.members)
                .collect();
            let mut naive: Vec<SmallSet> = (1..1u64 << r.size())
                .map(SmallSet::from_bits)
                .filter(|&s| subobjects::is_hyperideal(r, s).unwrap())
                .collect();
            naive.sort_by_key(|s| s.canonical_key());
            assert_eq!(fast, naive, "ring of {}", entry.id);
            rings_checked += 1;
        }
    }
    assert!(modules_checked >= 20);
    assert!(rings_checked >= 20);
    println!(
        "criterion 3: pass ({modules_checked} modules, {rings_checked} rings vs naive filter)"
    );
}

fn assert_no_failures(results: &[PropertyResult]) {
    let fails: Vec<&PropertyResult> = results.iter().filter(|r| r.is_fail()).collect();
    assert!(fails.is_empty(), "failures: {fails:#?}");
}

fn assert_nonvacuous(results: &[PropertyResult], theorem: &str) {
    assert!(
        results
            .iter()
            .any(|r| (r.theorem == theorem || r.theorem.starts_with(&format!("{theorem}.")))
                && r.status == "pass"),
        "theorem {theorem} has no non-vacuous instance"
    );
}

#[test]
fn criterion_4_classifier_equivalences_hold_over_the_corpus() {
    let start = Instant::now();
    let corpus = corpus();
    let filter: Vec<String> = ["prime-definitions", "3.3", "3.4", "5.9"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let results = harness::run_harness(&corpus, Some(&filter));
    assert_no_failures(&results);
    for theorem in ["prime-definitions", "3.3", "3.4", "5.9"] {
        assert_nonvacuous(&results, theorem);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 4: pass ({} results, zero failures, {elapsed:?})",
        results.len()
    );
}

#[test]
fn criterion_5_transport_suite_passes_or_documents_vacuity() {
    let corpus = corpus();
    let results = harness::run_harness(&corpus, None);
    assert_no_failures(&results);
    for theorem in [
        "4.3", "4.4", "4.5", "4.6", "4.8", "4.9", "4.10", "4.12", "4.13", "5.3", "5.4", "5.5",
        "5.6", "5.7", "5.8", "5.10", "5.11", "5.12", "5.13", "3.5", "3.6", "pi-kernel",
    ] {
        assert_nonvacuous(&results, theorem);
    }
    // every skip carries its reason
    for r in &results {
        if r.status == "skipped" {
            assert!(r.witness.is_some(), "undocumented skip: {r:?}");
        }
    }
    let (ok, counts) = harness::summarize(&results);
    assert!(ok);
    println!("criterion 5: pass (status counts {counts:?})");
}

/// Apply one random single-entry mutation to the example file's tables.
/// Returns the mutated structures unless construction itself rejects them.
fn mutate_fix_a(rng: &mut ChaCha8Rng) -> Result<ParsedFile, String> {
    let parsed = parse::parse_structure(&fixture("fix_a.hyp")).unwrap();
    let ring = &parsed.rings[0];
    let module = &parsed.modules[0];
    let which = rng.gen_range(0..4usize);
    let random_subset = |rng: &mut ChaCha8Rng, size: usize, old: SmallSet| -> SmallSet {
        loop {
            let bits = rng.gen_range(1..1u64 << size);
            if bits != old.bits() {
                return SmallSet::from_bits(bits);
            }
        }
    };
    let random_singleton = |rng: &mut ChaCha8Rng, size: usize, old: SmallSet| -> SmallSet {
        loop {
            let v = SmallSet::singleton(rng.gen_range(0..size));
            if v != old {
                return v;
            }
        }
    };
    let (new_ring, new_module);
    match which {
        0 => {
            // ring f' entry
            let mut entries = ring.f().entries().to_vec();
            let i = rng.gen_range(0..entries.len());
            entries[i] = random_subset(rng, ring.size(), entries[i]);
            let f = HyperOpTable::new("f'", ring.m(), ring.size(), entries)
                .map_err(|e| e.to_string())?;
            new_ring = Hyperring::new(
                ring.name().to_string(),
                ring.m(),
                ring.n(),
                ring.labels().to_vec(),
                f,
                ring.g().clone(),
                ring.zero(),
                ring.one(),
            )
            .map_err(|e| e.to_string())?;
            new_module = rebuild_module(module, Arc::new(new_ring));
        }
        1 => {
            // ring g' entry, kept singleton so the table stays an operation
            let mut entries = ring.g().entries().to_vec();
            let i = rng.gen_range(0..entries.len());
            entries[i] = random_singleton(rng, ring.size(), entries[i]);
            let g = HyperOpTable::new("g'", ring.n(), ring.size(), entries)
                .map_err(|e| e.to_string())?;
            new_ring = Hyperring::new(
                ring.name().to_string(),
                ring.m(),
                ring.n(),
                ring.labels().to_vec(),
                ring.f().clone(),
                g,
                ring.zero(),
                ring.one(),
            )
            .map_err(|e| e.to_string())?;
            new_module = rebuild_module(module, Arc::new(new_ring));
        }
        2 => {
            // module f entry
            let mut entries = module.f().entries().to_vec();
            let i = rng.gen_range(0..entries.len());
            entries[i] = random_subset(rng, module.size(), entries[i]);
            let f = HyperOpTable::new("f", module.m(), module.size(), entries)
                .map_err(|e| e.to_string())?;
            new_ring = (**module.ring()).clone();
            new_module = Hypermodule::new(
                module.name().to_string(),
                Arc::new(new_ring.clone()),
                module.labels().to_vec(),
                f,
                module.g().clone(),
                module.zero(),
                module.unital(),
            )
            .map_err(|e| e.to_string())?;
        }
        _ => {
            // module action entry
            let mut entries = module.g().entries().to_vec();
            let i = rng.gen_range(0..entries.len());
            entries[i] = random_subset(rng, module.size(), entries[i]);
            let g = ActionTable::new(
                module.n() - 1,
                module.ring().size(),
                module.size(),
                entries,
            )
            .map_err(|e| e.to_string())?;
            new_ring = (**module.ring()).clone();
            new_module = Hypermodule::new(
                module.name().to_string(),
                Arc::new(new_ring.clone()),
                module.labels().to_vec(),
                module.f().clone(),
                g,
                module.zero(),
                module.unital(),
            )
            .map_err(|e| e.to_string())?;
        }
    }
    Ok(ParsedFile {
        rings: vec![new_module.ring().clone()],
        modules: vec![new_module],
    })
}

fn rebuild_module(module: &Hypermodule, ring: Arc<Hyperring>) -> Hypermodule {
    Hypermodule::new(
        module.name().to_string(),
        ring,
        module.labels().to_vec(),
        module.f().clone(),
        module.g().clone(),
        module.zero(),
        module.unital(),
    )
    .expect("tables unchanged")
}

#[test]
fn criterion_6_single_entry_mutations_are_detected() {
    let parsed = parse::parse_structure(&fixture("fix_a.hyp")).unwrap();
    let baseline = report::full_report("fix_a", &parsed);
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b5a_11);
    let mut caught_by_verify = 0usize;
    let mut caught_by_golden = 0usize;
    for trial in 0..20 {
        match mutate_fix_a(&mut rng) {
            Err(_) => {
                // construction-level rejection counts as failed verification
                caught_by_verify += 1;
            }
            Ok(mutated) => {
                let ring_ok = verify::verify_ring_axioms(&mutated.rings[0]).passed();
                let module_ok = ring_ok
                    && verify::verify_module_axioms(&mutated.modules[0])
                        .map(|r| r.passed())
                        .unwrap_or(false);
                if !ring_ok || !module_ok {
                    caught_by_verify += 1;
                    continue;
                }
                let mutated_report = report::full_report("fix_a", &mutated);
                assert_ne!(
                    baseline, mutated_report,
                    "mutation {trial} passed verification and left the golden unchanged"
                );
                caught_by_golden += 1;
            }
        }
    }
    assert_eq!(caught_by_verify + caught_by_golden, 20);
    println!(
        "criterion 6: pass ({caught_by_verify} mutations fail verification, \
         {caught_by_golden} change the golden report)"
    );
}

#[test]
fn criterion_7_emitted_constructions_roundtrip() {
    let corpus = corpus();
    let mut checked = 0usize;
    for entry in &corpus.entries {
        if matches!(entry.kind, harness::CorpusKind::Base) {
            continue;
        }
        let m = &entry.module;
        let text = parse::serialize_file(m);
        let again = parse::parse_structure(&text)
            .unwrap_or_else(|e| panic!("{} does not re-parse: {e}", entry.id));
        assert_eq!(again.modules.len(), 1);
        let m2 = &again.modules[0];
        assert!(m.ring().same_tables(m2.ring()), "{} ring drifted", entry.id);
        assert_eq!(m.labels(), m2.labels(), "{}", entry.id);
        assert_eq!(m.f().entries(), m2.f().entries(), "{}", entry.id);
        assert_eq!(m.g().entries(), m2.g().entries(), "{}", entry.id);
        assert_eq!(m.zero(), m2.zero(), "{}", entry.id);
        assert_eq!(m.unital(), m2.unital(), "{}", entry.id);
        checked += 1;
    }
    assert!(checked >= 30, "only {checked} derived structures");
    println!("criterion 7: pass ({checked} quotients/products round-tripped)");
}
