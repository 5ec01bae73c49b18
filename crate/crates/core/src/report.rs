//! Deterministic plain-text reports. The full report is the golden-file
//! format: it covers verification (with diagnostics), the subobject
//! lattices, colon and torsion sets, every classification verdict, classical
//! zeros, multiplication status, and all quotients, so that any behavioral
//! change to a structure's tables shows up as a diff.

use crate::classify::{self, PhiFunction, TorsionReading};
use crate::construct;
use crate::parse::ParsedFile;
use crate::sets::SmallSet;
use crate::structure::{Hypermodule, Hyperring};
use crate::subobjects;
use crate::verify::{self, AxiomReport};
use std::fmt::Write as _;

pub fn fmt_set(labels: &[String], s: SmallSet) -> String {
    verify::fmt_set(labels, s)
}

pub fn fmt_tuple(labels: &[String], t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().map(|&i| labels[i].as_str()).collect();
    format!("({})", parts.join(","))
}

fn push_report(out: &mut String, report: &AxiomReport) {
    let groups = report.groups();
    let ok = groups.iter().filter(|(_, p)| *p).count();
    let _ = writeln!(
        out,
        "verify: {}/{} axiom groups pass{}",
        ok,
        groups.len(),
        if report.passed() { "" } else { " [FAIL]" }
    );
    for c in &report.checks {
        let _ = writeln!(
            out,
            "  [{}] {}{}",
            if c.passed { "ok" } else { "FAIL" },
            c.id,
            c.witness
                .as_ref()
                .map(|w| format!(": {w}"))
                .unwrap_or_default()
        );
    }
    for d in &report.diagnostics {
        let _ = writeln!(
            out,
            "  [note] {} {}{}",
            d.id,
            if d.passed { "holds" } else { "fails" },
            d.witness
                .as_ref()
                .map(|w| format!(": {w}"))
                .unwrap_or_default()
        );
    }
}

/// The `verify` subcommand view: axiom groups and diagnostics only.
pub fn verify_report(parsed: &ParsedFile) -> (String, bool) {
    let mut out = String::new();
    let mut all_ok = true;
    for r in &parsed.rings {
        let report = verify::verify_ring_axioms(r);
        let groups = report.groups();
        let ok = groups.iter().filter(|(_, p)| *p).count();
        let _ = writeln!(
            out,
            "ring {}: {}/{} axiom groups pass",
            r.name(),
            ok,
            groups.len()
        );
        for c in report.failures() {
            let _ = writeln!(
                out,
                "  [FAIL] {}: {}",
                c.id,
                c.witness.as_deref().unwrap_or("")
            );
            all_ok = false;
        }
        for d in &report.diagnostics {
            if !d.passed {
                let _ = writeln!(
                    out,
                    "  [note] {}: {}",
                    d.id,
                    d.witness.as_deref().unwrap_or("")
                );
            }
        }
    }
    for m in &parsed.modules {
        match verify::verify_module_axioms(m) {
            Err(e) => {
                let _ = writeln!(out, "module {}: SKIPPED ({e})", m.name());
                all_ok = false;
            }
            Ok(report) => {
                let _ = writeln!(
                    out,
                    "module {}: {} (unital={})",
                    m.name(),
                    if report.passed() { "pass" } else { "FAIL" },
                    m.unital()
                );
                for c in report.failures() {
                    let _ = writeln!(
                        out,
                        "  [FAIL] {}: {}",
                        c.id,
                        c.witness.as_deref().unwrap_or("")
                    );
                    all_ok = false;
                }
                for d in &report.diagnostics {
                    if !d.passed {
                        let _ = writeln!(
                            out,
                            "  [note] {}: {}",
                            d.id,
                            d.witness.as_deref().unwrap_or("")
                        );
                    }
                }
            }
        }
    }
    (out, all_ok)
}

fn ring_section(out: &mut String, r: &Hyperring) {
    let _ = writeln!(
        out,
        "== ring {} ({},{}) carrier {} ==",
        r.name(),
        r.m(),
        r.n(),
        fmt_set(r.labels(), r.full_set())
    );
    push_report(out, &verify::verify_ring_axioms(r));
    let ideals = subobjects::enumerate_hyperideals(r);
    let rendered: Vec<String> = ideals
        .iter()
        .map(|h| fmt_set(r.labels(), h.members))
        .collect();
    let _ = writeln!(out, "hyperideals ({}): {}", ideals.len(), rendered.join(" "));
    for x in 0..r.size() {
        let gen = subobjects::generated_hyperideal(r, x)
            .map(|h| fmt_set(r.labels(), h.members))
            .unwrap_or_else(|e| format!("error: {e}"));
        let _ = writeln!(out, "generated <{}> = {}", r.label(x), gen);
    }
}

fn module_section(out: &mut String, m: &Hypermodule) {
    let _ = writeln!(
        out,
        "== module {} over {} carrier {} unital={} ==",
        m.name(),
        m.ring().name(),
        fmt_set(m.labels(), m.full_set()),
        m.unital()
    );
    match verify::verify_module_axioms(m) {
        Err(e) => {
            let _ = writeln!(out, "verify: SKIPPED ({e})");
            return;
        }
        Ok(report) => {
            push_report(out, &report);
            if !report.passed() {
                return;
            }
        }
    }
    let rl = m.ring().labels();
    let ml = m.labels();
    let subs = subobjects::enumerate_subhypermodules(m);
    let rendered: Vec<String> = subs.iter().map(|h| fmt_set(ml, h.members)).collect();
    let _ = writeln!(out, "subhypermodules ({}): {}", subs.len(), rendered.join(" "));
    let maxes: Vec<String> = subobjects::maximal_subhypermodules(m)
        .iter()
        .map(|h| fmt_set(ml, h.members))
        .collect();
    let _ = writeln!(out, "maximal: {}", maxes.join(" "));
    for h in &subs {
        let _ = writeln!(
            out,
            "S_{} = {}",
            fmt_set(ml, h.members),
            fmt_set(rl, subobjects::colon_sn(m, h.members).members)
        );
        let per_elem: Vec<String> = (0..m.size())
            .map(|a| {
                format!(
                    "{}->{}",
                    m.label(a),
                    fmt_set(rl, subobjects::colon_na(m, h.members, a).members)
                )
            })
            .collect();
        let _ = writeln!(
            out,
            "N_a for N={}: {}",
            fmt_set(ml, h.members),
            per_elem.join(" ")
        );
    }
    for a in 0..m.size() {
        if a == m.zero() {
            continue;
        }
        let f = subobjects::torsion_fm(m, a).expect("a is nonzero");
        let _ = writeln!(out, "F_{} = {}", m.label(a), fmt_set(rl, f.members));
    }
    let _ = writeln!(out, "faithful: {}", subobjects::is_faithful(m));
    let _ = writeln!(
        out,
        "torsion-free: exact={} contains={}",
        classify::is_torsion_free(m, TorsionReading::Exact),
        classify::is_torsion_free(m, TorsionReading::Contains)
    );
    let registry = PhiFunction::registry();
    for h in &subs {
        if h.members == m.full_set() {
            continue;
        }
        let prime = match classify::is_prime(m, h.members) {
            Ok(v) => v.to_string(),
            Err(e) => format!("error({e})"),
        };
        let classical = classify::is_classical_prime(m, h.members).unwrap();
        let weakly = classify::is_weakly_classical_prime(m, h.members).unwrap();
        let phis: Vec<String> = registry
            .iter()
            .map(|phi| {
                let v = match classify::is_phi_classical_prime(m, h.members, phi) {
                    Ok(v) => v.to_string(),
                    Err(_) => "err".to_string(),
                };
                format!("phi[{}]={}", phi.name, v)
            })
            .collect();
        let _ = writeln!(
            out,
            "classify {}: prime={} classical={} weakly={} {}",
            fmt_set(ml, h.members),
            prime,
            classical,
            weakly,
            phis.join(" ")
        );
    }
    for h in &subs {
        if h.members == m.full_set() {
            continue;
        }
        let zeros = match classify::find_classical_zeros(
            m,
            h.members,
            classify::DEFAULT_ZERO_SEARCH_CAP,
        ) {
            Err(e) => format!("skipped ({e})"),
            Ok(ws) if ws.is_empty() => "none".to_string(),
            Ok(ws) => {
                let rendered: Vec<String> = ws
                    .iter()
                    .map(|w| format!("{}{}", fmt_tuple(rl, &w.scalars), fmt_set(ml, w.subset)))
                    .collect();
                rendered.join(" ")
            }
        };
        let _ = writeln!(out, "classical zeros of {}: {}", fmt_set(ml, h.members), zeros);
    }
    let _ = writeln!(
        out,
        "multiplication module: {}",
        classify::is_multiplication_module(m)
    );
    for h in &subs {
        match construct::quotient(m, h.members) {
            Err(e) => {
                let _ = writeln!(out, "quotient by {}: error {e}", fmt_set(ml, h.members));
            }
            Ok(q) => {
                let cosets: Vec<String> =
                    q.cosets.iter().map(|&c| fmt_set(ml, c)).collect();
                let proj = match &q.projection {
                    Ok(h) => format!("projection kernel {}", fmt_set(ml, h.kernel())),
                    Err(_) => "projection not a homomorphism".to_string(),
                };
                let _ = writeln!(
                    out,
                    "quotient by {}: cosets {} ({})",
                    fmt_set(ml, h.members),
                    cosets.join(" "),
                    proj
                );
            }
        }
    }
}

/// The golden-file report for one parsed structure file.
pub fn full_report(tag: &str, parsed: &ParsedFile) -> String {
    let mut out = format!("structure report: {tag}\n");
    for r in &parsed.rings {
        ring_section(&mut out, r);
    }
    for m in &parsed.modules {
        module_section(&mut out, m);
    }
    out
}
