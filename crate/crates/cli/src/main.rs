//! `hyperprime`: parse, verify, enumerate, classify, construct, and run the
//! property harness over finite hyperstructure files.
//!
//! Exit codes: 0 success/pass, 1 verification or property failure, 2 usage
//! or parse error.

use clap::{Parser, Subcommand};
use hyperprime::classify::{self, PhiFunction};
use hyperprime::construct;
use hyperprime::harness;
use hyperprime::parse::{self, ParsedFile};
use hyperprime::report;
use hyperprime::sets::SmallSet;
use hyperprime::structure::Hypermodule;
use hyperprime::subobjects;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hyperprime", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Canonical scan order everywhere; reports are byte-stable.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Emit machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every structure in a file against the defining axioms.
    Verify { file: PathBuf },
    /// Print the subhypermodule lattice (or the ring's hyperideals).
    Subs {
        file: PathBuf,
        #[arg(long)]
        module: String,
        /// List the hyperideals of the module's ring instead.
        #[arg(long)]
        ideals: bool,
    },
    /// Print S_N, or N_a when --elem is given.
    Colon {
        file: PathBuf,
        #[arg(long)]
        module: String,
        /// Comma-separated element labels of the subset N.
        #[arg(long)]
        sub: String,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Decide one of the prime-style classes for a subhypermodule.
    Classify {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        sub: String,
        /// One of: prime, classical, weakly, phi.
        #[arg(long)]
        kind: String,
        /// Registry member for --kind phi: empty, zero, ideal, id.
        #[arg(long)]
        phi: Option<String>,
        /// Print the first counterexample when the verdict is false.
        #[arg(long)]
        witness: bool,
    },
    /// List the classical (m,n)-zeros of a subhypermodule.
    Zeros {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        sub: String,
        /// Carrier size cap for the subset search.
        #[arg(long)]
        max_carrier: Option<usize>,
    },
    /// Build the quotient by a subhypermodule.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long)]
        sub: String,
        /// Write the quotient (with its ring) as a structure file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Build the product of two modules from the file.
    Product {
        file: PathBuf,
        /// Two module names, comma separated.
        #[arg(long)]
        modules: String,
        /// Use the product-ring construction instead of a shared ring.
        #[arg(long)]
        product_ring: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Check a map between two modules for the homomorphism identities.
    Hom {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Pairs `source:target` separated by commas, e.g. "0:0,1:2".
        #[arg(long)]
        map: String,
    },
    /// Run the theorem suite over a directory of structure files.
    Harness {
        dir: PathBuf,
        /// Comma-separated theorem ids (prefixes allowed, e.g. 5.4).
        #[arg(long)]
        theorem: Option<String>,
        /// Carrier-size cap for derived corpus structures.
        #[arg(long)]
        max_carrier: Option<usize>,
    },
}

struct CliError {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: 2,
    }
}

fn failure(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn load(path: &Path) -> Result<ParsedFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse::parse_structure(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn find_module<'a>(parsed: &'a ParsedFile, name: &str) -> Result<&'a Hypermodule, CliError> {
    parsed
        .module_by_name(name)
        .ok_or_else(|| usage(format!("no module named `{name}` in the file")))
}

fn parse_subset(m: &Hypermodule, spec: &str) -> Result<SmallSet, CliError> {
    let mut out = SmallSet::empty();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        match m.element_by_label(token) {
            Some(i) => out = out.insert(i),
            None => return Err(usage(format!("unknown element label `{token}`"))),
        }
    }
    if out.is_empty() {
        return Err(usage("subset is empty"));
    }
    Ok(out)
}

fn require_proper_sub(m: &Hypermodule, sub: SmallSet) -> Result<(), CliError> {
    if !subobjects::is_subhypermodule(m, sub).unwrap_or(false) {
        return Err(usage("subset is not a subhypermodule"));
    }
    if sub == m.full_set() {
        return Err(usage("subhypermodule must be proper"));
    }
    Ok(())
}

fn cap_from_env(default: usize) -> usize {
    std::env::var("HYPERPRIME_MAX_CARRIER")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(default)
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Verify { file } => {
            let parsed = load(file)?;
            let (text, ok) = report::verify_report(&parsed);
            print!("{text}");
            if ok {
                Ok(())
            } else {
                Err(failure("verification failed"))
            }
        }
        Command::Subs {
            file,
            module,
            ideals,
        } => {
            let parsed = load(file)?;
            let m = find_module(&parsed, module)?;
            if *ideals {
                let r = m.ring();
                for h in subobjects::enumerate_hyperideals(r) {
                    println!("{}", report::fmt_set(r.labels(), h.members));
                }
            } else {
                let maxes: Vec<SmallSet> = subobjects::maximal_subhypermodules(m)
                    .iter()
                    .map(|h| h.members)
                    .collect();
                for h in subobjects::enumerate_subhypermodules(m) {
                    let mark = if maxes.contains(&h.members) {
                        " (maximal)"
                    } else if h.members == m.full_set() {
                        " (improper)"
                    } else {
                        ""
                    };
                    println!("{}{mark}", report::fmt_set(m.labels(), h.members));
                }
            }
            Ok(())
        }
        Command::Colon {
            file,
            module,
            sub,
            elem,
        } => {
            let parsed = load(file)?;
            let m = find_module(&parsed, module)?;
            let n = parse_subset(m, sub)?;
            match elem {
                Some(label) => {
                    let a = m
                        .element_by_label(label)
                        .ok_or_else(|| usage(format!("unknown element label `{label}`")))?;
                    let h = subobjects::colon_na(m, n, a);
                    println!(
                        "N_a = {} (role: {:?})",
                        report::fmt_set(m.ring().labels(), h.members),
                        h.role
                    );
                }
                None => {
                    let h = subobjects::colon_sn(m, n);
                    println!(
                        "S_N = {} (role: {:?})",
                        report::fmt_set(m.ring().labels(), h.members),
                        h.role
                    );
                }
            }
            Ok(())
        }
        Command::Classify {
            file,
            module,
            sub,
            kind,
            phi,
            witness,
        } => {
            let parsed = load(file)?;
            let m = find_module(&parsed, module)?;
            let q = parse_subset(m, sub)?;
            require_proper_sub(m, q)?;
            let render_cx = |cx: &classify::Counterexample| {
                format!(
                    "counterexample: scalars {} element {}",
                    report::fmt_tuple(m.ring().labels(), &cx.scalars),
                    m.label(cx.a)
                )
            };
            let (name, verdict, cx) = match kind.as_str() {
                "prime" => {
                    let v = classify::is_prime(m, q).map_err(|e| failure(e.to_string()))?;
                    ("prime", v, None)
                }
                "classical" => {
                    let cx = classify::classical_prime_counterexample(m, q)
                        .map_err(|e| failure(e.to_string()))?;
                    ("classical-prime", cx.is_none(), cx)
                }
                "weakly" => {
                    let cx = classify::weakly_classical_prime_counterexample(m, q)
                        .map_err(|e| failure(e.to_string()))?;
                    ("weakly-classical-prime", cx.is_none(), cx)
                }
                "phi" => {
                    let phi_name = phi.as_deref().unwrap_or("empty");
                    let phi = PhiFunction::by_name(phi_name)
                        .ok_or_else(|| usage(format!("unknown phi `{phi_name}`")))?;
                    let cx = classify::phi_classical_prime_counterexample(m, q, &phi)
                        .map_err(|e| failure(e.to_string()))?;
                    ("phi-classical-prime", cx.is_none(), cx)
                }
                other => return Err(usage(format!("unknown kind `{other}`"))),
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "kind": name,
                        "module": module,
                        "sub": report::fmt_set(m.labels(), q),
                        "verdict": verdict,
                        "witness": cx.as_ref().map(render_cx),
                    })
                );
            } else {
                println!("{name}: {verdict}");
                if *witness {
                    if let Some(cx) = &cx {
                        println!("{}", render_cx(cx));
                    }
                }
            }
            Ok(())
        }
        Command::Zeros {
            file,
            module,
            sub,
            max_carrier,
        } => {
            let parsed = load(file)?;
            let m = find_module(&parsed, module)?;
            let q = parse_subset(m, sub)?;
            require_proper_sub(m, q)?;
            if !classify::is_weakly_classical_prime(m, q).map_err(|e| failure(e.to_string()))? {
                eprintln!("warning: subhypermodule is not weakly classical prime");
            }
            let cap = max_carrier.unwrap_or_else(|| cap_from_env(classify::DEFAULT_ZERO_SEARCH_CAP));
            let zeros =
                classify::find_classical_zeros(m, q, cap).map_err(|e| failure(e.to_string()))?;
            if zeros.is_empty() {
                println!("no classical zeros");
            }
            for w in zeros {
                println!(
                    "scalars {} subset {}",
                    report::fmt_tuple(m.ring().labels(), &w.scalars),
                    report::fmt_set(m.labels(), w.subset)
                );
            }
            Ok(())
        }
        Command::Quotient {
            file,
            module,
            sub,
            emit,
        } => {
            let parsed = load(file)?;
            let m = find_module(&parsed, module)?;
            let n = parse_subset(m, sub)?;
            let q = construct::quotient(m, n).map_err(|e| failure(e.to_string()))?;
            println!(
                "quotient {} has {} cosets",
                q.module.name(),
                q.module.size()
            );
            for (i, c) in q.cosets.iter().enumerate() {
                println!(
                    "  {} = {}",
                    q.module.label(i),
                    report::fmt_set(m.labels(), *c)
                );
            }
            match &q.projection {
                Ok(h) => println!(
                    "projection kernel: {}",
                    report::fmt_set(m.labels(), h.kernel())
                ),
                Err(e) => println!("projection is not a homomorphism: {e}"),
            }
            if let Some(path) = emit {
                std::fs::write(path, parse::serialize_file(&q.module))
                    .map_err(|e| failure(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Product {
            file,
            modules,
            product_ring,
            emit,
        } => {
            let parsed = load(file)?;
            let names: Vec<&str> = modules.split(',').map(str::trim).collect();
            if names.len() != 2 {
                return Err(usage("--modules expects exactly two names"));
            }
            let m1 = find_module(&parsed, names[0])?;
            let m2 = find_module(&parsed, names[1])?;
            let p = if *product_ring {
                construct::product_module_over_product_ring(m1, m2)
                    .map_err(|e| failure(e.to_string()))?
            } else {
                construct::product_same_ring(m1, m2).map_err(|e| failure(e.to_string()))?
            };
            println!(
                "product {} over {} has {} elements",
                p.name(),
                p.ring().name(),
                p.size()
            );
            if let Some(path) = emit {
                std::fs::write(path, parse::serialize_file(&p))
                    .map_err(|e| failure(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Hom { file, from, to, map } => {
            let parsed = load(file)?;
            let m1 = find_module(&parsed, from)?;
            let m2 = find_module(&parsed, to)?;
            let mut mapping = vec![usize::MAX; m1.size()];
            for pair in map.split(',') {
                let (src, tgt) = pair
                    .split_once(':')
                    .ok_or_else(|| usage(format!("bad map entry `{pair}`")))?;
                let s = m1
                    .element_by_label(src.trim())
                    .ok_or_else(|| usage(format!("unknown source label `{src}`")))?;
                let t = m2
                    .element_by_label(tgt.trim())
                    .ok_or_else(|| usage(format!("unknown target label `{tgt}`")))?;
                mapping[s] = t;
            }
            if mapping.contains(&usize::MAX) {
                return Err(usage("map must cover every source element"));
            }
            match construct::check_homomorphism(&mapping, m1, m2) {
                Ok(h) => {
                    println!(
                        "homomorphism; kernel {} epi={} mono={}",
                        report::fmt_set(m1.labels(), h.kernel()),
                        h.is_epi(),
                        h.is_mono()
                    );
                    Ok(())
                }
                Err(e) => Err(failure(format!("{e}"))),
            }
        }
        Command::Harness {
            dir,
            theorem,
            max_carrier,
        } => {
            let mut base = Vec::new();
            let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
                .map_err(|e| usage(format!("cannot read {}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "hyp"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(usage("no .hyp files in the directory"));
            }
            for p in paths {
                base.extend(load(&p)?.modules);
            }
            let cap = max_carrier.unwrap_or_else(|| cap_from_env(harness::DEFAULT_CORPUS_CAP));
            let corpus = harness::build_corpus(base, cap).map_err(|e| failure(e.to_string()))?;
            let filter: Option<Vec<String>> = theorem
                .as_ref()
                .map(|t| t.split(',').map(|s| s.trim().to_string()).collect());
            let results = harness::run_harness(&corpus, filter.as_deref());
            let (ok, counts) = harness::summarize(&results);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&results).unwrap());
            } else {
                for r in &results {
                    println!(
                        "{:<18} {:<28} {}{}",
                        r.theorem,
                        r.structure,
                        r.status,
                        r.witness
                            .as_ref()
                            .map(|w| format!(" ({w})"))
                            .unwrap_or_default()
                    );
                }
                let rendered: Vec<String> =
                    counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("summary: {}", rendered.join(" "));
            }
            if ok {
                Ok(())
            } else {
                Err(failure("harness reported failures"))
            }
        }
    }
}
