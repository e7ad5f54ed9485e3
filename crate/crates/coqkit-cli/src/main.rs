//! `coqkit` — command-line front end for exact computations on cyclically
//! ordered quivers: mutation, congruence invariants, properness checks,
//! braid-group actions, and bounded class exploration.
//!
//! Exit codes: 0 success, 1 parse error, 2 domain error, 3 resource limit.

use clap::{Args, Parser, Subcommand};
use coqkit::braid::{act_word, reversal_orbit, BraidWord, LinearlyOrderedQuiver};
use coqkit::cyclic::{Coq, CyclicOrdering, WindingSignature};
use coqkit::explore::{
    collision_scan, forkless_part, mutation_class, ClassReport, ExplorationLimits,
};
use coqkit::invariants::{alexander_lattice, alexander_polynomial, invariant_report};
use coqkit::ordering::{construct_ordering, wiggle_path};
use coqkit::proper::{
    admissible_homomorphism_capped, candidate_ordering_capped, is_proper_coq_capped,
    is_proper_in_wiggle_class_capped, is_proper_vertex, proper_mutate_capped,
    verify_totally_proper_capped, TpStatus,
};
use coqkit::{Error, Quiver, DEFAULT_CYCLE_CAP};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coqkit",
    about = "Exact computations on cyclically ordered quivers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every verb that reads a single quiver file.
#[derive(Args)]
struct QuiverInput {
    /// Quiver file ({"vertices": [...], "arrows": [[src, tgt, mult]], "order": [...]})
    file: String,
    /// Cyclic ordering, comma separated (overrides the file's "order")
    #[arg(long, value_name = "a,b,c")]
    order: Option<String>,
    /// Emit JSON instead of human-readable text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate the quiver at a vertex
    Mutate {
        #[command(flatten)]
        input: QuiverInput,
        /// Vertex to mutate at
        #[arg(long)]
        at: String,
    },
    /// Full congruence-invariant report (Alexander polynomial, Markov
    /// invariant, gcd multiset, Frobenius factors, requested lattices)
    Invariants {
        #[command(flatten)]
        input: QuiverInput,
        /// Lattice indices d_k to include (repeatable)
        #[arg(short, long = "k", value_name = "K")]
        ks: Vec<usize>,
    },
    /// Alexander polynomial of the quiver under the chosen ordering
    Alexander {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// Hermite-normal-form basis of the Alexander lattice d_k
    Lattice {
        #[command(flatten)]
        input: QuiverInput,
        #[arg(short, long = "k", value_name = "K")]
        k: usize,
    },
    /// Properness test: one vertex (with --vertex) or the whole COQ
    CheckProper {
        #[command(flatten)]
        input: QuiverInput,
        /// Test this vertex only
        #[arg(long)]
        vertex: Option<String>,
        /// Chordless-cycle cap (also COQKIT_CAP)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Proper mutation at a vertex (realizes properness by wiggles first)
    ProperMutate {
        #[command(flatten)]
        input: QuiverInput,
        /// Vertex to mutate at
        #[arg(long)]
        at: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Construct a cyclic ordering with prescribed winding numbers on the
    /// homology basis cycles of the underlying graph
    FindOrder {
        /// Quiver file
        file: String,
        /// Target windings, comma separated, one per homology basis cycle
        #[arg(long, value_name = "w1,w2,...", allow_hyphen_values = true)]
        winds: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a proper cyclic ordering (windings +-1 on oriented
    /// chordless cycles, 0 on the rest)
    CandidateOrder {
        /// Quiver file
        file: String,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Explicit wiggle sequence between two equivalent orderings
    WigglePath {
        #[command(flatten)]
        input: QuiverInput,
        /// Target ordering, comma separated
        #[arg(long, value_name = "a,b,c")]
        to: String,
    },
    /// Apply a signed braid word (e.g. "s2 S1 r3") to a linearly ordered
    /// quiver; lowercase s = sigma, uppercase S = sigma inverse, r = sign flip
    Braid {
        #[command(flatten)]
        input: QuiverInput,
        /// Braid word, applied left to right
        #[arg(long)]
        word: String,
    },
    /// Orbit of a linearly ordered quiver under sign reversals
    Orbit {
        #[command(flatten)]
        input: QuiverInput,
    },
    /// Breadth-first mutation class up to relabeling
    Explore {
        /// Quiver file
        file: String,
        /// Limits as depth=D,size=S,entry=E (any subset)
        #[arg(long, value_name = "depth=,size=,entry=")]
        limits: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Forkless part of the mutation class (forks expand only at their
    /// point of return)
    Forkless {
        /// Quiver file
        file: String,
        #[arg(long, value_name = "depth=,size=,entry=")]
        limits: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Group quiver files by Alexander polynomial and report which finer
    /// invariants separate each collision group
    Collide {
        /// Quiver files (two or more)
        files: Vec<String>,
        /// Lattice indices d_k to try as separators (repeatable)
        #[arg(short, long = "k", value_name = "K")]
        ks: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Bounded search certifying or refuting total properness
    VerifyTp {
        #[command(flatten)]
        input: QuiverInput,
        /// Maximum number of wiggle classes to examine
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 1,
                Error::Domain(_) => 2,
                Error::Resource(_) => 3,
            })
        }
    }
}

/// Read a quiver file and settle the ordering: --order wins, then the
/// file's "order" field, then the file vertex order (with a warning,
/// since every invariant here depends on the cyclic ordering).
fn load(path: &str, order_flag: Option<&str>) -> coqkit::Result<(Quiver, Vec<String>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {path}: {e}")))?;
    let (q, file_order) = Quiver::parse_json(&text)?;
    let order = if let Some(spec) = order_flag {
        parse_order(spec)?
    } else if let Some(o) = file_order {
        o
    } else {
        eprintln!(
            "warning: {path} has no \"order\"; using file vertex order \
             (invariants depend on the cyclic ordering)"
        );
        q.vertices.clone()
    };
    // Validate early so every verb gets a coherent (quiver, ordering) pair.
    coqkit::invariants::unipotent_companion(&q, &order)?;
    Ok((q, order))
}

fn parse_order(spec: &str) -> coqkit::Result<Vec<String>> {
    let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(|s| s.is_empty()) {
        return Err(Error::parse(format!("bad ordering spec {spec:?}")));
    }
    Ok(names)
}

fn coq_of(q: &Quiver, order: &[String]) -> coqkit::Result<Coq> {
    Coq::new(q.clone(), CyclicOrdering::new(order.to_vec()))
}

/// Chordless-cycle cap: --cap flag, then COQKIT_CAP, then the default.
fn cycle_cap(flag: Option<usize>) -> coqkit::Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("COQKIT_CAP") {
        Ok(s) => s
            .parse()
            .map_err(|_| Error::parse(format!("COQKIT_CAP={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_CYCLE_CAP),
    }
}

fn parse_limits(spec: Option<&str>) -> coqkit::Result<ExplorationLimits> {
    let mut limits = ExplorationLimits::default();
    let Some(spec) = spec else { return Ok(limits) };
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("bad limit {part:?}, expected key=value")))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad limit value in {part:?}")))?;
        match key.trim() {
            "depth" => limits.max_depth = value as usize,
            "size" => limits.max_quivers = value as usize,
            "entry" => limits.max_entry = value,
            other => {
                return Err(Error::parse(format!(
                    "unknown limit {other:?} (expected depth, size, or entry)"
                )))
            }
        }
    }
    Ok(limits)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn print_quiver(q: &Quiver, order: Option<&[String]>, json: bool) {
    if json {
        println!("{}", q.to_json(order));
    } else {
        let file = q.to_file(order);
        println!("vertices: {}", file.vertices.join(", "));
        for (s, t, m) in &file.arrows {
            if *m == 1 {
                println!("  {s} -> {t}");
            } else {
                println!("  {s} -> {t}  (x{m})");
            }
        }
        if let Some(o) = order {
            println!("order: {}", o.join(", "));
        }
    }
}

#[derive(Serialize)]
struct PolyOut {
    order: Vec<String>,
    alexander: String,
    coefficients: Vec<String>,
}

#[derive(Serialize)]
struct LatticeOut {
    order: Vec<String>,
    k: usize,
    /// HNF basis rows; column j is the coefficient of t^j.
    basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ProperOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proper_here: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proper_in_wiggle_class: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proper_coq: Option<bool>,
}

#[derive(Serialize)]
struct OrderOut {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    winds: Vec<i64>,
}

#[derive(Serialize)]
struct ClassOut {
    count: usize,
    complete: bool,
    representatives: Vec<serde_json::Value>,
    fingerprints: Vec<String>,
}

#[derive(Serialize)]
struct CollideOut {
    files: Vec<String>,
    groups: Vec<CollideGroupOut>,
}

#[derive(Serialize)]
struct CollideGroupOut {
    files: Vec<String>,
    alexander: String,
    separated_by: Vec<String>,
}

#[derive(Serialize)]
struct TpOut {
    status: String,
    explored: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_order: Option<Vec<String>>,
    admissible_homomorphism: bool,
}

fn class_out(report: &ClassReport) -> ClassOut {
    ClassOut {
        count: report.representatives.len(),
        complete: report.complete,
        representatives: report
            .representatives
            .iter()
            .map(|q| serde_json::from_str(&q.to_json(None)).expect("valid JSON"))
            .collect(),
        fingerprints: report.fingerprints.clone(),
    }
}

fn print_class(report: &ClassReport, json: bool) {
    if json {
        print_json(&class_out(report));
    } else {
        println!(
            "{} representative(s), {}",
            report.representatives.len(),
            if report.complete { "complete" } else { "incomplete (limits reached)" }
        );
        for (q, f) in report.representatives.iter().zip(&report.fingerprints) {
            println!("- [{}]  {}", f, q.to_json(None));
        }
    }
}

fn run(command: Command) -> coqkit::Result<()> {
    match command {
        Command::Mutate { input, at } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let m = q.mutate(&at)?;
            print_quiver(&m, Some(&order), input.json);
        }
        Command::Invariants { input, ks } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let ks = if ks.is_empty() { vec![2, 3] } else { ks };
            let report = invariant_report(&q, &order, &ks)?;
            if input.json {
                print_json(&report);
            } else {
                println!("order:            {}", report.order.join(", "));
                println!("alexander:        {}", report.alexander_pretty);
                println!("markov:           {}", report.markov);
                println!("det B:            {}", report.det_b);
                println!("rank B:           {}", report.rank_b);
                println!("gcd multiset:     [{}]", report.gcd_multiset.join(", "));
                println!("frobenius:        {}", report.frobenius_factors.join("  |  "));
                for (k, rows) in &report.lattices {
                    println!("d_{k} lattice basis (rows, coefficient of t^j in column j):");
                    for row in rows {
                        println!("  [{}]", row.join(", "));
                    }
                }
            }
        }
        Command::Alexander { input } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let delta = alexander_polynomial(&q, &order)?;
            if input.json {
                print_json(&PolyOut {
                    order,
                    alexander: delta.pretty("t"),
                    coefficients: delta.coeffs.iter().map(|c| c.to_string()).collect(),
                });
            } else {
                println!("{}", delta.pretty("t"));
            }
        }
        Command::Lattice { input, k } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let lattice = alexander_lattice(&q, &order, k)?;
            let rows: Vec<Vec<String>> = (0..lattice.basis.nrows)
                .map(|i| lattice.basis.row(i).iter().map(|x| x.to_string()).collect())
                .collect();
            if input.json {
                print_json(&LatticeOut { order, k, basis: rows });
            } else {
                for row in rows {
                    println!("[{}]", row.join(", "));
                }
            }
        }
        Command::CheckProper { input, vertex, cap } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let coq = coq_of(&q, &order)?;
            let cap = cycle_cap(cap)?;
            let out = if let Some(v) = vertex {
                ProperOut {
                    proper_here: Some(is_proper_vertex(&coq, &v)?),
                    proper_in_wiggle_class: Some(is_proper_in_wiggle_class_capped(
                        &coq, &v, cap,
                    )?),
                    vertex: Some(v),
                    proper_coq: None,
                }
            } else {
                ProperOut {
                    vertex: None,
                    proper_here: None,
                    proper_in_wiggle_class: None,
                    proper_coq: Some(is_proper_coq_capped(&coq, cap)?),
                }
            };
            if input.json {
                print_json(&out);
            } else if let Some(v) = &out.vertex {
                println!("vertex {v}: proper here = {}", out.proper_here.unwrap());
                println!(
                    "vertex {v}: proper somewhere in wiggle class = {}",
                    out.proper_in_wiggle_class.unwrap()
                );
            } else {
                println!("{}", out.proper_coq.unwrap());
            }
        }
        Command::ProperMutate { input, at, cap } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let coq = coq_of(&q, &order)?;
            let out = proper_mutate_capped(&coq, &at, cycle_cap(cap)?)?;
            print_quiver(&out.quiver, Some(out.ordering.as_slice()), input.json);
        }
        Command::FindOrder { file, winds, json } => {
            let (q, _) = load(&file, None)?;
            let basis = q.underlying_graph().homology_basis();
            let winds: Vec<i64> = winds
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse()
                        .map_err(|_| Error::parse(format!("bad winding {w:?}")))
                })
                .collect::<coqkit::Result<_>>()?;
            if winds.len() != basis.len() {
                return Err(Error::domain(format!(
                    "{} winding(s) given, but the homology basis has {} cycle(s): {}",
                    winds.len(),
                    basis.len(),
                    basis
                        .iter()
                        .map(|c| format!("({})", c.vertices.join(",")))
                        .collect::<Vec<_>>()
                        .join(" ")
                )));
            }
            let targets = WindingSignature { basis: basis.clone(), winds: winds.clone() };
            let found = construct_ordering(&q, &targets)?;
            let out = OrderOut {
                found: found.is_some(),
                order: found.map(|o| o.as_slice().to_vec()),
                basis: basis.into_iter().map(|c| c.vertices).collect(),
                winds,
            };
            if json {
                print_json(&out);
            } else if let Some(o) = &out.order {
                println!("{}", o.join(", "));
            } else {
                println!("no ordering realizes these windings");
            }
        }
        Command::CandidateOrder { file, cap, json } => {
            let (q, _) = load(&file, None)?;
            let found = candidate_ordering_capped(&q, cycle_cap(cap)?)?;
            let out = OrderOut {
                found: found.is_some(),
                order: found.map(|o| o.as_slice().to_vec()),
                basis: Vec::new(),
                winds: Vec::new(),
            };
            if json {
                print_json(&out);
            } else if let Some(o) = &out.order {
                println!("{}", o.join(", "));
            } else {
                println!("no proper candidate ordering exists");
            }
        }
        Command::WigglePath { input, to } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let from = CyclicOrdering::new(order);
            let to = CyclicOrdering::new(parse_order(&to)?);
            let path = wiggle_path(&q, &from, &to)?;
            if input.json {
                print_json(&path);
            } else if path.is_empty() {
                println!("orderings already coincide");
            } else {
                for w in path {
                    println!("swap {} <-> {}", w.pair.0, w.pair.1);
                }
            }
        }
        Command::Braid { input, word } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let loq = LinearlyOrderedQuiver::new(q, order)?;
            let word = BraidWord::parse(&word)?;
            let (out, witness) = act_word(&loq, &word)?;
            if input.json {
                #[derive(Serialize)]
                struct BraidOut {
                    quiver: serde_json::Value,
                    witness: Vec<Vec<String>>,
                }
                print_json(&BraidOut {
                    quiver: serde_json::from_str(&out.quiver.to_json(Some(&out.order)))
                        .expect("valid JSON"),
                    witness: (0..witness.g.nrows)
                        .map(|i| witness.g.row(i).iter().map(|x| x.to_string()).collect())
                        .collect(),
                });
            } else {
                print_quiver(&out.quiver, Some(&out.order), false);
            }
        }
        Command::Orbit { input } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let loq = LinearlyOrderedQuiver::new(q, order)?;
            let orbit = reversal_orbit(&loq);
            if input.json {
                let items: Vec<serde_json::Value> = orbit
                    .iter()
                    .map(|l| {
                        serde_json::from_str(&l.quiver.to_json(Some(&l.order)))
                            .expect("valid JSON")
                    })
                    .collect();
                print_json(&items);
            } else {
                println!("{} quiver(s) in the reversal orbit", orbit.len());
                for l in &orbit {
                    print_quiver(&l.quiver, Some(&l.order), false);
                }
            }
        }
        Command::Explore { file, limits, json } => {
            let (q, _) = load(&file, None)?;
            let report = mutation_class(&q, &parse_limits(limits.as_deref())?)?;
            print_class(&report, json);
        }
        Command::Forkless { file, limits, json } => {
            let (q, _) = load(&file, None)?;
            let report = forkless_part(&q, &parse_limits(limits.as_deref())?)?;
            print_class(&report, json);
        }
        Command::Collide { files, ks, json } => {
            if files.len() < 2 {
                return Err(Error::domain("collide needs at least two quiver files"));
            }
            let mut family = Vec::with_capacity(files.len());
            for f in &files {
                family.push(load(f, None)?.0);
            }
            let ks = if ks.is_empty() { vec![2] } else { ks };
            let report = collision_scan(&family, &ks)?;
            let out = CollideOut {
                files: files.clone(),
                groups: report
                    .groups
                    .iter()
                    .map(|g| CollideGroupOut {
                        files: g.indices.iter().map(|&i| files[i].clone()).collect(),
                        alexander: g.delta.clone(),
                        separated_by: g.separating.clone(),
                    })
                    .collect(),
            };
            if json {
                print_json(&out);
            } else if out.groups.is_empty() {
                println!("no collisions: all Alexander polynomials distinct");
            } else {
                for g in &out.groups {
                    println!("collision on {}:", g.alexander);
                    for f in &g.files {
                        println!("  {f}");
                    }
                    if g.separated_by.is_empty() {
                        println!("  not separated by the finer invariants tried");
                    } else {
                        println!("  separated by: {}", g.separated_by.join(", "));
                    }
                }
            }
        }
        Command::VerifyTp { input, budget, cap } => {
            let (q, order) = load(&input.file, input.order.as_deref())?;
            let cap = cycle_cap(cap)?;
            let coq = coq_of(&q, &order)?;
            let verdict = verify_totally_proper_capped(&coq, budget, cap)?;
            let admissible = admissible_homomorphism_capped(&q, cap)?.is_some();
            let out = match &verdict.status {
                TpStatus::Verified => TpOut {
                    status: "verified".into(),
                    explored: verdict.explored,
                    witness_vertex: None,
                    witness_order: None,
                    admissible_homomorphism: admissible,
                },
                TpStatus::Refuted { witness, vertex } => TpOut {
                    status: "refuted".into(),
                    explored: verdict.explored,
                    witness_vertex: Some(vertex.clone()),
                    witness_order: Some(witness.ordering.as_slice().to_vec()),
                    admissible_homomorphism: admissible,
                },
                TpStatus::BudgetExceeded => TpOut {
                    status: "budget-exceeded".into(),
                    explored: verdict.explored,
                    witness_vertex: None,
                    witness_order: None,
                    admissible_homomorphism: admissible,
                },
            };
            if input.json {
                print_json(&out);
            } else {
                match out.status.as_str() {
                    "verified" => println!(
                        "totally proper (verified; {} wiggle class(es) explored)",
                        out.explored
                    ),
                    "refuted" => println!(
                        "not totally proper: vertex {} is not proper in reachable ordering ({})",
                        out.witness_vertex.as_deref().unwrap_or("?"),
                        out.witness_order.as_deref().unwrap_or(&[]).join(", ")
                    ),
                    _ => println!(
                        "inconclusive: budget exhausted after {} wiggle class(es)",
                        out.explored
                    ),
                }
                println!("admissible quasi-Cartan companion exists: {admissible}");
            }
        }
    }
    Ok(())
}
