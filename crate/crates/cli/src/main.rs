//! `lat34`: census and analysis of finite connected graphs that are locally
//! arc-transitive of valence {3, 4} and have trivial edge kernel.
//!
//! Exit codes: 0 success (or match), 1 mismatch (validation failure,
//! comparison mismatch, non-isomorphic pair, unrecognized graph), 2 search
//! budget exceeded, 3 input error.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use lat34_core::graphs::graph_stats;
use lat34_core::subdouble::{recognize_unworthy, subdivided_double, subdivision, RecognitionResult};
use lat34_core::symmetry::{are_isomorphic, symmetry_report};
use lat34_core::{builtin_amalgams, compare_csv_text, emit, run_census_with};
use lat34_core::{CensusOptions, Graph};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lat34",
    version,
    about = "Census and analysis of locally arc-transitive graphs of valence {3, 4} \
             with trivial edge kernel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the built-in amalgams: group orders and isomorphism types,
    /// faithfulness, and triviality of the edge kernel.
    Validate {
        /// Check a single amalgam id (0..=18) instead of all of them.
        #[arg(long, value_name = "ID")]
        amalgam: Option<usize>,
    },
    /// Run the census up to a vertex bound and write one file per graph plus
    /// a census.csv summary into the output directory.
    Census {
        /// Keep graphs with at most this many vertices.
        #[arg(long, value_name = "N", default_value_t = 100)]
        max_vertices: usize,
        /// Restrict the run to this amalgam id (repeatable).
        #[arg(long = "amalgam", value_name = "ID")]
        amalgams: Vec<usize>,
        /// Keep going when an amalgam exhausts its search budget: write the
        /// graphs from the amalgams that completed and report the rest.
        /// Without this flag a blown budget aborts the run with no output.
        #[arg(long)]
        full: bool,
        /// Number of worker threads (default: one per core).
        #[arg(long, value_name = "K")]
        jobs: Option<usize>,
        /// Node budget for each per-amalgam subgroup search.
        #[arg(long, value_name = "NODES", default_value_t = 2_000_000_000)]
        node_budget: u64,
        /// Output directory, created if missing.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Print statistics and symmetry parameters of one graph file.
    Analyze { file: PathBuf },
    /// Compare a census directory's census.csv against the built-in
    /// reference table of the 42 graphs on at most 100 vertices.
    Compare {
        /// Directory containing census.csv.
        #[arg(long, value_name = "DIR")]
        census: PathBuf,
    },
    /// Decide whether two graph files are isomorphic.
    Isocheck { file1: PathBuf, file2: PathBuf },
    /// Print the subdivision of a graph (one new vertex per edge).
    Subdivide { file: PathBuf },
    /// Print the subdivided double of a connected cubic graph.
    Double { file: PathBuf },
    /// Classify a connected biregular {3, 4} graph by its duplicate
    /// neighborhoods: complete bipartite K_{3,4}, a subdivided double (the
    /// underlying cubic graph is printed), or worthy.
    Recognize { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // Anything else is a command-line input error.
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let code = match cli.command {
        Command::Validate { amalgam } => cmd_validate(amalgam),
        Command::Census {
            max_vertices,
            amalgams,
            full,
            jobs,
            node_budget,
            out,
        } => cmd_census(max_vertices, amalgams, full, jobs, node_budget, &out),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Compare { census } => cmd_compare(&census),
        Command::Isocheck { file1, file2 } => cmd_isocheck(&file1, &file2),
        Command::Subdivide { file } => cmd_subdivide(&file),
        Command::Double { file } => cmd_double(&file),
        Command::Recognize { file } => cmd_recognize(&file),
    };
    ExitCode::from(code)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_graph(path: &Path) -> Result<Graph, u8> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        3u8
    })?;
    Graph::parse_lat34(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        3u8
    })
}

fn cmd_validate(amalgam: Option<usize>) -> u8 {
    let all = builtin_amalgams();
    let picked: Vec<_> = match amalgam {
        Some(id) => match all.iter().find(|a| a.id == id) {
            Some(a) => vec![a],
            None => {
                eprintln!(
                    "error: amalgam id {id} is out of range (0..={})",
                    all.len() - 1
                );
                return 3;
            }
        },
        None => all.iter().collect(),
    };
    let mut failures = 0usize;
    for a in picked {
        let rep = a.validate();
        let (lo, bo, ro) = rep.computed_orders;
        let (ln, bn, rn) = &rep.computed_names;
        let status = if rep.passed() {
            "PASS"
        } else {
            failures += 1;
            "FAIL"
        };
        println!(
            "amalgam {:>2}: |L|={lo:<3} |B|={bo:<2} |R|={ro:<3} L={ln} B={bn} R={rn} \
             faithful={} trivial_edge_kernel={} {status}",
            a.id,
            yes_no(rep.faithful),
            yes_no(rep.trivial_edge_kernel),
        );
        for d in &rep.discrepancies {
            println!("    discrepancy: {d}");
        }
    }
    if failures == 0 {
        0
    } else {
        eprintln!("{failures} amalgam(s) failed validation");
        1
    }
}

fn cmd_census(
    max_vertices: usize,
    amalgams: Vec<usize>,
    full: bool,
    jobs: Option<usize>,
    node_budget: u64,
    out: &Path,
) -> u8 {
    if let Some(k) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("warning: worker pool already initialised ({e}); --jobs ignored");
        }
    }
    let opts = CensusOptions {
        max_vertices,
        amalgam_ids: if amalgams.is_empty() {
            None
        } else {
            Some(amalgams)
        },
        node_budget,
    };
    // Only input errors can surface here; budget blow-ups are collected.
    let run = match run_census_with(&opts) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    for ex in &run.exceeded {
        eprintln!(
            "amalgam {} exceeded its search budget: {}",
            ex.amalgam_id, ex.error
        );
    }
    if !run.exceeded.is_empty() && !full {
        eprintln!("no output written; rerun with --full to keep the amalgams that completed");
        return 2;
    }
    if let Err(e) = emit(&run.records, out) {
        eprintln!("error: {e}");
        return 3;
    }
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &run.records {
        *by_order.entry(r.order).or_insert(0) += 1;
    }
    for (order, count) in &by_order {
        println!("order {order:>3}: {count}");
    }
    println!(
        "{} graphs within {} vertices written to {}",
        run.records.len(),
        max_vertices,
        out.display()
    );
    if run.exceeded.is_empty() {
        0
    } else {
        2
    }
}

fn cmd_analyze(file: &Path) -> u8 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let stats = graph_stats(&g);
    println!("file: {}", file.display());
    println!("vertices: {}", g.vertex_count());
    println!("edges: {}", g.edge_count());
    let valences = stats
        .valence_profile
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    println!("valences (valence:count): {valences}");
    println!("connected: {}", yes_no(stats.connected));
    match stats.girth {
        Some(girth) => println!("girth: {girth}"),
        None => println!("girth: - (acyclic)"),
    }
    match stats.diameter {
        Some(d) => println!("diameter: {d}"),
        None => println!("diameter: - (disconnected)"),
    }
    println!("worthy: {}", yes_no(stats.worthy));
    println!(
        "configuration incidence structure (girth >= 6): {}",
        yes_no(stats.configuration_flag)
    );
    if g.is_biregular_34() && stats.connected {
        match symmetry_report(&g) {
            Ok(sym) => {
                println!("|Aut| = {}", sym.aut_order);
                println!(
                    "local action at a valence-3 vertex: {} (kernel order {})",
                    sym.local_action_v3, sym.vertex_kernel_orders.0
                );
                println!(
                    "local action at a valence-4 vertex: {} (kernel order {})",
                    sym.local_action_v4, sym.vertex_kernel_orders.1
                );
                println!("arc-transitivity levels: s3={} s4={}", sym.s_v, sym.s_u);
                println!("edge stabilizer order: {}", sym.edge_stab_order);
                println!("edge kernel order: {}", sym.edge_kernel_order);
                println!(
                    "locally arc-transitive: {}",
                    yes_no(sym.locally_arc_transitive)
                );
                println!("edge-transitive: {}", yes_no(sym.edge_transitive));
            }
            Err(e) => {
                eprintln!("error: symmetry analysis failed: {e}");
                return 3;
            }
        }
    } else {
        println!("symmetry analysis: skipped (needs a connected graph with valences 3 and 4 only)");
    }
    0
}

fn cmd_compare(census_dir: &Path) -> u8 {
    let path = census_dir.join("census.csv");
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return 3;
        }
    };
    let report = match compare_csv_text(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return 3;
        }
    };
    print!("{report}");
    if report.is_match() {
        println!("match");
        0
    } else {
        println!("mismatch");
        1
    }
}

fn cmd_isocheck(file1: &Path, file2: &Path) -> u8 {
    let g1 = match load_graph(file1) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let g2 = match load_graph(file2) {
        Ok(g) => g,
        Err(code) => return code,
    };
    if are_isomorphic(&g1, &g2) {
        println!("isomorphic");
        0
    } else {
        println!("not isomorphic");
        1
    }
}

fn cmd_subdivide(file: &Path) -> u8 {
    match load_graph(file) {
        Ok(g) => {
            print!("{}", subdivision(&g).to_lat34_string());
            0
        }
        Err(code) => code,
    }
}

fn cmd_double(file: &Path) -> u8 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match subdivided_double(&g) {
        Ok(d) => {
            print!("{}", d.to_lat34_string());
            0
        }
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            3
        }
    }
}

fn cmd_recognize(file: &Path) -> u8 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match recognize_unworthy(&g) {
        RecognitionResult::K34 => {
            println!("K_{{3,4}}");
            0
        }
        RecognitionResult::Double(lambda) => {
            println!(
                "subdivided double of a cubic graph on {} vertices",
                lambda.vertex_count()
            );
            print!("{}", lambda.to_lat34_string());
            0
        }
        RecognitionResult::NotUnworthy => {
            println!("worthy: no two vertices share a neighborhood");
            0
        }
        RecognitionResult::Malformed(reason) => {
            println!("unrecognized: {reason}");
            1
        }
    }
}
