use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use geobound::blocks::Family;
use geobound::census::{
    enumeration_estimate_secs, run_census, verify, CensusContext, CensusError, CensusRecord, EdgeGluing, FEASIBLE_MAX_N,
};
use geobound::coxeter::{
    arithmeticity, builtin_diagram_text, parse_diagram, polytope_vertices, validate_q4_constraints, CoxeterDiagram,
    VertexKind, BUILTIN_DIAGRAMS,
};
use geobound::graphs::FactorGraph;

/// Directory searched for diagram transcriptions before the built-in copies.
const DATA_ENV: &str = "GEOBOUND_DATA";

#[derive(Parser)]
#[command(name = "geobound", version, about = "Cusped hyperbolic 3-manifolds that bound geometrically")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, signature, vertices and arithmeticity of a Coxeter diagram.
    Coxeter(CoxeterArgs),
    /// Enumerate 4-factors, build and verify M_G, promote to W_G and D(W_G).
    Census(CensusArgs),
    /// Run one named verification suite.
    Verify {
        /// Suite id, e.g. cusps-B or recovery.
        id: String,
    },
}

#[derive(Args)]
struct CoxeterArgs {
    /// Diagram file, or a name looked up in $GEOBOUND_DATA and then among the built-ins.
    #[arg(long)]
    diagram: String,
    /// Check the constraints that pin down the Q4 transcription.
    #[arg(long)]
    validate: bool,
    /// Apply the cyclic-product arithmeticity criterion.
    #[arg(long)]
    arithmeticity: bool,
    /// Eigenvalue tolerance for the signature.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = Family::Arithmetic)]
    family: Family,
    /// Largest vertex count.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory for `<family>.jsonl` and `<family>.csv`.
    #[arg(long, default_value = "census-out")]
    out: PathBuf,
    /// Relative tolerance for the floating volume ratio across records.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for random vertex relabelings checked against the complex code.
    #[arg(long)]
    seed: Option<u64>,
    /// How the blocks are glued along an edge.
    #[arg(long, value_enum, default_value_t = GluingArg::Crossed)]
    gluing: GluingArg,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum GluingArg {
    Identity,
    Crossed,
}

impl From<GluingArg> for EdgeGluing {
    fn from(g: GluingArg) -> Self {
        match g {
            GluingArg::Identity => EdgeGluing::Identity,
            GluingArg::Crossed => EdgeGluing::Crossed,
        }
    }
}

fn main() -> ExitCode {
    // exit quietly when stdout is a closed pipe, as with `geobound ... | head`
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coxeter(a) => cmd_coxeter(&a),
        Command::Census(a) => cmd_census(&a),
        Command::Verify { id } => cmd_verify(&id),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Diagram source text for a path, a data-directory name or a built-in name.
fn diagram_source(arg: &str) -> Result<(String, String), String> {
    let path = Path::new(arg);
    if path.is_file() {
        return fs::read_to_string(path).map(|t| (arg.to_string(), t)).map_err(|e| format!("{arg}: {e}"));
    }
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let candidate = Path::new(&dir).join(format!("{arg}.txt"));
        if candidate.is_file() {
            let text = fs::read_to_string(&candidate).map_err(|e| format!("{}: {e}", candidate.display()))?;
            return Ok((candidate.display().to_string(), text));
        }
    }
    builtin_diagram_text(arg)
        .map(|t| (format!("built-in {arg}"), t.to_string()))
        .ok_or_else(|| format!("no diagram `{arg}`; built-ins: {}", BUILTIN_DIAGRAMS.join(", ")))
}

fn names(d: &CoxeterDiagram, idx: &[usize]) -> String {
    idx.iter().map(|&i| d.nodes()[i].as_str()).collect::<Vec<_>>().join("")
}

fn cmd_coxeter(a: &CoxeterArgs) -> Result<bool, String> {
    let (source, text) = diagram_source(&a.diagram)?;
    let d = parse_diagram(&text).map_err(|e| format!("{source}: {e}"))?;
    println!("diagram: {source}");
    println!("nodes: {}", d.nodes().join(" "));
    println!("gram matrix:");
    match d.gram_exact() {
        Ok(g) => {
            for row in g.rows() {
                println!("  [{}]", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
            }
        }
        Err(_) => {
            for row in d.gram_f64().rows() {
                println!("  [{}]", row.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(", "));
            }
        }
    }
    let sig = d.gram_f64().signature(a.tol).map_err(|e| e.to_string())?;
    println!("signature (pos, neg, zero): {sig} at tol {:e}", a.tol);
    let hyperbolic = sig.neg == 1;
    let dim = sig.pos;
    let mut ok = true;
    if hyperbolic {
        let vertices = polytope_vertices(&d, dim);
        let finite: Vec<String> =
            vertices.iter().filter(|v| v.kind == VertexKind::Finite).map(|v| names(&d, &v.witness)).collect();
        let ideal: Vec<String> =
            vertices.iter().filter(|v| v.kind == VertexKind::Ideal).map(|v| names(&d, &v.witness)).collect();
        println!("dimension: {dim}");
        println!("finite vertices ({}): {}", finite.len(), finite.join(" "));
        println!("ideal vertices ({}): {}", ideal.len(), ideal.join(" "));
    } else {
        println!("not hyperbolic: no vertex enumeration");
    }
    if a.validate {
        let report = validate_q4_constraints(&d);
        for c in &report.checks {
            println!("{} {}: {} ({})", pass(c.passed), c.name, c.reason, c.detail);
        }
        println!("constraints: {}", pass(report.passed()));
        ok &= report.passed();
    }
    if a.arithmeticity {
        let r = arithmeticity(&d);
        println!("arithmeticity: {}", r.verdict);
        if let Some(c) = &r.certificate {
            println!("certificate: cycle {} has product {} ({:?})", c.cycle.join("-"), c.product, c.violation);
        }
        if r.certificate.is_none() {
            println!("simple cycles checked: {}", r.cycles_checked);
        }
        if let Some(note) = &r.note {
            println!("note: {note}");
        }
    }
    Ok(ok)
}

fn read_previous(path: &Path) -> Result<Vec<CensusRecord>, String> {
    if !path.is_file() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| format!("{}: {e}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CensusRecord =
            serde_json::from_str(&line).map_err(|e| format!("{} line {}: {e}", path.display(), i + 1))?;
        out.push(rec);
    }
    Ok(out)
}

fn cmd_census(a: &CensusArgs) -> Result<bool, String> {
    if a.max_n > FEASIBLE_MAX_N {
        return Err(format!(
            "--max-n {} is beyond the feasible range (at most {FEASIBLE_MAX_N}); enumeration alone would take about {:.0} s",
            a.max_n,
            enumeration_estimate_secs(a.max_n)
        ));
    }
    if !(a.tol > 0.0) {
        return Err(format!("--tol must be positive, got {}", a.tol));
    }
    if let Some(jobs) = a.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().map_err(|e| e.to_string())?;
    }
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    let jsonl = a.out.join(format!("{}.jsonl", a.family));
    let csv = a.out.join(format!("{}.csv", a.family));
    let previous: Vec<CensusRecord> =
        read_previous(&jsonl)?.into_iter().filter(|r| r.family == a.family.to_string()).collect();
    if !previous.is_empty() {
        println!("resuming: {} records in {}", previous.len(), jsonl.display());
    }
    let ctx = CensusContext::with_gluing(a.family, a.gluing.into()).map_err(|e| e.to_string())?;
    let mut sink = OpenOptions::new().create(true).append(true).open(&jsonl).map_err(|e| e.to_string())?;
    let mut io_error = None;
    let mut records: Vec<CensusRecord> = previous.iter().filter(|r| r.n <= a.max_n).cloned().collect();
    let summary = run_census(&ctx, a.max_n, &previous, |r| {
        let line = serde_json::to_string(r).expect("records serialize");
        if let Err(e) = writeln!(sink, "{line}").and_then(|_| sink.flush()) {
            io_error.get_or_insert(e);
        }
        records.push(r.clone());
    });
    if let Some(e) = io_error {
        return Err(format!("{}: {e}", jsonl.display()));
    }
    fs::write(&csv, summary.to_csv()).map_err(|e| format!("{}: {e}", csv.display()))?;

    print!("{}", summary.to_csv());
    println!("top colors N: {}", summary.top_colors);
    println!("records: {} accepted of {}", summary.accepted, summary.records);
    for r in records.iter().filter(|r| !r.accepted) {
        println!("FAIL {} n={}: {}", r.graph_code, r.n, r.diagnosis.join("; "));
    }
    println!(
        "{} distinct complex codes: {} for {} graphs",
        pass(summary.injective),
        summary.distinct_codes,
        summary.accepted
    );
    println!(
        "{} chi(W_G)/n constant: {}",
        pass(summary.k_constant),
        summary.chi_per_vertex.clone().unwrap_or_else(|| "none".into())
    );
    let accepted: Vec<&CensusRecord> = records.iter().filter(|r| r.accepted).collect();
    let spread = accepted.windows(2).map(|w| w[0].ratio_k.relative_diff(w[1].ratio_k)).fold(0.0, f64::max);
    let k_ok = spread <= a.tol;
    match summary.ratio_k {
        Some(k) => println!("{} K = {k} (relative spread {spread:.1e}, tol {:e})", pass(k_ok), a.tol),
        None => println!("K: no manifolds in range"),
    }
    let mut ok = summary.passed() && k_ok;
    if let Some(seed) = a.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = 0;
        for r in &accepted {
            let f = FactorGraph::from_mates(r.factor.clone()).map_err(|e| e.to_string())?;
            let mut perm: Vec<usize> = (0..f.n()).collect();
            perm.shuffle(&mut rng);
            if !ctx.relabel_invariant(&f, &perm).map_err(|e: CensusError| e.to_string())? {
                bad += 1;
            }
        }
        println!("{} relabel invariance (seed {seed}): {bad} of {} codes changed", pass(bad == 0), accepted.len());
        ok &= bad == 0;
    }
    println!("records: {}", jsonl.display());
    println!("summary: {}", csv.display());
    Ok(ok)
}

fn cmd_verify(id: &str) -> Result<bool, String> {
    let checks = verify(id).map_err(|e| e.to_string())?;
    let mut ok = true;
    for c in &checks {
        ok &= c.passed;
        if c.detail.is_empty() {
            println!("{} {}", pass(c.passed), c.name);
        } else {
            println!("{} {}: {}", pass(c.passed), c.name, c.detail);
        }
    }
    println!("{id}: {}", pass(ok));
    Ok(ok)
}
