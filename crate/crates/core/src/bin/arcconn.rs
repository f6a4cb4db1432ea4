use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arcconn::connectivity::GirthCycleWitness;
use arcconn::families::{all_family_matches, Orientation};
use arcconn::io::{emit_digraph6, emit_edge_list, parse_any};
use arcconn::verify::{
    audit_readings, check_graph, default_cap, run_sweep, run_sweep_checkpointed,
    write_counterexamples, write_records_csv, SweepFilters, SweepProgress, SweepReport, SweepSpec,
    SweepSummary,
};
use arcconn::{
    arc_connectivity, generate, girth, girth_cycles, lambda_prime_exact, lambda_prime_exists, xi,
    Cycle, DefinitionReading, Digraph, Family, FamilyParams, RestrictedCutCertificate, XiResult,
};

const EXIT_OK: u8 = 0;
const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "arcconn",
    version,
    about = "Restricted arc-connectivity of oriented graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, girth, λ, λ', ξ and their witnesses.
    Params {
        /// Edge list or digraph6 file (`-` for stdin).
        file: PathBuf,
        #[arg(long, default_value_t = DefinitionReading::OriginalHost)]
        reading: DefinitionReading,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every applicable clause on one graph; exits 1 if one fails.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DefinitionReading::OriginalHost)]
        reading: DefinitionReading,
    },
    /// Check every graph in a range of orders, exhaustively or by sampling.
    Sweep(SweepArgs),
    /// Run an exhaustive sweep under both readings and compare verdicts.
    Audit {
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long)]
        json: bool,
    },
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Edges,
    D6,
}

#[derive(Args)]
struct SweepArgs {
    /// Order range `a..b` (inclusive) or a single order.
    #[arg(long, value_parser = parse_range)]
    n: (usize, usize),
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DefinitionReading::OriginalHost)]
    reading: DefinitionReading,
    /// Write records.csv, counterexamples.d6 and summary.json here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only check graphs of this girth; `any` checks every strong graph with a cycle.
    #[arg(long, default_value = "4")]
    girth: String,
    /// Largest order allowed in exhaustive mode (default from the environment, else 6).
    #[arg(long)]
    cap: Option<usize>,
    /// Persist progress here and resume from it if present.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = 1 << 20)]
    chunk: u64,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Generate a family member.
    Gen {
        family: Family,
        /// Ear-set sizes, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        params: Vec<usize>,
        #[arg(long)]
        xz: Option<Orientation>,
        #[arg(long)]
        yv: Option<Orientation>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutFormat::Edges)]
        format: OutFormat,
    },
    /// Report which families a graph belongs to, with role maps.
    Match { file: PathBuf },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = |_| format!("expected `a..b` or a number, got `{s}`");
    match s.split_once("..") {
        Some((a, b)) => Ok((
            a.trim().parse().map_err(bad)?,
            b.trim().parse().map_err(bad)?,
        )),
        None => {
            let n = s.trim().parse().map_err(bad)?;
            Ok((n, n))
        }
    }
}

fn read_graph(path: &Path) -> Result<Digraph, String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    parse_any(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct ParamsReport {
    n: usize,
    arcs: Vec<(usize, usize)>,
    strong: bool,
    girth: Option<usize>,
    girth_cycles: Vec<Cycle>,
    lambda: Option<usize>,
    lambda_prime: Option<usize>,
    lambda_prime_connected: Option<bool>,
    certificate: Option<RestrictedCutCertificate>,
    girth_cycle_witness: Option<GirthCycleWitness>,
    xi: Option<XiResult>,
    reading: DefinitionReading,
}

fn params_report(d: &Digraph, reading: DefinitionReading) -> Result<ParamsReport, String> {
    let strong = d.n() >= 1 && d.is_strong();
    let cert = if strong && girth(d).is_some() {
        Some(lambda_prime_exact(d, reading).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(ParamsReport {
        n: d.n(),
        arcs: d.arcs().map(|a| (a.tail, a.head)).collect(),
        strong,
        girth: girth(d),
        girth_cycles: girth_cycles(d).unwrap_or_default(),
        lambda: arc_connectivity(d).ok(),
        lambda_prime: cert.as_ref().and_then(|c| c.value()),
        lambda_prime_connected: cert.as_ref().map(|c| c.is_connected()),
        girth_cycle_witness: lambda_prime_exists(d).ok().flatten(),
        certificate: cert,
        xi: xi(d).ok(),
        reading,
    })
}

fn or_undefined<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "undefined".into(), |v| v.to_string())
}

fn print_params(r: &ParamsReport) {
    println!("n: {}", r.n);
    println!("arcs: {}", r.arcs.len());
    println!("strong: {}", r.strong);
    println!("girth: {}", or_undefined(r.girth));
    println!("lambda: {}", or_undefined(r.lambda));
    match (&r.certificate, r.lambda_prime) {
        (Some(_), Some(v)) => println!("lambda_prime: {v}"),
        (Some(_), None) => println!("lambda_prime: nonexistent"),
        _ => println!("lambda_prime: undefined"),
    }
    match &r.xi {
        Some(x) => println!("xi: {} (cycle {}, {:?}-degrees)", x.value, x.cycle, x.side),
        None => println!("xi: undefined"),
    }
    if let Some(cut) = r.certificate.as_ref().and_then(|c| c.cut()) {
        let arcs: Vec<String> = cut.cut.iter().map(ToString::to_string).collect();
        println!("cut: {{{}}}", arcs.join(","));
        println!("component: {}", cut.component);
        println!("outside_arc: {}", cut.outside_arc);
    }
    if let Some(w) = &r.girth_cycle_witness {
        println!(
            "girth_cycle_witness: {} with outside arc {}",
            w.cycle, w.arc
        );
    }
    println!("reading: {}", r.reading);
}

fn print_summary(s: &SweepSummary) {
    println!("graphs seen: {}", s.graphs_seen);
    println!("strong: {}", s.strong);
    println!("checked: {}", s.checked);
    println!("lambda'-connected: {}", s.lambda_prime_connected);
    for (family, count) in &s.family_counts {
        println!("family {family}: {count}");
    }
    println!(
        "girth-4 class (n>=6): {} = {} family members + {} lambda'-connected",
        s.girth4_class, s.girth4_class_family_members, s.girth4_class_lambda_prime_connected
    );
    for (name, t) in [
        ("characterization", s.characterization),
        ("bounds", s.bounds),
        ("family_consistency", s.family_consistency),
    ] {
        println!(
            "{name}: pass {} fail {} n/a {}",
            t.pass, t.fail, t.not_applicable
        );
    }
    println!("counterexamples: {}", s.counterexamples);
}

fn write_outputs(dir: &Path, report: &SweepReport) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let csv = fs::File::create(dir.join("records.csv"))?;
    write_records_csv(&report.records, io::BufWriter::new(csv)).map_err(io::Error::other)?;
    let ce = fs::File::create(dir.join("counterexamples.d6"))?;
    write_counterexamples(&report.counterexamples, io::BufWriter::new(ce))?;
    let summary = serde_json::json!({
        "spec": report.spec,
        "summary": report.summary,
        "counterexamples": report.counterexamples,
    });
    fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&summary)?,
    )?;
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<u8, String> {
    let (a, b) = args.n;
    let mut spec = match args.mode {
        Mode::Exhaustive => SweepSpec::exhaustive(a, b),
        Mode::Random => SweepSpec::random(a, b, args.samples, args.seed),
    }
    .with_reading(args.reading);
    spec.cap = args.cap.unwrap_or_else(default_cap);
    spec.keep_records = args.out.is_some();
    spec.filters = SweepFilters {
        require_strong: true,
        girth: match args.girth.as_str() {
            "any" => None,
            g => Some(g.parse().map_err(|_| format!("invalid girth `{g}`"))?),
        },
    };
    let report = match &args.checkpoint {
        Some(path) => match run_sweep_checkpointed(&spec, path, args.chunk, None) {
            Ok(SweepProgress::Done(r)) => *r,
            Ok(SweepProgress::Paused { .. }) => unreachable!("no chunk limit was set"),
            Err(e) => return Err(e.to_string()),
        },
        None => run_sweep(&spec).map_err(|e| e.to_string())?,
    };
    for r in &report.counterexamples {
        eprintln!("counterexample: {}", r.id);
    }
    print_summary(&report.summary);
    if let Some(dir) = &args.out {
        write_outputs(dir, &report).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    Ok(if report.counterexamples.is_empty() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Params {
            file,
            reading,
            json,
        } => {
            let d = read_graph(&file)?;
            let report = params_report(&d, reading)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                );
            } else {
                print_params(&report);
            }
            Ok(EXIT_OK)
        }
        Command::Check { file, reading } => {
            let d = read_graph(&file)?;
            let rec = check_graph(&d, reading);
            println!(
                "{}",
                serde_json::to_string_pretty(&rec).map_err(|e| e.to_string())?
            );
            Ok(if rec.failed() {
                EXIT_COUNTEREXAMPLE
            } else {
                EXIT_OK
            })
        }
        Command::Sweep(args) => sweep(args),
        Command::Audit { n: (a, b), json } => {
            let audit = audit_readings(&SweepSpec::exhaustive(a, b)).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&audit).map_err(|e| e.to_string())?
                );
            } else {
                println!("checked: {}", audit.checked);
                println!(
                    "characterization differs: {}",
                    audit.characterization_differs
                );
                println!("bounds differs: {}", audit.bounds_differs);
                println!(
                    "family_consistency differs: {}",
                    audit.family_consistency_differs
                );
                println!("lambda_prime differs: {}", audit.lambda_prime_differs);
                for id in &audit.differing {
                    println!("differs: {id}");
                }
            }
            let failures = audit.original.counterexamples + audit.residual.counterexamples;
            Ok(if failures == 0 {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        Command::Family(FamilyCommand::Gen {
            family,
            params,
            xz,
            yv,
            out,
            format,
        }) => {
            if params.len() != family.set_count() {
                return Err(format!(
                    "{family} takes {} set sizes, got {}",
                    family.set_count(),
                    params.len()
                ));
            }
            let mut sizes = [0; 4];
            sizes[..params.len()].copy_from_slice(&params);
            let mut p = FamilyParams::new(family, sizes);
            match (family.has_xz(), xz) {
                (true, Some(o)) => p = p.with_xz(o),
                (false, Some(_)) => return Err(format!("{family} has no xz pair")),
                _ => {}
            }
            match (family.has_yv(), yv) {
                (true, Some(o)) => p = p.with_yv(o),
                (false, Some(_)) => return Err(format!("{family} has no yv pair")),
                _ => {}
            }
            let d = generate(&p).map_err(|e| e.to_string())?;
            let text = match format {
                OutFormat::Edges => emit_edge_list(&d),
                OutFormat::D6 => emit_digraph6(&d) + "\n",
            };
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?
                }
                None => io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string())?,
            }
            Ok(EXIT_OK)
        }
        Command::Family(FamilyCommand::Match { file }) => {
            let d = read_graph(&file)?;
            let matches = all_family_matches(&d);
            if matches.is_empty() {
                println!("none");
            }
            for m in &matches {
                println!("{m}");
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
