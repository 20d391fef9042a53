use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gridmis::encodings::{band_nimis_via_compositions, composition_classes, dump_strings, StringKind};
use gridmis::formulas::{
    average_2xn_exact, band_counts, golden_ratio_ref, mis_count_2xn, mobius_counts, nimis_2xn,
    nimis_tube_3xn, size_distribution_2xn_cyclic, total_size_2xn, FixedDecimal,
};
use gridmis::harness::{
    run_verification_suite, trend_report, verify_instance, write_cases, write_trend, OutputFormat,
    RunConfig,
};
use gridmis::mis::{average_size, count_mis_dp, for_each_mis, size_polynomial_dp};
use gridmis::symmetry::nimis_report;
use gridmis::{Error, GridFamily, GridGraph};

#[derive(Parser)]
#[command(name = "gridmis", version, about = "Maximal independent sets of grid-like graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format: human, csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Largest vertex count the enumerator will accept.
    #[arg(long, global = true)]
    budget_vertices: Option<usize>,
    /// Largest slice width the transfer counter will accept.
    #[arg(long, global = true)]
    budget_width: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key = value file read before the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Instance {
    /// grid, fat-cylinder, thin-cylinder, mobius or torus.
    #[arg(long)]
    family: GridFamily,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the adjacency list.
    Build(Instance),
    /// Stream every MIS, one per line, in canonical order.
    Enumerate(Instance),
    /// Count MIS's with the transfer counter.
    Count(Instance),
    /// Count MIS's up to automorphism.
    Nimis {
        #[command(flatten)]
        instance: Instance,
        /// Also print one line per orbit.
        #[arg(long)]
        orbits: bool,
    },
    /// Exact average MIS size.
    Avgsize(Instance),
    /// Number of MIS's of each size.
    Distribution(Instance),
    /// Closed-form values for a 2×n or 3×n instance.
    Formulas(Instance),
    /// Cross-check engines and formulas.
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        family: Option<GridFamily>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// NIMIS/MIS ratios and average-size-per-slice sequences.
    Trend,
    /// List the strings of one kind (x, y, z, e, o, b).
    Strings {
        #[arg(long)]
        kind: StringKind,
        #[arg(long)]
        n: usize,
    },
    /// List compositions of n into k parts up to rotation and reflection.
    Compositions {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityViolated { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn load_config(global: &Global) -> Result<RunConfig, Failure> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_kv(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = &global.format {
        cfg.set("format", f)?;
    }
    if let Some(v) = global.budget_vertices {
        cfg.budgets.vertices = v;
    }
    if let Some(w) = global.budget_width {
        cfg.budgets.width = w;
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn graph(i: &Instance) -> Result<GridGraph, Failure> {
    Ok(GridGraph::build(i.family, i.m, i.n)?)
}

fn emit(cfg: &RunConfig, human: String, value: serde_json::Value) -> String {
    match cfg.format {
        OutputFormat::Json => format!("{value:#}\n"),
        OutputFormat::Csv => {
            let obj = value.as_object().cloned().unwrap_or_default();
            let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
            let vals: Vec<String> = obj
                .values()
                .map(|v| v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string()))
                .collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        OutputFormat::Human => human,
    }
}

fn decimal(r: &gridmis::formulas::ExactRational) -> String {
    FixedDecimal::from_rational(r, 30).to_string_places(12)
}

fn formulas(i: &Instance) -> Result<(String, serde_json::Value), Failure> {
    let n = i.n;
    match (i.family, i.m) {
        (GridFamily::Grid, 2) => {
            let avg = average_2xn_exact(n)?;
            let nimis = nimis_2xn(n).map(|v| v.to_string()).unwrap_or_else(|_| "-".into());
            Ok((
                format!(
                    "mis-count: {}\nnimis-count: {nimis}\ntotal-size: {}\naverage-size: {avg} ({})\n",
                    mis_count_2xn(n)?,
                    total_size_2xn(n)?,
                    decimal(&avg)
                ),
                json!({"mis-count": mis_count_2xn(n)?.to_string(), "nimis-count": nimis,
                       "total-size": total_size_2xn(n)?.to_string(), "average-size": avg.to_string()}),
            ))
        }
        (GridFamily::ThinCylinder, 3) => {
            let v = nimis_tube_3xn(n)?;
            Ok((format!("nimis-count: {v}\n"), json!({"nimis-count": v.to_string()})))
        }
        (family @ (GridFamily::FatCylinder | GridFamily::Mobius), 2) => {
            let c = if family == GridFamily::FatCylinder {
                band_counts(n)?
            } else {
                mobius_counts(n)?
            };
            let mut dist = Vec::new();
            for r in 1..=n {
                let k = size_distribution_2xn_cyclic(family, n, r)?;
                if k != Default::default() {
                    dist.push(format!("{r}:{k}"));
                }
            }
            let mut human = format!(
                "mis-count: {}\ntotal-size: {}\naverage-size: {} ({})\nsize-distribution: {}\n",
                c.mis_count,
                c.total_size,
                c.average,
                decimal(&c.average),
                dist.join(" ")
            );
            let mut value = json!({"mis-count": c.mis_count.to_string(), "total-size": c.total_size.to_string(),
                                   "average-size": c.average.to_string(), "size-distribution": dist.join(" ")});
            if family == GridFamily::FatCylinder {
                let nimis = band_nimis_via_compositions(n)?;
                human.push_str(&format!("nimis-count: {nimis}\n"));
                value["nimis-count"] = json!(nimis.to_string());
            }
            Ok((human, value))
        }
        (family, m) => Err(Failure::Usage(format!(
            "no closed forms for {family} with m={m} (grid, fat-cylinder and mobius need m=2; thin-cylinder needs m=3)"
        ))),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = load_config(&cli.global)?;
    let b = cfg.budgets;
    let text = match &cli.command {
        Command::Build(i) => {
            let g = graph(i)?;
            let human = g.export_adjacency();
            emit(&cfg, human, json!({"vertices": g.vertex_count(), "edges": g.edge_count(),
                                      "adjacency": g.export_adjacency()}))
        }
        Command::Enumerate(i) => {
            let g = graph(i)?;
            let mut lines = Vec::new();
            for_each_mis(&g, b, |s| lines.push(s.export_line(&g)))?;
            match cfg.format {
                OutputFormat::Json => format!("{:#}\n", json!(lines)),
                _ => lines.iter().map(|l| format!("{l}\n")).collect(),
            }
        }
        Command::Count(i) => {
            let c = count_mis_dp(&graph(i)?, b)?;
            emit(&cfg, format!("{c}\n"), json!({"count": c.to_string()}))
        }
        Command::Nimis { instance, orbits } => {
            let g = graph(instance)?;
            let r = nimis_report(&g, b)?;
            let mut human = format!("{}\n", r.count());
            if *orbits {
                human.push_str(&r.partition.report(&g, &r.sets));
            }
            emit(&cfg, human, json!({"nimis": r.count().to_string(), "mis": r.sets.len(),
                                      "group-order": r.group.order()}))
        }
        Command::Avgsize(i) => {
            let a = average_size(&graph(i)?, b)?;
            emit(&cfg, format!("{a} ({})\n", decimal(&a)), json!({"average": a.to_string(), "decimal": decimal(&a)}))
        }
        Command::Distribution(i) => {
            let p = size_polynomial_dp(&graph(i)?, b)?;
            let rows = p.nonzero();
            match cfg.format {
                OutputFormat::Human => rows.iter().map(|(r, c)| format!("{r}: {c}\n")).collect(),
                OutputFormat::Csv => std::iter::once("size,count\n".to_string())
                    .chain(rows.iter().map(|(r, c)| format!("{r},{c}\n")))
                    .collect(),
                OutputFormat::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|(r, c)| json!({"size": r, "count": c.to_string()}))
                        .collect();
                    format!("{:#}\n", json!(rows))
                }
            }
        }
        Command::Formulas(i) => {
            graph(i)?;
            let (human, value) = formulas(i)?;
            let golden = golden_ratio_ref(12)?;
            let human = format!("{human}phi/sqrt5: {}\n", golden.phi_over_sqrt5);
            emit(&cfg, human, value)
        }
        Command::Verify { all, family, m, n } => {
            let cases = match (all, family, m, n) {
                (true, None, None, None) => run_verification_suite(&cfg)?,
                (false, Some(f), Some(m), Some(n)) => verify_instance(*f, *m, *n, b)?,
                _ => return Err(Failure::Usage("verify needs either --all or --family, --m and --n".into())),
            };
            let text = write_cases(&cases, cfg.format)?;
            out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?;
            let failed = cases.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} of {} cases failed", cases.len())));
            }
            return Ok(());
        }
        Command::Trend => write_trend(&trend_report(&cfg)?, cfg.format)?,
        Command::Strings { kind, n } => dump_strings(*kind, *n)?,
        Command::Compositions { k, n } => composition_classes(*k, *n)?
            .iter()
            .map(|c| format!("{c}\n"))
            .collect(),
    };
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
