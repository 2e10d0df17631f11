use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use isopoint_core::arith::is_prime;
use isopoint_core::atlas::{enumerate_subgroups_cns_plus, nonresidues, GaloisAdmissibility, NamedSubgroup};
use isopoint_core::classify::{
    bundled_image_table, classify, classify_range, default_range, emit_report, load_image_table,
    survivor_summary, ExternalImageRecord, DEFAULT_RANGE_END,
};
use isopoint_core::criteria::{admissible_f, semi_cartan_embeds_with_epsilon};
use isopoint_core::curves::invariants_x1;
use isopoint_core::degrees::{degree_profile, min_degree_scan};
use isopoint_core::facts::FactTable;
use isopoint_core::gl2::{default_closure_cap, Modulus, Subgroup, SubgroupData};
use isopoint_core::Error;

const EXIT_OTHER: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "isopoint", version, about = "Isolated points with rational j-invariant on X_1(l^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index, cusp count and genus of X_1(N).
    Invariants {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        json: bool,
    },
    /// Closed-point degree profile of a subgroup acting at level N.
    Degrees {
        /// Identifier such as `borel@17`, or a path to a subgroup JSON file.
        #[arg(long)]
        group: String,
        #[arg(long)]
        level: u64,
        #[command(flatten)]
        format: TableFormat,
    },
    /// Brute-force checks of group-theoretic criteria.
    #[command(subcommand)]
    Verify(Verify),
    /// Minimum-degree scans over subgroup families.
    #[command(subcommand)]
    Scan(Scan),
    /// Run the case analysis for one prime.
    Classify {
        #[arg(long)]
        ell: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Image table; defaults to the bundled records.
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the case analysis over a range of primes.
    ClassifyRange {
        /// Inclusive range `A..B`; primes above 7 in it are used.
        #[arg(long)]
        ells: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cited inputs.
    #[command(subcommand)]
    Facts(Facts),
}

#[derive(Args)]
#[group(multiple = false)]
struct TableFormat {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Verify {
    /// Whether C_ns^+(l) contains a conjugate of D^f, for each admissible f.
    Semicartan {
        #[arg(long)]
        ell_range: String,
        /// Also run with a second non-residue and compare.
        #[arg(long)]
        epsilon_alt: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Scan {
    /// Minimum degrees over the subgroups of C_ns^+(l).
    Cns {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Facts {
    List {
        #[arg(long)]
        json: bool,
    },
}

fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<u32>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range A..B, got `{s}`"))?;
    let a: u32 = a.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
    let b: u32 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in `{s}`"))?;
    if a > b {
        bail!("empty range `{s}`");
    }
    Ok(a..=b)
}

fn load_table(path: Option<&str>) -> isopoint_core::Result<Vec<ExternalImageRecord>> {
    match path {
        Some(p) => load_image_table(p),
        None => bundled_image_table(),
    }
}

fn resolve_group(id: &str, level: Modulus) -> anyhow::Result<Subgroup> {
    if Path::new(id).is_file() {
        let text = std::fs::read_to_string(id).with_context(|| format!("reading {id}"))?;
        let data: SubgroupData = serde_json::from_str(&text)
            .map_err(|e| Error::Data(format!("{id}: {e}")))?;
        let g = data.realize(default_closure_cap()).map_err(|e| match e {
            e if e.is_capacity() => e,
            e => Error::Data(format!("{id}: {e}")),
        })?;
        let m = g.modulus();
        return Ok(if m == level {
            g
        } else if level.value() % m.value() == 0 {
            g.full_preimage(level, default_closure_cap())?
        } else {
            g.reduce_to(level)?
        });
    }
    let named: NamedSubgroup = id.parse()?;
    Ok(named.build_at(level)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Invariants { level, json } => {
            let inv = invariants_x1(Modulus::new(level)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&inv)?);
            } else {
                println!(
                    "X_1({}): index {}, cusps {}, genus {}",
                    inv.level, inv.index, inv.cusps, inv.genus
                );
            }
        }
        Command::Degrees { group, level, format } => {
            let n = Modulus::new(level)?;
            let g = resolve_group(&group, n)?;
            let profile = degree_profile(&g, n)?;
            if format.json {
                println!("{}", serde_json::to_string_pretty(&profile)?);
            } else if format.csv {
                print!("{}", profile.to_csv());
            } else {
                println!(
                    "{} at level {}: order {}, min degree {}",
                    profile.group_label,
                    profile.level,
                    g.order(),
                    profile.min_degree
                );
                for e in &profile.entries {
                    println!(
                        "  degree {:>6}  orbit {:>6}  cx {:>3}  count {}",
                        e.degree, e.orbit_field_degree, e.cx, e.count
                    );
                }
            }
        }
        Command::Verify(Verify::Semicartan { ell_range, epsilon_alt, json }) => {
            let mut rows = Vec::new();
            let mut mismatch = false;
            for ell in parse_range(&ell_range)?.filter(|&l| l >= 5 && is_prime(l as u64)) {
                let eps = nonresidues(ell)?;
                for f in admissible_f(ell)? {
                    let first = semi_cartan_embeds_with_epsilon(ell, f, eps[0])?;
                    let alt = if epsilon_alt && eps.len() > 1 {
                        let a = semi_cartan_embeds_with_epsilon(ell, f, eps[1])?;
                        mismatch |= a.embeds != first.embeds;
                        Some(a)
                    } else {
                        None
                    };
                    rows.push((first, alt));
                }
            }
            if json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(c, a)| json!({ "check": c, "epsilon_alt": a }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for (c, a) in &rows {
                    let w = c.witness.map(|m| format!(" witness {m:?}")).unwrap_or_default();
                    print!("ell {:>3}  f {}  |D^f| {:>3}  eps {}  embeds {}{w}", c.ell, c.f, c.order, c.epsilon, c.embeds);
                    if let Some(a) = a {
                        print!("  | eps {} embeds {}", a.epsilon, a.embeds);
                    }
                    println!();
                }
            }
            if mismatch {
                bail!("results depend on the choice of non-residue");
            }
        }
        Command::Scan(Scan::Cns { ell, json }) => {
            let groups = enumerate_subgroups_cns_plus(ell)?;
            let n = Modulus::new(ell as u64)?;
            let filter = |a: &GaloisAdmissibility| a.admits_nonsplit_image();
            let rows = min_degree_scan(&groups, n, Some(&filter))?;
            let bound = FactTable::standard().nonsplit_degree_bound(ell);
            let violators: Vec<_> = rows.iter().filter(|r| !r.excluded && r.min_degree < bound).collect();
            let filtered_low: Vec<_> = rows.iter().filter(|r| r.excluded && r.min_degree < bound).collect();
            if json {
                let v = json!({
                    "ell": ell,
                    "bound": bound,
                    "rows": rows,
                    "admissible_violators": violators,
                    "filtered_out_below_bound": filtered_low,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("C_ns^+({ell}): {} subgroups, bound (l^2-1)/12 = {bound}", rows.len());
                for r in &rows {
                    println!(
                        "  {:<28} order {:>5}  min degree {:>5}  {}",
                        r.group_label,
                        r.order,
                        r.min_degree,
                        if r.excluded { "filtered out" } else { "admissible" }
                    );
                }
                println!(
                    "admissible below bound: {}; filtered out below bound: {}",
                    violators.len(),
                    filtered_low.len()
                );
            }
            if !violators.is_empty() {
                bail!("{} admissible subgroups fall below the degree bound", violators.len());
            }
        }
        Command::Classify { ell, n, table, json } => {
            let table = load_table(table.as_deref())?;
            let report = classify(ell, n, &table)?;
            print!("{}", emit_report(&report, if json { "json" } else { "text" })?);
            if json {
                println!();
            }
        }
        Command::ClassifyRange { ells, n, table, json } => {
            let primes: Vec<u32> = match ells {
                Some(r) => parse_range(&r)?.filter(|&l| l > 7 && is_prime(l as u64)).collect(),
                None => default_range(DEFAULT_RANGE_END),
            };
            let table = load_table(table.as_deref())?;
            let reports = classify_range(&primes, n, &table)?;
            let survivors = survivor_summary(&reports);
            if json {
                let v = json!({
                    "reports": reports,
                    "survivors": survivors.iter().map(|(l, j)| json!({"ell": l, "j_invariant": j})).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for r in &reports {
                    let names: Vec<String> = r.surviving_j_invariants.iter().map(|s| s.j_invariant.to_string()).collect();
                    println!(
                        "ell {:>3}: {} rules applied, survivors: {}",
                        r.ell,
                        r.trace.len(),
                        if names.is_empty() { "none".into() } else { names.join("; ") }
                    );
                }
                let primes: Vec<u32> = reports.iter().filter(|r| r.has_survivors()).map(|r| r.ell).collect();
                println!("primes with survivors: {primes:?}");
            }
        }
        Command::Facts(Facts::List { json }) => {
            let t = FactTable::standard();
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "version": t.version, "facts": t.entries() }))?);
            } else {
                println!("fact table version {}", t.version);
                for f in t.entries() {
                    println!("- [{}] {}\n    {}", f.id, f.statement, f.citation);
                }
            }
        }
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_capacity() => EXIT_CAP,
        Some(e) if e.is_data() => EXIT_DATA,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
