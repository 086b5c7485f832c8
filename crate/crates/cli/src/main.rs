use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gl2_cayley::bfs::{bidirectional_distance, isometry_bfs_with_progress, synthesize, BidirOutcome};
use gl2_cayley::bounds::{self, quadratic_bound, quadratic_threshold, sphere_profile, SphereSource};
use gl2_cayley::essential::{self, classify, extract_coeffs, format_coeff_file, PolyCoeffs};
use gl2_cayley::permcheck::{verify_conjecture, CycleType};
use gl2_cayley::store;
use gl2_cayley::{BitMatrix, Error, ExplorationResult, IsometrySpec, Permutation, SearchLimits};

/// Name accepted by `--coeffs` for the bundled coefficient table.
const BUNDLED_COEFFS: &str = "paper_coeffs";

#[derive(Parser)]
#[command(name = "gl2-cayley", version, about = "Minimal CNOT counts via isometry-reduced BFS over GL(n,2)")]
struct Cli {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,

    /// Suppress progress on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explore GL(n,2) and print the sphere table.
    Explore {
        #[command(flatten)]
        search: SearchArgs,
        /// Write the distance database here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only per-level counts.
        #[arg(long, conflicts_with = "out")]
        stream: bool,
    },
    /// Look up a distance in a database.
    Dist {
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Synthesize a minimal circuit from a database.
    Synth {
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Check delta(P_sigma) = 3(n - c(sigma)) for every cycle type.
    PermCheck {
        #[command(flatten)]
        source: SourceArgs,
        /// Check a single permutation instead.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Count matrices by distance and number of essential indices.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Extract sphere-size polynomial coefficients from GL(2d,2).
    PolyExtract {
        /// Comma-separated list of d.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        #[arg(long, default_value = "sym")]
        isometry: IsometrySpec,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate f_d(n).
    PolyEval {
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Evaluate every order from --n to --n-max.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Diameter lower bound l_n(k).
    DiamBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, required_unless_present = "quadratic")]
        k: Option<usize>,
        #[arg(long)]
        coeffs: Option<String>,
        /// Use explored sphere sizes from this database where exact.
        #[arg(long)]
        db: Option<PathBuf>,
        /// Print the quadratic bound (n^2 - n) / log2(n^2 - n + 1) instead.
        #[arg(long, conflicts_with_all = ["k", "coeffs", "db"])]
        quadratic: bool,
    },
    /// Smallest n in a range whose bound exceeds 3(n - 1).
    N0Search {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        #[arg(long, required_unless_present = "quadratic")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "quadratic")]
        coeffs: Option<String>,
        #[arg(long, conflicts_with_all = ["k", "coeffs"])]
        quadratic: bool,
    },
    /// Meet-in-the-middle distance.
    Bidir {
        #[command(flatten)]
        target: TargetArgs,
        /// Required with --perm.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        fwd: usize,
        #[arg(long)]
        bwd: usize,
        #[arg(long, default_value = "sym")]
        isometry: IsometrySpec,
        #[arg(long)]
        threads: Option<usize>,
        /// Give up when a backward level exceeds this many elements.
        #[arg(long)]
        max_orbits: Option<usize>,
    },
    /// Describe a database.
    DbInfo {
        #[arg(long)]
        db: PathBuf,
        /// Also check that every key is canonical.
        #[arg(long)]
        validate: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_orbits: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "sym")]
    isometry: IsometrySpec,
}

impl SearchArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_depth: self.max_depth,
            max_orbits: self.max_orbits,
            threads: self.threads,
            retain_distances: true,
        }
    }
}

/// Either a database or the parameters of a fresh exploration.
#[derive(Args)]
struct SourceArgs {
    #[arg(long, required_unless_present = "db")]
    n: Option<usize>,
    #[arg(long, conflicts_with_all = ["n", "max_depth", "max_orbits", "isometry"])]
    db: Option<PathBuf>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    max_orbits: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    isometry: Option<IsometrySpec>,
}

#[derive(Args)]
struct TargetArgs {
    /// Rows such as 111,010,011.
    #[arg(long, required_unless_present = "perm", conflicts_with = "perm")]
    matrix: Option<String>,
    /// Permutation in cycle notation such as "(1 2 3)(4 5)".
    #[arg(long)]
    perm: Option<String>,
}

impl TargetArgs {
    fn resolve(&self, n: Option<usize>) -> anyhow::Result<BitMatrix> {
        match (&self.matrix, &self.perm) {
            (Some(m), _) => {
                let m: BitMatrix = m.parse()?;
                if let Some(n) = n.filter(|&n| n != m.order()) {
                    return Err(Error::DimensionMismatch { left: m.order(), right: n }.into());
                }
                Ok(m)
            }
            (None, Some(p)) => {
                let n = n.ok_or_else(|| Error::InvalidArgument("--perm needs the order".into()))?;
                Ok(Permutation::parse_cycles(n, p)?.matrix())
            }
            (None, None) => bail!(Error::InvalidArgument("give --matrix or --perm".into())),
        }
    }
}

/// Whether the printed result answers the request exactly.
enum Status {
    Exact,
    Partial,
}

struct Ctx {
    json: bool,
    quiet: bool,
}

impl Ctx {
    fn explore(&self, n: usize, spec: IsometrySpec, limits: &SearchLimits) -> anyhow::Result<ExplorationResult> {
        let quiet = self.quiet;
        let res = isometry_bfs_with_progress(n, spec, limits, &mut |r| {
            if !quiet {
                eprintln!("{r}");
            }
        })?;
        Ok(res)
    }

    fn load_or_explore(&self, src: &SourceArgs) -> anyhow::Result<ExplorationResult> {
        if let Some(db) = &src.db {
            return load_db(db);
        }
        let limits = SearchLimits {
            max_depth: src.max_depth,
            max_orbits: src.max_orbits,
            threads: src.threads,
            retain_distances: true,
        };
        self.explore(src.n.expect("required by clap"), src.isometry.unwrap_or_default(), &limits)
    }

    fn emit(&self, csv: String, json: serde_json::Value) {
        if self.json {
            println!("{json}");
        } else {
            print!("{csv}");
        }
    }
}

fn load_db(path: &Path) -> anyhow::Result<ExplorationResult> {
    store::load(path).with_context(|| format!("reading {}", path.display()))
}

fn load_coeffs(arg: &str) -> anyhow::Result<Vec<PolyCoeffs>> {
    let path = Path::new(arg);
    if arg == BUNDLED_COEFFS && !path.exists() {
        return Ok(essential::bundled_coeffs());
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    Ok(essential::parse_coeff_file(&text)?)
}

fn status_of(res: &ExplorationResult) -> Status {
    if res.last_level_complete {
        Status::Exact
    } else {
        Status::Partial
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let ctx = Ctx { json: cli.json, quiet: cli.quiet };
    match cli.command {
        Command::Explore { search, out, stream } => {
            let limits = SearchLimits { retain_distances: !stream, ..search.limits() };
            let res = ctx.explore(search.n, search.isometry, &limits)?;
            if let Some(out) = &out {
                store::save(&res, out).with_context(|| format!("writing {}", out.display()))?;
            }
            ctx.emit(store::sphere_table_csv(&res), store::sphere_table_json(&res));
            Ok(status_of(&res))
        }

        Command::Dist { db, target } => {
            let header = store::read_header(&db).with_context(|| format!("reading {}", db.display()))?;
            let m = target.resolve(Some(header.n))?;
            match store::lookup_in_file(&db, &m)? {
                Some(d) => {
                    ctx.emit(format!("{d}\n"), json!({ "matrix": m.to_string(), "distance": d }));
                    Ok(Status::Exact)
                }
                None if header.complete => {
                    Err(Error::Inconsistent(format!("{m} is missing from a complete database")).into())
                }
                None => {
                    // keys at the last stored depth are only all present if that level is complete
                    let lower = header.levels as usize - usize::from(!header.last_level_complete);
                    ctx.emit(format!(">={lower}\n"), json!({ "matrix": m.to_string(), "lower_bound": lower }));
                    Ok(Status::Partial)
                }
            }
        }

        Command::Synth { db, target } => {
            let res = load_db(&db)?;
            let m = target.resolve(Some(res.n))?;
            let c = synthesize(&res, &m)?;
            let gates: Vec<String> = c.gates().iter().map(ToString::to_string).collect();
            ctx.emit(format!("{c}\n"), json!({ "matrix": m.to_string(), "length": c.len(), "gates": gates }));
            Ok(Status::Exact)
        }

        Command::PermCheck { source, perm } => {
            let res = ctx.load_or_explore(&source)?;
            if let Some(p) = perm {
                let sigma = Permutation::parse_cycles(res.n, &p)?;
                let expected = 3 * (res.n - sigma.cycle_count());
                let measured = gl2_cayley::distance_of(&res, &sigma.matrix())?;
                let ok = expected == measured;
                let status = if ok { "PASS" } else { "FAIL" };
                ctx.emit(
                    format!(
                        "perm,type,expected,measured,status\n{sigma},{},{expected},{measured},{status}\n",
                        CycleType::of(&sigma)
                    ),
                    json!({ "perm": sigma.to_string(), "expected": expected, "measured": measured, "pass": ok }),
                );
                return check_passed(ok);
            }
            let report = verify_conjecture(&res)?;
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "type": r.cycle_type.parts,
                        "representative": r.representative.to_string(),
                        "expected": r.expected,
                        "measured": r.measured,
                        "pass": r.pass(),
                    })
                })
                .collect();
            ctx.emit(report.to_string(), json!({ "n": report.n, "rows": rows }));
            check_passed(report.all_pass())
        }

        Command::Classify { source } => {
            let res = ctx.load_or_explore(&source)?;
            let table = classify(&res)?;
            let cells: Vec<_> = table
                .cells
                .iter()
                .map(|((d, m), v)| json!({ "d": d, "m": m, "count": v.to_string() }))
                .collect();
            ctx.emit(table.to_csv(), json!({ "n": table.order, "isometry": table.spec, "cells": cells }));
            Ok(status_of(&res))
        }

        Command::PolyExtract { d, isometry, threads } => {
            let mut found = Vec::new();
            for d in d {
                if !(1..=4).contains(&d) {
                    bail!(Error::InvalidArgument(format!("d must be in 1..=4, got {d}")));
                }
                let limits = SearchLimits { max_depth: Some(d), threads, ..SearchLimits::default() };
                let res = ctx.explore(2 * d, isometry, &limits)?;
                found.push(extract_coeffs(&classify(&res)?, d)?);
            }
            let records: Vec<_> = found
                .iter()
                .map(|c| json!({ "d": c.d, "a": c.a.iter().map(ToString::to_string).collect::<Vec<_>>() }))
                .collect();
            ctx.emit(format_coeff_file(&found), json!(records));
            Ok(Status::Exact)
        }

        Command::PolyEval { coeffs, d, n, n_max } => {
            let all = load_coeffs(&coeffs)?;
            let f = all
                .iter()
                .find(|c| c.d == d)
                .ok_or_else(|| Error::InvalidArgument(format!("no coefficients for d = {d}")))?;
            let ns: Vec<usize> = (n..=n_max.unwrap_or(n)).collect();
            if let Some(bad) = ns.iter().find(|&&n| !f.valid_for(n)) {
                bail!(Error::InvalidArgument(format!("f_{d} only counts spheres for n >= {}, got {bad}", 2 * d)));
            }
            let values: Vec<_> = ns.iter().map(|&n| (n, f.eval(n))).collect();
            let csv = if n_max.is_none() {
                format!("{}\n", values[0].1)
            } else {
                values.iter().fold(String::from("n,value\n"), |mut s, (n, v)| {
                    let _ = writeln!(s, "{n},{v}");
                    s
                })
            };
            let rows: Vec<_> = values.iter().map(|(n, v)| json!({ "n": n, "value": v.to_string() })).collect();
            ctx.emit(csv, json!({ "d": d, "polynomial": f.to_string(), "values": rows }));
            Ok(Status::Exact)
        }

        Command::DiamBound { n, n_max, k, coeffs, db, quadratic } => {
            let ns: Vec<usize> = (n..=n_max.unwrap_or(n)).collect();
            if quadratic {
                let bounds = ns.iter().map(|&n| quadratic_bound(n)).collect::<Result<Vec<_>, _>>()?;
                let mut csv = String::from("n,bound,ceiling,three_n_minus_3\n");
                for b in &bounds {
                    let _ = writeln!(csv, "{},{:.4},{},{}", b.n, b.approx, b.ceiling, 3 * (b.n - 1));
                }
                let rows: Vec<_> =
                    bounds.iter().map(|b| json!({ "n": b.n, "bound": b.approx, "ceiling": b.ceiling })).collect();
                ctx.emit(csv, json!(rows));
                return Ok(Status::Exact);
            }
            let k = k.expect("required by clap");
            let coeffs = coeffs.as_deref().map(load_coeffs).transpose()?.unwrap_or_default();
            let explored = db.as_deref().map(load_db).transpose()?;
            let mut rows = Vec::new();
            for &n in &ns {
                let profile = sphere_profile(n, k, explored.as_ref(), &coeffs)?;
                if !ctx.quiet && profile.sources.contains(&SphereSource::BundledPolynomial) {
                    eprintln!("n={n}: using bundled sphere polynomials");
                }
                rows.push((n, k, bounds::ell(&profile)?));
            }
            let csv = if n_max.is_none() { format!("{}\n", rows[0].2) } else { bounds::ell_table_csv(&rows) };
            let json_rows: Vec<_> = rows.iter().map(|(n, k, l)| json!({ "n": n, "k": k, "ell": l })).collect();
            ctx.emit(csv, json!(json_rows));
            Ok(Status::Exact)
        }

        Command::N0Search { n_min, n_max, k, coeffs, quadratic } => {
            let found = if quadratic {
                quadratic_threshold(n_min..=n_max)
            } else {
                let coeffs = load_coeffs(coeffs.as_deref().expect("required by clap"))?;
                bounds::n0_upper(k.expect("required by clap"), &coeffs, n_min..=n_max)?
            };
            match found {
                Some(n) => {
                    ctx.emit(format!("{n}\n"), json!({ "n0_upper": n }));
                    Ok(Status::Exact)
                }
                None => {
                    ctx.emit("none\n".into(), json!({ "n0_upper": null }));
                    Ok(Status::Partial)
                }
            }
        }

        Command::Bidir { target, n, fwd, bwd, isometry, threads, max_orbits } => {
            let m = target.resolve(n)?;
            let limits = SearchLimits { max_orbits, threads, ..SearchLimits::default() };
            let outcome = bidirectional_distance(&m, isometry, fwd, bwd, &limits)?;
            let value = match outcome {
                BidirOutcome::Exact(d) => json!({ "matrix": m.to_string(), "distance": d }),
                BidirOutcome::AtLeast(d) => json!({ "matrix": m.to_string(), "lower_bound": d }),
            };
            ctx.emit(format!("{outcome}\n"), value);
            Ok(match outcome {
                BidirOutcome::Exact(_) => Status::Exact,
                BidirOutcome::AtLeast(_) => Status::Partial,
            })
        }

        Command::DbInfo { db, validate } => {
            let res = load_db(&db)?;
            let checked = if validate { Some(store::validate_canonical(&res)?) } else { None };
            let mut csv = String::from("field,value\n");
            let _ = writeln!(csv, "n,{}", res.n);
            let _ = writeln!(csv, "isometry,{}", res.spec);
            let _ = writeln!(csv, "complete,{}", res.complete);
            let _ = writeln!(csv, "last_level_complete,{}", res.last_level_complete);
            let _ = writeln!(csv, "orbits,{}", res.dist.len());
            let _ = writeln!(csv, "elements,{}", res.total_elements());
            if let Some(d) = res.diameter() {
                let _ = writeln!(csv, "diameter,{d}");
            }
            if let Some(c) = checked {
                let _ = writeln!(csv, "canonical_keys_checked,{c}");
            }
            csv.push('\n');
            csv.push_str(&store::sphere_table_csv(&res));
            let mut value = store::sphere_table_json(&res);
            value["orbits"] = json!(res.dist.len());
            value["elements"] = json!(res.total_elements().to_string());
            value["diameter"] = json!(res.diameter());
            ctx.emit(csv, value);
            Ok(Status::Exact)
        }
    }
}

fn check_passed(ok: bool) -> anyhow::Result<Status> {
    if ok {
        Ok(Status::Exact)
    } else {
        Err(anyhow!(Error::Inconsistent("distance differs from 3(n - c(sigma))".into())))
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Incomplete | Error::BeyondHorizon { .. }) => 2,
        Some(Error::Inconsistent(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Exact) => ExitCode::SUCCESS,
        Ok(Status::Partial) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
