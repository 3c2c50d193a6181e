use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use bihyp::analysis::{all_bounds, identify, is_minimal_uncolorable};
use bihyp::enumeration::{enumerate_bihypergraphs, run_sweep, Filter, Predicate, SweepSpec, VerdictStore};
use bihyp::format::{read_instance, to_json, write_instance, Instance};
use bihyp::random::random_uniform;
use bihyp::solver::{decide_colorable_with, SolveOptions};
use bihyp::{upper_chromatic_number, BiHypergraph, ConstructionSpec, Family, MixedHypergraph};
use bihyp_cli::suite::{run_suite, ClaimStatus, SuiteKind, SuiteOptions};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Exact colorability tools for mixed hypergraphs and bi-hypergraphs.
#[derive(Parser)]
#[command(name = "bihyp", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Output file (`.json` or edge list); JSON on stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide colorability.
    Solve {
        input: PathBuf,
        /// Also compute the upper chromatic number.
        #[arg(long)]
        chibar: bool,
        /// Also check minimal uncolorability (bi-hypergraphs only).
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        max_colors: Option<usize>,
    },
    /// Upper chromatic number with an attaining coloring.
    Chibar { input: PathBuf },
    /// Minimal uncolorability with per-edge deletion witnesses.
    Minimal { input: PathBuf },
    /// Evaluate the sufficient colorability bounds.
    Bounds {
        input: PathBuf,
        /// Edge size; defaults to the common edge size.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Identify two non-adjacent vertices.
    Reduce {
        input: PathBuf,
        u: usize,
        v: usize,
        /// Solve the quotient and lift its coloring.
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep all isomorphism classes of r-uniform bi-hypergraphs.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        min_edges: usize,
        #[arg(long)]
        max_edges: usize,
        /// `adjacent`, `connected` or `min-degree=D`; repeatable.
        #[arg(long = "filter", value_parser = parse_filter)]
        filters: Vec<Filter>,
        /// `colorable` or `not-minimal-uncolorable`.
        #[arg(long, default_value = "colorable")]
        predicate: String,
        /// Persist verdict records under this directory.
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        shards: usize,
        #[arg(long, default_value_t = 3)]
        shard_depth: usize,
        /// Give up after this many seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
        /// Print every class as a JSON line instead of sweeping.
        #[arg(long)]
        list: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
        #[arg(long)]
        store_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Budget for the order-7 sweep, in seconds.
        #[arg(long, default_value_t = 3600)]
        sweep_budget_secs: u64,
        /// Run only these claims.
        #[arg(long = "claim")]
        claims: Vec<u32>,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search random r-uniform bi-hypergraphs for uncolorable ones.
    Probe {
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 10)]
        min_n: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Edge counts are drawn from `[0, max_edges]`.
        #[arg(long, default_value_t = 60)]
        max_edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    #[value(alias = "paper")]
    Full,
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    match s {
        "adjacent" | "all-pairs-adjacent" => Ok(Filter::AllPairsAdjacent),
        "connected" => Ok(Filter::Connected),
        _ => match s.strip_prefix("min-degree=") {
            Some(d) => d
                .parse()
                .map(Filter::MinDegree)
                .map_err(|e| format!("bad degree `{d}`: {e}")),
            None => Err(format!("unknown filter `{s}`")),
        },
    }
}

fn load(path: &Path) -> Result<MixedHypergraph> {
    Ok(read_instance(path)
        .with_context(|| format!("reading {}", path.display()))?
        .hypergraph)
}

fn load_bi(path: &Path) -> Result<BiHypergraph> {
    BiHypergraph::try_from(load(path)?).context("expected a bi-hypergraph (C = D)")
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen {
            family,
            n,
            l,
            m,
            k,
            out,
        } => {
            let spec = ConstructionSpec {
                family,
                n,
                l,
                m,
                k,
            };
            let h = spec.generate()?;
            let inst = Instance::new(h).with_provenance(spec);
            match out {
                Some(path) => {
                    write_instance(&path, &inst)?;
                    eprintln!(
                        "wrote {} ({} vertices, {} members)",
                        path.display(),
                        inst.hypergraph.n(),
                        inst.hypergraph.num_members()
                    );
                }
                None => println!("{}", to_json(&inst)),
            }
        }
        Command::Solve {
            input,
            chibar,
            minimal,
            max_colors,
        } => {
            let h = load(&input)?;
            let verdict = decide_colorable_with(&h, SolveOptions { max_colors });
            eprintln!(
                "{} ({} nodes, {:?})",
                verdict.status.as_str(),
                verdict.nodes_explored,
                verdict.elapsed
            );
            let mut report = json!({ "verdict": verdict });
            if chibar {
                report["chibar"] = serde_json::to_value(upper_chromatic_number(&h))?;
            }
            if minimal {
                let bi = BiHypergraph::try_from(h).context("--minimal needs a bi-hypergraph")?;
                report["minimal"] = serde_json::to_value(is_minimal_uncolorable(&bi))?;
            }
            print_json(&report)?;
        }
        Command::Chibar { input } => {
            let chi = upper_chromatic_number(&load(&input)?);
            match chi.value {
                Some(v) => eprintln!("upper chromatic number {v}"),
                None => eprintln!("uncolorable"),
            }
            print_json(&chi)?;
        }
        Command::Minimal { input } => {
            let cert = is_minimal_uncolorable(&load_bi(&input)?);
            eprintln!(
                "{}",
                if cert.minimal {
                    "minimal uncolorable"
                } else if cert.uncolorable {
                    "uncolorable, not minimal"
                } else {
                    "colorable"
                }
            );
            print_json(&cert)?;
        }
        Command::Bounds { input, r } => {
            let h = load_bi(&input)?;
            let r = match r.or(h.uniformity()) {
                Some(r) => r,
                None => bail!("instance is not uniform and has no edges; pass --r"),
            };
            let reports = all_bounds(&h, r)?;
            for b in &reports {
                eprintln!(
                    "{}: {} (measured {}, threshold {:.4})",
                    b.bound,
                    if b.satisfied { "satisfied" } else { "not satisfied" },
                    b.measured,
                    b.threshold
                );
            }
            print_json(&reports)?;
        }
        Command::Reduce {
            input,
            u,
            v,
            solve,
            out,
        } => {
            let h = load(&input)?;
            let id = identify(&h, u, v)?;
            eprintln!(
                "quotient has {} vertices, {} members ({} duplicates merged, {} supersets dropped)",
                id.quotient.n(),
                id.quotient.num_members(),
                id.merged_duplicates,
                id.dropped_supersets
            );
            if let Some(path) = &out {
                write_instance(path, &Instance::new(id.quotient.clone()))?;
            }
            let mut report = json!({ "identification": id });
            if solve {
                let verdict = decide_colorable_with(&id.quotient, SolveOptions::default());
                eprintln!("quotient is {}", verdict.status.as_str());
                if let Some(w) = &verdict.witness {
                    report["lifted"] = serde_json::to_value(id.lift(w)?)?;
                }
                report["verdict"] = serde_json::to_value(&verdict)?;
            }
            print_json(&report)?;
        }
        Command::Enumerate {
            n,
            r,
            min_edges,
            max_edges,
            filters,
            predicate,
            store,
            shards,
            shard_depth,
            budget_secs,
            list,
        } => {
            let mut spec = SweepSpec::new(n, r, max_edges);
            spec.min_edges = min_edges;
            spec.filters = filters;
            spec.predicate = Predicate::from_name(&predicate)?;
            spec.shards = shards;
            spec.shard_depth = shard_depth;
            spec.budget = budget_secs.map(Duration::from_secs);
            if list {
                let mut count = 0;
                for h in enumerate_bihypergraphs(&spec)? {
                    let edges: Vec<&[usize]> = h.edges().iter().map(|e| e.vertices()).collect();
                    println!("{}", serde_json::to_string(&edges)?);
                    count += 1;
                }
                eprintln!("{count} classes");
                return Ok(ExitCode::SUCCESS);
            }
            let mut store = store.map(VerdictStore::open).transpose()?;
            let summary = match run_sweep(&spec, store.as_mut()) {
                Ok(s) => s,
                Err(failure) => {
                    if let Some(s) = &failure.summary {
                        print_json(s)?;
                    }
                    return Err(failure.error.into());
                }
            };
            eprintln!(
                "{}: {} classes, {} evaluated, {} counterexamples, {}complete, {} ms",
                summary.sweep_id,
                summary.total_classes(),
                summary.evaluated,
                summary.counterexamples.len(),
                if summary.complete { "" } else { "in" },
                summary.elapsed_ms
            );
            print_json(&summary)?;
            if !summary.counterexamples.is_empty() {
                return Ok(ExitCode::from(2));
            }
            if !summary.complete {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify {
            suite,
            store_dir,
            seed,
            sweep_budget_secs,
            claims,
            out,
        } => {
            let opts = SuiteOptions {
                kind: match suite {
                    SuiteArg::Quick => SuiteKind::Quick,
                    SuiteArg::Full => SuiteKind::Full,
                },
                seed,
                store_dir,
                sweep_budget: Duration::from_secs(sweep_budget_secs),
                only: claims,
            };
            let result = run_suite(&opts, |c| {
                eprintln!(
                    "[{}] {}. {} ({} ms): {}",
                    c.status.label(),
                    c.id,
                    c.name,
                    c.elapsed_ms,
                    c.details
                );
            })?;
            let text = serde_json::to_string_pretty(&result)?;
            if let Some(path) = &out {
                std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{text}");
            let failed = result
                .claims
                .iter()
                .filter(|c| !matches!(c.status, ClaimStatus::Pass | ClaimStatus::Skip))
                .count();
            if failed > 0 {
                eprintln!("{failed} claim(s) did not pass");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Probe {
            r,
            min_n,
            max_n,
            samples,
            max_edges,
            seed,
        } => {
            if min_n < r || min_n > max_n {
                bail!("need r <= min-n <= max-n");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = Vec::new();
            for _ in 0..samples {
                let n = rng.gen_range(min_n..=max_n);
                let m = rng.gen_range(0..=max_edges);
                let h = random_uniform(&mut rng, n, r, m);
                if !bihyp::decide_colorable(&h).is_colorable() {
                    let edges: Vec<&[usize]> = h.edges().iter().map(|e| e.vertices()).collect();
                    found.push(json!({ "n": n, "edges": edges }));
                }
            }
            eprintln!("{} of {samples} samples uncolorable", found.len());
            print_json(&json!({ "r": r, "samples": samples, "uncolorable": found }))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
