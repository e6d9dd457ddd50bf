use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hh1lab::cli::{
    cmd_blocks, cmd_happel, cmd_hh1, cmd_report, cmd_tensor, memory_estimate, resolve_group, Cache, CategoryInput,
    CorpusManifest, ReportDocument, RunOptions,
};
use hh1lab::groupalgebra::DEFAULT_SEED;
use hh1lab::hhone::Method;

#[derive(Parser)]
#[command(name = "hh1lab", version, about = "Hochschild cohomology of modular group algebras and category algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for randomised factorisation and certificate search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Raise the element cap from 2^15 to 2^21.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Block dimensions, defects and the principal block.
    Blocks {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
    },
    /// HH¹ per block with non-vanishing verdicts.
    Hh1 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value = "both")]
        method: Method,
    },
    /// Frobenius, radical, HHⁿ and category cohomology of a category algebra.
    Happel {
        /// Category file.
        #[arg(long, group = "source")]
        category: Option<PathBuf>,
        /// Transporter category of this group acting on points.
        #[arg(long, group = "source")]
        transporter: Option<String>,
        /// The group as a one-object category.
        #[arg(long, group = "source")]
        group_as_category: Option<String>,
        /// Number of points, acted on trivially.
        #[arg(long, requires = "transporter", conflicts_with = "natural")]
        points: Option<usize>,
        /// Use the group's own permutation action.
        #[arg(long, requires = "transporter")]
        natural: bool,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        degrees: usize,
    },
    /// HH¹ of kG ⊗ kH by the Künneth formula and by the solver.
    Tensor {
        /// Exactly two groups.
        #[arg(long, num_args = 1, required = true)]
        group: Vec<String>,
        #[arg(long)]
        prime: u64,
    },
    /// HH¹ over a corpus and a list of primes.
    Report {
        /// Manifest file; the built-in corpus when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        #[arg(long, default_value = "both")]
        method: Method,
    },
}

fn warn_large(degrees: impl IntoIterator<Item = usize>, opts: &RunOptions) {
    if opts.allow_large {
        let d = degrees.into_iter().max().unwrap_or(0);
        let bytes = memory_estimate(d, opts.element_cap());
        eprintln!(
            "memory estimate: up to {:.1} MiB for {} elements of degree {d}",
            bytes as f64 / (1u64 << 20) as f64,
            opts.element_cap()
        );
    }
}

fn run(cli: Cli) -> Result<ReportDocument, String> {
    let g = cli.global;
    let opts = RunOptions {
        seed: g.seed,
        allow_large: g.allow_large,
        ..Default::default()
    };
    let cache = Cache::from_env();
    let degree_of = |name: &str| resolve_group(name).map(|e| e.file.degree).unwrap_or(0);
    let doc = match cli.command {
        Command::Blocks { group, prime } => {
            warn_large([degree_of(&group)], &opts);
            cmd_blocks(&group, prime, &opts, &cache)
        }
        Command::Hh1 { group, prime, method } => {
            warn_large([degree_of(&group)], &opts);
            cmd_hh1(&group, prime, method, &opts, &cache)
        }
        Command::Happel {
            category,
            transporter,
            group_as_category,
            points,
            natural,
            prime,
            degrees,
        } => {
            let input = match (category, transporter, group_as_category) {
                (Some(path), _, _) => CategoryInput::File(path),
                (_, Some(group), _) => CategoryInput::Transporter { group, points, natural },
                (_, _, Some(group)) => CategoryInput::GroupAsCategory(group),
                _ => return Err("happel needs --category, --transporter or --group-as-category".into()),
            };
            cmd_happel(&input, prime, degrees, &opts)
        }
        Command::Tensor { group, prime } => {
            let [left, right] = group.as_slice() else {
                return Err("tensor needs exactly two --group flags".into());
            };
            warn_large([degree_of(left), degree_of(right)], &opts);
            cmd_tensor(left, right, prime, &opts)
        }
        Command::Report {
            manifest,
            primes,
            method,
        } => {
            let m = match manifest {
                Some(p) => CorpusManifest::read(&p).map_err(|e| e.to_string())?,
                None => CorpusManifest::default_corpus(),
            };
            warn_large(m.entries.iter().map(|e| e.file.degree), &opts);
            cmd_report(&m, &primes, method, &opts, &cache)
        }
    };
    if cache.hits() + cache.misses() > 0 {
        eprintln!("cache: {} hits, {} misses", cache.hits(), cache.misses());
    }
    let text = doc.to_json();
    match &g.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    for e in &doc.errors {
        eprintln!("error: {e}");
    }
    if doc.counterexample {
        eprintln!("counterexample: a block of positive defect has HH¹ = 0");
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.global.jobs;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build();
    let result = match pool {
        Ok(p) => p.install(|| run(cli)),
        Err(e) => Err(e.to_string()),
    };
    match result {
        Ok(doc) => ExitCode::from(doc.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
