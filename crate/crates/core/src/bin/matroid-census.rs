use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use matroid_census::{bounds, census, encoder, format, verify, Error, Johnson};
use num_bigint::BigUint;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "matroid-census",
    version,
    about = "Labeled matroid census, non-basis encodings and counting bounds",
    after_help = "Matroid records look like `n=4 r=2 bases=3f`: bit i of the basis bitset is the \
                  i-th r-set in colex order, packed least significant bit first within each byte, \
                  bytes written in order as two lowercase hex digits. `3f` is U(2,4); `3e` drops {1,2}."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Jsonl,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List every matroid of rank r on [n] (all ranks when --r is omitted).
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode matroid records.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode encoding records back to matroid records.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Census statistics for every rank on [n].
    Stats {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// jsonl prints the aggregate report; csv prints one row per matroid.
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of constants and bounds.
    Bounds {
        /// A value or an inclusive range such as 4..16.
        #[arg(long)]
        n: String,
        /// Ranks to report; defaults to every 0 < r < n.
        #[arg(long)]
        r: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Number of stable sets of J(n, r), optionally of size at most --max-size.
    StableCount {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        max_size: Option<usize>,
        /// Use the plain subset scan instead of branch and bound.
        #[arg(long)]
        scan: bool,
    },
    /// Residue classes {X : sum of X = c mod n} of J(n, r).
    Gs {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Print the members of this class instead of the class sizes.
        #[arg(long)]
        c: Option<u32>,
    },
    /// Seeded random sparse paving matroids.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Run verification suites.
    Verify {
        /// roundtrip, lemmas, entropy, grouping, bounds, stable or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 100)]
        entropy_trials: u64,
        #[arg(long, default_value_t = 1000)]
        sigma_n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::CorruptEncoding(_) | Error::Invariant(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("`{s}` is not a number or an inclusive range a..b"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let v = s.parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn header(what: &str, extra: &str) -> String {
    format!("# matroid-census {VERSION} {what}{extra}\n")
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census {
            n,
            r,
            jobs,
            format: fmt,
            out,
        } => {
            let ranks: Vec<u32> = match r {
                Some(r) => vec![r],
                None => (0..=n).collect(),
            };
            let mut text = match fmt {
                Format::Csv => format!("{}\n", census::RECORD_CSV_HEADER),
                _ => header(
                    "census",
                    &format!(" n={n} r={} seed=none", r.map_or("all".into(), |r| r.to_string())),
                ),
            };
            for r in ranks {
                for m in census::enumerate_matroids_jobs(n, r, jobs)? {
                    let line = match fmt {
                        Format::Text => format::format_matroid(&m),
                        Format::Jsonl => json(&census::CensusRecord::of(&m)?),
                        Format::Csv => census::CensusRecord::of(&m)?.csv_row(),
                    };
                    text.push_str(&line);
                    text.push('\n');
                }
            }
            emit(&out, &text)
        }
        Command::Encode { input, out } => {
            let ms = format::parse_matroids(&read(&input)?)?;
            let mut text = String::new();
            for m in &ms {
                text.push_str(&format::format_encoding(&encoder::encode(m)?));
                text.push('\n');
            }
            emit(&out, &text)
        }
        Command::Decode { input, out } => {
            let es = format::parse_encodings(&read(&input)?)?;
            let mut text = String::new();
            for e in &es {
                text.push_str(&format::format_matroid(&e.decode()?));
                text.push('\n');
            }
            emit(&out, &text)
        }
        Command::Stats {
            n,
            jobs,
            format: fmt,
            out,
        } => {
            let (rep, recs) = census::stats_pipeline(n, jobs)?;
            let text = match fmt {
                Format::Csv => {
                    let mut t = format!("{}\n", census::RECORD_CSV_HEADER);
                    for rec in &recs {
                        t.push_str(&rec.csv_row());
                        t.push('\n');
                    }
                    t
                }
                Format::Jsonl => format!("{}\n", json(&rep)),
                Format::Text => serde_json::to_string_pretty(&rep).expect("serializable") + "\n",
            };
            emit(&out, &text)
        }
        Command::Bounds { n, r, format: fmt } => {
            let (lo, hi) = range(&n)?;
            let rr = r.as_deref().map(range).transpose()?;
            let mut text = match fmt {
                Format::Csv => format!("{}\n", bounds::CSV_HEADER),
                _ => String::new(),
            };
            for n in lo.max(2)..=hi {
                let s_log = exact_log_s(n)?;
                let (rlo, rhi) = rr.unwrap_or((1, n - 1));
                for r in rlo.max(1)..=rhi.min(n - 1) {
                    let row = bounds::bounds_report(n, r, s_log)?;
                    let line = match fmt {
                        Format::Csv => row.csv_row(),
                        Format::Jsonl => json(&row),
                        Format::Text => format!("{row:?}"),
                    };
                    text.push_str(&line);
                    text.push('\n');
                }
            }
            emit(&None, &text)
        }
        Command::StableCount { n, r, max_size, scan } => {
            let c = if scan {
                census::count_stable_sets_scan(n, r, max_size)?
            } else {
                census::count_stable_sets(n, r, max_size)?
            };
            emit(&None, &format!("{c}\n"))
        }
        Command::Gs { n, r, c } => {
            let text = match c {
                Some(c) => {
                    let j = Johnson::new(n, r)?;
                    let cls = census::gs_class(n, r, c)?;
                    cls.iter()
                        .map(|v| format!("{v} {}\n", j.unrank(matroid_census::VertexId(v)).expect("in range")))
                        .collect()
                }
                None => (0..n)
                    .map(|c| census::gs_class(n, r, c).map(|s| format!("{c} {}\n", s.count())))
                    .collect::<Result<String, _>>()?,
            };
            emit(&None, &text)
        }
        Command::Sample { n, r, seed, count } => {
            let mut text = header("sample", &format!(" n={n} r={r} seed={seed}"));
            for i in 0..count {
                let m = census::sample_sparse_paving(n, r, seed.wrapping_add(i))?;
                text.push_str(&format::format_matroid(&m));
                text.push('\n');
            }
            emit(&None, &text)
        }
        Command::Verify {
            suite,
            max_n,
            jobs,
            seed,
            samples,
            entropy_trials,
            sigma_n_max,
            format: fmt,
            out,
        } => {
            let suites =
                verify::Suite::parse(&suite).ok_or_else(|| Failure::Usage(format!("unknown suite `{suite}`")))?;
            let cfg = verify::VerifyConfig {
                max_n,
                jobs,
                seed,
                samples,
                entropy_trials,
                sigma_n_max,
            };
            let rep = verify::run(&suites, &cfg)?;
            let text = match fmt {
                Format::Jsonl => format!("{}\n", json(&rep)),
                _ => rep.render(),
            };
            emit(&out, &text)?;
            if rep.ok() {
                Ok(())
            } else {
                Err(Failure::Verification(format!("{} failures", rep.failure_count())))
            }
        }
    }
}

/// `log s(n)` when every rank is small enough to count exactly.
fn exact_log_s(n: u32) -> Result<Option<f64>, Failure> {
    let mut total = BigUint::from(2u32);
    for r in 1..n {
        match census::count_stable_sets(n, r, None) {
            Ok(c) => total += c,
            Err(Error::Capacity { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Some(matroid_census::binom::log2_big(&total)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
