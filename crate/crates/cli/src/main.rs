use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cforest::bench::{run_bench, Alphabet, BenchConfig, CSV_HEADER};
use cforest::combinatorics::{
    cf_to_parens, cf_to_schroder, count_forests, for_each_forest_word, growth_ratio, parens_to_cf,
    schroder_to_cf, ParenWord, SchroderTree,
};
use cforest::linear::{parent_distance, referent_table, skipped_number};
use cforest::matcher::{approx_match, exact_match};
use cforest::randgen::{derive_seed, GenSpec};
use cforest::seqio::{format_sequence, parse_line, parse_sequence_file};
use cforest::signature::{filtered_match, signature, tau_filter};
use cforest::{CartesianForest, DiffKind, Error, Repr, Sequence};

const USAGE: u8 = 2;
const MALFORMED: u8 = 3;

#[derive(Parser)]
#[command(name = "cfm", version, about = "Cartesian Forest matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every window of the text matching the pattern
    Match(MatchArgs),
    /// Print the linear representations of a sequence
    Repr(ReprArgs),
    /// Convert between forest encodings
    Convert(ConvertArgs),
    /// Number of Cartesian forests with n nodes
    Count {
        n: usize,
        /// Also print f(n)/f(n-1)
        #[arg(long)]
        ratio: bool,
    },
    /// List every forest with n nodes as a parentheses word
    Enumerate {
        n: usize,
        /// Print the display form (outer pair removed)
        #[arg(long)]
        display: bool,
    },
    /// Generate random sequences
    Gen(GenArgs),
    /// Run the matcher benchmark and print CSV
    Bench(BenchArgs),
    /// Run a quick internal consistency check
    Selftest,
}

#[derive(Args)]
#[group(id = "pattern_src", required = true, multiple = false)]
struct PatternSource {
    /// Pattern values, whitespace or comma separated
    #[arg(short, long, allow_hyphen_values = true)]
    pattern: Option<String>,
    /// File whose first sequence is the pattern
    #[arg(long)]
    pattern_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "text_src", required = true, multiple = false)]
struct TextSource {
    /// Text values, whitespace or comma separated
    #[arg(short, long, allow_hyphen_values = true)]
    text: Option<String>,
    /// File whose first sequence is the text
    #[arg(long)]
    text_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Exact,
    Swap,
    Mismatch,
    Insertion,
    Deletion,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprArg {
    Pd,
    Sn,
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    pattern: PatternSource,
    #[command(flatten)]
    text: TextSource,
    #[arg(long, value_enum, default_value = "exact")]
    kind: Kind,
    #[arg(long, value_enum, default_value = "sn")]
    repr: ReprArg,
    /// τ-filter width (1..=128) or "off"; exact matching over sn only
    #[arg(long, default_value = "off")]
    filter: String,
    /// Print the work counters on stderr
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct ReprArgs {
    /// Sequence values, whitespace or comma separated
    #[arg(allow_hyphen_values = true)]
    sequence: String,
    /// Also print the signature as <bits>:<hex>
    #[arg(long)]
    signature: bool,
    /// Also print the τ-filter of the Skipped-Number array
    #[arg(long)]
    filter: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Canonical parentheses word, outer pair included
    Forest,
    /// Parentheses word in display form
    Parens,
    /// Schröder tree, `*` for a leaf and `[..]` for an internal node
    Schroder,
    /// A sequence with the given forest, each node valued by its depth
    Sequence,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: Format,
    #[arg(long, value_enum)]
    to: Format,
    #[arg(allow_hyphen_values = true)]
    input: String,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Target collision entropy in bits, in [0, log2 k]
    #[arg(long)]
    h2: Option<f64>,
    /// Number of sequences
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Text lengths (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    n: Vec<usize>,
    /// Pattern lengths (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "10")]
    m: Vec<usize>,
    /// Alphabet sizes, an integer or "m" (comma separated)
    #[arg(long, value_delimiter = ',', default_value = "4")]
    k: Vec<Alphabet>,
    /// Collision entropies (comma separated); uniform when absent
    #[arg(long, value_delimiter = ',')]
    h2: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = cforest::signature::DEFAULT_TAU)]
    tau: u32,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::MalformedWord { .. }
            | Error::InvalidSchroder(_)
            | Error::InvalidForest(_) => MALFORMED,
            _ => USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Match(args) => cmd_match(args, &mut out),
        Command::Repr(args) => cmd_repr(args, &mut out),
        Command::Convert(args) => cmd_convert(args, &mut out),
        Command::Count { n, ratio } => cmd_count(n, ratio, &mut out),
        Command::Enumerate { n, display } => cmd_enumerate(n, display, &mut out),
        Command::Gen(args) => cmd_gen(args, &mut out),
        Command::Bench(args) => cmd_bench(args, &mut out),
        Command::Selftest => cmd_selftest(&mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cfm: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn inline_sequence(s: &str) -> Result<Sequence, Failure> {
    Ok(parse_line(&s.replace(',', " "), 1)?)
}

fn load(inline: Option<&str>, file: Option<&PathBuf>) -> Result<Sequence, Failure> {
    if let Some(s) = inline {
        return inline_sequence(s);
    }
    let path = file.expect("clap enforces one source");
    let mut seqs = parse_sequence_file(path)?;
    if seqs.is_empty() {
        return Err(Failure {
            code: MALFORMED,
            message: format!("{}: no sequence found", path.display()),
        });
    }
    Ok(seqs.swap_remove(0))
}

fn parse_filter(s: &str) -> Result<Option<u32>, Failure> {
    if s == "off" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| Failure::usage(format!("--filter expects a width or 'off', got {s:?}")))
}

fn cmd_match(args: MatchArgs, out: &mut impl Write) -> CmdResult {
    let filter = parse_filter(&args.filter)?;
    let repr = match args.repr {
        ReprArg::Pd => Repr::Pd,
        ReprArg::Sn => Repr::Sn,
    };
    if filter.is_some() && (args.kind != Kind::Exact || repr != Repr::Sn) {
        return Err(Failure::usage(
            "--filter applies to exact matching over the sn representation only",
        ));
    }
    let p = load(
        args.pattern.pattern.as_deref(),
        args.pattern.pattern_file.as_ref(),
    )?;
    let t = load(args.text.text.as_deref(), args.text.text_file.as_ref())?;
    let diff = match args.kind {
        Kind::Exact => None,
        Kind::Swap => Some(DiffKind::Swap),
        Kind::Mismatch => Some(DiffKind::Mismatch),
        Kind::Insertion => Some(DiffKind::Insertion),
        Kind::Deletion => Some(DiffKind::Deletion),
    };
    let result = match (diff, filter) {
        (Some(kind), _) => approx_match(&p, &t, kind)?,
        (None, Some(tau)) => filtered_match(&p, &t, tau)?,
        (None, None) => exact_match(&p, &t, repr)?,
    };
    for pos in &result.positions {
        writeln!(out, "{pos}")?;
    }
    writeln!(out, "# occ={}", result.positions.len())?;
    if args.stats {
        let c = result.counters;
        eprintln!(
            "comparisons={} windows={} full_checks={}",
            c.comparisons(),
            c.windows,
            c.full_checks
        );
    }
    Ok(())
}

fn cmd_repr(args: ReprArgs, out: &mut impl Write) -> CmdResult {
    let x = inline_sequence(&args.sequence)?;
    writeln!(out, "pd {}", format_sequence(&parent_distance(&x).0))?;
    writeln!(out, "ref {}", format_sequence(&referent_table(&x).0))?;
    let sn = skipped_number(&x).0;
    writeln!(out, "sn {}", format_sequence(&sn))?;
    if args.signature {
        writeln!(out, "signature {}", signature(&x))?;
    }
    if let Some(tau) = args.filter {
        writeln!(out, "filter {}", tau_filter(&sn, tau)?.to_bit_string())?;
    }
    Ok(())
}

fn cmd_convert(args: ConvertArgs, out: &mut impl Write) -> CmdResult {
    let input = args.input.trim();
    let forest = match args.from {
        Format::Forest | Format::Parens => parens_to_cf(input)?,
        Format::Schroder => schroder_to_cf(&SchroderTree::parse(input)?)?,
        Format::Sequence => CartesianForest::from_sequence(&inline_sequence(input)?),
    };
    match args.to {
        Format::Forest => writeln!(out, "{}", cf_to_parens(&forest)?)?,
        Format::Parens => writeln!(out, "{}", cf_to_parens(&forest)?.display())?,
        Format::Schroder => writeln!(out, "{}", cf_to_schroder(&forest)?)?,
        Format::Sequence => writeln!(out, "{}", format_sequence(&forest.canonical_sequence()?))?,
    }
    Ok(())
}

fn cmd_count(n: usize, ratio: bool, out: &mut impl Write) -> CmdResult {
    let count = count_forests(n)?;
    writeln!(out, "{}", count.value)?;
    if ratio && n > 0 {
        writeln!(out, "# ratio={:.12}", growth_ratio(n))?;
    }
    Ok(())
}

fn cmd_enumerate(n: usize, display: bool, out: &mut impl Write) -> CmdResult {
    let mut words = Vec::new();
    for_each_forest_word(n, |w| {
        words.push(if display { w.display() } else { w.as_str() }.to_owned())
    })?;
    words.sort();
    for w in &words {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

fn cmd_gen(args: GenArgs, out: &mut impl Write) -> CmdResult {
    for i in 0..args.count {
        let seed = if i == 0 {
            args.seed
        } else {
            derive_seed(args.seed, &[i as u64])
        };
        let spec = GenSpec {
            n: args.n,
            k: args.k,
            seed,
            h2: args.h2,
        };
        writeln!(out, "{}", format_sequence(&spec.generate()?))?;
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs, out: &mut impl Write) -> CmdResult {
    let h2s: Vec<Option<f64>> = if args.h2.is_empty() {
        vec![None]
    } else {
        args.h2.iter().copied().map(Some).collect()
    };
    let sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(out),
    };
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    writer.write_record(CSV_HEADER)?;
    for &n in &args.n {
        for &m in &args.m {
            for &k in &args.k {
                for &h2 in &h2s {
                    let config = BenchConfig {
                        trials: args.trials,
                        n,
                        m,
                        k,
                        h2,
                        seed: args.seed,
                        tau: args.tau,
                    };
                    for record in run_bench(&config)? {
                        writer.serialize(record)?;
                    }
                }
            }
        }
    }
    writer.flush()?;
    Ok(())
}

fn cmd_selftest(out: &mut impl Write) -> CmdResult {
    let p = [2, 3, 1, 4, 1, 5];
    let t = [5, 7, 3, 6, 3, 7, 2, 8, 2, 4, 3, 3];
    let mut failures = 0;
    let mut check = |name: &str, ok: bool, out: &mut dyn Write| -> io::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {name}", if ok { "ok  " } else { "FAIL" })
    };

    let exact = [Repr::Pd, Repr::Sn]
        .iter()
        .all(|&r| exact_match(&p, &t, r).map(|m| m.positions) == Ok(vec![1, 5]));
    check("exact match example", exact, out)?;
    let filtered = filtered_match(&p, &t, 4).map(|m| m.positions) == Ok(vec![1, 5]);
    check("filtered match example", filtered, out)?;
    let sig = signature(&p).to_string();
    check("signature example", sig == "12:3940", out)?;
    let counts: Vec<String> = (0..=6)
        .map(|n| {
            count_forests(n)
                .map(|c| c.value.to_string())
                .unwrap_or_default()
        })
        .collect();
    check(
        "forest counts",
        counts == ["1", "1", "3", "11", "45", "197", "903"],
        out,
    )?;
    let mut round_trips = true;
    for n in 0..=6 {
        for_each_forest_word(n, |w| {
            let f = w.to_forest();
            round_trips &= cf_to_parens(&f).as_ref() == Ok(w)
                && cf_to_schroder(&f).and_then(|s| schroder_to_cf(&s)).as_ref() == Ok(&f)
                && f.canonical_sequence()
                    .map(|x| CartesianForest::from_sequence(&x) == f)
                    .unwrap_or(false)
                && ParenWord::parse(w.display()).as_ref() == Ok(w);
        })?;
    }
    check("encoding round trips", round_trips, out)?;
    let approx = approx_match(&[1, 2, 3], &[2, 1, 3, 3, 2, 1], DiffKind::Swap)
        .map(|m| m.positions)
        .is_ok_and(|pos| pos.contains(&1));
    check("swap match example", approx, out)?;

    if failures > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{failures} self-test check(s) failed"),
        });
    }
    Ok(())
}
