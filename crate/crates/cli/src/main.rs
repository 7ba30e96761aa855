use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use weyl_zircon::conjectures::{
    th2_equivalence_scan_with_progress, verify_c3_with_progress, verify_c4_with_progress,
    verify_delanoy_with_progress, Progress,
};
use weyl_zircon::group::DEFAULT_ORDER_CAP;
use weyl_zircon::{
    bruhat_graph, c4_witness, delanoy_witness, dual_zircon_check, interval, is_rationally_smooth,
    is_smooth_type_a, is_zircon, isomorphism, ConjectureId, Family, GroupDescriptor, IntervalPoset,
    LowerIntervalCatalog, ScanOptions, WeylGroup,
};

/// Groups at least this large need `--allow-large` for a scan.
const LARGE_ORDER: usize = 40_320;

#[derive(Parser)]
#[command(
    name = "zircon",
    version,
    about = "Bruhat intervals, special matchings and zircons in Weyl groups of types A, B, D"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan every interval of a group for a conjecture.
    Verify(VerifyArgs),
    /// Report on a single interval [u, w].
    Check(CheckArgs),
    /// Decide whether two intervals are isomorphic.
    Iso(IsoArgs),
    /// Write an interval's Hasse diagram or Bruhat graph.
    Export(ExportArgs),
    /// List lower intervals of a given length up to isomorphism.
    Catalog(CatalogArgs),
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// A, B or D.
    #[arg(long)]
    family: Family,
    #[arg(long)]
    rank: usize,
    /// Refuse groups with more elements than this.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP as u64)]
    max_order: u64,
}

impl GroupArgs {
    fn build(&self) -> Result<Arc<WeylGroup>> {
        let d = GroupDescriptor::new(self.family, self.rank)?;
        Ok(Arc::new(WeylGroup::with_cap(d, self.max_order as u128)?))
    }
}

#[derive(Args)]
struct IntervalArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Bottom element: a window such as "2,1,3" or a word such as "s1*s2".
    #[arg(long, default_value = "e")]
    u: String,
    /// Top element, in the same notation.
    #[arg(long)]
    w: String,
}

impl IntervalArgs {
    fn build(&self) -> Result<IntervalPoset> {
        let g = self.group.build()?;
        let u = g.parse_element(&self.u)?;
        let w = g.parse_element(&self.w)?;
        Ok(interval(&g, &u, &w)?)
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// c4, c3, delanoy or th2.
    conjecture: ConjectureId,
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint file if it exists.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Skip intervals with more elements than this (not used by c4).
    #[arg(long, default_value_t = 20_000)]
    cap_interval: usize,
    /// Write elapsed_ms as 0 so reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    /// Top elements between progress lines and checkpoints.
    #[arg(long, default_value_t = 100)]
    progress_every: usize,
    /// Needed for groups with 40320 or more elements.
    #[arg(long)]
    allow_large: bool,
    /// Cross-check the type-A single-degree test against the full degree scan
    /// (always on in debug builds).
    #[arg(long)]
    cross_check: bool,
    /// Longest lower interval enumerated for the th2 catalog.
    #[arg(long, default_value_t = 6)]
    catalog_length: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    interval: IntervalArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct IsoArgs {
    #[command(flatten)]
    interval: IntervalArgs,
    /// Group of the second interval; defaults to the first group.
    #[arg(long)]
    family2: Option<Family>,
    #[arg(long)]
    rank2: Option<usize>,
    #[arg(long, default_value = "e")]
    u2: String,
    #[arg(long, required_unless_present = "lower_sweep")]
    w2: Option<String>,
    /// Compare against every lower interval [e, x] of the same length in the second group.
    #[arg(long)]
    lower_sweep: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Hasse,
    Bruhat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Edges,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    interval: IntervalArgs,
    #[arg(long, value_enum, default_value = "hasse")]
    graph: GraphKind,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    length: usize,
    /// Comma-separated groups such as "A4,D4"; defaults to A1..A6, B2..B4, D4, D5.
    #[arg(long, value_delimiter = ',')]
    groups: Vec<GroupDescriptor>,
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    if args.jobs == 0 || args.cap_interval == 0 || args.progress_every == 0 {
        bail!("--jobs, --cap-interval and --progress-every must be positive");
    }
    let g = args.group.build()?;
    if g.order() >= LARGE_ORDER && !args.allow_large {
        bail!(
            "{} has {} elements; pass --allow-large (and preferably --checkpoint) to scan it",
            g.descriptor(),
            g.order()
        );
    }
    let opts = ScanOptions {
        jobs: args.jobs,
        cap_interval: Some(args.cap_interval),
        checkpoint: args.checkpoint.clone(),
        resume: args.resume,
        cross_check: args.cross_check || cfg!(debug_assertions),
        record_timing: !args.no_timing,
        batch_size: args.progress_every,
    };
    let start = Instant::now();
    let progress = |p: Progress| {
        eprintln!(
            "[{:>7.1}s] {}/{} tops, {} counterexamples",
            start.elapsed().as_secs_f64(),
            p.tops_done,
            p.tops_total,
            p.counterexamples
        );
    };
    let report = match args.conjecture {
        ConjectureId::C4 => verify_c4_with_progress(&g, &opts, &progress)?,
        ConjectureId::C3 => verify_c3_with_progress(&g, &opts, &progress)?,
        ConjectureId::Delanoy2 => verify_delanoy_with_progress(&g, &opts, &progress)?,
        ConjectureId::Th2Equiv => {
            let length = args.catalog_length.min(g.length(g.longest())? as usize);
            eprintln!("building lower-interval catalog up to length {length}");
            let catalog =
                LowerIntervalCatalog::build(&LowerIntervalCatalog::default_groups(), length)?;
            th2_equivalence_scan_with_progress(&g, &opts, &catalog, &progress)?
        }
    };
    write_output(args.out.as_ref(), &report.to_json())?;
    eprintln!(
        "{} on {}: {} intervals, {} qualifying, {} counterexamples{}",
        report.conjecture,
        report.group,
        report.intervals_scanned,
        report.qualifying,
        report.counterexamples.len(),
        if report.partial {
            " (partial: some intervals exceeded the cap)"
        } else {
            ""
        }
    );
    Ok(if report.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_check(args: &CheckArgs) -> Result<()> {
    let mut out = io::stdout().lock();
    let iv = args.interval.build()?;
    let g = iv.group().clone();
    let (u, w) = (iv.bottom().clone(), iv.top().clone());
    let verdict = is_rationally_smooth(&iv);
    let type_a = is_smooth_type_a(&iv).ok();
    let label = |s: Option<usize>| s.map(|s| g.generator_label(s));
    let c4 = label(c4_witness(&g, &u, &w)?);
    let delanoy = label(delanoy_witness(&g, &u, &w)?);
    let dual_zircon = dual_zircon_check(&iv);
    let zircon = is_zircon(&iv.to_poset())?;
    let witness = verdict.witness_element().map(|x| x.to_string());
    if args.json {
        let v = json!({
            "group": g.descriptor(),
            "u": u.window(),
            "w": w.window(),
            "size": iv.len(),
            "length": iv.length(),
            "smooth": verdict.rationally_smooth,
            "smooth_type_a": type_a,
            "singular_witness": witness,
            "zircon": zircon,
            "dual_zircon": dual_zircon,
            "c4_witness": c4,
            "delanoy_witness": delanoy,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        return Ok(());
    }
    writeln!(
        out,
        "interval: [{}, {}] in {}",
        g.word_string(&u)?,
        g.word_string(&w)?,
        g.descriptor()
    )?;
    writeln!(out, "size: {}", iv.len())?;
    writeln!(out, "length: {}", iv.length())?;
    writeln!(out, "smooth: {}", verdict.rationally_smooth)?;
    if let Some(a) = type_a {
        writeln!(out, "smooth (type A single-degree test): {a}")?;
    }
    if let Some(x) = witness {
        writeln!(out, "singular witness: {x}")?;
    }
    writeln!(out, "zircon: {zircon}")?;
    writeln!(out, "dual zircon: {dual_zircon}")?;
    writeln!(out, "c4_witness: {}", c4.as_deref().unwrap_or("none"))?;
    writeln!(
        out,
        "delanoy_witness: {}",
        delanoy.as_deref().unwrap_or("none")
    )?;
    Ok(())
}

fn cmd_iso(args: &IsoArgs) -> Result<()> {
    let mut out = io::stdout().lock();
    let first = args.interval.build()?;
    let second_group = GroupArgs {
        family: args.family2.unwrap_or(args.interval.group.family),
        rank: args.rank2.unwrap_or(args.interval.group.rank),
        max_order: args.interval.group.max_order,
    }
    .build()?;
    let p = first.to_poset();
    if args.lower_sweep {
        let mut matches = 0;
        let mut total = 0;
        for x in 0..second_group.order() {
            if second_group.length_of_index(x) as usize != first.length() {
                continue;
            }
            total += 1;
            let lower = IntervalPoset::from_indices(&second_group, 0, x).expect("e <= x");
            let word = second_group.word_string(second_group.element(x))?;
            match isomorphism(&p, &lower.to_poset()) {
                Ok(_) => {
                    matches += 1;
                    writeln!(out, "[e, {word}]: isomorphic")?;
                }
                Err(cert) => writeln!(out, "[e, {word}]: not isomorphic ({cert})")?,
            }
        }
        writeln!(
            out,
            "{matches} of {total} lower intervals of length {} in {} are isomorphic",
            first.length(),
            second_group.descriptor()
        )?;
        return Ok(());
    }
    let w2 = args.w2.as_deref().expect("clap requires --w2");
    let u2 = second_group.parse_element(&args.u2)?;
    let w2 = second_group.parse_element(w2)?;
    let second = interval(&second_group, &u2, &w2)?;
    match isomorphism(&p, &second.to_poset()) {
        Ok(map) => {
            writeln!(out, "isomorphic")?;
            for (i, &j) in map.iter().enumerate() {
                writeln!(out, "{} -> {}", first.element(i), second.element(j))?;
            }
        }
        Err(cert) => writeln!(out, "not isomorphic: {cert}")?,
    }
    Ok(())
}

fn cmd_export(args: &ExportArgs) -> Result<()> {
    let iv = args.interval.build()?;
    let text = match (args.graph, args.format) {
        (GraphKind::Hasse, Format::Dot) => iv.to_dot(false),
        (GraphKind::Bruhat, Format::Dot) => iv.to_dot(true),
        (GraphKind::Hasse, Format::Edges) => iv.to_poset().to_edge_list(),
        (GraphKind::Bruhat, Format::Edges) => {
            let mut out = format!("{}\n", iv.len());
            for e in bruhat_graph(&iv).edges {
                out.push_str(&format!("{} {}\n", e.low, e.high));
            }
            out
        }
    };
    write_output(args.out.as_ref(), &text)
}

fn cmd_catalog(args: &CatalogArgs) -> Result<()> {
    let mut out = io::stdout().lock();
    let groups = if args.groups.is_empty() {
        LowerIntervalCatalog::default_groups()
    } else {
        args.groups.clone()
    };
    let cat = LowerIntervalCatalog::build(&groups, args.length)?;
    let classes = cat.classes(args.length);
    writeln!(
        out,
        "{} classes of lower intervals of length {}",
        classes.len(),
        args.length
    )?;
    for (i, c) in classes.iter().enumerate() {
        let p = &c.representative.poset;
        writeln!(
            out,
            "class {i}: {} elements, rank sizes {:?}, {} members: {}",
            p.len(),
            p.rank_sizes(),
            c.members.len(),
            c.members.join(" ")
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Check(a) => cmd_check(a).map(|_| ExitCode::SUCCESS),
        Command::Iso(a) => cmd_iso(a).map(|_| ExitCode::SUCCESS),
        Command::Export(a) => cmd_export(a).map(|_| ExitCode::SUCCESS),
        Command::Catalog(a) => cmd_catalog(a).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
