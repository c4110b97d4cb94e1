//! Command implementations behind the `netfmt` binary.
//!
//! Every command returns its exit status: 0 on success, 1 when validation
//! reports errors, 2 on parse, I/O or usage failures. Findings and
//! diagnostics go to the error stream, data to the output stream.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{anyhow, bail, Context, Result};
use chrono::NaiveDate;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use netfmt::netsjson::{parse_netsjson_bytes, validate_netsjson_bytes, write_netsjson};
use netfmt::pajek::{
    align_partition, partition_from_property, read_pajek_net, write_pajek_clu, write_pajek_net,
    PajekError, PajekWriteOptions,
};
use netfmt::tabular::{
    network_to_tables, read_node_table, tables_to_network, write_table, AssembleOptions, Table,
    TableError, TableOptions,
};
use netfmt::validation::{check_network, check_temporal, parse_date};
use netfmt::{
    canonical_order, defactorize_network, factorize_network, network_stats, Finding, Level,
    Location, Network, Rule, Severity, ValidationReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "netfmt",
    version,
    about = "Convert, validate and inspect network description files"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert between node/link tables, Pajek NET and NetsJSON.
    Convert(ConvertArgs),
    /// Check files and report findings.
    Validate(ValidateArgs),
    /// Print counts, title, dates and events.
    Info(InfoArgs),
    /// Write a node property as a Pajek CLU partition.
    Partition(PartitionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Semicolon-delimited node and link tables.
    Csv,
    /// Pajek NET.
    Net,
    /// NetsJSON basic.
    Netsjson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum LevelArg {
    #[default]
    Lenient,
    Strict,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Lenient => Level::Lenient,
            LevelArg::Strict => Level::Strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    /// One JSON object per finding.
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input file; `-` reads standard input.
    #[arg(short, long, value_name = "PATH")]
    pub input: Option<String>,
    /// Node table (table input).
    #[arg(long, value_name = "PATH")]
    pub nodes: Option<PathBuf>,
    /// Link table (table input).
    #[arg(long, value_name = "PATH")]
    pub links: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long = "from", visible_alias = "format", value_enum)]
    pub from: Option<Format>,
    /// Table links without a type are edges instead of arcs.
    #[arg(long)]
    pub undirected: bool,
    /// Table cell delimiter.
    #[arg(long, default_value_t = ';')]
    pub delimiter: char,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long, value_enum, default_value_t)]
    pub level: LevelArg,
    #[arg(long, value_enum, default_value_t)]
    pub report: ReportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output format; inferred from the output path when omitted.
    #[arg(long, value_enum)]
    pub to: Option<Format>,
    /// Output file; `-` writes standard output.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<String>,
    /// Node table output (table output).
    #[arg(long, value_name = "PATH")]
    pub out_nodes: Option<PathBuf>,
    /// Link table output (table output).
    #[arg(long, value_name = "PATH")]
    pub out_links: Option<PathBuf>,
    /// Write integer codes instead of labels.
    #[arg(long)]
    pub factorize: bool,
    /// Index base of the output; defaults to the input's.
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..=1))]
    pub base: Option<i64>,
    /// Append coordinates to Pajek vertex lines.
    #[arg(long)]
    pub coordinates: bool,
    /// Single-line NetsJSON without default members.
    #[arg(long)]
    pub compact: bool,
    /// Creation/modification date recorded when the input has none
    /// (YYYY-MM-DD). Defaults to SOURCE_DATE_EPOCH, then today.
    #[arg(long)]
    pub date: Option<NaiveDate>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Files to check (NET or NetsJSON); checked in parallel, reported in order.
    #[arg(value_name = "PATH")]
    pub paths: Vec<String>,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Take property values from this node table, matching nodes by label.
    #[arg(long, value_name = "NODES")]
    pub via_csv: Option<PathBuf>,
    /// Node property to partition by.
    #[arg(long)]
    pub property: String,
    /// CLU output; `-` writes standard output.
    #[arg(short, long, value_name = "PATH")]
    pub output: String,
}

/// Parses arguments, including checks that span several flags.
pub fn parse_args<I, T>(args: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    if let Command::Convert(c) = &cli.command {
        if c.base == Some(0) && output_format(c).ok() == Some(Format::Net) {
            return Err(Cli::command().error(
                clap::error::ErrorKind::ArgumentConflict,
                "Pajek output is 1-based; --base 0 cannot be used with --to net",
            ));
        }
    }
    Ok(cli)
}

/// Runs a parsed command.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Convert(a) => cmd_convert(a, out, err),
        Command::Validate(a) => cmd_validate(a, out, err),
        Command::Info(a) => cmd_info(a, out),
        Command::Partition(a) => cmd_partition(a, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "netfmt: {e:#}");
        EXIT_FAILURE
    })
}

// ---------------------------------------------------------------------------
// Formats and input

fn format_of_path(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
        "csv" => Some(Format::Csv),
        "net" => Some(Format::Net),
        "json" => Some(Format::Netsjson),
        _ => None,
    }
}

fn input_format(input: &InputArgs) -> Result<Format> {
    if let Some(f) = input.from {
        return Ok(f);
    }
    if input.nodes.is_some() || input.links.is_some() {
        return Ok(Format::Csv);
    }
    input
        .input
        .as_deref()
        .and_then(|p| format_of_path(Path::new(p)))
        .ok_or_else(|| anyhow!("cannot infer the input format; pass --from"))
}

fn output_format(c: &ConvertArgs) -> Result<Format> {
    if let Some(f) = c.to {
        return Ok(f);
    }
    if c.out_nodes.is_some() || c.out_links.is_some() {
        return Ok(Format::Csv);
    }
    c.output
        .as_deref()
        .and_then(|p| format_of_path(Path::new(p)))
        .ok_or_else(|| anyhow!("cannot infer the output format; pass --to"))
}

fn read_source(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .context("cannot read standard input")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("cannot read {path}"))
    }
}

fn table_options(input: &InputArgs) -> TableOptions {
    TableOptions {
        delimiter: input.delimiter,
        ..TableOptions::default()
    }
}

/// A network read from disk, plus document-level findings for NetsJSON.
struct Loaded {
    network: Network,
    report: ValidationReport,
}

/// Outcome of reading an input: a network, or findings that prevent one.
enum Load {
    Ok(Box<Loaded>),
    Invalid(ValidationReport),
}

fn parse_failure(level: Level, location: Location, message: String) -> ValidationReport {
    let mut report = ValidationReport::new(level);
    report.add(Rule::ParseError, location, message);
    report
}

fn table_location(e: &TableError) -> Location {
    match e {
        TableError::Parse { line, .. }
        | TableError::Ragged { line, .. }
        | TableError::DuplicateName { line, .. } => Location::Line(*line as usize),
        TableError::UnknownEndpoint { row, .. } => Location::Row {
            table: "link",
            row: *row,
        },
        TableError::Cell { table, row, .. } => Location::Row { table, row: *row },
        _ => Location::Document,
    }
}

fn pajek_location(e: &PajekError) -> Location {
    match e {
        PajekError::Parse { line, .. }
        | PajekError::Range { line, .. }
        | PajekError::UnknownSection { line, .. }
        | PajekError::Conflict { line, .. }
            if *line > 0 =>
        {
            Location::Line(*line)
        }
        _ => Location::Document,
    }
}

fn load(input: &InputArgs, format: Format, base: Option<i64>, level: Level) -> Result<Load> {
    match format {
        Format::Csv => {
            let (Some(nodes), Some(links)) = (&input.nodes, &input.links) else {
                bail!("table input needs both --nodes and --links");
            };
            let opts = table_options(input);
            let node_bytes = read_source(&nodes.to_string_lossy())?;
            let link_bytes = read_source(&links.to_string_lossy())?;
            let tables = read_node_table(&node_bytes[..], &opts).and_then(|n| {
                let l = netfmt::tabular::read_link_table(&link_bytes[..], &opts)?;
                let assemble = AssembleOptions {
                    directed: !input.undirected,
                    base: base.unwrap_or(1),
                    decimal_separator: opts.decimal_separator,
                };
                tables_to_network(&n, &l, &assemble)
            });
            Ok(match tables {
                Ok(network) => Load::Ok(Box::new(Loaded {
                    network,
                    report: ValidationReport::new(level),
                })),
                Err(TableError::Io(e)) => return Err(e.into()),
                Err(e) => Load::Invalid(parse_failure(level, table_location(&e), e.to_string())),
            })
        }
        Format::Net => {
            let path = input
                .input
                .as_deref()
                .ok_or_else(|| anyhow!("NET input needs -i PATH"))?;
            let bytes = read_source(path)?;
            Ok(match read_pajek_net(&bytes[..]) {
                Ok(network) => Load::Ok(Box::new(Loaded {
                    network,
                    report: ValidationReport::new(level),
                })),
                Err(PajekError::Io(e)) => return Err(e.into()),
                Err(e) => Load::Invalid(parse_failure(level, pajek_location(&e), e.to_string())),
            })
        }
        Format::Netsjson => {
            let path = input
                .input
                .as_deref()
                .ok_or_else(|| anyhow!("NetsJSON input needs -i PATH"))?;
            let bytes = read_source(path)?;
            let report = validate_netsjson_bytes(&bytes, level);
            if report.has_errors() {
                return Ok(Load::Invalid(report));
            }
            let network =
                parse_netsjson_bytes(&bytes).with_context(|| format!("cannot read {path}"))?;
            Ok(Load::Ok(Box::new(Loaded { network, report })))
        }
    }
}

/// Exit status for a report: parse failures are 2, other errors 1.
fn report_status(report: &ValidationReport) -> u8 {
    let fatal = report
        .errors()
        .any(|f| matches!(f.rule, Rule::JsonSyntax | Rule::ParseError));
    if fatal {
        EXIT_FAILURE
    } else if report.has_errors() {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn render(report: &ValidationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Json => report.render_json_lines(),
    }
}

// ---------------------------------------------------------------------------
// Output

enum Sink<'a> {
    Stdout(&'a mut dyn Write),
    File(PathBuf),
}

fn sink<'a>(path: &str, out: &'a mut dyn Write) -> Sink<'a> {
    if path == "-" {
        Sink::Stdout(out)
    } else {
        Sink::File(PathBuf::from(path))
    }
}

fn temp_for(path: &Path, content: &[u8]) -> Result<tempfile::NamedTempFile> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a file in {}", dir.display()))?;
    tmp.write_all(content)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(tmp)
}

/// Writes all outputs or none: every file is staged next to its target and
/// renamed into place only after all were staged.
fn write_all(outputs: Vec<(Sink<'_>, Vec<u8>)>) -> Result<()> {
    let mut staged = Vec::new();
    for (sink, content) in outputs {
        match sink {
            Sink::Stdout(out) => {
                out.write_all(&content)?;
                out.flush()?;
            }
            Sink::File(path) => staged.push((temp_for(&path, &content)?, path)),
        }
    }
    for (tmp, path) in staged {
        tmp.persist(&path)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn stamp_date(explicit: Option<NaiveDate>) -> String {
    let date = explicit
        .or_else(|| {
            let secs: i64 = std::env::var("SOURCE_DATE_EPOCH")
                .ok()?
                .trim()
                .parse()
                .ok()?;
            chrono::DateTime::from_timestamp(secs, 0).map(|d| d.date_naive())
        })
        .unwrap_or_else(|| chrono::Local::now().date_naive());
    date.format("%Y-%m-%d").to_string()
}

/// Sets a labeled network's index base, rebasing its coding tables.
fn rebase(mut net: Network, base: i64) -> Network {
    net.info.org = base;
    net.relations = net.relations.rebased(base);
    net.node_coding = net.node_coding.rebased(base);
    for table in net.property_codings.values_mut() {
        *table = table.rebased(base);
    }
    net
}

// ---------------------------------------------------------------------------
// Commands

pub fn cmd_convert(args: &ConvertArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let from = input_format(&args.input)?;
    let to = output_format(args)?;
    let level = Level::from(args.report.level);
    let outputs = match to {
        Format::Csv => match (&args.out_nodes, &args.out_links) {
            (Some(n), Some(l)) => vec![
                n.to_string_lossy().into_owned(),
                l.to_string_lossy().into_owned(),
            ],
            _ => bail!("table output needs both --out-nodes and --out-links"),
        },
        _ => vec![args
            .output
            .clone()
            .ok_or_else(|| anyhow!("missing output path; pass -o PATH or -o -"))?],
    };

    let loaded = match load(&args.input, from, args.base, level)? {
        Load::Ok(l) => l,
        Load::Invalid(report) => {
            err.write_all(render(&report, args.report.report).as_bytes())?;
            return Ok(report_status(&report));
        }
    };
    let mut report = loaded.report;
    let base = args.base.unwrap_or(loaded.network.info.org);
    let labeled = rebase(defactorize_network(&loaded.network)?, base);
    let net = if args.factorize {
        factorize_network(&labeled, base)?
    } else {
        labeled
    };
    let mut net = canonical_order(&net);
    if net.info.created.is_none() {
        net.info.created = Some(stamp_date(args.date));
    }
    if net.info.modified.is_none() {
        net.info.modified = net.info.created.clone();
    }

    report.extend(check_network(&net, level));
    report.extend(check_temporal(&net, level));
    report.sort();
    err.write_all(render(&report, args.report.report).as_bytes())?;
    if report.has_errors() {
        return Ok(EXIT_INVALID);
    }

    let contents: Vec<Vec<u8>> = match to {
        Format::Net => {
            let opts = PajekWriteOptions {
                base: 1,
                coordinates: args.coordinates,
            };
            vec![write_pajek_net(&net, &opts)?.into_bytes()]
        }
        Format::Netsjson => vec![write_netsjson(&net, !args.compact)?.into_bytes()],
        Format::Csv => {
            let opts = table_options(&args.input);
            let (nodes, links) = network_to_tables(&net, opts.decimal_separator)?;
            let (mut n, mut l) = (Vec::new(), Vec::new());
            write_table(&nodes, &opts, &mut n)?;
            write_table(&links, &opts, &mut l)?;
            vec![n, l]
        }
    };
    let mut out = Some(out);
    let sinks: Vec<(Sink<'_>, Vec<u8>)> = outputs
        .iter()
        .zip(contents)
        .map(|(path, content)| {
            let s = match (path.as_str(), out.take()) {
                ("-", Some(o)) => Sink::Stdout(o),
                (p, o) => {
                    out = o;
                    Sink::File(PathBuf::from(p))
                }
            };
            (s, content)
        })
        .collect();
    write_all(sinks)?;
    Ok(EXIT_OK)
}

/// Checks one input; returns the rendered report and the exit status.
fn validate_one(input: &InputArgs, format: Format, report_args: &ReportArgs) -> (String, u8) {
    let level = Level::from(report_args.level);
    let outcome = load(input, format, None, level).map(|l| match l {
        Load::Ok(loaded) => {
            let Loaded {
                network,
                mut report,
            } = *loaded;
            report.extend(check_network(&network, level));
            report.extend(check_temporal(&network, level));
            report.sort();
            report
        }
        Load::Invalid(report) => report,
    });
    match outcome {
        Ok(report) => (render(&report, report_args.report), report_status(&report)),
        Err(e) => (format!("netfmt: {e:#}\n"), EXIT_FAILURE),
    }
}

pub fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let mut jobs: Vec<InputArgs> = args
        .paths
        .iter()
        .map(|p| InputArgs {
            input: Some(p.clone()),
            ..args.input.clone()
        })
        .collect();
    if jobs.is_empty() {
        jobs.push(args.input.clone());
    }
    let formats = jobs.iter().map(input_format).collect::<Result<Vec<_>>>()?;
    let results: Vec<(String, u8)> = thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .zip(&formats)
            .map(|(job, &format)| scope.spawn(move || validate_one(job, format, &args.report)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("validation thread panicked"))
            .collect()
    });
    let many = jobs.len() > 1;
    let mut status = EXIT_OK;
    for (job, (text, code)) in jobs.iter().zip(results) {
        let name = job.input.as_deref().unwrap_or("tables");
        for line in text.lines() {
            if many {
                writeln!(err, "{name}: {line}")?;
            } else {
                writeln!(err, "{line}")?;
            }
        }
        if many {
            let verdict = if code == EXIT_OK { "ok" } else { "invalid" };
            writeln!(out, "{name}: {verdict}")?;
        }
        status = status.max(code);
    }
    Ok(status)
}

fn load_network(input: &InputArgs) -> Result<Network> {
    let format = input_format(input)?;
    match load(input, format, None, Level::Lenient)? {
        Load::Ok(l) => Ok(l.network),
        Load::Invalid(report) => {
            let first = report
                .errors()
                .next()
                .map_or_else(String::new, Finding::to_string);
            bail!("cannot read input: {first}")
        }
    }
}

pub fn cmd_info(args: &InfoArgs, out: &mut dyn Write) -> Result<u8> {
    let net = load_network(&args.input)?;
    let stats = network_stats(&net)?;
    let info = &net.info;
    let mut rows: Vec<(&str, String)> = Vec::new();
    if !info.title.is_empty() {
        rows.push(("title", info.title.clone()));
    }
    if !info.network.is_empty() {
        rows.push(("network", info.network.clone()));
    }
    rows.extend([
        ("nodes", stats.n_nodes.to_string()),
        ("arcs", stats.n_arcs.to_string()),
        ("edges", stats.n_edges.to_string()),
        ("relations", stats.n_relations.to_string()),
        ("modes", stats.n_modes.to_string()),
        ("org", info.org.to_string()),
    ]);
    if let Some(c) = &info.created {
        rows.push(("created", c.clone()));
    }
    if let Some(m) = &info.modified {
        rows.push(("modified", m.clone()));
    }
    if let Some(t) = &info.time {
        rows.push(("time", format!("{}..{}", t.t_min, t.t_max)));
    }
    rows.push(("events", info.meta.len().to_string()));
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (key, value) in &rows {
        writeln!(out, "{key:>width$}: {value}")?;
    }
    let mut events: Vec<_> = info.meta.iter().collect();
    events.sort_by_key(|e| (parse_date(&e.date).is_none(), parse_date(&e.date)));
    for event in events {
        writeln!(out, "{:>width$}  {}  {}", "", event.date, event.title)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_partition(args: &PartitionArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let net = load_network(&args.input)?;
    let source = match &args.via_csv {
        Some(path) => {
            let bytes = read_source(&path.to_string_lossy())?;
            let nodes = read_node_table(&bytes[..], &table_options(&args.input))?;
            let links = Table {
                header: vec!["from".into(), "relation".into(), "to".into()],
                rows: Vec::new(),
            };
            tables_to_network(&nodes, &links, &AssembleOptions::default())?
        }
        None => defactorize_network(&net)?,
    };
    let partition = match partition_from_property(&source, &args.property, 1, 0) {
        Ok(p) => p,
        Err(PajekError::UnknownProperty(name)) => {
            let finding = Finding {
                severity: Severity::Error,
                rule: Rule::UnknownProperty,
                location: Location::Document,
                message: format!("no node carries property {name:?}"),
            };
            writeln!(err, "{finding}")?;
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e.into()),
    };
    let partition = if args.via_csv.is_some() {
        align_partition(&partition, &source, &net)
    } else {
        partition
    };
    let text = write_pajek_clu(&partition)?;
    write_all(vec![(sink(&args.output, out), text.into_bytes())])?;
    Ok(EXIT_OK)
}
