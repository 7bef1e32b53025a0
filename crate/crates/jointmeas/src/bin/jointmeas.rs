//! Command-line front end: JSON in, JSON (or CSV) out.

use clap::{Args, Parser, Subcommand};
use jointmeas::report::{
    self, document_to_csv, parse_input, serialize_document, ResultDocument, RunOptions,
};
use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "jointmeas", version, about = "Joint measurability of unbiased qubit measurement triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input JSON document (defaults to stdin)
    #[arg(long, value_name = "PATH")]
    input: Option<String>,
    /// Output path (defaults to stdout)
    #[arg(long, value_name = "PATH")]
    output: Option<String>,
    /// Seed for all randomized steps
    #[arg(long)]
    seed: Option<u64>,
    /// Number of search restarts
    #[arg(long)]
    restarts: Option<usize>,
    /// Margin tolerance override
    #[arg(long)]
    tol: Option<f64>,
    /// Emit a flattened key,value CSV instead of JSON
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide joint measurability of a triple
    JmCheck(Io),
    /// Incompatibility lower bound on the total approximation error
    Bound(Io),
    /// Analytic (or numeric) optimal jointly measurable approximation
    Approx {
        #[command(flatten)]
        io: Io,
        /// Verify the result against the independent numerical search
        #[arg(long)]
        verify: bool,
    },
    /// Worst-case statistical distances between two triples
    Distance(Io),
    /// Fermat-Torricelli point of four points (or of a triple's vertices)
    FtPoint(Io),
}

fn read_input(io: &Io) -> std::io::Result<String> {
    match &io.input {
        Some(path) => fs::read_to_string(path),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(io: &Io, text: &str) -> std::io::Result<()> {
    match &io.output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn summarize(doc: &ResultDocument) -> String {
    if let Some(jm) = &doc.jm {
        return format!(
            "jointly measurable: {} (margin {:.6e})",
            jm.jointly_measurable, jm.margin
        );
    }
    if let Some(d) = &doc.distance {
        return format!("worst-case total distance: {:.12}", d.total);
    }
    if let Some(ft) = &doc.ft {
        return format!(
            "FT point ({:.9}, {:.9}, {:.9}), total distance {:.12}",
            ft.point.x, ft.point.y, ft.point.z, ft.total_distance
        );
    }
    let mut parts = Vec::new();
    if let Some(case) = &doc.case {
        parts.push(format!("case: {case:?}"));
    }
    if let Some(b) = &doc.bound {
        parts.push(format!("bound: {:.12}", b.bound));
    }
    if let Some(a) = &doc.approximation {
        parts.push(format!(
            "achieved: {:.12} (attains bound: {})",
            a.achieved, a.attains_bound
        ));
    }
    if let Some(o) = &doc.oracle {
        parts.push(format!("search optimum: {:.12}", o.best_value));
    }
    if let Some(c) = &doc.certificate {
        parts.push(format!(
            "verification: {}",
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    parts.join("; ")
}

fn run(cli: Cli) -> Result<(), u8> {
    let (io, runner): (&Io, Box<dyn Fn(&_, &_) -> jointmeas::Result<ResultDocument>>) =
        match &cli.command {
            Command::JmCheck(io) => (io, Box::new(report::run_jm_check)),
            Command::Bound(io) => (io, Box::new(report::run_bound)),
            Command::Approx { io, .. } => (io, Box::new(report::run_approx)),
            Command::Distance(io) => (io, Box::new(report::run_distance)),
            Command::FtPoint(io) => (io, Box::new(report::run_ft_point)),
        };
    let verify = matches!(&cli.command, Command::Approx { verify: true, .. });

    let text = read_input(io).map_err(|e| {
        eprintln!("error: {e}");
        2u8
    })?;
    let input = parse_input(&text).map_err(|e| {
        eprintln!("error: {e}");
        e.exit_code() as u8
    })?;
    let opts = RunOptions::resolve(&input, io.seed, io.restarts, io.tol, verify);
    let doc = runner(&input, &opts).map_err(|e| {
        eprintln!("error: {e}");
        e.exit_code() as u8
    })?;

    let out = if io.csv {
        document_to_csv(&doc)
    } else {
        serialize_document(&doc)
    }
    .map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })?;
    write_output(io, &out).map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })?;
    eprintln!("{}", summarize(&doc));

    if doc.certificate.as_ref().is_some_and(|c| !c.pass) {
        return Err(6);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
