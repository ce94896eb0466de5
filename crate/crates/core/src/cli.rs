//! The `cartwreath` batch verifier.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cartdec::parse_decomposition;
use crate::diagonal::CayleyTable;
use crate::error::Error;
use crate::perm::{parse_generator_file, parse_index_list, Permutation, DEFAULT_ELEMENT_CAP};
use crate::verify::{self, CheckOptions, VerificationReport};
use crate::wreath::{WreathContext, WreathElement};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cartwreath", version, about = "Verify Cartesian decompositions and wreath-product embeddings")]
#[command(after_help = "Exit codes: 0 verified, 1 verification failed, 2 invalid input, 3 budget exceeded.")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of group elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartesian decompositions.
    Cartdec {
        #[command(subcommand)]
        command: CartdecCommand,
    },
    /// The full wreath product Sym Γ wr S_k in product action on Γ^k.
    Wreath {
        #[command(subcommand)]
        command: WreathCommand,
    },
    /// Embed a permutation group preserving a homogeneous Cartesian decomposition.
    Embed {
        /// Generator file: degree on the first line, then one permutation per line in image notation.
        #[arg(long)]
        group: PathBuf,
        /// Decomposition file: one block per line, partitions separated by blank lines.
        #[arg(long)]
        decomp: PathBuf,
    },
    /// Run a proposition checker on a group given by its Cayley table.
    Prop {
        #[arg(value_enum)]
        proposition: Proposition,
        /// Cayley table file: the order on the first line, then one row per line, identity at 0.
        #[arg(long)]
        table: PathBuf,
        /// Number of coordinates (k for 3.2 and 3.4, n for 3.6).
        #[arg(long, visible_alias = "n", default_value_t = 2)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CartdecCommand {
    /// Check that the partitions in a file form a Cartesian decomposition.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum WreathCommand {
    /// Order of the full wreath product, by enumeration.
    Order {
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        k: usize,
    },
    /// Image of a point of Γ^k under a wreath element.
    #[command(after_help = "ELEMENT is `<base>|<top>`: the base lists one permutation of Γ per coordinate in \
image notation, coordinates separated by `;` (`id` for the identity); the top is a permutation of the \
coordinates in cycle notation. Example for Γ = {0,1}, k = 2: --element \"1,0;id|(0 1)\" --point 0,1")]
    Act {
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Comma-separated coordinates of the point.
        #[arg(long)]
        point: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Proposition {
    #[value(name = "3.2")]
    Regular,
    #[value(name = "3.4")]
    Diagonal,
    #[value(name = "3.6")]
    Complement,
}

enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Invalid(m) => Failure::Invalid(format!("{}: {m}", path.display())),
        budget => budget,
    })
}

/// Parses `(0 1 2)(3 4)` into cycles; `()` or the empty string is the identity.
fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` in cycle notation at `{rest}`"))?;
        let close = open.find(')').ok_or("unclosed cycle")?;
        let cycle = parse_index_list(&open[..close])?;
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles).map_err(|e| e.to_string())
}

fn parse_element(spec: &str, gamma: usize, k: usize) -> Result<WreathElement, String> {
    let (base, top) = spec.split_once('|').unwrap_or((spec, ""));
    let coords: Vec<&str> = base.split(';').map(str::trim).collect();
    if coords.len() != k {
        return Err(format!("expected {k} base coordinates separated by `;`, found {}", coords.len()));
    }
    let base = coords
        .iter()
        .map(|c| {
            if *c == "id" || c.is_empty() {
                return Ok(Permutation::identity(gamma));
            }
            let images = parse_index_list(c)?;
            if images.len() != gamma {
                return Err(format!("base entry `{c}` must list {gamma} images"));
            }
            Permutation::from_images(images).map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let top = parse_cycles(top, k)?;
    WreathElement::new(base, top).map_err(|e| e.to_string())
}

fn emit_report(out: &mut dyn Write, format: Format, report: &VerificationReport) -> i32 {
    let _ = match format {
        Format::Json => writeln!(out, "{}", report.to_json()),
        Format::Text => write!(out, "{report}"),
    };
    report.verdict.exit_code()
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let opts = CheckOptions { element_cap: cli.cap, ..CheckOptions::default() };
    match cli.command {
        Command::Cartdec { command: CartdecCommand::Verify { file } } => {
            let eps = in_file(&file, parse_decomposition(&read(&file)?))?;
            Ok(emit_report(out, cli.format, &verify::check_decomposition(&eps)))
        }
        Command::Wreath { command: WreathCommand::Order { gamma, k } } => {
            let value = verify::wreath_order(gamma, k, cli.cap)?;
            let _ = match cli.format {
                Format::Json => writeln!(out, "{value}"),
                Format::Text => writeln!(out, "{}", value["order"]),
            };
            Ok(EXIT_PASS)
        }
        Command::Wreath { command: WreathCommand::Act { gamma, k, element, point } } => {
            let ctx = WreathContext::new(gamma, k)?;
            let g = parse_element(&element, gamma, k).map_err(|m| Failure::Invalid(format!("--element: {m}")))?;
            let phi = parse_index_list(&point).map_err(|m| Failure::Invalid(format!("--point: {m}")))?;
            let image = ctx.act(&phi, &g)?;
            let joined = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", json!({ "point": phi, "image": image })),
                Format::Text => writeln!(out, "{}", joined(&image)),
            };
            Ok(EXIT_PASS)
        }
        Command::Embed { group, decomp } => {
            let x = in_file(&group, parse_generator_file(&read(&group)?))?;
            let eps = in_file(&decomp, parse_decomposition(&read(&decomp)?))?;
            let report = verify::check_group_embedding(&x, &eps, &opts)?;
            Ok(emit_report(out, cli.format, &report))
        }
        Command::Prop { proposition, table, k } => {
            let t = in_file(&table, CayleyTable::parse(&read(&table)?))?;
            let report = match proposition {
                Proposition::Regular => verify::check_regular_embedding(&t, k, &opts)?,
                Proposition::Diagonal => verify::check_diagonal_embedding(&t, k, &opts)?,
                Proposition::Complement => verify::check_complement_embedding(&t, k, &opts)?,
            };
            Ok(emit_report(out, cli.format, &report))
        }
    }
}

/// Runs the verifier with `argv[0]` as the program name, writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(Failure::Invalid(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INVALID
        }
        Err(Failure::Budget(m)) => {
            let _ = writeln!(err, "budget exceeded: {m}");
            EXIT_BUDGET
        }
    }
}

pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli_with(std::iter::once("cartwreath").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn wreath_order_prints_eight() {
        let (code, out, _) = run_args(&["wreath", "order", "--gamma", "2", "--k", "2"]);
        assert_eq!((code, out.trim()), (0, "8"));
    }

    #[test]
    fn wreath_act_matches_product_action() {
        // base (swap on coordinate 0), top swaps the coordinates: (0,1) -> (1,1) -> (1,1)
        let (code, out, _) = run_args(&["wreath", "act", "--gamma", "2", "--k", "2", "--element", "1,0;id|(0 1)", "--point", "0,1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1,1");
        let (_, out, _) = run_args(&["wreath", "act", "--gamma", "2", "--k", "2", "--element", "1,0;id|", "--point", "0,0"]);
        assert_eq!(out.trim(), "1,0");
    }

    #[test]
    fn usage_and_input_errors_exit_two() {
        assert_eq!(run_args(&["wreath", "order", "--gamma", "2"]).0, 2);
        assert_eq!(run_args(&["prop", "3.3", "--table", "x"]).0, 2);
        let (code, _, err) = run_args(&["wreath", "act", "--gamma", "2", "--k", "2", "--element", "1,0|()", "--point", "0,0"]);
        assert_eq!(code, 2);
        assert!(err.contains("--element"));
        assert_eq!(run_args(&["cartdec", "verify", "/nonexistent/file.part"]).0, 2);
    }

    #[test]
    fn budget_exits_three() {
        assert_eq!(run_args(&["--cap", "10", "wreath", "order", "--gamma", "2", "--k", "3"]).0, 3);
    }

    #[test]
    fn parse_cycles_forms() {
        assert!(parse_cycles("", 3).unwrap().is_identity());
        assert!(parse_cycles("()", 3).unwrap().is_identity());
        assert_eq!(parse_cycles("(0 2 1)", 3).unwrap().images(), &[2, 0, 1]);
        assert!(parse_cycles("0 1", 3).is_err());
        assert!(parse_cycles("(0 5)", 3).is_err());
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["wreath", "act", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("cycle notation"));
    }
}
