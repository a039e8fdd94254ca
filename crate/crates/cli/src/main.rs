//! Command-line surface for the (n, k)-Kirby diagram calculus.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 1 on domain errors (single diagnostic line naming the error), 2 on usage
//! errors. `--format records` output is a frozen `key=value` contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nkirby_core::{
    equivalent, example, homology, normal_form_diagram, parse_certificate, parse_diagram,
    pi_1_presentation, pi_km1, print_certificate, print_diagram, recognize, reduce, AbelianGroup,
    Diagram, DiagramFile, NormalForm, Verdict, EXAMPLE_NAMES,
};

#[derive(Parser)]
#[command(name = "nkirby", version, about = "Calculus of (n,k)-Kirby diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a diagram file and report its shape.
    Validate { file: PathBuf },
    /// Reduce a diagram to its normal form; print the normalized diagram.
    Reduce {
        file: PathBuf,
        /// Write the move certificate to this path.
        #[arg(long, value_name = "PATH")]
        emit_cert: Option<PathBuf>,
    },
    /// Homology and homotopy invariants of the presented handlebody.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether two diagrams present diffeomorphic handlebodies.
    Equiv { a: PathBuf, b: PathBuf },
    /// Induce an (n, k) diagram from 4-dimensional source data.
    Induce {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Name the manifold of the diagram as presented.
    Recognize { file: PathBuf },
    /// Apply a move certificate to a diagram and print the result.
    Replay {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
    },
    /// Print a bundled example (or list all names).
    Examples {
        name: Option<String>,
        /// Parameter overrides, e.g. `p=5 n=7`.
        #[arg(value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Records,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("IoError: {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("IoError: {}: {e}", path.display()))
}

fn load_standard(path: &Path) -> Result<Diagram, String> {
    match parse_diagram(&read(path)?).map_err(|e| e.to_string())? {
        DiagramFile::Standard(d) => Ok(d),
        DiagramFile::Source(_) => Err(format!(
            "SemanticError: {}: source-4d data must be induced into an (n, k) diagram first",
            path.display()
        )),
    }
}

fn torsion_csv(g: &AbelianGroup) -> String {
    g.torsion()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// The `pi.k-1` record: the group below the handle dimension. For k = 2 the
/// group need not be abelian; a one-generator presentation is cyclic and is
/// printed as such, anything larger stays a presentation.
fn pi_record(d: &Diagram) -> Result<String, String> {
    if d.dim().k() >= 3 {
        return Ok(pi_km1(d).map_err(|e| e.to_string())?.to_string());
    }
    let pres = pi_1_presentation(d).map_err(|e| e.to_string())?;
    if pres.generators.len() <= 1 {
        Ok(pres.abelianization().to_string())
    } else {
        Ok(pres.to_string())
    }
}

fn cmd_validate(path: &Path) -> Result<(), String> {
    match parse_diagram(&read(path)?).map_err(|e| e.to_string())? {
        DiagramFile::Standard(d) => println!(
            "valid: (n,k)=({},{}) dotted={} framed={}",
            d.dim().n(),
            d.dim().k(),
            d.dotted().len(),
            d.framed().len()
        ),
        DiagramFile::Source(d) => println!(
            "valid: source-4d dotted={} framed={}",
            d.dotted().len(),
            d.framed().len()
        ),
    }
    Ok(())
}

fn cmd_reduce(path: &Path, emit_cert: Option<&Path>) -> Result<(), String> {
    let d = load_standard(path)?;
    let (nf, cert) = reduce(&d);
    if let Some(cert_path) = emit_cert {
        write(cert_path, &print_certificate(&cert))?;
    }
    let normal = normal_form_diagram(&nf, d.dim()).map_err(|e| e.to_string())?;
    print!("# normal form: {nf}\n{}", print_diagram(&normal));
    Ok(())
}

fn cmd_invariants(path: &Path, format: Format) -> Result<(), String> {
    let d = load_standard(path)?;
    let h = homology(&d);
    let k = d.dim().k();
    match format {
        Format::Text => {
            for (deg, g) in &h {
                println!("H_{deg} = {g}");
            }
            if k >= 3 {
                println!("pi_{} = {}", k - 1, pi_km1(&d).map_err(|e| e.to_string())?);
            } else {
                println!(
                    "pi_1 = {}",
                    pi_1_presentation(&d).map_err(|e| e.to_string())?
                );
            }
        }
        Format::Records => {
            let hk1 = &h[&(k - 1)];
            let hk = &h[&k];
            println!("h.0={}", h[&0]);
            println!("h.k-1.rank={}", hk1.rank());
            println!("h.k-1.torsion={}", torsion_csv(hk1));
            println!("h.k.rank={}", hk.rank());
            println!("h.k.torsion={}", torsion_csv(hk));
            println!("pi.k-1={}", pi_record(&d)?);
        }
    }
    Ok(())
}

fn cmd_equiv(a: &Path, b: &Path) -> Result<(), String> {
    let da = load_standard(a)?;
    let db = load_standard(b)?;
    match equivalent(&da, &db).map_err(|e| e.to_string())? {
        Verdict::Diffeomorphic { normal_form, .. } => {
            println!("verdict=diffeomorphic");
            println!("normal_form={normal_form}");
            println!("name={}", recognize(&normal_form, da.dim()));
        }
        Verdict::Distinguished {
            invariant,
            left,
            right,
        } => {
            println!("verdict=distinguished");
            println!("invariant={invariant}");
            println!("left={left}");
            println!("right={right}");
        }
        Verdict::Unknown {
            left,
            right,
            left_pi1,
            right_pi1,
        } => {
            println!("verdict=unknown");
            println!("left={left}");
            println!("right={right}");
            if let (Some(l), Some(r)) = (left_pi1, right_pi1) {
                println!("pi1.left={l}");
                println!("pi1.right={r}");
            }
        }
    }
    Ok(())
}

fn cmd_induce(path: &Path, n: u32, k: u32) -> Result<(), String> {
    let source = match parse_diagram(&read(path)?).map_err(|e| e.to_string())? {
        DiagramFile::Source(s) => s,
        DiagramFile::Standard(_) => {
            return Err(format!(
                "SemanticError: {}: induce requires `dim 4 2 source` input",
                path.display()
            ));
        }
    };
    let d = source.induce(n, k).map_err(|e| e.to_string())?;
    print!("{}", print_diagram(&d));
    Ok(())
}

fn cmd_recognize(path: &Path) -> Result<(), String> {
    let d = load_standard(path)?;
    let as_presented = NormalForm::General { diagram: d.clone() };
    println!("{}", recognize(&as_presented, d.dim()));
    Ok(())
}

fn cmd_replay(path: &Path, cert_path: &Path) -> Result<(), String> {
    let d = load_standard(path)?;
    let cert = parse_certificate(&read(cert_path)?).map_err(|e| e.to_string())?;
    let out = nkirby_core::apply(&d, &cert).map_err(|e| e.to_string())?;
    print!("{}", print_diagram(&out));
    Ok(())
}

fn cmd_examples(name: Option<&str>, params: &[String]) -> Result<(), String> {
    let Some(name) = name else {
        for n in EXAMPLE_NAMES {
            println!("{n}");
        }
        return Ok(());
    };
    let mut pairs: Vec<(String, i64)> = Vec::new();
    for p in params {
        let Some((key, value)) = p.split_once('=') else {
            return Err(format!("SemanticError: parameter `{p}` is not `key=value`"));
        };
        let value: i64 = value
            .parse()
            .map_err(|_| format!("SemanticError: parameter `{p}` needs an integer value"))?;
        pairs.push((key.to_string(), value));
    }
    print!("{}", example(name, &pairs).map_err(|e| e.to_string())?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Validate { file } => cmd_validate(file),
        Cmd::Reduce { file, emit_cert } => cmd_reduce(file, emit_cert.as_deref()),
        Cmd::Invariants { file, format } => cmd_invariants(file, *format),
        Cmd::Equiv { a, b } => cmd_equiv(a, b),
        Cmd::Induce { file, n, k } => cmd_induce(file, *n, *k),
        Cmd::Recognize { file } => cmd_recognize(file),
        Cmd::Replay { file, cert } => cmd_replay(file, cert),
        Cmd::Examples { name, params } => cmd_examples(name.as_deref(), params),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(line) => {
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}
