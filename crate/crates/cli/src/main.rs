//! `heffter`: search, verify and expand Heffter difference matrices.
//!
//! Exit codes: 0 success/valid, 1 invalid or not found, 2 usage or parse error.

mod scan;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use heffter::certificate::{Certificate, HdmCertificate, SpaceCertificate};
use heffter::cycles::{build_cycle_systems, check_cycle_system, verify_orthogonal};
use heffter::search::{exhaustive_max_r, find_hdm, q_bound, q_exceeds_bound, simplified_bound, Strategy, DEFAULT_BUDGET};
use heffter::space::{expand, verify_space};
use heffter::{Error, FieldCtx, HalfSet, HeffterDifferenceMatrix, HeffterSpace};

#[derive(Parser)]
#[command(name = "heffter", version, about = "Heffter difference matrices, Heffter spaces and orthogonal cycle systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an hdm or space certificate.
    Verify { path: PathBuf },
    /// Search for a matrix (maximum r when --r is omitted).
    Search(SearchArgs),
    /// Search every admissible prime in a range.
    Scan(scan::ScanArgs),
    /// Expand an hdm certificate into a Heffter space certificate.
    Expand {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive the cycle systems of a space (or hdm) certificate.
    Cycles {
        path: PathBuf,
        /// Directory receiving one `system_<h>.txt` per parallel class.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print the field-size bound Q(k,r).
    Bound {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    k: u32,
    /// `standard` or a comma list of 0/1 with a leading 0.
    #[arg(long, default_value = "standard")]
    signs: String,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value = "exhaustive")]
    strategy: Strategy,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Primitive root (default: the smallest).
    #[arg(long)]
    g: Option<u32>,
    /// Restrict the maximum-r search to simple rows.
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub(crate) enum Fail {
    Invalid(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotFoundExhaustive { .. } | Error::BudgetExceeded { .. } | Error::InvalidHdm(_) => {
                Fail::Invalid(e.to_string())
            }
            other => Fail::Usage(other.to_string()),
        }
    }
}

pub(crate) type CmdResult = Result<(), Fail>;

pub(crate) fn parse_signs(text: &str, k: u32) -> Result<Vec<u8>, Fail> {
    if text == "standard" {
        return Ok(vec![0; k as usize]);
    }
    text.split(',')
        .map(|s| match s.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(Fail::Usage(format!("bad sign `{other}` (expected 0 or 1)"))),
        })
        .collect()
}

pub(crate) fn halfset(q: u32, k: u32, g: Option<u32>, signs: &str) -> Result<HalfSet, Fail> {
    let ctx = Arc::new(FieldCtx::new(q, k, g)?);
    let signs = parse_signs(signs, k)?;
    Ok(HalfSet::new(ctx, &signs)?)
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Prints `msg` to stdout when the payload went to a file, else to stderr.
fn note(out: Option<&Path>, msg: &str) {
    if out.is_some() {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
}

fn load(path: &Path) -> Result<Certificate, Fail> {
    Certificate::parse(&read(path)?).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn load_hdm(c: &HdmCertificate) -> Result<HeffterDifferenceMatrix, Fail> {
    c.to_hdm().map_err(|e| Fail::Usage(e.to_string()))
}

fn load_space(c: &SpaceCertificate) -> Result<HeffterSpace, Fail> {
    c.to_space().map_err(|e| Fail::Usage(e.to_string()))
}

fn cmd_verify(path: &Path) -> CmdResult {
    match load(path)? {
        Certificate::Hdm(c) => {
            let b = load_hdm(&c)?;
            let report = b.verify().map_err(|e| Fail::Invalid(e.to_string()))?;
            println!("{report}, simple: {}", if b.is_simple() { "yes" } else { "no" });
            if report.is_valid() {
                Ok(())
            } else {
                Err(Fail::Invalid("not a Heffter difference matrix".into()))
            }
        }
        Certificate::Space(c) => {
            let report = verify_space(&load_space(&c)?);
            println!("{report}");
            if report.is_valid() {
                Ok(())
            } else {
                Err(Fail::Invalid("not a Heffter space".into()))
            }
        }
    }
}

fn cmd_search(a: &SearchArgs) -> CmdResult {
    let hs = halfset(a.q, a.k, a.g, &a.signs)?;
    let out = a.out.as_deref();
    match a.r {
        None => {
            let found = exhaustive_max_r(&hs, a.simple, a.budget)?;
            let how = if found.meta.exhaustive { "exhaustive" } else { "lower bound, budget exhausted" };
            write_or_print(out, &HdmCertificate::new(&found.witness, Some(found.meta.clone())).to_json())?;
            note(out, &format!("r_max={} ({how}; {} candidate rows, {} nodes)", found.r_max, found.candidates, found.meta.nodes));
            Ok(())
        }
        Some(r) => match find_hdm(&hs, r, a.strategy, a.seed, a.budget) {
            Ok(found) => {
                write_or_print(out, &HdmCertificate::new(&found.hdm, Some(found.meta.clone())).to_json())?;
                note(out, &format!("found ({},{},{r}) matrix, {} nodes", a.q, a.k, found.meta.nodes));
                Ok(())
            }
            Err(Error::NotFoundExhaustive { nodes, .. }) => {
                Err(Fail::Invalid(format!("exhaustive: no (V,{},{r}) HDM ({nodes} nodes)", a.k)))
            }
            Err(Error::BudgetExceeded { budget }) => {
                Err(Fail::Invalid(format!("{}: none found within {budget} nodes", a.strategy)))
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn cmd_expand(path: &Path, out: Option<&Path>) -> CmdResult {
    let Certificate::Hdm(c) = load(path)? else {
        return Err(Fail::Usage("expand needs an hdm certificate".into()));
    };
    let space = expand(&load_hdm(&c)?)?;
    let report = verify_space(&space);
    write_or_print(out, &SpaceCertificate::new(&space).to_json())?;
    note(out, &report.to_string());
    if report.is_valid() {
        Ok(())
    } else {
        Err(Fail::Invalid("expansion failed verification".into()))
    }
}

fn cmd_cycles(path: &Path, out_dir: Option<&Path>) -> CmdResult {
    let space = match load(path)? {
        Certificate::Space(c) => load_space(&c)?,
        Certificate::Hdm(c) => expand(&load_hdm(&c)?)?,
    };
    let systems = build_cycle_systems(&space)?;
    for (h, cs) in systems.iter().enumerate() {
        if let Err(defect) = check_cycle_system(cs) {
            return Err(Fail::Invalid(format!("system {h}: {defect:?}")));
        }
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir).map_err(|e| Fail::Usage(format!("{}: {e}", dir.display())))?;
            let file = dir.join(format!("system_{h}.txt"));
            fs::write(&file, cs.to_text(h)).map_err(|e| Fail::Usage(format!("{}: {e}", file.display())))?;
        }
    }
    let mut pairs = 0;
    let mut bad = Vec::new();
    for a in 0..systems.len() {
        for b in a + 1..systems.len() {
            pairs += 1;
            if !verify_orthogonal(&systems[a], &systems[b]) {
                bad.push(format!("{a}/{b}"));
            }
        }
    }
    let per = systems.first().map_or(0, |cs| cs.len());
    if bad.is_empty() {
        println!("{} systems, {per} cycles each, all {pairs} pairs orthogonal", systems.len());
        Ok(())
    } else {
        println!("{} systems, {per} cycles each, non-orthogonal pairs: {}", systems.len(), bad.join(" "));
        Err(Fail::Invalid("cycle systems are not mutually orthogonal".into()))
    }
}

fn cmd_bound(k: u32, r: u32, q: Option<u64>) -> CmdResult {
    if k < 3 {
        return Err(Fail::Usage("k must be at least 3".into()));
    }
    let mut line = format!("Q={:.6}, 8k⁴r={}", q_bound(k, r), simplified_bound(k, r));
    if let Some(q) = q {
        line.push_str(&format!(", q>Q: {}", q_exceeds_bound(q, k, r)));
    }
    println!("{line}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { path } => cmd_verify(path),
        Command::Search(a) => cmd_search(a),
        Command::Scan(a) => scan::cmd_scan(a),
        Command::Expand { path, out } => cmd_expand(path, out.as_deref()),
        Command::Cycles { path, out_dir } => cmd_cycles(path, out_dir.as_deref()),
        Command::Bound { k, r, q } => cmd_bound(*k, *r, *q),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
