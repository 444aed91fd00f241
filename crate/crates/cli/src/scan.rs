//! Prime-range scan: one JSON record per admissible prime, ordered by q.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use heffter::certificate::HdmCertificate;
use heffter::field::admissible;
use heffter::search::{exhaustive_max_r, find_hdm, Strategy, DEFAULT_BUDGET};
use heffter::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{halfset, parse_signs, CmdResult, Fail};

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    qmin: u32,
    #[arg(long)]
    qmax: u32,
    #[arg(long, default_value = "standard")]
    signs: String,
    #[arg(long, default_value = "exhaustive")]
    strategy: Strategy,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// JSON-lines output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRecord {
    pub q: u32,
    pub k: u32,
    pub r: usize,
    pub found: bool,
    /// Rows of the embedded witness; for an exhaustive failure, the true maximum.
    pub r_achieved: Option<usize>,
    pub signs: Vec<u8>,
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub nodes: u64,
    pub wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<HdmCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn scan_one(a: &ScanArgs, q: u32, signs: &[u8]) -> ScanRecord {
    let start = Instant::now();
    let mut rec = ScanRecord {
        q,
        k: a.k,
        r: a.r,
        found: false,
        r_achieved: None,
        signs: signs.to_vec(),
        strategy: a.strategy,
        seed: a.seed,
        nodes: 0,
        wall_ms: 0,
        certificate: None,
        error: None,
    };
    let hs = match halfset(q, a.k, None, &a.signs) {
        Ok(hs) => hs,
        Err(Fail::Usage(m) | Fail::Invalid(m)) => {
            rec.error = Some(m);
            return rec;
        }
    };
    match find_hdm(&hs, a.r, a.strategy, a.seed, a.budget) {
        Ok(found) => {
            rec.found = true;
            rec.r_achieved = Some(found.hdm.r());
            rec.nodes = found.meta.nodes;
            rec.certificate = Some(HdmCertificate::new(&found.hdm, Some(found.meta)));
        }
        Err(e @ Error::NotFoundExhaustive { nodes, .. }) => {
            rec.nodes = nodes;
            rec.error = Some(e.to_string());
            if let Ok(best) = exhaustive_max_r(&hs, true, a.budget) {
                rec.r_achieved = Some(best.r_max);
                rec.nodes += best.meta.nodes;
                rec.certificate = Some(HdmCertificate::new(&best.witness, Some(best.meta)));
            }
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec.wall_ms = start.elapsed().as_millis();
    rec
}

pub fn cmd_scan(a: &ScanArgs) -> CmdResult {
    let signs = parse_signs(&a.signs, a.k)?;
    if a.k < 3 {
        return Err(Fail::Usage("k must be at least 3".into()));
    }
    let primes: Vec<u32> = (a.qmin..=a.qmax).filter(|&q| admissible(q.into(), a.k.into())).collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Fail::Usage(e.to_string()))?;
    let records: Vec<ScanRecord> = pool.install(|| primes.par_iter().map(|&q| scan_one(a, q, &signs)).collect());

    let sink: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(File::create(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout()),
    };
    let mut sink = BufWriter::new(sink);
    for rec in &records {
        let line = serde_json::to_string(rec).expect("records serialize");
        writeln!(sink, "{line}").map_err(|e| Fail::Usage(e.to_string()))?;
    }
    sink.flush().map_err(|e| Fail::Usage(e.to_string()))?;

    let ok = records.iter().filter(|r| r.found).count();
    eprintln!("scan: {ok}/{} primes succeeded", records.len());
    for rec in records.iter().filter(|r| !r.found) {
        eprintln!("  q={}: {}", rec.q, rec.error.as_deref().unwrap_or("not found"));
    }
    if ok == records.len() {
        Ok(())
    } else {
        Err(Fail::Invalid(format!("{} of {} primes failed", records.len() - ok, records.len())))
    }
}
