use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use descon::duality::{a_matrix_closed, a_q_matrix_closed, zeta_matrix, Sweep};
use descon::identities::{
    check_multiset_bijection, check_multiset_counts, run_suite, CheckOutcome, Counterexample,
    Identity,
};
use descon::perm::{
    connectivity_set, descent_composition, descent_set, inversions, Permutation,
};
use descon::series_check::{connected_counts_enumerated, connected_counts_series};
use descon::Caps;
use serde_json::json;

use crate::args::{Cli, Command, CommonOpts, Format, TableKind};
use crate::present::render_matrix;

/// Rendered output plus whether the command succeeded (for the exit status).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub success: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), success: true }
    }
}

pub fn caps_for(common: &CommonOpts) -> Result<Caps> {
    Ok(match common.cap {
        Some(cap) => Caps::with_enumeration_cap(cap)?,
        None => Caps::from_env()?,
    })
}

pub fn run(cli: &Cli) -> Result<Output> {
    let caps = caps_for(&cli.common)?;
    let common = &cli.common;
    match &cli.command {
        Command::Stats { perm } => cmd_stats(perm, common.format),
        Command::Table { kind, n, q, paper_order } => {
            cmd_table(*kind, *n, *q, *paper_order, common.format, &caps, common.threads)
                .map(Output::ok)
        }
        Command::Verify { max_n, q } => cmd_verify(*max_n, *q, common.format, &caps, common.threads),
        Command::Connected { max_n } => cmd_connected(*max_n, common.format, &caps),
        Command::Multiset { max_n } => cmd_multiset(*max_n, common.format, &caps, common.threads),
    }
}

pub fn cmd_stats(text: &str, format: Format) -> Result<Output> {
    let w: Permutation = text.parse().with_context(|| format!("cannot parse permutation {text:?}"))?;
    let d = descent_set(&w);
    let c = connectivity_set(&w);
    let inv = inversions(&w);
    let co = descent_composition(&w);
    let connected = c.is_empty();
    let out = match format {
        Format::Json => {
            let mut s = json!({
                "w": w.to_string(),
                "n": w.n(),
                "descent_set": d.elements(),
                "connectivity_set": c.elements(),
                "inversions": inv,
                "descent_composition": co.parts(),
                "connected": connected,
            })
            .to_string();
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "w,D,C,inv,co,connected\n{},\"{d}\",\"{c}\",{inv},\"{co}\",{connected}\n",
            w
        ),
        Format::Text => format!(
            "w: {w}\nD(w): {d}\nC(w): {c}\ninv(w): {inv}\nco(w): {co}\nconnected: {connected}\n"
        ),
    };
    Ok(Output::ok(out))
}

pub fn cmd_table(
    kind: TableKind,
    n: usize,
    q: bool,
    paper_order: bool,
    format: Format,
    caps: &Caps,
    threads: Option<usize>,
) -> Result<String> {
    let out = match (kind, q) {
        (TableKind::M, _) => {
            caps.check_closed_form(n)?;
            render_matrix(&zeta_matrix(n), format, paper_order)
        }
        (TableKind::A, false) => render_matrix(&a_matrix_closed(n, caps)?, format, paper_order),
        (TableKind::A, true) => render_matrix(&a_q_matrix_closed(n, caps)?, format, paper_order),
        (TableKind::Gamma | TableKind::B, _) => {
            let sweep = Sweep::run(n, caps, threads)?;
            match (kind, q) {
                (TableKind::Gamma, false) => render_matrix(&sweep.gamma(), format, paper_order),
                (TableKind::Gamma, true) => render_matrix(&sweep.gamma_q(), format, paper_order),
                (_, false) => render_matrix(&sweep.b_direct(), format, paper_order),
                (_, true) => render_matrix(&sweep.b_q_direct(), format, paper_order),
            }
        }
    };
    Ok(out)
}

/// Per-identity aggregate over a range of `n`.
struct Tally {
    ns: Vec<usize>,
    elapsed: Duration,
    first_failure: Option<Counterexample>,
}

fn tally(outcomes: impl IntoIterator<Item = CheckOutcome>) -> BTreeMap<Identity, Tally> {
    let mut map: BTreeMap<Identity, Tally> = BTreeMap::new();
    for o in outcomes {
        let entry = map.entry(o.identity).or_insert(Tally {
            ns: Vec::new(),
            elapsed: Duration::ZERO,
            first_failure: None,
        });
        entry.ns.push(o.n);
        entry.elapsed += o.elapsed;
        if entry.first_failure.is_none() {
            entry.first_failure = o.counterexample;
        }
    }
    map
}

fn range_label(ns: &[usize]) -> String {
    match (ns.first(), ns.last()) {
        (Some(a), Some(b)) if a == b => format!("n = {a}"),
        (Some(a), Some(b)) => format!("n = {a}..{b}"),
        _ => "no n".into(),
    }
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

fn report(title: &str, tallies: &BTreeMap<Identity, Tally>, extra: Duration, format: Format) -> Output {
    let success = tallies.values().all(|t| t.first_failure.is_none());
    let stdout = match format {
        Format::Json => {
            let checks: Vec<_> = tallies
                .iter()
                .map(|(id, t)| {
                    json!({
                        "identity": id.label(),
                        "n": t.ns,
                        "passed": t.first_failure.is_none(),
                        "counterexample": t.first_failure.as_ref().map(|c| json!({
                            "n": c.n,
                            "S": c.s.map(|s| s.to_string()),
                            "T": c.t.map(|t| t.to_string()),
                            "note": c.note,
                        })),
                        "elapsed_ms": t.elapsed.as_secs_f64() * 1e3,
                    })
                })
                .collect();
            let mut s = json!({ "title": title, "passed": success, "checks": checks }).to_string();
            s.push('\n');
            s
        }
        Format::Text | Format::Csv => {
            let mut s = format!("{title}\n");
            for (id, t) in tallies {
                let status = if t.first_failure.is_none() { "PASS" } else { "FAIL" };
                let _ = write!(s, "[{status}] {}  ({}, {})", id.label(), range_label(&t.ns), ms(t.elapsed));
                if let Some(c) = &t.first_failure {
                    let _ = write!(s, "\n       first counterexample: {c}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "enumeration: {}", ms(extra));
            let _ = writeln!(s, "result: {}", if success { "all checks pass" } else { "FAILED" });
            s
        }
    };
    Output { stdout, stderr: String::new(), success }
}

pub fn cmd_verify(
    max_n: usize,
    q: bool,
    format: Format,
    caps: &Caps,
    threads: Option<usize>,
) -> Result<Output> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    caps.check_enumeration(max_n)?;
    let mut outcomes = Vec::new();
    let mut sweep_time = Duration::ZERO;
    for n in 1..=max_n {
        let run = run_suite(n, q, caps, threads)?;
        sweep_time += run.sweep_time;
        outcomes.extend(run.outcomes);
    }
    let title = format!(
        "verify n = 1..{max_n} ({} suite)",
        if q { "integer + q" } else { "integer" }
    );
    Ok(report(&title, &tally(outcomes), sweep_time, format))
}

pub fn cmd_multiset(max_n: usize, format: Format, caps: &Caps, threads: Option<usize>) -> Result<Output> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    caps.check_enumeration(max_n)?;
    let mut outcomes = Vec::new();
    let mut sweep_time = Duration::ZERO;
    for n in 1..=max_n {
        let started = Instant::now();
        let sweep = Sweep::run(n, caps, threads)?;
        sweep_time += started.elapsed();
        let started = Instant::now();
        let counterexample = check_multiset_counts(&sweep, caps)?;
        outcomes.push(CheckOutcome {
            identity: Identity::MultisetCounts,
            n,
            counterexample,
            elapsed: started.elapsed(),
        });
        let started = Instant::now();
        let counterexample = check_multiset_bijection(n, caps)?;
        outcomes.push(CheckOutcome {
            identity: Identity::MultisetBijection,
            n,
            counterexample,
            elapsed: started.elapsed(),
        });
    }
    Ok(report(&format!("multiset n = 1..{max_n}"), &tally(outcomes), sweep_time, format))
}

pub fn cmd_connected(max_n: usize, format: Format, caps: &Caps) -> Result<Output> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let started = Instant::now();
    let series = connected_counts_series(max_n)?;
    let enumerated = connected_counts_enumerated(max_n, caps)?;
    let elapsed = started.elapsed();
    let agree = series.counts == enumerated.counts;
    let stdout = match format {
        Format::Json => {
            let rows: Vec<_> = enumerated
                .counts
                .iter()
                .zip(&series.counts)
                .enumerate()
                .map(|(k, (e, s))| {
                    json!({ "n": k + 1, "enumeration": e.to_string(), "series": s.to_string() })
                })
                .collect();
            let mut s = json!({ "max_n": max_n, "counts": rows, "agree": agree }).to_string();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("n,f(n)\n");
            for (k, f) in series.counts.iter().enumerate() {
                let _ = writeln!(s, "{},{f}", k + 1);
            }
            s
        }
        Format::Text => {
            let width = series.counts.last().map_or(1, |f| f.to_string().len()).max(4);
            let mut s = format!("{:>3}  {:>width$}\n", "n", "f(n)");
            for (k, f) in series.counts.iter().enumerate() {
                let _ = writeln!(s, "{:>3}  {:>width$}", k + 1, f.to_string());
            }
            let _ = writeln!(s, "enumeration and series agree: {agree}");
            s
        }
    };
    Ok(Output {
        stdout,
        stderr: format!("connected: both routes in {}\n", ms(elapsed)),
        success: agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_text() {
        let out = cmd_stats("1342", Format::Text).unwrap();
        assert_eq!(
            out.stdout,
            "w: 1342\nD(w): {3}\nC(w): {1}\ninv(w): 2\nco(w): (3,1)\nconnected: false\n"
        );
        let one = cmd_stats("1", Format::Text).unwrap().stdout;
        assert!(one.contains("D(w): {}\nC(w): {}\ninv(w): 0"));
        assert!(one.ends_with("connected: true\n"));
        let rev = cmd_stats("4321", Format::Text).unwrap().stdout;
        assert!(rev.contains("D(w): {1,2,3}\nC(w): {}\ninv(w): 6"));
        assert!(rev.ends_with("connected: true\n"));
    }

    #[test]
    fn stats_rejects_bad_words() {
        let err = cmd_stats("1224", Format::Text).unwrap_err();
        assert!(format!("{err:#}").contains("position 3"), "{err:#}");
        assert!(cmd_stats("12x", Format::Text).is_err());
    }

    #[test]
    fn stats_json() {
        let out = cmd_stats("1342", Format::Json).unwrap().stdout;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["descent_set"], json!([3]));
        assert_eq!(v["connectivity_set"], json!([1]));
        assert_eq!(v["descent_composition"], json!([3, 1]));
    }

    #[test]
    fn table_caps() {
        let caps = Caps::default();
        assert!(cmd_table(TableKind::Gamma, 11, false, false, Format::Text, &caps, None).is_err());
        assert!(cmd_table(TableKind::A, 15, false, false, Format::Text, &caps, None).is_err());
        assert!(cmd_table(TableKind::M, 0, false, false, Format::Text, &caps, None).is_err());
    }

    #[test]
    fn q_tables_render_polynomials() {
        let caps = Caps::default();
        let a = cmd_table(TableKind::A, 4, true, true, Format::Text, &caps, None).unwrap();
        assert!(a.contains("q+q^2+q^3"));
        let b = cmd_table(TableKind::B, 3, false, false, Format::Csv, &caps, None).unwrap();
        assert!(b.starts_with("S\\T,{},{1},{2},\"{1,2}\"\n"));
    }

    #[test]
    fn verify_small() {
        let caps = Caps::default();
        let out = cmd_verify(1, true, Format::Text, &caps, None).unwrap();
        assert!(out.success);
        assert!(out.stdout.contains("result: all checks pass"));
        let out = cmd_verify(5, false, Format::Json, &caps, Some(2)).unwrap();
        assert!(out.success);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["passed"], true);
        assert!(cmd_verify(11, false, Format::Text, &caps, None).is_err());
    }

    #[test]
    fn connected_table() {
        let caps = Caps::default();
        let out = cmd_connected(5, Format::Text, &caps).unwrap();
        assert!(out.success);
        assert_eq!(
            out.stdout,
            "  n  f(n)\n  1     1\n  2     1\n  3     3\n  4    13\n  5    71\nenumeration and series agree: true\n"
        );
        let one = cmd_connected(1, Format::Csv, &caps).unwrap();
        assert_eq!(one.stdout, "n,f(n)\n1,1\n");
    }

    #[test]
    fn multiset_check() {
        let out = cmd_multiset(4, Format::Text, &Caps::default(), None).unwrap();
        assert!(out.success, "{}", out.stdout);
    }
}
