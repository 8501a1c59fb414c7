use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;

use tlkostant::algebra::{cells as cell_partition, duflo_involution, CellKind};
use tlkostant::diagram::render::{render as draw, RenderFormat};
use tlkostant::enumerate::{
    counts_by_bruteforce, counts_by_formula, ratio_report, recursion_checks, write_counts_csv, write_ratios_csv,
    CountTable, RatioReport, RecursionReport,
};
use tlkostant::kostant::{is_kostant, KostantVerdict};
use tlkostant::verify::{verify_classification, DistinguishReport, VerificationSummary};
use tlkostant::{Permutation, TLDiagram, Word};

use crate::{Format, Input};

/// Rank caps per command.
pub const CLASSIFY_CAP: usize = 200;
pub const ENUMERATE_CAP: usize = 200;
pub const VERIFY_CAP: usize = 8;
pub const CELLS_CAP: usize = 10;

pub struct Output {
    pub text: String,
    pub discrepancy: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, discrepancy: false }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn format_or(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("{command} does not support --format {}", f.to_possible_value().unwrap().get_name());
    }
    Ok(f)
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        bail!("{what} is capped at n = {cap}, got {n}");
    }
    Ok(())
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<u32>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse::<u32>().with_context(|| format!("--{flag}: cannot parse {s:?}")))
        .collect()
}

/// The permutation named by `--perm` or `--word`.
pub fn read_input(input: &Input) -> Result<Permutation> {
    let p = match (&input.perm, &input.word) {
        (Some(perm), None) => {
            let p = Permutation::from_one_line(parse_list(perm, "perm")?)?;
            if input.n.is_some_and(|n| n != p.n()) {
                bail!("--n {} does not match the permutation length {}", input.n.unwrap(), p.n());
            }
            p
        }
        (None, Some(word)) => {
            let letters = parse_list(word, "word")?;
            let n = match (input.n, letters.iter().max()) {
                (Some(n), _) => n,
                (None, Some(&m)) => m as usize + 1,
                (None, None) => bail!("--n is required for the empty word"),
            };
            Word::new(n, letters)?.to_permutation()
        }
        _ => bail!("exactly one of --perm or --word is required"),
    };
    check_cap(p.n(), CLASSIFY_CAP, "input rank")?;
    Ok(p)
}

#[derive(Serialize)]
struct Classification<'a> {
    permutation: &'a Permutation,
    word: Word,
    a_value: usize,
    verdict: &'a KostantVerdict,
}

pub fn classify(input: &Input, render: bool, format: Option<Format>) -> Result<Output> {
    let format = format_or(format, Format::Json, &[Format::Json, Format::Ascii], "classify")?;
    let w = read_input(input)?;
    let verdict = is_kostant(&w)?;
    if format == Format::Json {
        let report = Classification { permutation: &w, word: w.reduced_word(), a_value: w.a_value()?, verdict: &verdict };
        return Ok(Output::ok(json(&report)?));
    }
    let mut text = String::new();
    writeln!(text, "{w}: {}", if verdict.positive { "Kostant positive" } else { "Kostant negative" })?;
    if let Some(factors) = &verdict.factors {
        let names: Vec<String> = factors.iter().map(ToString::to_string).collect();
        writeln!(text, "factors: {}", if names.is_empty() { "none".into() } else { names.join(" ") })?;
    }
    if let Some(wit) = &verdict.witness {
        writeln!(text, "witness for {}: x = {}, y = {}", wit.d, wit.x, wit.y)?;
    }
    if render {
        text.push_str(&draw(&TLDiagram::of_fc(&w)?, RenderFormat::Ascii));
    }
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct Enumeration {
    tables: Vec<CountTable>,
    brute_force_agrees: Option<bool>,
    recursions: Option<RecursionReport>,
    ratios: Option<RatioReport>,
}

pub fn enumerate(n: usize, brute: bool, cap: usize, ratios: bool, format: Option<Format>) -> Result<Output> {
    let format = format_or(format, Format::Json, &[Format::Json, Format::Csv], "enumerate")?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    check_cap(n, ENUMERATE_CAP, "enumerate")?;
    if brute {
        check_cap(n, cap, "brute-force counting")?;
    }
    let tables = (1..=n).map(counts_by_formula).collect::<tlkostant::Result<Vec<_>>>()?;
    let brute_force_agrees = if brute {
        let brute_tables = (1..=n).map(|k| counts_by_bruteforce(k, cap)).collect::<tlkostant::Result<Vec<_>>>()?;
        Some(brute_tables == tables)
    } else {
        None
    };
    let recursions = if n >= 3 { Some(recursion_checks(n)?) } else { None };
    let ratio_table = if n >= 2 { Some(ratio_report(n)?) } else { None };
    let discrepancy = brute_force_agrees == Some(false) || recursions.as_ref().is_some_and(|r| !r.all_hold());
    let text = match format {
        Format::Csv if ratios => {
            let Some(report) = &ratio_table else { bail!("ratio tables need n >= 2") };
            let mut buf = Vec::new();
            write_ratios_csv(&mut buf, report)?;
            String::from_utf8(buf)?
        }
        Format::Csv => {
            let mut buf = Vec::new();
            write_counts_csv(&mut buf, &tables)?;
            String::from_utf8(buf)?
        }
        _ => json(&Enumeration { tables, brute_force_agrees, recursions, ratios: ratio_table })?,
    };
    Ok(Output { text, discrepancy })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    summary: &'a VerificationSummary,
    discrepancies: Vec<&'a DistinguishReport>,
}

pub fn verify(n: usize, full_scan_limit: usize, full_report: Option<&Path>, format: Option<Format>) -> Result<Output> {
    let format = format_or(format, Format::Json, &[Format::Json, Format::Csv], "verify")?;
    if n < 2 {
        bail!("verify needs --n >= 2");
    }
    check_cap(n, VERIFY_CAP, "verify")?;
    let v = verify_classification(n, full_scan_limit)?;
    if let Some(path) = full_report {
        emit(&json(&v)?, Some(path))?;
    }
    let discrepancies: Vec<&DistinguishReport> = v.reports.iter().filter(|r| r.discrepancy.is_some()).collect();
    let discrepancy = !discrepancies.is_empty();
    for r in &discrepancies {
        eprintln!("discrepancy at d = {}: {}", r.d, r.discrepancy.as_ref().unwrap().reasons.join("; "));
    }
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "d", "positive", "scan", "pairs_checked", "failures", "oracle_distinguishable", "witness_x", "witness_y", "discrepancy",
            ])?;
            for r in &v.reports {
                let (x, y) = r.negative_witness.as_ref().map_or((String::new(), String::new()), |(x, y)| (x.to_string(), y.to_string()));
                w.write_record([
                    r.d.to_string(),
                    r.positive.to_string(),
                    serde_json::to_value(r.scan)?.as_str().unwrap_or_default().to_string(),
                    r.pairs_checked.to_string(),
                    r.failures.len().to_string(),
                    r.oracle_distinguishable.map_or(String::new(), |b| b.to_string()),
                    x,
                    y,
                    r.discrepancy.is_some().to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        _ => json(&VerifyOutput { summary: &v.summary, discrepancies })?,
    };
    Ok(Output { text, discrepancy })
}

pub fn render(input: &Input, format: Option<Format>) -> Result<Output> {
    let format = format_or(format, Format::Ascii, &[Format::Ascii, Format::Svg, Format::Json], "render")?;
    let w = read_input(input)?;
    let d = TLDiagram::of_fc(&w)?;
    let text = match format {
        Format::Svg => draw(&d, RenderFormat::Svg),
        Format::Json => json(&d)?,
        _ => draw(&d, RenderFormat::Ascii),
    };
    Ok(Output::ok(text))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Left,
    Right,
    TwoSided,
}

#[derive(Serialize)]
struct Cell {
    involution: Permutation,
    positive: bool,
    members: Vec<Permutation>,
}

pub fn cells(n: usize, kind: Kind, format: Option<Format>) -> Result<Output> {
    let format = format_or(format, Format::Json, &[Format::Json, Format::Csv, Format::Ascii], "cells")?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    check_cap(n, CELLS_CAP, "cells")?;
    let kind = match kind {
        Kind::Left => CellKind::Left,
        Kind::Right => CellKind::Right,
        Kind::TwoSided => CellKind::TwoSided,
    };
    let groups = cell_partition(n, kind);
    if kind == CellKind::TwoSided {
        let text = match format {
            Format::Json => json(&groups)?,
            _ => groups.iter().enumerate().map(|(k, g)| format!("{k}: {} elements\n", g.len())).collect(),
        };
        return Ok(Output::ok(text));
    }
    let listed = groups
        .into_iter()
        .map(|members| {
            let involution = duflo_involution(&members)?;
            let positive = is_kostant(&involution)?.positive;
            Ok(Cell { involution, positive, members })
        })
        .collect::<tlkostant::Result<Vec<_>>>()?;
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["cell", "element", "is_involution", "positive"])?;
            for (k, c) in listed.iter().enumerate() {
                for m in &c.members {
                    w.write_record([k.to_string(), m.to_string(), (m == &c.involution).to_string(), c.positive.to_string()])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Ascii => listed
            .iter()
            .map(|c| {
                let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
                format!("{} {}: {}\n", c.involution, if c.positive { "+" } else { "-" }, members.join(" "))
            })
            .collect(),
        _ => json(&listed)?,
    };
    Ok(Output::ok(text))
}
