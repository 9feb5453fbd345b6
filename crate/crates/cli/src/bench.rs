//! Repeated timing of basis algorithms with a cross-algorithm agreement check.

use std::io::{self, Write};
use std::time::Duration;

use anyhow::{Context, Result};
use lincbo::{compute_basis, AlgorithmId, AttributeSet, FormalContext};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{BenchArgs, TableFormat};
use crate::input::load_context;
use crate::{exit, fail};

#[derive(Debug, Serialize)]
struct Record {
    dataset: String,
    algorithm: AlgorithmId,
    repeat: u32,
    mean_ms: f64,
    intents: u64,
    pseudo_intents: u64,
    closure_calls: u64,
}

struct Measured {
    dataset: usize,
    record: Record,
    /// Premises in lectic order, for comparing bases across algorithms.
    premises: Vec<AttributeSet>,
}

fn measure(
    dataset: usize,
    ctx: &FormalContext,
    algorithm: AlgorithmId,
    repeat: u32,
    fault: Option<AlgorithmId>,
) -> Measured {
    let mut total = Duration::ZERO;
    let mut last = None;
    for _ in 0..repeat {
        let r = compute_basis(ctx, algorithm);
        total += r.wall_time;
        last = Some(r);
    }
    let r = last.expect("repeat is at least 1");
    let mut premises: Vec<_> = r.basis.iter().map(|imp| imp.premise.clone()).collect();
    premises.sort();
    let mut record = Record {
        dataset: ctx.name().to_string(),
        algorithm,
        repeat,
        mean_ms: total.as_secs_f64() * 1e3 / f64::from(repeat),
        intents: r.intent_count,
        pseudo_intents: r.pseudo_intent_count,
        closure_calls: r.closure_calls,
    };
    if fault == Some(algorithm) {
        record.pseudo_intents += 1;
    }
    Measured {
        dataset,
        record,
        premises,
    }
}

fn disagreements(results: &[Measured]) -> Vec<String> {
    let mut out = Vec::new();
    for group in results.chunk_by(|a, b| a.dataset == b.dataset) {
        let first = &group[0];
        for other in &group[1..] {
            let (a, b) = (&first.record, &other.record);
            if a.intents != b.intents
                || a.pseudo_intents != b.pseudo_intents
                || first.premises != other.premises
            {
                out.push(format!(
                    "{}: {} gives {} intents / {} pseudo-intents, {} gives {} / {}",
                    a.dataset,
                    a.algorithm,
                    a.intents,
                    a.pseudo_intents,
                    b.algorithm,
                    b.intents,
                    b.pseudo_intents
                ));
            }
        }
    }
    out
}

fn write_records(format: TableFormat, records: &[&Record]) -> Result<()> {
    let mut out = io::stdout().lock();
    match format {
        TableFormat::Csv => {
            writeln!(
                out,
                "dataset,algorithm,repeat,mean_ms,intents,pseudo_intents,closure_calls"
            )?;
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{:.3},{},{},{}",
                    csv_field(&r.dataset),
                    r.algorithm,
                    r.repeat,
                    r.mean_ms,
                    r.intents,
                    r.pseudo_intents,
                    r.closure_calls
                )?;
            }
        }
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run(args: BenchArgs) -> Result<()> {
    let contexts = args
        .inputs
        .iter()
        .map(|p| load_context(p, args.input_format))
        .collect::<Result<Vec<_>>>()?;
    let mut algorithms: Vec<AlgorithmId> = Vec::new();
    for &a in &args.algorithms {
        if !algorithms.contains(&a) {
            algorithms.push(a);
        }
    }

    let pairs: Vec<(usize, &FormalContext, AlgorithmId)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(i, ctx)| algorithms.iter().map(move |&a| (i, ctx, a)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(args.jobs))
        .build()
        .context("starting worker threads")?;
    let results: Vec<Measured> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(i, ctx, a)| measure(i, ctx, a, args.repeat, args.inject_fault))
            .collect()
    });

    let records: Vec<&Record> = results.iter().map(|m| &m.record).collect();
    write_records(args.format, &records)?;

    let problems = disagreements(&results);
    if problems.is_empty() {
        return Ok(());
    }
    for p in &problems {
        eprintln!("disagreement: {p}");
    }
    Err(fail(
        exit::CHECK,
        format!("{} algorithm disagreements", problems.len()),
    ))
}
