use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use lincbo::enumeration::cbo_closed_sets;
use lincbo::scaling::{read_csv, remove_full_columns, scale as scale_table, ScalingSpec};
use lincbo::{
    compute_basis, gen_contranominal, gen_random, verify_basis, write_cxt, BasisSummary,
    ImplicationRecord, Theory,
};
use serde::{Deserialize, Serialize};

use crate::args::{BasisArgs, GenArgs, IntentsArgs, OutputFormat, ScaleArgs, VerifyArgs};
use crate::input::{load, read_bytes, write_output};
use crate::{exit, fail};

/// JSON document written by `basis --format json`.
#[derive(Serialize, Deserialize)]
struct BasisDocument {
    #[serde(flatten)]
    summary: BasisSummary,
    implications: Vec<ImplicationRecord>,
}

pub fn basis(args: BasisArgs) -> Result<()> {
    let ctx = load(&args.input)?;
    let result = compute_basis(&ctx, args.algorithm);
    let summary = result.summary();
    let mut out = BufWriter::new(io::stdout().lock());
    match args.format {
        OutputFormat::Text => {
            out.write_all(
                result
                    .basis
                    .to_text(ctx.attribute_names(), args.reduced_rhs)
                    .as_bytes(),
            )?;
            writeln!(
                out,
                "# algorithm: {}  intents: {}  pseudo-intents: {}  closure calls: {}  time: {:.3} ms",
                summary.algorithm,
                summary.intents,
                summary.pseudo_intents,
                summary.closure_calls,
                summary.ms
            )?;
        }
        OutputFormat::Json => {
            let doc = BasisDocument {
                implications: result.basis.to_records(args.reduced_rhs),
                summary,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn intents(args: IntentsArgs) -> Result<()> {
    let ctx = load(&args.input)?;
    let mut out = BufWriter::new(io::stdout().lock());
    if args.count {
        let stats = cbo_closed_sets(&ctx, |_| {});
        writeln!(out, "{}", stats.closed_sets)?;
    } else {
        let names = ctx.attribute_names();
        let mut status = Ok(());
        cbo_closed_sets(&ctx, |b| {
            if status.is_ok() {
                let line: Vec<&str> = b.iter().map(|a| names[a].as_str()).collect();
                status = writeln!(out, "{}", line.join(" "));
            }
        });
        status?;
    }
    out.flush()?;
    Ok(())
}

pub fn gen(args: GenArgs) -> Result<()> {
    let ctx = match args.contranominal {
        Some(n) => gen_contranominal(n),
        None => {
            let (Some(nx), Some(ny), Some(d)) = (args.objects, args.attributes, args.density)
            else {
                return Err(fail(
                    exit::USAGE,
                    "--random needs --objects, --attributes and --density",
                ));
            };
            gen_random(nx, ny, d, args.seed)?
        }
    };
    write_output(args.out.as_deref(), &write_cxt(&ctx))
}

pub fn scale(args: ScaleArgs) -> Result<()> {
    let spec = ScalingSpec::new(args.method, args.k)?;
    let bytes = read_bytes(&args.csv)?;
    let mut table = read_csv(&bytes, !args.no_header, args.kinds.as_deref())
        .with_context(|| format!("parsing {}", args.csv.display()))?;
    if args.drop_missing {
        let dropped = table.drop_missing_rows();
        if dropped > 0 {
            eprintln!("dropped {dropped} rows with missing values");
        }
    }
    let scaled = scale_table(&table, spec)?;
    for feature in &scaled.report.features {
        if let Some(note) = &feature.note {
            eprintln!("feature `{}`: {note}", feature.name);
        }
    }
    let mut ctx = scaled.context;
    if args.remove_full_columns {
        ctx = remove_full_columns(&ctx);
    }
    if let Some(stem) = args.csv.file_stem().and_then(|s| s.to_str()) {
        if stem != "-" {
            ctx.set_name(format!("{}{}{}", spec.method(), spec.k(), stem));
        }
    }
    if let Some(path) = &args.cutpoints {
        let json = serde_json::to_vec_pretty(&scaled.report)?;
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    write_output(args.out.as_deref(), &write_cxt(&ctx))
}

fn parse_basis(text: &str, names: &[String]) -> lincbo::Result<Theory> {
    match text.trim_start().chars().next() {
        Some('{') => {
            let doc: BasisDocument = serde_json::from_str(text)?;
            let mut theory = Theory::new(names.len());
            for record in &doc.implications {
                theory.push(record.to_implication(names.len())?);
            }
            Ok(theory)
        }
        Some('[') => Theory::parse_json(text, names.len()),
        _ => Theory::parse_text(text, names),
    }
}

pub fn verify(args: VerifyArgs) -> Result<()> {
    let ctx = load(&args.input)?;
    let bytes = read_bytes(&args.basis)?;
    let text = String::from_utf8(bytes).map_err(|_| {
        fail(
            exit::PARSE,
            format!("{} is not UTF-8", args.basis.display()),
        )
    })?;
    let theory = parse_basis(&text, ctx.attribute_names())
        .with_context(|| format!("parsing {}", args.basis.display()))?;
    let report = verify_basis(&ctx, &theory, args.limit);
    print!("{report}");
    io::stdout().flush()?;
    if report.passed() {
        Ok(())
    } else {
        Err(fail(exit::CHECK, "basis verification failed"))
    }
}
