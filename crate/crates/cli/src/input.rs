use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use lincbo::{read_cxt, read_fimi, FormalContext};

use crate::args::{InputArgs, InputFormat};

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .context("reading standard input")?;
        return Ok(buf);
    }
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn guess_format(path: &Path) -> InputFormat {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("dat" | "fimi" | "txt") => InputFormat::Fimi,
        _ => InputFormat::Cxt,
    }
}

pub fn load_context(path: &Path, format: Option<InputFormat>) -> Result<FormalContext> {
    let bytes = read_bytes(path)?;
    let mut ctx = match format.unwrap_or_else(|| guess_format(path)) {
        InputFormat::Cxt => read_cxt(&bytes),
        InputFormat::Fimi => read_fimi(&bytes),
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    if ctx.name().is_empty() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            ctx.set_name(stem);
        }
    }
    Ok(ctx)
}

pub fn load(args: &InputArgs) -> Result<FormalContext> {
    load_context(&args.input, args.input_format)
}

/// Writes to `path`, or to standard output when it is `None`.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
