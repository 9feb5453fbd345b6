//! Burmeister CXT and FIMI readers, and the CXT writer.

use std::fmt::Write as _;

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

fn decode(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::parse(0, format!("input is not UTF-8: {e}")))
}

/// Parses a Burmeister CXT file.
///
/// Layout: `B`, context name, object count, attribute count, an empty line,
/// object names, attribute names, then one row per object made of exactly
/// `|Y|` characters from `X` and `.`.
pub fn read_cxt(bytes: &[u8]) -> Result<FormalContext> {
    let text = decode(bytes)?;
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();
    let mut next = |what: &str| {
        lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
    };

    let (line, magic) = next("header")?;
    if magic.trim_end() != "B" {
        return Err(Error::parse(line, "header must be `B`"));
    }
    let (_, name) = next("context name")?;
    let name = name.trim_end().to_string();
    let mut count = |what: &str| -> Result<usize> {
        let (line, text) = next(what)?;
        text.trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid {what} `{}`", text.trim())))
    };
    let n_objects = count("object count")?;
    let n_attributes = count("attribute count")?;
    let (line, blank) = next("empty separator line")?;
    if !blank.trim().is_empty() {
        return Err(Error::parse(
            line,
            "expected an empty line after the counts",
        ));
    }

    let mut object_names = Vec::with_capacity(n_objects);
    for _ in 0..n_objects {
        object_names.push(next("object name")?.1.trim_end().to_string());
    }
    let mut attribute_names = Vec::with_capacity(n_attributes);
    for _ in 0..n_attributes {
        attribute_names.push(next("attribute name")?.1.trim_end().to_string());
    }

    let mut rows = Vec::with_capacity(n_objects);
    for _ in 0..n_objects {
        let (line, text) = next("incidence row")?;
        let text = text.trim_end();
        let width = text.chars().count();
        if width != n_attributes {
            return Err(Error::parse(
                line,
                format!("incidence row has {width} entries, expected {n_attributes}"),
            ));
        }
        let mut row = AttributeSet::empty(n_attributes);
        for (y, c) in text.chars().enumerate() {
            match c {
                'X' => {
                    row.insert(y);
                }
                '.' => {}
                other => {
                    return Err(Error::parse(
                        line,
                        format!("unexpected character `{other}` in incidence row"),
                    ))
                }
            }
        }
        rows.push(row);
    }

    for (i, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(Error::parse(i + 1, "trailing content after the last row"));
        }
    }

    FormalContext::with_names(name, rows, object_names, attribute_names)
}

pub fn write_cxt(ctx: &FormalContext) -> Vec<u8> {
    let mut out = String::new();
    let _ = write!(
        out,
        "B\n{}\n{}\n{}\n\n",
        ctx.name(),
        ctx.n_objects(),
        ctx.n_attributes()
    );
    for name in ctx.object_names().iter().chain(ctx.attribute_names()) {
        out.push_str(name);
        out.push('\n');
    }
    for row in ctx.rows() {
        out.extend((0..ctx.n_attributes()).map(|y| if row.contains(y) { 'X' } else { '.' }));
        out.push('\n');
    }
    out.into_bytes()
}

/// Parses FIMI transactions: one object per line, 1-based attribute numbers.
///
/// The attribute count is the largest number seen.
pub fn read_fimi(bytes: &[u8]) -> Result<FormalContext> {
    let text = decode(bytes)?;
    let mut transactions = Vec::new();
    let mut n_attributes = 0;
    for (i, line) in text.lines().enumerate() {
        let mut items = Vec::new();
        for token in line.split_whitespace() {
            let value: usize = token.parse().map_err(|_| {
                Error::parse(i + 1, format!("`{token}` is not an attribute number"))
            })?;
            if value == 0 {
                return Err(Error::parse(i + 1, "attribute numbers start at 1"));
            }
            n_attributes = n_attributes.max(value);
            items.push(value - 1);
        }
        transactions.push(items);
    }
    let rows = transactions
        .into_iter()
        .map(|items| AttributeSet::from_indices(n_attributes, items))
        .collect();
    FormalContext::from_rows(n_attributes, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::tests::k1;

    const K1_CXT: &str = "B\n\n3\n4\n\nx1\nx2\nx3\na1\na2\na3\na4\nXX..\nX.X.\n.XXX\n";

    #[test]
    fn reads_k1() {
        let ctx = read_cxt(K1_CXT.as_bytes()).unwrap();
        assert_eq!(ctx.n_objects(), 3);
        assert_eq!(ctx.n_attributes(), 4);
        assert_eq!(ctx.incidence_count(), 7);
        assert_eq!(ctx.rows()[0], AttributeSet::from_indices(4, [0, 1]));
        assert_eq!(ctx, k1());
    }

    #[test]
    fn writes_k1_bit_exact() {
        assert_eq!(String::from_utf8(write_cxt(&k1())).unwrap(), K1_CXT);
    }

    #[test]
    fn empty_context_round_trips() {
        let empty = FormalContext::from_rows(0, vec![]).unwrap();
        let text = write_cxt(&empty);
        assert_eq!(text, b"B\n\n0\n0\n\n");
        assert_eq!(read_cxt(&text).unwrap(), empty);
    }

    #[test]
    fn tolerates_crlf_and_trailing_whitespace() {
        let text = K1_CXT.replace('\n', "  \r\n");
        let ctx = read_cxt(text.as_bytes()).unwrap();
        assert_eq!(ctx, k1());
    }

    #[test]
    fn rejects_malformed_files() {
        let bad_header = K1_CXT.replacen('B', "A", 1);
        assert!(read_cxt(bad_header.as_bytes()).unwrap_err().is_parse());

        let short_row = K1_CXT.replace("X.X.", "X.X");
        assert!(matches!(
            read_cxt(short_row.as_bytes()),
            Err(Error::Parse { line: 14, .. })
        ));

        let bad_char = K1_CXT.replace(".XXX", ".XoX");
        assert!(read_cxt(bad_char.as_bytes()).is_err());

        let truncated = &K1_CXT[..K1_CXT.len() - 5];
        assert!(read_cxt(truncated.as_bytes()).is_err());

        let bad_count = K1_CXT.replacen("3\n", "three\n", 1);
        assert!(read_cxt(bad_count.as_bytes()).is_err());
    }

    #[test]
    fn fimi_examples() {
        let ctx = read_fimi(b"1 2\n1 3\n2 3 4\n").unwrap();
        assert_eq!(ctx.rows(), k1().rows());

        let empty = read_fimi(b"").unwrap();
        assert_eq!((empty.n_objects(), empty.n_attributes()), (0, 0));

        let single = read_fimi(b"5\n").unwrap();
        assert_eq!((single.n_objects(), single.n_attributes()), (1, 5));
        assert_eq!(single.incidence_count(), 1);

        assert!(read_fimi(b"1 x\n").unwrap_err().is_parse());
        assert!(read_fimi(b"0 1\n").is_err());
    }
}
