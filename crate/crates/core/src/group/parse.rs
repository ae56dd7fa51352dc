use std::sync::Arc;

use super::{FiniteGroup, LoadOptions};
use crate::error::{Error, Result};

const MAX_DEGREE: usize = 1 << 16;

/// Parses a group file with default options.
///
/// ```text
/// kind: permutation        kind: table
/// degree: 3                order: 2
/// gen a: 2 1 3             gen t: 1        (optional for tables)
/// gen b: 2 3 1             row 0: 0 1
///                          row 1: 1 0
/// ```
pub fn load_group(text: &str) -> Result<Arc<FiniteGroup>> {
    load_group_with(text, &LoadOptions::default())
}

pub fn load_group_with(text: &str, opts: &LoadOptions) -> Result<Arc<FiniteGroup>> {
    let mut kind: Option<(usize, String)> = None;
    let mut degree: Option<(usize, usize)> = None;
    let mut order: Option<(usize, usize)> = None;
    let mut gens: Vec<(usize, String, Vec<usize>)> = Vec::new();
    let mut rows: Vec<(usize, usize, Vec<usize>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `key: value`"))?;
        let key = key.trim();
        let value = value.trim();
        let mut key_parts = key.split_whitespace();
        let head = key_parts.next().unwrap_or("");
        let arg = key_parts.next();
        if key_parts.next().is_some() {
            return Err(Error::parse(line_no, format!("unexpected key `{key}`")));
        }
        match (head, arg) {
            ("kind", None) => {
                if kind.is_some() {
                    return Err(Error::parse(line_no, "duplicate `kind`"));
                }
                kind = Some((line_no, value.to_string()));
            }
            ("degree", None) => {
                if degree.is_some() {
                    return Err(Error::parse(line_no, "duplicate `degree`"));
                }
                degree = Some((line_no, parse_usize(value, line_no)?));
            }
            ("order", None) => {
                if order.is_some() {
                    return Err(Error::parse(line_no, "duplicate `order`"));
                }
                order = Some((line_no, parse_usize(value, line_no)?));
            }
            ("gen", Some(name)) => {
                if !is_identifier(name) {
                    return Err(Error::parse(line_no, format!("invalid generator name `{name}`")));
                }
                if gens.iter().any(|(_, n, _)| n == name) {
                    return Err(Error::parse(line_no, format!("duplicate generator `{name}`")));
                }
                gens.push((line_no, name.to_string(), parse_list(value, line_no)?));
            }
            ("row", Some(g)) => {
                let g = parse_usize(g, line_no)?;
                rows.push((line_no, g, parse_list(value, line_no)?));
            }
            _ => return Err(Error::parse(line_no, format!("unknown key `{key}`"))),
        }
    }

    let (kind_line, kind) = kind.ok_or_else(|| Error::parse(0, "missing `kind`"))?;
    match kind.as_str() {
        "permutation" => {
            if let Some((line, _, _)) = rows.first() {
                return Err(Error::parse(*line, "`row` is only valid for table groups"));
            }
            if let Some((line, _)) = order {
                return Err(Error::parse(line, "`order` is only valid for table groups"));
            }
            let (degree_line, degree) = degree.ok_or_else(|| Error::parse(kind_line, "missing `degree`"))?;
            if degree > MAX_DEGREE {
                return Err(Error::parse(degree_line, format!("degree exceeds {MAX_DEGREE}")));
            }
            let mut perm_gens = Vec::with_capacity(gens.len());
            for (line, name, images) in gens {
                if images.len() != degree {
                    return Err(Error::parse(
                        line,
                        format!("generator `{name}` has {} images, expected {degree}", images.len()),
                    ));
                }
                let mut seen = vec![false; degree];
                let mut perm = Vec::with_capacity(degree);
                for &p in &images {
                    if p == 0 || p > degree || seen[p - 1] {
                        return Err(Error::parse(
                            line,
                            format!("generator `{name}` is not a permutation of 1..{degree}"),
                        ));
                    }
                    seen[p - 1] = true;
                    perm.push((p - 1) as u32);
                }
                perm_gens.push((name, perm));
            }
            FiniteGroup::from_permutations(degree, perm_gens, opts.cap)
        }
        "table" => {
            if let Some((line, _)) = degree {
                return Err(Error::parse(line, "`degree` is only valid for permutation groups"));
            }
            let (order_line, n) = order.ok_or_else(|| Error::parse(kind_line, "missing `order`"))?;
            if n == 0 {
                return Err(Error::parse(order_line, "order must be positive"));
            }
            if n > opts.cap {
                return Err(Error::ClosureOverflow { cap: opts.cap });
            }
            let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
            for (line, g, entries) in rows {
                if g >= n {
                    return Err(Error::parse(line, format!("row index {g} out of range")));
                }
                if table[g].is_some() {
                    return Err(Error::parse(line, format!("duplicate row {g}")));
                }
                if entries.len() != n {
                    return Err(Error::parse(
                        line,
                        format!("row {g} has {} entries, expected {n}", entries.len()),
                    ));
                }
                table[g] = Some(entries);
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(g, r)| r.ok_or_else(|| Error::parse(order_line, format!("missing row {g}"))))
                .collect::<Result<Vec<_>>>()?;
            let mut named = Vec::with_capacity(gens.len());
            for (line, name, value) in gens {
                if value.len() != 1 {
                    return Err(Error::parse(line, "table generators take a single element index"));
                }
                named.push((name, value[0]));
            }
            FiniteGroup::from_cayley_table(table, named)
        }
        other => Err(Error::parse(kind_line, format!("unknown kind `{other}`"))),
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, got `{s}`")))
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split_whitespace().map(|t| parse_usize(t, line)).collect()
}
