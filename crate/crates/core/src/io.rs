//! Text and JSON documents for q-cycle sets, solutions and dynamical pairs.
//!
//! Text documents are whitespace separated with `#` comments:
//!
//! ```text
//! n 2
//! dot
//! 2 1
//! 2 1
//! colon
//! 2 1
//! 2 1
//! ```
//!
//! Solutions use `lambda` and `rho` in place of `dot` and `colon`. A JSON
//! object with the same keys and row arrays is accepted interchangeably.
//! Every entry is 1-based.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extension::DynamicalPair;
use crate::model::{QCycleSet, Solution};

/// Separator line between documents of a stream.
pub const DOCUMENT_SEPARATOR: &str = "---";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    QCycleSet(QCycleSet),
    Solution(Solution),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn to_zero_based(rows: Vec<Vec<usize>>, key: &str, n: usize) -> Result<Vec<Vec<usize>>> {
    rows.into_iter()
        .enumerate()
        .map(|(x, row)| {
            row.into_iter()
                .map(|v| {
                    if v == 0 || v > n {
                        Err(Error::Malformed(format!(
                            "{key} row {}: entry {v} out of range 1..={n}",
                            x + 1
                        )))
                    } else {
                        Ok(v - 1)
                    }
                })
                .collect()
        })
        .collect()
}

fn build(n: usize, mut fields: Vec<(String, Vec<Vec<usize>>)>) -> Result<Document> {
    let keys: Vec<&str> = fields.iter().map(|(k, _)| k.as_str()).collect();
    let has = |k: &str| keys.contains(&k);
    let table_keys = (has("dot") || has("colon"), has("lambda") || has("rho"));
    let mut take = |key: &str| -> Result<Vec<Vec<usize>>> {
        let i = fields
            .iter()
            .position(|(k, _)| k == key)
            .ok_or_else(|| Error::Parse(format!("missing key `{key}`")))?;
        let (_, rows) = fields.swap_remove(i);
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("`{key}` must be {n} rows of {n} entries")));
        }
        to_zero_based(rows, key, n)
    };
    match table_keys {
        (true, true) => Err(Error::Parse(
            "schema error: document mixes q-cycle set keys (dot, colon) with solution keys (lambda, rho)".into(),
        )),
        (true, false) => {
            let dot = take("dot")?;
            let colon = take("colon")?;
            Ok(Document::QCycleSet(QCycleSet::from_tables(dot, colon)?))
        }
        (false, true) => {
            let lambda = take("lambda")?;
            let rho = take("rho")?;
            Ok(Document::Solution(Solution::new(lambda, rho)?))
        }
        (false, false) => Err(Error::Parse("document has no tables".into())),
    }
}

const TABLE_KEYS: [&str; 4] = ["dot", "colon", "lambda", "rho"];

fn parse_text(text: &str) -> Result<Document> {
    let mut n: Option<usize> = None;
    let mut fields: Vec<(String, Vec<usize>)> = Vec::new();
    let mut expect_n = false;
    for (lineno, line) in text.lines().enumerate() {
        for raw in strip_comment(line).split_whitespace() {
            let token = raw.trim_end_matches([':', '=']);
            if token.is_empty() {
                continue;
            }
            if token == "n" {
                if n.is_some() || expect_n {
                    return Err(Error::Parse(format!("line {}: duplicate key `n`", lineno + 1)));
                }
                expect_n = true;
            } else if TABLE_KEYS.contains(&token) {
                if expect_n {
                    return Err(Error::Parse(format!("line {}: `n` has no value", lineno + 1)));
                }
                if fields.iter().any(|(k, _)| k == token) {
                    return Err(Error::Parse(format!("line {}: duplicate key `{token}`", lineno + 1)));
                }
                fields.push((token.to_string(), Vec::new()));
            } else {
                let v: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: unexpected token `{raw}`", lineno + 1)))?;
                if expect_n {
                    n = Some(v);
                    expect_n = false;
                } else if let Some((_, values)) = fields.last_mut() {
                    values.push(v);
                } else {
                    return Err(Error::Parse(format!(
                        "line {}: value `{v}` outside any table",
                        lineno + 1
                    )));
                }
            }
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing key `n`".into()))?;
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let fields = fields
        .into_iter()
        .map(|(k, values)| {
            if values.len() != n * n {
                return Err(Error::Malformed(format!(
                    "`{k}` has {} entries, expected {}",
                    values.len(),
                    n * n
                )));
            }
            let rows = values.chunks(n).map(<[usize]>::to_vec).collect();
            Ok((k, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    build(n, fields)
}

fn json_rows(key: &str, v: &Value) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Parse(format!("`{key}` must be an array of arrays of positive integers"));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| e.as_u64().map(|u| u as usize).ok_or_else(bad))
                .collect()
        })
        .collect()
}

fn parse_json(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Parse("JSON document must be an object".into()))?;
    let mut n = None;
    let mut fields = Vec::new();
    for (key, v) in object {
        match key.as_str() {
            "n" => {
                n = Some(
                    v.as_u64()
                        .ok_or_else(|| Error::Parse("`n` must be a positive integer".into()))?
                        as usize,
                )
            }
            k if TABLE_KEYS.contains(&k) => fields.push((key.clone(), json_rows(key, v)?)),
            other => return Err(Error::Parse(format!("schema error: unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing key `n`".into()))?;
    if n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    build(n, fields)
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parses one document in either format.
pub fn parse_document(text: &str) -> Result<Document> {
    if looks_like_json(text) {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn parse_qcycle_set(text: &str) -> Result<QCycleSet> {
    match parse_document(text)? {
        Document::QCycleSet(x) => Ok(x),
        Document::Solution(_) => Err(Error::Parse("expected a q-cycle set document, found a solution".into())),
    }
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    match parse_document(text)? {
        Document::Solution(s) => Ok(s),
        Document::QCycleSet(_) => Err(Error::Parse("expected a solution document, found a q-cycle set".into())),
    }
}

/// Splits a stream at separator lines and parses each nonempty part.
pub fn parse_stream(text: &str) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| -> Result<()> {
        if current.lines().any(|l| !strip_comment(l).trim().is_empty()) {
            docs.push(parse_document(current)?);
        }
        current.clear();
        Ok(())
    };
    for line in text.lines() {
        if line.trim() == DOCUMENT_SEPARATOR {
            flush(&mut current)?;
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    flush(&mut current)?;
    Ok(docs)
}

fn one_based_rows(rows: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    rows.map(|r| r.into_iter().map(|v| v + 1).collect()).collect()
}

fn text_tables(n: usize, tables: [(&str, Vec<Vec<usize>>); 2]) -> String {
    let mut out = format!("n {n}\n");
    for (key, rows) in tables {
        out.push_str(key);
        out.push('\n');
        for row in rows {
            let line: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn qcycle_set_to_json(x: &QCycleSet) -> Value {
    json!({
        "n": x.n(),
        "dot": one_based_rows(x.dot_rows().into_iter()),
        "colon": one_based_rows(x.colon_rows().into_iter()),
    })
}

pub fn solution_to_json(s: &Solution) -> Value {
    json!({
        "n": s.n(),
        "lambda": one_based_rows(s.lambda_rows().iter().cloned()),
        "rho": one_based_rows(s.rho_rows().iter().cloned()),
    })
}

pub fn write_qcycle_set(x: &QCycleSet, format: Format) -> String {
    match format {
        Format::Text => text_tables(x.n(), [("dot", x.dot_rows()), ("colon", x.colon_rows())]),
        Format::Json => qcycle_set_to_json(x).to_string() + "\n",
    }
}

pub fn write_solution(s: &Solution, format: Format) -> String {
    match format {
        Format::Text => text_tables(
            s.n(),
            [("lambda", s.lambda_rows().to_vec()), ("rho", s.rho_rows().to_vec())],
        ),
        Format::Json => solution_to_json(s).to_string() + "\n",
    }
}

pub fn write_document(doc: &Document, format: Format) -> String {
    match doc {
        Document::QCycleSet(x) => write_qcycle_set(x, format),
        Document::Solution(s) => write_solution(s, format),
    }
}

/// Documents joined by separator lines (text) or one object per line (JSON).
pub fn write_stream<'a>(xs: impl IntoIterator<Item = &'a QCycleSet>, format: Format) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| write_qcycle_set(x, format)).collect();
    match format {
        Format::Text => parts.join(&format!("{DOCUMENT_SEPARATOR}\n")),
        Format::Json => parts.concat(),
    }
}

/// Parses a newline-delimited JSON stream or a separator-delimited text
/// stream of q-cycle sets.
pub fn parse_qcycle_set_stream(text: &str) -> Result<Vec<QCycleSet>> {
    let docs = if looks_like_json(text) {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(parse_json)
            .collect::<Result<Vec<_>>>()?
    } else {
        parse_stream(text)?
    };
    docs.into_iter()
        .map(|d| match d {
            Document::QCycleSet(x) => Ok(x),
            Document::Solution(_) => Err(Error::Parse("stream contains a solution".into())),
        })
        .collect()
}

/// Dynamical pair file: a header `n m`, then `n·n·m` lines `x y s : images`
/// for `α` followed by as many for `α′`.
pub fn parse_pair(text: &str) -> Result<DynamicalPair> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    let parse_num = |lineno: usize, t: &str| -> Result<usize> {
        t.parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: expected an integer, found `{t}`")))
    };
    let (lineno, header) = lines.next().ok_or_else(|| Error::Parse("empty pair file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::Parse(format!("line {lineno}: header must be `n m`")));
    }
    let n = parse_num(lineno, head[0])?;
    let m = parse_num(lineno, head[1])?;
    if n == 0 || m == 0 {
        return Err(Error::Malformed("base and fiber must be nonempty".into()));
    }
    let count = n * n * m;
    let mut tables = [vec![usize::MAX; count * m], vec![usize::MAX; count * m]];
    for (which, table) in tables.iter_mut().enumerate() {
        let name = if which == 0 { "alpha" } else { "alpha'" };
        for _ in 0..count {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("{name}: expected {count} lines")))?;
            let (key, images) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `x y s : images`")))?;
            let key: Vec<usize> = key
                .split_whitespace()
                .map(|t| parse_num(lineno, t))
                .collect::<Result<_>>()?;
            let images: Vec<usize> = images
                .split_whitespace()
                .map(|t| parse_num(lineno, t))
                .collect::<Result<_>>()?;
            if key.len() != 3 || images.len() != m {
                return Err(Error::Parse(format!(
                    "line {lineno}: expected three indices and {m} images"
                )));
            }
            let (x, y, s) = (key[0], key[1], key[2]);
            if x == 0 || x > n || y == 0 || y > n || s == 0 || s > m {
                return Err(Error::Malformed(format!("line {lineno}: index out of range")));
            }
            let base = (((x - 1) * n + (y - 1)) * m + (s - 1)) * m;
            if table[base] != usize::MAX {
                return Err(Error::Parse(format!("line {lineno}: duplicate entry for {x} {y} {s}")));
            }
            for (t, &v) in images.iter().enumerate() {
                if v == 0 || v > m {
                    return Err(Error::Malformed(format!(
                        "line {lineno}: image {v} out of range 1..={m}"
                    )));
                }
                table[base + t] = v - 1;
            }
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::Parse(format!("line {lineno}: trailing content")));
    }
    let [alpha, alpha_prime] = tables;
    DynamicalPair::new(n, m, alpha, alpha_prime)
}

pub fn write_pair(pair: &DynamicalPair) -> String {
    let (n, m) = (pair.base_size(), pair.fiber_size());
    let mut out = format!("{n} {m}\n");
    for (name, f) in [
        (
            "alpha",
            DynamicalPair::alpha as fn(&DynamicalPair, usize, usize, usize, usize) -> usize,
        ),
        ("alpha'", DynamicalPair::alpha_prime),
    ] {
        out.push_str(&format!("# {name}\n"));
        for x in 0..n {
            for y in 0..n {
                for s in 0..m {
                    let images: Vec<String> = (0..m).map(|t| (f(pair, x, y, s, t) + 1).to_string()).collect();
                    out.push_str(&format!("{} {} {} : {}\n", x + 1, y + 1, s + 1, images.join(" ")));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures;

    #[test]
    fn text_round_trip() {
        let x = fixtures::nonsimple6().unwrap();
        let text = write_qcycle_set(&x, Format::Text);
        assert_eq!(parse_qcycle_set(&text).unwrap(), x);
        let json = write_qcycle_set(&x, Format::Json);
        assert_eq!(parse_qcycle_set(&json).unwrap(), x);
    }

    #[test]
    fn comments_and_one_based() {
        let doc = "# swap\nn 2\ndot\n2 1 # row 1\n2 1\ncolon\n2 1\n2 1\n";
        let x = parse_qcycle_set(doc).unwrap();
        assert_eq!(x.dot(0, 0), 1);
        assert_eq!(
            write_qcycle_set(&x, Format::Text),
            "n 2\ndot\n2 1\n2 1\ncolon\n2 1\n2 1\n"
        );
    }

    #[test]
    fn mixed_keys_are_a_schema_error() {
        let doc = "n 1\ndot\n1\nrho\n1\n";
        assert!(matches!(parse_document(doc), Err(Error::Parse(m)) if m.contains("schema")));
        let doc = r#"{"n":1,"lambda":[[1]],"colon":[[1]]}"#;
        assert!(matches!(parse_document(doc), Err(Error::Parse(m)) if m.contains("schema")));
    }

    #[test]
    fn non_bijective_row_is_malformed() {
        let doc = "n 2\ndot\n1 1\n1 2\ncolon\n1 2\n1 2\n";
        assert!(matches!(parse_document(doc), Err(Error::Malformed(_))));
    }

    #[test]
    fn solution_round_trip() {
        let s = fixtures::j4().unwrap();
        for format in [Format::Text, Format::Json] {
            assert_eq!(parse_solution(&write_solution(&s, format)).unwrap(), s);
        }
    }

    #[test]
    fn stream_round_trip() {
        let xs = vec![QCycleSet::trivial(3), QCycleSet::cyclic(3)];
        for format in [Format::Text, Format::Json] {
            assert_eq!(parse_qcycle_set_stream(&write_stream(&xs, format)).unwrap(), xs);
        }
    }

    #[test]
    fn pair_round_trip() {
        let pair = DynamicalPair::from_fn(2, 3, |x, _, s, t| (t + x + s) % 3, |_, y, _, t| (t + y) % 3).unwrap();
        assert_eq!(parse_pair(&write_pair(&pair)).unwrap(), pair);
    }
}
