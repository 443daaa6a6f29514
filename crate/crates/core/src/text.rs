//! Plain-text forms of codes and codebooks.
//!
//! A code file is a header line `n=<n> k=<k> kind=<kind> size=<size>`
//! (ECC codebooks append `d=<d> metric=<metric>`) followed by one
//! permutation per line in lexicographic order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::constraints::{Constraint, ConstraintKind};
use crate::constructions::Code;
use crate::ecc::{EccCode, Metric};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Splits `key=value` tokens separated by whitespace.
pub fn parse_header(line: &str) -> Result<BTreeMap<String, String>> {
    let mut fields = BTreeMap::new();
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse(format!("malformed header field {token:?}")));
        }
        if fields.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::Parse(format!("repeated header field {key:?}")));
        }
    }
    Ok(fields)
}

fn header_field<'a>(fields: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    fields
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Parse(format!("header lacks {key}=")))
}

pub fn header_usize(fields: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    let raw = header_field(fields, key)?;
    raw.parse()
        .map_err(|_| Error::Parse(format!("{key}={raw} is not a nonnegative integer")))
}

fn code_header(code: &Code) -> String {
    let c = code.constraint();
    format!("n={} k={} kind={} size={}", code.n(), c.k(), c.kind(), code.len())
}

fn push_members(out: &mut String, code: &Code) {
    for p in code {
        writeln!(out, "{p}").expect("writing to a String");
    }
}

pub fn code_to_text(code: &Code) -> String {
    let mut out = code_header(code);
    out.push('\n');
    push_members(&mut out, code);
    out
}

pub fn ecc_to_text(code: &EccCode) -> String {
    let mut out = format!(
        "{} d={} metric={}\n",
        code_header(code.base()),
        code.min_distance(),
        code.metric()
    );
    push_members(&mut out, code.base());
    out
}

/// A parsed code file; `ecc` is set when the header carries `d` and `metric`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub code: Code,
    pub ecc: Option<(u64, Metric)>,
}

impl CodeFile {
    pub fn into_ecc(self) -> Option<EccCode> {
        let (d, metric) = self.ecc?;
        EccCode::new(self.code, d, metric).ok()
    }
}

pub fn parse_code(text: &str) -> Result<CodeFile> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let fields = parse_header(header)?;
    let n = header_usize(&fields, "n")?;
    let k = header_usize(&fields, "k")?;
    let size = header_usize(&fields, "size")?;
    let kind: ConstraintKind = header_field(&fields, "kind")?.parse()?;
    let k = u32::try_from(k).map_err(|_| Error::Parse(format!("k={k} is too large")))?;
    let constraint = Constraint::new(kind, k)?;
    let ecc = match (fields.get("d"), fields.get("metric")) {
        (None, None) => None,
        (Some(_), Some(m)) => Some((header_usize(&fields, "d")? as u64, m.parse::<Metric>()?)),
        _ => return Err(Error::Parse("d= and metric= must appear together".into())),
    };
    let mut members = Vec::new();
    let mut prev: Option<Permutation> = None;
    for (i, line) in lines.enumerate() {
        let p: Permutation = line.parse()?;
        if p.len() != n {
            return Err(Error::LengthMismatch { left: n, right: p.len() });
        }
        if let Some(q) = &prev {
            if q >= &p {
                return Err(Error::Parse(format!(
                    "line {} is not in strictly increasing lexicographic order",
                    i + 2
                )));
            }
        }
        prev = Some(p.clone());
        members.push(p);
    }
    if members.len() != size {
        return Err(Error::Parse(format!(
            "header says size={size} but {} permutations follow",
            members.len()
        )));
    }
    let code = Code::new(n, constraint, "file", members)?;
    Ok(CodeFile { code, ecc })
}
