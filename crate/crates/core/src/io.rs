//! Plain-text formats.
//!
//! Extent sets:
//!
//! ```text
//! # d=2
//! 1,S,0,2,0,2
//! 1,U,1,3,1,3
//! ```
//!
//! one extent per line as `id,kind,low_1,high_1,...,low_d,high_d` with kind
//! `S` or `U`. Coordinates are written in shortest round-trip form, so
//! writing and re-reading a set is lossless.
//!
//! Matrices: a header line `n m K` followed by one `i,j` line per set bit,
//! 1-based and sorted by row then column.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extent::{Extent, Kind, MatchInstance};
use crate::matrix::IntersectionMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_extents(inst: &MatchInstance) -> String {
    let mut out = format!("# d={}\n", inst.dims());
    for e in inst.subscriptions().iter().chain(inst.updates()) {
        let _ = write!(out, "{},{}", e.id(), e.kind().tag());
        for p in e.projections() {
            let _ = write!(out, ",{},{}", p.low(), p.high());
        }
        out.push('\n');
    }
    out
}

pub fn parse_extents(text: &str) -> Result<MatchInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `# d=<d>` header"))?;
    let dims: usize = header
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|h| h.strip_prefix("d="))
        .ok_or_else(|| parse_err(header_line, "expected `# d=<d>` header"))?
        .trim()
        .parse()
        .map_err(|e| parse_err(header_line, format!("bad dimension count: {e}")))?;
    if dims == 0 {
        return Err(parse_err(header_line, "dimension count must be at least 1"));
    }

    let mut subs = Vec::new();
    let mut upds = Vec::new();
    for (n, line) in lines {
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 + 2 * dims {
            return Err(parse_err(
                n,
                format!("expected {} fields, found {}", 2 + 2 * dims, fields.len()),
            ));
        }
        let id: usize = fields[0]
            .parse()
            .map_err(|e| parse_err(n, format!("bad id `{}`: {e}", fields[0])))?;
        let kind = match fields[1] {
            "S" => Kind::Subscription,
            "U" => Kind::Update,
            other => return Err(parse_err(n, format!("kind must be S or U, found `{other}`"))),
        };
        let coords = fields[2..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| parse_err(n, format!("bad coordinate `{f}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let bounds: Vec<(f64, f64)> = coords.chunks(2).map(|c| (c[0], c[1])).collect();
        let extent = Extent::new(id, kind, &bounds).map_err(|e| parse_err(n, e.to_string()))?;
        match kind {
            Kind::Subscription => subs.push(extent),
            Kind::Update => upds.push(extent),
        }
    }
    subs.sort_by_key(Extent::id);
    upds.sort_by_key(Extent::id);
    MatchInstance::new(dims, subs, upds)
}

pub fn write_matrix(m: &IntersectionMatrix) -> String {
    let pairs = m.pairs();
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), pairs.len());
    for (i, j) in pairs {
        let _ = writeln!(out, "{},{}", i + 1, j + 1);
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<IntersectionMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m K` header"))?;
    let nums = header
        .split_whitespace()
        .map(|f| f.parse::<usize>().map_err(|e| parse_err(hl, format!("bad header field `{f}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let [rows, cols, k] = nums[..] else {
        return Err(parse_err(hl, "header must be `n m K`"));
    };
    let mut m = IntersectionMatrix::new(rows, cols);
    let mut count = 0;
    for (n, line) in lines {
        let (i, j) = line
            .split_once(',')
            .ok_or_else(|| parse_err(n, "expected `i,j`"))?;
        let parse = |f: &str| {
            f.trim()
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| parse_err(n, format!("bad 1-based index `{f}`")))
        };
        m.set(parse(i)? - 1, parse(j)? - 1)
            .map_err(|e| parse_err(n, e.to_string()))?;
        count += 1;
    }
    if count != k || m.count_ones() != k {
        return Err(parse_err(hl, format!("header says K={k}, body has {count} distinct pairs")));
    }
    Ok(m)
}
