//! Line-oriented text records for matroids and encodings.
//!
//! Matroid: `n=<n> r=<r> bases=<hex>`. Bit `i` of the basis bitset is vertex
//! `i` of `J(n, r)` in colex order; bits are packed least significant first
//! within each byte and the bytes are written in order as two lowercase hex
//! digits each. For `U_{2,4}` all six bits are set, giving `bases=3f`; dropping
//! `{1,2}` (vertex 0) gives `bases=3e`. Unused high bits of the last byte must
//! be zero.
//!
//! Encoding: `n=<n> r=<r> S=<ids> Z=<hex:rank;...> W=<ids> T=<ids> t=<int>`,
//! ids being increasing decimal vertex ids separated by commas and each `Z`
//! entry a flat as a hex element mask (bit `e - 1` for element `e`) with its
//! rank.
//!
//! Lines that are empty or start with `#` are skipped by the file readers.

use std::fmt::Write;

use crate::encoder::{Encoding, FlatEntry};
use crate::error::{Error, Result};
use crate::johnson::{Johnson, VertexSet};
use crate::matroid::Matroid;

pub fn bases_hex(m: &Matroid) -> String {
    set_hex(m.bases())
}

fn set_hex(s: &VertexSet) -> String {
    let nbytes = s.universe().div_ceil(8);
    let mut out = String::with_capacity(2 * nbytes);
    for b in 0..nbytes {
        let word = s.words()[b / 8];
        let byte = (word >> (8 * (b % 8))) as u8;
        write!(out, "{byte:02x}").expect("string write");
    }
    out
}

pub fn format_matroid(m: &Matroid) -> String {
    format!("n={} r={} bases={}", m.n(), m.r(), bases_hex(m))
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated fields with their 1-based starting columns.
fn fields(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
        .map(|(s, f)| (text[..s].chars().count() + 1, f))
        .collect()
}

struct Fields<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str, line: usize) -> Fields<'a> {
        Fields {
            line,
            items: fields(text),
            pos: 0,
            end_col: text.chars().count() + 1,
        }
    }

    /// The value of the next field, which must be `key=value`.
    fn take(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let Some(&(col, f)) = self.items.get(self.pos) else {
            return Err(perr(self.line, self.end_col, format!("missing field `{key}=`")));
        };
        self.pos += 1;
        match f.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')) {
            Some(v) => Ok((col + key.len() + 1, v)),
            None => Err(perr(self.line, col, format!("expected `{key}=`, found `{f}`"))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some(&(col, f)) => Err(perr(self.line, col, format!("unexpected field `{f}`"))),
            None => Ok(()),
        }
    }

    fn number(&mut self, key: &str) -> Result<u32> {
        let (col, v) = self.take(key)?;
        v.parse()
            .map_err(|_| perr(self.line, col, format!("`{v}` is not a nonnegative integer")))
    }
}

fn johnson_at(n: u32, r: u32, line: usize) -> Result<Johnson> {
    Johnson::new(n, r).map_err(|e| perr(line, 1, e.to_string()))
}

/// Parses one matroid record; `line` is used in error positions.
pub fn parse_matroid_line(text: &str, line: usize) -> Result<Matroid> {
    let mut f = Fields::new(text, line);
    let n = f.number("n")?;
    let r = f.number("r")?;
    let (col, hex) = f.take("bases")?;
    f.finish()?;
    let j = johnson_at(n, r, line)?;
    let order = j.order();
    let nbytes = order.div_ceil(8);
    if hex.len() != 2 * nbytes {
        return Err(perr(
            line,
            col,
            format!(
                "expected {} hex digits for C({n},{r}) = {order} bits, found {}",
                2 * nbytes,
                hex.len()
            ),
        ));
    }
    let mut bases = VertexSet::new(order);
    for (b, chunk) in hex.as_bytes().chunks(2).enumerate() {
        let digits = std::str::from_utf8(chunk).unwrap_or("");
        let byte = u8::from_str_radix(digits, 16)
            .ok()
            .filter(|_| digits.bytes().all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c)))
            .ok_or_else(|| perr(line, col + 2 * b, format!("`{digits}` is not a lowercase hex byte")))?;
        for bit in 0..8 {
            if byte >> bit & 1 == 0 {
                continue;
            }
            let id = 8 * b + bit;
            if id >= order {
                return Err(perr(line, col + 2 * b, "padding bits must be zero"));
            }
            bases.insert(id);
        }
    }
    Matroid::from_bases(n, r, bases).map_err(|e| perr(line, col, e.to_string()))
}

pub fn parse_matroid_record(text: &str) -> Result<Matroid> {
    parse_matroid_line(text, 1)
}

fn is_skipped(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

pub fn parse_matroids(text: &str) -> Result<Vec<Matroid>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !is_skipped(l))
        .map(|(i, l)| parse_matroid_line(l, i + 1))
        .collect()
}

fn ids_str(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn format_encoding(e: &Encoding) -> String {
    let z =
        e.z.iter()
            .map(|f| format!("{:x}:{}", f.flat, f.rank))
            .collect::<Vec<_>>()
            .join(";");
    format!(
        "n={} r={} S={} Z={} W={} T={} t={}",
        e.n,
        e.r,
        ids_str(&e.s),
        z,
        ids_str(&e.w),
        ids_str(&e.t),
        e.t_count()
    )
}

fn parse_ids(v: &str, order: usize, line: usize, col: usize) -> Result<VertexSet> {
    let mut s = VertexSet::new(order);
    if v.is_empty() {
        return Ok(s);
    }
    let mut prev: Option<usize> = None;
    let mut c = col;
    for tok in v.split(',') {
        let id: usize = tok
            .parse()
            .map_err(|_| perr(line, c, format!("`{tok}` is not a vertex id")))?;
        if id >= order {
            return Err(perr(line, c, format!("vertex id {id} out of range")));
        }
        if prev.is_some_and(|p| p >= id) {
            return Err(perr(line, c, "vertex ids must be strictly increasing"));
        }
        prev = Some(id);
        s.insert(id);
        c += tok.len() + 1;
    }
    Ok(s)
}

fn parse_flats(v: &str, n: u32, line: usize, col: usize) -> Result<Vec<FlatEntry>> {
    let mut out = Vec::new();
    if v.is_empty() {
        return Ok(out);
    }
    let mut c = col;
    for tok in v.split(';') {
        let bad = || perr(line, c, format!("`{tok}` is not a `hex:rank` pair"));
        let (m, r) = tok.split_once(':').ok_or_else(bad)?;
        let flat = u64::from_str_radix(m, 16).map_err(|_| bad())?;
        let rank: u32 = r.parse().map_err(|_| bad())?;
        if flat >> n != 0 || rank >= n.max(1) {
            return Err(perr(line, c, format!("flat `{tok}` does not fit n = {n}")));
        }
        out.push(FlatEntry { flat, rank });
        c += tok.len() + 1;
    }
    Ok(out)
}

/// Parses one encoding record and recomputes the component sizes.
pub fn parse_encoding_line(text: &str, line: usize) -> Result<Encoding> {
    let mut f = Fields::new(text, line);
    let n = f.number("n")?;
    let r = f.number("r")?;
    let order = johnson_at(n, r, line)?.order();
    let (c, v) = f.take("S")?;
    let s = parse_ids(v, order, line, c)?;
    let (c, v) = f.take("Z")?;
    let z = parse_flats(v, n, line, c)?;
    let (c, v) = f.take("W")?;
    let w = parse_ids(v, order, line, c)?;
    let (c, v) = f.take("T")?;
    let t = parse_ids(v, order, line, c)?;
    let (tcol, _) = *f.items.get(f.pos).unwrap_or(&(f.end_col, ""));
    let t_count = f.number("t")?;
    f.finish()?;
    if t_count as usize != t.count() {
        return Err(perr(line, tcol, format!("t = {t_count} but T has {} ids", t.count())));
    }
    let mut e = Encoding {
        n,
        r,
        s,
        z,
        w,
        t,
        comp_sizes: Vec::new(),
    };
    e.recompute_comp_sizes().map_err(|err| perr(line, 1, err.to_string()))?;
    Ok(e)
}

pub fn parse_encodings(text: &str) -> Result<Vec<Encoding>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !is_skipped(l))
        .map(|(i, l)| parse_encoding_line(l, i + 1))
        .collect()
}
