//! Plain-text network snapshots.
//!
//! ```text
//! bpnn-snapshot 1
//! topology <input> <hidden>... <output>
//! activations <kind per layer, input first>
//! layer <l> <rows> <cols>        one block per weight layer, l = 0..
//! w <cols values>                repeated <rows> times
//! b <rows values>
//! end
//! ```
//!
//! Tokens are separated by single spaces. Values use the shortest decimal
//! form that parses back to the identical binary value (Rust `Display`), so
//! `restore(snapshot(net)) == net` bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use super::{Network, Topology};
use crate::numcore::{ActivationKind, Matrix, Scalar, Vector};
use crate::{Error, Result};

pub const SNAPSHOT_HEADER: &str = "bpnn-snapshot 1";

pub fn snapshot<T: Scalar>(net: &Network<T>) -> String {
    let mut out = String::new();
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    let sizes: Vec<String> = net.topology().sizes().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "topology {}", sizes.join(" "));
    let acts: Vec<&str> = net.activations().iter().map(|a| a.name()).collect();
    let _ = writeln!(out, "activations {}", acts.join(" "));
    for (l, (w, b)) in net.weights().iter().zip(net.biases()).enumerate() {
        let _ = writeln!(out, "layer {l} {} {}", w.rows(), w.cols());
        for r in 0..w.rows() {
            push_values(&mut out, "w", w.row(r));
        }
        push_values(&mut out, "b", b.as_slice());
    }
    out.push_str("end\n");
    out
}

fn push_values<T: Scalar>(out: &mut String, tag: &str, values: &[T]) {
    out.push_str(tag);
    for v in values {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self, expect: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((i, line)) => Ok((i + 1, line.split(' ').collect())),
            None => Err(Error::parse("end of input", format!("expected `{expect}` line"))),
        }
    }

    fn tagged(&mut self, tag: &str) -> Result<(usize, Vec<&'a str>)> {
        let (n, toks) = self.next(tag)?;
        if toks.first() != Some(&tag) {
            return Err(Error::parse(
                format!("line {n}"),
                format!("expected `{tag}`, found `{}`", toks.join(" ")),
            ));
        }
        Ok((n, toks[1..].to_vec()))
    }
}

fn parse_usize(line: usize, field: &str, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(format!("line {line}, field {field}"), format!("bad count `{tok}`")))
}

fn parse_values<T: Scalar>(line: usize, toks: &[&str], expect: usize) -> Result<Vec<T>> {
    if toks.len() != expect {
        return Err(Error::parse(
            format!("line {line}"),
            format!("expected {expect} values, found {}", toks.len()),
        ));
    }
    toks.iter()
        .enumerate()
        .map(|(i, t)| {
            t.parse::<T>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(format!("line {line}, value {}", i + 1), format!("bad number `{t}`")))
        })
        .collect()
}

pub fn restore<T: Scalar>(text: &str) -> Result<Network<T>> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (n, header) = lines.next("header")?;
    if header.join(" ") != SNAPSHOT_HEADER {
        return Err(Error::parse(format!("line {n}"), "missing snapshot header"));
    }

    let (n, toks) = lines.tagged("topology")?;
    let sizes = toks
        .iter()
        .enumerate()
        .map(|(i, t)| parse_usize(n, &format!("size {}", i + 1), t))
        .collect::<Result<Vec<_>>>()?;
    if sizes.len() < 3 {
        return Err(Error::parse(format!("line {n}"), "topology needs at least 3 layers"));
    }
    let topology = Topology::new(sizes[0], sizes[1..sizes.len() - 1].to_vec(), sizes[sizes.len() - 1])
        .map_err(|e| Error::parse(format!("line {n}"), e))?;

    let (n, toks) = lines.tagged("activations")?;
    let kinds = toks
        .iter()
        .map(|t| ActivationKind::from_name(t))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::parse(format!("line {n}"), "unknown activation"))?;
    let expected = Network::<T>::zeros(topology.clone());
    if kinds != expected.activations() {
        return Err(Error::parse(
            format!("line {n}"),
            "activations must be linear followed by tansig",
        ));
    }

    let mut weights = Vec::new();
    let mut biases = Vec::new();
    for (l, pair) in sizes.windows(2).enumerate() {
        let (rows, cols) = (pair[1], pair[0]);
        let (n, toks) = lines.tagged("layer")?;
        let header = toks
            .iter()
            .map(|t| parse_usize(n, "layer", t))
            .collect::<Result<Vec<_>>>()?;
        if header != [l, rows, cols] {
            return Err(Error::parse(
                format!("line {n}"),
                format!("expected `layer {l} {rows} {cols}`"),
            ));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (n, toks) = lines.tagged("w")?;
            data.extend(parse_values::<T>(n, &toks, cols)?);
        }
        weights.push(Matrix::from_vec(rows, cols, data)?);
        let (n, toks) = lines.tagged("b")?;
        biases.push(Vector::from_vec(parse_values(n, &toks, rows)?));
    }
    let (n, toks) = lines.next("end")?;
    if toks != ["end"] {
        return Err(Error::parse(format!("line {n}"), "expected `end`"));
    }
    Network::from_parts(topology, weights, biases)
}

pub fn write_snapshot<T: Scalar>(net: &Network<T>, path: &Path) -> Result<()> {
    std::fs::write(path, snapshot(net)).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot<T: Scalar>(path: &Path) -> Result<Network<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    restore(&text)
}
