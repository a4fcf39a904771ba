//! Deterministic output: full-precision float formatting, JSON and CSV
//! assembly, and atomic file replacement.
//!
//! Every float is written with 17 significant digits so that reruns are
//! byte-identical and values round-trip exactly through text.

use std::fmt::Write as FmtWrite;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::probability::{BinPartition, BinnedDist, DiscreteDist};
use crate::transform::PhaseDensity;
use crate::{Error, Result};

/// Render a float with 17 significant digits (scientific form), which is
/// enough for exact `f64` round-trips.
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `serde_json` formatter that writes every `f64` at full precision.
struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serialize to compact JSON with full-precision floats and a trailing
/// newline. Map keys keep their natural (sorted) order, so equal inputs
/// give byte-equal output.
pub fn to_json_g17<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Serialize(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Serialize(e.to_string()))
}

/// Write `bytes` to `path` through a unique sibling temp file and an atomic
/// rename, creating parent directories as needed. Readers never observe a
/// partially written file; reruns replace the target in one step.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io(io::Error::other("write target has no file name")))?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp.{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(e)
    })
}

/// CSV of the joint density: header `xi,k,w`, xi-major node rows.
pub fn density_csv(w: &PhaseDensity) -> String {
    let g = w.grid();
    let mut out = String::with_capacity(g.n_xi() * g.n_k() * 72 + 8);
    out.push_str("xi,k,w\n");
    for i in 0..g.n_xi() {
        let xi = format_g17(g.xi(i));
        for j in 0..g.n_k() {
            let _ = writeln!(
                out,
                "{xi},{},{}",
                format_g17(g.k(j)),
                format_g17(w.value(i, j))
            );
        }
    }
    out
}

/// CSV of a number distribution: header `n,s`.
pub fn dist_csv(s: &DiscreteDist) -> String {
    let mut out = String::with_capacity(s.len() * 28 + 4);
    out.push_str("n,s\n");
    for (n, &p) in s.probs().iter().enumerate() {
        let _ = writeln!(out, "{n},{}", format_g17(p));
    }
    out
}

/// CSV of binned probabilities: one row per rectangular bin with its edges.
/// Any catch-all mass beyond the partition is not a rectangle and is
/// reported through the relation reports instead.
pub fn bins_csv(binned: &BinnedDist, part: &BinPartition) -> String {
    let xi_edges = part.xi_edges();
    let k_edges = part.k_edges();
    let mut out =
        String::with_capacity(part.n_xi_bins() * part.n_k_bins() * 100 + 40);
    out.push_str("l,m,xi_lo,xi_hi,k_lo,k_hi,r\n");
    for l in 0..part.n_xi_bins() {
        for m in 0..part.n_k_bins() {
            let _ = writeln!(
                out,
                "{l},{m},{},{},{},{},{}",
                format_g17(xi_edges[l]),
                format_g17(xi_edges[l + 1]),
                format_g17(k_edges[m]),
                format_g17(k_edges[m + 1]),
                format_g17(binned.prob(l, m))
            );
        }
    }
    out
}
