//! The shared text formats: polytopes, generator sets, certificate stores
//! and resume digests.
//!
//! Polytope files open with a `d k` header and carry one vertex per line
//! as d space-separated integers; `#` starts a comment line.  Generator
//! files open with `d m` followed by m vectors.  A certificate store is a
//! sequence of records, each a `diameter N digest HEX` header followed by
//! a polytope in the shared format; digests and diameters are re-verified
//! on read, so a store cannot silently drift from its contents.  Writers
//! emit vertices in the polytope's stored (lexicographic) order, which
//! makes write -> read -> write the identity on bytes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::graph;
use crate::search::{canonical_digest, SearchCertificate};
use crate::zonotope::GeneratorSet;

/// A parsed points file: the declared box, the points, and the 1-based
/// line each point came from (for later diagnostics).
#[derive(Debug, Clone)]
pub struct PointFile {
    pub d: usize,
    pub k: i64,
    pub points: Vec<Vec<i64>>,
    pub lines: Vec<usize>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_ints(origin: &str, line_no: usize, line: &str) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| {
                Error::parse(origin, line_no, format!("expected an integer, got {tok:?}"))
            })
        })
        .collect()
}

/// Parses the `d k` + one-point-per-line format without any geometric
/// interpretation beyond range checks against the declared box.
pub fn parse_points(text: &str, origin: &str) -> Result<PointFile> {
    let mut rows = content_lines(text);
    let (header_no, header) = rows
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing `d k` header line"))?;
    let head = split_ints(origin, header_no, header)?;
    let [d, k] = head[..] else {
        return Err(Error::parse(
            origin,
            header_no,
            format!("header must be `d k`, got {} fields", head.len()),
        ));
    };
    if d < 1 {
        return Err(Error::parse(origin, header_no, "dimension must be at least 1"));
    }
    if k < 1 {
        return Err(Error::parse(origin, header_no, "k must be at least 1"));
    }
    let d = d as usize;
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (line_no, line) in rows {
        let p = split_ints(origin, line_no, line)?;
        if p.len() != d {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected {d} coordinates, got {}", p.len()),
            ));
        }
        if let Some(&bad) = p.iter().find(|&&x| x < 0 || x > k) {
            return Err(Error::parse(
                origin,
                line_no,
                format!("coordinate {bad} outside the declared box [0, {k}]"),
            ));
        }
        points.push(p);
        lines.push(line_no);
    }
    if points.is_empty() {
        return Err(Error::parse(origin, header_no, "no points after the header"));
    }
    Ok(PointFile { d, k, points, lines })
}

/// Parses a polytope file: the points must be exactly the vertex set of
/// their own hull (the defining property of a lattice polytope), and the
/// declared k is kept.
pub fn parse_polytope(text: &str, origin: &str) -> Result<LatticePolytope> {
    let file = parse_points(text, origin)?;
    let p = LatticePolytope::from_points(file.points.clone(), file.d)?;
    if p.vertices().len() != file.points.len() {
        let missing = file
            .points
            .iter()
            .position(|q| p.find_vertex(&crate::geometry::LatticePoint::new(q.clone())).is_none())
            .expect("some point was dropped by the hull");
        return Err(Error::parse(
            origin,
            file.lines[missing],
            "point is not a vertex of the hull of the listed points",
        ));
    }
    p.with_declared_k(file.k)
}

/// Renders a polytope in the shared text format (header + lex-sorted
/// vertices, newline-terminated).
pub fn render_polytope(p: &LatticePolytope) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", p.dim(), p.k());
    for v in p.vertices() {
        let coords: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

/// Parses the `d m` + one-vector-per-line generator format.
pub fn parse_generators(text: &str, origin: &str) -> Result<GeneratorSet> {
    let mut rows = content_lines(text);
    let (header_no, header) = rows
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing `d m` header line"))?;
    let head = split_ints(origin, header_no, header)?;
    let [d, m] = head[..] else {
        return Err(Error::parse(
            origin,
            header_no,
            format!("header must be `d m`, got {} fields", head.len()),
        ));
    };
    if d < 1 || m < 0 {
        return Err(Error::parse(origin, header_no, "need d >= 1 and m >= 0"));
    }
    let d = d as usize;
    let mut vectors = Vec::new();
    for (line_no, line) in rows {
        let v = split_ints(origin, line_no, line)?;
        if v.len() != d {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected {d} coordinates, got {}", v.len()),
            ));
        }
        vectors.push(v);
    }
    if vectors.len() != m as usize {
        return Err(Error::parse(
            origin,
            header_no,
            format!("header declares {m} vectors, file has {}", vectors.len()),
        ));
    }
    GeneratorSet::new(d, vectors)
}

pub fn render_generators(g: &GeneratorSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.dim(), g.len());
    for v in g.vectors() {
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

/// Renders a certificate store: per certificate a `diameter N digest HEX`
/// header followed by the polytope record.
pub fn render_certificates(certs: &[SearchCertificate]) -> String {
    let mut out = String::new();
    for cert in certs {
        let _ = writeln!(out, "diameter {} digest {}", cert.diameter, cert.canonical_digest);
        out.push_str(&render_polytope(&cert.polytope));
    }
    out
}

/// Parses a certificate store, re-verifying each record: the polytope is
/// re-hulled, its BFS diameter must equal the header's N, and its
/// canonical digest must equal the header's digest.
pub fn parse_certificates(text: &str, origin: &str) -> Result<Vec<SearchCertificate>> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut certs = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (header_no, header) = lines[i];
        let parts: Vec<&str> = header.split_whitespace().collect();
        let ["diameter", n, "digest", hex] = parts[..] else {
            return Err(Error::parse(
                origin,
                header_no,
                "expected a `diameter N digest HEX` record header",
            ));
        };
        let declared: u32 = n
            .parse()
            .map_err(|_| Error::parse(origin, header_no, format!("bad diameter {n:?}")))?;
        let mut block = String::new();
        i += 1;
        while i < lines.len() && !lines[i].1.starts_with("diameter ") {
            // Re-number the block against the original file so point
            // diagnostics still carry real line numbers.
            for _ in block.lines().count() + 1..lines[i].0 {
                block.push('\n');
            }
            block.push_str(lines[i].1);
            block.push('\n');
            i += 1;
        }
        let p = parse_polytope(&block, origin)?;
        let (diameter, witness) = graph::diameter(&p)?;
        if diameter != declared {
            return Err(Error::parse(
                origin,
                header_no,
                format!("record claims diameter {declared}, polytope has {diameter}"),
            ));
        }
        let digest = canonical_digest(&p);
        if digest != hex {
            return Err(Error::parse(
                origin,
                header_no,
                format!("record claims digest {hex}, polytope has {digest}"),
            ));
        }
        certs.push(SearchCertificate {
            polytope: p,
            diameter,
            witness,
            canonical_digest: digest,
        });
    }
    Ok(certs)
}

/// Parses a resume file: one digest per line.
pub fn parse_digests(text: &str, origin: &str) -> Result<HashSet<String>> {
    let mut out = HashSet::new();
    for (line_no, line) in content_lines(text) {
        if line.len() != 32 || !line.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected a 32-character hex digest, got {line:?}"),
            ));
        }
        out.insert(line.to_ascii_lowercase());
    }
    Ok(out)
}

pub fn render_digests(digests: &[String]) -> String {
    let mut sorted: Vec<&String> = digests.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for d in sorted {
        let _ = writeln!(out, "{d}");
    }
    out
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), msg: e.to_string() }
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

pub fn write_string(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

pub fn read_polytope(path: &Path) -> Result<LatticePolytope> {
    parse_polytope(&read_to_string(path)?, &path.display().to_string())
}

pub fn write_polytope(path: &Path, p: &LatticePolytope) -> Result<()> {
    write_string(path, &render_polytope(p))
}

pub fn read_generators(path: &Path) -> Result<GeneratorSet> {
    parse_generators(&read_to_string(path)?, &path.display().to_string())
}

pub fn read_digests(path: &Path) -> Result<HashSet<String>> {
    parse_digests(&read_to_string(path)?, &path.display().to_string())
}
