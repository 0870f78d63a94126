//! Text formats for instances and certificates.
//!
//! Files number vertices from 1; everything in memory numbers them from 0.
//!
//! ```text
//! c a comment
//! p alpp <n> <edge_count> <k> <ell>
//! e <u> <v>
//! a <v> ...
//! m <vc|cvd|cvda> <v> ...
//! ```
//!
//! A certificate is one `path <v1> ... <v_ell>` line per path.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Modulator, ModulatorKind, Packing, Path};

struct Header {
    n: usize,
    edges: usize,
    k: usize,
    ell: usize,
}

fn number(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{token}`")))
}

fn vertex(token: &str, line: usize, n: usize) -> Result<usize> {
    let v = number(token, line, "a vertex id")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses an instance file. The declared modulator, if any, is checked.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<Header> = None;
    let mut edges = Vec::new();
    let mut terminals = Vec::new();
    let mut modulator: Option<(ModulatorKind, Vec<usize>, usize)> = None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        if tag == "c" {
            continue;
        }
        if tag == "p" {
            if header.is_some() {
                return Err(Error::parse(line, "second `p` line"));
            }
            if rest.len() != 5 || rest[0] != "alpp" {
                return Err(Error::parse(
                    line,
                    "malformed header, expected `p alpp <n> <edge_count> <k> <ell>`",
                ));
            }
            let h = Header {
                n: number(rest[1], line, "vertex count")?,
                edges: number(rest[2], line, "edge count")?,
                k: number(rest[3], line, "demand k")?,
                ell: number(rest[4], line, "path order ell")?,
            };
            if h.ell < 2 {
                return Err(Error::parse(line, "path_order < 2"));
            }
            header = Some(h);
            continue;
        }
        let Some(h) = header.as_ref() else {
            return Err(Error::parse(
                line,
                format!("`{tag}` line before the `p` header"),
            ));
        };
        match tag {
            "e" => {
                if rest.len() != 2 {
                    return Err(Error::parse(line, "edge line needs exactly two vertices"));
                }
                edges.push((
                    vertex(rest[0], line, h.n)?,
                    vertex(rest[1], line, h.n)?,
                    line,
                ));
            }
            "a" => {
                for t in rest {
                    terminals.push(vertex(t, line, h.n)?);
                }
            }
            "m" => {
                let Some((&word, ids)) = rest.split_first() else {
                    return Err(Error::parse(line, "modulator line needs a kind"));
                };
                let kind = ModulatorKind::from_keyword(word).ok_or_else(|| {
                    Error::parse(
                        line,
                        format!("unknown modulator kind `{word}` (vc, cvd, cvda)"),
                    )
                })?;
                let ids = ids
                    .iter()
                    .map(|t| vertex(t, line, h.n))
                    .collect::<Result<Vec<_>>>()?;
                match &mut modulator {
                    None => modulator = Some((kind, ids, line)),
                    Some((k, vs, _)) if *k == kind => vs.extend(ids),
                    Some(_) => {
                        return Err(Error::parse(line, "conflicting modulator kinds"));
                    }
                }
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }

    let h = header.ok_or_else(|| Error::parse(0, "missing `p alpp` header"))?;
    if edges.len() != h.edges {
        return Err(Error::parse(
            0,
            format!("header declares {} edges, found {}", h.edges, edges.len()),
        ));
    }
    let mut graph = Graph::new(h.n);
    for (u, v, line) in edges {
        graph.add_edge(u, v).map_err(|e| match e {
            Error::InvalidInstance(msg) => Error::parse(line, msg),
            other => other,
        })?;
    }
    let (modulator, modulator_line) = match modulator {
        Some((kind, vs, line)) => (Some(Modulator::new(kind, vs)), line),
        None => (None, 0),
    };
    Instance::new(graph, terminals, h.ell, h.k, modulator).map_err(|e| match e {
        Error::InvalidInstance(msg) => Error::parse(modulator_line, msg),
        other => other,
    })
}

/// Serializes an instance in canonical form: edges in lexicographic order, all terminals on
/// one `a` line, the modulator (if any) on one `m` line.
pub fn serialize_instance(instance: &Instance) -> String {
    serialize_instance_with_comments(instance, &[])
}

/// Like [`serialize_instance`], with leading `c` comment lines.
pub fn serialize_instance_with_comments(instance: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for piece in c.lines() {
            let _ = writeln!(out, "c {piece}");
        }
    }
    let g = instance.graph();
    let _ = writeln!(
        out,
        "p alpp {} {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        instance.demand(),
        instance.path_order()
    );
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    let terminals = instance.terminals();
    if !terminals.is_empty() {
        out.push('a');
        for t in terminals {
            let _ = write!(out, " {}", t + 1);
        }
        out.push('\n');
    }
    if let Some(m) = instance.modulator() {
        out.push_str("m ");
        out.push_str(m.kind.keyword());
        for &v in &m.vertices {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

/// Parses `path ...` lines; `c` lines and blank lines are skipped. Vertex ids are only
/// checked to be positive here; range checks belong to validation.
pub fn parse_certificate(text: &str) -> Result<Packing> {
    let mut paths = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("path") => {
                let vs = tokens
                    .map(|t| match number(t, line, "a vertex id")? {
                        0 => Err(Error::parse(line, "vertex ids start at 1")),
                        v => Ok(v - 1),
                    })
                    .collect::<Result<Vec<_>>>()?;
                paths.push(Path::new(vs));
            }
            Some(other) => {
                return Err(Error::parse(line, format!("unknown line type `{other}`")));
            }
        }
    }
    Ok(Packing::new(paths))
}

pub fn serialize_certificate(packing: &Packing) -> String {
    let mut out = String::new();
    for p in &packing.paths {
        out.push_str("path");
        for &v in p.vertices() {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_yes_instance() {
        let inst = parse_instance("p alpp 2 1 1 2\ne 1 2\na 1 2\n").unwrap();
        assert_eq!(inst.vertex_count(), 2);
        assert!(inst.graph().has_edge(0, 1));
        assert_eq!(inst.terminals(), vec![0, 1]);
        assert_eq!((inst.demand(), inst.path_order()), (1, 2));
    }

    #[test]
    fn order_one_rejected() {
        let err = parse_instance("p alpp 2 1 1 1\ne 1 2\na 1 2\n").unwrap_err();
        assert_eq!(err, Error::parse(1, "path_order < 2"));
    }

    #[test]
    fn bad_vertex_cover_rejected() {
        // Triangle minus the edge {1,3}: removing vertex 1 leaves the edge {2,3}.
        let text = "p alpp 3 2 0 2\ne 1 2\ne 2 3\nm vc 1\n";
        let err = parse_instance(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        assert!(parse_instance("p alpp 3 2 0 2\ne 1 2\ne 2 3\nm vc 2\n").is_ok());
    }

    #[test]
    fn structural_errors() {
        assert!(parse_instance("e 1 2\n").is_err());
        assert!(parse_instance("p alpp 2 1 1 2\ne 1 3\n").is_err());
        assert!(parse_instance("p alpp 2 2 1 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_instance("p alpp 2 2 1 2\ne 1 2\n").is_err());
        assert!(parse_instance("p alp 2 1 1 2\ne 1 2\n").is_err());
        assert!(parse_instance("p alpp 3 0 0 2\nm cvda 1\na 2\n").is_err());
    }

    #[test]
    fn round_trip_with_modulator() {
        let text = "c hi\np alpp 4 3 1 3\ne 1 2\ne 2 3\ne 3 4\na 1 3\nm vc 2 3\n";
        let inst = parse_instance(text).unwrap();
        let again = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(inst, again);
        assert_eq!(serialize_instance(&again), serialize_instance(&inst));
    }

    #[test]
    fn certificate_round_trip() {
        let packing = parse_certificate("path 1 2\n\nc x\npath 3 4 5\n").unwrap();
        assert_eq!(packing.paths[1].vertices(), &[2, 3, 4]);
        assert_eq!(serialize_certificate(&packing), "path 1 2\npath 3 4 5\n");
        assert!(parse_certificate("path 0 1\n").is_err());
    }
}
