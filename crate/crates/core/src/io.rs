//! Text formats: node strings, edge lists, DOT, cycle documents, load reports.
//!
//! Node strings are MSB-first (`b_{n-1}` leads), matching the usual written
//! form of twisted-cube labels. All output is UTF-8 with LF line endings and
//! byte-for-byte deterministic.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::broadcast::{LinkLoadReport, RingOutcome};
use crate::construction::{ConstructionKind, Cycle};
use crate::error::{Error, Result};
use crate::topology::{edge_stream, Dimension, Edge, NodeCap, NodeLabel};

pub const FORMAT_VERSION: u32 = 1;

pub fn label_to_string(b: NodeLabel, n: Dimension) -> String {
    format!("{:0width$b}", b.0, width = n.get() as usize)
}

pub fn parse_label(s: &str, n: Dimension) -> Result<NodeLabel> {
    let width = n.get() as usize;
    let mut value = 0u64;
    let mut count = 0usize;
    for (position, c) in s.chars().enumerate() {
        let bit = match c {
            '0' => 0,
            '1' => 1,
            other => {
                return Err(Error::Parse {
                    position,
                    message: format!("expected '0' or '1', found {other:?}"),
                })
            }
        };
        if position >= width {
            return Err(Error::Parse {
                position,
                message: format!("label longer than {width} digits"),
            });
        }
        value = (value << 1) | bit;
        count += 1;
    }
    if count != width {
        return Err(Error::Parse {
            position: count,
            message: format!("expected {width} binary digits, found {count}"),
        });
    }
    Ok(NodeLabel(value))
}

/// One `"u v"` line per edge, canonical order.
pub fn export_edgelist(n: Dimension) -> Result<String> {
    export_edgelist_with_cap(n, NodeCap::default())
}

pub fn export_edgelist_with_cap(n: Dimension, cap: NodeCap) -> Result<String> {
    n.ensure_within(cap)?;
    let mut out = String::new();
    for e in edge_stream(n) {
        writeln!(
            out,
            "{} {}",
            label_to_string(e.u(), n),
            label_to_string(e.v(), n)
        )
        .unwrap();
    }
    Ok(out)
}

/// Undirected DOT graph; with `rings`, ring-1, ring-2 and unused edges are styled apart.
pub fn export_dot(n: Dimension, rings: Option<(&Cycle, &Cycle)>) -> Result<String> {
    export_dot_with_cap(n, rings, NodeCap::default())
}

pub fn export_dot_with_cap(
    n: Dimension,
    rings: Option<(&Cycle, &Cycle)>,
    cap: NodeCap,
) -> Result<String> {
    n.ensure_within(cap)?;
    let sets = rings.map(|(a, b)| {
        (
            a.edges().collect::<HashSet<Edge>>(),
            b.edges().collect::<HashSet<Edge>>(),
        )
    });
    let mut out = format!("graph TQ{n} {{\n");
    for e in edge_stream(n) {
        let (u, v) = (label_to_string(e.u(), n), label_to_string(e.v(), n));
        let attrs = match &sets {
            None => "",
            Some((a, b)) => match (a.contains(&e), b.contains(&e)) {
                (true, true) => " [class=\"ring1 ring2\", color=\"red:blue\", penwidth=2]",
                (true, false) => " [class=\"ring1\", color=\"red\", penwidth=2]",
                (false, true) => " [class=\"ring2\", color=\"blue\", penwidth=2]",
                (false, false) => " [class=\"unused\", color=\"gray\", style=\"dashed\"]",
            },
        };
        writeln!(out, "  \"{u}\" -- \"{v}\"{attrs};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Serialize)]
struct GraphJson {
    n: u32,
    nodes: Vec<String>,
    edges: Vec<[String; 2]>,
}

/// `{"n":..,"nodes":[..],"edges":[[u,v],..]}` on one line.
pub fn export_graph_json(n: Dimension, cap: NodeCap) -> Result<String> {
    n.ensure_within(cap)?;
    let doc = GraphJson {
        n: n.get(),
        nodes: (0..n.node_count())
            .map(|b| label_to_string(NodeLabel(b), n))
            .collect(),
        edges: edge_stream(n)
            .map(|e| [label_to_string(e.u(), n), label_to_string(e.v(), n)])
            .collect(),
    };
    Ok(serde_json::to_string(&doc).expect("plain data serializes"))
}

/// Two node sequences of one construction kind, as exchanged in files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDocument {
    pub n: Dimension,
    pub kind: ConstructionKind,
    pub cycles: [Vec<NodeLabel>; 2],
    pub format_version: u32,
}

impl CycleDocument {
    pub fn from_cycles(kind: ConstructionKind, a: &Cycle, b: &Cycle) -> Self {
        CycleDocument {
            n: a.dimension(),
            kind,
            cycles: [a.nodes().to_vec(), b.nodes().to_vec()],
            format_version: FORMAT_VERSION,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: u32,
    kind: String,
    cycles: Vec<Vec<String>>,
    format_version: u32,
}

/// Compact JSON with keys `n, kind, cycles, format_version`; no trailing whitespace.
pub fn export_cycles(doc: &CycleDocument) -> String {
    let raw = RawDocument {
        n: doc.n.get(),
        kind: doc.kind.to_string(),
        cycles: doc
            .cycles
            .iter()
            .map(|c| c.iter().map(|&v| label_to_string(v, doc.n)).collect())
            .collect(),
        format_version: doc.format_version,
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}

/// Parses a cycle document and checks its shape. Does not check that the
/// sequences are paths or cycles.
pub fn import_cycles(text: &str) -> Result<CycleDocument> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    if raw.format_version != FORMAT_VERSION {
        return Err(Error::Document(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            raw.format_version
        )));
    }
    let n = Dimension::new(raw.n).map_err(|e| Error::Document(format!("n: {e}")))?;
    let kind: ConstructionKind = raw
        .kind
        .parse()
        .map_err(|e| Error::Document(format!("kind: {e}")))?;
    if raw.cycles.len() != 2 {
        return Err(Error::Document(format!(
            "cycles: expected 2 node lists, found {}",
            raw.cycles.len()
        )));
    }
    let mut parsed = raw.cycles.iter().enumerate().map(|(i, list)| {
        list.iter()
            .enumerate()
            .map(|(j, s)| {
                parse_label(s, n).map_err(|e| Error::Document(format!("cycles[{i}][{j}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()
    });
    let first = parsed.next().expect("two lists")?;
    let second = parsed.next().expect("two lists")?;
    Ok(CycleDocument {
        n,
        kind,
        cycles: [first, second],
        format_version: raw.format_version,
    })
}

#[derive(Serialize)]
struct LinkJson {
    from: String,
    to: String,
    load: u64,
}

#[derive(Serialize)]
struct LoadJson<'a> {
    n: u32,
    steps: u64,
    contention_edges: u64,
    rings: &'a [RingOutcome],
    links: Vec<LinkJson>,
}

/// A [`LinkLoadReport`] as one line of JSON; links in `(from, to)` order.
pub fn export_link_load(report: &LinkLoadReport) -> String {
    let n = report.n;
    let doc = LoadJson {
        n: n.get(),
        steps: report.steps(),
        contention_edges: report.contention_edges,
        rings: &report.rings,
        links: report
            .loads
            .iter()
            .map(|(&(from, to), &load)| LinkJson {
                from: label_to_string(from, n),
                to: label_to_string(to, n),
                load,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{edh_cycles, ndc_cycles};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn label_strings() {
        assert_eq!(label_to_string(NodeLabel(0b11000), dim(5)), "11000");
        assert_eq!(label_to_string(NodeLabel(1), dim(3)), "001");
        assert_eq!(parse_label("00100", dim(5)).unwrap(), NodeLabel(4));
        assert_eq!(
            parse_label("0a100", dim(5)),
            Err(Error::Parse {
                position: 1,
                message: "expected '0' or '1', found 'a'".into()
            })
        );
        assert!(matches!(
            parse_label("0010", dim(5)),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(
            parse_label("001000", dim(5)),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!(matches!(
            parse_label("", dim(1)),
            Err(Error::Parse { position: 0, .. })
        ));
    }

    #[test]
    fn edgelists() {
        assert_eq!(export_edgelist(dim(1)).unwrap(), "0 1\n");
        let text = export_edgelist(dim(3)).unwrap();
        assert!(text.starts_with("000 001\n"));
        assert_eq!(text.lines().count(), 12);
        assert!(export_edgelist_with_cap(dim(9), NodeCap::new(7))
            .unwrap_err()
            .is_capacity());
    }

    #[test]
    fn dot_marks_rings() {
        let (p, q) = edh_cycles(dim(5)).unwrap();
        let text = export_dot(dim(5), Some((&p, &q))).unwrap();
        assert_eq!(text.matches("class=\"ring1\"").count(), 32);
        assert_eq!(text.matches("class=\"ring2\"").count(), 32);
        assert_eq!(text.matches("class=\"unused\"").count(), 16);
        let plain = export_dot(dim(1), None).unwrap();
        assert_eq!(plain, "graph TQ1 {\n  \"0\" -- \"1\";\n}\n");
    }

    #[test]
    fn cycle_document_layout() {
        let (a, b) = ndc_cycles(dim(3)).unwrap();
        let doc = CycleDocument::from_cycles(ConstructionKind::Ndc, &a, &b);
        assert_eq!(
            export_cycles(&doc),
            r#"{"n":3,"kind":"ndc","cycles":[["001","101","111","011"],["000","100","010","110"]],"format_version":1}"#
        );
        assert_eq!(import_cycles(&export_cycles(&doc)).unwrap(), doc);
    }

    #[test]
    fn import_diagnostics() {
        let bad = |t: &str| import_cycles(t).unwrap_err().to_string();
        assert!(bad("not json").contains("invalid cycle document"));
        assert!(
            bad(r#"{"n":4,"kind":"edh","cycles":[[],[]],"format_version":1}"#).contains("even")
        );
        assert!(
            bad(r#"{"n":3,"kind":"xyz","cycles":[[],[]],"format_version":1}"#).contains("kind")
        );
        assert!(
            bad(r#"{"n":3,"kind":"ndc","cycles":[[]],"format_version":1}"#).contains("expected 2")
        );
        assert!(
            bad(r#"{"n":3,"kind":"ndc","cycles":[[],[]],"format_version":2}"#)
                .contains("format_version")
        );
        assert!(
            bad(r#"{"n":3,"kind":"ndc","cycles":[["000"],["0x0"]],"format_version":1}"#)
                .contains("cycles[1][0]: parse error at position 1")
        );
        assert!(
            bad(r#"{"n":3,"kind":"ndc","cycles":[[],[]],"format_version":1,"x":0}"#)
                .contains("unknown field")
        );
    }

    #[test]
    fn graph_json_shape() {
        let text = export_graph_json(dim(1), NodeCap::default()).unwrap();
        assert_eq!(text, r#"{"n":1,"nodes":["0","1"],"edges":[["0","1"]]}"#);
    }
}
