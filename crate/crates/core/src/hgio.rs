//! The ".hg" text format.
//!
//! Line 1 is `n r m` (three base-10 integers). Lines 2..m+1 hold one edge
//! each: r space-separated 0-based vertex ids in strictly increasing order,
//! with edges sorted by colex rank. The parser rejects any deviation from the
//! canonical rendering; the only tolerated terminator is a single final
//! newline.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Renders a hypergraph in canonical form (always ends in one newline).
pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {} {}\n", h.n(), h.r(), h.edge_count()));
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the canonical format, bit-exactly: the input must equal the
/// re-rendering of what was parsed.
pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut lines = text.split('\n');
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty input".into()))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 {
        return Err(Error::Format(format!(
            "header must be \"n r m\", got {header:?}"
        )));
    }
    let parse_int = |s: &str, what: &str| -> Result<usize> {
        let v: usize = s
            .parse()
            .map_err(|_| Error::Format(format!("bad {what}: {s:?}")))?;
        if v.to_string() != s {
            return Err(Error::Format(format!("non-canonical {what}: {s:?}")));
        }
        Ok(v)
    };
    let n = parse_int(fields[0], "vertex count")?;
    let r = parse_int(fields[1], "uniformity")?;
    let m = parse_int(fields[2], "edge count")?;

    let mut h =
        Hypergraph::new(n, r).map_err(|e| Error::Format(format!("invalid header: {e}")))?;
    let mut prev_rank: Option<u64> = None;
    for i in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format(format!("missing edge line {}", i + 2)))?;
        let ids: Vec<&str> = line.split(' ').collect();
        if ids.len() != r {
            return Err(Error::Format(format!(
                "line {}: expected {r} ids, got {}",
                i + 2,
                ids.len()
            )));
        }
        let mut edge = Vec::with_capacity(r);
        for s in &ids {
            edge.push(parse_int(s, "vertex id")?);
        }
        let vset = crate::hypergraph::VertexSet::new(edge)
            .map_err(|e| Error::Format(format!("line {}: {e}", i + 2)))?;
        let id = crate::hypergraph::rank_edge(n, r, &vset)
            .map_err(|e| Error::Format(format!("line {}: {e}", i + 2)))?;
        if let Some(p) = prev_rank {
            if id.0 <= p {
                return Err(Error::Format(format!(
                    "line {}: edges not in strictly increasing colex order",
                    i + 2
                )));
            }
        }
        prev_rank = Some(id.0);
        h.insert_edge(&vset)
            .map_err(|e| Error::Format(format!("line {}: {e}", i + 2)))?;
    }
    // Exactly one final newline, nothing after it.
    match (lines.next(), lines.next()) {
        (Some(""), None) => {}
        _ => {
            return Err(Error::Format(
                "trailing content after the final edge line".into(),
            ))
        }
    }
    // Belt and braces: canonical round trip.
    let rendered = write_hg(&h);
    if rendered != text {
        return Err(Error::Format("input is not in canonical form".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexSet;

    #[test]
    fn roundtrip_complete() {
        let g = Hypergraph::complete(5, 3).unwrap();
        let text = write_hg(&g);
        assert!(text.starts_with("5 3 10\n"));
        assert!(text.ends_with("2 3 4\n"));
        let back = parse_hg(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_trailing_whitespace() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let text = write_hg(&g);
        assert!(parse_hg(&(text.clone() + "\n")).is_err());
        assert!(parse_hg(text.trim_end()).is_err());
        assert!(parse_hg(&text.replace(' ', "  ")).is_err());
    }

    #[test]
    fn rejects_wrong_order_and_counts() {
        assert!(parse_hg("4 3 2\n0 1 3\n0 1 2\n").is_err()); // not colex sorted
        assert!(parse_hg("4 3 2\n0 1 2\n").is_err()); // fewer edges than m
        assert!(parse_hg("4 3 1\n0 1 2\n0 1 3\n").is_err()); // more than m
        assert!(parse_hg("4 3 1\n0 1 1\n").is_err()); // duplicate vertex
        assert!(parse_hg("4 3 1\n0 1 4\n").is_err()); // out of range
        assert!(parse_hg("4 3 1\n0 01 2\n").is_err()); // leading zero
    }

    #[test]
    fn empty_graph_is_one_line() {
        let g = Hypergraph::new(7, 3).unwrap();
        let text = write_hg(&g);
        assert_eq!(text, "7 3 0\n");
        assert_eq!(parse_hg(&text).unwrap(), g);
    }

    #[test]
    fn parse_matches_inserted_edges() {
        let mut g = Hypergraph::new(6, 2).unwrap();
        g.insert_edge(&VertexSet::new(vec![0, 5]).unwrap()).unwrap();
        g.insert_edge(&VertexSet::new(vec![1, 2]).unwrap()).unwrap();
        let text = write_hg(&g);
        assert_eq!(text, "6 2 2\n1 2\n0 5\n"); // {1,2} has smaller colex rank
        assert_eq!(parse_hg(&text).unwrap(), g);
    }
}
