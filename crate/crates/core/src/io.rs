//! Text formats: the plain edge list (`n m` header, 0-indexed `u v` lines)
//! and a DIMACS reader (`p edge n m`, 1-indexed `e u v` lines).

use crate::graph::{Graph, GraphError};

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn parse_pair(line_no: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| parse_err(line_no, "expected two integers"))?;
    let b = it.next().ok_or_else(|| parse_err(line_no, "expected two integers"))?;
    if it.next().is_some() {
        return Err(parse_err(line_no, "trailing tokens"));
    }
    let a = a.parse().map_err(|_| parse_err(line_no, format!("not an integer: {a:?}")))?;
    let b = b.parse().map_err(|_| parse_err(line_no, format!("not an integer: {b:?}")))?;
    Ok((a, b))
}

fn insert_checked(g: &mut Graph, line_no: usize, u: usize, v: usize) -> Result<(), GraphError> {
    match g.add_edge(u, v) {
        Ok(_) => Ok(()),
        Err(GraphError::SelfLoop(x)) => Err(parse_err(line_no, format!("self-loop at vertex {x}"))),
        Err(GraphError::VertexOutOfRange { vertex, n }) => {
            Err(parse_err(line_no, format!("endpoint {vertex} out of range (n = {n})")))
        }
        Err(e) => Err(e),
    }
}

/// Parses `n m` followed by `m` lines `u v`. Duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hdr_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, m) = parse_pair(hdr_no, header)?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        insert_checked(&mut g, line_no, u, v)?;
        count += 1;
    }
    if count != m {
        return Err(parse_err(hdr_no, format!("header declares {m} edges, found {count}")));
    }
    Ok(g)
}

/// Canonical edge-list text; edges sorted lexicographically, no trailing newline.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("\n{u} {v}"));
    }
    out
}

/// DIMACS graph format; comment lines start with `c`.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut graph: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                let kind = it.next().ok_or_else(|| parse_err(line_no, "missing format"))?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err(line_no, format!("unsupported format {kind:?}")));
                }
                let rest: Vec<&str> = it.collect();
                let (n, _m) = parse_pair(line_no, &rest.join(" "))?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| parse_err(line_no, "edge before problem line"))?;
                let rest: Vec<&str> = it.collect();
                let (u, v) = parse_pair(line_no, &rest.join(" "))?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line_no, "DIMACS vertices are 1-indexed"));
                }
                insert_checked(g, line_no, u - 1, v - 1)?;
            }
            Some(tok) => return Err(parse_err(line_no, format!("unknown line type {tok:?}"))),
            None => {}
        }
    }
    graph.ok_or_else(|| parse_err(1, "missing problem line"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parses_isolated_vertex() {
        let g = parse_edge_list("1 0").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        match parse_edge_list("2 1\n0 0") {
            Err(GraphError::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("self-loop"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_out_of_range_and_malformed() {
        assert!(matches!(parse_edge_list("2 1\n0 2"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 1\n0 x"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("2 1\n0"), Err(GraphError::Parse { line: 2, .. })));
    }

    #[test]
    fn duplicate_lines_collapse() {
        let g = parse_edge_list("2 2\n0 1\n1 0").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn writes_canonical_text() {
        assert_eq!(write_edge_list(&Graph::path(3)), "3 2\n0 1\n1 2");
        assert_eq!(write_edge_list(&Graph::new(0)), "0 0");
        assert_eq!(write_edge_list(&Graph::complete(3)), "3 3\n0 1\n0 2\n1 2");
    }

    #[test]
    fn dimacs_is_one_indexed() {
        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(parse_dimacs("p edge 2 1\ne 0 1").is_err());
    }
}
