//! Plain-text edge list: `n m` followed by `m` lines `i j` with `i < j`.

use std::io::{BufRead, Write};

use super::{Graph, GraphError};

impl Graph {
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let edges = self.edges();
        writeln!(w, "{} {}", self.n, edges.len())?;
        for (i, j) in edges {
            writeln!(w, "{i} {j}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Graph, GraphError> {
        let mut lines = r.lines().enumerate();
        let parse_err = |line: usize, msg: &str| GraphError::Parse { line: line + 1, msg: msg.to_string() };
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header"))?;
        let header = header.map_err(|e| GraphError::Io(e.to_string()))?;
        let (n, m) = parse_pair(&header).ok_or_else(|| parse_err(hline, "expected `n m`"))?;
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
            if line.is_empty() {
                continue;
            }
            let (i, j) = parse_pair(&line).ok_or_else(|| parse_err(idx, "expected `i j`"))?;
            if i >= j {
                return Err(parse_err(idx, "edge endpoints must satisfy i < j"));
            }
            edges.push((i, j));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn parse_text(s: &str) -> Result<Graph, GraphError> {
        Graph::read_text(s.as_bytes())
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split(' ');
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}
