//! A tiny language for standard graphs, plus graph input resolution.
//!
//! ```text
//! expr   := term ('+' term)*          join
//! term   := factor ('u' factor)*      disjoint union
//! factor := [count] atom | [count] '(' expr ')'
//! atom   := 'K' a [',' b] | 'C' n | 'P' n | 'E' n
//! ```
//!
//! `K6` is a clique, `K2,4` a complete bipartite graph, `C7` a cycle, `P4` a
//! path on four vertices, `E5` five isolated vertices and `2K2` two disjoint
//! edges. Named graphs always contain a digit and graph6 strings never do,
//! which is how [`parse_graph`] tells them apart.

use crate::error::{Error, Result};
use crate::graph::{complete, complete_bipartite, cycle, disjoint_union, join, multiple, path, Graph};
use crate::graph6;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.pos, msg)
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<Graph> {
        let mut g = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            g = join(&g, &self.term()?)?;
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Graph> {
        let mut g = self.factor()?;
        while self.peek() == Some(b'u') {
            self.pos += 1;
            g = disjoint_union(&g, &self.factor()?)?;
        }
        Ok(g)
    }

    fn factor(&mut self) -> Result<Graph> {
        let count = self.number();
        let g = if self.peek() == Some(b'(') {
            self.pos += 1;
            let g = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            g
        } else {
            self.atom()?
        };
        match count {
            Some(k) => multiple(k, &g),
            None => Ok(g),
        }
    }

    fn atom(&mut self) -> Result<Graph> {
        let kind = self.peek().ok_or_else(|| self.err("expected a graph name"))?;
        if !matches!(kind, b'K' | b'C' | b'P' | b'E') {
            return Err(self.err("unknown graph name"));
        }
        self.pos += 1;
        let a = self.number().ok_or_else(|| self.err("expected a size"))?;
        match kind {
            b'K' if self.peek() == Some(b',') => {
                self.pos += 1;
                let b = self.number().ok_or_else(|| self.err("expected a second part size"))?;
                complete_bipartite(a, b)
            }
            b'K' => complete(a),
            b'C' => cycle(a),
            b'P' => path(a),
            _ => Graph::empty(a),
        }
    }
}

/// Parses a named graph such as `K3+(K3uK1)`.
pub fn parse_named(s: &str) -> Result<Graph> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let g = p.expr()?;
    if p.pos != s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

/// Whether `s` reads as a named graph rather than graph6.
pub fn is_named(s: &str) -> bool {
    !s.starts_with(">>graph6<<") && s.bytes().any(|c| c.is_ascii_digit())
}

/// Resolves a graph argument: a named graph, a graph6 string, or `@path` to a
/// file holding graph6 or an edge list.
pub fn parse_graph(arg: &str) -> Result<Graph> {
    let arg = arg.trim();
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        return parse_graph_text(&text);
    }
    if is_named(arg) {
        parse_named(arg)
    } else {
        graph6::decode(arg)
    }
}

/// File contents: a single graph6 line, or the edge-list format.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    match lines.as_slice() {
        [one] if !one.contains(char::is_whitespace) => graph6::decode(one),
        _ => graph6::parse_edge_list(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::star;

    #[test]
    fn names() {
        assert_eq!(parse_named("K6").unwrap(), complete(6).unwrap());
        assert_eq!(parse_named("K2,4").unwrap(), complete_bipartite(2, 4).unwrap());
        assert_eq!(parse_named("2K2").unwrap().m(), 2);
        assert!(are_isomorphic(&parse_named("K1,3").unwrap(), &star(3).unwrap()));
        let g = parse_named("K3uK2").unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        let f = parse_named("K3+(K3uK1)").unwrap();
        assert_eq!((f.n(), f.m()), (7, 18));
        assert_eq!(parse_named("E5").unwrap().m(), 0);
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_named("K3uX2"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_named("K3)"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_named("K"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn dispatch() {
        assert_eq!(parse_graph("C~").unwrap(), complete(4).unwrap());
        assert_eq!(parse_graph("K4").unwrap(), complete(4).unwrap());
        assert_eq!(parse_graph(">>graph6<<C~").unwrap(), complete(4).unwrap());
        assert_eq!(parse_graph_text("4 1\n0 3\n").unwrap().edges(), &[(0, 3)]);
        assert_eq!(parse_graph_text("# k4\nC~\n").unwrap(), complete(4).unwrap());
    }
}
