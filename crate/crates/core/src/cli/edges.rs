//! Edge-list text: one undirected edge per line as `u v [weight]`, vertices
//! written as integers or `(i,j)` pairs, `#` starting a comment.

use std::collections::HashMap;

use super::decimal::decimal_interval;
use crate::graphenclose::Graph;
use crate::ival::Interval;

/// A vertex label: `7`, `(1,2)` or `(1, 2)`.
pub fn parse_vertex(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim();
    let inner = match s.strip_prefix('(') {
        Some(r) => r.strip_suffix(')').ok_or_else(|| format!("unclosed vertex '{s}'"))?,
        None => s,
    };
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad vertex '{s}'")))
        .collect()
}

/// Splits a line into vertex and weight fields, keeping `(i, j)` together.
fn fields(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in line.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Vertices are numbered in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, String> {
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let f = fields(line);
        if f.is_empty() {
            continue;
        }
        let at = |e: String| format!("line {}: {e}", no + 1);
        if f.len() > 3 || f.len() < 2 {
            return Err(at("expected `u v [weight]`".into()));
        }
        let mut vertex = |s: &str| -> Result<usize, String> {
            let l = parse_vertex(s)?;
            let next = labels.len();
            Ok(*index.entry(l.clone()).or_insert_with(|| {
                labels.push(l);
                next
            }))
        };
        let u = vertex(&f[0]).map_err(at)?;
        let v = vertex(&f[1]).map_err(at)?;
        let w = match f.get(2) {
            Some(w) => decimal_interval(w).ok_or_else(|| at(format!("bad weight '{w}'")))?,
            None => Interval::ONE,
        };
        edges.push((u, v, w));
    }
    if labels.is_empty() {
        return Err("edge list is empty".into());
    }
    Graph::with_labels(labels, &edges).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_labels_weights_comments() {
        let g = parse_edge_list("# square\n(1,1) (1,2)\n(1,2) (2, 2) 0.5\n\n(2,2) (1,1)  # back\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.find(&[2, 2]), Some(2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(parse_edge_list("0 1\n0\n").unwrap_err().starts_with("line 2"));
        assert!(parse_edge_list("0 1 heavy").unwrap_err().contains("weight"));
        assert!(parse_edge_list("# nothing\n").is_err());
    }
}
