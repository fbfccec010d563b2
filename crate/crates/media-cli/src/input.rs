//! Line-oriented input files for graphs, DAGs, and set families.
//!
//! Graph files: `node a` declares a vertex, `edge a b` an undirected edge,
//! `arc a b` a directed arc. Family files: `element x` declares an element,
//! `set a b ...` a member (the empty member is a bare `set` line). Vertices
//! and elements are indexed by first appearance; blank lines and lines
//! starting with `#` are ignored.

use media_core::SetFamily;

pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub arcs: Vec<(usize, usize)>,
}

struct NameTable {
    names: Vec<String>,
}

impl NameTable {
    fn new() -> Self {
        NameTable { names: Vec::new() }
    }

    fn intern(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

pub fn parse_graph(text: &str) -> Result<Graph, String> {
    let mut table = NameTable::new();
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (lineno, words) in content_lines(text) {
        match words.as_slice() {
            ["node", a] => {
                table.intern(a);
            }
            ["edge", a, b] => {
                let (x, y) = (table.intern(a), table.intern(b));
                edges.push((x, y));
            }
            ["arc", a, b] => {
                let (x, y) = (table.intern(a), table.intern(b));
                arcs.push((x, y));
            }
            _ => {
                return Err(format!(
                    "line {lineno}: expected `node a`, `edge a b`, or `arc a b`"
                ))
            }
        }
    }
    Ok(Graph {
        vertices: table.names.len(),
        edges,
        arcs,
    })
}

pub fn parse_family(text: &str) -> Result<SetFamily, String> {
    let mut table = NameTable::new();
    let mut raw_members: Vec<Vec<usize>> = Vec::new();
    for (lineno, words) in content_lines(text) {
        match words.as_slice() {
            ["element", x] => {
                table.intern(x);
            }
            ["set", items @ ..] => {
                raw_members.push(items.iter().map(|x| table.intern(x)).collect());
            }
            _ => {
                return Err(format!(
                    "line {lineno}: expected `element x` or `set a b ...`"
                ))
            }
        }
    }
    let universe = table.names.len();
    if universe > 64 {
        return Err("family universe limited to 64 elements".to_string());
    }
    let members: Vec<u64> = raw_members
        .iter()
        .map(|items| items.iter().fold(0u64, |acc, &x| acc | 1 << x))
        .collect();
    SetFamily::new(universe, members)
        .map(|f| f.with_element_labels(table.names.clone()))
        .map_err(|e| e.to_string())
}
