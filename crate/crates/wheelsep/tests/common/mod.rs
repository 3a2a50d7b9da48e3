//! Independent oracles for the integration and acceptance suites. Everything
//! here recomputes from definitions along routes the library does not use:
//! components by union-find, balance by naive summation, induced minors by
//! enumerating deletions and contraction partitions, and isomorphism by
//! permutation backtracking.

#![allow(dead_code)]

use std::collections::BTreeMap;

use wheelsep::graph::{Graph, Vertex, VertexSet};
use wheelsep::weights::{one_half, Weighting};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components by union-find over the edge list.
pub fn naive_components(g: &Graph) -> Vec<VertexSet> {
    let ids: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    for (u, v) in g.edges() {
        uf.union(index[&u], index[&v]);
    }
    let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().insert(v);
    }
    groups.into_values().collect()
}

/// Balanced-separator check from the definition, via union-find components.
pub fn naive_balanced(g: &Graph, w: &Weighting, s: &VertexSet) -> bool {
    let total = w.total();
    if total == wheelsep::weights::rat(0, 1) {
        return true;
    }
    let threshold = one_half() * total;
    naive_components(&g.without(s))
        .iter()
        .all(|comp| w.weight_of(comp) <= threshold)
}

/// Isomorphism by backtracking over degree-compatible assignments.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let av: Vec<Vertex> = a.vertices().collect();
    let bv: Vec<Vertex> = b.vertices().collect();
    let n = av.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn backtrack(
        a: &Graph,
        b: &Graph,
        av: &[Vertex],
        bv: &[Vertex],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        level: usize,
    ) -> bool {
        if level == av.len() {
            return true;
        }
        for j in 0..bv.len() {
            if used[j] || a.degree(av[level]) != b.degree(bv[j]) {
                continue;
            }
            let ok = (0..level).all(|i| {
                a.has_edge(av[level], av[i]) == b.has_edge(bv[j], bv[assign[i].unwrap()])
            });
            if !ok {
                continue;
            }
            assign[level] = Some(j);
            used[j] = true;
            if backtrack(a, b, av, bv, assign, used, level + 1) {
                return true;
            }
            assign[level] = None;
            used[j] = false;
        }
        false
    }
    backtrack(a, b, &av, &bv, &mut assign, &mut used, 0)
}

fn partitions_into_connected_blocks(
    host: &Graph,
    items: &[Vertex],
    blocks_wanted: usize,
    pattern: &Graph,
) -> bool {
    fn recurse(
        host: &Graph,
        items: &[Vertex],
        pos: usize,
        blocks: &mut Vec<VertexSet>,
        blocks_wanted: usize,
        pattern: &Graph,
    ) -> bool {
        if pos == items.len() {
            if blocks.len() != blocks_wanted {
                return false;
            }
            if blocks.iter().any(|b| !host.induced(b).is_connected()) {
                return false;
            }
            // Quotient: block i adjacent to block j iff any cross edge.
            let k = blocks.len();
            let mut edges = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    let cross = blocks[i]
                        .iter()
                        .any(|&x| blocks[j].iter().any(|&y| host.has_edge(x, y)));
                    if cross {
                        edges.push((i as Vertex, j as Vertex));
                    }
                }
            }
            let quotient = Graph::new(0..k as Vertex, edges).unwrap();
            return isomorphic(&quotient, pattern);
        }
        // Not enough items left to open all the blocks we still need.
        if blocks_wanted - blocks.len().min(blocks_wanted) > items.len() - pos {
            return false;
        }
        let v = items[pos];
        for i in 0..blocks.len() {
            blocks[i].insert(v);
            if recurse(host, items, pos + 1, blocks, blocks_wanted, pattern) {
                return true;
            }
            blocks[i].remove(&v);
        }
        if blocks.len() < blocks_wanted {
            blocks.push(VertexSet::from([v]));
            if recurse(host, items, pos + 1, blocks, blocks_wanted, pattern) {
                return true;
            }
            blocks.pop();
        }
        false
    }
    recurse(host, items, 0, &mut Vec::new(), blocks_wanted, pattern)
}

/// Definition-level induced-minor test: choose the vertices to keep, partition
/// them into connected branch sets, and compare the quotient with the pattern
/// up to isomorphism. Exponential; only for tiny hosts.
pub fn definition_induced_minor(host: &Graph, pattern: &Graph) -> bool {
    let ids: Vec<Vertex> = host.vertices().collect();
    let hn = ids.len();
    let pn = pattern.vertex_count();
    if pn == 0 {
        return true;
    }
    if pn > hn {
        return false;
    }
    for mask in 0u64..(1 << hn) {
        if (mask.count_ones() as usize) < pn {
            continue;
        }
        let keep: Vec<Vertex> = (0..hn).filter(|&i| mask & (1 << i) != 0).map(|i| ids[i]).collect();
        if partitions_into_connected_blocks(host, &keep, pn, pattern) {
            return true;
        }
    }
    false
}

/// All labeled graphs on vertices `0..n`, by edge bitmask.
pub fn all_graphs(n: u32) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &e)| e);
        Graph::new(0..n, edges).unwrap()
    })
}

pub fn graph_from_mask(n: u32, pairs: &[(Vertex, Vertex)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask & (1 << k) != 0)
        .map(|(_, &e)| e);
    Graph::new(0..n, edges).unwrap()
}

pub fn vertex_pairs(n: u32) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Minimal Graphviz grammar check for undirected DOT text:
/// `graph [ID] { stmt* }` with node, edge, and attribute statements.
pub fn dot_parses(text: &str) -> bool {
    let mut tokens = tokenize_dot(text);
    tokens.reverse(); // pop from the back
    let mut next = move || tokens.pop();

    fn is_id(t: &str) -> bool {
        !t.is_empty()
            && (t.starts_with('"')
                || t.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.'))
    }

    let Some(kw) = next() else { return false };
    if kw != "graph" {
        return false;
    }
    let mut tok = match next() {
        Some(t) => t,
        None => return false,
    };
    if tok != "{" {
        if !is_id(&tok) {
            return false;
        }
        match next() {
            Some(t) if t == "{" => {}
            _ => return false,
        }
    }
    // Statements until the closing brace.
    loop {
        tok = match next() {
            Some(t) => t,
            None => return false,
        };
        if tok == "}" {
            return next().is_none();
        }
        if !is_id(&tok) {
            return false;
        }
        let mut cur = match next() {
            Some(t) => t,
            None => return false,
        };
        if cur == "--" {
            let target = match next() {
                Some(t) => t,
                None => return false,
            };
            if !is_id(&target) {
                return false;
            }
            cur = match next() {
                Some(t) => t,
                None => return false,
            };
        }
        if cur == "[" {
            loop {
                let key = match next() {
                    Some(t) => t,
                    None => return false,
                };
                if key == "]" {
                    break;
                }
                if !is_id(&key) {
                    return false;
                }
                match next() {
                    Some(t) if t == "=" => {}
                    _ => return false,
                }
                match next() {
                    Some(v) if is_id(&v) => {}
                    _ => return false,
                }
                match next() {
                    Some(t) if t == "," => {}
                    Some(t) if t == "]" => break,
                    _ => return false,
                }
            }
            cur = match next() {
                Some(t) => t,
                None => return false,
            };
        }
        if cur != ";" {
            return false;
        }
    }
}

fn tokenize_dot(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                out.push(c.to_string());
                chars.next();
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'-') {
                    chars.next();
                    out.push("--".into());
                } else {
                    out.push("-".into());
                }
            }
            '"' => {
                let mut s = String::from("\"");
                chars.next();
                let mut escaped = false;
                for d in chars.by_ref() {
                    s.push(d);
                    if escaped {
                        escaped = false;
                    } else if d == '\\' {
                        escaped = true;
                    } else if d == '"' {
                        break;
                    }
                }
                out.push(s);
            }
            _ => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '.' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if s.is_empty() {
                    chars.next(); // unknown character; consume defensively
                    out.push("?".into());
                } else {
                    out.push(s);
                }
            }
        }
    }
    out
}
