//! Brute-force oracles: breadth-first distances on explicit graphs and
//! horospherical indices read off from distances to far points of a ray.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use horotree::tree::{ball, ball_e, edge_neighbors, neighbors, Edge, TreeParams, Vertex};

/// An explicit finite graph with BFS distances.
pub struct Graph<N> {
    pub nodes: Vec<N>,
    index: HashMap<N, usize>,
    adj: Vec<Vec<usize>>,
}

impl<N: Clone + Eq + std::hash::Hash> Graph<N> {
    fn build(nodes: Vec<N>, nbrs: impl Fn(&N) -> Vec<N>) -> Self {
        let index: HashMap<N, usize> = nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let adj = nodes.iter().map(|n| nbrs(n).iter().filter_map(|m| index.get(m).copied()).collect()).collect();
        Graph { nodes, index, adj }
    }

    /// BFS distances from `src` to every node (`usize::MAX` if unreachable).
    pub fn bfs(&self, src: &N) -> HashMap<N, usize> {
        let s = self.index[src];
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.nodes.iter().cloned().zip(dist).collect()
    }
}

/// The vertex ball as a graph.
pub fn vertex_graph(params: &TreeParams) -> Graph<Vertex> {
    Graph::build(ball(params), |v| neighbors(v, params))
}

/// The line graph of the edge ball (edges adjacent when they share an endpoint).
pub fn edge_graph(params: &TreeParams) -> Graph<Edge> {
    Graph::build(ball_e(params), |e| edge_neighbors(e, params.q))
}

/// The vertex at depth `n` on the ray with the given letters.
pub fn ray_vertex(word: &[u8], n: usize, q: u32) -> Vertex {
    Vertex::new(word[..n].to_vec(), q).unwrap()
}

/// The ray edge from depth `n-1` to depth `n`.
pub fn ray_edge(word: &[u8], n: usize, q: u32) -> Edge {
    Edge::from_endpoints(&ray_vertex(word, n - 1, q), &ray_vertex(word, n, q)).unwrap()
}

/// Vertex indices along a ray: `dist(v0, w_N) − dist(v, w_N)` with BFS
/// distances from the far ray point `w_N`, `N` = the graph radius.
pub fn bfs_vertex_indices(g: &Graph<Vertex>, word: &[u8], n: usize, q: u32) -> HashMap<Vertex, i64> {
    let far = ray_vertex(word, n, q);
    let d = g.bfs(&far);
    let d0 = d[&Vertex::root()] as i64;
    d.into_iter().map(|(v, x)| (v, d0 - x as i64)).collect()
}

/// Edge indices along a ray relative to `e0`, from line-graph BFS distances
/// to the far ray edge at depth `n`.
pub fn bfs_edge_indices(g: &Graph<Edge>, word: &[u8], n: usize, q: u32) -> HashMap<Edge, i64> {
    let far = ray_edge(word, n, q);
    let d = g.bfs(&far);
    let d0 = d[&Edge::reference()] as i64;
    d.into_iter().map(|(e, x)| (e, d0 - x as i64)).collect()
}

/// The ray `0101…` truncated to length `n`.
pub fn alternating(n: usize) -> Vec<u8> {
    (0..n).map(|i| (i % 2) as u8).collect()
}

/// Evaluates an entry of the reference intersection tables, such as
/// `0`, `1`, `q-1`, `(q-1)q`, `q^2` or `(q-1)q^3`.
pub fn eval_table_entry(s: &str, q: i128) -> i128 {
    let (factor, rest) = match s.strip_prefix("(q-1)") {
        Some(r) => (q - 1, r),
        None if s == "q-1" => return q - 1,
        None => (1, s),
    };
    let power = match rest {
        "" => return factor,
        "q" => q,
        r if r.starts_with("q^") => q.pow(r[2..].parse().unwrap()),
        r => r.parse().unwrap(),
    };
    factor * power
}
