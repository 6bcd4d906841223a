//! Skeletons, face graphs, duals and Hamiltonian paths.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Polyhedron;
use crate::peel::PeelSequence;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    adj: Vec<Vec<usize>>,
}

impl SkeletonGraph {
    /// Builds a graph on `n` vertices. Loops are dropped and parallel edges
    /// merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SkeletonGraph {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SkeletonGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let all = vec![true; self.vertex_count()];
        self.vertex_count() > 0 && components(self, &all) == 1
    }

    /// Two-coloring (`false`/`true` per vertex) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("queued vertices are colored");
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(d) if d == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// True when `path` visits every vertex exactly once along edges.
    pub fn is_hamiltonian_path(&self, path: &[usize]) -> bool {
        let n = self.vertex_count();
        if path.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in path {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// Vertex-edge graph of `p`.
pub fn skeleton(p: &Polyhedron) -> SkeletonGraph {
    SkeletonGraph::new(p.vertex_count(), p.edges().iter().map(|e| (e.a, e.b)))
}

/// Graph on the faces of `p`, joined when they share an edge.
pub fn face_graph(p: &Polyhedron) -> SkeletonGraph {
    SkeletonGraph::new(
        p.face_count(),
        p.edges().iter().map(|e| (e.faces[0], e.faces[1])),
    )
}

/// Faces around vertex `v` in cyclic order.
pub fn faces_around_vertex(p: &Polyhedron, v: usize) -> Vec<usize> {
    let start = (0..p.face_count())
        .find(|&f| p.face(f).contains(&v))
        .expect("every vertex lies on a face");
    let mut ring = vec![start];
    let mut f = start;
    loop {
        let face = p.face(f);
        let i = face.iter().position(|&u| u == v).expect("v on face");
        // the edge (face[i - 1], v) leads to the next face around v
        let prev = (i + face.len() - 1) % face.len();
        f = p.adjacency().neighbors(f)[prev].face;
        if f == start {
            break;
        }
        ring.push(f);
    }
    ring
}

/// Dual solid: one vertex per face of `p` (at the face centroid), one face per
/// vertex of `p` (the ring of faces around it). Face `i` of the dual belongs
/// to vertex `i` of `p`.
pub fn dual(p: &Polyhedron) -> Polyhedron {
    let faces = (0..p.vertex_count())
        .map(|v| faces_around_vertex(p, v))
        .collect();
    let d = Polyhedron::build(p.centroids().to_vec(), faces)
        .expect("dual of a valid polyhedron is valid");
    match p.name() {
        Some(name) => d.with_name(format!("dual of {name}")),
        None => d,
    }
}

/// Why no Hamiltonian path exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoPathProof {
    /// Bipartite with part sizes differing by at least two.
    BipartiteParity,
    /// The search space was exhausted.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamiltonianStatus {
    Found(Vec<usize>),
    NoPath(NoPathProof),
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianReport {
    pub status: HamiltonianStatus,
    /// Search nodes expanded.
    pub steps: u64,
}

impl HamiltonianReport {
    pub fn found(&self) -> bool {
        matches!(self.status, HamiltonianStatus::Found(_))
    }

    pub fn witness(&self) -> &[usize] {
        match &self.status {
            HamiltonianStatus::Found(path) => path,
            _ => &[],
        }
    }

    pub fn label(&self) -> &'static str {
        match self.status {
            HamiltonianStatus::Found(_) => "found",
            HamiltonianStatus::NoPath(NoPathProof::BipartiteParity) => "none(parity)",
            HamiltonianStatus::NoPath(NoPathProof::Exhaustive) => "none(exhaustive)",
            HamiltonianStatus::TimedOut => "timeout",
        }
    }

    pub fn json(&self, solid: &str, skeleton_vertices: usize) -> HamiltonianJson {
        HamiltonianJson {
            solid: solid.to_owned(),
            skeleton_vertices,
            hamiltonian: self.label(),
            witness: self.witness().to_vec(),
        }
    }
}

/// Serialized Hamiltonian report for one solid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonianJson {
    pub solid: String,
    pub skeleton_vertices: usize,
    pub hamiltonian: &'static str,
    pub witness: Vec<usize>,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Searches for a Hamiltonian path.
///
/// A bipartite graph whose parts differ by two or more is rejected up front.
/// Otherwise a depth-first search tries start vertices in index order,
/// extending towards the neighbor with the fewest onward options first, and
/// prunes a branch when the unvisited vertices
///
/// * contain a vertex that cannot be entered, or two that cannot be left,
/// * are disconnected, or
/// * split into more than `|S| + 1` components once the set `S` of unvisited
///   vertices of above-minimum degree is removed (a path through `S` can join
///   at most that many pieces).
///
/// `budget` bounds the number of expanded nodes.
pub fn hamiltonian_path(g: &SkeletonGraph, budget: u64) -> HamiltonianReport {
    let n = g.vertex_count();
    if n == 0 {
        return HamiltonianReport {
            status: HamiltonianStatus::NoPath(NoPathProof::Exhaustive),
            steps: 0,
        };
    }
    if let Some(side) = g.bipartition() {
        let a = side.iter().filter(|&&s| s).count();
        if a.abs_diff(n - a) >= 2 {
            return HamiltonianReport {
                status: HamiltonianStatus::NoPath(NoPathProof::BipartiteParity),
                steps: 0,
            };
        }
    }
    let mut search = Search {
        g,
        min_degree: (0..n).map(|v| g.degree(v)).min().unwrap_or(0),
        visited: vec![false; n],
        path: Vec::with_capacity(n),
        steps: 0,
        budget,
    };
    let unvisited = vec![true; n];
    if !search.feasible(None, &unvisited) {
        return HamiltonianReport {
            status: HamiltonianStatus::NoPath(NoPathProof::Exhaustive),
            steps: 1,
        };
    }
    for start in 0..n {
        match search.extend(start) {
            Some(true) => {
                return HamiltonianReport {
                    status: HamiltonianStatus::Found(search.path),
                    steps: search.steps,
                }
            }
            Some(false) => {}
            None => {
                return HamiltonianReport {
                    status: HamiltonianStatus::TimedOut,
                    steps: search.steps,
                }
            }
        }
    }
    HamiltonianReport {
        status: HamiltonianStatus::NoPath(NoPathProof::Exhaustive),
        steps: search.steps,
    }
}

struct Search<'a> {
    g: &'a SkeletonGraph,
    min_degree: usize,
    visited: Vec<bool>,
    path: Vec<usize>,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    /// Visits `v` and continues. `Some(true)` on success, `Some(false)` when
    /// the branch is exhausted, `None` when the budget runs out.
    fn extend(&mut self, v: usize) -> Option<bool> {
        self.steps += 1;
        if self.steps > self.budget {
            return None;
        }
        self.visited[v] = true;
        self.path.push(v);
        if self.path.len() == self.g.vertex_count() {
            return Some(true);
        }
        let unvisited: Vec<bool> = self.visited.iter().map(|&s| !s).collect();
        if self.feasible(Some(v), &unvisited) {
            let mut next: Vec<(usize, usize)> = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&w| !self.visited[w])
                .map(|&w| (self.open_degree(w), w))
                .collect();
            next.sort_unstable();
            for (_, w) in next {
                match self.extend(w) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        self.visited[v] = false;
        self.path.pop();
        Some(false)
    }

    fn open_degree(&self, w: usize) -> usize {
        self.g
            .neighbors(w)
            .iter()
            .filter(|&&u| !self.visited[u])
            .count()
    }

    /// Necessary conditions for the unvisited set to be covered by a path that
    /// starts next to `current` (or anywhere when `current` is `None`).
    fn feasible(&self, current: Option<usize>, unvisited: &[bool]) -> bool {
        let g = self.g;
        let left = unvisited.iter().filter(|&&u| u).count();
        let mut dead_ends = 0;
        for u in (0..g.vertex_count()).filter(|&u| unvisited[u]) {
            let open = g.neighbors(u).iter().filter(|&&w| unvisited[w]).count();
            let entry = current.map_or(0, |c| usize::from(g.has_edge(c, u)));
            match open + entry {
                0 if left > 1 || current.is_some() => return false,
                0 | 1 => dead_ends += 1,
                _ => {}
            }
        }
        // with no current vertex both path ends are free
        if dead_ends > if current.is_some() { 1 } else { 2 } {
            return false;
        }
        if components(g, unvisited) > 1 {
            return false;
        }
        let cut: Vec<bool> = (0..g.vertex_count())
            .map(|u| unvisited[u] && g.degree(u) > self.min_degree)
            .collect();
        let s = cut.iter().filter(|&&c| c).count();
        let rest: Vec<bool> = (0..g.vertex_count())
            .map(|u| unvisited[u] && !cut[u])
            .collect();
        components(g, &rest) <= s + 1
    }
}

/// Number of connected components of the subgraph induced by `mask`.
fn components(g: &SkeletonGraph, mask: &[bool]) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..g.vertex_count() {
        if !mask[s] || seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Whether a complete peel order is a Hamiltonian path of the face graph.
pub fn peel_implies_path(seq: &PeelSequence, face_graph: &SkeletonGraph) -> Result<bool> {
    if !seq.is_complete() {
        return Err(Error::IncompleteSequence {
            selected: seq.len(),
            total: seq.face_count,
        });
    }
    Ok(face_graph.is_hamiltonian_path(&seq.order()))
}

/// Isomorphism-invariant certificate: the lexicographically smallest sorted
/// edge list over all labelings reached by color refinement with
/// individualization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn canonical_form(g: &SkeletonGraph) -> CanonicalForm {
    let colors = refine(g, vec![0; g.vertex_count()]);
    let mut best = None;
    canon_search(g, colors, &mut best);
    best.unwrap_or(CanonicalForm {
        vertex_count: 0,
        edges: Vec::new(),
    })
}

pub fn isomorphic(a: &SkeletonGraph, b: &SkeletonGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

fn canon_search(g: &SkeletonGraph, colors: Vec<usize>, best: &mut Option<CanonicalForm>) {
    let n = g.vertex_count();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    // first smallest non-singleton cell
    let target = (0..n)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (colors[a], colors[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let form = CanonicalForm {
            vertex_count: n,
            edges,
        };
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if u == v { 2 * c } else { 2 * c + 1 })
            .collect();
        canon_search(g, refine(g, split), best);
    }
}

/// Equitable refinement: repeatedly recolor each vertex by its color and the
/// sorted colors of its neighbors until the partition is stable. Colors are
/// dense ranks that respect the order of the input colors.
fn refine(g: &SkeletonGraph, colors: Vec<usize>) -> Vec<usize> {
    let mut colors = rank(&colors);
    let mut classes = count_classes(&colors);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..g.vertex_count())
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}
