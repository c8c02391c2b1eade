//! Graphs: coset-graph construction, statistics, fixtures, and the LAT34
//! file format.
//!
//! A [`Graph`] is simple and undirected, with vertices split into two index
//! ranges. When the second range is nonempty the graph is bipartite across
//! the ranges (the census case: trivalent side first, tetravalent side
//! second). A graph with an empty second range is a plain simple graph —
//! the form used for cubic inputs to the subdivision constructions.

use crate::amalgams::Amalgam;
use crate::lins::QuotientRecord;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(u32),
    #[error("loop at vertex {0}")]
    Loop(u32),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u32, u32),
    #[error("edge {0} {1} does not join the two vertex ranges")]
    NotBipartite(u32, u32),
    #[error("unknown fixture name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing or malformed header line (expected `LAT34 1`)")]
    BadHeader,
    #[error("malformed size line (expected `n3=<int> n4=<int> m=<int>`)")]
    BadSizes,
    #[error("malformed edge line {0:?}")]
    BadEdge(String),
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("invalid graph: {0}")]
    Invalid(#[from] GraphError),
}

/// Simple undirected graph over two vertex ranges `0..n3` and `n3..n3+n4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n3: usize,
    n4: usize,
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list. With `n4 > 0` every edge must join
    /// the two ranges; with `n4 = 0` any simple edge list is accepted.
    pub fn from_edges(n3: usize, n4: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let n = n3 + n4;
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if n4 > 0 && ((u as usize) < n3) == ((v as usize) < n3) {
                return Err(GraphError::NotBipartite(u, v));
            }
            if adjacency[u as usize].contains(&v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n3, n4, adjacency })
    }

    /// Complete bipartite graph K_{a,b} with the `a`-side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..a)
            .flat_map(|u| (0..b).map(move |v| (u as u32, (a + v) as u32)))
            .collect();
        Graph::from_edges(a, b, &edges).expect("complete bipartite graph is valid")
    }

    pub fn n3(&self) -> usize {
        self.n3
    }

    pub fn n4(&self) -> usize {
        self.n4
    }

    pub fn vertex_count(&self) -> usize {
        self.n3 + self.n4
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for &v in &self.adjacency[u] {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// True when the first range is all valence 3 and the second all valence 4.
    pub fn is_biregular_34(&self) -> bool {
        self.n4 > 0
            && (0..self.n3).all(|v| self.degree(v) == 3)
            && (self.n3..self.vertex_count()).all(|v| self.degree(v) == 4)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.vertex_count()).all(|v| self.degree(v) == k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v as usize);
                }
            }
        }
        count == n
    }

    /// Serializes in the canonical format: byte-stable, ASCII, LF endings.
    pub fn to_lat34_string(&self) -> String {
        let mut s = format!(
            "LAT34 1\nn3={} n4={} m={}\n",
            self.n3,
            self.n4,
            self.edge_count()
        );
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the format, tolerating CR line endings, surrounding blank
    /// lines, extra spaces, and unsorted edges; validity is still enforced.
    pub fn parse_lat34(text: &str) -> Result<Graph, FormatError> {
        let mut lines = text
            .lines()
            .map(|l| l.trim_end_matches('\r').trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or(FormatError::BadHeader)?;
        let mut hp = header.split_whitespace();
        if hp.next() != Some("LAT34") || hp.next() != Some("1") || hp.next().is_some() {
            return Err(FormatError::BadHeader);
        }
        let sizes = lines.next().ok_or(FormatError::BadSizes)?;
        let mut n3 = None;
        let mut n4 = None;
        let mut m = None;
        for part in sizes.split_whitespace() {
            let (key, value) = part.split_once('=').ok_or(FormatError::BadSizes)?;
            let value: usize = value.parse().map_err(|_| FormatError::BadSizes)?;
            match key {
                "n3" => n3 = Some(value),
                "n4" => n4 = Some(value),
                "m" => m = Some(value),
                _ => return Err(FormatError::BadSizes),
            }
        }
        let (n3, n4, m) = match (n3, n4, m) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(FormatError::BadSizes),
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => return Err(FormatError::BadEdge(line.to_string())),
            };
            let u: u32 = u.parse().map_err(|_| FormatError::BadEdge(line.to_string()))?;
            let v: u32 = v.parse().map_err(|_| FormatError::BadEdge(line.to_string()))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(FormatError::WrongEdgeCount {
                expected: m,
                found: edges.len(),
            });
        }
        Ok(Graph::from_edges(n3, n4, &edges)?)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. The permutation must
    /// preserve the two ranges.
    pub fn relabeled(&self, perm: &[u32]) -> Graph {
        let edges: Vec<(u32, u32)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_edges(self.n3, self.n4, &edges).expect("relabeling preserves validity")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph with {}+{} vertices and {} edges",
            self.n3,
            self.n4,
            self.edge_count()
        )
    }
}

/// Basic numeric statistics of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    /// Length of a shortest cycle; `None` for forests.
    pub girth: Option<usize>,
    /// Greatest distance between two vertices; `None` when disconnected.
    pub diameter: Option<usize>,
    /// No two vertices share exactly the same neighborhood.
    pub worthy: bool,
    /// valence → number of vertices of that valence.
    pub valence_profile: BTreeMap<usize, usize>,
    pub connected: bool,
    /// Girth at least 6 (the graph is the incidence structure of a
    /// combinatorial configuration).
    pub configuration_flag: bool,
}

/// Computes girth (BFS from every vertex), diameter (all-pairs BFS),
/// worthiness, and the valence profile.
pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.vertex_count();
    let mut girth = usize::MAX;
    let mut diameter = 0usize;
    let mut connected = true;
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[start] = 0;
        let mut parent = vec![u32::MAX; n];
        queue.clear();
        queue.push_back(start);
        let mut reached = 1usize;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u as u32;
                    reached += 1;
                    queue.push_back(v);
                } else if parent[u] != v as u32 {
                    // Non-tree edge: a cycle through `start` of this length
                    // exists; over all starts this finds the girth.
                    girth = girth.min(dist[u] + dist[v] + 1);
                }
            }
        }
        if reached != n {
            connected = false;
        }
        diameter = diameter.max(
            dist.iter()
                .filter(|&&d| d != usize::MAX)
                .copied()
                .max()
                .unwrap_or(0),
        );
    }
    let mut valence_profile = BTreeMap::new();
    for v in 0..n {
        *valence_profile.entry(g.degree(v)).or_insert(0) += 1;
    }
    let mut worthy = true;
    'outer: for u in 0..n {
        for v in u + 1..n {
            if g.neighbors(u) == g.neighbors(v) {
                worthy = false;
                break 'outer;
            }
        }
    }
    let girth = if girth == usize::MAX { None } else { Some(girth) };
    GraphStats {
        girth,
        diameter: if connected { Some(diameter) } else { None },
        worthy,
        valence_profile,
        connected,
        configuration_flag: girth.is_some_and(|w| w >= 6),
    }
}

/// Why a quotient fails to produce an admissible coset graph.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CosetGraphRejection {
    #[error("trivalent vertex group maps to order {got}, expected {expected}")]
    LeftNotEmbedded { expected: u64, got: u64 },
    #[error("tetravalent vertex group maps to order {got}, expected {expected}")]
    RightNotEmbedded { expected: u64, got: u64 },
    #[error("vertex-group images intersect in order {got}, expected {expected}")]
    BorderMismatch { expected: u64, got: u64 },
}

/// A coset graph together with the quotient group's action on its vertices:
/// one permutation per generator of the ambient presentation, acting by left
/// multiplication on the cosets that form the vertex set.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub graph: Graph,
    pub vertex_perms: Vec<crate::perm::Permutation>,
}

/// Builds the bipartite coset graph of a quotient: vertices are the cosets
/// of the two vertex-group images, adjacent exactly when they intersect.
/// Rejects quotients that do not embed both vertex groups with the edge
/// group as their exact intersection.
pub fn coset_graph(q: &QuotientRecord, a: &Amalgam) -> Result<Graph, CosetGraphRejection> {
    coset_graph_with_action(q, a).map(|ca| ca.graph)
}

/// [`coset_graph`] plus the acting group: the returned permutations generate
/// the image of the quotient group inside the graph's automorphism group.
pub fn coset_graph_with_action(
    q: &QuotientRecord,
    a: &Amalgam,
) -> Result<CosetAction, CosetGraphRejection> {
    let im_l = q.image_subgroup(&a.l_words);
    let (dl, db, dr) = a.declared.orders;
    let lo = im_l.order_u64().unwrap_or(0);
    if lo != dl {
        return Err(CosetGraphRejection::LeftNotEmbedded {
            expected: dl,
            got: lo,
        });
    }
    let im_r = q.image_subgroup(&a.r_words);
    let ro = im_r.order_u64().unwrap_or(0);
    if ro != dr {
        return Err(CosetGraphRejection::RightNotEmbedded {
            expected: dr,
            got: ro,
        });
    }
    let inter = im_l
        .intersection_order(&im_r, 64)
        .expect("vertex-group image is small");
    if inter != db {
        return Err(CosetGraphRejection::BorderMismatch {
            expected: db,
            got: inter,
        });
    }

    // The record is the regular action, so points are group elements and the
    // orbit of a point under a vertex-group image is its coset. Cosets are
    // numbered by least element, trivalent side first.
    let n = q.degree;
    let coset_ids = |gens: &[crate::perm::Permutation]| -> (Vec<u32>, usize) {
        let mut id = vec![u32::MAX; n];
        let mut next = 0u32;
        for p in 0..n {
            if id[p] != u32::MAX {
                continue;
            }
            for x in crate::permgroup::orbit_of(p, gens, n) {
                id[x] = next;
            }
            next += 1;
        }
        (id, next as usize)
    };
    let l_perms: Vec<_> = a.l_words.iter().map(|w| q.eval(w)).collect();
    let r_perms: Vec<_> = a.r_words.iter().map(|w| q.eval(w)).collect();
    let (lid, n3) = coset_ids(&l_perms);
    let (rid, n4) = coset_ids(&r_perms);
    let mut edge_set = std::collections::BTreeSet::new();
    for p in 0..n {
        edge_set.insert((lid[p], n3 as u32 + rid[p]));
    }
    let edges: Vec<(u32, u32)> = edge_set.into_iter().collect();
    let g = Graph::from_edges(n3, n4, &edges).expect("coset graph is simple and bipartite");
    debug_assert_eq!(g.edge_count() as u64, n as u64 / db);
    debug_assert!(g.is_biregular_34());
    debug_assert!(g.is_connected());

    // The record stores right multiplications, so the group's own (left
    // multiplication) action on cosets is recovered by propagating each
    // generator's left action along a right-multiplication BFS tree from the
    // identity point: λ_g(x·h) = λ_g(x)·h.
    let inverses: Vec<crate::perm::Permutation> =
        q.generator_perms.iter().map(|p| p.inverse()).collect();
    let vertex_perms = q
        .generator_perms
        .iter()
        .map(|gp| {
            let mut left = vec![u32::MAX; n];
            left[0] = gp.apply(0) as u32;
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for rp in q.generator_perms.iter().chain(inverses.iter()) {
                    let y = rp.apply(x);
                    if left[y] == u32::MAX {
                        left[y] = rp.apply(left[x] as usize) as u32;
                        queue.push_back(y);
                    }
                }
            }
            let mut images = vec![u32::MAX; n3 + n4];
            for p in 0..n {
                let lp = left[p] as usize;
                images[lid[p] as usize] = lid[lp];
                images[n3 + rid[p] as usize] = n3 as u32 + rid[lp];
            }
            let perm = crate::perm::Permutation::from_images(images);
            debug_assert!(crate::symmetry::is_automorphism(&g, &perm));
            perm
        })
        .collect();
    Ok(CosetAction {
        graph: g,
        vertex_perms,
    })
}

/// Builds a cubic Hamiltonian graph from LCF notation: an `n`-cycle plus the
/// chord `i → i + pattern[i mod pattern.len()]` for every `i`.
fn lcf_graph(n: usize, pattern: &[i64]) -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..n)
        .map(|i| (i as u32, ((i + 1) % n) as u32))
        .collect();
    for i in 0..n {
        let j = (i as i64 + pattern[i % pattern.len()]).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i as u32, j as u32));
        }
    }
    let mut edges: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, 0, &edges).expect("LCF graph is valid")
}

/// Standard named graphs used as fixtures and as inputs to the subdivision
/// constructions. Cubic graphs are plain (`n4 = 0`); `K34` is bipartite.
pub fn fixture(name: &str) -> Result<Graph, GraphError> {
    match name {
        "K4" => Graph::from_edges(4, 0, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "K33" => Graph::from_edges(
            6,
            0,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        ),
        "Cube" => {
            let mut edges = Vec::new();
            for v in 0u32..8 {
                for bit in 0..3 {
                    let w = v ^ (1 << bit);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            Graph::from_edges(8, 0, &edges)
        }
        "Petersen" => Graph::from_edges(
            10,
            0,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        ),
        "Heawood" => Ok(lcf_graph(14, &[5, -5])),
        // Valence-3 vertices come first, so the part of size 4 leads.
        "K34" => Ok(Graph::complete_bipartite(4, 3)),
        other => Err(GraphError::UnknownName(other.to_string())),
    }
}
