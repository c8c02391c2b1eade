//! Subdivisions, subdivided doubles, and the recognizer for unworthy
//! biregular graphs.
//!
//! The subdivided double of a cubic graph Λ has a pair of vertices for each
//! vertex of Λ and one vertex per edge; the pair shares its neighborhood, so
//! the double is always unworthy. Conversely, every connected unworthy
//! biregular {3, 4} graph with enough symmetry is either complete bipartite
//! or such a double, and the block structure of duplicate neighborhoods
//! recovers Λ.

use crate::graphs::{fixture, Graph};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;
use crate::symmetry::{are_isomorphic, canonical_form, symmetry_report};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubdoubleError {
    #[error("input graph is not connected and 3-regular")]
    NotCubic,
}

/// Outcome of recognizing an unworthy biregular {3, 4} graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionResult {
    /// The graph is complete bipartite on 4 + 3 vertices.
    K34,
    /// The graph is the subdivided double of the carried cubic graph.
    Double(Graph),
    /// No two vertices share a neighborhood.
    NotUnworthy,
    /// The duplicate-neighborhood structure rules out both known shapes.
    Malformed(String),
}

/// Subdivision: one new vertex per edge, splitting it into a 2-path.
/// Original vertices keep their labels; edge vertices follow in sorted edge
/// order.
pub fn subdivision(lambda: &Graph) -> Graph {
    let n = lambda.vertex_count();
    let mut edges = Vec::with_capacity(2 * lambda.edge_count());
    for (k, (x, y)) in lambda.edges().into_iter().enumerate() {
        let e = (n + k) as u32;
        edges.push((x, e));
        edges.push((y, e));
    }
    Graph::from_edges(n, lambda.edge_count(), &edges).expect("subdivision is simple bipartite")
}

/// Subdivided double of a connected cubic graph: vertex v becomes the pair
/// 2v, 2v+1; edge k of the sorted edge list becomes vertex 2n+k, adjacent to
/// both members of both endpoint pairs.
pub fn subdivided_double(lambda: &Graph) -> Result<Graph, SubdoubleError> {
    if !lambda.is_regular(3) || !lambda.is_connected() || lambda.vertex_count() == 0 {
        return Err(SubdoubleError::NotCubic);
    }
    let n = lambda.vertex_count();
    let mut edges = Vec::with_capacity(4 * lambda.edge_count());
    for (k, (x, y)) in lambda.edges().into_iter().enumerate() {
        let e = (2 * n + k) as u32;
        for end in [x, y] {
            edges.push((2 * end, e));
            edges.push((2 * end + 1, e));
        }
    }
    Ok(Graph::from_edges(2 * n, lambda.edge_count(), &edges)
        .expect("subdivided double is simple bipartite"))
}

/// Classifies a connected biregular {3, 4} graph by its duplicate
/// neighborhoods: complete bipartite, a subdivided double (returning the
/// underlying cubic graph, block-vertices numbered by least member), worthy,
/// or structurally malformed.
pub fn recognize_unworthy(g: &Graph) -> RecognitionResult {
    if !g.is_biregular_34() {
        return RecognitionResult::Malformed("not biregular of valence {3, 4}".into());
    }
    if !g.is_connected() {
        return RecognitionResult::Malformed("not connected".into());
    }
    let n = g.vertex_count();
    let mut by_neighborhood: HashMap<&[u32], Vec<u32>> = HashMap::new();
    for v in 0..n {
        by_neighborhood
            .entry(g.neighbors(v))
            .or_default()
            .push(v as u32);
    }
    let mut classes: Vec<Vec<u32>> = by_neighborhood.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    if classes.len() == n {
        return RecognitionResult::NotUnworthy;
    }

    // Duplicate tetravalent vertices force the complete bipartite shape:
    // a tetravalent class size divides 3, so the trivalent vertices each see
    // exactly one block and connectivity collapses the graph to K_{3,4}.
    if classes
        .iter()
        .any(|c| c.len() > 1 && c[0] as usize >= g.n3())
    {
        return if are_isomorphic(g, &fixture("K34").expect("known fixture")) {
            RecognitionResult::K34
        } else {
            RecognitionResult::Malformed(
                "duplicate tetravalent neighborhoods, but the graph is not K_{3,4}".into(),
            )
        };
    }

    // Otherwise every duplicate class must pair up two trivalent vertices,
    // covering the whole trivalent side.
    let blocks: Vec<&Vec<u32>> = classes
        .iter()
        .filter(|c| (c[0] as usize) < g.n3())
        .collect();
    if blocks.iter().any(|c| c.len() != 2) {
        return RecognitionResult::Malformed(
            "trivalent duplicate classes do not pair up the whole trivalent side".into(),
        );
    }
    let mut block_id = vec![u32::MAX; n];
    for (k, c) in blocks.iter().enumerate() {
        for &v in c.iter() {
            block_id[v as usize] = k as u32;
        }
    }

    // A vertex adjacent to one member of a block is adjacent to both, so
    // each tetravalent vertex sees exactly two blocks: an edge of Λ.
    let mut lambda_edges = Vec::with_capacity(g.n4());
    for w in g.n3()..n {
        let mut bs: Vec<u32> = g
            .neighbors(w)
            .iter()
            .map(|&x| block_id[x as usize])
            .collect();
        bs.sort_unstable();
        bs.dedup();
        if bs.len() != 2 {
            return RecognitionResult::Malformed(
                "a tetravalent vertex does not join exactly two blocks".into(),
            );
        }
        lambda_edges.push((bs[0], bs[1]));
    }
    lambda_edges.sort_unstable();
    if lambda_edges.windows(2).any(|w| w[0] == w[1]) {
        // Two tetravalent vertices joining the same pair of blocks would
        // share a neighborhood (a 4-cycle through blocks).
        return RecognitionResult::Malformed(
            "two tetravalent vertices join the same pair of blocks".into(),
        );
    }
    let lambda = match Graph::from_edges(blocks.len(), 0, &lambda_edges) {
        Ok(l) => l,
        Err(e) => return RecognitionResult::Malformed(format!("block graph invalid: {e}")),
    };
    if !lambda.is_regular(3) || !lambda.is_connected() {
        return RecognitionResult::Malformed("block graph is not connected cubic".into());
    }
    RecognitionResult::Double(lambda)
}

/// Edge-kernel divisibility data for the subdivided double of a cubic
/// arc-transitive graph on n vertices: the kernel order must be divisible by
/// 2^(n-2), both inside the full automorphism group and inside the group
/// generated by the pair flips together with the lifted automorphisms of Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleKernelReport {
    pub lambda_vertices: usize,
    /// 2^(n-2).
    pub required_divisor: BigUint,
    /// Kernel order within the full automorphism group of the double.
    pub full_kernel_order: BigUint,
    /// Kernel order within the flip-and-lift group.
    pub constructed_kernel_order: BigUint,
}

impl DoubleKernelReport {
    pub fn divisible_in_full(&self) -> bool {
        (&self.full_kernel_order % &self.required_divisor) == BigUint::ZERO
    }

    pub fn divisible_in_constructed(&self) -> bool {
        (&self.constructed_kernel_order % &self.required_divisor) == BigUint::ZERO
    }
}

/// Computes the edge-kernel orders of the subdivided double of `lambda` at
/// the representative edge, in the full automorphism group and in the
/// constructed flip-and-lift group.
pub fn double_edge_kernel_check(lambda: &Graph) -> Result<DoubleKernelReport, SubdoubleError> {
    let d = subdivided_double(lambda)?;
    let n = lambda.vertex_count();
    let dn = d.vertex_count();
    let report = symmetry_report(&d).expect("double is biregular with bounded arc level");

    // Flip generators: swap the two copies of one vertex of Λ.
    let mut gens: Vec<Permutation> = Vec::with_capacity(n + 4);
    for v in 0..n {
        let mut im: Vec<u32> = (0..dn as u32).collect();
        im.swap(2 * v, 2 * v + 1);
        gens.push(Permutation::from_images(im));
    }
    // Lifted automorphisms of Λ.
    let edges = lambda.edges();
    let edge_index: HashMap<(u32, u32), usize> = edges
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, k))
        .collect();
    for a in canonical_form(lambda).generators {
        let mut im = vec![0u32; dn];
        for v in 0..n {
            let w = a.apply(v) as u32;
            im[2 * v] = 2 * w;
            im[2 * v + 1] = 2 * w + 1;
        }
        for (k, &(x, y)) in edges.iter().enumerate() {
            let (ax, ay) = (a.apply(x as usize) as u32, a.apply(y as usize) as u32);
            let key = (ax.min(ay), ax.max(ay));
            im[2 * n + k] = (2 * n + edge_index[&key]) as u32;
        }
        gens.push(Permutation::from_images(im));
    }
    let constructed = PermGroup::from_generators(dn, gens);

    // Same representative pair as the symmetry report.
    let v = 0usize;
    let u = d.neighbors(v)[0] as usize;
    let mut boundary: Vec<usize> = d
        .neighbors(v)
        .iter()
        .chain(d.neighbors(u))
        .map(|&x| x as usize)
        .collect();
    boundary.sort_unstable();
    boundary.dedup();
    let constructed_kernel = constructed.pointwise_stabilizer(&boundary).order();

    Ok(DoubleKernelReport {
        lambda_vertices: n,
        required_divisor: BigUint::one() << (n - 2),
        full_kernel_order: report.edge_kernel_order,
        constructed_kernel_order: constructed_kernel,
    })
}
