//! Canonical labeling, automorphism groups, and the per-graph symmetry
//! parameters: local actions, arc-transitivity levels, and stabilizer and
//! kernel orders.

use crate::graphs::Graph;
use crate::perm::Permutation;
use crate::permgroup::{fingerprint, identify, orbit_of, PermGroup};
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("graph is not biregular with valences 3 and 4")]
    NotBiregular,
    #[error("arc-transitivity level exceeds 16")]
    ArcLevelCapExceeded,
}

/// Canonical labeling of a graph together with generators of its
/// automorphism group.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Serialization of the canonically relabeled graph: equal byte strings
    /// exactly characterize isomorphic graphs (for graphs with matching
    /// part sizes and the same part of valence-3 vertices).
    pub bytes: Vec<u8>,
    /// Automorphism generators; each preserves the two vertex ranges.
    pub generators: Vec<Permutation>,
}

// ---------------------------------------------------------------------------
// Ordered partitions and equitable refinement
// ---------------------------------------------------------------------------

/// Ordered partition of the vertices. Cell ids are stable; `order` lists the
/// live cells in canonical order.
#[derive(Clone)]
struct Partition {
    order: Vec<usize>,
    members: Vec<Vec<u32>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Seed coloring: vertices grouped by (side, valence), cells in
    /// ascending key order — isomorphism-invariant by construction.
    fn seed(g: &Graph) -> Partition {
        let n = g.vertex_count();
        let mut keys: Vec<(usize, usize, u32)> = (0..n)
            .map(|v| (usize::from(v >= g.n3()), g.degree(v), v as u32))
            .collect();
        keys.sort_unstable();
        let mut order = Vec::new();
        let mut members: Vec<Vec<u32>> = Vec::new();
        let mut cell_of = vec![0usize; n];
        let mut prev = None;
        for (side, deg, v) in keys {
            if prev != Some((side, deg)) {
                order.push(members.len());
                members.push(Vec::new());
                prev = Some((side, deg));
            }
            let id = *order.last().unwrap();
            cell_of[v as usize] = id;
            members[id].push(v);
        }
        Partition {
            order,
            members,
            cell_of,
        }
    }

    fn is_discrete(&self) -> bool {
        self.order.len() == self.cell_of.len()
    }

    /// First cell of minimal size among the non-singletons.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &c in &self.order {
            let len = self.members[c].len();
            if len > 1 && best.is_none_or(|b| len < self.members[b].len()) {
                best = Some(c);
                if len == 2 {
                    break;
                }
            }
        }
        best
    }

    /// Splits `{v}` out of its cell, placing the singleton in front of the
    /// remainder. Returns the two cell ids to seed refinement with.
    fn individualize(&mut self, v: u32) -> [usize; 2] {
        let c = self.cell_of[v as usize];
        debug_assert!(self.members[c].len() > 1);
        self.members[c].retain(|&x| x != v);
        let solo = self.members.len();
        self.members.push(vec![v]);
        self.cell_of[v as usize] = solo;
        let pos = self.order.iter().position(|&x| x == c).unwrap();
        self.order.insert(pos, solo);
        [solo, c]
    }

    /// Coarsest equitable refinement: repeatedly split cells by neighbor
    /// counts into the splitter cells on the worklist. Subcells are ordered
    /// by ascending count, so the result is isomorphism-invariant.
    fn refine(&mut self, g: &Graph, seeds: &[usize]) {
        let n = self.cell_of.len();
        let mut queue: std::collections::VecDeque<usize> = seeds.iter().copied().collect();
        let mut cnt = vec![0u32; n];
        while let Some(s) = queue.pop_front() {
            if self.is_discrete() {
                return;
            }
            cnt.iter_mut().for_each(|c| *c = 0);
            let mut touched: Vec<usize> = Vec::new();
            for &x in &self.members[s] {
                for &y in g.neighbors(x as usize) {
                    if cnt[y as usize] == 0 {
                        touched.push(self.cell_of[y as usize]);
                    }
                    cnt[y as usize] += 1;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            // Process affected cells in canonical (order-position) order.
            let mut affected: Vec<(usize, usize)> = touched
                .into_iter()
                .filter(|&c| self.members[c].len() > 1)
                .map(|c| (self.order.iter().position(|&x| x == c).unwrap(), c))
                .collect();
            affected.sort_unstable();
            for (_, c) in affected {
                let first_cnt = cnt[self.members[c][0] as usize];
                if self.members[c][1..]
                    .iter()
                    .all(|&x| cnt[x as usize] == first_cnt)
                {
                    continue;
                }
                let mut groups: Vec<(u32, Vec<u32>)> = Vec::new();
                let mut old = std::mem::take(&mut self.members[c]);
                old.sort_unstable_by_key(|&x| cnt[x as usize]);
                for x in old {
                    let k = cnt[x as usize];
                    match groups.last_mut() {
                        Some((key, list)) if *key == k => list.push(x),
                        _ => groups.push((k, vec![x])),
                    }
                }
                let pos = self.order.iter().position(|&x| x == c).unwrap();
                for (i, (_, list)) in groups.into_iter().enumerate() {
                    let id = if i == 0 {
                        c
                    } else {
                        let id = self.members.len();
                        self.members.push(Vec::new());
                        self.order.insert(pos + i, id);
                        id
                    };
                    for &x in &list {
                        self.cell_of[x as usize] = id;
                    }
                    self.members[id] = list;
                    queue.push_back(id);
                }
            }
        }
    }

    /// For a discrete partition: `labeling[v]` = canonical position of `v`.
    fn labeling(&self) -> Vec<u32> {
        let mut lab = vec![0u32; self.cell_of.len()];
        for (i, &c) in self.order.iter().enumerate() {
            lab[self.members[c][0] as usize] = i as u32;
        }
        lab
    }
}

// ---------------------------------------------------------------------------
// Individualization-refinement search
// ---------------------------------------------------------------------------

struct Leaf {
    labeling: Vec<u32>,
    bytes: Vec<u8>,
    prefix: Vec<u32>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Permutation>,
    prefix: Vec<u32>,
    /// When set, unwind the recursion until the prefix is this short.
    backjump: Option<usize>,
}

/// Union-find over vertices, seeded from the automorphisms that fix the
/// given prefix pointwise. Used to skip branches equivalent to explored ones.
fn orbit_classes(autos: &[Permutation], prefix: &[u32], n: usize) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        let mut c = x;
        while parent[c as usize] != r {
            let next = parent[c as usize];
            parent[c as usize] = r;
            c = next;
        }
        r
    }
    for a in autos {
        if prefix.iter().any(|&v| a.apply(v as usize) != v as usize) {
            continue;
        }
        for x in 0..n {
            let (rx, ry) = (
                find(&mut parent, x as u32),
                find(&mut parent, a.apply(x) as u32),
            );
            if rx != ry {
                parent[rx as usize] = ry;
            }
        }
    }
    for x in 0..n as u32 {
        find(&mut parent, x);
    }
    (0..n as u32).map(|x| find(&mut parent, x)).collect()
}

impl<'g> Search<'g> {
    fn certificate(&self, labeling: &[u32]) -> Vec<u8> {
        let g = self.g;
        let mut edges: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (labeling[u as usize], labeling[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let mut s = format!("LAT34 1\nn3={} n4={} m={}\n", g.n3(), g.n4(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s.into_bytes()
    }

    /// Automorphism mapping each vertex to the one holding the same
    /// canonical position in the anchor leaf.
    fn automorphism(anchor: &Leaf, labeling: &[u32]) -> Permutation {
        let n = labeling.len();
        let mut inv_anchor = vec![0u32; n];
        for (v, &p) in anchor.labeling.iter().enumerate() {
            inv_anchor[p as usize] = v as u32;
        }
        Permutation::from_images(
            (0..n)
                .map(|x| inv_anchor[labeling[x] as usize])
                .collect(),
        )
    }

    fn common_prefix_len(a: &[u32], b: &[u32]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    fn on_leaf(&mut self, p: &Partition) {
        let labeling = p.labeling();
        let bytes = self.certificate(&labeling);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                labeling: labeling.clone(),
                bytes: bytes.clone(),
                prefix: self.prefix.clone(),
            });
            self.best = Some(Leaf {
                labeling,
                bytes,
                prefix: self.prefix.clone(),
            });
            return;
        };
        if bytes == first.bytes {
            let a = Self::automorphism(first, &labeling);
            if !a.is_identity() {
                self.backjump = Some(Self::common_prefix_len(&self.prefix, &first.prefix));
                self.autos.push(a);
            }
            return;
        }
        let best = self.best.as_ref().unwrap();
        if bytes == best.bytes {
            let a = Self::automorphism(best, &labeling);
            if !a.is_identity() {
                self.backjump = Some(Self::common_prefix_len(&self.prefix, &best.prefix));
                self.autos.push(a);
            }
        } else if bytes < best.bytes {
            self.best = Some(Leaf {
                labeling,
                bytes,
                prefix: self.prefix.clone(),
            });
        }
    }

    fn explore(&mut self, p: Partition) {
        if p.is_discrete() {
            self.on_leaf(&p);
            return;
        }
        let target = p.target_cell().expect("non-discrete partition has a target");
        let candidates = p.members[target].clone();
        let n = p.cell_of.len();
        let mut classes = orbit_classes(&self.autos, &self.prefix, n);
        let mut known = self.autos.len();
        let mut tried: Vec<u32> = Vec::new();
        for v in candidates {
            if self.autos.len() != known {
                classes = orbit_classes(&self.autos, &self.prefix, n);
                known = self.autos.len();
            }
            if tried
                .iter()
                .any(|&u| classes[u as usize] == classes[v as usize])
            {
                continue;
            }
            tried.push(v);
            let mut child = p.clone();
            let seeds = child.individualize(v);
            child.refine(self.g, &seeds);
            self.prefix.push(v);
            self.explore(child);
            self.prefix.pop();
            if let Some(d) = self.backjump {
                if self.prefix.len() > d {
                    return;
                }
                self.backjump = None;
            }
        }
    }
}

/// Canonical labeling by color refinement with individualization
/// backtracking; automorphism generators are collected from leaves that
/// reproduce an earlier leaf's certificate.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut p = Partition::seed(g);
    let seeds = p.order.clone();
    p.refine(g, &seeds);
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
        prefix: Vec::new(),
        backjump: None,
    };
    search.explore(p);
    let best = search.best.expect("search always reaches a leaf");
    debug_assert!(search.autos.iter().all(|a| is_automorphism(g, a)));
    CanonicalForm {
        bytes: best.bytes,
        generators: search.autos,
    }
}

/// Byte-string equality of canonical forms.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if (g1.n3(), g1.n4(), g1.edge_count()) != (g2.n3(), g2.n4(), g2.edge_count()) {
        return false;
    }
    canonical_form(g1).bytes == canonical_form(g2).bytes
}

pub(crate) fn is_automorphism(g: &Graph, a: &Permutation) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (x, y) = (a.apply(u as usize), a.apply(v as usize));
        g.neighbors(x).binary_search(&(y as u32)).is_ok()
    })
}

// ---------------------------------------------------------------------------
// Symmetry report
// ---------------------------------------------------------------------------

/// Symmetry parameters of a connected biregular graph, measured at a
/// representative adjacent pair (v, u) with valences (3, 4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub aut_order: BigUint,
    /// Isomorphism type of the action of the stabilizer of v on Γ(v).
    pub local_action_v3: String,
    /// Isomorphism type of the action of the stabilizer of u on Γ(u).
    pub local_action_v4: String,
    /// Orders of the kernels of those two local actions.
    pub vertex_kernel_orders: (BigUint, BigUint),
    /// Largest s with the stabilizer of v transitive on s-arcs from v.
    pub s_v: u32,
    /// Largest s with the stabilizer of u transitive on s-arcs from u.
    pub s_u: u32,
    /// Order of the stabilizer of the edge {v, u} (arc (v, u)).
    pub edge_stab_order: BigUint,
    /// Order of the pointwise stabilizer of Γ(u) ∪ Γ(v).
    pub edge_kernel_order: BigUint,
    /// The full automorphism group is vertex-locally transitive on
    /// neighborhoods (checked on one representative per vertex orbit).
    pub locally_arc_transitive: bool,
    /// The full automorphism group has a single edge orbit.
    pub edge_transitive: bool,
}

fn group_name(g: &PermGroup) -> String {
    let fp = fingerprint(g);
    match identify(&fp) {
        Some(name) => name.to_string(),
        None => format!("order {}", g.order()),
    }
}

/// Largest s such that `stab_of_arc_start` is transitive on the s-arcs
/// starting at `v`; an s-arc is a walk that never immediately backtracks.
/// Uses the orbit-stabilizer chain along one representative arc.
fn arc_transitivity_level(
    a: &PermGroup,
    g: &Graph,
    v: usize,
) -> Result<u32, SymmetryError> {
    let n = g.vertex_count();
    let mut rep: Vec<u32> = vec![v as u32];
    let mut stab = a.pointwise_stabilizer(&[v]);
    let mut s = 0u32;
    loop {
        let last = *rep.last().unwrap() as usize;
        let prev = rep.len().checked_sub(2).map(|i| rep[i]);
        let exts: Vec<u32> = g
            .neighbors(last)
            .iter()
            .copied()
            .filter(|&w| Some(w) != prev)
            .collect();
        let Some(&e0) = exts.first() else { break };
        let orbit = orbit_of(e0 as usize, stab.generators(), n);
        if !exts.iter().all(|&w| orbit.contains(&(w as usize))) {
            break;
        }
        s += 1;
        if s > 16 {
            return Err(SymmetryError::ArcLevelCapExceeded);
        }
        rep.push(e0);
        stab = stab.point_stabilizer(e0 as usize);
    }
    Ok(s)
}

fn edge_orbit_size(gens: &[Permutation], v: u32, u: u32) -> usize {
    let norm = |a: u32, b: u32| (a.min(b), a.max(b));
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![norm(v, u)];
    seen.insert(norm(v, u));
    while let Some((a, b)) = stack.pop() {
        for p in gens {
            let e = norm(p.apply(a as usize) as u32, p.apply(b as usize) as u32);
            if seen.insert(e) {
                stack.push(e);
            }
        }
    }
    seen.len()
}

/// Full symmetry report at the lexicographically least adjacent pair (v, u)
/// with valence(v) = 3. On edge-transitive graphs the report does not
/// depend on this choice.
pub fn symmetry_report(g: &Graph) -> Result<SymmetryReport, SymmetryError> {
    if !g.is_biregular_34() {
        return Err(SymmetryError::NotBiregular);
    }
    let n = g.vertex_count();
    let cf = canonical_form(g);
    let a = PermGroup::from_generators(n, cf.generators);
    let v = 0usize;
    let u = g.neighbors(v)[0] as usize;

    let a_v = a.point_stabilizer(v);
    let a_u = a.point_stabilizer(u);
    let nb_v: Vec<usize> = g.neighbors(v).iter().map(|&x| x as usize).collect();
    let nb_u: Vec<usize> = g.neighbors(u).iter().map(|&x| x as usize).collect();
    let act_v = a_v
        .induced_action(&nb_v)
        .expect("vertex stabilizer preserves the neighborhood");
    let act_u = a_u
        .induced_action(&nb_u)
        .expect("vertex stabilizer preserves the neighborhood");

    let s_v = arc_transitivity_level(&a, g, v)?;
    let s_u = arc_transitivity_level(&a, g, u)?;

    let a_uv = a.pointwise_stabilizer(&[v, u]);
    let mut boundary: Vec<usize> = nb_v.iter().chain(&nb_u).copied().collect();
    boundary.sort_unstable();
    boundary.dedup();
    let kernel = a.pointwise_stabilizer(&boundary);

    let locally_arc_transitive = a.orbits().iter().all(|orbit| {
        let w = orbit[0];
        let nb = g.neighbors(w);
        if nb.is_empty() {
            return true;
        }
        let stab = a.point_stabilizer(w);
        let reach = orbit_of(nb[0] as usize, stab.generators(), n);
        nb.iter().all(|&x| reach.contains(&(x as usize)))
    });
    let edge_transitive =
        edge_orbit_size(a.generators(), v as u32, u as u32) == g.edge_count();

    let report = SymmetryReport {
        aut_order: a.order(),
        local_action_v3: group_name(&act_v.image),
        local_action_v4: group_name(&act_u.image),
        vertex_kernel_orders: (act_v.kernel_order.clone(), act_u.kernel_order.clone()),
        s_v,
        s_u,
        edge_stab_order: a_uv.order(),
        edge_kernel_order: kernel.order(),
        locally_arc_transitive,
        edge_transitive,
    };

    // On edge-transitive graphs the parameters are independent of the
    // representative edge; spot-check a few other edges in debug builds.
    #[cfg(debug_assertions)]
    if report.edge_transitive {
        let edges = g.edges();
        for k in 1..=3usize {
            let (v2, u2) = edges[k * edges.len() / 4];
            let stab2 = a.pointwise_stabilizer(&[v2 as usize, u2 as usize]);
            debug_assert_eq!(stab2.order(), report.edge_stab_order);
        }
    }

    Ok(report)
}
