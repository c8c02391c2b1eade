//! Acceptance gate: one test per criterion, each ending in a single
//! `criterion N: PASS`/`DEFERRED` line (visible with `--nocapture`; the test
//! harness result line mirrors it either way).
//!
//! 1. every built-in amalgam validates, in under 10 s;
//! 2. the census at ≤ 100 vertices reproduces the reference table exactly,
//!    with a timed intermediate gate at ≤ 56 vertices;
//! 3. the 350-vertex stretch run — deferred: the per-amalgam search budget
//!    blows up below that bound, which the test demonstrates;
//! 4. subdivided doubles of the five cubic fixtures land on the expected
//!    census records;
//! 5. the unworthy-graph recognizer round-trips doubles and clears every
//!    worthy census graph;
//! 6. independent oracles agree: brute permutation closure, exhaustive
//!    automorphism search, exhaustive girth search, brute quotient
//!    enumeration, and abelian invariants;
//! 7. two census runs of the binary produce byte-identical directories.

use lat34_core::fpgroup::abelianization;
use lat34_core::lins::{normal_quotients, regular_quotient_record};
use lat34_core::subdouble::{recognize_unworthy, subdivided_double, RecognitionResult};
use lat34_core::{
    are_isomorphic, builtin_amalgams, canonical_form, compare_with_reference, fixture,
    graph_stats, params_of, reference_rows, row_params, run_census, run_census_with,
    CensusOptions, CensusRecord, Graph, PermGroup, Permutation, Side,
};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

static CENSUS_100: OnceLock<Vec<CensusRecord>> = OnceLock::new();

fn census_100() -> &'static [CensusRecord] {
    CENSUS_100.get_or_init(|| run_census(None, 100).expect("census at 100 vertices completes"))
}

const DOUBLE_FIXTURES: [(&str, usize); 5] = [
    ("K4", 14),
    ("K33", 21),
    ("Cube", 28),
    ("Petersen", 35),
    ("Heawood", 49),
];

#[test]
fn criterion_1_amalgam_validation() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lat34"))
        .arg("validate")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0), "lat34 validate must succeed");
    let text = String::from_utf8(out.stdout).unwrap();
    let pass_lines = text.lines().filter(|l| l.ends_with("PASS")).count();
    assert_eq!(pass_lines, 19, "all 19 amalgams must pass:\n{text}");
    assert!(
        text.lines().next().unwrap().contains("|L|=3   |B|=1  |R|=4"),
        "smallest amalgam has orders (3, 1, 4)"
    );
    assert!(
        text.lines().last().unwrap().contains("|L|=36  |B|=12 |R|=48"),
        "largest amalgams have orders (36, 12, 48)"
    );
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "validation took {elapsed:?}, budget is 10 s"
    );
    println!(
        "criterion 1: PASS — 19 amalgams validated in {:.2} s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_2_reference_table_reproduction() {
    let gate_start = Instant::now();
    let gate = run_census(None, 56).expect("census at 56 vertices completes");
    let gate_elapsed = gate_start.elapsed();
    let expected_gate = reference_rows().iter().filter(|r| r.order <= 56).count();
    assert_eq!(expected_gate, 20, "reference rows on at most 56 vertices");
    assert_eq!(gate.len(), expected_gate, "graphs on at most 56 vertices");
    assert!(
        gate_elapsed.as_secs() <= 600,
        "intermediate gate took {gate_elapsed:?}, budget is 10 min"
    );

    let start = Instant::now();
    let records = census_100();
    let elapsed = start.elapsed();
    assert_eq!(records.len(), 42, "42 graphs on at most 100 vertices");

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for r in records {
        *counts.entry(r.order).or_insert(0) += 1;
    }
    let expected: BTreeMap<usize, usize> = [
        (7, 1),
        (14, 2),
        (21, 2),
        (28, 3),
        (35, 2),
        (42, 2),
        (49, 3),
        (56, 5),
        (63, 4),
        (70, 3),
        (84, 4),
        (91, 2),
        (98, 9),
    ]
    .into_iter()
    .collect();
    assert_eq!(counts, expected, "per-order counts");

    for (a, b) in records.iter().zip(records.iter().skip(1)) {
        if a.order == b.order {
            assert!(
                !are_isomorphic(&a.graph, &b.graph),
                "records [{},{}] and [{},{}] must not be isomorphic",
                a.order,
                a.index,
                b.order,
                b.index
            );
        }
    }

    let report = compare_with_reference(records);
    assert!(
        report.is_match(),
        "parameter multisets must match the reference table:\n{report}"
    );
    assert_eq!(report.matched, 42);
    assert!(
        elapsed.as_secs() <= 7200,
        "census took {elapsed:?}, budget is 2 h"
    );
    println!(
        "criterion 2: PASS — 42/42 reference rows matched in {:.1} s (≤ 56-vertex gate: 20 graphs in {:.1} s)",
        elapsed.as_secs_f64(),
        gate_elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_3_stretch_census_350() {
    if std::env::var_os("LAT34_STRETCH").is_some() {
        let run = run_census_with(&CensusOptions {
            max_vertices: 350,
            amalgam_ids: None,
            node_budget: u64::MAX,
        })
        .expect("inputs are valid");
        assert!(run.exceeded.is_empty(), "stretch run must complete");
        assert_eq!(run.records.len(), 220, "220 graphs on at most 350 vertices");
        println!("criterion 3: PASS — 220 graphs on at most 350 vertices");
        return;
    }
    // Deferred: at the 350-vertex bound the subgroup searches outgrow any
    // realistic node budget (measurements per amalgam in the README).
    // Demonstrate the blow-up on the smallest amalgam rather than asserting
    // the count: even 50M nodes — 25 times the budget any amalgam needs for
    // the 100-vertex census — are not enough at index 600.
    let run = run_census_with(&CensusOptions {
        max_vertices: 350,
        amalgam_ids: Some(vec![0]),
        node_budget: 50_000_000,
    })
    .expect("inputs are valid");
    assert_eq!(
        run.exceeded.len(),
        1,
        "the search must hit the 50M-node budget"
    );
    assert!(run.records.is_empty(), "all-or-nothing per amalgam");
    println!(
        "criterion 3: DEFERRED — per-amalgam searches exhaust their node budget at 350 vertices \
         (demonstrated here for amalgam 0 at 50M nodes; per-amalgam measurements at 2G nodes are \
         tabulated in the README; set LAT34_STRETCH=1 to attempt the unbounded run)"
    );
}

#[test]
fn criterion_4_subdivided_doubles_match_census_rows() {
    let records = census_100();
    let start = Instant::now();
    for (name, order) in DOUBLE_FIXTURES {
        let double = subdivided_double(&fixture(name).unwrap()).unwrap();
        assert_eq!(double.vertex_count(), order);
        let bytes = canonical_form(&double).bytes;
        let record = records
            .iter()
            .find(|r| r.order == order && canonical_form(&r.graph).bytes == bytes)
            .unwrap_or_else(|| panic!("double of {name} must appear in the census at order {order}"));

        // The matching reference row is the first of its order.
        let row = reference_rows()
            .iter()
            .find(|r| r.order == order)
            .unwrap();
        assert_eq!(row.comment, format!("double of {name}"), "row [{order},1]");
        assert_eq!(
            params_of(&record.stats, &record.sym),
            row_params(row),
            "parameters of the double of {name}"
        );
        assert_eq!(record.comment, row.comment);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget is 1 min");
    println!(
        "criterion 4: PASS — five doubles matched their census records in {:.1} s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_5_unworthy_recognition_round_trip() {
    let records = census_100();
    let start = Instant::now();
    for (name, order) in DOUBLE_FIXTURES {
        let lambda = fixture(name).unwrap();
        let double = subdivided_double(&lambda).unwrap();
        assert_eq!(double.vertex_count(), order);
        match recognize_unworthy(&double) {
            RecognitionResult::Double(recovered) => {
                assert!(
                    are_isomorphic(&recovered, &lambda),
                    "recognizer must recover {name} up to isomorphism"
                );
            }
            other => panic!("double of {name} recognized as {other:?}"),
        }
    }
    assert_eq!(
        recognize_unworthy(&fixture("K34").unwrap()),
        RecognitionResult::K34
    );
    let mut worthy = 0;
    for r in records {
        if r.stats.worthy {
            worthy += 1;
            assert_eq!(
                recognize_unworthy(&r.graph),
                RecognitionResult::NotUnworthy,
                "worthy census graph [{},{}]",
                r.order,
                r.index
            );
        }
    }
    assert_eq!(worthy, 29, "42 graphs minus 13 unworthy ones");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget is 1 min");
    println!(
        "criterion 5: PASS — 5 doubles round-tripped, K_{{3,4}} flagged, 29 worthy graphs cleared in {:.1} s",
        elapsed.as_secs_f64()
    );
}

/// Number of distinct permutations generated by `gens`, counted by plain
/// multiplicative closure with no group-theoretic shortcuts; `None` once the
/// closure exceeds `cap` elements.
fn brute_closure_size(gens: &[Permutation], cap: usize) -> Option<usize> {
    let degree = gens.first().map_or(1, |p| p.degree());
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(Permutation::identity(degree).images().to_vec());
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if seen.insert(q.images().to_vec()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    Some(seen.len())
}

/// All permutations of `0..n` consisting of n/k disjoint k-cycles. These are
/// exactly the possible images of an order-k generator in a regular action.
fn regular_cycle_perms(n: usize, k: usize) -> Vec<Permutation> {
    assert!(n.is_multiple_of(k));
    let mut out = Vec::new();
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut used = vec![false; n];
    build_cycles(&mut images, &mut used, k, &mut out);
    out
}

fn build_cycles(images: &mut Vec<u32>, used: &mut Vec<bool>, k: usize, out: &mut Vec<Permutation>) {
    let Some(least) = used.iter().position(|&u| !u) else {
        out.push(Permutation::from_images(images.clone()));
        return;
    };
    used[least] = true;
    let free: Vec<usize> = (least + 1..used.len()).filter(|&v| !used[v]).collect();
    // Choose the rest of the k-cycle through `least` in every order.
    let mut rest = vec![0usize; k - 1];
    choose_rest(&free, &mut rest, 0, least, images, used, k, out);
    used[least] = false;
}

#[allow(clippy::too_many_arguments)]
fn choose_rest(
    free: &[usize],
    rest: &mut Vec<usize>,
    depth: usize,
    least: usize,
    images: &mut Vec<u32>,
    used: &mut Vec<bool>,
    k: usize,
    out: &mut Vec<Permutation>,
) {
    if depth == k - 1 {
        let cycle: Vec<usize> = std::iter::once(least).chain(rest.iter().copied()).collect();
        for i in 0..k {
            images[cycle[i]] = cycle[(i + 1) % k] as u32;
        }
        for &v in rest.iter() {
            used[v] = true;
        }
        build_cycles(images, used, k, out);
        for &v in rest.iter() {
            used[v] = false;
        }
        for &v in &cycle {
            images[v] = v as u32;
        }
        return;
    }
    for &v in free {
        if !used[v] && !rest[..depth].contains(&v) {
            rest[depth] = v;
            choose_rest(free, rest, depth + 1, least, images, used, k, out);
        }
    }
}

/// All candidate images of one generator of order dividing `k` in a regular
/// action on `n` points: the identity, plus every fixed-point-free
/// permutation whose cycles all have the same length d for each d | k, d > 1.
fn regular_generator_candidates(n: usize, k: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    for d in 2..=k {
        if k.is_multiple_of(d) && n.is_multiple_of(d) {
            out.extend(regular_cycle_perms(n, d));
        }
    }
    out
}

#[test]
fn criterion_6_oracle_equivalences() {
    let start = Instant::now();
    let amalgams = builtin_amalgams();

    // (a) Coset-enumeration orders vs brute multiplicative closure of the
    // resulting permutations, for both vertex groups of all 19 amalgams.
    for a in &amalgams {
        for side in [Side::Left, Side::Right] {
            let pres = a.side_pres(side);
            let table = pres.coset_enumerate(&[], 4096).expect("enumeration completes");
            let order = table.coset_count();
            let perms = table.to_perms().expect("closed table");
            assert_eq!(
                brute_closure_size(&perms, 2 * order),
                Some(order),
                "amalgam {} {side:?} side: closure must reproduce the enumerated order",
                a.id
            );
            let expected = match side {
                Side::Left => 3 * a.border_order(),
                Side::Right => 4 * a.border_order(),
            };
            assert_eq!(order as u64, expected, "amalgam {} {side:?}", a.id);
        }
    }

    // (b) |Aut(K_{3,4})| by exhaustive check of all 7! vertex permutations.
    let k34 = fixture("K34").unwrap();
    let mut count = 0usize;
    let mut labels: Vec<u32> = (0..7).collect();
    permute_all(&mut labels, 0, &mut |p| {
        if is_adjacency_preserving(&k34, p) {
            count += 1;
        }
    });
    assert_eq!(count, 144, "exhaustive automorphism count of K_{{3,4}}");
    let aut = PermGroup::from_generators(7, canonical_form(&k34).generators);
    assert_eq!(aut.order_u64(), Some(144), "generator-based count agrees");

    // (c) Girth vs exhaustive shortest-cycle search on every graph at hand
    // with at most 40 edges: fixtures, subdivisions, doubles, census records.
    let mut small: Vec<Graph> = Vec::new();
    for name in ["K4", "K33", "Cube", "Petersen", "Heawood", "K34"] {
        let g = fixture(name).unwrap();
        small.push(lat34_core::subdouble::subdivision(&g));
        if g.is_regular(3) {
            small.push(subdivided_double(&g).unwrap());
        }
        small.push(g);
    }
    small.extend(census_100().iter().map(|r| r.graph.clone()));
    small.retain(|g| g.edge_count() <= 40);
    assert!(small.len() >= 15, "the pool must stay representative");
    for g in &small {
        assert_eq!(
            graph_stats(g).girth,
            exhaustive_girth(g),
            "girth disagreement on a graph with {} vertices / {} edges",
            g.vertex_count(),
            g.edge_count()
        );
    }

    // (d) Normal quotients of the free product C3 * C4 at index ≤ 12 vs
    // brute-force enumeration of regular generator pairs: x of order
    // dividing 3 (relabeled to a fixed representative per cycle type) against
    // every candidate y of order dividing 4, keeping pairs that generate a
    // transitive group of order exactly n.
    let u0 = &amalgams[0];
    assert_eq!(u0.border_order(), 1, "amalgam 0 is the free product");
    let fast = normal_quotients(&u0.universal, 12).expect("search completes");
    let fast_keys: BTreeSet<Vec<u8>> =
        fast.iter().map(|q| q.canonical_key.clone()).collect();
    assert_eq!(fast_keys.len(), fast.len(), "records are duplicate-free");
    let mut brute_keys = BTreeSet::new();
    for n in 1..=12usize {
        let mut xs = vec![Permutation::identity(n)];
        if n % 3 == 0 {
            // One representative of the unique admissible nontrivial cycle
            // type; conjugating any regular pair moves x here while keeping
            // y inside the candidate set, so nothing is missed.
            let mut images: Vec<u32> = (0..n as u32).collect();
            for c in (0..n).step_by(3) {
                images[c] = (c + 1) as u32;
                images[c + 1] = (c + 2) as u32;
                images[c + 2] = c as u32;
            }
            xs.push(Permutation::from_images(images));
        }
        for x in &xs {
            for y in regular_generator_candidates(n, 4) {
                let gens = [x.clone(), y.clone()];
                if brute_closure_size(&gens, n) != Some(n) {
                    continue; // wrong order
                }
                let orbit = orbit_of_zero(&gens, n);
                if orbit != n {
                    continue; // not transitive, so not a regular action
                }
                let record = regular_quotient_record(&gens, 12).expect("order is at most 12");
                assert_eq!(record.degree, n);
                brute_keys.insert(record.canonical_key);
            }
        }
    }
    assert_eq!(
        fast_keys, brute_keys,
        "quotient search and brute pair enumeration must find the same kernels"
    );

    // (e) Abelian invariants of C3 * C4 via Smith normal form, against the
    // abelian members of the quotient list.
    assert_eq!(abelianization(&u0.universal), vec![12]);
    let mut abelian_orders: Vec<usize> = fast
        .iter()
        .filter(|q| {
            let [x, y] = &q.generator_perms[..] else {
                panic!("two generators")
            };
            x.compose(y).images() == y.compose(x).images()
        })
        .map(|q| q.degree)
        .collect();
    abelian_orders.sort_unstable();
    assert_eq!(
        abelian_orders,
        vec![1, 2, 3, 4, 6, 12],
        "abelian quotient orders are exactly the divisors of 12"
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget is 5 min");
    println!(
        "criterion 6: PASS — closure, automorphism, girth, quotient and abelianization oracles agreed in {:.1} s",
        elapsed.as_secs_f64()
    );
}

fn permute_all(labels: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == labels.len() {
        visit(labels);
        return;
    }
    for i in k..labels.len() {
        labels.swap(k, i);
        permute_all(labels, k + 1, visit);
        labels.swap(k, i);
    }
}

fn is_adjacency_preserving(g: &Graph, p: &[u32]) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (a, b) = (p[u as usize], p[v as usize]);
        g.neighbors(a as usize).contains(&b)
    })
}

/// Girth by exhaustive search: the shortest cycle through each edge is that
/// edge plus a shortest path between its endpoints avoiding it.
fn exhaustive_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        if let Some(d) = distance_avoiding_edge(g, u as usize, v as usize) {
            let cycle = d + 1;
            best = Some(best.map_or(cycle, |b| b.min(cycle)));
        }
    }
    best
}

fn distance_avoiding_edge(g: &Graph, from: usize, to: usize) -> Option<usize> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            let y = y as usize;
            if (x == from && y == to) || (x == to && y == from) {
                continue;
            }
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                if y == to {
                    return Some(dist[y]);
                }
                queue.push_back(y);
            }
        }
    }
    None
}

fn orbit_of_zero(gens: &[Permutation], n: usize) -> usize {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut size = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                size += 1;
                stack.push(y);
            }
        }
    }
    size
}

#[test]
fn criterion_7_byte_identical_census_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let mut listings: Vec<BTreeMap<String, Vec<u8>>> = Vec::new();
    for sub in ["first", "second"] {
        let dir = tmp.path().join(sub);
        let out = Command::new(env!("CARGO_BIN_EXE_lat34"))
            .args([
                "census",
                "--max-vertices",
                "56",
                "--out",
                dir.to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert_eq!(
            out.status.code(),
            Some(0),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut files = BTreeMap::new();
        for entry in std::fs::read_dir(&dir).unwrap() {
            let entry = entry.unwrap();
            files.insert(
                entry.file_name().to_string_lossy().into_owned(),
                std::fs::read(entry.path()).unwrap(),
            );
        }
        listings.push(files);
    }
    let [first, second] = &listings[..] else {
        unreachable!()
    };
    assert_eq!(
        first.keys().collect::<Vec<_>>(),
        second.keys().collect::<Vec<_>>(),
        "identical file listings"
    );
    assert_eq!(first.len(), 21, "20 graph files plus census.csv");
    for (name, bytes) in first {
        assert_eq!(bytes, &second[name], "{name} must be byte-identical");
    }
    println!(
        "criterion 7: PASS — two census runs at 56 vertices wrote byte-identical directories in {:.1} s",
        start.elapsed().as_secs_f64()
    );
}
