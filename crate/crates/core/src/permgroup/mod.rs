//! Permutation-group engine: deterministic Schreier–Sims stabilizer chains,
//! orders (arbitrary precision), membership, stabilizers, orbits, induced
//! actions, and identification of small groups by invariants.

mod fingerprint;

pub use fingerprint::{canonical_name, fingerprint, identify, GroupFingerprint};
pub(crate) use fingerprint::regular_group;

use crate::perm::Permutation;
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermGroupError {
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("domain is not invariant under generator {gen_index}")]
    NotInvariant { gen_index: usize },
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[p]` maps `point` to `p`; indexed by point.
    transversal: Vec<Option<Permutation>>,
    /// Orbit of `point` in discovery order.
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        Level {
            point,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        }
    }

    /// Recomputes the orbit and transversal from the current generators.
    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.orbit = vec![self.point];
        self.transversal[self.point] = Some(Permutation::identity(degree));
        let mut qi = 0;
        while qi < self.orbit.len() {
            let p = self.orbit[qi];
            qi += 1;
            for s in &self.gens {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let rep = self.transversal[p].as_ref().unwrap().compose(s);
                    self.transversal[q] = Some(rep);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A permutation group with a verified base and strong generating set.
/// Immutable after construction; the order is the product of the basic
/// orbit lengths.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Builds a stabilizer chain from generators (deterministic; base points
    /// are smallest moved points).
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Builds a stabilizer chain whose base starts with `prefix` (duplicates
    /// ignored); the chain below level `prefix.len()` is then the pointwise
    /// stabilizer of the prefix.
    pub fn with_base_prefix(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Self {
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            assert!(p < degree, "base point out of range");
            if !base.contains(&p) {
                base.push(p);
            }
        }
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        // Every generator must move some base point.
        for g in &generators {
            if base.iter().all(|&b| g.apply(b) == b) {
                let moved = (0..degree).find(|&p| g.apply(p) != p).unwrap();
                base.push(moved);
            }
        }

        let mut levels: Vec<Level> = base
            .iter()
            .map(|&b| Level::new(b, degree))
            .collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = generators
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
        }

        let mut group = PermGroup {
            degree,
            generators,
            levels,
        };
        group.schreier_sims();
        group
    }

    /// Deterministic Schreier–Sims: verifies every Schreier generator sifts
    /// to the identity, extending the strong generating set (and base) until
    /// the chain is complete.
    fn schreier_sims(&mut self) {
        for level in self.levels.iter_mut() {
            level.rebuild(self.degree);
        }
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() - 1;
        'levels: loop {
            self.levels[i].rebuild(self.degree);
            for oi in 0..self.levels[i].orbit.len() {
                let beta = self.levels[i].orbit[oi];
                for si in 0..self.levels[i].gens.len() {
                    let level = &self.levels[i];
                    let s = &level.gens[si];
                    let u_beta = level.transversal[beta].as_ref().unwrap();
                    let u_img = level.transversal[s.apply(beta)].as_ref().unwrap();
                    let through = u_beta.compose(s);
                    if &through == u_img {
                        continue; // Schreier generator is trivially the identity
                    }
                    let schreier = through.compose(&u_img.inverse());
                    let (residue, j) = self.strip_from(schreier, i + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let moved =
                            (0..self.degree).find(|&p| residue.apply(p) != p).unwrap();
                        self.levels.push(Level::new(moved, self.degree));
                    }
                    for l in i + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                    }
                    i = j;
                    continue 'levels;
                }
            }
            if i == 0 {
                return;
            }
            i -= 1;
        }
    }

    /// Sifts `g` through levels `start..`, returning the residue and the
    /// level where sifting stopped (`levels.len()` if it ran through).
    fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let beta = g.apply(self.levels[l].point);
            match &self.levels[l].transversal[beta] {
                None => return (g, l),
                Some(u) => g = g.compose(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The (non-identity, deduplicated) input generators.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        for level in &self.levels {
            n *= BigUint::from(level.orbit.len());
        }
        n
    }

    /// The order as a `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order()).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip_from(g.clone(), 0);
        residue.is_identity()
    }

    /// Strong generators that fix the first `k` base points; they generate
    /// the pointwise stabilizer of those points.
    fn level_generators(&self, k: usize) -> Vec<Permutation> {
        if k >= self.levels.len() {
            return Vec::new();
        }
        self.levels[k].gens.clone()
    }

    /// Subgroup fixing every listed point.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let mut distinct: Vec<usize> = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        if distinct.is_empty() {
            return self.clone();
        }
        let rebased =
            PermGroup::with_base_prefix(self.degree, self.generators.clone(), &distinct);
        PermGroup::from_generators(self.degree, rebased.level_generators(distinct.len()))
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(point, &self.generators, self.degree)
    }

    /// Orbits on all points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orb = self.orbit(p);
            orb.sort_unstable();
            for &q in &orb {
                seen[q] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        (0..gens.len()).all(|i| {
            (i + 1..gens.len()).all(|j| gens[i].compose(&gens[j]) == gens[j].compose(&gens[i]))
        })
    }

    /// Restriction of the action to an invariant point set. Returns the image
    /// group on `0..domain.len()` and the kernel order, with
    /// `|image| · kernel_order = |G|`.
    pub fn induced_action(&self, domain: &[usize]) -> Result<InducedAction, PermGroupError> {
        let mut pos: Vec<Option<usize>> = vec![None; self.degree];
        for (k, &p) in domain.iter().enumerate() {
            assert!(p < self.degree, "domain point out of range");
            pos[p] = Some(k);
        }
        let mut image_gens = Vec::with_capacity(self.generators.len());
        for (gen_index, g) in self.generators.iter().enumerate() {
            let images = domain
                .iter()
                .map(|&p| {
                    pos[g.apply(p)]
                        .map(|k| k as u32)
                        .ok_or(PermGroupError::NotInvariant { gen_index })
                })
                .collect::<Result<Vec<u32>, _>>()?;
            image_gens.push(Permutation::from_images(images));
        }
        let image = PermGroup::from_generators(domain.len(), image_gens);
        let kernel_order = self.order() / image.order();
        Ok(InducedAction { image, kernel_order })
    }

    /// All elements, deterministically ordered, when the order is ≤ `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>, PermGroupError> {
        if self.order() > BigUint::from(cap) {
            return Err(PermGroupError::CapExceeded { cap });
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![Permutation::identity(self.degree)];
        seen.insert(frontier[0].clone());
        while let Some(g) = frontier.pop() {
            for h in &self.generators {
                let gh = g.compose(h);
                if seen.insert(gh.clone()) {
                    frontier.push(gh);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Smallest subgroup containing `seeds` and closed under conjugation by
    /// this group.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut hgens: Vec<Permutation> = seeds
            .iter()
            .filter(|s| !s.is_identity())
            .cloned()
            .collect();
        let mut h = PermGroup::from_generators(self.degree, hgens.clone());
        let mut queue = hgens.clone();
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let c = x.conjugate(g);
                if !h.contains(&c) {
                    hgens.push(c.clone());
                    queue.push(c);
                    h = PermGroup::from_generators(self.degree, hgens.clone());
                }
            }
        }
        h
    }

    /// Derived subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for h in &self.generators[i + 1..] {
                let c = g
                    .inverse()
                    .compose(&h.inverse())
                    .compose(g)
                    .compose(h);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Order of the intersection with `other`, computed by listing the
    /// elements of whichever group is smaller (must have order ≤ `cap`).
    pub fn intersection_order(
        &self,
        other: &PermGroup,
        cap: usize,
    ) -> Result<u64, PermGroupError> {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems = small.elements(cap)?;
        Ok(elems.iter().filter(|e| large.contains(e)).count() as u64)
    }
}

#[derive(Debug)]
pub struct InducedAction {
    pub image: PermGroup,
    pub kernel_order: BigUint,
}

/// Orbit of `point` under a generator list, in BFS discovery order.
pub fn orbit_of(point: usize, gens: &[Permutation], degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut orbit = vec![point];
    seen[point] = true;
    let mut qi = 0;
    while qi < orbit.len() {
        let p = orbit[qi];
        qi += 1;
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

impl fmt::Display for PermGroup {
    /// Groups print as generator lists in cycle notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "⟨()⟩");
        }
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]),
                Permutation::from_cycles(4, &[&[0, 1]]),
            ],
        )
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(s4().order_u64(), Some(24));
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::from_generators(5, vec![]);
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.is_trivial());
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&Permutation::from_cycles(5, &[&[0, 1]])));
    }

    #[test]
    fn multiprecision_order() {
        // 40 disjoint transpositions generate an elementary abelian 2-group
        // of order 2^40; orders must be exact beyond u32 range.
        let degree = 80;
        let gens: Vec<Permutation> = (0..40)
            .map(|k| Permutation::from_cycles(degree, &[&[2 * k, 2 * k + 1]]))
            .collect();
        let g = PermGroup::from_generators(degree, gens);
        assert_eq!(g.order(), BigUint::from(2u32).pow(40));
        assert!(g.is_abelian());
    }

    #[test]
    fn membership_agrees_with_element_listing() {
        let g = s4();
        let elems = g.elements(200).unwrap();
        assert_eq!(elems.len(), 24);
        for e in &elems {
            assert!(g.contains(e));
        }
        // Every degree-4 permutation is in S4; check a non-member elsewhere.
        let h = PermGroup::from_generators(4, vec![Permutation::from_cycles(4, &[&[0, 1, 2]])]);
        assert_eq!(h.order_u64(), Some(3));
        assert!(!h.contains(&Permutation::from_cycles(4, &[&[0, 1]])));
        let h_elems = h.elements(10).unwrap();
        for e in &elems {
            assert_eq!(h.contains(e), h_elems.contains(e));
        }
    }

    #[test]
    fn elements_cap() {
        assert_eq!(
            s4().elements(5).unwrap_err(),
            PermGroupError::CapExceeded { cap: 5 }
        );
    }

    #[test]
    fn pointwise_stabilizers() {
        let g = s4();
        assert_eq!(g.pointwise_stabilizer(&[0, 1]).order_u64(), Some(2));
        assert_eq!(g.pointwise_stabilizer(&[]).order_u64(), Some(24));
        assert_eq!(g.point_stabilizer(2).order_u64(), Some(6));
        // Orbit–stabilizer: |G_p| · |orbit(p)| = |G|.
        for p in 0..4 {
            let stab = g.point_stabilizer(p);
            assert_eq!(
                stab.order() * BigUint::from(g.orbit(p).len()),
                g.order()
            );
        }
    }

    #[test]
    fn base_prefix_is_respected() {
        let g = PermGroup::with_base_prefix(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]),
                Permutation::from_cycles(4, &[&[0, 1]]),
            ],
            &[2, 0],
        );
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(&g.base()[..2], &[2, 0]);
    }

    #[test]
    fn induced_action_with_kernel() {
        // ⟨(0 1), (2 3)⟩ fixes {0,1} setwise; restricting there has image C2
        // and kernel ⟨(2 3)⟩ of order 2.
        let g = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]),
                Permutation::from_cycles(4, &[&[2, 3]]),
            ],
        );
        assert_eq!(g.order_u64(), Some(4));
        let act = g.induced_action(&[0, 1]).unwrap();
        assert_eq!(act.image.order_u64(), Some(2));
        assert_eq!(act.kernel_order, BigUint::from(2u32));
    }

    #[test]
    fn induced_action_full_domain_is_faithful() {
        let g = s4();
        let act = g.induced_action(&[0, 1, 2, 3]).unwrap();
        assert_eq!(act.image.order_u64(), Some(24));
        assert_eq!(act.kernel_order, BigUint::one());
        let t = PermGroup::trivial(4);
        let act = t.induced_action(&[1, 2]).unwrap();
        assert_eq!(act.image.order_u64(), Some(1));
        assert_eq!(act.kernel_order, BigUint::one());
    }

    #[test]
    fn induced_action_rejects_non_invariant_domain() {
        let err = s4().induced_action(&[0, 1]).unwrap_err();
        assert!(matches!(err, PermGroupError::NotInvariant { .. }));
    }

    #[test]
    fn derived_series_of_s4() {
        let g = s4();
        let d1 = g.derived_subgroup();
        assert_eq!(d1.order_u64(), Some(12)); // A4
        let d2 = d1.derived_subgroup();
        assert_eq!(d2.order_u64(), Some(4)); // Klein four-group
        let d3 = d2.derived_subgroup();
        assert_eq!(d3.order_u64(), Some(1));
    }

    #[test]
    fn normal_closure_of_transposition_in_s4() {
        let g = s4();
        let n = g.normal_closure(&[Permutation::from_cycles(4, &[&[0, 1]])]);
        assert_eq!(n.order_u64(), Some(24));
        let n = g.normal_closure(&[Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])]);
        assert_eq!(n.order_u64(), Some(4));
    }

    #[test]
    fn orbits_partition_the_points() {
        let g = PermGroup::from_generators(
            6,
            vec![Permutation::from_cycles(6, &[&[0, 1, 2], &[4, 5]])],
        );
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
        assert!(!g.is_transitive());
        assert!(s4().is_transitive());
    }

    #[test]
    fn intersection_by_element_listing() {
        // ⟨(0 1 2 3)⟩ ∩ ⟨(0 2), (1 3)⟩ = {e, (0 2)(1 3)}.
        let a = PermGroup::from_generators(4, vec![Permutation::from_cycles(4, &[&[0, 1, 2, 3]])]);
        let b = PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 2]]),
                Permutation::from_cycles(4, &[&[1, 3]]),
            ],
        );
        assert_eq!(a.intersection_order(&b, 100).unwrap(), 2);
    }

    proptest::proptest! {
        /// Subgroups generated by random elements of S5 have order dividing
        /// 120 and contain their generators.
        #[test]
        fn random_subgroups_of_s5(seeds in proptest::collection::vec(0usize..120, 1..4)) {
            // Enumerate S5 deterministically, pick elements by index.
            let s5 = PermGroup::from_generators(5, vec![
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]),
                Permutation::from_cycles(5, &[&[0, 1]]),
            ]);
            let elems = s5.elements(120).unwrap();
            let gens: Vec<Permutation> = seeds.iter().map(|&i| elems[i].clone()).collect();
            let h = PermGroup::from_generators(5, gens.clone());
            let order = h.order_u64().unwrap();
            proptest::prop_assert_eq!(120 % order, 0);
            for g in &gens {
                proptest::prop_assert!(h.contains(g));
            }
            // Orbit–stabilizer at point 0.
            let stab = h.point_stabilizer(0);
            proptest::prop_assert_eq!(
                stab.order_u64().unwrap() * h.orbit(0).len() as u64,
                order
            );
        }
    }
}
