//! Todd–Coxeter coset enumeration.
//!
//! Produces the permutation action of a finitely presented group on the
//! cosets of a finitely generated subgroup. Two strategies are provided:
//! HLT scanning with lookahead (default) and Felsch-style deduction
//! processing; both yield the same compressed, standardized table.

use super::{Presentation, Word};
use crate::perm::Permutation;
use std::collections::BTreeSet;
use thiserror::Error;

const UNDEF: u32 = u32::MAX;

/// Enumeration strategy. Both complete on the same inputs and produce
/// identical standardized tables; HLT with lookahead is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    HltLookahead,
    Felsch,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    /// The enumeration did not complete within the allowed number of live
    /// cosets (the subgroup index exceeds the cap, or is infinite).
    #[error("coset enumeration exceeded {cap} live cosets ({total_defined} cosets defined in total)")]
    CapExceeded { cap: usize, total_defined: usize },
    #[error("coset table is not complete")]
    IncompleteTable,
}

/// A complete coset table: one row per coset, one column per generator and
/// per inverse generator. Coset 0 is the subgroup coset. Tables returned by
/// [`CosetTable::enumerate`] are compressed (no dead rows) and standardized
/// (cosets numbered in first-visit row-major order), so equal actions give
/// byte-equal tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    width: usize,
    cosets: usize,
    entries: Vec<u32>,
    complete: bool,
}

/// Column index for a signed letter: generator `g` ↦ `2g`, inverse ↦ `2g+1`.
fn col_of_letter(l: i32) -> usize {
    debug_assert!(l != 0);
    if l > 0 {
        2 * (l as usize - 1)
    } else {
        2 * ((-l) as usize - 1) + 1
    }
}

fn word_cols(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|&l| col_of_letter(l) as u32).collect()
}

#[inline]
fn inv_col(col: u32) -> u32 {
    col ^ 1
}

enum ScanEnd {
    /// Scan closed (possibly after a coincidence or deduction).
    Complete,
    /// Pure scan left a gap of length ≥ 2.
    Incomplete,
    /// Lookahead freed space; the caller must rescan from a live coset.
    Retry,
    /// Out of space even after lookahead.
    NoSpace,
}

struct Enumerator {
    width: usize,
    cap: usize,
    alloc_budget: usize,
    /// Flattened rows; row `c` occupies `entries[c*width .. (c+1)*width]`.
    entries: Vec<u32>,
    /// Union-find over cosets; `parent[c] == c` iff `c` is live. The smaller
    /// index always survives a merge, so coset 0 is never orphaned.
    parent: Vec<u32>,
    live: usize,
    total: usize,
    /// Relator column-words, kept for lookahead passes.
    rels: Vec<Vec<u32>>,
    /// Deduction stack of (coset, column) pairs; used by the Felsch strategy.
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    lookahead_enabled: bool,
    /// Set when any coincidence occurs; lets Felsch reset its scan pointer.
    merged_since_reset: bool,
}

impl Enumerator {
    fn new(width: usize, cap: usize, rels: Vec<Vec<u32>>) -> Self {
        Enumerator {
            width,
            cap,
            alloc_budget: cap.saturating_mul(16).saturating_add(65_536),
            entries: vec![UNDEF; width],
            parent: vec![0],
            live: 1,
            total: 1,
            rels,
            deductions: Vec::new(),
            track_deductions: false,
            lookahead_enabled: true,
            merged_since_reset: false,
        }
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.entries[c as usize * self.width + col as usize]
    }

    #[inline]
    fn put(&mut self, c: u32, col: u32, d: u32) {
        self.entries[c as usize * self.width + col as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        // Path halving.
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    /// Records the edge `c --col--> d` in both directions.
    fn set(&mut self, c: u32, col: u32, d: u32) {
        debug_assert!(self.get(c, col) == UNDEF || self.get(c, col) == d);
        self.put(c, col, d);
        self.put(d, inv_col(col), c);
        if self.track_deductions {
            self.deductions.push((c, col));
            self.deductions.push((d, inv_col(col)));
        }
    }

    fn try_define(&mut self, c: u32, col: u32) -> ScanEnd {
        if self.total >= self.alloc_budget {
            return ScanEnd::NoSpace;
        }
        if self.live >= self.cap {
            if self.lookahead_enabled && self.lookahead() && self.live < self.cap {
                return ScanEnd::Retry;
            }
            return ScanEnd::NoSpace;
        }
        let d = self.total as u32;
        self.entries.extend(std::iter::repeat_n(UNDEF, self.width));
        self.parent.push(d);
        self.total += 1;
        self.live += 1;
        self.set(c, col, d);
        ScanEnd::Complete
    }

    /// Merges the classes of `a` and `b` (if distinct), enqueueing the dead
    /// coset for edge transfer.
    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.merged_since_reset = true;
        queue.push(kill);
    }

    /// Identifies cosets `a` and `b`, transferring all edges of dead cosets
    /// to their representatives and processing any induced coincidences.
    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut qi = 0;
        while qi < queue.len() {
            let e = queue[qi];
            qi += 1;
            for col in 0..self.width as u32 {
                let f = self.get(e, col);
                if f == UNDEF {
                    continue;
                }
                // Remove the back-pointer so the edge is not transferred twice.
                if self.get(f, inv_col(col)) == e {
                    self.put(f, inv_col(col), UNDEF);
                }
                let mu = self.rep(e);
                let nu = self.rep(f);
                let t = self.get(mu, col);
                if t != UNDEF {
                    self.merge(nu, t, &mut queue);
                } else {
                    let s = self.get(nu, inv_col(col));
                    if s != UNDEF {
                        self.merge(mu, s, &mut queue);
                    } else {
                        self.set(mu, col, nu);
                    }
                }
            }
        }
    }

    /// Scans word `w` (as columns) at coset `c`. With `fill`, gaps of length
    /// ≥ 2 are closed by defining new cosets (HLT); without, such gaps leave
    /// the scan incomplete. Either way a gap of length 1 becomes a deduction
    /// and a closed scan with mismatched ends becomes a coincidence.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> ScanEnd {
        if w.is_empty() {
            return ScanEnd::Complete;
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return ScanEnd::Complete;
            }
            while j > i {
                let t = self.get(b, inv_col(w[j - 1]));
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return ScanEnd::Complete;
            }
            if j - i == 1 {
                self.set(f, w[i], b);
                return ScanEnd::Complete;
            }
            if !fill {
                return ScanEnd::Incomplete;
            }
            match self.try_define(f, w[i]) {
                ScanEnd::Complete => {} // forward scan resumes through the new coset
                other => return other,
            }
        }
    }

    /// Scans every relator at every live coset without defining anything,
    /// harvesting coincidences. Returns true if the live count dropped.
    fn lookahead(&mut self) -> bool {
        let before = self.live;
        let mut c = 0u32;
        while (c as usize) < self.total {
            if self.is_live(c) {
                for ri in 0..self.rels.len() {
                    let w = self.rels[ri].clone();
                    self.scan(c, &w, false);
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
        self.live < before
    }

    /// First live coset with an undefined entry, in row-major order.
    fn first_hole(&self) -> Option<(u32, u32)> {
        for c in 0..self.total as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.width as u32 {
                if self.get(c, col) == UNDEF {
                    return Some((c, col));
                }
            }
        }
        None
    }

    fn cap_error(&self) -> EnumerationError {
        EnumerationError::CapExceeded {
            cap: self.cap,
            total_defined: self.total,
        }
    }

    /// Scans all relators at `c` and fills its row, retrying after
    /// successful lookaheads; used by the HLT strategy.
    fn hlt_process_row(&mut self, c: u32) -> Result<(), EnumerationError> {
        for ri in 0..self.rels.len() {
            loop {
                if !self.is_live(c) {
                    return Ok(());
                }
                let w = self.rels[ri].clone();
                match self.scan(c, &w, true) {
                    ScanEnd::Complete => break,
                    ScanEnd::Retry => continue,
                    ScanEnd::NoSpace => return Err(self.cap_error()),
                    ScanEnd::Incomplete => unreachable!("fill scans never stall"),
                }
            }
        }
        for col in 0..self.width as u32 {
            loop {
                if !self.is_live(c) {
                    return Ok(());
                }
                if self.get(c, col) != UNDEF {
                    break;
                }
                match self.try_define(c, col) {
                    ScanEnd::Complete => break,
                    ScanEnd::Retry => continue,
                    ScanEnd::NoSpace => return Err(self.cap_error()),
                    ScanEnd::Incomplete => unreachable!(),
                }
            }
        }
        Ok(())
    }

    fn run_hlt(&mut self, subgens: &[Vec<u32>]) -> Result<(), EnumerationError> {
        for sg in subgens {
            loop {
                match self.scan(0, sg, true) {
                    ScanEnd::Complete => break,
                    ScanEnd::Retry => continue,
                    ScanEnd::NoSpace => return Err(self.cap_error()),
                    ScanEnd::Incomplete => unreachable!(),
                }
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.total {
            if self.is_live(c) {
                self.hlt_process_row(c)?;
            }
            c += 1;
        }
        // Coincidence processing keeps live rows closed, but sweep defensively
        // until no live row has a hole.
        while let Some((c, _)) = self.first_hole() {
            self.hlt_process_row(c)?;
        }
        Ok(())
    }

    /// Processes queued deductions: each new edge is tested against every
    /// relator rotation beginning with its column.
    fn drain_deductions(&mut self, rots: &[Vec<Vec<u32>>]) {
        while let Some((c, col)) = self.deductions.pop() {
            let c = self.rep(c);
            for w in &rots[col as usize] {
                // Rotations are small; clone to keep the borrow checker happy.
                let w = w.clone();
                self.scan(c, &w, false);
            }
        }
    }

    fn run_felsch(
        &mut self,
        subgens: &[Vec<u32>],
        rots: &[Vec<Vec<u32>>],
    ) -> Result<(), EnumerationError> {
        self.track_deductions = true;
        self.lookahead_enabled = false;
        for sg in subgens {
            match self.scan(0, sg, true) {
                ScanEnd::Complete => {}
                ScanEnd::NoSpace => return Err(self.cap_error()),
                _ => unreachable!(),
            }
            self.drain_deductions(rots);
        }
        // Deterministic definition order: first undefined entry in row-major
        // scan. The pointer restarts after any coincidence.
        let mut c = 0u32;
        let mut col = 0u32;
        loop {
            if self.merged_since_reset {
                self.merged_since_reset = false;
                c = 0;
                col = 0;
            }
            if col as usize >= self.width {
                col = 0;
                c += 1;
            }
            if c as usize >= self.total {
                return Ok(());
            }
            if !self.is_live(c) {
                c += 1;
                col = 0;
                continue;
            }
            if self.get(c, col) != UNDEF {
                col += 1;
                continue;
            }
            match self.try_define(c, col) {
                ScanEnd::Complete => {}
                ScanEnd::NoSpace => return Err(self.cap_error()),
                _ => unreachable!(),
            }
            self.drain_deductions(rots);
        }
    }
}

/// All distinct rotations of the relators and their inverses, grouped by
/// first column; drives Felsch deduction processing.
fn rotation_table(rels: &[Vec<u32>], width: usize) -> Vec<Vec<Vec<u32>>> {
    let mut seen = BTreeSet::new();
    let mut rots: Vec<Vec<Vec<u32>>> = vec![Vec::new(); width];
    for r in rels {
        let inv: Vec<u32> = r.iter().rev().map(|&c| inv_col(c)).collect();
        for base in [r, &inv] {
            for s in 0..base.len() {
                let mut w = base[s..].to_vec();
                w.extend_from_slice(&base[..s]);
                if seen.insert(w.clone()) {
                    let first = w[0] as usize;
                    rots[first].push(w);
                }
            }
        }
    }
    rots
}

impl CosetTable {
    /// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
    ///
    /// Completes with the exact index whenever that index is at most
    /// `max_cosets`; otherwise fails with [`EnumerationError::CapExceeded`].
    /// Deterministic for fixed inputs, and the result is independent of the
    /// strategy and of relator order.
    pub fn enumerate(
        pres: &Presentation,
        subgroup_gens: &[Word],
        max_cosets: usize,
        strategy: Strategy,
    ) -> Result<CosetTable, EnumerationError> {
        assert!(max_cosets >= 1, "max_cosets must be at least 1");
        let ngens = pres.generator_count();
        for w in subgroup_gens {
            if let Some(&g) = w.generators_used().iter().next_back() {
                assert!(g < ngens, "subgroup generator word uses undeclared generator");
            }
        }
        let width = 2 * ngens;
        let mut rels: Vec<Vec<u32>> = pres.relators().iter().map(word_cols).collect();
        // A fixed scan order makes the outcome independent of relator order.
        rels.sort();
        rels.dedup();
        let subs: Vec<Vec<u32>> = subgroup_gens.iter().map(word_cols).collect();

        let rots = match strategy {
            Strategy::Felsch => rotation_table(&rels, width),
            Strategy::HltLookahead => Vec::new(),
        };
        let mut e = Enumerator::new(width, max_cosets, rels);
        match strategy {
            Strategy::HltLookahead => e.run_hlt(&subs)?,
            Strategy::Felsch => e.run_felsch(&subs, &rots)?,
        }

        // Compress: renumber live cosets in increasing order.
        let mut new_of_old = vec![UNDEF; e.total];
        let mut n = 0u32;
        for c in 0..e.total as u32 {
            if e.is_live(c) {
                new_of_old[c as usize] = n;
                n += 1;
            }
        }
        let count = n as usize;
        let mut entries = vec![UNDEF; count * width];
        for c in 0..e.total as u32 {
            if !e.is_live(c) {
                continue;
            }
            for col in 0..width {
                let d = e.get(c, col as u32);
                debug_assert!(d != UNDEF, "complete table has no holes");
                let d = e.rep(d);
                entries[new_of_old[c as usize] as usize * width + col] =
                    new_of_old[d as usize];
            }
        }
        let mut table = CosetTable {
            ngens,
            width,
            cosets: count,
            entries,
            complete: true,
        };
        table.standardize();
        debug_assert!(table.check_symmetry());
        Ok(table)
    }

    /// Renumbers cosets in first-visit order of a row-major sweep, making the
    /// table canonical for its action. Idempotent.
    fn standardize(&mut self) {
        standardize_entries(self.cosets, self.width, &mut self.entries);
    }

    fn check_symmetry(&self) -> bool {
        (0..self.cosets).all(|c| {
            (0..self.width).all(|col| {
                let d = self.entries[c * self.width + col] as usize;
                self.entries[d * self.width + (col ^ 1)] as usize == c
            })
        })
    }

    pub fn coset_count(&self) -> usize {
        self.cosets
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Image of `coset` under a signed letter (`g+1` or `-(g+1)`), or `None`
    /// if undefined.
    pub fn entry(&self, coset: usize, letter: i32) -> Option<usize> {
        assert!(coset < self.cosets);
        assert!(letter != 0 && letter.unsigned_abs() as usize <= self.ngens);
        let e = self.entries[coset * self.width + col_of_letter(letter)];
        (e != UNDEF).then_some(e as usize)
    }

    /// Traces `word` from `start`; `None` if any step is undefined.
    pub fn trace(&self, start: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(start, |c, &l| self.entry(c, l))
    }

    /// One permutation of the cosets per generator; the group they generate
    /// is the image of the presented group in this coset action.
    pub fn to_perms(&self) -> Result<Vec<Permutation>, EnumerationError> {
        table_to_perms(self)
    }

    /// One representative word per coset, read off a breadth-first spanning
    /// tree from coset 0 (so `element_words()[0]` is empty and, for the table
    /// of the trivial subgroup, the words enumerate the group elements).
    pub fn element_words(&self) -> Result<Vec<Word>, EnumerationError> {
        if !self.complete {
            return Err(EnumerationError::IncompleteTable);
        }
        let mut words: Vec<Option<Word>> = vec![None; self.cosets];
        words[0] = Some(Word::identity());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for g in 0..self.ngens {
                for letter in [g as i32 + 1, -(g as i32 + 1)] {
                    let d = self.entry(c, letter).unwrap();
                    if words[d].is_none() {
                        let w = words[c].as_ref().unwrap().concat(&Word::from_letters(&[letter]));
                        words[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        Ok(words.into_iter().map(|w| w.unwrap()).collect())
    }
}

/// Renumbers the points of a complete transitive table in first-visit order
/// of a row-major sweep from point 0; the result is canonical for the action
/// with distinguished base point 0.
pub(crate) fn standardize_entries(cosets: usize, width: usize, entries: &mut Vec<u32>) {
    if cosets == 0 || width == 0 {
        return;
    }
    let mut new_of_old = vec![UNDEF; cosets];
    let mut order = Vec::with_capacity(cosets);
    new_of_old[0] = 0;
    order.push(0u32);
    let mut qi = 0;
    while qi < order.len() {
        let c = order[qi] as usize;
        qi += 1;
        for col in 0..width {
            let d = entries[c * width + col] as usize;
            if new_of_old[d] == UNDEF {
                new_of_old[d] = order.len() as u32;
                order.push(d as u32);
            }
        }
    }
    debug_assert_eq!(order.len(), cosets, "action is transitive");
    let mut renumbered = vec![UNDEF; cosets * width];
    for (new_c, &old_c) in order.iter().enumerate() {
        for col in 0..width {
            let old_d = entries[old_c as usize * width + col];
            renumbered[new_c * width + col] = new_of_old[old_d as usize];
        }
    }
    *entries = renumbered;
}

/// See [`CosetTable::to_perms`].
pub fn table_to_perms(table: &CosetTable) -> Result<Vec<Permutation>, EnumerationError> {
    if !table.complete {
        return Err(EnumerationError::IncompleteTable);
    }
    Ok((0..table.ngens)
        .map(|g| {
            Permutation::from_images(
                (0..table.cosets)
                    .map(|c| table.entries[c * table.width + 2 * g])
                    .collect(),
            )
        })
        .collect())
}
