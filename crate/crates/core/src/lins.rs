//! Low-index *normal* subgroup search: enumerate every normal subgroup of a
//! finitely presented group up to a given index, each returned as the regular
//! action of the corresponding quotient.
//!
//! The search backtracks over partial coset tables (cosets of the subgroup,
//! with coset 0 the subgroup itself). Two propagation engines run on every
//! new table entry:
//!
//! * relator scanning (as in Felsch-style coset enumeration), except that a
//!   closed scan with mismatched ends is a contradiction — cosets are never
//!   merged, the branch is abandoned instead;
//! * *left-multiplication* tables λ_s, one per signed generator, with
//!   λ_s(0) = T(0,s) and the commutation law λ_s(T(c,y)) = T(λ_s(c),y).
//!   Left and right multiplication commute in any group, and a complete
//!   table admits such maps exactly when the stabilizer of coset 0 is
//!   normal; enforcing them during the search prunes non-normal branches
//!   early.
//!
//! Branching always fills the first undefined entry in row-major order,
//! trying existing cosets in increasing order and a fresh coset last. This
//! makes every completed table standardized (cosets numbered in first-use
//! row-major order), so each normal subgroup is produced exactly once and
//! the emitted record list is canonical.

use crate::fpgroup::{Presentation, Word};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;
use std::collections::VecDeque;
use std::rc::Rc;
use thiserror::Error;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinsError {
    /// The backtracking search hit its node budget; results so far are
    /// discarded rather than silently truncated.
    #[error("normal subgroup search exceeded {budget} nodes ({records_found} quotients found, maximum degree reached {max_degree})")]
    SearchBudgetExceeded {
        budget: u64,
        records_found: usize,
        max_degree: usize,
    },
}

/// One normal subgroup of index `degree`, as the regular action of its
/// quotient: `generator_perms[g]` is right multiplication by the image of
/// generator `g` on the cosets, with coset 0 the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRecord {
    pub degree: usize,
    pub generator_perms: Vec<Permutation>,
    /// Serialization of the standardized table; equal keys ⇔ equal records.
    pub canonical_key: Vec<u8>,
}

impl QuotientRecord {
    /// Evaluates a word to its permutation in this quotient action.
    pub fn eval(&self, word: &Word) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for &l in word.letters() {
            let g = l.unsigned_abs() as usize - 1;
            assert!(g < self.generator_perms.len(), "word uses undeclared generator");
            if l > 0 {
                p = p.compose(&self.generator_perms[g]);
            } else {
                p = p.compose(&self.generator_perms[g].inverse());
            }
        }
        p
    }

    /// The subgroup of the quotient generated by the evaluated words.
    pub fn image_subgroup(&self, words: &[Word]) -> PermGroup {
        let gens = words.iter().map(|w| self.eval(w)).collect();
        PermGroup::from_generators(self.degree, gens)
    }

    /// Text form: degree, then one image permutation per generator in cycle
    /// notation, one per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for p in &self.generator_perms {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }
}

/// See [`QuotientRecord::image_subgroup`].
pub fn image_subgroup(q: &QuotientRecord, words: &[Word]) -> PermGroup {
    q.image_subgroup(words)
}

/// A complete coset table of one subgroup of index `index`, as the
/// permutation action of the presented group's generators on its cosets
/// (coset 0 is the subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupTable {
    pub index: usize,
    pub generator_perms: Vec<Permutation>,
}

impl SubgroupTable {
    /// Evaluates a word to its permutation on the cosets.
    pub fn eval(&self, word: &Word) -> Permutation {
        let mut p = Permutation::identity(self.index);
        for &l in word.letters() {
            let g = l.unsigned_abs() as usize - 1;
            assert!(g < self.generator_perms.len(), "word uses undeclared generator");
            if l > 0 {
                p = p.compose(&self.generator_perms[g]);
            } else {
                p = p.compose(&self.generator_perms[g].inverse());
            }
        }
        p
    }
}

/// The regular action of the group generated by `generator_perms` (i.e. of
/// the quotient of the acting group by the kernel of this action), as a
/// [`QuotientRecord`] byte-identical to the one [`normal_quotients`] emits
/// for the same kernel. `None` when the group's order exceeds `max_order`.
pub fn regular_quotient_record(
    generator_perms: &[Permutation],
    max_order: u64,
) -> Option<QuotientRecord> {
    let degree = generator_perms
        .first()
        .map(|p| p.degree())
        .unwrap_or(1);
    let image = PermGroup::from_generators(degree, generator_perms.to_vec());
    let q = image.order_u64()?;
    if q > max_order {
        return None;
    }
    let elems = image
        .elements(q as usize)
        .expect("element count equals the verified order");
    let index: std::collections::HashMap<&[u32], u32> = elems
        .iter()
        .enumerate()
        .map(|(i, e)| (e.images(), i as u32))
        .collect();
    let ngens = generator_perms.len();
    let width = 2 * ngens;
    let q = q as usize;
    let mut entries = vec![UNDEF; q * width];
    for (i, e) in elems.iter().enumerate() {
        for (g, gen) in generator_perms.iter().enumerate() {
            let j = index[e.compose(gen).images()];
            entries[i * width + 2 * g] = j;
            entries[j as usize * width + 2 * g + 1] = i as u32;
        }
    }
    crate::fpgroup::standardize_entries(q, width, &mut entries);
    let regular: Vec<Permutation> = (0..ngens)
        .map(|g| {
            Permutation::from_images((0..q).map(|c| entries[c * width + 2 * g]).collect())
        })
        .collect();
    let mut canonical_key = Vec::with_capacity(4 + 4 * q * ngens);
    canonical_key.extend_from_slice(&(q as u32).to_le_bytes());
    for p in &regular {
        for &im in p.images() {
            canonical_key.extend_from_slice(&im.to_le_bytes());
        }
    }
    Some(QuotientRecord {
        degree: q,
        generator_perms: regular,
        canonical_key,
    })
}

/// Enumerates all normal subgroups of index ≤ `max_index` with the default
/// node budget of 10⁹.
pub fn normal_quotients(
    pres: &Presentation,
    max_index: usize,
) -> Result<Vec<QuotientRecord>, LinsError> {
    normal_quotients_with_budget(pres, max_index, 1_000_000_000)
}

/// As [`normal_quotients`] with an explicit node budget (one node per
/// branching decision tried).
///
/// The result is complete (one record per normal subgroup, none missed),
/// duplicate-free, and sorted by (degree, canonical_key); the list for a
/// smaller `max_index` is a prefix of the list for a larger one.
pub fn normal_quotients_with_budget(
    pres: &Presentation,
    max_index: usize,
    node_budget: u64,
) -> Result<Vec<QuotientRecord>, LinsError> {
    normal_quotients_excluding(pres, max_index, node_budget, &[])
}

/// Enumerates the normal subgroups of index ≤ `max_index` that contain none
/// of the `excluded` words.
///
/// Exclusion is the natural fit for quotient hunts where designated
/// subgroups must survive: listing the nontrivial elements of a finite
/// subgroup H as excluded words restricts the search to quotients where H
/// embeds. Because the subgroup is normal, a word lies in it exactly when it
/// fixes coset 0 of the regular action, so each exclusion is a cheap trace
/// check that prunes collapsing branches near the root of the search tree.
pub fn normal_quotients_excluding(
    pres: &Presentation,
    max_index: usize,
    node_budget: u64,
    excluded: &[Word],
) -> Result<Vec<QuotientRecord>, LinsError> {
    run_search(pres, max_index, node_budget, excluded, &[], Mode::Normal)
}

/// Enumerates the distinct groups `U/core(E)` over all subgroups `E` of
/// index ≤ `max_index` that contain every `seed` word and none of the
/// `excluded` words, keeping only quotients of order ≤ `max_quotient_order`.
/// Records are regular actions exactly as produced by [`normal_quotients`],
/// deduplicated and sorted by (degree, canonical_key).
///
/// This reaches normal subgroups far beyond what a regular-action search can
/// afford whenever each interesting quotient is known to act faithfully on
/// the cosets of a small subgroup containing the seed. A quotient that acts
/// faithfully and transitively with point stabilizer S appears here as the
/// core of the preimage E of S, at index |quotient|/|S| rather than degree
/// |quotient|.
pub fn core_quotients_over(
    pres: &Presentation,
    seed: &[Word],
    max_index: usize,
    max_quotient_order: u64,
    node_budget: u64,
    excluded: &[Word],
) -> Result<Vec<QuotientRecord>, LinsError> {
    run_search(
        pres,
        max_index,
        node_budget,
        excluded,
        seed,
        Mode::Core {
            max_order: max_quotient_order,
        },
    )
}

/// Enumerates the complete coset tables of every subgroup of index ≤
/// `max_index` that contains all `seed` words and none of the `excluded`
/// words, sorted by (index, table bytes).
///
/// This is the raw subgroup search behind [`core_quotients_over`]; callers
/// that need the actions themselves (for instance to combine two cosets
/// spaces into one structure) use it directly.
pub fn subgroup_tables_over(
    pres: &Presentation,
    seed: &[Word],
    max_index: usize,
    node_budget: u64,
    excluded: &[Word],
) -> Result<Vec<SubgroupTable>, LinsError> {
    let mut search = make_search(pres, max_index, node_budget, excluded, seed, Mode::Tables);
    if search.settle() {
        search.dfs()?;
    }
    let mut out = std::mem::take(&mut search.out_tables);
    out.sort_by(|a, b| (a.index, &a.generator_perms).cmp(&(b.index, &b.generator_perms)));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Enumerate regular actions directly: left-multiplication constraints
    /// prune non-normal branches, every completed table is one subgroup.
    Normal,
    /// Enumerate coset tables of arbitrary subgroups over the seed, emitting
    /// the regular action of the image group of each (deduplicated).
    Core { max_order: u64 },
    /// Enumerate coset tables of arbitrary subgroups over the seed, emitting
    /// the tables themselves.
    Tables,
}

fn make_search(
    pres: &Presentation,
    max_index: usize,
    node_budget: u64,
    excluded: &[Word],
    seed: &[Word],
    mode: Mode,
) -> Search {
    assert!(max_index >= 1, "max_index must be at least 1");
    let width = 2 * pres.generator_count();
    let to_cols = |w: &Word| -> Vec<u32> {
        w.letters().iter().map(|&l| col_of_letter(l)).collect()
    };
    let excluded_cols: Vec<Vec<u32>> = excluded
        .iter()
        .filter(|w| !w.is_empty())
        .map(to_cols)
        .collect();
    let seed_cols: Vec<Vec<u32>> = seed.iter().filter(|w| !w.is_empty()).map(to_cols).collect();
    Search {
        width,
        max_n: max_index,
        ngens: pres.generator_count(),
        mode,
        table: vec![UNDEF; width],
        lam: vec![UNDEF; width],
        n: 1,
        rot_by_first: Rc::new(rotation_table(pres, width)),
        excluded_cols,
        seed_cols: Rc::new(seed_cols),
        trail: Vec::new(),
        queue: VecDeque::new(),
        nodes: 0,
        budget: node_budget,
        out: Vec::new(),
        out_tables: Vec::new(),
    }
}

fn run_search(
    pres: &Presentation,
    max_index: usize,
    node_budget: u64,
    excluded: &[Word],
    seed: &[Word],
    mode: Mode,
) -> Result<Vec<QuotientRecord>, LinsError> {
    let mut search = make_search(pres, max_index, node_budget, excluded, seed, mode);
    if search.settle() {
        search.dfs()?;
    }
    let mut out = std::mem::take(&mut search.out);
    out.sort_by(|a, b| (a.degree, &a.canonical_key).cmp(&(b.degree, &b.canonical_key)));
    if matches!(mode, Mode::Core { .. }) {
        out.dedup_by(|a, b| a.canonical_key == b.canonical_key);
    } else {
        debug_assert!(out.windows(2).all(|w| w[0].canonical_key != w[1].canonical_key));
    }
    Ok(out)
}

fn col_of_letter(l: i32) -> u32 {
    if l > 0 {
        2 * (l as u32 - 1)
    } else {
        2 * ((-l) as u32 - 1) + 1
    }
}

#[inline]
fn inv_col(col: u32) -> u32 {
    col ^ 1
}

/// All distinct rotations of the relators and their inverses, grouped by
/// first column.
fn rotation_table(pres: &Presentation, width: usize) -> Vec<Vec<Vec<u32>>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut rots: Vec<Vec<Vec<u32>>> = vec![Vec::new(); width];
    for r in pres.relators() {
        let cols: Vec<u32> = r.letters().iter().map(|&l| col_of_letter(l)).collect();
        let inv: Vec<u32> = cols.iter().rev().map(|&c| inv_col(c)).collect();
        for base in [&cols, &inv] {
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

#[derive(Clone, Copy)]
enum Fact {
    /// Table entry (coset, column) became defined.
    Right(u32, u32),
    /// Left-multiplication entry λ_col(coset) became defined.
    Left(u32, u32),
}

/// Undo log entry: a cell index that was written (in the table or in λ).
enum TrailOp {
    RightCell(usize),
    LeftCell(usize),
}

struct Search {
    width: usize,
    ngens: usize,
    max_n: usize,
    mode: Mode,
    /// Partial coset table, `table[c*width + col]`.
    table: Vec<u32>,
    /// Partial left-multiplication maps, `lam[c*width + s] = λ_s(c)`, with
    /// the pairing invariant `λ_s(c) = c' ⇔ λ_{s⁻¹}(c') = c`. Unused in
    /// core mode.
    lam: Vec<u32>,
    n: usize,
    rot_by_first: Rc<Vec<Vec<Vec<u32>>>>,
    /// Column sequences of words that must not fix coset 0.
    excluded_cols: Vec<Vec<u32>>,
    /// Column sequences of words that must fix coset 0.
    seed_cols: Rc<Vec<Vec<u32>>>,
    trail: Vec<TrailOp>,
    queue: VecDeque<Fact>,
    nodes: u64,
    budget: u64,
    out: Vec<QuotientRecord>,
    out_tables: Vec<SubgroupTable>,
}

impl Search {
    #[inline]
    fn t(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.width + col as usize]
    }

    #[inline]
    fn l(&self, c: u32, s: u32) -> u32 {
        self.lam[c as usize * self.width + s as usize]
    }

    /// Records `T(c,col) = d` (and its mirror); false on conflict. Also seeds
    /// λ at coset 0: T(0,s) = d means λ_s(0) = d.
    fn set_right(&mut self, c: u32, col: u32, d: u32) -> bool {
        let i1 = c as usize * self.width + col as usize;
        let existing = self.table[i1];
        if existing != UNDEF {
            return existing == d;
        }
        let i2 = d as usize * self.width + inv_col(col) as usize;
        if self.table[i2] != UNDEF {
            // Column injectivity: some other coset already maps to d.
            return false;
        }
        self.table[i1] = d;
        self.table[i2] = c;
        self.trail.push(TrailOp::RightCell(i1));
        self.trail.push(TrailOp::RightCell(i2));
        self.queue.push_back(Fact::Right(c, col));
        self.queue.push_back(Fact::Right(d, inv_col(col)));
        if self.mode == Mode::Normal {
            if c == 0 && !self.set_left(col, 0, d) {
                return false;
            }
            if d == 0 && !self.set_left(inv_col(col), 0, c) {
                return false;
            }
        }
        true
    }

    /// Records `λ_s(c) = d` (and its mirror); false on conflict.
    fn set_left(&mut self, s: u32, c: u32, d: u32) -> bool {
        let i1 = c as usize * self.width + s as usize;
        let existing = self.lam[i1];
        if existing != UNDEF {
            return existing == d;
        }
        let i2 = d as usize * self.width + inv_col(s) as usize;
        if self.lam[i2] != UNDEF {
            return false; // λ_s would not be injective
        }
        self.lam[i1] = d;
        self.lam[i2] = c;
        self.trail.push(TrailOp::LeftCell(i1));
        self.trail.push(TrailOp::LeftCell(i2));
        self.queue.push_back(Fact::Left(s, c));
        self.queue.push_back(Fact::Left(inv_col(s), d));
        true
    }

    /// Enforces the square λ_s(T(c,y)) = T(λ_s(c),y) as far as its corners
    /// are known; false on contradiction.
    fn closure(&mut self, c: u32, y: u32, s: u32) -> bool {
        let a = self.t(c, y);
        let b = self.l(c, s);
        match (a != UNDEF, b != UNDEF) {
            (true, true) => {
                let r2 = self.t(b, y);
                let l2 = self.l(a, s);
                match (r2 != UNDEF, l2 != UNDEF) {
                    (true, true) => r2 == l2,
                    (true, false) => self.set_left(s, a, r2),
                    (false, true) => self.set_right(b, y, l2),
                    (false, false) => true,
                }
            }
            (true, false) => {
                // b unknown, but T(b,y) = λ_s(a) pins it down once both that
                // value and its y-preimage are known.
                let l2 = self.l(a, s);
                if l2 != UNDEF {
                    let bb = self.t(l2, inv_col(y));
                    if bb != UNDEF {
                        return self.set_left(s, c, bb);
                    }
                }
                true
            }
            (false, true) => {
                let r2 = self.t(b, y);
                if r2 != UNDEF {
                    let aa = self.l(r2, inv_col(s));
                    if aa != UNDEF {
                        return self.set_right(c, y, aa);
                    }
                }
                true
            }
            (false, false) => true,
        }
    }

    /// Pure scan of a relator rotation at `c`: complete scans must close up
    /// (mismatch is a contradiction, not a coincidence), a gap of one becomes
    /// a deduction, larger gaps wait.
    fn scan(&mut self, c: u32, w: &[u32]) -> bool {
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = w.len();
        while i < j {
            let t = self.t(f, w[i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == j {
            return f == b;
        }
        while j > i {
            let t = self.t(b, inv_col(w[j - 1]));
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if i == j {
            return f == b;
        }
        if j - i == 1 {
            return self.set_right(f, w[i], b);
        }
        true
    }

    /// Drains the fact queue, propagating relator scans and commutation
    /// squares; false on contradiction.
    fn propagate(&mut self) -> bool {
        while let Some(fact) = self.queue.pop_front() {
            match fact {
                Fact::Right(c, y) => {
                    let rots = Rc::clone(&self.rot_by_first);
                    for w in &rots[y as usize] {
                        if !self.scan(c, w) {
                            return false;
                        }
                    }
                    if self.mode != Mode::Normal {
                        continue;
                    }
                    for s in 0..self.width as u32 {
                        if !self.closure(c, y, s) {
                            return false;
                        }
                        let e = self.l(c, inv_col(s));
                        if e != UNDEF && !self.closure(e, y, s) {
                            return false;
                        }
                    }
                }
                Fact::Left(s, c) => {
                    for y in 0..self.width as u32 {
                        if !self.closure(c, y, s) {
                            return false;
                        }
                        let e = self.t(c, inv_col(y));
                        if e != UNDEF && !self.closure(e, y, s) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// First undefined table entry in row-major order.
    fn first_hole(&self) -> Option<(u32, u32)> {
        for c in 0..self.n as u32 {
            for col in 0..self.width as u32 {
                if self.t(c, col) == UNDEF {
                    return Some((c, col));
                }
            }
        }
        None
    }

    /// Runs propagation and seed-word scans at coset 0 to a joint fixpoint;
    /// false on contradiction.
    fn settle(&mut self) -> bool {
        loop {
            if !self.propagate() {
                return false;
            }
            let before = self.trail.len();
            let seeds = Rc::clone(&self.seed_cols);
            for w in seeds.iter() {
                if !self.scan(0, w) {
                    return false;
                }
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    /// True when some excluded word provably traces 0 back to 0.
    fn excluded_word_collapses(&self) -> bool {
        'words: for w in &self.excluded_cols {
            let mut f = 0u32;
            for &y in w {
                f = self.t(f, y);
                if f == UNDEF {
                    continue 'words;
                }
            }
            if f == 0 {
                return true;
            }
        }
        false
    }

    fn dfs(&mut self) -> Result<(), LinsError> {
        if self.excluded_word_collapses() {
            return Ok(());
        }
        let Some((c, col)) = self.first_hole() else {
            self.emit();
            return Ok(());
        };
        let n0 = self.n as u32;
        for cand in 0..=n0 {
            let is_new = cand == n0;
            if is_new && self.n >= self.max_n {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(LinsError::SearchBudgetExceeded {
                    budget: self.budget,
                    records_found: self.out.len(),
                    max_degree: self.out.iter().map(|r| r.degree).max().unwrap_or(0),
                });
            }
            let trail_mark = self.trail.len();
            if is_new {
                self.n += 1;
                self.table.extend(std::iter::repeat_n(UNDEF, self.width));
                self.lam.extend(std::iter::repeat_n(UNDEF, self.width));
            }
            if self.set_right(c, col, cand) && self.settle() {
                self.dfs()?;
            }
            // Undo: clear the queue, rewind cell writes, drop a fresh row.
            self.queue.clear();
            while self.trail.len() > trail_mark {
                match self.trail.pop().unwrap() {
                    TrailOp::RightCell(i) => self.table[i] = UNDEF,
                    TrailOp::LeftCell(i) => self.lam[i] = UNDEF,
                }
            }
            if is_new {
                self.n -= 1;
                self.table.truncate(self.n * self.width);
                self.lam.truncate(self.n * self.width);
            }
        }
        Ok(())
    }

    /// Extracts the generator permutations of the current complete table.
    fn table_perms(&self) -> Vec<Permutation> {
        (0..self.ngens)
            .map(|g| {
                Permutation::from_images(
                    (0..self.n).map(|c| self.t(c as u32, 2 * g as u32)).collect(),
                )
            })
            .collect()
    }

    /// Called on a complete table.
    fn emit(&mut self) {
        debug_assert!(self.relators_hold());
        match self.mode {
            Mode::Normal => self.emit_normal(),
            Mode::Core { max_order } => {
                if let Some(rec) = regular_quotient_record(&self.table_perms(), max_order) {
                    self.out.push(rec);
                }
            }
            Mode::Tables => {
                let table = SubgroupTable {
                    index: self.n,
                    generator_perms: self.table_perms(),
                };
                self.out_tables.push(table);
            }
        }
    }

    /// Verify normality of the stabilizer of 0 directly (build each
    /// left-multiplication permutation from scratch and check it commutes
    /// with the table everywhere), then emit the regular action as-is.
    fn emit_normal(&mut self) {
        let n = self.n;
        for s in 0..self.width as u32 {
            // λ_s(0) = T(0,s); extend along the table and verify globally.
            let mut lamper = vec![UNDEF; n];
            lamper[0] = self.t(0, s);
            let mut stack = vec![0u32];
            while let Some(cc) = stack.pop() {
                for y in 0..self.width as u32 {
                    let d = self.t(cc, y);
                    let image = self.t(lamper[cc as usize], y);
                    if lamper[d as usize] == UNDEF {
                        lamper[d as usize] = image;
                        stack.push(d);
                    } else if lamper[d as usize] != image {
                        return; // stabilizer of 0 is not normal
                    }
                }
            }
        }
        let generator_perms = self.table_perms();
        let mut canonical_key = Vec::with_capacity(4 + 4 * n * self.ngens);
        canonical_key.extend_from_slice(&(n as u32).to_le_bytes());
        for p in &generator_perms {
            for &im in p.images() {
                canonical_key.extend_from_slice(&im.to_le_bytes());
            }
        }
        self.out.push(QuotientRecord {
            degree: n,
            generator_perms,
            canonical_key,
        });
    }

    fn relators_hold(&self) -> bool {
        (0..self.n as u32).all(|c| {
            self.rot_by_first.iter().flatten().all(|w| {
                let mut f = c;
                for &y in w {
                    f = self.t(f, y);
                }
                f == c
            })
        })
    }
}
