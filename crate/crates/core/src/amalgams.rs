//! The nineteen amalgams of index (3, 4) with trivial edge kernel.
//!
//! Each record holds a presentation of the universal group together with the
//! two vertex groups `L` (trivalent side) and `R` (tetravalent side) and
//! their shared edge group `B = L ∩ R`. The side and edge groups are
//! generated by subsets of the ambient generators, so their elements can be
//! written as words in the ambient alphabet.
//!
//! `validate` reconstructs everything from the presentations and checks the
//! defining side conditions: declared orders, indices [L:B] = 3 and
//! [R:B] = 4, faithfulness (no nontrivial subgroup of B normal in both
//! sides), triviality of core_L(B) ∩ core_R(B), and isomorphism-type
//! identification of all three groups.

use crate::fpgroup::{Presentation, Word};
use crate::perm::Permutation;
use crate::permgroup::{canonical_name, fingerprint, identify, orbit_of, regular_group, PermGroup};
use std::collections::HashMap;

/// Which vertex group of an amalgam: the trivalent or the tetravalent side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Orders and isomorphism-type names a record claims for (L, B, R).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclaredShape {
    pub orders: (u64, u64, u64),
    pub names: (&'static str, &'static str, &'static str),
}

/// One amalgam: the universal group with its vertex-group and edge-group data.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub id: usize,
    /// Presentation of the universal group.
    pub universal: Presentation,
    /// Generator words of the trivalent-side vertex group, in the ambient alphabet.
    pub l_words: Vec<Word>,
    /// Generator words of the edge group, in the ambient alphabet.
    pub b_words: Vec<Word>,
    /// Generator words of the tetravalent-side vertex group, in the ambient alphabet.
    pub r_words: Vec<Word>,
    /// Presentation of the trivalent-side vertex group on its own generators.
    pub l_pres: Presentation,
    /// Presentation of the tetravalent-side vertex group on its own generators.
    pub r_pres: Presentation,
    pub declared: DeclaredShape,
}

/// Validation outcome; passes iff `discrepancies` is empty.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub id: usize,
    pub computed_orders: (u64, u64, u64),
    pub computed_names: (String, String, String),
    pub faithful: bool,
    pub trivial_edge_kernel: bool,
    pub discrepancies: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Raw tabulated data: (universal, (l_name, l_pres), (r_name, r_pres),
/// border generator names, border name, declared orders).
type Raw = (
    &'static str,
    (&'static str, &'static str),
    (&'static str, &'static str),
    &'static [&'static str],
    &'static str,
    (u64, u64, u64),
);

const RAW: [Raw; 19] = [
    (
        "gens: a c ; rels: a^3 c^4",
        ("C3", "gens: a ; rels: a^3"),
        ("C4", "gens: c ; rels: c^4"),
        &[],
        "1",
        (3, 1, 4),
    ),
    (
        "gens: a x y ; rels: a^3 x^2 y^2 [x,y]",
        ("C3", "gens: a ; rels: a^3"),
        ("C2^2", "gens: x y ; rels: x^2 y^2 [x,y]"),
        &[],
        "1",
        (3, 1, 4),
    ),
    (
        "gens: a b c ; rels: a^3 b^2 c^4 [a,b] (b*c)^2",
        ("C6", "gens: a b ; rels: a^3 b^2 [a,b]"),
        ("D4", "gens: b c ; rels: b^2 c^4 (b*c)^2"),
        &["b"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: a b c ; rels: a^3 b^2 c^4 (a*b)^2 (b*c)^2",
        ("S3", "gens: a b ; rels: a^3 b^2 (a*b)^2"),
        ("D4", "gens: b c ; rels: b^2 c^4 (b*c)^2"),
        &["b"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: a c x y ; rels: a^9 c^3 x^2 y^2 a^3=c [x,y] x^c=y y^c=x*y",
        ("C9", "gens: a c ; rels: a^9 c^3 a^3=c"),
        ("A4", "gens: c x y ; rels: c^3 x^2 y^2 [x,y] x^c=y y^c=x*y"),
        &["c"],
        "C3",
        (9, 3, 12),
    ),
    (
        "gens: a c x y ; rels: a^3 c^3 x^2 y^2 [a,c] [x,y] x^c=y y^c=x*y",
        ("C3xC3", "gens: a c ; rels: a^3 c^3 [a,c]"),
        ("A4", "gens: c x y ; rels: c^3 x^2 y^2 [x,y] x^c=y y^c=x*y"),
        &["c"],
        "C3",
        (9, 3, 12),
    ),
    (
        // The first relator is a⁹, not the a³ printed in some copies of the
        // table: with a³ the side relation a³ = c collapses c and |L| drops
        // to 6, contradicting the declared dihedral group of order 18 (see
        // the negative test below).
        "gens: a b c x y ; rels: a^9 b^2 c^3 x^2 y^2 a^3=c (a*b)^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y",
        ("D9", "gens: a b c ; rels: a^9 b^2 c^3 a^3=c (a*b)^2 (b*c)^2"),
        ("S4", "gens: b c x y ; rels: b^2 c^3 x^2 y^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y"),
        &["b", "c"],
        "S3",
        (18, 6, 24),
    ),
    (
        "gens: a b c x y ; rels: a^3 b^2 c^3 x^2 y^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y [a,c] (a*b)^2",
        ("GenDih(C3xC3)", "gens: a b c ; rels: a^3 b^2 c^3 (b*c)^2 [a,c] (a*b)^2"),
        ("S4", "gens: b c x y ; rels: b^2 c^3 x^2 y^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y"),
        &["b", "c"],
        "S3",
        (18, 6, 24),
    ),
    (
        "gens: a b c x y ; rels: a^3 b^2 c^3 x^2 y^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y [a,c] [a,b]",
        ("C3:C6", "gens: a b c ; rels: a^3 b^2 c^3 (b*c)^2 [a,c] [a,b]"),
        ("S4", "gens: b c x y ; rels: b^2 c^3 x^2 y^2 [x,y] (b*c)^2 x^c=y y^c=x*y x^b=y"),
        &["b", "c"],
        "S3",
        (18, 6, 24),
    ),
    (
        "gens: c d x y ; rels: c^3 d^2 x^2 y^2 (c*d)^2 [d,x] [d,y] [x,y]",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("C2^3", "gens: d x y ; rels: d^2 x^2 y^2 [d,x] [d,y] [x,y]"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: c d x ; rels: c^3 d^2 x^4 (c*d)^2 [x,d]",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("C4xC2", "gens: d x ; rels: d^2 x^4 [x,d]"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: c d x y ; rels: c^3 d^2 x^4 y^2 (c*d)^2 x^2=d [x,y]",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("C4xC2", "gens: d x y ; rels: d^2 x^4 y^2 x^2=d [x,y]"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: c d x ; rels: c^3 d^2 x^8 (c*d)^2 x^4=d",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("C8", "gens: d x ; rels: d^2 x^8 x^4=d"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: c d x y ; rels: c^3 d^2 x^4 y^2 (c*d)^2 x^2=d (x*y)^2",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("D4", "gens: d x y ; rels: d^2 x^4 y^2 x^2=d (x*y)^2"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: c d x y ; rels: c^3 d^2 x^4 y^4 (c*d)^2 x^2=d y^2=d [x,y]=d",
        ("S3", "gens: c d ; rels: c^3 d^2 (c*d)^2"),
        ("Q", "gens: d x y ; rels: d^2 x^4 y^4 x^2=d y^2=d [x,y]=d"),
        &["d"],
        "C2",
        (6, 2, 8),
    ),
    (
        "gens: a c d x y ; rels: a^3 c^3 d^2 x^2 y^2 (d*c)^2 [a,c] [a,d] [d,x] [d,y] [x,y] x^a=y y^a=x*y",
        ("C3xS3", "gens: a c d ; rels: a^3 c^3 d^2 (d*c)^2 [a,c] [a,d]"),
        ("C2xA4", "gens: a d x y ; rels: a^3 d^2 x^2 y^2 [a,d] [d,x] [d,y] [x,y] x^a=y y^a=x*y"),
        &["a", "d"],
        "C6",
        (18, 6, 24),
    ),
    (
        "gens: a c d x y ; rels: a^3 c^3 d^2 x^4 y^4 (d*c)^2 [a,c] [a,d] x^2=d y^2=d [x,y]=d x^a=y y^a=x*y",
        ("C3xS3", "gens: a c d ; rels: a^3 c^3 d^2 (d*c)^2 [a,c] [a,d]"),
        ("QxC3", "gens: a d x y ; rels: a^3 d^2 x^4 y^4 [a,d] x^2=d y^2=d [x,y]=d x^a=y y^a=x*y"),
        &["a", "d"],
        "C6",
        (18, 6, 24),
    ),
    (
        "gens: a b c d x y ; rels: a^3 b^2 c^3 d^2 x^2 y^2 (b*a)^2 (d*c)^2 [a,c] [a,d] [b,c] [b,d] [x,d] [y,d] [x,y] x^a=y y^a=x*y x^b=x y^b=x*y",
        ("S3xS3", "gens: a b c d ; rels: a^3 b^2 c^3 d^2 (b*a)^2 (d*c)^2 [a,c] [a,d] [b,c] [b,d]"),
        (
            "C2xS4",
            "gens: a b d x y ; rels: a^3 b^2 d^2 x^2 y^2 (b*a)^2 [a,d] [b,d] [x,d] [y,d] [x,y] x^a=y y^a=x*y x^b=x y^b=x*y",
        ),
        &["a", "b", "d"],
        "C2xS3",
        (36, 12, 48),
    ),
    (
        "gens: a b c d x y ; rels: a^3 b^2 c^3 d^2 x^4 y^4 (b*a)^2 (d*c)^2 [a,c] [a,d] [b,c] [b,d] x^2=d y^2=d [x,y]=d x^a=y y^a=x*y x^b=x^-1 y^b=y*x",
        ("S3xS3", "gens: a b c d ; rels: a^3 b^2 c^3 d^2 (b*a)^2 (d*c)^2 [a,c] [a,d] [b,c] [b,d]"),
        (
            "QxS3",
            "gens: a b d x y ; rels: a^3 b^2 d^2 x^4 y^4 (b*a)^2 [a,d] [b,d] x^2=d y^2=d [x,y]=d x^a=y y^a=x*y x^b=x^-1 y^b=y*x",
        ),
        &["a", "b", "d"],
        "C2xS3",
        (36, 12, 48),
    ),
];

/// All nineteen built-in amalgams, in their fixed order.
pub fn builtin_amalgams() -> Vec<Amalgam> {
    RAW.iter()
        .enumerate()
        .map(|(id, raw)| Amalgam::from_raw(id, raw))
        .collect()
}

/// Maps a word letter-by-letter between presentations that share generator
/// names; `None` when a letter's name is missing from the target.
fn translate(word: &Word, from: &Presentation, to: &Presentation) -> Option<Word> {
    let mut letters = Vec::with_capacity(word.len());
    for &l in word.letters() {
        let name = &from.names()[l.unsigned_abs() as usize - 1];
        let g = to.generator(name)? as i32 + 1;
        letters.push(if l > 0 { g } else { -g });
    }
    Some(Word::from_letters(&letters))
}

/// Evaluates a word against generator images, indexing letters into `gens`.
pub fn eval_word(gens: &[Permutation], degree: usize, w: &Word) -> Permutation {
    let mut p = Permutation::identity(degree);
    for &l in w.letters() {
        let g = &gens[l.unsigned_abs() as usize - 1];
        p = if l > 0 {
            p.compose(g)
        } else {
            p.compose(&g.inverse())
        };
    }
    p
}

impl Amalgam {
    fn from_raw(id: usize, raw: &Raw) -> Amalgam {
        let (u_text, (l_name, l_text), (r_name, r_text), b_names, b_name, orders) = raw;
        let universal = Presentation::parse(u_text).expect("built-in presentation parses");
        let l_pres = Presentation::parse(l_text).expect("built-in presentation parses");
        let r_pres = Presentation::parse(r_text).expect("built-in presentation parses");
        let gen_words = |p: &Presentation| -> Vec<Word> {
            p.names()
                .iter()
                .map(|n| {
                    Word::generator(
                        universal
                            .generator(n)
                            .expect("side generator names a generator of the universal group"),
                    )
                })
                .collect()
        };
        let l_words = gen_words(&l_pres);
        let r_words = gen_words(&r_pres);
        let b_words = b_names
            .iter()
            .map(|n| {
                Word::generator(
                    universal
                        .generator(n)
                        .expect("edge-group generator names a generator of the universal group"),
                )
            })
            .collect();
        Amalgam {
            id,
            universal,
            l_words,
            b_words,
            r_words,
            l_pres,
            r_pres,
            declared: DeclaredShape {
                orders: *orders,
                names: (l_name, b_name, r_name),
            },
        }
    }

    pub fn side_pres(&self, side: Side) -> &Presentation {
        match side {
            Side::Left => &self.l_pres,
            Side::Right => &self.r_pres,
        }
    }

    pub fn side_words(&self, side: Side) -> &[Word] {
        match side {
            Side::Left => &self.l_words,
            Side::Right => &self.r_words,
        }
    }

    /// Declared order of the edge group (validated against the computed one).
    pub fn border_order(&self) -> u64 {
        self.declared.orders.1
    }

    /// Regular permutation representation of a vertex group.
    pub fn vertex_group(&self, side: Side) -> PermGroup {
        regular_group(self.side_pres(side), 512)
    }

    /// Every element of a vertex group as a word in the ambient alphabet.
    pub fn side_element_words(&self, side: Side) -> Vec<Word> {
        let pres = self.side_pres(side);
        let table = pres
            .coset_enumerate(&[], 512)
            .expect("vertex group enumerates");
        let images: Vec<Word> = pres
            .names()
            .iter()
            .map(|n| Word::generator(self.universal.generator(n).expect("shared name")))
            .collect();
        table
            .element_words()
            .expect("complete table")
            .iter()
            .map(|w| w.substitute(&images))
            .collect()
    }

    /// Elements of a vertex group outside the edge group, as ambient words.
    /// These are exactly the words a bounded quotient must keep away from the
    /// point stabilizer for its coset graph to stay simple and admissible.
    pub fn side_elements_outside_border(&self, side: Side) -> Vec<Word> {
        let pres = self.side_pres(side);
        let table = pres
            .coset_enumerate(&[], 512)
            .expect("vertex group enumerates");
        let n = table.coset_count();
        let border_perms: Vec<Permutation> = self
            .b_words
            .iter()
            .map(|w| {
                let in_side = translate(w, &self.universal, pres).expect("edge word in side");
                Permutation::from_images(
                    (0..n)
                        .map(|c| table.trace(c, &in_side).expect("complete table") as u32)
                        .collect(),
                )
            })
            .collect();
        let border_cosets: Vec<usize> = orbit_of(0, &border_perms, n);
        let images: Vec<Word> = pres
            .names()
            .iter()
            .map(|n| Word::generator(self.universal.generator(n).expect("shared name")))
            .collect();
        table
            .element_words()
            .expect("complete table")
            .iter()
            .enumerate()
            .filter(|(i, _)| !border_cosets.contains(i))
            .map(|(_, w)| w.substitute(&images))
            .collect()
    }

    /// Runs every structural check and returns the report.
    pub fn validate(&self) -> ValidationReport {
        let mut discrepancies = Vec::new();
        let (dl, db, dr) = self.declared.orders;

        // Edge generators must use names shared by both sides.
        for w in &self.b_words {
            for pres in [&self.l_pres, &self.r_pres] {
                if translate(w, &self.universal, pres).is_none() {
                    discrepancies
                        .push(format!("edge generator {} missing from a side", w.to_text(self.universal.names())));
                }
            }
        }

        // Regular representations of both sides. Keep the raw coset-table
        // permutations for word evaluation: they stay aligned with generator
        // positions even when a generator collapses to the identity.
        let side_perms = |pres: &Presentation| -> Vec<Permutation> {
            pres.coset_enumerate(&[], 512)
                .expect("vertex group enumerates")
                .to_perms()
                .expect("complete table")
        };
        let l_gens = side_perms(&self.l_pres);
        let r_gens = side_perms(&self.r_pres);
        let l_reg = PermGroup::from_generators(l_gens[0].degree(), l_gens.clone());
        let r_reg = PermGroup::from_generators(r_gens[0].degree(), r_gens.clone());
        let lo = l_reg.order_u64().unwrap_or(0);
        let ro = r_reg.order_u64().unwrap_or(0);

        // The edge group inside each side, with the generator-wise pairing.
        let border_in = |pres: &Presentation, gens: &[Permutation]| -> Vec<Permutation> {
            self.b_words
                .iter()
                .filter_map(|w| translate(w, &self.universal, pres))
                .map(|w| eval_word(gens, gens[0].degree(), &w))
                .collect()
        };
        let b_l = border_in(&self.l_pres, &l_gens);
        let b_r = border_in(&self.r_pres, &r_gens);
        let pairing = match border_pairing(&b_l, l_reg.degree(), &b_r, r_reg.degree()) {
            Some(p) => p,
            None => {
                discrepancies.push(
                    "edge group reconstructed inside the two sides is inconsistent".to_string(),
                );
                Vec::new()
            }
        };
        let bo = if pairing.is_empty() { 0 } else { pairing.len() as u64 };

        if (lo, bo, ro) != (dl, db, dr) {
            discrepancies.push(format!(
                "orders ({lo}, {bo}, {ro}) differ from declared ({dl}, {db}, {dr})"
            ));
        }

        // Indices by coset enumeration of each side over the edge generators.
        let mut index_of = |pres: &Presentation, label: &str, expect: usize| {
            let sub: Vec<Word> = self
                .b_words
                .iter()
                .filter_map(|w| translate(w, &self.universal, pres))
                .collect();
            match pres.coset_enumerate(&sub, 512) {
                Ok(t) if t.coset_count() == expect => {}
                Ok(t) => discrepancies.push(format!(
                    "index of edge group in {label} is {} (expected {expect})",
                    t.coset_count()
                )),
                Err(e) => discrepancies.push(format!("enumerating {label} over the edge group: {e}")),
            }
        };
        index_of(&self.l_pres, "the trivalent side", 3);
        index_of(&self.r_pres, "the tetravalent side", 4);

        // Subgroups of the edge group, as index sets into the pairing.
        let subgroups = subgroups_of_pairing(&pairing);
        let normal_under = |side_gens: &[Permutation], component: fn(&(Permutation, Permutation)) -> &Permutation, s: &[usize]| -> bool {
            let members: HashMap<&[u32], ()> = s
                .iter()
                .map(|&i| (component(&pairing[i]).images(), ()))
                .collect();
            s.iter().all(|&i| {
                side_gens
                    .iter()
                    .all(|g| members.contains_key(component(&pairing[i]).conjugate(g).images()))
            })
        };
        let normal_in_l: Vec<&Vec<usize>> = subgroups
            .iter()
            .filter(|s| normal_under(&l_gens, |p| &p.0, s))
            .collect();
        let normal_in_r: Vec<&Vec<usize>> = subgroups
            .iter()
            .filter(|s| normal_under(&r_gens, |p| &p.1, s))
            .collect();
        let faithful = !subgroups.iter().any(|s| {
            s.len() > 1
                && normal_under(&l_gens, |p| &p.0, s)
                && normal_under(&r_gens, |p| &p.1, s)
        });
        if !faithful {
            discrepancies
                .push("a nontrivial subgroup of the edge group is normal in both sides".into());
        }

        // Cores: the largest subgroup of B normal in each side; their
        // intersection must be trivial.
        let core_l = normal_in_l.iter().max_by_key(|s| s.len()).cloned();
        let core_r = normal_in_r.iter().max_by_key(|s| s.len()).cloned();
        let trivial_edge_kernel = match (core_l, core_r) {
            (Some(cl), Some(cr)) => cl.iter().filter(|i| cr.contains(i)).count() <= 1,
            _ => true,
        };
        if !trivial_edge_kernel {
            discrepancies.push("intersection of the edge-group cores is nontrivial".into());
        }

        // Isomorphism types.
        let name_of = |g: &PermGroup| -> String {
            identify(&fingerprint(g)).unwrap_or("?").to_string()
        };
        let l_name = name_of(&l_reg);
        let r_name = name_of(&r_reg);
        let b_name = name_of(&PermGroup::from_generators(l_reg.degree(), b_l.clone()));
        let b_name_r = name_of(&PermGroup::from_generators(r_reg.degree(), b_r.clone()));
        if b_name != b_name_r {
            discrepancies.push(format!(
                "edge group identified as {b_name} inside one side and {b_name_r} inside the other"
            ));
        }
        let (el, eb, er) = self.declared.names;
        for (computed, declared, label) in [
            (&l_name, el, "trivalent side"),
            (&b_name, eb, "edge group"),
            (&r_name, er, "tetravalent side"),
        ] {
            if computed != canonical_name(declared) {
                discrepancies.push(format!(
                    "{label} identified as {computed}, declared {declared}"
                ));
            }
        }

        ValidationReport {
            id: self.id,
            computed_orders: (lo, bo, ro),
            computed_names: (l_name, b_name, r_name),
            faithful,
            trivial_edge_kernel,
            discrepancies,
        }
    }
}

/// BFS over products of the paired edge-group generators. Returns the graph
/// of the generator-wise correspondence, or `None` when the two copies
/// disagree (some product collapses on one side only). Pair 0 is the identity.
fn border_pairing(
    b_l: &[Permutation],
    l_degree: usize,
    b_r: &[Permutation],
    r_degree: usize,
) -> Option<Vec<(Permutation, Permutation)>> {
    let mut pairs = vec![(
        Permutation::identity(l_degree),
        Permutation::identity(r_degree),
    )];
    let mut by_left: HashMap<Vec<u32>, usize> = HashMap::new();
    by_left.insert(pairs[0].0.images().to_vec(), 0);
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for (gl, gr) in b_l.iter().zip(b_r) {
            let next = (pairs[i].0.compose(gl), pairs[i].1.compose(gr));
            match by_left.get(next.0.images()) {
                Some(&j) => {
                    if pairs[j].1 != next.1 {
                        return None;
                    }
                }
                None => {
                    by_left.insert(next.0.images().to_vec(), pairs.len());
                    frontier.push(pairs.len());
                    pairs.push(next);
                }
            }
        }
    }
    // Also reject collapses in the other direction (|B_L| < |B_R|).
    let mut rights: Vec<&Permutation> = pairs.iter().map(|p| &p.1).collect();
    rights.sort();
    rights.dedup();
    if rights.len() != pairs.len() {
        return None;
    }
    Some(pairs)
}

/// All subgroups of the paired edge group, each as a sorted list of pair
/// indices. The edge group has at most 12 elements, so subsets are cheap to
/// scan directly.
fn subgroups_of_pairing(pairs: &[(Permutation, Permutation)]) -> Vec<Vec<usize>> {
    let n = pairs.len();
    if n == 0 {
        return Vec::new();
    }
    assert!(n <= 16, "edge group unexpectedly large");
    let by_left: HashMap<&[u32], usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| (p.0.images(), i))
        .collect();
    let mut mul = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = by_left[pairs[i].0.compose(&pairs[j].0).images()];
        }
    }
    let mut subgroups = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue; // must contain the identity (pair 0)
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&i| members.iter().all(|&j| mask >> mul[i * n + j] & 1 == 1));
        if closed {
            subgroups.push(members);
        }
    }
    subgroups
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn nineteen_records_with_declared_shapes() {
        let all = builtin_amalgams();
        assert_eq!(all.len(), 19);
        assert_eq!(all[0].declared.orders, (3, 1, 4));
        assert_eq!(all[16].declared.orders, (18, 6, 24));
        assert_eq!(all[16].declared.names.2, "QxC3");
        assert_eq!(all[17].declared.orders, (36, 12, 48));
        assert_eq!(all[18].declared.names.2, "QxS3");
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.id, i);
            let (l, b, r) = a.declared.orders;
            assert_eq!(l, 3 * b, "amalgam {i}");
            assert_eq!(r, 4 * b, "amalgam {i}");
        }
    }

    #[test]
    fn universal_relators_are_the_union_of_side_relators() {
        for a in builtin_amalgams() {
            let mut side_rels = BTreeSet::new();
            for pres in [&a.l_pres, &a.r_pres] {
                for rel in pres.relators() {
                    side_rels.insert(
                        translate(rel, pres, &a.universal)
                            .expect("side relator translates")
                            .letters()
                            .to_vec(),
                    );
                }
            }
            let ambient_rels: BTreeSet<Vec<i32>> = a
                .universal
                .relators()
                .iter()
                .map(|r| r.letters().to_vec())
                .collect();
            assert_eq!(side_rels, ambient_rels, "amalgam {}", a.id);
        }
    }

    #[test]
    fn all_nineteen_validate() {
        for a in builtin_amalgams() {
            let report = a.validate();
            assert!(
                report.passed(),
                "amalgam {} failed: {:?}",
                a.id,
                report.discrepancies
            );
            assert!(report.faithful);
            assert!(report.trivial_edge_kernel);
            assert_eq!(report.computed_orders, a.declared.orders);
        }
    }

    #[test]
    fn vertex_groups_are_identified() {
        let all = builtin_amalgams();
        let l3 = all[3].vertex_group(Side::Left);
        assert_eq!(l3.order_u64(), Some(6));
        assert_eq!(identify(&fingerprint(&l3)), Some("S3"));
        let r14 = all[14].vertex_group(Side::Right);
        assert_eq!(r14.order_u64(), Some(8));
        assert_eq!(identify(&fingerprint(&r14)), Some("Q"));
        let l0 = all[0].vertex_group(Side::Left);
        assert_eq!(l0.order_u64(), Some(3));
        let r18 = all[18].vertex_group(Side::Right);
        assert_eq!(r18.order_u64(), Some(48));
        assert_eq!(identify(&fingerprint(&r18)), Some("QxS3"));
    }

    #[test]
    fn collapsed_rotation_relator_is_detected() {
        // Writing a³ instead of a⁹ in record 6 collapses the trivalent side
        // to order 6: together with a³ = c the generator c dies.
        let mut variant = builtin_amalgams().swap_remove(6);
        variant.l_pres =
            Presentation::parse("gens: a b c ; rels: a^3 b^2 c^3 a^3=c (a*b)^2 (b*c)^2").unwrap();
        let order = variant.l_pres.group_order(512).unwrap();
        assert_eq!(order, 6);
        let report = variant.validate();
        assert!(!report.passed());
        assert_eq!(report.computed_orders.0, 6);
        assert!(report
            .discrepancies
            .iter()
            .any(|d| d.contains("differ from declared")));
    }

    #[test]
    fn element_word_helpers_cover_the_side_groups() {
        let all = builtin_amalgams();
        let a17 = &all[17];
        assert_eq!(a17.side_element_words(Side::Left).len(), 36);
        assert_eq!(a17.side_element_words(Side::Right).len(), 48);
        assert_eq!(a17.side_elements_outside_border(Side::Left).len(), 24);
        assert_eq!(a17.side_elements_outside_border(Side::Right).len(), 36);
        let a0 = &all[0];
        // Trivial edge group: everything except the identity lies outside.
        assert_eq!(a0.side_elements_outside_border(Side::Left).len(), 2);
        assert_eq!(a0.side_elements_outside_border(Side::Right).len(), 3);
    }

    #[test]
    fn outside_border_words_evaluate_outside() {
        // In the regular representation of the universal quotient given by a
        // complete collapse to the side group itself, outside-border words
        // must avoid the subgroup generated by the edge words. Checked
        // structurally: each outside word, traced in the side's own coset
        // table over the edge generators, moves the base coset.
        for a in builtin_amalgams() {
            for side in [Side::Left, Side::Right] {
                let pres = a.side_pres(side);
                let sub: Vec<Word> = a
                    .b_words
                    .iter()
                    .map(|w| translate(w, &a.universal, pres).unwrap())
                    .collect();
                let table = pres.coset_enumerate(&sub, 512).unwrap();
                for w in a.side_elements_outside_border(side) {
                    let in_side = translate(&w, &a.universal, pres).unwrap();
                    assert_ne!(table.trace(0, &in_side), Some(0), "amalgam {}", a.id);
                }
            }
        }
    }

    #[test]
    fn only_two_groups_of_order_eight_admit_an_order_three_automorphism() {
        // Brute force over generator images in the five groups of order 8.
        let candidates = [
            ("C8", "gens: a ; rels: a^8", false),
            ("C4xC2", "gens: a b ; rels: a^4 b^2 [a,b]", false),
            (
                "C2^3",
                "gens: a b c ; rels: a^2 b^2 c^2 [a,b] [a,c] [b,c]",
                true,
            ),
            ("D4", "gens: a b ; rels: a^4 b^2 (a*b)^2", false),
            ("Q", "gens: x y ; rels: x^4 x^2=y^2 x^y=x^-1", true),
        ];
        for (name, text, expected) in candidates {
            let pres = Presentation::parse(text).unwrap();
            assert_eq!(
                has_order_three_automorphism(&pres),
                expected,
                "group {name}"
            );
        }
    }

    fn has_order_three_automorphism(pres: &Presentation) -> bool {
        let table = pres.coset_enumerate(&[], 64).unwrap();
        let n = table.coset_count();
        let gens: Vec<Permutation> = table.to_perms().unwrap();
        let reg = PermGroup::from_generators(n, gens.clone());
        let elems = reg.elements(64).unwrap();
        let words = table.element_words().unwrap();
        // Candidate images: tuples of elements satisfying the relators and
        // generating the whole group; the induced map on elements must cube
        // to the identity without being it.
        let k = pres.generator_count();
        let mut choice = vec![0usize; k];
        loop {
            let images: Vec<Permutation> = choice.iter().map(|&i| elems[i].clone()).collect();
            let is_hom = pres
                .relators()
                .iter()
                .all(|r| eval_word(&images, n, r).is_identity());
            if is_hom
                && PermGroup::from_generators(n, images.clone()).order_u64() == Some(n as u64)
            {
                // φ sends the element with word w to eval(w, images); compute
                // φ as a permutation of coset indices via the regular action.
                let phi: Vec<usize> = words
                    .iter()
                    .map(|w| eval_word(&images, n, w).apply(0))
                    .collect();
                let mut is_identity = true;
                let mut cubes_to_identity = true;
                for s in 0..n {
                    if phi[s] != s {
                        is_identity = false;
                    }
                    if phi[phi[phi[s]]] != s {
                        cubes_to_identity = false;
                        break;
                    }
                }
                if cubes_to_identity && !is_identity {
                    return true;
                }
            }
            // Advance the odometer.
            let mut pos = 0;
            loop {
                if pos == k {
                    return false;
                }
                choice[pos] += 1;
                if choice[pos] < elems.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn dihedral_of_order_eighteen_has_no_cyclic_subgroup_of_order_six() {
        // An order-6 cyclic subgroup needs an order-6 element; the dihedral
        // group of order 18 has element orders 1, 2, 3, 9 only.
        let pres = Presentation::parse("gens: a b ; rels: a^9 b^2 (a*b)^2").unwrap();
        let fp = fingerprint(&regular_group(&pres, 64));
        assert_eq!(fp.order, 18);
        assert!(!fp.element_order_histogram.contains_key(&6));
        assert_eq!(
            fp.element_order_histogram.keys().copied().collect::<Vec<u64>>(),
            vec![1, 2, 3, 9]
        );
    }

    #[test]
    fn border_pairing_rejects_inconsistent_copies() {
        // C4 on one side, C2 × C2 on the other: the generator-wise map from
        // (x, x) is not an isomorphism because x² collapses on one side only.
        let c4 = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]);
        let v1 = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]);
        assert!(border_pairing(&[c4.clone()], 4, &[v1], 4).is_none());
        // And a consistent pair of regular C4 copies works.
        assert_eq!(
            border_pairing(&[c4.clone()], 4, &[c4], 4).map(|p| p.len()),
            Some(4)
        );
    }

    #[test]
    fn subgroup_scan_of_a_small_group() {
        // S3 as a pairing with itself: subgroups are 1, three C2, C3, S3.
        let r = Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let f = Permutation::from_cycles(6, &[&[0, 3], &[1, 5], &[2, 4]]);
        let pairs = border_pairing(&[r.clone(), f.clone()], 6, &[r, f], 6).unwrap();
        assert_eq!(pairs.len(), 6);
        let subs = subgroups_of_pairing(&pairs);
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }
}
