//! Identification of small groups by numeric invariants.
//!
//! A fingerprint records order, abelianness, centre order, the element-order
//! histogram and the derived-subgroup order. This is enough to separate all
//! members of the fixed catalogue below (verified pairwise distinct by a
//! test), which covers every vertex-group and edge-group isomorphism type
//! that occurs in the classification.

use super::PermGroup;
use crate::fpgroup::{CosetTable, Presentation, Strategy};
use std::collections::BTreeMap;
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: u64,
    pub abelian: bool,
    pub center_order: u64,
    /// element order → multiplicity; multiplicities sum to `order`.
    pub element_order_histogram: BTreeMap<u64, u64>,
    pub derived_subgroup_order: u64,
}

/// Computes the fingerprint of a group of order at most 10⁴.
pub fn fingerprint(g: &PermGroup) -> GroupFingerprint {
    let elems = g
        .elements(10_000)
        .expect("fingerprint requires order ≤ 10^4");
    let order = elems.len() as u64;
    let gens = g.generators();
    let center_order = elems
        .iter()
        .filter(|z| gens.iter().all(|h| z.compose(h) == h.compose(z)))
        .count() as u64;
    let mut element_order_histogram = BTreeMap::new();
    for e in &elems {
        *element_order_histogram.entry(e.order()).or_insert(0u64) += 1;
    }
    GroupFingerprint {
        order,
        abelian: g.is_abelian(),
        center_order,
        element_order_histogram,
        derived_subgroup_order: g
            .derived_subgroup()
            .order_u64()
            .expect("derived subgroup of a small group is small"),
    }
}

/// The catalogue: name and defining presentation of every group that can
/// occur as a vertex group, edge group or local action in the
/// classification. `QxC3` and `QxS3` denote the groups generated by a
/// quaternion group together with an element of order 3 (respectively a
/// triangle group) permuting its generators — concretely SL(2,3) and
/// GL(2,3); the names follow the census labelling.
const CATALOGUE: &[(&str, &str)] = &[
    ("1", "gens: a ; rels: a"),
    ("C2", "gens: a ; rels: a^2"),
    ("C3", "gens: a ; rels: a^3"),
    ("C4", "gens: a ; rels: a^4"),
    ("C2^2", "gens: a b ; rels: a^2 b^2 [a,b]"),
    ("C6", "gens: a ; rels: a^6"),
    ("C8", "gens: a ; rels: a^8"),
    ("C9", "gens: a ; rels: a^9"),
    ("C3xC3", "gens: a b ; rels: a^3 b^3 [a,b]"),
    ("S3", "gens: a b ; rels: a^3 b^2 (a*b)^2"),
    ("D4", "gens: a b ; rels: a^4 b^2 (a*b)^2"),
    ("Q", "gens: x y ; rels: x^4 x^2=y^2 x^y=x^-1"),
    ("C4xC2", "gens: a b ; rels: a^4 b^2 [a,b]"),
    ("C2^3", "gens: a b c ; rels: a^2 b^2 c^2 [a,b] [a,c] [b,c]"),
    ("A4", "gens: a b ; rels: a^3 b^2 (a*b)^3"),
    ("C12", "gens: a ; rels: a^12"),
    ("C2xS3", "gens: a b ; rels: a^6 b^2 (a*b)^2"),
    ("D9", "gens: a b ; rels: a^9 b^2 (a*b)^2"),
    ("C3xS3", "gens: a b c ; rels: a^3 b^2 (a*b)^2 c^3 [a,c] [b,c]"),
    (
        "GenDih(C3xC3)",
        "gens: a b c ; rels: a^3 b^3 [a,b] c^2 a^c=a^-1 b^c=b^-1",
    ),
    ("C3xC6", "gens: a b ; rels: a^3 b^6 [a,b]"),
    ("C2xA4", "gens: a b c ; rels: a^3 b^2 (a*b)^3 c^2 [a,c] [b,c]"),
    ("S4", "gens: a b ; rels: a^4 b^2 (a*b)^3"),
    (
        "QxC3",
        "gens: x y a ; rels: x^4 x^2=y^2 [x,y]=x^2 a^3 x^a=y y^a=x*y",
    ),
    ("C2xS4", "gens: a b c ; rels: a^4 b^2 (a*b)^3 c^2 [a,c] [b,c]"),
    (
        "QxS3",
        "gens: x y a b ; rels: x^4 x^2=y^2 [x,y]=x^2 a^3 b^2 (b*a)^2 x^a=y y^a=x*y x^b=x^-1 y^b=y*x",
    ),
    (
        "S3xS3",
        "gens: a b c d ; rels: a^3 b^2 (a*b)^2 c^3 d^2 (c*d)^2 [a,c] [a,d] [b,c] [b,d]",
    ),
];

/// Alternative display names that denote a catalogue member.
const ALIASES: &[(&str, &str)] = &[("C3:C6", "C3xS3"), ("C2xC2", "C2^2"), ("C2xC2xC2", "C2^3")];

/// Resolves display aliases (e.g. `C3:C6` ↦ `C3xS3`).
pub fn canonical_name(name: &str) -> &str {
    for &(alias, canonical) in ALIASES {
        if alias == name {
            return canonical;
        }
    }
    name
}

/// Builds the regular permutation representation of a presented group.
pub(crate) fn regular_group(pres: &Presentation, cap: usize) -> PermGroup {
    let table = CosetTable::enumerate(pres, &[], cap, Strategy::HltLookahead)
        .expect("catalogue presentation enumerates");
    let perms = table.to_perms().expect("table complete");
    PermGroup::from_generators(table.coset_count(), perms)
}

fn catalogue_fingerprints() -> &'static Vec<(&'static str, GroupFingerprint)> {
    static CACHE: OnceLock<Vec<(&'static str, GroupFingerprint)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        CATALOGUE
            .iter()
            .map(|&(name, pres_text)| {
                let pres = Presentation::parse(pres_text).expect("catalogue presentation parses");
                (name, fingerprint(&regular_group(&pres, 200)))
            })
            .collect()
    })
}

/// Looks the fingerprint up in the catalogue; `None` when it matches zero
/// or several entries.
pub fn identify(fp: &GroupFingerprint) -> Option<&'static str> {
    let mut found = None;
    for (name, cfp) in catalogue_fingerprints() {
        if cfp == fp {
            if found.is_some() {
                return None;
            }
            found = Some(*name);
        }
    }
    found
}
