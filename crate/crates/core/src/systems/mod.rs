//! Coherent systems of distinguished subobjects on finite preorders and
//! finite categories: membership predicates, lattice enumeration, the union /
//! intersection / inverse-image operations, distinguished epimorphisms, and
//! the CS axiom verifier.

pub mod verify;
pub(crate) mod world;

use std::fmt;

use thiserror::Error;

use crate::fincat::{FinCat, FinPreord, Functor, MonotoneMap, SubCat, SubPreord};

/// The available systems. `Open`, `Closed` and `Saturated` (clopen) apply to
/// preorders; `LeftSaturated`, `RightSaturated` and `Saturated` apply to
/// categories; `Indiscrete` applies to both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SystemKind {
    Indiscrete,
    Open,
    Closed,
    Saturated,
    LeftSaturated,
    RightSaturated,
}

impl SystemKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "indiscrete" => Some(SystemKind::Indiscrete),
            "open" => Some(SystemKind::Open),
            "closed" => Some(SystemKind::Closed),
            "saturated" => Some(SystemKind::Saturated),
            "left-saturated" => Some(SystemKind::LeftSaturated),
            "right-saturated" => Some(SystemKind::RightSaturated),
            _ => None,
        }
    }

    pub fn applies_to_preord(self) -> bool {
        matches!(
            self,
            SystemKind::Indiscrete | SystemKind::Open | SystemKind::Closed | SystemKind::Saturated
        )
    }

    pub fn applies_to_cat(self) -> bool {
        matches!(
            self,
            SystemKind::Indiscrete
                | SystemKind::Saturated
                | SystemKind::LeftSaturated
                | SystemKind::RightSaturated
        )
    }

    /// The kinds whose unions are effective (pushout squares), per ambient.
    pub fn is_effective_preord(self) -> bool {
        matches!(
            self,
            SystemKind::Open | SystemKind::Closed | SystemKind::Saturated
        )
    }

    pub fn is_effective_cat(self) -> bool {
        matches!(
            self,
            SystemKind::Saturated | SystemKind::LeftSaturated | SystemKind::RightSaturated
        )
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Indiscrete => "indiscrete",
            SystemKind::Open => "open",
            SystemKind::Closed => "closed",
            SystemKind::Saturated => "saturated",
            SystemKind::LeftSaturated => "left-saturated",
            SystemKind::RightSaturated => "right-saturated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("system `{kind}` does not apply to {ambient}")]
    KindMismatch {
        kind: SystemKind,
        ambient: &'static str,
    },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("input subobject is not distinguished: {0}")]
    NotDistinguishedInput(String),
    #[error("operation result is not distinguished (broken system): {0}")]
    BrokenSystem(String),
    #[error("morphism is not an epimorphism: {0}")]
    NotEpi(String),
}

/// Default cap on exhaustive subobject scans.
pub const DEFAULT_SIZE_CAP: usize = 16;

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

pub fn is_distinguished_preord(s: &SubPreord, kind: SystemKind) -> Result<bool, SystemError> {
    if !kind.applies_to_preord() {
        return Err(SystemError::KindMismatch {
            kind,
            ambient: "preorders",
        });
    }
    let a = s.ambient();
    let n = a.len();
    let down_closed = || {
        (0..n).all(|i| {
            (0..n).all(|j| !(a.leq_idx(i, j) && s.contains_idx(j)) || s.contains_idx(i))
        })
    };
    let up_closed = || {
        (0..n).all(|i| {
            (0..n).all(|j| !(a.leq_idx(i, j) && s.contains_idx(i)) || s.contains_idx(j))
        })
    };
    Ok(match kind {
        SystemKind::Indiscrete => s.is_empty() || s.is_whole(),
        SystemKind::Open => down_closed(),
        SystemKind::Closed => up_closed(),
        SystemKind::Saturated => down_closed() && up_closed(),
        _ => unreachable!(),
    })
}

pub fn is_distinguished_cat(s: &SubCat, kind: SystemKind) -> Result<bool, SystemError> {
    if !kind.applies_to_cat() {
        return Err(SystemError::KindMismatch {
            kind,
            ambient: "categories",
        });
    }
    let c = s.ambient();
    // Every arrow whose codomain (resp. domain) is a member object must be a
    // member arrow; candidates failing fullness can never pass.
    let left = || {
        (0..c.arrow_count())
            .all(|f| !s.contains_obj(c.arrow(f).cod) || s.contains_arr(f))
    };
    let right = || {
        (0..c.arrow_count())
            .all(|f| !s.contains_obj(c.arrow(f).dom) || s.contains_arr(f))
    };
    Ok(match kind {
        SystemKind::Indiscrete => s.is_empty() || s.is_whole(),
        SystemKind::LeftSaturated => left(),
        SystemKind::RightSaturated => right(),
        SystemKind::Saturated => left() && right(),
        _ => unreachable!(),
    })
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// All distinguished subobjects of a preorder, in lexicographic order of
/// their sorted member-name lists.
pub fn enumerate_distinguished_preord(
    a: &FinPreord,
    kind: SystemKind,
    cap: usize,
) -> Result<Vec<SubPreord>, SystemError> {
    if a.len() > cap {
        return Err(SystemError::SizeLimit(format!(
            "carrier has {} elements, cap is {cap}",
            a.len()
        )));
    }
    let mut members = Vec::new();
    for mask in 0..(1u64 << a.len()) {
        let s = SubPreord::from_mask(a, mask);
        if is_distinguished_preord(&s, kind)? {
            members.push(s);
        }
    }
    members.sort_by_key(|s| member_key_preord(s));
    Ok(members)
}

pub(crate) fn member_key_preord(s: &SubPreord) -> Vec<String> {
    s.members().into_iter().map(str::to_string).collect()
}

/// All distinguished subcategories. Only full subcategories on object
/// subsets are scanned: the saturated kinds force fullness.
pub fn enumerate_distinguished_cat(
    a: &FinCat,
    kind: SystemKind,
    cap: usize,
) -> Result<Vec<SubCat>, SystemError> {
    if a.object_count() > cap {
        return Err(SystemError::SizeLimit(format!(
            "category has {} objects, cap is {cap}",
            a.object_count()
        )));
    }
    let mut members = Vec::new();
    for mask in 0..(1u64 << a.object_count()) {
        let s = SubCat::full(a, mask);
        if is_distinguished_cat(&s, kind)? {
            members.push(s);
        }
    }
    members.sort_by_key(member_key_cat);
    Ok(members)
}

pub(crate) fn member_key_cat(s: &SubCat) -> (Vec<String>, Vec<String>) {
    (
        s.object_members().into_iter().map(str::to_string).collect(),
        s.arrow_members().into_iter().map(str::to_string).collect(),
    )
}

// ---------------------------------------------------------------------------
// Lattice operations
// ---------------------------------------------------------------------------

/// Union of distinguished sub-preorders: the carrier union with the induced
/// order, asserted distinguished.
pub fn dist_union_preord(
    s: &SubPreord,
    t: &SubPreord,
    kind: SystemKind,
) -> Result<SubPreord, SystemError> {
    require_dist_preord(s, kind)?;
    require_dist_preord(t, kind)?;
    let u = s.union(t);
    if !is_distinguished_preord(&u, kind)? {
        return Err(SystemError::BrokenSystem(format!("union {u}")));
    }
    Ok(u)
}

pub fn dist_intersection_preord(
    s: &SubPreord,
    t: &SubPreord,
    kind: SystemKind,
) -> Result<SubPreord, SystemError> {
    require_dist_preord(s, kind)?;
    require_dist_preord(t, kind)?;
    let m = s.intersect(t);
    if !is_distinguished_preord(&m, kind)? {
        return Err(SystemError::BrokenSystem(format!("intersection {m}")));
    }
    Ok(m)
}

/// Union of distinguished subcategories: set-level union closed under
/// composites of consecutive chains. For the saturated kinds the closure
/// step must add nothing, which is asserted.
pub fn dist_union_cat(s: &SubCat, t: &SubCat, kind: SystemKind) -> Result<SubCat, SystemError> {
    require_dist_cat(s, kind)?;
    require_dist_cat(t, kind)?;
    let (u, added) = s.union_closed(t);
    if kind != SystemKind::Indiscrete && added != 0 {
        return Err(SystemError::BrokenSystem(format!(
            "chain closure added {added} arrows to a saturated union"
        )));
    }
    if !is_distinguished_cat(&u, kind)? {
        return Err(SystemError::BrokenSystem(format!("union {u}")));
    }
    Ok(u)
}

pub fn dist_intersection_cat(
    s: &SubCat,
    t: &SubCat,
    kind: SystemKind,
) -> Result<SubCat, SystemError> {
    require_dist_cat(s, kind)?;
    require_dist_cat(t, kind)?;
    let m = s.intersect(t);
    if !is_distinguished_cat(&m, kind)? {
        return Err(SystemError::BrokenSystem(format!("intersection {m}")));
    }
    Ok(m)
}

pub fn dist_preimage_preord(
    f: &MonotoneMap,
    s: &SubPreord,
    kind: SystemKind,
) -> Result<SubPreord, SystemError> {
    require_dist_preord(s, kind)?;
    let p = f.preimage(s);
    if !is_distinguished_preord(&p, kind)? {
        return Err(SystemError::BrokenSystem(format!("preimage {p}")));
    }
    Ok(p)
}

pub fn dist_preimage_cat(
    f: &Functor,
    s: &SubCat,
    kind: SystemKind,
) -> Result<SubCat, SystemError> {
    require_dist_cat(s, kind)?;
    let p = f.preimage(s);
    if !is_distinguished_cat(&p, kind)? {
        return Err(SystemError::BrokenSystem(format!("preimage {p}")));
    }
    Ok(p)
}

fn require_dist_preord(s: &SubPreord, kind: SystemKind) -> Result<(), SystemError> {
    if is_distinguished_preord(s, kind)? {
        Ok(())
    } else {
        Err(SystemError::NotDistinguishedInput(s.to_string()))
    }
}

fn require_dist_cat(s: &SubCat, kind: SystemKind) -> Result<(), SystemError> {
    if is_distinguished_cat(s, kind)? {
        Ok(())
    } else {
        Err(SystemError::NotDistinguishedInput(s.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Distinguished epimorphisms
// ---------------------------------------------------------------------------

/// Verdict of a distinguished-epi check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpiCheck {
    Yes,
    /// A proper distinguished subobject of the target containing the image.
    No { witness: String },
    /// The tool cannot certify the morphism as an epimorphism (categories
    /// only; the certificate is object surjectivity plus image generation).
    Unknown,
}

/// In preorders a map is an epimorphism iff it is surjective on elements;
/// non-epis are rejected.
pub fn distinguished_epi_preord(
    f: &MonotoneMap,
    kind: SystemKind,
    cap: usize,
) -> Result<EpiCheck, SystemError> {
    if !f.is_surjective() {
        return Err(SystemError::NotEpi(f.to_string()));
    }
    let image = f.image();
    for s in enumerate_distinguished_preord(f.target(), kind, cap)? {
        if !s.is_whole() && image.is_subset_of(&s) {
            return Ok(EpiCheck::No {
                witness: s.to_string(),
            });
        }
    }
    Ok(EpiCheck::Yes)
}

/// For functors the epi certificate is: surjective on objects and the image
/// generates all arrows under composition. Uncertified functors yield
/// `Unknown` rather than an error.
pub fn distinguished_epi_cat(
    f: &Functor,
    kind: SystemKind,
    cap: usize,
) -> Result<EpiCheck, SystemError> {
    if !(f.is_surjective_on_objects() && f.image_generates_arrows()) {
        return Ok(EpiCheck::Unknown);
    }
    let image = f.image_closed();
    for s in enumerate_distinguished_cat(f.target(), kind, cap)? {
        if !s.is_whole() && image.is_subset_of(&s) {
            return Ok(EpiCheck::No {
                witness: s.to_string(),
            });
        }
    }
    Ok(EpiCheck::Yes)
}

/// Whether a subcategory has a complement among arbitrary subcategories:
/// some subcategory `T` with `S ∩ T = 0` and `S ∪ T` (closed union) the
/// whole category. Exhaustive over valid (object, arrow) mask pairs.
pub fn is_complemented_subcat(s: &SubCat, cap: usize) -> Result<bool, SystemError> {
    let c = s.ambient();
    if c.object_count() > cap || c.arrow_count() > 2 * cap {
        return Err(SystemError::SizeLimit(format!(
            "{} objects / {} arrows",
            c.object_count(),
            c.arrow_count()
        )));
    }
    for obj_mask in 0..(1u64 << c.object_count()) {
        if obj_mask & s.obj_mask() != 0 {
            continue;
        }
        for arr_mask in 0..(1u64 << c.arrow_count()) {
            if arr_mask & s.arr_mask() != 0 {
                continue;
            }
            let Ok(t) = SubCat::from_masks(c, obj_mask, arr_mask) else {
                continue;
            };
            let (u, _) = s.union_closed(&t);
            if u.is_whole() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    #[test]
    fn open_subsets_of_p3() {
        // Oracle: direct filter of all 8 subsets by the defining condition,
        // written out by hand: down-closed subsets of a≅b<c are {}, {a,b},
        // {a,b,c}.
        let p3 = fixtures::p3();
        let lat = enumerate_distinguished_preord(&p3, SystemKind::Open, 16).unwrap();
        let rendered: Vec<String> = lat.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, vec!["{}", "{a,b}", "{a,b,c}"]);
        let s = SubPreord::new(&p3, &["c"]).unwrap();
        assert!(!is_distinguished_preord(&s, SystemKind::Open).unwrap());
    }

    #[test]
    fn saturated_subsets_of_p3_are_trivial() {
        let p3 = fixtures::p3();
        let lat = enumerate_distinguished_preord(&p3, SystemKind::Saturated, 16).unwrap();
        assert_eq!(lat.len(), 2, "comparability graph is connected");
    }

    #[test]
    fn indiscrete_lattice_is_always_two_members() {
        for (_, p) in crate::corpus::preorders_up_to(3) {
            let lat = enumerate_distinguished_preord(&p, SystemKind::Indiscrete, 16).unwrap();
            let expect = if p.is_empty() { 1 } else { 2 };
            assert_eq!(lat.len(), expect);
        }
    }

    #[test]
    fn saturated_preord_members_are_component_unions() {
        // Independent oracle: a subset is clopen iff it is a union of
        // connected components of the comparability graph.
        for (_, p) in crate::corpus::preorders_up_to(4) {
            let comps = p.comparability_components();
            let lat = enumerate_distinguished_preord(&p, SystemKind::Saturated, 16).unwrap();
            let mut expect: Vec<u64> = Vec::new();
            for pick in 0..(1u64 << comps.len()) {
                let mut mask = 0u64;
                for (ci, comp) in comps.iter().enumerate() {
                    if pick >> ci & 1 == 1 {
                        for &i in comp {
                            mask |= 1 << i;
                        }
                    }
                }
                expect.push(mask);
            }
            expect.sort();
            expect.dedup();
            let mut got: Vec<u64> = lat.iter().map(|s| s.mask()).collect();
            got.sort();
            assert_eq!(got, expect, "on {p}");
        }
    }

    #[test]
    fn right_saturated_subcats_of_cospan() {
        let cospan = fixtures::cospan_cat();
        let lat = enumerate_distinguished_cat(&cospan, SystemKind::RightSaturated, 16).unwrap();
        let objsets: Vec<Vec<&str>> = lat.iter().map(|s| s.object_members()).collect();
        assert_eq!(
            objsets,
            vec![
                Vec::<&str>::new(),
                vec!["A", "B"],
                vec!["A", "B", "C"],
                vec!["B"],
                vec!["B", "C"],
            ]
        );
        // Full subcategory on {A,B} is right saturated (its only outgoing
        // arrows stay inside).
        let ab = SubCat::full(&cospan, 0b011);
        assert!(is_distinguished_cat(&ab, SystemKind::RightSaturated).unwrap());
        // Intersection of the two middle members is the full subcat on {B}.
        let cb = SubCat::full(
            &cospan,
            (1 << cospan.object_index("C").unwrap()) | (1 << cospan.object_index("B").unwrap()),
        );
        let m = dist_intersection_cat(&ab, &cb, SystemKind::RightSaturated).unwrap();
        assert_eq!(m.object_members(), vec!["B"]);
    }

    #[test]
    fn cospan_union_covers_everything() {
        let cospan = fixtures::cospan_cat();
        let ab = SubCat::full(&cospan, 0b011);
        let cb = SubCat::full(
            &cospan,
            (1 << cospan.object_index("C").unwrap()) | (1 << cospan.object_index("B").unwrap()),
        );
        let u = dist_union_cat(&ab, &cb, SystemKind::RightSaturated).unwrap();
        assert!(u.is_whole());
    }

    #[test]
    fn right_saturated_ab_is_not_complemented() {
        let cospan = fixtures::cospan_cat();
        let ab = SubCat::full(&cospan, 0b011);
        assert!(!is_complemented_subcat(&ab, 16).unwrap());
        // Saturated subcategories of small categories are complemented: the
        // groupoid component of the mixed fixture has the arrow component as
        // complement.
        let mixed = fixtures::groupoid_plus_arrow();
        let gmask = (1u64 << mixed.object_index("g0").unwrap())
            | (1 << mixed.object_index("g1").unwrap());
        let g = SubCat::full(&mixed, gmask);
        assert!(is_distinguished_cat(&g, SystemKind::Saturated).unwrap());
        assert!(is_complemented_subcat(&g, 16).unwrap());
    }

    #[test]
    fn union_and_intersection_units() {
        let p3 = fixtures::p3();
        let ab = SubPreord::new(&p3, &["a", "b"]).unwrap();
        let empty = SubPreord::empty(&p3);
        let whole = SubPreord::whole(&p3);
        assert_eq!(
            dist_union_preord(&ab, &empty, SystemKind::Open).unwrap(),
            ab
        );
        assert_eq!(dist_union_preord(&ab, &ab, SystemKind::Open).unwrap(), ab);
        assert_eq!(
            dist_intersection_preord(&ab, &whole, SystemKind::Open).unwrap(),
            ab
        );
        assert_eq!(
            dist_intersection_preord(&ab, &empty, SystemKind::Open).unwrap(),
            empty
        );
    }

    #[test]
    fn preimage_distributes_over_union() {
        let p3 = fixtures::p3();
        let chain = fixtures::chain2();
        let f = MonotoneMap::new(
            p3.clone(),
            chain.clone(),
            &[("a", "x"), ("b", "x"), ("c", "y")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        )
        .unwrap();
        let s = SubPreord::new(&chain, &["x"]).unwrap();
        let t = SubPreord::whole(&chain);
        let lhs = dist_preimage_preord(&f, &s.union(&t), SystemKind::Open).unwrap();
        let rhs = dist_preimage_preord(&f, &s, SystemKind::Open)
            .unwrap()
            .union(&dist_preimage_preord(&f, &t, SystemKind::Open).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(
            dist_preimage_preord(&f, &s, SystemKind::Open).unwrap().members(),
            vec!["a", "b"]
        );
    }

    #[test]
    fn identity_is_distinguished_epi() {
        let p3 = fixtures::p3();
        let id = MonotoneMap::identity(&p3);
        assert_eq!(
            distinguished_epi_preord(&id, SystemKind::Open, 16).unwrap(),
            EpiCheck::Yes
        );
        let point = crate::fincat::FinPreord::point("p");
        let incl = MonotoneMap::from_table(point, p3, vec![0]).unwrap();
        assert!(matches!(
            distinguished_epi_preord(&incl, SystemKind::Open, 16),
            Err(SystemError::NotEpi(_))
        ));
    }

    #[test]
    fn condensation_unit_is_distinguished_epi() {
        let p3 = fixtures::p3();
        let seq = crate::pretorsion::preord_sequence(&p3);
        assert_eq!(
            distinguished_epi_preord(&seq.unit, SystemKind::Saturated, 16).unwrap(),
            EpiCheck::Yes
        );
    }
}
