//! Canonical short sequences `τ(A) → A → φ(A)` for both theories.

use std::fmt;

use crate::fincat::{FinCat, FinPreord, Functor, MonotoneMap, SubCat};

use super::chain::SkelQuotient;

/// The canonical sequence of a finite preorder: the symmetric core with its
/// carrier inclusion, and the condensation with the class projection.
#[derive(Debug, Clone)]
pub struct PreordSequence {
    pub object: FinPreord,
    pub torsion_part: FinPreord,
    /// Carrier-identity inclusion `τ(A) → A`.
    pub counit: MonotoneMap,
    pub torsion_free_part: FinPreord,
    /// Class projection `A → φ(A)`; classes are named by least member.
    pub unit: MonotoneMap,
}

/// τ keeps the carrier and the symmetric part of the relation; φ condenses
/// by the symmetric core and carries the image order.
pub fn preord_sequence(a: &FinPreord) -> PreordSequence {
    let torsion_part = a.symmetric_core();
    let counit = MonotoneMap::from_table(
        torsion_part.clone(),
        a.clone(),
        (0..a.len()).collect(),
    )
    .expect("core is contained in the relation");

    let classes = a.core_classes();
    let mut rep_of_elem = vec![0usize; a.len()];
    let mut class_names: Vec<String> = Vec::with_capacity(classes.len());
    for class in &classes {
        let rep = class[0];
        for &m in class {
            rep_of_elem[m] = rep;
        }
        class_names.push(a.name(rep).to_string());
    }
    class_names.sort();
    let k = class_names.len();
    let positions: Vec<usize> = (0..a.len())
        .map(|i| {
            class_names
                .binary_search_by(|x| x.as_str().cmp(a.name(rep_of_elem[i])))
                .expect("representative name present")
        })
        .collect();
    let class_pos = |i: usize| positions[i];
    let mut leq = vec![false; k * k];
    for i in 0..a.len() {
        for j in 0..a.len() {
            if a.leq_idx(i, j) {
                leq[class_pos(rep_of_elem[i]) * k + class_pos(rep_of_elem[j])] = true;
            }
        }
    }
    let torsion_free_part = FinPreord::from_parts(class_names, leq);
    let unit = MonotoneMap::from_table(
        a.clone(),
        torsion_free_part.clone(),
        (0..a.len()).map(|i| class_pos(rep_of_elem[i])).collect(),
    )
    .expect("projection onto the image order is monotone");

    PreordSequence {
        object: a.clone(),
        torsion_part,
        counit,
        torsion_free_part,
        unit,
    }
}

impl PreordSequence {
    /// `η ∘ ε`, the middle composite; trivial for a valid sequence.
    pub fn middle_composite(&self) -> MonotoneMap {
        self.unit.compose(&self.counit).expect("endpoints match")
    }
}

/// The canonical sequence of a finite category. The quotient side is a chain
/// universe; when it is complete it can also be materialized as an ordinary
/// category with the projection functor.
#[derive(Debug, Clone)]
pub struct CatSequence {
    pub object: FinCat,
    pub torsion_part: FinCat,
    /// Wide-subcategory inclusion `τ(C) → C`.
    pub counit: Functor,
    /// The torsion-free part, presented by reduced chains up to the bound.
    pub quotient: SkelQuotient,
    /// `(φ(C), η)` as plain tables, available when the universe is complete.
    pub materialized: Option<(FinCat, Functor)>,
}

/// τ is the wide subcategory of isomorphisms; φ is the skeletal quotient.
pub fn cat_sequence(c: &FinCat, bound: usize) -> CatSequence {
    let obj_mask = if c.object_count() == 0 {
        0
    } else {
        (1u64 << c.object_count()) - 1
    };
    let mut arr_mask = 0u64;
    for f in 0..c.arrow_count() {
        if c.is_iso(f) {
            arr_mask |= 1 << f;
        }
    }
    let wide = SubCat::from_masks(c, obj_mask, arr_mask)
        .expect("isomorphisms are closed under composition");
    let torsion_part = wide.to_object();
    let counit = wide.inclusion();
    let quotient = SkelQuotient::new(c, bound);
    let materialized = quotient.materialize();
    CatSequence {
        object: c.clone(),
        torsion_part,
        counit,
        quotient,
        materialized,
    }
}

impl fmt::Display for PreordSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "object: {}", self.object)?;
        writeln!(f, "torsion part: {}", self.torsion_part)?;
        writeln!(f, "counit: {}", self.counit)?;
        writeln!(f, "torsion-free part: {}", self.torsion_free_part)?;
        write!(f, "unit: {}", self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;
    use crate::pretorsion::{
        is_torsion_cat, is_torsion_free_preord, is_torsion_preord, is_trivial_map_preord,
    };

    #[test]
    fn p3_sequence_matches_condensation() {
        // Expected values frozen from the independent SCC oracle in
        // tests/properties.rs: τ(P3) has a ≅ b with c isolated, φ(P3) is the
        // two-chain [a] < [c].
        let p3 = fixtures::p3();
        let seq = preord_sequence(&p3);
        assert!(is_torsion_preord(&seq.torsion_part));
        assert!(is_torsion_free_preord(&seq.torsion_free_part));
        assert!(seq.torsion_part.leq("a", "b") && seq.torsion_part.leq("b", "a"));
        assert!(!seq.torsion_part.leq("b", "c"));
        assert_eq!(seq.torsion_free_part.elements(), &["a".to_string(), "c".to_string()]);
        assert!(seq.torsion_free_part.leq("a", "c"));
        assert_eq!(seq.unit.apply("b"), Some("a"));
        assert!(is_trivial_map_preord(&seq.middle_composite()));
    }

    #[test]
    fn partial_order_has_discrete_torsion_part() {
        let chain = fixtures::chain2();
        let seq = preord_sequence(&chain);
        assert!(seq.torsion_part.is_discrete());
        assert_eq!(seq.torsion_free_part, chain);
    }

    #[test]
    fn i2_sequence_is_whole_groupoid_with_truncated_quotient() {
        let i2 = fixtures::i2();
        let seq = cat_sequence(&i2, 4);
        assert!(is_torsion_cat(&seq.torsion_part));
        assert_eq!(seq.torsion_part.arrow_count(), i2.arrow_count());
        assert!(!seq.quotient.is_complete());
        assert!(seq.materialized.is_none());
    }

    #[test]
    fn skeletal_fixture_is_its_own_quotient() {
        let cospan = fixtures::cospan_cat();
        let seq = cat_sequence(&cospan, 4);
        let (phi, eta) = seq.materialized.expect("cospan quotient is finite");
        assert_eq!(phi.object_count(), 3);
        assert_eq!(phi.arrow_count(), 5);
        assert!(eta.is_surjective_on_objects());
        // τ of a skeletal category with no non-identity isos is discrete.
        assert_eq!(seq.torsion_part.arrow_count(), 3);
    }
}
