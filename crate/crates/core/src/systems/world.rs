//! A shared interface over the two ambient settings (finite preorders with
//! monotone maps, finite categories with functors), fixing one system kind.
//! The CS verifier and the stable-category engine are written once against
//! this trait. Implementations memoize lattices and hom-sets; all published
//! values are immutable.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::fincat::{
    pushout_holds_cat, pushout_holds_preord, FinCat, FinPreord, Functor, MonotoneMap,
    PushoutReport, SubCat, SubPreord,
};
use crate::pretorsion;

use super::{
    enumerate_distinguished_cat, enumerate_distinguished_preord, is_distinguished_cat,
    is_distinguished_preord, SystemKind, DEFAULT_SIZE_CAP,
};

pub(crate) trait World {
    type Obj: Clone + Ord + fmt::Display + fmt::Debug;
    type Map: Clone + Ord + fmt::Display + fmt::Debug;
    type Sub: Clone + Ord + fmt::Display + fmt::Debug;

    fn kind(&self) -> SystemKind;
    fn effective(&self) -> bool;

    // Subobjects.
    fn whole_sub(&self, a: &Self::Obj) -> Self::Sub;
    fn empty_sub(&self, a: &Self::Obj) -> Self::Sub;
    fn is_whole(&self, s: &Self::Sub) -> bool;
    fn is_empty_sub(&self, s: &Self::Sub) -> bool;
    fn sub_object(&self, s: &Self::Sub) -> Self::Obj;
    fn sub_inclusion(&self, s: &Self::Sub) -> Self::Map;
    fn sub_leq(&self, s: &Self::Sub, t: &Self::Sub) -> bool;
    fn sub_union_raw(&self, s: &Self::Sub, t: &Self::Sub) -> Self::Sub;
    fn sub_meet_raw(&self, s: &Self::Sub, t: &Self::Sub) -> Self::Sub;
    fn is_distinguished(&self, s: &Self::Sub) -> bool;
    /// The distinguished lattice of an object, memoized, in report order.
    fn lattice(&self, a: &Self::Obj) -> Rc<Vec<Self::Sub>>;
    /// Every subobject candidate the kind predicate quantifies over.
    fn all_subobjects(&self, a: &Self::Obj) -> Vec<Self::Sub>;
    /// Reinterprets a subobject of `sub_object(parent)` inside the ambient
    /// of `parent`; members keep their names.
    fn lift_sub(&self, parent: &Self::Sub, inner: &Self::Sub) -> Self::Sub;
    /// Reinterprets `s ⊆ parent` as a subobject of `sub_object(parent)`.
    fn lower_sub(&self, parent: &Self::Sub, s: &Self::Sub) -> Self::Sub;

    // Morphisms.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Rc<Vec<Self::Map>>;
    fn map_source(&self, f: &Self::Map) -> Self::Obj;
    fn map_target(&self, f: &Self::Map) -> Self::Obj;
    fn identity_map(&self, a: &Self::Obj) -> Self::Map;
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Self::Map;
    fn preimage(&self, f: &Self::Map, s: &Self::Sub) -> Self::Sub;
    /// Image as a subobject of the target (composition-closed for functors).
    fn image_sub(&self, f: &Self::Map) -> Self::Sub;
    fn restrict(&self, f: &Self::Map, s: &Self::Sub) -> Self::Map;
    fn corestrict(&self, f: &Self::Map, s: &Self::Sub) -> Option<Self::Map>;
    /// `Some(true)`: certified epi. `Some(false)`: certified non-epi.
    /// `None`: cannot decide by local inspection.
    fn epi_certified(&self, f: &Self::Map) -> Option<bool>;

    // Pretorsion theory of the ambient.
    fn is_torsion(&self, a: &Self::Obj) -> bool;
    fn is_torsion_free(&self, a: &Self::Obj) -> bool;
    fn is_trivial_obj(&self, a: &Self::Obj) -> bool;
    fn is_trivial_map(&self, f: &Self::Map) -> bool;

    // Effectiveness probe.
    fn pushout_holds(&self, s: &Self::Sub, t: &Self::Sub, battery: &[Self::Obj]) -> PushoutReport;
}

// ---------------------------------------------------------------------------
// Finite preorders
// ---------------------------------------------------------------------------

pub(crate) struct PreordWorld {
    kind: SystemKind,
    cap: usize,
    lattices: RefCell<BTreeMap<FinPreord, Rc<Vec<SubPreord>>>>,
    homs: RefCell<BTreeMap<(FinPreord, FinPreord), Rc<Vec<MonotoneMap>>>>,
}

impl PreordWorld {
    pub fn new(kind: SystemKind) -> Self {
        PreordWorld {
            kind,
            cap: DEFAULT_SIZE_CAP,
            lattices: RefCell::new(BTreeMap::new()),
            homs: RefCell::new(BTreeMap::new()),
        }
    }
}

impl World for PreordWorld {
    type Obj = FinPreord;
    type Map = MonotoneMap;
    type Sub = SubPreord;

    fn kind(&self) -> SystemKind {
        self.kind
    }

    fn effective(&self) -> bool {
        self.kind.is_effective_preord()
    }

    fn whole_sub(&self, a: &FinPreord) -> SubPreord {
        SubPreord::whole(a)
    }

    fn empty_sub(&self, a: &FinPreord) -> SubPreord {
        SubPreord::empty(a)
    }

    fn is_whole(&self, s: &SubPreord) -> bool {
        s.is_whole()
    }

    fn is_empty_sub(&self, s: &SubPreord) -> bool {
        s.is_empty()
    }

    fn sub_object(&self, s: &SubPreord) -> FinPreord {
        s.to_object()
    }

    fn sub_inclusion(&self, s: &SubPreord) -> MonotoneMap {
        s.inclusion()
    }

    fn sub_leq(&self, s: &SubPreord, t: &SubPreord) -> bool {
        s.is_subset_of(t)
    }

    fn sub_union_raw(&self, s: &SubPreord, t: &SubPreord) -> SubPreord {
        s.union(t)
    }

    fn sub_meet_raw(&self, s: &SubPreord, t: &SubPreord) -> SubPreord {
        s.intersect(t)
    }

    fn is_distinguished(&self, s: &SubPreord) -> bool {
        is_distinguished_preord(s, self.kind).unwrap_or(false)
    }

    fn lattice(&self, a: &FinPreord) -> Rc<Vec<SubPreord>> {
        if let Some(l) = self.lattices.borrow().get(a) {
            return Rc::clone(l);
        }
        let lat = Rc::new(
            enumerate_distinguished_preord(a, self.kind, self.cap)
                .expect("kind applies and carrier is within cap"),
        );
        self.lattices
            .borrow_mut()
            .insert(a.clone(), Rc::clone(&lat));
        lat
    }

    fn all_subobjects(&self, a: &FinPreord) -> Vec<SubPreord> {
        (0..(1u64 << a.len()))
            .map(|m| SubPreord::from_mask(a, m))
            .collect()
    }

    fn lift_sub(&self, parent: &SubPreord, inner: &SubPreord) -> SubPreord {
        SubPreord::new(parent.ambient(), &inner.members())
            .expect("member names exist in the ambient")
    }

    fn lower_sub(&self, parent: &SubPreord, s: &SubPreord) -> SubPreord {
        debug_assert!(s.is_subset_of(parent));
        SubPreord::new(&parent.to_object(), &s.members())
            .expect("member names exist in the induced object")
    }

    fn hom(&self, a: &FinPreord, b: &FinPreord) -> Rc<Vec<MonotoneMap>> {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.borrow().get(&key) {
            return Rc::clone(h);
        }
        let maps = Rc::new(MonotoneMap::hom(a, b));
        self.homs.borrow_mut().insert(key, Rc::clone(&maps));
        maps
    }

    fn map_source(&self, f: &MonotoneMap) -> FinPreord {
        f.source().clone()
    }

    fn map_target(&self, f: &MonotoneMap) -> FinPreord {
        f.target().clone()
    }

    fn identity_map(&self, a: &FinPreord) -> MonotoneMap {
        MonotoneMap::identity(a)
    }

    fn compose(&self, g: &MonotoneMap, f: &MonotoneMap) -> MonotoneMap {
        g.compose(f).expect("composable by construction")
    }

    fn preimage(&self, f: &MonotoneMap, s: &SubPreord) -> SubPreord {
        f.preimage(s)
    }

    fn image_sub(&self, f: &MonotoneMap) -> SubPreord {
        f.image()
    }

    fn restrict(&self, f: &MonotoneMap, s: &SubPreord) -> MonotoneMap {
        f.restrict(s)
    }

    fn corestrict(&self, f: &MonotoneMap, s: &SubPreord) -> Option<MonotoneMap> {
        f.corestrict(s).ok()
    }

    fn epi_certified(&self, f: &MonotoneMap) -> Option<bool> {
        Some(f.is_surjective())
    }

    fn is_torsion(&self, a: &FinPreord) -> bool {
        pretorsion::is_torsion_preord(a)
    }

    fn is_torsion_free(&self, a: &FinPreord) -> bool {
        pretorsion::is_torsion_free_preord(a)
    }

    fn is_trivial_obj(&self, a: &FinPreord) -> bool {
        pretorsion::is_trivial_object_preord(a)
    }

    fn is_trivial_map(&self, f: &MonotoneMap) -> bool {
        pretorsion::is_trivial_map_preord(f)
    }

    fn pushout_holds(&self, s: &SubPreord, t: &SubPreord, battery: &[FinPreord]) -> PushoutReport {
        pushout_holds_preord(s, t, battery)
    }
}

// ---------------------------------------------------------------------------
// Finite categories
// ---------------------------------------------------------------------------

pub(crate) struct CatWorld {
    kind: SystemKind,
    cap: usize,
    lattices: RefCell<BTreeMap<FinCat, Rc<Vec<SubCat>>>>,
    homs: RefCell<BTreeMap<(FinCat, FinCat), Rc<Vec<Functor>>>>,
}

impl CatWorld {
    pub fn new(kind: SystemKind) -> Self {
        CatWorld {
            kind,
            cap: DEFAULT_SIZE_CAP,
            lattices: RefCell::new(BTreeMap::new()),
            homs: RefCell::new(BTreeMap::new()),
        }
    }
}

impl World for CatWorld {
    type Obj = FinCat;
    type Map = Functor;
    type Sub = SubCat;

    fn kind(&self) -> SystemKind {
        self.kind
    }

    fn effective(&self) -> bool {
        self.kind.is_effective_cat()
    }

    fn whole_sub(&self, a: &FinCat) -> SubCat {
        SubCat::whole(a)
    }

    fn empty_sub(&self, a: &FinCat) -> SubCat {
        SubCat::empty(a)
    }

    fn is_whole(&self, s: &SubCat) -> bool {
        s.is_whole()
    }

    fn is_empty_sub(&self, s: &SubCat) -> bool {
        s.is_empty()
    }

    fn sub_object(&self, s: &SubCat) -> FinCat {
        s.to_object()
    }

    fn sub_inclusion(&self, s: &SubCat) -> Functor {
        s.inclusion()
    }

    fn sub_leq(&self, s: &SubCat, t: &SubCat) -> bool {
        s.is_subset_of(t)
    }

    fn sub_union_raw(&self, s: &SubCat, t: &SubCat) -> SubCat {
        s.union_closed(t).0
    }

    fn sub_meet_raw(&self, s: &SubCat, t: &SubCat) -> SubCat {
        s.intersect(t)
    }

    fn is_distinguished(&self, s: &SubCat) -> bool {
        is_distinguished_cat(s, self.kind).unwrap_or(false)
    }

    fn lattice(&self, a: &FinCat) -> Rc<Vec<SubCat>> {
        if let Some(l) = self.lattices.borrow().get(a) {
            return Rc::clone(l);
        }
        let lat = Rc::new(
            enumerate_distinguished_cat(a, self.kind, self.cap)
                .expect("kind applies and object count is within cap"),
        );
        self.lattices
            .borrow_mut()
            .insert(a.clone(), Rc::clone(&lat));
        lat
    }

    fn all_subobjects(&self, a: &FinCat) -> Vec<SubCat> {
        // Distinguished subcategories are full, so full subcategories on
        // object subsets exhaust the candidates.
        (0..(1u64 << a.object_count()))
            .map(|m| SubCat::full(a, m))
            .collect()
    }

    fn lift_sub(&self, parent: &SubCat, inner: &SubCat) -> SubCat {
        SubCat::new(
            parent.ambient(),
            &inner.object_members(),
            &inner.arrow_members(),
        )
        .expect("member names exist in the ambient")
    }

    fn lower_sub(&self, parent: &SubCat, s: &SubCat) -> SubCat {
        debug_assert!(s.is_subset_of(parent));
        SubCat::new(&parent.to_object(), &s.object_members(), &s.arrow_members())
            .expect("member names exist in the induced object")
    }

    fn hom(&self, a: &FinCat, b: &FinCat) -> Rc<Vec<Functor>> {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.borrow().get(&key) {
            return Rc::clone(h);
        }
        let maps = Rc::new(Functor::hom(a, b));
        self.homs.borrow_mut().insert(key, Rc::clone(&maps));
        maps
    }

    fn map_source(&self, f: &Functor) -> FinCat {
        f.source().clone()
    }

    fn map_target(&self, f: &Functor) -> FinCat {
        f.target().clone()
    }

    fn identity_map(&self, a: &FinCat) -> Functor {
        Functor::identity(a)
    }

    fn compose(&self, g: &Functor, f: &Functor) -> Functor {
        g.compose(f).expect("composable by construction")
    }

    fn preimage(&self, f: &Functor, s: &SubCat) -> SubCat {
        f.preimage(s)
    }

    fn image_sub(&self, f: &Functor) -> SubCat {
        f.image_closed()
    }

    fn restrict(&self, f: &Functor, s: &SubCat) -> Functor {
        f.restrict(s)
    }

    fn corestrict(&self, f: &Functor, s: &SubCat) -> Option<Functor> {
        f.corestrict(s).ok()
    }

    fn epi_certified(&self, f: &Functor) -> Option<bool> {
        if f.is_surjective_on_objects() && f.image_generates_arrows() {
            Some(true)
        } else {
            None
        }
    }

    fn is_torsion(&self, a: &FinCat) -> bool {
        pretorsion::is_torsion_cat(a)
    }

    fn is_torsion_free(&self, a: &FinCat) -> bool {
        pretorsion::is_torsion_free_cat(a)
    }

    fn is_trivial_obj(&self, a: &FinCat) -> bool {
        pretorsion::is_trivial_object_cat(a)
    }

    fn is_trivial_map(&self, f: &Functor) -> bool {
        pretorsion::is_trivial_map_cat(f)
    }

    fn pushout_holds(&self, s: &SubCat, t: &SubCat, battery: &[FinCat]) -> PushoutReport {
        pushout_holds_cat(s, t, battery)
    }
}
