use std::fmt;

use super::{Arrow, CarrierError, FinCat, FinPreord, Functor, MonotoneMap};

/// A sub-preordered set: a subset of the ambient carrier with the induced
/// order. Membership is stored as a bitmask over the sorted ambient carrier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubPreord {
    ambient: FinPreord,
    mask: u64,
}

impl SubPreord {
    pub fn new<S: AsRef<str>>(ambient: &FinPreord, members: &[S]) -> Result<Self, CarrierError> {
        let mut mask = 0u64;
        for m in members {
            let i = ambient
                .index_of(m.as_ref())
                .ok_or_else(|| CarrierError::NotAMember(m.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(SubPreord {
            ambient: ambient.clone(),
            mask,
        })
    }

    pub fn from_mask(ambient: &FinPreord, mask: u64) -> Self {
        debug_assert_eq!(mask >> ambient.len(), 0);
        SubPreord {
            ambient: ambient.clone(),
            mask,
        }
    }

    pub fn empty(ambient: &FinPreord) -> Self {
        Self::from_mask(ambient, 0)
    }

    pub fn whole(ambient: &FinPreord) -> Self {
        let mask = if ambient.is_empty() {
            0
        } else {
            (1u64 << ambient.len()) - 1
        };
        Self::from_mask(ambient, mask)
    }

    pub fn ambient(&self) -> &FinPreord {
        &self.ambient
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_whole(&self) -> bool {
        self == &Self::whole(&self.ambient)
    }

    pub fn members(&self) -> Vec<&str> {
        (0..self.ambient.len())
            .filter(|&i| self.contains_idx(i))
            .map(|i| self.ambient.name(i))
            .collect()
    }

    pub fn is_subset_of(&self, other: &SubPreord) -> bool {
        self.ambient == other.ambient && self.mask & !other.mask == 0
    }

    /// Carrier-level union inside the same ambient.
    pub fn union(&self, other: &SubPreord) -> SubPreord {
        debug_assert_eq!(self.ambient, other.ambient);
        Self::from_mask(&self.ambient, self.mask | other.mask)
    }

    /// Carrier-level intersection inside the same ambient.
    pub fn intersect(&self, other: &SubPreord) -> SubPreord {
        debug_assert_eq!(self.ambient, other.ambient);
        Self::from_mask(&self.ambient, self.mask & other.mask)
    }

    /// The induced preorder on the members, as a carrier in its own right.
    pub fn to_object(&self) -> FinPreord {
        let idxs: Vec<usize> = (0..self.ambient.len())
            .filter(|&i| self.contains_idx(i))
            .collect();
        let elems: Vec<String> = idxs
            .iter()
            .map(|&i| self.ambient.name(i).to_string())
            .collect();
        let n = idxs.len();
        let mut leq = vec![false; n * n];
        for (r, &i) in idxs.iter().enumerate() {
            for (c, &j) in idxs.iter().enumerate() {
                leq[r * n + c] = self.ambient.leq_idx(i, j);
            }
        }
        FinPreord::from_parts(elems, leq)
    }

    /// The inclusion of the induced object into the ambient.
    pub fn inclusion(&self) -> MonotoneMap {
        let obj = self.to_object();
        let assign: Vec<usize> = obj
            .elements()
            .iter()
            .map(|e| self.ambient.index_of(e).unwrap())
            .collect();
        MonotoneMap::from_table(obj, self.ambient.clone(), assign).unwrap()
    }
}

impl fmt::Debug for SubPreord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubPreord{{{}}}", self)
    }
}

impl fmt::Display for SubPreord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().join(","))
    }
}

impl MonotoneMap {
    /// Elementwise preimage of a subobject of the target.
    pub fn preimage(&self, s: &SubPreord) -> SubPreord {
        debug_assert_eq!(s.ambient(), self.target());
        let mut mask = 0u64;
        for (i, &v) in self.assign().iter().enumerate() {
            if s.contains_idx(v) {
                mask |= 1 << i;
            }
        }
        SubPreord::from_mask(self.source(), mask)
    }

    /// The image as a subobject of the target.
    pub fn image(&self) -> SubPreord {
        let mut mask = 0u64;
        for &v in self.assign() {
            mask |= 1 << v;
        }
        SubPreord::from_mask(self.target(), mask)
    }

    /// Restricts the domain to a subobject of the source.
    pub fn restrict(&self, s: &SubPreord) -> MonotoneMap {
        debug_assert_eq!(s.ambient(), self.source());
        let obj = s.to_object();
        let assign: Vec<usize> = obj
            .elements()
            .iter()
            .map(|e| self.apply_idx(self.source().index_of(e).unwrap()))
            .collect();
        MonotoneMap::from_table(obj, self.target().clone(), assign).unwrap()
    }

    /// Corestricts into a subobject of the target containing the image.
    pub fn corestrict(&self, s: &SubPreord) -> Result<MonotoneMap, CarrierError> {
        debug_assert_eq!(s.ambient(), self.target());
        let obj = s.to_object();
        let mut assign = Vec::with_capacity(self.source().len());
        for &v in self.assign() {
            if !s.contains_idx(v) {
                return Err(CarrierError::NotAMember(self.target().name(v).to_string()));
            }
            assign.push(obj.index_of(self.target().name(v)).unwrap());
        }
        MonotoneMap::from_table(self.source().clone(), obj, assign)
    }
}

/// A subcategory: subsets of objects and arrows, closed under identities of
/// its objects and under ambient composition, with endpoints inside.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubCat {
    ambient: FinCat,
    obj_mask: u64,
    arr_mask: u64,
}

impl SubCat {
    pub fn new<S: AsRef<str>>(
        ambient: &FinCat,
        objects: &[S],
        arrows: &[S],
    ) -> Result<Self, CarrierError> {
        let mut obj_mask = 0u64;
        for o in objects {
            let i = ambient
                .object_index(o.as_ref())
                .ok_or_else(|| CarrierError::NotAMember(o.as_ref().to_string()))?;
            obj_mask |= 1 << i;
        }
        let mut arr_mask = 0u64;
        for a in arrows {
            let i = ambient
                .arrow_index(a.as_ref())
                .ok_or_else(|| CarrierError::NotAMember(a.as_ref().to_string()))?;
            arr_mask |= 1 << i;
        }
        Self::from_masks(ambient, obj_mask, arr_mask)
    }

    pub fn from_masks(ambient: &FinCat, obj_mask: u64, arr_mask: u64) -> Result<Self, CarrierError> {
        for f in 0..ambient.arrow_count() {
            if arr_mask >> f & 1 == 0 {
                continue;
            }
            let a = ambient.arrow(f);
            if obj_mask >> a.dom & 1 == 0 || obj_mask >> a.cod & 1 == 0 {
                return Err(CarrierError::NotClosed(format!(
                    "arrow `{}` has an endpoint outside the object members",
                    a.name
                )));
            }
        }
        for o in 0..ambient.object_count() {
            if obj_mask >> o & 1 == 1 && arr_mask >> ambient.identity_of(o) & 1 == 0 {
                return Err(CarrierError::NotClosed(format!(
                    "identity of `{}` missing",
                    ambient.object_name(o)
                )));
            }
        }
        for g in 0..ambient.arrow_count() {
            if arr_mask >> g & 1 == 0 {
                continue;
            }
            for f in 0..ambient.arrow_count() {
                if arr_mask >> f & 1 == 0 {
                    continue;
                }
                if let Some(gf) = ambient.compose_idx(g, f) {
                    if arr_mask >> gf & 1 == 0 {
                        return Err(CarrierError::NotClosed(format!(
                            "composite `{}` of member arrows missing",
                            ambient.arrow(gf).name
                        )));
                    }
                }
            }
        }
        Ok(SubCat {
            ambient: ambient.clone(),
            obj_mask,
            arr_mask,
        })
    }

    /// The full subcategory on a set of objects.
    pub fn full(ambient: &FinCat, obj_mask: u64) -> Self {
        let mut arr_mask = 0u64;
        for f in 0..ambient.arrow_count() {
            let a = ambient.arrow(f);
            if obj_mask >> a.dom & 1 == 1 && obj_mask >> a.cod & 1 == 1 {
                arr_mask |= 1 << f;
            }
        }
        SubCat {
            ambient: ambient.clone(),
            obj_mask,
            arr_mask,
        }
    }

    pub fn empty(ambient: &FinCat) -> Self {
        SubCat {
            ambient: ambient.clone(),
            obj_mask: 0,
            arr_mask: 0,
        }
    }

    pub fn whole(ambient: &FinCat) -> Self {
        let obj_mask = if ambient.object_count() == 0 {
            0
        } else {
            (1u64 << ambient.object_count()) - 1
        };
        SubCat::full(ambient, obj_mask)
    }

    pub fn ambient(&self) -> &FinCat {
        &self.ambient
    }

    pub fn obj_mask(&self) -> u64 {
        self.obj_mask
    }

    pub fn arr_mask(&self) -> u64 {
        self.arr_mask
    }

    pub fn contains_obj(&self, i: usize) -> bool {
        self.obj_mask >> i & 1 == 1
    }

    pub fn contains_arr(&self, i: usize) -> bool {
        self.arr_mask >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.obj_mask == 0 && self.arr_mask == 0
    }

    pub fn is_whole(&self) -> bool {
        self == &SubCat::whole(&self.ambient)
    }

    pub fn object_members(&self) -> Vec<&str> {
        (0..self.ambient.object_count())
            .filter(|&i| self.contains_obj(i))
            .map(|i| self.ambient.object_name(i))
            .collect()
    }

    pub fn arrow_members(&self) -> Vec<&str> {
        (0..self.ambient.arrow_count())
            .filter(|&i| self.contains_arr(i))
            .map(|i| self.ambient.arrow(i).name.as_str())
            .collect()
    }

    pub fn is_subset_of(&self, other: &SubCat) -> bool {
        self.ambient == other.ambient
            && self.obj_mask & !other.obj_mask == 0
            && self.arr_mask & !other.arr_mask == 0
    }

    /// Whether every ambient arrow between member objects is a member.
    pub fn is_full(&self) -> bool {
        for f in 0..self.ambient.arrow_count() {
            let a = self.ambient.arrow(f);
            if self.contains_obj(a.dom) && self.contains_obj(a.cod) && !self.contains_arr(f) {
                return false;
            }
        }
        true
    }

    /// Set-level union followed by closure under composites of chains of
    /// consecutive member arrows. Returns the closed subcategory together
    /// with the number of arrows the closure step added.
    pub fn union_closed(&self, other: &SubCat) -> (SubCat, usize) {
        debug_assert_eq!(self.ambient, other.ambient);
        let obj_mask = self.obj_mask | other.obj_mask;
        let mut arr_mask = self.arr_mask | other.arr_mask;
        let before = arr_mask.count_ones();
        let na = self.ambient.arrow_count();
        loop {
            let mut grew = false;
            for g in 0..na {
                if arr_mask >> g & 1 == 0 {
                    continue;
                }
                for f in 0..na {
                    if arr_mask >> f & 1 == 0 {
                        continue;
                    }
                    if let Some(gf) = self.ambient.compose_idx(g, f) {
                        if arr_mask >> gf & 1 == 0 {
                            arr_mask |= 1 << gf;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let added = (arr_mask.count_ones() - before) as usize;
        let sub = SubCat::from_masks(&self.ambient, obj_mask, arr_mask)
            .expect("closure yields a valid subcategory");
        (sub, added)
    }

    pub fn intersect(&self, other: &SubCat) -> SubCat {
        debug_assert_eq!(self.ambient, other.ambient);
        SubCat::from_masks(
            &self.ambient,
            self.obj_mask & other.obj_mask,
            self.arr_mask & other.arr_mask,
        )
        .expect("intersection of subcategories is closed")
    }

    /// The induced category on the members.
    pub fn to_object(&self) -> FinCat {
        let objs: Vec<usize> = (0..self.ambient.object_count())
            .filter(|&i| self.contains_obj(i))
            .collect();
        let arrs: Vec<usize> = (0..self.ambient.arrow_count())
            .filter(|&i| self.contains_arr(i))
            .collect();
        let objects: Vec<String> = objs
            .iter()
            .map(|&i| self.ambient.object_name(i).to_string())
            .collect();
        let obj_pos = |amb: usize| objs.iter().position(|&x| x == amb).unwrap();
        let arr_pos = |amb: usize| arrs.iter().position(|&x| x == amb).unwrap();
        let arrows: Vec<Arrow> = arrs
            .iter()
            .map(|&i| {
                let a = self.ambient.arrow(i);
                Arrow {
                    name: a.name.clone(),
                    dom: obj_pos(a.dom),
                    cod: obj_pos(a.cod),
                }
            })
            .collect();
        let identity: Vec<usize> = objs
            .iter()
            .map(|&o| arr_pos(self.ambient.identity_of(o)))
            .collect();
        let na = arrs.len();
        let mut compose = vec![None; na * na];
        for (gi, &g) in arrs.iter().enumerate() {
            for (fi, &f) in arrs.iter().enumerate() {
                if let Some(gf) = self.ambient.compose_idx(g, f) {
                    compose[gi * na + fi] = Some(arr_pos(gf));
                }
            }
        }
        FinCat::from_parts(objects, arrows, identity, compose)
    }

    /// The inclusion of the induced category into the ambient.
    pub fn inclusion(&self) -> Functor {
        let obj = self.to_object();
        let obj_assign: Vec<usize> = obj
            .objects()
            .iter()
            .map(|o| self.ambient.object_index(o).unwrap())
            .collect();
        let arr_assign: Vec<usize> = obj
            .arrows()
            .iter()
            .map(|a| self.ambient.arrow_index(&a.name).unwrap())
            .collect();
        Functor::from_tables(obj, self.ambient.clone(), obj_assign, arr_assign).unwrap()
    }
}

impl fmt::Debug for SubCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubCat{{{}}}", self)
    }
}

impl fmt::Display for SubCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{obj:{}; arr:{}}}",
            self.object_members().join(","),
            self.arrow_members().join(",")
        )
    }
}

impl Functor {
    /// Elementwise preimage of a subcategory of the target; the result is
    /// closed because functors preserve identities and composition.
    pub fn preimage(&self, s: &SubCat) -> SubCat {
        debug_assert_eq!(s.ambient(), self.target());
        let mut obj_mask = 0u64;
        for (i, &v) in self.obj_assign().iter().enumerate() {
            if s.contains_obj(v) {
                obj_mask |= 1 << i;
            }
        }
        let mut arr_mask = 0u64;
        for (i, &v) in self.arr_assign().iter().enumerate() {
            if s.contains_arr(v) {
                arr_mask |= 1 << i;
            }
        }
        SubCat::from_masks(self.source(), obj_mask, arr_mask)
            .expect("preimage of a subcategory is closed")
    }

    /// The image subcategory, closed under composition in the target.
    pub fn image_closed(&self) -> SubCat {
        let mut obj_mask = 0u64;
        for &v in self.obj_assign() {
            obj_mask |= 1 << v;
        }
        let mut arr_mask = 0u64;
        for &v in self.arr_assign() {
            arr_mask |= 1 << v;
        }
        let na = self.target().arrow_count();
        loop {
            let mut grew = false;
            for g in 0..na {
                if arr_mask >> g & 1 == 0 {
                    continue;
                }
                for f in 0..na {
                    if arr_mask >> f & 1 == 0 {
                        continue;
                    }
                    if let Some(gf) = self.target().compose_idx(g, f) {
                        if arr_mask >> gf & 1 == 0 {
                            arr_mask |= 1 << gf;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        SubCat::from_masks(self.target(), obj_mask, arr_mask)
            .expect("closed image is a subcategory")
    }

    /// Restricts the domain to a subcategory of the source.
    pub fn restrict(&self, s: &SubCat) -> Functor {
        debug_assert_eq!(s.ambient(), self.source());
        let obj = s.to_object();
        let obj_assign: Vec<usize> = obj
            .objects()
            .iter()
            .map(|o| self.apply_obj(self.source().object_index(o).unwrap()))
            .collect();
        let arr_assign: Vec<usize> = obj
            .arrows()
            .iter()
            .map(|a| self.apply_arr(self.source().arrow_index(&a.name).unwrap()))
            .collect();
        Functor::from_tables(obj, self.target().clone(), obj_assign, arr_assign).unwrap()
    }

    /// Corestricts into a subcategory of the target containing the image.
    pub fn corestrict(&self, s: &SubCat) -> Result<Functor, CarrierError> {
        debug_assert_eq!(s.ambient(), self.target());
        let obj = s.to_object();
        let mut obj_assign = Vec::with_capacity(self.source().object_count());
        for &v in self.obj_assign() {
            if !s.contains_obj(v) {
                return Err(CarrierError::NotAMember(
                    self.target().object_name(v).to_string(),
                ));
            }
            obj_assign.push(obj.object_index(self.target().object_name(v)).unwrap());
        }
        let mut arr_assign = Vec::with_capacity(self.source().arrow_count());
        for &v in self.arr_assign() {
            if !s.contains_arr(v) {
                return Err(CarrierError::NotAMember(
                    self.target().arrow(v).name.clone(),
                ));
            }
            arr_assign.push(obj.arrow_index(&self.target().arrow(v).name).unwrap());
        }
        Functor::from_tables(self.source().clone(), obj, obj_assign, arr_assign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;
    use std::collections::BTreeMap;

    #[test]
    fn preimage_is_elementwise() {
        let p3 = fixtures::p3();
        let chain = FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap();
        let mut assign = BTreeMap::new();
        assign.insert("a".to_string(), "x".to_string());
        assign.insert("b".to_string(), "x".to_string());
        assign.insert("c".to_string(), "y".to_string());
        let f = MonotoneMap::new(p3.clone(), chain.clone(), &assign).unwrap();
        let s = SubPreord::new(&chain, &["y"]).unwrap();
        assert_eq!(f.preimage(&s).members(), vec!["c"]);
        assert!(f.preimage(&SubPreord::whole(&chain)).is_whole());
        assert!(f.preimage(&SubPreord::empty(&chain)).is_empty());
    }

    #[test]
    fn functor_preimage_on_fixtures() {
        let arrow = fixtures::arrow_cat();
        let i2 = fixtures::i2();
        let mut objects = BTreeMap::new();
        objects.insert("A".into(), "x".into());
        objects.insert("B".into(), "y".into());
        let mut arrows = BTreeMap::new();
        arrows.insert("f".into(), "u".into());
        arrows.insert("idA".into(), "idx".into());
        arrows.insert("idB".into(), "idy".into());
        let func = Functor::new(arrow.clone(), i2.clone(), &objects, &arrows).unwrap();
        let s = SubCat::new(&i2, &["x"], &["idx"]).unwrap();
        let pre = func.preimage(&s);
        assert_eq!(pre.object_members(), vec!["A"]);
        assert_eq!(pre.arrow_members(), vec!["idA"]);
    }

    #[test]
    fn preimage_functoriality_on_a_composable_pair() {
        let p3 = fixtures::p3();
        let chain = FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap();
        for g in MonotoneMap::hom(&p3, &chain) {
            for f in MonotoneMap::hom(&chain, &p3) {
                let gf = g.compose(&f).unwrap();
                for mask in 0..4u64 {
                    let s = SubPreord::from_mask(&chain, mask);
                    assert_eq!(gf.preimage(&s), f.preimage(&g.preimage(&s)));
                }
            }
        }
    }

    #[test]
    fn subcat_closure_is_validated() {
        let i2 = fixtures::i2();
        // u without its endpoints' identities is rejected.
        let err = SubCat::new(&i2, &["x", "y"], &["u"]).unwrap_err();
        assert!(matches!(err, CarrierError::NotClosed(_)));
        // u and v without their composites is rejected.
        let err = SubCat::new(&i2, &["x", "y"], &["u", "v", "idx"]).unwrap_err();
        assert!(matches!(err, CarrierError::NotClosed(_)));
        let ok = SubCat::whole(&i2);
        assert!(ok.is_full());
    }

    #[test]
    fn induced_category_of_full_subcat() {
        let cospan = fixtures::cospan_cat();
        let amask = 1u64 << cospan.object_index("A").unwrap()
            | 1 << cospan.object_index("B").unwrap();
        let sub = SubCat::full(&cospan, amask);
        let obj = sub.to_object();
        assert_eq!(obj.object_count(), 2);
        assert_eq!(obj.arrow_count(), 3);
        let incl = sub.inclusion();
        assert!(incl.compose(&Functor::identity(&obj)).is_ok());
    }
}
