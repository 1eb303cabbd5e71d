use std::collections::BTreeMap;
use std::fmt;

use super::{CarrierError, FinCat, FinPreord};

/// A monotone map between finite preorders; the assignment is total and
/// stored by source index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    source: FinPreord,
    target: FinPreord,
    assign: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(
        source: FinPreord,
        target: FinPreord,
        assign: &BTreeMap<String, String>,
    ) -> Result<Self, CarrierError> {
        let mut table = vec![usize::MAX; source.len()];
        for (a, b) in assign {
            let i = source
                .index_of(a)
                .ok_or_else(|| CarrierError::UnknownElement(a.clone()))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| CarrierError::UnknownElement(b.clone()))?;
            table[i] = j;
        }
        for (i, &v) in table.iter().enumerate() {
            if v == usize::MAX {
                return Err(CarrierError::NotTotal(source.name(i).to_string()));
            }
        }
        Self::from_table(source, target, table)
    }

    pub fn from_table(
        source: FinPreord,
        target: FinPreord,
        assign: Vec<usize>,
    ) -> Result<Self, CarrierError> {
        debug_assert_eq!(assign.len(), source.len());
        for i in 0..source.len() {
            for j in 0..source.len() {
                if source.leq_idx(i, j) && !target.leq_idx(assign[i], assign[j]) {
                    return Err(CarrierError::NotMonotone(
                        source.name(i).to_string(),
                        source.name(j).to_string(),
                    ));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            assign,
        })
    }

    pub fn identity(p: &FinPreord) -> Self {
        MonotoneMap {
            source: p.clone(),
            target: p.clone(),
            assign: (0..p.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinPreord {
        &self.source
    }

    pub fn target(&self) -> &FinPreord {
        &self.target
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.assign[i]
    }

    pub fn apply(&self, name: &str) -> Option<&str> {
        self.source
            .index_of(name)
            .map(|i| self.target.name(self.assign[i]))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &MonotoneMap) -> Result<Self, CarrierError> {
        if first.target != self.source {
            return Err(CarrierError::Mismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(MonotoneMap {
            source: first.source.clone(),
            target: self.target.clone(),
            assign: first.assign.iter().map(|&i| self.assign[i]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &v in &self.assign {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &v in &self.assign {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    /// All monotone maps from `source` to `target`, in lexicographic order of
    /// their assignment tables.
    pub fn hom(source: &FinPreord, target: &FinPreord) -> Vec<MonotoneMap> {
        let n = source.len();
        let m = target.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push(MonotoneMap {
                source: source.clone(),
                target: target.clone(),
                assign: Vec::new(),
            });
            return out;
        }
        if m == 0 {
            return out;
        }
        let mut table = vec![0usize; n];
        let mut pos = 0usize;
        // Backtracking over assignments with incremental monotonicity checks.
        loop {
            let consistent = (0..pos).all(|j| {
                (!source.leq_idx(j, pos) || target.leq_idx(table[j], table[pos]))
                    && (!source.leq_idx(pos, j) || target.leq_idx(table[pos], table[j]))
            });
            if consistent {
                if pos + 1 == n {
                    out.push(MonotoneMap {
                        source: source.clone(),
                        target: target.clone(),
                        assign: table.clone(),
                    });
                } else {
                    pos += 1;
                    table[pos] = 0;
                    continue;
                }
            }
            // Advance to the next candidate.
            loop {
                if table[pos] + 1 < m {
                    table[pos] += 1;
                    break;
                }
                if pos == 0 {
                    return out;
                }
                pos -= 1;
            }
        }
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneMap{{{}}}", self)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .assign
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}->{}", self.source.name(i), self.target.name(v)))
            .collect();
        write!(f, "{{{}}}", entries.join(","))
    }
}

/// A functor between finite categories, stored as total index tables on
/// objects and arrows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functor {
    source: FinCat,
    target: FinCat,
    obj_assign: Vec<usize>,
    arr_assign: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: FinCat,
        target: FinCat,
        objects: &BTreeMap<String, String>,
        arrows: &BTreeMap<String, String>,
    ) -> Result<Self, CarrierError> {
        let mut obj_assign = vec![usize::MAX; source.object_count()];
        for (a, b) in objects {
            let i = source
                .object_index(a)
                .ok_or_else(|| CarrierError::UnknownElement(a.clone()))?;
            let j = target
                .object_index(b)
                .ok_or_else(|| CarrierError::UnknownElement(b.clone()))?;
            obj_assign[i] = j;
        }
        let mut arr_assign = vec![usize::MAX; source.arrow_count()];
        for (a, b) in arrows {
            let i = source
                .arrow_index(a)
                .ok_or_else(|| CarrierError::UnknownElement(a.clone()))?;
            let j = target
                .arrow_index(b)
                .ok_or_else(|| CarrierError::UnknownElement(b.clone()))?;
            arr_assign[i] = j;
        }
        for (i, &v) in obj_assign.iter().enumerate() {
            if v == usize::MAX {
                return Err(CarrierError::NotTotal(source.object_name(i).to_string()));
            }
        }
        for (i, &v) in arr_assign.iter().enumerate() {
            if v == usize::MAX {
                return Err(CarrierError::NotTotal(source.arrow(i).name.clone()));
            }
        }
        Self::from_tables(source, target, obj_assign, arr_assign)
    }

    pub fn from_tables(
        source: FinCat,
        target: FinCat,
        obj_assign: Vec<usize>,
        arr_assign: Vec<usize>,
    ) -> Result<Self, CarrierError> {
        for f in 0..source.arrow_count() {
            let a = source.arrow(f);
            let fa = target.arrow(arr_assign[f]);
            if fa.dom != obj_assign[a.dom] || fa.cod != obj_assign[a.cod] {
                return Err(CarrierError::NotFunctorial(
                    "endpoints".into(),
                    a.name.clone(),
                ));
            }
        }
        for o in 0..source.object_count() {
            if arr_assign[source.identity_of(o)] != target.identity_of(obj_assign[o]) {
                return Err(CarrierError::NotFunctorial(
                    "identity".into(),
                    source.object_name(o).to_string(),
                ));
            }
        }
        for g in 0..source.arrow_count() {
            for f in 0..source.arrow_count() {
                if let Some(gf) = source.compose_idx(g, f) {
                    let lhs = target.compose_idx(arr_assign[g], arr_assign[f]);
                    if lhs != Some(arr_assign[gf]) {
                        return Err(CarrierError::NotFunctorial(
                            "composition".into(),
                            format!("{}∘{}", source.arrow(g).name, source.arrow(f).name),
                        ));
                    }
                }
            }
        }
        Ok(Functor {
            source,
            target,
            obj_assign,
            arr_assign,
        })
    }

    pub fn identity(c: &FinCat) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            obj_assign: (0..c.object_count()).collect(),
            arr_assign: (0..c.arrow_count()).collect(),
        }
    }

    pub fn source(&self) -> &FinCat {
        &self.source
    }

    pub fn target(&self) -> &FinCat {
        &self.target
    }

    pub fn obj_assign(&self) -> &[usize] {
        &self.obj_assign
    }

    pub fn arr_assign(&self) -> &[usize] {
        &self.arr_assign
    }

    pub fn apply_obj(&self, i: usize) -> usize {
        self.obj_assign[i]
    }

    pub fn apply_arr(&self, i: usize) -> usize {
        self.arr_assign[i]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Functor) -> Result<Self, CarrierError> {
        if first.target != self.source {
            return Err(CarrierError::Mismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_assign: first.obj_assign.iter().map(|&i| self.obj_assign[i]).collect(),
            arr_assign: first.arr_assign.iter().map(|&i| self.arr_assign[i]).collect(),
        })
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.object_count()];
        for &v in &self.obj_assign {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Whether the image arrows, closed under composition in the target,
    /// give every arrow of the target. Together with object surjectivity
    /// this certifies the functor as an epimorphism.
    pub fn image_generates_arrows(&self) -> bool {
        let na = self.target.arrow_count();
        let mut have = vec![false; na];
        for &v in &self.arr_assign {
            have[v] = true;
        }
        for o in 0..self.target.object_count() {
            have[self.target.identity_of(o)] = true;
        }
        loop {
            let mut grew = false;
            for g in 0..na {
                if !have[g] {
                    continue;
                }
                for f in 0..na {
                    if !have[f] {
                        continue;
                    }
                    if let Some(gf) = self.target.compose_idx(g, f) {
                        if !have[gf] {
                            have[gf] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        have.into_iter().all(|b| b)
    }

    /// All functors from `source` to `target`, in lexicographic order of
    /// (object table, arrow table).
    pub fn hom(source: &FinCat, target: &FinCat) -> Vec<Functor> {
        let mut out = Vec::new();
        let no = source.object_count();
        if no == 0 {
            out.push(Functor {
                source: source.clone(),
                target: target.clone(),
                obj_assign: Vec::new(),
                arr_assign: Vec::new(),
            });
            return out;
        }
        if target.object_count() == 0 {
            return out;
        }
        let mut objs = vec![0usize; no];
        loop {
            enumerate_arrow_tables(source, target, &objs, &mut out);
            // Next object assignment.
            let mut pos = no;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if objs[pos] + 1 < target.object_count() {
                    objs[pos] += 1;
                    for o in objs.iter_mut().skip(pos + 1) {
                        *o = 0;
                    }
                    break;
                }
            }
        }
    }
}

fn enumerate_arrow_tables(
    source: &FinCat,
    target: &FinCat,
    objs: &[usize],
    out: &mut Vec<Functor>,
) {
    let na = source.arrow_count();
    // Candidate target arrows per source arrow, endpoint- and identity-
    // constrained up front.
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(na);
    for f in 0..na {
        let a = source.arrow(f);
        let cands: Vec<usize> = if source.is_identity(f) {
            vec![target.identity_of(objs[a.dom])]
        } else {
            (0..target.arrow_count())
                .filter(|&g| {
                    target.arrow(g).dom == objs[a.dom] && target.arrow(g).cod == objs[a.cod]
                })
                .collect()
        };
        if cands.is_empty() {
            return;
        }
        candidates.push(cands);
    }
    let mut choice = vec![0usize; na];
    let mut pos = 0usize;
    loop {
        let f = pos;
        let img = candidates[f][choice[f]];
        // Composition constraints against already-fixed arrows.
        let ok = (0..=f).all(|g| {
            let img_g = candidates[g][choice[g]];
            let fwd = source
                .compose_idx(g, f)
                .map_or(true, |gf| gf > f || target.compose_idx(img_g, img) == Some(candidates[gf][choice[gf]]));
            let bwd = source
                .compose_idx(f, g)
                .map_or(true, |fg| fg > f || target.compose_idx(img, img_g) == Some(candidates[fg][choice[fg]]));
            fwd && bwd
        });
        if ok {
            if pos + 1 == na {
                let cand = Functor {
                    source: source.clone(),
                    target: target.clone(),
                    obj_assign: objs.to_vec(),
                    arr_assign: (0..na).map(|i| candidates[i][choice[i]]).collect(),
                };
                // Composites above the current prefix were deferred; a full
                // validation pass settles them.
                if Functor::from_tables(
                    cand.source.clone(),
                    cand.target.clone(),
                    cand.obj_assign.clone(),
                    cand.arr_assign.clone(),
                )
                .is_ok()
                {
                    out.push(cand);
                }
            } else {
                pos += 1;
                choice[pos] = 0;
                continue;
            }
        }
        loop {
            if choice[pos] + 1 < candidates[pos].len() {
                choice[pos] += 1;
                break;
            }
            if pos == 0 {
                return;
            }
            pos -= 1;
        }
    }
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor{{{}}}", self)
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let objs: Vec<String> = self
            .obj_assign
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                format!(
                    "{}->{}",
                    self.source.object_name(i),
                    self.target.object_name(v)
                )
            })
            .collect();
        let arrs: Vec<String> = self
            .arr_assign
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                format!(
                    "{}->{}",
                    self.source.arrow(i).name,
                    self.target.arrow(v).name
                )
            })
            .collect();
        write!(f, "{{obj:{}; arr:{}}}", objs.join(","), arrs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    #[test]
    fn hom_counts_against_direct_scan() {
        let chain = FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap();
        let p3 = fixtures::p3();
        let maps = MonotoneMap::hom(&p3, &chain);
        // Independent count: all functions, filtered by the definition.
        let mut expect = 0;
        for f in 0..(2usize.pow(3)) {
            let t = [f & 1, (f >> 1) & 1, (f >> 2) & 1];
            let ok = (0..3).all(|i| {
                (0..3).all(|j| !p3.leq_idx(i, j) || chain.leq_idx(t[i], t[j]))
            });
            if ok {
                expect += 1;
            }
        }
        assert_eq!(maps.len(), expect);
        assert!(maps.iter().all(|m| m.compose(&MonotoneMap::identity(&p3)).unwrap() == *m));
    }

    #[test]
    fn empty_source_has_exactly_one_map() {
        let empty = FinPreord::empty();
        let p3 = fixtures::p3();
        assert_eq!(MonotoneMap::hom(&empty, &p3).len(), 1);
        assert_eq!(MonotoneMap::hom(&p3, &empty).len(), 0);
    }

    #[test]
    fn functor_enumeration_respects_laws() {
        let arrow = fixtures::arrow_cat();
        let i2 = fixtures::i2();
        let fs = Functor::hom(&arrow, &i2);
        // Each of the 4 object assignments admits exactly the hom(x,y)-many
        // choices for the non-identity arrow, and every arrow of i2 is the
        // unique one between its endpoints.
        assert_eq!(fs.len(), 4);
        for f in &fs {
            assert!(Functor::from_tables(
                f.source().clone(),
                f.target().clone(),
                f.obj_assign().to_vec(),
                f.arr_assign().to_vec()
            )
            .is_ok());
        }
    }

    #[test]
    fn functor_image_generation() {
        let i2 = fixtures::i2();
        let id = Functor::identity(&i2);
        assert!(id.is_surjective_on_objects());
        assert!(id.image_generates_arrows());
    }
}
