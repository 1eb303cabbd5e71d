use std::fmt;

use super::CarrierError;

/// One arrow of a [`FinCat`]: a name plus endpoint object indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category given by explicit tables: objects, named arrows, chosen
/// identities, and a total composition table on composable pairs.
///
/// Objects and arrows are each kept sorted by name; composition is stored as
/// `compose[g * arrows + f]` for the composite `g ∘ f` (defined exactly when
/// `cod f = dom g`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    compose: Vec<Option<usize>>,
}

/// Raw description consumed by [`FinCat::new`]; endpoints and composites by
/// name. Identity composites may be omitted: the unit laws force them.
pub struct RawCat<'a> {
    pub objects: &'a [&'a str],
    /// (name, dom, cod)
    pub arrows: &'a [(&'a str, &'a str, &'a str)],
    /// object name -> identity arrow name
    pub identities: &'a [(&'a str, &'a str)],
    /// (g, f, g∘f)
    pub compose: &'a [(&'a str, &'a str, &'a str)],
}

impl FinCat {
    pub fn new(raw: &RawCat<'_>) -> Result<Self, CarrierError> {
        let mut objects: Vec<String> = raw.objects.iter().map(|s| s.to_string()).collect();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(CarrierError::DuplicateName(w[0].clone()));
            }
        }
        let obj_idx = |s: &str| -> Result<usize, CarrierError> {
            objects
                .binary_search_by(|x| x.as_str().cmp(s))
                .map_err(|_| CarrierError::UnknownElement(s.to_string()))
        };
        let mut arrows: Vec<Arrow> = Vec::new();
        for (name, dom, cod) in raw.arrows {
            let dom = obj_idx(dom).map_err(|_| CarrierError::DanglingEndpoint(name.to_string()))?;
            let cod = obj_idx(cod).map_err(|_| CarrierError::DanglingEndpoint(name.to_string()))?;
            arrows.push(Arrow {
                name: name.to_string(),
                dom,
                cod,
            });
        }
        arrows.sort();
        for w in arrows.windows(2) {
            if w[0].name == w[1].name {
                return Err(CarrierError::DuplicateName(w[0].name.clone()));
            }
        }
        let arr_idx = |s: &str| -> Result<usize, CarrierError> {
            arrows
                .binary_search_by(|x| x.name.as_str().cmp(s))
                .map_err(|_| CarrierError::UnknownElement(s.to_string()))
        };

        let mut identity = vec![usize::MAX; objects.len()];
        for (obj, id_arrow) in raw.identities {
            let o = obj_idx(obj)?;
            let a = arr_idx(id_arrow)?;
            if arrows[a].dom != o || arrows[a].cod != o {
                return Err(CarrierError::BadIdentity(objects[o].clone()));
            }
            identity[o] = a;
        }
        for (o, &a) in identity.iter().enumerate() {
            if a == usize::MAX {
                return Err(CarrierError::BadIdentity(objects[o].clone()));
            }
        }

        let na = arrows.len();
        let mut compose: Vec<Option<usize>> = vec![None; na * na];
        for (g, f, gf) in raw.compose {
            let g = arr_idx(g)?;
            let f = arr_idx(f)?;
            let gf = arr_idx(gf)?;
            if arrows[f].cod != arrows[g].dom {
                return Err(CarrierError::NotComposable(
                    arrows[g].name.clone(),
                    arrows[f].name.clone(),
                ));
            }
            compose[g * na + f] = Some(gf);
        }
        // Unit laws force identity composites; fill the missing ones and
        // reject explicit entries that disagree.
        for f in 0..na {
            let idc = identity[arrows[f].cod];
            let idd = identity[arrows[f].dom];
            for (g, x, expect) in [(idc, f, f), (f, idd, f)] {
                match compose[g * na + x] {
                    None => compose[g * na + x] = Some(expect),
                    Some(v) if v == expect => {}
                    Some(_) => return Err(CarrierError::UnitLawViolation(arrows[f].name.clone())),
                }
            }
        }

        let cat = FinCat {
            objects,
            arrows,
            identity,
            compose,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), CarrierError> {
        let na = self.arrows.len();
        for g in 0..na {
            for f in 0..na {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match (composable, self.compose[g * na + f]) {
                    (true, None) => {
                        return Err(CarrierError::MissingComposite(
                            self.arrows[g].name.clone(),
                            self.arrows[f].name.clone(),
                        ))
                    }
                    (false, Some(_)) => {
                        return Err(CarrierError::NotComposable(
                            self.arrows[g].name.clone(),
                            self.arrows[f].name.clone(),
                        ))
                    }
                    (true, Some(gf)) => {
                        if self.arrows[gf].dom != self.arrows[f].dom
                            || self.arrows[gf].cod != self.arrows[g].cod
                        {
                            return Err(CarrierError::NotComposable(
                                self.arrows[g].name.clone(),
                                self.arrows[f].name.clone(),
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..na {
            let idc = self.identity[self.arrows[f].cod];
            let idd = self.identity[self.arrows[f].dom];
            if self.compose[idc * na + f] != Some(f) || self.compose[f * na + idd] != Some(f) {
                return Err(CarrierError::UnitLawViolation(self.arrows[f].name.clone()));
            }
        }
        for h in 0..na {
            for g in 0..na {
                if self.arrows[g].cod != self.arrows[h].dom {
                    continue;
                }
                let hg = self.compose[h * na + g].unwrap();
                for f in 0..na {
                    if self.arrows[f].cod != self.arrows[g].dom {
                        continue;
                    }
                    let gf = self.compose[g * na + f].unwrap();
                    if self.compose[h * na + gf] != self.compose[hg * na + f] {
                        return Err(CarrierError::AssociativityViolation(
                            self.arrows[h].name.clone(),
                            self.arrows[g].name.clone(),
                            self.arrows[f].name.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The empty category, the strict initial object.
    pub fn empty() -> Self {
        FinCat {
            objects: Vec::new(),
            arrows: Vec::new(),
            identity: Vec::new(),
            compose: Vec::new(),
        }
    }

    pub(crate) fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Self {
        let cat = FinCat {
            objects,
            arrows,
            identity,
            compose,
        };
        debug_assert!(cat.check_laws().is_ok());
        cat
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows
            .binary_search_by(|x| x.name.as_str().cmp(name))
            .ok()
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn identity_of(&self, obj: usize) -> usize {
        self.identity[obj]
    }

    pub fn is_identity(&self, arr: usize) -> bool {
        self.identity[self.arrows[arr].dom] == arr
    }

    /// `g ∘ f`, defined when `cod f = dom g`.
    pub fn compose_idx(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + f]
    }

    /// The two-sided inverse of an arrow, if it has one.
    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        let a = &self.arrows[f];
        (0..self.arrows.len()).find(|&g| {
            self.arrows[g].dom == a.cod
                && self.arrows[g].cod == a.dom
                && self.compose_idx(g, f) == Some(self.identity[a.dom])
                && self.compose_idx(f, g) == Some(self.identity[a.cod])
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse_of(f).is_some()
    }

    /// Iso-classes of objects, each sorted, listed by least member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut related = vec![false; n * n];
        for i in 0..n {
            related[i * n + i] = true;
        }
        for f in 0..self.arrows.len() {
            if self.is_iso(f) {
                let a = &self.arrows[f];
                related[a.dom * n + a.cod] = true;
                related[a.cod * n + a.dom] = true;
            }
        }
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            // Iso-connectivity is already transitive (isos compose), but take
            // the reachable set anyway.
            let mut class = vec![i];
            let mut stack = vec![i];
            seen[i] = true;
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && related[v * n + w] {
                        seen[w] = true;
                        class.push(w);
                        stack.push(w);
                    }
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    pub fn arrows_between(&self, dom: usize, cod: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].dom == dom && self.arrows[f].cod == cod)
            .collect()
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat{{{}}}", self)
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrs: Vec<String> = (0..self.arrows.len())
            .filter(|&i| !self.is_identity(i))
            .map(|i| {
                let a = &self.arrows[i];
                format!(
                    "{}:{}->{}",
                    a.name, self.objects[a.dom], self.objects[a.cod]
                )
            })
            .collect();
        write!(f, "[{}; {}]", self.objects.join(","), arrs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    #[test]
    fn arrow_category_validates_with_forced_identities() {
        let cat = FinCat::new(&RawCat {
            objects: &["A", "B"],
            arrows: &[("f", "A", "B"), ("idA", "A", "A"), ("idB", "B", "B")],
            identities: &[("A", "idA"), ("B", "idB")],
            compose: &[],
        })
        .unwrap();
        assert_eq!(cat.object_count(), 2);
        assert_eq!(cat.arrow_count(), 3);
        let f = cat.arrow_index("f").unwrap();
        let ida = cat.arrow_index("idA").unwrap();
        assert_eq!(cat.compose_idx(f, ida), Some(f));
    }

    #[test]
    fn indiscrete_two_object_category_validates() {
        let i2 = fixtures::i2();
        let u = i2.arrow_index("u").unwrap();
        let v = i2.arrow_index("v").unwrap();
        assert!(i2.is_iso(u));
        assert_eq!(i2.inverse_of(u), Some(v));
        assert_eq!(i2.iso_classes().len(), 1);
    }

    #[test]
    fn missing_composite_is_reported() {
        let err = FinCat::new(&RawCat {
            objects: &["x", "y"],
            arrows: &[
                ("u", "x", "y"),
                ("v", "y", "x"),
                ("idx", "x", "x"),
                ("idy", "y", "y"),
            ],
            identities: &[("x", "idx"), ("y", "idy")],
            compose: &[("u", "v", "idy")],
        })
        .unwrap_err();
        assert_eq!(err, CarrierError::MissingComposite("v".into(), "u".into()));
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let err = FinCat::new(&RawCat {
            objects: &["A"],
            arrows: &[("f", "A", "Z"), ("idA", "A", "A")],
            identities: &[("A", "idA")],
            compose: &[],
        })
        .unwrap_err();
        assert_eq!(err, CarrierError::DanglingEndpoint("f".into()));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // Two parallel endos with a deliberately inconsistent table.
        let err = FinCat::new(&RawCat {
            objects: &["x"],
            arrows: &[("idx", "x", "x"), ("s", "x", "x"), ("t", "x", "x")],
            identities: &[("x", "idx")],
            compose: &[
                ("s", "s", "t"),
                ("s", "t", "s"),
                ("t", "s", "s"),
                ("t", "t", "idx"),
            ],
        })
        .unwrap_err();
        assert!(matches!(err, CarrierError::AssociativityViolation(..)));
    }
}
