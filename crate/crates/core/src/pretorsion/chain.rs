//! Reduced chains: the arrows of the skeletal quotient of a finite category.
//!
//! A chain is a list of ambient arrows, read left to right, whose junctions
//! connect isomorphic objects. The normal form contains no identity arrow and
//! no consecutive composable pair. Normalization deletes identities and
//! composes composable neighbours until neither rule applies; each step
//! shortens the chain, so it terminates. Confluence across reduction orders
//! is property-tested, not assumed.

use std::fmt;

use thiserror::Error;

use crate::fincat::{Arrow, FinCat, Functor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("junction mismatch after position {0}: codomain class differs from next domain class")]
    JunctionMismatch(usize),
    #[error("unknown arrow index {0}")]
    UnknownArrow(usize),
}

/// An arrow of the skeletal quotient in reduced form: endpoints are
/// iso-classes, the body is a list of ambient arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainArrow {
    pub src_class: usize,
    pub tgt_class: usize,
    pub arrows: Vec<usize>,
}

impl ChainArrow {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.is_empty()
    }

    pub fn display<'a>(&'a self, ambient: &'a FinCat) -> ChainDisplay<'a> {
        ChainDisplay {
            chain: self,
            ambient,
        }
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a ChainArrow,
    ambient: &'a FinCat,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.arrows.is_empty() {
            write!(f, "<id:{}>", self.chain.src_class)
        } else {
            let names: Vec<&str> = self
                .chain
                .arrows
                .iter()
                .map(|&a| self.ambient.arrow(a).name.as_str())
                .collect();
            write!(f, "<{}>", names.join(":"))
        }
    }
}

/// Deletes identity arrows and composes composable neighbours, leftmost rule
/// first, until no rule applies.
pub fn normalize_chain(ambient: &FinCat, arrows: &[usize]) -> Result<Vec<usize>, ChainError> {
    for &a in arrows {
        if a >= ambient.arrow_count() {
            return Err(ChainError::UnknownArrow(a));
        }
    }
    let classes = class_map(ambient);
    for w in arrows.windows(2) {
        let cod = ambient.arrow(w[0]).cod;
        let dom = ambient.arrow(w[1]).dom;
        if classes[cod] != classes[dom] {
            let pos = arrows
                .windows(2)
                .position(|x| x == w)
                .unwrap_or(0);
            return Err(ChainError::JunctionMismatch(pos));
        }
    }
    let mut work: Vec<usize> = arrows.to_vec();
    loop {
        if let Some(pos) = work.iter().position(|&a| ambient.is_identity(a)) {
            work.remove(pos);
            continue;
        }
        let mut composed = false;
        for i in 0..work.len().saturating_sub(1) {
            let (f, g) = (work[i], work[i + 1]);
            if ambient.arrow(f).cod == ambient.arrow(g).dom {
                let gf = ambient
                    .compose_idx(g, f)
                    .expect("composable pair has a composite");
                work[i] = gf;
                work.remove(i + 1);
                composed = true;
                break;
            }
        }
        if !composed {
            return Ok(work);
        }
    }
}

fn class_map(ambient: &FinCat) -> Vec<usize> {
    let classes = ambient.iso_classes();
    let mut map = vec![0usize; ambient.object_count()];
    for (ci, class) in classes.iter().enumerate() {
        for &o in class {
            map[o] = ci;
        }
    }
    map
}

/// The skeletal quotient of a finite category, presented by reduced chains
/// enumerated up to a length bound.
#[derive(Debug, Clone)]
pub struct SkelQuotient {
    ambient: FinCat,
    /// Iso-classes of ambient objects, sorted by least member.
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    bound: usize,
    /// All reduced chains of length at most `bound`, identities first, then
    /// by (length, arrow indices).
    chains: Vec<ChainArrow>,
    /// Whether the enumeration is provably complete below the bound: reduced
    /// chains of every length exist only if they exist at each shorter
    /// length, so an empty level ends the enumeration for good.
    complete: bool,
}

impl SkelQuotient {
    pub fn new(ambient: &FinCat, bound: usize) -> Self {
        let classes = ambient.iso_classes();
        let class_of = class_map(ambient);
        let mut chains: Vec<ChainArrow> = (0..classes.len())
            .map(|c| ChainArrow {
                src_class: c,
                tgt_class: c,
                arrows: Vec::new(),
            })
            .collect();
        let mut level: Vec<Vec<usize>> = (0..ambient.arrow_count())
            .filter(|&a| !ambient.is_identity(a))
            .map(|a| vec![a])
            .collect();
        let mut complete = level.is_empty();
        let mut length = 1;
        while !level.is_empty() && length <= bound {
            for body in &level {
                chains.push(ChainArrow {
                    src_class: class_of[ambient.arrow(body[0]).dom],
                    tgt_class: class_of[ambient.arrow(*body.last().unwrap()).cod],
                    arrows: body.clone(),
                });
            }
            let mut next: Vec<Vec<usize>> = Vec::new();
            for body in &level {
                let cod = ambient.arrow(*body.last().unwrap()).cod;
                for g in 0..ambient.arrow_count() {
                    if !ambient.is_identity(g)
                        && ambient.arrow(g).dom != cod
                        && class_of[ambient.arrow(g).dom] == class_of[cod]
                    {
                        let mut ext = body.clone();
                        ext.push(g);
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                complete = true;
                break;
            }
            level = next;
            length += 1;
        }
        chains.sort_by(|a, b| {
            (a.arrows.len(), &a.arrows).cmp(&(b.arrows.len(), &b.arrows))
        });
        SkelQuotient {
            ambient: ambient.clone(),
            classes,
            class_of,
            bound,
            chains,
            complete,
        }
    }

    pub fn ambient(&self) -> &FinCat {
        &self.ambient
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `true` when every reduced chain of the quotient is enumerated;
    /// `false` when the universe was truncated at the bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, obj: usize) -> usize {
        self.class_of[obj]
    }

    /// Deterministic name for a class: the least object name in it.
    pub fn class_name(&self, class: usize) -> &str {
        self.ambient.object_name(self.classes[class][0])
    }

    pub fn chains(&self) -> &[ChainArrow] {
        &self.chains
    }

    pub fn chain_index(&self, c: &ChainArrow) -> Option<usize> {
        self.chains.iter().position(|x| x == c)
    }

    pub fn identity_chain(&self, class: usize) -> ChainArrow {
        ChainArrow {
            src_class: class,
            tgt_class: class,
            arrows: Vec::new(),
        }
    }

    /// The image of an ambient arrow under the quotient map.
    pub fn project_arrow(&self, arrow: usize) -> ChainArrow {
        let body = normalize_chain(&self.ambient, &[arrow]).expect("single arrow is a chain");
        self.make_chain(
            self.class_of[self.ambient.arrow(arrow).dom],
            self.class_of[self.ambient.arrow(arrow).cod],
            body,
        )
    }

    fn make_chain(&self, src: usize, tgt: usize, body: Vec<usize>) -> ChainArrow {
        ChainArrow {
            src_class: src,
            tgt_class: tgt,
            arrows: body,
        }
    }

    /// `second ∘ first`: concatenation followed by normalization. The result
    /// is exact even if it leaves the enumerated universe.
    pub fn compose(&self, second: &ChainArrow, first: &ChainArrow) -> Result<ChainArrow, ChainError> {
        if first.tgt_class != second.src_class {
            return Err(ChainError::JunctionMismatch(first.arrows.len()));
        }
        let mut body = first.arrows.clone();
        body.extend_from_slice(&second.arrows);
        let norm = normalize_chain(&self.ambient, &body)?;
        Ok(self.make_chain(first.src_class, second.tgt_class, norm))
    }

    /// A two-sided inverse for a chain, when one exists. Chains of
    /// isomorphisms invert by reversing and inverting each arrow; otherwise
    /// the enumerated universe is searched.
    pub fn inverse(&self, c: &ChainArrow) -> Option<ChainArrow> {
        if c.arrows.iter().all(|&a| self.ambient.is_iso(a)) {
            let body: Vec<usize> = c
                .arrows
                .iter()
                .rev()
                .map(|&a| self.ambient.inverse_of(a).unwrap())
                .collect();
            let norm = normalize_chain(&self.ambient, &body).expect("reversed chain is valid");
            let inv = self.make_chain(c.tgt_class, c.src_class, norm);
            debug_assert!(self
                .compose(&inv, c)
                .map(|x| x.is_identity())
                .unwrap_or(false));
            return Some(inv);
        }
        self.chains
            .iter()
            .filter(|d| d.src_class == c.tgt_class && d.tgt_class == c.src_class)
            .find(|d| {
                self.compose(d, c).map(|x| x.is_identity()).unwrap_or(false)
                    && self.compose(c, d).map(|x| x.is_identity()).unwrap_or(false)
            })
            .cloned()
    }

    /// Materializes the quotient as an ordinary finite category. Only
    /// possible when the chain universe is complete.
    pub fn materialize(&self) -> Option<(FinCat, Functor)> {
        if !self.complete {
            return None;
        }
        let objects: Vec<String> = (0..self.classes.len())
            .map(|c| self.class_name(c).to_string())
            .collect();
        // Class names are distinct object names of the ambient, and sorted:
        // class representatives are least members and classes partition the
        // sorted object list.
        let chain_name = |c: &ChainArrow| -> String {
            if c.arrows.is_empty() {
                format!("<id:{}>", self.class_name(c.src_class))
            } else {
                let names: Vec<&str> = c
                    .arrows
                    .iter()
                    .map(|&a| self.ambient.arrow(a).name.as_str())
                    .collect();
                format!("<{}>", names.join(":"))
            }
        };
        let mut sorted_objects = objects.clone();
        sorted_objects.sort();
        let obj_positions: Vec<usize> = (0..self.classes.len())
            .map(|class| {
                sorted_objects
                    .binary_search(&objects[class])
                    .expect("class name present")
            })
            .collect();
        let obj_index = |class: usize| obj_positions[class];
        let mut named: Vec<(String, &ChainArrow)> =
            self.chains.iter().map(|c| (chain_name(c), c)).collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let arrows: Vec<Arrow> = named
            .iter()
            .map(|(name, c)| Arrow {
                name: name.clone(),
                dom: obj_index(c.src_class),
                cod: obj_index(c.tgt_class),
            })
            .collect();
        let arrow_index = |c: &ChainArrow| {
            let name = chain_name(c);
            named
                .binary_search_by(|x| x.0.cmp(&name))
                .expect("chain present in complete universe")
        };
        let identity: Vec<usize> = {
            let mut ids = vec![0usize; self.classes.len()];
            for class in 0..self.classes.len() {
                ids[obj_index(class)] = arrow_index(&self.identity_chain(class));
            }
            ids
        };
        let na = named.len();
        let mut compose = vec![None; na * na];
        for (gi, (_, g)) in named.iter().enumerate() {
            for (fi, (_, f)) in named.iter().enumerate() {
                if f.tgt_class == g.src_class {
                    let gf = self.compose(g, f).expect("classes match");
                    compose[gi * na + fi] = Some(arrow_index(&gf));
                }
            }
        }
        let cat = FinCat::from_parts(sorted_objects, arrows, identity, compose);
        // The quotient functor.
        let obj_assign: Vec<usize> = (0..self.ambient.object_count())
            .map(|o| obj_index(self.class_of[o]))
            .collect();
        let arr_assign: Vec<usize> = (0..self.ambient.arrow_count())
            .map(|a| arrow_index(&self.project_arrow(a)))
            .collect();
        let eta = Functor::from_tables(self.ambient.clone(), cat.clone(), obj_assign, arr_assign)
            .expect("quotient projection is a functor");
        Some((cat, eta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    #[test]
    fn uv_in_i2_normalizes_to_identity() {
        let i2 = fixtures::i2();
        let u = i2.arrow_index("u").unwrap();
        let v = i2.arrow_index("v").unwrap();
        assert_eq!(normalize_chain(&i2, &[u, v]).unwrap(), Vec::<usize>::new());
        assert_eq!(normalize_chain(&i2, &[v, u]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn uu_in_i2_is_irreducible() {
        let i2 = fixtures::i2();
        let u = i2.arrow_index("u").unwrap();
        assert_eq!(normalize_chain(&i2, &[u, u]).unwrap(), vec![u, u]);
    }

    #[test]
    fn single_nonidentity_arrow_is_already_reduced() {
        let arrow = fixtures::arrow_cat();
        let f = arrow.arrow_index("f").unwrap();
        assert_eq!(normalize_chain(&arrow, &[f]).unwrap(), vec![f]);
    }

    #[test]
    fn junction_mismatch_is_reported() {
        let cat = fixtures::groupoid_plus_arrow();
        let s = cat.arrow_index("s").unwrap();
        let f = cat.arrow_index("f").unwrap();
        // cod(s) = g1 is not isomorphic to dom(f) = A.
        assert!(matches!(
            normalize_chain(&cat, &[s, f]),
            Err(ChainError::JunctionMismatch(_))
        ));
    }

    #[test]
    fn skeletal_quotient_of_arrow_cat_is_itself() {
        let arrow = fixtures::arrow_cat();
        let q = SkelQuotient::new(&arrow, 4);
        assert!(q.is_complete());
        assert_eq!(q.classes().len(), 2);
        let (cat, eta) = q.materialize().unwrap();
        assert_eq!(cat.object_count(), 2);
        assert_eq!(cat.arrow_count(), 3);
        assert!(eta.is_surjective_on_objects());
    }

    #[test]
    fn skeletal_quotient_of_i2_truncates() {
        let i2 = fixtures::i2();
        let q = SkelQuotient::new(&i2, 4);
        assert!(!q.is_complete(), "alternating powers keep appearing");
        assert_eq!(q.classes().len(), 1);
        // Identity + (u)^k + (v)^k for k = 1..=4.
        assert_eq!(q.chains().len(), 1 + 8);
        assert!(q.materialize().is_none());
        // (u)^2 composed with (v)^2 cancels completely.
        let u = i2.arrow_index("u").unwrap();
        let v = i2.arrow_index("v").unwrap();
        let uu = ChainArrow {
            src_class: 0,
            tgt_class: 0,
            arrows: vec![u, u],
        };
        let vv = ChainArrow {
            src_class: 0,
            tgt_class: 0,
            arrows: vec![v, v],
        };
        let z = q.compose(&vv, &uu).unwrap();
        assert!(z.is_identity());
        assert_eq!(q.inverse(&uu), Some(vv));
    }
}
