use std::collections::BTreeSet;
use std::fmt;

use super::CarrierError;

/// A finite preorder: a named carrier with a reflexive transitive relation,
/// stored as a full boolean matrix over the sorted carrier.
///
/// The carrier is kept sorted by name, so two values are equal exactly when
/// they have the same named elements and the same relation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinPreord {
    elems: Vec<String>,
    /// Row-major n x n matrix; `leq[i * n + j]` means `elems[i] <= elems[j]`.
    leq: Vec<bool>,
}

impl FinPreord {
    /// Builds a preorder from a carrier and a list of related pairs.
    ///
    /// With `strict` off the reflexive-transitive closure of the given pairs
    /// is taken; with `strict` on the pairs must already be reflexive and
    /// transitive and the offending pair is reported otherwise.
    pub fn new<S: AsRef<str>>(
        elems: &[S],
        pairs: &[(S, S)],
        strict: bool,
    ) -> Result<Self, CarrierError> {
        let mut names: Vec<String> = elems.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(CarrierError::DuplicateName(w[0].clone()));
            }
        }
        let n = names.len();
        let idx = |s: &str| -> Result<usize, CarrierError> {
            names
                .binary_search_by(|x| x.as_str().cmp(s))
                .map_err(|_| CarrierError::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for (a, b) in pairs {
            let (i, j) = (idx(a.as_ref())?, idx(b.as_ref())?);
            leq[i * n + j] = true;
        }
        if strict {
            for i in 0..n {
                if !leq[i * n + i] {
                    return Err(CarrierError::NotReflexive(names[i].clone()));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if !leq[i * n + j] {
                        continue;
                    }
                    for k in 0..n {
                        if leq[j * n + k] && !leq[i * n + k] {
                            return Err(CarrierError::NotTransitive(
                                names[i].clone(),
                                names[k].clone(),
                            ));
                        }
                    }
                }
            }
        } else {
            for i in 0..n {
                leq[i * n + i] = true;
            }
            // Warshall closure; n is tiny.
            for k in 0..n {
                for i in 0..n {
                    if leq[i * n + k] {
                        for j in 0..n {
                            if leq[k * n + j] {
                                leq[i * n + j] = true;
                            }
                        }
                    }
                }
            }
        }
        Ok(FinPreord { elems: names, leq })
    }

    /// The empty preorder, the strict initial object.
    pub fn empty() -> Self {
        FinPreord {
            elems: Vec::new(),
            leq: Vec::new(),
        }
    }

    /// The one-point preorder, the terminal object.
    pub fn point(name: &str) -> Self {
        FinPreord {
            elems: vec![name.to_string()],
            leq: vec![true],
        }
    }

    /// Builds directly from a sorted carrier and a closed matrix.
    /// Intended for internal constructions that guarantee the invariants.
    pub(crate) fn from_parts(elems: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(leq.len(), elems.len() * elems.len());
        FinPreord { elems, leq }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elems
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elems.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elems[i]
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elems.len() + j]
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.leq_idx(i, j),
            _ => false,
        }
    }

    /// Related pairs, including reflexive ones, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq_idx(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The opposite preorder (transpose of the relation).
    pub fn opposite(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq_idx(j, i);
            }
        }
        FinPreord {
            elems: self.elems.clone(),
            leq,
        }
    }

    /// Symmetric core of the relation: `a ~ b` iff `a <= b` and `b <= a`.
    pub fn symmetric_core(&self) -> Self {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq_idx(i, j) && self.leq_idx(j, i);
            }
        }
        FinPreord {
            elems: self.elems.clone(),
            leq,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq_idx(i, j) == self.leq_idx(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq_idx(i, j) && self.leq_idx(j, i))))
    }

    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq_idx(i, j) == (i == j)))
    }

    /// Classes of the symmetric core, each sorted, listed by least member.
    pub fn core_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut class = Vec::new();
            for j in 0..n {
                if self.leq_idx(i, j) && self.leq_idx(j, i) {
                    class.push(j);
                    seen[j] = true;
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Connected components of the comparability graph (`a <= b` or `b <= a`),
    /// each a sorted set of indices, listed by least member.
    pub fn comparability_components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut components: Vec<BTreeSet<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut stack = vec![start];
            let mut members = BTreeSet::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.insert(v);
                for w in 0..n {
                    if comp[w] == usize::MAX && (self.leq_idx(v, w) || self.leq_idx(w, v)) {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            components.push(members);
        }
        components
    }

    /// A canonical encoding invariant under renaming: the lexicographically
    /// least matrix bit-string over all permutations of the carrier.
    pub fn canonical_key(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut enc = Vec::with_capacity(n * n);
            for &i in p {
                for &j in p {
                    enc.push(self.leq_idx(i, j));
                }
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        });
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &FinPreord) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

impl fmt::Debug for FinPreord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPreord{{{}}}", self)
    }
}

impl fmt::Display for FinPreord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut nontrivial = Vec::new();
        for (i, j) in self.pairs() {
            if i != j {
                nontrivial.push(format!("{}<={}", self.name(i), self.name(j)));
            }
        }
        write!(f, "[{}; {}]", self.elems.join(","), nontrivial.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> FinPreord {
        FinPreord::new(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")], false).unwrap()
    }

    #[test]
    fn closure_adds_forced_pairs() {
        let p = p3();
        assert!(p.leq("a", "c"), "transitive closure must add (a,c)");
        assert!(p.leq("a", "a") && p.leq("b", "b") && p.leq("c", "c"));
        assert!(!p.leq("c", "a"));
    }

    #[test]
    fn strict_mode_reports_missing_reflexive_pair() {
        let err = FinPreord::new::<&str>(&["a"], &[], true).unwrap_err();
        assert_eq!(err, CarrierError::NotReflexive("a".into()));
    }

    #[test]
    fn strict_mode_reports_missing_transitive_pair() {
        let err = FinPreord::new(
            &["a", "b", "c"],
            &[
                ("a", "a"),
                ("b", "b"),
                ("c", "c"),
                ("a", "b"),
                ("b", "c"),
            ],
            true,
        )
        .unwrap_err();
        assert_eq!(err, CarrierError::NotTransitive("a".into(), "c".into()));
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = FinPreord::new::<&str>(&["a", "a"], &[], false).unwrap_err();
        assert_eq!(err, CarrierError::DuplicateName("a".into()));
    }

    #[test]
    fn closure_is_idempotent() {
        let p = p3();
        let pairs: Vec<(String, String)> = p
            .pairs()
            .iter()
            .map(|&(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
            .collect();
        let names: Vec<String> = p.elements().to_vec();
        let again = FinPreord::new(&names, &pairs, false).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn core_classes_of_p3() {
        let p = p3();
        let classes = p.core_classes();
        let named: Vec<Vec<&str>> = classes
            .iter()
            .map(|c| c.iter().map(|&i| p.name(i)).collect())
            .collect();
        assert_eq!(named, vec![vec!["a", "b"], vec!["c"]]);
    }

    #[test]
    fn comparability_components_split_disjoint_parts() {
        let p = FinPreord::new(&["p", "q", "t"], &[("p", "q")], false).unwrap();
        let comps = p.comparability_components();
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn canonical_key_identifies_renamings() {
        let p = FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap();
        let q = FinPreord::new(&["u", "v"], &[("v", "u")], false).unwrap();
        assert!(p.is_isomorphic(&q));
        let r = FinPreord::new::<&str>(&["u", "v"], &[], false).unwrap();
        assert!(!p.is_isomorphic(&r));
    }
}
