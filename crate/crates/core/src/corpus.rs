//! Corpus generation: exhaustive small preorders up to isomorphism, the named
//! category fixture library, and the `gen:`/`fixtures:`/directory corpus
//! specifications used by the verification suites and the CLI.

use std::path::PathBuf;

use thiserror::Error;

use crate::fincat::{FinCat, FinPreord};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("cannot parse corpus spec `{0}`")]
    BadSpec(String),
    #[error(transparent)]
    Io(#[from] crate::io::IoError),
}

/// Where a corpus comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    /// All preorders on at most `n` elements, one per isomorphism class.
    PreordUpTo(usize),
    /// The named category fixture library.
    CatFixtures,
    /// Every object file in a directory, sorted by file name.
    Dir(PathBuf),
}

impl CorpusSpec {
    /// Accepts `gen:preord<=N`, `fixtures:cat`, or a directory path.
    pub fn parse(s: &str) -> Result<Self, CorpusError> {
        if let Some(rest) = s.strip_prefix("gen:preord<=") {
            let n: usize = rest
                .parse()
                .map_err(|_| CorpusError::BadSpec(s.to_string()))?;
            return Ok(CorpusSpec::PreordUpTo(n));
        }
        if s == "fixtures:cat" {
            return Ok(CorpusSpec::CatFixtures);
        }
        Ok(CorpusSpec::Dir(PathBuf::from(s)))
    }

    pub fn describe(&self) -> String {
        match self {
            CorpusSpec::PreordUpTo(n) => format!("gen:preord<={n}"),
            CorpusSpec::CatFixtures => "fixtures:cat".into(),
            CorpusSpec::Dir(p) => p.display().to_string(),
        }
    }
}

/// A labelled homogeneous corpus.
#[derive(Debug, Clone)]
pub enum Corpus {
    Preord(Vec<(String, FinPreord)>),
    Cat(Vec<(String, FinCat)>),
}

impl Corpus {
    pub fn len(&self) -> usize {
        match self {
            Corpus::Preord(v) => v.len(),
            Corpus::Cat(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Generation cap: lattice and corpus scans refuse carriers beyond this.
pub const MAX_EXHAUSTIVE_PREORD: usize = 5;

/// Resolves a corpus spec into actual objects.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus, CorpusError> {
    match spec {
        CorpusSpec::PreordUpTo(n) => {
            if *n > MAX_EXHAUSTIVE_PREORD {
                return Err(CorpusError::SizeLimit(format!(
                    "exhaustive preorder generation is capped at {MAX_EXHAUSTIVE_PREORD} elements, asked for {n}"
                )));
            }
            Ok(Corpus::Preord(preorders_up_to(*n)))
        }
        CorpusSpec::CatFixtures => Ok(Corpus::Cat(
            cat_fixtures()
                .into_iter()
                .map(|(n, c)| (n.to_string(), c))
                .collect(),
        )),
        CorpusSpec::Dir(path) => crate::io::load_corpus_dir(path).map_err(CorpusError::from),
    }
}

/// All preorders with at most `n` elements, one representative per
/// isomorphism class, in a deterministic order. Elements are named
/// `x0, x1, ...`.
pub fn preorders_up_to(n: usize) -> Vec<(String, FinPreord)> {
    let mut out = Vec::new();
    for size in 0..=n {
        let reps = preorders_of_size(size);
        for (i, p) in reps.into_iter().enumerate() {
            out.push((format!("preord{size}_{i:02}"), p));
        }
    }
    out
}

/// One representative per isomorphism class of preorders on exactly `size`
/// elements, sorted by canonical key.
pub fn preorders_of_size(size: usize) -> Vec<FinPreord> {
    if size == 0 {
        return vec![FinPreord::empty()];
    }
    let names: Vec<String> = (0..size).map(|i| format!("x{i}")).collect();
    let mut seen: Vec<(Vec<bool>, FinPreord)> = Vec::new();
    for partition in set_partitions(size) {
        let blocks = 1 + *partition.iter().max().unwrap();
        for order in posets_on(blocks) {
            let mut pairs = Vec::new();
            for i in 0..size {
                for j in 0..size {
                    let (bi, bj) = (partition[i], partition[j]);
                    if bi == bj || order[bi * blocks + bj] {
                        pairs.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
            let p = FinPreord::new(&names, &pairs, false).expect("generated preorder is valid");
            let key = p.canonical_key();
            if !seen.iter().any(|(k, _)| *k == key) {
                seen.push((key, p));
            }
        }
    }
    seen.sort_by(|a, b| a.0.cmp(&b.0));
    seen.into_iter().map(|(_, p)| p).collect()
}

/// Restricted-growth strings: every partition of `{0..n-1}`, as a block
/// index per element.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(cur: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max_used + 1 {
            cur[pos] = b;
            rec(cur, pos + 1, max_used.max(b), out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        cur[0] = 0;
        rec(&mut cur, 1, 0, &mut out);
    }
    out
}

/// All partial orders on `k` labelled points, as strict-order matrices
/// (row-major, `m[i*k+j]` meaning `i < j`; the diagonal is implicit).
fn posets_on(k: usize) -> Vec<Vec<bool>> {
    let off: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let bits = off.len();
    let mut out = Vec::new();
    'next: for code in 0..(1u32 << bits) {
        let mut m = vec![false; k * k];
        for (b, &(i, j)) in off.iter().enumerate() {
            if code >> b & 1 == 1 {
                m[i * k + j] = true;
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i != j && m[i * k + j] && m[j * k + i] {
                    continue 'next; // not antisymmetric
                }
                if m[i * k + j] {
                    for l in 0..k {
                        if m[j * k + l] && !m[i * k + l] {
                            continue 'next; // not transitive
                        }
                    }
                }
            }
        }
        out.push(m);
    }
    out
}

/// Handy preorder fixtures used across tests and demos.
pub mod fixtures {
    use std::sync::OnceLock;

    use crate::fincat::{FinCat, FinPreord};
    use crate::fincat::cat::RawCat;

    /// Three elements with `a ≅ b < c`.
    pub fn p3() -> FinPreord {
        FinPreord::new(&["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")], false).unwrap()
    }

    /// The two-element chain `x < y`.
    pub fn chain2() -> FinPreord {
        FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap()
    }

    /// Two equivalent elements.
    pub fn codiscrete2() -> FinPreord {
        FinPreord::new(&["x", "y"], &[("x", "y"), ("y", "x")], false).unwrap()
    }

    /// Two incomparable elements.
    pub fn discrete2() -> FinPreord {
        FinPreord::new::<&str>(&["x", "y"], &[], false).unwrap()
    }

    /// A chain next to an isolated point: `p < q` ⊔ `{t}`.
    pub fn chain_plus_point() -> FinPreord {
        FinPreord::new(&["p", "q", "t"], &[("p", "q")], false).unwrap()
    }

    /// A codiscrete pair next to a chain: `{w ≅ x}` ⊔ `{y < z}`.
    pub fn mixed4() -> FinPreord {
        FinPreord::new(
            &["w", "x", "y", "z"],
            &[("w", "x"), ("x", "w"), ("y", "z")],
            false,
        )
        .unwrap()
    }

    /// The free arrow `A → B`.
    pub fn arrow_cat() -> FinCat {
        FinCat::new(&RawCat {
            objects: &["A", "B"],
            arrows: &[("f", "A", "B"), ("idA", "A", "A"), ("idB", "B", "B")],
            identities: &[("A", "idA"), ("B", "idB")],
            compose: &[],
        })
        .unwrap()
    }

    /// The cospan `A → B ← C`.
    pub fn cospan_cat() -> FinCat {
        FinCat::new(&RawCat {
            objects: &["A", "B", "C"],
            arrows: &[
                ("f", "A", "B"),
                ("g", "C", "B"),
                ("idA", "A", "A"),
                ("idB", "B", "B"),
                ("idC", "C", "C"),
            ],
            identities: &[("A", "idA"), ("B", "idB"), ("C", "idC")],
            compose: &[],
        })
        .unwrap()
    }

    /// The indiscrete two-object category: `u : x ⇄ y : v` with both
    /// composites identities.
    pub fn i2() -> FinCat {
        FinCat::new(&RawCat {
            objects: &["x", "y"],
            arrows: &[
                ("u", "x", "y"),
                ("v", "y", "x"),
                ("idx", "x", "x"),
                ("idy", "y", "y"),
            ],
            identities: &[("x", "idx"), ("y", "idy")],
            compose: &[("v", "u", "idx"), ("u", "v", "idy")],
        })
        .unwrap()
    }

    /// The connected groupoid on two objects with vertex group Z/2: arrows
    /// `g{s}{t}{k}` for endpoints s,t and twist k, composing by adding
    /// twists mod 2.
    pub fn two_obj_groupoid() -> FinCat {
        static CACHE: OnceLock<FinCat> = OnceLock::new();
        CACHE
            .get_or_init(|| {
                let objs = ["p", "q"];
                let name = |s: usize, t: usize, k: usize| format!("g{}{}{}", objs[s], objs[t], k);
                let mut arrows: Vec<(String, &str, &str)> = Vec::new();
                for s in 0..2 {
                    for t in 0..2 {
                        for k in 0..2 {
                            arrows.push((name(s, t, k), objs[s], objs[t]));
                        }
                    }
                }
                let mut compose: Vec<(String, String, String)> = Vec::new();
                for s in 0..2 {
                    for m in 0..2 {
                        for t in 0..2 {
                            for k1 in 0..2 {
                                for k2 in 0..2 {
                                    compose.push((
                                        name(m, t, k2),
                                        name(s, m, k1),
                                        name(s, t, (k1 + k2) % 2),
                                    ));
                                }
                            }
                        }
                    }
                }
                let arrows_ref: Vec<(&str, &str, &str)> = arrows
                    .iter()
                    .map(|(n, d, c)| (n.as_str(), *d, *c))
                    .collect();
                let compose_ref: Vec<(&str, &str, &str)> = compose
                    .iter()
                    .map(|(g, f, gf)| (g.as_str(), f.as_str(), gf.as_str()))
                    .collect();
                let identities: Vec<(String, String)> = (0..2)
                    .map(|s| (objs[s].to_string(), name(s, s, 0)))
                    .collect();
                let id_ref: Vec<(&str, &str)> = identities
                    .iter()
                    .map(|(o, a)| (o.as_str(), a.as_str()))
                    .collect();
                FinCat::new(&RawCat {
                    objects: &objs,
                    arrows: &arrows_ref,
                    identities: &id_ref,
                    compose: &compose_ref,
                })
                .unwrap()
            })
            .clone()
    }

    /// A two-object groupoid component next to a free arrow component.
    pub fn groupoid_plus_arrow() -> FinCat {
        FinCat::new(&RawCat {
            objects: &["g0", "g1", "A", "B"],
            arrows: &[
                ("s", "g0", "g1"),
                ("si", "g1", "g0"),
                ("e0", "g0", "g0"),
                ("e1", "g1", "g1"),
                ("f", "A", "B"),
                ("idA", "A", "A"),
                ("idB", "B", "B"),
            ],
            identities: &[("g0", "e0"), ("g1", "e1"), ("A", "idA"), ("B", "idB")],
            compose: &[("si", "s", "e0"), ("s", "si", "e1")],
        })
        .unwrap()
    }

    /// The one-object one-arrow category, the terminal object.
    pub fn point_cat() -> FinCat {
        FinCat::new(&RawCat {
            objects: &["*"],
            arrows: &[("id", "*", "*")],
            identities: &[("*", "id")],
            compose: &[],
        })
        .unwrap()
    }
}

/// The acceptance fixture set for categories, in deterministic order.
pub fn cat_fixtures() -> Vec<(&'static str, FinCat)> {
    vec![
        ("arrow", fixtures::arrow_cat()),
        ("cospan", fixtures::cospan_cat()),
        ("i2", fixtures::i2()),
        ("grpd2", fixtures::two_obj_groupoid()),
        ("grpd_arrow", fixtures::groupoid_plus_arrow()),
    ]
}

/// Fixtures plus the initial and terminal categories; the battery used by the
/// pretorsion suites, which probe against trivial objects as well.
pub fn cat_fixtures_extended() -> Vec<(&'static str, FinCat)> {
    let mut v = vec![("zero", FinCat::empty()), ("one", fixtures::point_cat())];
    v.extend(cat_fixtures());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts_up_to_iso() {
        // Frozen from the independent enumeration oracle in
        // tests/properties.rs: classes of preorders on 0..=4 points.
        assert_eq!(preorders_of_size(0).len(), 1);
        assert_eq!(preorders_of_size(1).len(), 1);
        assert_eq!(preorders_of_size(2).len(), 3);
        assert_eq!(preorders_of_size(3).len(), 9);
        assert_eq!(preorders_of_size(4).len(), 33);
    }

    #[test]
    fn corpus_up_to_one_has_empty_and_point() {
        let c = preorders_up_to(1);
        assert_eq!(c.len(), 2);
        assert!(c[0].1.is_empty());
        assert_eq!(c[1].1.len(), 1);
    }

    #[test]
    fn generated_objects_are_pairwise_nonisomorphic() {
        let c = preorders_of_size(3);
        for i in 0..c.len() {
            for j in 0..i {
                assert!(!c[i].is_isomorphic(&c[j]));
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            CorpusSpec::parse("gen:preord<=3").unwrap(),
            CorpusSpec::PreordUpTo(3)
        );
        assert_eq!(CorpusSpec::parse("fixtures:cat").unwrap(), CorpusSpec::CatFixtures);
        assert!(matches!(
            CorpusSpec::parse("some/dir").unwrap(),
            CorpusSpec::Dir(_)
        ));
    }

    #[test]
    fn fixture_library_validates() {
        for (name, cat) in cat_fixtures_extended() {
            assert!(cat.arrow_count() >= cat.object_count(), "{name}");
        }
        let g = fixtures::two_obj_groupoid();
        assert_eq!(g.object_count(), 2);
        assert_eq!(g.arrow_count(), 8);
        assert!((0..8).all(|f| g.is_iso(f)));
    }
}
