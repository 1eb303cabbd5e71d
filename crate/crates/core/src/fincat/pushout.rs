use std::collections::BTreeMap;

use super::{FinCat, FinPreord, Functor, MonotoneMap, SubCat, SubPreord};

/// Outcome of an effectiveness check: whether the intersection/union square
/// of two subobjects is a pushout against a battery of test objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutReport {
    pub holds: bool,
    /// Pairs of compatible cone legs that were examined.
    pub pairs_checked: usize,
    pub failure: Option<PushoutFailure>,
}

/// A compatible pair of legs with no unique mediator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutFailure {
    pub battery_object: String,
    pub from_first: String,
    pub from_second: String,
    pub mediator_count: usize,
}

/// Checks that `S ∩ T ↪ S, T ↪ S ∪ T` is a pushout in finite preorders:
/// every pair of monotone maps out of `S` and `T` agreeing on the
/// intersection must extend uniquely along the union.
pub fn pushout_holds_preord(
    s: &SubPreord,
    t: &SubPreord,
    battery: &[FinPreord],
) -> PushoutReport {
    let ambient = s.ambient();
    debug_assert_eq!(ambient, t.ambient());
    let union = s.union(t);
    let meet = s.intersect(t);
    let mut pairs_checked = 0;
    for z in battery {
        let from_s = scatter_preord(s, z);
        let from_t = scatter_preord(t, z);
        let mediators = scatter_preord(&union, z);
        // Bucket mediators by their restrictions to S and T.
        let mut buckets: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
        for w in &mediators {
            let key = (project(w, s), project(w, t));
            *buckets.entry(key).or_insert(0) += 1;
        }
        for u in &from_s {
            let u_meet = project(u, &meet);
            for v in &from_t {
                if project(v, &meet) != u_meet {
                    continue;
                }
                pairs_checked += 1;
                let key = (project(u, s), project(v, t));
                let count = buckets.get(&key).copied().unwrap_or(0);
                if count != 1 {
                    return PushoutReport {
                        holds: false,
                        pairs_checked,
                        failure: Some(PushoutFailure {
                            battery_object: z.to_string(),
                            from_first: render_partial_preord(ambient, s, u),
                            from_second: render_partial_preord(ambient, t, v),
                            mediator_count: count,
                        }),
                    };
                }
            }
        }
    }
    PushoutReport {
        holds: true,
        pairs_checked,
        failure: None,
    }
}

/// Ambient-indexed assignment tables for all maps `sub → z`; entries outside
/// the subobject are `usize::MAX`.
fn scatter_preord(sub: &SubPreord, z: &FinPreord) -> Vec<Vec<usize>> {
    let ambient = sub.ambient();
    let obj = sub.to_object();
    MonotoneMap::hom(&obj, z)
        .into_iter()
        .map(|m| {
            let mut table = vec![usize::MAX; ambient.len()];
            for (k, e) in obj.elements().iter().enumerate() {
                table[ambient.index_of(e).unwrap()] = m.apply_idx(k);
            }
            table
        })
        .collect()
}

fn project(table: &[usize], sub: &SubPreord) -> Vec<usize> {
    (0..table.len())
        .filter(|&i| sub.contains_idx(i))
        .map(|i| table[i])
        .collect()
}

fn render_partial_preord(ambient: &FinPreord, sub: &SubPreord, table: &[usize]) -> String {
    let entries: Vec<String> = (0..ambient.len())
        .filter(|&i| sub.contains_idx(i))
        .map(|i| format!("{}->#{}", ambient.name(i), table[i]))
        .collect();
    format!("{{{}}}", entries.join(","))
}

/// The same effectiveness check for subcategories; the union is closed under
/// composites of consecutive chains before testing.
pub fn pushout_holds_cat(s: &SubCat, t: &SubCat, battery: &[FinCat]) -> PushoutReport {
    let ambient = s.ambient();
    debug_assert_eq!(ambient, t.ambient());
    let (union, _) = s.union_closed(t);
    let meet = s.intersect(t);
    let mut pairs_checked = 0;
    for z in battery {
        let from_s = scatter_cat(s, z);
        let from_t = scatter_cat(t, z);
        let mediators = scatter_cat(&union, z);
        let mut buckets: BTreeMap<(CatTable, CatTable), usize> = BTreeMap::new();
        for w in &mediators {
            let key = (project_cat(w, s), project_cat(w, t));
            *buckets.entry(key).or_insert(0) += 1;
        }
        for u in &from_s {
            let u_meet = project_cat(u, &meet);
            for v in &from_t {
                if project_cat(v, &meet) != u_meet {
                    continue;
                }
                pairs_checked += 1;
                let key = (project_cat(u, s), project_cat(v, t));
                let count = buckets.get(&key).copied().unwrap_or(0);
                if count != 1 {
                    return PushoutReport {
                        holds: false,
                        pairs_checked,
                        failure: Some(PushoutFailure {
                            battery_object: z.to_string(),
                            from_first: format!("{:?}", project_cat(u, s)),
                            from_second: format!("{:?}", project_cat(v, t)),
                            mediator_count: count,
                        }),
                    };
                }
            }
        }
    }
    PushoutReport {
        holds: true,
        pairs_checked,
        failure: None,
    }
}

type CatTable = (Vec<usize>, Vec<usize>);

fn scatter_cat(sub: &SubCat, z: &FinCat) -> Vec<CatTable> {
    let ambient = sub.ambient();
    let obj = sub.to_object();
    Functor::hom(&obj, z)
        .into_iter()
        .map(|func| {
            let mut objs = vec![usize::MAX; ambient.object_count()];
            for (k, o) in obj.objects().iter().enumerate() {
                objs[ambient.object_index(o).unwrap()] = func.apply_obj(k);
            }
            let mut arrs = vec![usize::MAX; ambient.arrow_count()];
            for (k, a) in obj.arrows().iter().enumerate() {
                arrs[ambient.arrow_index(&a.name).unwrap()] = func.apply_arr(k);
            }
            (objs, arrs)
        })
        .collect()
}

fn project_cat(table: &CatTable, sub: &SubCat) -> CatTable {
    let objs = (0..table.0.len())
        .filter(|&i| sub.contains_obj(i))
        .map(|i| table.0[i])
        .collect();
    let arrs = (0..table.1.len())
        .filter(|&i| sub.contains_arr(i))
        .map(|i| table.1[i])
        .collect();
    (objs, arrs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixtures;

    #[test]
    fn degenerate_square_holds() {
        let p3 = fixtures::p3();
        let whole = SubPreord::whole(&p3);
        let battery = vec![FinPreord::point("z"), p3.clone()];
        let report = pushout_holds_preord(&whole, &whole, &battery);
        assert!(report.holds);
    }

    #[test]
    fn disjoint_components_are_effective() {
        // A = chain(p<q) ⊔ {t}; S and T the two components.
        let a = FinPreord::new(&["p", "q", "t"], &[("p", "q")], false).unwrap();
        let s = SubPreord::new(&a, &["p", "q"]).unwrap();
        let t = SubPreord::new(&a, &["t"]).unwrap();
        let battery = small_battery();
        let report = pushout_holds_preord(&s, &t, &battery);
        assert!(report.holds, "failure: {:?}", report.failure);
        assert!(report.pairs_checked > 0);
    }

    #[test]
    fn carrier_union_that_misses_order_pairs_fails() {
        // In chain(x<y), S = {x}, T = {y}: the carrier union is the whole
        // chain but maps may disagree with the glued order, so a compatible
        // pair with no mediator exists.
        let a = FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap();
        let s = SubPreord::new(&a, &["x"]).unwrap();
        let t = SubPreord::new(&a, &["y"]).unwrap();
        let battery = small_battery();
        let report = pushout_holds_preord(&s, &t, &battery);
        assert!(!report.holds);
        let failure = report.failure.unwrap();
        assert_eq!(failure.mediator_count, 0);
    }

    fn small_battery() -> Vec<FinPreord> {
        vec![
            FinPreord::empty(),
            FinPreord::point("z"),
            FinPreord::new(&["x", "y"], &[("x", "y")], false).unwrap(),
            FinPreord::new(&["x", "y"], &[("x", "y"), ("y", "x")], false).unwrap(),
            FinPreord::new::<&str>(&["x", "y"], &[], false).unwrap(),
        ]
    }

    #[test]
    fn cat_components_are_effective() {
        let cat = fixtures::groupoid_plus_arrow();
        // The groupoid component and the arrow component.
        let gmask = (1u64 << cat.object_index("g0").unwrap())
            | (1 << cat.object_index("g1").unwrap());
        let amask = (1u64 << cat.object_index("A").unwrap())
            | (1 << cat.object_index("B").unwrap());
        let s = SubCat::full(&cat, gmask);
        let t = SubCat::full(&cat, amask);
        let battery = vec![fixtures::arrow_cat(), fixtures::i2()];
        let report = pushout_holds_cat(&s, &t, &battery);
        assert!(report.holds, "failure: {:?}", report.failure);
    }
}
