//! The CS axiom suite: checks CS1–CS9 plus effectiveness, orthogonality of
//! distinguished epis against distinguished monos, and composition stability
//! of distinguished epis, over a corpus of ambient objects.
//!
//! Quantifiers over "all distinguished subobjects" re-derive membership from
//! the kind's defining condition and test it against the lattice the run was
//! given. A seeded fault (a member dropped from one lattice) therefore shows
//! up as genuine CS failures with witnesses.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::fincat::{FinCat, FinPreord};
use crate::report::Report;

use super::world::{CatWorld, PreordWorld, World};
use super::{member_key_cat, member_key_preord, SystemError, SystemKind};

/// Drops one member from the lattice of one corpus object, for verifier
/// self-tests: the suite must notice and produce failing records.
#[derive(Debug, Clone)]
pub struct SeededFault {
    pub object_label: String,
    /// Member names (elements for preorders, objects for categories).
    pub drop_member: Vec<String>,
}

pub fn verify_cs_preord(
    corpus: &[(String, FinPreord)],
    kind: SystemKind,
    battery: &[(String, FinPreord)],
    fault: Option<&SeededFault>,
) -> Result<Report, SystemError> {
    if !kind.applies_to_preord() {
        return Err(SystemError::KindMismatch {
            kind,
            ambient: "preorders",
        });
    }
    let w = PreordWorld::new(kind);
    let mut report = Report::new("verify-cs");
    report.set_config("ambient", "preord");
    report.set_config("system", kind.to_string());
    report.set_config("corpus-size", corpus.len().to_string());
    report.set_config("battery-size", battery.len().to_string());
    if let Some(f) = fault {
        report.set_config("seeded-fault", format!("{}:{:?}", f.object_label, f.drop_member));
    }
    let lattice_of = |label: &str, a: &FinPreord| -> Rc<Vec<_>> {
        let base = w.lattice(a);
        match fault {
            Some(f) if f.object_label == label => Rc::new(
                base.iter()
                    .filter(|s| member_key_preord(s) != f.drop_member)
                    .cloned()
                    .collect(),
            ),
            _ => base,
        }
    };
    run_cs_suite(&w, corpus, battery, &lattice_of, &mut report);
    Ok(report)
}

pub fn verify_cs_cat(
    corpus: &[(String, FinCat)],
    kind: SystemKind,
    battery: &[(String, FinCat)],
    fault: Option<&SeededFault>,
) -> Result<Report, SystemError> {
    if !kind.applies_to_cat() {
        return Err(SystemError::KindMismatch {
            kind,
            ambient: "categories",
        });
    }
    let w = CatWorld::new(kind);
    let mut report = Report::new("verify-cs");
    report.set_config("ambient", "cat");
    report.set_config("system", kind.to_string());
    report.set_config("corpus-size", corpus.len().to_string());
    report.set_config("battery-size", battery.len().to_string());
    if let Some(f) = fault {
        report.set_config("seeded-fault", format!("{}:{:?}", f.object_label, f.drop_member));
    }
    let lattice_of = |label: &str, a: &FinCat| -> Rc<Vec<_>> {
        let base = w.lattice(a);
        match fault {
            Some(f) if f.object_label == label => Rc::new(
                base.iter()
                    .filter(|s| member_key_cat(s).0 != f.drop_member)
                    .cloned()
                    .collect(),
            ),
            _ => base,
        }
    };
    run_cs_suite(&w, corpus, battery, &lattice_of, &mut report);
    Ok(report)
}

fn contains<S: Ord>(lat: &[S], s: &S) -> bool {
    lat.iter().any(|x| x == s)
}

pub(crate) fn run_cs_suite<W: World>(
    w: &W,
    corpus: &[(String, W::Obj)],
    battery: &[(String, W::Obj)],
    lattice_of: &dyn Fn(&str, &W::Obj) -> Rc<Vec<W::Sub>>,
    report: &mut Report,
) {
    // Per-object axioms.
    for (label, a) in corpus {
        let lat = lattice_of(label, a);
        let dist: Vec<W::Sub> = w
            .all_subobjects(a)
            .into_iter()
            .filter(|s| w.is_distinguished(s))
            .collect();

        report.check(
            "lattice-complete",
            label,
            lat.len() == dist.len() && dist.iter().all(|s| contains(&lat, s)),
            || {
                let missing: Vec<String> = dist
                    .iter()
                    .filter(|s| !contains(&lat, s))
                    .map(|s| s.to_string())
                    .collect();
                format!("members missing from lattice: {}", missing.join(" "))
            },
        );

        report.check(
            "CS1",
            label,
            contains(&lat, &w.empty_sub(a)) && contains(&lat, &w.whole_sub(a)),
            || "0 or the whole object missing from the lattice".to_string(),
        );

        // CS2 (union) and CS7 (intersection) closure.
        let mut cs2 = Ok(());
        let mut cs7 = Ok(());
        'outer: for (i, s) in dist.iter().enumerate() {
            for t in dist.iter().take(i + 1) {
                let u = w.sub_union_raw(s, t);
                if !(w.is_distinguished(&u) && contains(&lat, &u)) {
                    cs2 = Err(format!("{s} ∪ {t} = {u} not in the lattice"));
                    break 'outer;
                }
                let m = w.sub_meet_raw(s, t);
                if !(w.is_distinguished(&m) && contains(&lat, &m)) {
                    cs7 = Err(format!("{s} ∩ {t} = {m} not in the lattice"));
                    break 'outer;
                }
            }
        }
        report.check("CS2", label, cs2.is_ok(), || cs2.unwrap_err());
        report.check("CS7", label, cs7.is_ok(), || cs7.unwrap_err());

        // CS8 distributivity over lattice members.
        let mut cs8 = Ok(());
        'cs8: for r in lat.iter() {
            for s in lat.iter() {
                for t in lat.iter() {
                    let lhs = w.sub_meet_raw(r, &w.sub_union_raw(s, t));
                    let rhs = w.sub_union_raw(&w.sub_meet_raw(r, s), &w.sub_meet_raw(r, t));
                    if lhs != rhs {
                        cs8 = Err(format!("R={r} S={s} T={t}: {lhs} ≠ {rhs}"));
                        break 'cs8;
                    }
                }
            }
        }
        report.check("CS8", label, cs8.is_ok(), || cs8.unwrap_err());

        // CS5: distinguished-in-distinguished chains compose.
        let mut cs5 = Ok(());
        'cs5: for t in dist.iter() {
            let t_obj = w.sub_object(t);
            for u_inner in w
                .all_subobjects(&t_obj)
                .into_iter()
                .filter(|u| w.is_distinguished(u))
            {
                let lifted = w.lift_sub(t, &u_inner);
                if !(w.is_distinguished(&lifted) && contains(&lat, &lifted)) {
                    cs5 = Err(format!("{u_inner} ⊆ {t} lifts to {lifted}, not distinguished in the ambient"));
                    break 'cs5;
                }
            }
        }
        report.check("CS5", label, cs5.is_ok(), || cs5.unwrap_err());

        // CS9: a distinguished subobject stays distinguished in every
        // distinguished intermediate.
        let mut cs9 = Ok(());
        'cs9: for s in dist.iter() {
            for t in dist.iter() {
                if !w.sub_leq(s, t) {
                    continue;
                }
                let lowered = w.lower_sub(t, s);
                if !w.is_distinguished(&lowered) {
                    cs9 = Err(format!("{s} not distinguished inside {t}"));
                    break 'cs9;
                }
            }
        }
        report.check("CS9", label, cs9.is_ok(), || cs9.unwrap_err());

        // CS6 effectiveness, for the effective kinds.
        if w.effective() {
            let battery_objs: Vec<W::Obj> = battery.iter().map(|(_, b)| b.clone()).collect();
            let mut cs6 = Ok(());
            'cs6: for (i, s) in lat.iter().enumerate() {
                for t in lat.iter().take(i + 1) {
                    let rep = w.pushout_holds(s, t, &battery_objs);
                    if !rep.holds {
                        cs6 = Err(format!(
                            "S={s} T={t}: {:?}",
                            rep.failure.expect("failing report carries a witness")
                        ));
                        break 'cs6;
                    }
                }
            }
            report.check("CS6", label, cs6.is_ok(), || cs6.unwrap_err());
        }
    }

    // CS3/CS4: stability of membership and of unions under preimages, over
    // every corpus morphism. Aggregated per source object.
    for (la, a) in corpus {
        let lata = lattice_of(la, a);
        let mut cs3 = Ok(());
        let mut cs4 = Ok(());
        for (lb, b) in corpus {
            if cs3.is_err() || cs4.is_err() {
                break;
            }
            let latb = lattice_of(lb, b);
            for f in w.hom(a, b).iter() {
                for (i, s) in latb.iter().enumerate() {
                    let p = w.preimage(f, s);
                    if !(w.is_distinguished(&p) && contains(&lata, &p)) {
                        cs3 = Err(format!("f={f} into {lb}: f⁻¹({s}) = {p} not in the lattice"));
                        break;
                    }
                    for t in latb.iter().take(i + 1) {
                        let lhs = w.preimage(f, &w.sub_union_raw(s, t));
                        let rhs = w.sub_union_raw(&w.preimage(f, s), &w.preimage(f, t));
                        if lhs != rhs {
                            cs4 = Err(format!(
                                "f={f} into {lb}: f⁻¹({s} ∪ {t}) = {lhs} ≠ {rhs}"
                            ));
                            break;
                        }
                        // Intersections come along for free via CS7 + CS3,
                        // but are checked too.
                        let lhs = w.preimage(f, &w.sub_meet_raw(s, t));
                        let rhs = w.sub_meet_raw(&w.preimage(f, s), &w.preimage(f, t));
                        if lhs != rhs {
                            cs4 = Err(format!(
                                "f={f} into {lb}: f⁻¹({s} ∩ {t}) = {lhs} ≠ {rhs}"
                            ));
                            break;
                        }
                    }
                    if cs4.is_err() {
                        break;
                    }
                }
                if cs3.is_err() || cs4.is_err() {
                    break;
                }
            }
        }
        report.check("CS3", la, cs3.is_ok(), || cs3.unwrap_err());
        report.check("CS4", la, cs4.is_ok(), || cs4.unwrap_err());
    }

    // Distinguished epimorphisms: orthogonality against distinguished monos
    // and stability under composition, over the battery corpus.
    check_epi_orthogonality(w, battery, report);
    check_epi_composition(w, battery, report);
}

/// Distinguished epi test for a certified epi; `None` when certification is
/// unavailable.
pub(crate) fn dist_epi_check<W: World>(w: &W, f: &W::Map) -> Option<bool> {
    match w.epi_certified(f) {
        Some(true) => {
            let image = w.image_sub(f);
            let target = w.map_target(f);
            Some(
                !w.lattice(&target)
                    .iter()
                    .any(|s| !w.is_whole(s) && w.sub_leq(&image, s)),
            )
        }
        _ => None,
    }
}

fn collect_dist_epis<W: World>(w: &W, battery: &[(String, W::Obj)]) -> Vec<W::Map> {
    let mut out = Vec::new();
    for (_, a) in battery {
        for (_, b) in battery {
            for f in w.hom(a, b).iter() {
                if dist_epi_check(w, f) == Some(true) {
                    out.push(f.clone());
                }
            }
        }
    }
    out
}

fn check_epi_orthogonality<W: World>(w: &W, battery: &[(String, W::Obj)], report: &mut Report) {
    let epis = collect_dist_epis(w, battery);
    let mut result = Ok(());
    let mut squares = 0usize;
    'out: for e in &epis {
        let (src, mid) = (w.map_source(e), w.map_target(e));
        for (_, b) in battery {
            for m_sub in w.lattice(b).iter() {
                let s_obj = w.sub_object(m_sub);
                let incl = w.sub_inclusion(m_sub);
                // Bucket candidate square completions by their composite
                // with e.
                let mut v_by_comp: BTreeMap<W::Map, Vec<W::Map>> = BTreeMap::new();
                for v in w.hom(&mid, b).iter() {
                    v_by_comp
                        .entry(w.compose(v, e))
                        .or_default()
                        .push(v.clone());
                }
                let mut d_by_comp: BTreeMap<W::Map, Vec<W::Map>> = BTreeMap::new();
                for d in w.hom(&mid, &s_obj).iter() {
                    d_by_comp
                        .entry(w.compose(d, e))
                        .or_default()
                        .push(d.clone());
                }
                for u in w.hom(&src, &s_obj).iter() {
                    let mu = w.compose(&incl, u);
                    let Some(vs) = v_by_comp.get(&mu) else {
                        continue;
                    };
                    let ds = d_by_comp.get(u).map(|x| x.as_slice()).unwrap_or(&[]);
                    for v in vs {
                        squares += 1;
                        let fillers = ds
                            .iter()
                            .filter(|d| w.compose(&incl, d) == *v)
                            .count();
                        if fillers != 1 {
                            result = Err(format!(
                                "square e={e} mono={m_sub} u={u} v={v}: {fillers} diagonal fillers"
                            ));
                            break 'out;
                        }
                    }
                }
            }
        }
    }
    match result {
        Ok(()) => report.push(
            "epi-orthogonality",
            format!("battery ({squares} squares)"),
            crate::report::Verdict::Pass,
            None,
        ),
        Err(witness) => report.push(
            "epi-orthogonality",
            "battery",
            crate::report::Verdict::Fail,
            Some(witness),
        ),
    }
}

fn check_epi_composition<W: World>(w: &W, battery: &[(String, W::Obj)], report: &mut Report) {
    let epis = collect_dist_epis(w, battery);
    let mut result = Ok(());
    let mut pairs = 0usize;
    'out: for e1 in &epis {
        let mid = w.map_target(e1);
        for e2 in &epis {
            if w.map_source(e2) != mid {
                continue;
            }
            pairs += 1;
            let comp = w.compose(e2, e1);
            if dist_epi_check(w, &comp) != Some(true) {
                result = Err(format!("{e2} ∘ {e1} is not a distinguished epi"));
                break 'out;
            }
        }
    }
    // Second half: if a composite is a distinguished epi, so is its second
    // leg, over all composable battery pairs.
    if result.is_ok() {
        'out2: for (_, a) in battery {
            for (_, b) in battery {
                for f in w.hom(a, b).iter() {
                    for (_, c) in battery {
                        for g in w.hom(b, c).iter() {
                            let gf = w.compose(g, f);
                            if dist_epi_check(w, &gf) == Some(true)
                                && dist_epi_check(w, g) == Some(false)
                            {
                                result = Err(format!(
                                    "gf={gf} distinguished epi but g={g} is not"
                                ));
                                break 'out2;
                            }
                        }
                    }
                }
            }
        }
    }
    match result {
        Ok(()) => report.push(
            "epi-composition",
            format!("battery ({pairs} composable pairs)"),
            crate::report::Verdict::Pass,
            None,
        ),
        Err(witness) => report.push(
            "epi-composition",
            "battery",
            crate::report::Verdict::Fail,
            Some(witness),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, fixtures};

    #[test]
    fn small_preord_corpus_passes_saturated() {
        let corpus = corpus::preorders_up_to(3);
        let battery = corpus::preorders_up_to(2);
        let report =
            verify_cs_preord(&corpus, SystemKind::Saturated, &battery, None).unwrap();
        assert!(report.ok(), "{report}");
    }

    #[test]
    fn indiscrete_passes_with_vacuous_effectiveness() {
        let corpus = corpus::preorders_up_to(3);
        let battery = corpus::preorders_up_to(2);
        let report =
            verify_cs_preord(&corpus, SystemKind::Indiscrete, &battery, None).unwrap();
        assert!(report.ok(), "{report}");
        assert!(!report.records.iter().any(|r| r.check == "CS6"));
    }

    #[test]
    fn seeded_fault_is_caught_with_witness() {
        let corpus = vec![("p3".to_string(), fixtures::p3())];
        let battery = corpus::preorders_up_to(2);
        let fault = SeededFault {
            object_label: "p3".into(),
            drop_member: vec!["a".into(), "b".into()],
        };
        let report =
            verify_cs_preord(&corpus, SystemKind::Open, &battery, Some(&fault)).unwrap();
        assert!(!report.ok());
        let cs2 = report
            .records
            .iter()
            .find(|r| r.check == "CS2" && r.verdict == crate::report::Verdict::Fail)
            .expect("CS2 must fail when the union target is missing");
        assert!(cs2.detail.as_ref().unwrap().contains("a,b"));
    }

    #[test]
    fn cat_fixture_corpus_passes_saturated_kinds() {
        let corpus: Vec<(String, _)> = corpus::cat_fixtures()
            .into_iter()
            .map(|(n, c)| (n.to_string(), c))
            .collect();
        for kind in [
            SystemKind::Saturated,
            SystemKind::LeftSaturated,
            SystemKind::RightSaturated,
        ] {
            let report = verify_cs_cat(&corpus, kind, &corpus, None).unwrap();
            assert!(report.ok(), "{kind}: {report}");
        }
    }
}
