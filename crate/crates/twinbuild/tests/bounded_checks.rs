mod common;

use twinbuild::bounded::*;
use twinbuild::coxeter::{CoxeterGroup, CoxeterMatrix, Subset};
use twinbuild::diagram::{affine_catalog, case_ii_obstructed, check_condition, moufang_bonds, random_matrices, Condition};
use twinbuild::thinb::*;
use twinbuild::{Error, Exec};

fn res(g: &CoxeterGroup, s: &str) -> Residue {
    Residue::parse(g, s).unwrap()
}
fn at1() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterMatrix::affine_a(1))
}
fn at2() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterMatrix::affine_a(2))
}

#[test]
fn classify_examples() {
    let g = at2();
    let v = classify_pair(&g, &res(&g, "e:J{1,2}:+"), &res(&g, "e:J{1,2}:-")).unwrap();
    assert_eq!(v.case, Case::OppositeMaximal);
    let g = at1();
    let v = classify_pair(&g, &res(&g, "e:J{}:+"), &res(&g, "e:J{}:-")).unwrap();
    assert_eq!(v.case, Case::NotMaximal);
    let a2 = CoxeterGroup::new(CoxeterMatrix::type_a(2));
    assert_eq!(
        classify_pair(&a2, &res(&a2, "e:J{1}:+"), &res(&a2, "e:J{1}:-")),
        Err(Error::NonSphericalTypeRequired)
    );
    assert!(matches!(
        classify_pair(&g, &res(&g, "e:J{1,2}:+"), &res(&g, "e:J{1}:-")),
        Err(Error::NotSpherical(_))
    ));
}

#[test]
fn enumerate_examples() {
    let g = at1();
    let e = enumerate_types(&g, 2, Exec::default()).unwrap();
    assert!(e.verdicts.iter().all(|v| v.case == Case::OppositeMaximal));
    let types: Vec<String> = e.verdicts.iter().map(|v| v.refined.0.typ.to_string()).collect();
    assert_eq!(types, ["{1}", "{2}"]);
    for v in &e.verdicts {
        assert!(are_opposite_twin(&v.refined.0, &v.refined.1));
    }
    let g = at2();
    let e = enumerate_types(&g, 3, Exec::default()).unwrap();
    assert!(!e.verdicts.is_empty() && e.verdicts.iter().all(|v| v.case == Case::OppositeMaximal));
    let g = CoxeterGroup::new(CoxeterMatrix::from_bonds(3, &[(1, 2, 3), (1, 3, 0), (2, 3, 0)]).unwrap());
    assert!(check_condition(g.matrix(), Condition::R3).unwrap());
    let e = enumerate_types(&g, 3, Exec::default()).unwrap();
    assert!(!e.verdicts.is_empty() && e.verdicts.iter().all(|v| v.case == Case::OppositeMaximal));
}

#[test]
fn case_ii_examples() {
    assert_eq!(case_ii_search(&at2(), 6, Exec::default()).unwrap(), 0);
    assert_eq!(case_ii_search(&at1(), 6, Exec::default()).unwrap(), 0);
    let a3 = CoxeterGroup::new(CoxeterMatrix::type_a(3));
    assert_eq!(case_ii_search(&a3, 6, Exec::default()), Err(Error::NonSphericalTypeRequired));
}

#[test]
fn parallel_and_sequential_enumerations_agree() {
    let g = at2();
    let a = enumerate_types(&g, 4, Exec::Parallel).unwrap();
    let b = enumerate_types(&g, 4, Exec::Sequential).unwrap();
    assert_eq!(a.verdicts, b.verdicts);
    assert_eq!(a.pairs_examined, b.pairs_examined);
}

#[test]
fn levi_examples() {
    let g = at1();
    let p = levi_root_partition(&g, &res(&g, "e:J{}:+"), &res(&g, "e:J{}:-"), 6).unwrap();
    assert!(p.levi.is_empty() && p.utilde_plus.is_empty() && p.utilde_minus.is_empty() && p.u_core.is_empty());
    let p = levi_root_partition(&g, &res(&g, "e:J{}:+"), &res(&g, "1:J{}:-"), 6).unwrap();
    assert_eq!(p.u_core, vec![g.parse("1").unwrap()]);
    assert!(p.levi.is_empty() && p.utilde_plus.is_empty() && p.utilde_minus.is_empty());
    let p = levi_root_partition(&g, &res(&g, "e:J{1}:+"), &res(&g, "e:J{1}:-"), 6).unwrap();
    assert_eq!(p.levi, vec![g.parse("1").unwrap()]);
    assert!(p.utilde_plus.is_empty() && p.utilde_minus.is_empty() && p.u_core.is_empty());
    let long = levi_root_partition(&g, &res(&g, "e:J{}:+"), &res(&g, "1 2 1 2:J{}:-"), 3);
    assert_eq!(long, Err(Error::BoundTooSmall { bound: 3, needed: 4 }));
}

fn pairs(g: &CoxeterGroup, radius: usize) -> Vec<(Residue, Residue)> {
    let plus = spherical_residues(g, Sign::Plus, 0);
    let minus = spherical_residues(g, Sign::Minus, radius);
    let mut out = Vec::new();
    for p in &plus {
        for m in &minus {
            out.push((p.clone(), m.clone()));
        }
    }
    out
}

#[test]
fn verdict_properties() {
    for g in [at1(), at2(), CoxeterGroup::new(affine_catalog()[4].1.clone())] {
        for (p, m) in pairs(&g, 4) {
            let v = classify_pair(&g, &p, &m).unwrap();
            let again = classify_pair(&g, &v.refined.0, &v.refined.1).unwrap();
            assert_eq!(again, v, "refinement idempotence at {p} {m}");
            assert!(is_parallel(&g, &v.refined.0, &v.refined.1).unwrap());
            match v.case {
                Case::OppositeMaximal => {
                    let (rp, rm) = &v.refined;
                    for j in (0..1u32 << g.rank()).map(Subset).filter(|&j| g.is_spherical(j) && rp.typ.is_subset(j)) {
                        let t = Residue::new(&g, Sign::Plus, j, &rp.rep);
                        let surjective = project_residue(&g, &t, rm).unwrap() == t;
                        assert_eq!(surjective, t == *rp);
                    }
                }
                Case::Parallel => {
                    for r in [&v.refined.0, &v.refined.1] {
                        let s: Vec<usize> =
                            (0..g.rank()).filter(|&s| !r.typ.contains(s) && g.is_spherical(r.typ.with(s))).collect();
                        let union = s.iter().fold(r.typ, |a, &s| a.with(s));
                        assert!(g.is_spherical(union));
                    }
                }
                Case::NotMaximal => {}
            }
        }
    }
}

#[test]
fn levi_partition_properties() {
    for g in [at1(), at2(), CoxeterGroup::new(CoxeterMatrix::from_bonds(3, &[(1, 2, 4), (2, 3, 0), (1, 3, 0)]).unwrap())] {
        for (p, m) in pairs(&g, 4) {
            let part = levi_root_partition(&g, &p, &m, 20).unwrap();
            let (xp, xm) = &part.witness;
            assert!(p.contains(&g, xp) && m.contains(&g, xm));
            assert_eq!(part.u_core.len(), wdist(&g, xp, xm).unwrap().len());
            let sets = [&part.levi, &part.utilde_plus, &part.utilde_minus, &part.u_core];
            for a in 0..4 {
                for b in 0..4 {
                    if a != b {
                        assert!(sets[a].iter().all(|t| !sets[b].contains(t)), "{p} {m}");
                    }
                }
            }
            // u_core is exactly the walls of roots containing both residues
            let chambers: Vec<Chamber> =
                p.chambers(&g).unwrap().into_iter().chain(m.chambers(&g).unwrap()).collect();
            let max_len = chambers.iter().map(|c| c.element.len()).max().unwrap() * 2 + 1;
            let mut brute: Vec<_> = g
                .reflections_up_to(max_len)
                .into_iter()
                .filter(|t| {
                    [true, false].iter().any(|&side| {
                        let root = TwinRoot { wall: t.clone(), side };
                        chambers.iter().all(|c| root.contains(&g, c))
                    })
                })
                .collect();
            brute.sort();
            let mut core = part.u_core.clone();
            core.sort();
            assert_eq!(core, brute, "{p} {m}");
        }
    }
}

#[test]
fn case_ii_absent_under_obstructions() {
    let mut checked = 0;
    for cm in random_matrices(60, 4, 77) {
        let g = CoxeterGroup::new(cm.clone());
        if g.is_finite() || !case_ii_obstructed(&cm).unwrap() {
            continue;
        }
        checked += 1;
        assert_eq!(case_ii_search(&g, 3, Exec::default()).unwrap(), 0, "{cm}");
    }
    assert!(checked > 10);
}

#[test]
fn case_ii_occurs_without_obstructions() {
    // m12 = 3, m23 = 2, m13 = ∞: R1, R2, R3 all fail and case (ii′) appears.
    let cm = CoxeterMatrix::from_bonds(3, &[(1, 2, 3), (1, 3, 0)]).unwrap();
    assert!(!case_ii_obstructed(&cm).unwrap());
    let g = CoxeterGroup::new(cm);
    let e = enumerate_types(&g, 3, Exec::default()).unwrap();
    let ii: Vec<_> = e.verdicts.iter().filter(|v| v.case == Case::Parallel).collect();
    assert_eq!(ii.len(), 1);
    let v = ii[0];
    let (bp, bm) = v.envelopes.as_ref().unwrap();
    assert!(v.refined.0.typ.is_subset(bp.typ) && v.refined.0.typ != bp.typ);
    assert_eq!(project_residue(&g, bp, bm).unwrap(), v.refined.0);
    assert_eq!(project_residue(&g, bm, bp).unwrap(), v.refined.1);
}

#[test]
fn r1_alone_needs_moufang_bonds() {
    // With a 5-bond, R1 holds but the apartment-level (ii′) pattern exists.
    let cm = CoxeterMatrix::from_bonds(3, &[(1, 2, 5), (1, 3, 5), (2, 3, 0)]).unwrap();
    assert!(check_condition(&cm, Condition::R1).unwrap());
    assert!(!moufang_bonds(&cm) && !case_ii_obstructed(&cm).unwrap());
    assert!(case_ii_search(&CoxeterGroup::new(cm), 3, Exec::default()).unwrap() > 0);
}

#[test]
fn catalog_has_no_case_ii() {
    for (name, cm) in affine_catalog().into_iter().filter(|p| p.1.rank() <= 3) {
        assert_eq!(case_ii_search(&CoxeterGroup::new(cm), 4, Exec::default()).unwrap(), 0, "{name}");
    }
}
