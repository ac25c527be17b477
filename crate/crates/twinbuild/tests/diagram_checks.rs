mod common;

use common::*;
use twinbuild::coxeter::{CoxeterGroup, CoxeterMatrix, Subset};
use twinbuild::diagram::*;
use twinbuild::Exec;

fn sets(v: &[Subset]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn lattice_examples() {
    let l = spherical_subsets(&CoxeterMatrix::affine_a(1)).unwrap();
    assert_eq!(sets(&l.spherical), ["{}", "{1}", "{2}"]);
    assert_eq!(sets(&l.maximal), ["{1}", "{2}"]);
    let l = spherical_subsets(&CoxeterMatrix::affine_a(2)).unwrap();
    assert_eq!(l.spherical.len(), 7);
    assert_eq!(sets(&l.maximal), ["{1,2}", "{1,3}", "{2,3}"]);
    let l = spherical_subsets(&CoxeterMatrix::type_a(2)).unwrap();
    assert_eq!(sets(&l.maximal), ["{1,2}"]);
    let big = CoxeterMatrix::type_a(13);
    assert!(matches!(spherical_subsets(&big), Err(twinbuild::Error::RankTooLarge(13))));
}

#[test]
fn condition_examples() {
    let a2t = CoxeterMatrix::affine_a(2);
    assert!(!check_condition(&a2t, Condition::R1).unwrap());
    assert!(check_condition(&a2t, Condition::R2).unwrap());
    let a1t = CoxeterMatrix::affine_a(1);
    assert!(check_condition(&a1t, Condition::R1).unwrap());
    assert!(check_condition(&a1t, Condition::R3).unwrap());
    assert_eq!("R3''".parse::<Condition>().unwrap(), Condition::R3DoublePrime);
    assert_eq!("R2′".parse::<Condition>().unwrap(), Condition::R2Prime);
}

#[test]
fn audit_examples() {
    assert!(equivalence_audit(&CoxeterMatrix::affine_a(2)).unwrap().pass);
    assert!(equivalence_audit(&CoxeterMatrix::affine_a(1)).unwrap().pass);
    let m = random_matrices(1, 5, 42).pop().unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(42);
    let m5 = random_matrix(&mut rng, 5);
    assert_eq!(m5.rank(), 5);
    assert!(equivalence_audit(&m5).unwrap().pass);
    assert!(equivalence_audit(&m).unwrap().pass);
}

#[test]
fn catalog_is_affine_and_satisfies_r2() {
    for (name, cm) in affine_catalog() {
        let full = cm.full();
        assert!(!cm.is_spherical(full), "{name}");
        for j in (0..full.0).map(Subset) {
            assert!(cm.is_spherical(j), "{name} {j}");
        }
        assert!(check_condition(&cm, Condition::R2).unwrap(), "{name}");
    }
}

#[test]
fn r3_double_prime_matches_partition_search() {
    for cm in random_matrices(120, 6, 5) {
        let items: Vec<usize> = (0..cm.rank()).collect();
        let brute = set_partitions(&items).iter().any(|p| {
            p.iter().all(|part| cm.is_spherical(part.iter().fold(Subset::EMPTY, |s, &i| s.with(i))))
                && p.iter().enumerate().all(|(a, pa)| {
                    p.iter().enumerate().all(|(b, pb)| {
                        a == b || pa.iter().all(|&s| pb.iter().all(|&t| cm.order(s, t).is_none()))
                    })
                })
        });
        assert_eq!(check_condition(&cm, Condition::R3DoublePrime).unwrap(), brute, "{cm}");
    }
}

#[test]
fn r3_implies_no_shared_generator() {
    for cm in random_matrices(200, 6, 11) {
        if check_condition(&cm, Condition::R3).unwrap() {
            let lat = spherical_subsets(&cm).unwrap();
            for a in &lat.maximal {
                for b in &lat.maximal {
                    assert!(a == b || a.intersection(*b).is_empty());
                }
            }
        }
    }
}

#[test]
fn random_equivalences_hold() {
    let ms = random_matrices(200, 6, 2024);
    let reports = audit_batch(&ms, Exec::default()).unwrap();
    assert_eq!(reports, audit_batch(&ms, Exec::Sequential).unwrap());
    assert!(reports.iter().all(|r| r.pass));
}

#[test]
fn classification_agrees_with_bfs() {
    let mut fixtures: Vec<CoxeterMatrix> = affine_catalog().into_iter().map(|p| p.1).collect();
    fixtures.extend(random_matrices(25, 5, 99));
    fixtures.push(CoxeterMatrix::from_bonds(4, &[(1, 2, 5), (2, 3, 3), (3, 4, 3)]).unwrap());
    fixtures.push(CoxeterMatrix::from_bonds(4, &[(1, 2, 3), (2, 3, 4), (3, 4, 3)]).unwrap());
    fixtures.push(CoxeterMatrix::from_bonds(4, &[(1, 2, 4), (2, 3, 3), (3, 4, 4)]).unwrap());
    fixtures.push(CoxeterMatrix::from_bonds(3, &[(1, 2, 5), (2, 3, 5)]).unwrap());
    for cm in fixtures {
        let g = CoxeterGroup::new(cm.clone());
        for j in (0..1u32 << cm.rank()).map(Subset) {
            if cm.components(j).len() != 1 {
                continue;
            }
            match bfs_order(&g, j, 10_000) {
                Some(_) => assert!(cm.is_spherical(j), "{cm} {j}"),
                None => {
                    if cm.is_spherical(j) {
                        assert!(bfs_order(&g, j, 60_000).is_some(), "{cm} {j}");
                    }
                }
            }
        }
    }
}

mod props {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use twinbuild::diagram::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn condition_variants_agree(seed in any::<u64>(), rank in 2usize..=6) {
            let cm = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), rank);
            let rep = equivalence_audit(&cm).unwrap();
            prop_assert!(rep.pass, "{}", cm);
            prop_assert_eq!(rep.r2, check_condition(&cm, Condition::R2Prime).unwrap());
        }
    }
}
