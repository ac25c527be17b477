mod common;

use std::time::Instant;

use common::laws::*;
use twinbuild::coxeter::{CoxeterGroup, CoxeterMatrix};
use twinbuild::thinb::*;
use twinbuild::Exec;

fn groups() -> Vec<CoxeterGroup> {
    vec![
        CoxeterGroup::new(CoxeterMatrix::affine_a(1)),
        CoxeterGroup::new(CoxeterMatrix::affine_a(2)),
        CoxeterGroup::new(CoxeterMatrix::type_b(2)),
    ]
}

#[test]
fn gate_and_projection_formulas() {
    for g in groups() {
        let t = Instant::now();
        assert_eq!(gate_violations(&g, 4), 0);
        assert_eq!(projection_formula_violations(&g, 3), 0);
        assert_eq!(compose_violations(&g, 3), 0);
        eprintln!("{:?}: {:?}", g.matrix().to_string(), t.elapsed());
    }
}

#[test]
fn parallelism_equivalences() {
    for g in groups() {
        let rep = parallelism_report(&g, 3, Exec::default());
        assert_eq!(rep.disagreements, 0);
        assert_eq!(rep.bad_chains, 0);
        assert_eq!(rep.transitivity_failures, 0);
    }
}

#[test]
fn cross_sign_lemmas() {
    for g in groups() {
        let (pairs, bad) = cross_sign_violations(&g, 3);
        assert!(pairs > 0);
        assert_eq!(bad, 0);
    }
}

#[test]
fn parallel_projections_preserve_opposition() {
    for g in groups() {
        let residues = ball_residues(&g, 3);
        for r in &residues {
            for q in &residues {
                if !is_parallel(&g, r, q).unwrap() {
                    continue;
                }
                let w0 = g.longest_element(q.typ).unwrap();
                for x in q.chambers(&g).unwrap() {
                    let y = Chamber::new(g.mul(&x.element, &w0), q.sign);
                    let px = project_chamber(&g, r, &x).unwrap();
                    let py = project_chamber(&g, r, &y).unwrap();
                    let d = wdist(&g, &px, &py).unwrap();
                    assert_eq!(d, g.longest_element(r.typ).unwrap(), "{r} {q} {x}");
                }
            }
        }
    }
}

#[test]
fn projections_onto_maximal_spherical_are_proper() {
    for g in groups() {
        let residues = ball_residues(&g, 3);
        let maximal: Vec<_> = residues
            .iter()
            .filter(|k| (0..g.rank()).all(|s| k.typ.contains(s) || !g.is_spherical(k.typ.with(s))))
            .collect();
        for k in maximal {
            for j in &residues {
                let p = project_residue(&g, k, j).unwrap();
                let equal_or_opposite = j == k || are_opposite_twin(j, k);
                assert_eq!(p == *k, equal_or_opposite, "{j} on {k}");
            }
        }
    }
}
