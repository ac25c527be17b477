//! Spherical subsets of a Coxeter diagram and the conditions R1, R2, R3
//! (with their variants R2′, R3′, R3″) that rule out the parallel case of
//! the maximal bounded subgroup classification.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::{CoxeterMatrix, Subset};
use crate::error::{Error, Result};
use crate::Exec;

pub const MAX_LATTICE_RANK: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalLattice {
    pub spherical: Vec<Subset>,
    pub maximal: Vec<Subset>,
}

impl SphericalLattice {
    pub fn is_spherical(&self, j: Subset) -> bool {
        self.spherical.binary_search_by_key(&j.listing_key(), |s| s.listing_key()).is_ok()
    }

    pub fn is_maximal(&self, j: Subset) -> bool {
        self.maximal.contains(&j)
    }

    /// Maximal spherical subsets containing `j`.
    pub fn maximal_over(&self, j: Subset) -> Vec<Subset> {
        self.maximal.iter().copied().filter(|k| j.is_subset(*k)).collect()
    }
}

/// All spherical subsets and the maximal ones, ordered by size then members.
pub fn spherical_subsets(cm: &CoxeterMatrix) -> Result<SphericalLattice> {
    let n = cm.rank();
    if n > MAX_LATTICE_RANK {
        return Err(Error::RankTooLarge(n));
    }
    let mut spherical: Vec<Subset> = (0..1u32 << n).map(Subset).filter(|&j| cm.is_spherical(j)).collect();
    spherical.sort_by_key(|s| s.listing_key());
    let maximal = spherical
        .iter()
        .copied()
        .filter(|&j| (0..n).all(|s| j.contains(s) || !cm.is_spherical(j.with(s))))
        .collect();
    Ok(SphericalLattice { spherical, maximal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    R1,
    R2,
    R2Prime,
    R3,
    R3Prime,
    R3DoublePrime,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::R1,
        Condition::R2,
        Condition::R2Prime,
        Condition::R3,
        Condition::R3Prime,
        Condition::R3DoublePrime,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::R1 => "R1",
            Condition::R2 => "R2",
            Condition::R2Prime => "R2'",
            Condition::R3 => "R3",
            Condition::R3Prime => "R3'",
            Condition::R3DoublePrime => "R3''",
        })
    }
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('′', "'").replace('″', "''");
        match t.to_ascii_uppercase().as_str() {
            "R1" => Ok(Condition::R1),
            "R2" => Ok(Condition::R2),
            "R2'" | "R2P" | "R2PRIME" => Ok(Condition::R2Prime),
            "R3" => Ok(Condition::R3),
            "R3'" | "R3P" | "R3PRIME" => Ok(Condition::R3Prime),
            "R3''" | "R3PP" | "R3DOUBLEPRIME" => Ok(Condition::R3DoublePrime),
            _ => Err(Error::Parse(format!("unknown condition {s:?}"))),
        }
    }
}

fn r1(cm: &CoxeterMatrix) -> bool {
    let n = cm.rank();
    (0..n).all(|i| (0..n).all(|j| cm.raw(i, j) != 3))
}

fn r2(cm: &CoxeterMatrix, lat: &SphericalLattice) -> bool {
    let n = cm.rank();
    lat.maximal.iter().all(|&k| {
        lat.spherical.iter().filter(|&&j| j != k && j.is_subset(k)).all(|&j| {
            (0..n).any(|s| !k.contains(s) && lat.is_spherical(j.with(s)) && !lat.is_spherical(k.with(s)))
        })
    })
}

fn r2_prime(lat: &SphericalLattice) -> bool {
    lat.spherical
        .iter()
        .filter(|j| !lat.is_maximal(**j))
        .all(|&j| lat.maximal_over(j).len() >= 2)
}

fn r3(cm: &CoxeterMatrix, lat: &SphericalLattice) -> bool {
    (0..cm.rank()).all(|j| lat.maximal_over(Subset::single(j)).len() == 1)
}

fn r3_prime(cm: &CoxeterMatrix, lat: &SphericalLattice) -> bool {
    let n = cm.rank();
    lat.maximal
        .iter()
        .all(|&k| k.iter().all(|j| (0..n).filter(|&s| !k.contains(s)).all(|s| cm.order(s, j).is_none())))
}

/// Connected components of the graph with an edge wherever the bond is finite.
pub fn finite_bond_components(cm: &CoxeterMatrix) -> Vec<Subset> {
    let n = cm.rank();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut set = Subset::EMPTY;
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(a) = stack.pop() {
            set = set.with(a);
            for b in 0..n {
                if comp[b] == usize::MAX && cm.order(a, b).is_some() {
                    comp[b] = id;
                    stack.push(b);
                }
            }
        }
        out.push(set);
    }
    out
}

fn r3_double_prime(cm: &CoxeterMatrix) -> bool {
    finite_bond_components(cm).into_iter().all(|c| cm.is_spherical(c))
}

pub fn check_condition(cm: &CoxeterMatrix, which: Condition) -> Result<bool> {
    if which == Condition::R1 {
        return Ok(r1(cm));
    }
    if which == Condition::R3DoublePrime {
        return Ok(r3_double_prime(cm));
    }
    let lat = spherical_subsets(cm)?;
    Ok(match which {
        Condition::R2 => r2(cm, &lat),
        Condition::R2Prime => r2_prime(&lat),
        Condition::R3 => r3(cm, &lat),
        Condition::R3Prime => r3_prime(cm, &lat),
        Condition::R1 | Condition::R3DoublePrime => unreachable!(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub r2: bool,
    pub r2_prime: bool,
    pub r3: bool,
    pub r3_prime: bool,
    pub r3_double_prime: bool,
    pub pass: bool,
}

/// Evaluates R2 against R2′ and R3 against R3′ and R3″.
pub fn equivalence_audit(cm: &CoxeterMatrix) -> Result<AuditReport> {
    let lat = spherical_subsets(cm)?;
    let (a, b) = (r2(cm, &lat), r2_prime(&lat));
    let (c, d, e) = (r3(cm, &lat), r3_prime(cm, &lat), r3_double_prime(cm));
    Ok(AuditReport { r2: a, r2_prime: b, r3: c, r3_prime: d, r3_double_prime: e, pass: a == b && c == d && d == e })
}

/// Bond orders drawn for random matrices; 0 is ∞.
pub const RANDOM_BONDS: [u32; 6] = [2, 3, 4, 5, 6, 0];

/// Random symmetric Coxeter matrix of the given rank.
pub fn random_matrix<R: Rng>(rng: &mut R, rank: usize) -> CoxeterMatrix {
    let mut rows = vec![vec![1u32; rank]; rank];
    for i in 0..rank {
        for j in i + 1..rank {
            let m = RANDOM_BONDS[rng.gen_range(0..RANDOM_BONDS.len())];
            rows[i][j] = m;
            rows[j][i] = m;
        }
    }
    CoxeterMatrix::new(rows).expect("valid by construction")
}

/// `count` seeded random matrices with ranks in 2..=`max_rank`.
pub fn random_matrices(count: usize, max_rank: usize, seed: u64) -> Vec<CoxeterMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rank = rng.gen_range(2..=max_rank.max(2));
            random_matrix(&mut rng, rank)
        })
        .collect()
}

/// Audits many matrices; output order follows input order.
pub fn audit_batch(matrices: &[CoxeterMatrix], exec: Exec) -> Result<Vec<AuditReport>> {
    exec.map(matrices, equivalence_audit).into_iter().collect()
}

/// Named affine diagrams of rank at most 5.
pub fn affine_catalog() -> Vec<(&'static str, CoxeterMatrix)> {
    let m = |rank: usize, bonds: &[(usize, usize, u32)]| CoxeterMatrix::from_bonds(rank, bonds).expect("catalog");
    vec![
        ("A~1", CoxeterMatrix::affine_a(1)),
        ("A~2", CoxeterMatrix::affine_a(2)),
        ("A~3", CoxeterMatrix::affine_a(3)),
        ("A~4", CoxeterMatrix::affine_a(4)),
        ("C~2", m(3, &[(1, 2, 4), (2, 3, 4)])),
        ("B~3", m(4, &[(1, 3, 3), (2, 3, 3), (3, 4, 4)])),
        ("B~4", m(5, &[(1, 3, 3), (2, 3, 3), (3, 4, 3), (4, 5, 4)])),
        ("C~3", m(4, &[(1, 2, 4), (2, 3, 3), (3, 4, 4)])),
        ("C~4", m(5, &[(1, 2, 4), (2, 3, 3), (3, 4, 3), (4, 5, 4)])),
        ("D~4", m(5, &[(1, 3, 3), (2, 3, 3), (3, 4, 3), (3, 5, 3)])),
        ("G~2", m(3, &[(1, 2, 3), (2, 3, 6)])),
        ("F~4", m(5, &[(1, 2, 3), (2, 3, 3), (3, 4, 4), (4, 5, 3)])),
    ]
}

/// Whether every finite bond order is one that occurs in Moufang polygons
/// (2, 3, 4, 6 or 8). Twin root data only exist over such diagrams, and the
/// implication R1 ⟹ "no case (ii)" uses this.
pub fn moufang_bonds(cm: &CoxeterMatrix) -> bool {
    let n = cm.rank();
    (0..n).all(|i| (0..n).all(|j| i == j || matches!(cm.order(i, j), None | Some(2 | 3 | 4 | 6 | 8))))
}

/// Whether one of R1, R2, R3 rules out case (ii) for this diagram; R1 is
/// only used when [`moufang_bonds`] holds.
pub fn case_ii_obstructed(cm: &CoxeterMatrix) -> Result<bool> {
    Ok(check_condition(cm, Condition::R2)?
        || check_condition(cm, Condition::R3)?
        || (moufang_bonds(cm) && check_condition(cm, Condition::R1)?))
}
