//! Types of maximal bounded subgroups, read off the thin twin building.
//!
//! A pair of spherical residues (R₊, R₋) of opposite signs describes the
//! bounded subgroup Stab(R₊) ∩ Stab(R₋). After replacing each residue by its
//! projection from the other, the pair is parallel; it gives a maximal
//! bounded subgroup iff it is of case (i′) (maximal spherical and opposite)
//! or case (ii′) (each residue properly inside a unique maximal spherical
//! residue R̄ε with proj_{R̄ε}(R̄−ε) = Rε).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coxeter::{CoxeterGroup, Element, Subset};
use crate::error::{Error, Result};
use crate::thinb::{self, Chamber, Residue, Sign};
use crate::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    OppositeMaximal,
    Parallel,
    NotMaximal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxBoundedVerdict {
    pub case: Case,
    pub refined: (Residue, Residue),
    pub envelopes: Option<(Residue, Residue)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviRootPartition {
    pub levi: Vec<Element>,
    pub utilde_plus: Vec<Element>,
    pub utilde_minus: Vec<Element>,
    /// Walls β₁..βₙ of U(R°₊,R°₋) along a minimal gallery from `witness.0`
    /// to the chamber opposite `witness.1`.
    pub u_core: Vec<Element>,
    pub witness: (Chamber, Chamber),
}

fn check_pair(g: &CoxeterGroup, rp: &Residue, rm: &Residue) -> Result<()> {
    if g.is_finite() {
        return Err(Error::NonSphericalTypeRequired);
    }
    if rp.sign != Sign::Plus || rm.sign != Sign::Minus {
        return Err(Error::SignMismatch);
    }
    g.require_spherical(rp.typ)?;
    g.require_spherical(rm.typ)
}

/// Maximal spherical subsets containing `j`.
fn maximal_over(g: &CoxeterGroup, j: Subset) -> Vec<Subset> {
    let n = g.rank();
    (0..1u32 << n)
        .map(Subset)
        .filter(|&k| j.is_subset(k) && g.is_spherical(k) && (0..n).all(|s| k.contains(s) || !g.is_spherical(k.with(s))))
        .collect()
}

pub fn is_maximal_spherical(g: &CoxeterGroup, j: Subset) -> bool {
    g.is_spherical(j) && (0..g.rank()).all(|s| j.contains(s) || !g.is_spherical(j.with(s)))
}

/// Replaces each residue by its projection from the other.
pub fn refine(g: &CoxeterGroup, rp: &Residue, rm: &Residue) -> Result<(Residue, Residue)> {
    Ok((thinb::project_residue(g, rp, rm)?, thinb::project_residue(g, rm, rp)?))
}

pub fn classify_pair(g: &CoxeterGroup, rp: &Residue, rm: &Residue) -> Result<MaxBoundedVerdict> {
    check_pair(g, rp, rm)?;
    let (p, m) = refine(g, rp, rm)?;
    if thinb::are_opposite_twin(&p, &m) && is_maximal_spherical(g, p.typ) {
        return Ok(MaxBoundedVerdict { case: Case::OppositeMaximal, refined: (p, m), envelopes: None });
    }
    let envelope = |r: &Residue| -> Option<Residue> {
        match maximal_over(g, r.typ)[..] {
            [k] if k != r.typ => Some(Residue::new(g, r.sign, k, &r.rep)),
            _ => None,
        }
    };
    if let (Some(bp), Some(bm)) = (envelope(&p), envelope(&m)) {
        if thinb::project_residue(g, &bp, &bm)? == p && thinb::project_residue(g, &bm, &bp)? == m {
            return Ok(MaxBoundedVerdict { case: Case::Parallel, refined: (p, m), envelopes: Some((bp, bm)) });
        }
    }
    Ok(MaxBoundedVerdict { case: Case::NotMaximal, refined: (p, m), envelopes: None })
}

/// Canonical form of a pair under left translation: (J, K, minimal
/// element of W_J·δ·W_K).
pub fn orbit_key(g: &CoxeterGroup, rp: &Residue, rm: &Residue) -> (Subset, Subset, Element) {
    let v = g.mul(&g.inv(&rp.rep), &rm.rep);
    (rp.typ, rm.typ, g.dcmin(rp.typ, &v, rm.typ))
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub bound: usize,
    pub pairs_examined: usize,
    pub verdicts: Vec<MaxBoundedVerdict>,
}

/// All case (i′) and (ii′) verdicts over pairs (W_J at e, d·W_K) with
/// ℓ(d) ≤ `bound`, deduplicated by the orbit of the refined pair.
pub fn enumerate_types(g: &CoxeterGroup, bound: usize, exec: Exec) -> Result<Enumeration> {
    if g.is_finite() {
        return Err(Error::NonSphericalTypeRequired);
    }
    let types: Vec<Subset> = (0..1u32 << g.rank()).map(Subset).filter(|&j| g.is_spherical(j)).collect();
    let ball = g.ball(bound);
    let cm = g.matrix().clone();
    let per_d = exec.map_init(
        &ball,
        || CoxeterGroup::new(cm.clone()),
        |h, d| -> Result<(usize, Vec<((Subset, Subset, Element), MaxBoundedVerdict)>)> {
            let (dl, dr) = (h.left_descents(d), h.right_descents(d));
            let mut found = Vec::new();
            let mut examined = 0;
            for &j in types.iter().filter(|j| j.intersection(dl).is_empty()) {
                for &k in types.iter().filter(|k| k.intersection(dr).is_empty()) {
                    examined += 1;
                    let rp = Residue { sign: Sign::Plus, typ: j, rep: Element::identity() };
                    let rm = Residue { sign: Sign::Minus, typ: k, rep: d.clone() };
                    let v = classify_pair(h, &rp, &rm)?;
                    if v.case != Case::NotMaximal {
                        found.push((orbit_key(h, &v.refined.0, &v.refined.1), v));
                    }
                }
            }
            Ok((examined, found))
        },
    );
    let mut pairs_examined = 0;
    let mut uniq = BTreeMap::new();
    for r in per_d {
        let (n, found) = r?;
        pairs_examined += n;
        for (key, v) in found {
            uniq.entry((key.2.clone(), key.0.listing_key(), key.1.listing_key())).or_insert(v);
        }
    }
    Ok(Enumeration { bound, pairs_examined, verdicts: uniq.into_values().collect() })
}

/// Number of case (ii′) types found at the given bound.
pub fn case_ii_search(g: &CoxeterGroup, bound: usize, exec: Exec) -> Result<usize> {
    Ok(enumerate_types(g, bound, exec)?.verdicts.iter().filter(|v| v.case == Case::Parallel).count())
}

/// Reflections of W crossing a spherical residue.
pub fn residue_walls(g: &CoxeterGroup, r: &Residue) -> Result<Vec<Element>> {
    let w0 = g.longest_element(r.typ)?;
    let mut walls = thinb::stabilizing_walls(g, r, 2 * r.rep.len() + w0.len());
    walls.sort();
    Ok(walls)
}

/// Wall sets behind the Levi decomposition of Stab(R₊) ∩ Stab(R₋).
pub fn levi_root_partition(g: &CoxeterGroup, rp: &Residue, rm: &Residue, bound: usize) -> Result<LeviRootPartition> {
    if rp.sign != Sign::Plus || rm.sign != Sign::Minus {
        return Err(Error::SignMismatch);
    }
    g.require_spherical(rp.typ)?;
    g.require_spherical(rm.typ)?;
    let (pp, pm) = refine(g, rp, rm)?;
    let levi = residue_walls(g, &pp)?;
    let minus = |a: Vec<Element>, b: &[Element]| -> Vec<Element> { a.into_iter().filter(|t| !b.contains(t)).collect() };
    let utilde_plus = minus(residue_walls(g, rp)?, &levi);
    let utilde_minus = minus(residue_walls(g, rm)?, &residue_walls(g, &pm)?);

    let op_m = thinb::opposite_residue(rm);
    let p = thinb::project_residue(g, &op_m, rp)?;
    let z = p.rep_chamber();
    let xp = thinb::project_chamber(g, rp, &z)?;
    let xm = thinb::opposite(&z);
    let delta = thinb::wdist(g, &xp, &xm)?;
    if delta.len() > bound {
        return Err(Error::BoundTooSmall { bound, needed: delta.len() });
    }
    let mut u_core = Vec::with_capacity(delta.len());
    let mut prefix = xp.element.clone();
    for &s in delta.letters() {
        u_core.push(g.conj(&prefix, &g.gen(s as usize)));
        prefix = g.rmul(&prefix, s as usize);
    }
    Ok(LeviRootPartition { levi, utilde_plus, utilde_minus, u_core, witness: (xp, xm) })
}
