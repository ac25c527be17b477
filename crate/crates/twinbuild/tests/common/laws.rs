//! Brute-force checks of the projection and parallelism laws over balls of
//! Σ(W,S). Each function returns the number of violations found.

use std::collections::{BTreeSet, HashMap, HashSet};

use twinbuild::coxeter::{CoxeterGroup, Element, Subset};
use twinbuild::thinb::*;

/// Projection by enumerating the chambers of a spherical residue.
pub fn brute_project(g: &CoxeterGroup, r: &Residue, c: &Chamber) -> Chamber {
    let chambers = r.chambers(g).unwrap();
    let lens: Vec<usize> = chambers.iter().map(|x| wdist(g, c, x).unwrap().len()).collect();
    let best = if c.sign == r.sign { *lens.iter().min().unwrap() } else { *lens.iter().max().unwrap() };
    let hits: Vec<_> = chambers.iter().zip(&lens).filter(|p| *p.1 == best).collect();
    assert_eq!(hits.len(), 1, "projection of {c} on {r} not unique");
    hits[0].0.clone()
}

pub fn residue_set(g: &CoxeterGroup, r: &Residue) -> BTreeSet<Chamber> {
    r.chambers(g).unwrap().into_iter().collect()
}

pub fn ball_residues(g: &CoxeterGroup, radius: usize) -> Vec<Residue> {
    let mut v = spherical_residues(g, Sign::Plus, radius);
    v.extend(spherical_residues(g, Sign::Minus, radius));
    v
}

/// Gate property for every chamber and same-sign spherical residue.
pub fn gate_violations(g: &CoxeterGroup, radius: usize) -> usize {
    let residues = spherical_residues(g, Sign::Plus, radius);
    let mut bad = 0;
    for w in g.ball(radius) {
        let c = Chamber::new(w, Sign::Plus);
        for r in &residues {
            let p = project_chamber(g, r, &c).unwrap();
            let d0 = wdist(g, &c, &p).unwrap().len();
            for x in r.chambers(g).unwrap() {
                if wdist(g, &c, &x).unwrap().len() != d0 + wdist(g, &p, &x).unwrap().len() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Chamber projections agree with enumeration, and residue projections
/// (type formula included) agree with the set of chamber projections.
pub fn projection_formula_violations(g: &CoxeterGroup, radius: usize) -> usize {
    let residues = ball_residues(g, radius);
    let sets: Vec<BTreeSet<Chamber>> = residues.iter().map(|r| residue_set(g, r)).collect();
    let mut bad = 0;
    for r in &residues {
        for (q, qset) in residues.iter().zip(&sets) {
            let brute: BTreeSet<Chamber> = qset.iter().map(|d| brute_project(g, r, d)).collect();
            let fast: BTreeSet<Chamber> = qset.iter().map(|d| project_chamber(g, r, d).unwrap()).collect();
            let p = project_residue(g, r, q).unwrap();
            if brute != fast || residue_set(g, &p) != brute {
                bad += 1;
            }
        }
    }
    bad
}

/// proj_{R_I}(Q) = proj_{R_I}(proj_{R_J}(Q)) for all R_I ⊆ R_J in the ball.
pub fn compose_violations(g: &CoxeterGroup, radius: usize) -> usize {
    let residues = ball_residues(g, radius);
    let mut bad = 0;
    for rj in &residues {
        let mut subs = BTreeSet::new();
        for x in rj.chambers(g).unwrap() {
            for i in (0..1u32 << g.rank()).map(Subset).filter(|i| i.is_subset(rj.typ)) {
                subs.insert(Residue::of_chamber(g, i, &x));
            }
        }
        for q in &residues {
            let pj = project_residue(g, rj, q).unwrap();
            for ri in &subs {
                if project_residue(g, ri, q).unwrap() != project_residue(g, ri, &pj).unwrap() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Reflections of a spherical residue, computed from W_J directly.
pub fn residue_walls(g: &CoxeterGroup, r: &Residue) -> BTreeSet<Element> {
    let mut out = BTreeSet::new();
    for u in g.parabolic_elements(r.typ).unwrap() {
        for s in r.typ.iter() {
            out.insert(g.conj(&g.mul(&r.rep, &u), &g.gen(s)));
        }
    }
    out
}

/// Searches for a chain witnessing condition (iii) without using the
/// parallelism test: at each step pick a spherical envelope of rank+1.
pub fn chain_exists(g: &CoxeterGroup, r: &Residue, q: &Residue, max_steps: usize) -> bool {
    fn go(g: &CoxeterGroup, cur: &Residue, r: &Residue, q: &Residue, left: usize, seen: &mut HashSet<Residue>) -> bool {
        if cur == q {
            return true;
        }
        if left == 0 || !seen.insert(cur.clone()) {
            return false;
        }
        for s in (0..g.rank()).filter(|&s| !cur.typ.contains(s)) {
            let t = Residue::new(g, cur.sign, cur.typ.with(s), &cur.rep);
            if !g.is_spherical(t.typ) {
                continue;
            }
            let next = opposite_in(g, &t, cur).unwrap();
            if project_residue(g, &t, r).unwrap() == *cur
                && project_residue(g, &t, q).unwrap() == next
                && go(g, &next, r, q, left - 1, seen)
            {
                return true;
            }
        }
        false
    }
    r.typ.len() == q.typ.len() && go(g, r, r, q, max_steps, &mut HashSet::new())
}

pub struct ParallelismReport {
    pub pairs: usize,
    pub disagreements: usize,
    pub bad_chains: usize,
    pub transitivity_failures: usize,
}

/// (i) ⟺ (ii) ⟺ (iii), chain verification and transitivity on same-sign
/// spherical residues of the ball.
pub fn parallelism_report(g: &CoxeterGroup, radius: usize, exec: twinbuild::Exec) -> ParallelismReport {
    let residues = spherical_residues(g, Sign::Plus, radius);
    let walls: Vec<BTreeSet<Element>> = residues.iter().map(|r| residue_walls(g, r)).collect();
    let par = parallel_matrix(g, &residues, exec).unwrap();
    let n = residues.len();
    let mut rep = ParallelismReport { pairs: 0, disagreements: 0, bad_chains: 0, transitivity_failures: 0 };
    let idx: Vec<usize> = (0..n).collect();
    let cm = g.matrix().clone();
    let rows = exec.map_init(
        &idx,
        || CoxeterGroup::new(cm.clone()),
        |h, &a| {
            let mut dis = 0;
            let mut bad = 0;
            for b in 0..n {
                let (r, q) = (&residues[a], &residues[b]);
                let i = par[a][b];
                let ii = walls[a] == walls[b];
                let steps = residue_distance(h, r, q).unwrap().len() + 2;
                let iii = chain_exists(h, r, q, steps);
                if i != ii || i != iii {
                    dis += 1;
                }
                if i {
                    match parallelism_chain(h, r, q) {
                        Ok(c) if verify_chain(h, &c, r, q).unwrap() => {}
                        _ => bad += 1,
                    }
                }
            }
            (dis, bad)
        },
    );
    rep.pairs = n * n;
    for (d, b) in rows {
        rep.disagreements += d;
        rep.bad_chains += b;
    }
    let mut class: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in 0..n {
        class.insert(a, (0..n).filter(|&b| par[a][b]).collect());
    }
    for a in 0..n {
        for &b in &class[&a] {
            for &c in &class[&b] {
                if !par[a][c] {
                    rep.transitivity_failures += 1;
                }
            }
        }
    }
    rep
}

/// Abramenko's description of cross-sign projections and the opposition
/// criterion, over all cross-sign spherical pairs. Returns (pairs, violations).
pub fn cross_sign_violations(g: &CoxeterGroup, radius: usize) -> (usize, usize) {
    let plus = spherical_residues(g, Sign::Plus, radius);
    let minus = spherical_residues(g, Sign::Minus, radius);
    let mut pairs = 0;
    let mut bad = 0;
    for r in plus.iter().chain(&minus) {
        let others = if r.sign == Sign::Plus { &minus } else { &plus };
        for q in others {
            pairs += 1;
            let p = project_residue(g, r, q).unwrap();
            let via = opposite_in(g, r, &project_residue(g, r, &opposite_residue(q)).unwrap()).unwrap();
            if p != via {
                bad += 1;
            }
            let pq = project_residue(g, q, r).unwrap();
            if are_opposite_twin(r, q) != are_opposite_twin(&p, &pq) {
                bad += 1;
            }
        }
    }
    (pairs, bad)
}
