//! Root groups, bounded unipotent groups, torus fixed points, Conditions
//! (P1)–(P3), finite-subgroup fixed residues, twin axioms and Levi sampling.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::decomp::{ball, birkhoff, codist, combine, dist, monomial, simple_root_elem, twisted_space, ThickChamber};
use super::field::{Field, Fq};
use super::mat::{in_borel, in_parahoric, LaurentMat};
use super::weyl::{letter_name, AffWeyl};
use crate::error::{Error, Result};
use crate::thinb::Sign;

pub const MAX_UNIPOTENT_LENGTH: usize = 8;
pub const MAX_UNIPOTENT_ORDER: usize = 1 << 20;
pub const MAX_TORUS_RADIUS: usize = 6;
pub const MAX_STAB_RADIUS: usize = 5;
pub const GROUP_CUTOFF: usize = 10_000;
pub const AXIOM_RADIUS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// up: [[1, c t^k],[0,1]] for k ≥ 0; down: [[1,0],[c t^k,1]] for k ≥ 1.
pub fn root_elem(f: &'static Field, dir: Direction, k: i64, c: Fq) -> Result<LaurentMat> {
    match dir {
        Direction::Up if k >= 0 => Ok(LaurentMat::upper(f, c, k as i32)),
        Direction::Down if k >= 1 => Ok(LaurentMat::lower(f, c, k as i32)),
        _ => Err(Error::BadIndex(k)),
    }
}

/// U(x₊, x₋) as the product of the root groups along a minimal gallery.
#[derive(Clone, Debug)]
pub struct UnipotentGroup {
    /// δ*(x₊, x₋).
    pub w: AffWeyl,
    /// g′ with x₊ = g′B₊ and x₋ = g′ẇB₋.
    pub frame: LaurentMat,
    /// U_{β_k} for k = 1..n, each as its q elements.
    pub root_groups: Vec<Vec<LaurentMat>>,
    pub elements: Vec<LaurentMat>,
}

impl UnipotentGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Closed under multiplication by every root-group element and under
    /// inversion; with 1 ∈ U this makes U the group they generate.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&LaurentMat> = self.elements.iter().collect();
        let f = self.frame.field();
        set.contains(&LaurentMat::identity(f))
            && self.elements.iter().all(|e| {
                set.contains(&e.inv()) && self.root_groups.iter().flatten().all(|u| set.contains(&e.mul(u)))
            })
    }

    /// Checks that no u ≠ 1 fixes a chamber opposite x₊ within `radius` of
    /// g′B₋; returns the number of chambers examined.
    pub fn acts_freely(&self, radius: usize) -> Result<(usize, bool)> {
        let f = self.frame.field();
        let xp = ThickChamber::new(self.frame.clone(), Sign::Plus);
        let mut examined = 0;
        for (_, z) in ball(f, Sign::Minus, radius) {
            let z = z.translate(&self.frame);
            if !codist(&xp, &z)?.is_identity() {
                continue;
            }
            examined += 1;
            if self.elements.iter().any(|u| !u.is_identity() && z.is_fixed_by(u)) {
                return Ok((examined, false));
            }
        }
        Ok((examined, true))
    }

    pub fn to_json(&self, list: bool) -> Value {
        let mut v = json!({
            "w": self.w.to_string(),
            "n": self.w.len(),
            "order": self.order(),
            "closed": self.is_closed(),
            "frame": self.frame.to_json(),
        });
        if list {
            v["elements"] = self.elements.iter().map(LaurentMat::to_json).collect();
        }
        v
    }
}

pub fn unipotent_group(x: &ThickChamber, y: &ThickChamber) -> Result<UnipotentGroup> {
    if x.sign == y.sign {
        return Err(Error::SameSign);
    }
    let (xp, xm) = if x.sign == Sign::Plus { (x, y) } else { (y, x) };
    let f = xp.field();
    let b = birkhoff(&xp.g.inv().mul(&xm.g))?;
    let n = b.w.len();
    if n > MAX_UNIPOTENT_LENGTH {
        return Err(Error::TooLong(n));
    }
    let order = (f.q() as usize).saturating_pow(n as u32);
    if order > MAX_UNIPOTENT_ORDER {
        return Err(Error::GroupTooLarge(MAX_UNIPOTENT_ORDER));
    }
    let frame = xp.g.mul(&b.left);
    let mut prefix = LaurentMat::identity(f);
    let mut root_groups = Vec::with_capacity(n);
    for &s in b.w.letters() {
        let conj = frame.mul(&prefix);
        root_groups.push(f.elements().map(|c| simple_root_elem(f, Sign::Plus, s, c).conj_by(&conj)).collect::<Vec<_>>());
        prefix = prefix.mul(&LaurentMat::sdot(f, s));
    }
    let mut elements = vec![LaurentMat::identity(f)];
    for rg in &root_groups {
        elements = elements.iter().flat_map(|e| rg.iter().map(move |u| e.mul(u))).collect();
    }
    Ok(UnipotentGroup { w: b.w, frame, root_groups, elements })
}

/// Chambers of the radius-r ball fixed by the diagonal torus.
pub fn torus_fixed_chambers(q: u32, r: usize, sign: Sign, allow_small: bool) -> Result<Vec<ThickChamber>> {
    let f = Field::get(q)?;
    if q < 4 && !allow_small {
        return Err(Error::FieldTooSmall(q));
    }
    if r > MAX_TORUS_RADIUS {
        return Err(Error::RadiusTooLarge { radius: r, max: MAX_TORUS_RADIUS });
    }
    let h = LaurentMat::diag(f, f.primitive(), 0);
    Ok(ball(f, sign, r).into_iter().map(|(_, z)| z).filter(|z| z.is_fixed_by(&h)).collect())
}

type Mat2 = [Fq; 4];

fn m2_mul(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    [
        f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
        f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
        f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
        f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
    ]
}

fn m2_inv(f: &Field, a: &Mat2) -> Mat2 {
    [a[3], f.neg(a[1]), f.neg(a[2]), a[0]]
}

/// Closure of `gens` under multiplication in SL₂(q).
fn m2_closure(f: &Field, gens: &[Mat2]) -> HashSet<Mat2> {
    let id = [1, 0, 0, 1];
    let mut seen: HashSet<Mat2> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = m2_mul(f, &x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PReport {
    pub q: u32,
    pub order: usize,
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub derived_order: usize,
    pub h_order: usize,
    pub h_is_diagonal: bool,
    pub conjugates: usize,
    pub fixed_conjugates: usize,
}

/// (P1)–(P3) in L = ⟨U, U⁻⟩ ≅ SL₂(q) for the constant root groups
/// U = {[[1,c],[0,1]]} and U⁻ = {[[1,0],[c,1]]}.
pub fn check_p_conditions(q: u32) -> Result<PReport> {
    if q > 9 {
        return Err(Error::FieldTooLarge(q));
    }
    let f = Field::get(q)?;
    let u: Vec<Mat2> = f.elements().map(|c| [1, c, 0, 1]).collect();
    let um: Vec<Mat2> = f.elements().map(|c| [1, 0, c, 1]).collect();
    let gens: Vec<Mat2> = u.iter().chain(&um).copied().collect();
    let group: Vec<Mat2> = {
        let mut v: Vec<Mat2> = m2_closure(f, &gens).into_iter().collect();
        v.sort();
        v
    };
    let p1 = u.iter().all(|a| u.iter().all(|b| m2_mul(f, a, b) == m2_mul(f, b, a)));
    let mut comms: HashSet<Mat2> = HashSet::new();
    for a in &group {
        for b in &group {
            let c = m2_mul(f, &m2_mul(f, a, b), &m2_mul(f, &m2_inv(f, a), &m2_inv(f, b)));
            comms.insert(c);
        }
    }
    let comms: Vec<Mat2> = comms.into_iter().collect();
    let derived = m2_closure(f, &comms);
    let p2 = derived.len() == group.len();

    let normalizes = |x: &Mat2, set: &[Mat2]| {
        let s: HashSet<&Mat2> = set.iter().collect();
        set.iter().all(|a| s.contains(&m2_mul(f, &m2_mul(f, x, a), &m2_inv(f, x))))
    };
    let h: Vec<Mat2> = group.iter().filter(|x| normalizes(x, &u) && normalizes(x, &um)).copied().collect();
    let h_is_diagonal = h.iter().all(|x| x[1] == 0 && x[2] == 0)
        && group.iter().filter(|x| x[1] == 0 && x[2] == 0).all(|x| h.contains(x));
    let mut conjugates: HashSet<Vec<Mat2>> = HashSet::new();
    for g in &group {
        let mut c: Vec<Mat2> = u.iter().map(|a| m2_mul(f, &m2_mul(f, g, a), &m2_inv(f, g))).collect();
        c.sort();
        conjugates.insert(c);
    }
    let fixed = conjugates.iter().filter(|c| h.iter().all(|x| normalizes(x, c))).count();
    Ok(PReport {
        q,
        order: group.len(),
        p1,
        p2,
        p3: fixed == 2,
        derived_order: derived.len(),
        h_order: h.len(),
        h_is_diagonal,
        conjugates: conjugates.len(),
        fixed_conjugates: fixed,
    })
}

/// A chamber or panel stabilized by a group.
#[derive(Clone, Debug)]
pub struct ResidueDesc {
    pub sign: Sign,
    /// `None` for a chamber, the panel type otherwise.
    pub panel: Option<u8>,
    pub chamber: ThickChamber,
    pub distance: usize,
}

impl ResidueDesc {
    pub fn to_json(&self) -> Value {
        json!({
            "sign": self.sign.to_string(),
            "kind": match self.panel { None => "chamber".to_string(), Some(s) => format!("panel {}", letter_name(s)) },
            "distance": self.distance,
            "chamber": self.chamber.to_json(),
        })
    }

    pub fn is_stabilized_by(&self, h: &LaurentMat) -> bool {
        let x = self.chamber.g.inv().mul(h).mul(&self.chamber.g);
        match self.panel {
            None => in_borel(&x, self.sign),
            Some(s) => in_parahoric(&x, self.sign, s),
        }
    }
}

/// Elements of ⟨gens⟩, or `GroupTooLarge` past the cutoff.
pub fn generated_group(f: &'static Field, gens: &[LaurentMat], cutoff: usize) -> Result<Vec<LaurentMat>> {
    let id = LaurentMat::identity(f);
    let mut seen: HashSet<LaurentMat> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > cutoff {
                    return Err(Error::GroupTooLarge(cutoff));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Nearest stabilized chamber or panel of each sign, searching the ball by
/// distance: the chamber first, then its s1 panel, then its s0 panel.
pub fn finite_subgroup_residues(
    f: &'static Field,
    gens: &[LaurentMat],
    r: usize,
) -> Result<(ResidueDesc, ResidueDesc)> {
    if r > MAX_STAB_RADIUS {
        return Err(Error::RadiusTooLarge { radius: r, max: MAX_STAB_RADIUS });
    }
    if gens.iter().any(|g| g.field() != f) {
        return Err(Error::Parse("generators over different fields".into()));
    }
    generated_group(f, gens, GROUP_CUTOFF)?;
    let search = |sign: Sign| -> Result<ResidueDesc> {
        for (d, z) in ball(f, sign, r) {
            for panel in [None, Some(0), Some(1)] {
                let cand = ResidueDesc { sign, panel, chamber: z.clone(), distance: d };
                if gens.iter().all(|g| cand.is_stabilized_by(g)) {
                    return Ok(cand);
                }
            }
        }
        Err(Error::NotFoundInRadius(r))
    };
    Ok((search(Sign::Plus)?, search(Sign::Minus)?))
}

/// Random chamber within `radius` of the base chamber.
pub fn random_chamber(f: &'static Field, sign: Sign, radius: usize, rng: &mut impl Rng) -> ThickChamber {
    let n = rng.gen_range(0..=radius);
    let first = rng.gen_range(0..2u8);
    let w = AffWeyl::alternating(first, n);
    let g = w.letters().iter().fold(LaurentMat::identity(f), |acc, &s| {
        let c = rng.gen_range(0..f.q()) as Fq;
        acc.mul(&simple_root_elem(f, sign, s, c)).mul(&LaurentMat::sdot(f, s))
    });
    ThickChamber::new(g, sign)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub q: u32,
    pub samples: usize,
    pub seed: u64,
    pub radius: usize,
    pub tw1_violations: usize,
    pub tw2_checked: usize,
    pub tw2_violations: usize,
    pub tw3_violations: usize,
    pub pass: bool,
}

/// Samples (x, y, s) with x, y of opposite signs and checks (Tw1)–(Tw3).
/// Samples alternate which sign x has.
pub fn check_twin_axioms(q: u32, samples: usize, seed: u64) -> Result<AxiomReport> {
    let f = Field::get(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = AxiomReport {
        q,
        samples,
        seed,
        radius: AXIOM_RADIUS,
        tw1_violations: 0,
        tw2_checked: 0,
        tw2_violations: 0,
        tw3_violations: 0,
        pass: false,
    };
    for i in 0..samples {
        let sx = if i % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let x = random_chamber(f, sx, AXIOM_RADIUS, &mut rng);
        let y = random_chamber(f, sx.flip(), AXIOM_RADIUS, &mut rng);
        let w = codist(&x, &y)?;
        if codist(&y, &x)? != w.inverse() {
            rep.tw1_violations += 1;
        }
        // Bias s towards a descent so that (Tw2) is exercised often.
        let s = match w.last() {
            Some(l) if rng.gen_bool(0.5) => l,
            _ => rng.gen_range(0..2u8),
        };
        let ws = w.rmul(s);
        let neighbours: Vec<ThickChamber> = f.elements().map(|c| y.neighbour(s, c)).collect();
        for z in &neighbours {
            if dist(&y, z)? != AffWeyl::from_letters(&[s]) {
                return Err(Error::Internal("neighbour is not s-adjacent".into()));
            }
        }
        if ws.len() < w.len() {
            let c = rng.gen_range(0..f.q()) as Fq;
            rep.tw2_checked += 1;
            if codist(&x, &neighbours[c as usize])? != ws {
                rep.tw2_violations += 1;
            }
        }
        let mut found = false;
        for z in &neighbours {
            if codist(&x, z)? == ws {
                found = true;
                break;
            }
        }
        if !found {
            rep.tw3_violations += 1;
        }
    }
    rep.pass = rep.tw1_violations == 0 && rep.tw2_violations == 0 && rep.tw3_violations == 0;
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviReport {
    pub q: u32,
    pub samples: usize,
    pub seed: u64,
    pub max_length: usize,
    pub by_length: Vec<usize>,
    pub failures: usize,
    pub pass: bool,
}

/// Random element of B₊ as a short product of root elements and torus.
pub fn random_borel(f: &'static Field, rng: &mut impl Rng) -> LaurentMat {
    let mut g = LaurentMat::diag(f, rng.gen_range(1..f.q()) as Fq, 0);
    for _ in 0..rng.gen_range(0..4) {
        let c = rng.gen_range(0..f.q()) as Fq;
        let k = rng.gen_range(0..3);
        let u = if rng.gen_bool(0.5) { LaurentMat::upper(f, c, k) } else { LaurentMat::lower(f, c, k + 1) };
        g = g.mul(&u);
    }
    g
}

/// Samples Z ∈ Stab(x₊) ∩ Stab(x₋) by linear algebra and checks Z = h·u with
/// h in the conjugated diagonal torus and u ∈ U(x₊, x₋), uniquely.
pub fn levi_samples(q: u32, samples: usize, max_length: usize, seed: u64) -> Result<LeviReport> {
    let f = Field::get(q)?;
    if max_length > MAX_UNIPOTENT_LENGTH {
        return Err(Error::TooLong(max_length));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_length = vec![0; max_length + 1];
    let mut failures = 0;
    for _ in 0..samples {
        let x = random_chamber(f, Sign::Plus, 2, &mut rng);
        let n = rng.gen_range(0..=max_length);
        let w = AffWeyl::alternating(rng.gen_range(0..2), n);
        let y = ThickChamber::new(x.g.mul(&random_borel(f, &mut rng)).mul(&monomial(f, &w)), Sign::Minus);
        let ug = unipotent_group(&x, &y)?;
        by_length[ug.w.len()] += 1;
        let wd = monomial(f, &ug.w);
        let d = (wd.max_exp() + wd.inv().max_exp()).max(0);
        let basis = twisted_space(&wd.inv(), &wd, d);
        let z = loop {
            let coeffs: Vec<Fq> = (0..basis.len()).map(|_| rng.gen_range(0..f.q()) as Fq).collect();
            let m = combine(f, &basis, &coeffs);
            let det = m.det();
            if det.is_zero() || !det.is_constant() {
                continue;
            }
            let Some(r) = f.sqrt(det.coeff(0)) else { continue };
            let scaled = LaurentMat::raw(f, m.entries().clone().map(|e| e.scale(f, f.inv(r))));
            break ug.frame.mul(&scaled).mul(&ug.frame.inv());
        };
        let stabilizes = x.is_fixed_by(&z) && y.is_fixed_by(&z);
        let factorizations = ug
            .elements
            .iter()
            .filter(|u| ug.frame.inv().mul(&z).mul(&u.inv()).mul(&ug.frame).is_constant_diagonal())
            .count();
        if !stabilizes || factorizations != 1 {
            failures += 1;
        }
    }
    Ok(LeviReport { q, samples, seed, max_length, by_length, failures, pass: failures == 0 })
}
