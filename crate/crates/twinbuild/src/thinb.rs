//! The thin twin building Σ(W,S).
//!
//! Chambers are signed elements of W. Both halves carry the distance
//! δ(x,y) = x⁻¹y; across signs the same formula is the codistance δ*.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterGroup, Element, Subset};
use crate::error::{Error, Result};

/// Default chamber-ball radius for bounded searches.
pub const DEFAULT_RADIUS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "−" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("bad sign {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber {
    pub element: Element,
    pub sign: Sign,
}

impl Chamber {
    pub fn new(element: Element, sign: Sign) -> Self {
        Chamber { element, sign }
    }

    pub fn base(sign: Sign) -> Self {
        Chamber::new(Element::identity(), sign)
    }

    /// Parses "1 2 1:+" or "e:-".
    pub fn parse(g: &CoxeterGroup, text: &str) -> Result<Self> {
        let (w, s) = text
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("chamber {text:?} lacks ':sign'")))?;
        Ok(Chamber::new(g.parse(w)?, s.parse()?))
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.element, self.sign)
    }
}

/// A J-residue, identified by its minimal-length representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub sign: Sign,
    pub typ: Subset,
    pub rep: Element,
}

impl Residue {
    /// The J-residue containing `(w, sign)`.
    pub fn new(g: &CoxeterGroup, sign: Sign, typ: Subset, w: &Element) -> Self {
        Residue { sign, typ, rep: g.coset_min(w, typ) }
    }

    pub fn of_chamber(g: &CoxeterGroup, typ: Subset, c: &Chamber) -> Self {
        Residue::new(g, c.sign, typ, &c.element)
    }

    pub fn chamber(c: &Chamber) -> Self {
        Residue { sign: c.sign, typ: Subset::EMPTY, rep: c.element.clone() }
    }

    pub fn contains(&self, g: &CoxeterGroup, c: &Chamber) -> bool {
        c.sign == self.sign && g.coset_min(&c.element, self.typ) == self.rep
    }

    pub fn rank(&self) -> usize {
        self.typ.len()
    }

    pub fn rep_chamber(&self) -> Chamber {
        Chamber::new(self.rep.clone(), self.sign)
    }

    /// All chambers (the residue must be spherical).
    pub fn chambers(&self, g: &CoxeterGroup) -> Result<Vec<Chamber>> {
        Ok(g.parabolic_elements(self.typ)?
            .iter()
            .map(|u| Chamber::new(g.mul(&self.rep, u), self.sign))
            .collect())
    }

    /// Parses "1 2:J{1,2}:+".
    pub fn parse(g: &CoxeterGroup, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [w, j, s] = parts[..] else {
            return Err(Error::Parse(format!("residue {text:?} is not word:J{{..}}:sign")));
        };
        let j = j.trim();
        let j = j.strip_prefix('J').unwrap_or(j);
        let typ = Subset::parse(j, g.rank())?;
        Ok(Residue::new(g, s.parse()?, typ, &g.parse(w)?))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:J{}:{}", self.rep, self.typ, self.sign)
    }
}

/// A twin root of Σ: a wall reflection and the side containing (e,+).
///
/// `(w,+)` lies in the root iff `[ℓ(t·w) > ℓ(w)] == side`; `(w,−)` lies in it
/// iff `[ℓ(t·w) > ℓ(w)] == !side`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwinRoot {
    pub wall: Element,
    pub side: bool,
}

impl TwinRoot {
    pub fn contains(&self, g: &CoxeterGroup, c: &Chamber) -> bool {
        let up = g.mul(&self.wall, &c.element).len() > c.element.len();
        match c.sign {
            Sign::Plus => up == self.side,
            Sign::Minus => up != self.side,
        }
    }

    /// The complementary root −φ.
    pub fn negate(&self) -> TwinRoot {
        TwinRoot { wall: self.wall.clone(), side: !self.side }
    }

    /// Parses "wall[1 2 1]+"; the wall must be a reflection.
    pub fn parse(g: &CoxeterGroup, text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("twin root {text:?} is not wall[word]sign"));
        let body = text.trim().strip_prefix("wall[").ok_or_else(bad)?;
        let (w, s) = body.rsplit_once(']').ok_or_else(bad)?;
        let wall = g.parse(w)?;
        if !g.is_reflection(&wall) {
            return Err(Error::Parse(format!("{wall} is not a reflection")));
        }
        let side = match s.trim() {
            "+" => true,
            "-" => false,
            _ => return Err(bad()),
        };
        Ok(TwinRoot { wall, side })
    }
}

impl fmt::Display for TwinRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wall[{}]{}", self.wall, if self.side { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelChain {
    pub residues: Vec<Residue>,
    pub envelopes: Vec<Residue>,
}

fn check_element(g: &CoxeterGroup, x: &Element) -> Result<()> {
    if x.letters().iter().any(|&l| l as usize >= g.rank()) || g.reduce_letters(x.letters()) != *x {
        return Err(Error::MatrixMismatch);
    }
    Ok(())
}

/// δ(x,y) = x⁻¹y, the distance or codistance depending on the signs.
pub fn wdist(g: &CoxeterGroup, x: &Chamber, y: &Chamber) -> Result<Element> {
    check_element(g, &x.element)?;
    check_element(g, &y.element)?;
    Ok(g.mul(&g.inv(&x.element), &y.element))
}

pub fn opposite(x: &Chamber) -> Chamber {
    Chamber::new(x.element.clone(), x.sign.flip())
}

/// Opposite residue of the other sign: same type, same coset.
pub fn opposite_residue(r: &Residue) -> Residue {
    Residue { sign: r.sign.flip(), typ: r.typ, rep: r.rep.clone() }
}

/// Conjugates a generator set by an element normalizing it (e.g. w₀_J).
pub fn conj_subset(g: &CoxeterGroup, w: &Element, j: Subset) -> Subset {
    j.iter().fold(Subset::EMPTY, |acc, s| {
        let t = g.conj(w, &g.gen(s));
        debug_assert_eq!(t.len(), 1);
        acc.with(t.letters()[0] as usize)
    })
}

/// Generators j ∈ J with w⁻¹·j·w ∈ K.
fn kilmoyer(g: &CoxeterGroup, j: Subset, w: &Element, k: Subset) -> Subset {
    let wi = g.inv(w);
    j.iter().fold(Subset::EMPTY, |acc, s| {
        let t = g.conj(&wi, &g.gen(s));
        if t.len() == 1 && k.contains(t.letters()[0] as usize) {
            acc.with(s)
        } else {
            acc
        }
    })
}

/// proj_R(c): the gate of `c` to `R` (same sign) or the chamber of `R` at
/// maximal codistance from `c` (opposite signs, R spherical).
pub fn project_chamber(g: &CoxeterGroup, r: &Residue, c: &Chamber) -> Result<Chamber> {
    let v = g.mul(&g.inv(&c.element), &r.rep);
    let u = if c.sign == r.sign {
        g.dcmin(Subset::EMPTY, &v, r.typ)
    } else {
        g.dcmax(Subset::EMPTY, &v, r.typ)?
    };
    Ok(Chamber::new(g.mul(&c.element, &u), r.sign))
}

/// δ(R,Q): the minimal element of W_J r⁻¹q W_K when signs agree, the maximal
/// one across signs.
pub fn residue_distance(g: &CoxeterGroup, r: &Residue, q: &Residue) -> Result<Element> {
    let v = g.mul(&g.inv(&r.rep), &q.rep);
    if r.sign == q.sign {
        Ok(g.dcmin(r.typ, &v, q.typ))
    } else {
        g.dcmax(r.typ, &v, q.typ)
    }
}

/// proj_R(Q) as a residue.
///
/// Same sign: type J ∩ wKw⁻¹ with w = δ(R,Q) minimal. Opposite signs: type
/// w₀_J (J ∩ wKw⁻¹) w₀_J, with w the minimal element of the double coset.
pub fn project_residue(g: &CoxeterGroup, r: &Residue, q: &Residue) -> Result<Residue> {
    if r.sign != q.sign {
        g.require_spherical(r.typ)?;
        g.require_spherical(q.typ)?;
    }
    let v = g.mul(&g.inv(&r.rep), &q.rep);
    let w = g.dcmin(r.typ, &v, q.typ);
    let mut typ = kilmoyer(g, r.typ, &w, q.typ);
    if r.sign != q.sign {
        let w0 = g.longest_element(r.typ)?;
        typ = conj_subset(g, &w0, typ);
    }
    let c = project_chamber(g, r, &q.rep_chamber())?;
    Ok(Residue::of_chamber(g, typ, &c))
}

pub fn is_parallel(g: &CoxeterGroup, r: &Residue, q: &Residue) -> Result<bool> {
    Ok(project_residue(g, r, q)?.typ == r.typ && project_residue(g, q, r)?.typ == q.typ)
}

/// Whether residues of opposite signs are opposite (same type, contain
/// opposite chambers).
pub fn are_opposite_twin(r: &Residue, q: &Residue) -> bool {
    r.sign != q.sign && r.typ == q.typ && r.rep == q.rep
}

/// The residue opposite `a` inside the spherical residue `t ⊇ a`.
pub fn opposite_in(g: &CoxeterGroup, t: &Residue, a: &Residue) -> Result<Residue> {
    let w0 = g.longest_element(t.typ)?;
    let typ = conj_subset(g, &w0, a.typ);
    Ok(Residue::new(g, a.sign, typ, &g.mul(&a.rep, &w0)))
}

/// Whether `a` and `b` are contained and opposite in the spherical residue `t`.
pub fn opposite_within(g: &CoxeterGroup, t: &Residue, a: &Residue, b: &Residue) -> Result<bool> {
    let inside = |x: &Residue| x.sign == t.sign && x.typ.is_subset(t.typ) && t.contains(g, &x.rep_chamber());
    Ok(inside(a) && inside(b) && opposite_in(g, t, a)? == *b)
}

/// Reflections of length ≤ `l` stabilizing `r`.
pub fn stabilizing_walls(g: &CoxeterGroup, r: &Residue, l: usize) -> Vec<Element> {
    g.reflections_up_to(l)
        .into_iter()
        .filter(|t| g.coset_min(&g.mul(t, &r.rep), r.typ) == r.rep)
        .collect()
}

/// Whether the reflection `t` stabilizes `r`.
pub fn stabilizes(g: &CoxeterGroup, t: &Element, r: &Residue) -> bool {
    g.coset_min(&g.mul(t, &r.rep), r.typ) == r.rep
}

/// Chain of residues opposite in rank+1 envelopes joining parallel `r`, `q`.
pub fn parallelism_chain(g: &CoxeterGroup, r: &Residue, q: &Residue) -> Result<ParallelChain> {
    if r.sign != q.sign {
        return Err(Error::SignMismatch);
    }
    if !is_parallel(g, r, q)? {
        return Err(Error::NotParallel);
    }
    let mut residues = vec![r.clone()];
    let mut envelopes = Vec::new();
    let mut cur = r.clone();
    while cur != *q {
        let w = residue_distance(g, &cur, q)?;
        let s = g
            .left_descents(&w)
            .min()
            .ok_or_else(|| Error::Internal(format!("parallel residues {cur} and {q} at distance e")))?;
        let t = Residue::new(g, cur.sign, cur.typ.with(s), &cur.rep);
        if !g.is_spherical(t.typ) {
            return Err(Error::Internal(format!("envelope type {} is not spherical", t.typ)));
        }
        let next = project_residue(g, &t, q)?;
        if next.rank() != cur.rank() || residues.len() > 4 * (w.len() + 1) + q.rep.len() + r.rep.len() {
            return Err(Error::Internal("parallelism chain does not progress".into()));
        }
        envelopes.push(t);
        residues.push(next.clone());
        cur = next;
    }
    Ok(ParallelChain { residues, envelopes })
}

/// Checks the defining properties of a chain between `r` and `q`.
pub fn verify_chain(g: &CoxeterGroup, chain: &ParallelChain, r: &Residue, q: &Residue) -> Result<bool> {
    let n = chain.envelopes.len();
    if chain.residues.len() != n + 1 || chain.residues[0] != *r || chain.residues[n] != *q {
        return Ok(false);
    }
    for (i, t) in chain.envelopes.iter().enumerate() {
        let (a, b) = (&chain.residues[i], &chain.residues[i + 1]);
        if t.rank() != r.rank() + 1
            || !g.is_spherical(t.typ)
            || !opposite_within(g, t, a, b)?
            || project_residue(g, t, r)? != *a
            || project_residue(g, t, q)? != *b
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The twin root spanned by two chambers at codistance in S.
pub fn twin_root_from(g: &CoxeterGroup, x: &Chamber, y: &Chamber) -> Result<TwinRoot> {
    if x.sign == y.sign {
        return Err(Error::NotCodistanceOne);
    }
    let s = wdist(g, x, y)?;
    if s.len() != 1 {
        return Err(Error::NotCodistanceOne);
    }
    let wall = g.conj(&x.element, &s);
    let up = g.mul(&wall, &x.element).len() > x.element.len();
    let side = match x.sign {
        Sign::Plus => up,
        Sign::Minus => !up,
    };
    Ok(TwinRoot { wall, side })
}

/// Whether φ∩ψ∩Σ₊ and (−φ)∩(−ψ)∩Σ₊ both meet the ball of the given radius.
pub fn prenilpotent(g: &CoxeterGroup, phi: &TwinRoot, psi: &TwinRoot, radius: usize) -> bool {
    let ball = g.ball(radius);
    let (nphi, npsi) = (phi.negate(), psi.negate());
    let meets = |a: &TwinRoot, b: &TwinRoot| {
        ball.iter().any(|w| {
            let c = Chamber::new(w.clone(), Sign::Plus);
            a.contains(g, &c) && b.contains(g, &c)
        })
    };
    meets(phi, psi) && meets(&nphi, &npsi)
}

/// The interval [φ,ψ]: twin roots α with wall length ≤ `l`, α ⊇ φ∩ψ and
/// −α ⊇ (−φ)∩(−ψ), tested on chambers of both signs within `radius`.
pub fn interval(g: &CoxeterGroup, phi: &TwinRoot, psi: &TwinRoot, l: usize, radius: usize) -> Result<Vec<TwinRoot>> {
    if !prenilpotent(g, phi, psi, radius) {
        return Err(Error::NotPrenilpotent { radius });
    }
    let (nphi, npsi) = (phi.negate(), psi.negate());
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for w in g.ball(radius) {
        for sign in Sign::BOTH {
            let c = Chamber::new(w.clone(), sign);
            if phi.contains(g, &c) && psi.contains(g, &c) {
                pos.push(c.clone());
            }
            if nphi.contains(g, &c) && npsi.contains(g, &c) {
                neg.push(c);
            }
        }
    }
    let mut out = BTreeSet::new();
    for wall in g.reflections_up_to(l) {
        for side in [true, false] {
            let alpha = TwinRoot { wall: wall.clone(), side };
            let nalpha = alpha.negate();
            if pos.iter().all(|c| alpha.contains(g, c)) && neg.iter().all(|c| nalpha.contains(g, c)) {
                out.insert(alpha);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Closure of `seed` under projections onto panels meeting it, restricted
/// to chambers whose element has length ≤ `radius`.
pub fn convex_hull(g: &CoxeterGroup, seed: &[Chamber], radius: usize) -> Result<BTreeSet<Chamber>> {
    let mut hull: BTreeSet<Chamber> = seed.iter().cloned().collect();
    loop {
        let members: Vec<Chamber> = hull.iter().cloned().collect();
        let mut panels = HashSet::new();
        for x in &members {
            for s in 0..g.rank() {
                panels.insert(Residue::of_chamber(g, Subset::single(s), x));
            }
        }
        let mut grew = false;
        for p in &panels {
            for c in &members {
                let y = project_chamber(g, p, c)?;
                if y.element.len() <= radius && hull.insert(y) {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(hull);
        }
    }
}

/// Sphericity by the projection criterion: a residue of type J is spherical
/// iff it has chambers x, y with proj_π(x) ≠ y for every panel π ∋ y of a
/// type in J. Searches y within the given radius from x.
pub fn spherical_by_criterion(g: &CoxeterGroup, r: &Residue, radius: usize) -> bool {
    let x = r.rep_chamber();
    g.ball_in(r.typ, radius).iter().any(|u| {
        let y = Chamber::new(g.mul(&r.rep, u), r.sign);
        r.typ.iter().all(|j| {
            let panel = Residue::of_chamber(g, Subset::single(j), &y);
            project_chamber(g, &panel, &x).map(|p| p != y).unwrap_or(false)
        })
    })
}

/// All residues of spherical type of the given sign whose representative
/// has length ≤ `radius`, ShortLex by representative then by type.
pub fn spherical_residues(g: &CoxeterGroup, sign: Sign, radius: usize) -> Vec<Residue> {
    let types: Vec<Subset> = (0..1u32 << g.rank()).map(Subset).filter(|&j| g.is_spherical(j)).collect();
    let mut out = BTreeSet::new();
    for w in g.ball(radius) {
        for &j in &types {
            let r = Residue::new(g, sign, j, &w);
            if r.rep.len() <= radius {
                out.insert((r.rep.clone(), j.listing_key(), r));
            }
        }
    }
    out.into_iter().map(|t| t.2).collect()
}

/// Pairwise parallelism among `residues` (spherical types assumed when
/// signs differ). Rows are computed independently, one engine per worker.
pub fn parallel_matrix(g: &CoxeterGroup, residues: &[Residue], exec: crate::Exec) -> Result<Vec<Vec<bool>>> {
    let idx: Vec<usize> = (0..residues.len()).collect();
    let cm = g.matrix().clone();
    exec.map_init(
        &idx,
        || CoxeterGroup::new(cm.clone()),
        |h, &i| residues.iter().map(|q| is_parallel(h, &residues[i], q)).collect::<Result<Vec<_>>>(),
    )
    .into_iter()
    .collect()
}
