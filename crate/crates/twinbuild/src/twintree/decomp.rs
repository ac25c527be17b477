//! Bruhat and Birkhoff decompositions, chambers and (co)distances.
//!
//! The positive building is the Bruhat–Tits tree of GF(q)((t)). The chamber
//! gB₊ is the edge between the lattice classes of g·O² and g·diag(1,t)·O²,
//! and its distance from the base edge is read off from elementary divisors.
//! Everything on the negative side is transported by [`LaurentMat::theta`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::field::{Field, Fq};
use super::laurent::Laurent;
use super::mat::{in_borel, LaurentMat};
use super::weyl::AffWeyl;
use crate::error::{Error, Result};
use crate::thinb::Sign;

/// Element of the simple root group of `letter` on side `sign`: for + these
/// are [[1,c],[0,1]] (s1) and [[1,0],[ct,1]] (s0).
pub fn simple_root_elem(f: &'static Field, sign: Sign, letter: u8, c: Fq) -> LaurentMat {
    let m = if letter == 0 { LaurentMat::upper(f, c, 0) } else { LaurentMat::lower(f, c, 1) };
    match sign {
        Sign::Plus => m,
        Sign::Minus => m.theta(),
    }
}

/// The standard representative ẇ.
pub fn monomial(f: &'static Field, w: &AffWeyl) -> LaurentMat {
    w.letters().iter().fold(LaurentMat::identity(f), |acc, &a| acc.mul(&LaurentMat::sdot(f, a)))
}

/// Tree distance between vertex `i` of the base edge and vertex `j` of g·B₊.
/// Vertex 0 is the class of O², vertex 1 that of diag(1,t)·O².
fn vertex_dist(g: &LaurentMat, i: u8, j: u8) -> i32 {
    let e = g.entries();
    let vdet = if j == 1 { 1 } else { 0 } - if i == 1 { 1 } else { 0 };
    let mut minv = i32::MAX;
    for (idx, x) in e.iter().enumerate() {
        if let Some(v) = x.val() {
            let (r, c) = (idx / 2, idx % 2);
            let shift = if r == 1 && i == 1 { -1 } else { 0 } + if c == 1 && j == 1 { 1 } else { 0 };
            minv = minv.min(v + shift);
        }
    }
    vdet - 2 * minv
}

/// (ℓ(w), first letter of w) for w = δ₊(B₊, gB₊); `None` when g ∈ B₊.
fn plus_head(g: &LaurentMat) -> Option<(usize, u8)> {
    if in_borel(g, Sign::Plus) {
        return None;
    }
    let mut best = (i32::MAX, 0u8);
    for i in 0..2 {
        for j in 0..2 {
            best = best.min((vertex_dist(g, i, j), i));
        }
    }
    Some((best.0 as usize + 1, best.1))
}

/// g = ∏ (u_{s_k}(c_k)·ṡ_k) · rest with rest ∈ B₊.
struct Gallery {
    w: AffWeyl,
    cs: Vec<Fq>,
    rest: LaurentMat,
}

fn plus_gallery(g: &LaurentMat) -> Result<Gallery> {
    let f = g.field();
    let mut cur = g.clone();
    let mut letters = Vec::new();
    let mut cs = Vec::new();
    while let Some((n, s)) = plus_head(&cur) {
        let sd = LaurentMat::sdot(f, s);
        let step = f
            .elements()
            .map(|c| (c, simple_root_elem(f, Sign::Plus, s, c).mul(&sd).inv().mul(&cur)))
            .find(|(_, cand)| plus_head(cand).map_or(0, |h| h.0) + 1 == n)
            .ok_or_else(|| Error::Internal(format!("no gallery step from {cur}")))?;
        letters.push(s);
        cs.push(step.0);
        cur = step.1;
    }
    let w = AffWeyl::from_letters(&letters);
    if w.len() != letters.len() {
        return Err(Error::Internal("gallery is not reduced".into()));
    }
    Ok(Gallery { w, cs, rest: cur })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub left: LaurentMat,
    pub w: AffWeyl,
    pub right: LaurentMat,
}

impl Decomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "left": self.left.to_json(),
            "w": self.w.to_string(),
            "length": self.w.len(),
            "right": self.right.to_json(),
        })
    }
}

/// g = b₁·ẇ·b₂ with b₁, b₂ ∈ B_sign.
pub fn bruhat(g: &LaurentMat, sign: Sign) -> Result<Decomposition> {
    if sign == Sign::Minus {
        let d = bruhat(&g.theta(), Sign::Plus)?;
        return Ok(Decomposition { left: d.left.theta(), w: d.w, right: d.right.theta() });
    }
    let f = g.field();
    let gal = plus_gallery(g)?;
    let wd = monomial(f, &gal.w);
    let left = g.mul(&gal.rest.inv()).mul(&wd.inv());
    if !in_borel(&left, Sign::Plus) {
        return Err(Error::Internal(format!("bruhat left factor {left} not in B+")));
    }
    Ok(Decomposition { left, w: gal.w, right: gal.rest })
}

type Signature = [(i32, i32); 4];

fn col_val(c: &[Laurent; 2]) -> i32 {
    c.iter().filter_map(Laurent::val).min().expect("nonzero column")
}


/// Splitting types of the four vertex-lattice pairs: an invariant of the
/// double coset B₊·g·B₋.
fn signature(g: &LaurentMat) -> Signature {
    let f = g.field();
    let e = g.entries();
    let mut out = [(0, 0); 4];
    for i in 0..2 {
        for j in 0..2 {
            let m: [Laurent; 4] = std::array::from_fn(|idx| {
                let (r, c) = (idx / 2, idx % 2);
                let shift = if r == 1 && i == 1 { -1 } else { 0 } + if c == 0 && j == 1 { -1 } else { 0 };
                e[idx].shift(shift)
            });
            out[2 * i + j] = splitting(f, m);
        }
    }
    out
}

/// Sorted valuation pair of a reduced K[t⁻¹]-basis of the column module.
fn splitting(f: &Field, m: [Laurent; 4]) -> (i32, i32) {
    let [a, b, c, d] = m;
    let mut cols = [[a, c], [b, d]];
    loop {
        let v = [col_val(&cols[0]), col_val(&cols[1])];
        let lead = |k: usize| [cols[k][0].coeff(v[k]), cols[k][1].coeff(v[k])];
        let (l0, l1) = (lead(0), lead(1));
        if f.mul(l0[0], l1[1]) != f.mul(l0[1], l1[0]) {
            return (v[0].min(v[1]), v[0].max(v[1]));
        }
        let (x, y) = if v[0] <= v[1] { (0, 1) } else { (1, 0) };
        let (lx, ly) = if x == 0 { (l0, l1) } else { (l1, l0) };
        let k = if ly[0] != 0 { 0 } else { 1 };
        let lam = f.neg(f.div(lx[k], ly[k]));
        let shifted = [cols[y][0].shift(v[x] - v[y]).scale(f, lam), cols[y][1].shift(v[x] - v[y]).scale(f, lam)];
        cols[x] = [cols[x][0].add(f, &shifted[0]), cols[x][1].add(f, &shifted[1])];
    }
}

struct SigTable {
    len: usize,
    map: HashMap<Signature, AffWeyl>,
    collisions: usize,
}

fn sig_table() -> &'static Mutex<SigTable> {
    static TABLE: OnceLock<Mutex<SigTable>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = SigTable { len: 0, map: HashMap::new(), collisions: 0 };
        extend_table(&mut t, 32);
        Mutex::new(t)
    })
}

fn extend_table(t: &mut SigTable, len: usize) {
    let f = Field::get(2).expect("GF(2)");
    let mut ws = Vec::new();
    if t.len == 0 && t.map.is_empty() {
        ws.push(AffWeyl::identity());
    }
    for n in t.len + 1..=len {
        ws.push(AffWeyl::alternating(0, n));
        ws.push(AffWeyl::alternating(1, n));
    }
    for w in ws {
        let sig = signature(&monomial(f, &w));
        if t.map.insert(sig, w).is_some() {
            t.collisions += 1;
        }
    }
    t.len = len;
}

/// Number of signature collisions among monomials of length ≤ `len`.
pub fn signature_collisions(len: usize) -> usize {
    let mut t = sig_table().lock().expect("table lock");
    if t.len < len {
        extend_table(&mut t, len);
    }
    t.collisions
}

fn birkhoff_cell(g: &LaurentMat) -> Result<AffWeyl> {
    let sig = signature(g);
    let mut t = sig_table().lock().expect("table lock");
    loop {
        if let Some(w) = t.map.get(&sig) {
            return Ok(w.clone());
        }
        if t.len >= 4096 {
            return Err(Error::Internal(format!("no Birkhoff cell found for {g}")));
        }
        let next = t.len * 2;
        extend_table(&mut t, next);
    }
}

/// Row-reduces over GF(q) and returns a basis of the null space.
pub(crate) fn nullspace(f: &Field, mut rows: Vec<Vec<Fq>>, ncols: usize) -> Vec<Vec<Fq>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                for j in 0..ncols {
                    let sub = f.mul(k, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rows[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of {X : entries in GF(q)[t] of degree ≤ d, X₂₁(0) = 0,
/// and left·X·right polynomial in t⁻¹ with upper-right entry vanishing at ∞}.
pub(crate) fn twisted_space(left: &LaurentMat, right: &LaurentMat, d: i32) -> Vec<LaurentMat> {
    let f = left.field();
    let unknowns: Vec<(usize, i32)> =
        (0..4).flat_map(|p| (if p == 2 { 1 } else { 0 }..=d).map(move |k| (p, k))).collect();
    let mut row_of: HashMap<(usize, i32), usize> = HashMap::new();
    let mut cols: Vec<Vec<((usize, i32), Fq)>> = Vec::new();
    for &(p, k) in &unknowns {
        let mut e: [Laurent; 4] = Default::default();
        e[p] = Laurent::monomial(1, k);
        let y = left.mul(&LaurentMat::raw(f, e)).mul(right);
        let mut col = Vec::new();
        for (q, ent) in y.entries().iter().enumerate() {
            for (j, a) in ent.terms() {
                if j > 0 || (q == 1 && j == 0) {
                    let n = row_of.len();
                    row_of.entry((q, j)).or_insert(n);
                    col.push(((q, j), a));
                }
            }
        }
        cols.push(col);
    }
    let mut rows = vec![vec![0; unknowns.len()]; row_of.len()];
    for (ci, col) in cols.iter().enumerate() {
        for (key, a) in col {
            rows[row_of[key]][ci] = *a;
        }
    }
    nullspace(f, rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut terms: [Vec<(i32, Fq)>; 4] = Default::default();
            for (&(p, k), &a) in unknowns.iter().zip(&v) {
                if a != 0 {
                    terms[p].push((k, a));
                }
            }
            LaurentMat::raw(f, terms.map(|t| Laurent::from_terms(f, &t)))
        })
        .collect()
}

pub(crate) fn combine(f: &'static Field, basis: &[LaurentMat], coeffs: &[Fq]) -> LaurentMat {
    let mut e: [Laurent; 4] = Default::default();
    for (b, &c) in basis.iter().zip(coeffs) {
        for (slot, x) in e.iter_mut().zip(b.entries()) {
            *slot = slot.add(f, &x.scale(f, c));
        }
    }
    LaurentMat::raw(f, e)
}

/// An element of the span with nonzero constant determinant: exhaustive for
/// small spans, seeded random otherwise.
fn invertible_in(f: &'static Field, basis: &[LaurentMat]) -> Option<LaurentMat> {
    let q = f.q() as usize;
    let ok = |m: &LaurentMat| {
        let d = m.det();
        d.is_constant() && !d.is_zero()
    };
    if (q as f64).powi(basis.len() as i32) <= 4096.0 {
        let total = q.pow(basis.len() as u32);
        return (1..total).find_map(|mut idx| {
            let coeffs: Vec<Fq> = (0..basis.len())
                .map(|_| {
                    let c = (idx % q) as Fq;
                    idx /= q;
                    c
                })
                .collect();
            Some(combine(f, basis, &coeffs)).filter(ok)
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..10_000).find_map(|_| {
        let coeffs: Vec<Fq> = (0..basis.len()).map(|_| rng.gen_range(0..q) as Fq).collect();
        Some(combine(f, basis, &coeffs)).filter(ok)
    })
}

/// g = bp·ẇ·bm with bp ∈ B₊ and bm ∈ B₋.
pub fn birkhoff(g: &LaurentMat) -> Result<Decomposition> {
    let f = g.field();
    let w = birkhoff_cell(g)?;
    let wd = monomial(f, &w);
    let d = (wd.max_exp() + g.max_exp()).max(0);
    let basis = twisted_space(&wd.inv(), g, d);
    let x = invertible_in(f, &basis).ok_or_else(|| Error::Internal(format!("no Birkhoff factor for {g} in cell {w}")))?;
    let delta = x.det().coeff(0);
    let scaled = LaurentMat::raw(f, [0, 1, 2, 3].map(|i| {
        let e = &x.entries()[i];
        if i < 2 {
            e.scale(f, f.inv(delta))
        } else {
            e.clone()
        }
    }));
    let left = scaled.inv();
    let right = wd.inv().mul(&scaled).mul(g);
    if !in_borel(&left, Sign::Plus) || !in_borel(&right, Sign::Minus) || left.mul(&wd).mul(&right) != *g {
        return Err(Error::Internal(format!("Birkhoff factorization of {g} failed to verify")));
    }
    Ok(Decomposition { left, w, right })
}

/// The chamber g·B_sign.
#[derive(Clone, Debug)]
pub struct ThickChamber {
    pub g: LaurentMat,
    pub sign: Sign,
}

impl PartialEq for ThickChamber {
    fn eq(&self, o: &Self) -> bool {
        self.sign == o.sign && in_borel(&self.g.inv().mul(&o.g), self.sign)
    }
}
impl Eq for ThickChamber {}

impl ThickChamber {
    pub fn new(g: LaurentMat, sign: Sign) -> Self {
        ThickChamber { g, sign }
    }

    pub fn base(f: &'static Field, sign: Sign) -> Self {
        ThickChamber { g: LaurentMat::identity(f), sign }
    }

    pub fn field(&self) -> &'static Field {
        self.g.field()
    }

    /// (w, c₁…c_n) with g·B = ∏ u_{s_k}(c_k)·ṡ_k·B; a canonical label.
    pub fn key(&self) -> Result<(AffWeyl, Vec<Fq>)> {
        let gal = match self.sign {
            Sign::Plus => plus_gallery(&self.g)?,
            Sign::Minus => plus_gallery(&self.g.theta())?,
        };
        Ok((gal.w, gal.cs))
    }

    /// The representative ∏ u_{s_k}(c_k)·ṡ_k.
    pub fn canonical(&self) -> Result<ThickChamber> {
        let (w, cs) = self.key()?;
        Ok(ThickChamber::new(gallery_rep(self.field(), self.sign, w.letters(), &cs), self.sign))
    }

    /// Lies in the standard twin apartment {ẇB_sign}.
    pub fn in_standard_apartment(&self) -> Result<bool> {
        Ok(self.key()?.1.iter().all(|&c| c == 0))
    }

    /// The s-adjacent chamber g·u_s(c)·ṡ·B.
    pub fn neighbour(&self, letter: u8, c: Fq) -> ThickChamber {
        let f = self.field();
        let step = simple_root_elem(f, self.sign, letter, c).mul(&LaurentMat::sdot(f, letter));
        ThickChamber::new(self.g.mul(&step), self.sign)
    }

    pub fn translate(&self, h: &LaurentMat) -> ThickChamber {
        ThickChamber::new(h.mul(&self.g), self.sign)
    }

    pub fn is_fixed_by(&self, h: &LaurentMat) -> bool {
        in_borel(&self.g.inv().mul(h).mul(&self.g), self.sign)
    }

    pub fn to_json(&self) -> Value {
        let key = self.key().ok().map(|(w, cs)| {
            json!({ "w": w.to_string(), "c": cs.iter().map(|&c| self.field().to_json(c)).collect::<Vec<_>>() })
        });
        json!({ "sign": self.sign.to_string(), "g": self.g.to_json(), "key": key })
    }
}

fn gallery_rep(f: &'static Field, sign: Sign, letters: &[u8], cs: &[Fq]) -> LaurentMat {
    letters.iter().zip(cs).fold(LaurentMat::identity(f), |acc, (&s, &c)| {
        acc.mul(&simple_root_elem(f, sign, s, c)).mul(&LaurentMat::sdot(f, s))
    })
}

/// Chambers within gallery distance r of the base chamber, by distance.
pub fn ball(f: &'static Field, sign: Sign, r: usize) -> Vec<(usize, ThickChamber)> {
    let mut out = vec![(0, ThickChamber::base(f, sign))];
    let mut layer: Vec<(LaurentMat, Option<u8>)> = vec![(LaurentMat::identity(f), None)];
    for n in 1..=r {
        let mut next = Vec::new();
        for (g, last) in &layer {
            for s in [0u8, 1] {
                if Some(s) == *last {
                    continue;
                }
                let sd = LaurentMat::sdot(f, s);
                for c in f.elements() {
                    next.push((g.mul(&simple_root_elem(f, sign, s, c)).mul(&sd), Some(s)));
                }
            }
        }
        out.extend(next.iter().map(|(g, _)| (n, ThickChamber::new(g.clone(), sign))));
        layer = next;
    }
    out
}

/// δ_ε(x, y) for chambers of the same sign.
pub fn dist(x: &ThickChamber, y: &ThickChamber) -> Result<AffWeyl> {
    if x.sign != y.sign {
        return Err(Error::SignMismatch);
    }
    Ok(bruhat(&x.g.inv().mul(&y.g), x.sign)?.w)
}

/// δ*(x, y) for chambers of opposite signs.
pub fn codist(x: &ThickChamber, y: &ThickChamber) -> Result<AffWeyl> {
    let h = x.g.inv().mul(&y.g);
    match (x.sign, y.sign) {
        (Sign::Plus, Sign::Minus) => Ok(birkhoff(&h)?.w),
        (Sign::Minus, Sign::Plus) => Ok(birkhoff(&h.theta())?.w),
        _ => Err(Error::SameSign),
    }
}
