//! 2×2 matrices over GF(q)[t,t⁻¹] of determinant 1.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde_json::{json, Map, Value};

use super::field::{Field, Fq};
use super::laurent::Laurent;
use crate::error::{Error, Result};
use crate::thinb::Sign;

/// Entries in row-major order m11, m12, m21, m22.
#[derive(Clone)]
pub struct LaurentMat {
    f: &'static Field,
    e: [Laurent; 4],
}

impl PartialEq for LaurentMat {
    fn eq(&self, o: &Self) -> bool {
        self.f == o.f && self.e == o.e
    }
}
impl Eq for LaurentMat {}

impl Hash for LaurentMat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.f.q().hash(h);
        self.e.hash(h);
    }
}

impl fmt::Debug for LaurentMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.e.iter().map(|x| x.format(self.f)).collect();
        write!(f, "[[{}, {}], [{}, {}]]", s[0], s[1], s[2], s[3])
    }
}

impl LaurentMat {
    /// Checks the determinant.
    pub fn new(f: &'static Field, e: [Laurent; 4]) -> Result<Self> {
        let m = LaurentMat { f, e };
        if m.det() != Laurent::one() {
            return Err(Error::NotUnimodular);
        }
        Ok(m)
    }

    pub(crate) fn raw(f: &'static Field, e: [Laurent; 4]) -> Self {
        LaurentMat { f, e }
    }

    pub fn field(&self) -> &'static Field {
        self.f
    }

    pub fn entries(&self) -> &[Laurent; 4] {
        &self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> &Laurent {
        &self.e[2 * i + j]
    }

    pub fn identity(f: &'static Field) -> Self {
        LaurentMat { f, e: [Laurent::one(), Laurent::zero(), Laurent::zero(), Laurent::one()] }
    }

    /// diag(a t^k, a⁻¹ t^{-k}).
    pub fn diag(f: &'static Field, a: Fq, k: i32) -> Self {
        LaurentMat { f, e: [Laurent::monomial(a, k), Laurent::zero(), Laurent::zero(), Laurent::monomial(f.inv(a), -k)] }
    }

    /// [[1, c t^k], [0, 1]].
    pub fn upper(f: &'static Field, c: Fq, k: i32) -> Self {
        LaurentMat { f, e: [Laurent::one(), Laurent::monomial(c, k), Laurent::zero(), Laurent::one()] }
    }

    /// [[1, 0], [c t^k, 1]].
    pub fn lower(f: &'static Field, c: Fq, k: i32) -> Self {
        LaurentMat { f, e: [Laurent::one(), Laurent::zero(), Laurent::monomial(c, k), Laurent::one()] }
    }

    /// Constant matrix from [a, b, c, d]; checks the determinant.
    pub fn constant(f: &'static Field, m: [Fq; 4]) -> Result<Self> {
        LaurentMat::new(f, m.map(Laurent::constant))
    }

    /// ṡ₁ = [[0,1],[−1,0]].
    pub fn s1(f: &'static Field) -> Self {
        LaurentMat { f, e: [Laurent::zero(), Laurent::one(), Laurent::constant(f.neg(1)), Laurent::zero()] }
    }

    /// ṡ₀ = [[0,−t⁻¹],[t,0]].
    pub fn s0(f: &'static Field) -> Self {
        LaurentMat { f, e: [Laurent::zero(), Laurent::monomial(f.neg(1), -1), Laurent::monomial(1, 1), Laurent::zero()] }
    }

    /// ṡ for letter 0 (s1) or 1 (s0).
    pub fn sdot(f: &'static Field, letter: u8) -> Self {
        if letter == 0 {
            LaurentMat::s1(f)
        } else {
            LaurentMat::s0(f)
        }
    }

    pub fn det(&self) -> Laurent {
        let f = self.f;
        self.e[0].mul(f, &self.e[3]).sub(f, &self.e[1].mul(f, &self.e[2]))
    }

    pub fn mul(&self, o: &LaurentMat) -> LaurentMat {
        let f = self.f;
        let a = &self.e;
        let b = &o.e;
        let dot = |x: &Laurent, y: &Laurent, z: &Laurent, w: &Laurent| x.mul(f, y).add(f, &z.mul(f, w));
        LaurentMat {
            f,
            e: [
                dot(&a[0], &b[0], &a[1], &b[2]),
                dot(&a[0], &b[1], &a[1], &b[3]),
                dot(&a[2], &b[0], &a[3], &b[2]),
                dot(&a[2], &b[1], &a[3], &b[3]),
            ],
        }
    }

    pub fn mul_all<'a>(f: &'static Field, ms: impl IntoIterator<Item = &'a LaurentMat>) -> LaurentMat {
        ms.into_iter().fold(LaurentMat::identity(f), |acc, m| acc.mul(m))
    }

    /// Inverse of a determinant-1 matrix: the adjugate.
    pub fn inv(&self) -> LaurentMat {
        let f = self.f;
        LaurentMat { f, e: [self.e[3].clone(), self.e[1].neg(f), self.e[2].neg(f), self.e[0].clone()] }
    }

    /// x·self·x⁻¹.
    pub fn conj_by(&self, x: &LaurentMat) -> LaurentMat {
        x.mul(self).mul(&x.inv())
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMat::identity(self.f)
    }

    pub fn is_constant(&self) -> bool {
        self.e.iter().all(Laurent::is_constant)
    }

    pub fn is_constant_diagonal(&self) -> bool {
        self.is_constant() && self.e[1].is_zero() && self.e[2].is_zero()
    }

    /// Constant entries as [a, b, c, d], if constant.
    pub fn constant_entries(&self) -> Option<[Fq; 4]> {
        self.is_constant().then(|| [0, 1, 2, 3].map(|i| self.e[i].coeff(0)))
    }

    /// The substitution t ↦ t⁻¹ applied entrywise.
    pub fn invert_variable(&self) -> LaurentMat {
        LaurentMat { f: self.f, e: self.e.clone().map(|x| x.invert_variable()) }
    }

    /// Θ(g) = ṡ₁⁻¹·θ(g)·ṡ₁ with θ: t ↦ t⁻¹. An involution exchanging B₊ and B₋
    /// and fixing ṡ₀, ṡ₁.
    pub fn theta(&self) -> LaurentMat {
        let f = self.f;
        let m = self.invert_variable();
        LaurentMat { f, e: [m.e[3].clone(), m.e[2].neg(f), m.e[1].neg(f), m.e[0].clone()] }
    }

    pub fn min_exp(&self) -> i32 {
        self.e.iter().filter_map(Laurent::val).min().unwrap_or(0)
    }

    pub fn max_exp(&self) -> i32 {
        self.e.iter().filter_map(Laurent::deg).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .e
            .iter()
            .map(|x| {
                let mut m = Map::new();
                for (k, a) in x.terms() {
                    m.insert(k.to_string(), self.f.to_json(a));
                }
                Value::Object(m)
            })
            .collect();
        json!({ "q": self.f.q(), "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| Error::Parse("matrix needs \"q\"".into()))?;
        let f = Field::get(q as u32)?;
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse("matrix needs 4 \"entries\"".into()))?;
        let mut e: [Laurent; 4] = Default::default();
        for (slot, ent) in e.iter_mut().zip(entries) {
            let obj = ent.as_object().ok_or_else(|| Error::Parse(format!("entry {ent} is not a map")))?;
            let mut terms = Vec::new();
            for (k, c) in obj {
                let k: i32 = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
                terms.push((k, f.from_json(c)?));
            }
            *slot = Laurent::from_terms(f, &terms);
        }
        LaurentMat::new(f, e)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        LaurentMat::from_json(&v)
    }
}

/// Membership in B₊ (polynomial in t, upper triangular at t = 0) or B₋
/// (polynomial in t⁻¹, lower triangular at t = ∞).
pub fn in_borel(g: &LaurentMat, sign: Sign) -> bool {
    let e = g.entries();
    match sign {
        Sign::Plus => e.iter().all(Laurent::is_poly_t) && e[2].coeff(0) == 0,
        Sign::Minus => e.iter().all(Laurent::is_poly_tinv) && e[1].coeff(0) == 0,
    }
}

/// Membership in the parahoric B ∪ BṡB for `letter` (0 = s1, 1 = s0).
pub fn in_parahoric(g: &LaurentMat, sign: Sign, letter: u8) -> bool {
    if sign == Sign::Minus {
        return in_parahoric(&g.theta(), Sign::Plus, letter);
    }
    let e = g.entries();
    if letter == 0 {
        e.iter().all(Laurent::is_poly_t)
    } else {
        let ok = |x: &Laurent, lo: i32| x.val().map_or(true, |v| v >= lo);
        ok(&e[0], 0) && ok(&e[1], -1) && ok(&e[2], 1) && ok(&e[3], 0)
    }
}
