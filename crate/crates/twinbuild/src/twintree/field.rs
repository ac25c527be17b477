//! GF(q) for q ∈ {2,3,4,5,7,8,9} by lookup tables.
//!
//! An element is a `u8` index whose base-p digits are its coordinates in the
//! basis 1, x, x², … modulo the fixed irreducible polynomial.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Fq = u8;

pub const SUPPORTED: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

pub struct Field {
    q: u32,
    p: u32,
    e: u32,
    add: Vec<Fq>,
    mul: Vec<Fq>,
    neg: Vec<Fq>,
    inv: Vec<Fq>,
    primitive: Fq,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Low-to-high coefficients of the modulus (monic, degree e).
fn modulus(q: u32) -> Option<(u32, Vec<u32>)> {
    match q {
        2 | 3 | 5 | 7 => Some((q, vec![0, 1])),
        4 => Some((2, vec![1, 1, 1])),
        8 => Some((2, vec![1, 1, 0, 1])),
        9 => Some((3, vec![1, 0, 1])),
        _ => None,
    }
}

impl Field {
    fn build(q: u32) -> Field {
        let (p, m) = modulus(q).expect("supported order");
        let e = (m.len() - 1) as u32;
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| x / p.pow(i) % p).collect() };
        let undigits = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum() };
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as Fq;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (e as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c != 0 {
                        for (i, &mi) in m.iter().enumerate() {
                            let idx = k - e as usize + i;
                            prod[idx] = (prod[idx] + (p - c) * mi) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..e as usize]) as Fq;
            }
        }
        let neg: Vec<Fq> = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as Fq).collect();
        let inv: Vec<Fq> =
            (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as Fq }).collect();
        let order = |a: u32| {
            let mut x = a;
            let mut k = 1;
            while x != 1 {
                x = mul[(x * q + a) as usize] as u32;
                k += 1;
            }
            k
        };
        let primitive = (1..q).find(|&a| order(a) == q - 1).unwrap() as Fq;
        Field { q, p, e, add, mul, neg, inv, primitive }
    }

    /// The shared table for GF(q).
    pub fn get(q: u32) -> Result<&'static Field> {
        static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
        let all = FIELDS.get_or_init(|| SUPPORTED.iter().map(|&q| Field::build(q)).collect());
        all.iter().find(|f| f.q == q).ok_or(Error::UnsupportedField(q))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn is_prime(&self) -> bool {
        self.e == 1
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: Fq) -> Fq {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fq, k: u32) -> Fq {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Fq {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    pub fn units(&self) -> impl Iterator<Item = Fq> {
        1..self.q as Fq
    }

    /// Some `r` with r² = a, if one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        self.elements().find(|&r| self.mul(r, r) == a)
    }

    /// Coordinates in the polynomial basis, low degree first.
    pub fn coords(&self, a: Fq) -> Vec<u32> {
        (0..self.e).map(|i| a as u32 / self.p.pow(i) % self.p).collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<Fq> {
        if c.len() != self.e as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::Parse(format!("bad GF({}) coordinates {c:?}", self.q)));
        }
        Ok(c.iter().enumerate().map(|(i, &x)| x * self.p.pow(i as u32)).sum::<u32>() as Fq)
    }

    /// Integer for prime fields, coordinate array otherwise.
    pub fn to_json(&self, a: Fq) -> serde_json::Value {
        if self.is_prime() {
            serde_json::json!(a)
        } else {
            serde_json::json!(self.coords(a))
        }
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Fq> {
        if let Some(n) = v.as_i64() {
            if !self.is_prime() {
                return Err(Error::Parse(format!("GF({}) scalars are coordinate arrays", self.q)));
            }
            return Ok(n.rem_euclid(self.p as i64) as Fq);
        }
        let arr = v.as_array().ok_or_else(|| Error::Parse(format!("bad scalar {v}")))?;
        let c: Vec<u32> = arr
            .iter()
            .map(|x| x.as_u64().map(|n| n as u32).ok_or_else(|| Error::Parse(format!("bad coordinate {x}"))))
            .collect::<Result<_>>()?;
        self.from_coords(&c)
    }
}
