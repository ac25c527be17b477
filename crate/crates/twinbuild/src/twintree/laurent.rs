//! Laurent polynomials over GF(q).

use super::field::{Field, Fq};

/// Σ c_k t^k stored as a coefficient run starting at exponent `lo`. The run
/// never has zero coefficients at either end; zero is the empty run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    lo: i32,
    c: Vec<Fq>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(a: Fq) -> Self {
        Laurent::monomial(a, 0)
    }

    pub fn one() -> Self {
        Laurent::constant(1)
    }

    pub fn monomial(a: Fq, k: i32) -> Self {
        if a == 0 {
            Laurent::zero()
        } else {
            Laurent { lo: k, c: vec![a] }
        }
    }

    /// From (exponent, coefficient) terms; repeated exponents are summed.
    pub fn from_terms(f: &Field, terms: &[(i32, Fq)]) -> Self {
        terms.iter().fold(Laurent::zero(), |acc, &(k, a)| acc.add(f, &Laurent::monomial(a, k)))
    }

    fn normalize(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i32;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent (the t-adic valuation); `None` for zero.
    pub fn val(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent; `None` for zero.
    pub fn deg(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.lo + self.c.len() as i32 - 1)
    }

    pub fn coeff(&self, k: i32) -> Fq {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.c.len() {
            0
        } else {
            self.c[i as usize]
        }
    }

    /// Nonzero terms, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Fq)> + '_ {
        self.c.iter().enumerate().filter(|p| *p.1 != 0).map(move |(i, &a)| (self.lo + i as i32, a))
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.lo == 0 && self.c.len() == 1)
    }

    /// All exponents ≥ 0.
    pub fn is_poly_t(&self) -> bool {
        self.val().map_or(true, |v| v >= 0)
    }

    /// All exponents ≤ 0.
    pub fn is_poly_tinv(&self) -> bool {
        self.deg().map_or(true, |d| d <= 0)
    }

    pub fn add(&self, f: &Field, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.deg().unwrap().max(o.deg().unwrap());
        let c = (lo..=hi).map(|k| f.add(self.coeff(k), o.coeff(k))).collect();
        Laurent { lo, c }.normalize()
    }

    pub fn neg(&self, f: &Field) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn sub(&self, f: &Field, o: &Laurent) -> Laurent {
        self.add(f, &o.neg(f))
    }

    pub fn mul(&self, f: &Field, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Laurent { lo: self.lo + o.lo, c }.normalize()
    }

    pub fn scale(&self, f: &Field, a: Fq) -> Laurent {
        Laurent { lo: self.lo, c: self.c.iter().map(|&x| f.mul(x, a)).collect() }.normalize()
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo + k, c: self.c.clone() }
    }

    /// The substitution t ↦ t⁻¹.
    pub fn invert_variable(&self) -> Laurent {
        match self.deg() {
            None => Laurent::zero(),
            Some(d) => Laurent { lo: -d, c: self.c.iter().rev().copied().collect() },
        }
    }

    /// Is a unit of GF(q)[t,t⁻¹], i.e. a nonzero monomial.
    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }

    pub fn format(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, a) in self.terms() {
            let coef = if f.is_prime() {
                a.to_string()
            } else {
                format!("({})", f.coords(a).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            };
            parts.push(match k {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{k}"),
            });
        }
        parts.join(" + ")
    }
}
