//! Coxeter systems: normal forms, descents, parabolic subgroups and
//! extremal double-coset representatives.

mod engine;
mod matrix;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashSet};

use engine::{Engine, IDENTITY};
pub use matrix::{parse_word, CoxeterMatrix, Element, Subset, MAX_RANK};

use crate::error::{Error, Result};

/// A Coxeter system (W,S) with its own memoizing word-problem engine.
///
/// The engine cache is confined to this value. Worker threads should call
/// [`CoxeterGroup::fork`] to get an independent instance.
pub struct CoxeterGroup {
    cm: CoxeterMatrix,
    engine: RefCell<Engine>,
}

impl Clone for CoxeterGroup {
    fn clone(&self) -> Self {
        self.fork()
    }
}

impl std::fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterGroup").field("matrix", &self.cm.to_string()).finish()
    }
}

impl CoxeterGroup {
    pub fn new(cm: CoxeterMatrix) -> Self {
        let engine = RefCell::new(Engine::new(&cm));
        CoxeterGroup { cm, engine }
    }

    /// A fresh instance over the same matrix with an empty cache.
    pub fn fork(&self) -> Self {
        CoxeterGroup::new(self.cm.clone())
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.cm
    }

    pub fn rank(&self) -> usize {
        self.cm.rank()
    }

    /// Number of normal forms memoized so far.
    pub fn cache_size(&self) -> usize {
        self.engine.borrow().node_count()
    }

    fn with<R>(&self, f: impl FnOnce(&mut Engine) -> R) -> R {
        f(&mut self.engine.borrow_mut())
    }

    fn element(e: &Engine, id: u32) -> Element {
        Element(e.word(id).to_vec())
    }

    fn unary(&self, x: &Element, f: impl FnOnce(&mut Engine, u32) -> u32) -> Element {
        self.with(|e| {
            let id = e.intern(&x.0);
            let r = f(e, id);
            Self::element(e, r)
        })
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    /// Generator `s_i` for a 0-based index.
    pub fn gen(&self, i: usize) -> Element {
        assert!(i < self.rank(), "generator {i} out of range");
        Element(vec![i as u8])
    }

    /// ShortLex normal form of a word of 1-based generator indices.
    pub fn reduce(&self, word: &[usize]) -> Result<Element> {
        let rank = self.rank();
        let mut letters = Vec::with_capacity(word.len());
        for &i in word {
            if i == 0 || i > rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
            letters.push((i - 1) as u8);
        }
        Ok(self.reduce_letters(&letters))
    }

    /// Normal form of a word of 0-based letters (assumed in range).
    pub fn reduce_letters(&self, letters: &[u8]) -> Element {
        self.with(|e| {
            let id = e.reduce(letters);
            Self::element(e, id)
        })
    }

    /// Parses a 1-based word ("e" for the identity) and reduces it.
    pub fn parse(&self, text: &str) -> Result<Element> {
        self.reduce(&parse_word(text)?)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.with(|e| {
            let a = e.intern(&x.0);
            let b = e.intern(&y.0);
            let r = e.mul(a, b);
            Self::element(e, r)
        })
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, xs: &[&Element]) -> Element {
        xs.iter().fold(Element::identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inv(&self, x: &Element) -> Element {
        self.unary(x, |e, id| e.inv(id))
    }

    /// `s_i · x`.
    pub fn lmul(&self, i: usize, x: &Element) -> Element {
        self.unary(x, |e, id| e.lmul(i, id))
    }

    /// `x · s_i`.
    pub fn rmul(&self, x: &Element, i: usize) -> Element {
        self.unary(x, |e, id| e.rmul(id, i))
    }

    /// `x · y · x⁻¹`.
    pub fn conj(&self, x: &Element, y: &Element) -> Element {
        let xi = self.inv(x);
        self.mul_all(&[x, y, &xi])
    }

    pub fn left_descents(&self, x: &Element) -> Subset {
        Subset(self.with(|e| {
            let id = e.intern(&x.0);
            e.left_descents(id)
        }))
    }

    pub fn right_descents(&self, x: &Element) -> Subset {
        Subset(self.with(|e| {
            let id = e.intern(&x.0);
            e.right_descents(id)
        }))
    }

    pub fn check_subset(&self, j: Subset) -> Result<()> {
        if j.is_subset(self.cm.full()) {
            Ok(())
        } else {
            let index = j.iter().find(|&i| i >= self.rank()).unwrap_or(0) + 1;
            Err(Error::IndexOutOfRange { index, rank: self.rank() })
        }
    }

    pub fn is_spherical(&self, j: Subset) -> bool {
        self.cm.is_spherical(j)
    }

    pub fn require_spherical(&self, j: Subset) -> Result<()> {
        if self.is_spherical(j) {
            Ok(())
        } else {
            Err(Error::NotSpherical(j.to_string()))
        }
    }

    /// Whether W itself is finite.
    pub fn is_finite(&self) -> bool {
        self.is_spherical(self.cm.full())
    }

    /// Longest element of W_J.
    pub fn longest_element(&self, j: Subset) -> Result<Element> {
        self.require_spherical(j)?;
        Ok(self.with(|e| {
            let mut w = IDENTITY;
            loop {
                let dr = e.right_descents(w);
                match j.difference(Subset(dr)).min() {
                    Some(s) => w = e.rmul(w, s),
                    None => break,
                }
            }
            Self::element(e, w)
        }))
    }

    /// Minimal-length element of W_J · w · W_K.
    pub fn dcmin(&self, j: Subset, w: &Element, k: Subset) -> Element {
        self.unary(w, |e, mut x| loop {
            if let Some(s) = j.intersection(Subset(e.left_descents(x))).min() {
                x = e.lmul(s, x);
            } else if let Some(s) = k.intersection(Subset(e.right_descents(x))).min() {
                x = e.rmul(x, s);
            } else {
                return x;
            }
        })
    }

    /// Maximal-length element of W_J · w · W_K (J and K spherical).
    pub fn dcmax(&self, j: Subset, w: &Element, k: Subset) -> Result<Element> {
        self.require_spherical(j)?;
        self.require_spherical(k)?;
        Ok(self.unary(w, |e, mut x| loop {
            if let Some(s) = j.difference(Subset(e.left_descents(x))).min() {
                x = e.lmul(s, x);
            } else if let Some(s) = k.difference(Subset(e.right_descents(x))).min() {
                x = e.rmul(x, s);
            } else {
                return x;
            }
        }))
    }

    /// Minimal representative of the left coset w·W_J.
    pub fn coset_min(&self, w: &Element, j: Subset) -> Element {
        self.dcmin(Subset::EMPTY, w, j)
    }

    /// All elements of length at most `r`, in ShortLex order.
    pub fn ball(&self, r: usize) -> Vec<Element> {
        self.ball_in(self.cm.full(), r)
    }

    /// Elements of W_J of length at most `r`, in ShortLex order.
    pub fn ball_in(&self, j: Subset, r: usize) -> Vec<Element> {
        self.with(|e| {
            let mut out = vec![IDENTITY];
            let mut layer = vec![IDENTITY];
            for _ in 0..r {
                let mut next = BTreeSet::new();
                for &x in &layer {
                    let dr = Subset(e.right_descents(x));
                    for s in j.difference(dr).iter() {
                        let y = e.rmul(x, s);
                        next.insert((e.len(y), e.word(y).to_vec(), y));
                    }
                }
                layer = next.into_iter().map(|t| t.2).collect();
                if layer.is_empty() {
                    break;
                }
                out.extend_from_slice(&layer);
            }
            out.into_iter().map(|id| Self::element(e, id)).collect()
        })
    }

    /// All elements of a finite parabolic subgroup W_J, ShortLex ordered.
    pub fn parabolic_elements(&self, j: Subset) -> Result<Vec<Element>> {
        let w0 = self.longest_element(j)?;
        Ok(self.ball_in(j, w0.len()))
    }

    /// Whether `x` is a reflection, i.e. conjugate to a generator.
    pub fn is_reflection(&self, x: &Element) -> bool {
        if x.len() % 2 == 0 {
            return false;
        }
        let half = x.len() / 2;
        let u = Element(x.0[..half].to_vec());
        let s = x.0[half] as usize;
        if self.conj(&u, &self.gen(s)) == *x {
            return true;
        }
        self.reflections_up_to(x.len()).contains(x)
    }

    /// All reflections of length at most `l`, ShortLex ordered.
    ///
    /// Every reflection has a reduced palindromic expression `u s u⁻¹`, so
    /// scanning `u` up to length `(l−1)/2` is exhaustive.
    pub fn reflections_up_to(&self, l: usize) -> Vec<Element> {
        if l == 0 {
            return Vec::new();
        }
        let mut seen = HashSet::new();
        for u in self.ball((l - 1) / 2) {
            for s in 0..self.rank() {
                let t = self.conj(&u, &self.gen(s));
                if t.len() <= l {
                    seen.insert(t);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }
}
