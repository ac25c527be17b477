//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod laws;

use std::collections::HashMap;

use twinbuild::coxeter::CoxeterMatrix;

/// A group given by generators acting on integer points, faithful on `base`.
///
/// The state of a word `w` is `w⁻¹` applied to the base points, so appending
/// a letter applies that generator pointwise.
pub struct PointAction {
    pub gens: Vec<Box<dyn Fn(i64) -> i64 + Sync>>,
    pub base: Vec<i64>,
}

pub struct ShortLexTable {
    /// ShortLex-least word (0-based letters) of each state.
    pub word_of: HashMap<Vec<i64>, Vec<u8>>,
    /// Elements in ShortLex order.
    pub words: Vec<Vec<u8>>,
    pub complete: bool,
}

impl PointAction {
    pub fn state(&self, word: &[u8]) -> Vec<i64> {
        let mut st = self.base.clone();
        for &l in word {
            for p in st.iter_mut() {
                *p = (self.gens[l as usize])(*p);
            }
        }
        st
    }

    /// Breadth-first ShortLex table of all elements of length ≤ `max_len`.
    pub fn table(&self, max_len: usize) -> ShortLexTable {
        let mut word_of = HashMap::new();
        let mut words = vec![Vec::new()];
        word_of.insert(self.base.clone(), Vec::new());
        let mut layer = vec![Vec::new()];
        let mut complete = true;
        for len in 0..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..self.gens.len() as u8 {
                    let mut v = w.clone();
                    v.push(s);
                    let st = self.state(&v);
                    if !word_of.contains_key(&st) {
                        if len == max_len {
                            complete = false;
                            continue;
                        }
                        word_of.insert(st, v.clone());
                        next.push(v);
                    }
                }
            }
            if len == max_len || next.is_empty() {
                break;
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        ShortLexTable { word_of, words, complete }
    }
}

/// S_{n+1} acting on 1..=n+1: type A_n.
pub fn action_a(n: usize) -> PointAction {
    let gens = (1..=n as i64)
        .map(|i| Box::new(move |p: i64| if p == i { i + 1 } else if p == i + 1 { i } else { p }) as Box<dyn Fn(i64) -> i64 + Sync>)
        .collect();
    PointAction { gens, base: (1..=n as i64 + 1).collect() }
}

/// Signed permutations of ±1..±n: type B_n, last generator the sign change.
pub fn action_b(n: usize) -> PointAction {
    let nn = n as i64;
    let mut gens: Vec<Box<dyn Fn(i64) -> i64 + Sync>> = (1..nn)
        .map(|i| {
            Box::new(move |p: i64| {
                let (a, sg) = (p.abs(), p.signum());
                if a == i {
                    sg * (i + 1)
                } else if a == i + 1 {
                    sg * i
                } else {
                    p
                }
            }) as Box<dyn Fn(i64) -> i64 + Sync>
        })
        .collect();
    gens.push(Box::new(move |p: i64| if p.abs() == nn { -p } else { p }));
    PointAction { gens, base: (1..=nn).collect() }
}

/// Dihedral group of order 2m on the m-gon.
pub fn action_dihedral(m: i64) -> PointAction {
    PointAction {
        gens: vec![
            Box::new(move |p: i64| (-p).rem_euclid(m)),
            Box::new(move |p: i64| (1 - p).rem_euclid(m)),
        ],
        base: vec![0, 1],
    }
}

/// Affine permutations of Z with period N = n+1: type Ã_n. Generator N
/// (0-based n) is the affine one.
pub fn action_affine_a(n: usize) -> PointAction {
    let big_n = n as i64 + 1;
    let gens = (1..=big_n)
        .map(|i| {
            Box::new(move |p: i64| {
                let r = (p - 1).rem_euclid(big_n) + 1;
                if r == i {
                    p + 1
                } else if r == i % big_n + 1 {
                    p - 1
                } else {
                    p
                }
            }) as Box<dyn Fn(i64) -> i64 + Sync>
        })
        .collect();
    PointAction { gens, base: (1..=big_n).collect() }
}

pub fn affine_a(n: usize) -> CoxeterMatrix {
    CoxeterMatrix::affine_a(n)
}

/// Order of W_J by breadth-first enumeration, or `None` past `cutoff`.
pub fn bfs_order(g: &twinbuild::coxeter::CoxeterGroup, j: twinbuild::coxeter::Subset, cutoff: usize) -> Option<usize> {
    use std::collections::HashSet;
    let mut seen = HashSet::new();
    seen.insert(g.identity());
    let mut layer = vec![g.identity()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for x in &layer {
            for s in j.iter() {
                let y = g.rmul(x, s);
                if y.len() > x.len() && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if seen.len() > cutoff {
            return None;
        }
        layer = next;
    }
    Some(seen.len())
}

/// All set partitions of `items`.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].push(first);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![first]);
        out.push(q);
    }
    out
}
