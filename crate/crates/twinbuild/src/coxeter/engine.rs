//! Memoized ShortLex normal forms by left multiplication.
//!
//! Every normal-form word is a node in an arena. A node knows its first
//! letter and the node of its suffix (suffixes of ShortLex-reduced words are
//! again ShortLex-reduced). Left descents and left products are computed by
//! recursion on length through the rank-2 braid structure: `c` is a left
//! descent of `a·x'` (with `c ≠ a`) iff `x'` starts with the alternating word
//! `c a c …` of length `m(a,c) − 1`.

use std::collections::HashMap;

use super::matrix::CoxeterMatrix;

const NONE: u32 = u32::MAX;
pub(crate) const IDENTITY: u32 = 0;

struct Node {
    word: Vec<u8>,
    first: u8,
    suffix: u32,
    dl: Option<u32>,
    lm: Vec<u32>,
    inv: u32,
}

pub(crate) struct Engine {
    rank: usize,
    m: Vec<u32>,
    nodes: Vec<Node>,
    index: HashMap<Vec<u8>, u32>,
}

impl Engine {
    pub(crate) fn new(cm: &CoxeterMatrix) -> Self {
        let rank = cm.rank();
        let m = (0..rank * rank).map(|k| cm.raw(k / rank, k % rank)).collect();
        let root = Node {
            word: Vec::new(),
            first: u8::MAX,
            suffix: NONE,
            dl: Some(0),
            lm: vec![NONE; rank],
            inv: IDENTITY,
        };
        let mut index = HashMap::new();
        index.insert(Vec::new(), IDENTITY);
        Engine { rank, m, nodes: vec![root], index }
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.m[a * self.rank + b]
    }

    pub(crate) fn word(&self, x: u32) -> &[u8] {
        &self.nodes[x as usize].word
    }

    pub(crate) fn len(&self, x: u32) -> usize {
        self.nodes[x as usize].word.len()
    }

    /// Interns a word already known to be in normal form.
    pub(crate) fn intern(&mut self, word: &[u8]) -> u32 {
        if let Some(&id) = self.index.get(word) {
            return id;
        }
        let suffix = self.intern(&word[1..]);
        self.push(word[0], suffix)
    }

    fn push(&mut self, first: u8, suffix: u32) -> u32 {
        let mut word = Vec::with_capacity(self.len(suffix) + 1);
        word.push(first);
        word.extend_from_slice(self.word(suffix));
        if let Some(&id) = self.index.get(&word) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.index.insert(word.clone(), id);
        self.nodes.push(Node { word, first, suffix, dl: None, lm: vec![NONE; self.rank], inv: NONE });
        id
    }

    /// Peels letters `p, q, p, …` off the left of `y` while they are left
    /// descents, counting from `start` up to at most `m`.
    fn walk(&mut self, mut y: u32, mut p: usize, mut q: usize, m: u32, start: u32) -> (u32, u32) {
        let mut count = start;
        while count < m {
            if self.left_descents(y) >> p & 1 == 0 {
                break;
            }
            y = self.lmul_down(p, y);
            count += 1;
            std::mem::swap(&mut p, &mut q);
        }
        (count, y)
    }

    pub(crate) fn left_descents(&mut self, x: u32) -> u32 {
        if let Some(d) = self.nodes[x as usize].dl {
            return d;
        }
        let a = self.nodes[x as usize].first as usize;
        let suffix = self.nodes[x as usize].suffix;
        let mut mask = 1u32 << a;
        for c in 0..self.rank {
            if c == a {
                continue;
            }
            let m = self.m(a, c);
            if m == 0 || self.len(suffix) + 1 < m as usize {
                continue;
            }
            if self.walk(suffix, c, a, m, 1).0 == m {
                mask |= 1 << c;
            }
        }
        self.nodes[x as usize].dl = Some(mask);
        mask
    }

    /// Applies the alternating word `a b a …` of length `n` on the left of `u`
    /// (rightmost letter first). Every step must increase length.
    fn prepend_alternating(&mut self, a: usize, b: usize, n: u32, mut u: u32) -> u32 {
        for k in (0..n).rev() {
            let letter = if k % 2 == 0 { a } else { b };
            u = self.lmul_up(letter, u);
        }
        u
    }

    /// `c·x` where `c` is a left descent of `x`.
    fn lmul_down(&mut self, c: usize, x: u32) -> u32 {
        let cached = self.nodes[x as usize].lm[c];
        if cached != NONE {
            return cached;
        }
        let a = self.nodes[x as usize].first as usize;
        let suffix = self.nodes[x as usize].suffix;
        let y = if c == a {
            suffix
        } else {
            let m = self.m(a, c);
            let (_, u) = self.walk(suffix, c, a, m, 1);
            self.prepend_alternating(a, c, m - 1, u)
        };
        self.nodes[x as usize].lm[c] = y;
        self.nodes[y as usize].lm[c] = x;
        y
    }

    /// `c·x` where `c` is not a left descent of `x`.
    fn lmul_up(&mut self, c: usize, x: u32) -> u32 {
        let cached = self.nodes[x as usize].lm[c];
        if cached != NONE {
            return cached;
        }
        let mut found = None;
        for b in 0..c {
            let m = self.m(b, c);
            if m == 0 || self.len(x) + 1 < m as usize {
                continue;
            }
            let (count, u) = self.walk(x, b, c, m, 1);
            if count == m {
                found = Some((b, m, u));
                break;
            }
        }
        let y = match found {
            None => self.push(c as u8, x),
            Some((b, m, u)) => {
                let suffix = self.prepend_alternating(c, b, m - 1, u);
                self.push(b as u8, suffix)
            }
        };
        self.nodes[x as usize].lm[c] = y;
        self.nodes[y as usize].lm[c] = x;
        y
    }

    pub(crate) fn lmul(&mut self, c: usize, x: u32) -> u32 {
        if self.left_descents(x) >> c & 1 == 1 {
            self.lmul_down(c, x)
        } else {
            self.lmul_up(c, x)
        }
    }

    /// Normal form of an arbitrary 0-based word.
    pub(crate) fn reduce(&mut self, letters: &[u8]) -> u32 {
        letters.iter().rev().fold(IDENTITY, |x, &l| self.lmul(l as usize, x))
    }

    pub(crate) fn inv(&mut self, x: u32) -> u32 {
        let cached = self.nodes[x as usize].inv;
        if cached != NONE {
            return cached;
        }
        let word = self.nodes[x as usize].word.clone();
        let y = word.iter().fold(IDENTITY, |acc, &l| self.lmul(l as usize, acc));
        self.nodes[x as usize].inv = y;
        self.nodes[y as usize].inv = x;
        y
    }

    pub(crate) fn rmul(&mut self, x: u32, s: usize) -> u32 {
        let xi = self.inv(x);
        let t = self.lmul(s, xi);
        self.inv(t)
    }

    pub(crate) fn mul(&mut self, x: u32, y: u32) -> u32 {
        let word = self.nodes[y as usize].word.clone();
        let mut t = self.inv(x);
        for &l in &word {
            t = self.lmul(l as usize, t);
        }
        self.inv(t)
    }

    pub(crate) fn right_descents(&mut self, x: u32) -> u32 {
        let xi = self.inv(x);
        self.left_descents(xi)
    }

    pub(crate) fn node_count(&self) -> usize {
        self.nodes.len()
    }
}
