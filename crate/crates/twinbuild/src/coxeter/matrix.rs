use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank the engine accepts (letters are stored as `u8`, subsets as `u32`).
pub const MAX_RANK: usize = 32;

/// Symmetric matrix of bond orders. `None` (serialized as 0) stands for ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CoxeterMatrix {
    rank: usize,
    m: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rank: usize,
    m: Vec<Vec<u32>>,
}

impl TryFrom<RawMatrix> for CoxeterMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        if raw.m.len() != raw.rank {
            return Err(Error::InvalidMatrix(format!(
                "rank {} but {} rows",
                raw.rank,
                raw.m.len()
            )));
        }
        CoxeterMatrix::new(raw.m)
    }
}

impl From<CoxeterMatrix> for RawMatrix {
    fn from(cm: CoxeterMatrix) -> Self {
        RawMatrix { rank: cm.rank, m: cm.rows() }
    }
}

impl CoxeterMatrix {
    /// Builds a matrix from rows, 0 meaning ∞.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {rank} outside 1..={MAX_RANK}")));
        }
        let mut m = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 1 {
                    return Err(Error::InvalidMatrix(format!("m({0},{0}) = {x}, expected 1", i + 1)));
                }
                if i != j && x == 1 {
                    return Err(Error::InvalidMatrix(format!("m({},{}) = 1 off the diagonal", i + 1, j + 1)));
                }
                if rows[j][i] != x {
                    return Err(Error::InvalidMatrix(format!("not symmetric at ({},{})", i + 1, j + 1)));
                }
                m.push(x);
            }
        }
        Ok(CoxeterMatrix { rank, m })
    }

    /// Rank-`rank` matrix with every bond 2 except the listed ones.
    /// Bonds use 1-based indices; order 0 means ∞.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, u32)]) -> Result<Self> {
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, x) in bonds {
            if i == 0 || j == 0 || i > rank || j > rank || i == j {
                return Err(Error::InvalidMatrix(format!("bad bond ({i},{j})")));
            }
            rows[i - 1][j - 1] = x;
            rows[j - 1][i - 1] = x;
        }
        CoxeterMatrix::new(rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrix serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of s_i s_j (0-based indices), `None` for ∞.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        match self.m[i * self.rank + j] {
            0 => None,
            x => Some(x),
        }
    }

    /// Raw entry, 0 for ∞.
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.m.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.rank)
    }

    /// A_n: path with all bonds 3.
    pub fn type_a(n: usize) -> Self {
        let bonds: Vec<_> = (1..n).map(|i| (i, i + 1, 3)).collect();
        Self::from_bonds(n, &bonds).expect("valid")
    }

    /// B_n: path with a 4 bond at the end.
    pub fn type_b(n: usize) -> Self {
        let bonds: Vec<_> = (1..n).map(|i| (i, i + 1, if i + 1 == n { 4 } else { 3 })).collect();
        Self::from_bonds(n, &bonds).expect("valid")
    }

    /// Dihedral I2(m); m = 0 gives the infinite dihedral group.
    pub fn dihedral(m: u32) -> Self {
        Self::from_bonds(2, &[(1, 2, m)]).expect("valid")
    }

    /// Ã_n for n ≥ 1: a cycle of n+1 nodes (Ã1 has a single ∞ bond).
    pub fn affine_a(n: usize) -> Self {
        if n == 1 {
            return Self::dihedral(0);
        }
        let mut bonds: Vec<_> = (1..=n).map(|i| (i, i + 1, 3)).collect();
        bonds.push((1, n + 1, 3));
        Self::from_bonds(n + 1, &bonds).expect("valid")
    }

    /// Whether the parabolic subgroup W_J is finite, by the classification of
    /// connected finite Coxeter graphs.
    pub fn is_spherical(&self, j: Subset) -> bool {
        self.components(j).iter().all(|c| self.component_is_finite(c))
    }

    /// Connected components of the Coxeter graph restricted to `j`
    /// (edges are bonds different from 2).
    pub fn components(&self, j: Subset) -> Vec<Vec<usize>> {
        let nodes: Vec<usize> = j.iter().collect();
        let mut seen = Subset::EMPTY;
        let mut out = Vec::new();
        for &start in &nodes {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen = seen.with(start);
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for &b in &nodes {
                    if !seen.contains(b) && self.raw(a, b) != 2 {
                        seen = seen.with(b);
                        comp.push(b);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn component_is_finite(&self, nodes: &[usize]) -> bool {
        let n = nodes.len();
        if n == 1 {
            return true;
        }
        let mut edges = Vec::new();
        for (x, &a) in nodes.iter().enumerate() {
            for &b in &nodes[x + 1..] {
                match self.order(a, b) {
                    None => return false,
                    Some(2) => {}
                    Some(m) => edges.push((a, b, m)),
                }
            }
        }
        if n == 2 {
            return true;
        }
        if edges.len() != n - 1 {
            return false;
        }
        if edges.iter().any(|e| e.2 >= 6) {
            return false;
        }
        let special: Vec<_> = edges.iter().filter(|e| e.2 >= 4).collect();
        if special.len() > 1 {
            return false;
        }
        let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
        let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
        if branch.is_empty() {
            let Some(&&(a, b, m)) = special.first() else {
                return true;
            };
            let at_end = degree(a) == 1 || degree(b) == 1;
            return match m {
                4 => at_end || n == 4,
                5 => at_end && n <= 4,
                _ => false,
            };
        }
        if branch.len() > 1 || !special.is_empty() || degree(branch[0]) > 3 {
            return false;
        }
        let centre = branch[0];
        let mut arms = Vec::new();
        for &(a, b, _) in edges.iter().filter(|e| e.0 == centre || e.1 == centre) {
            let mut prev = centre;
            let mut cur = if a == centre { b } else { a };
            let mut len = 1;
            loop {
                let next = edges.iter().find_map(|&(x, y, _)| {
                    if x == cur && y != prev {
                        Some(y)
                    } else if y == cur && x != prev {
                        Some(x)
                    } else {
                        None
                    }
                });
                match next {
                    Some(v) => {
                        prev = cur;
                        cur = v;
                        len += 1;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        arms[0] == 1 && (arms[1] == 1 || (arms[1] == 2 && arms[2] <= 4))
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// A subset J of the generating set, as a bit mask over 0-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << rank) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        Subset(1 << i)
    }

    /// From 1-based indices, checked against `rank`.
    pub fn from_indices(indices: &[usize], rank: usize) -> Result<Self> {
        let mut s = Subset::EMPTY;
        for &i in indices {
            if i == 0 || i > rank {
                return Err(Error::IndexOutOfRange { index: i, rank });
            }
            s = s.with(i - 1);
        }
        Ok(s)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Members as 0-based indices, increasing.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members as 1-based indices.
    pub fn indices(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Parses "{1,2}", "1,2", "1 2", "{}" or "" (1-based).
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut idx = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            idx.push(tok.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {tok:?}")))?);
        }
        Subset::from_indices(&idx, rank)
    }

    /// Canonical order for listings: by size, then by sorted members.
    pub fn listing_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A group element in ShortLex normal form.
///
/// Letters are 0-based internally; text forms use 1-based indices and "e"
/// for the identity. Values are only produced by a [`super::CoxeterGroup`],
/// so equal elements have identical words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element(pub(crate) Vec<u8>);

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.shortlex().cmp(&other.shortlex())
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based letters.
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// 1-based generator indices.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize + 1).collect()
    }

    /// ShortLex comparison key; also the `Ord` used for sorting.
    pub fn shortlex(&self) -> (usize, &[u8]) {
        (self.0.len(), &self.0)
    }

    /// Support: the set of letters occurring in the word.
    pub fn support(&self) -> Subset {
        self.0.iter().fold(Subset::EMPTY, |s, &l| s.with(l as usize))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses a whitespace-separated 1-based word; "e" or "" is the empty word.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad generator {s:?}"))))
        .collect()
}
