//! Finite simplicial sets carrying a marking and a (bi)scaling.
//!
//! Simplices are stored in Eilenberg–Zilber normal form: a monotone
//! surjection `[m] -> [k]` applied to a nondegenerate `k`-simplex. Only the
//! nondegenerate simplices and their face tables are stored; everything else
//! is computed.

mod build;
mod maps;
mod ops;

pub use build::{
    decorate, decorate_present, from_vertex_sets, materialize, simplex_tuples, standard_simplex, Deco,
    DecoSet, Materialized, Shape, SimplexSource,
};
pub use maps::{enumerate_maps, search_maps, DecMap, MapSearch, TargetIndex};
pub use ops::{product, product_raw, pushout, subobject, ProductData, Pushout};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    MB,
    MS,
    SC,
    PLAIN,
}

/// `surj` is a monotone surjection `[dim] -> [k]`; the simplex is its pullback of
/// the nondegenerate `k`-simplex `id`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Simplex {
    pub k: usize,
    pub id: usize,
    pub surj: Vec<usize>,
}

impl Simplex {
    pub fn nondeg(k: usize, id: usize) -> Self {
        Simplex { k, id, surj: (0..=k).collect() }
    }

    pub fn vertex(id: usize) -> Self {
        Simplex { k: 0, id, surj: vec![0] }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() > self.k
    }

    /// Indices `i1 > ... > ir` with `self = s_{i1} ... s_{ir}(base)`.
    pub fn degeneracy_word(&self) -> Vec<usize> {
        let mut w: Vec<usize> =
            (0..self.dim()).filter(|&i| self.surj[i] == self.surj[i + 1]).collect();
        w.reverse();
        w
    }

    /// Inverse of [`Simplex::degeneracy_word`].
    pub fn from_word(k: usize, id: usize, word: &[usize]) -> Self {
        let mut s = Simplex::nondeg(k, id);
        for &i in word.iter().rev() {
            s = s.degen_formal(i);
        }
        s
    }

    /// `s_i` never needs the face table.
    pub fn degen_formal(&self, i: usize) -> Simplex {
        let mut surj = self.surj.clone();
        surj.insert(i, self.surj[i]);
        Simplex { k: self.k, id: self.id, surj }
    }
}

/// All monotone surjections `[m] -> [k]`, lexicographically.
pub fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    // choose which of the m steps are increments
    for steps in itertools::Itertools::combinations(0..m, k) {
        let mut v = vec![0; m + 1];
        let mut cur = 0;
        for j in 0..m {
            if steps.contains(&j) {
                cur += 1;
            }
            v[j + 1] = cur;
        }
        out.push(v);
    }
    out.sort();
    out
}

/// All monotone maps `[m] -> [n]`, lexicographically.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

pub fn coface(m: usize, i: usize) -> Vec<usize> {
    (0..m).map(|j| if j < i { j } else { j + 1 }).collect()
}

pub fn codegeneracy(m: usize, i: usize) -> Vec<usize> {
    (0..=m + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedSSet {
    pub kind: Kind,
    pub cap: usize,
    #[serde(default)]
    pub coskeletal: Option<usize>,
    /// Number of nondegenerate simplices in each dimension.
    pub dims: Vec<usize>,
    /// `faces[k][id]` lists `d_0 .. d_k` of a nondegenerate `k`-simplex.
    pub faces: Vec<Vec<Vec<Simplex>>>,
    pub marked: BTreeSet<usize>,
    pub thin: BTreeSet<usize>,
    pub lean: BTreeSet<usize>,
}

impl DecoratedSSet {
    pub fn empty(kind: Kind) -> Self {
        DecoratedSSet {
            kind,
            cap: DEFAULT_CAP,
            coskeletal: None,
            dims: Vec::new(),
            faces: Vec::new(),
            marked: BTreeSet::new(),
            thin: BTreeSet::new(),
            lean: BTreeSet::new(),
        }
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.dims.iter().rposition(|&c| c > 0)
    }

    pub fn count(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    pub fn total_nondeg(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Appends a nondegenerate simplex with the given faces and returns its id.
    pub fn push(&mut self, k: usize, faces: Vec<Simplex>) -> usize {
        while self.dims.len() <= k {
            self.dims.push(0);
            self.faces.push(Vec::new());
        }
        self.faces[k].push(faces);
        self.dims[k] += 1;
        self.dims[k] - 1
    }

    pub fn nondeg_simplices(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.count(k)).map(move |id| Simplex::nondeg(k, id))
    }

    /// Pullback of `x` along a monotone map `theta: [m] -> [dim x]`.
    pub fn restrict(&self, x: &Simplex, theta: &[usize]) -> Simplex {
        let mut k = x.k;
        let mut id = x.id;
        let mut u: Vec<usize> = theta.iter().map(|&t| x.surj[t]).collect();
        loop {
            let mut hit = vec![false; k + 1];
            for &v in &u {
                hit[v] = true;
            }
            match hit.iter().rposition(|h| !h) {
                None => return Simplex { k, id, surj: u },
                Some(t) => {
                    let y = &self.faces[k][id][t];
                    for v in u.iter_mut() {
                        if *v > t {
                            *v -= 1;
                        }
                    }
                    u = u.iter().map(|&v| y.surj[v]).collect();
                    k = y.k;
                    id = y.id;
                }
            }
        }
    }

    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        self.restrict(x, &coface(x.dim(), i))
    }

    pub fn degen(&self, x: &Simplex, i: usize) -> Simplex {
        x.degen_formal(i)
    }

    pub fn vertices(&self, x: &Simplex) -> Vec<usize> {
        (0..=x.dim()).map(|j| self.restrict(x, &[j]).id).collect()
    }

    /// Every `m`-simplex, degenerate ones included, in sorted order.
    pub fn simplices(&self, m: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=m.min(self.dims.len().saturating_sub(1)) {
            if self.count(k) == 0 {
                continue;
            }
            let surjs = surjections(m, k);
            for id in 0..self.count(k) {
                for s in &surjs {
                    out.push(Simplex { k, id, surj: s.clone() });
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_marked(&self, x: &Simplex) -> bool {
        debug_assert_eq!(x.dim(), 1);
        x.is_degenerate() || self.marked.contains(&x.id)
    }

    pub fn is_thin(&self, x: &Simplex) -> bool {
        debug_assert_eq!(x.dim(), 2);
        x.is_degenerate() || self.thin.contains(&x.id)
    }

    pub fn is_lean(&self, x: &Simplex) -> bool {
        debug_assert_eq!(x.dim(), 2);
        x.is_degenerate() || self.lean.contains(&x.id) || self.thin.contains(&x.id)
    }

    /// Index of nondegenerate simplices by vertex tuple.
    pub fn vertex_index(&self) -> BTreeMap<Vec<usize>, Vec<Simplex>> {
        let mut idx: BTreeMap<Vec<usize>, Vec<Simplex>> = BTreeMap::new();
        for k in 0..self.dims.len() {
            for x in self.nondeg_simplices(k) {
                idx.entry(self.vertices(&x)).or_default().push(x);
            }
        }
        idx
    }

    /// Looks a simplex up by its (weakly increasing) vertex sequence. Only
    /// meaningful when nondegenerate simplices are determined by their vertices.
    pub fn by_vertices(
        &self,
        idx: &BTreeMap<Vec<usize>, Vec<Simplex>>,
        verts: &[usize],
    ) -> Option<Simplex> {
        let mut distinct: Vec<usize> = Vec::new();
        let mut surj = Vec::with_capacity(verts.len());
        for &v in verts {
            if distinct.last() != Some(&v) {
                distinct.push(v);
            }
            surj.push(distinct.len() - 1);
        }
        let base = idx.get(&distinct)?.first()?;
        Some(Simplex { k: base.k, id: base.id, surj })
    }

    /// Re-establishes the per-kind conventions on decoration sets.
    pub fn normalize_kind(&mut self) {
        match self.kind {
            Kind::MB => {
                let thin = self.thin.clone();
                self.lean.extend(thin);
            }
            Kind::MS => {
                self.lean = self.thin.clone();
            }
            Kind::SC => {
                self.marked.clear();
                self.lean = self.thin.clone();
            }
            Kind::PLAIN => {
                self.marked.clear();
                self.thin.clear();
                self.lean.clear();
            }
        }
    }

    /// Checks the simplicial identities on every simplex up to `max_dim`.
    pub fn check_simplicial_identities(&self, max_dim: usize) -> std::result::Result<(), String> {
        for m in 0..=max_dim {
            for x in self.simplices(m) {
                if m >= 2 {
                    for j in 0..=m {
                        for i in 0..j {
                            let a = self.face(&self.face(&x, j), i);
                            let b = self.face(&self.face(&x, i), j - 1);
                            if a != b {
                                return Err(format!("d_{i} d_{j} != d_{} d_{i} on {x:?}", j - 1));
                            }
                        }
                    }
                }
                for i in 0..=m {
                    let s = self.degen(&x, i);
                    for j in 0..=m + 1 {
                        let lhs = self.face(&s, j);
                        let rhs = if j == i || j == i + 1 {
                            x.clone()
                        } else if j < i {
                            self.degen(&self.face(&x, j), i - 1)
                        } else {
                            self.degen(&self.face(&x, j - 1), i)
                        };
                        if lhs != rhs {
                            return Err(format!("d_{j} s_{i} identity fails on {x:?}"));
                        }
                    }
                    for j in 0..=i {
                        let a = self.degen(&self.degen(&x, i), j);
                        let b = self.degen(&self.degen(&x, j), i + 1);
                        if a != b {
                            return Err(format!("s_{j} s_{i} identity fails on {x:?}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural sanity: face tables well formed and decorations valid.
    pub fn validate(&self) -> Result<()> {
        for (k, tab) in self.faces.iter().enumerate() {
            if tab.len() != self.count(k) {
                return Err(Error::Input(format!("face table of dimension {k} has wrong length")));
            }
            for (id, fs) in tab.iter().enumerate() {
                let want = if k == 0 { 0 } else { k + 1 };
                if fs.len() != want {
                    return Err(Error::Input(format!("simplex ({k},{id}) has {} faces", fs.len())));
                }
                for f in fs {
                    if f.dim() + 1 != k || f.id >= self.count(f.k) || !is_surjection(&f.surj, f.k)
                    {
                        return Err(Error::Input(format!("simplex ({k},{id}) has a bad face")));
                    }
                }
            }
        }
        for &e in &self.marked {
            if e >= self.count(1) {
                return Err(Error::BadDecoration(format!("marked edge {e} does not exist")));
            }
        }
        for (name, set) in [("thin", &self.thin), ("lean", &self.lean)] {
            for &t in set {
                if t >= self.count(2) {
                    return Err(Error::BadDecoration(format!("{name} triangle {t} does not exist")));
                }
            }
        }
        if self.kind == Kind::MB && !self.thin.is_subset(&self.lean) {
            return Err(Error::BadDecoration("thin triangles must be lean".into()));
        }
        if self.kind == Kind::MS && self.thin != self.lean {
            return Err(Error::BadDecoration("MS objects carry a single scaling".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let x: DecoratedSSet = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        x.validate()?;
        Ok(x)
    }

    /// The same simplicial set with other decorations.
    pub fn with_decorations(
        &self,
        kind: Kind,
        marked: BTreeSet<usize>,
        thin: BTreeSet<usize>,
        lean: BTreeSet<usize>,
    ) -> Self {
        let mut out = self.clone();
        out.kind = kind;
        out.marked = marked;
        out.thin = thin;
        out.lean = lean;
        out.normalize_kind();
        out
    }

    /// All edges and triangles decorated.
    pub fn all_edges(&self) -> BTreeSet<usize> {
        (0..self.count(1)).collect()
    }

    pub fn all_triangles(&self) -> BTreeSet<usize> {
        (0..self.count(2)).collect()
    }

    /// Drops simplices above dimension `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let mut out = self.clone();
        out.dims.truncate(d + 1);
        out.faces.truncate(d + 1);
        if d < 2 {
            out.thin.clear();
            out.lean.clear();
        }
        if d < 1 {
            out.marked.clear();
        }
        out
    }
}

fn is_surjection(s: &[usize], k: usize) -> bool {
    !s.is_empty()
        && s[0] == 0
        && *s.last().unwrap() == k
        && s.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 3).len(), 0);
        assert_eq!(monotone_maps(1, 2).len(), 6);
    }

    #[test]
    fn degeneracy_word_round_trip() {
        for m in 0..5 {
            for k in 0..=m {
                for s in surjections(m, k) {
                    let x = Simplex { k, id: 0, surj: s };
                    let w = x.degeneracy_word();
                    assert!(w.windows(2).all(|p| p[0] > p[1]));
                    assert_eq!(Simplex::from_word(k, 0, &w), x);
                }
            }
        }
    }
}
