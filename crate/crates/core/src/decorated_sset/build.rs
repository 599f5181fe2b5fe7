use std::collections::{BTreeMap, BTreeSet};

use super::{codegeneracy, coface, DecoratedSSet, Kind, Simplex, DEFAULT_CAP};
use crate::error::{Error, Result};

/// One decoration collection in the ♭ / ♯ / explicit-list vocabulary.
/// Lists name simplices by vertex tuples of the standard simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecoSet {
    Flat,
    Sharp,
    List(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deco {
    pub kind: Kind,
    pub marked: DecoSet,
    pub thin: DecoSet,
    pub lean: DecoSet,
}

impl Deco {
    pub fn plain() -> Self {
        Deco { kind: Kind::PLAIN, marked: DecoSet::Flat, thin: DecoSet::Flat, lean: DecoSet::Flat }
    }

    pub fn mb(marked: DecoSet, thin: DecoSet, lean: DecoSet) -> Self {
        Deco { kind: Kind::MB, marked, thin, lean }
    }

    /// `(X, E, T)` with a single scaling: thin and lean agree.
    pub fn ms(marked: DecoSet, thin: DecoSet) -> Self {
        Deco { kind: Kind::MS, marked, lean: thin.clone(), thin }
    }

    pub fn scaled(thin: DecoSet) -> Self {
        Deco { kind: Kind::SC, marked: DecoSet::Flat, lean: thin.clone(), thin }
    }

    /// Same collections read as an MB object with lean = thin.
    pub fn mb_single(marked: DecoSet, thin: DecoSet) -> Self {
        Deco { kind: Kind::MB, marked, lean: thin.clone(), thin }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Full,
    Horn(usize),
    Boundary,
}

/// Builds an ordered simplicial complex from its vertex tuples (closed under
/// faces). Ids follow the order dimension, then lexicographic tuple.
pub fn from_vertex_sets(kind: Kind, mut sets: Vec<Vec<usize>>) -> DecoratedSSet {
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    sets.dedup();
    let mut out = DecoratedSSet::empty(kind);
    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in sets {
        let k = s.len() - 1;
        let faces = if k == 0 {
            Vec::new()
        } else {
            (0..=k)
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    Simplex::nondeg(k - 1, ids[&f])
                })
                .collect()
        };
        let id = out.push(k, faces);
        ids.insert(s, id);
    }
    out
}

fn resolve(
    x: &DecoratedSSet,
    idx: &BTreeMap<Vec<usize>, Vec<Simplex>>,
    set: &DecoSet,
    dim: usize,
) -> Result<BTreeSet<usize>> {
    match set {
        DecoSet::Flat => Ok(BTreeSet::new()),
        DecoSet::Sharp => Ok((0..x.count(dim)).collect()),
        DecoSet::List(l) => {
            let mut out = BTreeSet::new();
            for t in l {
                if t.len() != dim + 1 {
                    return Err(Error::BadDecoration(format!("{t:?} is not a {dim}-simplex")));
                }
                match idx.get(t) {
                    Some(v) => {
                        out.insert(v[0].id);
                    }
                    None => {
                        return Err(Error::BadDecoration(format!("simplex {t:?} is not present")))
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Applies decorations to an object whose simplices are named by vertex tuples.
pub fn decorate(mut x: DecoratedSSet, deco: &Deco) -> Result<DecoratedSSet> {
    let idx = x.vertex_index();
    x.kind = deco.kind;
    x.marked = resolve(&x, &idx, &deco.marked, 1)?;
    x.thin = resolve(&x, &idx, &deco.thin, 2)?;
    x.lean = resolve(&x, &idx, &deco.lean, 2)?;
    x.normalize_kind();
    Ok(x)
}

/// Like [`decorate`] but silently drops listed simplices that are absent.
pub fn decorate_present(x: DecoratedSSet, deco: &Deco) -> Result<DecoratedSSet> {
    let idx = x.vertex_index();
    let keep = |s: &DecoSet| match s {
        DecoSet::List(l) => DecoSet::List(l.iter().filter(|t| idx.contains_key(*t)).cloned().collect()),
        other => other.clone(),
    };
    let d = Deco {
        kind: deco.kind,
        marked: keep(&deco.marked),
        thin: keep(&deco.thin),
        lean: keep(&deco.lean),
    };
    decorate(x, &d)
}

/// Vertex tuples of Δⁿ, Λⁿ_i or ∂Δⁿ.
pub fn simplex_tuples(n: usize, shape: Shape) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << (n + 1)) {
        let t: Vec<usize> = (0..=n).filter(|&v| mask & (1 << v) != 0).collect();
        let keep = match shape {
            Shape::Full => true,
            Shape::Boundary => t.len() <= n,
            Shape::Horn(i) => t.len() <= n && !(t.len() == n && !t.contains(&i)),
        };
        if keep {
            out.push(t);
        }
    }
    out
}

pub fn standard_simplex(n: usize, shape: Shape, deco: &Deco, cap: usize) -> Result<DecoratedSSet> {
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    if let Shape::Horn(i) = shape {
        if i > n || n == 0 {
            return Err(Error::OutOfRange(format!("horn Λ^{n}_{i}")));
        }
    }
    let mut x = from_vertex_sets(deco.kind, simplex_tuples(n, shape));
    x.cap = cap;
    decorate(x, deco)
}

/// A source of simplices given by combinatorial data, e.g. lax functors.
pub trait SimplexSource {
    type Data: Clone + Ord + std::fmt::Debug;
    /// All `n`-simplices, degenerate ones included.
    fn simplices(&self, n: usize) -> Vec<Self::Data>;
    /// Pullback along a monotone map `[m] -> [n]`.
    fn restrict(&self, x: &Self::Data, theta: &[usize]) -> Self::Data;
    fn kind(&self) -> Kind {
        Kind::MB
    }
    fn marked(&self, _x: &Self::Data) -> bool {
        false
    }
    fn thin(&self, _x: &Self::Data) -> bool {
        false
    }
    fn lean(&self, x: &Self::Data) -> bool {
        self.thin(x)
    }
}

/// A materialized source together with the data of its nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct Materialized<D: Ord> {
    pub sset: DecoratedSSet,
    pub data: Vec<Vec<D>>,
    pub ids: Vec<BTreeMap<D, usize>>,
}

impl<D: Clone + Ord + std::fmt::Debug> Materialized<D> {
    /// Normal form of a data simplex, if it lies within the materialized range.
    pub fn locate<S: SimplexSource<Data = D>>(&self, src: &S, x: &D, dim: usize) -> Option<Simplex> {
        if let Some(&id) = self.ids.get(dim).and_then(|m| m.get(x)) {
            return Some(Simplex::nondeg(dim, id));
        }
        for i in 0..dim {
            let y = src.restrict(x, &coface(dim, i));
            let back = src.restrict(&y, &codegeneracy(dim - 1, i));
            if &back == x {
                let z = self.locate(src, &y, dim - 1)?;
                return Some(z.degen_formal(i));
            }
        }
        None
    }

    /// Data of an arbitrary simplex in normal form.
    pub fn data_of<S: SimplexSource<Data = D>>(&self, src: &S, x: &Simplex) -> D {
        src.restrict(&self.data[x.k][x.id], &x.surj)
    }
}

/// Enumerates the simplices of `src` up to `top` and records faces and decorations.
pub fn materialize<S: SimplexSource>(src: &S, top: usize) -> Materialized<S::Data> {
    let mut m = Materialized {
        sset: DecoratedSSet::empty(src.kind()),
        data: Vec::new(),
        ids: Vec::new(),
    };
    m.sset.cap = top.max(DEFAULT_CAP);
    for n in 0..=top {
        let mut all = src.simplices(n);
        all.sort();
        all.dedup();
        let mut nondeg = Vec::new();
        for x in all {
            let degenerate = (0..n).any(|i| {
                let y = src.restrict(&x, &coface(n, i));
                src.restrict(&y, &codegeneracy(n - 1, i)) == x
            });
            if !degenerate {
                nondeg.push(x);
            }
        }
        let mut idmap = BTreeMap::new();
        for (id, x) in nondeg.iter().enumerate() {
            idmap.insert(x.clone(), id);
        }
        m.ids.push(idmap);
        if m.sset.dims.len() <= n {
            m.sset.dims.push(0);
            m.sset.faces.push(Vec::new());
        }
        for x in &nondeg {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let y = src.restrict(x, &coface(n, i));
                        m.locate(src, &y, n - 1).expect("faces of stored simplices are stored")
                    })
                    .collect()
            };
            let id = m.sset.push(n, faces);
            if n == 1 && src.marked(x) {
                m.sset.marked.insert(id);
            }
            if n == 2 {
                if src.thin(x) {
                    m.sset.thin.insert(id);
                }
                if src.lean(x) {
                    m.sset.lean.insert(id);
                }
            }
        }
        m.data.push(nondeg);
    }
    m.sset.normalize_kind();
    m
}
