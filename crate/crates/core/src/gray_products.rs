//! Gray products `X ⊗ Y`, the decorated product `Δ¹ ⊗̂ X` and the maps `E_j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::decorated_sset::{
    codegeneracy, product_raw, standard_simplex, subobject, DecMap, Deco, DecoratedSSet, Kind, Shape, Simplex,
};
use crate::error::{Error, Result};
use crate::free_fibration::FibSimplex;
use crate::strict_two_cat::{FinPoset, StrictTwoCat};

/// Which rule scaled a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GrayClause {
    /// Both components thin, and the first degenerates on `1→2` or the second on `0→1`.
    Gray,
    /// Lean in `X` and constant at 1 on `1→2`.
    LeanTail,
    /// Lean in `X` with marked `0→1`, over `0→0→1`.
    MarkedHead,
}

#[derive(Clone, Debug)]
pub struct GrayScaling {
    pub carrier: DecoratedSSet,
    /// Components `(σ_X, σ_Y)` of each nondegenerate simplex.
    pub pairs: Vec<Vec<(Simplex, Simplex)>>,
    /// The first clause that scaled each thin triangle.
    pub clause: BTreeMap<usize, GrayClause>,
}

impl GrayScaling {
    pub fn components(&self, x: &Simplex) -> (Simplex, Simplex) {
        let (a, b) = &self.pairs[x.k][x.id];
        let pull = |s: &Simplex| Simplex { k: s.k, id: s.id, surj: x.surj.iter().map(|&v| s.surj[v]).collect() };
        (pull(a), pull(b))
    }

    /// The sub-object `{e} ⊗̂ Y` (first factor constant at vertex `e`).
    pub fn end(&self, x: &DecoratedSSet, e: usize) -> (DecoratedSSet, DecMap) {
        let (mut sub, inc) = subobject(&self.carrier, |s| {
            let (a, _) = &self.pairs[s.k][s.id];
            x.vertices(a).iter().all(|&v| v == e)
        });
        sub.normalize_kind();
        (sub, inc)
    }
}

fn gray_rule(x: &DecoratedSSet, y: &DecoratedSSet, sx: &Simplex, sy: &Simplex) -> bool {
    x.is_thin(sx) && y.is_thin(sy) && (x.face(sx, 0).is_degenerate() || y.face(sy, 2).is_degenerate())
}

/// `X ⊗ Y` of scaled simplicial sets.
pub fn gray(x: &DecoratedSSet, y: &DecoratedSSet, cap: usize) -> Result<GrayScaling> {
    let pd = product_raw(x, y, cap, false)?;
    let mut carrier = pd.sset.clone();
    carrier.kind = Kind::SC;
    let mut clause = BTreeMap::new();
    for t in carrier.nondeg_simplices(2).collect::<Vec<_>>() {
        let (sx, sy) = pd.components(&t);
        if gray_rule(x, y, &sx, &sy) {
            carrier.thin.insert(t.id);
            clause.insert(t.id, GrayClause::Gray);
        }
    }
    carrier.normalize_kind();
    Ok(GrayScaling { carrier, pairs: pd.pairs, clause })
}

fn interval() -> DecoratedSSet {
    standard_simplex(1, Shape::Full, &Deco::plain(), 1).expect("Δ¹")
}

/// `Δ¹ ⊗̂ X` for an MB object `X`, as an MS object.
pub fn decorated_gray(x: &DecoratedSSet, cap: usize) -> Result<GrayScaling> {
    if x.kind != Kind::MB {
        return Err(Error::BadDecoration(format!("decorated Gray product needs an MB object, got {:?}", x.kind)));
    }
    let d1 = interval();
    let pd = product_raw(&d1, x, cap, false)?;
    let mut carrier = pd.sset.clone();
    carrier.kind = Kind::MS;
    for e in carrier.nondeg_simplices(1).collect::<Vec<_>>() {
        let (s1, sx) = pd.components(&e);
        if d1.vertices(&s1) == [1, 1] && x.is_marked(&sx) {
            carrier.marked.insert(e.id);
        }
    }
    let mut clause = BTreeMap::new();
    for t in carrier.nondeg_simplices(2).collect::<Vec<_>>() {
        let (s1, sx) = pd.components(&t);
        let v1 = d1.vertices(&s1);
        let c = if gray_rule(&d1, x, &s1, &sx) {
            Some(GrayClause::Gray)
        } else if x.is_lean(&sx) && v1[1] == 1 && v1[2] == 1 {
            Some(GrayClause::LeanTail)
        } else if x.is_lean(&sx) && x.is_marked(&x.face(&sx, 2)) && v1 == [0, 0, 1] {
            Some(GrayClause::MarkedHead)
        } else {
            None
        };
        if let Some(c) = c {
            carrier.thin.insert(t.id);
            clause.insert(t.id, c);
        }
    }
    carrier.normalize_kind();
    Ok(GrayScaling { carrier, pairs: pd.pairs, clause })
}

/// Triangles `p < q < r` of the prism `[1] × [n]` that are scaled in
/// `Δ¹ ⊗̂ Δⁿ` with `Δⁿ` flat: degenerate second component and the Gray condition.
pub fn contrary_triangles(n: usize) -> BTreeSet<(usize, usize, usize)> {
    FinPoset::prism(n)
        .triples()
        .into_iter()
        .filter(|&(p, q, r)| {
            let (mp, rp) = FinPoset::coords(p);
            let (mq, rq) = FinPoset::coords(q);
            let (mr, rr) = FinPoset::coords(r);
            let _ = mp;
            let degenerate = rp == rq || rq == rr;
            degenerate && (mq == mr || rp == rq)
        })
        .collect()
}

/// `E_j` on prism elements: `[1] × [n+1] -> [1] × [n]`.
pub fn e_vertex_map(j: usize, n: usize) -> Result<Vec<usize>> {
    if j > n {
        return Err(Error::OutOfRange(format!("extension index {j} exceeds {n}")));
    }
    Ok((0..2 * (n + 2))
        .map(|e| {
            let (m, r) = FinPoset::coords(e);
            if r <= j {
                FinPoset::elt(m, r)
            } else {
                FinPoset::elt(1, r - 1)
            }
        })
        .collect())
}

/// `E_j: Δ¹ ⊗ Δ^{n+1} -> Δ¹ ⊗ Δⁿ` with its source and target.
pub fn e_map(j: usize, n: usize, cap: usize) -> Result<(GrayScaling, GrayScaling, DecMap)> {
    let theta = e_vertex_map(j, n)?;
    let flat = |k: usize| -> Result<DecoratedSSet> {
        let mut s = standard_simplex(k, Shape::Full, &Deco::plain(), cap)?;
        s.kind = Kind::SC;
        Ok(s)
    };
    let src = gray(&interval_sc(), &flat(n + 1)?, cap)?;
    let tgt = gray(&interval_sc(), &flat(n)?, cap)?;
    // Product vertex `(m, r)` has id `m * (k + 1) + r`.
    let to_prism = |v: usize, k: usize| FinPoset::elt(v / (k + 1), v % (k + 1));
    let from_prism = |e: usize, k: usize| {
        let (m, r) = FinPoset::coords(e);
        m * (k + 1) + r
    };
    let idx = tgt.carrier.vertex_index();
    let mut images = Vec::new();
    for k in 0..src.carrier.dims.len() {
        let mut row = Vec::new();
        for s in src.carrier.nondeg_simplices(k) {
            let verts: Vec<usize> = src
                .carrier
                .vertices(&s)
                .into_iter()
                .map(|v| from_prism(theta[to_prism(v, n + 1)], n))
                .collect();
            let y = tgt
                .carrier
                .by_vertices(&idx, &verts)
                .ok_or_else(|| Error::Invalid(format!("E_{j} image {verts:?} is not a simplex")))?;
            row.push(y);
        }
        images.push(row);
    }
    Ok((src, tgt, DecMap { images }))
}

fn interval_sc() -> DecoratedSSet {
    let mut d = interval();
    d.kind = Kind::SC;
    d
}

/// `E_j^*(σ)`: the `(n+1)`-simplex with parts `φ ∘ E_j` and `ρ ∘ s_j`.
pub fn extend(c: &StrictTwoCat, d: &StrictTwoCat, sigma: &FibSimplex, j: usize) -> Result<FibSimplex> {
    let n = sigma.dim();
    if !sigma.is_well_formed(c, d) {
        return Err(Error::Input("malformed simplex pair".into()));
    }
    let theta = e_vertex_map(j, n)?;
    Ok(FibSimplex {
        phi: sigma.phi.pullback(d, &FinPoset::prism(n + 1), &theta),
        rho: sigma.rho.pullback(c, &FinPoset::chain(n + 1), &codegeneracy(n, j)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated_sset::DecoSet;

    fn sc(n: usize) -> DecoratedSSet {
        let mut s = standard_simplex(n, Shape::Full, &Deco::plain(), 4).unwrap();
        s.kind = Kind::SC;
        s
    }

    #[test]
    fn square_has_one_thin_triangle() {
        let g = gray(&sc(1), &sc(1), 4).unwrap();
        assert_eq!(g.carrier.count(2), 2);
        assert_eq!(g.carrier.thin.len(), 1);
        let t = *g.carrier.thin.iter().next().unwrap();
        let (sx, _) = g.components(&Simplex::nondeg(2, t));
        assert!(sc(1).face(&sx, 0).is_degenerate());
    }

    #[test]
    fn asymmetry_and_unit() {
        let a = gray(&sc(1), &sc(2), 4).unwrap();
        let b = gray(&sc(2), &sc(1), 4).unwrap();
        assert_eq!(a.carrier.dims, b.carrier.dims);
        let g = gray(&sc(0), &sc(2), 4).unwrap();
        assert_eq!(g.carrier.dims, sc(2).dims);
        assert!(g.carrier.thin.is_empty());
        // Swapping factors changes which triangles are thin.
        let swap = |g: &GrayScaling| -> BTreeSet<Vec<usize>> {
            g.carrier.thin.iter().map(|&t| g.carrier.vertices(&Simplex::nondeg(2, t))).collect()
        };
        let ab = gray(&sc(1), &sc(1), 4).unwrap();
        let flipped: BTreeSet<Vec<usize>> = swap(&ab)
            .into_iter()
            .map(|vs| vs.into_iter().map(|v| (v % 2) * 2 + v / 2).collect())
            .collect();
        assert_ne!(flipped, swap(&ab));
    }

    #[test]
    fn decorated_ends() {
        let x = standard_simplex(
            2,
            Shape::Full,
            &Deco::mb(DecoSet::List(vec![vec![0, 1]]), DecoSet::Flat, DecoSet::Sharp),
            4,
        )
        .unwrap();
        let g = decorated_gray(&x, 4).unwrap();
        let (one, _) = g.end(&x, 1);
        assert_eq!(one.marked.len(), x.marked.len());
        assert_eq!(one.thin.len(), x.lean.len());
        let (zero, _) = g.end(&x, 0);
        assert!(zero.marked.is_empty());
        assert_eq!(zero.thin.len(), x.thin.len());
    }

    #[test]
    fn decorated_interval_marking() {
        let x = standard_simplex(1, Shape::Full, &Deco::mb(DecoSet::Sharp, DecoSet::Flat, DecoSet::Flat), 4).unwrap();
        let g = decorated_gray(&x, 4).unwrap();
        let idx = g.carrier.vertex_index();
        // Vertices (m, r) have id 2m + r.
        let top = &idx[&vec![2, 3]][0];
        let bottom = &idx[&vec![0, 1]][0];
        assert!(g.carrier.marked.contains(&top.id));
        assert!(!g.carrier.marked.contains(&bottom.id));
        assert!(decorated_gray(&sc(1), 4).is_err());
    }

    #[test]
    fn contrary_matches_decorated_gray() {
        for n in 0..=2 {
            let x = standard_simplex(n, Shape::Full, &Deco::mb(DecoSet::Flat, DecoSet::Flat, DecoSet::Flat), 4).unwrap();
            let g = decorated_gray(&x, 4).unwrap();
            let from_product: BTreeSet<Vec<usize>> = g
                .carrier
                .thin
                .iter()
                .map(|&t| {
                    g.carrier
                        .vertices(&Simplex::nondeg(2, t))
                        .into_iter()
                        .map(|v| FinPoset::elt(v / (n + 1), v % (n + 1)))
                        .collect()
                })
                .collect();
            let direct: BTreeSet<Vec<usize>> =
                contrary_triangles(n).into_iter().map(|(p, q, r)| vec![p, q, r]).collect();
            assert_eq!(from_product, direct, "n = {n}");
        }
    }

    #[test]
    fn e_map_vertices_and_scaling() {
        let t = e_vertex_map(0, 1).unwrap();
        let pair = |e: usize| FinPoset::coords(e);
        assert_eq!(pair(t[FinPoset::elt(0, 0)]), (0, 0));
        assert_eq!(pair(t[FinPoset::elt(0, 1)]), (1, 0));
        assert_eq!(pair(t[FinPoset::elt(0, 2)]), (1, 1));
        for r in 0..3 {
            assert_eq!(pair(t[FinPoset::elt(1, r)]), (1, r.saturating_sub(1)));
        }
        for n in 0..=3 {
            for j in 0..=n {
                let t = e_vertex_map(j, n).unwrap();
                let s = codegeneracy(n, j);
                for r in 0..=n + 1 {
                    assert_eq!(pair(t[FinPoset::elt(1, r)]), (1, s[r]));
                    if r <= n && r <= j {
                        assert_eq!(pair(t[FinPoset::elt(0, r)]), (0, r));
                    }
                }
            }
        }
        for n in 0..=2 {
            for j in 0..=n {
                let (src, tgt, m) = e_map(j, n, n + 2).unwrap();
                m.check(&src.carrier, &tgt.carrier).unwrap();
            }
        }
        assert!(e_vertex_map(3, 2).is_err());
    }
}
