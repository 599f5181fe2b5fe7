use std::collections::BTreeMap;

use super::{surjections, DecMap, DecoratedSSet, Kind, Simplex};
use crate::error::{Error, Result};

/// The product `A × B` with the pair of components of each nondegenerate simplex.
#[derive(Clone, Debug)]
pub struct ProductData {
    pub sset: DecoratedSSet,
    pub pairs: Vec<Vec<(Simplex, Simplex)>>,
}

impl ProductData {
    pub fn components(&self, x: &Simplex) -> (Simplex, Simplex) {
        let (a, b) = &self.pairs[x.k][x.id];
        (
            Simplex { k: a.k, id: a.id, surj: x.surj.iter().map(|&v| a.surj[v]).collect() },
            Simplex { k: b.k, id: b.id, surj: x.surj.iter().map(|&v| b.surj[v]).collect() },
        )
    }

    /// Normal form of the pair `(x, y)` of equal-dimensional simplices.
    pub fn pair(&self, ids: &BTreeMap<(Simplex, Simplex), usize>, x: &Simplex, y: &Simplex) -> Option<Simplex> {
        let (xr, yr, t) = reduce_pair(x, y);
        let id = ids.get(&(xr.clone(), yr))?;
        Some(Simplex { k: xr.dim(), id: *id, surj: t })
    }

    pub fn pair_ids(&self) -> BTreeMap<(Simplex, Simplex), usize> {
        let mut m = BTreeMap::new();
        for row in &self.pairs {
            for (id, p) in row.iter().enumerate() {
                m.insert(p.clone(), id);
            }
        }
        m
    }
}

fn reduce_pair(x: &Simplex, y: &Simplex) -> (Simplex, Simplex, Vec<usize>) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = Vec::with_capacity(x.surj.len());
    for j in 0..x.surj.len() {
        let v = (x.surj[j], y.surj[j]);
        if xs.last().copied() != Some(v.0) || ys.last().copied() != Some(v.1) {
            xs.push(v.0);
            ys.push(v.1);
        }
        t.push(xs.len() - 1);
    }
    (
        Simplex { k: x.k, id: x.id, surj: xs },
        Simplex { k: y.k, id: y.id, surj: ys },
        t,
    )
}

/// Underlying product of simplicial sets, built from shuffle decompositions.
pub fn product_raw(a: &DecoratedSSet, b: &DecoratedSSet, cap: usize, truncate: bool) -> Result<ProductData> {
    let (da, db) = match (a.top_dim(), b.top_dim()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            let mut e = DecoratedSSet::empty(a.kind);
            e.cap = cap;
            return Ok(ProductData { sset: e, pairs: Vec::new() });
        }
    };
    if da + db > cap && !truncate {
        return Err(Error::DimensionCap { dim: da + db, cap });
    }
    let top = (da + db).min(cap);
    let mut pairs: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
    for m in 0..=top {
        let mut row = Vec::new();
        for p in 0..=m.min(da) {
            for q in 0..=m.min(db) {
                if p + q < m {
                    continue;
                }
                let sa = surjections(m, p);
                let sb = surjections(m, q);
                for ia in 0..a.count(p) {
                    for ib in 0..b.count(q) {
                        for s in &sa {
                            for t in &sb {
                                let joint = (0..m).all(|i| s[i] != s[i + 1] || t[i] != t[i + 1]);
                                if joint {
                                    row.push((
                                        Simplex { k: p, id: ia, surj: s.clone() },
                                        Simplex { k: q, id: ib, surj: t.clone() },
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        row.sort();
        pairs.push(row);
    }
    let mut sset = DecoratedSSet::empty(if a.kind == b.kind { a.kind } else { Kind::MB });
    sset.cap = cap;
    let mut ids: BTreeMap<(Simplex, Simplex), usize> = BTreeMap::new();
    for (m, row) in pairs.iter().enumerate() {
        if sset.dims.len() <= m {
            sset.dims.push(0);
            sset.faces.push(Vec::new());
        }
        for (x, y) in row {
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let (xr, yr, t) = reduce_pair(&a.face(x, i), &b.face(y, i));
                        let id = ids[&(xr.clone(), yr)];
                        Simplex { k: xr.dim(), id, surj: t }
                    })
                    .collect()
            };
            let id = sset.push(m, faces);
            ids.insert((x.clone(), y.clone()), id);
        }
    }
    Ok(ProductData { sset, pairs })
}

/// `A × B` with decorations taken pairwise.
pub fn product(a: &DecoratedSSet, b: &DecoratedSSet, cap: usize, truncate: bool) -> Result<DecoratedSSet> {
    let pd = product_raw(a, b, cap, truncate)?;
    let mut out = pd.sset.clone();
    for e in out.nondeg_simplices(1).collect::<Vec<_>>() {
        let (x, y) = pd.components(&e);
        if a.is_marked(&x) && b.is_marked(&y) {
            out.marked.insert(e.id);
        }
    }
    for t in out.nondeg_simplices(2).collect::<Vec<_>>() {
        let (x, y) = pd.components(&t);
        if a.is_thin(&x) && b.is_thin(&y) {
            out.thin.insert(t.id);
        }
        if a.is_lean(&x) && b.is_lean(&y) {
            out.lean.insert(t.id);
        }
    }
    out.normalize_kind();
    Ok(out)
}

/// The sub-object on the nondegenerate simplices passing `keep` (which must be
/// closed under faces), with its inclusion.
pub fn subobject(x: &DecoratedSSet, keep: impl Fn(&Simplex) -> bool) -> (DecoratedSSet, DecMap) {
    let mut out = DecoratedSSet::empty(x.kind);
    out.cap = x.cap;
    let mut renum: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut images: Vec<Vec<Simplex>> = Vec::new();
    for k in 0..x.dims.len() {
        images.push(Vec::new());
        for s in x.nondeg_simplices(k) {
            if !keep(&s) {
                continue;
            }
            let faces = if k == 0 {
                Vec::new()
            } else {
                x.faces[k][s.id]
                    .iter()
                    .map(|f| Simplex { k: f.k, id: renum[&(f.k, f.id)], surj: f.surj.clone() })
                    .collect()
            };
            let id = out.push(k, faces);
            renum.insert((k, s.id), id);
            images[k].push(s.clone());
            if k == 1 && x.marked.contains(&s.id) {
                out.marked.insert(id);
            }
            if k == 2 && x.thin.contains(&s.id) {
                out.thin.insert(id);
            }
            if k == 2 && x.lean.contains(&s.id) {
                out.lean.insert(id);
            }
        }
    }
    while images.len() > out.dims.len() {
        images.pop();
    }
    (out, DecMap { images })
}

/// A pushout `B ⊔_A C` with its two legs.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: DecoratedSSet,
    pub from_b: DecMap,
    pub from_c: DecMap,
}

/// Pushout of `g: A -> C` along a monomorphism `f: A -> B`.
pub fn pushout(a: &DecoratedSSet, b: &DecoratedSSet, c: &DecoratedSSet, f: &DecMap, g: &DecMap) -> Result<Pushout> {
    if !f.is_mono() {
        return Err(Error::UnsupportedPushout("first leg is not a monomorphism".into()));
    }
    f.check(a, b).map_err(Error::UnsupportedPushout)?;
    g.check(a, c).map_err(Error::UnsupportedPushout)?;
    let mut preimage: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, row) in f.images.iter().enumerate() {
        for (id, y) in row.iter().enumerate() {
            preimage.insert((y.k, y.id), id);
            debug_assert_eq!(y.k, k);
        }
    }
    let mut p = c.clone();
    p.cap = c.cap.max(b.cap);
    let top = b.dims.len().max(c.dims.len());
    while p.dims.len() < top {
        p.dims.push(0);
        p.faces.push(Vec::new());
    }
    let mut hb: Vec<Vec<Simplex>> = Vec::new();
    for k in 0..b.dims.len() {
        let mut row = Vec::with_capacity(b.count(k));
        for x in b.nondeg_simplices(k) {
            if let Some(&ia) = preimage.get(&(k, x.id)) {
                row.push(g.images[k][ia].clone());
            } else {
                let faces: Vec<Simplex> = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k)
                        .map(|i| {
                            let y = b.face(&x, i);
                            let base = &hb[y.k][y.id];
                            Simplex { k: base.k, id: base.id, surj: y.surj.iter().map(|&v| base.surj[v]).collect() }
                        })
                        .collect()
                };
                let id = p.push(k, faces);
                row.push(Simplex::nondeg(k, id));
            }
        }
        hb.push(row);
    }
    let from_b = DecMap { images: hb };
    for &e in &b.marked {
        let y = &from_b.images[1][e];
        if !y.is_degenerate() {
            p.marked.insert(y.id);
        }
    }
    for (set, dst) in [(&b.thin, 0), (&b.lean, 1)] {
        for &t in set {
            let y = &from_b.images[2][t];
            if !y.is_degenerate() {
                if dst == 0 {
                    p.thin.insert(y.id);
                } else {
                    p.lean.insert(y.id);
                }
            }
        }
    }
    p.normalize_kind();
    let from_c = DecMap::identity(c);
    Ok(Pushout { object: p, from_b, from_c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated_sset::{enumerate_maps, standard_simplex, Deco, Shape};

    fn plain(n: usize) -> DecoratedSSet {
        standard_simplex(n, Shape::Full, &Deco::plain(), 4).unwrap()
    }

    /// Nondegenerate k-simplices of Δᵐ×Δⁿ are strictly increasing chains of
    /// length k+1 in the grid poset.
    fn chain_count(m: usize, n: usize, k: usize) -> usize {
        let pts: Vec<(usize, usize)> =
            (0..=m).flat_map(|i| (0..=n).map(move |j| (i, j))).collect();
        fn go(pts: &[(usize, usize)], last: Option<(usize, usize)>, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            pts.iter()
                .filter(|p| last.is_none_or(|l| p.0 >= l.0 && p.1 >= l.1 && **p != l))
                .map(|&p| go(pts, Some(p), left - 1))
                .sum()
        }
        go(&pts, None, k + 1)
    }

    #[test]
    fn square_counts() {
        let sq = product(&plain(1), &plain(1), 4, false).unwrap();
        assert_eq!(sq.dims, vec![4, 5, 2]);
        sq.check_simplicial_identities(3).unwrap();
    }

    #[test]
    fn shuffle_formula() {
        for (m, n) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
            let p = product(&plain(m), &plain(n), 4, false).unwrap();
            for k in 0..=m + n {
                assert_eq!(p.count(k), chain_count(m, n, k), "Δ{m}×Δ{n} dim {k}");
            }
        }
        let p = product(&plain(1), &plain(2), 4, false).unwrap();
        assert_eq!(p.count(3), 3);
    }

    #[test]
    fn cap_overflow() {
        assert!(product(&plain(2), &plain(3), 4, false).is_err());
        let t = product(&plain(2), &plain(3), 4, true).unwrap();
        assert_eq!(t.dims.len(), 5);
    }

    #[test]
    fn wedge_of_edges() {
        let pt = plain(0);
        let e = plain(1);
        let maps = enumerate_maps(&pt, &e);
        let (at0, at1) = (&maps[0], &maps[1]);
        let po = pushout(&pt, &e, &e, at1, at0).unwrap();
        assert_eq!(po.object.dims, vec![3, 2]);
        po.from_b.check(&e, &po.object).unwrap();
        po.from_c.check(&e, &po.object).unwrap();
    }

    #[test]
    fn pushout_along_identity() {
        let c = plain(2);
        let a = plain(1);
        let g = &enumerate_maps(&a, &c)[3];
        let po = pushout(&a, &a, &c, &DecMap::identity(&a), g).unwrap();
        assert_eq!(po.object, c);
    }

    #[test]
    fn non_mono_rejected() {
        let e = plain(1);
        let pt = plain(0);
        let collapse = enumerate_maps(&e, &pt).remove(0);
        assert!(matches!(
            pushout(&e, &pt, &e, &collapse, &DecMap::identity(&e)),
            Err(Error::UnsupportedPushout(_))
        ));
    }
}
