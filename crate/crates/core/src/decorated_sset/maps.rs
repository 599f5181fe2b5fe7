use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{DecoratedSSet, Simplex};

/// A map of decorated simplicial sets, given on nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DecMap {
    pub images: Vec<Vec<Simplex>>,
}

impl DecMap {
    pub fn identity(x: &DecoratedSSet) -> Self {
        DecMap {
            images: (0..x.dims.len())
                .map(|k| x.nondeg_simplices(k).collect())
                .collect(),
        }
    }

    pub fn apply(&self, x: &Simplex) -> Simplex {
        let base = &self.images[x.k][x.id];
        Simplex { k: base.k, id: base.id, surj: x.surj.iter().map(|&v| base.surj[v]).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DecMap) -> DecMap {
        DecMap {
            images: self
                .images
                .iter()
                .map(|row| row.iter().map(|y| other.apply(y)).collect())
                .collect(),
        }
    }

    /// Checks the simplicial and decoration laws.
    pub fn check(&self, a: &DecoratedSSet, b: &DecoratedSSet) -> Result<(), String> {
        for k in 0..a.dims.len() {
            if self.images.get(k).map_or(0, |r| r.len()) != a.count(k) {
                return Err(format!("map is missing images in dimension {k}"));
            }
            for x in a.nondeg_simplices(k) {
                let y = self.apply(&x);
                if y.dim() != k || y.id >= b.count(y.k) {
                    return Err(format!("image of {x:?} is not a {k}-simplex of the target"));
                }
                for i in 0..=k {
                    if k > 0 && self.apply(&a.face(&x, i)) != b.face(&y, i) {
                        return Err(format!("map does not commute with d_{i} on {x:?}"));
                    }
                }
                if k == 1 && a.is_marked(&x) && !b.is_marked(&y) {
                    return Err(format!("marked edge {} not sent to a marked edge", x.id));
                }
                if k == 2 && a.is_thin(&x) && !b.is_thin(&y) {
                    return Err(format!("thin triangle {} not sent to a thin triangle", x.id));
                }
                if k == 2 && a.is_lean(&x) && !b.is_lean(&y) {
                    return Err(format!("lean triangle {} not sent to a lean triangle", x.id));
                }
            }
        }
        Ok(())
    }

    /// Injective on simplices.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.images.iter().flatten().all(|y| !y.is_degenerate() && seen.insert(y.clone()))
    }

    /// Bijective on nondegenerate simplices and reflecting every decoration.
    pub fn is_iso(&self, a: &DecoratedSSet, b: &DecoratedSSet) -> bool {
        if self.check(a, b).is_err() || !self.is_mono() {
            return false;
        }
        let top = a.dims.len().max(b.dims.len());
        if (0..top).any(|k| a.count(k) != b.count(k)) {
            return false;
        }
        let sent = |set: &std::collections::BTreeSet<usize>, k: usize| -> std::collections::BTreeSet<usize> {
            set.iter().map(|&i| self.images[k][i].id).collect()
        };
        sent(&a.marked, 1) == b.marked && sent(&a.thin, 2) == b.thin && sent(&a.lean, 2) == b.lean
    }
}

/// Target simplices indexed by vertex tuple, for candidate lookup.
pub struct TargetIndex {
    by_verts: HashMap<Vec<usize>, Vec<Simplex>>,
}

impl TargetIndex {
    pub fn new(b: &DecoratedSSet, max_dim: usize) -> Self {
        let mut by_verts: HashMap<Vec<usize>, Vec<Simplex>> = HashMap::new();
        for m in 0..=max_dim {
            for y in b.simplices(m) {
                by_verts.entry(b.vertices(&y)).or_default().push(y);
            }
        }
        for v in by_verts.values_mut() {
            v.sort();
        }
        TargetIndex { by_verts }
    }

    pub fn candidates(&self, verts: &[usize]) -> &[Simplex] {
        self.by_verts.get(verts).map_or(&[], |v| v.as_slice())
    }
}

/// Options for a constrained map search.
#[derive(Default)]
pub struct MapSearch<'a> {
    /// Prescribed images of some nondegenerate simplices, keyed by `(k, id)`.
    pub fixed: BTreeMap<(usize, usize), Simplex>,
    /// Extra per-simplex admissibility test `(source simplex, candidate image)`.
    pub allow: Option<&'a dyn Fn(&Simplex, &Simplex) -> bool>,
    pub limit: Option<usize>,
}

/// All decoration-preserving maps `a -> b`, lexicographic in their assignments.
pub fn enumerate_maps(a: &DecoratedSSet, b: &DecoratedSSet) -> Vec<DecMap> {
    let top = a.dims.len().saturating_sub(1);
    let idx = TargetIndex::new(b, top);
    search_maps(a, b, &idx, &MapSearch::default())
}

/// Backtracking search: vertices first, then edges, then triangles and up.
pub fn search_maps(
    a: &DecoratedSSet,
    b: &DecoratedSSet,
    idx: &TargetIndex,
    opts: &MapSearch<'_>,
) -> Vec<DecMap> {
    let order: Vec<(usize, usize)> = (0..a.dims.len())
        .flat_map(|k| (0..a.count(k)).map(move |id| (k, id)))
        .collect();
    let mut images: Vec<Vec<Option<Simplex>>> =
        (0..a.dims.len()).map(|k| vec![None; a.count(k)]).collect();
    let mut out = Vec::new();
    go(a, b, idx, opts, &order, 0, &mut images, &mut out);
    out
}

fn apply_partial(images: &[Vec<Option<Simplex>>], x: &Simplex) -> Simplex {
    let base = images[x.k][x.id].as_ref().expect("lower simplices assigned first");
    Simplex { k: base.k, id: base.id, surj: x.surj.iter().map(|&v| base.surj[v]).collect() }
}

#[allow(clippy::too_many_arguments)]
fn go(
    a: &DecoratedSSet,
    b: &DecoratedSSet,
    idx: &TargetIndex,
    opts: &MapSearch<'_>,
    order: &[(usize, usize)],
    pos: usize,
    images: &mut Vec<Vec<Option<Simplex>>>,
    out: &mut Vec<DecMap>,
) {
    if opts.limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    if pos == order.len() {
        out.push(DecMap {
            images: images
                .iter()
                .map(|r| r.iter().map(|s| s.clone().unwrap()).collect())
                .collect(),
        });
        return;
    }
    let (k, id) = order[pos];
    let x = Simplex::nondeg(k, id);
    let face_imgs: Vec<Simplex> = if k == 0 {
        Vec::new()
    } else {
        (0..=k).map(|i| apply_partial(images, &a.face(&x, i))).collect()
    };
    let verts: Option<Vec<usize>> = if k == 0 {
        None
    } else {
        Some((0..=k).map(|j| apply_partial(images, &a.restrict(&x, &[j])).id).collect())
    };
    let fixed = opts.fixed.get(&(k, id));
    let pool: Vec<Simplex> = match (fixed, &verts) {
        (Some(f), _) => vec![f.clone()],
        (None, None) => b.nondeg_simplices(0).collect(),
        (None, Some(v)) => idx.candidates(v).to_vec(),
    };
    for y in pool {
        if y.dim() != k {
            continue;
        }
        if k > 0 && (0..=k).any(|i| b.face(&y, i) != face_imgs[i]) {
            continue;
        }
        if k == 1 && a.is_marked(&x) && !b.is_marked(&y) {
            continue;
        }
        if k == 2 && ((a.is_thin(&x) && !b.is_thin(&y)) || (a.is_lean(&x) && !b.is_lean(&y))) {
            continue;
        }
        if let Some(f) = opts.allow {
            if !f(&x, &y) {
                continue;
            }
        }
        images[k][id] = Some(y);
        go(a, b, idx, opts, order, pos + 1, images, out);
        images[k][id] = None;
        if opts.limit.is_some_and(|l| out.len() >= l) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated_sset::{standard_simplex, Deco, DecoSet, Shape};

    fn simplex(n: usize, deco: Deco) -> DecoratedSSet {
        standard_simplex(n, Shape::Full, &deco, 4).unwrap()
    }

    /// Independent count: monotone vertex maps `[m] -> [n]`.
    fn brute_force_monotone(m: usize, n: usize) -> usize {
        crate::decorated_sset::monotone_maps(m, n).len()
    }

    #[test]
    fn point_into_simplex() {
        for n in 0..4 {
            let maps = enumerate_maps(&simplex(0, Deco::plain()), &simplex(n, Deco::plain()));
            assert_eq!(maps.len(), n + 1);
        }
    }

    #[test]
    fn interval_endomorphisms_match_oracle() {
        let d1 = simplex(1, Deco::plain());
        assert_eq!(brute_force_monotone(1, 1), 3);
        assert_eq!(enumerate_maps(&d1, &d1).len(), 3);
        for (m, n) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let maps = enumerate_maps(&simplex(m, Deco::plain()), &simplex(n, Deco::plain()));
            assert_eq!(maps.len(), brute_force_monotone(m, n));
        }
    }

    #[test]
    fn marking_filters_identity() {
        let sharp = simplex(1, Deco::mb(DecoSet::Sharp, DecoSet::Flat, DecoSet::Flat));
        let flat = simplex(1, Deco::mb(DecoSet::Flat, DecoSet::Flat, DecoSet::Flat));
        let maps = enumerate_maps(&sharp, &flat);
        assert_eq!(maps.len(), 2);
        assert!(maps.iter().all(|f| f.images[1][0].is_degenerate()));
    }

    #[test]
    fn maps_are_sorted_and_valid() {
        let a = simplex(2, Deco::plain());
        let b = simplex(2, Deco::plain());
        let maps = enumerate_maps(&a, &b);
        assert!(maps.windows(2).all(|w| w[0] < w[1]));
        for f in &maps {
            f.check(&a, &b).unwrap();
        }
    }
}
