use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{FibSimplex, Mode, TameSource};
use crate::decorated_sset::materialize;
use crate::error::Result;
use crate::strict_two_cat::{
    fr, FinPoset, FrCell1, FrCell2, FrObject, FrTwoCat, LaxFn, LeanRule, Marking2Cat, NerveSource, StrictTwoCat,
    TwoFunctor,
};

/// Outcome of matching the tame model against the nerve of `Fr`.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub top: usize,
    pub mode: &'static str,
    pub tame_counts: Vec<usize>,
    pub fr_counts: Vec<usize>,
    pub bijective: bool,
    pub decorations_match: bool,
    pub round_trips: bool,
    pub mismatches: Vec<String>,
}

impl ComparisonReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.decorations_match && self.round_trips
    }
}

struct FrIndex {
    obj: BTreeMap<FrObject, usize>,
    one: BTreeMap<FrCell1, usize>,
    two: BTreeMap<FrCell2, usize>,
}

impl FrIndex {
    fn new(frc: &FrTwoCat) -> Self {
        FrIndex {
            obj: frc.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect(),
            one: frc.cells1.iter().enumerate().map(|(i, &o)| (o, i)).collect(),
            two: frc.cells2.iter().enumerate().map(|(i, &o)| (o, i)).collect(),
        }
    }
}

/// The lax functor `[n] → Fr` carried by a tame simplex, if its data lands in `Fr`.
pub fn to_fr_simplex(frc: &FrTwoCat, c: &StrictTwoCat, d: &StrictTwoCat, x: &FibSimplex) -> Option<LaxFn> {
    let idx = FrIndex::new(frc);
    forward(frc, &idx, c, d, x)
}

fn forward(frc: &FrTwoCat, idx: &FrIndex, c: &StrictTwoCat, d: &StrictTwoCat, x: &FibSimplex) -> Option<LaxFn> {
    let n = x.dim();
    let e0 = |r| FinPoset::elt(0, r);
    let e1 = |r| FinPoset::elt(1, r);
    let mut obj = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let o = FrObject { d: x.phi.obj[e0(r)], c: x.rho.obj[r], u: x.phi.arrow(d, e0(r), e1(r)) };
        obj.push(*idx.obj.get(&o)?);
    }
    let chain = FinPoset::chain(n);
    let mut arr = BTreeMap::new();
    for (i, j) in chain.pairs() {
        let p = FrCell1 {
            src: obj[i],
            tgt: obj[j],
            a: x.phi.arrow(d, e0(i), e0(j)),
            alpha: x.rho.arrow(c, i, j),
            theta: x.phi.cell2(d, e0(i), e0(j), e1(j)),
        };
        arr.insert((i, j), *idx.one.get(&p)?);
    }
    let fb = &frc.cat.base;
    let mut cell = BTreeMap::new();
    for (i, j, k) in chain.triples() {
        let e = FrCell2 {
            src: arr[&(i, k)],
            tgt: fb.comp1(arr[&(j, k)], arr[&(i, j)]),
            psi: x.phi.cell2(d, e0(i), e0(j), e0(k)),
            zeta: x.rho.cell2(c, i, j, k),
        };
        cell.insert((i, j, k), *idx.two.get(&e)?);
    }
    Some(LaxFn { obj, arr, cell })
}

/// Rebuilds the tame simplex from a lax functor `[n] → Fr`.
pub fn from_fr_simplex(frc: &FrTwoCat, c: &StrictTwoCat, d: &StrictTwoCat, f: &TwoFunctor, xi: &LaxFn) -> FibSimplex {
    let n = xi.obj.len() - 1;
    let fb = &frc.cat.base;
    let ob = |r: usize| frc.objects[xi.obj[r]];
    let c1 = |i: usize, j: usize| frc.cells1[xi.arrow(fb, i, j)];
    let c2 = |i: usize, j: usize, k: usize| frc.cells2[xi.cell2(fb, i, j, k)];
    let rho = LaxFn {
        obj: (0..=n).map(|r| ob(r).c).collect(),
        arr: xi.arr.keys().map(|&(i, j)| ((i, j), c1(i, j).alpha)).collect(),
        cell: xi.cell.keys().map(|&(i, j, k)| ((i, j, k), c2(i, j, k).zeta)).collect(),
    };
    let prism = FinPoset::prism(n);
    let mut obj = vec![0; 2 * (n + 1)];
    for r in 0..=n {
        obj[FinPoset::elt(0, r)] = ob(r).d;
        obj[FinPoset::elt(1, r)] = f.obj[ob(r).c];
    }
    let fa = |i: usize, j: usize| f.one[rho.arrow(c, i, j)];
    let fz = |i: usize, j: usize, k: usize| f.two[rho.cell2(c, i, j, k)];
    let arrow = |p: usize, q: usize| -> usize {
        let ((mp, i), (mq, j)) = (FinPoset::coords(p), FinPoset::coords(q));
        match (mp, mq) {
            (0, 0) => c1(i, j).a,
            (1, 1) => fa(i, j),
            _ => d.comp1(fa(i, j), ob(i).u),
        }
    };
    let arr: BTreeMap<(usize, usize), usize> = prism.pairs().into_iter().map(|(p, q)| ((p, q), arrow(p, q))).collect();
    let mut cell = BTreeMap::new();
    for (p, q, r) in prism.triples() {
        let ((mp, i), (mq, j), (mr, k)) = (FinPoset::coords(p), FinPoset::coords(q), FinPoset::coords(r));
        let a = match (mp, mq, mr) {
            (0, 0, 0) => c2(i, j, k).psi,
            (1, 1, 1) => fz(i, j, k),
            (0, 1, 1) => d.whisker_r(fz(i, j, k), ob(i).u),
            _ => d.vcomp(d.whisker_l(fa(j, k), c1(i, j).theta), d.whisker_r(fz(i, j, k), ob(i).u)),
        };
        cell.insert((p, q, r), a);
    }
    FibSimplex { phi: LaxFn { obj, arr, cell }, rho }
}

/// Matches the tame model of `F(C)` against `N(Fr(C))` with the matching
/// decorations, up to dimension `top`.
pub fn compare_tame_fr(
    c: &Marking2Cat,
    d: &Marking2Cat,
    f: &TwoFunctor,
    mode: Mode,
    top: usize,
) -> Result<ComparisonReport> {
    let frc = fr(c, d, f)?;
    let (cb, db) = (&c.base, &d.base);
    let src = TameSource { c, d: db, f, mode };
    let tame = materialize(&src, top);
    let marked: BTreeSet<usize> = match mode {
        Mode::Natural => frc.cartesian.clone(),
        Mode::Dagger => frc.cat.marked.clone(),
    };
    let nsrc = NerveSource { c: &frc.cat.base, marked, lean: LeanRule::Cells(frc.cocartesian.clone()) };
    let nerve = materialize(&nsrc, top);
    let idx = FrIndex::new(&frc);

    let mut mismatches = Vec::new();
    let mut bijective = true;
    let mut decorations_match = true;
    let mut round_trips = true;
    for k in 0..=top {
        let mut hit = BTreeSet::new();
        for (id, x) in tame.data[k].iter().enumerate() {
            let Some(xi) = forward(&frc, &idx, cb, db, x) else {
                bijective = false;
                mismatches.push(format!("dim {k}: tame simplex {id} has no image in Fr"));
                continue;
            };
            let Some(&j) = nerve.ids[k].get(&xi) else {
                bijective = false;
                mismatches.push(format!("dim {k}: image of tame simplex {id} is degenerate"));
                continue;
            };
            if !hit.insert(j) {
                bijective = false;
                mismatches.push(format!("dim {k}: two tame simplices hit {j}"));
            }
            if from_fr_simplex(&frc, cb, db, f, &xi) != *x {
                round_trips = false;
                mismatches.push(format!("dim {k}: tame simplex {id} does not round-trip"));
            }
            let same = match k {
                1 => tame.sset.marked.contains(&id) == nerve.sset.marked.contains(&j),
                2 => {
                    tame.sset.thin.contains(&id) == nerve.sset.thin.contains(&j)
                        && tame.sset.lean.contains(&id) == nerve.sset.lean.contains(&j)
                }
                _ => true,
            };
            if !same {
                decorations_match = false;
                mismatches.push(format!("dim {k}: decorations differ at tame simplex {id}"));
            }
        }
        if hit.len() != nerve.data[k].len() {
            bijective = false;
            mismatches.push(format!("dim {k}: {} tame vs {} in N(Fr)", tame.data[k].len(), nerve.data[k].len()));
        }
        for xi in &nerve.data[k] {
            let y = from_fr_simplex(&frc, cb, db, f, xi);
            if !(y.is_well_formed(cb, db) && y.is_tame(db) && y.is_compatible(db, f)) || !src.over(&y.rho).contains(&y) {
                round_trips = false;
                mismatches.push(format!("dim {k}: inverse image is not a tame simplex"));
            }
        }
    }
    Ok(ComparisonReport {
        top,
        mode: match mode {
            Mode::Natural => "natural",
            Mode::Dagger => "dagger",
        },
        tame_counts: tame.sset.dims.clone(),
        fr_counts: nerve.sset.dims.clone(),
        bijective,
        decorations_match,
        round_trips,
        mismatches,
    })
}
