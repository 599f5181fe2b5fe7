use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Cell, Marking2Cat, StrictTwoCat, TwoFunctor};
use crate::error::{Error, Result};

/// `u: d → f(c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FrObject {
    pub d: usize,
    pub c: usize,
    pub u: usize,
}

/// `(a, α, θ: f(α)∘u ⇒ v∘a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FrCell1 {
    pub src: usize,
    pub tgt: usize,
    pub a: usize,
    pub alpha: usize,
    pub theta: usize,
}

/// `(ψ: a₀ ⇒ a₁, ζ: α₀ ⇒ α₁)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FrCell2 {
    pub src: usize,
    pub tgt: usize,
    pub psi: usize,
    pub zeta: usize,
}

/// The lax arrow 2-category of `f: C → D` with its marking and projection to `D`.
#[derive(Clone, Debug)]
pub struct FrTwoCat {
    pub cat: Marking2Cat,
    pub objects: Vec<FrObject>,
    pub cells1: Vec<FrCell1>,
    pub cells2: Vec<FrCell2>,
    pub cartesian: BTreeSet<usize>,
    pub cocartesian: BTreeSet<usize>,
    pub projection: TwoFunctor,
}

impl FrTwoCat {
    pub fn object_index(&self, o: FrObject) -> Option<usize> {
        self.objects.iter().position(|x| *x == o)
    }
}

/// Builds `Fr(C)†` for a marking-preserving `f: C† → D†`.
pub fn fr(c: &Marking2Cat, d: &Marking2Cat, f: &TwoFunctor) -> Result<FrTwoCat> {
    let report = f.validate(&c.base, &d.base);
    if !report.is_empty() {
        return Err(Error::Input(report.join("; ")));
    }
    f.check_marking(c, d).map_err(|e| Error::Input(e.to_string()))?;
    let (cc, dd) = (&c.base, &d.base);

    let mut objects = Vec::new();
    for d0 in 0..dd.n_objects() {
        for c0 in 0..cc.n_objects() {
            for u in dd.hom1(d0, f.obj[c0]) {
                objects.push(FrObject { d: d0, c: c0, u });
            }
        }
    }
    let mut cells1 = Vec::new();
    for (x, ox) in objects.iter().enumerate() {
        for (y, oy) in objects.iter().enumerate() {
            for a in dd.hom1(ox.d, oy.d) {
                for alpha in cc.hom1(ox.c, oy.c) {
                    let s = dd.comp1(f.one[alpha], ox.u);
                    let t = dd.comp1(oy.u, a);
                    for theta in dd.cells(s, t) {
                        cells1.push(FrCell1 { src: x, tgt: y, a, alpha, theta });
                    }
                }
            }
        }
    }
    let idx1: HashMap<FrCell1, usize> = cells1.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut cells2 = Vec::new();
    for (i, p0) in cells1.iter().enumerate() {
        for (j, p1) in cells1.iter().enumerate() {
            if p0.src != p1.src || p0.tgt != p1.tgt {
                continue;
            }
            let (u, v) = (objects[p0.src].u, objects[p0.tgt].u);
            for psi in dd.cells(p0.a, p1.a) {
                for zeta in cc.cells(p0.alpha, p1.alpha) {
                    let lhs = dd.vcomp(p1.theta, dd.whisker_r(f.two[zeta], u));
                    let rhs = dd.vcomp(dd.whisker_l(v, psi), p0.theta);
                    if lhs == rhs {
                        cells2.push(FrCell2 { src: i, tgt: j, psi, zeta });
                    }
                }
            }
        }
    }
    let idx2: HashMap<FrCell2, usize> = cells2.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let id1: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(x, o)| idx1[&FrCell1 { src: x, tgt: x, a: dd.id1[o.d], alpha: cc.id1[o.c], theta: dd.id2[o.u] }])
        .collect();
    let id2: Vec<usize> = cells1
        .iter()
        .enumerate()
        .map(|(i, p)| idx2[&FrCell2 { src: i, tgt: i, psi: dd.id2[p.a], zeta: cc.id2[p.alpha] }])
        .collect();
    let compose1 = |chi: &FrCell1, phi: &FrCell1| -> FrCell1 {
        let theta = dd.vcomp(dd.whisker_r(chi.theta, phi.a), dd.whisker_l(f.one[chi.alpha], phi.theta));
        FrCell1 {
            src: phi.src,
            tgt: chi.tgt,
            a: dd.comp1(chi.a, phi.a),
            alpha: cc.comp1(chi.alpha, phi.alpha),
            theta,
        }
    };
    let mut comp1 = Vec::new();
    for (i, phi) in cells1.iter().enumerate() {
        for (j, chi) in cells1.iter().enumerate() {
            if phi.tgt == chi.src {
                comp1.push([j, i, idx1[&compose1(chi, phi)]]);
            }
        }
    }
    let mut vcomp = Vec::new();
    let mut hcomp = Vec::new();
    for (i, e) in cells2.iter().enumerate() {
        for (j, e2) in cells2.iter().enumerate() {
            if e.tgt == e2.src {
                let v = FrCell2 {
                    src: e.src,
                    tgt: e2.tgt,
                    psi: dd.vcomp(e2.psi, e.psi),
                    zeta: cc.vcomp(e2.zeta, e.zeta),
                };
                vcomp.push([j, i, idx2[&v]]);
            }
            if cells1[e.src].tgt == cells1[e2.src].src {
                let h = FrCell2 {
                    src: idx1[&compose1(&cells1[e2.src], &cells1[e.src])],
                    tgt: idx1[&compose1(&cells1[e2.tgt], &cells1[e.tgt])],
                    psi: dd.hcomp(e2.psi, e.psi),
                    zeta: cc.hcomp(e2.zeta, e.zeta),
                };
                hcomp.push([j, i, idx2[&h]]);
            }
        }
    }
    let name_obj = |o: &FrObject| format!("({}|{}|{})", dd.objects[o.d], cc.objects[o.c], dd.one_cells[o.u].name);
    let base = StrictTwoCat::from_tables(
        objects.iter().map(name_obj).collect(),
        cells1
            .iter()
            .map(|p| Cell {
                name: format!(
                    "({}|{}|{})",
                    dd.one_cells[p.a].name, cc.one_cells[p.alpha].name, dd.two_cells[p.theta].name
                ),
                src: p.src,
                tgt: p.tgt,
            })
            .collect(),
        cells2
            .iter()
            .map(|e| Cell {
                name: format!("({}|{})", dd.two_cells[e.psi].name, cc.two_cells[e.zeta].name),
                src: e.src,
                tgt: e.tgt,
            })
            .collect(),
        id1,
        id2,
        comp1,
        vcomp,
        hcomp,
    )?;
    let cartesian: BTreeSet<usize> = cells1
        .iter()
        .enumerate()
        .filter(|(_, p)| cc.is_equivalence(p.alpha) && dd.is_invertible2(p.theta))
        .map(|(i, _)| i)
        .collect();
    let marked: BTreeSet<usize> = cells1
        .iter()
        .enumerate()
        .filter(|(i, p)| cartesian.contains(i) || (c.is_marked(p.alpha) && dd.is_invertible2(p.theta)))
        .map(|(i, _)| i)
        .collect();
    let cocartesian = cells2
        .iter()
        .enumerate()
        .filter(|(_, e)| cc.is_invertible2(e.zeta))
        .map(|(i, _)| i)
        .collect();
    let projection = TwoFunctor {
        obj: objects.iter().map(|o| o.d).collect(),
        one: cells1.iter().map(|p| p.a).collect(),
        two: cells2.iter().map(|e| e.psi).collect(),
    };
    Ok(FrTwoCat {
        cat: Marking2Cat { base, marked },
        objects,
        cells1,
        cells2,
        cartesian,
        cocartesian,
        projection,
    })
}

/// The fibre of `Fr(C)` over `d`: objects `u: d → f(c)`, 1-cells with `a = id_d`.
#[derive(Clone, Debug)]
pub struct SliceFiber {
    pub cat: Marking2Cat,
    /// Positions in `Fr(C)` of the objects, 1-cells and 2-cells.
    pub index: [Vec<usize>; 3],
}

impl SliceFiber {
    /// Slice object with the given `(c, u)`.
    pub fn find(&self, frc: &FrTwoCat, c: usize, u: usize) -> Option<usize> {
        self.index[0].iter().position(|&x| frc.objects[x].c == c && frc.objects[x].u == u)
    }
}

pub fn slice_fiber(frc: &FrTwoCat, d_cat: &StrictTwoCat, d: usize) -> Result<SliceFiber> {
    if d >= d_cat.n_objects() {
        return Err(Error::UnknownObject(format!("object {d} of the base")));
    }
    let id_d = d_cat.id1[d];
    let id_id = d_cat.id2[id_d];
    let (base, index) = frc.cat.base.sub(
        |x| frc.objects[x].d == d,
        |p| frc.cells1[p].a == id_d,
        |e| frc.cells2[e].psi == id_id,
    );
    let marked: Vec<usize> = index[1]
        .iter()
        .enumerate()
        .filter(|(_, &p)| frc.cat.is_marked(p))
        .map(|(i, _)| i)
        .collect();
    Ok(SliceFiber { cat: Marking2Cat::new(base, marked), index })
}
