//! Finite strict 2-categories, 2-functors, scaled nerves and lax slices.
//!
//! A 2-simplex of the nerve carries `σ: h ⇒ g∘f` where `f`, `g`, `h` are its
//! edges `0→1`, `1→2`, `0→2`.

mod fr;
mod lax;
mod nerve;

pub use fr::{fr, slice_fiber, FrCell1, FrCell2, FrObject, FrTwoCat, SliceFiber};
pub use lax::{enumerate_lax, FinPoset, LaxConstraints, LaxFn};
pub use nerve::{base_nerve, scaled_nerve, scaled_nerve_materialized, LeanRule, NerveSource};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::category::{Arrow, Category, Functor1};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawTwoCat {
    objects: Vec<String>,
    one_cells: Vec<Cell>,
    two_cells: Vec<Cell>,
    id1: Vec<usize>,
    id2: Vec<usize>,
    comp1: Vec<[usize; 3]>,
    vcomp: Vec<[usize; 3]>,
    hcomp: Vec<[usize; 3]>,
}

/// Objects, 1-cells and 2-cells are indexed by position. `comp1[(g, f)] = g∘f`,
/// `vcomp[(β, α)] = β·α`, `hcomp[(β, α)] = β*α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTwoCat", into = "RawTwoCat")]
pub struct StrictTwoCat {
    pub objects: Vec<String>,
    pub one_cells: Vec<Cell>,
    pub two_cells: Vec<Cell>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
    comp1: BTreeMap<(usize, usize), usize>,
    vcomp: BTreeMap<(usize, usize), usize>,
    hcomp: BTreeMap<(usize, usize), usize>,
}

impl TryFrom<RawTwoCat> for StrictTwoCat {
    type Error = Error;
    fn try_from(r: RawTwoCat) -> Result<Self> {
        StrictTwoCat::from_tables(r.objects, r.one_cells, r.two_cells, r.id1, r.id2, r.comp1, r.vcomp, r.hcomp)
    }
}

impl From<StrictTwoCat> for RawTwoCat {
    fn from(c: StrictTwoCat) -> Self {
        let flat = |m: &BTreeMap<(usize, usize), usize>| m.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        RawTwoCat {
            comp1: flat(&c.comp1),
            vcomp: flat(&c.vcomp),
            hcomp: flat(&c.hcomp),
            objects: c.objects,
            one_cells: c.one_cells,
            two_cells: c.two_cells,
            id1: c.id1,
            id2: c.id2,
        }
    }
}

fn table(name: &str, rows: Vec<[usize; 3]>, bound: usize) -> Result<BTreeMap<(usize, usize), usize>> {
    let mut m = BTreeMap::new();
    for (i, [a, b, c]) in rows.into_iter().enumerate() {
        if a >= bound || b >= bound || c >= bound {
            return Err(Error::Input(format!("{name} entry {i}: index out of range")));
        }
        if m.insert((a, b), c).is_some() {
            return Err(Error::Input(format!("{name} entry {i}: pair ({a}, {b}) given twice")));
        }
    }
    Ok(m)
}

impl StrictTwoCat {
    /// Builds from index tables; checks index ranges only. See [`StrictTwoCat::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        objects: Vec<String>,
        one_cells: Vec<Cell>,
        two_cells: Vec<Cell>,
        id1: Vec<usize>,
        id2: Vec<usize>,
        comp1: Vec<[usize; 3]>,
        vcomp: Vec<[usize; 3]>,
        hcomp: Vec<[usize; 3]>,
    ) -> Result<Self> {
        let (n0, n1, n2) = (objects.len(), one_cells.len(), two_cells.len());
        if id1.len() != n0 {
            return Err(Error::Input(format!("id1 has {} entries for {n0} objects", id1.len())));
        }
        if id2.len() != n1 {
            return Err(Error::Input(format!("id2 has {} entries for {n1} 1-cells", id2.len())));
        }
        for (i, c) in one_cells.iter().enumerate() {
            if c.src >= n0 || c.tgt >= n0 {
                return Err(Error::Input(format!("one_cells entry {i} ({}): endpoint out of range", c.name)));
            }
        }
        for (i, c) in two_cells.iter().enumerate() {
            if c.src >= n1 || c.tgt >= n1 {
                return Err(Error::Input(format!("two_cells entry {i} ({}): endpoint out of range", c.name)));
            }
        }
        if id1.iter().any(|&i| i >= n1) {
            return Err(Error::Input("id1: index out of range".into()));
        }
        if id2.iter().any(|&i| i >= n2) {
            return Err(Error::Input("id2: index out of range".into()));
        }
        Ok(StrictTwoCat {
            comp1: table("comp1", comp1, n1)?,
            vcomp: table("vcomp", vcomp, n2)?,
            hcomp: table("hcomp", hcomp, n2)?,
            objects,
            one_cells,
            two_cells,
            id1,
            id2,
        })
    }

    /// Parses and validates a JSON document.
    pub fn from_json(s: &str) -> Result<Self> {
        let c: StrictTwoCat = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        let report = c.validate();
        if report.is_empty() {
            Ok(c)
        } else {
            Err(Error::Invalid(report.join("; ")))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn terminal() -> Self {
        Self::from_category(&Category::point())
    }

    /// The locally discrete 2-category on a 1-category.
    pub fn from_category(c: &Category) -> Self {
        let n1 = c.arrows.len();
        let mut comp1 = Vec::new();
        for f in 0..n1 {
            for g in 0..n1 {
                if let Some(h) = c.try_compose(g, f) {
                    comp1.push([g, f, h]);
                }
            }
        }
        let vcomp = (0..n1).map(|f| [f, f, f]).collect();
        let hcomp = comp1.clone();
        Self::from_tables(
            c.objects.clone(),
            c.arrows.iter().map(|a| Cell { name: a.name.clone(), src: a.src, tgt: a.tgt }).collect(),
            c.arrows.iter().map(|a| Cell { name: format!("id_{}", a.name), src: 0, tgt: 0 }).collect(),
            c.ids.clone(),
            (0..n1).collect(),
            comp1,
            vcomp,
            hcomp,
        )
        .map(|mut t| {
            for f in 0..n1 {
                t.two_cells[f].src = f;
                t.two_cells[f].tgt = f;
            }
            t
        })
        .expect("tables of a category are in range")
    }

    /// `2[K]`: objects 0 and 1, `hom(0,1) = K`, `hom(1,0) = ∅`, trivial endo-homs.
    pub fn two_bracket(k: &Category) -> Self {
        let mut one_cells = vec![Cell { name: "id0".into(), src: 0, tgt: 0 }, Cell { name: "id1".into(), src: 1, tgt: 1 }];
        let mut two_cells = vec![Cell { name: "id_id0".into(), src: 0, tgt: 0 }, Cell { name: "id_id1".into(), src: 1, tgt: 1 }];
        for o in &k.objects {
            one_cells.push(Cell { name: o.clone(), src: 0, tgt: 1 });
        }
        for a in &k.arrows {
            two_cells.push(Cell { name: a.name.clone(), src: 2 + a.src, tgt: 2 + a.tgt });
        }
        let id2: Vec<usize> = [0, 1].into_iter().chain(k.ids.iter().map(|&i| 2 + i)).collect();
        let mut comp1 = vec![[0, 0, 0], [1, 1, 1]];
        let mut hcomp = vec![[0, 0, 0], [1, 1, 1]];
        let mut vcomp = vec![[0, 0, 0], [1, 1, 1]];
        for o in 0..k.n_objects() {
            comp1.push([1, 2 + o, 2 + o]);
            comp1.push([2 + o, 0, 2 + o]);
        }
        for f in 0..k.arrows.len() {
            hcomp.push([1, 2 + f, 2 + f]);
            hcomp.push([2 + f, 0, 2 + f]);
            for g in 0..k.arrows.len() {
                if let Some(h) = k.try_compose(g, f) {
                    vcomp.push([2 + g, 2 + f, 2 + h]);
                }
            }
        }
        Self::from_tables(
            vec!["0".into(), "1".into()],
            one_cells,
            two_cells,
            vec![0, 1],
            id2,
            comp1,
            vcomp,
            hcomp,
        )
        .expect("2[K] tables are in range")
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn src1(&self, f: usize) -> usize {
        self.one_cells[f].src
    }

    pub fn tgt1(&self, f: usize) -> usize {
        self.one_cells[f].tgt
    }

    pub fn src2(&self, a: usize) -> usize {
        self.two_cells[a].src
    }

    pub fn tgt2(&self, a: usize) -> usize {
        self.two_cells[a].tgt
    }

    pub fn comp1(&self, g: usize, f: usize) -> usize {
        *self.comp1.get(&(g, f)).unwrap_or_else(|| {
            panic!("1-cell composite {} ∘ {} missing", self.one_cells[g].name, self.one_cells[f].name)
        })
    }

    pub fn vcomp(&self, b: usize, a: usize) -> usize {
        *self.vcomp.get(&(b, a)).unwrap_or_else(|| {
            panic!("vertical composite {} · {} missing", self.two_cells[b].name, self.two_cells[a].name)
        })
    }

    pub fn hcomp(&self, b: usize, a: usize) -> usize {
        *self.hcomp.get(&(b, a)).unwrap_or_else(|| {
            panic!("horizontal composite {} * {} missing", self.two_cells[b].name, self.two_cells[a].name)
        })
    }

    /// `g * α` for a 1-cell `g` and 2-cell `α`.
    pub fn whisker_l(&self, g: usize, a: usize) -> usize {
        self.hcomp(self.id2[g], a)
    }

    /// `β * f` for a 2-cell `β` and 1-cell `f`.
    pub fn whisker_r(&self, b: usize, f: usize) -> usize {
        self.hcomp(b, self.id2[f])
    }

    pub fn hom1(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.one_cells.len()).filter(|&f| self.src1(f) == a && self.tgt1(f) == b).collect()
    }

    /// 2-cells `f ⇒ g`.
    pub fn cells(&self, f: usize, g: usize) -> Vec<usize> {
        (0..self.two_cells.len()).filter(|&a| self.src2(a) == f && self.tgt2(a) == g).collect()
    }

    pub fn inverse2(&self, a: usize) -> Option<usize> {
        let (f, g) = (self.src2(a), self.tgt2(a));
        self.cells(g, f)
            .into_iter()
            .find(|&b| self.vcomp.get(&(b, a)) == Some(&self.id2[f]) && self.vcomp.get(&(a, b)) == Some(&self.id2[g]))
    }

    pub fn is_invertible2(&self, a: usize) -> bool {
        self.inverse2(a).is_some()
    }

    fn has_invertible(&self, f: usize, g: usize) -> bool {
        self.cells(f, g).into_iter().any(|a| self.is_invertible2(a))
    }

    /// Some `β` with invertible 2-cells `βα ≅ id` and `αβ ≅ id`.
    pub fn is_equivalence(&self, f: usize) -> bool {
        let (a, b) = (self.src1(f), self.tgt1(f));
        self.hom1(b, a).into_iter().any(|g| {
            self.has_invertible(self.comp1(g, f), self.id1[a]) && self.has_invertible(self.comp1(f, g), self.id1[b])
        })
    }

    pub fn equivalences(&self) -> BTreeSet<usize> {
        (0..self.one_cells.len()).filter(|&f| self.is_equivalence(f)).collect()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn one_cell_index(&self, name: &str) -> Result<usize> {
        self.one_cells
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| Error::UnknownObject(format!("1-cell {name}")))
    }

    /// The hom-category `hom(a, b)`: 1-cells and 2-cells.
    pub fn hom_category(&self, a: usize, b: usize) -> (Category, Vec<usize>, Vec<usize>) {
        let objs = self.hom1(a, b);
        let pos: BTreeMap<usize, usize> = objs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let cells: Vec<usize> = (0..self.two_cells.len()).filter(|&c| pos.contains_key(&self.src2(c))).collect();
        let cpos: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let arrows = cells
            .iter()
            .map(|&c| Arrow { name: self.two_cells[c].name.clone(), src: pos[&self.src2(c)], tgt: pos[&self.tgt2(c)] })
            .collect();
        let mut comp = Vec::new();
        for &x in &cells {
            for &y in &cells {
                if let Some(z) = self.vcomp.get(&(y, x)) {
                    if let Some(&zi) = cpos.get(z) {
                        comp.push([cpos[&y], cpos[&x], zi]);
                    }
                }
            }
        }
        let ids = objs.iter().map(|&f| cpos[&self.id2[f]]).collect();
        let names = objs.iter().map(|&f| self.one_cells[f].name.clone()).collect();
        let c = Category::new(names, arrows, ids, comp).expect("hom tables are in range");
        (c, objs, cells)
    }

    /// Every violated law, each with a witness.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n1 = self.one_cells.len();
        let n2 = self.two_cells.len();
        let c1 = |i: usize| &self.one_cells[i].name;
        let c2 = |i: usize| &self.two_cells[i].name;
        for (o, &i) in self.id1.iter().enumerate() {
            if self.src1(i) != o || self.tgt1(i) != o {
                out.push(format!("id1: identity of {} has wrong endpoints", self.objects[o]));
            }
        }
        for (f, &i) in self.id2.iter().enumerate() {
            if self.src2(i) != f || self.tgt2(i) != f {
                out.push(format!("id2: identity of {} has wrong endpoints", c1(f)));
            }
        }
        for f in 0..n1 {
            for g in 0..n1 {
                let ok = self.tgt1(f) == self.src1(g);
                match (ok, self.comp1.get(&(g, f))) {
                    (true, None) => out.push(format!("comp1: composite {} ∘ {} missing", c1(g), c1(f))),
                    (false, Some(_)) => out.push(format!("comp1: entry for non-composable ({}, {})", c1(g), c1(f))),
                    (true, Some(&h)) if self.src1(h) != self.src1(f) || self.tgt1(h) != self.tgt1(g) => {
                        out.push(format!("comp1: {} ∘ {} has wrong endpoints", c1(g), c1(f)))
                    }
                    _ => {}
                }
            }
        }
        for a in 0..n2 {
            for b in 0..n2 {
                let ok = self.tgt2(a) == self.src2(b);
                match (ok, self.vcomp.get(&(b, a))) {
                    (true, None) => out.push(format!("vcomp: composite {} · {} missing", c2(b), c2(a))),
                    (false, Some(_)) => out.push(format!("vcomp: entry for non-composable ({}, {})", c2(b), c2(a))),
                    (true, Some(&h)) if self.src2(h) != self.src2(a) || self.tgt2(h) != self.tgt2(b) => {
                        out.push(format!("vcomp: {} · {} has wrong endpoints", c2(b), c2(a)))
                    }
                    _ => {}
                }
                let hok = self.tgt1(self.src2(a)) == self.src1(self.src2(b));
                match (hok, self.hcomp.get(&(b, a))) {
                    (true, None) => out.push(format!("hcomp: composite {} * {} missing", c2(b), c2(a))),
                    (false, Some(_)) => out.push(format!("hcomp: entry for non-composable ({}, {})", c2(b), c2(a))),
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for ((&(b, a), &h), _) in self.hcomp.iter().zip(0..) {
            if self.src2(h) != self.comp1(self.src2(b), self.src2(a)) || self.tgt2(h) != self.comp1(self.tgt2(b), self.tgt2(a)) {
                out.push(format!("hcomp: {} * {} has wrong endpoints", c2(b), c2(a)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // 1-cells: units and associativity.
        for f in 0..n1 {
            let (a, b) = (self.src1(f), self.tgt1(f));
            if self.comp1(self.id1[b], f) != f || self.comp1(f, self.id1[a]) != f {
                out.push(format!("comp1: unit law fails at {}", c1(f)));
            }
            for g in self.hom1_from(b) {
                for h in self.hom1_from(self.tgt1(g)) {
                    if self.comp1(h, self.comp1(g, f)) != self.comp1(self.comp1(h, g), f) {
                        out.push(format!("comp1: associativity fails at ({}, {}, {})", c1(h), c1(g), c1(f)));
                    }
                }
            }
        }
        // Hom-categories.
        for a in 0..n2 {
            let (f, g) = (self.src2(a), self.tgt2(a));
            if self.vcomp(self.id2[g], a) != a || self.vcomp(a, self.id2[f]) != a {
                out.push(format!("vcomp: unit law fails at {}", c2(a)));
            }
            for b in self.cells_from(g) {
                for c in self.cells_from(self.tgt2(b)) {
                    if self.vcomp(c, self.vcomp(b, a)) != self.vcomp(self.vcomp(c, b), a) {
                        out.push(format!("vcomp: associativity fails at ({}, {}, {})", c2(c), c2(b), c2(a)));
                    }
                }
            }
        }
        // Horizontal composition: identities, units, associativity, interchange.
        for (&(g, f), &h) in &self.comp1 {
            if self.hcomp(self.id2[g], self.id2[f]) != self.id2[h] {
                out.push(format!("hcomp: id2 of {} * id2 of {} is not id2 of the composite", c1(g), c1(f)));
            }
        }
        for a in 0..n2 {
            let f = self.src2(a);
            let (x, y) = (self.src1(f), self.tgt1(f));
            if self.hcomp(self.id2[self.id1[y]], a) != a || self.hcomp(a, self.id2[self.id1[x]]) != a {
                out.push(format!("hcomp: unit law fails at {}", c2(a)));
            }
        }
        let from_obj = |o: usize| -> Vec<usize> { (0..n2).filter(|&c| self.src1(self.src2(c)) == o).collect() };
        for a in 0..n2 {
            let y = self.tgt1(self.src2(a));
            for b in from_obj(y) {
                let z = self.tgt1(self.src2(b));
                for c in from_obj(z) {
                    if self.hcomp(c, self.hcomp(b, a)) != self.hcomp(self.hcomp(c, b), a) {
                        out.push(format!("hcomp: associativity fails at ({}, {}, {})", c2(c), c2(b), c2(a)));
                    }
                }
                for a2 in self.cells_from(self.tgt2(a)) {
                    for b2 in self.cells_from(self.tgt2(b)) {
                        let lhs = self.hcomp(self.vcomp(b2, b), self.vcomp(a2, a));
                        let rhs = self.vcomp(self.hcomp(b2, a2), self.hcomp(b, a));
                        if lhs != rhs {
                            out.push(format!(
                                "interchange fails on the square ({}, {}; {}, {})",
                                c2(b2),
                                c2(b),
                                c2(a2),
                                c2(a)
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    fn hom1_from(&self, a: usize) -> Vec<usize> {
        (0..self.one_cells.len()).filter(|&f| self.src1(f) == a).collect()
    }

    fn cells_from(&self, f: usize) -> Vec<usize> {
        (0..self.two_cells.len()).filter(|&a| self.src2(a) == f).collect()
    }

    /// Overwrites one horizontal composite; for negative controls.
    pub fn corrupt_hcomp(&mut self, b: usize, a: usize, value: usize) {
        self.hcomp.insert((b, a), value);
    }

    /// The sub-2-category on the cells passing the filters, renumbered in order.
    /// The filters must pick a sub-2-category (closed under identities and composites).
    pub fn sub(
        &self,
        keep0: impl Fn(usize) -> bool,
        keep1: impl Fn(usize) -> bool,
        keep2: impl Fn(usize) -> bool,
    ) -> (StrictTwoCat, [Vec<usize>; 3]) {
        let o: Vec<usize> = (0..self.n_objects()).filter(|&x| keep0(x)).collect();
        let e: Vec<usize> = (0..self.one_cells.len())
            .filter(|&f| keep1(f) && keep0(self.src1(f)) && keep0(self.tgt1(f)))
            .collect();
        let es: BTreeSet<usize> = e.iter().copied().collect();
        let t: Vec<usize> = (0..self.two_cells.len())
            .filter(|&a| keep2(a) && es.contains(&self.src2(a)) && es.contains(&self.tgt2(a)))
            .collect();
        let ro: BTreeMap<usize, usize> = o.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let re: BTreeMap<usize, usize> = e.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rt: BTreeMap<usize, usize> = t.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let restrict = |m: &BTreeMap<(usize, usize), usize>, r: &BTreeMap<usize, usize>| -> Vec<[usize; 3]> {
            m.iter()
                .filter_map(|(&(a, b), &c)| Some([*r.get(&a)?, *r.get(&b)?, *r.get(&c)?]))
                .collect()
        };
        let sub = StrictTwoCat::from_tables(
            o.iter().map(|&x| self.objects[x].clone()).collect(),
            e.iter()
                .map(|&f| Cell { name: self.one_cells[f].name.clone(), src: ro[&self.src1(f)], tgt: ro[&self.tgt1(f)] })
                .collect(),
            t.iter()
                .map(|&a| Cell { name: self.two_cells[a].name.clone(), src: re[&self.src2(a)], tgt: re[&self.tgt2(a)] })
                .collect(),
            o.iter().map(|&x| re[&self.id1[x]]).collect(),
            e.iter().map(|&f| rt[&self.id2[f]]).collect(),
            restrict(&self.comp1, &re),
            restrict(&self.vcomp, &rt),
            restrict(&self.hcomp, &rt),
        )
        .expect("sub-2-category tables are in range");
        (sub, [o, e, t])
    }
}

/// A strict 2-category with a set of marked 1-cells, closed under identities
/// and equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking2Cat {
    pub base: StrictTwoCat,
    pub marked: BTreeSet<usize>,
}

impl Marking2Cat {
    pub fn new(base: StrictTwoCat, marked: impl IntoIterator<Item = usize>) -> Self {
        let mut m: BTreeSet<usize> = marked.into_iter().collect();
        m.extend(base.id1.iter().copied());
        m.extend(base.equivalences());
        Marking2Cat { base, marked: m }
    }

    /// Only identities and equivalences marked.
    pub fn minimal(base: StrictTwoCat) -> Self {
        Self::new(base, [])
    }

    pub fn sharp(base: StrictTwoCat) -> Self {
        let all = 0..base.one_cells.len();
        Self::new(base, all)
    }

    pub fn is_marked(&self, f: usize) -> bool {
        self.marked.contains(&f)
    }
}

/// A strict 2-functor given on all cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFunctor {
    pub obj: Vec<usize>,
    pub one: Vec<usize>,
    pub two: Vec<usize>,
}

impl TwoFunctor {
    pub fn identity(c: &StrictTwoCat) -> Self {
        TwoFunctor {
            obj: (0..c.n_objects()).collect(),
            one: (0..c.one_cells.len()).collect(),
            two: (0..c.two_cells.len()).collect(),
        }
    }

    /// A functor of 1-categories between their locally discrete 2-categories.
    pub fn from_functor(p: &Functor1) -> Self {
        TwoFunctor { obj: p.obj.clone(), one: p.mor.clone(), two: p.mor.clone() }
    }

    /// `𝕡: 2[K] -> 2[S]` induced by `p: K -> S`.
    pub fn two_bracket(p: &Functor1) -> Self {
        TwoFunctor {
            obj: vec![0, 1],
            one: [0, 1].into_iter().chain(p.obj.iter().map(|&o| 2 + o)).collect(),
            two: [0, 1].into_iter().chain(p.mor.iter().map(|&m| 2 + m)).collect(),
        }
    }

    /// The inclusion of a sub-2-category from the index lists of [`StrictTwoCat::sub`].
    pub fn inclusion(idx: &[Vec<usize>; 3]) -> Self {
        TwoFunctor { obj: idx[0].clone(), one: idx[1].clone(), two: idx[2].clone() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TwoFunctor) -> TwoFunctor {
        TwoFunctor {
            obj: self.obj.iter().map(|&x| other.obj[x]).collect(),
            one: self.one.iter().map(|&x| other.one[x]).collect(),
            two: self.two.iter().map(|&x| other.two[x]).collect(),
        }
    }

    pub fn validate(&self, c: &StrictTwoCat, d: &StrictTwoCat) -> Vec<String> {
        if self.obj.len() != c.n_objects() || self.one.len() != c.one_cells.len() || self.two.len() != c.two_cells.len() {
            return vec!["functor tables have the wrong size".into()];
        }
        if self.obj.iter().any(|&x| x >= d.n_objects())
            || self.one.iter().any(|&x| x >= d.one_cells.len())
            || self.two.iter().any(|&x| x >= d.two_cells.len())
        {
            return vec!["functor image out of range".into()];
        }
        let mut out = Vec::new();
        for f in 0..c.one_cells.len() {
            let g = self.one[f];
            if d.src1(g) != self.obj[c.src1(f)] || d.tgt1(g) != self.obj[c.tgt1(f)] {
                out.push(format!("1-cell {} sent to a 1-cell with wrong endpoints", c.one_cells[f].name));
            }
        }
        for a in 0..c.two_cells.len() {
            let b = self.two[a];
            if d.src2(b) != self.one[c.src2(a)] || d.tgt2(b) != self.one[c.tgt2(a)] {
                out.push(format!("2-cell {} sent to a 2-cell with wrong endpoints", c.two_cells[a].name));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (o, &i) in c.id1.iter().enumerate() {
            if self.one[i] != d.id1[self.obj[o]] {
                out.push(format!("identity 1-cell of {} not preserved", c.objects[o]));
            }
        }
        for (f, &i) in c.id2.iter().enumerate() {
            if self.two[i] != d.id2[self.one[f]] {
                out.push(format!("identity 2-cell of {} not preserved", c.one_cells[f].name));
            }
        }
        for (&(g, f), &h) in &c.comp1 {
            if d.comp1(self.one[g], self.one[f]) != self.one[h] {
                out.push(format!("composite {} ∘ {} not preserved", c.one_cells[g].name, c.one_cells[f].name));
            }
        }
        for (&(b, a), &h) in &c.vcomp {
            if d.vcomp(self.two[b], self.two[a]) != self.two[h] {
                out.push(format!("vertical composite {} · {} not preserved", c.two_cells[b].name, c.two_cells[a].name));
            }
        }
        for (&(b, a), &h) in &c.hcomp {
            if d.hcomp(self.two[b], self.two[a]) != self.two[h] {
                out.push(format!("horizontal composite {} * {} not preserved", c.two_cells[b].name, c.two_cells[a].name));
            }
        }
        out
    }

    pub fn check_marking(&self, c: &Marking2Cat, d: &Marking2Cat) -> Result<()> {
        for &f in &c.marked {
            if !d.is_marked(self.one[f]) {
                return Err(Error::NotMarkingPreserving(format!(
                    "marked 1-cell {} sent to unmarked {}",
                    c.base.one_cells[f].name, d.base.one_cells[self.one[f]].name
                )));
            }
        }
        Ok(())
    }
}

/// The walking 2-cell: objects 0, 1; 1-cells `f, g: 0 -> 1`; one 2-cell `f ⇒ g`.
/// This is `2[walking arrow]`.
pub fn walking_two_cell() -> StrictTwoCat {
    let mut k = Category::walking_arrow();
    k.objects = vec!["f".into(), "g".into()];
    StrictTwoCat::two_bracket(&k)
}
