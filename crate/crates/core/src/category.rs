//! Finite 1-categories given by explicit multiplication tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::decorated_sset::{materialize, DecoratedSSet, Kind, SimplexSource};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<usize>,
    /// Triples `[g, f, g∘f]`.
    comp: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCategory", into = "RawCategory")]
pub struct Category {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub ids: Vec<usize>,
    comp: BTreeMap<(usize, usize), usize>,
}

impl TryFrom<RawCategory> for Category {
    type Error = Error;
    fn try_from(r: RawCategory) -> Result<Self> {
        let c = Category::new(r.objects, r.arrows, r.ids, r.comp)?;
        let report = c.validate();
        if report.is_empty() {
            Ok(c)
        } else {
            Err(Error::Invalid(report.join("; ")))
        }
    }
}

impl From<Category> for RawCategory {
    fn from(c: Category) -> Self {
        RawCategory {
            comp: c.comp.iter().map(|(&(g, f), &h)| [g, f, h]).collect(),
            objects: c.objects,
            arrows: c.arrows,
            ids: c.ids,
        }
    }
}

impl Category {
    /// Builds a category from tables; indices are range-checked, laws are not.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, ids: Vec<usize>, comp: Vec<[usize; 3]>) -> Result<Self> {
        if ids.len() != objects.len() {
            return Err(Error::Input(format!("{} identities for {} objects", ids.len(), objects.len())));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(Error::Input(format!("arrow {} has an endpoint out of range", a.name)));
            }
        }
        let n = arrows.len();
        if ids.iter().any(|&i| i >= n) || comp.iter().flatten().any(|&i| i >= n) {
            return Err(Error::Input("arrow index out of range".into()));
        }
        let mut table = BTreeMap::new();
        for [g, f, h] in comp {
            if table.insert((g, f), h).is_some() {
                return Err(Error::Input(format!("composite of {g} after {f} given twice")));
            }
        }
        Ok(Category { objects, arrows, ids, comp: table })
    }

    pub fn empty() -> Self {
        Category { objects: vec![], arrows: vec![], ids: vec![], comp: BTreeMap::new() }
    }

    /// The poset on `0..n` generated by `le` (reflexive-transitive closure).
    pub fn poset(n: usize, le: &[(usize, usize)]) -> Self {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in le {
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    index.insert((i, j), arrows.len());
                    arrows.push(Arrow { name: format!("{i}<={j}"), src: i, tgt: j });
                }
            }
        }
        let ids = (0..n).map(|i| index[&(i, i)]).collect();
        let mut comp = BTreeMap::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    comp.insert((g, f), index[&(a, c)]);
                }
            }
        }
        Category { objects: (0..n).map(|i| i.to_string()).collect(), arrows, ids, comp }
    }

    pub fn point() -> Self {
        Self::poset(1, &[])
    }

    pub fn walking_arrow() -> Self {
        Self::poset(2, &[(0, 1)])
    }

    pub fn walking_iso() -> Self {
        let arrows = vec![
            Arrow { name: "id0".into(), src: 0, tgt: 0 },
            Arrow { name: "id1".into(), src: 1, tgt: 1 },
            Arrow { name: "f".into(), src: 0, tgt: 1 },
            Arrow { name: "g".into(), src: 1, tgt: 0 },
        ];
        let mut comp = BTreeMap::new();
        for f in 0..4 {
            let (s, t) = (arrows[f].src, arrows[f].tgt);
            comp.insert((t, f), f);
            comp.insert((f, s), f);
        }
        comp.insert((3, 2), 0);
        comp.insert((2, 3), 1);
        Category { objects: vec!["0".into(), "1".into()], arrows, ids: vec![0, 1], comp }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].tgt
    }

    pub fn compose(&self, g: usize, f: usize) -> usize {
        match self.comp.get(&(g, f)) {
            Some(&h) => h,
            None => panic!("composite {} ∘ {} missing from table", self.arrows[g].name, self.arrows[f].name),
        }
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.src(f) == a && self.tgt(f) == b).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .into_iter()
            .find(|&g| self.compose(g, f) == self.ids[a] && self.compose(f, g) == self.ids[b])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// Every violated category law, each with a witness.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (o, &i) in self.ids.iter().enumerate() {
            if self.src(i) != o || self.tgt(i) != o {
                out.push(format!("identity of {} has wrong endpoints", self.objects[o]));
            }
        }
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.comp.get(&(g, f))) {
                    (true, None) => out.push(format!(
                        "composite {} ∘ {} missing",
                        self.arrows[g].name, self.arrows[f].name
                    )),
                    (false, Some(_)) => out.push(format!(
                        "composite {} ∘ {} given for non-composable pair",
                        self.arrows[g].name, self.arrows[f].name
                    )),
                    (true, Some(&h)) if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) => out.push(
                        format!("composite {} ∘ {} has wrong endpoints", self.arrows[g].name, self.arrows[f].name),
                    ),
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..n {
            let (a, b) = (self.src(f), self.tgt(f));
            if self.compose(self.ids[b], f) != f || self.compose(f, self.ids[a]) != f {
                out.push(format!("unit law fails at {}", self.arrows[f].name));
            }
        }
        for f in 0..n {
            for g in self.hom_from(self.tgt(f)) {
                for h in self.hom_from(self.tgt(g)) {
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f) {
                        out.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        ));
                    }
                }
            }
        }
        out
    }

    fn hom_from(&self, a: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.src(f) == a).collect()
    }

    pub fn op(&self) -> Category {
        Category {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
                .collect(),
            ids: self.ids.clone(),
            comp: self.comp.iter().map(|(&(g, f), &h)| ((f, g), h)).collect(),
        }
    }

    /// The nerve up to dimension `top`.
    pub fn nerve(&self, top: usize) -> DecoratedSSet {
        materialize(&NerveSource(self), top).sset
    }

    /// Has an object admitting exactly one arrow to every object.
    pub fn initial_object(&self) -> Option<usize> {
        (0..self.n_objects()).find(|&i| (0..self.n_objects()).all(|x| self.hom(i, x).len() == 1))
    }

    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.n_objects()).find(|&t| (0..self.n_objects()).all(|x| self.hom(x, t).len() == 1))
    }

    /// Drops the given arrows; the result may fail validation.
    pub fn without_arrows(&self, drop: &BTreeSet<usize>) -> Category {
        let keep: Vec<usize> = (0..self.arrows.len()).filter(|f| !drop.contains(f)).collect();
        let renum: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        Category {
            objects: self.objects.clone(),
            arrows: keep.iter().map(|&f| self.arrows[f].clone()).collect(),
            ids: self.ids.iter().map(|i| renum.get(i).copied().unwrap_or(0)).collect(),
            comp: self
                .comp
                .iter()
                .filter_map(|(&(g, f), &h)| Some(((*renum.get(&g)?, *renum.get(&f)?), *renum.get(&h)?)))
                .collect(),
        }
    }
}

/// A nerve simplex: starting object and a string of composable arrows.
struct NerveSource<'a>(&'a Category);

impl SimplexSource for NerveSource<'_> {
    type Data = (usize, Vec<usize>);

    fn simplices(&self, n: usize) -> Vec<Self::Data> {
        let c = self.0;
        let mut out: Vec<Self::Data> = (0..c.n_objects()).map(|o| (o, Vec::new())).collect();
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|(o, path)| {
                    let end = path.last().map_or(o, |&f| c.tgt(f));
                    c.hom_from(end).into_iter().map(move |f| {
                        let mut p = path.clone();
                        p.push(f);
                        (o, p)
                    })
                })
                .collect();
        }
        out
    }

    fn restrict(&self, x: &Self::Data, theta: &[usize]) -> Self::Data {
        let c = self.0;
        let (o, path) = x;
        let vertex = |i: usize| if i == 0 { *o } else { c.tgt(path[i - 1]) };
        let arrow = |i: usize, j: usize| {
            (i..j).fold(c.ids[vertex(i)], |acc, k| c.compose(path[k], acc))
        };
        let start = vertex(theta[0]);
        (start, theta.windows(2).map(|w| arrow(w[0], w[1])).collect())
    }

    fn kind(&self) -> Kind {
        Kind::PLAIN
    }
}

/// A functor of finite categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functor1 {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor1 {
    pub fn identity(c: &Category) -> Self {
        Functor1 { obj: (0..c.n_objects()).collect(), mor: (0..c.arrows.len()).collect() }
    }

    /// The functor out of a poset determined by a monotone object map, if it exists.
    pub fn from_object_map(src: &Category, tgt: &Category, obj: Vec<usize>) -> Option<Self> {
        let mut mor = Vec::with_capacity(src.arrows.len());
        for f in 0..src.arrows.len() {
            let (a, b) = (obj[src.src(f)], obj[src.tgt(f)]);
            let h = tgt.hom(a, b);
            if h.len() != 1 {
                return None;
            }
            mor.push(h[0]);
        }
        let f = Functor1 { obj, mor };
        f.validate(src, tgt).is_empty().then_some(f)
    }

    pub fn validate(&self, src: &Category, tgt: &Category) -> Vec<String> {
        let mut out = Vec::new();
        if self.obj.len() != src.n_objects() || self.mor.len() != src.arrows.len() {
            return vec!["functor tables have the wrong size".into()];
        }
        if self.obj.iter().any(|&o| o >= tgt.n_objects()) || self.mor.iter().any(|&m| m >= tgt.arrows.len()) {
            return vec!["functor image out of range".into()];
        }
        for f in 0..src.arrows.len() {
            let m = self.mor[f];
            if tgt.src(m) != self.obj[src.src(f)] || tgt.tgt(m) != self.obj[src.tgt(f)] {
                out.push(format!("{} sent to an arrow with wrong endpoints", src.arrows[f].name));
            }
        }
        for (o, &i) in src.ids.iter().enumerate() {
            if self.mor[i] != tgt.ids[self.obj[o]] {
                out.push(format!("identity of {} not preserved", src.objects[o]));
            }
        }
        for (&(g, f), &h) in &src.comp {
            if tgt.try_compose(self.mor[g], self.mor[f]) != Some(self.mor[h]) {
                out.push(format!("composite {} ∘ {} not preserved", src.arrows[g].name, src.arrows[f].name));
            }
        }
        out
    }

    pub fn op(&self) -> Self {
        self.clone()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor1) -> Functor1 {
        Functor1 {
            obj: self.obj.iter().map(|&o| other.obj[o]).collect(),
            mor: self.mor.iter().map(|&m| other.mor[m]).collect(),
        }
    }
}

/// The slice `K_{/s}` of `p: K -> S`: objects `(k, u: p(k) -> s)`.
pub fn slice_over(k: &Category, s_cat: &Category, p: &Functor1, s: usize) -> (Category, Vec<(usize, usize)>) {
    let objs: Vec<(usize, usize)> = (0..k.n_objects())
        .flat_map(|o| s_cat.hom(p.obj[o], s).into_iter().map(move |u| (o, u)))
        .collect();
    comma_like(k, &objs, |(_, u), m, (_, v)| s_cat.try_compose(*v, p.mor[m]) == Some(*u))
}

/// The coslice `K_{s/}` of `p: K -> S`: objects `(k, u: s -> p(k))`.
pub fn slice_under(k: &Category, s_cat: &Category, p: &Functor1, s: usize) -> (Category, Vec<(usize, usize)>) {
    let objs: Vec<(usize, usize)> = (0..k.n_objects())
        .flat_map(|o| s_cat.hom(s, p.obj[o]).into_iter().map(move |u| (o, u)))
        .collect();
    comma_like(k, &objs, |(_, u), m, (_, v)| s_cat.try_compose(p.mor[m], *u) == Some(*v))
}

fn comma_like(
    k: &Category,
    objs: &[(usize, usize)],
    ok: impl Fn(&(usize, usize), usize, &(usize, usize)) -> bool,
) -> (Category, Vec<(usize, usize)>) {
    let mut arrows = Vec::new();
    let mut under = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            for m in k.hom(x.0, y.0) {
                if ok(x, m, y) {
                    arrows.push(Arrow { name: k.arrows[m].name.clone(), src: i, tgt: j });
                    under.push(m);
                }
            }
        }
    }
    let find = |i: usize, m: usize| {
        (0..arrows.len()).find(|&a| arrows[a].src == i && under[a] == m).expect("identity lies in the slice")
    };
    let ids = objs.iter().enumerate().map(|(i, x)| find(i, k.ids[x.0])).collect();
    let mut comp = BTreeMap::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[f].tgt == arrows[g].src {
                comp.insert((g, f), find(arrows[f].src, k.compose(under[g], under[f])));
            }
        }
    }
    let names = objs
        .iter()
        .map(|(o, u)| format!("({}, {})", k.objects[*o], u))
        .collect();
    (Category { objects: names, arrows, ids, comp }, objs.to_vec())
}
