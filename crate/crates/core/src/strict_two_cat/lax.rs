use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::StrictTwoCat;

/// A finite poset whose element order `0..n` is a linear extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    pub n: usize,
    le: Vec<Vec<bool>>,
}

impl FinPoset {
    pub fn chain(n: usize) -> Self {
        let m = n + 1;
        FinPoset { n: m, le: (0..m).map(|i| (0..m).map(|j| i <= j).collect()).collect() }
    }

    /// `[1] × [n]` with `(m, r)` stored as element `2r + m`.
    pub fn prism(n: usize) -> Self {
        let m = 2 * (n + 1);
        let le = (0..m)
            .map(|a| (0..m).map(|b| a % 2 <= b % 2 && a / 2 <= b / 2).collect())
            .collect();
        FinPoset { n: m, le }
    }

    pub fn elt(m: usize, r: usize) -> usize {
        2 * r + m
    }

    pub fn coords(e: usize) -> (usize, usize) {
        (e % 2, e / 2)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn below(&self, e: usize) -> Vec<usize> {
        (0..e).filter(|&p| self.lt(p, e)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|q| self.below(q).into_iter().map(move |p| (p, q))).collect()
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for q in self.below(r) {
                for p in self.below(q) {
                    out.push((p, q, r));
                }
            }
        }
        out.sort();
        out
    }
}

/// A normal lax functor from a finite poset into a strict 2-category.
/// `cell[(p, q, r)]: arr[(p, r)] ⇒ arr[(q, r)] ∘ arr[(p, q)]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LaxFn {
    pub obj: Vec<usize>,
    pub arr: BTreeMap<(usize, usize), usize>,
    pub cell: BTreeMap<(usize, usize, usize), usize>,
}

impl LaxFn {
    pub fn arrow(&self, c: &StrictTwoCat, p: usize, q: usize) -> usize {
        if p == q {
            c.id1[self.obj[p]]
        } else {
            self.arr[&(p, q)]
        }
    }

    pub fn cell2(&self, c: &StrictTwoCat, p: usize, q: usize, r: usize) -> usize {
        if p == q || q == r {
            c.id2[self.arrow(c, p, r)]
        } else {
            self.cell[&(p, q, r)]
        }
    }

    /// Pullback along a monotone map `theta: src -> (poset of self)`.
    pub fn pullback(&self, c: &StrictTwoCat, src: &FinPoset, theta: &[usize]) -> LaxFn {
        LaxFn {
            obj: theta.iter().map(|&t| self.obj[t]).collect(),
            arr: src.pairs().into_iter().map(|(p, q)| ((p, q), self.arrow(c, theta[p], theta[q]))).collect(),
            cell: src
                .triples()
                .into_iter()
                .map(|(p, q, r)| ((p, q, r), self.cell2(c, theta[p], theta[q], theta[r])))
                .collect(),
        }
    }

    /// Image under a 2-functor.
    pub fn map(&self, f: &super::TwoFunctor) -> LaxFn {
        LaxFn {
            obj: self.obj.iter().map(|&o| f.obj[o]).collect(),
            arr: self.arr.iter().map(|(&k, &v)| (k, f.one[v])).collect(),
            cell: self.cell.iter().map(|(&k, &v)| (k, f.two[v])).collect(),
        }
    }

    pub fn cocycle_ok(&self, c: &StrictTwoCat, p: usize, q: usize, r: usize, s: usize) -> bool {
        let lhs = c.vcomp(c.whisker_l(self.arrow(c, r, s), self.cell2(c, p, q, r)), self.cell2(c, p, r, s));
        let rhs = c.vcomp(c.whisker_r(self.cell2(c, q, r, s), self.arrow(c, p, q)), self.cell2(c, p, q, s));
        lhs == rhs
    }

    /// Full well-formedness check against a poset.
    pub fn check(&self, c: &StrictTwoCat, poset: &FinPoset) -> bool {
        if self.obj.len() != poset.n {
            return false;
        }
        for (p, q) in poset.pairs() {
            match self.arr.get(&(p, q)) {
                Some(&f) if c.src1(f) == self.obj[p] && c.tgt1(f) == self.obj[q] => {}
                _ => return false,
            }
        }
        for (p, q, r) in poset.triples() {
            match self.cell.get(&(p, q, r)) {
                Some(&a)
                    if c.src2(a) == self.arr[&(p, r)]
                        && c.tgt2(a) == c.comp1(self.arr[&(q, r)], self.arr[&(p, q)]) => {}
                _ => return false,
            }
        }
        for (p, q, r) in poset.triples() {
            for s in (r + 1..poset.n).filter(|&s| poset.lt(r, s)) {
                if !self.cocycle_ok(c, p, q, r, s) {
                    return false;
                }
            }
        }
        true
    }
}

/// Prescribed values during enumeration.
#[derive(Clone, Debug, Default)]
pub struct LaxConstraints {
    pub obj: BTreeMap<usize, usize>,
    pub arr: BTreeMap<(usize, usize), usize>,
    pub cell: BTreeMap<(usize, usize, usize), usize>,
    /// Triples whose 2-cell must be an identity.
    pub identity_cells: BTreeSet<(usize, usize, usize)>,
    pub limit: Option<usize>,
}

enum Step {
    Obj(usize),
    Arr(usize, usize),
    Cell(usize, usize, usize),
}

struct Search<'a> {
    c: &'a StrictTwoCat,
    poset: &'a FinPoset,
    cons: &'a LaxConstraints,
    steps: Vec<Step>,
    hom1: Vec<Vec<Vec<usize>>>,
    cells: HashMap<(usize, usize), Vec<usize>>,
    out: Vec<LaxFn>,
}

/// All normal lax functors `poset -> c` meeting the constraints, in a fixed order.
pub fn enumerate_lax(c: &StrictTwoCat, poset: &FinPoset, cons: &LaxConstraints) -> Vec<LaxFn> {
    let mut steps = Vec::new();
    for e in 0..poset.n {
        steps.push(Step::Obj(e));
        let below = poset.below(e);
        for &p in &below {
            steps.push(Step::Arr(p, e));
        }
        for &p in &below {
            for &q in &below {
                if poset.lt(p, q) {
                    steps.push(Step::Cell(p, q, e));
                }
            }
        }
    }
    let n0 = c.n_objects();
    let mut hom1 = vec![vec![Vec::new(); n0]; n0];
    for f in 0..c.one_cells.len() {
        hom1[c.src1(f)][c.tgt1(f)].push(f);
    }
    let mut cells: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for a in 0..c.two_cells.len() {
        cells.entry((c.src2(a), c.tgt2(a))).or_default().push(a);
    }
    let mut s = Search { c, poset, cons, steps, hom1, cells, out: Vec::new() };
    let mut cur = LaxFn { obj: vec![usize::MAX; poset.n], arr: BTreeMap::new(), cell: BTreeMap::new() };
    s.go(0, &mut cur);
    s.out
}

impl Search<'_> {
    fn full(&self) -> bool {
        self.cons.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn go(&mut self, pos: usize, cur: &mut LaxFn) {
        if self.full() {
            return;
        }
        if pos == self.steps.len() {
            self.out.push(cur.clone());
            return;
        }
        match self.steps[pos] {
            Step::Obj(e) => {
                let pool: Vec<usize> = match self.cons.obj.get(&e) {
                    Some(&o) => vec![o],
                    None => (0..self.c.n_objects()).collect(),
                };
                for o in pool {
                    cur.obj[e] = o;
                    self.go(pos + 1, cur);
                }
                cur.obj[e] = usize::MAX;
            }
            Step::Arr(p, e) => {
                let all = &self.hom1[cur.obj[p]][cur.obj[e]];
                let pool: Vec<usize> = match self.cons.arr.get(&(p, e)) {
                    Some(f) if all.contains(f) => vec![*f],
                    Some(_) => vec![],
                    None => all.clone(),
                };
                for f in pool {
                    cur.arr.insert((p, e), f);
                    self.go(pos + 1, cur);
                }
                cur.arr.remove(&(p, e));
            }
            Step::Cell(p, q, e) => {
                let c = self.c;
                let src = cur.arr[&(p, e)];
                let tgt = c.comp1(cur.arr[&(q, e)], cur.arr[&(p, q)]);
                let all = self.cells.get(&(src, tgt)).cloned().unwrap_or_default();
                let pool: Vec<usize> = if self.cons.identity_cells.contains(&(p, q, e)) {
                    all.into_iter().filter(|&a| a == c.id2[src]).collect()
                } else if let Some(a) = self.cons.cell.get(&(p, q, e)) {
                    all.into_iter().filter(|x| x == a).collect()
                } else {
                    all
                };
                for a in pool {
                    cur.cell.insert((p, q, e), a);
                    // This cell completes the cocycles (x, p, q, e).
                    let ok = (0..p).filter(|&x| self.poset.lt(x, p)).all(|x| cur.cocycle_ok(c, x, p, q, e));
                    if ok {
                        self.go(pos + 1, cur);
                    }
                }
                cur.cell.remove(&(p, q, e));
            }
        }
    }
}
