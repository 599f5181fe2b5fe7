//! Partially lax limits of cospans and arrows of finite categories, as
//! strict 1-categorical models, with a brute-force cone oracle.

mod oracle;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use oracle::{cone_oracle, default_probes, enumerate_functors, ConeOracleReport, Probe, ProbeMorphism, ProbeResult};

use crate::category::{Arrow, Category, Functor1};
use crate::error::{Error, Result};

/// Which legs of the cospan `A --F--> C <--G-- B` are marked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegMarking {
    pub f: bool,
    pub g: bool,
}

impl LegMarking {
    pub const NONE: LegMarking = LegMarking { f: false, g: false };
    pub const G: LegMarking = LegMarking { f: false, g: true };
    pub const F: LegMarking = LegMarking { f: true, g: false };
    pub const BOTH: LegMarking = LegMarking { f: true, g: true };
}

/// The leg that the directed pullback keeps invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkedLeg {
    /// `G: B → C` marked; objects `(a, b, α: F(a) → G(b))`.
    G,
    /// `F: A → C` marked; objects `(a, b, β: G(b) → F(a))`.
    F,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cospan {
    pub a: Category,
    pub b: Category,
    pub c: Category,
    pub f: Functor1,
    pub g: Functor1,
    pub marking: LegMarking,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ConeDiagram {
    Cospan(Cospan),
    /// `E: A → B` over the walking arrow.
    Arrow { a: Category, b: Category, e: Functor1, marked: bool },
}

impl ConeDiagram {
    pub fn validate(&self) -> Result<()> {
        let (fs, gs) = match self {
            ConeDiagram::Cospan(s) => (s.f.validate(&s.a, &s.c), s.g.validate(&s.b, &s.c)),
            ConeDiagram::Arrow { a, b, e, .. } => (e.validate(a, b), Vec::new()),
        };
        let mut all: Vec<String> = fs.into_iter().map(|p| format!("F: {p}")).collect();
        all.extend(gs.into_iter().map(|p| format!("G: {p}")));
        for (name, c) in self.categories() {
            all.extend(c.validate().into_iter().map(|p| format!("{name}: {p}")));
        }
        if all.is_empty() {
            Ok(())
        } else {
            Err(Error::Input(all.join("; ")))
        }
    }

    fn categories(&self) -> Vec<(&'static str, &Category)> {
        match self {
            ConeDiagram::Cospan(s) => vec![("A", &s.a), ("B", &s.b), ("C", &s.c)],
            ConeDiagram::Arrow { a, b, .. } => vec![("A", a), ("B", b)],
        }
    }

    /// An arrow `E: A → B` is read as the cospan `A → B ← B` with the
    /// identity leg marked; its cones are those of the arrow up to a
    /// canonical invertible leg.
    pub fn to_cospan(&self) -> Cospan {
        match self {
            ConeDiagram::Cospan(s) => s.clone(),
            ConeDiagram::Arrow { a, b, e, marked } => Cospan {
                a: a.clone(),
                b: b.clone(),
                c: b.clone(),
                f: e.clone(),
                g: Functor1::identity(b),
                marking: LegMarking { f: *marked, g: true },
            },
        }
    }
}

/// A category `P` with a cone over a cospan: projections to `A`, `B`, `C`
/// and legs `F∘pa ⇒ pc`, `G∘pb ⇒ pc` given by their components.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitCandidate {
    pub cat: Category,
    pub pa: Functor1,
    pub pb: Functor1,
    pub pc: Functor1,
    pub leg_a: Vec<usize>,
    pub leg_b: Vec<usize>,
}

impl LimitCandidate {
    /// Every way the stored cone fails to be a cone over `s`.
    pub fn validate(&self, s: &Cospan) -> Vec<String> {
        let p = &self.cat;
        let mut out = p.validate();
        for (name, func, tgt) in [("pa", &self.pa, &s.a), ("pb", &self.pb, &s.b), ("pc", &self.pc, &s.c)] {
            out.extend(func.validate(p, tgt).into_iter().map(|e| format!("{name}: {e}")));
        }
        if !out.is_empty() {
            return out;
        }
        if self.leg_a.len() != p.n_objects() || self.leg_b.len() != p.n_objects() {
            return vec!["leg tables have the wrong size".into()];
        }
        for (side, leg, proj, func, marked) in
            [("a", &self.leg_a, &self.pa, &s.f, s.marking.f), ("b", &self.leg_b, &self.pb, &s.g, s.marking.g)]
        {
            for x in 0..p.n_objects() {
                let l = leg[x];
                if l >= s.c.arrows.len() || s.c.src(l) != func.obj[proj.obj[x]] || s.c.tgt(l) != self.pc.obj[x] {
                    out.push(format!("leg_{side} at {} has wrong endpoints", p.objects[x]));
                } else if marked && !s.c.is_iso(l) {
                    out.push(format!("leg_{side} at {} is not invertible", p.objects[x]));
                }
            }
            if !out.is_empty() {
                continue;
            }
            for m in 0..p.arrows.len() {
                let (x, y) = (p.src(m), p.tgt(m));
                if s.c.compose(self.pc.mor[m], leg[x]) != s.c.compose(leg[y], func.mor[proj.mor[m]]) {
                    out.push(format!("leg_{side} is not natural at {}", p.arrows[m].name));
                }
            }
        }
        out
    }
}

/// Builds a category whose arrows are tuples of arrows in `cats`, composed
/// componentwise. The arrow list must be closed under composition and
/// contain every identity tuple.
fn assemble(names: Vec<String>, arrows: Vec<(usize, usize, Vec<usize>)>, cats: &[&Category]) -> Category {
    let index: HashMap<(usize, usize, Vec<usize>), usize> =
        arrows.iter().enumerate().map(|(i, (s, t, k))| ((*s, *t, k.clone()), i)).collect();
    let name = |k: &[usize]| {
        let parts: Vec<&str> = k.iter().zip(cats).map(|(&m, c)| c.arrows[m].name.as_str()).collect();
        format!("({})", parts.join(", "))
    };
    let mut ids = vec![usize::MAX; names.len()];
    for (i, (s, t, k)) in arrows.iter().enumerate() {
        if s == t && k.iter().zip(cats).all(|(&m, c)| c.ids.contains(&m) && c.ids[c.src(m)] == m) {
            ids[*s] = i;
        }
    }
    let mut comp = Vec::new();
    for (fi, (fs, ft, fk)) in arrows.iter().enumerate() {
        for (gi, (gs, gt, gk)) in arrows.iter().enumerate() {
            if ft != gs {
                continue;
            }
            let hk: Vec<usize> = gk.iter().zip(fk).zip(cats).map(|((&g, &f), c)| c.compose(g, f)).collect();
            let h = index[&(*fs, *gt, hk)];
            comp.push([gi, fi, h]);
        }
    }
    let arrows = arrows.iter().map(|(s, t, k)| Arrow { name: name(k), src: *s, tgt: *t }).collect();
    Category::new(names, arrows, ids, comp).expect("assembled tables are in range")
}

/// `(a, b, c, α_a: F(a) → c, α_b: G(b) → c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LaxObject {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub alpha_a: usize,
    pub alpha_b: usize,
}

fn lax_objects(s: &Cospan) -> Vec<LaxObject> {
    let mut out = Vec::new();
    for a in 0..s.a.n_objects() {
        for b in 0..s.b.n_objects() {
            for c in 0..s.c.n_objects() {
                for alpha_a in s.c.hom(s.f.obj[a], c) {
                    for alpha_b in s.c.hom(s.g.obj[b], c) {
                        out.push(LaxObject { a, b, c, alpha_a, alpha_b });
                    }
                }
            }
        }
    }
    out
}

fn lax_on(s: &Cospan, objs: Vec<LaxObject>) -> (LimitCandidate, Vec<LaxObject>) {
    let (ca, cb, cc) = (&s.a, &s.b, &s.c);
    let mut arrows = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            for u in ca.hom(x.a, y.a) {
                for v in cb.hom(x.b, y.b) {
                    for w in cc.hom(x.c, y.c) {
                        let left = cc.compose(w, x.alpha_a) == cc.compose(y.alpha_a, s.f.mor[u]);
                        let right = cc.compose(w, x.alpha_b) == cc.compose(y.alpha_b, s.g.mor[v]);
                        if left && right {
                            arrows.push((i, j, vec![u, v, w]));
                        }
                    }
                }
            }
        }
    }
    let names = objs
        .iter()
        .map(|o| {
            format!(
                "({}, {}, {}, {}, {})",
                ca.objects[o.a], cb.objects[o.b], cc.objects[o.c], cc.arrows[o.alpha_a].name, cc.arrows[o.alpha_b].name
            )
        })
        .collect();
    let proj = |k: usize| Functor1 {
        obj: objs.iter().map(|o| [o.a, o.b, o.c][k]).collect(),
        mor: arrows.iter().map(|(_, _, t)| t[k]).collect(),
    };
    let cand = LimitCandidate {
        pa: proj(0),
        pb: proj(1),
        pc: proj(2),
        leg_a: objs.iter().map(|o| o.alpha_a).collect(),
        leg_b: objs.iter().map(|o| o.alpha_b).collect(),
        cat: assemble(names, arrows, &[ca, cb, cc]),
    };
    (cand, objs)
}

/// `A ×♭_C B`: all tuples `(a, b, c, α_a, α_b)`, morphisms `(u, v, w)` making
/// both squares commute.
pub fn lax_pullback(s: &Cospan) -> (LimitCandidate, Vec<LaxObject>) {
    lax_on(s, lax_objects(s))
}

/// The full subcategory of the lax pullback on tuples whose legs selected by
/// `keep` are invertible.
pub fn lax_with_invertible(s: &Cospan, keep: LegMarking) -> (LimitCandidate, Vec<LaxObject>) {
    let objs = lax_objects(s)
        .into_iter()
        .filter(|o| (!keep.f || s.c.is_iso(o.alpha_a)) && (!keep.g || s.c.is_iso(o.alpha_b)))
        .collect();
    lax_on(s, objs)
}

/// `A ×♯_C B`: both legs invertible.
pub fn pseudo_pullback(s: &Cospan) -> (LimitCandidate, Vec<LaxObject>) {
    lax_with_invertible(s, LegMarking::BOTH)
}

/// The directed pullback, strictified along the marked leg. Morphisms are
/// pairs `(u, v)` with a strictly commuting square.
pub fn directed_pullback(s: &Cospan, leg: MarkedLeg) -> LimitCandidate {
    let (ca, cb, cc) = (&s.a, &s.b, &s.c);
    // α runs from `from(a, b)` to `to(a, b)`
    let (from, to): (Box<dyn Fn(usize, usize) -> usize>, Box<dyn Fn(usize, usize) -> usize>) = match leg {
        MarkedLeg::G => (Box::new(|a, _| s.f.obj[a]), Box::new(|_, b| s.g.obj[b])),
        MarkedLeg::F => (Box::new(|_, b| s.g.obj[b]), Box::new(|a, _| s.f.obj[a])),
    };
    let mor_from = |u: usize, v: usize| if leg == MarkedLeg::G { s.f.mor[u] } else { s.g.mor[v] };
    let mor_to = |u: usize, v: usize| if leg == MarkedLeg::G { s.g.mor[v] } else { s.f.mor[u] };
    let mut objs = Vec::new();
    for a in 0..ca.n_objects() {
        for b in 0..cb.n_objects() {
            for alpha in cc.hom(from(a, b), to(a, b)) {
                objs.push((a, b, alpha));
            }
        }
    }
    let mut arrows = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            for u in ca.hom(x.0, y.0) {
                for v in cb.hom(x.1, y.1) {
                    if cc.compose(mor_to(u, v), x.2) == cc.compose(y.2, mor_from(u, v)) {
                        arrows.push((i, j, vec![u, v]));
                    }
                }
            }
        }
    }
    let names =
        objs.iter().map(|&(a, b, al)| format!("({}, {}, {})", ca.objects[a], cb.objects[b], cc.arrows[al].name)).collect();
    let pa = Functor1 { obj: objs.iter().map(|o| o.0).collect(), mor: arrows.iter().map(|t| t.2[0]).collect() };
    let pb = Functor1 { obj: objs.iter().map(|o| o.1).collect(), mor: arrows.iter().map(|t| t.2[1]).collect() };
    let (pc, leg_a, leg_b) = match leg {
        MarkedLeg::G => (pb.then(&s.g), objs.iter().map(|o| o.2).collect(), objs.iter().map(|o| cc.ids[s.g.obj[o.1]]).collect()),
        MarkedLeg::F => (pa.then(&s.f), objs.iter().map(|o| cc.ids[s.f.obj[o.0]]).collect(), objs.iter().map(|o| o.2).collect()),
    };
    LimitCandidate { cat: assemble(names, arrows, &[ca, cb]), pa, pb, pc, leg_a, leg_b }
}

/// The ordinary strict pullback: `(a, b)` with `F(a) = G(b)`.
pub fn strict_pullback(s: &Cospan) -> LimitCandidate {
    let (ca, cb, cc) = (&s.a, &s.b, &s.c);
    let objs: Vec<(usize, usize)> = (0..ca.n_objects())
        .flat_map(|a| (0..cb.n_objects()).filter(move |&b| s.f.obj[a] == s.g.obj[b]).map(move |b| (a, b)))
        .collect();
    let mut arrows = Vec::new();
    for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            for u in ca.hom(x.0, y.0) {
                for v in cb.hom(x.1, y.1) {
                    if s.f.mor[u] == s.g.mor[v] {
                        arrows.push((i, j, vec![u, v]));
                    }
                }
            }
        }
    }
    let names = objs.iter().map(|&(a, b)| format!("({}, {})", ca.objects[a], cb.objects[b])).collect();
    let pa = Functor1 { obj: objs.iter().map(|o| o.0).collect(), mor: arrows.iter().map(|t| t.2[0]).collect() };
    let pb = Functor1 { obj: objs.iter().map(|o| o.1).collect(), mor: arrows.iter().map(|t| t.2[1]).collect() };
    let pc = pa.then(&s.f);
    let ids: Vec<usize> = objs.iter().map(|o| cc.ids[s.f.obj[o.0]]).collect();
    LimitCandidate { cat: assemble(names, arrows, &[ca, cb]), pa, pb, pc, leg_a: ids.clone(), leg_b: ids }
}

/// The partially lax limit for the diagram's marking.
pub fn partially_lax_limit(d: &ConeDiagram) -> Result<LimitCandidate> {
    d.validate()?;
    let s = d.to_cospan();
    Ok(match (s.marking.f, s.marking.g) {
        (false, false) => lax_pullback(&s).0,
        (false, true) => directed_pullback(&s, MarkedLeg::G),
        (true, false) => directed_pullback(&s, MarkedLeg::F),
        (true, true) => pseudo_pullback(&s).0,
    })
}

/// Unmarked cospans of categories with at most three objects: named cases,
/// then seeded random posets (with the walking isomorphism mixed in).
pub fn laxlim_corpus(seed: u64, random: usize) -> Vec<(String, Cospan)> {
    use rand::{Rng, SeedableRng};
    let (pt, arrow, iso) = (Category::point(), Category::walking_arrow(), Category::walking_iso());
    let at = |c: &Category, o: usize| Functor1 { obj: vec![o], mor: vec![c.ids[o]] };
    let named = |a: &Category, b: &Category, c: &Category, f: Functor1, g: Functor1| Cospan {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        f,
        g,
        marking: LegMarking::NONE,
    };
    let mut out = vec![
        ("worked-instance".to_string(), named(&pt, &pt, &arrow, at(&arrow, 0), at(&arrow, 1))),
        ("same-vertex".into(), named(&pt, &pt, &arrow, at(&arrow, 0), at(&arrow, 0))),
        ("iso-ends".into(), named(&pt, &pt, &iso, at(&iso, 0), at(&iso, 1))),
        ("id-arrow".into(), named(&arrow, &arrow, &arrow, Functor1::identity(&arrow), Functor1::identity(&arrow))),
        ("id-iso".into(), named(&iso, &iso, &iso, Functor1::identity(&iso), Functor1::identity(&iso))),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
        if rng.gen_bool(0.2) {
            Category::walking_iso()
        } else {
            let n = rng.gen_range(1..=3);
            crate::fixtures::random_poset(rng, n)
        }
    };
    let mut made = 0;
    while made < random {
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let fo: Vec<usize> = (0..a.n_objects()).map(|_| rng.gen_range(0..c.n_objects())).collect();
        let go: Vec<usize> = (0..b.n_objects()).map(|_| rng.gen_range(0..c.n_objects())).collect();
        if let (Some(f), Some(g)) = (Functor1::from_object_map(&a, &c, fo), Functor1::from_object_map(&b, &c, go)) {
            out.push((format!("random-{seed}-{made}"), Cospan { a, b, c, f, g, marking: LegMarking::NONE }));
            made += 1;
        }
    }
    out
}
