use itertools::Itertools;
use serde::Serialize;

use super::{ConeDiagram, Cospan, LimitCandidate};
use crate::category::{Category, Functor1};
use crate::error::{Error, Result};

/// A test category `T` for the corepresentation check.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub cat: Category,
}

/// `functor: probes[src] → probes[tgt]`.
#[derive(Clone, Debug)]
pub struct ProbeMorphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub functor: Functor1,
}

/// The point and the walking arrow, with the two vertex inclusions and the
/// collapse.
pub fn default_probes() -> (Vec<Probe>, Vec<ProbeMorphism>) {
    let pt = Category::point();
    let arrow = Category::walking_arrow();
    let vertex = |v: usize| Functor1::from_object_map(&pt, &arrow, vec![v]).expect("vertex inclusion");
    let collapse = Functor1::from_object_map(&arrow, &pt, vec![0, 0]).expect("collapse");
    let (source, target) = (vertex(0), vertex(1));
    let morphisms = vec![
        ProbeMorphism { name: "source".into(), src: 0, tgt: 1, functor: source },
        ProbeMorphism { name: "target".into(), src: 0, tgt: 1, functor: target },
        ProbeMorphism { name: "collapse".into(), src: 1, tgt: 0, functor: collapse },
    ];
    let probes = vec![Probe { name: "pt".into(), cat: pt }, Probe { name: "arrow".into(), cat: arrow }];
    (probes, morphisms)
}

/// Every functor `t → x`, failing once more than `limit` candidates are
/// examined.
pub fn enumerate_functors(t: &Category, x: &Category, limit: usize) -> Result<Vec<Functor1>> {
    let mut out = Vec::new();
    let mut seen = 0usize;
    for obj in product((0..t.n_objects()).map(|_| (0..x.n_objects()).collect()).collect()) {
        let choices: Vec<Vec<usize>> = (0..t.arrows.len())
            .map(|m| {
                let (a, b) = (obj[t.src(m)], obj[t.tgt(m)]);
                if t.ids[t.src(m)] == m {
                    vec![x.ids[a]]
                } else {
                    x.hom(a, b)
                }
            })
            .collect();
        for mor in product(choices) {
            seen += 1;
            if seen > limit {
                return Err(Error::Budget(format!("more than {limit} candidate functors {} → ?", t.objects.len())));
            }
            let f = Functor1 { obj: obj.clone(), mor };
            if f.validate(t, x).is_empty() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Cartesian product of choice lists; the empty product has one element.
fn product<T: Clone>(lists: Vec<Vec<T>>) -> Vec<Vec<T>> {
    lists.into_iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|pre| {
                list.iter().map(move |x| {
                    let mut v = pre.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// A cone with tip `T`: functors to `A`, `B`, `C` and the components of the
/// two legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Cone {
    xa: Functor1,
    xb: Functor1,
    xc: Functor1,
    la: Vec<usize>,
    lb: Vec<usize>,
}

/// Components `F(x(t)) → y(t)` natural in `t`, invertible when `marked`.
fn transformations(
    t: &Category,
    c: &Category,
    func: &Functor1,
    x: &Functor1,
    y: &Functor1,
    marked: bool,
) -> Vec<Vec<usize>> {
    let comps: Vec<Vec<usize>> = (0..t.n_objects())
        .map(|o| c.hom(func.obj[x.obj[o]], y.obj[o]).into_iter().filter(|&l| !marked || c.is_iso(l)).collect())
        .collect();
    product(comps)
        .into_iter()
        .filter(|l| {
            (0..t.arrows.len()).all(|m| {
                c.compose(y.mor[m], l[t.src(m)]) == c.compose(l[t.tgt(m)], func.mor[x.mor[m]])
            })
        })
        .collect()
}

fn enumerate_cones(t: &Category, s: &Cospan, limit: usize) -> Result<Vec<Cone>> {
    let fa = enumerate_functors(t, &s.a, limit)?;
    let fb = enumerate_functors(t, &s.b, limit)?;
    let fc = enumerate_functors(t, &s.c, limit)?;
    if fa.len().saturating_mul(fb.len()).saturating_mul(fc.len()) > limit {
        return Err(Error::Budget(format!("more than {limit} cone skeleta")));
    }
    let mut out = Vec::new();
    for (xa, xb, xc) in itertools::iproduct!(&fa, &fb, &fc) {
        let las = transformations(t, &s.c, &s.f, xa, xc, s.marking.f);
        if las.is_empty() {
            continue;
        }
        let lbs = transformations(t, &s.c, &s.g, xb, xc, s.marking.g);
        for (la, lb) in itertools::iproduct!(&las, &lbs) {
            out.push(Cone { xa: xa.clone(), xb: xb.clone(), xc: xc.clone(), la: la.clone(), lb: lb.clone() });
            if out.len() > limit {
                return Err(Error::Budget(format!("more than {limit} cones")));
            }
        }
    }
    Ok(out)
}

/// The cone obtained by composing `x: T → P` with the stored cone of `P`.
fn cone_of(p: &LimitCandidate, x: &Functor1) -> Cone {
    Cone {
        xa: x.then(&p.pa),
        xb: x.then(&p.pb),
        xc: x.then(&p.pc),
        la: x.obj.iter().map(|&o| p.leg_a[o]).collect(),
        lb: x.obj.iter().map(|&o| p.leg_b[o]).collect(),
    }
}

fn restrict(k: &Cone, h: &Functor1) -> Cone {
    Cone {
        xa: h.then(&k.xa),
        xb: h.then(&k.xb),
        xc: h.then(&k.xc),
        la: h.obj.iter().map(|&o| k.la[o]).collect(),
        lb: h.obj.iter().map(|&o| k.lb[o]).collect(),
    }
}

fn isos(c: &Category, a: usize, b: usize) -> Vec<usize> {
    c.hom(a, b).into_iter().filter(|&f| c.is_iso(f)).collect()
}

/// Natural isomorphisms `x ⇒ y` between functors `t → c`, one component per
/// object.
fn natural_isos(t: &Category, c: &Category, x: &Functor1, y: &Functor1) -> Vec<Vec<usize>> {
    product((0..t.n_objects()).map(|o| isos(c, x.obj[o], y.obj[o])).collect())
        .into_iter()
        .filter(|phi| (0..t.arrows.len()).all(|m| c.compose(y.mor[m], phi[t.src(m)]) == c.compose(phi[t.tgt(m)], x.mor[m])))
        .collect()
}

/// An invertible modification between two cones.
fn cones_isomorphic(t: &Category, s: &Cospan, k: &Cone, l: &Cone) -> bool {
    let pas = natural_isos(t, &s.a, &k.xa, &l.xa);
    let pbs = natural_isos(t, &s.b, &k.xb, &l.xb);
    let pcs = natural_isos(t, &s.c, &k.xc, &l.xc);
    let c = &s.c;
    itertools::iproduct!(&pas, &pbs, &pcs).any(|(pa, pb, pc)| {
        (0..t.n_objects()).all(|o| {
            c.compose(l.la[o], s.f.mor[pa[o]]) == c.compose(pc[o], k.la[o])
                && c.compose(l.lb[o], s.g.mor[pb[o]]) == c.compose(pc[o], k.lb[o])
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub functors: usize,
    pub cones: usize,
    /// Composing with the stored cone is a bijection on the nose.
    pub strict_bijection: bool,
    pub essentially_surjective: bool,
    pub injective_on_iso_classes: bool,
    pub pass: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeOracleReport {
    pub pass: bool,
    pub probes: Vec<ProbeResult>,
    /// Probe morphisms along which restriction and composition disagree.
    pub naturality_failures: Vec<String>,
    pub note: &'static str,
}

/// Compares functors `T → P` with cones of tip `T` for each probe: composing
/// with the stored cone must be a bijection on isomorphism classes, and must
/// commute with restriction along the probe morphisms.
pub fn cone_oracle(
    d: &ConeDiagram,
    p: &LimitCandidate,
    probes: &[Probe],
    morphisms: &[ProbeMorphism],
    limit: usize,
) -> Result<ConeOracleReport> {
    d.validate()?;
    let s = d.to_cospan();
    let problems = p.validate(&s);
    if !problems.is_empty() {
        return Err(Error::Input(format!("the candidate carries no cone: {}", problems.join("; "))));
    }
    let mut results = Vec::new();
    let mut functors = Vec::new();
    for probe in probes {
        let t = &probe.cat;
        let xs = enumerate_functors(t, &p.cat, limit)?;
        let cones = enumerate_cones(t, &s, limit)?;
        let images: Vec<Cone> = xs.iter().map(|x| cone_of(p, x)).collect();
        let mut failures = Vec::new();
        let distinct = images.iter().all_unique();
        let strict = distinct && images.len() == cones.len() && images.iter().all(|k| cones.contains(k));
        let mut surj = true;
        for (i, k) in cones.iter().enumerate() {
            if !images.contains(k) && !images.iter().any(|im| cones_isomorphic(t, &s, k, im)) {
                surj = false;
                failures.push(format!("cone {i} of tip {} is not reached", probe.name));
                break;
            }
        }
        let mut inj = true;
        'outer: for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let same = images[i] == images[j] || cones_isomorphic(t, &s, &images[i], &images[j]);
                if same && natural_isos(t, &p.cat, &xs[i], &xs[j]).is_empty() {
                    inj = false;
                    failures.push(format!("functors {i} and {j} of tip {} give isomorphic cones", probe.name));
                    break 'outer;
                }
            }
        }
        results.push(ProbeResult {
            probe: probe.name.clone(),
            functors: xs.len(),
            cones: cones.len(),
            strict_bijection: strict,
            essentially_surjective: surj,
            injective_on_iso_classes: inj,
            pass: surj && inj,
            failures,
        });
        functors.push(xs);
    }
    let mut naturality_failures = Vec::new();
    for h in morphisms {
        if h.functor.validate(&probes[h.src].cat, &probes[h.tgt].cat).is_empty() {
            for x in &functors[h.tgt] {
                if cone_of(p, &h.functor.then(x)) != restrict(&cone_of(p, x), &h.functor) {
                    naturality_failures.push(h.name.clone());
                    break;
                }
            }
        } else {
            naturality_failures.push(format!("{} is not a functor", h.name));
        }
    }
    Ok(ConeOracleReport {
        pass: results.iter().all(|r| r.pass) && naturality_failures.is_empty(),
        probes: results,
        naturality_failures,
        note: "representability evidence on the probes, not a proof",
    })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use std::collections::BTreeSet;

    const LIMIT: usize = 200_000;

    fn check(d: &ConeDiagram, p: &LimitCandidate) -> ConeOracleReport {
        let (probes, morphisms) = default_probes();
        cone_oracle(d, p, &probes, &morphisms, LIMIT).unwrap()
    }

    fn span(a: Category, b: Category, c: Category, fo: Vec<usize>, go: Vec<usize>, m: LegMarking) -> Cospan {
        let f = Functor1::from_object_map(&a, &c, fo).unwrap();
        let g = Functor1::from_object_map(&b, &c, go).unwrap();
        Cospan { a, b, c, f, g, marking: m }
    }

    #[test]
    fn functor_counts() {
        let arrow = Category::walking_arrow();
        let chain = Category::poset(3, &[(0, 1), (1, 2)]);
        // functors [1] → [2] are pairs i ≤ j
        assert_eq!(enumerate_functors(&arrow, &chain, LIMIT).unwrap().len(), 6);
        assert_eq!(enumerate_functors(&Category::empty(), &chain, LIMIT).unwrap().len(), 1);
        assert_eq!(enumerate_functors(&arrow, &Category::walking_iso(), LIMIT).unwrap().len(), 4);
        assert!(matches!(enumerate_functors(&chain, &chain, 3), Err(Error::Budget(_))));
    }

    #[test]
    fn lax_pullbacks_pass_on_the_nose() {
        let arrow = Category::walking_arrow();
        let pt = Category::point();
        for s in [
            span(pt.clone(), pt.clone(), arrow.clone(), vec![0], vec![1], LegMarking::NONE),
            span(pt.clone(), pt.clone(), arrow.clone(), vec![0], vec![0], LegMarking::NONE),
            span(arrow.clone(), pt.clone(), arrow.clone(), vec![0, 1], vec![1], LegMarking::NONE),
        ] {
            let d = ConeDiagram::Cospan(s.clone());
            let r = check(&d, &lax_pullback(&s).0);
            assert!(r.pass, "{r:?}");
            assert!(r.probes.iter().all(|p| p.strict_bijection));
        }
    }

    #[test]
    fn dropping_a_morphism_fails_on_the_arrow() {
        let pt = Category::point();
        let s = span(pt.clone(), pt, Category::walking_arrow(), vec![0], vec![0], LegMarking::NONE);
        let (full, objs) = lax_pullback(&s);
        assert_eq!(objs.len(), 2);
        let m = (0..full.cat.arrows.len()).find(|&m| full.cat.src(m) != full.cat.tgt(m)).unwrap();
        let mut cut = full.clone();
        cut.cat = full.cat.without_arrows(&BTreeSet::from([m]));
        let keep = |v: &Vec<usize>| v.iter().enumerate().filter(|&(i, _)| i != m).map(|(_, &x)| x).collect::<Vec<_>>();
        cut.pa.mor = keep(&full.pa.mor);
        cut.pb.mor = keep(&full.pb.mor);
        cut.pc.mor = keep(&full.pc.mor);
        assert!(cut.cat.validate().is_empty());
        let r = check(&ConeDiagram::Cospan(s), &cut);
        assert!(!r.pass);
        assert!(r.probes[0].pass);
        assert!(!r.probes[1].pass);
        assert!(!r.probes[1].essentially_surjective);
    }

    #[test]
    fn pseudo_and_strict_agree_over_a_groupoid() {
        let c = Category::walking_iso();
        let s = Cospan {
            a: c.clone(),
            b: Category::point(),
            f: Functor1::identity(&c),
            g: Functor1 { obj: vec![1], mor: vec![c.ids[1]] },
            c,
            marking: LegMarking::BOTH,
        };
        let d = ConeDiagram::Cospan(s.clone());
        let pseudo = pseudo_pullback(&s).0;
        let strict = strict_pullback(&s);
        assert!(check(&d, &pseudo).pass);
        let r = check(&d, &strict);
        assert!(r.pass, "{r:?}");
        // strictly smaller, so the bijection only holds up to isomorphism
        assert!(strict.cat.n_objects() < pseudo.cat.n_objects());
        assert!(!r.probes[0].strict_bijection);
        // both are contractible groupoids: every hom is a singleton
        for p in [&pseudo.cat, &strict.cat] {
            assert!((0..p.n_objects()).all(|x| (0..p.n_objects()).all(|y| p.hom(x, y).len() == 1)));
        }
    }

    #[test]
    fn directed_pullbacks_pass_up_to_isomorphism() {
        let c = Category::walking_iso();
        let arrow = Category::walking_arrow();
        let s = Cospan {
            a: arrow.clone(),
            b: c.clone(),
            f: Functor1 { obj: vec![0, 0], mor: vec![c.ids[0]; 3] },
            g: Functor1::identity(&c),
            c: c.clone(),
            marking: LegMarking::G,
        };
        let d = ConeDiagram::Cospan(s.clone());
        assert!(check(&d, &directed_pullback(&s, MarkedLeg::G)).pass);
        assert!(check(&d, &lax_with_invertible(&s, LegMarking::G).0).pass);
        let s2 = Cospan { marking: LegMarking::F, ..s };
        let d2 = ConeDiagram::Cospan(s2.clone());
        assert!(check(&d2, &directed_pullback(&s2, MarkedLeg::F)).pass);
        // outside groupoids the marked leg cuts objects down
        let s3 = span(arrow.clone(), Category::point(), arrow.clone(), vec![0, 1], vec![0], LegMarking::G);
        let d3 = ConeDiagram::Cospan(s3.clone());
        let dir = directed_pullback(&s3, MarkedLeg::G);
        assert_eq!(dir.cat.n_objects(), 1);
        assert!(check(&d3, &dir).pass);
        let (probes, morphisms) = default_probes();
        let lax = lax_pullback(&s3).0;
        assert!(matches!(cone_oracle(&d3, &lax, &probes, &morphisms, LIMIT), Err(Error::Input(_))));
    }

    #[test]
    fn arrow_diagram_limits() {
        let a = Category::walking_arrow();
        for marked in [false, true] {
            let d = ConeDiagram::Arrow { a: a.clone(), b: a.clone(), e: Functor1::identity(&a), marked };
            let p = partially_lax_limit(&d).unwrap();
            assert!(check(&d, &p).pass, "marked = {marked}");
        }
    }

    #[test]
    fn budget_and_bad_candidates() {
        let pt = Category::point();
        let s = span(pt.clone(), pt.clone(), Category::walking_arrow(), vec![0], vec![1], LegMarking::NONE);
        let d = ConeDiagram::Cospan(s.clone());
        let (probes, morphisms) = default_probes();
        assert!(matches!(cone_oracle(&d, &lax_pullback(&s).0, &probes, &morphisms, 1), Err(Error::Budget(_))));
        let mut bad = lax_pullback(&s).0;
        bad.leg_a[0] = 0;
        assert!(matches!(cone_oracle(&d, &bad, &probes, &morphisms, LIMIT), Err(Error::Input(_))));
    }
}
