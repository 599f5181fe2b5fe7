use serde::Serialize;

use crate::category::Category;
use crate::decorated_sset::{
    decorate_present, from_vertex_sets, pushout, simplex_tuples, DecMap, Deco, DecoSet, DecoratedSSet, Kind, Shape,
    Simplex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    MB,
    MS,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    A1,
    A2,
    A3,
    A4,
    A5,
    S1,
    S2,
    S3,
    S4,
    S5,
    E,
    MS1,
    MS2,
    MS3,
    MS4,
    MS5,
    MS6,
    MS7,
    MS8,
    MSE,
}

/// One generating inclusion `domain ↪ codomain`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorInstance {
    pub family: Family,
    pub tag: Tag,
    pub n: usize,
    pub i: Option<usize>,
    /// Set for instances of the `U_i` lemma, which are consequences rather than generators.
    pub derived: bool,
    /// The Kan complex used by `E` / `MSE`.
    pub library: Option<String>,
    #[serde(skip)]
    pub domain: DecoratedSSet,
    #[serde(skip)]
    pub codomain: DecoratedSSet,
    #[serde(skip)]
    pub inclusion: DecMap,
}

impl GeneratorInstance {
    pub fn name(&self) -> String {
        let mut s = format!("{:?}(n={}", self.tag, self.n);
        if let Some(i) = self.i {
            s += &format!(",i={i}");
        }
        if let Some(l) = &self.library {
            s += &format!(",K={l}");
        }
        s += ")";
        if self.derived {
            s += "[U-lemma]";
        }
        s
    }
}

fn list(ts: &[&[usize]]) -> DecoSet {
    DecoSet::List(ts.iter().map(|t| t.to_vec()).collect())
}

/// All triangles of `Δ³` except the `i`-th face.
fn all_but_face(i: usize) -> Vec<Vec<usize>> {
    simplex_tuples(3, Shape::Full)
        .into_iter()
        .filter(|t| t.len() == 3 && t.contains(&i))
        .collect()
}

fn deco(family: Family, marked: DecoSet, thin: DecoSet, lean: DecoSet) -> Deco {
    match family {
        Family::MB => Deco::mb(marked, thin, lean),
        Family::MS => Deco::ms(marked, thin),
    }
}

fn shape(n: usize, s: Shape, d: &Deco) -> DecoratedSSet {
    let mut x = from_vertex_sets(d.kind, simplex_tuples(n, s));
    x.cap = x.cap.max(n);
    decorate_present(x, d).expect("catalog decorations are well formed")
}

/// Inclusion between two vertex-tuple complexes with the same vertex set.
fn tuple_inclusion(a: &DecoratedSSet, b: &DecoratedSSet) -> DecMap {
    let idx = b.vertex_index();
    DecMap {
        images: (0..a.dims.len())
            .map(|k| a.nondeg_simplices(k).map(|s| b.by_vertices(&idx, &a.vertices(&s)).unwrap()).collect())
            .collect(),
    }
}

/// `x ⊔_{Δ^{01}} Δ⁰` together with the quotient map.
fn collapse_01(x: &DecoratedSSet) -> (DecoratedSSet, DecMap) {
    let edge = from_vertex_sets(x.kind, vec![vec![0], vec![1], vec![0, 1]]);
    let pt = from_vertex_sets(x.kind, vec![vec![0]]);
    let f = tuple_inclusion(&edge, x);
    let g = DecMap { images: vec![vec![Simplex::vertex(0); 2], vec![Simplex { k: 0, id: 0, surj: vec![0, 0] }]] };
    let po = pushout(&edge, x, &pt, &f, &g).expect("edge {0,1} is a subcomplex");
    (po.object, po.from_b)
}

/// The map of quotients induced by `h: a -> b`.
fn induced(qa: &DecoratedSSet, to_qa: &DecMap, h: &DecMap, to_qb: &DecMap) -> DecMap {
    let mut images: Vec<Vec<Option<Simplex>>> = (0..qa.dims.len()).map(|k| vec![None; qa.count(k)]).collect();
    for (k, row) in to_qa.images.iter().enumerate() {
        for (t, y) in row.iter().enumerate() {
            if !y.is_degenerate() && images[k][y.id].is_none() {
                images[k][y.id] = Some(to_qb.apply(&h.apply(&Simplex::nondeg(k, t))));
            }
        }
    }
    DecMap { images: images.into_iter().map(|r| r.into_iter().map(|s| s.unwrap()).collect()).collect() }
}

struct Builder {
    family: Family,
    out: Vec<GeneratorInstance>,
}

impl Builder {
    fn push(&mut self, tag: Tag, n: usize, i: Option<usize>, domain: DecoratedSSet, codomain: DecoratedSSet, inclusion: DecMap) {
        self.out.push(GeneratorInstance {
            family: self.family,
            tag,
            n,
            i,
            derived: false,
            library: None,
            domain,
            codomain,
            inclusion,
        });
    }

    fn shapes(&mut self, tag: Tag, n: usize, i: Option<usize>, s: Shape, d0: Deco, d1: Deco) {
        let a = shape(n, s, &d0);
        let b = shape(n, Shape::Full, &d1);
        let inc = tuple_inclusion(&a, &b);
        self.push(tag, n, i, a, b, inc);
    }

    fn collapsed(&mut self, tag: Tag, n: usize, s: Shape, d0: Deco, d1: Deco) {
        let a = shape(n, s, &d0);
        let b = shape(n, Shape::Full, &d1);
        let h = tuple_inclusion(&a, &b);
        let (qa, to_qa) = collapse_01(&a);
        let (qb, to_qb) = collapse_01(&b);
        let inc = induced(&qa, &to_qa, &h, &to_qb);
        self.push(tag, n, None, qa, qb, inc);
    }
}

fn tag(family: Family, mb: Tag, ms: Tag) -> Tag {
    match family {
        Family::MB => mb,
        Family::MS => ms,
    }
}

/// Kan complexes used for `E` / `MSE`: the point and truncated nerves of the
/// walking isomorphism.
pub fn kan_library(n_max: usize) -> Vec<(String, DecoratedSSet)> {
    let mut out = vec![("point".to_string(), from_vertex_sets(Kind::MB, vec![vec![0]]))];
    for top in 1..=n_max.min(3) {
        out.push((format!("iso<={top}"), Category::walking_iso().nerve(top)));
    }
    out
}

/// Every generator of the family with size parameter at most `n_max`, in a
/// fixed order. The MS list also carries the derived `U_i` instances.
pub fn generators(family: Family, n_max: usize) -> Vec<GeneratorInstance> {
    use DecoSet::{Flat, Sharp};
    let mut b = Builder { family, out: Vec::new() };
    let fam = family;
    for n in 2..=n_max {
        for i in 1..n {
            let t = list(&[&[i - 1, i, i + 1]]);
            b.shapes(tag(fam, Tag::A1, Tag::MS1), n, Some(i), Shape::Horn(i), deco(fam, Flat, t.clone(), t.clone()), deco(fam, Flat, t.clone(), t));
        }
    }
    if n_max >= 4 {
        let t: &[&[usize]] = &[&[0, 2, 4], &[1, 2, 3], &[0, 1, 3], &[1, 3, 4], &[0, 1, 2]];
        let t2: &[&[usize]] = &[&[0, 2, 4], &[1, 2, 3], &[0, 1, 3], &[1, 3, 4], &[0, 1, 2], &[0, 3, 4], &[0, 1, 4]];
        b.shapes(tag(fam, Tag::A2, Tag::MS2), 4, None, Shape::Full, deco(fam, Flat, list(t), list(t)), deco(fam, Flat, list(t2), list(t2)));
    }
    for n in 2..=n_max {
        let l = list(&[&[0, 1, n]]);
        let d = match fam {
            Family::MB => Deco::mb(Flat, Flat, l),
            Family::MS => Deco::ms(Flat, l),
        };
        b.collapsed(tag(fam, Tag::A3, Tag::MS3), n, Shape::Horn(0), d.clone(), d);
    }
    for n in 2..=n_max {
        let m = list(&[&[n - 1, n]]);
        let l = list(&[&[0, n - 1, n]]);
        let d = match fam {
            Family::MB => Deco::mb(m, Flat, l),
            Family::MS => Deco::ms(m, l),
        };
        b.shapes(tag(fam, Tag::A4, Tag::MS4), n, None, Shape::Horn(n), d.clone(), d);
    }
    if n_max >= 1 {
        let pt = shape(0, Shape::Full, &deco(fam, Sharp, Sharp, Sharp));
        let iv = shape(1, Shape::Full, &deco(fam, Sharp, Sharp, Sharp));
        let inc = DecMap { images: vec![vec![Simplex::vertex(1)]] };
        b.push(tag(fam, Tag::A5, Tag::MS5), 1, None, pt, iv, inc);
    }
    if n_max >= 2 {
        let m = list(&[&[0, 1], &[1, 2]]);
        b.shapes(tag(fam, Tag::S1, Tag::MS6), 2, None, Shape::Full, deco(fam, m, Sharp, Sharp), deco(fam, Sharp, Sharp, Sharp));
        if fam == Family::MB {
            b.shapes(Tag::S2, 2, None, Shape::Full, Deco::mb(Flat, Flat, Sharp), Deco::mb(Flat, Sharp, Sharp));
        }
    }
    if n_max >= 3 {
        let u = |i: usize| DecoSet::List(all_but_face(i));
        if fam == Family::MB {
            for i in 1..3 {
                let t = list(&[&[i - 1, i, i + 1]]);
                b.shapes(Tag::S3, 3, Some(i), Shape::Full, Deco::mb(Flat, t.clone(), u(i)), Deco::mb(Flat, t, Sharp));
            }
            b.collapsed(Tag::S4, 3, Shape::Full, Deco::mb(Flat, Flat, u(0)), Deco::mb(Flat, Flat, Sharp));
            let m = list(&[&[2, 3]]);
            b.shapes(Tag::S5, 3, None, Shape::Full, Deco::mb(m.clone(), Flat, u(3)), Deco::mb(m, Flat, Sharp));
        } else {
            b.collapsed(Tag::MS7, 3, Shape::Full, Deco::ms(Flat, u(0)), Deco::ms(Flat, Sharp));
            let m = list(&[&[2, 3]]);
            b.shapes(Tag::MS8, 3, None, Shape::Full, Deco::ms(m.clone(), u(3)), Deco::ms(m, Sharp));
        }
    }
    for (name, k) in kan_library(n_max) {
        let mut lo = k.clone();
        lo.kind = match fam {
            Family::MB => Kind::MB,
            Family::MS => Kind::MS,
        };
        lo.marked.clear();
        lo.thin = lo.all_triangles();
        lo.lean = lo.all_triangles();
        let mut hi = lo.clone();
        hi.marked = hi.all_edges();
        let inc = DecMap::identity(&lo);
        let n = lo.top_dim().unwrap_or(0);
        b.push(tag(fam, Tag::E, Tag::MSE), n, None, lo, hi, inc);
        b.out.last_mut().unwrap().library = Some(name);
    }
    if fam == Family::MS && n_max >= 3 {
        // The U_i lemma, read with a single scaling.
        for i in 1..3 {
            let a = shape(3, Shape::Full, &Deco::ms(Flat, DecoSet::List(all_but_face(i))));
            let c = shape(3, Shape::Full, &Deco::ms(Flat, Sharp));
            let inc = tuple_inclusion(&a, &c);
            b.push(Tag::S3, 3, Some(i), a, c, inc);
            b.out.last_mut().unwrap().derived = true;
        }
    }
    b.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusions_are_monos_preserving_decorations() {
        for fam in [Family::MB, Family::MS] {
            for g in generators(fam, 4) {
                g.domain.validate().unwrap();
                g.codomain.validate().unwrap();
                g.inclusion.check(&g.domain, &g.codomain).unwrap_or_else(|e| panic!("{}: {e}", g.name()));
                assert!(g.inclusion.is_mono(), "{}", g.name());
            }
        }
    }

    #[test]
    fn inner_horn_2_1() {
        let g = generators(Family::MB, 2).into_iter().find(|g| g.tag == Tag::A1).unwrap();
        assert_eq!(g.domain.dims, vec![3, 2]);
        assert_eq!(g.codomain.dims, vec![3, 3, 1]);
        assert_eq!(g.codomain.thin.len(), 1);
    }

    #[test]
    fn a4_decorations() {
        let g = generators(Family::MB, 3).into_iter().find(|g| g.tag == Tag::A4 && g.n == 3).unwrap();
        let idx = g.codomain.vertex_index();
        let e = g.codomain.by_vertices(&idx, &[2, 3]).unwrap();
        let t = g.codomain.by_vertices(&idx, &[0, 2, 3]).unwrap();
        assert!(g.codomain.is_marked(&e));
        assert!(g.codomain.is_lean(&t) && !g.codomain.is_thin(&t));
    }

    #[test]
    fn s2_and_a5_shapes() {
        let gens = generators(Family::MB, 2);
        let s2 = gens.iter().find(|g| g.tag == Tag::S2).unwrap();
        assert!(s2.domain.thin.is_empty() && s2.domain.lean.len() == 1);
        assert_eq!(s2.codomain.thin.len(), 1);
        let a5 = gens.iter().find(|g| g.tag == Tag::A5).unwrap();
        assert_eq!(a5.inclusion.images[0], vec![Simplex::vertex(1)]);
        assert_eq!(a5.codomain.marked.len(), 1);
    }

    #[test]
    fn collapsed_simplex_keeps_its_top_cell() {
        let g = generators(Family::MB, 3).into_iter().find(|g| g.tag == Tag::A3 && g.n == 3).unwrap();
        // Δ³ with {0,1} collapsed: 3 vertices, 5 edges, 4 triangles, 1 tetrahedron.
        assert_eq!(g.codomain.dims, vec![3, 5, 4, 1]);
        assert_eq!(g.codomain.lean.len(), 1);
        g.codomain.check_simplicial_identities(3).unwrap();
    }

    #[test]
    fn catalog_counts() {
        let mb = generators(Family::MB, 4);
        let count = |t: Tag| mb.iter().filter(|g| g.tag == t).count();
        assert_eq!(count(Tag::A1), 1 + 2 + 3);
        assert_eq!(count(Tag::A3), 3);
        assert_eq!(count(Tag::S3), 2);
        assert_eq!(count(Tag::E), 4);
        let ms = generators(Family::MS, 4);
        assert_eq!(ms.iter().filter(|g| g.derived).count(), 2);
    }
}
