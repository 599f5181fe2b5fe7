//! The free 2-Cartesian fibration of a 2-functor `f: C → D`, in its tame model.
//!
//! An `n`-simplex is a pair `(φ, ρ)`: a normal lax functor `φ: [1] × [n] → D`
//! sending contrary triangles to identity 2-cells, and `ρ: [n] → C` with
//! `φ|{1} = f(ρ)`. Objects are `u: d → f(c)`.

mod audit;
mod compare;

pub use audit::{
    degeneracy_lemma_check, face_lemma_check, filtration_audit, AuditReport, DegeneracyReport, FaceLemmaReport, SimplexClass,
};
pub use compare::{compare_tame_fr, to_fr_simplex, from_fr_simplex, ComparisonReport};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decorated_sset::{materialize, DecMap, DecoratedSSet, Kind, Materialized, Simplex, SimplexSource};
use crate::error::{Error, Result};
use crate::gray_products::contrary_triangles;
use crate::strict_two_cat::{
    base_nerve, enumerate_lax, scaled_nerve_materialized, FinPoset, LaxConstraints, LaxFn, Marking2Cat,
    StrictTwoCat, TwoFunctor,
};

/// A simplex of the free fibration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FibSimplex {
    /// On the prism `[1] × [n]`, elements numbered `2r + m`.
    pub phi: LaxFn,
    /// On `{1} × [n]`.
    pub rho: LaxFn,
}

impl FibSimplex {
    pub fn dim(&self) -> usize {
        self.rho.obj.len() - 1
    }

    pub fn is_well_formed(&self, c: &StrictTwoCat, d: &StrictTwoCat) -> bool {
        let n = match self.rho.obj.len().checked_sub(1) {
            Some(n) => n,
            None => return false,
        };
        self.phi.obj.len() == 2 * (n + 1)
            && self.phi.check(d, &FinPoset::prism(n))
            && self.rho.check(c, &FinPoset::chain(n))
    }

    /// `φ|{1} = f(ρ)`.
    pub fn is_compatible(&self, d: &StrictTwoCat, f: &TwoFunctor) -> bool {
        let n = self.dim();
        let row: Vec<usize> = (0..=n).map(|r| FinPoset::elt(1, r)).collect();
        self.phi.pullback(d, &FinPoset::chain(n), &row) == self.rho.map(f)
    }

    pub fn is_tame(&self, d: &StrictTwoCat) -> bool {
        contrary_triangles(self.dim())
            .into_iter()
            .all(|(p, q, r)| self.phi.cell2(d, p, q, r) == d.id2[self.phi.arrow(d, p, r)])
    }

    /// Pullback along a monotone map `[m] -> [n]`.
    pub fn restrict(&self, c: &StrictTwoCat, d: &StrictTwoCat, theta: &[usize]) -> FibSimplex {
        let m = theta.len() - 1;
        let prism_theta: Vec<usize> = (0..2 * (m + 1))
            .map(|e| {
                let (a, r) = FinPoset::coords(e);
                FinPoset::elt(a, theta[r])
            })
            .collect();
        FibSimplex {
            phi: self.phi.pullback(d, &FinPoset::prism(m), &prism_theta),
            rho: self.rho.pullback(c, &FinPoset::chain(m), theta),
        }
    }

    /// The row-0 part, a simplex of the base.
    pub fn project(&self, d: &StrictTwoCat) -> LaxFn {
        let n = self.dim();
        let row: Vec<usize> = (0..=n).map(|r| FinPoset::elt(0, r)).collect();
        self.phi.pullback(d, &FinPoset::chain(n), &row)
    }

    /// For an edge: `u₀`, `a`, `α`, `θ: f(α)∘u₀ ⇒ u₁∘a`.
    pub fn edge_data(&self, d: &StrictTwoCat) -> (usize, usize, usize, usize) {
        let (p00, p01, p11) = (FinPoset::elt(0, 0), FinPoset::elt(0, 1), FinPoset::elt(1, 1));
        (
            self.phi.arrow(d, p00, FinPoset::elt(1, 0)),
            self.phi.arrow(d, p00, p01),
            self.rho.arrow_raw(0, 1),
            self.phi.cell2(d, p00, p01, p11),
        )
    }
}

impl LaxFn {
    fn arrow_raw(&self, p: usize, q: usize) -> usize {
        self.arr[&(p, q)]
    }
}

/// `♮`: Cartesian edges only; `†`: also edges over marked 1-cells with invertible 2-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Natural,
    Dagger,
}

/// The free fibration as a simplex source.
pub struct TameSource<'a> {
    pub c: &'a Marking2Cat,
    pub d: &'a StrictTwoCat,
    pub f: &'a TwoFunctor,
    pub mode: Mode,
}

impl TameSource<'_> {
    fn constraints(&self, rho: &LaxFn, n: usize) -> LaxConstraints {
        let mut cons = LaxConstraints { identity_cells: contrary_triangles(n), ..Default::default() };
        let img = rho.map(self.f);
        for r in 0..=n {
            cons.obj.insert(FinPoset::elt(1, r), img.obj[r]);
        }
        for (&(p, q), &g) in &img.arr {
            cons.arr.insert((FinPoset::elt(1, p), FinPoset::elt(1, q)), g);
        }
        for (&(p, q, r), &a) in &img.cell {
            cons.cell.insert((FinPoset::elt(1, p), FinPoset::elt(1, q), FinPoset::elt(1, r)), a);
        }
        cons
    }

    /// All tame `n`-simplices over a fixed `ρ`.
    pub fn over(&self, rho: &LaxFn) -> Vec<FibSimplex> {
        let n = rho.obj.len() - 1;
        enumerate_lax(self.d, &FinPoset::prism(n), &self.constraints(rho, n))
            .into_iter()
            .map(|phi| FibSimplex { phi, rho: rho.clone() })
            .collect()
    }

    pub fn natural_marked(&self, x: &FibSimplex) -> bool {
        let (_, _, alpha, theta) = x.edge_data(self.d);
        self.c.base.is_equivalence(alpha) && self.d.is_invertible2(theta)
    }
}

impl SimplexSource for TameSource<'_> {
    type Data = FibSimplex;

    fn simplices(&self, n: usize) -> Vec<FibSimplex> {
        let rhos = enumerate_lax(&self.c.base, &FinPoset::chain(n), &LaxConstraints::default());
        rhos.iter().flat_map(|rho| self.over(rho)).collect()
    }

    fn restrict(&self, x: &FibSimplex, theta: &[usize]) -> FibSimplex {
        x.restrict(&self.c.base, self.d, theta)
    }

    fn kind(&self) -> Kind {
        Kind::MB
    }

    fn marked(&self, x: &FibSimplex) -> bool {
        let (_, _, alpha, theta) = x.edge_data(self.d);
        match self.mode {
            Mode::Natural => self.natural_marked(x),
            Mode::Dagger => self.natural_marked(x) || (self.c.is_marked(alpha) && self.d.is_invertible2(theta)),
        }
    }

    fn thin(&self, x: &FibSimplex) -> bool {
        let row0 = self.d.is_invertible2(x.phi.cell2(self.d, 0, 2, 4));
        self.lean(x) && row0
    }

    fn lean(&self, x: &FibSimplex) -> bool {
        self.c.base.is_invertible2(x.rho.cell2(&self.c.base, 0, 1, 2))
    }
}

/// `F(C) → N(D)` materialized up to `top`.
pub struct FreeFibration {
    pub c: Marking2Cat,
    pub d: StrictTwoCat,
    pub f: TwoFunctor,
    pub mode: Mode,
    pub total: Materialized<FibSimplex>,
    pub base: Materialized<LaxFn>,
    pub projection: DecMap,
}

impl FreeFibration {
    pub fn source(&self) -> TameSource<'_> {
        TameSource { c: &self.c, d: &self.d, f: &self.f, mode: self.mode }
    }

    pub fn top(&self) -> usize {
        self.total.data.len() - 1
    }

    /// `γ` on a simplex of `C`: `φ` constant in the first coordinate.
    pub fn gamma(&self, rho: &LaxFn) -> FibSimplex {
        let n = rho.obj.len() - 1;
        let flat: Vec<usize> = (0..2 * (n + 1)).map(|e| FinPoset::coords(e).1).collect();
        FibSimplex { phi: rho.map(&self.f).pullback(&self.d, &FinPoset::prism(n), &flat), rho: rho.clone() }
    }

    /// The base vertex of an object `u: d → f(c)` is `d`.
    pub fn object_data(&self, v: usize) -> (usize, usize, usize) {
        let x = &self.total.data[0][v];
        (x.phi.obj[0], x.rho.obj[0], x.phi.arrow(&self.d, 0, 1))
    }

    pub fn base_vertex(&self, d: usize) -> Option<usize> {
        self.base.data[0].iter().position(|x| x.obj[0] == d)
    }

    pub fn locate(&self, x: &FibSimplex) -> Option<Simplex> {
        self.total.locate(&self.source(), x, x.dim())
    }
}

/// Builds the tame model of `F(C) → N(D)` up to dimension `top`.
pub fn build_free_fibration(
    c: &Marking2Cat,
    d: &Marking2Cat,
    f: &TwoFunctor,
    mode: Mode,
    top: usize,
) -> Result<FreeFibration> {
    let report = c.base.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(report.join("; ")));
    }
    let report = d.base.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(report.join("; ")));
    }
    let report = f.validate(&c.base, &d.base);
    if !report.is_empty() {
        return Err(Error::Input(report.join("; ")));
    }
    if mode == Mode::Dagger {
        f.check_marking(c, d)?;
    }
    let src = TameSource { c, d: &d.base, f, mode };
    let total = materialize(&src, top);
    let base = base_nerve(&d.base, top);
    let mut images = Vec::new();
    for k in 0..total.sset.dims.len() {
        let row = total.data[k]
            .iter()
            .map(|x| {
                base.locate(&crate::strict_two_cat::NerveSource::base(&d.base), &x.project(&d.base), k)
                    .expect("projection lands in the base")
            })
            .collect();
        images.push(row);
    }
    Ok(FreeFibration {
        c: c.clone(),
        d: d.base.clone(),
        f: f.clone(),
        mode,
        total,
        base,
        projection: DecMap { images },
    })
}

/// `γ: C → F(C)` as a map out of the scaled nerve of `C`.
pub fn unit(ff: &FreeFibration) -> (DecoratedSSet, DecMap) {
    let nc = scaled_nerve_materialized(&ff.c, ff.top());
    let images = (0..nc.sset.dims.len())
        .map(|k| {
            nc.data[k]
                .iter()
                .map(|rho| ff.locate(&ff.gamma(rho)).expect("γ lands in the tame model"))
                .collect()
        })
        .collect();
    (nc.sset, DecMap { images })
}

/// The fibre over `d`: simplices projecting to the degenerate simplex on `d`.
pub fn fiber(ff: &FreeFibration, d: usize) -> Result<(DecoratedSSet, DecMap)> {
    let v = ff
        .base_vertex(d)
        .ok_or_else(|| Error::UnknownObject(format!("object {d} of the base")))?;
    let (mut sub, inc) = crate::decorated_sset::subobject(&ff.total.sset, |s| {
        let y = ff.projection.apply(s);
        y.k == 0 && y.id == v
    });
    if sub.thin == sub.lean {
        sub.kind = Kind::MS;
    }
    sub.normalize_kind();
    Ok((sub, inc))
}

/// Objects `(d, c, u)` of the total space, in vertex order.
pub fn objects(ff: &FreeFibration) -> Vec<(usize, usize, usize)> {
    (0..ff.total.sset.count(0)).map(|v| ff.object_data(v)).collect()
}

/// Checks that every `∂Δ^n → X` has exactly one filler, for `n` in `lo..=hi`.
pub fn coskeletal_check(x: &DecoratedSSet, lo: usize, hi: usize) -> std::result::Result<(), String> {
    use crate::decorated_sset::{enumerate_maps, standard_simplex, Deco, Shape};
    for n in lo..=hi.min(x.dims.len().saturating_sub(1)) {
        let mut bd = standard_simplex(n, Shape::Boundary, &Deco::plain(), n).map_err(|e| e.to_string())?;
        bd.kind = Kind::PLAIN;
        let mut plain = x.clone();
        plain.kind = Kind::PLAIN;
        plain.normalize_kind();
        let top: Vec<Simplex> = plain.simplices(n);
        for m in enumerate_maps(&bd, &plain) {
            let faces: Vec<Simplex> = (0..=n)
                .map(|i| {
                    let mut others: Vec<usize> = (0..=n).collect();
                    others.remove(i);
                    let f = bd.vertex_index()[&others][0].clone();
                    m.apply(&f)
                })
                .collect();
            let fillers = top
                .iter()
                .filter(|s| (0..=n).all(|i| plain.face(s, i) == faces[i]))
                .count();
            if fillers != 1 {
                return Err(format!("a {n}-sphere has {fillers} fillers"));
            }
        }
    }
    Ok(())
}

/// Edges of the total space marked in the given mode, by nondegenerate id.
pub fn marked_edges(ff: &FreeFibration) -> BTreeSet<usize> {
    ff.total.sset.marked.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_functors;

    #[test]
    fn terminal_total_is_a_point() {
        let fx = &fixture_functors()[0];
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap();
        assert_eq!(ff.total.sset.dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn objects_are_arrows_into_the_image() {
        for fx in fixture_functors() {
            let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 2).unwrap();
            let mut want = 0;
            for d in 0..fx.d.base.n_objects() {
                for c in 0..fx.c.base.n_objects() {
                    want += fx.d.base.hom1(d, fx.f.obj[c]).len();
                }
            }
            assert_eq!(ff.total.sset.count(0), want, "{}", fx.name);
        }
    }

    #[test]
    fn simplices_are_tame_and_compatible() {
        for fx in fixture_functors() {
            let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Dagger, 3).unwrap();
            for row in &ff.total.data {
                for x in row {
                    assert!(x.is_well_formed(&fx.c.base, &fx.d.base));
                    assert!(x.is_tame(&fx.d.base));
                    assert!(x.is_compatible(&fx.d.base, &fx.f));
                }
            }
            ff.projection.check(&ff.total.sset, &ff.base.sset).unwrap();
            ff.total.sset.check_simplicial_identities(3).unwrap();
        }
    }

    #[test]
    fn unit_is_a_monomorphism_over_the_base() {
        for fx in fixture_functors() {
            let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap();
            let (nc, g) = unit(&ff);
            g.check(&nc, &ff.total.sset).unwrap();
            assert!(g.is_mono(), "{}", fx.name);
        }
    }

    #[test]
    fn arrow_fiber_over_zero() {
        // p: 2[pt] → 2[pt]; fibre over 0 has id₀ and the arrow 0 → 1.
        let fx = fixture_functors().into_iter().find(|f| f.name == "bracket-pt-pt").unwrap();
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap();
        let (fib, _) = fiber(&ff, 0).unwrap();
        assert_eq!(fib.count(0), 2);
        assert!(fiber(&ff, 9).is_err());
    }

    #[test]
    fn total_is_three_coskeletal() {
        for fx in fixture_functors().into_iter().take(3) {
            let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 4).unwrap();
            coskeletal_check(&ff.total.sset, 4, 4).unwrap();
        }
    }
}
