//! Generating anodyne inclusions and right lifting checks against them.

mod catalog;

pub use catalog::{generators, kan_library, Family, GeneratorInstance, Tag};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decorated_sset::{pushout, search_maps, DecMap, DecoratedSSet, Kind, MapSearch, Simplex, TargetIndex};
use crate::error::{Error, Result};

/// A commuting square `gen.domain → X`, `gen.codomain → S` over `p: X → S`.
#[derive(Clone, Debug)]
pub struct LiftingProblem<'a> {
    pub gen: &'a GeneratorInstance,
    pub x: &'a DecoratedSSet,
    pub s: &'a DecoratedSSet,
    pub p: &'a DecMap,
    pub top: DecMap,
    pub bottom: DecMap,
}

impl LiftingProblem<'_> {
    pub fn commutes(&self) -> bool {
        self.gen.domain.dims.iter().enumerate().all(|(k, &c)| {
            (0..c).all(|id| {
                let a = Simplex::nondeg(k, id);
                self.p.apply(&self.top.apply(&a)) == self.bottom.apply(&self.gen.inclusion.apply(&a))
            })
        })
    }
}

fn fixed_from(gen: &GeneratorInstance, top: &DecMap) -> BTreeMap<(usize, usize), Simplex> {
    let mut fixed = BTreeMap::new();
    for (k, row) in gen.inclusion.images.iter().enumerate() {
        for (id, y) in row.iter().enumerate() {
            fixed.insert((y.k, y.id), top.apply(&Simplex::nondeg(k, id)));
        }
    }
    fixed
}

/// A decoration-preserving diagonal, or `None` after exhaustive search.
pub fn solve(lp: &LiftingProblem<'_>) -> Option<DecMap> {
    let b = &lp.gen.codomain;
    let idx = TargetIndex::new(lp.x, b.dims.len().saturating_sub(1));
    solve_indexed(lp, &idx)
}

fn solve_indexed(lp: &LiftingProblem<'_>, idx: &TargetIndex) -> Option<DecMap> {
    let allow = |a: &Simplex, y: &Simplex| lp.p.apply(y) == lp.bottom.apply(a);
    let opts = MapSearch { fixed: fixed_from(lp.gen, &lp.top), allow: Some(&allow), limit: Some(1) };
    search_maps(&lp.gen.codomain, lp.x, idx, &opts).into_iter().next()
}

/// Reads an object with a single scaling, as the MS family expects.
pub fn as_ms(x: &DecoratedSSet) -> DecoratedSSet {
    let mut y = x.clone();
    y.kind = Kind::MS;
    y.normalize_kind();
    y
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub family: Family,
    pub n_max: usize,
    /// Lifting problems solved per generator instance.
    pub squares: Vec<(String, usize)>,
    /// The Kan complexes standing in for "every Kan complex".
    pub library: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub generator: String,
    pub top: DecMap,
    pub bottom: DecMap,
}

#[derive(Clone, Debug, Serialize)]
pub enum Verdict {
    Fibration(Certificate),
    Counterexample(Counterexample),
}

impl Verdict {
    pub fn is_fibration(&self) -> bool {
        matches!(self, Verdict::Fibration(_))
    }
}

/// Checks the right lifting property of `p: X → S` against every generator
/// instance of the family up to `n_max`. `budget` bounds the number of squares.
pub fn certify_fibration(
    x: &DecoratedSSet,
    s: &DecoratedSSet,
    p: &DecMap,
    family: Family,
    n_max: usize,
    budget: Option<usize>,
) -> Result<Verdict> {
    certify_with(x, s, p, &generators(family, n_max), family, n_max, budget)
}

/// As [`certify_fibration`] over an explicit list of generator instances.
pub fn certify_with(
    x: &DecoratedSSet,
    s: &DecoratedSSet,
    p: &DecMap,
    gens: &[GeneratorInstance],
    family: Family,
    n_max: usize,
    budget: Option<usize>,
) -> Result<Verdict> {
    p.check(x, s).map_err(Error::Input)?;
    let (x, s) = match family {
        Family::MB => (x.clone(), s.clone()),
        Family::MS => (as_ms(x), as_ms(s)),
    };
    let top_dim = gens.iter().map(|g| g.codomain.dims.len()).max().unwrap_or(1) - 1;
    let idx_x = TargetIndex::new(&x, top_dim);
    let idx_s = TargetIndex::new(&s, top_dim);
    let mut squares = Vec::new();
    let mut total = 0usize;
    for gen in gens {
        let mut count = 0;
        for bottom in search_maps(&gen.codomain, &s, &idx_s, &MapSearch::default()) {
            let want = |a: &Simplex, y: &Simplex| p.apply(y) == bottom.apply(&gen.inclusion.apply(a));
            let opts = MapSearch { allow: Some(&want), ..Default::default() };
            for top in search_maps(&gen.domain, &x, &idx_x, &opts) {
                total += 1;
                if budget.is_some_and(|b| total > b) {
                    return Err(Error::Budget(format!("more than {} lifting problems", budget.unwrap())));
                }
                let lp = LiftingProblem { gen, x: &x, s: &s, p, top, bottom: bottom.clone() };
                if solve_indexed(&lp, &idx_x).is_none() {
                    return Ok(Verdict::Counterexample(Counterexample {
                        generator: gen.name(),
                        top: lp.top,
                        bottom: lp.bottom,
                    }));
                }
                count += 1;
            }
        }
        squares.push((gen.name(), count));
    }
    Ok(Verdict::Fibration(Certificate {
        family,
        n_max,
        squares,
        library: kan_library(n_max).into_iter().map(|(n, _)| n).collect(),
    }))
}

/// One step of an anodyne composite: a pushout of a catalog generator along
/// `attach: domain → current`.
#[derive(Clone, Debug)]
pub struct Step {
    pub family: Family,
    pub tag: Tag,
    pub n: usize,
    pub i: Option<usize>,
    pub library: Option<String>,
    pub attach: DecMap,
}

#[derive(Clone, Debug, Serialize)]
pub struct Composite {
    pub object: DecoratedSSet,
    pub inclusion: DecMap,
    /// Generator names in the order they were attached.
    pub certificate: Vec<String>,
}

/// Replays a sequence of generator pushouts starting at `x0`.
pub fn anodyne_compose(x0: &DecoratedSSet, steps: &[Step]) -> Result<Composite> {
    let mut cur = x0.clone();
    let mut inclusion = DecMap::identity(x0);
    let mut certificate = Vec::new();
    for st in steps {
        let gen = generators(st.family, st.n.max(1))
            .into_iter()
            .find(|g| g.tag == st.tag && g.n == st.n && g.i == st.i && g.library == st.library && !g.derived)
            .ok_or_else(|| Error::NotAGenerator(format!("{:?} n={} i={:?}", st.tag, st.n, st.i)))?;
        st.attach.check(&gen.domain, &cur).map_err(Error::NotAGenerator)?;
        let po = pushout(&gen.domain, &gen.codomain, &cur, &gen.inclusion, &st.attach)?;
        inclusion = inclusion.then(&po.from_c);
        cur = po.object;
        certificate.push(gen.name());
    }
    Ok(Composite { object: cur, inclusion, certificate })
}

#[cfg(test)]
mod free_tests {
    use super::*;
    use crate::fixtures::{fixture_functors, random_bracket_functors};
    use crate::free_fibration::{build_free_fibration, Mode};

    #[test]
    fn free_projection_is_certified() {
        for fx in fixture_functors().into_iter().chain(random_bracket_functors(5, 4, 2)) {
            for mode in [Mode::Natural, Mode::Dagger] {
                let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, mode, 4).unwrap();
                let v = certify_fibration(&ff.total.sset, &ff.base.sset, &ff.projection, Family::MB, 3, None).unwrap();
                assert!(v.is_fibration(), "{} {:?}: {:?}", fx.name, mode, v);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let fx = &fixture_functors()[1];
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap();
        let r = certify_fibration(&ff.total.sset, &ff.base.sset, &ff.projection, Family::MB, 3, Some(5));
        assert!(matches!(r, Err(Error::Budget(_))));
    }
}
