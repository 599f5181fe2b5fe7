use std::collections::BTreeSet;

use super::{enumerate_lax, FinPoset, LaxConstraints, LaxFn, Marking2Cat, StrictTwoCat};
use crate::decorated_sset::{materialize, DecoratedSSet, Kind, Materialized, SimplexSource};

/// Nerve simplices as normal lax functors `[n] -> C`.
pub struct NerveSource<'a> {
    pub c: &'a StrictTwoCat,
    pub marked: BTreeSet<usize>,
    pub lean: LeanRule,
}

/// Which nerve triangles are lean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeanRule {
    /// Lean iff thin.
    Thin,
    /// Every triangle (the convention for a base).
    All,
    /// Lean iff the 2-cell lies in the given set.
    Cells(BTreeSet<usize>),
}

impl<'a> NerveSource<'a> {
    pub fn new(m: &'a Marking2Cat) -> Self {
        NerveSource { c: &m.base, marked: m.marked.clone(), lean: LeanRule::Thin }
    }

    pub fn base(c: &'a StrictTwoCat) -> Self {
        NerveSource { c, marked: (0..c.one_cells.len()).collect(), lean: LeanRule::All }
    }
}

impl SimplexSource for NerveSource<'_> {
    type Data = LaxFn;

    fn simplices(&self, n: usize) -> Vec<LaxFn> {
        enumerate_lax(self.c, &FinPoset::chain(n), &LaxConstraints::default())
    }

    fn restrict(&self, x: &LaxFn, theta: &[usize]) -> LaxFn {
        x.pullback(self.c, &FinPoset::chain(theta.len() - 1), theta)
    }

    fn kind(&self) -> Kind {
        Kind::MB
    }

    fn marked(&self, x: &LaxFn) -> bool {
        self.marked.contains(&x.arrow(self.c, 0, 1))
    }

    fn thin(&self, x: &LaxFn) -> bool {
        self.c.is_invertible2(x.cell2(self.c, 0, 1, 2))
    }

    fn lean(&self, x: &LaxFn) -> bool {
        match &self.lean {
            LeanRule::Thin => self.thin(x),
            LeanRule::All => true,
            LeanRule::Cells(s) => self.thin(x) || s.contains(&x.cell2(self.c, 0, 1, 2)),
        }
    }
}

/// `N^sc(C)` with the given marking; thin = lean = invertible 2-cell.
pub fn scaled_nerve(m: &Marking2Cat, top: usize) -> DecoratedSSet {
    scaled_nerve_materialized(m, top).sset
}

pub fn scaled_nerve_materialized(m: &Marking2Cat, top: usize) -> Materialized<LaxFn> {
    materialize(&NerveSource::new(m), top)
}

/// The nerve used as a base: every edge marked and every triangle lean.
pub fn base_nerve(c: &StrictTwoCat, top: usize) -> Materialized<LaxFn> {
    materialize(&NerveSource::base(c), top)
}
