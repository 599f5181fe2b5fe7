//! Homotopy-type verdicts for finite simplicial sets, and initiality in a
//! localization of a marked 2-category.

mod collapse;
mod homology;
mod pi1;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

pub use collapse::{dunce_hat, find_collapse, replay_collapse, CollapseOutcome, CollapseStep};
pub use homology::{boundary_matrix, homology, invariant_factors, HomologyGroup, HomologyResult};
pub use pi1::{abelianization, edge_path_presentation, pi1, simplify, Pi1Result, Presentation, Word};

use crate::category::Category;
use crate::decorated_sset::DecoratedSSet;
use crate::error::{Error, Result};
use crate::strict_two_cat::{base_nerve, Marking2Cat, StrictTwoCat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn as_str(self) -> &'static str {
        match self {
            Tri::Yes => "Yes",
            Tri::No => "No",
            Tri::Unknown => "Unknown",
        }
    }
}

/// Search limits. Every report that depends on them embeds them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// States visited by the collapse search.
    pub collapse_states: usize,
    pub tietze_steps: usize,
    pub max_relator_len: usize,
    /// Top dimension materialized for nerves of categories.
    pub nerve_top: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { collapse_states: 20_000, tietze_steps: 500, max_relator_len: 4_000, nerve_top: 6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Evidence {
    Collapse { steps: Vec<CollapseStep> },
    Homology { degree: usize, group: HomologyGroup },
    Pi1 { presentation: String, reason: String },
    Empty,
    /// The nerve is a cone on this object.
    InitialObject { object: usize },
    TerminalObject { object: usize },
    /// Every hom-category out of `i` is a point.
    StrictlyInitial,
    /// A contractibility witness for every `Map(i, x)`.
    MapsContractible { maps: Vec<(usize, Verdict)> },
    /// Every 1-cell is marked, so the localization is the realization.
    Realization { verdict: Box<Verdict> },
    /// `i` is joined to an initial `object` by marked 1-cells.
    MarkedEquivalent { object: usize, path: Vec<usize>, verdict: Box<Verdict> },
    /// `x` cannot be reached from `i` once marked 1-cells are inverted.
    Unreachable { object: usize },
    /// Marked 1-cells are equivalences and `Map(i, x)` is not contractible.
    MapNotContractible { object: usize, verdict: Box<Verdict> },
    Inconclusive { reason: String, budgets: Budgets },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub value: Tri,
    pub evidence: Evidence,
}

impl Verdict {
    fn new(value: Tri, evidence: Evidence) -> Self {
        Verdict { value, evidence }
    }
}

/// Weak contractibility of a finite simplicial set whose nondegenerate
/// simplices are all stored.
pub fn weakly_contractible(x: &DecoratedSSet, b: &Budgets) -> Verdict {
    decide(x, None, b)
}

/// As [`weakly_contractible`], where `x` is only known to be complete through
/// dimension `exact` when `exact` is set. Collapses then prove nothing, and
/// obstructions count only in degrees below `exact`.
pub fn decide(x: &DecoratedSSet, exact: Option<usize>, b: &Budgets) -> Verdict {
    if x.count(0) == 0 {
        return Verdict::new(Tri::No, Evidence::Empty);
    }
    let mut notes = Vec::new();
    if exact.is_none() {
        match find_collapse(x, b.collapse_states) {
            CollapseOutcome::Collapsed(steps) => return Verdict::new(Tri::Yes, Evidence::Collapse { steps }),
            CollapseOutcome::Stuck { explored } => notes.push(format!("no collapse after {explored} states")),
            CollapseOutcome::BudgetExhausted { explored } => notes.push(format!("collapse budget of {explored} spent")),
        }
    } else {
        notes.push("truncated input, collapse not attempted".into());
    }
    let stored = x.dims.len().saturating_sub(1);
    let deg = match exact {
        None => stored.min(x.cap),
        Some(e) => e.saturating_sub(1).min(x.cap),
    };
    let h = homology(x, deg).expect("degree is within cap");
    if let Some(k) = h.first_obstruction() {
        return Verdict::new(Tri::No, Evidence::Homology { degree: k, group: h.reduced(k) });
    }
    if exact.is_none_or(|e| e >= 2) {
        let p = pi1(x, 0, b.tietze_steps, b.max_relator_len).expect("x has a vertex");
        if p.trivial == Tri::No {
            return Verdict::new(Tri::No, Evidence::Pi1 { presentation: p.presentation.to_string(), reason: p.reason });
        }
        notes.push(format!("π₁: {}", p.reason));
    }
    notes.push(format!("reduced homology vanishes through degree {deg}"));
    Verdict::new(Tri::Unknown, Evidence::Inconclusive { reason: notes.join("; "), budgets: *b })
}

/// Weak contractibility of the nerve of a finite category. Nerves of
/// categories without nonidentity loops are finite; otherwise the nerve is
/// truncated at `b.nerve_top`.
pub fn nerve_contractible(c: &Category, b: &Budgets) -> Verdict {
    if let Some(o) = c.initial_object() {
        return Verdict::new(Tri::Yes, Evidence::InitialObject { object: o });
    }
    if let Some(o) = c.terminal_object() {
        return Verdict::new(Tri::Yes, Evidence::TerminalObject { object: o });
    }
    let top = (c.n_objects() + 1).min(b.nerve_top);
    let x = c.nerve(top);
    // a nondegenerate chain of length n + 1 has a nondegenerate face of length n
    let complete = x.count(top) == 0;
    decide(&x, if complete { None } else { Some(top) }, b)
}

/// Weak contractibility of the classifying space of a strict 2-category.
/// The nerve counts as complete once a whole dimension is empty.
pub fn realization_contractible(c: &StrictTwoCat, b: &Budgets) -> Verdict {
    let top = b.nerve_top;
    let x = base_nerve(c, top).sset;
    let complete = x.count(top) == 0;
    decide(&x, if complete { None } else { Some(top) }, b)
}

/// Objects reachable from `i` along 1-cells forwards and marked 1-cells
/// backwards.
fn reachable(c: &Marking2Cat, i: usize) -> BTreeSet<usize> {
    let base = &c.base;
    let mut seen = BTreeSet::from([i]);
    let mut queue = VecDeque::from([i]);
    while let Some(a) = queue.pop_front() {
        for f in 0..base.one_cells.len() {
            let next = if base.src1(f) == a {
                Some(base.tgt1(f))
            } else if base.tgt1(f) == a && c.is_marked(f) {
                Some(base.src1(f))
            } else {
                None
            };
            if let Some(n) = next {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen
}

/// Whether `i` is initial in the localization of `C` at its marked 1-cells.
/// Yes needs every `Map(i, x)` contractible, or the same for an object joined
/// to `i` by marked 1-cells, or a contractible realization when every 1-cell
/// is marked. No needs a non-contractible realization in
/// that case, an object unreachable from `i`, or a non-contractible
/// `Map(i, x)` when every marked 1-cell is already an equivalence.
pub fn initial_in_localization(c: &Marking2Cat, i: usize, b: &Budgets) -> Result<Verdict> {
    let base = &c.base;
    if i >= base.n_objects() {
        return Err(Error::UnknownObject(format!("object {i}")));
    }
    let (direct_i, maps) = direct(base, i, b);
    if let Some(v) = direct_i {
        return Ok(v);
    }
    if (0..base.one_cells.len()).all(|f| c.is_marked(f)) {
        let v = realization_contractible(base, b);
        return Ok(Verdict::new(v.value, Evidence::Realization { verdict: Box::new(v) }));
    }
    // marked 1-cells become equivalences, and initiality is invariant under them
    for (j, path) in marked_component(c, i) {
        if let (Some(v), _) = direct(base, j, b) {
            return Ok(Verdict::new(Tri::Yes, Evidence::MarkedEquivalent { object: j, path, verdict: Box::new(v) }));
        }
    }
    let reach = reachable(c, i);
    if let Some(x) = (0..base.n_objects()).find(|x| !reach.contains(x)) {
        return Ok(Verdict::new(Tri::No, Evidence::Unreachable { object: x }));
    }
    let equivalences = base.equivalences();
    if c.marked.is_subset(&equivalences) {
        if let Some((x, v)) = maps.into_iter().find(|(_, v)| v.value == Tri::No) {
            return Ok(Verdict::new(Tri::No, Evidence::MapNotContractible { object: x, verdict: Box::new(v) }));
        }
    }
    Ok(Verdict::new(
        Tri::Unknown,
        Evidence::Inconclusive { reason: "some Map(i, x) is undecided or the marking inverts non-equivalences".into(), budgets: *b },
    ))
}

/// Initiality witnessed in `C` itself, with the per-object verdicts.
fn direct(base: &StrictTwoCat, i: usize, b: &Budgets) -> (Option<Verdict>, Vec<(usize, Verdict)>) {
    let homs: Vec<Category> = (0..base.n_objects()).map(|x| base.hom_category(i, x).0).collect();
    if homs.iter().all(|h| h.n_objects() == 1 && h.arrows.len() == 1) {
        return (Some(Verdict::new(Tri::Yes, Evidence::StrictlyInitial)), Vec::new());
    }
    let mut maps = Vec::new();
    for (x, h) in homs.iter().enumerate() {
        let v = nerve_contractible(h, b);
        let yes = v.value == Tri::Yes;
        maps.push((x, v));
        if !yes {
            // finish the list for the refutation rules
            maps.extend(homs.iter().enumerate().skip(x + 1).map(|(y, h)| (y, nerve_contractible(h, b))));
            return (None, maps);
        }
    }
    (Some(Verdict::new(Tri::Yes, Evidence::MapsContractible { maps })), Vec::new())
}

/// Objects joined to `i` by zigzags of marked 1-cells, with one such path each.
fn marked_component(c: &Marking2Cat, i: usize) -> Vec<(usize, Vec<usize>)> {
    let base = &c.base;
    let mut paths: BTreeMap<usize, Vec<usize>> = BTreeMap::from([(i, Vec::new())]);
    let mut queue = VecDeque::from([i]);
    while let Some(a) = queue.pop_front() {
        for &f in &c.marked {
            let other = if base.src1(f) == a {
                base.tgt1(f)
            } else if base.tgt1(f) == a {
                base.src1(f)
            } else {
                continue;
            };
            if !paths.contains_key(&other) {
                let mut p = paths[&a].clone();
                p.push(f);
                paths.insert(other, p);
                queue.push_back(other);
            }
        }
    }
    paths.remove(&i);
    paths.into_iter().collect()
}

/// [`initial_in_localization`] for a 1-category with marked arrows.
pub fn initial_in_localization_1cat(c: &Category, marked: &BTreeSet<usize>, i: usize, b: &Budgets) -> Result<Verdict> {
    let m = Marking2Cat::new(StrictTwoCat::from_category(c), marked.iter().copied());
    initial_in_localization(&m, i, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated_sset::{standard_simplex, Deco, Shape};
    use crate::strict_two_cat::walking_two_cell;

    fn simplex(n: usize, shape: Shape) -> DecoratedSSet {
        standard_simplex(n, shape, &Deco::plain(), 4).unwrap()
    }

    #[test]
    fn simplices_are_contractible() {
        for n in 0..=3 {
            let v = weakly_contractible(&simplex(n, Shape::Full), &Budgets::default());
            assert_eq!(v.value, Tri::Yes);
            let Evidence::Collapse { steps } = v.evidence else { panic!() };
            replay_collapse(&simplex(n, Shape::Full), &steps).unwrap();
        }
    }

    #[test]
    fn spheres_are_not() {
        let v = weakly_contractible(&simplex(2, Shape::Boundary), &Budgets::default());
        assert_eq!(v.value, Tri::No);
        assert!(matches!(v.evidence, Evidence::Homology { degree: 1, .. }));
        let v = weakly_contractible(&simplex(3, Shape::Boundary), &Budgets::default());
        assert!(matches!(v.evidence, Evidence::Homology { degree: 2, .. }));
    }

    #[test]
    fn empty_is_not_contractible() {
        let v = weakly_contractible(&DecoratedSSet::empty(crate::decorated_sset::Kind::PLAIN), &Budgets::default());
        assert_eq!(v.value, Tri::No);
    }

    #[test]
    fn acyclic_non_collapsible_is_unknown() {
        let v = weakly_contractible(&dunce_hat(), &Budgets::default());
        assert_eq!(v.value, Tri::Unknown);
        let tight = Budgets { collapse_states: 1, ..Budgets::default() };
        assert_eq!(weakly_contractible(&simplex(3, Shape::Full), &tight).value, Tri::Unknown);
    }

    #[test]
    fn two_points_are_disconnected() {
        let v = nerve_contractible(&Category::poset(2, &[]), &Budgets::default());
        assert!(matches!(v.evidence, Evidence::Homology { degree: 0, .. }));
    }

    #[test]
    fn nerves_with_initial_objects_are_contractible() {
        let c = Category::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(nerve_contractible(&c, &Budgets::default()).value, Tri::Yes);
        // infinite nerves: the walking isomorphism is a cone, BZ/2 has H₁ = Z/2
        assert_eq!(nerve_contractible(&Category::walking_iso(), &Budgets::default()).value, Tri::Yes);
        let z2 = Category::new(
            vec!["*".into()],
            vec![
                crate::category::Arrow { name: "e".into(), src: 0, tgt: 0 },
                crate::category::Arrow { name: "t".into(), src: 0, tgt: 0 },
            ],
            vec![0],
            vec![[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
        )
        .unwrap();
        let v = nerve_contractible(&z2, &Budgets::default());
        let Evidence::Homology { degree: 1, group } = v.evidence else { panic!("{v:?}") };
        assert_eq!(group.torsion, vec!["2".to_string()]);
    }

    #[test]
    fn localization_verdicts() {
        let b = Budgets::default();
        let arrow = Category::walking_arrow();
        let none = BTreeSet::new();
        assert_eq!(initial_in_localization_1cat(&arrow, &none, 0, &b).unwrap().value, Tri::Yes);
        let v = initial_in_localization_1cat(&arrow, &none, 1, &b).unwrap();
        assert!(matches!(v.evidence, Evidence::Unreachable { object: 0 }));
        // inverting 0 → 1 leaves a contractible groupoid, so 1 becomes initial
        let all: BTreeSet<usize> = (0..arrow.arrows.len()).collect();
        let v = initial_in_localization_1cat(&arrow, &all, 1, &b).unwrap();
        assert!(matches!(v.evidence, Evidence::Realization { .. }) && v.value == Tri::Yes);
        // two points, everything marked: the realization is disconnected
        let two = initial_in_localization_1cat(&Category::poset(2, &[]), &(0..2).collect(), 0, &b).unwrap();
        assert_eq!(two.value, Tri::No);
        assert!(initial_in_localization_1cat(&arrow, &none, 5, &b).is_err());
    }

    #[test]
    fn two_cells_in_homs() {
        let c = Marking2Cat::minimal(walking_two_cell());
        let b = Budgets::default();
        // hom(0, 1) is the walking arrow f ⇒ g
        let v = initial_in_localization(&c, 0, &b).unwrap();
        assert!(matches!(v.evidence, Evidence::MapsContractible { .. }), "{v:?}");
    }

    #[test]
    fn disconnected_hom_refutes() {
        // two parallel 1-cells with no 2-cell between them
        let c = Category::new(
            vec!["a".into(), "b".into()],
            vec![
                crate::category::Arrow { name: "1a".into(), src: 0, tgt: 0 },
                crate::category::Arrow { name: "1b".into(), src: 1, tgt: 1 },
                crate::category::Arrow { name: "f".into(), src: 0, tgt: 1 },
                crate::category::Arrow { name: "g".into(), src: 0, tgt: 1 },
            ],
            vec![0, 1],
            vec![[0, 0, 0], [1, 1, 1], [2, 0, 2], [1, 2, 2], [3, 0, 3], [1, 3, 3]],
        )
        .unwrap();
        let v = initial_in_localization_1cat(&c, &BTreeSet::new(), 0, &Budgets::default()).unwrap();
        assert_eq!(v.value, Tri::No);
        assert!(matches!(v.evidence, Evidence::MapNotContractible { object: 1, .. }));
    }
}
