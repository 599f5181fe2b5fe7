//! Marked cofinality of 2-functors through initial objects of localized lax
//! slices, with the 1-categorical criterion as an oracle.

mod extras;
mod joyal;

use std::collections::BTreeMap;

use serde::Serialize;

pub use extras::{eta_terminal_check, theorem_a_localizations, EtaReport, TheoremAReport};
pub use joyal::{duality_corpus, joyal_cofinal, two_bracket_duality, Agreement, DualityCase, DualityReport, JoyalReport};

use crate::decorated_sset::DEFAULT_CAP;
use crate::error::{Error, Result};
use crate::homotopy_engine::{initial_in_localization, Budgets, Tri, Verdict};
use crate::strict_two_cat::{fr, slice_fiber, FrTwoCat, Marking2Cat, SliceFiber, TwoFunctor};

/// A verdict for one condition at one object, with the verdicts it rests on.
#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub value: Tri,
    pub detail: String,
    pub witnesses: Vec<(String, Verdict)>,
}

impl Condition {
    fn new(value: Tri, detail: impl Into<String>) -> Self {
        Condition { value, detail: detail.into(), witnesses: Vec::new() }
    }
}

/// `u: d → f(c)` as an object of the lax slice.
#[derive(Clone, Debug, Serialize)]
pub struct SliceObject {
    pub c: usize,
    pub u: usize,
    pub name: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectRecord {
    pub d: usize,
    pub name: String,
    /// The `g_d` found for condition (i), if any.
    pub chosen: Option<SliceObject>,
    pub initial_in_both: Condition,
    pub marked_are_initial: Condition,
    pub restriction_preserves: Condition,
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinalityReport {
    pub verdict: Tri,
    pub objects: Vec<ObjectRecord>,
    pub counterexample: Option<String>,
    pub cap: usize,
    pub budgets: Budgets,
    /// Condition (iii) ranges over the stored marked 1-cells only.
    pub marked_scope: &'static str,
}

fn combine(values: impl IntoIterator<Item = Tri>) -> Tri {
    let mut out = Tri::Yes;
    for v in values {
        match v {
            Tri::No => return Tri::No,
            Tri::Unknown => out = Tri::Unknown,
            Tri::Yes => {}
        }
    }
    out
}

/// Lax slices over one object, with memoized initiality verdicts.
struct Slices<'a> {
    frc: &'a FrTwoCat,
    slc: SliceFiber,
    cache: BTreeMap<usize, Verdict>,
}

impl<'a> Slices<'a> {
    fn new(frc: &'a FrTwoCat, d: &Marking2Cat, obj: usize) -> Result<Self> {
        Ok(Slices { frc, slc: slice_fiber(frc, &d.base, obj)?, cache: BTreeMap::new() })
    }

    fn objects(&self) -> Vec<(usize, usize, usize)> {
        self.slc.index[0].iter().enumerate().map(|(x, &o)| (x, self.frc.objects[o].c, self.frc.objects[o].u)).collect()
    }

    fn find(&self, c: usize, u: usize) -> Option<usize> {
        self.slc.find(self.frc, c, u)
    }

    fn initial(&mut self, x: usize, b: &Budgets) -> Verdict {
        if let Some(v) = self.cache.get(&x) {
            return v.clone();
        }
        let v = initial_in_localization(&self.slc.cat, x, b).expect("slice object exists");
        self.cache.insert(x, v.clone());
        v
    }
}

/// Decides whether a marking-preserving `f: C† → D†` is marked cofinal,
/// object by object of `D`.
pub fn check_cofinal(c: &Marking2Cat, d: &Marking2Cat, f: &TwoFunctor, b: &Budgets) -> Result<CofinalityReport> {
    let problems = f.validate(&c.base, &d.base);
    if !problems.is_empty() {
        return Err(Error::Input(problems.join("; ")));
    }
    f.check_marking(c, d)?;
    let frc = fr(c, d, f)?;
    let frd = fr(d, d, &TwoFunctor::identity(&d.base))?;
    let (cb, db) = (&c.base, &d.base);
    let name_u = |cc: usize, u: usize| format!("{}: {} → {}", db.one_cells[u].name, db.objects[db.src1(u)], cb.objects[cc]);

    let mut slices = Vec::new();
    let mut records = Vec::new();
    for dobj in 0..db.n_objects() {
        let mut sc = Slices::new(&frc, d, dobj)?;
        let mut sd = Slices::new(&frd, d, dobj)?;
        let mut objs = sc.objects();
        // marked candidates first, then the rest in index order
        objs.sort_by_key(|&(x, _, u)| (!d.is_marked(u), x));

        let mut cond_i = Condition::new(Tri::No, "no object of the slice is initial on both sides");
        let mut chosen = None;
        let mut undecided = false;
        for &(x, cc, u) in &objs {
            let vc = sc.initial(x, b);
            let y = sd.find(f.obj[cc], u).expect("f maps slice objects to slice objects");
            let vd = sd.initial(y, b);
            let both = combine([vc.value, vd.value]);
            let label = name_u(cc, u);
            cond_i.witnesses.push((format!("{label} in C-slice"), vc));
            cond_i.witnesses.push((format!("{label} in D-slice"), vd));
            match both {
                Tri::Yes => {
                    chosen = Some(SliceObject { c: cc, u, name: label.clone() });
                    cond_i.value = Tri::Yes;
                    cond_i.detail = format!("{label} is initial on both sides");
                    break;
                }
                Tri::Unknown => undecided = true,
                Tri::No => {}
            }
        }
        if chosen.is_none() && undecided {
            cond_i.value = Tri::Unknown;
            cond_i.detail = "no candidate decided initial on both sides".into();
        }
        if objs.is_empty() {
            cond_i.detail = "the slice is empty".into();
        }

        let mut cond_ii = Condition::new(Tri::Yes, "every marked d → f(c) is initial");
        let mut vals = Vec::new();
        for &(x, cc, u) in objs.iter().filter(|(_, _, u)| d.is_marked(*u)) {
            let v = sc.initial(x, b);
            vals.push(v.value);
            cond_ii.witnesses.push((name_u(cc, u), v));
        }
        cond_ii.value = combine(vals);
        if cond_ii.value != Tri::Yes {
            cond_ii.detail = match cond_ii.witnesses.iter().find(|(_, v)| v.value == cond_ii.value) {
                Some((n, _)) => format!("{n} is not shown initial"),
                None => String::new(),
            };
        }
        records.push(ObjectRecord {
            d: dobj,
            name: db.objects[dobj].clone(),
            chosen,
            initial_in_both: cond_i,
            marked_are_initial: cond_ii,
            restriction_preserves: Condition::new(Tri::Yes, ""),
        });
        slices.push(sc);
    }

    for dobj in 0..db.n_objects() {
        let mut cond = Condition::new(Tri::Yes, "every marked d → b sends the chosen initial object to an initial one");
        let mut vals = Vec::new();
        for e in d.marked.iter().copied().filter(|&e| db.src1(e) == dobj && e != db.id1[dobj]) {
            let bobj = db.tgt1(e);
            let Some(g) = records[bobj].chosen.clone() else {
                vals.push(Tri::Unknown);
                cond.detail = format!("no initial object known over {}", db.objects[bobj]);
                continue;
            };
            let u = db.comp1(g.u, e);
            let x = slices[dobj].find(g.c, u).expect("restriction stays in the slice");
            let v = slices[dobj].initial(x, b);
            vals.push(v.value);
            cond.witnesses.push((format!("{} restricted along {}", g.name, db.one_cells[e].name), v));
        }
        cond.value = combine(vals);
        if cond.value == Tri::No {
            cond.detail = "a restriction functor loses the initial object".into();
        }
        records[dobj].restriction_preserves = cond;
    }

    let verdict = combine(records.iter().flat_map(|r| {
        [r.initial_in_both.value, r.marked_are_initial.value, r.restriction_preserves.value]
    }));
    let counterexample = records.iter().find_map(|r| {
        let conds = [("(i)", &r.initial_in_both), ("(ii)", &r.marked_are_initial), ("(iii)", &r.restriction_preserves)];
        conds.iter().find(|(_, c)| c.value == Tri::No).map(|(tag, c)| format!("d = {}: condition {tag} fails: {}", r.name, c.detail))
    });
    Ok(CofinalityReport {
        verdict,
        objects: records,
        counterexample,
        cap: DEFAULT_CAP,
        budgets: *b,
        marked_scope: "condition (iii) quantifies over the stored marked 1-cells",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{Category, Functor1};
    use crate::strict_two_cat::{walking_two_cell, StrictTwoCat};

    fn bracket(k: &Category, s: &Category, obj: Vec<usize>) -> (Marking2Cat, Marking2Cat, TwoFunctor) {
        let p = Functor1::from_object_map(k, s, obj).unwrap();
        (
            Marking2Cat::minimal(StrictTwoCat::two_bracket(k)),
            Marking2Cat::minimal(StrictTwoCat::two_bracket(s)),
            TwoFunctor::two_bracket(&p),
        )
    }

    #[test]
    fn identities_are_cofinal() {
        let b = Budgets::default();
        for base in [StrictTwoCat::terminal(), walking_two_cell(), StrictTwoCat::from_category(&Category::walking_arrow())] {
            for m in [Marking2Cat::minimal(base.clone()), Marking2Cat::sharp(base.clone())] {
                let r = check_cofinal(&m, &m, &TwoFunctor::identity(&base), &b).unwrap();
                assert_eq!(r.verdict, Tri::Yes, "{:?}", r.counterexample);
            }
        }
    }

    #[test]
    fn bracket_of_final_vertex_inclusion() {
        let (c, d, f) = bracket(&Category::point(), &Category::walking_arrow(), vec![1]);
        let r = check_cofinal(&c, &d, &f, &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Tri::No);
        let ce = r.counterexample.unwrap();
        assert!(ce.starts_with("d = 0: condition (i)"), "{ce}");
    }

    #[test]
    fn bracket_of_initial_vertex_inclusion() {
        let (c, d, f) = bracket(&Category::point(), &Category::walking_arrow(), vec![0]);
        let r = check_cofinal(&c, &d, &f, &Budgets::default()).unwrap();
        assert_eq!(r.verdict, Tri::Yes);
        let chosen = r.objects[0].chosen.as_ref().unwrap();
        assert_eq!(chosen.c, 0);
    }

    #[test]
    fn marking_is_checked() {
        let k = Category::point();
        let s = Category::walking_arrow();
        let p = Functor1::from_object_map(&k, &s, vec![0]).unwrap();
        let c = Marking2Cat::sharp(StrictTwoCat::two_bracket(&k));
        let d = Marking2Cat::minimal(StrictTwoCat::two_bracket(&s));
        assert!(matches!(
            check_cofinal(&c, &d, &TwoFunctor::two_bracket(&p), &Budgets::default()),
            Err(Error::NotMarkingPreserving(_))
        ));
    }

    #[test]
    fn report_serializes() {
        let (c, d, f) = bracket(&Category::point(), &Category::walking_arrow(), vec![1]);
        let r = check_cofinal(&c, &d, &f, &Budgets::default()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["verdict"], "No");
        assert_eq!(j["budgets"]["collapse_states"], 20_000);
    }
}
