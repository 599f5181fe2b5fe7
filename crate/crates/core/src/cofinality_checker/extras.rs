use serde::Serialize;

use super::check_cofinal;
use crate::error::{Error, Result};
use crate::homotopy_engine::{homology, Budgets, HomologyResult, Tri};
use crate::strict_two_cat::{base_nerve, fr, slice_fiber, Marking2Cat, StrictTwoCat, TwoFunctor};

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    /// Verdict of `check_cofinal` on the ♯-marked functor.
    pub hypothesis: Tri,
    pub source_homology: Option<HomologyResult>,
    pub target_homology: Option<HomologyResult>,
    /// Whether the two homologies agree, when the hypothesis holds.
    pub homology_agrees: Option<bool>,
    pub note: String,
    pub budgets: Budgets,
}

/// With ♯ markings the localizations are classifying spaces, so a cofinal
/// `f` must induce isomorphic homology of nerves. Checks that consequence
/// whenever cofinality is established.
pub fn theorem_a_localizations(c: &Marking2Cat, d: &Marking2Cat, f: &TwoFunctor, b: &Budgets) -> Result<TheoremAReport> {
    for (side, m) in [("source", c), ("target", d)] {
        if m.marked.len() != m.base.one_cells.len() {
            return Err(Error::Input(format!("the {side} marking is not ♯")));
        }
    }
    let rep = check_cofinal(c, d, f, b)?;
    if rep.verdict != Tri::Yes {
        return Ok(TheoremAReport {
            hypothesis: rep.verdict,
            source_homology: None,
            target_homology: None,
            homology_agrees: None,
            note: "hypothesis not established; consequence not asserted".into(),
            budgets: *b,
        });
    }
    let top = b.nerve_top;
    let hom = |x: &StrictTwoCat| {
        let n = base_nerve(x, top).sset;
        // exact through top - 1 unless the nerve stops earlier
        let deg = if n.count(top) == 0 { top.min(n.cap) } else { top - 1 };
        homology(&n, deg.min(n.cap))
    };
    let (hc, hd) = (hom(&c.base)?, hom(&d.base)?);
    let agrees = hc.groups == hd.groups;
    Ok(TheoremAReport {
        hypothesis: Tri::Yes,
        note: format!("homology compared in degrees 0..={}", hc.max_deg.min(hd.max_deg)),
        homology_agrees: Some(agrees),
        source_homology: Some(hc),
        target_homology: Some(hd),
        budgets: *b,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    pub value: Tri,
    /// Objects of `Map(id_d, e)`, as `(α, θ)` names.
    pub objects: Vec<String>,
    pub eta: usize,
    /// Objects with other than exactly one arrow into `η_e`.
    pub failures: Vec<String>,
    /// Objects besides `η_e` that are also terminal; empty unless some
    /// object is isomorphic to `η_e`.
    pub other_terminals: Vec<String>,
}

/// Whether `object` receives exactly one arrow from every object.
pub fn terminal_failures(c: &crate::category::Category, object: usize) -> Vec<String> {
    (0..c.n_objects())
        .filter_map(|x| {
            let n = c.hom(x, object).len();
            (n != 1).then(|| format!("{} has {n} arrows into {}", c.objects[x], c.objects[object]))
        })
        .collect()
}

/// In the lax slice of `id: D → D` over `d`, the object `η_e = (e, id_e)` of
/// `Map(id_d, e)` is terminal.
pub fn eta_terminal_check(dc: &StrictTwoCat, d: usize, e: usize) -> Result<EtaReport> {
    if e >= dc.one_cells.len() {
        return Err(Error::UnknownObject(format!("1-cell {e}")));
    }
    if dc.src1(e) != d {
        return Err(Error::Input(format!("1-cell {} does not start at {}", dc.one_cells[e].name, dc.objects[d])));
    }
    let m = Marking2Cat::minimal(dc.clone());
    let frd = fr(&m, &m, &TwoFunctor::identity(dc))?;
    let sl = slice_fiber(&frd, dc, d)?;
    let src = sl.find(&frd, d, dc.id1[d]).expect("id_d lies in its slice");
    let tgt = sl.find(&frd, dc.tgt1(e), e).expect("e lies in the slice");
    let (map, ones, _) = sl.cat.base.hom_category(src, tgt);
    let eta = ones
        .iter()
        .position(|&p| {
            let cell = frd.cells1[sl.index[1][p]];
            cell.alpha == e && cell.theta == dc.id2[e]
        })
        .expect("η_e is a 1-cell of the slice");
    let failures = terminal_failures(&map, eta);
    let other_terminals = (0..map.n_objects())
        .filter(|&o| o != eta && terminal_failures(&map, o).is_empty())
        .map(|o| map.objects[o].clone())
        .collect();
    Ok(EtaReport {
        value: if failures.is_empty() { Tri::Yes } else { Tri::No },
        objects: map.objects.clone(),
        eta,
        failures,
        other_terminals,
    })
}
