//! The bundled example corpus: one section per acceptance criterion, each a
//! list of named checks. Reports carry no timings so that reruns compare
//! byte for byte.

use serde::Serialize;
use serde_json::{json, Value};

use crate::anodyne_lifting::{certify_fibration, Family, Verdict as LiftVerdict};
use crate::category::Category;
use crate::cofinality_checker::{duality_corpus, eta_terminal_check, two_bracket_duality, Agreement};
use crate::decorated_sset::{from_vertex_sets, standard_simplex, DecMap, Deco, DecoSet, Kind, Shape, Simplex};
use crate::error::Result;
use crate::fixtures::{fixture_functors, random_bracket_functors, FixtureFunctor};
use crate::free_fibration::{
    build_free_fibration, compare_tame_fr, degeneracy_lemma_check, face_lemma_check, filtration_audit, Mode,
};
use crate::homotopy_engine::{homology, Budgets, HomologyGroup, Tri};
use crate::laxlim_calculator::{
    cone_oracle, default_probes, directed_pullback, laxlim_corpus, lax_pullback, partially_lax_limit, pseudo_pullback,
    ConeDiagram, LegMarking, MarkedLeg,
};
use crate::strict_two_cat::StrictTwoCat;

#[derive(Clone, Debug, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Random `2[K] → 2[S]` fixtures added to the named ones.
    pub random_fixtures: usize,
    /// Dimension through which free fibrations are materialized for the
    /// extension, comparison and audit sections.
    pub top: usize,
    pub n_max: usize,
    pub duality_random: usize,
    pub laxlim_random: usize,
    pub oracle_limit: usize,
    pub budgets: Budgets,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 2024,
            random_fixtures: 4,
            top: 3,
            n_max: 4,
            duality_random: 12,
            laxlim_random: 24,
            oracle_limit: 200_000,
            budgets: Budgets::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusItem {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub criterion: u8,
    pub title: &'static str,
    pub pass: bool,
    pub summary: String,
    pub items: Vec<CorpusItem>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub config: CorpusConfig,
    pub pass: bool,
    pub sections: Vec<Section>,
}

pub const SECTION_TITLES: [&str; 8] = [
    "extension operators",
    "tame model against Fr",
    "fibration certification",
    "2[K] duality",
    "homology exactness",
    "η terminality",
    "lax-limit oracle",
    "filtration audit",
];

fn item(name: impl Into<String>, pass: bool, detail: Value) -> CorpusItem {
    CorpusItem { name: name.into(), pass, detail }
}

fn section(criterion: u8, items: Vec<CorpusItem>, extra: bool, summary: String) -> Section {
    let pass = extra && items.iter().all(|i| i.pass);
    Section { criterion, title: SECTION_TITLES[criterion as usize - 1], pass, summary, items }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Named fixtures followed by the seeded random ones.
pub fn corpus_fixtures(cfg: &CorpusConfig) -> Vec<FixtureFunctor> {
    let mut out = fixture_functors();
    out.extend(random_bracket_functors(cfg.seed, cfg.random_fixtures, 2));
    out
}

fn first<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().take(3).cloned().collect()
}

pub fn extension_section(cfg: &CorpusConfig) -> Result<Section> {
    let fixtures = corpus_fixtures(cfg);
    let mut items = Vec::new();
    for fx in &fixtures {
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, cfg.top)?;
        let faces = face_lemma_check(&ff);
        let degs = degeneracy_lemma_check(&ff);
        items.push(item(
            &fx.name,
            faces.ok() && degs.ok() && faces.checked > 0,
            json!({
                "face_identities_checked": faces.checked,
                "degenerate_inputs": degs.degenerate_inputs,
                "double_extensions": degs.double_extensions,
                "failures": first(&[faces.failures, degs.failures].concat()),
            }),
        ));
    }
    let brackets = fixtures.iter().filter(|f| f.name.starts_with("bracket") || f.name.starts_with("random")).count();
    let enough = fixtures.len() >= 5 && brackets > 0;
    let summary = format!("{} fixtures ({brackets} of the form 2[K] → 2[S]), simplices through dimension {}", fixtures.len(), cfg.top);
    Ok(section(1, items, enough, summary))
}

pub fn comparison_section(cfg: &CorpusConfig) -> Result<Section> {
    let mut items = Vec::new();
    for fx in corpus_fixtures(cfg) {
        for mode in [Mode::Natural, Mode::Dagger] {
            let rep = compare_tame_fr(&fx.c, &fx.d, &fx.f, mode, cfg.top)?;
            items.push(item(format!("{} {:?}", fx.name, mode), rep.ok(), to_value(&rep)));
        }
    }
    let summary = format!("{} comparisons through dimension {}", items.len(), cfg.top);
    Ok(section(2, items, true, summary))
}

pub fn fibration_section(cfg: &CorpusConfig) -> Result<Section> {
    let mut items = Vec::new();
    for fx in corpus_fixtures(cfg) {
        for mode in [Mode::Natural, Mode::Dagger] {
            let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, mode, cfg.n_max)?;
            let v = certify_fibration(&ff.total.sset, &ff.base.sset, &ff.projection, Family::MB, cfg.n_max, None)?;
            let detail = match &v {
                LiftVerdict::Fibration(c) => json!({ "squares": c.squares.iter().map(|s| s.1).sum::<usize>() }),
                LiftVerdict::Counterexample(c) => json!({ "counterexample": c.generator }),
            };
            items.push(item(format!("{} {:?}", fx.name, mode), v.is_fibration(), detail));
        }
    }
    // a vertex of the ♯-marked interval does not lift marked edges
    let pt = from_vertex_sets(Kind::MB, vec![vec![0]]);
    let iv = standard_simplex(1, Shape::Full, &Deco::mb(DecoSet::Sharp, DecoSet::Sharp, DecoSet::Sharp), 4)?;
    let p = DecMap { images: vec![vec![Simplex::vertex(1)]] };
    let v = certify_fibration(&pt, &iv, &p, Family::MB, cfg.n_max, None)?;
    let (ok, detail) = match &v {
        LiftVerdict::Counterexample(c) => (c.generator.starts_with("A5"), json!({ "counterexample": c.generator })),
        LiftVerdict::Fibration(_) => (false, json!({ "counterexample": null })),
    };
    items.push(item("negative control: vertex into the ♯ interval", ok, detail));
    let summary = format!("MB generators with n ≤ {}", cfg.n_max);
    Ok(section(3, items, true, summary))
}

pub fn duality_section(cfg: &CorpusConfig) -> Result<Section> {
    let corpus = duality_corpus(cfg.seed, cfg.duality_random);
    let mut items = Vec::new();
    let mut tally = [0usize; 3];
    for c in &corpus {
        let r = two_bracket_duality(&c.k, &c.s, &c.p, &cfg.budgets)?;
        match (r.outcome, r.bracket) {
            (Agreement::Agree, Tri::Yes) => tally[0] += 1,
            (Agreement::Agree, _) => tally[1] += 1,
            _ => tally[2] += 1,
        }
        items.push(item(&c.name, r.outcome != Agreement::Disagree, to_value(&r)));
    }
    let enough = corpus.len() >= 10 && tally[0] >= 3 && tally[1] >= 3;
    let summary = format!("{} functors: {} agree Yes, {} agree No, {} undecided", corpus.len(), tally[0], tally[1], tally[2]);
    Ok(section(4, items, enough, summary))
}

pub fn homology_section(_cfg: &CorpusConfig) -> Result<Section> {
    let mut items = Vec::new();
    let mut dd = 0;
    for n in 0..=4 {
        let x = standard_simplex(n, Shape::Full, &Deco::plain(), 4)?;
        let h = homology(&x, n)?;
        dd += h.dd_checked;
        let ok = (0..=n).all(|k| h.reduced(k).is_zero());
        items.push(item(format!("Δ^{n}"), ok, to_value(&h.groups)));
    }
    for (n, deg) in [(2, 1), (3, 2)] {
        let x = standard_simplex(n, Shape::Boundary, &Deco::plain(), 4)?;
        let h = homology(&x, n)?;
        dd += h.dd_checked;
        let ok = (1..=n).all(|k| h.groups[k] == HomologyGroup::free(usize::from(k == deg)));
        items.push(item(format!("∂Δ^{n}"), ok, to_value(&h.groups)));
    }
    let summary = format!("∂∂ = 0 verified on {dd} composites");
    Ok(section(5, items, true, summary))
}

pub fn eta_section(cfg: &CorpusConfig) -> Result<Section> {
    let mut items = Vec::new();
    let bracket = StrictTwoCat::two_bracket(&Category::walking_arrow());
    let mut contested = 0;
    for e in 0..bracket.one_cells.len() {
        let d = bracket.src1(e);
        let r = eta_terminal_check(&bracket, d, e)?;
        if r.objects.len() > 1 {
            contested += 1;
        }
        let ok = r.value == Tri::Yes && r.other_terminals.is_empty();
        items.push(item(format!("2[arrow] {}", bracket.one_cells[e].name), ok, to_value(&r)));
    }
    for fx in corpus_fixtures(cfg) {
        let db = &fx.d.base;
        for d in 0..db.n_objects() {
            let r = eta_terminal_check(db, d, db.id1[d])?;
            items.push(item(format!("{} id_{}", fx.name, db.objects[d]), r.value == Tri::Yes, to_value(&r)));
        }
    }
    // negative control: where Map(id_d, e) has several objects, only η_e is terminal
    let summary = format!("{contested} mapping categories with objects other than η_e, none of them terminal");
    Ok(section(6, items, contested > 0, summary))
}

pub fn laxlim_section(cfg: &CorpusConfig) -> Result<Section> {
    let (probes, morphisms) = default_probes();
    let mut items = Vec::new();
    for (name, s) in laxlim_corpus(cfg.seed, cfg.laxlim_random) {
        for (tag, marking) in [("lax", LegMarking::NONE), ("directed-G", LegMarking::G), ("directed-F", LegMarking::F), ("pseudo", LegMarking::BOTH)] {
            let d = ConeDiagram::Cospan(crate::laxlim_calculator::Cospan { marking, ..s.clone() });
            let p = partially_lax_limit(&d)?;
            let r = cone_oracle(&d, &p, &probes, &morphisms, cfg.oracle_limit)?;
            let detail = json!({ "objects": p.cat.n_objects(), "arrows": p.cat.arrows.len(), "oracle": r });
            items.push(item(format!("{name} {tag}"), r.pass, detail));
        }
    }
    let worked = &laxlim_corpus(cfg.seed, 0)[0].1;
    let counts = (
        lax_pullback(worked).0.cat.n_objects(),
        directed_pullback(worked, MarkedLeg::G).cat.n_objects(),
        pseudo_pullback(worked).0.cat.n_objects(),
    );
    items.push(item(
        "worked instance over the walking arrow",
        counts == (1, 1, 0),
        json!({ "lax": counts.0, "directed": counts.1, "pseudo": counts.2 }),
    ));
    let summary = format!("{} limits checked on probes pt and arrow", items.len() - 1);
    Ok(section(7, items, true, summary))
}

pub fn audit_section(cfg: &CorpusConfig) -> Result<Section> {
    let mut items = Vec::new();
    for fx in corpus_fixtures(cfg) {
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, cfg.top)?;
        let (_, rep) = filtration_audit(&ff);
        items.push(item(&fx.name, rep.ok(), to_value(&rep)));
    }
    Ok(section(8, items, true, format!("every nondegenerate simplex through dimension {}", cfg.top)))
}

pub fn run_section(criterion: u8, cfg: &CorpusConfig) -> Result<Section> {
    match criterion {
        1 => extension_section(cfg),
        2 => comparison_section(cfg),
        3 => fibration_section(cfg),
        4 => duality_section(cfg),
        5 => homology_section(cfg),
        6 => eta_section(cfg),
        7 => laxlim_section(cfg),
        8 => audit_section(cfg),
        _ => Err(crate::Error::Input(format!("no corpus section {criterion}"))),
    }
}

pub fn run_corpus(cfg: &CorpusConfig) -> Result<CorpusReport> {
    let sections = (1..=8).map(|c| run_section(c, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(CorpusReport { config: cfg.clone(), pass: sections.iter().all(|s| s.pass), sections })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_sections_pass() {
        let cfg = CorpusConfig { random_fixtures: 1, duality_random: 4, laxlim_random: 2, ..Default::default() };
        for c in [4, 5, 6] {
            let s = run_section(c, &cfg).unwrap();
            assert!(s.pass, "{}: {}", s.title, s.summary);
        }
        assert!(run_section(9, &cfg).is_err());
    }
}
