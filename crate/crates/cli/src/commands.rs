use std::path::Path;

use serde_json::json;

use twofib_core::anodyne_lifting::{certify_fibration, Family, Verdict as LiftVerdict};
use twofib_core::category::{Category, Functor1};
use twofib_core::cofinality_checker::{check_cofinal, duality_corpus, joyal_cofinal, two_bracket_duality, Agreement};
use twofib_core::corpus::{run_corpus, run_section, CorpusConfig, CorpusReport};
use twofib_core::decorated_sset::{standard_simplex, Deco, DecoSet, Shape, Simplex};
use twofib_core::fixtures::fixture_functors;
use twofib_core::free_fibration::{
    build_free_fibration, compare_tame_fr, degeneracy_lemma_check, face_lemma_check, filtration_audit, FreeFibration,
    Mode,
};
use twofib_core::gray_products::decorated_gray;
use twofib_core::homotopy_engine::{homology, nerve_contractible, weakly_contractible};
use twofib_core::laxlim_calculator::{
    cone_oracle, default_probes, laxlim_corpus, partially_lax_limit, ConeDiagram, Cospan, LegMarking,
};
use twofib_core::strict_two_cat::{scaled_nerve, Marking2Cat, TwoFunctor};

use crate::input;
use crate::report::{value, CliError, Done, Outcome};
use crate::{Command, FamilyArg, FlatSharp, FunctorInput, Global, MarkingArg, ModeArg, PosetFunctorInput, ShapeArg};

type Run = Result<Done, CliError>;

fn done(outcome: Outcome, summary: String, params: serde_json::Value, result: serde_json::Value) -> Run {
    Ok(Done { outcome, summary, params, result, table: None })
}

fn within_cap(what: &str, n: usize, g: &Global) -> Result<(), CliError> {
    if n > g.cap() {
        return Err(CliError::input(format!("{what} {n} exceeds --cap {}", g.cap())));
    }
    Ok(())
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Natural => Mode::Natural,
        ModeArg::Dagger => Mode::Dagger,
    }
}

fn need<'a, T>(x: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    x.as_ref().ok_or_else(|| CliError::input(format!("missing --{flag}")))
}

struct Resolved {
    label: String,
    c: Marking2Cat,
    d: Marking2Cat,
    f: TwoFunctor,
}

fn resolve(i: &FunctorInput) -> Result<Resolved, CliError> {
    if let Some(name) = &i.fixture {
        let fx = fixture_functors().into_iter().find(|f| &f.name == name).ok_or_else(|| {
            let names: Vec<String> = fixture_functors().into_iter().map(|f| f.name).collect();
            CliError::input(format!("unknown fixture {name:?}; known: {}", names.join(", ")))
        })?;
        let c = input::marking(&i.source_marking, fx.c.base)?;
        let d = input::marking(&i.target_marking, fx.d.base)?;
        return Ok(Resolved { label: fx.name, c, d, f: fx.f });
    }
    let (sp, tp, fp) = (need(&i.source, "source")?, need(&i.target, "target")?, need(&i.functor, "functor")?);
    let (c, d) = (input::two_cat(sp)?, input::two_cat(tp)?);
    let f = input::two_functor(fp, &c, &d)?;
    let c = input::marking(&i.source_marking, c)?;
    let d = input::marking(&i.target_marking, d)?;
    f.check_marking(&c, &d)?;
    Ok(Resolved { label: fp.display().to_string(), c, d, f })
}

fn resolve_poset(i: &PosetFunctorInput) -> Result<(String, Category, Category, Functor1), CliError> {
    if let Some(name) = &i.example {
        let case = duality_corpus(0, 0).into_iter().find(|c| &c.name == name).ok_or_else(|| {
            let names: Vec<String> = duality_corpus(0, 0).into_iter().map(|c| c.name).collect();
            CliError::input(format!("unknown example {name:?}; known: {}", names.join(", ")))
        })?;
        return Ok((case.name, case.k, case.s, case.p));
    }
    let (sp, tp, fp) = (need(&i.source, "source")?, need(&i.target, "target")?, need(&i.functor, "functor")?);
    let (k, s) = (input::category(sp)?, input::category(tp)?);
    let p = input::functor1(fp, &k, &s)?;
    Ok((fp.display().to_string(), k, s, p))
}

fn counts(ff: &FreeFibration) -> (Vec<usize>, Vec<usize>) {
    let t = ff.total.sset.dims.clone();
    let b = ff.base.sset.dims.clone();
    (t, b)
}

pub fn run(cmd: &Command, g: &Global) -> Run {
    match cmd {
        Command::Nerve { file, marking, top, emit_sset } => nerve(file, marking, *top, *emit_sset, g),
        Command::Gray { n, marked, thin, lean } => gray(*n, [*marked, *thin, *lean], g),
        Command::Ext { input, mode: m, top } => ext(input, mode(*m), *top, g),
        Command::Freefib { input, mode: m, top } => freefib(input, mode(*m), *top, g),
        Command::CheckFibration { input, mode: m, family, n_max, budget } => {
            check_fibration(input, mode(*m), *family, *n_max, *budget, g)
        }
        Command::CheckCofinal { input } => cofinal(input, g),
        Command::Joyal { input } => joyal(input, g),
        Command::Duality { input } => duality(input, g),
        Command::Laxlim { shape, marking, example, a, b, c, f, g: gl, oracle, oracle_limit } => {
            let files = [a, b, c, f, gl];
            laxlim(*shape, *marking, example.as_deref(), files, *oracle, *oracle_limit)
        }
        Command::Homology { input, max_deg } => homology_cmd(input, *max_deg, g),
        Command::Contractible { input, category } => contractible(input.as_deref(), category.as_deref(), g),
        Command::Corpus { seed, section, json } => corpus(*seed, *section, *json, g),
    }
}

fn nerve(file: &Path, marking: &str, top: usize, emit: bool, g: &Global) -> Run {
    within_cap("--top", top, g)?;
    let m = input::marking(marking, input::two_cat(file)?)?;
    let x = scaled_nerve(&m, top);
    let result = json!({
        "counts": x.dims,
        "marked_edges": x.marked.len(),
        "thin_triangles": x.thin.len(),
        "lean_triangles": x.lean.len(),
        "sset": if emit { Some(value(&x)) } else { None },
    });
    let summary = format!("nerve through dimension {top}: {:?} nondegenerate simplices", x.dims);
    done(Outcome::Success, summary, json!({ "file": file, "marking": marking, "top": top }), result)
}

fn gray(n: usize, deco: [FlatSharp; 3], g: &Global) -> Run {
    within_cap("n + 1", n + 1, g)?;
    let set = |d: FlatSharp| if d == FlatSharp::Sharp { DecoSet::Sharp } else { DecoSet::Flat };
    let x = standard_simplex(n, Shape::Full, &Deco::mb(set(deco[0]), set(deco[1]), set(deco[2])), g.cap())?;
    let gs = decorated_gray(&x, g.cap())?;
    let d1 = standard_simplex(1, Shape::Full, &Deco::plain(), 1)?;
    let thin: Vec<_> = gs
        .clause
        .iter()
        .map(|(&t, c)| {
            let (a, b) = gs.components(&Simplex::nondeg(2, t));
            let verts: Vec<[usize; 2]> = d1.vertices(&a).into_iter().zip(x.vertices(&b)).map(|(p, q)| [p, q]).collect();
            json!({ "triangle": verts, "clause": c })
        })
        .collect();
    let result = json!({
        "counts": gs.carrier.dims,
        "marked_edges": gs.carrier.marked.len(),
        "thin": thin,
    });
    let summary = format!("Δ¹ ⊗̂ Δ^{n}: {} scaled triangles", gs.clause.len());
    let params = json!({ "n": n, "marked": format!("{:?}", deco[0]), "thin": format!("{:?}", deco[1]), "lean": format!("{:?}", deco[2]) });
    done(Outcome::Success, summary, params, result)
}

fn ext(i: &FunctorInput, m: Mode, top: usize, g: &Global) -> Run {
    within_cap("--top", top, g)?;
    let r = resolve(i)?;
    let ff = build_free_fibration(&r.c, &r.d, &r.f, m, top)?;
    let faces = face_lemma_check(&ff);
    let degs = degeneracy_lemma_check(&ff);
    let ok = faces.ok() && degs.ok();
    let summary = format!(
        "{}: {} face identities, {} degenerate inputs, {} failures",
        r.label,
        faces.checked,
        degs.degenerate_inputs,
        faces.failures.len() + degs.failures.len()
    );
    let params = json!({ "input": r.label, "mode": m, "top": top });
    done(Outcome::from_bool(ok), summary, params, json!({ "faces": faces, "degeneracies": degs }))
}

fn freefib(i: &FunctorInput, m: Mode, top: usize, g: &Global) -> Run {
    within_cap("--top", top, g)?;
    let r = resolve(i)?;
    let ff = build_free_fibration(&r.c, &r.d, &r.f, m, top)?;
    let cmp = compare_tame_fr(&r.c, &r.d, &r.f, m, top)?;
    let (_, audit) = filtration_audit(&ff);
    let (total, base) = counts(&ff);
    let ok = cmp.ok() && audit.ok() && ff.projection.check(&ff.total.sset, &ff.base.sset).is_ok();
    let summary = format!("{}: total {total:?} over base {base:?}; comparison {}, audit {}", r.label, ok_str(cmp.ok()), ok_str(audit.ok()));
    let result = json!({
        "total_counts": total,
        "base_counts": base,
        "marked_edges": ff.total.sset.marked.len(),
        "comparison": cmp,
        "audit": audit,
    });
    done(Outcome::from_bool(ok), summary, json!({ "input": r.label, "mode": m, "top": top }), result)
}

fn ok_str(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn check_fibration(i: &FunctorInput, m: Mode, fam: FamilyArg, n_max: usize, budget: Option<usize>, g: &Global) -> Run {
    within_cap("--n-max", n_max, g)?;
    let r = resolve(i)?;
    let family = match fam {
        FamilyArg::Mb => Family::MB,
        FamilyArg::Ms => Family::MS,
    };
    let ff = build_free_fibration(&r.c, &r.d, &r.f, m, n_max)?;
    let v = certify_fibration(&ff.total.sset, &ff.base.sset, &ff.projection, family, n_max, budget)?;
    let summary = match &v {
        LiftVerdict::Fibration(c) => {
            format!("{}: fibration, {} squares solved", r.label, c.squares.iter().map(|s| s.1).sum::<usize>())
        }
        LiftVerdict::Counterexample(c) => format!("{}: no lift for a {} square", r.label, c.generator),
    };
    let params = json!({ "input": r.label, "mode": m, "family": family, "n_max": n_max, "budget": budget });
    done(Outcome::from_bool(v.is_fibration()), summary, params, value(&v))
}

fn cofinal(i: &FunctorInput, g: &Global) -> Run {
    let r = resolve(i)?;
    let rep = check_cofinal(&r.c, &r.d, &r.f, &g.budgets())?;
    let summary = format!("{}: cofinal {}", r.label, rep.verdict.as_str());
    let params = json!({ "input": r.label, "source_marking": i.source_marking, "target_marking": i.target_marking });
    done(Outcome::from_tri(rep.verdict), summary, params, value(&rep))
}

fn joyal(i: &PosetFunctorInput, g: &Global) -> Run {
    let (label, k, s, p) = resolve_poset(i)?;
    let rep = joyal_cofinal(&k, &s, &p, &g.budgets());
    let summary = format!("{label}: cofinal {}", rep.verdict.as_str());
    done(Outcome::from_tri(rep.verdict), summary, json!({ "input": label }), value(&rep))
}

fn duality(i: &PosetFunctorInput, g: &Global) -> Run {
    let (label, k, s, p) = resolve_poset(i)?;
    let rep = two_bracket_duality(&k, &s, &p, &g.budgets())?;
    let (outcome, word) = match rep.outcome {
        Agreement::Agree => (Outcome::Success, format!("AGREE({})", rep.bracket.as_str())),
        Agreement::Disagree => (Outcome::Failure, format!("DISAGREE(2[p] {}, p^op {})", rep.bracket.as_str(), rep.joyal.as_str())),
        Agreement::Undecided => (Outcome::Unknown, "UNDECIDED".to_string()),
    };
    done(outcome, format!("{label}: {word}"), json!({ "input": label }), value(&rep))
}

fn laxlim(
    shape: ShapeArg,
    marking: MarkingArg,
    example: Option<&str>,
    files: [&Option<std::path::PathBuf>; 5],
    oracle: bool,
    limit: usize,
) -> Run {
    let [a, b, c, f, gl] = files;
    let legs = match marking {
        MarkingArg::None => LegMarking::NONE,
        MarkingArg::F => LegMarking::F,
        MarkingArg::G => LegMarking::G,
        MarkingArg::Both => LegMarking::BOTH,
    };
    let (label, diagram) = match (shape, example) {
        (ShapeArg::Cospan, Some(name)) => {
            let (_, s) = laxlim_corpus(0, 0).into_iter().find(|(n, _)| n == name).ok_or_else(|| {
                let names: Vec<String> = laxlim_corpus(0, 0).into_iter().map(|(n, _)| n).collect();
                CliError::input(format!("unknown example {name:?}; known: {}", names.join(", ")))
            })?;
            (name.to_string(), ConeDiagram::Cospan(Cospan { marking: legs, ..s }))
        }
        (ShapeArg::Arrow, Some(_)) => return Err(CliError::input("--example names cospans; use --shape cospan")),
        (ShapeArg::Cospan, None) => {
            let (ca, cb, cc) = (input::category(need(a, "a")?)?, input::category(need(b, "b")?)?, input::category(need(c, "c")?)?);
            let ff = input::functor1(need(f, "f")?, &ca, &cc)?;
            let fg = input::functor1(need(gl, "g")?, &cb, &cc)?;
            ("cospan".into(), ConeDiagram::Cospan(Cospan { a: ca, b: cb, c: cc, f: ff, g: fg, marking: legs }))
        }
        (ShapeArg::Arrow, None) => {
            let marked = match marking {
                MarkingArg::None => false,
                MarkingArg::Both => true,
                _ => return Err(CliError::input("the arrow shape takes --marking none or both")),
            };
            let (ca, cb) = (input::category(need(a, "a")?)?, input::category(need(b, "b")?)?);
            let e = input::functor1(need(f, "f")?, &ca, &cb)?;
            ("arrow".into(), ConeDiagram::Arrow { a: ca, b: cb, e, marked })
        }
    };
    let p = partially_lax_limit(&diagram)?;
    let problems = p.validate(&diagram.to_cospan());
    let report = if oracle {
        let (probes, morphisms) = default_probes();
        Some(cone_oracle(&diagram, &p, &probes, &morphisms, limit)?)
    } else {
        None
    };
    let ok = problems.is_empty() && report.as_ref().is_none_or(|r| r.pass);
    let mut summary = format!("{label}: limit with {} objects and {} arrows", p.cat.n_objects(), p.cat.arrows.len());
    if let Some(r) = &report {
        summary.push_str(if r.pass { "; oracle passes" } else { "; oracle FAILS" });
    }
    let params = json!({ "input": label, "shape": format!("{shape:?}"), "marking": legs, "oracle": oracle, "oracle_limit": limit });
    let result = json!({ "limit": p, "problems": problems, "oracle": report });
    done(Outcome::from_bool(ok), summary, params, result)
}

fn homology_cmd(arg: &str, max_deg: Option<usize>, g: &Global) -> Run {
    let x = input::sset(arg, g.cap())?;
    let stored = x.dims.len().saturating_sub(1);
    let deg = max_deg.unwrap_or(stored.min(x.cap));
    within_cap("--max-deg", deg, g)?;
    let h = homology(&x, deg)?;
    let groups: Vec<String> = h.groups.iter().map(group_str).collect();
    let summary = format!("{arg}: H_0..H_{deg} = {}", groups.join(", "));
    let exact = deg < stored || x.count(stored) == 0 || stored < x.cap;
    done(Outcome::Success, summary, json!({ "input": arg, "max_deg": deg }), json!({ "homology": h, "exact": exact }))
}

fn group_str(g: &twofib_core::homotopy_engine::HomologyGroup) -> String {
    let mut parts = Vec::new();
    if g.rank > 0 {
        parts.push(if g.rank == 1 { "Z".to_string() } else { format!("Z^{}", g.rank) });
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn contractible(arg: Option<&str>, cat: Option<&Path>, g: &Global) -> Run {
    let (label, v) = match (arg, cat) {
        (_, Some(path)) => (path.display().to_string(), nerve_contractible(&input::category(path)?, &g.budgets())),
        (Some(s), None) => (s.to_string(), weakly_contractible(&input::sset(s, g.cap())?, &g.budgets())),
        (None, None) => return Err(CliError::input("give a simplicial set or --category")),
    };
    let summary = format!("{label}: weakly contractible {}", v.value.as_str());
    done(Outcome::from_tri(v.value), summary, json!({ "input": label }), value(&v))
}

fn table(rep: &CorpusReport) -> String {
    let mut out = String::new();
    for s in &rep.sections {
        let bad = s.items.iter().filter(|i| !i.pass).count();
        out.push_str(&format!(
            "{} {} {:<26} {:>4} checks {:>3} failing  {}\n",
            if s.pass { "PASS" } else { "FAIL" },
            s.criterion,
            s.title,
            s.items.len(),
            bad,
            s.summary
        ));
    }
    out
}

fn corpus(seed: u64, section: Option<u8>, as_json: bool, g: &Global) -> Run {
    let cfg = CorpusConfig { seed, budgets: g.budgets(), ..CorpusConfig::default() };
    let rep = match section {
        Some(c) => {
            let s = run_section(c, &cfg)?;
            CorpusReport { config: cfg.clone(), pass: s.pass, sections: vec![s] }
        }
        None => run_corpus(&cfg)?,
    };
    let passed = rep.sections.iter().filter(|s| s.pass).count();
    let summary = format!("corpus seed {seed}: {passed} of {} sections pass", rep.sections.len());
    let t = (!as_json).then(|| table(&rep));
    let outcome = Outcome::from_bool(rep.pass);
    Ok(Done { outcome, summary, params: json!({ "seed": seed, "section": section }), result: value(&rep), table: t })
}
