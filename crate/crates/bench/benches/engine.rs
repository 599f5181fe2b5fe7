use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use twofib_core::anodyne_lifting::{certify_fibration, Family};
use twofib_core::category::Category;
use twofib_core::cofinality_checker::{duality_corpus, two_bracket_duality};
use twofib_core::decorated_sset::{product, standard_simplex, Deco, Shape};
use twofib_core::fixtures::fixture_functors;
use twofib_core::free_fibration::{build_free_fibration, face_lemma_check, Mode};
use twofib_core::homotopy_engine::{homology, Budgets};
use twofib_core::laxlim_calculator::{cone_oracle, default_probes, laxlim_corpus, lax_pullback, ConeDiagram};
use twofib_core::strict_two_cat::{scaled_nerve, walking_two_cell, Marking2Cat, StrictTwoCat};

fn nerves(c: &mut Criterion) {
    let w = Marking2Cat::minimal(walking_two_cell());
    let b = Marking2Cat::minimal(StrictTwoCat::two_bracket(&Category::poset(3, &[(0, 1), (1, 2)])));
    let mut g = c.benchmark_group("scaled_nerve");
    for top in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::new("walking-two-cell", top), &top, |bch, &t| bch.iter(|| scaled_nerve(black_box(&w), t)));
        g.bench_with_input(BenchmarkId::new("2[chain3]", top), &top, |bch, &t| bch.iter(|| scaled_nerve(black_box(&b), t)));
    }
    g.finish();
}

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("product");
    for (m, n) in [(1, 2), (2, 2), (2, 3)] {
        let a = standard_simplex(m, Shape::Full, &Deco::plain(), m + n).unwrap();
        let b = standard_simplex(n, Shape::Full, &Deco::plain(), m + n).unwrap();
        g.bench_function(format!("Δ{m}×Δ{n}"), |bch| bch.iter(|| product(black_box(&a), black_box(&b), m + n, false).unwrap()));
    }
    g.finish();
}

fn free_fibrations(c: &mut Criterion) {
    let fx = fixture_functors().into_iter().find(|f| f.name == "walking-two-cell").unwrap();
    c.bench_function("free_fibration/walking-two-cell/top3", |bch| {
        bch.iter(|| build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap())
    });
    let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, 3).unwrap();
    c.bench_function("face_lemma/walking-two-cell/top3", |bch| bch.iter(|| face_lemma_check(black_box(&ff))));
}

fn lifting(c: &mut Criterion) {
    let fx = fixture_functors().into_iter().find(|f| f.name == "bracket-pt-arrow-0").unwrap();
    let mut g = c.benchmark_group("certify_fibration");
    g.sample_size(10);
    for n_max in [2, 3] {
        let ff = build_free_fibration(&fx.c, &fx.d, &fx.f, Mode::Natural, n_max).unwrap();
        g.bench_with_input(BenchmarkId::new("bracket-pt-arrow-0", n_max), &n_max, |bch, &n| {
            bch.iter(|| certify_fibration(&ff.total.sset, &ff.base.sset, &ff.projection, Family::MB, n, None).unwrap())
        });
    }
    g.finish();
}

fn homology_bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    for n in [3, 4] {
        let x = standard_simplex(n, Shape::Boundary, &Deco::plain(), 4).unwrap();
        g.bench_with_input(BenchmarkId::new("boundary", n), &x, |bch, x| bch.iter(|| homology(black_box(x), n - 1).unwrap()));
    }
    g.finish();
}

fn cofinality(c: &mut Criterion) {
    let b = Budgets::default();
    let corpus = duality_corpus(2024, 4);
    c.bench_function("duality/corpus", |bch| {
        bch.iter(|| {
            for d in &corpus {
                black_box(two_bracket_duality(&d.k, &d.s, &d.p, &b).unwrap());
            }
        })
    });
}

fn laxlim(c: &mut Criterion) {
    let (probes, morphisms) = default_probes();
    let cases = laxlim_corpus(2024, 6);
    c.bench_function("cone_oracle/lax/corpus", |bch| {
        bch.iter(|| {
            cases
                .iter()
                .map(|(_, s)| {
                    let (p, _) = lax_pullback(s);
                    cone_oracle(&ConeDiagram::Cospan(s.clone()), &p, &probes, &morphisms, 200_000).unwrap().pass
                })
                .filter(|&ok| ok)
                .count()
        })
    });
}

criterion_group!(benches, nerves, products, free_fibrations, lifting, homology_bench, cofinality, laxlim);
criterion_main!(benches);
