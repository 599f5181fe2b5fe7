//! Property tests over seeded random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twofib_core::anodyne_lifting::{certify_fibration, generators, solve, Family, LiftingProblem};
use twofib_core::category::{Category, Functor1};
use twofib_core::cofinality_checker::{joyal_cofinal, two_bracket_duality, Agreement};
use twofib_core::decorated_sset::{
    enumerate_maps, from_vertex_sets, product, standard_simplex, DecMap, Deco, DecoSet, Kind, Shape,
    Simplex,
};
use twofib_core::fixtures::{random_bracket_functors, random_poset};
use twofib_core::free_fibration::{build_free_fibration, coskeletal_check, degeneracy_lemma_check, face_lemma_check, Mode};
use twofib_core::gray_products::{decorated_gray, gray, GrayClause};
use twofib_core::homotopy_engine::{
    boundary_matrix, find_collapse, homology, replay_collapse, weakly_contractible, Budgets, CollapseOutcome, Tri,
};
use twofib_core::laxlim_calculator::{
    cone_oracle, default_probes, lax_pullback, lax_with_invertible, pseudo_pullback, ConeDiagram, Cospan, LegMarking,
};
use twofib_core::strict_two_cat::{
    fr, scaled_nerve, scaled_nerve_materialized, slice_fiber, Marking2Cat, NerveSource, StrictTwoCat, TwoFunctor,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Closes a family of vertex sets under nonempty subsets.
fn close(facets: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let v: Vec<usize> = f.iter().copied().collect();
        for mask in 1u32..(1 << v.len()) {
            out.insert((0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

fn complex_strategy() -> impl Strategy<Value = Vec<BTreeSet<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..5)
}

fn deco_strategy() -> impl Strategy<Value = Deco> {
    (any::<bool>(), 0u8..3).prop_map(|(m, s)| {
        let set = |b: bool| if b { DecoSet::Sharp } else { DecoSet::Flat };
        Deco::mb(set(m), set(s == 2), set(s >= 1))
    })
}

fn random_functor(rng: &mut ChaCha8Rng, k: &Category, s: &Category) -> Functor1 {
    loop {
        let obj = (0..k.n_objects()).map(|_| rng.gen_range(0..s.n_objects())).collect();
        if let Some(f) = Functor1::from_object_map(k, s, obj) {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn complexes_satisfy_simplicial_identities(facets in complex_strategy(), kind in 0u8..3) {
        let kind = [Kind::PLAIN, Kind::SC, Kind::MB][kind as usize];
        let x = from_vertex_sets(kind, close(&facets));
        prop_assert!(x.check_simplicial_identities(4).is_ok());
        prop_assert!(x.validate().is_ok());
    }

    #[test]
    fn decorations_contain_degenerates(n in 0usize..4, deco in deco_strategy()) {
        let x = standard_simplex(n, Shape::Full, &deco, 4).unwrap();
        for e in x.simplices(1) {
            if e.is_degenerate() {
                prop_assert!(x.is_marked(&e));
            }
        }
        for t in x.simplices(2) {
            if t.is_degenerate() {
                prop_assert!(x.is_thin(&t) && x.is_lean(&t));
            }
            prop_assert!(!x.is_thin(&t) || x.is_lean(&t));
        }
    }

    #[test]
    fn maps_compose(a in 0usize..3, b in 0usize..3, c in 0usize..3, da in deco_strategy(), db in deco_strategy(), dc in deco_strategy()) {
        let x = standard_simplex(a, Shape::Full, &da, 3).unwrap();
        let y = standard_simplex(b, Shape::Full, &db, 3).unwrap();
        let z = standard_simplex(c, Shape::Full, &dc, 3).unwrap();
        let xz: BTreeSet<DecMap> = enumerate_maps(&x, &z).into_iter().collect();
        for f in enumerate_maps(&x, &y) {
            prop_assert!(f.check(&x, &y).is_ok());
            for g in enumerate_maps(&y, &z) {
                prop_assert!(xz.contains(&f.then(&g)));
            }
        }
    }

    #[test]
    fn homology_ignores_vertex_order(facets in complex_strategy(), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let x = from_vertex_sets(Kind::PLAIN, close(&facets));
        let relabeled: Vec<BTreeSet<usize>> = facets.iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        let y = from_vertex_sets(Kind::PLAIN, close(&relabeled));
        let (hx, hy) = (homology(&x, 3).unwrap(), homology(&y, 3).unwrap());
        prop_assert_eq!(hx.groups, hy.groups);
    }

    #[test]
    fn boundary_squares_to_zero(facets in complex_strategy()) {
        let x = from_vertex_sets(Kind::PLAIN, close(&facets));
        for k in 2..x.dims.len() {
            let (a, b) = (boundary_matrix(&x, k - 1), boundary_matrix(&x, k));
            for row in &a {
                for j in 0..x.count(k) {
                    let s: i64 = (0..b.len()).map(|t| row[t] * b[t][j]).sum();
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn contractibility_is_deterministic_and_collapses_replay(facets in complex_strategy()) {
        let x = from_vertex_sets(Kind::PLAIN, close(&facets));
        let b = Budgets::default();
        let (v1, v2) = (weakly_contractible(&x, &b), weakly_contractible(&x, &b));
        prop_assert_eq!(serde_json::to_string(&v1).unwrap(), serde_json::to_string(&v2).unwrap());
        if let CollapseOutcome::Collapsed(steps) = find_collapse(&x, b.collapse_states) {
            prop_assert!(replay_collapse(&x, &steps).is_ok());
            prop_assert_eq!(v1.value, Tri::Yes);
            let h = homology(&x, 3).unwrap();
            prop_assert!(h.first_obstruction().is_none());
        }
    }
}

/// Strictly increasing lattice paths in `[m] × [n]` of length `k + 1`.
fn chains(m: usize, n: usize, k: usize) -> usize {
    fn go(m: usize, n: usize, left: usize, last: Option<(usize, usize)>) -> usize {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..=m {
            for j in 0..=n {
                let ok = match last {
                    None => true,
                    Some((a, b)) => i >= a && j >= b && (i, j) != (a, b),
                };
                if ok {
                    total += go(m, n, left - 1, Some((i, j)));
                }
            }
        }
        total
    }
    go(m, n, k + 1, None)
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn products_count_shuffles(m in 0usize..3, n in 0usize..3) {
        let a = standard_simplex(m, Shape::Full, &Deco::plain(), m + n).unwrap();
        let b = standard_simplex(n, Shape::Full, &Deco::plain(), m + n).unwrap();
        let p = product(&a, &b, m + n, false).unwrap();
        for k in 0..=m + n {
            prop_assert_eq!(p.count(k), chains(m, n, k), "dimension {}", k);
        }
        prop_assert_eq!(p.count(m + n + 1), 0);
    }

    #[test]
    fn gray_clauses_refine_the_plain_gray_product(n in 0usize..3, deco in deco_strategy()) {
        let x = standard_simplex(n, Shape::Full, &deco, 3).unwrap();
        let d1 = standard_simplex(1, Shape::Full, &Deco::plain(), 1).unwrap();
        let g = gray(&d1, &x, 3).unwrap();
        let dg = decorated_gray(&x, 3).unwrap();
        prop_assert_eq!(&g.carrier.dims, &dg.carrier.dims);
        for (&t, c) in &dg.clause {
            prop_assert_eq!(g.carrier.thin.contains(&t), *c == GrayClause::Gray);
        }
        prop_assert!(g.carrier.thin.is_subset(&dg.carrier.thin));
    }

    #[test]
    fn nerves_are_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nk, ns, nt) = (rng.gen_range(0..=2), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let (k, s, t) = (random_poset(&mut rng, nk), random_poset(&mut rng, ns), random_poset(&mut rng, nt));
        let (p, q) = (random_functor(&mut rng, &k, &s), random_functor(&mut rng, &s, &t));
        let (mk, mt) = (
            Marking2Cat::minimal(StrictTwoCat::two_bracket(&k)),
            Marking2Cat::minimal(StrictTwoCat::two_bracket(&t)),
        );
        let (fp, fq) = (TwoFunctor::two_bracket(&p), TwoFunctor::two_bracket(&q));
        let fpq = TwoFunctor::two_bracket(&p.then(&q));
        prop_assert!(fpq.validate(&mk.base, &mt.base).is_empty());
        let (nk_m, nt_m) = (scaled_nerve_materialized(&mk, 3), scaled_nerve_materialized(&mt, 3));
        let (src_k, src_t) = (NerveSource::new(&mk), NerveSource::new(&mt));
        for dim in 0..=3 {
            for x in nk_m.sset.simplices(dim) {
                let rho = nk_m.data_of(&src_k, &x);
                let composite = rho.map(&fp).map(&fq);
                prop_assert_eq!(&composite, &rho.map(&fpq));
                let y = nt_m.locate(&src_t, &composite, dim);
                prop_assert!(y.is_some());
                let y = y.unwrap();
                if dim == 1 && nk_m.sset.is_marked(&x) {
                    prop_assert!(nt_m.sset.is_marked(&y));
                }
                if dim == 2 && nk_m.sset.is_thin(&x) {
                    prop_assert!(nt_m.sset.is_thin(&y));
                }
                if dim > 0 {
                    for i in 0..=dim {
                        let fx = nk_m.data_of(&src_k, &nk_m.sset.face(&x, i)).map(&fpq);
                        prop_assert_eq!(nt_m.locate(&src_t, &fx, dim - 1), Some(nt_m.sset.face(&y, i)));
                    }
                }
            }
        }
    }

    #[test]
    fn fr_fibers_are_the_slices(seed in any::<u64>()) {
        for ff in random_bracket_functors(seed, 1, 3) {
            let frc = fr(&ff.c, &ff.d, &ff.f).unwrap();
            let dd = &ff.d.base;
            for d in 0..dd.n_objects() {
                let sl = slice_fiber(&frc, dd, d).unwrap();
                let expected: BTreeSet<(usize, usize)> = (0..ff.c.base.n_objects())
                    .flat_map(|c| dd.hom1(d, ff.f.obj[c]).into_iter().map(move |u| (c, u)))
                    .collect();
                let got: BTreeSet<(usize, usize)> = sl.index[0].iter().map(|&o| {
                    let ob = frc.objects[o];
                    (ob.c, ob.u)
                }).collect();
                prop_assert_eq!(got, expected);
            }
            for (i, cell) in frc.cells1.iter().enumerate() {
                let cart = ff.c.is_marked(cell.alpha) && dd.is_invertible2(cell.theta);
                if cart {
                    prop_assert!(frc.cartesian.contains(&i));
                }
            }
        }
    }

    #[test]
    fn free_fibrations_satisfy_the_extension_lemmas(seed in any::<u64>(), dagger in any::<bool>()) {
        let mode = if dagger { Mode::Dagger } else { Mode::Natural };
        for ff in random_bracket_functors(seed, 1, 2) {
            let fib = build_free_fibration(&ff.c, &ff.d, &ff.f, mode, 3).unwrap();
            prop_assert!(fib.projection.check(&fib.total.sset, &fib.base.sset).is_ok());
            let face = face_lemma_check(&fib);
            prop_assert!(face.ok(), "{:?}", face.failures);
            let deg = degeneracy_lemma_check(&fib);
            prop_assert!(deg.ok(), "{:?}", deg.failures);
        }
    }

    #[test]
    fn bracket_nerves_are_3_coskeletal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let k = random_poset(&mut rng, n);
        let x = scaled_nerve(&Marking2Cat::minimal(StrictTwoCat::two_bracket(&k)), 4);
        prop_assert!(coskeletal_check(&x, 4, 4).is_ok());
    }

    #[test]
    fn duality_never_disagrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nk, ns) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (k, s) = (random_poset(&mut rng, nk), random_poset(&mut rng, ns));
        let p = random_functor(&mut rng, &k, &s);
        let b = Budgets::default();
        let r = two_bracket_duality(&k, &s, &p, &b).unwrap();
        prop_assert_ne!(r.outcome, Agreement::Disagree);
        // a minimum in every K_{d/} makes each slice a cone
        let cones = (0..s.n_objects()).all(|d| {
            let ks: Vec<usize> = (0..nk).filter(|&x| !s.hom(d, p.obj[x]).is_empty()).collect();
            ks.iter().any(|&m| ks.iter().all(|&x| !k.hom(m, x).is_empty()))
        });
        if cones {
            prop_assert_eq!(joyal_cofinal(&k, &s, &p, &b).verdict, Tri::Yes);
        }
    }

    #[test]
    fn lax_pullbacks_are_limits(seed in any::<u64>(), mf in any::<bool>(), mg in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (na, nb, nc) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(1..=3));
        let (a, b, c) = (random_poset(&mut rng, na), random_poset(&mut rng, nb), random_poset(&mut rng, nc));
        let (f, g) = (random_functor(&mut rng, &a, &c), random_functor(&mut rng, &b, &c));
        let s = Cospan { a, b, c, f, g, marking: LegMarking::NONE };
        let (lax, objs) = lax_pullback(&s);
        prop_assert!(lax.validate(&s).is_empty());
        let keep = LegMarking { f: mf, g: mg };
        let (part, sub) = lax_with_invertible(&s, keep);
        let (_, iso) = pseudo_pullback(&s);
        for o in &iso {
            prop_assert!(sub.contains(o));
        }
        for o in &sub {
            prop_assert!(objs.contains(o));
        }
        let marked = Cospan { marking: keep, ..s.clone() };
        prop_assert!(part.validate(&marked).is_empty());
        let (probes, morphisms) = default_probes();
        let rep = cone_oracle(&ConeDiagram::Cospan(marked), &part, &probes, &morphisms, 100_000).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.probes.iter().flat_map(|p| p.failures.clone()).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn generators_are_decorated_monos(family in prop_oneof![Just(Family::MB), Just(Family::MS)]) {
        for g in generators(family, 3) {
            prop_assert!(g.inclusion.is_mono(), "{}", g.name());
            prop_assert!(g.inclusion.check(&g.domain, &g.codomain).is_ok(), "{}", g.name());
        }
    }

    #[test]
    fn identities_are_fibrations(n in 0usize..3, deco in deco_strategy()) {
        let x = standard_simplex(n, Shape::Full, &deco, 3).unwrap();
        let id = DecMap::identity(&x);
        let v = certify_fibration(&x, &x, &id, Family::MB, 3, None).unwrap();
        prop_assert!(v.is_fibration());
    }

    #[test]
    fn lifts_exist_iff_brute_force_finds_one(n in 1usize..3, deco in deco_strategy()) {
        let x = standard_simplex(n, Shape::Full, &deco, 3).unwrap();
        let pt = standard_simplex(0, Shape::Full, &Deco::mb(DecoSet::Sharp, DecoSet::Sharp, DecoSet::Sharp), 3).unwrap();
        let p = enumerate_maps(&x, &pt).pop().unwrap();
        for gen in generators(Family::MB, 2) {
            let bottom = enumerate_maps(&gen.codomain, &pt).pop();
            let Some(bottom) = bottom else { continue };
            for top in enumerate_maps(&gen.domain, &x) {
                let lp = LiftingProblem { gen: &gen, x: &x, s: &pt, p: &p, top: top.clone(), bottom: bottom.clone() };
                let brute = enumerate_maps(&gen.codomain, &x).into_iter().any(|l| gen.inclusion.then(&l) == top);
                let found = solve(&lp);
                prop_assert_eq!(found.is_some(), brute, "{}", gen.name());
                if let Some(l) = found {
                    prop_assert_eq!(gen.inclusion.then(&l), top);
                }
            }
        }
    }
}

#[test]
fn counterexamples_persist_as_n_max_grows() {
    // the point at the end of the sharp interval
    let pt = standard_simplex(0, Shape::Full, &Deco::mb(DecoSet::Sharp, DecoSet::Sharp, DecoSet::Sharp), 3).unwrap();
    let sharp = standard_simplex(1, Shape::Full, &Deco::mb(DecoSet::Sharp, DecoSet::Sharp, DecoSet::Sharp), 3).unwrap();
    let p = enumerate_maps(&pt, &sharp)
        .into_iter()
        .find(|m| m.apply(&Simplex::vertex(0)) == Simplex::vertex(1))
        .unwrap();
    let mut seen = false;
    for n_max in 1..=3 {
        let v = certify_fibration(&pt, &sharp, &p, Family::MB, n_max, None).unwrap();
        seen |= !v.is_fibration();
        if seen {
            assert!(!v.is_fibration(), "n_max {n_max}");
        }
    }
    assert!(seen);
}

#[test]
fn marking_closure_is_idempotent() {
    let w = twofib_core::strict_two_cat::walking_two_cell();
    for seed in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick: Vec<usize> = (0..w.one_cells.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let once = Marking2Cat::new(w.clone(), pick);
        let twice = Marking2Cat::new(w.clone(), once.marked.clone());
        assert_eq!(once.marked, twice.marked);
    }
}
