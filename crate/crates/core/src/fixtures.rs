//! Small 2-functors used by tests, benches and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{Category, Functor1};
use crate::strict_two_cat::{walking_two_cell, Marking2Cat, StrictTwoCat, TwoFunctor};

#[derive(Clone, Debug)]
pub struct FixtureFunctor {
    pub name: String,
    pub c: Marking2Cat,
    pub d: Marking2Cat,
    pub f: TwoFunctor,
}

fn bracket(name: &str, k: &Category, s: &Category, obj: Vec<usize>) -> FixtureFunctor {
    let p = Functor1::from_object_map(k, s, obj).expect("fixture functor is monotone");
    FixtureFunctor {
        name: name.into(),
        c: Marking2Cat::minimal(StrictTwoCat::two_bracket(k)),
        d: Marking2Cat::minimal(StrictTwoCat::two_bracket(s)),
        f: TwoFunctor::two_bracket(&p),
    }
}

fn identity(name: &str, c: StrictTwoCat) -> FixtureFunctor {
    let f = TwoFunctor::identity(&c);
    let m = Marking2Cat::minimal(c);
    FixtureFunctor { name: name.into(), c: m.clone(), d: m, f }
}

/// The named fixtures, smallest first.
pub fn fixture_functors() -> Vec<FixtureFunctor> {
    let (pt, arrow) = (Category::point(), Category::walking_arrow());
    vec![
        identity("terminal", StrictTwoCat::terminal()),
        bracket("bracket-pt-pt", &pt, &pt, vec![0]),
        bracket("bracket-empty-pt", &Category::empty(), &pt, vec![]),
        bracket("bracket-pt-arrow-0", &pt, &arrow, vec![0]),
        bracket("bracket-pt-arrow-1", &pt, &arrow, vec![1]),
        identity("walking-two-cell", walking_two_cell()),
    ]
}

/// A random poset on `n` elements whose order refines `0 < 1 < …`.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Category {
    let mut le = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                le.push((i, j));
            }
        }
    }
    Category::poset(n, &le)
}

/// Seeded `𝕡: 2[K] → 2[S]` for random posets with at most `max` elements.
pub fn random_bracket_functors(seed: u64, count: usize, max: usize) -> Vec<FixtureFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (nk, ns) = (rng.gen_range(0..=max), rng.gen_range(1..=max));
        let k = random_poset(&mut rng, nk);
        let s = random_poset(&mut rng, ns);
        let obj: Vec<usize> = (0..k.n_objects()).map(|_| rng.gen_range(0..s.n_objects())).collect();
        if Functor1::from_object_map(&k, &s, obj.clone()).is_some() {
            out.push(bracket(&format!("random-{seed}-{}", out.len()), &k, &s, obj));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        for fx in fixture_functors().into_iter().chain(random_bracket_functors(7, 8, 3)) {
            assert!(fx.c.base.validate().is_empty(), "{}", fx.name);
            assert!(fx.d.base.validate().is_empty(), "{}", fx.name);
            assert!(fx.f.validate(&fx.c.base, &fx.d.base).is_empty(), "{}", fx.name);
            fx.f.check_marking(&fx.c, &fx.d).unwrap();
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a: Vec<_> = random_bracket_functors(3, 5, 3).into_iter().map(|f| f.f).collect();
        let b: Vec<_> = random_bracket_functors(3, 5, 3).into_iter().map(|f| f.f).collect();
        assert_eq!(a, b);
    }
}
