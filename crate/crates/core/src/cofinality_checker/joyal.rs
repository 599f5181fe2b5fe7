use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_cofinal, combine};
use crate::category::{slice_under, Category, Functor1};
use crate::error::Result;
use crate::fixtures::random_poset;
use crate::homotopy_engine::{nerve_contractible, Budgets, Tri, Verdict};
use crate::strict_two_cat::{Marking2Cat, StrictTwoCat, TwoFunctor};

#[derive(Clone, Debug, Serialize)]
pub struct JoyalReport {
    pub verdict: Tri,
    /// Per object `d` of the target: the verdict on the nerve of `K_{d/}`.
    pub slices: Vec<(usize, Verdict)>,
}

/// Cofinality of a functor of finite categories: every `K_{d/}` has a
/// weakly contractible nerve.
pub fn joyal_cofinal(k: &Category, s: &Category, p: &Functor1, b: &Budgets) -> JoyalReport {
    let slices: Vec<(usize, Verdict)> = (0..s.n_objects())
        .map(|d| {
            let (sl, _) = slice_under(k, s, p, d);
            (d, nerve_contractible(&sl, b))
        })
        .collect();
    JoyalReport { verdict: combine(slices.iter().map(|(_, v)| v.value)), slices }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Agreement {
    Agree,
    Disagree,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// `check_cofinal` on `𝕡: 2[K] → 2[S]` with minimal markings.
    pub bracket: Tri,
    /// `joyal_cofinal(p^op)`.
    pub joyal: Tri,
    pub outcome: Agreement,
    pub counterexample: Option<String>,
}

/// Compares cofinality of `𝕡: 2[K] → 2[S]` with cofinality of `p^op`.
pub fn two_bracket_duality(k: &Category, s: &Category, p: &Functor1, b: &Budgets) -> Result<DualityReport> {
    let c = Marking2Cat::minimal(StrictTwoCat::two_bracket(k));
    let d = Marking2Cat::minimal(StrictTwoCat::two_bracket(s));
    let rep = check_cofinal(&c, &d, &TwoFunctor::two_bracket(p), b)?;
    let joyal = joyal_cofinal(&k.op(), &s.op(), &p.op(), b).verdict;
    let outcome = match (rep.verdict, joyal) {
        (Tri::Unknown, _) | (_, Tri::Unknown) => Agreement::Undecided,
        (x, y) if x == y => Agreement::Agree,
        _ => Agreement::Disagree,
    };
    Ok(DualityReport { bracket: rep.verdict, joyal, outcome, counterexample: rep.counterexample })
}

#[derive(Clone, Debug)]
pub struct DualityCase {
    pub name: String,
    pub k: Category,
    pub s: Category,
    pub p: Functor1,
}

fn case(name: impl Into<String>, k: Category, s: Category, obj: Vec<usize>) -> DualityCase {
    let p = Functor1::from_object_map(&k, &s, obj).expect("corpus functor is monotone");
    DualityCase { name: name.into(), k, s, p }
}

/// Functors between posets with at most five elements: named cases with
/// known answers, then seeded random ones.
pub fn duality_corpus(seed: u64, random: usize) -> Vec<DualityCase> {
    let arrow = Category::walking_arrow();
    let chain3 = Category::poset(3, &[(0, 1), (1, 2)]);
    let vee = Category::poset(3, &[(0, 2), (1, 2)]);
    let diamond = Category::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    let mut out = vec![
        case("id-pt", Category::point(), Category::point(), vec![0]),
        case("bottom-of-arrow", Category::point(), arrow.clone(), vec![0]),
        case("bottom-of-diamond", Category::point(), diamond.clone(), vec![0]),
        case("id-chain3", chain3.clone(), chain3.clone(), vec![0, 1, 2]),
        case("top-of-arrow", Category::point(), arrow.clone(), vec![1]),
        case("top-of-diamond", Category::point(), diamond.clone(), vec![3]),
        case("feet-of-vee", Category::poset(2, &[]), vee, vec![0, 1]),
        case("empty-into-pt", Category::empty(), Category::point(), vec![]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0;
    while made < random {
        let (nk, ns) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
        let k = random_poset(&mut rng, nk);
        let s = random_poset(&mut rng, ns);
        let obj: Vec<usize> = (0..nk).map(|_| rng.gen_range(0..ns)).collect();
        if let Some(p) = Functor1::from_object_map(&k, &s, obj) {
            out.push(DualityCase { name: format!("random-{seed}-{made}"), k, s, p });
            made += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// For posets `K_{d/}` is the full subposet `{k : d ≤ p(k)}`. A minimum in
    /// every one forces Yes; an empty or disconnected one forces No.
    fn poset_oracle(k: &Category, s: &Category, p: &Functor1) -> Option<bool> {
        let mut all_cones = true;
        for d in 0..s.n_objects() {
            let ks: Vec<usize> = (0..k.n_objects()).filter(|&x| !s.hom(d, p.obj[x]).is_empty()).collect();
            let mut comp: Vec<usize> = (0..ks.len()).collect();
            let mut changed = true;
            while changed {
                changed = false;
                for i in 0..ks.len() {
                    for j in 0..ks.len() {
                        let linked = !k.hom(ks[i], ks[j]).is_empty() || !k.hom(ks[j], ks[i]).is_empty();
                        if linked && comp[j] > comp[i] {
                            comp[j] = comp[i];
                            changed = true;
                        }
                    }
                }
            }
            if ks.is_empty() || comp.iter().any(|&c| c != 0) {
                return Some(false);
            }
            all_cones &= ks.iter().any(|&m| ks.iter().all(|&x| !k.hom(m, x).is_empty()));
        }
        all_cones.then_some(true)
    }

    #[test]
    fn joyal_examples() {
        let b = Budgets::default();
        let arrow = Category::walking_arrow();
        let pt = Category::point();
        let top = Functor1::from_object_map(&pt, &arrow, vec![1]).unwrap();
        let bottom = Functor1::from_object_map(&pt, &arrow, vec![0]).unwrap();
        assert_eq!(joyal_cofinal(&pt, &arrow, &top, &b).verdict, Tri::Yes);
        let r = joyal_cofinal(&pt, &arrow, &bottom, &b);
        assert_eq!(r.verdict, Tri::No);
        assert_eq!(r.slices[1].1.value, Tri::No);
        assert_eq!(joyal_cofinal(&arrow, &arrow, &Functor1::identity(&arrow), &b).verdict, Tri::Yes);
    }

    #[test]
    fn joyal_matches_poset_oracle() {
        let b = Budgets::default();
        for c in duality_corpus(5, 12) {
            let r = joyal_cofinal(&c.k, &c.s, &c.p, &b);
            match poset_oracle(&c.k, &c.s, &c.p) {
                Some(true) => assert_eq!(r.verdict, Tri::Yes, "{}", c.name),
                Some(false) => assert_eq!(r.verdict, Tri::No, "{}", c.name),
                None => {}
            }
        }
    }

    #[test]
    fn duality_examples() {
        let b = Budgets::default();
        let arrow = Category::walking_arrow();
        let pt = Category::point();
        let id = two_bracket_duality(&pt, &pt, &Functor1::identity(&pt), &b).unwrap();
        assert_eq!((id.outcome, id.bracket), (Agreement::Agree, Tri::Yes));
        let top = Functor1::from_object_map(&pt, &arrow, vec![1]).unwrap();
        let r = two_bracket_duality(&pt, &arrow, &top, &b).unwrap();
        assert_eq!((r.outcome, r.bracket), (Agreement::Agree, Tri::No));
        let bottom = Functor1::from_object_map(&pt, &arrow, vec![0]).unwrap();
        let r = two_bracket_duality(&pt, &arrow, &bottom, &b).unwrap();
        assert_eq!((r.outcome, r.bracket), (Agreement::Agree, Tri::Yes));
    }

    #[test]
    fn corpus_never_disagrees() {
        let b = Budgets::default();
        let corpus = duality_corpus(2024, 8);
        assert!(corpus.len() >= 10);
        let mut tally = [0usize; 2];
        for c in &corpus {
            assert!(c.k.n_objects() <= 5 && c.s.n_objects() <= 5);
            let r = two_bracket_duality(&c.k, &c.s, &c.p, &b).unwrap();
            assert_ne!(r.outcome, Agreement::Disagree, "{}", c.name);
            if r.outcome == Agreement::Agree {
                tally[(r.bracket == Tri::No) as usize] += 1;
            }
        }
        assert!(tally[0] >= 3 && tally[1] >= 3, "{tally:?}");
    }
}
