use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use super::Tri;
use crate::decorated_sset::DecoratedSSet;
use crate::error::{Error, Result};

/// Letters are `±(g + 1)` for generator `g`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = (0..self.generators).map(|g| format!("a{g}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                let mut s = String::new();
                for (i, &l) in w.iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                    }
                    let _ = write!(s, "a{}", l.unsigned_abs() - 1);
                    if l < 0 {
                        s.push_str("^-1");
                    }
                }
                s
            })
            .collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi1Result {
    pub basepoint: usize,
    /// The edge-path presentation from a spanning tree.
    pub presentation: Presentation,
    /// After Tietze moves.
    pub simplified: Presentation,
    pub trivial: Tri,
    pub reason: String,
}

/// Edge-path presentation of `π₁(X, v)` on the component of `v`.
pub fn edge_path_presentation(x: &DecoratedSSet, v: usize) -> Result<Presentation> {
    if x.count(0) == 0 {
        return Err(Error::Input("π₁ of the empty simplicial set".into()));
    }
    if v >= x.count(0) {
        return Err(Error::OutOfRange(format!("basepoint {v}")));
    }
    let ends = |e: usize| (x.faces[1][e][1].id, x.faces[1][e][0].id);
    let mut adj = vec![Vec::new(); x.count(0)];
    for e in 0..x.count(1) {
        let (s, t) = ends(e);
        adj[s].push((e, t));
        adj[t].push((e, s));
    }
    let mut seen = vec![false; x.count(0)];
    let mut tree = vec![false; x.count(1)];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(a) = queue.pop_front() {
        for &(e, b) in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                tree[e] = true;
                queue.push_back(b);
            }
        }
    }
    let mut gen = vec![None; x.count(1)];
    let mut n = 0;
    for e in 0..x.count(1) {
        if !tree[e] && seen[ends(e).0] {
            gen[e] = Some(n);
            n += 1;
        }
    }
    let letter = |f: &crate::decorated_sset::Simplex, sign: i32| -> Option<i32> {
        if f.is_degenerate() {
            return None;
        }
        gen[f.id].map(|g| sign * (g as i32 + 1))
    };
    let mut relators = Vec::new();
    for t in 0..x.count(2) {
        let fs = &x.faces[2][t];
        if !seen[x.restrict(&crate::decorated_sset::Simplex::nondeg(2, t), &[0]).id] {
            continue;
        }
        // d2 · d0 · d1⁻¹
        let w: Word = [letter(&fs[2], 1), letter(&fs[0], 1), letter(&fs[1], -1)].into_iter().flatten().collect();
        relators.push(w);
    }
    Ok(Presentation { generators: n, relators })
}

fn reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.pop();
        out.remove(0);
    }
    *w = out;
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Tietze moves: drop trivial relators and eliminate any generator that
/// occurs exactly once in some relator. The flag is set when a budget
/// stopped the moves early.
pub fn simplify(p: &Presentation, steps: usize, max_len: usize) -> (Presentation, bool) {
    let mut gens: Vec<bool> = vec![true; p.generators];
    let mut rels = p.relators.clone();
    for _ in 0..steps {
        for r in rels.iter_mut() {
            reduce(r);
        }
        rels.retain(|r| !r.is_empty());
        rels.sort_by_key(Vec::len);
        rels.dedup();
        let pick = rels.iter().enumerate().find_map(|(ri, r)| {
            r.iter().find(|&&l| r.iter().filter(|&&m| m.abs() == l.abs()).count() == 1).map(|&l| (ri, l))
        });
        let Some((ri, l)) = pick else { return (compact(&gens, rels), false) };
        let r = rels.remove(ri);
        let at = r.iter().position(|&m| m == l).unwrap();
        // r = u l w, so l = u⁻¹ w⁻¹, and l⁻¹ = w u
        let (u, w) = (&r[..at], &r[at + 1..]);
        let mut val = inverse(u);
        val.extend(inverse(w));
        let val_inv = inverse(&val);
        let g = l.abs();
        let sub = if l > 0 { (val, val_inv) } else { (val_inv, val) };
        for r in rels.iter_mut() {
            let mut out = Vec::new();
            for &m in r.iter() {
                if m == g {
                    out.extend_from_slice(&sub.0);
                } else if m == -g {
                    out.extend_from_slice(&sub.1);
                } else {
                    out.push(m);
                }
            }
            *r = out;
        }
        gens[(g - 1) as usize] = false;
        if rels.iter().any(|r| r.len() > max_len) {
            break;
        }
    }
    for r in rels.iter_mut() {
        reduce(r);
    }
    rels.retain(|r| !r.is_empty());
    (compact(&gens, rels), true)
}

fn compact(gens: &[bool], rels: Vec<Word>) -> Presentation {
    let mut renum = vec![0i32; gens.len()];
    let mut n = 0;
    for (g, &live) in gens.iter().enumerate() {
        if live {
            n += 1;
            renum[g] = n;
        }
    }
    let relators = rels.into_iter().map(|r| r.into_iter().map(|l| l.signum() * renum[(l.abs() - 1) as usize]).collect()).collect();
    Presentation { generators: n as usize, relators }
}

/// Invariant factors of the abelianization: `(free rank, torsion)`.
pub fn abelianization(p: &Presentation) -> (usize, Vec<String>) {
    let mut m = vec![vec![0i64; p.generators]; p.relators.len()];
    for (i, r) in p.relators.iter().enumerate() {
        for &l in r {
            m[i][(l.abs() - 1) as usize] += l.signum() as i64;
        }
    }
    // transpose so that rows are generators, matching boundary matrices
    let mt: Vec<Vec<i64>> = (0..p.generators).map(|g| m.iter().map(|r| r[g]).collect()).collect();
    let h = super::homology::invariant_factors(&mt);
    (p.generators - h.0, h.1)
}

/// `π₁(X, v)` with a triviality verdict.
pub fn pi1(x: &DecoratedSSet, v: usize, steps: usize, max_len: usize) -> Result<Pi1Result> {
    let presentation = edge_path_presentation(x, v)?;
    let (simplified, stopped) = simplify(&presentation, steps, max_len);
    let (trivial, reason) = if simplified.generators == 0 {
        (Tri::Yes, "every generator eliminated".to_string())
    } else if simplified.relators.is_empty() {
        (Tri::No, format!("free group of rank {}", simplified.generators))
    } else {
        let (rank, tors) = abelianization(&simplified);
        if rank > 0 || !tors.is_empty() {
            (Tri::No, format!("abelianization has rank {rank} and torsion {tors:?}"))
        } else {
            let why = if stopped { "Tietze budget spent" } else { "no generator occurs once in a relator" };
            (Tri::Unknown, format!("perfect presentation left: {why}"))
        }
    };
    Ok(Pi1Result { basepoint: v, presentation, simplified, trivial, reason })
}
