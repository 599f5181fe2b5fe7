use serde::Serialize;

use super::{FibSimplex, FreeFibration};
use crate::decorated_sset::{codegeneracy, coface, SimplexSource};
use crate::gray_products::extend;

/// Results of the symbolic face identities for `E_j*`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FaceLemmaReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl FaceLemmaReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn is_degenerate(ff: &FreeFibration, x: &FibSimplex) -> bool {
    let src = ff.source();
    let n = x.dim();
    (0..n).any(|i| src.restrict(&src.restrict(x, &coface(n, i)), &codegeneracy(n - 1, i)) == *x)
}

fn face(ff: &FreeFibration, x: &FibSimplex, s: usize) -> FibSimplex {
    x.restrict(&ff.c.base, &ff.d, &coface(x.dim(), s))
}

fn ext(ff: &FreeFibration, x: &FibSimplex, j: usize) -> FibSimplex {
    extend(&ff.c.base, &ff.d, x, j).expect("stored simplices are well formed")
}

/// Checks `d_s E_j*(σ)` against its expected value for every stored simplex,
/// every `j ≤ n` and every `s ≤ n + 1`.
pub fn face_lemma_check(ff: &FreeFibration) -> FaceLemmaReport {
    let mut rep = FaceLemmaReport::default();
    for row in &ff.total.data {
        for sigma in row {
            let n = sigma.dim();
            for j in 0..=n {
                let e = ext(ff, sigma, j);
                if !(e.is_well_formed(&ff.c.base, &ff.d) && e.is_tame(&ff.d) && e.is_compatible(&ff.d, &ff.f)) {
                    rep.failures.push(format!("E_{j} of a {n}-simplex leaves the tame model"));
                }
                for s in 0..=n + 1 {
                    let got = face(ff, &e, s);
                    let want = if j == n && s == n + 1 {
                        sigma.clone()
                    } else if j + 1 < s {
                        ext(ff, &face(ff, sigma, s - 1), j)
                    } else if s < j {
                        ext(ff, &face(ff, sigma, s), j - 1)
                    } else if s == j + 1 {
                        face(ff, &ext(ff, sigma, j + 1), j + 1)
                    } else if j != 0 {
                        face(ff, &ext(ff, sigma, j - 1), j)
                    } else {
                        ff.gamma(&sigma.rho)
                    };
                    rep.checked += 1;
                    if got != want {
                        rep.failures.push(format!("d_{s} E_{j} fails on a {n}-simplex"));
                    }
                }
            }
        }
    }
    rep
}

/// Results of the two degeneracy statements for extensions: `E_j*` of a
/// degenerate simplex is degenerate, and so is every `E_i*(E_j*(σ))`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DegeneracyReport {
    pub degenerate_inputs: usize,
    pub double_extensions: usize,
    /// Extensions of nondegenerate stored simplices that came out nondegenerate,
    /// so that the degeneracy test is not vacuous.
    pub nondegenerate_extensions: usize,
    pub failures: Vec<String>,
}

impl DegeneracyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn degeneracy_lemma_check(ff: &FreeFibration) -> DegeneracyReport {
    let src = ff.source();
    let mut rep = DegeneracyReport::default();
    for row in &ff.total.data {
        for sigma in row {
            let n = sigma.dim();
            for i in 0..=n {
                let deg = src.restrict(sigma, &codegeneracy(n, i));
                for j in 0..=n + 1 {
                    rep.degenerate_inputs += 1;
                    if !is_degenerate(ff, &ext(ff, &deg, j)) {
                        rep.failures.push(format!("E_{j}* of s_{i} of a {n}-simplex is nondegenerate"));
                    }
                }
            }
            for j in 0..=n {
                let e = ext(ff, sigma, j);
                rep.nondegenerate_extensions += !is_degenerate(ff, &e) as usize;
                for i in 0..=n + 1 {
                    rep.double_extensions += 1;
                    if !is_degenerate(ff, &ext(ff, &e, i)) {
                        rep.failures.push(format!("E_{i}* E_{j}* of a {n}-simplex is nondegenerate"));
                    }
                }
            }
        }
    }
    rep
}

/// How a nondegenerate simplex enters the filtration of `F(C)` from `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimplexClass {
    /// In the image of `γ`.
    Gamma,
    /// Equal to `E_j*(τ)` for some `τ`.
    Extension { j: usize },
    /// The missing face of the horn `Λ^{n+1}_{n+1} ⊂ E_n*(x)`.
    Horn,
    /// Equal to `d_β E_β*(θ)` for a horn-class `θ` of the same dimension.
    FaceOfExtension { beta: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    /// Per dimension: `[γ, extension, horn, face of extension]`.
    pub counts: Vec<[usize; 4]>,
    pub failures: Vec<String>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sorts every stored nondegenerate simplex into one class and reports the
/// simplices that no class reaches.
pub fn filtration_audit(ff: &FreeFibration) -> (Vec<Vec<Option<SimplexClass>>>, AuditReport) {
    let src = ff.source();
    let mut rep = AuditReport::default();
    let mut classes = Vec::new();
    for (n, row) in ff.total.data.iter().enumerate() {
        let lower: Vec<FibSimplex> = if n == 0 { Vec::new() } else { src.simplices(n - 1) };
        let mut cls: Vec<Option<SimplexClass>> = vec![None; row.len()];
        let mut horn_errors = vec![String::new(); row.len()];
        for (i, x) in row.iter().enumerate() {
            cls[i] = if ff.gamma(&x.rho) == *x {
                Some(SimplexClass::Gamma)
            } else if let Some(j) = (0..n).find(|&j| lower.iter().any(|t| ext(ff, t, j) == *x)) {
                Some(SimplexClass::Extension { j })
            } else {
                match check_horn_class(ff, x) {
                    Ok(()) => Some(SimplexClass::Horn),
                    Err(e) => {
                        horn_errors[i] = e;
                        None
                    }
                }
            };
        }
        let horns: Vec<&FibSimplex> =
            row.iter().zip(&cls).filter(|(_, c)| **c == Some(SimplexClass::Horn)).map(|(x, _)| x).collect();
        for (i, x) in row.iter().enumerate() {
            if cls[i].is_some() {
                continue;
            }
            let beta = (0..=n).find(|&b| horns.iter().any(|t| face(ff, &ext(ff, t, b), b) == *x));
            match beta {
                Some(beta) => cls[i] = Some(SimplexClass::FaceOfExtension { beta }),
                None => rep.failures.push(format!("dim {n}: simplex {i} is not reachable ({})", horn_errors[i])),
            }
        }
        let mut counts = [0; 4];
        for c in cls.iter().flatten() {
            counts[match c {
                SimplexClass::Gamma => 0,
                SimplexClass::Extension { .. } => 1,
                SimplexClass::Horn => 2,
                SimplexClass::FaceOfExtension { .. } => 3,
            }] += 1;
        }
        rep.counts.push(counts);
        classes.push(cls);
    }
    (classes, rep)
}

fn check_horn_class(ff: &FreeFibration, x: &FibSimplex) -> Result<(), String> {
    let src = ff.source();
    let n = x.dim();
    let e = ext(ff, x, n);
    if is_degenerate(ff, &e) {
        return Err("E_n*(x) is degenerate".into());
    }
    if !e.is_tame(&ff.d) {
        return Err("E_n*(x) is not tame".into());
    }
    if face(ff, &e, n + 1) != *x {
        return Err("x is not the last face of E_n*(x)".into());
    }
    let last_edge = e.restrict(&ff.c.base, &ff.d, &[n, n + 1]);
    if !src.natural_marked(&last_edge) {
        return Err("last edge of E_n*(x) is not Cartesian".into());
    }
    if n == 0 {
        if !src.marked(&e) {
            return Err("E_0*(x) is not marked".into());
        }
        if face(ff, &e, 0) != ff.gamma(&x.rho) {
            return Err("d_0 E_0*(x) is not γ(ρ)".into());
        }
    } else if !src.lean(&e.restrict(&ff.c.base, &ff.d, &[0, n, n + 1])) {
        return Err("triangle {0, n, n+1} of E_n*(x) is not lean".into());
    }
    Ok(())
}
