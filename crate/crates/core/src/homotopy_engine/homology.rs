use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::decorated_sset::DecoratedSSet;
use crate::error::{Error, Result};

/// An abelian group `Z^rank ⊕ ⊕ Z/t`, torsion coefficients in decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub max_deg: usize,
    /// `H_0 … H_max_deg`.
    pub groups: Vec<HomologyGroup>,
    /// Set when some elimination overflowed `i64` and was redone exactly.
    pub used_bigint: bool,
    /// Composites `∂_k ∘ ∂_{k+1}` verified to vanish.
    pub dd_checked: usize,
}

impl HomologyResult {
    /// Reduced homology in degree `k`.
    pub fn reduced(&self, k: usize) -> HomologyGroup {
        let mut g = self.groups[k].clone();
        if k == 0 {
            g.rank = g.rank.saturating_sub(1);
        }
        g
    }

    /// Lowest degree with nonzero reduced homology.
    pub fn first_obstruction(&self) -> Option<usize> {
        (0..self.groups.len()).find(|&k| !self.reduced(k).is_zero())
    }
}

/// Entries for the diagonalisation; `None` from an operation means overflow.
trait Entry: Clone + PartialEq + std::fmt::Display {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, o: &Self) -> bool;
    fn quot(&self, o: &Self) -> Option<Self>;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn gcd_lcm(&self, o: &Self) -> Option<(Self, Self)>;
    fn abs(&self) -> Option<Self>;
    fn is_unit(&self) -> bool;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.unsigned_abs() < o.unsigned_abs()
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        self.checked_div(*o)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn gcd_lcm(&self, o: &Self) -> Option<(Self, Self)> {
        let (mut a, mut b) = (self.checked_abs()?, o.checked_abs()?);
        let prod = a.checked_mul(b)?;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Some(if a == 0 { (0, 0) } else { (a, prod / a) })
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, o: &Self) -> bool {
        self.magnitude() < o.magnitude()
    }
    fn quot(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn gcd_lcm(&self, o: &Self) -> Option<(Self, Self)> {
        let (mut a, mut b) = (Signed::abs(self), Signed::abs(o));
        let prod = &a * &b;
        while !Zero::is_zero(&b) {
            let r = &a % &b;
            a = std::mem::replace(&mut b, r);
        }
        Some(if Zero::is_zero(&a) { (a.clone(), a) } else { let l = prod / &a; (a, l) })
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::from(1u8)
    }
}

/// Smith normal form diagonal, invariant factors in divisibility order.
fn smith_diagonal<T: Entry>(mut m: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs_lt(&m[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut moved = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].quot(&m[t][t])?;
                for j in t..cols {
                    let v = m[i][j].sub_mul(&q, &m[t][j])?;
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    moved = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].quot(&m[t][t])?;
                for row in m.iter_mut().skip(t) {
                    let v = row[j].sub_mul(&q, &row[t])?;
                    row[j] = v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        diag.push(m[t][t].abs()?);
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (g, l) = diag[i].gcd_lcm(&diag[j])?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    Some(diag)
}

fn summarize<T: Entry>(d: &[T]) -> (usize, Vec<String>) {
    let rank = d.iter().filter(|v| !v.is_zero()).count();
    (rank, d.iter().filter(|v| !v.is_zero() && !v.is_unit()).map(|v| v.to_string()).collect())
}

/// Rank and torsion of a matrix's invariant factors.
fn factors(m: &[Vec<i64>], big: &mut bool) -> (usize, Vec<String>) {
    match smith_diagonal(m.to_vec()) {
        Some(d) => summarize(&d),
        None => {
            *big = true;
            let mb: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from_i64(v)).collect()).collect();
            summarize(&smith_diagonal(mb).expect("exact arithmetic does not overflow"))
        }
    }
}

/// Rank and torsion of the invariant factors of an integer matrix.
pub fn invariant_factors(m: &[Vec<i64>]) -> (usize, Vec<String>) {
    factors(m, &mut false)
}

/// The normalized boundary `∂_k`: rows are nondegenerate `(k-1)`-simplices,
/// columns nondegenerate `k`-simplices. Degenerate faces contribute nothing.
pub fn boundary_matrix(x: &DecoratedSSet, k: usize) -> Vec<Vec<i64>> {
    let (r, c) = (x.count(k - 1), x.count(k));
    let mut m = vec![vec![0i64; c]; r];
    for id in 0..c {
        for (i, f) in x.faces[k][id].iter().enumerate() {
            if !f.is_degenerate() {
                m[f.id][id] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

fn product_is_zero(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let inner = b.len();
    a.iter().all(|row| {
        (0..b.first().map_or(0, Vec::len)).all(|j| (0..inner).map(|t| row[t] as i128 * b[t][j] as i128).sum::<i128>() == 0)
    })
}

/// Integral homology of the underlying simplicial set in degrees `0..=max_deg`.
/// Simplices missing above the stored dimensions count as absent, so the
/// answer is exact when `x` stores everything through `max_deg + 1`.
pub fn homology(x: &DecoratedSSet, max_deg: usize) -> Result<HomologyResult> {
    if max_deg > x.cap {
        return Err(Error::DimensionCap { dim: max_deg, cap: x.cap });
    }
    let mut big = false;
    let mats: Vec<Vec<Vec<i64>>> = (1..=max_deg + 1).map(|k| boundary_matrix(x, k)).collect();
    for w in mats.windows(2) {
        assert!(product_is_zero(&w[0], &w[1]), "boundary of a boundary is nonzero");
    }
    // rank and torsion of ∂_k for k = 1..=max_deg+1
    let facts: Vec<(usize, Vec<String>)> = mats.iter().map(|m| factors(m, &mut big)).collect();
    let groups = (0..=max_deg)
        .map(|k| {
            let out_rank = if k == 0 { 0 } else { facts[k - 1].0 };
            let (in_rank, tors) = &facts[k];
            HomologyGroup { rank: x.count(k) - out_rank - in_rank, torsion: tors.clone() }
        })
        .collect();
    Ok(HomologyResult { max_deg, groups, used_bigint: big, dd_checked: mats.len() - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated_sset::{standard_simplex, Deco, Shape, Simplex};
    use crate::decorated_sset::Kind;

    fn simplex(n: usize, shape: Shape) -> DecoratedSSet {
        standard_simplex(n, shape, &Deco::plain(), 4).unwrap()
    }

    /// Rank over Z/p by plain Gaussian elimination.
    fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
        let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = (1..p).find(|v| v * a[rank][c] % p == 1).unwrap();
            for j in 0..cols {
                a[rank][j] = a[rank][j] * inv % p;
            }
            for i in 0..a.len() {
                if i != rank && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Betti numbers over Z/p, as a cross-check that needs no Smith form.
    fn betti_mod(x: &DecoratedSSet, max_deg: usize, p: i64) -> Vec<usize> {
        let r: Vec<usize> = (1..=max_deg + 1).map(|k| rank_mod(&boundary_matrix(x, k), p)).collect();
        (0..=max_deg).map(|k| x.count(k) - if k == 0 { 0 } else { r[k - 1] } - r[k]).collect()
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 0..=4 {
            let h = homology(&simplex(n, Shape::Full), 3).unwrap();
            assert_eq!(h.first_obstruction(), None, "Δ^{n}");
            assert_eq!(h.groups[0], HomologyGroup::free(1));
        }
    }

    #[test]
    fn boundary_of_triangle_is_a_circle() {
        let h = homology(&simplex(2, Shape::Boundary), 2).unwrap();
        assert_eq!(h.groups, vec![HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::free(0)]);
    }

    #[test]
    fn boundary_of_tetrahedron_is_a_sphere() {
        let x = simplex(3, Shape::Boundary);
        let h = homology(&x, 3).unwrap();
        assert_eq!(h.groups[1], HomologyGroup::free(0));
        assert_eq!(h.groups[2], HomologyGroup::free(1));
        // agreement over Z/2 and a large prime rules out torsion
        assert_eq!(betti_mod(&x, 3, 1_000_003), vec![1, 0, 1, 0]);
        assert_eq!(betti_mod(&x, 3, 2), vec![1, 0, 1, 0]);
    }

    #[test]
    fn torsion_is_found() {
        // RP²: one loop a and a triangle with d0 = d2 = a, d1 degenerate, so ∂σ = 2a
        let mut x = DecoratedSSet::empty(Kind::PLAIN);
        x.cap = 4;
        let v = x.push(0, vec![]);
        let pv = Simplex::vertex(v);
        let a = x.push(1, vec![pv.clone(), pv.clone()]);
        let sa = Simplex::nondeg(1, a);
        let deg = pv.degen_formal(0);
        x.push(2, vec![sa.clone(), deg, sa]);
        x.check_simplicial_identities(2).unwrap();
        let h = homology(&x, 2).unwrap();
        assert_eq!(h.groups[1], HomologyGroup { rank: 0, torsion: vec!["2".into()] });
        assert_eq!(h.groups[2], HomologyGroup::free(0));
        assert_eq!(betti_mod(&x, 2, 2), vec![1, 1, 1]);
        assert_eq!(betti_mod(&x, 2, 3), vec![1, 0, 0]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2 + 7;
        let m = vec![vec![big, big - 1], vec![big - 1, big + 3]];
        let mut used = false;
        let (rank, _) = factors(&m, &mut used);
        assert_eq!(rank, 2);
        assert!(used);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(homology(&simplex(1, Shape::Full), 9), Err(Error::DimensionCap { .. })));
    }
}
