use std::collections::HashSet;

use serde::Serialize;

use crate::decorated_sset::{DecoratedSSet, Simplex};

/// One elementary collapse: `face` is a free face of `cell`, and both go.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseStep {
    pub face: (usize, usize),
    pub cell: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub enum CollapseOutcome {
    /// The steps reduce `X` to a single vertex.
    Collapsed(Vec<CollapseStep>),
    /// Every order was tried without reaching a vertex.
    Stuck { explored: usize },
    BudgetExhausted { explored: usize },
}

/// Nondegenerate cells with their nondegenerate cofaces, counted with
/// multiplicity.
struct Cells {
    index: Vec<(usize, usize)>,
    cofaces: Vec<Vec<usize>>,
}

impl Cells {
    fn new(x: &DecoratedSSet) -> Self {
        let mut index = Vec::new();
        let mut offset = Vec::new();
        for k in 0..x.dims.len() {
            offset.push(index.len());
            index.extend((0..x.count(k)).map(|id| (k, id)));
        }
        let mut cofaces = vec![Vec::new(); index.len()];
        for k in 1..x.dims.len() {
            for id in 0..x.count(k) {
                for f in &x.faces[k][id] {
                    if !f.is_degenerate() {
                        cofaces[offset[k - 1] + f.id].push(offset[k] + id);
                    }
                }
            }
        }
        Cells { index, cofaces }
    }

    fn live_cofaces<'a>(&'a self, c: usize, alive: &'a [bool]) -> impl Iterator<Item = usize> + 'a {
        self.cofaces[c].iter().copied().filter(move |&s| alive[s])
    }

    /// Free pairs `(face, cell)`, higher cells first.
    fn free_pairs(&self, alive: &[bool]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.index.len() {
            if !alive[t] {
                continue;
            }
            let mut it = self.live_cofaces(t, alive);
            if let (Some(s), None) = (it.next(), it.next()) {
                if self.live_cofaces(s, alive).next().is_none() {
                    out.push((t, s));
                }
            }
        }
        out.sort_by_key(|&(_, s)| std::cmp::Reverse(self.index[s].0));
        out
    }
}

/// Depth-first search for a collapse to a vertex, greedy order first, with
/// a budget on visited states.
pub fn find_collapse(x: &DecoratedSSet, budget: usize) -> CollapseOutcome {
    let cells = Cells::new(x);
    let n = cells.index.len();
    if n == 0 {
        return CollapseOutcome::Stuck { explored: 0 };
    }
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut alive = vec![true; n];
    let mut path: Vec<(usize, usize)> = Vec::new();
    // stack of untried alternatives per depth
    let mut stack: Vec<Vec<(usize, usize)>> = vec![cells.free_pairs(&alive)];
    let mut explored = 0;
    loop {
        if alive.iter().filter(|&&a| a).count() == 1 {
            let steps = path
                .iter()
                .map(|&(t, s)| CollapseStep { face: cells.index[t], cell: cells.index[s] })
                .collect();
            return CollapseOutcome::Collapsed(steps);
        }
        let next = stack.last_mut().and_then(|alts| if alts.is_empty() { None } else { Some(alts.remove(0)) });
        match next {
            Some((t, s)) => {
                alive[t] = false;
                alive[s] = false;
                if !seen.insert(alive.clone()) {
                    alive[t] = true;
                    alive[s] = true;
                    continue;
                }
                explored += 1;
                if explored > budget {
                    return CollapseOutcome::BudgetExhausted { explored: budget };
                }
                path.push((t, s));
                stack.push(cells.free_pairs(&alive));
            }
            None => {
                stack.pop();
                match path.pop() {
                    Some((t, s)) => {
                        alive[t] = true;
                        alive[s] = true;
                    }
                    None => return CollapseOutcome::Stuck { explored },
                }
            }
        }
    }
}

/// Replays a collapse sequence; `Ok` iff every step removes a free pair and
/// a single vertex remains.
pub fn replay_collapse(x: &DecoratedSSet, steps: &[CollapseStep]) -> Result<(), String> {
    let cells = Cells::new(x);
    let pos = |c: (usize, usize)| cells.index.iter().position(|&d| d == c);
    let mut alive = vec![true; cells.index.len()];
    for (i, st) in steps.iter().enumerate() {
        let (Some(t), Some(s)) = (pos(st.face), pos(st.cell)) else {
            return Err(format!("step {i} names a missing cell"));
        };
        if !alive[t] || !alive[s] {
            return Err(format!("step {i} reuses a removed cell"));
        }
        let co: Vec<usize> = cells.live_cofaces(t, &alive).collect();
        if co != [s] || cells.live_cofaces(s, &alive).next().is_some() {
            return Err(format!("step {i} is not an elementary collapse"));
        }
        alive[t] = false;
        alive[s] = false;
    }
    let left: Vec<usize> = (0..alive.len()).filter(|&c| alive[c]).collect();
    match left.as_slice() {
        [c] if cells.index[*c].0 == 0 => Ok(()),
        _ => Err(format!("{} cells remain", left.len())),
    }
}

/// The dunce hat as a simplicial set: one vertex, one loop `a`, one triangle
/// with every face `a`. Contractible, with no free face.
pub fn dunce_hat() -> DecoratedSSet {
    let mut x = DecoratedSSet::empty(crate::decorated_sset::Kind::PLAIN);
    let v = Simplex::vertex(x.push(0, vec![]));
    let a = Simplex::nondeg(1, x.push(1, vec![v.clone(), v]));
    x.push(2, vec![a.clone(), a.clone(), a]);
    x.marked = x.all_edges();
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Category;
    use crate::decorated_sset::{standard_simplex, Deco, Shape};

    fn simplex(n: usize, shape: Shape) -> DecoratedSSet {
        standard_simplex(n, shape, &Deco::plain(), 4).unwrap()
    }

    #[test]
    fn triangle_collapses() {
        let x = simplex(2, Shape::Full);
        let CollapseOutcome::Collapsed(steps) = find_collapse(&x, 1000) else { panic!() };
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[0].cell.0, 2);
        replay_collapse(&x, &steps).unwrap();
    }

    #[test]
    fn simplices_and_horns_collapse() {
        for n in 0..=4 {
            let x = simplex(n, Shape::Full);
            let CollapseOutcome::Collapsed(steps) = find_collapse(&x, 100_000) else { panic!("Δ^{n}") };
            replay_collapse(&x, &steps).unwrap();
        }
        let x = simplex(3, Shape::Horn(1));
        assert!(matches!(find_collapse(&x, 100_000), CollapseOutcome::Collapsed(_)));
    }

    #[test]
    fn circle_is_stuck() {
        assert!(matches!(find_collapse(&simplex(2, Shape::Boundary), 1000), CollapseOutcome::Stuck { .. }));
    }

    #[test]
    fn dunce_hat_is_stuck() {
        let x = dunce_hat();
        x.check_simplicial_identities(2).unwrap();
        assert!(matches!(find_collapse(&x, 1000), CollapseOutcome::Stuck { .. }));
    }

    #[test]
    fn cones_collapse() {
        // poset with a top element: 0,1,2 below 3
        let c = Category::poset(4, &[(0, 3), (1, 3), (2, 3), (0, 1)]);
        let x = c.nerve(4);
        let CollapseOutcome::Collapsed(steps) = find_collapse(&x, 100_000) else { panic!() };
        replay_collapse(&x, &steps).unwrap();
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(find_collapse(&simplex(3, Shape::Full), 1), CollapseOutcome::BudgetExhausted { .. }));
    }

    #[test]
    fn bad_replays_are_rejected() {
        let x = simplex(2, Shape::Full);
        let CollapseOutcome::Collapsed(mut steps) = find_collapse(&x, 1000) else { panic!() };
        steps.swap(0, 2);
        assert!(replay_collapse(&x, &steps).is_err());
        assert!(replay_collapse(&x, &[]).is_err());
    }
}
