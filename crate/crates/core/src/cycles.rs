//! Girth and fixed-length cycle enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Bits, Digraph, VertexSet};
use crate::error::AnalysisError;

/// A directed cycle, stored in canonical rotation (smallest vertex first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Validates `vertices` as a cycle of `d` and rotates it to canonical form.
    pub fn new(d: &Digraph, vertices: &[usize]) -> Result<Cycle, AnalysisError> {
        let k = vertices.len();
        if k < 2 {
            return Err(AnalysisError::InvalidCycle(format!(
                "{vertices:?} is too short"
            )));
        }
        let set: VertexSet = vertices.iter().copied().filter(|&v| v < 64).collect();
        if set.len() != k {
            return Err(AnalysisError::InvalidCycle(format!(
                "{vertices:?} repeats a vertex"
            )));
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !d.has_arc(a, b) {
                return Err(AnalysisError::InvalidCycle(format!(
                    "{vertices:?}: missing arc ({a},{b})"
                )));
            }
        }
        Ok(Self::canonical(vertices))
    }

    fn canonical(vertices: &[usize]) -> Cycle {
        let start = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut v = vertices.to_vec();
        v.rotate_left(start);
        Cycle(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Arcs `(v_i, v_{i+1})`, cyclically.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| Arc::new(self.0[i], self.0[(i + 1) % k]))
    }

    /// The same cycle traversed in `reverse(D)`.
    pub fn reversed(&self) -> Cycle {
        let mut v = self.0.clone();
        v.reverse();
        Self::canonical(&v)
    }

    /// Maps vertices through `f` and re-canonicalizes.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> Cycle {
        let v: Vec<usize> = self.0.iter().map(|&x| f(x)).collect();
        Self::canonical(&v)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for v in &self.0 {
            write!(f, "{v},")?;
        }
        write!(f, "{})", self.0.first().copied().unwrap_or_default())
    }
}

/// Length of a shortest directed cycle, or `None` if `d` is acyclic.
///
/// Runs a breadth-first search from every vertex and stops as soon as the
/// frontier hits an in-neighbor of the start.
pub fn girth(d: &Digraph) -> Option<usize> {
    let out = d.out_masks();
    let inn = d.in_masks();
    let mut best: Option<usize> = None;
    for s in 0..d.n() {
        if inn[s] == 0 || out[s] == 0 {
            continue;
        }
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut depth = 0;
        while frontier != 0 {
            // Cycle length through `s` when some frontier vertex dominates `s`.
            if frontier & inn[s] != 0 {
                let len = depth + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
                break;
            }
            depth += 1;
            if best.is_some_and(|b| depth + 1 >= b) {
                break;
            }
            let mut next = 0;
            for v in Bits(frontier) {
                next |= out[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
    }
    best
}

/// Every directed cycle on exactly `g` vertices, canonical rotation, sorted.
pub fn cycles_of_length(d: &Digraph, g: usize) -> Vec<Cycle> {
    let mut found = Vec::new();
    if g < 2 || g > d.n() {
        return found;
    }
    let out = d.out_masks();
    let mut path = Vec::with_capacity(g);
    for root in 0..d.n() {
        // Only vertices above the root, so each cycle is met once in canonical rotation.
        let allowed = !((2u64 << root) - 1);
        path.clear();
        path.push(root);
        extend(out, root, allowed, 1u64 << root, g, &mut path, &mut found);
    }
    found
}

fn extend(
    out: &[u64],
    root: usize,
    allowed: u64,
    used: u64,
    g: usize,
    path: &mut Vec<usize>,
    found: &mut Vec<Cycle>,
) {
    let last = *path.last().expect("path starts at root");
    if path.len() == g {
        if out[last] >> root & 1 == 1 {
            found.push(Cycle(path.clone()));
        }
        return;
    }
    for next in Bits(out[last] & allowed & !used) {
        path.push(next);
        extend(out, root, allowed, used | 1 << next, g, path, found);
        path.pop();
    }
}

/// All cycles of length `girth(d)`.
pub fn girth_cycles(d: &Digraph) -> Result<Vec<Cycle>, AnalysisError> {
    let g = girth(d).ok_or(AnalysisError::AcyclicDigraph)?;
    Ok(cycles_of_length(d, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn cycle_graph(n: usize) -> Digraph {
        Digraph::build(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn l8() -> Digraph {
        let arcs = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 5),
            (1, 5),
            (6, 2),
        ];
        Digraph::build(8, arcs.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
    }

    /// Every ordered vertex sequence of length `g` whose first entry is its
    /// minimum and whose consecutive pairs (cyclically) are arcs.
    fn permutation_oracle(d: &Digraph, g: usize) -> Vec<Vec<usize>> {
        (0..d.n())
            .permutations(g)
            .filter(|p| p[0] == *p.iter().min().unwrap())
            .filter(|p| (0..g).all(|i| d.has_arc(p[i], p[(i + 1) % g])))
            .sorted()
            .collect()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle_graph(5)), Some(5));
        assert_eq!(girth(&Digraph::build(3, [(0, 1), (1, 2)]).unwrap()), None);
        assert_eq!(girth(&l8()), Some(4));
        assert_eq!(girth(&Digraph::empty(0)), None);
    }

    #[test]
    fn l8_four_cycles() {
        let d = l8();
        let got: Vec<Vec<usize>> = cycles_of_length(&d, 4)
            .iter()
            .map(|c| c.vertices().to_vec())
            .collect();
        assert_eq!(got, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert_eq!(got, permutation_oracle(&d, 4));
        assert_eq!(girth_cycles(&d).unwrap().len(), 2);
        assert!(cycles_of_length(&cycle_graph(4), 3).is_empty());
    }

    #[test]
    fn acyclic_has_no_girth_cycles() {
        let path = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(girth_cycles(&path), Err(AnalysisError::AcyclicDigraph));
        assert_eq!(girth_cycles(&cycle_graph(4)).unwrap().len(), 1);
    }

    #[test]
    fn cycle_validation_and_rotation() {
        let d = cycle_graph(4);
        let c = Cycle::new(&d, &[2, 3, 0, 1]).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3]);
        assert_eq!(c.to_string(), "(0,1,2,3,0)");
        assert!(Cycle::new(&d, &[0, 2, 1, 3]).is_err());
        assert!(Cycle::new(&d, &[0, 1, 1, 2]).is_err());
        assert_eq!(c.reversed().vertices(), &[0, 3, 2, 1]);
        assert!(Cycle::new(&d.reverse(), c.reversed().vertices()).is_ok());
    }

    #[test]
    fn matches_oracle_on_rotational_tournament() {
        let d =
            Digraph::build(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)])).unwrap();
        assert_eq!(girth(&d), Some(3));
        for g in 3..=5 {
            let got: Vec<Vec<usize>> = cycles_of_length(&d, g)
                .iter()
                .map(|c| c.vertices().to_vec())
                .collect();
            assert_eq!(got, permutation_oracle(&d, g), "g={g}");
        }
    }
}
