//! Candidate cuts from the girth-4 upper-bound argument.
//!
//! For a 4-cycle `C = (u,v,w,z)` the argument only ever cuts one of:
//! `∂⁺(X)` where `X` spans a 4-cycle sharing at least two arcs with `C`,
//! `{ua₁, vw, wx}` where `(u,v,w,x)` is a 4-cycle and `u → a₁ → v`, or
//! `{zu, au}` where `w → a`, `a → z` and `a → u`. The in-degree side is the
//! same construction on the reversed digraph.

use std::collections::BTreeSet;

use crate::cycles::{cycles_of_length, Cycle};
use crate::digraph::{Arc, ArcSet, Digraph};
use crate::error::AnalysisError;

/// Every candidate cut for the 4-cycle `c`, deduplicated and sorted.
pub fn proof_cut_constructions(d: &Digraph, c: &Cycle) -> Result<Vec<ArcSet>, AnalysisError> {
    if c.len() != 4 || Cycle::new(d, c.vertices()).is_err() {
        return Err(AnalysisError::NotAFourCycle(c.to_string()));
    }
    let mut found = BTreeSet::new();
    emit(d, c, &mut found, false);
    emit(&d.reverse(), &c.reversed(), &mut found, true);
    Ok(found.into_iter().collect())
}

fn emit(d: &Digraph, c: &Cycle, found: &mut BTreeSet<ArcSet>, flipped: bool) {
    let mut push = |arcs: ArcSet| {
        let arcs = if flipped {
            arcs.into_iter().map(Arc::reversed).collect()
        } else {
            arcs
        };
        found.insert(arcs);
    };
    let own: BTreeSet<Arc> = c.arcs().collect();
    for other in cycles_of_length(d, 4) {
        if other.arcs().filter(|a| own.contains(a)).count() >= 2 {
            push(
                d.out_cut(other.vertex_set())
                    .expect("cycle vertices are valid"),
            );
        }
    }

    let on_cycle = c.vertex_set();
    let off: Vec<usize> = (0..d.n()).filter(|&v| !on_cycle.contains(v)).collect();
    let vs = c.vertices();
    for r in 0..4 {
        let (u, v, w, z) = (vs[r], vs[(r + 1) % 4], vs[(r + 2) % 4], vs[(r + 3) % 4]);
        for &x in off.iter().filter(|&&x| d.has_arc(w, x) && d.has_arc(x, u)) {
            for &a1 in off
                .iter()
                .filter(|&&a| a != x && d.has_arc(u, a) && d.has_arc(a, v))
            {
                push([Arc::new(u, a1), Arc::new(v, w), Arc::new(w, x)].into());
            }
        }
        for &a in off
            .iter()
            .filter(|&&a| d.has_arc(w, a) && d.has_arc(a, z) && d.has_arc(a, u))
        {
            push([Arc::new(z, u), Arc::new(a, u)].into());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_restricted_arc_cut, DefinitionReading};

    #[test]
    fn l8_includes_the_cycle_out_cut() {
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
        let d = Digraph::build(8, arcs.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap();
        let c = Cycle::new(&d, &[0, 1, 2, 3]).unwrap();
        let got = proof_cut_constructions(&d, &c).unwrap();
        let link: ArcSet = [Arc::new(0, 4)].into();
        assert!(got.contains(&link));
        // The in-side construction gives ∂⁻ of the same cycle.
        assert!(got.contains(&[Arc::new(5, 1)].into()));
    }

    #[test]
    fn bare_cycle_yields_only_the_empty_cut() {
        let d = Digraph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = Cycle::new(&d, &[0, 1, 2, 3]).unwrap();
        let got = proof_cut_constructions(&d, &c).unwrap();
        assert_eq!(got, vec![ArcSet::new()]);
        let r = is_restricted_arc_cut(&d, &got[0], DefinitionReading::OriginalHost).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn named_three_arc_pattern() {
        // u=0 v=1 w=2 z=3 x=4 a1=5: cycles (u,v,w,z), (u,v,w,x), u→a1→v.
        let d = Digraph::build(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (2, 4),
                (4, 0),
                (0, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let c = Cycle::new(&d, &[0, 1, 2, 3]).unwrap();
        let got = proof_cut_constructions(&d, &c).unwrap();
        assert!(got.contains(&[Arc::new(0, 5), Arc::new(1, 2), Arc::new(2, 4)].into()));
    }

    #[test]
    fn rejects_non_four_cycles() {
        let d = Digraph::build(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let c = Cycle::new(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert!(matches!(
            proof_cut_constructions(&d, &c),
            Err(AnalysisError::NotAFourCycle(_))
        ));
    }
}
