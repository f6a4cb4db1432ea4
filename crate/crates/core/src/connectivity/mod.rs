//! Arc-connectivity `λ`, the degree-sum bound `ξ`, and restricted arc-connectivity `λ'`.

mod proof;
mod restricted;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycles::{girth, girth_cycles, Cycle};
use crate::digraph::Digraph;
use crate::error::AnalysisError;
use crate::flow::FlowNetwork;

pub use proof::proof_cut_constructions;
pub use restricted::{
    bound_hypotheses_hold, default_bruteforce_bound, is_restricted_arc_cut,
    lambda_prime_bruteforce, lambda_prime_exact, lambda_prime_exists, GirthCycleWitness,
    RestrictedCut, RestrictedCutCertificate, MAX_EXACT_VERTICES,
};

/// Where the outside arc of a restricted arc-cut must live.
///
/// `OriginalHost` looks for it in `D`; `ResidualHost` requires it to survive in `D − S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefinitionReading {
    #[default]
    #[serde(rename = "original")]
    OriginalHost,
    #[serde(rename = "residual")]
    ResidualHost,
}

impl DefinitionReading {
    pub const ALL: [DefinitionReading; 2] = [
        DefinitionReading::OriginalHost,
        DefinitionReading::ResidualHost,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DefinitionReading::OriginalHost => "original",
            DefinitionReading::ResidualHost => "residual",
        }
    }
}

impl fmt::Display for DefinitionReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DefinitionReading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(DefinitionReading::OriginalHost),
            "residual" => Ok(DefinitionReading::ResidualHost),
            other => Err(format!(
                "unknown reading {other:?} (expected original|residual)"
            )),
        }
    }
}

/// Which degree sum realized `ξ(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeSide {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiResult {
    pub value: usize,
    pub cycle: Cycle,
    pub side: DegreeSide,
}

fn degree_sums(d: &Digraph, c: &Cycle) -> (usize, usize) {
    let out = c.vertices().iter().map(|&v| d.out_degree(v)).sum();
    let inn = c.vertices().iter().map(|&v| d.in_degree(v)).sum();
    (out, inn)
}

fn xi_with_side(d: &Digraph, c: &Cycle) -> (usize, DegreeSide) {
    let g = c.len();
    let (out, inn) = degree_sums(d, c);
    // Each cycle vertex has at least one out- and one in-arc on the cycle itself.
    let (out, inn) = (out - g, inn - g);
    if out <= inn {
        (out, DegreeSide::Out)
    } else {
        (inn, DegreeSide::In)
    }
}

/// `ξ(C) = min(Σ d⁺(v) − g, Σ d⁻(v) − g)` over the vertices of a girth cycle `C`.
pub fn xi_of_cycle(d: &Digraph, c: &Cycle) -> Result<usize, AnalysisError> {
    let valid = Cycle::new(d, c.vertices()).is_ok() && girth(d) == Some(c.len());
    if !valid {
        return Err(AnalysisError::NotAGirthCycle(c.to_string()));
    }
    Ok(xi_with_side(d, c).0)
}

/// `ξ(D)`: the minimum of `ξ(C)` over girth cycles, smallest cycle on ties.
pub fn xi(d: &Digraph) -> Result<XiResult, AnalysisError> {
    let mut best: Option<XiResult> = None;
    for cycle in girth_cycles(d)? {
        let (value, side) = xi_with_side(d, &cycle);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(XiResult { value, cycle, side });
        }
    }
    best.ok_or(AnalysisError::AcyclicDigraph)
}

fn unit_network(d: &Digraph) -> FlowNetwork {
    let mut net = FlowNetwork::new(d.n());
    for arc in d.arcs() {
        net.add_edge(arc.tail, arc.head, 1, Some(arc));
    }
    net
}

/// `λ(D)`: the minimum number of arc-disjoint paths over ordered vertex pairs.
///
/// Uses the usual reduction to flows from and to vertex 0.
pub fn arc_connectivity(d: &Digraph) -> Result<usize, AnalysisError> {
    if d.n() < 2 {
        return Err(AnalysisError::TooFewVertices);
    }
    if !d.is_strong() {
        return Err(AnalysisError::NotStrong);
    }
    let base = unit_network(d);
    let mut best = u32::MAX;
    for v in 1..d.n() {
        best = best.min(base.clone().max_flow(0, v, best));
        best = best.min(base.clone().max_flow(v, 0, best));
    }
    Ok(best as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{Arc, ArcSet};
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

    fn rotational5() -> Digraph {
        Digraph::build(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)])).unwrap()
    }

    /// Smallest arc set whose removal leaves a non-strong digraph.
    fn min_disconnecting_oracle(d: &Digraph) -> usize {
        let arcs: Vec<Arc> = d.arcs().collect();
        for k in 0..=arcs.len() {
            for combo in arcs.iter().copied().combinations(k) {
                let s: ArcSet = combo.into_iter().collect();
                if !d.delete_arcs(&s).unwrap().is_strong() {
                    return k;
                }
            }
        }
        unreachable!("removing every arc disconnects any digraph with n >= 2")
    }

    #[test]
    fn xi_examples() {
        let c4 = cycle_graph(4);
        let c = Cycle::new(&c4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(xi_of_cycle(&c4, &c), Ok(0));
        assert_eq!(xi(&c4).unwrap().value, 0);

        let d = l8();
        let c = Cycle::new(&d, &[0, 1, 2, 3]).unwrap();
        assert_eq!(xi_of_cycle(&d, &c), Ok(1));
        let r = xi(&d).unwrap();
        assert_eq!((r.value, r.cycle.vertices()), (1, &[0, 1, 2, 3][..]));
        assert_eq!(r.side, DegreeSide::Out);
    }

    #[test]
    fn xi_rejects_non_girth_cycles() {
        let d = rotational5();
        let five = Cycle::new(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert!(matches!(
            xi_of_cycle(&d, &five),
            Err(AnalysisError::NotAGirthCycle(_))
        ));
        let path = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(xi(&path), Err(AnalysisError::AcyclicDigraph));
    }

    #[test]
    fn arc_connectivity_examples() {
        assert_eq!(arc_connectivity(&cycle_graph(6)), Ok(1));
        assert_eq!(arc_connectivity(&l8()), Ok(1));
        let t = rotational5();
        assert_eq!(min_disconnecting_oracle(&t), 2);
        assert_eq!(arc_connectivity(&t), Ok(2));
        let path = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(arc_connectivity(&path), Err(AnalysisError::NotStrong));
        assert_eq!(
            arc_connectivity(&Digraph::empty(1)),
            Err(AnalysisError::TooFewVertices)
        );
    }

    #[test]
    fn reading_round_trips_through_strings() {
        for r in DefinitionReading::ALL {
            assert_eq!(r.as_str().parse::<DefinitionReading>(), Ok(r));
        }
        assert!("both".parse::<DefinitionReading>().is_err());
    }
}
