//! Restricted arc-cuts: recognition, brute-force search, and the exact contraction algorithm.
//!
//! An arc set `S` is a restricted arc-cut when `D − S` has a strong component
//! `D₁` on at least two vertices and some arc lies entirely outside `V(D₁)`.
//!
//! The exact algorithm works per candidate vertex set `X`: if `D[X]` is strong,
//! the cheapest way to make `X` a whole strong component is to destroy every
//! closed walk that leaves `X` and comes back. Splitting `X` into a source
//! (arcs leaving `X`) and a sink (arcs entering `X`) turns that into a unit
//! capacity minimum cut. `λ'(D)` is the minimum over all qualifying `X`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{xi, DefinitionReading};
use crate::cycles::{girth, girth_cycles, Cycle};
use crate::digraph::{
    full_mask, is_strong_masks, scc_masks, Arc, ArcSet, Bits, Digraph, VertexSet,
};
use crate::error::AnalysisError;
use crate::families::match_family;
use crate::flow::{FlowNetwork, UNCUTTABLE};

/// Largest order accepted by [`lambda_prime_exact`]; it walks all vertex subsets.
pub const MAX_EXACT_VERTICES: usize = 20;

/// A restricted arc-cut together with the witnesses that make it one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedCut {
    pub cut: ArcSet,
    /// Vertex set of the non-trivial strong component of `D − cut`.
    pub component: VertexSet,
    pub outside_arc: Arc,
}

impl RestrictedCut {
    pub fn size(&self) -> usize {
        self.cut.len()
    }

    /// Re-checks every witness from scratch.
    pub fn validate(&self, d: &Digraph, reading: DefinitionReading) -> bool {
        let Ok(rest) = d.delete_arcs(&self.cut) else {
            return false;
        };
        if self.component.len() < 2 || !rest.strong_components().contains(&self.component) {
            return false;
        }
        let a = self.outside_arc;
        let outside = !self.component.contains(a.tail) && !self.component.contains(a.head);
        let host = match reading {
            DefinitionReading::OriginalHost => d,
            DefinitionReading::ResidualHost => &rest,
        };
        outside && host.has_arc(a.tail, a.head)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RestrictedCutCertificate {
    Cut(RestrictedCut),
    NotLambdaPrimeConnected,
    /// Brute force stopped at `bound` below `|A(D)|` without finding a cut.
    UnknownBelowBound {
        bound: usize,
    },
}

impl RestrictedCutCertificate {
    /// `λ'(D)` if this certificate settles it with a cut.
    pub fn value(&self) -> Option<usize> {
        match self {
            RestrictedCutCertificate::Cut(c) => Some(c.size()),
            _ => None,
        }
    }

    pub fn cut(&self) -> Option<&RestrictedCut> {
        match self {
            RestrictedCutCertificate::Cut(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_connected(&self) -> bool {
        matches!(self, RestrictedCutCertificate::Cut(_))
    }
}

/// Smallest arc of `host` (given as out-masks) with both endpoints outside `x`.
fn arc_outside_masks(out: &[u64], n: usize, x: u64) -> Option<Arc> {
    let rest = full_mask(n) & !x;
    Bits(rest).find_map(|t| Bits(out[t] & rest).next().map(|h| Arc::new(t, h)))
}

/// Scans components of the residual digraph sink-first.
fn residual_witness(
    d: &Digraph,
    residual_out: &[u64],
    reading: DefinitionReading,
) -> Option<(VertexSet, Arc)> {
    let host = match reading {
        DefinitionReading::OriginalHost => d.out_masks(),
        DefinitionReading::ResidualHost => residual_out,
    };
    scc_masks(d.n(), residual_out)
        .into_iter()
        .rev()
        .filter(|c| c.count_ones() >= 2)
        .find_map(|c| arc_outside_masks(host, d.n(), c).map(|a| (VertexSet::from_mask(c), a)))
}

/// If `s` is a restricted arc-cut, the witnessing component and outside arc.
///
/// Components of `D − S` are tried sink-first; the outside arc is the
/// lexicographically smallest one available in the chosen host.
pub fn is_restricted_arc_cut(
    d: &Digraph,
    s: &ArcSet,
    reading: DefinitionReading,
) -> Result<Option<(VertexSet, Arc)>, AnalysisError> {
    let rest = d.delete_arcs(s)?;
    Ok(residual_witness(d, rest.out_masks(), reading))
}

/// Minimum restricted arc-cut by enumerating arc subsets in increasing size.
///
/// Only meant as an oracle for small digraphs.
pub fn lambda_prime_bruteforce(
    d: &Digraph,
    k_max: usize,
    reading: DefinitionReading,
) -> Result<RestrictedCutCertificate, AnalysisError> {
    if !d.is_strong() {
        return Err(AnalysisError::NotStrong);
    }
    let arcs: Vec<Arc> = d.arcs().collect();
    let top = k_max.min(arcs.len());
    let mut out = d.out_masks().to_vec();
    for k in 0..=top {
        for combo in (0..arcs.len()).combinations(k) {
            out.copy_from_slice(d.out_masks());
            for &i in &combo {
                out[arcs[i].tail] &= !(1 << arcs[i].head);
            }
            if let Some((component, outside_arc)) = residual_witness(d, &out, reading) {
                let cut = combo.iter().map(|&i| arcs[i]).collect();
                return Ok(RestrictedCutCertificate::Cut(RestrictedCut {
                    cut,
                    component,
                    outside_arc,
                }));
            }
        }
    }
    if k_max >= arcs.len() {
        Ok(RestrictedCutCertificate::NotLambdaPrimeConnected)
    } else {
        Ok(RestrictedCutCertificate::UnknownBelowBound { bound: k_max })
    }
}

/// Minimum cut separating the two halves of a split `x`, or `None` if it
/// reaches `limit`. `protected` marks one outside arc as uncuttable.
fn contraction_cut(d: &Digraph, x: u64, protected: Option<Arc>, limit: u32) -> Option<Vec<Arc>> {
    const SOURCE: usize = 0;
    const SINK: usize = 1;
    let n = d.n();
    let mut node = vec![usize::MAX; n];
    let mut next = 2;
    for v in Bits(full_mask(n) & !x) {
        node[v] = next;
        next += 1;
    }
    let mut net = FlowNetwork::new(next);
    for arc in d.arcs() {
        let tail_in = x >> arc.tail & 1 == 1;
        let head_in = x >> arc.head & 1 == 1;
        match (tail_in, head_in) {
            (true, true) => {}
            (true, false) => net.add_edge(SOURCE, node[arc.head], 1, Some(arc)),
            (false, true) => net.add_edge(node[arc.tail], SINK, 1, Some(arc)),
            (false, false) => {
                let cap = if protected == Some(arc) {
                    UNCUTTABLE
                } else {
                    1
                };
                net.add_edge(node[arc.tail], node[arc.head], cap, Some(arc));
            }
        }
    }
    let value = net.max_flow(SOURCE, SINK, limit);
    (value < limit).then(|| net.min_cut_labels(SOURCE))
}

/// Best certificate for a fixed component `x`, if it beats `best`.
fn best_for_component(
    d: &Digraph,
    x: u64,
    reading: DefinitionReading,
    best: usize,
) -> Option<RestrictedCut> {
    let limit = u32::try_from(best).unwrap_or(u32::MAX);
    match reading {
        DefinitionReading::OriginalHost => {
            let outside_arc = arc_outside_masks(d.out_masks(), d.n(), x)?;
            let cut = contraction_cut(d, x, None, limit)?;
            Some(RestrictedCut {
                cut: cut.into_iter().collect(),
                component: VertexSet::from_mask(x),
                outside_arc,
            })
        }
        DefinitionReading::ResidualHost => {
            let rest = full_mask(d.n()) & !x;
            let mut found: Option<RestrictedCut> = None;
            for t in Bits(rest) {
                for h in Bits(d.out_masks()[t] & rest) {
                    let arc = Arc::new(t, h);
                    let limit = found.as_ref().map_or(limit, |f| f.size() as u32);
                    if let Some(cut) = contraction_cut(d, x, Some(arc), limit) {
                        found = Some(RestrictedCut {
                            cut: cut.into_iter().collect(),
                            component: VertexSet::from_mask(x),
                            outside_arc: arc,
                        });
                    }
                }
            }
            found
        }
    }
}

/// Subsets of `0..n` with exactly `k` elements, ascending (Gosper's hack).
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let end = 1u64.checked_shl(n as u32).unwrap_or(0);
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = Some(first).filter(|&c| k <= n && (n == 64 || c < end));
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c.wrapping_add(low);
            if ripple == 0 {
                None
            } else {
                let nxt = (((ripple ^ c) >> 2) / low) | ripple;
                (n == 64 || nxt < end).then_some(nxt)
            }
        };
        Some(c)
    })
}

/// Exact `λ'(D)` via contraction and unit-capacity minimum cuts.
///
/// Girth cycle vertex sets seed the bound; then every `X` with `D[X]`
/// strong and `2 ≤ |X| ≤ n − 2` is tried in increasing size, with each flow
/// cut off once it reaches the best cut found so far.
pub fn lambda_prime_exact(
    d: &Digraph,
    reading: DefinitionReading,
) -> Result<RestrictedCutCertificate, AnalysisError> {
    let n = d.n();
    if n > MAX_EXACT_VERTICES {
        return Err(AnalysisError::TooLarge {
            n,
            max: MAX_EXACT_VERTICES,
        });
    }
    if !d.is_strong() {
        return Err(AnalysisError::NotStrong);
    }
    let qualifies = |x: u64| {
        is_strong_masks(n, d.out_masks(), d.in_masks(), x)
            && arc_outside_masks(d.out_masks(), n, x).is_some()
    };

    let mut best: Option<RestrictedCut> = None;
    let consider = |x: u64, best: &mut Option<RestrictedCut>| {
        if !qualifies(x) {
            return;
        }
        let bound = best.as_ref().map_or(usize::MAX, RestrictedCut::size);
        if let Some(c) = best_for_component(d, x, reading, bound) {
            *best = Some(c);
        }
    };

    if let Ok(cycles) = girth_cycles(d) {
        for c in cycles {
            consider(c.vertex_set().mask(), &mut best);
        }
    }
    for k in 2..=n.saturating_sub(2) {
        for x in subsets_of_size(n, k) {
            consider(x, &mut best);
        }
    }
    Ok(best.map_or(
        RestrictedCutCertificate::NotLambdaPrimeConnected,
        RestrictedCutCertificate::Cut,
    ))
}

/// A girth cycle `C` and an arc of `D − V(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthCycleWitness {
    pub cycle: Cycle,
    pub arc: Arc,
}

/// The girth-cycle criterion for `λ'`-connectedness: some girth cycle leaves an arc
/// outside its vertex set. Returns the first such cycle and its smallest outside arc.
pub fn lambda_prime_exists(d: &Digraph) -> Result<Option<GirthCycleWitness>, AnalysisError> {
    if !d.is_strong() {
        return Err(AnalysisError::NotStrong);
    }
    let Ok(cycles) = girth_cycles(d) else {
        return Ok(None);
    };
    Ok(cycles.into_iter().find_map(|cycle| {
        d.arc_outside(cycle.vertex_set())
            .map(|arc| GirthCycleWitness { cycle, arc })
    }))
}

/// Strong, girth 4, at least 6 vertices, and not a member of H1–H7.
pub fn bound_hypotheses_hold(d: &Digraph) -> bool {
    d.n() >= 6 && girth(d) == Some(4) && d.is_strong() && match_family(d).is_none()
}

/// `ξ(D)` when the bound chain is known to hold, else `|A(D)|`.
pub fn default_bruteforce_bound(d: &Digraph) -> usize {
    if bound_hypotheses_hold(d) {
        if let Ok(r) = xi(d) {
            return r.value;
        }
    }
    d.arc_count()
}
