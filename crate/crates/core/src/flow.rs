//! Augmenting-path maximum flow for small networks with unit (or blocking) capacities.

use std::collections::VecDeque;

use crate::digraph::Arc;

/// Capacity that no cut may use.
pub const UNCUTTABLE: u32 = u32::MAX / 4;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: u32,
    rev: usize,
    label: Option<Arc>,
}

/// A flow network whose forward edges may carry the original arc they model.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u32, label: Option<Arc>) {
        let rf = self.adj[to].len() + usize::from(from == to);
        let rt = self.adj[from].len();
        self.adj[from].push(Edge {
            to,
            cap,
            rev: rf,
            label,
        });
        self.adj[to].push(Edge {
            to: from,
            cap: 0,
            rev: rt,
            label: None,
        });
    }

    /// Pushes flow from `s` to `t` until none remains or the value reaches `limit`.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut total = 0u32;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
        while total < limit {
            parent.iter_mut().for_each(|p| *p = None);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(v) = queue.pop_front() {
                for (i, e) in self.adj[v].iter().enumerate() {
                    if e.cap > 0 && e.to != s && parent[e.to].is_none() {
                        parent[e.to] = Some((v, i));
                        if e.to == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(e.to);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut bottleneck = limit - total;
            let mut v = t;
            while let Some((u, i)) = parent[v] {
                bottleneck = bottleneck.min(self.adj[u][i].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, i)) = parent[v] {
                self.adj[u][i].cap -= bottleneck;
                let rev = self.adj[u][i].rev;
                self.adj[v][rev].cap += bottleneck;
                v = u;
            }
            total = total.saturating_add(bottleneck);
        }
        total
    }

    /// Labelled edges leaving the residual-reachable side of `s`.
    ///
    /// After a completed (unlimited) `max_flow` these form a minimum cut.
    pub fn min_cut_labels(&self, s: usize) -> Vec<Arc> {
        let mut side = vec![false; self.adj.len()];
        side[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in &self.adj[v] {
                if e.cap > 0 && !side[e.to] {
                    side[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        let mut cut = Vec::new();
        for (v, edges) in self.adj.iter().enumerate() {
            if !side[v] {
                continue;
            }
            for e in edges {
                if let Some(label) = e.label {
                    if !side[e.to] {
                        cut.push(label);
                    }
                }
            }
        }
        cut.sort();
        cut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_paths() {
        // s=0, t=3, two disjoint paths plus a shared bottleneck.
        let mut f = FlowNetwork::new(4);
        f.add_edge(0, 1, 1, Some(Arc::new(0, 1)));
        f.add_edge(0, 2, 1, Some(Arc::new(0, 2)));
        f.add_edge(1, 3, 1, Some(Arc::new(1, 3)));
        f.add_edge(2, 3, 1, Some(Arc::new(2, 3)));
        f.add_edge(1, 2, 1, Some(Arc::new(1, 2)));
        assert_eq!(f.clone().max_flow(0, 3, u32::MAX), 2);
        assert_eq!(f.clone().max_flow(0, 3, 1), 1);
        let mut g = f.clone();
        g.max_flow(0, 3, u32::MAX);
        assert_eq!(g.min_cut_labels(0).len(), 2);
    }

    #[test]
    fn uncuttable_edges_never_appear_in_the_cut() {
        let mut f = FlowNetwork::new(3);
        f.add_edge(0, 1, UNCUTTABLE, Some(Arc::new(0, 1)));
        f.add_edge(1, 2, 1, Some(Arc::new(1, 2)));
        assert_eq!(f.max_flow(0, 2, u32::MAX), 1);
        assert_eq!(f.min_cut_labels(0), vec![Arc::new(1, 2)]);
    }

    #[test]
    fn disconnected_sink() {
        let mut f = FlowNetwork::new(3);
        f.add_edge(0, 1, 1, None);
        assert_eq!(f.max_flow(0, 2, u32::MAX), 0);
        assert!(f.min_cut_labels(0).is_empty());
    }
}
