//! Oriented graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one out-mask and one in-mask per vertex, which caps
//! the order at [`MAX_VERTICES`] and keeps reachability and component queries
//! to a handful of word operations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest supported order.
pub const MAX_VERTICES: usize = 64;

/// A directed arc `tail -> head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub const fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub const fn reversed(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

impl From<(usize, usize)> for Arc {
    fn from((tail, head): (usize, usize)) -> Self {
        Arc { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

pub type ArcSet = BTreeSet<Arc>;

/// A set of vertex ids below [`MAX_VERTICES`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet(full_mask(n))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES, "vertex {v} out of range");
        self.0 |= 1 << v;
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(vertices.into_iter().collect())
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Debug)]
pub struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Bits {}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An immutable oriented graph: no loops, no digons, no parallel arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Digraph {
    /// Builds a digraph, rejecting anything that is not an oriented graph.
    pub fn build<I, A>(n: usize, arcs: I) -> Result<Digraph, GraphError>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arc>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let mut out = vec![0u64; n];
        for arc in arcs {
            let arc = arc.into();
            if arc.tail >= n || arc.head >= n {
                return Err(GraphError::VertexOutOfRange { arc, n });
            }
            if arc.tail == arc.head {
                return Err(GraphError::LoopArc(arc));
            }
            if out[arc.tail] >> arc.head & 1 == 1 {
                return Err(GraphError::DuplicateArc(arc));
            }
            if out[arc.head] >> arc.tail & 1 == 1 {
                return Err(GraphError::SymmetricPair(arc));
            }
            out[arc.tail] |= 1 << arc.head;
        }
        Ok(Self::from_out_masks(n, out))
    }

    /// The edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Digraph {
        assert!(n <= MAX_VERTICES);
        Self::from_out_masks(n, vec![0; n])
    }

    /// Caller guarantees the masks describe an oriented graph on `0..n`.
    pub(crate) fn from_out_masks(n: usize, out: Vec<u64>) -> Digraph {
        debug_assert_eq!(out.len(), n);
        let mut inn = vec![0u64; n];
        for (t, &row) in out.iter().enumerate() {
            debug_assert_eq!(row >> t & 1, 0);
            for h in Bits(row) {
                debug_assert_eq!(out[h] >> t & 1, 0);
                inn[h] |= 1 << t;
            }
        }
        Digraph { n, out, inn }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        tail < self.n && head < self.n && self.out[tail] >> head & 1 == 1
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(t, &row)| Bits(row).map(move |h| Arc::new(t, h)))
    }

    pub fn arc_set(&self) -> ArcSet {
        self.arcs().collect()
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.inn[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    pub(crate) fn out_masks(&self) -> &[u64] {
        &self.out
    }

    pub(crate) fn in_masks(&self) -> &[u64] {
        &self.inn
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Relabels vertices: `perm[old] = new`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut out = vec![0u64; self.n];
        for arc in self.arcs() {
            out[perm[arc.tail]] |= 1 << perm[arc.head];
        }
        Self::from_out_masks(self.n, out)
    }

    fn check_set(&self, x: VertexSet) -> Result<(), GraphError> {
        match x.iter().find(|&v| v >= self.n) {
            Some(vertex) => Err(GraphError::InvalidVertex { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// `∂⁺(X)`: arcs with tail in `x` and head outside it.
    pub fn out_cut(&self, x: VertexSet) -> Result<ArcSet, GraphError> {
        self.check_set(x)?;
        Ok(x.iter()
            .flat_map(|t| Bits(self.out[t] & !x.0).map(move |h| Arc::new(t, h)))
            .collect())
    }

    /// `∂⁻(X)`: arcs with head in `x` and tail outside it.
    pub fn in_cut(&self, x: VertexSet) -> Result<ArcSet, GraphError> {
        self.check_set(x)?;
        Ok(x.iter()
            .flat_map(|h| Bits(self.inn[h] & !x.0).map(move |t| Arc::new(t, h)))
            .collect())
    }

    /// Lexicographically smallest arc with both endpoints outside `x`.
    pub fn arc_outside(&self, x: VertexSet) -> Option<Arc> {
        let rest = self.vertices().mask() & !x.0;
        Bits(rest).find_map(|t| Bits(self.out[t] & rest).next().map(|h| Arc::new(t, h)))
    }

    /// `D − S` on the same vertex set.
    pub fn delete_arcs(&self, s: &ArcSet) -> Result<Digraph, GraphError> {
        let mut out = self.out.clone();
        for &arc in s {
            if !self.has_arc(arc.tail, arc.head) {
                return Err(GraphError::UnknownArc(arc));
            }
            out[arc.tail] &= !(1 << arc.head);
        }
        Ok(Self::from_out_masks(self.n, out))
    }

    /// `D[X]`, relabelled to `0..|X|`; the returned map sends new ids to original ones.
    pub fn induced(&self, x: VertexSet) -> Result<(Digraph, Vec<usize>), GraphError> {
        self.check_set(x)?;
        let map = x.to_vec();
        let mut out = vec![0u64; map.len()];
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate() {
                if self.out[a] >> b & 1 == 1 {
                    out[i] |= 1 << j;
                }
            }
        }
        Ok((Self::from_out_masks(map.len(), out), map))
    }

    /// Strong components in topological order (sources first), each sorted.
    pub fn strong_components(&self) -> Vec<VertexSet> {
        scc_masks(self.n, &self.out)
            .into_iter()
            .map(VertexSet)
            .collect()
    }

    pub fn is_strong(&self) -> bool {
        self.n >= 1 && is_strong_masks(self.n, &self.out, &self.inn, full_mask(self.n))
    }

    /// Vertices reachable from `v` (inclusive).
    pub fn reachable_from(&self, v: usize) -> VertexSet {
        VertexSet(closure(&self.out, 1 << v, full_mask(self.n)))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, a) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}>{}", a.tail, a.head)?;
        }
        write!(f, "])")
    }
}

/// Forward closure of `start` within `within`.
pub(crate) fn closure(adj: &[u64], start: u64, within: u64) -> u64 {
    let mut seen = start & within;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Whether the subdigraph induced by `within` is strong (false if empty).
pub(crate) fn is_strong_masks(_n: usize, out: &[u64], inn: &[u64], within: u64) -> bool {
    if within == 0 {
        return false;
    }
    let root = 1u64 << within.trailing_zeros();
    closure(out, root, within) == within && closure(inn, root, within) == within
}

/// Tarjan's algorithm over out-masks. Components come back sources first.
pub(crate) fn scc_masks(n: usize, out: &[u64]) -> Vec<u64> {
    struct State<'a> {
        out: &'a [u64],
        index: Vec<usize>,
        low: Vec<usize>,
        on_stack: u64,
        stack: Vec<usize>,
        next: usize,
        comps: Vec<u64>,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = s.next;
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack |= 1 << v;
        for w in Bits(s.out[v]) {
            if s.index[w] == usize::MAX {
                visit(s, w);
                s.low[v] = s.low[v].min(s.low[w]);
            } else if s.on_stack >> w & 1 == 1 {
                s.low[v] = s.low[v].min(s.index[w]);
            }
        }
        if s.low[v] == s.index[v] {
            let mut comp = 0u64;
            loop {
                let w = s.stack.pop().expect("tarjan stack underflow");
                s.on_stack &= !(1 << w);
                comp |= 1 << w;
                if w == v {
                    break;
                }
            }
            s.comps.push(comp);
        }
    }

    let mut s = State {
        out,
        index: vec![usize::MAX; n],
        low: vec![0; n],
        on_stack: 0,
        stack: Vec::with_capacity(n),
        next: 0,
        comps: Vec::new(),
    };
    for v in 0..n {
        if s.index[v] == usize::MAX {
            visit(&mut s, v);
        }
    }
    // Tarjan emits sinks first.
    s.comps.reverse();
    s.comps
}
