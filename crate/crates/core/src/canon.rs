//! Canonical labelling for small digraphs.
//!
//! Colour refinement on (out-colours, in-colours) splits the vertices into
//! cells; the canonical form is the lexicographically smallest adjacency
//! matrix over all orderings that respect the cell order. Exact, and fast
//! enough for the family census (n ≤ 10 or so).

use std::collections::BTreeMap;

use crate::digraph::{Bits, Digraph};

fn refine(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let mut colors = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut out: Vec<usize> = d.out_neighbors(v).iter().map(|w| colors[w]).collect();
                let mut inn: Vec<usize> = d.in_neighbors(v).iter().map(|w| colors[w]).collect();
                out.sort_unstable();
                inn.sort_unstable();
                (colors[v], out, inn)
            })
            .collect();
        let ids: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = {
            let mut m = BTreeMap::new();
            for s in &sigs {
                m.entry(s).or_insert(0);
            }
            m.into_keys().enumerate().map(|(i, k)| (k, i)).collect()
        };
        let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
        let count = ids.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

fn encode(d: &Digraph, order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; d.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| Bits(d.out_neighbors(v).mask()).fold(0u64, |acc, w| acc | 1 << pos[w]))
        .collect()
}

fn permute_cells(
    d: &Digraph,
    cells: &[Vec<usize>],
    idx: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<u64>>,
) {
    if idx == cells.len() {
        let code = encode(d, order);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut cell = cells[idx].clone();
    let k = cell.len();
    heap_permutations(&mut cell, k, &mut |perm| {
        let start = order.len();
        order.extend_from_slice(perm);
        permute_cells(d, cells, idx + 1, order, best);
        order.truncate(start);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// A representative shared by exactly the digraphs isomorphic to `d`.
pub fn canonical_form(d: &Digraph) -> Digraph {
    let colors = refine(d);
    let classes = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut cells = vec![Vec::new(); classes];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].push(v);
    }
    let mut best = None;
    permute_cells(d, &cells, 0, &mut Vec::with_capacity(d.n()), &mut best);
    Digraph::from_out_masks(d.n(), best.unwrap_or_default())
}

pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    a.n() == b.n() && a.arc_count() == b.arc_count() && canonical_form(a) == canonical_form(b)
}
