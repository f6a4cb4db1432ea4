//! The seven families H1–H7 of strong girth-4 oriented graphs that are not `λ'`-connected.
//!
//! Every family is a small core (a 4-cycle `(u,v,w,z)`, possibly a second
//! 4-cycle `(u,v,w,x)`, possibly a vertex `y` with `u → y → w`) plus sets of
//! "ear" vertices, each with exactly one in-arc and one out-arc into the core.
//! Adjacency clauses (`x` adjacent to `z`, `y` adjacent to `v`) may be oriented
//! either way. Vertex ids of generated members are `u, v, w, z, [x], [y]`
//! followed by the sets `A, B, C, D` in order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::cycles::girth;
use crate::digraph::Digraph;
use crate::error::AnalysisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::H1,
        Family::H2,
        Family::H3,
        Family::H4,
        Family::H5,
        Family::H6,
        Family::H7,
    ];

    /// Number of ear sets the family defines.
    pub fn set_count(self) -> usize {
        template(self).sets.len()
    }

    pub fn has_xz(self) -> bool {
        template(self).adjacent.contains(&XZ)
    }

    pub fn has_yv(self) -> bool {
        template(self).adjacent.contains(&YV)
    }

    /// Vertices outside the ear sets.
    pub fn core_size(self) -> usize {
        template(self).core
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?} (expected H1..H7)"))
    }
}

/// Orientation of an adjacency clause: `Forward` means first-named → second-named
/// (`x → z`, `y → v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub const ALL: [Orientation; 2] = [Orientation::Forward, Orientation::Backward];
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forward" => Ok(Orientation::Forward),
            "backward" => Ok(Orientation::Backward),
            other => Err(format!(
                "unknown orientation {other:?} (expected forward|backward)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    /// `|A|, |B|, |C|, |D|`; entries past the family's set count must be zero.
    pub sizes: [usize; 4],
    /// Orientation of the `x`–`z` adjacency (H5, H6, H7).
    pub xz: Option<Orientation>,
    /// Orientation of the `y`–`v` adjacency (H4, H7).
    pub yv: Option<Orientation>,
}

impl FamilyParams {
    /// Parameters with forward orientation for every adjacency clause the family has.
    pub fn new(family: Family, sizes: [usize; 4]) -> Self {
        FamilyParams {
            family,
            sizes,
            xz: family.has_xz().then_some(Orientation::Forward),
            yv: family.has_yv().then_some(Orientation::Forward),
        }
    }

    pub fn with_xz(mut self, o: Orientation) -> Self {
        self.xz = Some(o);
        self
    }

    pub fn with_yv(mut self, o: Orientation) -> Self {
        self.yv = Some(o);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.family.core_size() + self.sizes.iter().sum::<usize>()
    }

    fn validate(&self) -> Result<(), AnalysisError> {
        let t = template(self.family);
        let bad = |msg: String| {
            Err(AnalysisError::InvalidParams(format!(
                "{}: {msg}",
                self.family
            )))
        };
        if let Some(i) = (t.sets.len()..4).find(|&i| self.sizes[i] != 0) {
            return bad(format!("set {} is not defined", SET_NAMES[i]));
        }
        for (i, &min) in t.min_sizes.iter().enumerate() {
            if self.sizes[i] < min {
                return bad(format!(
                    "set {} needs at least {min} vertices",
                    SET_NAMES[i]
                ));
            }
        }
        if self.xz.is_some() != self.family.has_xz() {
            return bad("x-z orientation given iff the family has that clause".into());
        }
        if self.yv.is_some() != self.family.has_yv() {
            return bad("y-v orientation given iff the family has that clause".into());
        }
        Ok(())
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.family.set_count();
        write!(f, "{}({})", self.family, self.sizes[..k].iter().join(","))?;
        if let Some(o) = self.xz {
            write!(f, " xz={o:?}")?;
        }
        if let Some(o) = self.yv {
            write!(f, " yv={o:?}")?;
        }
        Ok(())
    }
}

const U: usize = 0;
const V: usize = 1;
const W: usize = 2;
const Z: usize = 3;
const X: usize = 4;
const Y: usize = 5;
const SET_NAMES: [&str; 4] = ["A", "B", "C", "D"];
const XZ: (usize, usize) = (X, Z);
const YV: (usize, usize) = (Y, V);

struct Template {
    core: usize,
    arcs: &'static [(usize, usize)],
    adjacent: &'static [(usize, usize)],
    /// Ear patterns `(tail role, head role)`: each member has exactly `tail → a → head`.
    sets: &'static [(usize, usize)],
    min_sizes: [usize; 4],
}

const ONE_CYCLE: &[(usize, usize)] = &[(U, V), (V, W), (W, Z), (Z, U)];
const TWO_CYCLES: &[(usize, usize)] = &[(U, V), (V, W), (W, Z), (Z, U), (W, X), (X, U)];
const TWO_CYCLES_Y: &[(usize, usize)] = &[
    (U, V),
    (V, W),
    (W, Z),
    (Z, U),
    (W, X),
    (X, U),
    (U, Y),
    (Y, W),
];

fn template(family: Family) -> &'static Template {
    const H1: Template = Template {
        core: 4,
        arcs: ONE_CYCLE,
        adjacent: &[],
        sets: &[(U, V), (V, W), (W, Z), (Z, U)],
        min_sizes: [0; 4],
    };
    const H2: Template = Template {
        core: 5,
        arcs: TWO_CYCLES,
        adjacent: &[],
        sets: &[(W, U), (U, W)],
        min_sizes: [0; 4],
    };
    const H3: Template = Template {
        core: 5,
        arcs: TWO_CYCLES,
        adjacent: &[],
        sets: &[(U, V), (V, W), (W, U)],
        min_sizes: [0; 4],
    };
    const H4: Template = Template {
        core: 6,
        arcs: TWO_CYCLES_Y,
        adjacent: &[YV],
        sets: &[(W, U)],
        min_sizes: [0; 4],
    };
    // No empty-set clause is given for H5; its p = 0 member is H6 with empty sets anyway.
    const H5: Template = Template {
        core: 5,
        arcs: TWO_CYCLES,
        adjacent: &[XZ],
        sets: &[(U, W)],
        min_sizes: [1, 0, 0, 0],
    };
    const H6: Template = Template {
        core: 5,
        arcs: TWO_CYCLES,
        adjacent: &[XZ],
        sets: &[(U, V), (V, W)],
        min_sizes: [0; 4],
    };
    const H7: Template = Template {
        core: 6,
        arcs: TWO_CYCLES_Y,
        adjacent: &[XZ, YV],
        sets: &[],
        min_sizes: [0; 4],
    };
    match family {
        Family::H1 => &H1,
        Family::H2 => &H2,
        Family::H3 => &H3,
        Family::H4 => &H4,
        Family::H5 => &H5,
        Family::H6 => &H6,
        Family::H7 => &H7,
    }
}

fn oriented(pair: (usize, usize), o: Orientation) -> (usize, usize) {
    match o {
        Orientation::Forward => pair,
        Orientation::Backward => (pair.1, pair.0),
    }
}

/// Builds the member of `params.family` described by `params`.
pub fn generate(params: &FamilyParams) -> Result<Digraph, AnalysisError> {
    params.validate()?;
    let t = template(params.family);
    let mut arcs: Vec<(usize, usize)> = t.arcs.to_vec();
    for &pair in t.adjacent {
        let o = if pair == XZ { params.xz } else { params.yv };
        arcs.push(oriented(pair, o.expect("validated")));
    }
    let mut next = t.core;
    for (i, &(tail, head)) in t.sets.iter().enumerate() {
        for _ in 0..params.sizes[i] {
            arcs.push((tail, next));
            arcs.push((next, head));
            next += 1;
        }
    }
    let d = Digraph::build(next, arcs)
        .map_err(|e| AnalysisError::InvalidParams(format!("{params}: {e}")))?;
    if !d.is_strong() || girth(&d) != Some(4) {
        return Err(AnalysisError::InvalidParams(format!(
            "{params}: result is not a strong girth-4 oriented graph"
        )));
    }
    Ok(d)
}

/// Where each role of a family landed in a recognized digraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRoles {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub z: usize,
    pub x: Option<usize>,
    pub y: Option<usize>,
    /// Ear sets `A, B, …` in the family's order, each sorted.
    pub sets: Vec<Vec<usize>>,
}

impl FamilyRoles {
    /// `map[i]` is the vertex of the input digraph playing generated vertex `i`.
    pub fn vertex_map(&self) -> Vec<usize> {
        let mut map = vec![self.u, self.v, self.w, self.z];
        map.extend(self.x);
        map.extend(self.y);
        map.extend(self.sets.iter().flatten());
        map
    }
}

impl fmt::Display for FamilyRoles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={}, v={}, w={}, z={}", self.u, self.v, self.w, self.z)?;
        if let Some(x) = self.x {
            write!(f, ", x={x}")?;
        }
        if let Some(y) = self.y {
            write!(f, ", y={y}")?;
        }
        for (name, set) in SET_NAMES.iter().zip(&self.sets) {
            write!(f, ", {name}={{{}}}", set.iter().join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMatch {
    pub family: Family,
    pub params: FamilyParams,
    pub roles: FamilyRoles,
}

impl fmt::Display for FamilyMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, roles: {}", self.family, self.roles)
    }
}

/// Exact recognition against a single family.
///
/// Core roles are assigned by backtracking, checking arcs and non-arcs against
/// every earlier role; the remaining vertices must then be ears.
pub fn match_in_family(d: &Digraph, family: Family) -> Option<FamilyMatch> {
    let t = template(family);
    let n = d.n();
    let min_total: usize = t.min_sizes.iter().sum();
    if n < t.core + min_total {
        return None;
    }
    if d.arc_count() != t.arcs.len() + t.adjacent.len() + 2 * (n - t.core) {
        return None;
    }
    // Every ear has in- and out-degree 1.
    let thin = (0..n)
        .filter(|&v| d.out_degree(v) == 1 && d.in_degree(v) == 1)
        .count();
    if thin < n - t.core {
        return None;
    }
    let mut assigned = Vec::with_capacity(t.core);
    search(d, t, family, &mut assigned)
}

fn relation(t: &Template, a: usize, b: usize) -> Relation {
    if t.arcs.contains(&(a, b)) {
        Relation::Arc
    } else if t.arcs.contains(&(b, a)) {
        Relation::ReverseArc
    } else if t.adjacent.contains(&(a, b)) || t.adjacent.contains(&(b, a)) {
        Relation::Adjacent
    } else {
        Relation::None
    }
}

#[derive(Clone, Copy)]
enum Relation {
    Arc,
    ReverseArc,
    Adjacent,
    None,
}

fn search(
    d: &Digraph,
    t: &Template,
    family: Family,
    assigned: &mut Vec<usize>,
) -> Option<FamilyMatch> {
    let role = assigned.len();
    if role == t.core {
        return complete(d, t, family, assigned);
    }
    for c in 0..d.n() {
        if assigned.contains(&c) {
            continue;
        }
        let fits = assigned
            .iter()
            .enumerate()
            .all(|(q, &a)| match relation(t, q, role) {
                Relation::Arc => d.has_arc(a, c),
                Relation::ReverseArc => d.has_arc(c, a),
                Relation::Adjacent => d.adjacent(a, c),
                Relation::None => !d.adjacent(a, c),
            });
        if !fits {
            continue;
        }
        assigned.push(c);
        if let Some(m) = search(d, t, family, assigned) {
            return Some(m);
        }
        assigned.pop();
    }
    None
}

fn complete(d: &Digraph, t: &Template, family: Family, core: &[usize]) -> Option<FamilyMatch> {
    let role_of = |v: usize| core.iter().position(|&c| c == v);
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); t.sets.len()];
    for v in (0..d.n()).filter(|v| !core.contains(v)) {
        let (ins, outs) = (d.in_neighbors(v), d.out_neighbors(v));
        if ins.len() != 1 || outs.len() != 1 {
            return None;
        }
        let tail = role_of(ins.iter().next()?)?;
        let head = role_of(outs.iter().next()?)?;
        let i = t.sets.iter().position(|&p| p == (tail, head))?;
        sets[i].push(v);
    }
    let mut sizes = [0; 4];
    for (i, s) in sets.iter().enumerate() {
        if s.len() < t.min_sizes[i] {
            return None;
        }
        sizes[i] = s.len();
    }
    let orientation = |(a, b): (usize, usize)| {
        if d.has_arc(core[a], core[b]) {
            Orientation::Forward
        } else {
            Orientation::Backward
        }
    };
    let params = FamilyParams {
        family,
        sizes,
        xz: t.adjacent.contains(&XZ).then(|| orientation(XZ)),
        yv: t.adjacent.contains(&YV).then(|| orientation(YV)),
    };
    let roles = FamilyRoles {
        u: core[U],
        v: core[V],
        w: core[W],
        z: core[Z],
        x: core.get(X).copied(),
        y: core.get(Y).copied(),
        sets,
    };
    Some(FamilyMatch {
        family,
        params,
        roles,
    })
}

/// The first of H1..H7 that `d` belongs to.
pub fn match_family(d: &Digraph) -> Option<FamilyMatch> {
    Family::ALL.into_iter().find_map(|f| match_in_family(d, f))
}

/// Every family `d` belongs to (members can sit in several, e.g. `H2(r,0) = H3(0,0,r)`).
pub fn all_family_matches(d: &Digraph) -> Vec<FamilyMatch> {
    Family::ALL
        .into_iter()
        .filter_map(|f| match_in_family(d, f))
        .collect()
}

/// All valid parameter choices giving a member of `family` on exactly `n` vertices.
pub fn params_with_order(family: Family, n: usize) -> Vec<FamilyParams> {
    let t = template(family);
    let Some(free) = n.checked_sub(t.core) else {
        return Vec::new();
    };
    let k = t.sets.len();
    let mut size_choices = Vec::new();
    compositions(free, k, &mut vec![0; k], 0, &mut size_choices);
    let xz: Vec<Option<Orientation>> = if family.has_xz() {
        Orientation::ALL.map(Some).to_vec()
    } else {
        vec![None]
    };
    let yv: Vec<Option<Orientation>> = if family.has_yv() {
        Orientation::ALL.map(Some).to_vec()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    for sizes in size_choices {
        let mut full = [0; 4];
        full[..k].copy_from_slice(&sizes);
        for (&a, &b) in xz.iter().cartesian_product(&yv) {
            let p = FamilyParams {
                family,
                sizes: full,
                xz: a,
                yv: b,
            };
            if p.validate().is_ok() {
                out.push(p);
            }
        }
    }
    out
}

fn compositions(
    total: usize,
    parts: usize,
    cur: &mut Vec<usize>,
    i: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if i == parts {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for take in 0..=total {
        cur[i] = take;
        compositions(total - take, parts, cur, i + 1, out);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub params: FamilyParams,
    /// Canonical representative of the isomorphism class.
    pub digraph: Digraph,
}

/// One entry per isomorphism class of H1–H7 members on `n` vertices, first
/// parameters (in family order) that produce it.
pub fn family_census(n: usize) -> Vec<CensusEntry> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    for family in Family::ALL {
        for params in params_with_order(family, n) {
            let Ok(d) = generate(&params) else { continue };
            let canon = canonical_form(&d);
            if seen.insert(canon.clone()) {
                out.push(CensusEntry {
                    params,
                    digraph: canon,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::cycles_of_length;

    #[test]
    fn h1_members() {
        let d = generate(&FamilyParams::new(Family::H1, [1, 1, 1, 1])).unwrap();
        assert_eq!((d.n(), d.arc_count()), (8, 12));
        let bare = generate(&FamilyParams::new(Family::H1, [0; 4])).unwrap();
        assert_eq!(
            bare,
            Digraph::build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
        );
        assert_eq!(cycles_of_length(&d, 4).len(), 1);
    }

    #[test]
    fn h2_with_one_ear() {
        let d = generate(&FamilyParams::new(Family::H2, [1, 0, 0, 0])).unwrap();
        assert_eq!(d.n(), 6);
        let cycles: Vec<Vec<usize>> = cycles_of_length(&d, 4)
            .iter()
            .map(|c| c.vertices().to_vec())
            .collect();
        assert_eq!(
            cycles,
            vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 2, 5]]
        );
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(generate(&FamilyParams::new(Family::H2, [0, 0, 1, 0])).is_err());
        assert!(generate(&FamilyParams::new(Family::H5, [0, 0, 0, 0])).is_err());
        let mut p = FamilyParams::new(Family::H1, [0; 4]);
        p.xz = Some(Orientation::Forward);
        assert!(generate(&p).is_err());
        let mut p = FamilyParams::new(Family::H7, [0; 4]);
        p.yv = None;
        assert!(generate(&p).is_err());
    }

    #[test]
    fn every_orientation_choice_is_girth_four() {
        for family in [Family::H4, Family::H5, Family::H6, Family::H7] {
            for n in 6..=7 {
                for p in params_with_order(family, n) {
                    generate(&p).unwrap_or_else(|e| panic!("{p}: {e}"));
                }
            }
        }
    }

    #[test]
    fn recognition_round_trip_with_role_map() {
        let p = FamilyParams::new(Family::H4, [2, 0, 0, 0]).with_yv(Orientation::Backward);
        let g = generate(&p).unwrap();
        // Scramble the labels.
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        let d = g.relabel(&perm);
        let m = match_family(&d).unwrap();
        assert_eq!(m.family, Family::H4);
        assert_eq!(m.params, p);
        // Regenerating and mapping through the roles reproduces the input.
        let map = m.roles.vertex_map();
        assert_eq!(generate(&m.params).unwrap().relabel(&map), d);
    }

    #[test]
    fn non_members() {
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
        let l8 = Digraph::build(8, arcs.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap();
        assert!(match_family(&l8).is_none());
        let c5 = Digraph::build(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(match_family(&c5).is_none());
    }

    #[test]
    fn bare_cycle_is_h1() {
        let d = Digraph::build(4, [(2, 3), (3, 1), (1, 0), (0, 2)]).unwrap();
        let m = match_family(&d).unwrap();
        assert_eq!(m.family, Family::H1);
        assert_eq!(m.params.sizes, [0; 4]);
        assert!(m.to_string().starts_with("H1, roles: u=0"));
    }

    #[test]
    fn overlapping_members_report_every_family() {
        let d = generate(&FamilyParams::new(Family::H3, [0, 0, 2, 0])).unwrap();
        let fams: Vec<Family> = all_family_matches(&d).iter().map(|m| m.family).collect();
        assert_eq!(fams, vec![Family::H2, Family::H3]);
    }

    #[test]
    fn census_small_orders() {
        let four = family_census(4);
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].params, FamilyParams::new(Family::H1, [0; 4]));
        let h1 = canonical_form(&generate(&FamilyParams::new(Family::H1, [1, 1, 1, 1])).unwrap());
        assert!(family_census(8).iter().any(|e| e.digraph == h1));
        assert!(family_census(3).is_empty());
    }

    #[test]
    fn family_names_parse() {
        assert_eq!("h4".parse::<Family>(), Ok(Family::H4));
        assert!("H8".parse::<Family>().is_err());
        assert_eq!(
            FamilyParams::new(Family::H6, [1, 2, 0, 0]).to_string(),
            "H6(1,2) xz=Forward"
        );
    }
}
