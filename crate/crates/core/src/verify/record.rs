use serde::{Deserialize, Serialize};

use crate::connectivity::{
    arc_connectivity, lambda_prime_exact, lambda_prime_exists, xi, DefinitionReading,
    GirthCycleWitness, RestrictedCut, XiResult, MAX_EXACT_VERTICES,
};
use crate::cycles::girth;
use crate::digraph::Digraph;
use crate::families::{match_family, FamilyMatch};
use crate::io::emit_digraph6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "n/a",
        }
    }
}

/// Everything computed for one digraph, with the witnesses behind each value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// digraph6 encoding.
    pub id: String,
    pub n: usize,
    pub arcs: usize,
    pub girth: Option<usize>,
    pub strong: bool,
    pub family: Option<FamilyMatch>,
    pub lambda: Option<usize>,
    /// `Some(true)` with a certificate, `Some(false)` when no restricted arc-cut exists,
    /// `None` when not computed.
    pub lambda_prime_connected: Option<bool>,
    pub lambda_prime: Option<usize>,
    pub certificate: Option<RestrictedCut>,
    /// Girth cycle plus outside arc, when the girth-cycle criterion holds.
    pub girth_cycle_witness: Option<GirthCycleWitness>,
    pub xi: Option<XiResult>,
    pub characterization: Verdict,
    pub bounds: Verdict,
    pub family_consistency: Verdict,
    pub reading: DefinitionReading,
}

impl VerificationRecord {
    pub fn failed(&self) -> bool {
        [self.characterization, self.bounds, self.family_consistency].contains(&Verdict::Fail)
    }

    /// Strong, girth 4, at least 6 vertices (before excluding family members).
    pub fn in_girth4_class(&self) -> bool {
        self.strong && self.girth == Some(4) && self.n >= 6
    }
}

/// Computes every parameter of `d` and evaluates the clauses that apply to it.
///
/// - `characterization`: strong digraphs with a cycle; the girth-cycle criterion must
///   agree with whether `λ'` exists.
/// - `bounds`: strong, girth 4, `n ≥ 6`, no family match; `λ'` must exist with
///   `λ ≤ λ' ≤ ξ`.
/// - `family_consistency`: family members; `λ'` must not exist.
pub fn check_graph(d: &Digraph, reading: DefinitionReading) -> VerificationRecord {
    let strong = d.is_strong();
    let g = girth(d);
    let mut rec = VerificationRecord {
        id: emit_digraph6(d),
        n: d.n(),
        arcs: d.arc_count(),
        girth: g,
        strong,
        family: None,
        lambda: None,
        lambda_prime_connected: None,
        lambda_prime: None,
        certificate: None,
        girth_cycle_witness: None,
        xi: None,
        characterization: Verdict::NotApplicable,
        bounds: Verdict::NotApplicable,
        family_consistency: Verdict::NotApplicable,
        reading,
    };
    if !strong || g.is_none() || d.n() > MAX_EXACT_VERTICES {
        return rec;
    }
    if g == Some(4) {
        rec.family = match_family(d);
    }
    rec.lambda = arc_connectivity(d).ok();
    rec.xi = xi(d).ok();
    rec.girth_cycle_witness = lambda_prime_exists(d).ok().flatten();
    let Ok(cert) = lambda_prime_exact(d, reading) else {
        return rec;
    };
    rec.lambda_prime_connected = Some(cert.is_connected());
    rec.lambda_prime = cert.value();
    rec.certificate = cert.cut().cloned();

    rec.characterization =
        Verdict::from_bool(rec.girth_cycle_witness.is_some() == cert.is_connected());
    if rec.family.is_some() {
        rec.family_consistency = Verdict::from_bool(!cert.is_connected());
    } else if rec.in_girth4_class() {
        let ok = match (rec.lambda, rec.lambda_prime, &rec.xi) {
            (Some(l), Some(lp), Some(x)) => l <= lp && lp <= x.value,
            _ => false,
        };
        rec.bounds = Verdict::from_bool(ok);
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, Family, FamilyParams};

    #[test]
    fn l8_passes_everything() {
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
        let r = check_graph(&d, DefinitionReading::OriginalHost);
        assert_eq!(
            (r.lambda, r.lambda_prime, r.xi.as_ref().map(|x| x.value)),
            (Some(1), Some(1), Some(1))
        );
        assert_eq!(r.characterization, Verdict::Pass);
        assert_eq!(r.bounds, Verdict::Pass);
        assert_eq!(r.family_consistency, Verdict::NotApplicable);
        assert!(!r.failed());
    }

    #[test]
    fn h1_member_is_consistent() {
        let d = generate(&FamilyParams::new(Family::H1, [1, 1, 1, 1])).unwrap();
        let r = check_graph(&d, DefinitionReading::OriginalHost);
        assert_eq!(r.family.as_ref().map(|m| m.family), Some(Family::H1));
        assert_eq!(r.lambda_prime_connected, Some(false));
        assert_eq!(r.characterization, Verdict::Pass);
        assert_eq!(r.family_consistency, Verdict::Pass);
        assert_eq!(r.bounds, Verdict::NotApplicable);
    }

    #[test]
    fn non_strong_is_not_applicable() {
        let d = Digraph::build(3, [(0, 1), (1, 2)]).unwrap();
        let r = check_graph(&d, DefinitionReading::OriginalHost);
        assert!(!r.strong);
        assert_eq!(
            [r.characterization, r.bounds, r.family_consistency],
            [Verdict::NotApplicable; 3]
        );
        assert_eq!(r.lambda_prime_connected, None);
    }
}
