//! Sweeps over enumerated or sampled digraphs, with commutative aggregation
//! and optional checkpointing.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{oriented_count, oriented_from_index, sample_at, DEFAULT_EXHAUSTIVE_CAP};
use super::record::{check_graph, Verdict, VerificationRecord};
use crate::connectivity::DefinitionReading;
use crate::cycles::girth;
use crate::digraph::Digraph;
use crate::error::SweepError;
use crate::families::Family;

const BLOCK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFilters {
    pub require_strong: bool,
    /// Only check digraphs of this girth (`None` = any girth, acyclic included).
    pub girth: Option<usize>,
}

impl Default for SweepFilters {
    fn default() -> Self {
        SweepFilters {
            require_strong: true,
            girth: Some(4),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub mode: SweepMode,
    pub reading: DefinitionReading,
    pub filters: SweepFilters,
    /// Largest order allowed in exhaustive mode.
    pub cap: usize,
    /// Keep every checked record, not just counterexamples.
    pub keep_records: bool,
    pub parallel: bool,
}

impl SweepSpec {
    pub fn exhaustive(n_min: usize, n_max: usize) -> Self {
        SweepSpec {
            n_min,
            n_max,
            mode: SweepMode::Exhaustive,
            reading: DefinitionReading::OriginalHost,
            filters: SweepFilters::default(),
            cap: DEFAULT_EXHAUSTIVE_CAP,
            keep_records: false,
            parallel: true,
        }
    }

    pub fn random(n_min: usize, n_max: usize, samples: u64, seed: u64) -> Self {
        SweepSpec {
            mode: SweepMode::Random { samples, seed },
            ..Self::exhaustive(n_min, n_max)
        }
    }

    pub fn with_reading(mut self, reading: DefinitionReading) -> Self {
        self.reading = reading;
        self
    }

    fn validate(&self) -> Result<(), SweepError> {
        if self.n_min > self.n_max {
            return Err(SweepError::InvalidSpec(format!(
                "empty range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > crate::digraph::MAX_VERTICES {
            return Err(SweepError::InvalidSpec(format!(
                "n={} is too large",
                self.n_max
            )));
        }
        if self.mode == SweepMode::Exhaustive && self.n_max > self.cap {
            return Err(SweepError::CapExceeded {
                n: self.n_max,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Number of graphs the sweep visits at order `n`.
    fn size_at(&self, n: usize) -> u64 {
        match self.mode {
            SweepMode::Exhaustive => oriented_count(n).expect("validated against the cap"),
            SweepMode::Random { samples, .. } => samples,
        }
    }

    fn graph_at(&self, n: usize, index: u64) -> Digraph {
        match self.mode {
            SweepMode::Exhaustive => oriented_from_index(n, index),
            SweepMode::Random { seed, .. } => sample_at(n, seed, index),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseTally {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

impl ClauseTally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    fn merge(&mut self, o: &ClauseTally) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.not_applicable += o.not_applicable;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub graphs_seen: u64,
    pub strong: u64,
    /// Graphs that passed the filters and were fully checked.
    pub checked: u64,
    /// Strong, girth 4, `n ≥ 6`.
    pub girth4_class: u64,
    pub girth4_class_family_members: u64,
    pub girth4_class_lambda_prime_connected: u64,
    /// Checked graphs per first-matching family.
    pub family_counts: BTreeMap<Family, u64>,
    pub lambda_prime_connected: u64,
    pub characterization: ClauseTally,
    pub bounds: ClauseTally,
    pub family_consistency: ClauseTally,
    pub counterexamples: u64,
}

impl SweepSummary {
    pub fn merge(&mut self, o: &SweepSummary) {
        self.graphs_seen += o.graphs_seen;
        self.strong += o.strong;
        self.checked += o.checked;
        self.girth4_class += o.girth4_class;
        self.girth4_class_family_members += o.girth4_class_family_members;
        self.girth4_class_lambda_prime_connected += o.girth4_class_lambda_prime_connected;
        for (f, c) in &o.family_counts {
            *self.family_counts.entry(*f).or_default() += c;
        }
        self.lambda_prime_connected += o.lambda_prime_connected;
        self.characterization.merge(&o.characterization);
        self.bounds.merge(&o.bounds);
        self.family_consistency.merge(&o.family_consistency);
        self.counterexamples += o.counterexamples;
    }

    /// Family members plus `λ'`-connected graphs account for the whole girth-4 class.
    pub fn accounting_balanced(&self) -> bool {
        self.girth4_class
            == self.girth4_class_family_members + self.girth4_class_lambda_prime_connected
    }

    fn absorb(&mut self, rec: &VerificationRecord) {
        self.checked += 1;
        if let Some(m) = &rec.family {
            *self.family_counts.entry(m.family).or_default() += 1;
        }
        if rec.lambda_prime_connected == Some(true) {
            self.lambda_prime_connected += 1;
        }
        if rec.in_girth4_class() {
            self.girth4_class += 1;
            if rec.family.is_some() {
                self.girth4_class_family_members += 1;
            }
            if rec.lambda_prime_connected == Some(true) {
                self.girth4_class_lambda_prime_connected += 1;
            }
        }
        self.characterization.add(rec.characterization);
        self.bounds.add(rec.bounds);
        self.family_consistency.add(rec.family_consistency);
        if rec.failed() {
            self.counterexamples += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partial {
    pub summary: SweepSummary,
    pub counterexamples: Vec<VerificationRecord>,
    pub records: Vec<VerificationRecord>,
}

impl Partial {
    fn merge(mut self, mut o: Partial) -> Partial {
        self.summary.merge(&o.summary);
        self.counterexamples.append(&mut o.counterexamples);
        self.records.append(&mut o.records);
        self
    }

    fn finish(mut self) -> Partial {
        let key = |r: &VerificationRecord| (r.n, r.id.clone());
        self.counterexamples.sort_by_key(key);
        self.counterexamples.dedup_by(|a, b| a.id == b.id);
        self.records.sort_by_key(key);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub summary: SweepSummary,
    pub counterexamples: Vec<VerificationRecord>,
    pub records: Vec<VerificationRecord>,
}

fn passes(filters: &SweepFilters, d: &Digraph) -> (bool, bool) {
    let strong = d.is_strong();
    if filters.require_strong && !strong {
        return (strong, false);
    }
    let ok = filters.girth.is_none_or(|g| girth(d) == Some(g));
    (strong, ok)
}

fn process_block(spec: &SweepSpec, n: usize, start: u64, end: u64) -> Partial {
    let mut p = Partial::default();
    for i in start..end {
        let d = spec.graph_at(n, i);
        p.summary.graphs_seen += 1;
        let (strong, ok) = passes(&spec.filters, &d);
        if strong {
            p.summary.strong += 1;
        }
        if !ok {
            continue;
        }
        let rec = check_graph(&d, spec.reading);
        p.summary.absorb(&rec);
        if rec.failed() {
            p.counterexamples.push(rec.clone());
        }
        if spec.keep_records {
            p.records.push(rec);
        }
    }
    p
}

fn process_range(spec: &SweepSpec, n: usize, start: u64, end: u64) -> Partial {
    let blocks: Vec<(u64, u64)> = (start..end)
        .step_by(BLOCK as usize)
        .map(|s| (s, (s + BLOCK).min(end)))
        .collect();
    if spec.parallel {
        blocks
            .into_par_iter()
            .map(|(s, e)| process_block(spec, n, s, e))
            .reduce(Partial::default, Partial::merge)
    } else {
        blocks
            .into_iter()
            .map(|(s, e)| process_block(spec, n, s, e))
            .fold(Partial::default(), Partial::merge)
    }
}

/// Runs the whole sweep in one go.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport, SweepError> {
    spec.validate()?;
    let mut acc = Partial::default();
    for n in spec.n_min..=spec.n_max {
        acc = acc.merge(process_range(spec, n, 0, spec.size_at(n)));
    }
    let acc = acc.finish();
    Ok(SweepReport {
        spec: spec.clone(),
        summary: acc.summary,
        counterexamples: acc.counterexamples,
        records: acc.records,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Checkpoint {
    spec: SweepSpec,
    n: usize,
    next_index: u64,
    partial: Partial,
}

#[derive(Clone, Debug)]
pub enum SweepProgress {
    Done(Box<SweepReport>),
    /// Stopped early; the checkpoint file holds the state.
    Paused {
        n: usize,
        next_index: u64,
    },
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), SweepError> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    serde_json::to_writer(&mut f, cp).map_err(|e| SweepError::Checkpoint(e.to_string()))?;
    f.flush()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs in chunks of `chunk` indices, persisting state to `path` after each.
///
/// An existing checkpoint for the same spec is resumed. With `max_chunks`
/// the run stops after that many chunks and reports [`SweepProgress::Paused`].
pub fn run_sweep_checkpointed(
    spec: &SweepSpec,
    path: &Path,
    chunk: u64,
    max_chunks: Option<usize>,
) -> Result<SweepProgress, SweepError> {
    spec.validate()?;
    let chunk = chunk.max(1);
    let mut cp = if path.exists() {
        let text = fs::read_to_string(path)?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| SweepError::Checkpoint(e.to_string()))?;
        if cp.spec != *spec {
            return Err(SweepError::Checkpoint(
                "checkpoint belongs to a different sweep".into(),
            ));
        }
        cp
    } else {
        Checkpoint {
            spec: spec.clone(),
            n: spec.n_min,
            next_index: 0,
            partial: Partial::default(),
        }
    };
    let mut done_chunks = 0;
    while cp.n <= spec.n_max {
        let size = spec.size_at(cp.n);
        if cp.next_index >= size {
            cp.n += 1;
            cp.next_index = 0;
            continue;
        }
        if max_chunks.is_some_and(|m| done_chunks >= m) {
            write_checkpoint(path, &cp)?;
            return Ok(SweepProgress::Paused {
                n: cp.n,
                next_index: cp.next_index,
            });
        }
        let end = (cp.next_index + chunk).min(size);
        let part = process_range(spec, cp.n, cp.next_index, end);
        cp.partial = std::mem::take(&mut cp.partial).merge(part);
        cp.next_index = end;
        done_chunks += 1;
        write_checkpoint(path, &cp)?;
    }
    let acc = cp.partial.finish();
    Ok(SweepProgress::Done(Box::new(SweepReport {
        spec: spec.clone(),
        summary: acc.summary,
        counterexamples: acc.counterexamples,
        records: acc.records,
    })))
}

/// Per-clause comparison of the two definitional readings over the same graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingAudit {
    pub checked: u64,
    pub characterization_differs: u64,
    pub bounds_differs: u64,
    pub family_consistency_differs: u64,
    pub lambda_prime_differs: u64,
    pub original: SweepSummary,
    pub residual: SweepSummary,
    /// digraph6 ids of graphs where any verdict or `λ'` differs (sorted).
    pub differing: Vec<String>,
}

impl ReadingAudit {
    fn merge(mut self, o: ReadingAudit) -> ReadingAudit {
        self.checked += o.checked;
        self.characterization_differs += o.characterization_differs;
        self.bounds_differs += o.bounds_differs;
        self.family_consistency_differs += o.family_consistency_differs;
        self.lambda_prime_differs += o.lambda_prime_differs;
        self.original.merge(&o.original);
        self.residual.merge(&o.residual);
        self.differing.extend(o.differing);
        self
    }

    pub fn any_verdict_differs(&self) -> bool {
        self.characterization_differs + self.bounds_differs + self.family_consistency_differs > 0
    }
}

/// Checks every graph of `spec` under both readings (the spec's own reading is ignored).
pub fn audit_readings(spec: &SweepSpec) -> Result<ReadingAudit, SweepError> {
    spec.validate()?;
    let audit_block = |n: usize, start: u64, end: u64| {
        let mut a = ReadingAudit::default();
        for i in start..end {
            let d = spec.graph_at(n, i);
            a.original.graphs_seen += 1;
            a.residual.graphs_seen += 1;
            let (strong, ok) = passes(&spec.filters, &d);
            if strong {
                a.original.strong += 1;
                a.residual.strong += 1;
            }
            if !ok {
                continue;
            }
            let o = check_graph(&d, DefinitionReading::OriginalHost);
            let r = check_graph(&d, DefinitionReading::ResidualHost);
            a.checked += 1;
            a.original.absorb(&o);
            a.residual.absorb(&r);
            let t = o.characterization != r.characterization;
            let b = o.bounds != r.bounds;
            let f = o.family_consistency != r.family_consistency;
            let l = o.lambda_prime != r.lambda_prime;
            a.characterization_differs += u64::from(t);
            a.bounds_differs += u64::from(b);
            a.family_consistency_differs += u64::from(f);
            a.lambda_prime_differs += u64::from(l);
            if t || b || f || l {
                a.differing.push(o.id);
            }
        }
        a
    };
    let mut total = ReadingAudit::default();
    for n in spec.n_min..=spec.n_max {
        let size = spec.size_at(n);
        let blocks: Vec<(u64, u64)> = (0..size)
            .step_by(BLOCK as usize)
            .map(|s| (s, (s + BLOCK).min(size)))
            .collect();
        let part = blocks
            .into_par_iter()
            .map(|(s, e)| audit_block(n, s, e))
            .reduce(ReadingAudit::default, ReadingAudit::merge);
        total = total.merge(part);
    }
    total.differing.sort();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n4_has_no_lambda_prime_connected_girth4_graphs() {
        let r = run_sweep(&SweepSpec::exhaustive(4, 4)).unwrap();
        assert_eq!(r.summary.graphs_seen, 729);
        assert!(r.summary.checked > 0);
        assert_eq!(r.summary.lambda_prime_connected, 0);
        assert_eq!(
            r.summary.family_counts.get(&Family::H1),
            Some(&r.summary.checked)
        );
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let spec = SweepSpec {
            cap: 5,
            ..SweepSpec::exhaustive(6, 6)
        };
        assert!(matches!(
            run_sweep(&spec),
            Err(SweepError::CapExceeded { n: 6, cap: 5 })
        ));
        assert!(matches!(
            run_sweep(&SweepSpec::exhaustive(5, 4)),
            Err(SweepError::InvalidSpec(_))
        ));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let par = run_sweep(&SweepSpec::random(6, 7, 40_000, 3)).unwrap();
        let seq = run_sweep(&SweepSpec {
            parallel: false,
            ..SweepSpec::random(6, 7, 40_000, 3)
        })
        .unwrap();
        assert_eq!(par.summary, seq.summary);
        assert_eq!(par.counterexamples, seq.counterexamples);
        assert!(par.summary.checked > 0);
    }

    #[test]
    fn resumed_sweep_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.ckpt");
        let spec = SweepSpec {
            keep_records: true,
            ..SweepSpec::exhaustive(4, 5)
        };
        let first = run_sweep_checkpointed(&spec, &path, 10_000, Some(2)).unwrap();
        assert!(matches!(first, SweepProgress::Paused { n: 5, .. }));
        let SweepProgress::Done(resumed) =
            run_sweep_checkpointed(&spec, &path, 10_000, None).unwrap()
        else {
            panic!("sweep did not finish");
        };
        let whole = run_sweep(&spec).unwrap();
        assert_eq!(*resumed, whole);

        let other = SweepSpec::exhaustive(4, 4);
        assert!(matches!(
            run_sweep_checkpointed(&other, &path, 10, None),
            Err(SweepError::Checkpoint(_))
        ));
    }
}
