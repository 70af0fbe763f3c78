//! Catalog sweep: run the chosen verification scope over every catalog
//! group and every partition in scope, then render one report line per
//! case plus a trailing summary. Lines are canonically sorted before
//! rendering, so output is byte-identical across worker counts.

use crate::analysis::{CaseAnalysis, CheckReport, TheoremStatus, VerdictReport, WitnessBundle};
use crate::bitset::BitSet;
use crate::catalog::{prime_partitions, realize_entry, CatalogEntry};
use crate::lattice::{enumerate_subgroups_with_cap, is_soluble, SubgroupLattice};
use crate::properties::{group_suite, partition_suite, GroupStudy};
use crate::sigma::{verify_dispersive_witness, SigmaPartition};
use crate::subnormal::is_subnormal;
use crate::Error;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Thm13,
    Cor14,
    Cor15,
    Lemmas,
    All,
}

impl Scope {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "thm13" => Ok(Scope::Thm13),
            "cor14" => Ok(Scope::Cor14),
            "cor15" => Ok(Scope::Cor15),
            "lemmas" => Ok(Scope::Lemmas),
            "all" => Ok(Scope::All),
            _ => Err(Error::BadArg(format!(
                "unknown scope {:?} (expected thm13, cor14, cor15, lemmas, or all)",
                s
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Thm13 => "thm13",
            Scope::Cor14 => "cor14",
            Scope::Cor15 => "cor15",
            Scope::Lemmas => "lemmas",
            Scope::All => "all",
        }
    }

    fn wants(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

#[derive(Clone, Debug)]
pub enum PartitionScope {
    All,
    Minimal,
    One,
    Explicit(SigmaPartition),
}

impl PartitionScope {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(PartitionScope::All),
            "minimal" => Ok(PartitionScope::Minimal),
            "one" => Ok(PartitionScope::One),
            _ => Ok(PartitionScope::Explicit(crate::sigma::parse_partition(s)?)),
        }
    }

    pub fn as_text(&self) -> String {
        match self {
            PartitionScope::All => "all".into(),
            PartitionScope::Minimal => "minimal".into(),
            PartitionScope::One => "one".into(),
            PartitionScope::Explicit(p) => p.text().to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub scope: Scope,
    pub max_order: u64,
    pub partitions: PartitionScope,
    /// 0 uses the default thread count; 1 runs sequentially.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            scope: Scope::All,
            max_order: 100,
            partitions: PartitionScope::All,
            jobs: 0,
        }
    }
}

pub struct SweepOutcome {
    /// Report lines: one JSON object per case, summary last.
    pub lines: Vec<String>,
    /// Per-entry failures (bad generators, caps); these do not abort the sweep.
    pub errors: Vec<String>,
    pub cases: u64,
    pub hypothesis_holds: u64,
    pub hypothesis_fails: u64,
    pub not_applicable: u64,
    pub counterexamples: u64,
    pub checked_instances: u64,
    pub exit_ok: bool,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    record: &'a str,
    cases: u64,
    hypothesis_holds: u64,
    hypothesis_fails: u64,
    not_applicable: u64,
    counterexamples: u64,
    checked_instances: u64,
    catalog_errors: u64,
    scope: &'a str,
    max_order: u64,
    partitions: String,
}

enum Holder {
    Plain(SubgroupLattice),
    Study(GroupStudy),
}

impl Holder {
    fn lat(&self) -> &SubgroupLattice {
        match self {
            Holder::Plain(l) => l,
            Holder::Study(s) => &s.lat,
        }
    }
}

/// Sweep the catalog entries and assemble the report. `prior_errors` carries
/// load-time failures so they count against the exit status.
pub fn run_sweep(
    entries: &[CatalogEntry],
    prior_errors: Vec<String>,
    config: &SweepConfig,
) -> SweepOutcome {
    let work = |entry: &CatalogEntry| group_reports(entry, config);
    let results: Vec<Result<Vec<VerdictReport>, String>> = if config.jobs == 1 {
        entries.iter().map(work).collect()
    } else if config.jobs == 0 {
        entries.par_iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| entries.par_iter().map(work).collect())
    };

    let mut errors = prior_errors;
    let mut records = Vec::new();
    for r in results {
        match r {
            Ok(mut v) => records.append(&mut v),
            Err(e) => errors.push(e),
        }
    }

    records.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.group_name.cmp(&b.group_name))
            .then_with(|| a.partition_text.cmp(&b.partition_text))
            .then_with(|| a.scope.cmp(&b.scope))
            .then_with(|| a.n.cmp(&b.n))
    });

    let mut holds = 0;
    let mut fails = 0;
    let mut na = 0;
    let mut counter = 0;
    let mut instances = 0;
    for r in &records {
        match r.theorem_status {
            TheoremStatus::HypothesisHoldsConclusionHolds => holds += 1,
            TheoremStatus::HypothesisFails => fails += 1,
            TheoremStatus::NotApplicable => na += 1,
            TheoremStatus::Counterexample => counter += 1,
        }
        instances += r.checked_instances.unwrap_or(0);
    }

    let mut lines: Vec<String> = records
        .iter()
        .map(|r| serde_json::to_string(r).expect("report serializes"))
        .collect();
    let summary = SummaryRecord {
        record: "summary",
        cases: records.len() as u64,
        hypothesis_holds: holds,
        hypothesis_fails: fails,
        not_applicable: na,
        counterexamples: counter,
        checked_instances: instances,
        catalog_errors: errors.len() as u64,
        scope: config.scope.as_str(),
        max_order: config.max_order,
        partitions: config.partitions.as_text(),
    };
    lines.push(serde_json::to_string(&summary).expect("summary serializes"));

    SweepOutcome {
        lines,
        exit_ok: counter == 0 && errors.is_empty(),
        errors,
        cases: records.len() as u64,
        hypothesis_holds: holds,
        hypothesis_fails: fails,
        not_applicable: na,
        counterexamples: counter,
        checked_instances: instances,
    }
}

fn group_reports(entry: &CatalogEntry, config: &SweepConfig) -> Result<Vec<VerdictReport>, String> {
    if let Some(o) = entry.expected_order {
        if o > config.max_order {
            return Ok(Vec::new());
        }
    }
    let tag = |e: Error| format!("{}: {}", entry.name, e);
    let g = realize_entry(entry).map_err(tag)?;
    if g.order() > config.max_order {
        return Ok(Vec::new());
    }
    let lat = enumerate_subgroups_with_cap(g, config.max_order.max(1)).map_err(tag)?;

    let scope = config.scope;
    let holder = if scope.wants(Scope::Lemmas) {
        Holder::Study(GroupStudy::new(lat).map_err(tag)?)
    } else {
        Holder::Plain(lat)
    };
    let lat = holder.lat();
    let mut out = Vec::new();

    if scope.wants(Scope::Thm13) || scope.wants(Scope::Cor14) || scope.wants(Scope::Lemmas) {
        let parts = match &config.partitions {
            PartitionScope::All => prime_partitions(&lat.group().primes()).map_err(tag)?,
            PartitionScope::Minimal => vec![SigmaPartition::minimal()],
            PartitionScope::One => vec![SigmaPartition::one()],
            PartitionScope::Explicit(p) => vec![p.clone()],
        };
        for part in &parts {
            let case = CaseAnalysis::new(lat, part).map_err(tag)?;
            if scope.wants(Scope::Thm13) {
                out.push(theorem_record(&case, "thm13", case.sigma_size));
            }
            if scope.wants(Scope::Cor14) {
                for n in 1..=case.sigma_size {
                    out.push(theorem_record(&case, "cor14", n));
                }
            }
            if let Holder::Study(study) = &holder {
                let checks = partition_suite(study, &case).map_err(tag)?;
                out.push(suite_record(&case, "lemmas", checks));
            }
        }
    }

    if scope.wants(Scope::Cor15) || scope.wants(Scope::Lemmas) {
        let minimal = SigmaPartition::minimal();
        let case = CaseAnalysis::new(lat, &minimal).map_err(tag)?;
        if scope.wants(Scope::Cor15) {
            cor15_records(&holder, &case, &mut out).map_err(tag)?;
        }
        if let Holder::Study(study) = &holder {
            let checks = group_suite(study).map_err(tag)?;
            let mut r = suite_record(&case, "lemmas-group", checks);
            r.witnesses = WitnessBundle::default();
            out.push(r);
        }
    }

    Ok(out)
}

fn base_record(case: &CaseAnalysis, scope: &str) -> VerdictReport {
    let g = case.lat.group();
    VerdictReport {
        record: "case".into(),
        scope: scope.into(),
        group_name: g.name().to_string(),
        partition_text: case.part.text().to_string(),
        order: g.order(),
        sigma_size: case.sigma_size,
        n: None,
        flags: case.flags,
        m_sigma: case.m_sigma,
        checked_instances: None,
        theorem_status: TheoremStatus::NotApplicable,
        reason: None,
        checks: Vec::new(),
        witnesses: WitnessBundle::default(),
    }
}

/// One hypothesis-at-depth-n record: every subgroup at depth n+1 reachable
/// implies a verified dispersive tower.
fn theorem_record(case: &CaseAnalysis, scope: &str, n: usize) -> VerdictReport {
    let (mut status, mut reason, instances) = case.verdict_at(n);
    let chains = match case.sample_chains(n + 1, 3) {
        Ok(c) => c,
        Err(e) => {
            status = TheoremStatus::Counterexample;
            reason = Some(e);
            Vec::new()
        }
    };
    let mut r = base_record(case, scope);
    r.n = Some(n as u32);
    r.checked_instances = Some(instances);
    r.theorem_status = status;
    r.reason = reason;
    r.witnesses = WitnessBundle {
        dispersive: case.dispersive_report(),
        subnormal_chains: chains,
    };
    r
}

/// One check-suite record; any violation is a counterexample.
fn suite_record(case: &CaseAnalysis, scope: &str, checks: Vec<CheckReport>) -> VerdictReport {
    let instances: u64 = checks.iter().map(|c| c.instances).sum();
    let first_bad = checks.iter().find(|c| c.violations > 0);
    let (status, reason) = match first_bad {
        None => (TheoremStatus::HypothesisHoldsConclusionHolds, None),
        Some(c) => (
            TheoremStatus::Counterexample,
            Some(match &c.detail {
                Some(d) => format!("{}: {} violations ({})", c.name, c.violations, d),
                None => format!("{}: {} violations", c.name, c.violations),
            }),
        ),
    };
    let mut r = base_record(case, scope);
    r.checked_instances = Some(instances);
    r.theorem_status = status;
    r.reason = reason;
    r.checks = checks;
    r
}

/// Per-depth records for the soluble Sylow-tower claim: letting the depth
/// range over 1..=|pi(G)|+1, whenever every depth-n subgroup is subnormal
/// in the plain sense the group must carry a Sylow tower.
fn cor15_records(
    holder: &Holder,
    case: &CaseAnalysis,
    out: &mut Vec<VerdictReport>,
) -> Result<(), Error> {
    let lat = case.lat;
    let g = lat.group();
    let soluble = match holder {
        Holder::Study(s) => s.soluble,
        Holder::Plain(_) => is_soluble(g),
    };
    if !soluble {
        let mut r = base_record(case, "cor15");
        r.reason = Some("not soluble".into());
        out.push(r);
        return Ok(());
    }
    let submask = match holder {
        Holder::Study(s) => s.subnormal_mask.clone(),
        Holder::Plain(l) => {
            let mut mask = BitSet::new(l.node_count());
            for i in 0..l.node_count() {
                if is_subnormal(g, l.node(i as u32))? {
                    mask.insert(i);
                }
            }
            mask
        }
    };
    let tower = match &case.dispersive {
        Some(w) => {
            verify_dispersive_witness(lat, case.part, w)
                .map_err(|e| Error::BadGroup(format!("tower witness: {}", e)))?;
            true
        }
        None => false,
    };
    for n in 1..=g.primes().len() + 1 {
        let set = lat.n_maximal_set(n);
        let instances = set.count() as u64;
        let bad = set.iter().find(|&i| !submask.contains(i));
        let (status, reason) = match bad {
            Some(i) => (
                TheoremStatus::HypothesisFails,
                Some(format!(
                    "subgroup node {} (order {}) at depth {} is not subnormal",
                    i,
                    lat.node_order(i as u32),
                    n
                )),
            ),
            None if tower => (TheoremStatus::HypothesisHoldsConclusionHolds, None),
            None => (
                TheoremStatus::Counterexample,
                Some("every depth-n subgroup subnormal but no Sylow tower".into()),
            ),
        };
        let mut r = base_record(case, "cor15");
        r.n = Some(n as u32);
        r.checked_instances = Some(instances);
        r.theorem_status = status;
        r.reason = reason;
        r.witnesses = WitnessBundle {
            dispersive: case.dispersive_report(),
            subnormal_chains: Vec::new(),
        };
        out.push(r);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    fn sweep(scope: Scope, max_order: u64, jobs: usize) -> SweepOutcome {
        let entries = builtin_catalog(max_order);
        let config = SweepConfig {
            scope,
            max_order,
            partitions: PartitionScope::All,
            jobs,
        };
        run_sweep(&entries, Vec::new(), &config)
    }

    #[test]
    fn small_sweep_has_no_counterexamples() {
        let out = sweep(Scope::All, 24, 1);
        assert!(out.exit_ok);
        assert_eq!(out.counterexamples, 0);
        assert!(out.cases > 0);
        assert!(out.checked_instances > 0);
        let last = out.lines.last().unwrap();
        assert!(last.contains("\"record\":\"summary\""));
        assert_eq!(out.lines.len() as u64, out.cases + 1);
    }

    #[test]
    fn worker_counts_agree_byte_for_byte() {
        let a = sweep(Scope::All, 20, 1);
        let b = sweep(Scope::All, 20, 3);
        assert_eq!(a.lines, b.lines);
    }

    #[test]
    fn s4_minimal_is_a_negative_control_not_a_counterexample() {
        let out = sweep(Scope::Thm13, 24, 1);
        let line = out
            .lines
            .iter()
            .find(|l| l.contains("\"group_name\":\"S4\"") && l.contains("\"partition_text\":\"2|3\""))
            .expect("S4 minimal record");
        assert!(line.contains("\"theorem_status\":\"hypothesis_fails\""));
        assert!(out.exit_ok);
    }

    #[test]
    fn insoluble_groups_are_not_applicable_for_towers() {
        let out = sweep(Scope::Cor15, 60, 1);
        assert!(out.exit_ok);
        let a5 = out
            .lines
            .iter()
            .find(|l| l.contains("\"group_name\":\"A5\""))
            .expect("A5 record");
        assert!(a5.contains("\"theorem_status\":\"not_applicable\""));
        assert!(a5.contains("not soluble"));
    }

    #[test]
    fn load_errors_poison_the_exit_status() {
        let entries = builtin_catalog(6);
        let config = SweepConfig {
            scope: Scope::Thm13,
            max_order: 6,
            partitions: PartitionScope::Minimal,
            jobs: 1,
        };
        let out = run_sweep(&entries, vec!["line 7: bad".into()], &config);
        assert!(!out.exit_ok);
        assert_eq!(out.counterexamples, 0);
        assert!(out.lines.last().unwrap().contains("\"catalog_errors\":1"));
    }

    #[test]
    fn scope_and_partition_parsing() {
        assert_eq!(Scope::parse("cor15").unwrap(), Scope::Cor15);
        assert!(Scope::parse("thm").is_err());
        assert!(matches!(
            PartitionScope::parse("minimal").unwrap(),
            PartitionScope::Minimal
        ));
        match PartitionScope::parse("2,3|5").unwrap() {
            PartitionScope::Explicit(p) => assert_eq!(p.text(), "2,3|5"),
            _ => panic!("expected explicit partition"),
        }
        assert!(PartitionScope::parse("2,x").is_err());
    }
}
