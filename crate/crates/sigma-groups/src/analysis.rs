//! Per-case analysis and the machine-readable report schema. A case is one
//! (group, partition) pair; the analysis bundles the structural flags, the
//! least depth at which every subgroup is reachable, witness material, and
//! the hypothesis-conclusion verdict at a chosen depth.

use crate::lattice::SubgroupLattice;
use crate::sigma::{
    complete_hall_sets, is_sigma_dispersive, is_sigma_nilpotent, is_sigma_soluble,
    verify_dispersive_witness, DispersiveWitness, SigmaPartition,
};
use crate::subnormal::SubnormalityContext;
use crate::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub sigma_group: bool,
    pub sigma_soluble: bool,
    pub sigma_nilpotent: bool,
    pub sigma_dispersive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremStatus {
    #[serde(rename = "hypothesis_holds_conclusion_holds")]
    HypothesisHoldsConclusionHolds,
    #[serde(rename = "hypothesis_fails")]
    HypothesisFails,
    #[serde(rename = "not_applicable")]
    NotApplicable,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DispersiveWitnessReport {
    pub ordering: Vec<String>,
    pub series_nodes: Vec<u32>,
    pub series_orders: Vec<u64>,
    pub hall_nodes: Vec<u32>,
    pub hall_orders: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainReport {
    pub node: u32,
    pub order: u64,
    pub chain_nodes: Vec<u32>,
    pub chain_orders: Vec<u64>,
    pub step_kinds: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct WitnessBundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersive: Option<DispersiveWitnessReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subnormal_chains: Vec<ChainReport>,
}

impl WitnessBundle {
    pub fn is_empty(&self) -> bool {
        self.dispersive.is_none() && self.subnormal_chains.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: u64,
    pub violations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One line of a report file. Field order is the serialization order, so
/// it is part of the byte-determinism contract.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictReport {
    pub record: String,
    pub scope: String,
    pub group_name: String,
    pub partition_text: String,
    pub order: u64,
    pub sigma_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub flags: Flags,
    pub m_sigma: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked_instances: Option<u64>,
    pub theorem_status: TheoremStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "WitnessBundle::is_empty")]
    pub witnesses: WitnessBundle,
}

/// Everything computed once for a (group, partition) case. The reachability
/// context is kept so scope-specific depth checks can reuse it.
pub struct CaseAnalysis<'a> {
    pub lat: &'a SubgroupLattice,
    pub part: &'a SigmaPartition,
    pub ctx: SubnormalityContext<'a>,
    pub flags: Flags,
    pub sigma_size: usize,
    pub m_sigma: u32,
    pub dispersive: Option<DispersiveWitness>,
}

impl<'a> CaseAnalysis<'a> {
    pub fn new(lat: &'a SubgroupLattice, part: &'a SigmaPartition) -> Result<Self, Error> {
        let g = lat.group();
        let sigma_size = part.sigma_of(g.order()).len();
        let dispersive = is_sigma_dispersive(lat, part, None)?;
        let flags = Flags {
            sigma_group: crate::sigma::is_sigma_group(lat, part),
            sigma_soluble: is_sigma_soluble(lat, part),
            sigma_nilpotent: is_sigma_nilpotent(lat, part),
            sigma_dispersive: dispersive.is_some(),
        };
        debug_assert!(!flags.sigma_nilpotent || flags.sigma_dispersive);
        debug_assert!(!flags.sigma_dispersive || flags.sigma_group);
        let ctx = SubnormalityContext::new(lat, part);
        let m_sigma = ctx.m_sigma();
        Ok(CaseAnalysis {
            lat,
            part,
            ctx,
            flags,
            sigma_size,
            m_sigma,
            dispersive,
        })
    }

    pub fn dispersive_report(&self) -> Option<DispersiveWitnessReport> {
        self.dispersive.as_ref().map(|w| DispersiveWitnessReport {
            ordering: w.ordering.iter().map(|&c| self.part.class_label(c)).collect(),
            series_nodes: w.series.clone(),
            series_orders: w.series.iter().map(|&i| self.lat.node_order(i)).collect(),
            hall_nodes: w.halls.clone(),
            hall_orders: w.halls.iter().map(|&i| self.lat.node_order(i)).collect(),
        })
    }

    pub fn chain_report(&self, node: u32) -> Option<ChainReport> {
        self.ctx.witness(node).map(|w| ChainReport {
            node,
            order: self.lat.node_order(node),
            chain_orders: w.chain.iter().map(|&i| self.lat.node_order(i)).collect(),
            step_kinds: w.kinds.iter().map(|k| k.as_str().to_string()).collect(),
            chain_nodes: w.chain,
        })
    }

    /// Up to `cap` witness chains for subgroups at depth exactly n, lowest
    /// node ids first, each re-verified before inclusion.
    pub fn sample_chains(&self, n: usize, cap: usize) -> Result<Vec<ChainReport>, String> {
        let mut out = Vec::new();
        for i in self.lat.n_maximal_set(n).iter() {
            if out.len() == cap {
                break;
            }
            let node = i as u32;
            if let Some(w) = self.ctx.witness(node) {
                crate::subnormal::verify_subnormal_witness(self.lat, self.part, &w)
                    .map_err(|e| format!("chain witness for node {}: {}", node, e))?;
                out.push(self.chain_report(node).expect("witness exists"));
            }
        }
        Ok(out)
    }

    /// Verdict for "every subgroup at depth n+1 is reachable implies a
    /// dispersive tower exists", with the dispersive witness re-verified.
    /// Returns the status, an explanatory reason for non-holding statuses,
    /// and the number of subgroups the hypothesis inspected.
    pub fn verdict_at(&self, n: usize) -> (TheoremStatus, Option<String>, u64) {
        if !self.flags.sigma_group || !self.flags.sigma_soluble {
            let mut reasons = Vec::new();
            if !self.flags.sigma_soluble {
                reasons.push("not sigma-soluble");
            }
            if !self.flags.sigma_group {
                reasons.push("no complete Hall set");
            }
            return (TheoremStatus::NotApplicable, Some(reasons.join("; ")), 0);
        }
        let set = self.lat.n_maximal_set(n + 1);
        let instances = set.count() as u64;
        for i in set.iter() {
            if !self.ctx.is_sigma_subnormal(i as u32) {
                let reason = format!(
                    "subgroup node {} (order {}) at depth {} is not sigma-subnormal",
                    i,
                    self.lat.node_order(i as u32),
                    n + 1
                );
                return (TheoremStatus::HypothesisFails, Some(reason), instances);
            }
        }
        match &self.dispersive {
            None => (
                TheoremStatus::Counterexample,
                Some("hypothesis holds but no dispersive tower exists".into()),
                instances,
            ),
            Some(w) => match verify_dispersive_witness(self.lat, self.part, w) {
                Ok(()) => (TheoremStatus::HypothesisHoldsConclusionHolds, None, instances),
                Err(e) => (
                    TheoremStatus::Counterexample,
                    Some(format!("dispersive witness failed re-verification: {}", e)),
                    instances,
                ),
            },
        }
    }

    /// Count of complete Hall systems, for report context.
    pub fn hall_set_count(&self) -> usize {
        complete_hall_sets(self.lat, self.part).len()
    }
}

/// The single-case report behind the analyze command: verdict taken at
/// n = |sigma(G)|, with dispersive witness and sample chains attached.
pub fn analyze_report(
    lat: &SubgroupLattice,
    part: &SigmaPartition,
) -> Result<VerdictReport, Error> {
    let case = CaseAnalysis::new(lat, part)?;
    let (status, reason, instances) = case.verdict_at(case.sigma_size);
    let chains = case
        .sample_chains(case.sigma_size + 1, 3)
        .map_err(Error::BadGroup)?;
    Ok(VerdictReport {
        record: "case".into(),
        scope: "analyze".into(),
        group_name: lat.group().name().to_string(),
        partition_text: part.text().to_string(),
        order: lat.group().order(),
        sigma_size: case.sigma_size,
        n: Some(case.sigma_size as u32),
        flags: case.flags,
        m_sigma: case.m_sigma,
        checked_instances: Some(instances),
        theorem_status: status,
        reason,
        checks: Vec::new(),
        witnesses: WitnessBundle {
            dispersive: case.dispersive_report(),
            subnormal_chains: chains,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_family, NamedFamilySpec};
    use crate::lattice::enumerate_subgroups;
    use crate::sigma::parse_partition;

    fn lat(spec: &NamedFamilySpec) -> SubgroupLattice {
        enumerate_subgroups(make_family(spec).unwrap()).unwrap()
    }

    #[test]
    fn s4_minimal_profile() {
        let l = lat(&NamedFamilySpec::Symmetric(4));
        let min = parse_partition("minimal").unwrap();
        let r = analyze_report(&l, &min).unwrap();
        assert!(r.flags.sigma_soluble);
        assert_eq!(r.sigma_size, 2);
        assert_eq!(r.m_sigma, 4);
        assert!(!r.flags.sigma_dispersive);
        assert_eq!(r.theorem_status, TheoremStatus::HypothesisFails);
        assert!(r.reason.unwrap().contains("not sigma-subnormal"));
    }

    #[test]
    fn c6_minimal_profile() {
        let l = lat(&NamedFamilySpec::Cyclic(6));
        let min = parse_partition("minimal").unwrap();
        let r = analyze_report(&l, &min).unwrap();
        assert!(r.flags.sigma_nilpotent);
        assert!(r.flags.sigma_dispersive);
        assert_eq!(r.m_sigma, 1);
        assert_eq!(r.theorem_status, TheoremStatus::HypothesisHoldsConclusionHolds);
        let w = r.witnesses.dispersive.unwrap();
        assert_eq!(*w.series_orders.last().unwrap(), 6);
    }

    #[test]
    fn a5_one_partition_profile() {
        let l = lat(&NamedFamilySpec::Alternating(5));
        let one = parse_partition("one").unwrap();
        let r = analyze_report(&l, &one).unwrap();
        assert!(r.flags.sigma_soluble);
        assert_eq!(r.sigma_size, 1);
        assert!(r.flags.sigma_dispersive);
        assert_eq!(r.theorem_status, TheoremStatus::HypothesisHoldsConclusionHolds);
    }

    #[test]
    fn a5_minimal_is_not_applicable() {
        let l = lat(&NamedFamilySpec::Alternating(5));
        let min = parse_partition("minimal").unwrap();
        let r = analyze_report(&l, &min).unwrap();
        assert_eq!(r.theorem_status, TheoremStatus::NotApplicable);
        assert!(r.reason.unwrap().contains("not sigma-soluble"));
    }

    #[test]
    fn status_strings_are_pinned() {
        assert_eq!(
            serde_json::to_string(&TheoremStatus::HypothesisHoldsConclusionHolds).unwrap(),
            "\"hypothesis_holds_conclusion_holds\""
        );
        assert_eq!(
            serde_json::to_string(&TheoremStatus::Counterexample).unwrap(),
            "\"COUNTEREXAMPLE\""
        );
        assert_eq!(
            serde_json::to_string(&TheoremStatus::HypothesisFails).unwrap(),
            "\"hypothesis_fails\""
        );
        assert_eq!(
            serde_json::to_string(&TheoremStatus::NotApplicable).unwrap(),
            "\"not_applicable\""
        );
    }

    #[test]
    fn report_lines_round_trip() {
        let l = lat(&NamedFamilySpec::Symmetric(3));
        let min = parse_partition("minimal").unwrap();
        let r = analyze_report(&l, &min).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        let back: VerdictReport = serde_json::from_str(&line).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), line);
    }
}
