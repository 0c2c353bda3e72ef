//! Running the registry over a budget and the deterministic report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::budget::{enumerate_instances, Budget};
use super::certificate::Certificate;
use super::context::InstanceCtx;
use super::registry::{registry, ClaimSpec, Tally};
use super::verify::check_certificate;
use crate::error::AlgebraError;
use crate::exec::Executor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Confirmed,
    Refuted,
    HypothesisUnmet,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub cases: usize,
    pub hypothesis_met: usize,
    pub confirmed: usize,
    pub refuted: usize,
}

/// One assertion of a worked example, with the verdict computed for it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartResult {
    pub statement: String,
    pub claimed: String,
    pub computed: String,
    pub status: ClaimStatus,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub instance: String,
    pub status: ClaimStatus,
    pub counts: Counts,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Certificates for confirmed factorizations.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartResult>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusTally {
    pub confirmed: usize,
    pub refuted: usize,
    pub hypothesis_unmet: usize,
    pub budget_exceeded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimSection {
    pub id: String,
    pub statement: String,
    pub tally: StatusTally,
    pub results: Vec<ClaimResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub claim: String,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub budget: Budget,
    pub instance_count: usize,
    pub claim_count: usize,
    pub certificates_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub claims: Vec<ClaimSection>,
    pub discrepancies: Vec<Discrepancy>,
    /// Internal invariant violations: evaluation errors and certificates
    /// the checker rejects. Empty on a healthy run.
    pub errors: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.claims.iter().flat_map(|c| &c.results).flat_map(|r| r.certificate.iter().chain(&r.evidence).chain(r.parts.iter().map(|p| &p.certificate)))
    }

    pub fn result(&self, claim: &str, instance: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == claim)?.results.iter().find(|r| r.instance == instance)
    }

    /// One line per claim.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let t = &c.tally;
            let _ = writeln!(
                out,
                "{:<8} confirmed {:>4}  refuted {:>4}  unmet {:>4}  budget {:>3}  {}",
                c.id, t.confirmed, t.refuted, t.hypothesis_unmet, t.budget_exceeded, c.statement
            );
        }
        let _ = writeln!(out, "{} discrepancies, {} certificates checked, {} errors", self.discrepancies.len(), self.meta.certificates_checked, self.errors.len());
        out
    }
}

fn result_of(spec: &ClaimSpec, ctx: &InstanceCtx, budget: &Budget) -> Result<ClaimResult, String> {
    let (status, t) = match spec.evaluate(ctx, budget) {
        Ok(t) => (if t.unmet.is_some() { ClaimStatus::HypothesisUnmet } else { t.status() }, t),
        Err(AlgebraError::BudgetExceeded { what, size, bound }) => {
            let t = Tally { unmet: Some(format!("{what} of size {size} exceeds bound {bound}")), ..Tally::default() };
            (ClaimStatus::BudgetExceeded, t)
        }
        Err(e) => return Err(format!("{} on {}: {e}", spec.id, ctx.label)),
    };
    let c = &t.counts;
    let mut detail = match &t.unmet {
        Some(reason) => reason.clone(),
        None => format!("{} cases, hypothesis met in {}, confirmed {}, refuted {}", c.cases, c.hypothesis_met, c.confirmed, c.refuted),
    };
    for note in &t.notes {
        detail.push_str("; ");
        detail.push_str(note);
    }
    Ok(ClaimResult {
        claim: spec.id.to_string(),
        instance: ctx.label.clone(),
        status,
        counts: t.counts,
        detail,
        certificate: t.certificate,
        evidence: t.evidence,
        parts: t.parts,
    })
}

/// Evaluates the registry (or the single claim `only`) on every instance of
/// the budget. Errors only on an unknown claim id.
pub fn run_claims(budget: &Budget, only: Option<&str>, exec: Executor) -> Result<Report, String> {
    let specs: Vec<ClaimSpec> = registry().into_iter().filter(|c| only.is_none_or(|id| c.id == id)).collect();
    if specs.is_empty() {
        return Err(format!("unknown claim `{}`", only.unwrap_or_default()));
    }
    let descriptors = enumerate_instances(budget);
    let indexed: Vec<_> = descriptors.into_iter().enumerate().collect();
    let contexts = exec.map(&indexed, |(i, d)| InstanceCtx::new(*i, d.clone(), budget.max_order));
    let mut jobs: Vec<(usize, usize)> = Vec::new();
    for (c, spec) in specs.iter().enumerate() {
        jobs.extend(contexts.iter().filter(|ctx| spec.applies(&ctx.descriptor)).map(|ctx| (c, ctx.index)));
    }
    let outcomes = exec.map(&jobs, |&(c, i)| result_of(&specs[c], &contexts[i], budget));

    let mut errors = Vec::new();
    let mut sections: Vec<ClaimSection> = specs
        .iter()
        .map(|s| ClaimSection { id: s.id.to_string(), statement: s.statement.to_string(), tally: StatusTally::default(), results: Vec::new() })
        .collect();
    for (&(c, _), outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Ok(r) => sections[c].results.push(r),
            Err(e) => errors.push(e),
        }
    }
    let mut discrepancies = Vec::new();
    for s in &mut sections {
        for r in &s.results {
            match r.status {
                ClaimStatus::Confirmed => s.tally.confirmed += 1,
                ClaimStatus::Refuted => s.tally.refuted += 1,
                ClaimStatus::HypothesisUnmet => s.tally.hypothesis_unmet += 1,
                ClaimStatus::BudgetExceeded => s.tally.budget_exceeded += 1,
            }
            if r.status == ClaimStatus::Refuted {
                discrepancies.push(Discrepancy { claim: r.claim.clone(), instance: r.instance.clone(), detail: r.detail.clone() });
            }
        }
    }
    let mut report = Report {
        meta: Meta {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            budget: budget.clone(),
            instance_count: contexts.len(),
            claim_count: specs.len(),
            certificates_checked: 0,
        },
        claims: sections,
        discrepancies,
        errors,
    };
    let certs: Vec<&Certificate> = report.certificates().collect();
    let checks = exec.map(&certs, |c| check_certificate(c).map_err(|e| e.to_string()));
    let mut rejected = Vec::new();
    for (c, check) in certs.iter().zip(checks) {
        if let Err(e) = check {
            rejected.push(format!("certificate on {} rejected: {e}", c.instance.label()));
        }
    }
    report.meta.certificates_checked = certs.len();
    report.errors.extend(rejected);
    Ok(report)
}
